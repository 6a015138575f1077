"""Monte-Carlo studies of the SIH dynamics on signed Erdos-Renyi graphs.

Each trial generates a bilateral signed random graph, runs SIH to
absorption, and records conflict/density/triad metrics.  Trials derive
their streams from (master seed, trial index), so batches reproduce
byte-identically regardless of worker count or scheduling.
"""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

from .dynamics import DEFAULT_MAX_STEPS, SihParams, run_sih
from .graphs import AppraisalMatrix
from .rng import derive_seed, stream

# Sub-stream tags within one trial.
_TAG_PARAM = 0
_TAG_GRAPH = 1
_TAG_RUN = 2


@dataclass(frozen=True)
class ErParams:
    """Signed bilateral Erdos-Renyi parameters.

    Each unordered pair gets both directed links with probability ``p``;
    each existing directed link is then flipped negative with probability
    ``p_neg``, independently per direction.
    """

    n: int
    p: float
    p_neg: float

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        if not 0.0 <= self.p_neg <= 1.0:
            raise ValueError("p_neg must lie in [0, 1]")


@dataclass(frozen=True)
class TrialRecord:
    """One Monte-Carlo trial: generator settings, seed, metrics, outcome."""

    trial_index: int
    seed: int
    er: ErParams
    c0: Optional[float]
    c_inf: Optional[float]
    rho_link: float
    n_triad: int
    steps: int
    absorbed: bool


@dataclass(frozen=True)
class RegressionResult:
    """Least-squares line and Pearson correlation; None marks undefined."""

    k: Optional[float]
    b: Optional[float]
    r: Optional[float]
    n_points: int


def gen_er_signed(params: ErParams, seed: int) -> AppraisalMatrix:
    """Draw a signed bilateral Erdos-Renyi appraisal matrix.

    Output is always bilateral (both directions created together) but may
    be sign-asymmetric since each direction flips independently.
    """
    rng = stream(seed)
    n = params.n
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < params.p:
                rows[i][j] = rows[j][i] = 1
    for i in range(n):
        for j in range(n):
            if rows[i][j] and rng.random() < params.p_neg:
                rows[i][j] = -1
    return AppraisalMatrix(tuple(tuple(r) for r in rows))


def conflict_ratio(x: AppraisalMatrix) -> Optional[float]:
    """Fraction of negative entries among nonzero ones; None when linkless."""
    nonzero = x.nonzero_count()
    if nonzero == 0:
        return None
    return x.negative_count() / nonzero


def link_density(x: AppraisalMatrix) -> float:
    """Nonzero entries over the n(n-1) possible directed links."""
    if x.n < 2:
        raise ValueError("link density needs at least two nodes")
    return x.nonzero_count() / (x.n * (x.n - 1))


def count_triads(x: AppraisalMatrix) -> int:
    """Triangles whose three pairs are all bilateral in ``x``."""
    rows = x.rows
    n = x.n
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            if not (rows[i][j] and rows[j][i]):
                continue
            for k in range(j + 1, n):
                if rows[i][k] and rows[k][i] and rows[j][k] and rows[k][j]:
                    count += 1
    return count


def linear_regression(xs: Sequence[float], ys: Sequence[float]) -> RegressionResult:
    """Ordinary least squares of y on x plus the Pearson coefficient.

    With zero x-variance the slope and r are undefined (None) and the
    intercept is the y mean; with zero y-variance only r is undefined.
    No correlation is ever fabricated for degenerate data.
    """
    if len(xs) != len(ys):
        raise ValueError("x and y lists must have equal length")
    m = len(xs)
    if m < 2:
        raise ValueError("regression needs at least two points")
    mean_x = sum(xs) / m
    mean_y = sum(ys) / m
    sxx = sum((v - mean_x) ** 2 for v in xs)
    syy = sum((v - mean_y) ** 2 for v in ys)
    sxy = sum((a - mean_x) * (b - mean_y) for a, b in zip(xs, ys))
    if sxx == 0.0:
        return RegressionResult(None, mean_y, None, m)
    k = sxy / sxx
    b = mean_y - k * mean_x
    r = None if syy == 0.0 else sxy / (sxx * syy) ** 0.5
    return RegressionResult(k, b, r, m)


# ---------------------------------------------------------------------------
# Study batches.
# ---------------------------------------------------------------------------

STUDY_C0 = "c0"
STUDY_DENSITY = "density"
STUDY_TRIADS = "triads"


def _run_trial(args: tuple) -> TrialRecord:
    (trial_index, master_seed, n, p, p_neg, params, max_steps) = args
    trial_seed = derive_seed(master_seed, trial_index)
    draw = stream(trial_seed, _TAG_PARAM)
    # The varying parameter (None) is drawn uniformly on [0, 1]; p first.
    if p is None:
        p = draw.random()
    if p_neg is None:
        p_neg = draw.random()
    er = ErParams(n, p, p_neg)
    x0 = gen_er_signed(er, derive_seed(trial_seed, _TAG_GRAPH))
    record = run_sih(x0, params, derive_seed(trial_seed, _TAG_RUN), max_steps)
    return TrialRecord(
        trial_index=trial_index,
        seed=trial_seed,
        er=er,
        c0=conflict_ratio(x0),
        c_inf=conflict_ratio(record.final_x),
        rho_link=link_density(x0),
        n_triad=count_triads(x0),
        steps=record.steps,
        absorbed=record.absorbed,
    )


def _run_batch(
    n: int,
    p: Optional[float],
    p_neg: Optional[float],
    trials: int,
    master_seed: int,
    params: SihParams,
    max_steps: int,
    workers: int,
) -> list[TrialRecord]:
    if trials < 2:
        raise ValueError("a study needs at least two trials")
    jobs = [(t, master_seed, n, p, p_neg, params, max_steps) for t in range(trials)]
    if workers <= 1:
        return [_run_trial(job) for job in jobs]
    chunk = max(1, trials // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_trial, jobs, chunksize=chunk))


def _regress(pairs: list[tuple[float, float]]) -> RegressionResult:
    if len(pairs) < 2:
        return RegressionResult(None, None, None, len(pairs))
    return linear_regression([a for a, _ in pairs], [b for _, b in pairs])


def run_study_c0(
    n: int,
    p: float,
    trials: int,
    master_seed: int,
    sih_params: Optional[SihParams] = None,
    max_steps: int = DEFAULT_MAX_STEPS,
    workers: int = 1,
) -> tuple[list[TrialRecord], RegressionResult]:
    """Fixed p; p_neg uniform per trial; regress final on initial conflicts.

    Trials whose graph came out linkless have undefined ratios and are
    flagged in the records but excluded from the regression.
    """
    records = _run_batch(n, p, None, trials, master_seed, sih_params or SihParams(), max_steps, workers)
    pairs = [(r.c0, r.c_inf) for r in records if r.c0 is not None and r.c_inf is not None]
    return records, _regress(pairs)


def run_study_density(
    n: int,
    p_neg: float,
    trials: int,
    master_seed: int,
    sih_params: Optional[SihParams] = None,
    max_steps: int = DEFAULT_MAX_STEPS,
    workers: int = 1,
) -> tuple[list[TrialRecord], RegressionResult]:
    """Fixed p_neg; p uniform per trial; regress final conflicts on density."""
    records = _run_batch(n, None, p_neg, trials, master_seed, sih_params or SihParams(), max_steps, workers)
    pairs = [(r.rho_link, r.c_inf) for r in records if r.c_inf is not None]
    return records, _regress(pairs)


def run_study_triads(
    n: int,
    p: float,
    p_neg: float,
    trials: int,
    master_seed: int,
    sih_params: Optional[SihParams] = None,
    max_steps: int = DEFAULT_MAX_STEPS,
    workers: int = 1,
) -> tuple[list[TrialRecord], RegressionResult]:
    """Fixed p and p_neg; regress final conflicts on the triangle count."""
    records = _run_batch(n, p, p_neg, trials, master_seed, sih_params or SihParams(), max_steps, workers)
    pairs = [(float(r.n_triad), r.c_inf) for r in records if r.c_inf is not None]
    return records, _regress(pairs)


# ---------------------------------------------------------------------------
# Export.
# ---------------------------------------------------------------------------

CSV_HEADER = [
    "trial",
    "seed",
    "n",
    "p",
    "p_neg",
    "c0",
    "c_inf",
    "rho_link",
    "n_triad",
    "steps",
    "absorbed",
]


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def export_csv(records: Sequence[TrialRecord], path: Union[str, Path]) -> None:
    """Write trials ordered by index; floats keep full repr precision."""
    ordered = sorted(records, key=lambda r: r.trial_index)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_HEADER)
        for r in ordered:
            writer.writerow(
                [
                    _cell(r.trial_index),
                    _cell(r.seed),
                    _cell(r.er.n),
                    _cell(float(r.er.p)),
                    _cell(float(r.er.p_neg)),
                    _cell(r.c0),
                    _cell(r.c_inf),
                    _cell(r.rho_link),
                    _cell(r.n_triad),
                    _cell(r.steps),
                    _cell(r.absorbed),
                ]
            )


def study_summary(
    study: str,
    records: Sequence[TrialRecord],
    regression: RegressionResult,
    fixed: dict,
) -> dict:
    """Compact JSON-ready roll-up of one study batch."""
    total = len(records)
    absorbed = sum(1 for r in records if r.absorbed)
    return {
        "study": study,
        **fixed,
        "trials": total,
        "k": regression.k,
        "b": regression.b,
        "r": regression.r,
        "regression_points": regression.n_points,
        "absorbed_fraction": absorbed / total if total else None,
        "mean_steps": sum(r.steps for r in records) / total if total else None,
    }
