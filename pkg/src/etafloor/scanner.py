"""Line and grid scans of |eta| against the candidate floor, plus zero location.

The candidate floor on the vertical line Re(s) = alpha is

    L(alpha) = |1 - sqrt(2)/2^alpha|,

treated strictly as a hypothesis under test: every sample records its margin
|eta(s)| - L(alpha), negative margins are collected as violations, and nothing
here asserts the floor.  Each sample also records the tail modulus |T(s)|
against sqrt(2)/2^alpha under whichever component the variance classifier
marks as leading.

Scans are deterministic: the beta grid is an index formula, workers receive
contiguous index chunks, results merge in ascending beta order, and every local
minimum is refined by golden section (the refined samples join the report so
the reported minimum is the minimum over the report's samples).

Zero location runs the same machinery on f(t) = |eta(1/2 + i t)| with a much
finer abscissa resolution, and accepts an ordinate only when the residual is
below tolerance and the two accelerated engines agree at it.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

from .decomposition import LeadingComponent, decompose_from_eta, second_term
from .eta import ComplexPoint, as_point, eta_accel, eta_eval, eta_euler, accel_stages_for
from .exceptions import (
    CrossCheckError,
    DegenerateGeometryError,
    DomainError,
    EtaFloorError,
    NoZeroFoundError,
)

__all__ = [
    "BoundSample",
    "ScanFailure",
    "LineScanReport",
    "GridReport",
    "ZeroRecord",
    "ZeroGeometry",
    "bound_floor",
    "tail_bound",
    "tail_inequality_check",
    "scan_line",
    "scan_grid",
    "golden_section_min",
    "locate_zero",
    "survey_zeros",
    "zero_geometry",
]

SQRT2 = math.sqrt(2.0)
INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

WORKER_ENV_VAR = "ETAFLOOR_MAX_WORKERS"
DEFAULT_SCAN_TOL = 1e-9
DEFAULT_REFINE_XTOL = 1e-6
DEFAULT_ZERO_TOL = 1e-8
ZERO_REFINE_XTOL = 1e-10
ZERO_ENGINE_GAP_LIMIT = 1e-9


@dataclass(frozen=True)
class BoundSample:
    s: ComplexPoint
    eta_abs: float
    floor_value: float
    margin: float
    tail_abs: float
    tail_bound: float
    leading: LeadingComponent
    tail_inequality_holds: bool


@dataclass(frozen=True)
class ScanFailure:
    s: ComplexPoint
    error: str
    message: str


@dataclass(frozen=True)
class LineScanReport:
    alpha: float
    beta_range: tuple[float, float]
    step: float
    tol: float
    samples: tuple[BoundSample, ...]
    min_eta_abs: float
    argmin_beta: float
    violations: tuple[BoundSample, ...]
    failures: tuple[ScanFailure, ...]


@dataclass(frozen=True)
class GridReport:
    lines: tuple[LineScanReport, ...]
    min_eta_abs: float
    argmin_alpha: float
    argmin_beta: float
    violation_count: int


@dataclass(frozen=True)
class ZeroRecord:
    t: float
    residual: float
    engine_gap: float
    bracket: tuple[float, float]


class ZeroGeometry(NamedTuple):
    angle: float
    in_claimed_range: bool


def bound_floor(alpha: float) -> float:
    """Candidate floor |1 - sqrt(2) * 2^(-alpha)|; zero exactly at alpha = 1/2."""
    if not (alpha > 0.0):
        raise DomainError("alpha must be > 0")
    return abs(1.0 - SQRT2 / 2.0**alpha)


def tail_bound(alpha: float) -> float:
    """Remainder bound sqrt(2)/2^alpha on the rotated-tail objective."""
    if not (alpha > 0.0):
        raise DomainError("alpha must be > 0")
    return SQRT2 / 2.0**alpha


def tail_inequality_check(s, tol: float, engine: str = "checked") -> BoundSample:
    """One sample: |eta|, floor margin, tail modulus versus sqrt(2)/2^alpha.

    Under a leading first component the recorded inequality is
    |T| <= sqrt(2)/2^alpha; under a leading second component it is
    |T| >= sqrt(2)/2^alpha.  The outcome is recorded, never asserted.
    """
    p = as_point(s)
    res = eta_eval(p, tol, engine)
    dec = decompose_from_eta(p, res.value)
    eta_abs = abs(res.value)
    floor_value = bound_floor(p.alpha)
    t_abs = abs(dec.tail)
    t_bound = tail_bound(p.alpha)
    slack = res.abs_error_estimate + 1e-12 * (1.0 + t_bound)
    if dec.leading is LeadingComponent.W1:
        holds = t_abs <= t_bound + slack
    else:
        holds = t_abs >= t_bound - slack
    return BoundSample(
        s=p,
        eta_abs=eta_abs,
        floor_value=floor_value,
        margin=eta_abs - floor_value,
        tail_abs=t_abs,
        tail_bound=t_bound,
        leading=dec.leading,
        tail_inequality_holds=holds,
    )


# ----------------------------------------------------------------------------
# deterministic parallel evaluation
# ----------------------------------------------------------------------------

def _resolve_workers(workers: int) -> int:
    workers = max(1, int(workers))
    cap = os.environ.get(WORKER_ENV_VAR)
    if cap:
        try:
            workers = min(workers, max(1, int(cap)))
        except ValueError:
            raise DomainError(f"{WORKER_ENV_VAR} must be an integer, got {cap!r}")
    return workers


def _index_chunks(count: int, workers: int) -> list[tuple[int, int]]:
    workers = min(workers, count) or 1
    size, extra = divmod(count, workers)
    chunks = []
    start = 0
    for w in range(workers):
        stop = start + size + (1 if w < extra else 0)
        chunks.append((start, stop))
        start = stop
    return chunks


def _line_chunk(args: tuple) -> tuple[list[BoundSample], list[ScanFailure]]:
    alpha, beta_min, step, i0, i1, tol, engine = args
    samples: list[BoundSample] = []
    failures: list[ScanFailure] = []
    for i in range(i0, i1):
        beta = beta_min + i * step
        point = ComplexPoint(alpha, beta)
        try:
            samples.append(tail_inequality_check(point, tol, engine))
        except EtaFloorError as exc:
            failures.append(ScanFailure(point, type(exc).__name__, str(exc)))
    return samples, failures


def _run_chunked(worker: Callable, arg_sets: list[tuple], workers: int) -> list:
    if workers <= 1 or len(arg_sets) <= 1:
        return [worker(a) for a in arg_sets]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, arg_sets))


# ----------------------------------------------------------------------------
# golden-section refinement
# ----------------------------------------------------------------------------

def golden_section_min(
    f: Callable[[float], float], lo: float, hi: float, xtol: float,
    max_iter: int = 200,
) -> tuple[float, float]:
    """Minimum of a unimodal f on [lo, hi]; returns the best evaluated point.

    Returning an actually-evaluated point (rather than the final bracket
    midpoint) keeps "refined minimum <= coarse minimum" true by construction
    whenever the coarse point is one of the probes.
    """
    if not (hi > lo):
        raise DomainError("golden section needs hi > lo")
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    best_x, best_f = (c, fc) if fc <= fd else (d, fd)
    for _ in range(max_iter):
        if (b - a) <= xtol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
            if fc < best_f:
                best_x, best_f = c, fc
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
            if fd < best_f:
                best_x, best_f = d, fd
    return best_x, best_f


def _local_minima(values: Sequence[float]) -> list[int]:
    """Indices of interior local minima (strict on the left, lax on the right)."""
    idx = []
    for i in range(1, len(values) - 1):
        if values[i] < values[i - 1] and values[i] <= values[i + 1]:
            idx.append(i)
    return idx


# ----------------------------------------------------------------------------
# line and grid scans
# ----------------------------------------------------------------------------

def _beta_grid_count(beta_min: float, beta_max: float, step: float) -> int:
    return int(math.floor((beta_max - beta_min) / step + 1e-9)) + 1


def scan_line(
    alpha: float,
    beta_min: float,
    beta_max: float,
    step: float,
    tol: float = DEFAULT_SCAN_TOL,
    *,
    workers: int = 1,
    engine: str = "checked",
    refine_xtol: float = DEFAULT_REFINE_XTOL,
) -> LineScanReport:
    """Sample |eta(alpha + i beta)| on a beta grid and refine every local minimum.

    Violations are the samples with margin < -tol.  Output is independent of
    the worker count: chunks are merged in index order and refinement runs on
    the merged grid.
    """
    if not (alpha > 0.0):
        raise DomainError("alpha must be > 0")
    if beta_max < beta_min:
        raise DomainError("beta range is empty (beta_max < beta_min)")
    if not (step > 0.0):
        raise DomainError("step must be > 0")
    if not (tol > 0.0):
        raise DomainError("tol must be > 0")
    workers = _resolve_workers(workers)
    count = _beta_grid_count(beta_min, beta_max, step)
    eval_tol = min(tol, DEFAULT_SCAN_TOL)

    chunks = _index_chunks(count, workers)
    arg_sets = [(alpha, beta_min, step, i0, i1, eval_tol, engine) for (i0, i1) in chunks]
    results = _run_chunked(_line_chunk, arg_sets, workers)
    samples: list[BoundSample] = []
    failures: list[ScanFailure] = []
    for chunk_samples, chunk_failures in results:
        samples.extend(chunk_samples)
        failures.extend(chunk_failures)

    # refine each interior basin of the successfully sampled grid
    refined: list[BoundSample] = []
    if len(samples) >= 3 and not failures:
        eta_abs_values = [smp.eta_abs for smp in samples]
        betas = [smp.s.beta for smp in samples]
        beta_set = set(betas)

        def f_abs(beta: float) -> float:
            return abs(eta_eval(ComplexPoint(alpha, beta), eval_tol, engine).value)

        for i in _local_minima(eta_abs_values):
            x, _ = golden_section_min(f_abs, betas[i - 1], betas[i + 1], refine_xtol)
            if x in beta_set:
                continue
            try:
                candidate = tail_inequality_check(ComplexPoint(alpha, x), eval_tol, engine)
            except EtaFloorError as exc:
                failures.append(ScanFailure(ComplexPoint(alpha, x), type(exc).__name__, str(exc)))
                continue
            # keep only genuine improvements over the basin's grid sample
            if candidate.eta_abs < eta_abs_values[i]:
                refined.append(candidate)

    merged = sorted(samples + refined, key=lambda smp: smp.s.beta)
    if merged:
        min_sample = min(merged, key=lambda smp: (smp.eta_abs, smp.s.beta))
        min_eta_abs, argmin_beta = min_sample.eta_abs, min_sample.s.beta
    else:
        # every sample failed its cross-check; the failures list tells the story
        min_eta_abs, argmin_beta = math.inf, beta_min
    violations = tuple(smp for smp in merged if smp.margin < -tol)
    return LineScanReport(
        alpha=alpha,
        beta_range=(beta_min, beta_max),
        step=step,
        tol=tol,
        samples=tuple(merged),
        min_eta_abs=min_eta_abs,
        argmin_beta=argmin_beta,
        violations=violations,
        failures=tuple(failures),
    )


def scan_grid(
    alpha_range: tuple[float, float],
    beta_range: tuple[float, float],
    alpha_step: float,
    beta_step: float,
    tol: float = DEFAULT_SCAN_TOL,
    *,
    workers: int = 1,
    engine: str = "checked",
    refine_xtol: float = DEFAULT_REFINE_XTOL,
) -> GridReport:
    """scan_line over an alpha grid, with global extremes."""
    a_lo, a_hi = alpha_range
    if not (a_lo > 0.0):
        raise DomainError("alpha range must lie in (0, inf)")
    if a_hi < a_lo:
        raise DomainError("alpha range is empty (hi < lo)")
    if not (alpha_step > 0.0):
        raise DomainError("alpha_step must be > 0")
    n_alpha = int(math.floor((a_hi - a_lo) / alpha_step + 1e-9)) + 1
    lines = tuple(
        scan_line(
            a_lo + j * alpha_step,
            beta_range[0],
            beta_range[1],
            beta_step,
            tol,
            workers=workers,
            engine=engine,
            refine_xtol=refine_xtol,
        )
        for j in range(n_alpha)
    )
    best = min(lines, key=lambda ln: (ln.min_eta_abs, ln.alpha))
    return GridReport(
        lines=lines,
        min_eta_abs=best.min_eta_abs,
        argmin_alpha=best.alpha,
        argmin_beta=best.argmin_beta,
        violation_count=sum(len(ln.violations) for ln in lines),
    )


# ----------------------------------------------------------------------------
# critical-line zeros
# ----------------------------------------------------------------------------

def _abs_eta_chunk(args: tuple) -> list[float]:
    t_lo, grid_step, i0, i1, eval_tol, engine = args
    out = []
    for i in range(i0, i1):
        t = t_lo + i * grid_step
        out.append(abs(eta_eval(ComplexPoint(0.5, t), eval_tol, engine).value))
    return out


def _refine_zero_basin(
    lo: float, hi: float, eval_tol: float, engine: str, xtol: float
) -> tuple[float, float]:
    def f_abs(t: float) -> float:
        return abs(eta_eval(ComplexPoint(0.5, t), eval_tol, engine).value)

    return golden_section_min(f_abs, lo, hi, xtol)


def _engine_gap_at(t: float, eval_tol: float) -> float:
    s = ComplexPoint(0.5, t)
    v1 = eta_euler(s, eval_tol).value
    v2 = eta_accel(s, accel_stages_for(s, eval_tol)).value
    return abs(v1 - v2)


def survey_zeros(
    t_lo: float,
    t_hi: float,
    tol: float = DEFAULT_ZERO_TOL,
    *,
    grid_step: float = 0.01,
    workers: int = 1,
    engine: str = "checked",
) -> list[ZeroRecord]:
    """All accepted zeros of |eta(1/2 + i t)| with t in [t_lo, t_hi].

    Every interior local minimum of the grid is refined; an ordinate is
    accepted iff the residual is below tol and the Euler and Chebyshev engines
    agree there within 1e-9.
    """
    if not (0.0 <= t_lo < t_hi):
        raise DomainError("need 0 <= t_lo < t_hi")
    if not (tol > 0.0):
        raise DomainError("tol must be > 0")
    workers = _resolve_workers(workers)
    eval_tol = max(tol / 100.0, 1e-12)
    count = _beta_grid_count(t_lo, t_hi, grid_step)
    chunks = _index_chunks(count, workers)
    arg_sets = [(t_lo, grid_step, i0, i1, eval_tol, engine) for (i0, i1) in chunks]
    f_values: list[float] = []
    for part in _run_chunked(_abs_eta_chunk, arg_sets, workers):
        f_values.extend(part)
    ts = [t_lo + i * grid_step for i in range(count)]

    records = []
    for i in _local_minima(f_values):
        t_star, residual = _refine_zero_basin(
            ts[i - 1], ts[i + 1], eval_tol, engine, ZERO_REFINE_XTOL
        )
        if residual >= tol:
            continue
        gap = _engine_gap_at(t_star, eval_tol)
        if gap <= ZERO_ENGINE_GAP_LIMIT:
            records.append(ZeroRecord(t_star, residual, gap, (t_lo, t_hi)))
    return records


def locate_zero(
    t_lo: float,
    t_hi: float,
    tol: float = DEFAULT_ZERO_TOL,
    *,
    grid_step: float = 0.01,
    engine: str = "checked",
) -> ZeroRecord:
    """Best zero candidate inside one bracket, or NoZeroFoundError.

    Grid plus golden section on f(t) = |eta(1/2 + i t)|; the returned record
    certifies residual < tol with the two accelerated engines agreeing within
    1e-9 at the refined ordinate.
    """
    if not (0.0 < t_lo < t_hi):
        raise DomainError("need 0 < t_lo < t_hi")
    if not (tol > 0.0):
        raise DomainError("tol must be > 0")
    eval_tol = max(tol / 100.0, 1e-12)
    count = _beta_grid_count(t_lo, t_hi, grid_step)
    ts = [t_lo + i * grid_step for i in range(count)]
    if ts[-1] < t_hi:
        ts.append(t_hi)
    f_values = [
        abs(eta_eval(ComplexPoint(0.5, t), eval_tol, engine).value) for t in ts
    ]
    basins = _local_minima(f_values)
    candidates = []
    for i in basins:
        candidates.append(_refine_zero_basin(ts[i - 1], ts[i + 1], eval_tol, engine,
                                             ZERO_REFINE_XTOL))
    # the whole bracket itself, in case the minimum sits against an endpoint
    if not candidates:
        candidates.append(_refine_zero_basin(t_lo, t_hi, eval_tol, engine, ZERO_REFINE_XTOL))
    t_star, residual = min(candidates, key=lambda c: (c[1], c[0]))
    if residual >= tol:
        raise NoZeroFoundError(
            f"no point of [{t_lo}, {t_hi}] has |eta(1/2+it)| below {tol:g} "
            f"(best residual {residual:g} at t={t_star!r})",
            best_t=t_star,
            best_residual=residual,
        )
    gap = _engine_gap_at(t_star, eval_tol)
    if gap > ZERO_ENGINE_GAP_LIMIT:
        raise CrossCheckError(
            f"engines disagree at candidate zero t={t_star!r}: gap {gap:g}",
            gap=gap,
            budget=ZERO_ENGINE_GAP_LIMIT,
        )
    return ZeroRecord(t_star, residual, gap, (t_lo, t_hi))


def zero_geometry(record: ZeroRecord, tol: float = 1e-10) -> ZeroGeometry:
    """Angle between the remaining-terms vector and the n = 2 term at a zero.

    At s0 = 1/2 + i t the conjugated series splits as u2 + R = eta_bar(s0) - 1
    with u2 = -e^{i t ln 2}/sqrt(2); the reported angle is
    arg(R) - arg(u2) normalized to [0, 2*pi).  Reported, not asserted.
    """
    s0 = ComplexPoint(0.5, record.t)
    eval_tol = max(tol, 1e-13)
    eta_bar = eta_eval(s0, eval_tol).value.conjugate()
    u2 = second_term(s0)
    remainder = eta_bar - 1.0 - u2
    if abs(u2) < 1e-14 or abs(remainder) < 1e-14:
        raise DegenerateGeometryError(
            f"geometry vectors too small at t={record.t!r}: |u2|={abs(u2):g}, "
            f"|R|={abs(remainder):g}"
        )
    angle = (math.atan2(remainder.imag, remainder.real)
             - math.atan2(u2.imag, u2.real)) % (2.0 * math.pi)
    return ZeroGeometry(angle, math.pi / 2.0 <= angle <= 3.0 * math.pi / 2.0)
