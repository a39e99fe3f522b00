"""Executable lemma library: five elementary facts used by the bound machinery.

1. reverse triangle inequality |z1 + z2| >= ||z1| - |z2||;
2. ellipse modulus sqrt(x^2 + y^2) <= a with equality on the major axis, and
   max(x_t + y_t) = sqrt(a^2 + b^2) attained at t = arctan(b/a);
3. sqrt(u^2 + v^2) = u + v exactly when u*v = 0 and u + v >= 0;
4. the circle identity r cos t + r sin t = a cos t + b sin(t + phi) for
   a = r + delta, b = sqrt(r^2 + delta^2), phi = -arctan(delta/r), with the
   parameter orderings delta >= 0 => r <= b <= a and delta <= 0 => a <= r <= b.
   Only these orderings are asserted; the circle modulus sqrt(2)*r at t = pi/4
   is deliberately not compared against a or b.
5. the alternating-series remainder bound |sum_{n>=m} (-1)^(n+1) a_n| <= a_m
   for positive, monotone decreasing, vanishing a_n.

Each check returns the compared quantities plus a verdict instead of a bare
boolean so failures stay diagnosable.  ``run_all_suites`` drives the seeded,
vectorized randomized campaigns behind the ``props`` CLI subcommand.

Equality slack everywhere: 1e-12 scaled by (1 + magnitude of the operands).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .eta import crvz_reference_sum
from .exceptions import DomainError, NonConvergenceError, SequenceContractError

__all__ = [
    "EllipseParams",
    "CircleDecomposition",
    "ReverseTriangleCheck",
    "AdditiveModulusCheck",
    "AltTailBound",
    "PropSuiteResult",
    "reverse_triangle_check",
    "ellipse_point",
    "additive_modulus_check",
    "circle_decomposition",
    "reconstruction_max_error",
    "alt_tail_bound",
    "run_prop1_suite",
    "run_prop2_suite",
    "run_prop3_suite",
    "run_prop4_suite",
    "run_prop5_suite",
    "run_all_suites",
]

BASE_SLACK = 1e-12


def _slack(*magnitudes: float) -> float:
    return BASE_SLACK * (1.0 + math.fsum(abs(m) for m in magnitudes))


@dataclass(frozen=True)
class EllipseParams:
    """Ellipse (a cos t, b sin t) with semi-axes a >= b > 0 and angle t."""

    a: float
    b: float
    t: float

    def __post_init__(self) -> None:
        if not (self.a >= self.b > 0.0):
            raise DomainError(f"ellipse requires a >= b > 0, got a={self.a}, b={self.b}")


@dataclass(frozen=True)
class CircleDecomposition:
    """Parameters (a, b, phi) rewriting r cos t + r sin t as a cos t + b sin(t+phi)."""

    r: float
    delta: float
    a: float
    b: float
    phi: float


class ReverseTriangleCheck(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


class AdditiveModulusCheck(NamedTuple):
    modulus: float
    sum: float
    equal: bool


class AltTailBound(NamedTuple):
    tail: float
    bound: float
    holds: bool


def reverse_triangle_check(z1: complex, z2: complex) -> ReverseTriangleCheck:
    """Compare |z1 + z2| against ||z1| - |z2||."""
    z1, z2 = complex(z1), complex(z2)
    lhs = abs(z1 + z2)
    rhs = abs(abs(z1) - abs(z2))
    return ReverseTriangleCheck(lhs, rhs, lhs >= rhs - _slack(abs(z1), abs(z2)))


def ellipse_point(p: EllipseParams) -> tuple[float, float]:
    """(a cos t, b sin t); its modulus never exceeds the semi-major length a."""
    return p.a * math.cos(p.t), p.b * math.sin(p.t)


def additive_modulus_check(u: float, v: float) -> AdditiveModulusCheck:
    """sqrt(u^2+v^2) equals u+v exactly when u*v = 0 and u+v >= 0."""
    modulus = math.hypot(u, v)
    total = u + v
    return AdditiveModulusCheck(modulus, total, abs(modulus - total) <= _slack(u, v))


def circle_decomposition(r: float, delta: float) -> CircleDecomposition:
    """Decompose r cos t + r sin t into a cos t + b sin(t + phi).

    a = r + delta, b = sqrt(r^2 + delta^2), phi = -arctan(delta/r); the
    identity holds for every t.  Requires r > 0 and |delta| <= r.
    """
    if not (r > 0.0):
        raise DomainError(f"circle radius must be positive, got {r}")
    if abs(delta) > r:
        raise DomainError(f"|delta| = {abs(delta)} exceeds the radius {r}")
    return CircleDecomposition(
        r=r,
        delta=delta,
        a=r + delta,
        b=math.hypot(r, delta),
        phi=-math.atan2(delta, r),
    )


def reconstruction_max_error(dec: CircleDecomposition, n_points: int = 4096) -> float:
    """max_t |r cos t + r sin t - a cos t - b sin(t + phi)| over a uniform grid."""
    t = np.linspace(0.0, 2.0 * math.pi, n_points, endpoint=False)
    lhs = dec.r * (np.cos(t) + np.sin(t))
    rhs = dec.a * np.cos(t) + dec.b * np.sin(t + dec.phi)
    return float(np.max(np.abs(lhs - rhs)))


def alt_tail_bound(
    sequence: Callable[[np.ndarray], np.ndarray],
    m: int,
    *,
    slack: float = 1e-7,
    contract_check_terms: int = 10_000,
) -> AltTailBound:
    """Tail sum_{n>=m} (-1)^(n+1) a_n versus the remainder bound a_m.

    ``sequence`` maps an integer index array to term values and must describe a
    positive, monotone decreasing, vanishing sequence (caller contract; spot
    checked on the first ``contract_check_terms`` indices).  The tail is summed
    until a_N < slack and the final pair of partial sums is averaged, so the
    returned value is good to ~a_N'/2 where successive differences have shrunk
    far below the slack itself.
    """
    m = int(m)
    if m < 1:
        raise DomainError("m must be >= 1")
    if not (slack > 0.0):
        raise DomainError("slack must be > 0")
    probe = np.asarray(sequence(np.arange(m, m + contract_check_terms, dtype=np.int64)),
                       dtype=np.float64)
    if probe.size and (not np.all(probe > 0.0) or np.any(np.diff(probe) > 0.0)):
        raise SequenceContractError(
            "sequence must be positive and monotone decreasing on the sampled range"
        )
    bound = float(probe[0])

    total = 0.0
    last_a = bound
    n0 = m
    chunk = 1 << 16
    max_n = m + (1 << 25)
    while last_a >= slack:
        if n0 > max_n:
            raise NonConvergenceError(
                f"sequence did not drop below slack {slack:g} within {max_n - m} terms"
            )
        idx = np.arange(n0, min(n0 + chunk, max_n + 1), dtype=np.int64)
        a = np.asarray(sequence(idx), dtype=np.float64)
        signs = np.where(idx % 2 == 1, 1.0, -1.0)
        total += float(np.sum(signs * a))
        last_a = float(a[-1])
        n0 = int(idx[-1]) + 1
        chunk = min(2 * chunk, 1 << 22)
    # average the two enclosing partial sums: S_N and S_N + next term
    next_term = float(np.asarray(sequence(np.array([n0], dtype=np.int64)))[0])
    next_sign = 1.0 if n0 % 2 == 1 else -1.0
    tail = total + 0.5 * next_sign * next_term
    return AltTailBound(tail, bound, abs(tail) <= bound + _slack(bound))


# ----------------------------------------------------------------------------
# randomized suites (vectorized; seeded)
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class PropSuiteResult:
    proposition: str
    cases: int
    failures: int
    worst_violation: float
    seed: int

    @property
    def passed(self) -> bool:
        return self.failures == 0


def run_prop1_suite(cases: int = 10_000, seed: int = 0) -> PropSuiteResult:
    """|z1+z2| >= ||z1|-|z2|| on random pairs with |Re|, |Im| <= 1e3."""
    rng = np.random.default_rng(seed)
    z1 = rng.uniform(-1e3, 1e3, cases) + 1j * rng.uniform(-1e3, 1e3, cases)
    z2 = rng.uniform(-1e3, 1e3, cases) + 1j * rng.uniform(-1e3, 1e3, cases)
    # include exact cancellation pairs, the equality case
    k = max(1, cases // 100)
    z2[:k] = -z1[:k]
    lhs = np.abs(z1 + z2)
    rhs = np.abs(np.abs(z1) - np.abs(z2))
    slack = 1e-9 * (1.0 + np.abs(z1) + np.abs(z2))
    violation = rhs - lhs
    failures = int(np.sum(violation > slack))
    return PropSuiteResult("prop1", cases, failures, float(np.max(violation)), seed)


def run_prop2_suite(cases: int = 10_000, seed: int = 0, grid: int = 256) -> PropSuiteResult:
    """Modulus <= a on t-grids, equality only on the major axis when a > b.

    From a^2 - |(x,y)|^2 = (a^2-b^2) sin^2 t it follows that
    a - |(x,y)| >= (a-b) sin^2(t) / 2, which is the sharp form checked away
    from t in {0, pi}.
    """
    rng = np.random.default_rng(seed)
    axes = np.exp(rng.uniform(-3.0, 3.0, (cases, 2)))
    a = np.max(axes, axis=1)
    b = np.min(axes, axis=1)
    t = np.linspace(0.0, 2.0 * math.pi, grid, endpoint=False)
    worst = 0.0
    failures = 0
    chunk = 512
    for i0 in range(0, cases, chunk):
        aa = a[i0 : i0 + chunk, None]
        bb = b[i0 : i0 + chunk, None]
        mod = np.hypot(aa * np.cos(t), bb * np.sin(t))
        slack = 1e-12 * (1.0 + aa)
        over = mod - aa
        failures += int(np.sum(np.any(over > slack, axis=1)))
        worst = max(worst, float(np.max(over)))
        # strict drop away from the axis endpoints
        interior = mod - (aa - 0.5 * (aa - bb) * np.sin(t) ** 2)
        failures += int(np.sum(np.any(interior > slack, axis=1)))
        worst = max(worst, float(np.max(interior)))
    return PropSuiteResult("prop2", cases, failures, worst, seed)


def run_prop3_suite(cases: int = 10_000, seed: int = 0) -> PropSuiteResult:
    """Equality sqrt(u^2+v^2) = u+v holds iff u*v = 0 and u+v >= 0."""
    rng = np.random.default_rng(seed)
    u = rng.uniform(-100.0, 100.0, cases)
    v = rng.uniform(-100.0, 100.0, cases)
    third = cases // 3
    v[:third] = 0.0
    u[third : 2 * third] = 0.0
    mod = np.hypot(u, v)
    total = u + v
    slack = BASE_SLACK * (1.0 + np.abs(u) + np.abs(v))
    equal = np.abs(mod - total) <= slack
    should = (np.abs(u * v) <= slack) & (total >= -slack)
    mismatch = equal != should
    failures = int(np.sum(mismatch))
    worst = float(np.max(np.abs(mod - total) * mismatch)) if failures else 0.0
    return PropSuiteResult("prop3", cases, failures, worst, seed)


def run_prop4_suite(cases: int = 10_000, seed: int = 0, grid: int = 4096) -> PropSuiteResult:
    """Reconstruction identity to 1e-11*(1+r) plus the (a, b, r) orderings."""
    rng = np.random.default_rng(seed)
    r = np.exp(rng.uniform(math.log(1e-2), math.log(1e2), cases))
    delta = r * rng.uniform(-1.0, 1.0, cases)
    a = r + delta
    b = np.hypot(r, delta)
    phi = -np.arctan2(delta, r)
    t = np.linspace(0.0, 2.0 * math.pi, grid, endpoint=False)
    cos_t, sin_t = np.cos(t), np.sin(t)
    failures = 0
    worst = 0.0
    chunk = 256
    for i0 in range(0, cases, chunk):
        sl = slice(i0, min(i0 + chunk, cases))
        lhs = r[sl, None] * (cos_t + sin_t)
        rhs = a[sl, None] * cos_t + b[sl, None] * np.sin(t + phi[sl, None])
        err = np.max(np.abs(lhs - rhs), axis=1)
        tol = 1e-11 * (1.0 + r[sl])
        failures += int(np.sum(err > tol))
        worst = max(worst, float(np.max(err / (1.0 + r[sl]))))
    eps_ord = BASE_SLACK * (1.0 + r)
    pos = delta >= 0.0
    ord_ok = np.where(
        pos,
        (r <= b + eps_ord) & (b <= a + eps_ord),
        (a <= r + eps_ord) & (r <= b + eps_ord),
    )
    failures += int(np.sum(~ord_ok))
    return PropSuiteResult("prop4", cases, failures, worst, seed)


def run_prop5_suite(cases: int = 10_000, seed: int = 0, max_m: int = 50) -> PropSuiteResult:
    """Partial-sum monotonicity and |S_m| <= a_m on random admissible sequences.

    Families (all completely monotone, so the Chebyshev reference limit is
    rigorous): n^(-p), geometric q^n, and shifted power (n+c)^(-p).
    """
    rng = np.random.default_rng(seed)
    n = np.arange(1, max_m + 2, dtype=np.float64)
    failures = 0
    worst = 0.0
    ref_terms = np.arange(1.0, 65.0)
    for _ in range(cases):
        family = rng.integers(0, 3)
        if family == 0:
            p = rng.uniform(0.6, 3.0)
            seq = lambda x: x ** (-p)
        elif family == 1:
            q = rng.uniform(0.3, 0.95)
            seq = lambda x: q**x
        else:
            p = rng.uniform(0.6, 3.0)
            c = rng.uniform(0.0, 5.0)
            seq = lambda x: (x + c) ** (-p)
        a = seq(n)
        limit = crvz_reference_sum(seq(ref_terms))
        signs = np.where(np.arange(1, max_m + 2) % 2 == 1, 1.0, -1.0)
        partials = np.cumsum(signs * a)
        slack = BASE_SLACK * (1.0 + a[0])
        odd = partials[0::2]
        even = partials[1::2]
        if np.any(np.diff(odd) > slack) or np.any(np.diff(even) < -slack):
            failures += 1
            continue
        # S_m = limit - S^{m-1}; S^0 = 0
        prev = np.concatenate(([0.0], partials[:max_m]))
        tails = np.abs(limit - prev)
        violation = float(np.max(tails - a[:max_m + 1]))
        worst = max(worst, violation)
        if violation > 1e-9 * (1.0 + a[0]):
            failures += 1
    return PropSuiteResult("prop5", cases, failures, worst, seed)


def run_all_suites(cases: int = 10_000, seed: int = 0) -> list[PropSuiteResult]:
    """All five campaigns with per-suite seeds derived from the given seed."""
    return [
        run_prop1_suite(cases, seed),
        run_prop2_suite(cases, seed + 1),
        run_prop3_suite(cases, seed + 2),
        run_prop4_suite(cases, seed + 3),
        run_prop5_suite(cases, seed + 4),
    ]
