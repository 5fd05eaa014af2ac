"""Sequence-level analysis of the counting function W.

Covers the partial-sum function S(x) = sum of W(U) for U <= x and its exact
self-similarity

    S(x) = 2*(S(x/p) + S(x/q) - S(x/pq)) + 1 - W*(floor(x)),

the growth exponents

    alpha:  1/p^a + 1/q^a - 1/(pq)^a = 1/2      (S(x) ~ C * x^alpha)
    beta:   1/p^b + 1/q^b = 1                   (W(U) <= U^beta)

with the closed-form ceiling C < 2 / (ln(p^a)/(p^a-1) + ln(q^a)/(q^a-1)),
plus the p = 2 structure results: the local monotonicity pattern
W(qU) >= W(qU+1) >= W(qU-1) and W(qU+r) >= W(qU+r+1), the running-maximum
jump scan with its divisibility classification, the exact characterization of
{W = 1} and {W = 2} for (2, 3), and the doubling construction that certifies
W is unbounded once any value exceeds 1.

Violations of proved statements raise InvariantViolationError; conjecture
exceptions are reported as data, never as errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import (
    InvalidSystemError,
    InvariantViolationError,
    PQSystem,
    UnreachableSumError,
)
from .counting import CountTable, make_counter
from .enumeration import ResidueEnumerator

BISECTION_LO = 1e-6
BISECTION_HI = 8.0


@dataclass(frozen=True, slots=True)
class GrowthExponents:
    """Roots of the two defining equations with their residuals."""

    alpha: float
    beta: float
    alpha_residual: float
    beta_residual: float


def _alpha_gap(x: float, sys: PQSystem) -> float:
    return sys.p**-x + sys.q**-x - (sys.p * sys.q) ** -x - 0.5


def _beta_gap(x: float, sys: PQSystem) -> float:
    return sys.p**-x + sys.q**-x - 1.0


def _bisect(fn, lo: float, hi: float) -> float:
    """Root of a strictly decreasing continuous function on [lo, hi]."""
    flo, fhi = fn(lo), fn(hi)
    if flo < 0 or fhi > 0:
        raise ValueError("bracket does not straddle the root")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if fn(mid) >= 0:
            lo = mid
        else:
            hi = mid
    return lo if abs(fn(lo)) <= abs(fn(hi)) else hi


def solve_exponents(sys: PQSystem) -> GrowthExponents:
    """Bisection roots of both exponent equations; checks alpha > beta."""
    alpha = _bisect(lambda x: _alpha_gap(x, sys), BISECTION_LO, BISECTION_HI)
    beta = _bisect(lambda x: _beta_gap(x, sys), BISECTION_LO, BISECTION_HI)
    if not alpha > beta:
        raise InvariantViolationError(f"alpha {alpha} is not above beta {beta}")
    return GrowthExponents(alpha, beta, _alpha_gap(alpha, sys), _beta_gap(beta, sys))


def constant_upper_bound(sys: PQSystem, alpha: Optional[float] = None) -> float:
    """Closed-form ceiling for the growth constant of S(x)/x^alpha."""
    if alpha is None:
        alpha = solve_exponents(sys).alpha
    pa = sys.p**alpha
    qa = sys.q**alpha
    return 2.0 / (math.log(pa) / (pa - 1.0) + math.log(qa) / (qa - 1.0))


class PrefixSums:
    """S(x) for real x up to a limit, backed by one bottom-up count scan."""

    def __init__(self, sys: PQSystem, limit: int,
                 counter: Optional[CountTable] = None) -> None:
        self.sys = sys
        self.limit = limit
        self.counter = counter or make_counter(sys)
        counts = self.counter.scan(limit)
        sums = [0] * (limit + 1)
        acc = 0
        for u in range(1, limit + 1):
            acc += counts[u]
            sums[u] = acc
        self._counts = counts
        self._sums = sums

    def count(self, u: int) -> int:
        return self._counts[u] if 0 <= u <= self.limit else self.counter.w(u)

    def s(self, x: float) -> int:
        """S(x): the sum of W over 1..floor(x); 0 for x < 1."""
        if x >= self.limit + 1:
            raise ValueError(f"x={x} beyond the scanned limit {self.limit}")
        n = math.floor(x)
        return self._sums[n] if n >= 1 else 0

    def identity_gap(self, x: float) -> int:
        """LHS minus RHS of the S self-similarity at x; always 0."""
        lhs = self.s(x)
        rhs = (
            2 * (self.s(x / self.sys.p) + self.s(x / self.sys.q) - self.s(x / self.sys.pq))
            + 1
            - self.counter.w_star(max(math.floor(x), 0))
        )
        return lhs - rhs


def sum_s(x: float, sys: PQSystem, counter: Optional[CountTable] = None) -> int:
    """One-off S(x) by streaming accumulation."""
    if x < 1:
        return 0
    counter = counter or make_counter(sys)
    arr = counter.scan(math.floor(x))
    return sum(arr[1:])


@dataclass(frozen=True, slots=True)
class GrowthEstimate:
    """Dyadic snapshots of S(x)/x^alpha against the closed-form ceiling."""

    alpha: float
    upper_bound: float
    samples: tuple[tuple[int, int, float], ...]  # (x, S(x), ratio)
    tail_spread: float

    @property
    def max_ratio(self) -> float:
        return max(r for _, _, r in self.samples)


def estimate_growth_constant(sys: PQSystem, xmax: int,
                             counter: Optional[CountTable] = None,
                             tail: int = 5) -> GrowthEstimate:
    """Ratios S(2^k)/2^(k*alpha) for 2^k <= xmax, plus the tail spread.

    The ratios converge to the growth constant; the spread of the last
    ``tail`` dyadic samples, (max-min)/min, measures stabilization.
    """
    if xmax < 10:
        raise ValueError("xmax must be at least 10")
    exponents = solve_exponents(sys)
    alpha = exponents.alpha
    bound = constant_upper_bound(sys, alpha)
    prefix = PrefixSums(sys, xmax, counter)
    samples = []
    k = 1
    while 2**k <= xmax:
        x = 2**k
        s = prefix.s(x)
        samples.append((x, s, s / x**alpha))
        k += 1
    ratios = [r for _, _, r in samples[-tail:]]
    spread = (max(ratios) - min(ratios)) / min(ratios) if min(ratios) > 0 else math.inf
    return GrowthEstimate(alpha, bound, tuple(samples), spread)


@dataclass(frozen=True, slots=True)
class MonotonicityReport:
    limit: int
    q: int
    violations: tuple[str, ...]


def check_local_monotonicity(limit: int, sys: PQSystem,
                             counts: Optional[Sequence[int]] = None) -> MonotonicityReport:
    """Scan W(qU) >= W(qU+1) >= W(qU-1) and W(qU+r) >= W(qU+r+1) (p = 2).

    Checks every instance with arguments at most ``limit`` + q; returns the
    (expected empty) list of counterexamples.
    """
    if sys.p != 2:
        raise InvalidSystemError("the monotonicity pattern requires p = 2")
    q = sys.q
    arr = counts if counts is not None else make_counter(sys).scan(limit + q)
    if len(arr) < limit + q + 1:
        raise ValueError(f"need counts through {limit + q}, got {len(arr) - 1}")
    bad: list[str] = []
    for u in range(0, limit // q + 1):
        base = q * u
        if not arr[base] >= arr[base + 1]:
            bad.append(f"W({base}) < W({base + 1})")
        if u >= 1 and not arr[base + 1] >= arr[base - 1]:
            bad.append(f"W({base + 1}) < W({base - 1})")
        for r in range(0, q - 1):
            if not arr[base + r] >= arr[base + r + 1]:
                bad.append(f"W({base + r}) < W({base + r + 1})")
    return MonotonicityReport(limit, q, tuple(bad))


@dataclass(frozen=True, slots=True)
class JumpRecord:
    """A point where the running maximum of W strictly increases."""

    u: int
    value: int
    odd_multiple: bool  # u = q * (odd number): the conjectured-only class


@dataclass(frozen=True, slots=True)
class JumpReport:
    limit: int
    records: tuple[JumpRecord, ...]
    conjecture_exceptions: tuple[int, ...]  # jumps at even multiples of q


def max_count_jumps(limit: int, sys: PQSystem,
                    counts: Optional[Sequence[int]] = None) -> JumpReport:
    """Jump list of x -> max(W(U) : U <= x), with the proved classification.

    Every jump location must be divisible by q, and an even multiple of q can
    only be a jump at a multiple of 2*q^2; breaking either is an invariant
    violation.  Jumps at even multiples are reported as exceptions to the
    odd-multiples-only conjecture.
    """
    if sys.p != 2:
        raise InvalidSystemError("the jump classification requires p = 2")
    q = sys.q
    arr = counts if counts is not None else make_counter(sys).scan(limit)
    records: list[JumpRecord] = []
    exceptions: list[int] = []
    running = 1  # W(0) = 1
    for u in range(1, limit + 1):
        w = arr[u]
        if w <= running:
            continue
        running = w
        if u % q != 0:
            raise InvariantViolationError(f"running-max jump at {u} not divisible by {q}")
        k = u // q
        if k % 2 == 1:
            records.append(JumpRecord(u, w, True))
        else:
            if u % (2 * q * q) != 0:
                raise InvariantViolationError(
                    f"even-multiple jump at {u} is not a multiple of {2 * q * q}"
                )
            records.append(JumpRecord(u, w, False))
            exceptions.append(u)
    return JumpReport(limit, tuple(records), tuple(exceptions))


@dataclass(frozen=True, slots=True)
class SmallCountReport:
    limit: int
    ones: tuple[int, ...]
    twos: tuple[int, ...]


def classify_small_counts(limit: int, sys: PQSystem,
                          counts: Optional[Sequence[int]] = None) -> SmallCountReport:
    """Verify the exact {W=1} and {W=2} sets for (2, 3) up to ``limit``.

    {W=1} = {0, 1} + {3*2^a - 1} and {W=2} = {3, 4, 6, 7} + {9*2^a - 1}
    + {15*2^a - 1}; any disagreement with the computed counts is an
    invariant violation.
    """
    if (sys.p, sys.q) != (2, 3):
        raise InvalidSystemError("the small-count characterization is for (2, 3)")
    arr = counts if counts is not None else make_counter(sys).scan(limit)
    ones = {u for u in range(limit + 1) if arr[u] == 1}
    twos = {u for u in range(limit + 1) if arr[u] == 2}

    def geometric(seed: int) -> set[int]:
        out = set()
        x = seed - 1
        while x <= limit:
            out.add(x)
            x = 2 * (x + 1) - 1
        return out

    predicted_ones = ({0, 1} | geometric(3)) & set(range(limit + 1))
    predicted_twos = ({3, 4, 6, 7} | geometric(9) | geometric(15)) & set(range(limit + 1))
    if ones != predicted_ones:
        diff = sorted(ones ^ predicted_ones)
        raise InvariantViolationError(f"{{W=1}} characterization fails at {diff[:5]}")
    if twos != predicted_twos:
        diff = sorted(twos ^ predicted_twos)
        raise InvariantViolationError(f"{{W=2}} characterization fails at {diff[:5]}")
    return SmallCountReport(limit, tuple(sorted(ones)), tuple(sorted(twos)))


@dataclass(frozen=True, slots=True)
class DoublingStep:
    u: int
    lower_bound: int
    count: Optional[int]  # None when verification was skipped (u too large)


def doubling_witnesses(
    u0: int,
    n: int,
    sys: PQSystem,
    counter: Optional[CountTable] = None,
    verify_limit: int = 10**18,
) -> list[DoublingStep]:
    """The sequence u_{k+1} = (1 + p^(kc) q^(kd)) u_k with W(u_k) >= 2^k.

    c and d are the componentwise maxima of the top-part exponents of two
    distinct partitions of u0 (hence W(u0) >= 2 is required).  Each step is
    verified against a counting engine while u_k <= verify_limit.
    """
    counter = counter or make_counter(sys)
    if counter.w(u0) < 2:
        raise UnreachableSumError(f"need at least two partitions of {u0}")
    members = sorted(ResidueEnumerator(sys).omega(u0), key=lambda pt: pt.parts)
    (a1, b1), (a2, b2) = members[0].largest, members[1].largest
    c, d = max(a1, a2), max(b1, b2)
    steps: list[DoublingStep] = []
    u = u0
    for k in range(1, n + 1):
        w = counter.w(u) if u <= verify_limit else None
        if w is not None and w < 2**k:
            raise InvariantViolationError(
                f"doubling construction failed: W({u}) = {w} < 2^{k}"
            )
        steps.append(DoublingStep(u, 2**k, w))
        u *= 1 + sys.p ** (k * c) * sys.q ** (k * d)
    return steps


@dataclass(frozen=True, slots=True)
class BoundReport:
    limit: int
    beta: float
    max_ratio: float
    violations: tuple[int, ...]


def check_growth_bound(limit: int, sys: PQSystem,
                       counts: Optional[Sequence[int]] = None) -> BoundReport:
    """Verify W(U) <= U^beta on [1, limit] and report the largest ratio."""
    beta = solve_exponents(sys).beta
    arr = counts if counts is not None else make_counter(sys).scan(limit)
    worst = 0.0
    bad: list[int] = []
    for u in range(1, limit + 1):
        bound = u**beta
        ratio = arr[u] / bound
        if ratio > worst:
            worst = ratio
        if arr[u] > bound:
            bad.append(u)
    return BoundReport(limit, beta, worst, tuple(bad))
