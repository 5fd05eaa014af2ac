"""Counting strictly chained partitions: W(U) = |Omega(U)| three ways.

Three independent engines compute the same function so that they can
cross-validate each other and the brute-force oracle:

* ``CaseTableCounter`` -- the residue-class recurrence on U mod pq,
      W(pqU) = W(pqU+1) = W(pU) + W(qU) - W(U)
  together with the eight-way case table for pqU+r, 1 < r < pq.

* ``HalvingCounter`` -- the p = 2 specialization,
      W(qU)   = W(U) + W(qU-1)
      W(qU+1) = W(U) + W(qU/2 - 1)        (U even)
      W(qU+1) = W(U) + W((qU+1)/2)        (U odd)
      W(qU+r) = W(floor((qU+r)/2))        (2 <= r <= q-1)

* ``DirectSumCounter`` -- stratification by the pure-power amount,
      W(U) = Wp(U) + W(U/q) + sum_c delta(c, U) * W(floor(U / (p^c q)))
  where Wp(n) says whether n has only digits 0 and 1 in base p, and
  delta(c, U) = 1 iff floor(U/p^c) = 1 mod q and Wp(U mod p^c) = 1.

All engines use exact integer arithmetic, memoize on U alone, and evaluate
with an explicit work stack so deeply chained arguments cannot overflow the
interpreter recursion limit.  W(x) = 0 for any x outside the naturals; inside
the recurrences this shows up as divisibility checks, never as rationals.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .core import InvalidSystemError, PQSystem

Expansion = tuple[int, tuple[tuple[int, int], ...]]


def digits_zero_one(n: int, base: int) -> bool:
    """True when n >= 0 is a sum of distinct powers of ``base``.

    Equivalently, the base-``base`` digits of n are all 0 or 1; such a
    partition is unique, so the associated count is the 0/1 indicator.
    """
    if base < 2:
        raise ValueError("base must be >= 2")
    if n < 0:
        return False
    while n:
        if n % base > 1:
            return False
        n //= base
    return True


def summand_indicator(c: int, u: int, sys: PQSystem) -> int:
    """The 0/1 coefficient selecting surviving summands in the direct sum."""
    if c < 0:
        raise ValueError("c must be >= 0")
    pc = sys.p**c
    if (u // pc) % sys.q != 1:
        return 0
    return 1 if digits_zero_one(u % pc, sys.p) else 0


def indicator_gap(sys: PQSystem) -> int:
    """Least guaranteed gap between surviving summands (0 when p > q).

    With N = floor(log_p(q - (q-1)/p)) and p < q, an index c with a surviving
    summand forces the next N indices to vanish, so the evaluation loop may
    skip them.  Computed exactly: N is the largest n with p^(n+1) <= pq-q+1.
    """
    if sys.p > sys.q:
        return 0
    n = 0
    power = sys.p  # p^(n+1)
    bound = sys.p * sys.q - sys.q + 1
    while power * sys.p <= bound:
        n += 1
        power *= sys.p
    return n


class CountTable:
    """Memoized table for one counting engine; subclasses define the rule.

    ``table`` maps U to W(U) and ``star`` maps U to W*(U), the number of
    partitions with no part 1.  Entries are exact and never rewritten.
    """

    def __init__(self, sys: PQSystem) -> None:
        self.sys = sys
        self.table: dict[int, int] = {0: 1, 1: 1}
        self.star: dict[int, int] = {0: 1}

    def _expand(self, u: int) -> Expansion:
        """Return (constant, ((coeff, dep), ...)) with all deps < u."""
        raise NotImplementedError

    def w(self, u: int) -> int:
        """W(u): the number of strictly chained partitions of u."""
        table = self.table
        if u < 0:
            return 0
        hit = table.get(u)
        if hit is not None:
            return hit
        stack = [u]
        while stack:
            v = stack[-1]
            if v in table:
                stack.pop()
                continue
            const, deps = self._expand(v)
            missing = [d for _, d in deps if d >= 2 and d not in table]
            if missing:
                stack.extend(missing)
                continue
            total = const
            for coeff, d in deps:
                if d >= 0:
                    total += coeff * table.get(d, 1 if d in (0, 1) else 0)
            table[v] = total
            stack.pop()
        return table[u]

    def w_star(self, u: int) -> int:
        """W*(u): partitions of u with no part 1; W*(0) = 1 by convention."""
        if u < 0:
            return 0
        hit = self.star.get(u)
        if hit is not None:
            return hit
        total = 0
        if u % self.sys.p == 0:
            total += self.w(u // self.sys.p)
        if u % self.sys.q == 0:
            total += self.w(u // self.sys.q)
        if u % self.sys.pq == 0:
            total -= self.w(u // self.sys.pq)
        self.star[u] = total
        return total

    def scan(self, limit: int) -> list[int]:
        """W on 0..limit, bottom-up; independent of the sparse memo."""
        if limit < 0:
            raise ValueError("limit must be >= 0")
        arr = [0] * (limit + 1)
        arr[0] = 1
        if limit >= 1:
            arr[1] = 1
        expand = self._expand
        for v in range(2, limit + 1):
            const, deps = expand(v)
            total = const
            for coeff, d in deps:
                if d >= 0:
                    total += coeff * arr[d]
            arr[v] = total
        return arr


class CaseTableCounter(CountTable):
    """General engine: recurrence by the residue of U modulo pq."""

    def _expand(self, u: int) -> Expansion:
        sys = self.sys
        p, q = sys.p, sys.q
        v, r = divmod(u, sys.pq)
        if r == 0:
            return 0, ((1, u // p), (1, u // q), (-1, v))
        if r == 1:
            return 0, ((1, u - 1),)
        if r % p == 0:
            k = r // p
            if k == sys.k0:
                return 0, ((1, q * v + sys.k0), (1, p * v + p - sys.l0))
            return 0, ((1, q * v + k),)
        if r % q == 0:
            l = r // q
            if l == sys.l0:
                return 0, ((1, p * v + sys.l0), (1, q * v + q - sys.k0))
            return 0, ((1, p * v + l),)
        if (r - 1) % p == 0:
            return 0, ((1, q * v + (r - 1) // p),)
        if (r - 1) % q == 0:
            return 0, ((1, p * v + (r - 1) // q),)
        return 0, ()


class HalvingCounter(CountTable):
    """p = 2 engine: every step divides the argument by q or (nearly) by 2."""

    def __init__(self, sys: PQSystem) -> None:
        if sys.p != 2:
            raise InvalidSystemError("the halving rules require p = 2")
        super().__init__(sys)

    def _expand(self, u: int) -> Expansion:
        q = self.sys.q
        k, r = divmod(u, q)
        if r == 0:
            return 0, ((1, k), (1, u - 1))
        if r == 1:
            if k % 2 == 0:
                return 0, ((1, k), (1, q * k // 2 - 1))
            return 0, ((1, k), (1, u // 2))
        return 0, ((1, u // 2),)


class DirectSumCounter(CountTable):
    """Direct engine: sum over the sizes of the pure-power block.

    The two optional accelerations are provably result-neutral: once a base-p
    digit of U exceeds 1 every later indicator vanishes (``prefix_exit``), and
    a surviving summand silences its ``indicator_gap`` successors
    (``gap_skip``).  Both can be switched off to test that neutrality.
    """

    def __init__(self, sys: PQSystem, prefix_exit: bool = True, gap_skip: bool = True) -> None:
        super().__init__(sys)
        self.prefix_exit = prefix_exit
        self.gap_skip = gap_skip
        self._gap = indicator_gap(sys)

    def _expand(self, u: int) -> Expansion:
        sys = self.sys
        p, q = sys.p, sys.q
        const = 1 if digits_zero_one(u, p) else 0
        deps: list[tuple[int, int]] = []
        if u % q == 0:
            deps.append((1, u // q))
        pc = 1
        prefix_ok = True  # digits of u below the current index are all 0/1
        skip_until = -1
        c = 0
        bound = u // (q + 1)
        while pc <= bound:
            if prefix_ok:
                if c > skip_until and (u // pc) % q == 1:
                    deps.append((1, u // (pc * q)))
                    if self.gap_skip:
                        skip_until = c + self._gap
            elif self.prefix_exit:
                break
            else:
                if c > skip_until and summand_indicator(c, u, sys):
                    deps.append((1, u // (pc * q)))  # pragma: no cover - neutral
            if (u // pc) % p > 1:
                prefix_ok = False
            pc *= p
            c += 1
        return const, tuple(deps)


METHOD_ALIASES = {
    "cases": "cases",
    "halving": "halving",
    "direct": "direct",
    # compatibility spellings used by the CLI contract
    "general": "cases",
    "p2": "halving",
    "theorem2": "direct",
}


def make_counter(sys: PQSystem, method: str = "auto") -> CountTable:
    """Build a counting engine; ``auto`` prefers the p = 2 fast path."""
    if method == "auto":
        method = "halving" if sys.p == 2 else "cases"
    name = METHOD_ALIASES.get(method)
    if name is None:
        raise ValueError(f"unknown counting method {method!r}")
    if name == "cases":
        return CaseTableCounter(sys)
    if name == "halving":
        return HalvingCounter(sys)
    return DirectSumCounter(sys)


def all_counters(sys: PQSystem) -> list[CountTable]:
    """One instance of every engine applicable to ``sys``."""
    engines: list[CountTable] = [CaseTableCounter(sys)]
    if sys.p == 2:
        engines.append(HalvingCounter(sys))
    engines.append(DirectSumCounter(sys))
    return engines


def cross_validate(sys: PQSystem, limit: int,
                   oracle: Optional[Sequence[int]] = None) -> list[str]:
    """Compare all engines (and optionally an oracle) on 0..limit.

    Returns a list of human-readable disagreement descriptions; an empty list
    means every method produced identical counts.
    """
    engines = all_counters(sys)
    scans = [(type(e).__name__, e.scan(limit)) for e in engines]
    if oracle is not None:
        scans.append(("oracle", list(oracle[: limit + 1])))
    name0, base = scans[0]
    problems = []
    for name, arr in scans[1:]:
        if arr != base:
            for u, (x, y) in enumerate(zip(base, arr)):
                if x != y:
                    problems.append(f"{sys}: {name0}({u})={x} but {name}({u})={y}")
                    break
    return problems
