"""Shortest strictly chained partitions and the exponentiation cost model.

The least number of parts sigma(U) obeys the same residue case split as the
set decomposition:

    sigma(pqU)   = min(sigma(qU), sigma(pU))
    sigma(pqU+1) = 1 + sigma(pqU)

with the analogous one- or two-branch rules for pqU+r, 1 < r < pq (a +1 edge
costs one extra part, a scaling edge is free).  Witnesses are rebuilt by
replaying the argmin branches; ties go to the first-listed branch of the case
table (the p-scaled one), which makes witnesses deterministic.

A witness doubles as a multiply-few exponentiation schedule: g^U is evaluated
by a Horner walk along the chain, with one p-th or q-th powering per exponent
step of the leading part and one multiplication per extra part.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .core import (
    Partition,
    PQSystem,
    UNIT_PARTITION,
    UnreachableSumError,
    append_unit,
    map_p,
    map_q,
    value,
)

_INF = math.inf

#: (offset, argument, transform) triples; transform is applied to the branch
#: witness, where "p"/"q" scale and a leading "1" appends the part 1.
_Branch = tuple[int, int, str]


@dataclass(frozen=True, slots=True)
class ShortestResult:
    """sigma(u) with one witness of that length."""

    u: int
    sigma: int
    witness: Partition


@dataclass(frozen=True, slots=True)
class ChainCost:
    """Operation counts of the Horner evaluation along a chain.

    p_ops and q_ops equal the exponents of the largest part; adds is the
    number of parts minus one.
    """

    p_ops: int
    q_ops: int
    adds: int


@dataclass(frozen=True, slots=True)
class ShortestStats:
    limit: int
    mean_ratio: float
    histogram: dict[int, int]


class ShortestTable:
    """Memoized sigma values for one base system."""

    def __init__(self, sys: PQSystem) -> None:
        self.sys = sys
        self.table: dict[int, float] = {0: 0, 1: 1}

    def _branches(self, u: int) -> tuple[_Branch, ...]:
        sys = self.sys
        p, q = sys.p, sys.q
        v, r = divmod(u, sys.pq)
        if r == 0:
            return ((0, u // p, "p"), (0, u // q, "q"))
        if r == 1:
            return ((1, u - 1, "1"),)
        if r % p == 0:
            k = r // p
            if k == sys.k0:
                return ((0, q * v + k, "p"), (1, p * v + p - sys.l0, "1q"))
            return ((0, q * v + k, "p"),)
        if r % q == 0:
            l = r // q
            if l == sys.l0:
                return ((0, p * v + l, "q"), (1, q * v + q - sys.k0, "1p"))
            return ((0, p * v + l, "q"),)
        if (r - 1) % p == 0:
            return ((1, q * v + (r - 1) // p, "1p"),)
        if (r - 1) % q == 0:
            return ((1, p * v + (r - 1) // q, "1q"),)
        return ()

    def sigma_or_inf(self, u: int) -> float:
        """sigma(u), or infinity when Omega(u) is empty."""
        if u < 0:
            return _INF
        table = self.table
        hit = table.get(u)
        if hit is not None:
            return hit
        stack = [u]
        while stack:
            v = stack[-1]
            if v in table:
                stack.pop()
                continue
            branches = self._branches(v)
            missing = [arg for _, arg, _ in branches if arg not in table]
            if missing:
                stack.extend(missing)
                continue
            table[v] = min(
                (off + table[arg] for off, arg, _ in branches), default=_INF
            )
            stack.pop()
        return table[u]

    def sigma(self, u: int) -> int:
        best = self.sigma_or_inf(u)
        if best == _INF:
            raise UnreachableSumError(
                f"no strictly chained partition of {u} for {self.sys}"
            )
        return int(best)

    def _apply(self, transform: str, pt: Partition) -> Partition:
        for ch in reversed(transform):
            if ch == "p":
                pt = map_p(pt)
            elif ch == "q":
                pt = map_q(pt)
            else:
                pt = append_unit(pt)
        return pt

    def witness(self, u: int) -> ShortestResult:
        """One shortest partition, rebuilt by replaying argmin branches."""
        best = self.sigma(u)
        path: list[str] = []
        v = u
        while v > 1:
            branches = self._branches(v)
            scores = [off + self.sigma_or_inf(arg) for off, arg, _ in branches]
            pick = min(range(len(branches)), key=scores.__getitem__)
            path.append(branches[pick][2])
            v = branches[pick][1]
        pt = UNIT_PARTITION if v == 1 else Partition()
        for transform in reversed(path):
            pt = self._apply(transform, pt)
        assert value(pt, self.sys) == u and len(pt) == best
        return ShortestResult(u, best, pt)

    def scan(self, limit: int) -> list[float]:
        """sigma on 0..limit bottom-up (math.inf where Omega is empty)."""
        if limit < 0:
            raise ValueError("limit must be >= 0")
        arr: list[float] = [0] * (limit + 1)
        if limit >= 1:
            arr[1] = 1
        for v in range(2, limit + 1):
            best = _INF
            for off, arg, _ in self._branches(v):
                score = off + arr[arg]
                if score < best:
                    best = score
            arr[v] = best
        return arr

    def stats(self, limit: int) -> ShortestStats:
        """Histogram of sigma over [2, limit] and the mean of 4*sigma/log2(U).

        The mean hovering around 1 reflects the empirical growth rate of
        roughly a quarter of log2(U) parts on average.
        """
        if limit < 2:
            raise ValueError("limit must be >= 2")
        arr = self.scan(limit)
        histogram: dict[int, int] = {}
        total = 0.0
        for u in range(2, limit + 1):
            s = arr[u]
            if s == _INF:
                continue
            s = int(s)
            histogram[s] = histogram.get(s, 0) + 1
            total += 4.0 * s / math.log2(u)
        n = sum(histogram.values())
        if n == 0:
            raise UnreachableSumError(f"no reachable sums in [2, {limit}] for {self.sys}")
        return ShortestStats(limit, total / n, dict(sorted(histogram.items())))


def sigma(u: int, sys: PQSystem, table: Optional[ShortestTable] = None) -> ShortestResult:
    """sigma(u) with a deterministic witness."""
    table = table or ShortestTable(sys)
    return table.witness(u)


def chain_cost(pt: Partition) -> ChainCost:
    """Powering/multiplication counts of the Horner walk for ``pt``."""
    if not pt:
        return ChainCost(0, 0, 0)
    a, b = pt.largest
    return ChainCost(a, b, len(pt) - 1)


def chain_pow(
    g: int,
    u: int,
    modulus: int,
    sys: PQSystem,
    witness: Optional[Partition] = None,
) -> int:
    """g**u mod modulus evaluated along a chained partition of u.

    Walking the chain from the largest part: raise the accumulator by the
    exponent gap to the next part (repeated p-th and q-th powers), multiply
    by g once per additional part, and finish with the exponents of the
    smallest part.  Cost is ``chain_cost`` of the witness.
    """
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    if u < 0:
        raise ValueError("exponent must be >= 0")
    if u == 0:
        return 1 % modulus
    if witness is None:
        witness = ShortestTable(sys).witness(u).witness
    elif value(witness, sys) != u:
        raise ValueError("witness does not sum to the exponent")
    parts = witness.parts
    acc = g % modulus
    for (a1, b1), (a2, b2) in zip(parts, parts[1:]):
        for _ in range(a1 - a2):
            acc = pow(acc, sys.p, modulus)
        for _ in range(b1 - b2):
            acc = pow(acc, sys.q, modulus)
        acc = acc * g % modulus
    ak, bk = parts[-1]
    for _ in range(ak):
        acc = pow(acc, sys.p, modulus)
    for _ in range(bk):
        acc = pow(acc, sys.q, modulus)
    return acc
