"""Strictly chained two-base partitions: base systems, the partition type,
elementary maps, and a brute-force enumeration oracle.

A (p,q)-part is an integer p^a * q^b for coprime bases p, q >= 2.  A strictly
chained (p,q)-ary partition of U is a set of distinct parts summing to U in
which every part divides the next larger one.  Because gcd(p, q) = 1, the
divisibility chain is equivalent to the exponent pairs (a, b) forming a chain
in N^2 under the componentwise order.

Partitions are stored as tuples of exponent pairs in decreasing part-value
order; the empty tuple is the unique partition of 0.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

#: Largest U accepted by the brute-force enumerator unless overridden.
DEFAULT_ENUMERATION_CEILING = 10**7


class ChainPartError(Exception):
    """Base class for all errors raised by this package."""


class InvalidSystemError(ChainPartError, ValueError):
    """The base pair (p, q) is unusable (non-coprime, too small, equal)."""


class PartitionError(ChainPartError, ValueError):
    """A multiset of parts is not a strictly chained partition."""


class NonSmoothPartError(PartitionError):
    """A part is not of the form p^a * q^b."""


class DuplicatePartError(PartitionError):
    """A part value occurs more than once."""


class ChainBreakError(PartitionError):
    """Two parts are incomparable under divisibility."""


class UnreachableSumError(ChainPartError, ValueError):
    """No strictly chained partition of the requested sum exists."""


class BudgetError(ChainPartError, RuntimeError):
    """An enumeration exceeded its configured resource budget."""


class MalformedWordError(ChainPartError, ValueError):
    """A word does not belong to the codec language."""


class InvariantViolationError(ChainPartError, RuntimeError):
    """A property that should hold unconditionally was observed to fail."""


@dataclass(frozen=True, slots=True)
class PQSystem:
    """Validated coprime base pair with precomputed modular inverses.

    k0 = p^(-1) mod q and l0 = q^(-1) mod p.  The pair (k0, p - l0) is the
    unique solution of k*p - l*q = 1 with 0 < k < q and 0 < l < p; the
    residue-class recurrences branch on exactly these two constants.
    """

    p: int
    q: int
    k0: int
    l0: int

    @property
    def pq(self) -> int:
        return self.p * self.q

    @property
    def has_binary_base(self) -> bool:
        """True when one of the bases is 2 (the 'binary amount' is defined)."""
        return self.p == 2 or self.q == 2

    def __str__(self) -> str:
        return f"({self.p},{self.q})"


def make_system(p: int, q: int) -> PQSystem:
    """Validate (p, q) and compute the modular inverses k0, l0."""
    if not isinstance(p, int) or not isinstance(q, int):
        raise InvalidSystemError("bases must be integers")
    if p < 2 or q < 2:
        raise InvalidSystemError(f"bases must be >= 2, got ({p},{q})")
    if p == q:
        raise InvalidSystemError("bases must be distinct")
    if math.gcd(p, q) != 1:
        raise InvalidSystemError(f"bases must be coprime, gcd({p},{q}) = {math.gcd(p, q)}")
    k0 = pow(p, -1, q)
    l0 = pow(q, -1, p)
    if k0 * p - (p - l0) * q != 1:
        raise InvalidSystemError("inverse computation failed")  # unreachable
    return PQSystem(p, q, k0, l0)


@dataclass(frozen=True, slots=True)
class Partition:
    """A strictly chained partition as exponent pairs in decreasing order.

    ``parts[i] = (a, b)`` stands for the part p^a * q^b.  Consecutive pairs
    satisfy a[i+1] <= a[i] and b[i+1] <= b[i] with at least one strict, so
    every part divides its predecessor.  The empty partition is ``Partition()``.
    """

    parts: tuple[tuple[int, int], ...] = ()

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.parts)

    def __bool__(self) -> bool:
        return bool(self.parts)

    @property
    def has_unit(self) -> bool:
        """True when the part 1 (exponents (0, 0)) is present."""
        return bool(self.parts) and self.parts[-1] == (0, 0)

    @property
    def largest(self) -> tuple[int, int]:
        return self.parts[0]

    @property
    def smallest(self) -> tuple[int, int]:
        return self.parts[-1]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "Partition":
        """Build a partition from exponent pairs in any order, verifying it."""
        items = [(int(a), int(b)) for a, b in pairs]
        for a, b in items:
            if a < 0 or b < 0:
                raise PartitionError(f"negative exponent in ({a},{b})")
        # On a chain the exponent sum strictly decreases with the part value.
        items.sort(key=lambda ab: (ab[0] + ab[1], ab[0]), reverse=True)
        _check_chain(items)
        return cls(tuple(items))


def _check_chain(desc_pairs: list[tuple[int, int]]) -> None:
    for (a1, b1), (a2, b2) in zip(desc_pairs, desc_pairs[1:]):
        if (a1, b1) == (a2, b2):
            raise DuplicatePartError(f"duplicate part with exponents ({a1},{b1})")
        if a2 > a1 or b2 > b1:
            raise ChainBreakError(
                f"parts with exponents ({a1},{b1}) and ({a2},{b2}) are not chained"
            )


EMPTY_PARTITION = Partition()
UNIT_PARTITION = Partition(((0, 0),))


def part_value(pair: tuple[int, int], sys: PQSystem) -> int:
    a, b = pair
    return sys.p**a * sys.q**b


def value(pt: Partition, sys: PQSystem) -> int:
    """Sum of the part values; the empty partition sums to 0."""
    return sum(sys.p**a * sys.q**b for a, b in pt.parts)


def factor_value(v: int, sys: PQSystem) -> Optional[tuple[int, int]]:
    """Factor v as p^a * q^b, or None if v has another prime factor."""
    if v < 1:
        return None
    a = 0
    while v % sys.p == 0:
        v //= sys.p
        a += 1
    b = 0
    while v % sys.q == 0:
        v //= sys.q
        b += 1
    return (a, b) if v == 1 else None


def validate(values: Iterable[int], sys: PQSystem) -> Partition:
    """Check a multiset of part values and return the sorted partition.

    Raises NonSmoothPartError, DuplicatePartError or ChainBreakError with the
    offending parts named; accepts the empty multiset (partition of 0).
    """
    decorated = []
    for v in values:
        v = int(v)
        pair = factor_value(v, sys)
        if pair is None:
            raise NonSmoothPartError(f"{v} is not of the form {sys.p}^a*{sys.q}^b")
        decorated.append((v, pair))
    decorated.sort(reverse=True)
    for (v1, _), (v2, _) in zip(decorated, decorated[1:]):
        if v1 == v2:
            raise DuplicatePartError(f"part {v1} occurs more than once")
        if v1 % v2 != 0:
            raise ChainBreakError(f"{v2} does not divide {v1}")
    return Partition(tuple(pair for _, pair in decorated))


def map_p(pt: Partition) -> Partition:
    """Multiply every part by p (increment every first exponent)."""
    return Partition(tuple((a + 1, b) for a, b in pt.parts))


def map_q(pt: Partition) -> Partition:
    """Multiply every part by q (increment every second exponent)."""
    return Partition(tuple((a, b + 1) for a, b in pt.parts))


def unmap_p(pt: Partition) -> Partition:
    """Divide every part by p; all first exponents must be positive."""
    if any(a == 0 for a, _ in pt.parts):
        raise PartitionError("a part is not divisible by p")
    return Partition(tuple((a - 1, b) for a, b in pt.parts))


def unmap_q(pt: Partition) -> Partition:
    if any(b == 0 for _, b in pt.parts):
        raise PartitionError("a part is not divisible by q")
    return Partition(tuple((a, b - 1) for a, b in pt.parts))


def _binary_split(pt: Partition, sys: PQSystem) -> tuple[list[tuple[int, int]], int]:
    """Split off the pure powers of 2; return (other parts, binary amount)."""
    if not sys.has_binary_base:
        raise InvalidSystemError("binary amount requires min(p, q) = 2")
    rest = []
    amount = 0
    if sys.p == 2:
        for a, b in pt.parts:
            if b == 0:
                amount += 1 << a
            else:
                rest.append((a, b))
    else:  # q == 2
        for a, b in pt.parts:
            if a == 0:
                amount += 1 << b
            else:
                rest.append((a, b))
    return rest, amount


def binary_amount(pt: Partition, sys: PQSystem) -> int:
    """Sum of the parts that are powers of 2, or 0 if there are none."""
    return _binary_split(pt, sys)[1]


def _with_amount(rest: list[tuple[int, int]], amount: int, sys: PQSystem) -> Partition:
    """Reassemble non-binary parts with the binary expansion of ``amount``.

    The caller must ensure the result is chained; a ChainBreakError is raised
    otherwise (the expansion's top power may outgrow the smallest other part).
    """
    pairs = list(rest)
    if amount:
        top = amount.bit_length() - 1
        if pairs:
            limit = pairs[-1][0] if sys.p == 2 else pairs[-1][1]
            if top > limit:
                raise ChainBreakError(
                    f"binary block {amount} does not divide the smallest other part"
                )
        bits = [i for i in range(top, -1, -1) if amount >> i & 1]
        if sys.p == 2:
            pairs.extend((i, 0) for i in bits)
        else:
            pairs.extend((0, i) for i in bits)
    return Partition(tuple(pairs))


def map_one(pt: Partition, sys: PQSystem) -> tuple[int, ...]:
    """The +1 map; returns raw part values because chaining may be lost.

    With a binary base, the powers of 2 among the parts are replaced by the
    binary expansion of their sum plus one.  Otherwise a part 1 is appended,
    possibly duplicating an existing 1.  Values are returned in decreasing
    order; feed them to ``validate`` to recover a Partition when legal.
    """
    if sys.has_binary_base:
        rest, amount = _binary_split(pt, sys)
        values = [part_value(pair, sys) for pair in rest]
        amount += 1
        values.extend(1 << i for i in range(amount.bit_length()) if amount >> i & 1)
    else:
        values = [part_value(pair, sys) for pair in pt.parts]
        values.append(1)
    values.sort(reverse=True)
    return tuple(values)


def map_one_strict(pt: Partition, sys: PQSystem) -> Partition:
    """The +1 map in contexts where it is known to preserve chaining."""
    if sys.has_binary_base:
        rest, amount = _binary_split(pt, sys)
        return _with_amount(rest, amount + 1, sys)
    if pt.has_unit:
        raise DuplicatePartError("cannot append a second part 1")
    return Partition(pt.parts + ((0, 0),))


def unmap_one_strict(pt: Partition, sys: PQSystem) -> Partition:
    """Inverse of the +1 map; the binary amount (or a part 1) must be positive."""
    if sys.has_binary_base:
        rest, amount = _binary_split(pt, sys)
        if amount == 0:
            raise PartitionError("binary amount is already 0")
        return _with_amount(rest, amount - 1, sys)
    if not pt.has_unit:
        raise PartitionError("no part 1 to remove")
    return Partition(pt.parts[:-1])


def append_unit(pt: Partition) -> Partition:
    """Append the part 1 to a partition that has none."""
    if pt.has_unit:
        raise DuplicatePartError("partition already has a part 1")
    return Partition(pt.parts + ((0, 0),))


def binary_partition(u: int) -> Partition:
    """The partition of u into distinct powers of 2 (requires a binary base)."""
    if u < 0:
        raise UnreachableSumError("negative sum")
    return Partition(tuple((i, 0) for i in range(u.bit_length() - 1, -1, -1) if u >> i & 1))


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------


def _max_tail_cache(sys: PQSystem, bound: int) -> dict[tuple[int, int], int]:
    """maxsum[(a,b)] = largest chain sum with all parts dividing p^a*q^b.

    Monotone in (a, b), so the best continuation below a part is always the
    immediate division by p or by q; plain dynamic programming suffices.
    """
    maxsum: dict[tuple[int, int], int] = {}
    pairs = []
    a = 0
    va = 1
    while va <= bound:
        b = 0
        v = va
        while v <= bound:
            pairs.append((a, b, v))
            b += 1
            v *= sys.q
        a += 1
        va *= sys.p
    pairs.sort(key=lambda t: t[2])
    for a, b, v in pairs:
        best = 0
        if a > 0:
            best = maxsum[(a - 1, b)]
        if b > 0:
            best = max(best, maxsum[(a, b - 1)])
        maxsum[(a, b)] = v + best
    return maxsum


def brute_force_enumerate(
    u: int, sys: PQSystem, ceiling: int = DEFAULT_ENUMERATION_CEILING
) -> frozenset[Partition]:
    """All strictly chained partitions of u by depth-first search.

    Candidates for the next part are the proper divisors of the current part;
    branches whose remainder cannot be completed (remainder larger than the
    best possible tail sum) are pruned.  Independent of the recursive
    enumeration engines, so it serves as their oracle.
    """
    if u < 0:
        return frozenset()
    if u > ceiling:
        raise BudgetError(f"u={u} exceeds the enumeration ceiling {ceiling}")
    if u == 0:
        return frozenset((EMPTY_PARTITION,))
    maxsum = _max_tail_cache(sys, u)
    found: list[Partition] = []
    chain: list[tuple[int, int]] = []

    def extend(a: int, b: int, remaining: int) -> None:
        if remaining == 0:
            found.append(Partition(tuple(chain)))
            return
        for i in range(a, -1, -1):
            for j in range(b, -1, -1):
                if i == a and j == b:
                    continue
                v = sys.p**i * sys.q**j
                if v <= remaining <= maxsum[(i, j)]:
                    chain.append((i, j))
                    extend(i, j, remaining - v)
                    chain.pop()

    for (a, b), total in maxsum.items():
        v = sys.p**a * sys.q**b
        if v <= u <= total:
            chain.append((a, b))
            extend(a, b, u - v)
            chain.pop()
    return frozenset(found)


def iter_chains(limit: int, sys: PQSystem):
    """Yield (sum, exponent pairs) for every chain with sum <= limit.

    Streaming counterpart of ``chain_census``: the same depth-first sweep,
    but handing out each chain (largest part first) instead of counting.
    """
    if limit < 0:
        raise ValueError("limit must be >= 0")
    chain: list[tuple[int, int]] = []

    def extend(a: int, b: int, v: int, total: int):
        yield total, tuple(chain)
        budget = limit - total
        vi = v
        for i in range(a, -1, -1):
            w = vi
            for j in range(b, -1, -1):
                if (i < a or j < b) and w <= budget:
                    chain.append((i, j))
                    yield from extend(i, j, w, total + w)
                    chain.pop()
                w //= sys.q
            vi //= sys.p

    a = 0
    va = 1
    while va <= limit:
        b = 0
        v = va
        while v <= limit:
            chain.append((a, b))
            yield from extend(a, b, v, v)
            chain.pop()
            b += 1
            v *= sys.q
        a += 1
        va *= sys.p


@dataclass(frozen=True, slots=True)
class CensusResult:
    """Exhaustive brute-force sweep: per-sum partition counts and least sizes."""

    limit: int
    counts: list[int]
    min_len: list[Optional[int]]


def chain_census(limit: int, sys: PQSystem,
                 ceiling: int = DEFAULT_ENUMERATION_CEILING) -> CensusResult:
    """Count every chained partition with sum <= limit in one DFS sweep.

    Equivalent to running ``brute_force_enumerate`` for each u <= limit and
    recording cardinalities and minimum part counts, but visits each chain
    exactly once.
    """
    if limit < 0:
        raise ValueError("limit must be >= 0")
    if limit > ceiling:
        raise BudgetError(f"limit={limit} exceeds the enumeration ceiling {ceiling}")
    counts = [0] * (limit + 1)
    min_len: list[Optional[int]] = [None] * (limit + 1)
    counts[0] = 1
    min_len[0] = 0

    def record(total: int, length: int) -> None:
        counts[total] += 1
        if min_len[total] is None or length < min_len[total]:
            min_len[total] = length

    def extend(a: int, b: int, v: int, total: int, length: int) -> None:
        record(total, length)
        budget = limit - total
        # proper divisors of p^a * q^b, largest exponent sweep
        vi = v
        for i in range(a, -1, -1):
            w = vi
            for j in range(b, -1, -1):
                if (i < a or j < b) and w <= budget:
                    extend(i, j, w, total + w, length + 1)
                w //= sys.q
            vi //= sys.p

    a = 0
    va = 1
    while va <= limit:
        b = 0
        v = va
        while v <= limit:
            extend(a, b, v, v, 1)
            b += 1
            v *= sys.q
        a += 1
        va *= sys.p
    return CensusResult(limit, counts, min_len)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def to_json(pt: Partition, sys: PQSystem, include_values: bool = False) -> str:
    """Serialize as ``{"p":2,"q":3,"parts":[[a,b],...],"sum":"19"}``.

    The sum (and the optional per-part values) are decimal strings so that
    arbitrary-precision entries survive lossy JSON readers.
    """
    doc: dict = {
        "p": sys.p,
        "q": sys.q,
        "parts": [[a, b] for a, b in pt.parts],
        "sum": str(value(pt, sys)),
    }
    if include_values:
        doc["values"] = [str(part_value(pair, sys)) for pair in pt.parts]
    return json.dumps(doc, separators=(",", ":"))


def from_json(text: str, sys: Optional[PQSystem] = None) -> tuple[Partition, PQSystem]:
    """Parse the JSON form, verifying the chain and the recorded sum."""
    doc = json.loads(text)
    if sys is None:
        sys = make_system(int(doc["p"]), int(doc["q"]))
    elif (int(doc.get("p", sys.p)), int(doc.get("q", sys.q))) != (sys.p, sys.q):
        raise PartitionError("document bases differ from the requested system")
    pt = Partition.from_pairs((int(a), int(b)) for a, b in doc["parts"])
    if "sum" in doc and int(doc["sum"]) != value(pt, sys):
        raise PartitionError("recorded sum does not match the parts")
    return pt, sys
