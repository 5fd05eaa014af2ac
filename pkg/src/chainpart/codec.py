"""Word encodings of strictly chained partitions.

Tree words (p = 2 only).  The residue decomposition of Omega(U) is a tree
whose nodes are the successive arguments and whose edges are labelled 1
(the +1 map), 2 (scale by 2) or q (scale by q).  Reading the labels from the
root U down to a leaf of value 1 yields one word per partition; replaying the
reversed word from the single-part partition of 1 rebuilds the partition.
The word of the one-part partition of 1 is the empty word (the root is
already the leaf).  For fixed U the word set is a hypercode: no word is a
subsequence of another.

Lattice words (any bases).  A partition is a chain C in N^2; the canonical
C-filling path walks from (0, 0) to the maximal point of C, always going
North before East (minimal abscissas).  Each visited point contributes one
letter:

    0   not in C, step East        1   in C, step East
    2   not in C, step North       3   in C, step North or maximal point

The canonical words are exactly the words over {0,1,2,3} that end in 3 and
contain neither 02 nor 12 as a factor; for fixed U they form an infix code
(no word is a factor of another).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .core import (
    ChainBreakError,
    MalformedWordError,
    Partition,
    PQSystem,
    UNIT_PARTITION,
    binary_amount,
    map_one_strict,
    map_p,
    map_q,
    unmap_one_strict,
    unmap_p,
    unmap_q,
    value,
)

TREE_LETTERS = ("1", "2", "q")
LATTICE_ALPHABET = "0123"


def _require_p2(sys: PQSystem) -> None:
    if sys.p != 2:
        raise MalformedWordError("tree words are defined for p = 2 systems only")


@dataclass(frozen=True, slots=True)
class TreeWord:
    """A word over the letters 1, 2 and q (stored symbolically)."""

    letters: tuple[str, ...]

    def __post_init__(self) -> None:
        for ch in self.letters:
            if ch not in TREE_LETTERS:
                raise MalformedWordError(f"invalid tree letter {ch!r}")

    def __len__(self) -> int:
        return len(self.letters)

    def render(self, sys: PQSystem) -> str:
        """Concrete text: the q letter prints as the digit q itself.

        For q >= 10 letters are separated by '.' so the text stays parseable.
        """
        tokens = [str(sys.q) if ch == "q" else ch for ch in self.letters]
        return ".".join(tokens) if sys.q >= 10 else "".join(tokens)

    @classmethod
    def parse(cls, text: str, sys: PQSystem) -> "TreeWord":
        text = text.strip()
        if not text:
            return cls(())
        tokens = text.split(".") if "." in text or sys.q >= 10 else list(text)
        letters = []
        for tok in tokens:
            if tok == "1" or tok == "2":
                letters.append(tok)
            elif tok == str(sys.q):
                letters.append("q")
            else:
                raise MalformedWordError(f"token {tok!r} is not a letter for {sys}")
        return cls(tuple(letters))


def _tree_branch(v: int, q: int) -> str:
    """Classify a node of the decomposition tree, for v >= 2.

    Returns one of:
      'A'  v divisible by q:      scale-q branch to v/q, +1 branch to v-1
      'B'  v = 1 mod 2q:          +1 branch to v-1
      'C'  v = q+1 mod 2q:        scale-2 branch to v/2, (+1,q) branch to (v-1)/q
      'D'  other even v:          scale-2 branch to v/2
      'E'  other odd v:           (+1,2) branch to (v-1)/2
    """
    if v % q == 0:
        return "A"
    m = v % (2 * q)
    if m == 1:
        return "B"
    if m == q + 1:
        return "C"
    return "D" if v % 2 == 0 else "E"


def tree_encode(pt: Partition, sys: PQSystem) -> TreeWord:
    """The root-to-leaf label word of ``pt`` in the decomposition tree."""
    _require_p2(sys)
    if not pt:
        raise MalformedWordError("the empty partition (of 0) has no tree word")
    v = value(pt, sys)
    letters: list[str] = []
    while v > 1:
        kind = _tree_branch(v, sys.q)
        if kind == "A":
            if binary_amount(pt, sys) == 0:
                letters.append("q")
                pt = unmap_q(pt)
                v //= sys.q
            else:
                letters.append("1")
                pt = unmap_one_strict(pt, sys)
                v -= 1
        elif kind == "B":
            letters.append("1")
            pt = unmap_one_strict(pt, sys)
            v -= 1
        elif kind == "C":
            if pt.parts[-1][0] > 0:  # every part even
                letters.append("2")
                pt = unmap_p(pt)
                v //= 2
            else:
                letters.append("1")
                letters.append("q")
                pt = unmap_q(unmap_one_strict(pt, sys))
                v = (v - 1) // sys.q
        elif kind == "D":
            letters.append("2")
            pt = unmap_p(pt)
            v //= 2
        else:  # E
            letters.append("1")
            letters.append("2")
            pt = unmap_p(unmap_one_strict(pt, sys))
            v = (v - 1) // 2
    if pt != UNIT_PARTITION:
        raise MalformedWordError("partition does not reduce to the leaf")  # unreachable
    return TreeWord(tuple(letters))


def tree_decode(word: TreeWord, sys: PQSystem) -> tuple[int, Partition]:
    """Replay a word from the leaf; returns (U, partition).

    Raises MalformedWordError when a +1 step breaks the chain or when the
    word is not the canonical word of the partition it replays to.
    """
    _require_p2(sys)
    v = 1
    pt = UNIT_PARTITION
    for ch in reversed(word.letters):
        if ch == "2":
            pt = map_p(pt)
            v *= 2
        elif ch == "q":
            pt = map_q(pt)
            v *= sys.q
        else:
            try:
                pt = map_one_strict(pt, sys)
            except ChainBreakError as exc:
                raise MalformedWordError(f"+1 step breaks the chain: {exc}") from exc
            v += 1
    if tree_encode(pt, sys).letters != word.letters:
        raise MalformedWordError(f"{word.letters} is not a canonical tree word")
    return v, pt


class TreeLanguage:
    """Memoized generator of the full tree-word set per value."""

    def __init__(self, sys: PQSystem) -> None:
        _require_p2(sys)
        self.sys = sys
        self._memo: dict[int, tuple[str, ...]] = {0: (), 1: ("",)}

    def words(self, v: int) -> tuple[str, ...]:
        """All symbolic words ('1', '2', 'q' letters concatenated) for v."""
        hit = self._memo.get(v)
        if hit is not None:
            return hit
        q = self.sys.q
        kind = _tree_branch(v, q)
        if kind == "A":
            out = tuple("q" + w for w in self.words(v // q))
            out += tuple("1" + w for w in self.words(v - 1))
        elif kind == "B":
            out = tuple("1" + w for w in self.words(v - 1))
        elif kind == "C":
            out = tuple("2" + w for w in self.words(v // 2))
            out += tuple("1q" + w for w in self.words((v - 1) // q))
        elif kind == "D":
            out = tuple("2" + w for w in self.words(v // 2))
        else:
            out = tuple("12" + w for w in self.words((v - 1) // 2))
        self._memo[v] = out
        return out


def lattice_encode(pt: Partition) -> str:
    """The canonical lattice word of a nonempty partition."""
    if not pt:
        raise MalformedWordError("the empty partition (of 0) has no lattice word")
    chain = list(reversed(pt.parts))  # ascending: smallest part first
    top = chain[-1]
    members = set(chain)
    out: list[str] = []
    cur = (0, 0)
    idx = 0
    while True:
        in_chain = cur in members
        if cur == top:
            out.append("3")
            break
        while chain[idx] == cur or (chain[idx][0] <= cur[0] and chain[idx][1] <= cur[1]):
            idx += 1
        target = chain[idx]
        if cur[1] < target[1]:  # North before East: minimal abscissas
            out.append("3" if in_chain else "2")
            cur = (cur[0], cur[1] + 1)
        else:
            out.append("1" if in_chain else "0")
            cur = (cur[0] + 1, cur[1])
    return "".join(out)


def is_valid_lattice_word(word: str) -> bool:
    """Syntactic membership test: ends in 3, no factor 02 or 12."""
    if not word or any(ch not in LATTICE_ALPHABET for ch in word):
        return False
    if word[-1] != "3":
        return False
    return "02" not in word and "12" not in word


def lattice_decode(word: str) -> Partition:
    """Rebuild the chain encoded by a canonical lattice word."""
    if not is_valid_lattice_word(word):
        raise MalformedWordError(f"{word!r} is not a lattice word")
    cur = (0, 0)
    chain: list[tuple[int, int]] = []
    last = len(word) - 1
    for i, ch in enumerate(word):
        if ch in "13":
            chain.append(cur)
        if i == last:
            break
        if ch in "01":
            cur = (cur[0] + 1, cur[1])
        else:
            cur = (cur[0], cur[1] + 1)
    return Partition(tuple(reversed(chain)))


def lattice_language(max_len: int) -> Iterable[str]:
    """All lattice words of length <= max_len (depth-first order).

    Walks every string over {0,1,2,3} avoiding the factors 02 and 12 and
    yields those ending in 3.  Only a stack of prefixes is kept in memory.
    """
    stack: list[tuple[str, bool]] = [("", False)]
    while stack:
        prefix, after01 = stack.pop()
        if len(prefix) >= max_len:
            continue
        for ch in "013" if after01 else "0123":
            word = prefix + ch
            if ch == "3":
                yield word
            stack.append((word, ch in "01"))


def subsequence(short: str, long: str) -> bool:
    """True when ``short`` is a (not necessarily contiguous) subword of ``long``."""
    it = iter(long)
    return all(ch in it for ch in short)


def check_hypercode(words: Iterable[str]) -> Optional[tuple[str, str]]:
    """Return a violating pair (shorter-is-subsequence-of-longer), if any."""
    by_len = sorted(words, key=len)
    for i, w in enumerate(by_len):
        for v in by_len[i + 1 :]:
            # equal-length distinct words are never subsequences of each other
            if len(w) < len(v) and subsequence(w, v):
                return (w, v)
    return None


def check_infix_code(words: Iterable[str]) -> Optional[tuple[str, str]]:
    """Return a violating pair (shorter-is-factor-of-longer), if any."""
    by_len = sorted(words, key=len)
    for i, w in enumerate(by_len):
        for v in by_len[i + 1 :]:
            if len(w) < len(v) and w in v:
                return (w, v)
    return None
