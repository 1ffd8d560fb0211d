"""Rook monoid elements in one-line notation.

An element of R_n is an n x n 0/1 matrix with at most one 1 in every row and
column. Column ``j`` is recorded as ``a_j = i`` when entry ``(i, j)`` is 1 and
``a_j = 0`` when the column is empty, so ``(3, 0, 4, 0)`` is the 4 x 4 matrix
with ones at (3, 1) and (4, 3).

Everything here is 1-indexed on the mathematical side and 0-indexed in
Python sequences.
"""

from __future__ import annotations

import enum
import math
from itertools import combinations, permutations
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "RookElement",
    "EdgeLabel",
    "CoverType",
    "Cover",
    "LengthMismatch",
    "from_matrix",
    "to_matrix",
    "inv",
    "coinv",
    "coinversion_pairs",
    "length",
    "length_by_dimension",
    "length_by_inversions",
    "matrix_rank",
    "is_cover",
    "covers_of",
    "label",
    "generator_relations",
    "enumerate_rooks",
    "rook_count",
    "MAX_ENUMERATION_N",
]

# 13327 elements at n = 6; n = 7 is 130922 and still fits, beyond that it doesn't.
MAX_ENUMERATION_N = 7


class LengthMismatch(AssertionError):
    """The two length formulas disagree; this means a bug, never bad input."""


class RookElement(tuple):
    """A partial permutation ``(a_1, ..., a_n)`` with entries in ``{0..n}``.

    Nonzero entries are pairwise distinct. Instances are plain tuples, so they
    hash, compare and serialize like one.
    """

    __slots__ = ()

    def __new__(cls, entries: Iterable[int]) -> "RookElement":
        values = tuple(int(a) for a in entries)
        n = len(values)
        if n == 0:
            raise ValueError("rook element needs n >= 1 entries")
        seen = set()
        for a in values:
            if not 0 <= a <= n:
                raise ValueError(f"entry {a} outside 0..{n} in {values}")
            if a:
                if a in seen:
                    raise ValueError(f"row {a} used twice in {values}")
                seen.add(a)
        return super().__new__(cls, values)

    @classmethod
    def parse(cls, text: str) -> "RookElement":
        """Parse ``"3,0,4,0"`` (brackets and spaces are tolerated)."""
        body = text.strip().strip("()[]")
        return cls(int(tok) for tok in body.split(",") if tok.strip())

    @property
    def n(self) -> int:
        return len(self)

    def __repr__(self) -> str:
        return f"RookElement({tuple(self)!r})"

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"


class _Pair(NamedTuple):
    first: int
    second: int


class EdgeLabel(_Pair):
    """A pair in {0..n} x {1..n}, ordered lexicographically.

    The second coordinate of a cover label is never 0, so 0 is rejected here.
    """

    __slots__ = ()

    def __new__(cls, first: int, second: int) -> "EdgeLabel":
        if first < 0:
            raise ValueError(f"label first coordinate must be >= 0, got {first}")
        if second < 1:
            raise ValueError(f"label second coordinate must be >= 1, got {second}")
        return super().__new__(cls, int(first), int(second))

    def __str__(self) -> str:
        return f"({self.first},{self.second})"


class CoverType(enum.Enum):
    TYPE1 = 1  # one entry raised
    TYPE2 = 2  # two entries transposed


class Cover(NamedTuple):
    target: RookElement
    label: EdgeLabel
    kind: CoverType


def _as_rook(x: Sequence[int]) -> RookElement:
    return x if isinstance(x, RookElement) else RookElement(x)


def from_matrix(m: Sequence[Sequence[int]]) -> RookElement:
    """Convert a square 0/1 rook matrix (list of rows) to one-line notation."""
    n = len(m)
    if n == 0 or any(len(row) != n for row in m):
        raise ValueError("matrix must be square and non-empty")
    entries = [0] * n
    for i, row in enumerate(m):
        ones = 0
        for j, v in enumerate(row):
            if v not in (0, 1):
                raise ValueError(f"entry ({i + 1},{j + 1}) is {v!r}, not 0/1")
            if v:
                ones += 1
                if entries[j]:
                    raise ValueError(f"column {j + 1} has more than one 1")
                entries[j] = i + 1
        if ones > 1:
            raise ValueError(f"row {i + 1} has more than one 1")
    return RookElement(entries)


def to_matrix(x: Sequence[int]) -> list[list[int]]:
    x = _as_rook(x)
    n = x.n
    m = [[0] * n for _ in range(n)]
    for j, a in enumerate(x):
        if a:
            m[a - 1][j] = 1
    return m


def inv(x: Sequence[int]) -> int:
    """Pairs i < j with a_i > a_j (zeros count as smallest)."""
    return sum(1 for a, b in combinations(x, 2) if a > b)


def coinversion_pairs(x: Sequence[int]) -> set[tuple[int, int]]:
    """1-based pairs (i, j), i < j, with 0 < a_i < a_j."""
    return {
        (i + 1, j + 1)
        for (i, a), (j, b) in combinations(enumerate(x), 2)
        if 0 < a < b
    }


def coinv(x: Sequence[int]) -> int:
    return len(coinversion_pairs(x))


def length_by_dimension(x: Sequence[int]) -> int:
    """sum(a_i + n - i over nonzero a_i) - coinv(x), i 1-based."""
    n = len(x)
    return sum(a + n - i for i, a in enumerate(x, start=1) if a) - coinv(x)


def length_by_inversions(x: Sequence[int]) -> int:
    return sum(x) + inv(x)


def length(x: Sequence[int]) -> int:
    """Rank of ``x`` in the Bruhat-Chevalley-Renner order.

    Both closed forms are evaluated; a disagreement raises LengthMismatch.
    """
    d = length_by_dimension(x)
    s = length_by_inversions(x)
    if d != s:
        raise LengthMismatch(f"length formulas disagree on {tuple(x)}: {d} != {s}")
    return d


def matrix_rank(x: Sequence[int]) -> int:
    return sum(1 for a in x if a)


def _type1_ok(x: Sequence[int], i: int, b: int) -> bool:
    # Raising a_i to b is a cover iff every value strictly between a_i and b
    # already sits left of position i and b itself is free. Filling an empty
    # column also gains one inversion per empty column to its right, so that
    # case additionally needs no zeros right of i.
    a = x[i]
    if b <= a:
        return False
    left = set(x[:i])
    right = set(x[i + 1:])
    if b in left or b in right:
        return False
    if a == 0 and 0 in right:
        return False
    return all(v in left for v in range(a + 1, b))


def _type2_ok(x: Sequence[int], i: int, j: int) -> bool:
    # Swapping a_i < a_j (i < j) is a cover iff nothing between them has a
    # value in the closed range [a_i, a_j].
    lo, hi = x[i], x[j]
    if not lo < hi:
        return False
    return all(v > hi or v < lo for v in x[i + 1:j])


def is_cover(x: Sequence[int], y: Sequence[int]) -> CoverType | None:
    """Return the cover type if ``y`` covers ``x``, else None."""
    if len(x) != len(y):
        raise ValueError(f"dimension mismatch: {len(x)} vs {len(y)}")
    diff = [k for k in range(len(x)) if x[k] != y[k]]
    if len(diff) == 1:
        (i,) = diff
        return CoverType.TYPE1 if _type1_ok(x, i, y[i]) else None
    if len(diff) == 2:
        i, j = diff
        if x[i] == y[j] and x[j] == y[i] and _type2_ok(x, i, j):
            return CoverType.TYPE2
    return None


def label(x: Sequence[int], y: Sequence[int]) -> EdgeLabel:
    """Edge label of the cover x < y: (a_i, b_i) for type 1, (a_i, a_j) for type 2."""
    kind = is_cover(x, y)
    if kind is None:
        raise ValueError(f"{tuple(y)} does not cover {tuple(x)}")
    diff = [k for k in range(len(x)) if x[k] != y[k]]
    if kind is CoverType.TYPE1:
        return EdgeLabel(x[diff[0]], y[diff[0]])
    return EdgeLabel(x[diff[0]], x[diff[1]])


def covers_of(x: Sequence[int]) -> list[Cover]:
    """All upper covers of ``x``, sorted by (label, one-line sequence)."""
    x = _as_rook(x)
    n = x.n
    used = set(x)
    out: list[Cover] = []
    for i, a in enumerate(x):
        # type 1: the only candidate is one past the run a+1, a+2, ... found
        # to the left of i
        left = set(x[:i])
        b = a + 1
        while b in left:
            b += 1
        if b <= n and b not in used and (a or 0 not in x[i + 1:]):
            y = list(x)
            y[i] = b
            out.append(Cover(RookElement(y), EdgeLabel(a, b), CoverType.TYPE1))
        # type 2
        for j in range(i + 1, n):
            if _type2_ok(x, i, j):
                y = list(x)
                y[i], y[j] = x[j], x[i]
                out.append(Cover(RookElement(y), EdgeLabel(x[i], x[j]), CoverType.TYPE2))
    out.sort(key=lambda c: (c.label, tuple(c.target)))
    return out


def generator_relations(x: Sequence[int]) -> list[RookElement]:
    """Elements one generating step above ``x``.

    Steps are: raise a single entry to any free larger value, or swap an
    increasing pair ``a_i < a_j`` (i < j) into decreasing position. The order
    is the reflexive-transitive closure of these steps.
    """
    x = _as_rook(x)
    n = x.n
    used = set(x)
    out = []
    for i, a in enumerate(x):
        for b in range(a + 1, n + 1):
            if b not in used:
                y = list(x)
                y[i] = b
                out.append(RookElement(y))
        for j in range(i + 1, n):
            if a < x[j]:
                y = list(x)
                y[i], y[j] = x[j], a
                out.append(RookElement(y))
    return sorted(set(out))


def rook_count(n: int) -> int:
    """|R_n| = sum_k C(n,k)^2 k!."""
    return sum(math.comb(n, k) ** 2 * math.factorial(k) for k in range(n + 1))


def enumerate_rooks(n: int, *, max_n: int = MAX_ENUMERATION_N) -> list[RookElement]:
    """All of R_n sorted by (length, one-line sequence)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > max_n:
        raise ValueError(f"n = {n} exceeds the enumeration bound {max_n}")
    out = []
    for k in range(n + 1):
        for cols in combinations(range(n), k):
            for rows in permutations(range(1, n + 1), k):
                a = [0] * n
                for c, r in zip(cols, rows):
                    a[c] = r
                out.append(RookElement(a))
    out.sort(key=lambda e: (length(e), tuple(e)))
    return out
