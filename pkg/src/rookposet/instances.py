"""Concrete posets: the rook monoid R_n, the symmetric group S_n and the
rank levels R_{n,k}."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import permutations

from . import rook
from .poset import GradedPoset, build, subposet
from .rook import EdgeLabel, RookElement

__all__ = [
    "Family",
    "InstanceSpec",
    "DEFAULT_MAX_N",
    "build_rook",
    "build_symmetric",
    "build_rook_rank_level",
    "build_instance",
    "edelman_covers",
]

# R_6 has 13327 elements; beyond that full builds need --unsafe-large-n.
DEFAULT_MAX_N = 6


class Family(enum.Enum):
    ROOK = "rook"
    SYMMETRIC = "sym"
    ROOK_RANK_LEVEL = "rook-level"


@dataclass(frozen=True)
class InstanceSpec:
    family: Family
    n: int
    k: int | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if (self.k is not None) != (self.family is Family.ROOK_RANK_LEVEL):
            raise ValueError("k is given exactly for rank-level instances")
        if self.k is not None and not 0 <= self.k <= self.n:
            raise ValueError(f"k = {self.k} outside 0..{self.n}")

    @classmethod
    def parse(cls, text: str) -> "InstanceSpec":
        """Parse ``rook:n``, ``sym:n`` or ``rook:n:k``."""
        parts = text.strip().lower().split(":")
        try:
            nums = [int(p) for p in parts[1:]]
        except ValueError:
            raise ValueError(f"bad instance spec {text!r}") from None
        if parts[0] == "rook" and len(nums) == 1:
            return cls(Family.ROOK, nums[0])
        if parts[0] == "rook" and len(nums) == 2:
            return cls(Family.ROOK_RANK_LEVEL, nums[0], nums[1])
        if parts[0] in ("sym", "s") and len(nums) == 1:
            return cls(Family.SYMMETRIC, nums[0])
        raise ValueError(f"bad instance spec {text!r}; expected rook:n, sym:n or rook:n:k")

    def __str__(self) -> str:
        if self.family is Family.ROOK_RANK_LEVEL:
            return f"rook:{self.n}:{self.k}"
        return f"{self.family.value}:{self.n}"


def _check_bound(n: int, max_n: int) -> None:
    if n > max_n:
        raise ValueError(f"n = {n} exceeds the instance bound {max_n}")


def _rook_covers(x: RookElement):
    return [(c.target, c.label) for c in rook.covers_of(x)]


def build_rook(n: int, *, max_n: int = DEFAULT_MAX_N) -> GradedPoset:
    """R_n under the Bruhat-Chevalley-Renner order, labeled by F."""
    _check_bound(n, max_n)
    p = build(
        rook.enumerate_rooks(n, max_n=max(max_n, n)),
        rook.length,
        _rook_covers,
        name=f"rook:{n}",
    )
    zero, w0 = RookElement([0] * n), RookElement(range(n, 0, -1))
    if p.elements[p.bottom] != zero or p.ranks[p.bottom] != 0:
        raise AssertionError("R_n minimum is not the zero matrix")
    if p.elements[p.top] != w0 or p.ranks[p.top] != n * n:
        raise AssertionError("R_n maximum is not the long element of rank n^2")
    return p


def edelman_covers(w: RookElement) -> list[tuple[RookElement, EdgeLabel]]:
    """Bruhat covers of a permutation: swap w_i < w_j (i < j) when inv rises by 1,
    labeled (w_i, w_j)."""
    base = rook.inv(w)
    out = []
    n = len(w)
    for i in range(n):
        for j in range(i + 1, n):
            if w[i] < w[j]:
                y = list(w)
                y[i], y[j] = y[j], y[i]
                if rook.inv(y) == base + 1:
                    out.append((RookElement(y), EdgeLabel(w[i], w[j])))
    return out


def build_symmetric(n: int, *, max_n: int = DEFAULT_MAX_N) -> GradedPoset:
    """S_n in Bruhat order with Edelman's labels, ranked by inversions."""
    _check_bound(n, max_n)
    perms = sorted(
        (RookElement(w) for w in permutations(range(1, n + 1))),
        key=lambda w: (rook.inv(w), tuple(w)),
    )
    return build(perms, rook.inv, edelman_covers, name=f"sym:{n}")


def build_rook_rank_level(n: int, k: int, *, max_n: int = DEFAULT_MAX_N) -> GradedPoset:
    """Induced subposet of R_n on the matrices of rank k.

    Whether the induced order is graded is computed, not assumed; see
    ``GradedPoset.graded`` on the result.
    """
    if not 0 <= k <= n:
        raise ValueError(f"k = {k} outside 0..{n}")
    return subposet(
        build_rook(n, max_n=max_n),
        lambda x: rook.matrix_rank(x) == k,
        name=f"rook:{n}:{k}",
    )


def build_instance(spec: InstanceSpec, *, max_n: int = DEFAULT_MAX_N) -> GradedPoset:
    if spec.family is Family.ROOK:
        return build_rook(spec.n, max_n=max_n)
    if spec.family is Family.SYMMETRIC:
        return build_symmetric(spec.n, max_n=max_n)
    return build_rook_rank_level(spec.n, spec.k, max_n=max_n)
