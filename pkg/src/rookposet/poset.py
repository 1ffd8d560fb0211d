"""Finite graded posets stored as labeled Hasse diagrams.

Elements are addressed by integer index. A valid :class:`GradedPoset` keeps
its elements sorted by rank, so index order is a linear extension and every
cover edge ``u -> v`` has ``u < v``. Order queries go through reachability
bitsets (Python ints, bit ``j`` of ``up_reach[i]`` set iff ``i <= j``).
"""

from __future__ import annotations

import enum
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from functools import cached_property
from graphlib import CycleError, TopologicalSorter
from itertools import accumulate
from typing import Any, Callable, Hashable, Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "PosetError",
    "GradingError",
    "ChainCutoffExceeded",
    "Length2Violation",
    "GradedPoset",
    "Interval",
    "Chain",
    "Length2Shape",
    "MobiusTable",
    "TopSweep",
    "build",
    "leq",
    "interval",
    "lex_first_chain",
    "count_increasing_chains",
    "count_strictly_decreasing_chains",
    "count_decreasing_chains",
    "increasing_chains",
    "all_maximal_chains",
    "count_maximal_chains",
    "mobius",
    "mobius_table",
    "classify_length2",
    "subposet",
    "euler_characteristic_reduced",
    "iter_bits",
]

DEFAULT_CHAIN_CUTOFF = 10**6


class PosetError(ValueError):
    pass


class GradingError(PosetError):
    """A cover edge does not raise the rank by exactly one."""


class ChainCutoffExceeded(PosetError):
    pass


class Length2Violation(PosetError):
    """A rank-2 interval is neither a chain nor a diamond."""


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _edge_key(edge: tuple[int, Any]) -> tuple:
    target, lab = edge
    return (0, lab, target) if lab is not None else (1, (), target)


class GradedPoset:
    """Hasse diagram with ranks and (optionally) labeled cover edges.

    ``up[i]`` is a tuple of ``(target, label)`` sorted by (label, target);
    ``down[j]`` is the inverse adjacency, as ``(source, label)``.
    """

    def __init__(
        self,
        elements: Sequence[Hashable],
        ranks: Sequence[int],
        edges: Iterable[tuple[int, int, Any]],
        *,
        bounded: bool = False,
        graded: bool = True,
        validate: bool = True,
        name: str = "",
    ):
        self.elements = tuple(elements)
        self.ranks = tuple(int(r) for r in ranks)
        self.graded = graded
        self.bounded = bounded
        self.name = name
        n = len(self.elements)
        if len(self.ranks) != n:
            raise PosetError("ranks and elements differ in length")
        self.index = {e: i for i, e in enumerate(self.elements)}
        if validate and len(self.index) != n:
            raise PosetError("duplicate elements")
        up: list[list[tuple[int, Any]]] = [[] for _ in range(n)]
        down: list[list[tuple[int, Any]]] = [[] for _ in range(n)]
        seen = set()
        for u, v, lab in edges:
            if validate:
                if not (0 <= u < n and 0 <= v < n):
                    raise PosetError(f"edge ({u},{v}) out of range")
                if (u, v) in seen:
                    raise PosetError(f"duplicate edge ({u},{v})")
                if graded and self.ranks[v] != self.ranks[u] + 1:
                    raise GradingError(
                        f"cover {self.elements[u]} -> {self.elements[v]} goes from "
                        f"rank {self.ranks[u]} to {self.ranks[v]}"
                    )
            seen.add((u, v))
            up[u].append((v, lab))
            down[v].append((u, lab))
        self.up = tuple(tuple(sorted(es, key=_edge_key)) for es in up)
        self.down = tuple(tuple(sorted(es, key=_edge_key)) for es in down)
        self._labels = {(u, v): lab for u, es in enumerate(self.up) for v, lab in es}
        if validate:
            if graded and any(
                self.ranks[i] > self.ranks[i + 1] for i in range(n - 1)
            ):
                raise PosetError("elements must be sorted by rank")
            if bounded:
                self._check_bounded()

    def _check_bounded(self) -> None:
        mins = [i for i in range(len(self)) if not self.down[i]]
        maxs = [i for i in range(len(self)) if not self.up[i]]
        if len(mins) != 1 or len(maxs) != 1:
            raise PosetError(
                f"declared bounded but has {len(mins)} minimal and {len(maxs)} maximal elements"
            )

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<GradedPoset{tag}: {len(self)} elements, {self.edge_count} covers>"

    @property
    def edge_count(self) -> int:
        return len(self._labels)

    def edges(self) -> Iterator[tuple[int, int, Any]]:
        for u, es in enumerate(self.up):
            for v, lab in es:
                yield u, v, lab

    def label(self, u: int, v: int) -> Any:
        try:
            return self._labels[(u, v)]
        except KeyError:
            raise PosetError(f"{u} -> {v} is not a cover") from None

    def is_cover(self, u: int, v: int) -> bool:
        return (u, v) in self._labels

    @property
    def bottom(self) -> int:
        mins = [i for i in range(len(self)) if not self.down[i]]
        if len(mins) != 1:
            raise PosetError("poset has no unique minimum")
        return mins[0]

    @property
    def top(self) -> int:
        maxs = [i for i in range(len(self)) if not self.up[i]]
        if len(maxs) != 1:
            raise PosetError("poset has no unique maximum")
        return maxs[0]

    def grading_defects(self) -> list[tuple[int, int]]:
        """Cover edges whose rank difference is not exactly one."""
        return [(u, v) for u, v, _ in self.edges() if self.ranks[v] != self.ranks[u] + 1]

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        if not self.grading_defects() and all(
            self.ranks[i] <= self.ranks[i + 1] for i in range(len(self) - 1)
        ):
            return tuple(range(len(self)))
        ts = TopologicalSorter({v: [u for u, _ in self.down[v]] for v in range(len(self))})
        try:
            return tuple(ts.static_order())
        except CycleError as exc:
            raise PosetError("cover relation has a cycle") from exc

    @cached_property
    def up_reach(self) -> tuple[int, ...]:
        """``up_reach[i]`` has bit j set iff i <= j."""
        reach = [0] * len(self)
        for i in reversed(self.topological_order):
            m = 1 << i
            for v, _ in self.up[i]:
                m |= reach[v]
            reach[i] = m
        return tuple(reach)

    @cached_property
    def down_reach(self) -> tuple[int, ...]:
        reach = [0] * len(self)
        for i in self.topological_order:
            m = 1 << i
            for u, _ in self.down[i]:
                m |= reach[u]
            reach[i] = m
        return tuple(reach)

    def comparable_pair_count(self, strict: bool = True) -> int:
        total = sum(m.bit_count() for m in self.up_reach)
        return total - len(self) if strict else total

    def _require_graded(self) -> None:
        if not self.graded or self.grading_defects():
            raise GradingError("operation needs a graded poset")


def build(
    elements: Iterable[Hashable],
    rank_fn: Callable[[Any], int],
    cover_fn: Callable[[Any], Iterable[tuple[Any, Any]]],
    *,
    bounded: bool = True,
    name: str = "",
) -> GradedPoset:
    """Build a poset from element payloads, a rank function and a cover function.

    ``cover_fn(e)`` yields ``(target_payload, label)`` pairs. Elements are
    reordered by rank (stable); rank gaps and duplicates raise.
    """
    elements = list(elements)
    index = {}
    for e in elements:
        if e in index:
            raise PosetError(f"duplicate element {e!r}")
        index[e] = None
    ranks = {e: rank_fn(e) for e in elements}
    ordered = sorted(elements, key=lambda e: ranks[e])
    index = {e: i for i, e in enumerate(ordered)}
    edges = []
    for e in ordered:
        for target, lab in cover_fn(e):
            if target not in index:
                raise PosetError(f"cover target {target!r} of {e!r} is not an element")
            edges.append((index[e], index[target], lab))
    return GradedPoset(
        ordered, [ranks[e] for e in ordered], edges, bounded=bounded, name=name
    )


def leq(p: GradedPoset, x: int, y: int) -> bool:
    return bool(p.up_reach[x] >> y & 1)


@dataclass(frozen=True)
class Interval:
    bottom: int
    top: int
    members: frozenset[int]
    length: int

    def __contains__(self, z: int) -> bool:
        return z in self.members

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Chain:
    vertices: tuple[int, ...]
    labels: tuple[Any, ...]

    def is_weakly_increasing(self) -> bool:
        return all(a <= b for a, b in zip(self.labels, self.labels[1:]))

    def is_strictly_increasing(self) -> bool:
        return all(a < b for a, b in zip(self.labels, self.labels[1:]))


def interval(p: GradedPoset, x: int, y: int) -> Interval:
    if not leq(p, x, y):
        raise PosetError(f"{p.elements[x]} is not below {p.elements[y]}")
    members = frozenset(iter_bits(p.up_reach[x] & p.down_reach[y]))
    return Interval(x, y, members, p.ranks[y] - p.ranks[x])


def _inner(p: GradedPoset, iv: Interval, u: int) -> list[tuple[int, Any]]:
    return [(v, lab) for v, lab in p.up[u] if v in iv.members]


def lex_first_chain(p: GradedPoset, iv: Interval) -> Chain:
    """Maximal chain of ``iv`` with the lexicographically smallest labels.

    Suffix minimization: best(u) = min over inner covers v of
    (label(u, v),) + best(v). Equal label sequences fall back to the
    smaller vertex sequence so the answer is deterministic.
    """
    p._require_graded()
    memo: dict[int, tuple[tuple, tuple]] = {iv.top: ((), (iv.top,))}

    def best(u: int) -> tuple[tuple, tuple]:
        if u in memo:
            return memo[u]
        options = []
        for v, lab in _inner(p, iv, u):
            labs, verts = best(v)
            options.append(((lab,) + labs, (u,) + verts))
        memo[u] = min(options)
        return memo[u]

    labs, verts = best(iv.bottom)
    return Chain(verts, labs)


def _count_chains(p: GradedPoset, iv: Interval, admissible: Callable[[Any, Any], bool]) -> int:
    # chains(u, last) counts maximal chains u -> top whose first label `a`
    # satisfies admissible(last, a), and so on along the chain.
    p._require_graded()
    memo: dict[tuple[int, Any], int] = {}

    def chains(u: int, last: Any) -> int:
        if u == iv.top:
            return 1
        key = (u, last)
        if key not in memo:
            memo[key] = sum(
                chains(v, lab)
                for v, lab in _inner(p, iv, u)
                if last is None or admissible(last, lab)
            )
        return memo[key]

    if iv.bottom == iv.top:
        return 1
    return chains(iv.bottom, None)


def count_increasing_chains(p: GradedPoset, iv: Interval, strict: bool = False) -> int:
    """Maximal chains whose labels weakly (or strictly) increase."""
    if strict:
        return _count_chains(p, iv, lambda a, b: a < b)
    return _count_chains(p, iv, lambda a, b: a <= b)


def count_decreasing_chains(p: GradedPoset, iv: Interval, strict: bool = True) -> int:
    if strict:
        return _count_chains(p, iv, lambda a, b: a > b)
    return _count_chains(p, iv, lambda a, b: a >= b)


def count_strictly_decreasing_chains(p: GradedPoset, iv: Interval) -> int:
    return count_decreasing_chains(p, iv, strict=True)


def count_maximal_chains(p: GradedPoset, iv: Interval) -> int:
    return _count_chains(p, iv, lambda a, b: True)


def _walk(p: GradedPoset, iv: Interval, keep: Callable[[Any, Any], bool]) -> Iterator[Chain]:
    stack = [((iv.bottom,), ())]
    while stack:
        verts, labs = stack.pop()
        u = verts[-1]
        if u == iv.top:
            yield Chain(verts, labs)
            continue
        for v, lab in reversed(_inner(p, iv, u)):
            if not labs or keep(labs[-1], lab):
                stack.append((verts + (v,), labs + (lab,)))


def increasing_chains(
    p: GradedPoset, iv: Interval, strict: bool = False, limit: int | None = None
) -> list[Chain]:
    """Explicit weakly/strictly increasing maximal chains, at most ``limit``."""
    keep = (lambda a, b: a < b) if strict else (lambda a, b: a <= b)
    out = []
    for c in _walk(p, iv, keep):
        out.append(c)
        if limit is not None and len(out) >= limit:
            break
    return out


def all_maximal_chains(
    p: GradedPoset, iv: Interval, cutoff: int = DEFAULT_CHAIN_CUTOFF
) -> Iterator[Chain]:
    """Every maximal chain of ``iv`` once, in lexicographic label order."""
    p._require_graded()
    total = count_maximal_chains(p, iv)
    if total > cutoff:
        raise ChainCutoffExceeded(f"{total} maximal chains exceed the cutoff {cutoff}")
    chains = list(_walk(p, iv, lambda a, b: True))
    chains.sort(key=lambda c: (c.labels, c.vertices))
    return iter(chains)


def mobius(p: GradedPoset, x: int, y: int) -> int:
    """mu(x, y) by mu(x, x) = 1 and mu(x, y) = -sum_{x <= z < y} mu(x, z)."""
    iv = interval(p, x, y)
    order = [z for z in p.topological_order if z in iv.members]
    mu: dict[int, int] = {}
    for z in order:
        if z == x:
            mu[z] = 1
        else:
            below = p.down_reach[z]
            mu[z] = -sum(m for w, m in mu.items() if below >> w & 1)
    return mu[y]


class MobiusTable:
    """Möbius values for all comparable pairs, as a dense int64 matrix.

    Rows and columns follow the poset's topological order, so the zeta
    matrix is unit upper triangular and the recursion becomes one
    matrix-vector product per column.
    """

    def __init__(self, p: GradedPoset):
        self.poset = p
        order = list(p.topological_order)
        pos = np.empty(len(p), dtype=np.int64)
        pos[order] = np.arange(len(p))
        n = len(p)
        zeta = np.zeros((n, n), dtype=np.int64)
        for a, i in enumerate(order):
            for j in iter_bits(p.up_reach[i]):
                zeta[a, pos[j]] = 1
        mu = np.zeros((n, n), dtype=np.int64)
        for b in range(n):
            col = -(mu[:, :b] @ zeta[:b, b])
            col[b] = 1
            col[b + 1:] = 0
            mu[:, b] = col
        self._pos = pos
        self._mu = mu
        self._zeta = zeta

    def __getitem__(self, pair: tuple[int, int]) -> int:
        x, y = pair
        if not leq(self.poset, x, y):
            raise PosetError(f"mobius undefined: {x} is not below {y}")
        return int(self._mu[self._pos[x], self._pos[y]])

    def values(self) -> Iterator[tuple[int, int, int]]:
        """(x, y, mu) for every comparable pair, x in index order."""
        for x in range(len(self.poset)):
            px = self._pos[x]
            for y in iter_bits(self.poset.up_reach[x]):
                yield x, y, int(self._mu[px, self._pos[y]])

    def recursion_residual(self, x: int, y: int) -> int:
        """sum_{x <= z <= y} mu(x, z); zero for x < y when the table is right."""
        members = self.poset.up_reach[x] & self.poset.down_reach[y]
        return sum(self[x, z] for z in iter_bits(members))


def mobius_table(p: GradedPoset) -> MobiusTable:
    return MobiusTable(p)


class Length2Shape(enum.Enum):
    CHAIN = "chain"
    DIAMOND = "diamond"


def classify_length2(p: GradedPoset, iv: Interval) -> Length2Shape:
    if iv.length != 2:
        raise PosetError(f"interval has length {iv.length}, not 2")
    if len(iv.members) == 3:
        return Length2Shape.CHAIN
    if len(iv.members) == 4:
        return Length2Shape.DIAMOND
    raise Length2Violation(
        f"length-2 interval [{p.elements[iv.bottom]}, {p.elements[iv.top]}] "
        f"has {len(iv.members)} elements"
    )


def subposet(p: GradedPoset, predicate: Callable[[Any], bool], name: str = "") -> GradedPoset:
    """Induced subposet on the elements satisfying ``predicate``.

    Covers are recomputed inside the subset; a parent cover keeps its label,
    a new cover (a longer relation in the parent) gets label None. Ranks are
    longest chains from a minimal element; if some induced cover then fails
    to raise the rank by exactly one the result is marked ungraded.
    """
    chosen = [i for i in p.topological_order if predicate(p.elements[i])]
    if not chosen:
        raise PosetError("empty selection")
    mask = 0
    for i in chosen:
        mask |= 1 << i
    strict_up = {i: p.up_reach[i] & mask & ~(1 << i) for i in chosen}
    covers: dict[int, list[int]] = {}
    for i in chosen:
        above = 0
        for j in iter_bits(strict_up[i]):
            above |= strict_up[j]
        covers[i] = list(iter_bits(strict_up[i] & ~above))
    rank: dict[int, int] = {i: 0 for i in chosen}
    for i in chosen:
        for j in covers[i]:
            rank[j] = max(rank[j], rank[i] + 1)
    graded = all(rank[j] == rank[i] + 1 for i in chosen for j in covers[i])
    ordered = sorted(chosen, key=lambda i: (rank[i], i))
    new = {i: k for k, i in enumerate(ordered)}
    edges = [
        (new[i], new[j], p._labels.get((i, j)))
        for i in chosen
        for j in covers[i]
    ]
    q = GradedPoset(
        [p.elements[i] for i in ordered],
        [rank[i] for i in ordered],
        edges,
        graded=graded,
        name=name,
    )
    q.bounded = sum(1 for i in range(len(q)) if not q.down[i]) == 1 and sum(
        1 for i in range(len(q)) if not q.up[i]
    ) == 1
    return q


def euler_characteristic_reduced(p: GradedPoset) -> int:
    """mu(0, 1) of a bounded poset: the reduced Euler characteristic of the
    order complex of its proper part."""
    return mobius(p, p.bottom, p.top)


@dataclass(frozen=True)
class IntervalStats:
    bottom: int
    top: int
    length: int
    increasing: int  # weakly increasing maximal chains
    strictly_increasing: int
    decreasing: int  # strictly decreasing
    weakly_decreasing: int
    lex_weak: bool  # lex-first chain weakly increasing
    lex_strict: bool


class TopSweep:
    """Chain statistics for every interval [x, top] with x in ``mask``.

    ``mask`` must be closed upward inside the down-set of ``top`` (a union of
    intervals ending at ``top`` qualifies). Nodes are processed rank level by
    rank level downward; each node gets a dense key ordering the label
    sequences of its lex-first chain among the nodes of its level, so the
    lex-first successor of ``u`` minimizes (label, key) without comparing
    whole sequences.
    """

    def __init__(self, p: GradedPoset, top: int, mask: int | None = None):
        p._require_graded()
        self.poset = p
        self.top = top
        if mask is None:
            mask = p.down_reach[top]
        mask &= p.down_reach[top]
        self.mask = mask
        nodes = [u for u in iter_bits(mask) if u != top]
        levels: dict[int, list[int]] = {}
        for u in nodes:
            levels.setdefault(p.ranks[u], []).append(u)

        key = {top: 0}
        nxt: dict[int, int] = {}
        first: dict[int, Any] = {}
        weak = {top: True}
        strict = {top: True}
        # per node: sorted labels and prefix sums of four chain counts
        labs_of: dict[int, list] = {top: []}
        sums: dict[int, tuple[list[int], ...]] = {}
        totals: dict[int, tuple[int, int, int, int]] = {}

        def from_node(v: int, lab: Any) -> tuple[int, int, int, int]:
            # chains v -> top that may follow an edge labeled `lab`
            if v == top:
                return 1, 1, 1, 1
            ls = labs_of[v]
            inc_w, inc_s, dec_s, dec_w = sums[v]
            lo = bisect_left(ls, lab)
            hi = bisect_right(ls, lab)
            k = len(ls)
            return (
                inc_w[k] - inc_w[lo],
                inc_s[k] - inc_s[hi],
                dec_s[lo],
                dec_w[hi],
            )

        for r in sorted(levels, reverse=True):
            cand = []
            for u in levels[r]:
                succ = [(v, lab) for v, lab in p.up[u] if mask >> v & 1]
                best = min((lab, key[v], v) for v, lab in succ)
                cand.append((best[0], best[1], u, best[2]))
                ls = []
                parts: list[list[int]] = [[], [], [], []]
                for v, lab in succ:
                    ls.append(lab)
                    for acc, c in zip(parts, from_node(v, lab)):
                        acc.append(c)
                labs_of[u] = ls
                sums[u] = tuple([0] + list(accumulate(acc)) for acc in parts)
                totals[u] = tuple(s[-1] for s in sums[u])
            cand.sort()
            dense = -1
            prev = None
            for lab, k, u, v in cand:
                if (lab, k) != prev:
                    dense += 1
                    prev = (lab, k)
                key[u] = dense
                nxt[u] = v
                first[u] = lab
                after = first.get(v)
                weak[u] = weak[v] and (v == top or lab <= after)
                strict[u] = strict[v] and (v == top or lab < after)

        self._next = nxt
        self._weak = weak
        self._strict = strict
        self._totals = totals

    def bottoms(self) -> list[int]:
        return sorted(self._totals)

    def stats(self, x: int) -> IntervalStats:
        inc_w, inc_s, dec_s, dec_w = self._totals[x]
        return IntervalStats(
            x,
            self.top,
            self.poset.ranks[self.top] - self.poset.ranks[x],
            inc_w,
            inc_s,
            dec_s,
            dec_w,
            self._weak[x],
            self._strict[x],
        )

    def lex_chain(self, x: int) -> Chain:
        verts = [x]
        while verts[-1] != self.top:
            verts.append(self._next[verts[-1]])
        labs = tuple(self.poset.label(a, b) for a, b in zip(verts, verts[1:]))
        return Chain(tuple(verts), labs)
