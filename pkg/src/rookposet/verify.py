"""Verification campaigns over labeled graded posets.

Each check walks a set of intervals (or elements, or slices) and tallies
passes and failures; failures keep a witness describing the offending
interval. Reports are deterministic: witnesses are sorted by element index
and capped, and nothing depending on wall-clock time or worker count goes
into the JSON unless timing output is requested.
"""

from __future__ import annotations

import enum
import json
import multiprocessing
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

from . import rook
from .instances import Family, InstanceSpec, build_instance, build_rook, build_symmetric
from .poset import (
    GradedPoset,
    MobiusTable,
    PosetError,
    TopSweep,
    increasing_chains,
    interval,
    iter_bits,
    mobius_table,
    subposet,
)

__all__ = [
    "Check",
    "ALL_CHECKS",
    "CHECK_ALIASES",
    "parse_checks",
    "Scope",
    "CampaignConfig",
    "CheckTally",
    "VerificationReport",
    "sample_intervals",
    "verify_el",
    "verify_length2",
    "verify_order_equivalence",
    "verify_length_formulas",
    "verify_mobius",
    "verify_edelman",
    "run_campaign",
    "run_checks",
    "mutate",
    "MUTATIONS",
    "find_failing_mutation",
]

WITNESS_CAP = 100
DEFAULT_SAMPLE = 20_000


class Check(str, enum.Enum):
    EL_UNIQUE = "el-unique"
    LEX_FIRST_INCREASING = "lex-first-increasing"
    DIAMOND_LABELS = "diamond-labels"
    CHAIN_OR_DIAMOND = "chain-or-diamond"
    LENGTH_FORMULAS = "length-formulas"
    ORDER_EQUIVALENCE = "order-equivalence"
    MOBIUS_RANGE = "mobius-range"
    MOBIUS_DESCENDING = "mobius-descending"
    EDELMAN_RESTRICTION = "edelman-restriction"


ALL_CHECKS = tuple(Check)

CHECK_ALIASES = {
    "all": ALL_CHECKS,
    "el": (Check.EL_UNIQUE, Check.LEX_FIRST_INCREASING),
    "length2": (Check.CHAIN_OR_DIAMOND, Check.DIAMOND_LABELS),
    "mobius": (Check.MOBIUS_RANGE, Check.MOBIUS_DESCENDING),
    "edelman": (Check.EDELMAN_RESTRICTION,),
    "order": (Check.ORDER_EQUIVALENCE,),
    "lengths": (Check.LENGTH_FORMULAS,),
}


def parse_checks(text: str) -> tuple[Check, ...]:
    """Comma-separated check names or aliases, returned in canonical order."""
    chosen = set()
    for tok in text.split(","):
        tok = tok.strip().lower().replace("_", "-")
        if not tok:
            continue
        if tok in CHECK_ALIASES:
            chosen.update(CHECK_ALIASES[tok])
        else:
            try:
                chosen.add(Check(tok))
            except ValueError:
                raise ValueError(f"unknown check {tok!r}") from None
    if not chosen:
        raise ValueError("no checks selected")
    return tuple(c for c in ALL_CHECKS if c in chosen)


@dataclass(frozen=True)
class Scope:
    """Which intervals interval-level checks visit."""

    kind: str = "all"  # all | sample | length2 | bounded
    count: int | None = None
    seed: int | None = None
    maxlen: int | None = None

    def __post_init__(self):
        if self.kind not in ("all", "sample", "length2", "bounded"):
            raise ValueError(f"unknown scope {self.kind!r}")
        if self.kind == "sample" and (self.count is None or self.count < 1 or self.seed is None):
            raise ValueError("sampled scope needs count >= 1 and a seed")
        if self.kind == "bounded" and (self.maxlen is None or self.maxlen < 1):
            raise ValueError("bounded scope needs maxlen >= 1")

    @classmethod
    def parse(cls, text: str) -> "Scope":
        """``all``, ``length2``, ``bounded:L`` or ``sample:COUNT:SEED``."""
        parts = text.strip().lower().split(":")
        try:
            if parts[0] in ("all", "length2") and len(parts) == 1:
                return cls(parts[0])
            if parts[0] == "bounded" and len(parts) == 2:
                return cls("bounded", maxlen=int(parts[1]))
            if parts[0] == "sample" and len(parts) in (2, 3):
                seed = int(parts[2]) if len(parts) == 3 else 0
                return cls("sample", count=int(parts[1]), seed=seed)
        except ValueError:
            pass
        raise ValueError(f"bad scope {text!r}")

    def __str__(self) -> str:
        if self.kind == "sample":
            return f"sample:{self.count}:{self.seed}"
        if self.kind == "bounded":
            return f"bounded:{self.maxlen}"
        return self.kind


@dataclass(frozen=True)
class CampaignConfig:
    instance: InstanceSpec
    scope: Scope = Scope()
    checks: tuple[Check, ...] = ALL_CHECKS
    witness_cap: int = WITNESS_CAP

    def as_dict(self) -> dict:
        return {
            "instance": str(self.instance),
            "scope": str(self.scope),
            "seed": self.scope.seed,
            "checks": [c.value for c in self.checks],
            "witness_cap": self.witness_cap,
        }


@dataclass
class CheckTally:
    checked: int = 0
    failed: int = 0
    skipped: str | None = None
    witnesses: list[tuple[tuple, dict]] = field(default_factory=list)
    aux: Counter = field(default_factory=Counter)

    @property
    def passed(self) -> int:
        return self.checked - self.failed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, good: bool, key: tuple = (), witness: dict | None = None) -> None:
        self.checked += 1
        if not good:
            self.failed += 1
            self.witnesses.append((key, witness or {}))

    def merge(self, other: "CheckTally") -> None:
        self.checked += other.checked
        self.failed += other.failed
        self.witnesses.extend(other.witnesses)
        self.aux.update(other.aux)

    def trim(self, cap: int) -> None:
        self.witnesses.sort(key=lambda kw: kw[0])
        del self.witnesses[cap:]

    def as_dict(self) -> dict:
        return {
            "checked": self.checked,
            "passed": self.passed,
            "failed": self.failed,
            "skipped": self.skipped,
            "witnesses": [w for _, w in self.witnesses],
            "aux": dict(sorted(self.aux.items())),
        }


@dataclass
class VerificationReport:
    config: dict
    tallies: dict[Check, CheckTally] = field(default_factory=dict)
    stats: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(t.ok for t in self.tallies.values())

    def failures(self) -> list[Check]:
        return [c for c, t in self.tallies.items() if not t.ok]

    def tally(self, check: Check) -> CheckTally:
        return self.tallies[check]

    def to_dict(self, include_timing: bool = False) -> dict:
        out = {
            "config": self.config,
            "ok": self.ok,
            "stats": dict(sorted(self.stats.items())),
            "checks": {
                c.value: self.tallies[c].as_dict() for c in ALL_CHECKS if c in self.tallies
            },
        }
        if include_timing:
            out["timings"] = {k: round(v, 4) for k, v in sorted(self.timings.items())}
        return out

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [f"instance {self.config.get('instance')}  scope {self.config.get('scope')}"]
        for c in ALL_CHECKS:
            if c not in self.tallies:
                continue
            t = self.tallies[c]
            if t.skipped:
                verdict, detail = "SKIP", t.skipped
            else:
                verdict = "PASS" if t.ok else "FAIL"
                detail = f"{t.passed}/{t.checked}"
            lines.append(f"  {c.value:<22} {verdict:<5} {detail}")
            for k, v in sorted(t.aux.items()):
                lines.append(f"  {'':<22}       {k} = {v}")
        for k, v in sorted(self.timings.items()):
            lines.append(f"  time {k:<17} {v:.2f}s")
        lines.append("OK" if self.ok else "FAILED: " + ", ".join(c.value for c in self.failures()))
        return "\n".join(lines) + "\n"

    def absorb(self, other: "VerificationReport") -> None:
        for c, t in other.tallies.items():
            if c in self.tallies:
                self.tallies[c].merge(t)
            else:
                self.tallies[c] = t
        for k, v in other.stats.items():
            self.stats[k] = v
        self.timings.update(other.timings)


def _payload(e: Any) -> Any:
    return list(e) if isinstance(e, tuple) else e


def _label_json(lab: Any) -> Any:
    return list(lab) if isinstance(lab, tuple) else lab


def _chain_json(p: GradedPoset, verts: Sequence[int], labs: Sequence[Any]) -> dict:
    return {
        "vertices": [_payload(p.elements[v]) for v in verts],
        "labels": [_label_json(l) for l in labs],
    }


def _has_labels(p: GradedPoset) -> bool:
    return all(lab is not None for _, _, lab in p.edges())


# -- interval selection ------------------------------------------------------


def sample_intervals(p: GradedPoset, count: int, seed: int) -> list[tuple[int, int]]:
    """Uniform sample without replacement of pairs x < y, sorted."""
    sizes = np.array([m.bit_count() - 1 for m in p.up_reach], dtype=np.int64)
    total = int(sizes.sum())
    rng = np.random.default_rng(seed)
    picks = np.sort(rng.choice(total, size=min(count, total), replace=False))
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    xs = np.searchsorted(offsets, picks, side="right") - 1
    out = []
    cache: dict[int, list[int]] = {}
    for flat, x in zip(picks.tolist(), xs.tolist()):
        if x not in cache:
            cache[x] = [y for y in iter_bits(p.up_reach[x]) if y != x]
        out.append((x, cache[x][flat - int(offsets[x])]))
    return sorted(out)


def _groups(p: GradedPoset, scope: Scope) -> list[tuple[int, list[int] | None]]:
    """(top, bottoms) work items; bottoms None means every x < top."""
    if scope.kind == "all":
        return [(y, None) for y in range(len(p)) if p.down_reach[y] != 1 << y]
    by_top: dict[int, list[int]] = {}
    if scope.kind == "sample":
        for x, y in sample_intervals(p, scope.count, scope.seed):
            by_top.setdefault(y, []).append(x)
    else:
        lo, hi = (2, 2) if scope.kind == "length2" else (1, scope.maxlen)
        for y in range(len(p)):
            for x in iter_bits(p.down_reach[y]):
                if lo <= p.ranks[y] - p.ranks[x] <= hi:
                    by_top.setdefault(y, []).append(x)
    return sorted((y, sorted(xs)) for y, xs in by_top.items())


# -- EL / Möbius-descending sweep ---------------------------------------------

# Shared with forked workers; set before the pool starts.
_SHARED: dict[str, Any] = {}


def _sweep_chunk(items: list[tuple[int, list[int] | None]]) -> dict[Check, CheckTally]:
    p: GradedPoset = _SHARED["poset"]
    table: MobiusTable | None = _SHARED.get("mobius")
    want: set[Check] = _SHARED["want"]
    out = {c: CheckTally() for c in want}
    el, lex, desc = Check.EL_UNIQUE, Check.LEX_FIRST_INCREASING, Check.MOBIUS_DESCENDING
    for y, bottoms in items:
        mask = None
        if bottoms is not None:
            mask = 0
            for x in bottoms:
                mask |= p.up_reach[x]
        sweep = TopSweep(p, y, mask)
        for x in bottoms if bottoms is not None else sweep.bottoms():
            st = sweep.stats(x)
            key = (x, y)
            if el in want or lex in want:
                t = out.get(el) or out[lex]
                t.aux["unique_increasing_chain_is_strict"] += int(
                    st.increasing == 1 and st.lex_strict
                )
                t.aux["intervals_with_one_strictly_increasing_chain"] += int(
                    st.strictly_increasing == 1
                )
            if el in want:
                good = st.increasing == 1 and st.lex_weak
                out[el].record(good, key, None if good else _el_witness(p, sweep, x, y, st))
            if lex in want:
                good = st.lex_weak
                out[lex].record(good, key, None if good else _el_witness(p, sweep, x, y, st))
            if desc in want:
                mu = table[x, y]
                signed = (-1) ** st.length * st.decreasing
                good = mu == signed
                out[desc].aux["weakly_decreasing_identity_holds"] += int(
                    mu == (-1) ** st.length * st.weakly_decreasing
                )
                out[desc].record(
                    good,
                    key,
                    None
                    if good
                    else {
                        "interval": [_payload(p.elements[x]), _payload(p.elements[y])],
                        "length": st.length,
                        "mobius": mu,
                        "strictly_decreasing_chains": st.decreasing,
                    },
                )
    return out


def _el_witness(p: GradedPoset, sweep: TopSweep, x: int, y: int, st) -> dict:
    lex = sweep.lex_chain(x)
    w = {
        "interval": [_payload(p.elements[x]), _payload(p.elements[y])],
        "length": st.length,
        "increasing_chains": st.increasing,
        "lex_first": _chain_json(p, lex.vertices, lex.labels),
    }
    if 0 < st.increasing and st.length <= 8:
        w["increasing"] = [
            _chain_json(p, c.vertices, c.labels)
            for c in increasing_chains(p, interval(p, x, y), limit=3)
        ]
    return w


def _run_sweep(
    p: GradedPoset, scope: Scope, want: set[Check], workers: int
) -> tuple[dict[Check, CheckTally], int]:
    items = _groups(p, scope)
    _SHARED.clear()
    _SHARED["poset"] = p
    _SHARED["want"] = want
    if Check.MOBIUS_DESCENDING in want:
        _SHARED["mobius"] = mobius_table(p)
    if workers <= 1 or len(items) < 2:
        parts = [_sweep_chunk(items)]
    else:
        chunks = [items[i::workers * 4] for i in range(workers * 4)]
        chunks = [c for c in chunks if c]
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
            parts = list(pool.map(_sweep_chunk, chunks))
    _SHARED.clear()
    merged = {c: CheckTally() for c in want}
    for part in parts:
        for c, t in part.items():
            merged[c].merge(t)
    return merged, sum(1 for _ in items)


def verify_el(
    p: GradedPoset,
    scope: Scope = Scope(),
    *,
    workers: int = 1,
    witness_cap: int = WITNESS_CAP,
    mobius_descending: bool = False,
) -> VerificationReport:
    """Every interval in scope has exactly one weakly increasing maximal chain,
    and that chain is the lexicographically first one."""
    want = {Check.EL_UNIQUE, Check.LEX_FIRST_INCREASING}
    if mobius_descending:
        want.add(Check.MOBIUS_DESCENDING)
    return _interval_checks(p, scope, want, workers, witness_cap)


def _interval_checks(
    p: GradedPoset, scope: Scope, want: set[Check], workers: int, cap: int
) -> VerificationReport:
    report = VerificationReport({"poset": p.name, "scope": str(scope)})
    t0 = time.perf_counter()
    defects = p.grading_defects()
    if defects or not p.graded or not _has_labels(p):
        reason = "ungraded" if (defects or not p.graded) else "unlabeled covers"
        for c in want:
            t = CheckTally()
            if reason == "ungraded":
                u, v = defects[0] if defects else (0, 0)
                t.record(
                    False,
                    (u, v),
                    {
                        "reason": "cover does not raise rank by one",
                        "cover": [_payload(p.elements[u]), _payload(p.elements[v])],
                    },
                )
            else:
                t.skipped = reason
            report.tallies[c] = t
        return report
    tallies, tops = _run_sweep(p, scope, want, workers)
    for c, t in tallies.items():
        t.trim(cap)
        report.tallies[c] = t
    report.stats["interval_tops"] = tops
    report.stats["intervals"] = max(t.checked for t in tallies.values())
    report.timings["intervals"] = time.perf_counter() - t0
    return report


# -- length-2 structure ------------------------------------------------------


def verify_length2(p: GradedPoset, *, witness_cap: int = WITNESS_CAP) -> VerificationReport:
    """Length-2 intervals are chains or diamonds, and in a diamond the other
    chain repeats one lex-first label on the opposite edge."""
    t0 = time.perf_counter()
    shape, labels = CheckTally(), CheckTally()
    labeled = _has_labels(p)
    if not labeled:
        labels.skipped = "unlabeled covers"
    for x in range(len(p)):
        for y in iter_bits(p.up_reach[x]):
            if p.ranks[y] - p.ranks[x] != 2:
                continue
            members = p.up_reach[x] & p.down_reach[y]
            size = members.bit_count()
            key = (x, y)
            iv_json = [_payload(p.elements[x]), _payload(p.elements[y])]
            shape.record(size in (3, 4), key, {"interval": iv_json, "members": size})
            shape.aux["diamonds" if size == 4 else "chains" if size == 3 else "other"] += 1
            if size != 4 or not labeled:
                continue
            mids = [m for m in iter_bits(members) if m not in (x, y)]
            try:
                chains = sorted(
                    ((p.label(x, m), p.label(m, y)), m) for m in mids
                )
            except PosetError:
                labels.record(False, key, {"interval": iv_json, "reason": "diamond edge missing"})
                continue
            (f1, f2), _ = chains[0]
            (g1, g2), _ = chains[1]
            good = g1 == f2 or g2 == f1
            labels.record(
                good,
                key,
                {
                    "interval": iv_json,
                    "lex_first_labels": [_label_json(f1), _label_json(f2)],
                    "other_labels": [_label_json(g1), _label_json(g2)],
                },
            )
    for t in (shape, labels):
        t.trim(witness_cap)
    report = VerificationReport({"poset": p.name})
    report.tallies[Check.CHAIN_OR_DIAMOND] = shape
    report.tallies[Check.DIAMOND_LABELS] = labels
    report.timings["length2"] = time.perf_counter() - t0
    return report


# -- element-level checks ----------------------------------------------------


def _rook_payloads(p: GradedPoset) -> bool:
    return all(isinstance(e, tuple) for e in p.elements)


def verify_order_equivalence(
    n_or_poset: int | GradedPoset, *, witness_cap: int = WITNESS_CAP
) -> VerificationReport:
    """The closure of the generating moves equals the Hasse-diagram order,
    compared pair by pair on the poset's elements."""
    p = build_rook(n_or_poset) if isinstance(n_or_poset, int) else n_or_poset
    t0 = time.perf_counter()
    tally = CheckTally()
    report = VerificationReport({"poset": p.name})
    report.tallies[Check.ORDER_EQUIVALENCE] = tally
    if not _rook_payloads(p):
        tally.skipped = "elements are not rook placements"
        return report
    index = p.index
    gen_up = [0] * len(p)
    steps = [
        [index[y] for y in rook.generator_relations(x) if y in index] for x in p.elements
    ]
    # generator steps strictly raise the length, so length order is topological
    order = sorted(range(len(p)), key=lambda i: rook.length(p.elements[i]))
    for i in reversed(order):
        m = 1 << i
        for j in steps[i]:
            m |= gen_up[j]
        gen_up[i] = m
    n = len(p)
    for x in range(n):
        diff = gen_up[x] ^ p.up_reach[x]
        tally.checked += n
        if diff:
            for y in iter_bits(diff):
                tally.failed += 1
                tally.witnesses.append(
                    (
                        (x, y),
                        {
                            "pair": [_payload(p.elements[x]), _payload(p.elements[y])],
                            "generated": bool(gen_up[x] >> y & 1),
                            "hasse": bool(p.up_reach[x] >> y & 1),
                        },
                    )
                )
    tally.trim(witness_cap)
    report.timings["order_equivalence"] = time.perf_counter() - t0
    return report


def verify_length_formulas(p: GradedPoset, *, witness_cap: int = WITNESS_CAP) -> VerificationReport:
    """Both length formulas agree on every element, every cover raises the
    length by one, and poset rank differs from length by a constant."""
    tally = CheckTally()
    report = VerificationReport({"poset": p.name})
    report.tallies[Check.LENGTH_FORMULAS] = tally
    if not _rook_payloads(p):
        tally.skipped = "elements are not rook placements"
        return report
    lengths = []
    for i, e in enumerate(p.elements):
        d, s = rook.length_by_dimension(e), rook.length_by_inversions(e)
        lengths.append(s)
        tally.record(d == s, (i, -1), {"element": _payload(e), "dimension": d, "sum_inv": s})
    offset = Counter(p.ranks[i] - lengths[i] for i in range(len(p))).most_common(1)[0][0]
    for i, e in enumerate(p.elements):
        good = p.ranks[i] - lengths[i] == offset
        tally.record(
            good, (i, -2), {"element": _payload(e), "rank": p.ranks[i], "length": lengths[i]}
        )
    for u, v, _ in p.edges():
        good = lengths[v] == lengths[u] + 1
        tally.record(
            good,
            (u, v),
            {
                "cover": [_payload(p.elements[u]), _payload(p.elements[v])],
                "lengths": [lengths[u], lengths[v]],
            },
        )
    tally.trim(witness_cap)
    return report


def _mobius_range_on(q: GradedPoset, tally: CheckTally, tag: str) -> None:
    table = mobius_table(q)
    for x, y, mu in table.values():
        tally.aux[f"{tag} mu={mu}"] += 1
        tally.record(
            mu in (-1, 0, 1),
            (x, y),
            {"slice": tag, "interval": [_payload(q.elements[x]), _payload(q.elements[y])], "mobius": mu},
        )


def verify_mobius(
    p: GradedPoset,
    checks: Iterable[Check] = (Check.MOBIUS_RANGE, Check.MOBIUS_DESCENDING),
    *,
    family: Family | None = None,
    scope: Scope = Scope(),
    workers: int = 1,
    witness_cap: int = WITNESS_CAP,
) -> VerificationReport:
    """MobiusRange: every interval Möbius value of each rank level R_{n,k}
    (or of the poset itself for S_n / R_{n,k} instances) lies in {-1, 0, 1}.
    MobiusDescending: mu = (-1)^length times the strictly decreasing chain
    count on every interval in scope."""
    checks = set(checks)
    report = VerificationReport({"poset": p.name})
    if Check.MOBIUS_RANGE in checks:
        t0 = time.perf_counter()
        tally = CheckTally()
        if family is None:
            family = Family.ROOK if _rook_payloads(p) and any(0 in e for e in p.elements) else None
        if family is Family.ROOK:
            n = len(p.elements[0])
            for k in range(n + 1):
                q = subposet(p, lambda e, k=k: rook.matrix_rank(e) == k, name=f"k={k}")
                _mobius_range_on(q, tally, f"k={k}")
        else:
            _mobius_range_on(p, tally, p.name or "poset")
        tally.trim(witness_cap)
        report.tallies[Check.MOBIUS_RANGE] = tally
        report.timings["mobius_range"] = time.perf_counter() - t0
    if Check.MOBIUS_DESCENDING in checks:
        sub = _interval_checks(p, scope, {Check.MOBIUS_DESCENDING}, workers, witness_cap)
        report.absorb(sub)
    return report


def verify_edelman(
    p: GradedPoset, family: Family, *, workers: int = 1, witness_cap: int = WITNESS_CAP
) -> VerificationReport:
    """The full-rank slice of R_n equals S_n with Edelman's labels (same
    elements, ranks, covers and labels), and S_n passes the EL checks."""
    tally = CheckTally()
    report = VerificationReport({"poset": p.name})
    report.tallies[Check.EDELMAN_RESTRICTION] = tally
    if family is Family.ROOK_RANK_LEVEL or not _rook_payloads(p):
        tally.skipped = "needs a rook or symmetric-group instance"
        return report
    n = len(p.elements[0])
    if family is Family.ROOK:
        sym = build_symmetric(n, max_n=max(n, 6))
        slice_ = subposet(p, lambda e: rook.matrix_rank(e) == n, name=f"rook:{n} full rank")
    else:
        sym = p
        slice_ = subposet(build_rook(n, max_n=max(n, 6)), lambda e: rook.matrix_rank(e) == n)

    def edges(q: GradedPoset) -> set:
        return {(q.elements[u], q.elements[v], lab) for u, v, lab in q.edges()}

    def ranks(q: GradedPoset) -> set:
        return set(zip(q.elements, q.ranks))

    for what, a, b in (
        ("ranks", ranks(slice_), ranks(sym)),
        ("labeled covers", edges(slice_), edges(sym)),
    ):
        for item in sorted(a ^ b, key=repr):
            tally.record(
                False,
                (0, len(tally.witnesses)),
                {"mismatch": what, "item": [_payload(z) for z in item], "in_slice": item in a},
            )
        tally.checked += len(a & b)
    el = verify_el(sym, workers=workers, witness_cap=witness_cap)
    for c in (Check.EL_UNIQUE, Check.LEX_FIRST_INCREASING):
        t = el.tallies[c]
        tally.checked += t.checked
        tally.failed += t.failed
        tally.witnesses.extend(((1,) + k, {"symmetric_group": c.value, **w}) for k, w in t.witnesses)
        tally.aux[f"sym {c.value} intervals"] += t.checked
    tally.trim(witness_cap)
    return report


# -- campaigns ---------------------------------------------------------------


def run_checks(
    p: GradedPoset,
    checks: Iterable[Check],
    *,
    family: Family | None = None,
    scope: Scope = Scope(),
    workers: int = 1,
    witness_cap: int = WITNESS_CAP,
) -> VerificationReport:
    """Run the selected checks against an already built (possibly mutated) poset."""
    checks = set(checks)
    report = VerificationReport({"poset": p.name, "scope": str(scope)})
    report.stats["elements"] = len(p)
    report.stats["covers"] = p.edge_count
    interval_level = checks & {Check.EL_UNIQUE, Check.LEX_FIRST_INCREASING, Check.MOBIUS_DESCENDING}
    if interval_level:
        report.absorb(_interval_checks(p, scope, interval_level, workers, witness_cap))
    if checks & {Check.CHAIN_OR_DIAMOND, Check.DIAMOND_LABELS}:
        sub = verify_length2(p, witness_cap=witness_cap)
        for c in (Check.CHAIN_OR_DIAMOND, Check.DIAMOND_LABELS):
            if c in checks:
                report.tallies[c] = sub.tallies[c]
        report.timings.update(sub.timings)
    if Check.LENGTH_FORMULAS in checks:
        report.absorb(verify_length_formulas(p, witness_cap=witness_cap))
    if Check.ORDER_EQUIVALENCE in checks:
        report.absorb(verify_order_equivalence(p, witness_cap=witness_cap))
    if Check.MOBIUS_RANGE in checks:
        report.absorb(
            verify_mobius(p, {Check.MOBIUS_RANGE}, family=family, witness_cap=witness_cap)
        )
    if Check.EDELMAN_RESTRICTION in checks:
        fam = family or Family.ROOK
        report.absorb(verify_edelman(p, fam, workers=workers, witness_cap=witness_cap))
    return report


def run_campaign(
    config: CampaignConfig,
    *,
    workers: int = 1,
    poset: GradedPoset | None = None,
    max_n: int = 6,
) -> VerificationReport:
    t0 = time.perf_counter()
    p = poset if poset is not None else build_instance(config.instance, max_n=max_n)
    build_time = time.perf_counter() - t0
    report = run_checks(
        p,
        config.checks,
        family=config.instance.family,
        scope=config.scope,
        workers=workers,
        witness_cap=config.witness_cap,
    )
    report.config = config.as_dict()
    report.timings["build"] = build_time
    report.timings["total"] = time.perf_counter() - t0
    return report


# -- mutation harness --------------------------------------------------------


def _rebuild(p: GradedPoset, edges, ranks=None) -> GradedPoset:
    return GradedPoset(
        p.elements,
        p.ranks if ranks is None else ranks,
        edges,
        graded=p.graded,
        validate=False,
        name=p.name + " (mutated)",
    )


def _swap_labels(p: GradedPoset, rng: random.Random) -> GradedPoset:
    edges = list(p.edges())
    for _ in range(1000):
        a, b = rng.sample(range(len(edges)), 2)
        if edges[a][2] != edges[b][2]:
            break
    else:
        raise ValueError("no two distinct labels to swap")
    (u1, v1, l1), (u2, v2, l2) = edges[a], edges[b]
    edges[a], edges[b] = (u1, v1, l2), (u2, v2, l1)
    return _rebuild(p, edges)


def _delete_covers(p: GradedPoset, rng: random.Random) -> GradedPoset:
    edges = list(p.edges())
    k = min(len(edges), rng.randint(1, 8))
    drop = set(rng.sample(range(len(edges)), k))
    return _rebuild(p, [e for i, e in enumerate(edges) if i not in drop])


def _perturb_rank(p: GradedPoset, rng: random.Random) -> GradedPoset:
    ranks = list(p.ranks)
    i = rng.randrange(len(p))
    ranks[i] += rng.choice((-1, 1))
    return _rebuild(p, list(p.edges()), ranks)


MUTATIONS = {
    "swap-labels": _swap_labels,
    "delete-covers": _delete_covers,
    "perturb-rank": _perturb_rank,
}


def mutate(p: GradedPoset, kind: str, seed: int) -> GradedPoset:
    return MUTATIONS[kind](p, random.Random(f"{kind}:{seed}"))


def find_failing_mutation(
    p: GradedPoset,
    check: Check,
    *,
    family: Family | None = None,
    kinds: Sequence[str] = tuple(MUTATIONS),
    max_seed: int = 200,
) -> tuple[str, int] | None:
    """First (kind, seed) whose mutation of ``p`` makes ``check`` fail."""
    for seed in range(max_seed):
        for kind in kinds:
            q = mutate(p, kind, seed)
            report = run_checks(q, {check}, family=family)
            if not report.tallies[check].ok:
                return kind, seed
    return None
