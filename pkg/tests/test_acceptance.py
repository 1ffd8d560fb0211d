"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v -s`` (or ``-rA``) to see the lines.
"""

import math
import subprocess
import sys
import time

import pytest

from oracles import hasse_from_closure, matrix_to_oneline, rook, rook_matrices
from rookposet import rook as rk
from rookposet.instances import Family, build_rook, build_rook_rank_level, build_symmetric
from rookposet.poset import (
    count_strictly_decreasing_chains,
    interval,
    iter_bits,
    lex_first_chain,
    mobius_table,
    subposet,
)
from rookposet.verify import Check, Scope, find_failing_mutation, run_checks, verify_el, verify_length2


@pytest.fixture
def verdict(capsys):
    def emit(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\nACCEPTANCE {number:>2} {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail

    return emit


def _pairs(p, strict=True):
    return [(x, y) for x in range(len(p)) for y in iter_bits(p.up_reach[x]) if not strict or x != y]


def test_01_enumeration(verdict):
    t0 = time.perf_counter()
    expected = [2, 7, 34, 209, 1546, 13327]
    sizes = [len(rk.enumerate_rooks(n)) for n in range(1, 7)]
    formula = [sum(math.comb(n, k) ** 2 * math.factorial(k) for k in range(n + 1)) for n in range(1, 7)]
    brute_ok = all(
        {tuple(e) for e in rk.enumerate_rooks(n)} == {matrix_to_oneline(m) for m in rook_matrices(n)}
        for n in range(1, 5)
    )
    dt = time.perf_counter() - t0
    ok = sizes == expected == formula and brute_ok and dt < 10
    verdict(1, ok, f"|R_n| = {sizes}, brute force n<=4 {'agrees' if brute_ok else 'differs'}, {dt:.2f}s")


def test_02_length_formulas(verdict):
    t0 = time.perf_counter()
    elements = rk.enumerate_rooks(5)
    disagree = sum(rk.length_by_dimension(x) != rk.length_by_inversions(x) for x in elements)
    golden = {
        "4,0,5,0,3,1": 21,
        "4,0,5,0,6,1": 22,
        "2,6,5,0,4,1,7": 35,
        "4,6,5,0,2,1,7": 36,
        "7,6,5,0,4,1,2": 42,
    }
    golden_ok = all(rk.length(rook(x)) == v for x, v in golden.items())
    z = rook("6,0,5,0,3,1")
    z_dim, z_inv = rk.length_by_dimension(z), rk.length_by_inversions(z)
    dt = time.perf_counter() - t0
    ok = len(elements) == 1546 and disagree == 0 and golden_ok and z_dim == z_inv == 24 and dt < 1
    verdict(
        2,
        ok,
        f"{disagree} disagreements on 1546 elements, golden values {'match' if golden_ok else 'differ'}, "
        f"l(6,0,5,0,3,1) = {z_dim} by both formulas (printed value 23 unreproduced), {dt:.2f}s",
    )


def test_03_cover_oracle(verdict):
    t0 = time.perf_counter()
    mismatches = 0
    for n in range(1, 4):
        elements = rk.enumerate_rooks(n)
        oracle, _ = hasse_from_closure(elements)
        for x in elements:
            for y in elements:
                mismatches += (rk.is_cover(x, y) is not None) != ((x, y) in oracle)
    dt = time.perf_counter() - t0
    verdict(3, mismatches == 0 and dt < 30, f"{mismatches} disagreements for n <= 3, {dt:.2f}s")


def test_04_unique_increasing_chain(verdict):
    t0 = time.perf_counter()
    parts, ok = [], True
    for n in (3, 4):
        rep = verify_el(build_rook(n), workers=4)
        el, lex = rep.tallies[Check.EL_UNIQUE], rep.tallies[Check.LEX_FIRST_INCREASING]
        ok &= rep.ok and el.checked == lex.checked == len(_pairs(build_rook(n)))
        parts.append(f"R_{n}: {el.passed}/{el.checked}")
    t4 = time.perf_counter() - t0
    rep = verify_el(build_rook(5), Scope.parse("sample:20000:2024"), workers=4)
    el = rep.tallies[Check.EL_UNIQUE]
    ok &= rep.ok and el.checked >= 20000 and t4 < 600
    parts.append(f"R_5 sample: {el.passed}/{el.checked}")
    verdict(4, ok, ", ".join(parts) + f", R_3+R_4 in {t4:.2f}s")


def test_05_length2(verdict, r4):
    rep = verify_length2(r4)
    cod, dia = rep.tallies[Check.CHAIN_OR_DIAMOND], rep.tallies[Check.DIAMOND_LABELS]
    verdict(
        5,
        rep.ok and cod.checked > 0 and dia.checked > 0,
        f"chain-or-diamond {cod.passed}/{cod.checked}, diamond labels {dia.passed}/{dia.checked}",
    )


def test_06_worked_example(verdict, r3):
    c = lex_first_chain(r3, interval(r3, r3.index[rook("0,1,0")], r3.index[rook("3,1,2")]))
    verts = [str(r3.elements[v]) for v in c.vertices]
    labels = tuple(tuple(l) for l in c.labels)
    ok = labels == ((0, 1), (0, 2), (0, 2), (0, 3), (1, 2), (2, 3)) and verts == [
        "(0,1,0)", "(1,0,0)", "(1,0,2)", "(1,2,0)", "(1,2,3)", "(2,1,3)", "(3,1,2)",
    ]
    verdict(6, ok, " < ".join(verts) + "  labels " + ",".join(map(str, c.labels)))


def test_07_edelman(verdict):
    parts, ok = [], True
    for n in range(1, 5):
        p = build_rook(n)
        q = subposet(p, lambda e: rk.matrix_rank(e) == n)
        s = build_symmetric(n)
        iso = {(q.elements[u], q.elements[v], l) for u, v, l in q.edges()} == {
            (s.elements[u], s.elements[v], l) for u, v, l in s.edges()
        } and sorted(zip(q.elements, q.ranks)) == sorted(zip(s.elements, s.ranks))
        el = verify_el(s)
        rep = run_checks(p, {Check.EDELMAN_RESTRICTION}, family=Family.ROOK)
        ok &= iso and el.ok and rep.ok
        parts.append(f"n={n} {'iso' if iso else 'NOT iso'}, S_n EL {el.tallies[Check.EL_UNIQUE].checked}")
    verdict(7, ok, "; ".join(parts))


def test_08_mobius(verdict, r3, r4):
    parts, ok = [], True
    for p in (r3, r4):
        table = mobius_table(p)
        residual = sum(1 for x, y in _pairs(p) if table.recursion_residual(x, y) != 0)
        descending = sum(
            1
            for x, y in _pairs(p)
            if table[x, y]
            != (-1) ** (p.ranks[y] - p.ranks[x]) * count_strictly_decreasing_chains(p, interval(p, x, y))
        )
        ok &= residual == 0 and descending == 0
        parts.append(f"{p.name}: residual {residual}, strict-descending mismatches {descending}")
    values = set()
    for n in range(1, 5):
        for k in range(n + 1):
            values |= {mu for _, _, mu in mobius_table(build_rook_rank_level(n, k)).values()}
    ok &= values <= {-1, 0, 1}
    parts.append(f"R_(n,k) values {sorted(values)}")
    verdict(8, ok, "; ".join(parts))


def test_09_harness_power(verdict, r3):
    found = {c: find_failing_mutation(r3, c, family=Family.ROOK) for c in Check}
    missing = [c.value for c, hit in found.items() if hit is None]
    detail = ", ".join(f"{c.value}<-{hit[0]}#{hit[1]}" for c, hit in found.items() if hit)
    verdict(9, not missing, detail + (f"; no failing mutation for {missing}" if missing else ""))


def test_10_determinism(verdict, tmp_path):
    outs = []
    for threads in (1, 8):
        target = tmp_path / f"t{threads}.json"
        proc = subprocess.run(
            [sys.executable, "-m", "rookposet", "verify", "rook:4", "--checks", "all",
             "--threads", str(threads), "--format", "json", "-o", str(target)],
            capture_output=True,
        )
        assert proc.returncode == 0, proc.stderr
        outs.append(target.read_bytes())
    verdict(10, outs[0] == outs[1], f"threads 1 vs 8: {len(outs[0])} bytes, identical={outs[0] == outs[1]}")
