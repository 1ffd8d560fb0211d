import csv
import io
import json

from hypothesis import given, settings
from hypothesis import strategies as st

from rookposet import serialize as pio
from rookposet.instances import build_rook, build_rook_rank_level, build_symmetric
from rookposet.poset import mobius_table


def test_json_round_trip(r3):
    q = pio.from_json(pio.to_json(r3))
    assert pio.is_isomorphic(r3, q)
    assert (q.name, q.bounded, q.graded) == (r3.name, r3.bounded, r3.graded)
    doc = json.loads(pio.to_json(r3))
    assert doc["edges"][0].keys() == {"source", "target", "label"}
    assert all(isinstance(e, list) for e in doc["elements"])


def test_dot_round_trip(r3, s3):
    for p in (r3, s3, build_rook_rank_level(3, 1)):
        text = pio.to_dot(p)
        assert text.startswith("digraph")
        assert pio.is_isomorphic(p, pio.read_dot(text))


def test_dot_edge_labels(r3):
    text = pio.to_dot(r3)
    assert '"0,1,0" -> "1,0,0" [label="(0,1)"];' in text
    assert text.count("->") == r3.edge_count


@settings(max_examples=5, deadline=None)
@given(st.integers(1, 3))
def test_round_trips_for_small_rooks(n):
    p = build_rook(n)
    assert pio.is_isomorphic(p, pio.read_dot(pio.to_dot(p)))
    assert pio.is_isomorphic(p, pio.from_json(pio.to_json(p)))


def test_is_isomorphic_detects_changes(r2, r3):
    assert not pio.is_isomorphic(r2, r3)
    doc = json.loads(pio.to_json(r2))
    doc["edges"][0]["label"] = [9, 9]
    assert not pio.is_isomorphic(r2, pio.from_json(json.dumps(doc)))


def test_hasse_csv(s3):
    rows = list(csv.DictReader(io.StringIO(pio.to_csv(s3))))
    assert len(rows) == s3.edge_count
    assert {"source": "1,2,3", "target": "2,1,3", "source_rank": "0", "target_rank": "1", "label": "(1,2)"} in rows


def test_mobius_csv(r2):
    table = mobius_table(r2)
    rows = list(csv.DictReader(io.StringIO(pio.mobius_csv(table))))
    assert len(rows) == sum(1 for _ in table.values())
    top = [r for r in rows if r["x"] == "0,0" and r["y"] == "2,1"]
    assert top == [{"x": "0,0", "y": "2,1", "length": "4", "mobius": str(table[r2.bottom, r2.top])}]


def test_symmetric_json():
    p = build_symmetric(3)
    assert pio.is_isomorphic(p, pio.from_json(pio.to_json(p)))
