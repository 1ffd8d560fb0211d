"""JSON, DOT and CSV forms of posets.

JSON carries element payloads (one-line sequences as integer arrays), ranks
and labeled edges, and rebuilds an equal poset. DOT is for drawing; edges
carry ``label="(a,b)"`` and :func:`read_dot` parses back what
:func:`to_dot` writes.
"""

from __future__ import annotations

import csv
import io
import json
import re
from typing import Any

from .poset import GradedPoset, MobiusTable
from .rook import EdgeLabel, RookElement, length

__all__ = ["to_json", "from_json", "to_dot", "read_dot", "to_csv", "mobius_csv", "is_isomorphic"]


def _label_out(lab: Any) -> Any:
    return list(lab) if isinstance(lab, tuple) else lab


def _label_in(obj: Any) -> Any:
    if obj is None:
        return None
    return EdgeLabel(*obj)


def to_json(p: GradedPoset) -> str:
    doc = {
        "name": p.name,
        "graded": p.graded,
        "bounded": p.bounded,
        "elements": [list(e) for e in p.elements],
        "ranks": list(p.ranks),
        "edges": [
            {"source": u, "target": v, "label": _label_out(lab)} for u, v, lab in p.edges()
        ],
    }
    return json.dumps(doc, indent=1) + "\n"


def from_json(text: str) -> GradedPoset:
    doc = json.loads(text)
    return GradedPoset(
        [RookElement(e) for e in doc["elements"]],
        doc["ranks"],
        [(e["source"], e["target"], _label_in(e["label"])) for e in doc["edges"]],
        graded=doc.get("graded", True),
        bounded=doc.get("bounded", False),
        name=doc.get("name", ""),
    )


def _node(e) -> str:
    return '"' + ",".join(map(str, e)) + '"'


def to_dot(p: GradedPoset) -> str:
    """Hasse diagram drawn bottom-up, one rank per row."""
    lines = [f"digraph {json.dumps(p.name or 'poset')} {{", "  rankdir=BT;"]
    by_rank: dict[int, list] = {}
    for e, r in zip(p.elements, p.ranks):
        by_rank.setdefault(r, []).append(e)
    for r in sorted(by_rank):
        nodes = " ".join(_node(e) for e in by_rank[r])
        lines.append(f"  {{ rank=same; {nodes} }}  // rank {r}")
    for u, v, lab in p.edges():
        attr = f' [label="{lab}"]' if lab is not None else ""
        lines.append(f"  {_node(p.elements[u])} -> {_node(p.elements[v])}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


_EDGE = re.compile(r'"([\d,]+)"\s*->\s*"([\d,]+)"(?:\s*\[label="\((\d+),(\d+)\)"\])?')
_RANK = re.compile(r"\{ rank=same; (.*) \}\s*// rank (\d+)")


def read_dot(text: str) -> GradedPoset:
    """Parse the DOT written by :func:`to_dot` for rook-element posets."""
    elements, ranks, edges = [], [], []
    for m in _RANK.finditer(text):
        r = int(m.group(2))
        for tok in re.findall(r'"([\d,]+)"', m.group(1)):
            elements.append(RookElement.parse(tok))
            ranks.append(r)
    index = {e: i for i, e in enumerate(elements)}
    for m in _EDGE.finditer(text):
        u, v = RookElement.parse(m.group(1)), RookElement.parse(m.group(2))
        lab = EdgeLabel(int(m.group(3)), int(m.group(4))) if m.group(3) else None
        edges.append((index[u], index[v], lab))
    return GradedPoset(elements, ranks, edges)


def to_csv(p: GradedPoset) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["source", "target", "source_rank", "target_rank", "label"])
    for u, v, lab in p.edges():
        w.writerow([",".join(map(str, p.elements[u])), ",".join(map(str, p.elements[v])),
                    p.ranks[u], p.ranks[v], "" if lab is None else str(lab)])
    return buf.getvalue()


def mobius_csv(table: MobiusTable) -> str:
    p = table.poset
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y", "length", "mobius"])
    for x, y, mu in table.values():
        w.writerow([",".join(map(str, p.elements[x])), ",".join(map(str, p.elements[y])),
                    p.ranks[y] - p.ranks[x], mu])
    return buf.getvalue()


def is_isomorphic(p: GradedPoset, q: GradedPoset) -> bool:
    """Same payloads, ranks and labeled covers (payload identity as the map)."""
    if set(zip(p.elements, p.ranks)) != set(zip(q.elements, q.ranks)):
        return False

    def edges(r: GradedPoset) -> set:
        return {(r.elements[u], r.elements[v], lab) for u, v, lab in r.edges()}

    return edges(p) == edges(q)


def element_line(e, rank: int | None = None) -> str:
    r = length(e) if rank is None else rank
    return f"{','.join(map(str, e))}\t{r}"
