"""Text serializations of diagrams, hierarchies and analysis tables.

Floats are written with ``repr`` so every value round-trips exactly.
"""

import json
from typing import Iterable

from src.models.hierarchy import PersistenceHierarchy
from src.models.persistence import PersistenceDiagram
from src.models.persistence import PersistencePair
from src.modules.analysis import TableRow


def _vertex(vertex) -> str:
    return "-" if vertex is None else str(vertex)


def diagram_tsv(diagram: PersistenceDiagram) -> str:
    """One ``birth death creator destroyer essential`` line per pair, sorted."""
    lines = [
        f"{p.birth!r}\t{p.death!r}\t{p.creator}\t{_vertex(p.destroyer)}"
        f"\t{int(p.essential)}\n"
        for p in diagram.sorted()
    ]
    return "".join(lines)


def table_tsv(rows: Iterable[TableRow]) -> str:
    """One ``birth death rank stability`` line per hierarchy node."""
    return "".join(
        f"{row.birth!r}\t{row.death!r}\t{row.rank}\t{row.stability!r}\n" for row in rows
    )


def hierarchy_dot(h: PersistenceHierarchy, name: str = "hierarchy") -> str:
    """Graphviz digraph with ``(birth,death)`` labels; essential pairs are doubled."""
    lines = [f"digraph {json.dumps(name)} {{"]
    for i, node in enumerate(h.nodes):
        shape = "doublecircle" if node.essential else "ellipse"
        lines.append(f'  n{i} [label="{node.label()}", shape={shape}];')
    for parent, child in h.edges():
        lines.append(f"  n{parent} -> n{child};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _pair_json(pair: PersistencePair) -> dict:
    return {
        "birth": pair.birth,
        "death": pair.death,
        "creator": pair.creator,
        "destroyer": pair.destroyer,
        "essential": pair.essential,
    }


def hierarchy_json(h: PersistenceHierarchy) -> str:
    document = {
        "variant": h.variant.value,
        "nodes": [_pair_json(node) for node in h.nodes],
        "parent": list(h.parent),
    }
    return json.dumps(document, indent=2) + "\n"
