"""Ranks and stability values derived from a persistence hierarchy."""

import logging
from dataclasses import dataclass
from typing import Dict
from typing import List
from typing import NamedTuple
from typing import Sequence
from typing import Tuple

import numpy as np

from src.models.hierarchy import PersistenceHierarchy
from src.models.hierarchy import Variant
from src.models.persistence import PersistencePair
from src.models.persistence import assignments
from src.modules.field_core import negate
from src.modules.hierarchy import build_hierarchy
from src.modules.synthetic import DEFAULT_SAMPLES
from src.modules.synthetic import MERGE_POINT_Y
from src.modules.synthetic import chain_from_critical
from src.modules.synthetic import critical_values

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


def ranks(h: PersistenceHierarchy) -> Tuple[int, ...]:
    """Number of descendants of every node, by one depth-first traversal."""
    counts = [0] * len(h)
    for root in h.roots():
        stack = [(root, False)]
        while stack:
            node, done = stack.pop()
            if done:
                counts[node] = sum(counts[c] + 1 for c in h.children(node))
                continue
            stack.append((node, True))
            stack.extend((c, False) for c in h.children(node))
    return tuple(counts)


def linf(a: PersistencePair, b: PersistencePair) -> float:
    return max(abs(a.birth - b.birth), abs(a.death - b.death))


def edge_stability(h: PersistenceHierarchy, e: Edge) -> float:
    """L-infinity distance between the pairs at both ends of a (parent, child) edge."""
    parent, child = e
    if h.parent[child] != parent:
        raise KeyError(f"({parent}, {child}) is not an edge of the hierarchy")
    return linf(h.nodes[parent], h.nodes[child])


def edge_stabilities(h: PersistenceHierarchy) -> Dict[Edge, float]:
    return {e: linf(h.nodes[e[0]], h.nodes[e[1]]) for e in h.edges()}


def vertex_stability(h: PersistenceHierarchy) -> Tuple[float, ...]:
    """Minimum of a node's outgoing edge stabilities and its own persistence."""
    stab = [node.persistence() for node in h.nodes]
    for (parent, _), value in edge_stabilities(h).items():
        stab[parent] = min(stab[parent], value)
    return tuple(stab)


class TableRow(NamedTuple):
    birth: float
    death: float
    rank: int
    stability: float
    essential: bool


def combined_table(h: PersistenceHierarchy) -> List[TableRow]:
    """Rows of (birth, death, rank, stability, essential) sorted by birth, death."""
    rank = ranks(h)
    stab = vertex_stability(h)
    rows = [
        TableRow(node.birth, node.death, rank[i], stab[i], node.essential)
        for i, node in enumerate(h.nodes)
    ]
    return sorted(rows, key=lambda row: (row.birth, row.death))


@dataclass(frozen=True)
class PerturbationResult:
    """Outcome of raising the merge point y of one reference function."""

    case: str
    delta: float
    threshold: float
    changed: bool


def _superlevel_isph(values: Sequence[float], samples: int):
    field = negate(chain_from_critical(values, samples))
    return build_hierarchy(field, Variant.ISPH)


def smallest_inner_stability(h: PersistenceHierarchy) -> float:
    """Smallest stability over the nodes that are not roots."""
    stab = vertex_stability(h)
    inner = [stab[i] for i, p in enumerate(h.parent) if p is not None]
    return min(inner) if inner else 0.0


def perturbation_experiment(
    seed: int, samples: int = DEFAULT_SAMPLES
) -> List[PerturbationResult]:
    """Raise y on the stable and unstable functions by more than the unstable stab.

    The offset is ``stab + u`` with ``u`` drawn uniformly from [0.05, 0.85), so
    the perturbed y stays below both neighbouring maxima. Assignments are
    compared on the superlevel sets of the original and perturbed functions.
    """
    _, _, reference = _superlevel_isph(critical_values("unstable"), samples)
    threshold = smallest_inner_stability(reference)
    rng = np.random.default_rng(seed)
    delta = threshold + float(rng.uniform(0.05, 0.85))

    results = []
    for case in ("stable", "unstable"):
        values = list(critical_values(case))
        before, _, _ = _superlevel_isph(values, samples)
        values[MERGE_POINT_Y] += delta
        after, _, _ = _superlevel_isph(values, samples)
        changed = assignments(before) != assignments(after)
        logger.info(
            f"Perturbation of {case}: delta={delta:.4f} threshold={threshold:.4f}"
            f" changed={changed}"
        )
        results.append(PerturbationResult(case, delta, threshold, changed))
    return results
