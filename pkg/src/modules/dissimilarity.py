"""Dissimilarity between hierarchies and diagrams, and pairwise distance matrices."""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from itertools import combinations
from typing import Dict
from typing import List
from typing import Sequence
from typing import Tuple
from typing import Union

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist

from src.errors import ConfigurationError
from src.errors import EmptyHierarchyError
from src.errors import FieldComputationError
from src.errors import FormatError
from src.models.field import ScalarField
from src.models.hierarchy import PersistenceHierarchy
from src.models.hierarchy import Variant
from src.models.persistence import PersistenceDiagram
from src.modules.decorators import perf_time
from src.modules.field_core import negate
from src.modules.hierarchy import build_hierarchy

logger = logging.getLogger(__name__)


class Measure(str, Enum):
    ISPH_TED = "isph-ted"
    WASSERSTEIN = "wasserstein"


class _AnnotatedTree:
    """Post-order numbering, leftmost leaf descendants and keyroots of a hierarchy."""

    def __init__(self, h: PersistenceHierarchy):
        if len(h) == 0:
            raise EmptyHierarchyError("Tree edit distance needs a non-empty hierarchy")
        roots = h.roots()
        if len(roots) != 1:
            raise FormatError(
                f"Tree edit distance needs a single-rooted hierarchy, got {len(roots)}"
            )
        self.root = roots[0]
        self.nodes: List[int] = []
        self.lmds: List[int] = []
        post_index: Dict[int, int] = {}

        stack = [(self.root, False)]
        while stack:
            node, expanded = stack.pop()
            if not expanded:
                stack.append((node, True))
                stack.extend((c, False) for c in reversed(h.children(node)))
                continue
            index = len(self.nodes)
            post_index[node] = index
            self.nodes.append(node)
            children = h.children(node)
            self.lmds.append(self.lmds[post_index[children[0]]] if children else index)

        keyroots: Dict[int, int] = {}
        for i, lmd in enumerate(self.lmds):
            keyroots[lmd] = i
        self.keyroots = sorted(keyroots.values())


class _ZhangShasha:
    """Keyroot dynamic program over two annotated trees."""

    def __init__(
        self, h1: PersistenceHierarchy, h2: PersistenceHierarchy, indel_factor: float
    ):
        self.h1, self.h2 = h1, h2
        self.a, self.b = _AnnotatedTree(h1), _AnnotatedTree(h2)
        self.indel_factor = indel_factor
        self.td = [[0.0] * len(self.b.nodes) for _ in self.a.nodes]

    def _indel(self, h: PersistenceHierarchy, root: int, node: int) -> float:
        if node == root:
            return math.inf
        return self.indel_factor * h.nodes[node].persistence()

    def delete(self, node: int) -> float:
        return self._indel(self.h1, self.a.root, node)

    def insert(self, node: int) -> float:
        return self._indel(self.h2, self.b.root, node)

    def relabel(self, x: int, y: int) -> float:
        p, q = self.h1.nodes[x], self.h2.nodes[y]
        return max(abs(p.birth - q.birth), abs(p.death - q.death))

    def treedist(self, i: int, j: int) -> None:
        a, b, td = self.a, self.b, self.td
        al, bl = a.lmds, b.lmds
        ioff, joff = al[i] - 1, bl[j] - 1
        m, n = i - ioff + 1, j - joff + 1
        fd = [[0.0] * n for _ in range(m)]
        for x in range(1, m):
            fd[x][0] = fd[x - 1][0] + self.delete(a.nodes[x + ioff])
        for y in range(1, n):
            fd[0][y] = fd[0][y - 1] + self.insert(b.nodes[y + joff])

        for x in range(1, m):
            node_a = a.nodes[x + ioff]
            for y in range(1, n):
                node_b = b.nodes[y + joff]
                removed = fd[x - 1][y] + self.delete(node_a)
                added = fd[x][y - 1] + self.insert(node_b)
                if al[i] == al[x + ioff] and bl[j] == bl[y + joff]:
                    matched = fd[x - 1][y - 1] + self.relabel(node_a, node_b)
                    fd[x][y] = min(removed, added, matched)
                    td[x + ioff][y + joff] = fd[x][y]
                else:
                    p = al[x + ioff] - 1 - ioff
                    q = bl[y + joff] - 1 - joff
                    subtree = fd[p][q] + td[x + ioff][y + joff]
                    fd[x][y] = min(removed, added, subtree)

    def distance(self) -> float:
        for i in self.a.keyroots:
            for j in self.b.keyroots:
                self.treedist(i, j)
        return self.td[-1][-1]


def tree_edit_distance(
    h1: PersistenceHierarchy, h2: PersistenceHierarchy, indel_factor: float = 1.0
) -> float:
    """Ordered tree edit distance between two single-rooted hierarchies.

    Children are ordered by ascending birth, ties broken by death. Relabeling
    costs the L-infinity distance between the two pairs; inserting or deleting a
    node costs ``indel_factor`` times its persistence. The roots are always
    matched with each other.

    Raises:
        EmptyHierarchyError: if either hierarchy has no nodes.
        FormatError: if either hierarchy has several roots.
    """
    return _ZhangShasha(h1, h2, indel_factor).distance()


def _diagonal_cost(points: np.ndarray) -> np.ndarray:
    return np.abs(points[:, 1] - points[:, 0]) / 2.0


def wasserstein(
    d1: PersistenceDiagram, d2: PersistenceDiagram, exponent: float = 2.0
) -> float:
    """q-Wasserstein distance with L-infinity ground metric.

    Each point may be matched to a point of the other diagram or to its own
    projection on the diagonal, at cost half its persistence. Solved as a
    minimum-cost perfect matching on the (m + n) x (m + n) augmented matrix.
    """
    if exponent < 1:
        raise ConfigurationError(f"Wasserstein exponent must be >= 1, got {exponent}")
    s, t = d1.as_array(), d2.as_array()
    m, n = len(s), len(t)
    if m + n == 0:
        return 0.0

    cost = np.zeros((m + n, m + n))
    if m and n:
        cost[:m, :n] = cdist(s, t, metric="chebyshev") ** exponent
    diag_s = _diagonal_cost(s) ** exponent
    diag_t = _diagonal_cost(t) ** exponent
    # Cells that would send a point to another point's diagonal projection.
    blocked = float(cost.sum() + diag_s.sum() + diag_t.sum() + 1.0)
    cost[:m, n:] = blocked
    cost[m:, :n] = blocked
    cost[:m, n:][np.diag_indices(m)] = diag_s
    cost[m:, :n][np.diag_indices(n)] = diag_t

    rows, cols = linear_sum_assignment(cost)
    return float(np.sum(cost[rows, cols]) ** (1.0 / exponent))


Summary = Union[PersistenceHierarchy, PersistenceDiagram]


def summarize(
    field: ScalarField, measure: Measure, superlevel: bool = False
) -> Summary:
    """Compute the object a measure compares: an ISPH or a diagram."""
    if superlevel:
        field = negate(field)
    diagram, _, hierarchy = build_hierarchy(field, Variant.ISPH)
    if Measure(measure) is Measure.ISPH_TED:
        return hierarchy
    return diagram


def _summaries(
    fields: Sequence[ScalarField], measure: Measure, superlevel: bool
) -> List[Summary]:
    summaries = []
    for index, field in enumerate(fields):
        try:
            summaries.append(summarize(field, measure, superlevel))
        except Exception as e:
            raise FieldComputationError(index, e) from e
    return summaries


@perf_time(log_function=logger.info)
def distance_matrix(
    fields: Sequence[ScalarField],
    measure: Measure = Measure.ISPH_TED,
    exponent: float = 2.0,
    indel_factor: float = 1.0,
    superlevel: bool = False,
    workers: int = 1,
) -> np.ndarray:
    """Pairwise distances between fields under one measure.

    Each field is summarized once. The upper triangle is evaluated cell by cell,
    concurrently when ``workers`` > 1, and mirrored.

    Raises:
        ConfigurationError: for fewer than two fields.
        FormatError: if the fields live on different kinds of domain.
        FieldComputationError: if summarizing one field fails; carries its index.
    """
    if len(fields) < 2:
        raise ConfigurationError(f"Need at least 2 fields, got {len(fields)}")
    kinds = {field.domain_kind for field in fields}
    if len(kinds) > 1:
        raise FormatError(f"Fields mix domain kinds: {sorted(k.value for k in kinds)}")

    measure = Measure(measure)
    summaries = _summaries(fields, measure, superlevel)

    def cell(pair: Tuple[int, int]) -> float:
        i, j = pair
        if measure is Measure.ISPH_TED:
            return tree_edit_distance(summaries[i], summaries[j], indel_factor)
        return wasserstein(summaries[i], summaries[j], exponent)

    pairs = list(combinations(range(len(fields)), 2))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(cell, pairs))
    else:
        values = [cell(pair) for pair in pairs]

    matrix = np.zeros((len(fields), len(fields)))
    for (i, j), value in zip(pairs, values):
        matrix[i, j] = matrix[j, i] = value
    logger.debug(f"Computed {len(pairs)} {measure.value} distances")
    return matrix


def to_dense_tsv(matrix: np.ndarray) -> str:
    return "".join("\t".join(repr(float(v)) for v in row) + "\n" for row in matrix)


def to_triplets(matrix: np.ndarray) -> str:
    """Sparse ``i<TAB>j<TAB>d`` lines for every cell, row by row."""
    n = len(matrix)
    return "".join(
        f"{i}\t{j}\t{float(matrix[i, j])!r}\n" for i in range(n) for j in range(n)
    )
