"""Sublevel sweep that pairs minima with merge vertices by the elder rule."""

import logging
from typing import Dict
from typing import List
from typing import Optional
from typing import Tuple

import numpy as np

from src.models.field import ScalarField
from src.models.field import VertexOrder
from src.models.persistence import CriticalKind
from src.models.persistence import MergeEvent
from src.models.persistence import PairingTrace
from src.models.persistence import PersistenceDiagram
from src.models.persistence import PersistencePair
from src.modules.field_core import total_order
from src.modules.union_find import ElderUnionFind

logger = logging.getLogger(__name__)


def compute_pairs(
    field: ScalarField, order: Optional[VertexOrder] = None
) -> Tuple[PersistenceDiagram, PairingTrace]:
    """Compute zero-dimensional persistence pairs of the sublevel filtration.

    Vertices are inserted in ascending order. A vertex without an earlier
    neighbor creates a component. A vertex touching k >= 2 components merges
    them as k - 1 binary merges in ascending generator order; every younger
    generator dies into the oldest one at this vertex. Components still alive at
    the end give essential pairs whose death is their maximum value.

    Args:
        field: The scalar field.
        order: Its vertex order; computed when omitted.

    Returns:
        The diagram (finite pairs by death, then essential pairs) and the trace.
    """
    if order is None:
        order = total_order(field)

    values = field.values.tolist()
    rank = order.rank_of.tolist()
    neighbors = field.neighbors
    n = len(values)

    uf = ElderUnionFind(n)
    basin = [-1] * n
    region = [-1] * n
    critical: List[Optional[CriticalKind]] = [None] * n
    top: Dict[int, int] = {}
    events: List[MergeEvent] = []
    pairs: List[PersistencePair] = []

    for u in order.permutation.tolist():
        earlier = [w for w in neighbors[u] if w in uf]
        uf.add(u)
        if not earlier:
            basin[u] = region[u] = u
            critical[u] = CriticalKind.MINIMUM
            top[u] = u
            continue

        roots = sorted({uf.find(w) for w in earlier}, key=rank.__getitem__)
        oldest = roots[0]
        basin[u] = oldest
        region[u] = region[min(earlier, key=rank.__getitem__)]
        uf.merge(oldest, u)

        if len(roots) == 1:
            critical[u] = CriticalKind.REGULAR
        else:
            critical[u] = CriticalKind.MERGE
            for younger in roots[1:]:
                events.append(MergeEvent(vertex=u, older=oldest, younger=younger))
                pairs.append(
                    PersistencePair(
                        creator=younger,
                        destroyer=u,
                        birth=values[younger],
                        death=values[u],
                    )
                )
                uf.merge(oldest, younger)
                del top[younger]
        top[oldest] = u

    for generator in sorted(top, key=rank.__getitem__):
        pairs.append(
            PersistencePair(
                creator=generator,
                destroyer=None,
                birth=values[generator],
                death=values[top[generator]],
                essential=True,
            )
        )

    logger.debug(
        f"Sweep over {n} vertices: {len(events)} merges, {len(top)} essential pairs"
    )
    trace = PairingTrace(
        basin=np.asarray(basin, dtype=int),
        region=np.asarray(region, dtype=int),
        merge_events=tuple(events),
        critical=tuple(critical),
    )
    return PersistenceDiagram(tuple(pairs)), trace


def persistence(pair: PersistencePair) -> float:
    """Return |death - birth|; essential pairs use their component maximum."""
    return pair.persistence()
