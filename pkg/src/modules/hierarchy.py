"""Regular persistence hierarchy and the interlevel set persistence hierarchy.

The regular hierarchy hangs every pair below the pair of the component it died
into, which makes it equivalent to a merge tree. The interlevel set variant
replays the same merges but also tracks, per component, the highest minimum of
the branch it continues. When two non-trivial branches meet, it checks whether
their highest minima are connected inside the interlevel set between them
without crossing a region owned by a third minimum. Connected branches are
prolonged; otherwise the two branches close at the merge vertex.
"""

import logging
from collections import deque
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence
from typing import Set
from typing import Tuple

from src.models.field import ScalarField
from src.models.hierarchy import BranchState
from src.models.hierarchy import PersistenceHierarchy
from src.models.hierarchy import Variant
from src.models.persistence import MergeEvent
from src.models.persistence import PairingTrace
from src.models.persistence import PersistenceDiagram
from src.modules.field_core import total_order
from src.modules.filtration import compute_pairs

logger = logging.getLogger(__name__)


def _node_index(diagram: PersistenceDiagram) -> Dict[int, int]:
    return {pair.creator: i for i, pair in enumerate(diagram.pairs)}


def build_regular_hierarchy(
    trace: PairingTrace, diagram: PersistenceDiagram
) -> PersistenceHierarchy:
    """Hang each pair below the pair of the older generator it merged into."""
    index = _node_index(diagram)
    parent: List[Optional[int]] = [None] * len(diagram)
    for event in trace.merge_events:
        parent[index[event.younger]] = index[event.older]
    return PersistenceHierarchy(
        nodes=diagram.pairs, parent=tuple(parent), variant=Variant.REGULAR
    )


def _lineage(absorbed: Dict[int, Set[int]], minimum: int) -> Set[int]:
    return absorbed.get(minimum, {minimum})


def lineages(events: Sequence[MergeEvent]) -> Dict[int, Set[int]]:
    """Minima absorbed (transitively) into each generator over ``events``.

    A generator missing from the result has an empty history; its lineage is
    just itself.
    """
    absorbed: Dict[int, Set[int]] = {}
    for event in events:
        older = absorbed.setdefault(event.older, {event.older})
        older.update(_lineage(absorbed, event.younger))
    return absorbed


def _connected_within(
    field: ScalarField,
    region: Sequence[int],
    source: int,
    target: int,
    y_l: float,
    y_u: float,
    allowed: Set[int],
) -> bool:
    if source == target:
        return True
    values = field.values.tolist()
    neighbors = field.neighbors
    seen = {source}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in neighbors[v]:
            if w in seen or not y_l <= values[w] <= y_u or region[w] not in allowed:
                continue
            if w == target:
                return True
            seen.add(w)
            queue.append(w)
    return False


def interlevel_connected(
    field: ScalarField,
    trace: PairingTrace,
    cp_a: int,
    cp_b: int,
    y_l: float,
    y_u: float,
    upto: Optional[int] = None,
) -> bool:
    """Test whether two minima are joined inside the interlevel set [y_l, y_u].

    A path may only use vertices whose value lies in [y_l, y_u] and whose
    descending region belongs to the lineage of ``cp_a`` or of ``cp_b``, so it
    never crosses a region assigned to a third minimum.

    Args:
        field: The scalar field the trace was computed on.
        trace: Pairing trace of the sublevel sweep.
        cp_a: First local minimum.
        cp_b: Second local minimum.
        y_l: Lower bound of the interlevel set.
        y_u: Upper bound of the interlevel set.
        upto: Number of merge events that have happened; by default every
            event whose merge vertex lies strictly below ``y_u``.
    """
    if cp_a == cp_b:
        return True
    values = field.values
    if upto is None:
        upto = sum(1 for e in trace.merge_events if values[e.vertex] < y_u)
    absorbed = lineages(trace.merge_events[:upto])
    allowed = _lineage(absorbed, cp_a) | _lineage(absorbed, cp_b)
    return _connected_within(
        field, trace.region.tolist(), cp_a, cp_b, y_l, y_u, allowed
    )


def build_isph(
    field: ScalarField,
    trace: PairingTrace,
    diagram: PersistenceDiagram,
) -> PersistenceHierarchy:
    """Build the interlevel set persistence hierarchy by replaying the merges.

    At each merge the new node is the pair of the younger generator:

    * both components trivial: it hangs below the older generator's pair and the
      survivor's highest minimum becomes the younger generator;
    * otherwise, if the two highest minima are connected in the interlevel set
      from the lower of them up to the merge value, the branch is prolonged: the
      node hangs below the older component's highest minimum and the survivor's
      highest becomes the younger one's;
    * otherwise both branches close here: the node hangs below the older
      generator's pair and the survivor becomes trivial again.

    A prolonged branch may hang a pair below a pair born after it in the
    filtration.
    """
    values = field.values.tolist()
    region = trace.region.tolist()

    index = _node_index(diagram)
    parent: List[Optional[int]] = [None] * len(diagram)
    branches: Dict[int, BranchState] = {m: BranchState(m, m) for m in trace.minima()}
    absorbed: Dict[int, Set[int]] = {}

    for event in trace.merge_events:
        u, g_a, g_b = event
        older = branches[g_a]
        younger = branches.pop(g_b)
        child = index[g_b]

        if older.trivial and younger.trivial:
            parent[child] = index[g_a]
            older.highest = g_b
        else:
            h_old, h_young = older.highest, younger.highest
            y_l = min(values[h_old], values[h_young])
            allowed = _lineage(absorbed, h_old) | _lineage(absorbed, h_young)
            connected = _connected_within(
                field, region, h_old, h_young, y_l, values[u], allowed
            )
            if connected:
                parent[child] = index[h_old]
                older.highest = h_young
                logger.debug(f"Merge at {u}: branch of {h_old} prolonged by {g_b}")
            else:
                parent[child] = index[g_a]
                older.highest = g_a
                logger.debug(f"Merge at {u}: branches of {h_old} and {h_young} close")

        absorbed.setdefault(g_a, {g_a}).update(_lineage(absorbed, g_b))

    return PersistenceHierarchy(
        nodes=diagram.pairs, parent=tuple(parent), variant=Variant.ISPH
    )


def build_hierarchy(
    field: ScalarField, variant: Variant = Variant.ISPH
) -> Tuple[PersistenceDiagram, PairingTrace, PersistenceHierarchy]:
    """Run order, sweep and hierarchy construction for one field."""
    order = total_order(field)
    diagram, trace = compute_pairs(field, order)
    if Variant(variant) is Variant.REGULAR:
        hierarchy = build_regular_hierarchy(trace, diagram)
    else:
        hierarchy = build_isph(field, trace, diagram)
    return diagram, trace, hierarchy
