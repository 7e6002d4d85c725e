"""Persistence pairs, diagrams and the bookkeeping a sublevel sweep leaves behind."""

from dataclasses import dataclass
from dataclasses import replace
from enum import Enum
from typing import Iterator
from typing import NamedTuple
from typing import Optional
from typing import Set
from typing import Tuple

import numpy as np


@dataclass(frozen=True)
class PersistencePair:
    """A creator/destroyer pair; essential pairs carry no destroyer vertex.

    Essential pairs never die. Their death is the maximum value of their domain
    component so that persistence, stability and distances stay finite.
    """

    creator: int
    destroyer: Optional[int]
    birth: float
    death: float
    essential: bool = False

    def persistence(self) -> float:
        return abs(self.death - self.birth)

    def point(self) -> Tuple[float, float]:
        return (self.birth, self.death)

    def negated(self) -> "PersistencePair":
        """Flip the sign of both coordinates (superlevel reporting)."""
        return replace(self, birth=-self.birth, death=-self.death)

    def label(self) -> str:
        return f"({self.birth!r},{self.death!r})"


@dataclass(frozen=True)
class PersistenceDiagram:
    """Multiset of persistence pairs, stored in creation order."""

    pairs: Tuple[PersistencePair, ...]

    def __iter__(self) -> Iterator[PersistencePair]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def finite(self) -> Tuple[PersistencePair, ...]:
        return tuple(p for p in self.pairs if not p.essential)

    def essential(self) -> Tuple[PersistencePair, ...]:
        return tuple(p for p in self.pairs if p.essential)

    def sorted(self) -> "PersistenceDiagram":
        """Return the diagram ordered by (birth, death, creator)."""
        return PersistenceDiagram(
            tuple(sorted(self.pairs, key=lambda p: (p.birth, p.death, p.creator)))
        )

    def negated(self) -> "PersistenceDiagram":
        return PersistenceDiagram(tuple(p.negated() for p in self.pairs))

    def points(self) -> Set[Tuple[float, float]]:
        return {p.point() for p in self.pairs}

    def as_array(self) -> np.ndarray:
        """Return an (n, 2) array of (birth, death) rows."""
        if not self.pairs:
            return np.zeros((0, 2))
        return np.array([p.point() for p in self.pairs], dtype=float)


def assignments(diagram: PersistenceDiagram) -> Set[Tuple[int, Optional[int]]]:
    """Return the set of (creator, destroyer) vertex assignments of a diagram."""
    return {(p.creator, p.destroyer) for p in diagram.pairs}


class CriticalKind(str, Enum):
    """Classification of a vertex at the moment the sweep reaches it."""

    MINIMUM = "minimum"
    MERGE = "merge"
    REGULAR = "regular"


class MergeEvent(NamedTuple):
    """Binary merge at ``vertex``: ``younger`` dies into ``older``."""

    vertex: int
    older: int
    younger: int


@dataclass(frozen=True, eq=False)
class PairingTrace:
    """Per-vertex bookkeeping recorded while sweeping the vertex order.

    Attributes:
        basin: Generator of the component a vertex joined at insertion.
        region: Descending region of a vertex: the region of its lowest earlier
            neighbor at insertion, or the vertex itself for a local minimum.
        merge_events: Binary merges in ascending order of the merge vertex.
        critical: Classification of every vertex.
    """

    basin: np.ndarray
    region: np.ndarray
    merge_events: Tuple[MergeEvent, ...]
    critical: Tuple[CriticalKind, ...]

    def minima(self) -> Tuple[int, ...]:
        return tuple(
            v for v, kind in enumerate(self.critical) if kind is CriticalKind.MINIMUM
        )
