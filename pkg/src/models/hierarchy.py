"""Rooted trees over persistence pairs."""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import List
from typing import Optional
from typing import Tuple

from src.models.persistence import PersistencePair


class Variant(str, Enum):
    """Which parent rule produced a hierarchy."""

    REGULAR = "regular"
    ISPH = "isph"


@dataclass(frozen=True)
class PersistenceHierarchy:
    """Persistence pairs linked parent -> child.

    ``parent[i]`` is the index of the parent of ``nodes[i]``, or None for a root.
    """

    nodes: Tuple[PersistencePair, ...]
    parent: Tuple[Optional[int], ...]
    variant: Variant = Variant.REGULAR

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))

    def __len__(self) -> int:
        return len(self.nodes)

    @cached_property
    def _children(self) -> Tuple[Tuple[int, ...], ...]:
        children: List[List[int]] = [[] for _ in self.nodes]
        for child, parent in enumerate(self.parent):
            if parent is not None:
                children[parent].append(child)
        # Canonical sibling order: ascending birth, ties broken by death.
        return tuple(
            tuple(
                sorted(
                    kids,
                    key=lambda i: (self.nodes[i].birth, self.nodes[i].death, i),
                )
            )
            for kids in children
        )

    def children(self, index: int) -> Tuple[int, ...]:
        return self._children[index]

    def roots(self) -> Tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.parent) if p is None)

    def edges(self) -> Tuple[Tuple[int, int], ...]:
        """Return (parent, child) index pairs."""
        return tuple((p, c) for c, p in enumerate(self.parent) if p is not None)

    def depth(self, index: int) -> int:
        depth = 0
        while self.parent[index] is not None:
            index = self.parent[index]
            depth += 1
        return depth

    def is_chain(self) -> bool:
        """True if every node has at most one child."""
        return len(self.roots()) == 1 and all(len(k) <= 1 for k in self._children)

    def is_star(self) -> bool:
        """True if every non-root node hangs directly off the single root."""
        roots = self.roots()
        return len(roots) == 1 and all(
            p is None or p == roots[0] for p in self.parent
        )

    def signature(self, index: Optional[int] = None) -> tuple:
        """Canonical nested tuple of (birth, death, children...) for comparisons."""
        if index is None:
            return tuple(self.signature(r) for r in self.roots())
        node = self.nodes[index]
        return (
            node.birth,
            node.death,
            tuple(self.signature(c) for c in self.children(index)),
        )

    def negated(self) -> "PersistenceHierarchy":
        return PersistenceHierarchy(
            nodes=tuple(n.negated() for n in self.nodes),
            parent=self.parent,
            variant=self.variant,
        )


@dataclass
class BranchState:
    """Per-component branch bookkeeping used while building the ISPH.

    ``generator`` is the lowest minimum of the component, ``highest`` the highest
    minimum along the branch the component currently continues.
    """

    generator: int
    highest: int

    @property
    def trivial(self) -> bool:
        return self.highest == self.generator
