"""Disjoint sets over vertex ids whose roots are always the oldest generator."""

from typing import List


class ElderUnionFind:
    """Array-backed union-find with path compression and elder-rule unions.

    Vertices enter one at a time through :meth:`add`. A root is the vertex that
    created its set; :meth:`merge` always hangs the younger root below the older
    one, so the root of every set stays its oldest generator. There is no union
    by rank: the elder rule fixes which root survives.
    """

    def __init__(self, size: int):
        self._parent: List[int] = list(range(size))
        self._present: List[bool] = [False] * size

    def __contains__(self, vertex: int) -> bool:
        return self._present[vertex]

    def add(self, vertex: int) -> None:
        """Insert ``vertex`` as a singleton set."""
        self._parent[vertex] = vertex
        self._present[vertex] = True

    def find(self, vertex: int) -> int:
        """Return the root of ``vertex``'s set, compressing the path on the way."""
        parent = self._parent
        root = vertex
        while parent[root] != root:
            root = parent[root]
        while parent[vertex] != root:
            parent[vertex], vertex = root, parent[vertex]
        return root

    def merge(self, older: int, younger: int) -> int:
        """Attach the set of ``younger`` below the root of ``older``'s set.

        Returns:
            The surviving root.
        """
        older_root = self.find(older)
        younger_root = self.find(younger)
        if older_root != younger_root:
            self._parent[younger_root] = older_root
        return older_root
