"""Scalar fields on discrete domains and their vertex orders."""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional
from typing import Tuple

import numpy as np

from src.errors import FormatError


class DomainKind(str, Enum):
    """Kind of neighborhood graph a field is sampled on."""

    CHAIN_1D = "chain-1d"
    GRID_2D = "grid-2d"


Adjacency = Tuple[Tuple[int, ...], ...]

_OFFSETS = {
    4: ((-1, 0), (0, -1), (0, 1), (1, 0)),
    8: ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)),
}


def chain_adjacency(n: int) -> Adjacency:
    """Adjacency of a path graph: vertex i touches i-1 and i+1."""
    return tuple(tuple(w for w in (i - 1, i + 1) if 0 <= w < n) for i in range(n))


def grid_adjacency(rows: int, cols: int, connectivity: int = 4) -> Adjacency:
    """Row-major adjacency of a rows x cols grid.

    Args:
        rows: Number of grid rows.
        cols: Number of grid columns.
        connectivity: 4 (von Neumann) or 8 (Moore) neighborhood.
    """
    if connectivity not in _OFFSETS:
        raise FormatError(f"Unsupported grid connectivity: {connectivity}")
    adjacency = []
    for r in range(rows):
        for c in range(cols):
            adjacency.append(
                tuple(
                    (r + dr) * cols + (c + dc)
                    for dr, dc in _OFFSETS[connectivity]
                    if 0 <= r + dr < rows and 0 <= c + dc < cols
                )
            )
    return tuple(adjacency)


@dataclass(frozen=True, eq=False)
class ScalarField:
    """Function values on a vertex set plus an undirected neighborhood graph.

    Fields are immutable: the value array is flagged read-only on construction, so
    a field can be shared between concurrent readers.
    """

    values: np.ndarray
    neighbors: Adjacency
    domain_kind: DomainKind
    dims: Optional[Tuple[int, int]] = None
    connectivity: int = 2

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "domain_kind", DomainKind(self.domain_kind))
        neighbors = tuple(tuple(int(w) for w in adj) for adj in self.neighbors)
        object.__setattr__(self, "neighbors", neighbors)

    def __len__(self) -> int:
        return int(self.values.shape[0])

    def __eq__(self, other) -> bool:
        if not isinstance(other, ScalarField):
            return NotImplemented
        return (
            self.domain_kind == other.domain_kind
            and self.dims == other.dims
            and self.neighbors == other.neighbors
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self):
        return (
            f"<ScalarField(kind={self.domain_kind.value}, n={len(self)},"
            f" dims={self.dims})>"
        )

    def with_values(self, values) -> "ScalarField":
        """Return a field on the same domain carrying new values."""
        return ScalarField(
            values=values,
            neighbors=self.neighbors,
            domain_kind=self.domain_kind,
            dims=self.dims,
            connectivity=self.connectivity,
        )

    def validate(self) -> "ScalarField":
        """Check the domain invariants and return the field itself.

        Raises:
            FormatError: if any adjacency or value invariant is violated.
        """
        n = len(self)
        if len(self.neighbors) != n:
            raise FormatError(
                f"adjacency lists cover {len(self.neighbors)} vertices, expected {n}"
            )
        if not all(math.isfinite(v) for v in self.values.tolist()):
            raise FormatError("field contains non-finite values")

        for v, adj in enumerate(self.neighbors):
            for w in adj:
                if not 0 <= w < n:
                    raise FormatError(f"vertex {v} lists out-of-range neighbor {w}")
                if w == v:
                    raise FormatError(f"vertex {v} is adjacent to itself")
                if v not in self.neighbors[w]:
                    raise FormatError(f"adjacency between {v} and {w} is not symmetric")

        if self.domain_kind is DomainKind.GRID_2D:
            if self.dims is None or self.dims[0] * self.dims[1] != n:
                raise FormatError(f"grid extents {self.dims} do not match {n} vertices")
            expected = grid_adjacency(*self.dims, connectivity=self.connectivity)
        else:
            expected = chain_adjacency(n)
        for v, (adj, want) in enumerate(zip(self.neighbors, expected)):
            if set(adj) != set(want):
                raise FormatError(f"vertex {v} has neighbors {sorted(adj)}")
        return self


@dataclass(frozen=True, eq=False)
class VertexOrder:
    """Strict total order on vertices: ascending (value, vertex id)."""

    permutation: np.ndarray
    rank_of: np.ndarray

    def __len__(self) -> int:
        return int(self.permutation.shape[0])
