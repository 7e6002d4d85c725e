"""Construction and elementary transforms of scalar fields."""

import logging
from typing import Sequence
from typing import Tuple

import numpy as np

from src.errors import DegenerateDomainError
from src.models.field import DomainKind
from src.models.field import ScalarField
from src.models.field import VertexOrder
from src.models.field import chain_adjacency
from src.models.field import grid_adjacency

logger = logging.getLogger(__name__)


def make_chain_field(values: Sequence[float]) -> ScalarField:
    """Build a validated 1D chain field from values in vertex order."""
    if len(values) < 2:
        raise DegenerateDomainError(
            f"A chain needs at least 2 vertices, got {len(values)}"
        )
    return ScalarField(
        values=np.asarray(values, dtype=float),
        neighbors=chain_adjacency(len(values)),
        domain_kind=DomainKind.CHAIN_1D,
    ).validate()


def make_grid_field(
    values: Sequence[float], dims: Tuple[int, int], connectivity: int = 4
) -> ScalarField:
    """Build a validated 2D grid field from row-major values.

    Args:
        values: Row-major samples, ``rows * cols`` of them.
        dims: Grid extents as (rows, cols).
        connectivity: 4 or 8 neighborhood.
    """
    rows, cols = dims
    if rows * cols < 2:
        raise DegenerateDomainError(f"A grid needs at least 2 vertices, got {dims}")
    return ScalarField(
        values=np.asarray(values, dtype=float).reshape(-1),
        neighbors=grid_adjacency(rows, cols, connectivity),
        domain_kind=DomainKind.GRID_2D,
        dims=(rows, cols),
        connectivity=connectivity,
    ).validate()


def with_connectivity(field: ScalarField, connectivity: int) -> ScalarField:
    """Return a grid field re-wired to another neighborhood; chains are unchanged."""
    if field.domain_kind is not DomainKind.GRID_2D:
        return field
    if field.connectivity == connectivity:
        return field
    logger.debug(f"Re-wiring {field.dims} grid to {connectivity}-connectivity")
    return make_grid_field(field.values, field.dims, connectivity)


def total_order(field: ScalarField) -> VertexOrder:
    """Sort vertices by (value, vertex id), which is a strict total order."""
    ids = np.arange(len(field))
    permutation = np.lexsort((ids, field.values))
    rank_of = np.empty_like(permutation)
    rank_of[permutation] = ids
    permutation.setflags(write=False)
    rank_of.setflags(write=False)
    return VertexOrder(permutation=permutation, rank_of=rank_of)


def negate(field: ScalarField) -> ScalarField:
    """Return the field x -> -x; sublevel analysis of it is superlevel analysis."""
    return field.with_values(-field.values)


def affine(field: ScalarField, alpha: float, beta: float) -> ScalarField:
    """Return the field x -> alpha * x + beta."""
    return field.with_values(alpha * field.values + beta)
