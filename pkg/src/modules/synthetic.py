"""Deterministic synthetic fields that reproduce small reference configurations.

1D cases are piecewise-linear chains through a skeleton of critical values.
Grid cases hold a boundary ring at 0 around a ridge ``h(row) * g(col)``: ``h``
is one Gaussian centred on the middle row and ``g`` is a positive baseline plus
Gaussian peaks along the columns. Every peak and pass sits on the centre row
and the ring is the only sublevel minimum. Craters are radial dips below the
centre row, each centred on the valley column between two peaks. Along a row
the field rises away from that column, so a crater adds one minimum and no
other critical point.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from src.errors import ConfigurationError
from src.errors import DegenerateDomainError
from src.errors import UnknownCaseError
from src.models.field import ScalarField
from src.modules.field_core import make_chain_field
from src.modules.field_core import make_grid_field

logger = logging.getLogger(__name__)

DEFAULT_RESOLUTION = (100, 50)
DEFAULT_SAMPLES = 3

MIN_COLUMNS = 16
MIN_ROWS = 3

# Critical values in domain order. The reeb/stable/unstable skeletons read
# x, c, z, a, y, b and x, a, z, c, y, b with a=6 b=5 c=4 x=1 y=2 z=3 and are
# meant for superlevel analysis.
SKELETONS: Dict[str, Tuple[float, ...]] = {
    "fig1-blue": (0.0, 2.0, 1.0, 4.0, 3.0),
    "fig1-red": (3.0, 4.0, 0.0, 2.0, 1.0),
    "reeb-1": (1.0, 4.0, 3.0, 6.0, 2.0, 5.0),
    "reeb-2": (1.0, 6.0, 3.0, 4.0, 2.0, 5.0),
    "stable-perturbed": (1.0, 4.0, 3.0, 6.0, 3.5, 5.0),
    "unstable-perturbed": (1.0, 6.0, 3.0, 4.0, 3.5, 5.0),
}
SKELETONS["stable"] = SKELETONS["reeb-1"]
SKELETONS["unstable"] = SKELETONS["reeb-2"]

# Position of the merge point y in the reeb-style skeletons.
MERGE_POINT_Y = 4


@dataclass(frozen=True)
class Bump:
    """A Gaussian peak along the columns."""

    center: float
    amplitude: float
    width: float = 0.06


@dataclass(frozen=True)
class Crater:
    """A radial dip in the valley between bumps ``left`` and ``right``.

    ``offset`` is the distance below the centre row as a fraction of the grid
    height; ``width`` is measured in the same unit as bump widths.
    """

    left: int
    right: int
    depth: float
    offset: float = 0.25
    width: float = 0.05


@dataclass(frozen=True)
class GridLayout:
    bumps: Tuple[Bump, ...]
    craters: Tuple[Crater, ...] = ()


GRID_BASELINE = 0.6
GRID_RING = 0.0

GRID_LAYOUTS: Dict[str, GridLayout] = {
    # The foothill saddle is the lowest one, so the foothill merges last.
    # Two peaks joined through a higher one: foothill, c, a, b.
    "three-peaks": GridLayout(
        (Bump(0.05, 0.35), Bump(0.30, 0.70), Bump(0.55, 1.00), Bump(0.80, 0.85))
    ),
    # A ridge of peaks: foothill, a, c, b.
    "three-peaks-ridge": GridLayout(
        (Bump(0.05, 0.35), Bump(0.30, 1.00), Bump(0.55, 0.70), Bump(0.80, 0.85))
    ),
    # Small peak on a plateau between two craters, the deeper one towards b.
    # The pass to a is higher than the pass to b.
    "peaks-craters-1": GridLayout(
        (Bump(0.20, 1.00), Bump(0.47, 0.45), Bump(0.80, 0.90)),
        (Crater(0, 1, 0.30), Crater(1, 2, 0.45)),
    ),
    # The same small peak moved onto the ridge leading up to b.
    "peaks-craters-2": GridLayout(
        (Bump(0.20, 1.00), Bump(0.62, 0.45), Bump(0.80, 0.90)),
        (Crater(0, 1, 0.30),),
    ),
}

OSCILLATION_PEAKS = ((0.2, 0.9), (0.5, 0.7), (0.8, 0.5))
OSCILLATION_AMPLITUDE = 0.25


def case_names() -> List[str]:
    return sorted(set(SKELETONS) | set(GRID_LAYOUTS) | {"oscillate"})


def parse_resolution(text: str) -> Tuple[int, int]:
    """Parse ``WxH`` into (width, height), i.e. (columns, rows)."""
    try:
        width, height = (int(part) for part in text.lower().split("x"))
    except ValueError:
        raise ConfigurationError(
            f"Resolution must look like WxH, got {text!r}"
        ) from None
    if width < 1 or height < 1:
        raise DegenerateDomainError(f"Resolution must be positive, got {text!r}")
    return width, height


def critical_values(name: str) -> Tuple[float, ...]:
    """Return the critical-value skeleton of a 1D case."""
    try:
        return SKELETONS[name]
    except KeyError:
        raise UnknownCaseError(f"No 1D skeleton for case {name!r}") from None


def chain_from_critical(
    values: Sequence[float], samples: int = DEFAULT_SAMPLES
) -> ScalarField:
    """Interpolate critical values linearly with ``samples`` points per segment.

    Critical point ``i`` lands on vertex ``i * (samples + 1)``. Consecutive
    values must differ so that each segment is strictly monotone.
    """
    if samples < 0:
        raise DegenerateDomainError(f"samples must be >= 0, got {samples}")
    for left, right in zip(values, values[1:]):
        if left == right:
            raise DegenerateDomainError(
                f"Consecutive critical values must differ, got {left!r} twice"
            )
    pieces = [
        np.linspace(left, right, samples + 2)[:-1]
        for left, right in zip(values, values[1:])
    ]
    pieces.append(np.asarray(values[-1:], dtype=float))
    return make_chain_field(np.concatenate(pieces))


def critical_vertex(position: int, samples: int = DEFAULT_SAMPLES) -> int:
    """Vertex id of the ``position``-th skeleton entry."""
    return position * (samples + 1)


def _column_profile(bumps: Sequence[Bump], x: np.ndarray) -> np.ndarray:
    g = np.full(x.shape, GRID_BASELINE)
    for bump in bumps:
        g += bump.amplitude * np.exp(-0.5 * ((x - bump.center) / bump.width) ** 2)
    return g


def _row_profile(rows: int) -> np.ndarray:
    r = np.arange(rows, dtype=float)
    centre = rows // 2
    return np.exp(-0.5 * ((r - centre) / (rows / 6.0)) ** 2)


def _valley_column(
    crater: Crater, bumps: Sequence[Bump], x: np.ndarray, g: np.ndarray
) -> int:
    lo = int(np.argmin(np.abs(x - bumps[crater.left].center)))
    hi = int(np.argmin(np.abs(x - bumps[crater.right].center)))
    return lo + int(np.argmin(g[lo : hi + 1]))


def _crater_dip(crater: Crater, column: float, x: np.ndarray, rows: int) -> np.ndarray:
    y = (np.arange(rows, dtype=float) - rows // 2) / max(rows - 1, 1)
    dx = ((x - column) / crater.width) ** 2
    dy = ((y - crater.offset) / crater.width) ** 2
    return crater.depth * np.exp(-0.5 * (dy[:, None] + dx[None, :]))


def _grid_from_layout(layout: GridLayout, resolution: Tuple[int, int]) -> ScalarField:
    cols, rows = resolution
    if cols < MIN_COLUMNS or rows < MIN_ROWS:
        raise DegenerateDomainError(
            f"Grid cases need at least {MIN_COLUMNS}x{MIN_ROWS}, got {cols}x{rows}"
        )
    x = np.linspace(0.0, 1.0, cols)
    g = _column_profile(layout.bumps, x)
    values = np.outer(_row_profile(rows), g)
    for crater in layout.craters:
        column = _valley_column(crater, layout.bumps, x, g)
        values -= _crater_dip(crater, x[column], x, rows)
    values[0, :] = values[-1, :] = GRID_RING
    values[:, 0] = values[:, -1] = GRID_RING
    return make_grid_field(values.reshape(-1), (rows, cols))


def oscillation_bumps(t: int, period: int) -> Tuple[Bump, ...]:
    """Peaks whose amplitudes follow phase-shifted sines of ``t`` modulo ``period``."""
    if period < 1:
        raise UnknownCaseError(f"Oscillation period must be >= 1, got {period}")
    phase = 2.0 * math.pi * (t % period) / period
    shift = 2.0 * math.pi / len(OSCILLATION_PEAKS)
    return tuple(
        Bump(center, base + OSCILLATION_AMPLITUDE * math.sin(phase + i * shift))
        for i, (center, base) in enumerate(OSCILLATION_PEAKS)
    )


def _parse_oscillate(name: str) -> Tuple[int, int]:
    parts = name.split(":")
    if len(parts) != 3:
        raise UnknownCaseError(f"Expected oscillate:<t>:<period>, got {name!r}")
    try:
        return int(parts[1]), int(parts[2])
    except ValueError:
        raise UnknownCaseError(f"Expected integer t and period in {name!r}") from None


def synth_case(
    name: str,
    resolution: Optional[Tuple[int, int]] = None,
    samples: int = DEFAULT_SAMPLES,
) -> ScalarField:
    """Generate a named synthetic field.

    Args:
        name: A name from :func:`case_names`; the oscillating grid is addressed
            as ``oscillate:<t>:<period>``.
        resolution: Grid extents as (width, height); ignored by 1D cases.
        samples: Interior samples per monotone segment of 1D cases.

    Raises:
        UnknownCaseError: if the name is not known.
    """
    resolution = resolution or DEFAULT_RESOLUTION
    if name in SKELETONS:
        return chain_from_critical(SKELETONS[name], samples)
    if name in GRID_LAYOUTS:
        return _grid_from_layout(GRID_LAYOUTS[name], resolution)
    if name.startswith("oscillate"):
        t, period = _parse_oscillate(name)
        return _grid_from_layout(GridLayout(oscillation_bumps(t, period)), resolution)
    raise UnknownCaseError(
        f"Unknown synthetic case {name!r}; expected one of {', '.join(case_names())}"
    )


def oscillate_series(
    steps: int, period: int, resolution: Optional[Tuple[int, int]] = None
) -> List[ScalarField]:
    """Generate ``oscillate:t:period`` for t = 0 .. steps - 1."""
    logger.debug(f"Generating oscillation series: {steps} steps, period {period}")
    return [synth_case(f"oscillate:{t}:{period}", resolution) for t in range(steps)]


def parse_series(text: str) -> Tuple[int, int]:
    """Parse ``oscillate:<steps>:<period>`` into (steps, period)."""
    steps, period = _parse_oscillate(text)
    if steps < 2:
        raise UnknownCaseError(f"A series needs at least 2 steps, got {steps}")
    return steps, period
