"""Readers and writers for 1D text fields and legacy ASCII VTK structured points."""

import io
import logging
import math
from typing import Any
from typing import Dict
from typing import Iterable
from typing import List
from typing import Optional
from typing import TextIO
from typing import Union

from src.errors import FormatError
from src.errors import ParseError
from src.models.field import DomainKind
from src.models.field import ScalarField
from src.modules.field_core import make_chain_field
from src.modules.field_core import make_grid_field

logger = logging.getLogger(__name__)

TextSource = Union[str, TextIO]

VTK_HEADER = "# vtk DataFile Version 3.0"


def _lines(text: TextSource) -> List[str]:
    if isinstance(text, str):
        return text.splitlines()
    return text.read().splitlines()


def _parse_number(token: str, line: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"not a number: {token!r}", line=line) from None
    if not math.isfinite(value):
        raise ParseError(f"non-finite value: {token!r}", line=line)
    return value


def load_field_1d(text: TextSource) -> ScalarField:
    """Parse a one- or two-column text file into a chain field.

    Blank lines and ``#`` comments are ignored. With two columns the first one is
    an abscissa that must increase strictly; the last column holds the values.

    Raises:
        ParseError: on malformed numbers, mixed column counts or a
            non-increasing abscissa.
        DegenerateDomainError: if fewer than two samples remain.
    """
    values: List[float] = []
    columns: Optional[int] = None
    previous_x: Optional[float] = None

    for number, raw in enumerate(_lines(text), start=1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        tokens = content.split()
        if len(tokens) not in (1, 2):
            raise ParseError(f"expected 1 or 2 columns, got {len(tokens)}", line=number)
        if columns is None:
            columns = len(tokens)
        elif columns != len(tokens):
            raise ParseError(
                f"expected {columns} columns like the first sample, got {len(tokens)}",
                line=number,
            )

        numbers = [_parse_number(token, number) for token in tokens]
        if columns == 2:
            if previous_x is not None and numbers[0] <= previous_x:
                raise ParseError(
                    f"abscissa {numbers[0]!r} does not increase past {previous_x!r}",
                    line=number,
                )
            previous_x = numbers[0]
        values.append(numbers[-1])

    logger.debug(f"Parsed {len(values)} samples from 1D input")
    return make_chain_field(values)


def write_field_1d(field: ScalarField) -> str:
    """Serialize a chain field as two columns (index, value)."""
    if field.domain_kind is not DomainKind.CHAIN_1D:
        raise FormatError("Only chain fields can be written as 1D text")
    lines = [f"{i}\t{value!r}" for i, value in enumerate(field.values.tolist())]
    return "\n".join(lines) + "\n"


class _Tokens:
    """Whitespace tokens of a VTK body, remembering the line each came from."""

    def __init__(self, lines: Iterable[str], first_line: int):
        self._items = [
            (token, number)
            for number, line in enumerate(lines, start=first_line)
            for token in line.split()
        ]
        self._pos = 0

    def peek(self) -> Optional[str]:
        if self._pos < len(self._items):
            return self._items[self._pos][0]
        return None

    def take(self, what: str) -> str:
        if self._pos >= len(self._items):
            raise FormatError(f"unexpected end of file while reading {what}")
        token, _ = self._items[self._pos]
        self._pos += 1
        return token

    def take_int(self, what: str) -> int:
        token = self.take(what)
        try:
            return int(token)
        except ValueError:
            raise FormatError(f"{what} must be an integer, got {token!r}") from None

    def take_number(self) -> float:
        token, line = self._items[self._pos]
        self._pos += 1
        return _parse_number(token, line)


def _is_number(token: Optional[str]) -> bool:
    if token is None:
        return False
    try:
        float(token)
    except ValueError:
        return False
    return True


def _read_scalars(tokens: _Tokens) -> List[float]:
    tokens.take("SCALARS name")
    tokens.take("SCALARS type")
    if _is_number(tokens.peek()):
        if tokens.take("component count") != "1":
            raise FormatError("only single-component scalars are supported")
    if tokens.take("LOOKUP_TABLE").upper() != "LOOKUP_TABLE":
        raise FormatError("SCALARS must be followed by LOOKUP_TABLE")
    tokens.take("lookup table name")
    values = []
    while _is_number(tokens.peek()):
        values.append(tokens.take_number())
    return values


def _read_sections(tokens: _Tokens) -> Dict[str, Any]:
    sections: Dict[str, Any] = {}
    while tokens.peek() is not None:
        keyword = tokens.take("keyword").upper()
        if keyword == "DATASET":
            dataset = tokens.take("dataset type").upper()
            if dataset != "STRUCTURED_POINTS":
                raise FormatError(f"unsupported dataset type {dataset}")
            sections[keyword] = dataset
        elif keyword == "DIMENSIONS":
            sections[keyword] = tuple(tokens.take_int(keyword) for _ in range(3))
        elif keyword in ("ORIGIN", "SPACING", "ASPECT_RATIO"):
            sections[keyword] = tuple(tokens.take(keyword) for _ in range(3))
        elif keyword == "POINT_DATA":
            sections[keyword] = tokens.take_int(keyword)
        elif keyword == "SCALARS":
            if keyword in sections:
                raise FormatError("more than one SCALARS array")
            sections[keyword] = _read_scalars(tokens)
        else:
            raise FormatError(f"unsupported section {keyword}")
    return sections


def load_grid_vtk(text: TextSource, connectivity: int = 4) -> ScalarField:
    """Parse a legacy ASCII VTK ``STRUCTURED_POINTS`` dataset with one scalar array.

    Point ids are row-major with x varying fastest, so vertex ``row * nx + col``
    sits at column ``col`` of row ``row``.

    Raises:
        FormatError: on a missing header keyword, binary encoding, a third
            extent other than 1, or a point count that does not match the extents.
    """
    lines = _lines(text)
    if len(lines) < 3 or not lines[0].lower().startswith("# vtk datafile"):
        raise FormatError("missing '# vtk DataFile' header")
    encoding = lines[2].strip().upper()
    if encoding == "BINARY":
        raise FormatError("binary VTK files are not supported")
    if encoding != "ASCII":
        raise FormatError(f"unknown encoding {lines[2].strip()!r}")

    sections = _read_sections(_Tokens(lines[3:], first_line=4))
    missing = [
        name
        for name in ("DATASET", "DIMENSIONS", "POINT_DATA", "SCALARS")
        if name not in sections
    ]
    if missing:
        raise FormatError(f"missing header keywords: {', '.join(missing)}")

    nx, ny, nz = sections["DIMENSIONS"]
    point_count = sections["POINT_DATA"]
    values = sections["SCALARS"]
    if nz != 1:
        raise FormatError(f"third extent must be 1, got {nz}")
    if nx * ny != point_count or len(values) != point_count:
        raise FormatError(
            f"extent {nx}x{ny} does not match POINT_DATA {point_count} with"
            f" {len(values)} values"
        )

    logger.debug(f"Parsed {nx}x{ny} structured points")
    return make_grid_field(values, (ny, nx), connectivity)


def write_grid_vtk(field: ScalarField, name: str = "scalars") -> str:
    """Serialize a grid field as legacy ASCII VTK structured points."""
    if field.domain_kind is not DomainKind.GRID_2D:
        raise FormatError("Only grid fields can be written as VTK")
    rows, cols = field.dims
    out = io.StringIO()
    out.write(f"{VTK_HEADER}\n")
    out.write(f"{name}\n")
    out.write("ASCII\n")
    out.write("DATASET STRUCTURED_POINTS\n")
    out.write(f"DIMENSIONS {cols} {rows} 1\n")
    out.write("ORIGIN 0 0 0\n")
    out.write("SPACING 1 1 1\n")
    out.write(f"POINT_DATA {len(field)}\n")
    out.write(f"SCALARS {name} double 1\n")
    out.write("LOOKUP_TABLE default\n")
    for r in range(rows):
        row = field.values[r * cols : (r + 1) * cols].tolist()
        out.write(" ".join(repr(v) for v in row) + "\n")
    return out.getvalue()


def load_field(path: str, connectivity: int = 4) -> ScalarField:
    """Read a field from disk: ``.vtk`` files as grids, anything else as 1D text.

    Raises:
        ParseError: if the file is not UTF-8 text or cannot be parsed.
        FormatError: if a VTK file violates the supported layout.
        OSError: if the file cannot be opened.
    """
    try:
        with open(path, encoding="utf-8") as f:
            if path.lower().endswith(".vtk"):
                return load_grid_vtk(f, connectivity)
            return load_field_1d(f)
    except UnicodeDecodeError as e:
        raise ParseError(f"{path} is not UTF-8 text: {e.reason}") from e
