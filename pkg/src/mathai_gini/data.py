"""Sample input and output, and the built-in loss-ratio series."""

import csv
import io
import logging
import os
import tempfile
from pathlib import Path
from typing import Optional

from .exceptions import DataError, EmptySampleError, SampleParseError
from .schemas import Sample, SampleSource

logger = logging.getLogger(__name__)

BUILTIN_KEYWORD = "builtin"
BUILTIN_NAME = "ca-earthquake-1971-1994"

# Yearly loss ratios (losses over premiums, in percent) of earthquake
# insurance in California, 1971 to 1994, as tabulated by Jaffee and Russell
# (1997), "Catastrophe insurance, capital markets, and uninsurable risks".
CALIFORNIA_LOSS_RATIOS = (
    17.4, 0.0, 0.6, 3.4, 0.0, 0.0, 0.7, 1.5, 2.2, 9.2, 0.9, 0.0,
    2.9, 5.0, 1.3, 9.3, 22.8, 11.5, 129.8, 47.0, 17.2, 12.8, 3.2, 2272.7,
)


def builtin_dataset() -> Sample:
    return Sample(
        CALIFORNIA_LOSS_RATIOS, name=BUILTIN_NAME, source=SampleSource.BUILTIN.value
    )


def _parse_float(cell: str) -> Optional[float]:
    try:
        return float(cell)
    except ValueError:
        return None


def load_csv(path: Path, column: Optional[str] = None) -> Sample:
    """Read one numeric column of a comma separated file.

    A first row whose selected cell is not numeric is taken as a header.
    Without ``column`` the first column holding a number in the first data
    row is used. Blank lines are skipped; any other unparsable cell is an
    error naming its line.
    """
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as err:
        raise DataError(f"Could not open {path}: {err}") from err
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as err:
        line = raw.count(b"\n", 0, err.start) + 1
        raise SampleParseError(f"{path} is not valid UTF-8 text", line) from err
    values = []
    reader = csv.reader(io.StringIO(text, newline=""))
    header: Optional[list[str]] = None
    index: Optional[int] = None
    for row in reader:
        line = reader.line_num
        if not any(cell.strip() for cell in row):
            continue
        cells = [cell.strip() for cell in row]
        if index is None:
            if column is not None:
                if column in cells:
                    header = cells
                    index = cells.index(column)
                    continue
                raise DataError(f"Column {column!r} not found in {path}")
            numeric = [i for i, cell in enumerate(cells) if _parse_float(cell) is not None]
            if not numeric:
                if header is not None:
                    raise SampleParseError(f"no numeric cell in {row!r}", line)
                header = cells
                continue
            index = numeric[0]
        if index >= len(cells):
            raise SampleParseError(f"missing column {index + 1} in {path}", line)
        value = _parse_float(cells[index])
        if value is None:
            raise SampleParseError(f"cannot parse {cells[index]!r} as a number", line)
        values.append(value)
    if not values:
        raise EmptySampleError(f"No observations found in {path}")
    logger.debug(f"read {len(values)} values from {path} (header={header})")
    return Sample(tuple(values), name=path.stem, source=str(path))


def resolve_data(spec: str) -> Sample:
    """``builtin`` names the loss-ratio series, anything else a CSV path."""
    if spec == BUILTIN_KEYWORD:
        return builtin_dataset()
    return load_csv(Path(spec))


def atomic_write_text(path: Path, contents: str) -> None:
    """Write ``contents`` to a temporary sibling file, then rename it over ``path``."""
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    fd, tmp_name = tempfile.mkstemp(dir=directory, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(contents)
        os.replace(tmp_name, path)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise
    logger.debug(f"wrote {path}")


def write_csv(sample: Sample, path: Path, column: str = "value") -> None:
    """Write ``sample`` as a single column CSV with a header, atomically."""
    lines = [column, *(repr(v) for v in sample.values)]
    atomic_write_text(Path(path), "\n".join(lines) + "\n")
