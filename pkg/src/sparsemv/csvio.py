"""CSV emission and coefficient-vector loading.

Every emitted file starts with a '#' comment line recording the resolved
configuration, then a header row.  Floats are written with repr for exact
round-tripping, so identical configurations produce byte-identical files.
"""

from __future__ import annotations

import csv
import io
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .errors import InvalidInputError
from .meanvalue import CoefficientVector, IndexDomain


def format_cell(value) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, Fraction):
        return str(value)
    return str(value)


def render_csv(
    header: Sequence[str], rows: Sequence[Sequence], config: Mapping[str, object]
) -> str:
    buf = io.StringIO()
    items = " ".join(f"{key}={config[key]}" for key in config)
    buf.write(f"# config: {items}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_cell(v) for v in row])
    return buf.getvalue()


def write_csv(
    path,
    header: Sequence[str],
    rows: Sequence[Sequence],
    config: Mapping[str, object],
) -> None:
    Path(path).write_text(render_csv(header, rows, config), encoding="utf-8")


def load_coefficients_csv(path) -> CoefficientVector:
    """Read a coefficient vector: rows (index tuple dash-joined, real, imag).

    '#' comment lines are ignored anywhere; a non-numeric first data row is
    treated as a header.
    """
    points = []
    values = []
    seen_data = False
    with open(path, "r", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        for lineno, row in enumerate(reader, start=1):
            if not row or row[0].lstrip().startswith("#"):
                continue
            if not seen_data and not _looks_numeric(row[1:]):
                continue  # header row
            seen_data = True
            if len(row) != 3:
                raise InvalidInputError(
                    f"{path}:{lineno}: expected 3 columns, got {len(row)}"
                )
            try:
                point = tuple(int(part) for part in row[0].split("-"))
                re, im = float(row[1]), float(row[2])
            except ValueError as exc:
                raise InvalidInputError(f"{path}:{lineno}: {exc}") from exc
            points.append(point)
            values.append(complex(re, im))
    if not points:
        raise InvalidInputError(f"{path}: no coefficient rows")
    bound = max(max(pt) for pt in points) + 1
    domain = IndexDomain(points=tuple(points), scale_bound=bound)
    return CoefficientVector(domain, np.asarray(values, dtype=np.complex128))


def _looks_numeric(cells: Sequence[str]) -> bool:
    try:
        for cell in cells:
            float(cell)
        return True
    except ValueError:
        return False
