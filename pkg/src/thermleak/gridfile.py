"""CSV serialization of temperature grids.

Layout: `#`-prefixed header lines carrying nx, ny, dx, dy, mode and units,
followed by the samples row-major, one CSV row per y index.  Floats are
written with repr so a parse/serialize round trip is bit-exact.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import ProjectValidationError
from .thermal import ThermalGrid


def grid_to_csv(grid: ThermalGrid) -> str:
    lines = [
        f"# nx={grid.nx}",
        f"# ny={grid.ny}",
        f"# dx={grid.dx!r}",
        f"# dy={grid.dy!r}",
        f"# mode={grid.mode}",
        "# units=K",
    ]
    for j in range(grid.ny):
        lines.append(",".join(repr(float(v)) for v in grid.values[j]))
    return "\n".join(lines) + "\n"


def csv_to_grid(text: str) -> ThermalGrid:
    header: dict[str, str] = {}
    rows: list[list[float]] = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, _, value = body.partition("=")
                header[key.strip()] = value.strip()
            continue
        rows.append([float(tok) for tok in line.split(",")])
    try:
        nx = int(header["nx"])
        ny = int(header["ny"])
        dx = float(header["dx"])
        dy = float(header["dy"])
        mode = header["mode"]
    except KeyError as exc:
        raise ProjectValidationError(f"grid file missing header field {exc}") from exc
    if len(rows) != ny or any(len(r) != nx for r in rows):
        raise ProjectValidationError(
            f"grid file body does not match header: expected {ny} rows of {nx}"
        )
    return ThermalGrid(nx=nx, ny=ny, dx=dx, dy=dy, values=np.array(rows), mode=mode)


def write_grid(grid: ThermalGrid, path: str | Path) -> None:
    Path(path).write_text(grid_to_csv(grid))


def read_grid(path: str | Path) -> ThermalGrid:
    return csv_to_grid(Path(path).read_text())
