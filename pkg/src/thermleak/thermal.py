"""Closed-form steady-state thermal field of rectangular surface sources.

Each source contributes the smaller of two analytic solutions: the exact
center temperature of a uniformly dissipating rectangle, and a finite-line
far-field approximation oriented along the rectangle's longer side.  Die
boundaries (adiabatic sides, isothermal bottom sink) are handled with the
method of images: mirrored +P tiles laterally, -P copies mirrored below the
sink plane.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DomainError, ResourceError, SingularityError

IMAGE_ORDER_CAP = 4


@dataclass(frozen=True)
class HeatSource:
    """Rectangular heat source of ``w`` x ``l`` meters centered at (x, y).

    ``depth`` > 0 marks a buried image sink mirrored below the bottom of the
    die; such sources are evaluated with the point-source form at the 3-D
    distance.  Power may be negative (sinks).
    """

    x: float
    y: float
    w: float
    l: float
    p: float
    depth: float = 0.0

    def __post_init__(self):
        if self.w <= 0 or self.l <= 0:
            raise DomainError("heat source sides must be > 0")


@dataclass(frozen=True)
class ThermalScene:
    die_w: float
    die_h: float
    t_sub: float
    k_si: float
    t_sink: float
    image_order: int
    sources: tuple[HeatSource, ...] = ()

    def __post_init__(self):
        if self.k_si <= 0:
            raise DomainError("thermal conductivity must be > 0")
        if self.t_sub <= 0:
            raise DomainError("substrate thickness must be > 0")
        if self.image_order < 0:
            raise DomainError("image order must be >= 0")
        for s in self.sources:
            if not (
                0 <= s.x - s.w / 2
                and s.x + s.w / 2 <= self.die_w
                and 0 <= s.y - s.l / 2
                and s.y + s.l / 2 <= self.die_h
            ):
                raise DomainError(
                    f"source at ({s.x:g}, {s.y:g}) extends outside the die"
                )


@dataclass(frozen=True)
class ThermalGrid:
    nx: int
    ny: int
    dx: float
    dy: float
    values: np.ndarray  # shape (ny, nx), row i = y index i
    mode: str  # "rise" | "absolute"

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise DomainError("grid needs at least 2 samples per axis")
        if self.mode not in ("rise", "absolute"):
            raise DomainError(f"bad grid mode {self.mode!r}")
        if not np.all(np.isfinite(self.values)):
            raise DomainError("grid contains non-finite values")


def point_source_rise(p: float, r: float, k_si: float) -> float:
    """Temperature rise P / (2 pi k r) of an ideal surface point source."""
    if r <= 0:
        raise SingularityError("point-source rise diverges at r = 0")
    return p / (2.0 * math.pi * k_si * r)


def center_rise(src: HeatSource, k_si: float) -> float:
    """Exact rise at the center of a uniformly dissipating rectangle."""
    w, l = src.w, src.l
    d = math.hypot(w, l)
    term_w = w * math.log((l + d) / (d - l))
    term_l = l * math.log((w + d) / (d - w))
    return src.p / (2.0 * math.pi * k_si * w * l) * (term_w + term_l)


def _line_n(x_t: float, b: float) -> float:
    # sqrt(x^2 + b^2) + b, evaluated without cancellation for b < 0
    if b >= 0:
        return math.hypot(x_t, b) + b
    return x_t * x_t / (math.hypot(x_t, b) - b)


def line_rise(src: HeatSource, x: float, y: float, k_si: float) -> float:
    """Far-field rise of the source treated as a finite line of heat.

    The line runs along the source's longer side (extent ``W``).  With
    transverse/along coordinates (x', y') relative to the source center:

        T = P / (2 pi k W) * ln[ N(y') N(-y') / x'^2 ],
        N(u) = sqrt(x'^2 + (W/2 - u)^2) + (W/2 - u)

    an algebraically stable rewrite of the textbook log-ratio form.  (x, y)
    are relative to the source center; evaluation on the segment itself is a
    singularity.
    """
    if src.w >= src.l:
        w_long, x_t, y_a = src.w, y, x
    else:
        w_long, x_t, y_a = src.l, x, y
    half = w_long / 2.0
    if x_t == 0.0:
        a = abs(y_a)
        if a <= half:
            raise SingularityError("line-source rise diverges on the segment")
        log_arg = (a + half) / (a - half)
    else:
        log_arg = _line_n(x_t, half - y_a) * _line_n(x_t, half + y_a) / (x_t * x_t)
    return src.p / (2.0 * math.pi * k_si * w_long) * math.log(log_arg)


def min_rise(src: HeatSource, x: float, y: float, k_si: float) -> float:
    """Near/far combination: Min of center and line solutions.

    The line form diverges near the source, where the exact center value
    caps it; on-segment points return the center value outright.  For
    negative powers the cap applies to magnitudes.
    """
    t0 = center_rise(src, k_si)
    try:
        tl = line_rise(src, x, y, k_si)
    except SingularityError:
        return t0
    if src.p >= 0:
        return min(t0, tl)
    return max(t0, tl)


def expand_images(scene: ThermalScene) -> tuple[HeatSource, ...]:
    """Original sources plus their boundary-condition image sources.

    Lateral mirroring across the four die edges composed up to
    ``image_order`` reflections produces the (2k+1)^2 tile grid of +P
    copies (original included); every one of those gets a -P copy buried at
    depth 2*t_sub to hold the bottom sink isothermal.
    """
    k = scene.image_order
    if k > IMAGE_ORDER_CAP:
        raise ResourceError(
            f"image order {k} exceeds cap {IMAGE_ORDER_CAP}"
        )
    out: list[HeatSource] = []
    sinks: list[HeatSource] = []
    for s in scene.sources:
        for i in range(-k, k + 1):
            xi = i * scene.die_w + (s.x if i % 2 == 0 else scene.die_w - s.x)
            for j in range(-k, k + 1):
                yj = j * scene.die_h + (s.y if j % 2 == 0 else scene.die_h - s.y)
                img = HeatSource(xi, yj, s.w, s.l, s.p)
                out.append(img)
                sinks.append(replace(img, p=-s.p, depth=2.0 * scene.t_sub))
    return tuple(out) + tuple(sinks)


def superposed_rise(
    sources: tuple[HeatSource, ...], x: float, y: float, k_si: float
) -> float:
    """Sum of all source contributions at (x, y); no die-bounds check.

    Surface sources contribute their Min-combined rise, buried image sinks
    the point-source form at the 3-D distance.
    """
    total = 0.0
    for s in sources:
        if s.depth == 0.0:
            total += min_rise(s, x - s.x, y - s.y, k_si)
        else:
            r = math.sqrt((x - s.x) ** 2 + (y - s.y) ** 2 + s.depth**2)
            total += s.p / (2.0 * math.pi * k_si * r)
    return total


def temperature_at(
    scene: ThermalScene,
    x: float,
    y: float,
    absolute: bool = False,
    expanded: tuple[HeatSource, ...] | None = None,
) -> float:
    """Superposed temperature (rise, or absolute with the sink added) at an
    on-die point.  ``expanded`` lets callers reuse a precomputed image set."""
    if not (0 <= x <= scene.die_w and 0 <= y <= scene.die_h):
        raise DomainError(f"query point ({x:g}, {y:g}) is off the die")
    if expanded is None:
        expanded = expand_images(scene)
    rise = superposed_rise(expanded, x, y, scene.k_si)
    return rise + scene.t_sink if absolute else rise


def sample_grid(scene: ThermalScene, nx: int, ny: int, mode: str = "rise") -> ThermalGrid:
    """Evaluate the field on a uniform nx-by-ny grid spanning the die."""
    if nx < 2 or ny < 2:
        raise DomainError("grid needs at least 2 samples per axis")
    dx = scene.die_w / (nx - 1)
    dy = scene.die_h / (ny - 1)
    expanded = expand_images(scene)
    values = np.empty((ny, nx), dtype=float)
    for j in range(ny):
        for i in range(nx):
            values[j, i] = temperature_at(
                scene, i * dx, j * dy, absolute=(mode == "absolute"),
                expanded=expanded,
            )
    return ThermalGrid(nx=nx, ny=ny, dx=dx, dy=dy, values=values, mode=mode)


def thermal_resistance(src: HeatSource, k_si: float) -> float:
    """Self-heating resistance R_th = center rise per watt; P-independent."""
    return center_rise(replace(src, p=1.0), k_si)
