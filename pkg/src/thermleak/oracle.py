"""Brute-force numerical references for the analytic models.

Everything here deliberately avoids the closed forms under test: stack node
voltages come from bisection on the full device equations, rectangle
temperatures from adaptive 2-D quadrature of the point-source kernel, and
boundary fluxes from finite differences of the superposed field.  Bisection
is used throughout (all reductions are monotone 1-D problems) because it is
unconditionally convergent.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .device import DeviceParams, OperatingPoint, subthreshold_current, thermal_voltage
from .errors import BracketError, DomainError, QuadratureBudgetError
from .leakage import Branch
from .thermal import HeatSource, ThermalScene, expand_images, superposed_rise


def bisect(f, lo: float, hi: float, xtol: float, max_iter: int = 200) -> float:
    """Plain bisection for a sign-changing f on [lo, hi]."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise BracketError(
            f"no sign change on [{lo:g}, {hi:g}]: f(lo)={flo:g}, f(hi)={fhi:g}"
        )
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0 or (hi - lo) < xtol:
            return mid
        if flo * fm < 0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def exact_pair_root(
    w_top: float,
    w_bot: float,
    p: DeviceParams,
    v_dd: float,
    t: float,
    v_lower_node: float = 0.0,
) -> float:
    """Exact intermediate node voltage of an OFF transistor pair.

    Solves I_top(V) = I_bot(V) for V in (v_lower_node, v_dd) by bisection
    to 1 uV, using the two stacked-device current expressions verbatim: the
    top device without its drain saturation factor (V_DD >> V_T), the lower
    device with its full (1 - exp[-(V - V_lower)/V_T]) factor.
    """
    if w_top <= 0 or w_bot <= 0:
        raise DomainError("pair widths must be > 0")
    if v_dd <= v_lower_node:
        raise BracketError(
            f"empty bracket: v_dd={v_dd:g} <= v_lower_node={v_lower_node:g}"
        )
    vt = thermal_voltage(t)
    nvt = p.n * vt
    # common prefactor I0*(T/Tref)^2*exp[(-V_T0 + gamma*V_B)/(n*V_T)]/L
    # cancels in the balance and is omitted.
    def diff(v: float) -> float:
        i_top = w_top * math.exp(-(1.0 + p.sigma + p.gamma) * v / nvt)
        i_bot = (
            w_bot
            * math.exp(
                (-(1.0 + p.sigma + p.gamma) * v_lower_node + p.sigma * (v - v_dd))
                / nvt
            )
            * (1.0 - math.exp(-(v - v_lower_node) / vt))
        )
        return i_top - i_bot

    eps = 1e-15 * max(1.0, abs(v_dd))
    return bisect(diff, v_lower_node + eps, v_dd, xtol=1e-6)


@dataclass(frozen=True)
class StackSolution:
    i: float  # common chain current, A
    node_voltages: tuple[float, ...]  # V_1 .. V_{N-1}, ground side up


def exact_stack_current(
    branch: Branch, p: DeviceParams, v_dd: float, t: float
) -> StackSolution:
    """Exact OFF current of a series chain with all gates grounded.

    Solves the N-1 internal node voltages so the full subthreshold equation
    (drain factor included for every device) carries the same current
    through the whole chain: an outer bisection on log-current, with an
    inner bisection per node on the monotone current-vs-drain-voltage map.
    """
    devices = branch.transistors
    n = len(devices)
    if n > 8:
        raise DomainError(f"stack solver limited to 8 devices, got {n}")

    def dev_current(idx: int, v_s: float, v_d: float) -> float:
        op = OperatingPoint(
            v_gs=-v_s, v_ds=v_d - v_s, v_sb=v_s - p.v_b, t=t, v_dd=v_dd
        )
        return subthreshold_current(p, op, devices[idx].width)

    if n == 1:
        return StackSolution(i=dev_current(0, 0.0, v_dd), node_voltages=())

    # chain current cannot exceed the top device's current at zero source rise
    i_hi = dev_current(n - 1, 0.0, v_dd)
    v_cap = 10.0 * v_dd

    def propagate(i: float) -> tuple[float, ...] | None:
        """Node voltages carrying current i bottom-up, None if i is too big."""
        nodes: list[float] = []
        v_s = 0.0
        for idx in range(n - 1):
            g = lambda v_d: dev_current(idx, v_s, v_d) - i
            if g(v_cap) < 0:
                return None
            v_s = bisect(g, v_s, v_cap, xtol=1e-15, max_iter=120)
            nodes.append(v_s)
        return tuple(nodes)

    def residual(log_i: float) -> float:
        i = math.exp(log_i)
        nodes = propagate(i)
        if nodes is None:
            return -i  # chain cannot carry i: same sign as overshoot
        return dev_current(n - 1, nodes[-1], v_dd) - i

    log_root = bisect(
        residual, math.log(i_hi) - 60.0, math.log(i_hi), xtol=1e-13, max_iter=200
    )
    i = math.exp(log_root)
    nodes = propagate(i)
    if nodes is None:
        raise BracketError("stack solver failed to propagate the root current")
    return StackSolution(i=i, node_voltages=nodes)


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-4
    max_subdivisions: int = 200_000

    def __post_init__(self):
        if not (0.0 < self.rel_tol < 1.0):
            raise DomainError("quadrature tolerance must be in (0, 1)")


def _gauss5_2d(f, x0, x1, y0, y1) -> float:
    # 5-point Gauss-Legendre tensor rule on [x0,x1] x [y0,y1]
    nodes = (
        (-0.9061798459386640, 0.2369268850561891),
        (-0.5384693101056831, 0.4786286704993665),
        (0.0, 0.5688888888888889),
        (0.5384693101056831, 0.4786286704993665),
        (0.9061798459386640, 0.2369268850561891),
    )
    hx, hy = 0.5 * (x1 - x0), 0.5 * (y1 - y0)
    cx, cy = 0.5 * (x1 + x0), 0.5 * (y1 + y0)
    total = 0.0
    for xi, wi in nodes:
        for yj, wj in nodes:
            total += wi * wj * f(cx + hx * xi, cy + hy * yj)
    return total * hx * hy


def _cell(f, x0, x1, y0, y1) -> tuple[float, float, tuple]:
    """Refined estimate, error estimate and bounds of one panel."""
    whole = _gauss5_2d(f, x0, x1, y0, y1)
    xm, ym = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
    refined = math.fsum(
        _gauss5_2d(f, *q)
        for q in (
            (x0, xm, y0, ym),
            (xm, x1, y0, ym),
            (x0, xm, ym, y1),
            (xm, x1, ym, y1),
        )
    )
    return refined, abs(refined - whole), (x0, x1, y0, y1)


def quadrature_rise(
    src: HeatSource,
    x: float,
    y: float,
    k_si: float,
    spec: QuadratureSpec = QuadratureSpec(),
) -> float:
    """Rise at (x, y) relative to the source center by direct 2-D quadrature
    of the 1/(2 pi k r) kernel over the rectangle.

    When the query point projects inside the rectangle, the domain is
    pre-split there so the integrable 1/r singularity sits at panel corners
    the Gauss points never touch.
    """
    w, l = src.w, src.l
    density = src.p / (w * l)

    def kernel(u: float, v: float) -> float:
        return density / (2.0 * math.pi * k_si * math.hypot(x - u, y - v))

    x_cuts = [-w / 2.0, w / 2.0]
    y_cuts = [-l / 2.0, l / 2.0]
    if -w / 2.0 < x < w / 2.0:
        x_cuts.insert(1, x)
    if -l / 2.0 < y < l / 2.0:
        y_cuts.insert(1, y)

    panels = [
        (x_cuts[i], x_cuts[i + 1], y_cuts[j], y_cuts[j + 1])
        for i in range(len(x_cuts) - 1)
        for j in range(len(y_cuts) - 1)
    ]
    # global error-driven refinement: always split the worst cell
    heap: list[tuple[float, int, float, tuple]] = []
    tie = 0  # heap tiebreaker, keeps tuples comparable
    for pnl in panels:
        value, err, bounds = _cell(kernel, *pnl)
        heapq.heappush(heap, (-err, tie, value, bounds))
        tie += 1
    cells = len(panels)
    while True:
        estimate = math.fsum(item[2] for item in heap)
        total_err = -math.fsum(item[0] for item in heap)
        if total_err <= spec.rel_tol * abs(estimate):
            return estimate
        if cells > spec.max_subdivisions:
            raise QuadratureBudgetError(estimate, total_err)
        # split a batch of the worst cells between convergence checks
        for _ in range(min(16, len(heap))):
            _, _, _, (bx0, bx1, by0, by1) = heapq.heappop(heap)
            xm, ym = 0.5 * (bx0 + bx1), 0.5 * (by0 + by1)
            for q in (
                (bx0, xm, by0, ym),
                (xm, bx1, by0, ym),
                (bx0, xm, ym, by1),
                (xm, bx1, ym, by1),
            ):
                value, err, bounds = _cell(kernel, *q)
                heapq.heappush(heap, (-err, tie, value, bounds))
                tie += 1
                cells += 1


def boundary_flux_probe(
    scene: ThermalScene,
    edge: str | None = None,
    n_points: int = 21,
    normalized: bool = False,
) -> float:
    """Max normal temperature derivative sampled along die edge midlines.

    Central finite differences of the superposed field straddle each edge
    (images make the field well defined beyond the die).  ``edge`` restricts
    the probe to one of left/right/bottom/top; default probes all four.
    With ``normalized=True`` the result is divided by the peak gradient
    magnitude on an interior sample grid.
    """
    edges = ("left", "right", "bottom", "top") if edge is None else (edge,)
    for e in edges:
        if e not in ("left", "right", "bottom", "top"):
            raise DomainError(f"unknown edge {e!r}")
    expanded = expand_images(scene)
    k = scene.k_si

    def field(px: float, py: float) -> float:
        return superposed_rise(expanded, px, py, k)

    h = 1e-4 * min(scene.die_w, scene.die_h)
    if h <= 0 or scene.die_w + h == scene.die_w:
        h = 1e-9  # step underflow guard

    max_flux = 0.0
    for e in edges:
        for idx in range(n_points):
            frac = (idx + 0.5) / n_points
            if e in ("left", "right"):
                px = 0.0 if e == "left" else scene.die_w
                py = frac * scene.die_h
                d = (field(px + h, py) - field(px - h, py)) / (2.0 * h)
            else:
                py = 0.0 if e == "bottom" else scene.die_h
                px = frac * scene.die_w
                d = (field(px, py + h) - field(px, py - h)) / (2.0 * h)
            max_flux = max(max_flux, abs(d))

    if not normalized:
        return max_flux

    peak = 0.0
    m = 15
    for i in range(1, m):
        for j in range(1, m):
            px, py = i * scene.die_w / m, j * scene.die_h / m
            gx = (field(px + h, py) - field(px - h, py)) / (2.0 * h)
            gy = (field(px, py + h) - field(px, py - h)) / (2.0 * h)
            peak = max(peak, math.hypot(gx, gy))
    if peak == 0.0:
        return 0.0
    return max_flux / peak
