"""Model-versus-oracle comparison sweeps.

Each sweep pits one analytic approximation against its brute-force
reference and reports per-case relative errors with a pass/fail verdict at
the tolerance the model is accepted at.  These sweeps back both the
`verify` CLI subcommand and the acceptance test suite.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .device import DeviceParams, thermal_voltage
from .leakage import Branch, Transistor, classify_branch, collapse_chain, off_current, pair_vds
from .oracle import QuadratureSpec, boundary_flux_probe, exact_pair_root, exact_stack_current, quadrature_rise
from .thermal import HeatSource, ThermalScene, min_rise

PAIR_VDS_TOL = 0.20
PAIR_ASYMPTOTE_TOL = 0.01
STACK_CURRENT_TOL = 0.25
CENTER_QUAD_TOL = 0.01
PROFILE_NEAR_TOL = 0.01
PROFILE_MID_TOL = 0.30
PROFILE_FAR_TOL = 0.01
BOUNDARY_FLUX_TOL = 0.05


@dataclass(frozen=True)
class VerifyRow:
    label: str
    model: float
    reference: float
    rel_err: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.rel_err <= self.tolerance


@dataclass(frozen=True)
class VerifyCase:
    name: str
    rows: tuple[VerifyRow, ...]
    extra_checks: tuple[tuple[str, bool], ...] = ()

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows) and all(ok for _, ok in self.extra_checks)

    @property
    def max_rel_err(self) -> float:
        return max((r.rel_err for r in self.rows), default=0.0)


def _rel(model: float, ref: float) -> float:
    if ref == 0.0:
        return 0.0 if model == 0.0 else math.inf
    return abs(model - ref) / abs(ref)


def pair_vds_sweep(p: DeviceParams, v_dd: float, t: float) -> VerifyCase:
    """Empirical pair-drop formula against the exact bisection root, over a
    width-ratio lattice and with/without DIBL, plus both asymptotic limits."""
    rows: list[VerifyRow] = []
    for sigma in (0.0, p.sigma):
        ps = replace(p, sigma=sigma)
        for ratio in (1 / 16, 1 / 4, 1.0, 4.0, 16.0):
            w_bot = 1e-6
            w_top = ratio * w_bot
            model = pair_vds(w_top, w_bot, ps, v_dd, t)
            ref = exact_pair_root(w_top, w_bot, ps, v_dd, t, v_lower_node=0.0)
            rows.append(
                VerifyRow(
                    label=f"ratio={ratio:g} sigma={sigma:g}",
                    model=model,
                    reference=ref,
                    rel_err=_rel(model, ref),
                    tolerance=PAIR_VDS_TOL,
                )
            )
    # asymptotic limits of the interpolation formula itself
    vt = thermal_voltage(t)
    alpha = p.n / (1.0 + p.gamma + 2.0 * p.sigma)
    for f_target in (-12.0, -10.0, 10.0, 12.0):
        ratio = math.exp(f_target - p.sigma * v_dd / (p.n * vt))
        model = pair_vds(ratio * 1e-6, 1e-6, p, v_dd, t)
        ref = alpha * vt * f_target if f_target > 0 else vt * math.exp(f_target)
        rows.append(
            VerifyRow(
                label=f"asymptote f={f_target:g}",
                model=model,
                reference=ref,
                rel_err=_rel(model, ref),
                tolerance=PAIR_ASYMPTOTE_TOL,
            )
        )
    return VerifyCase(name="pair_vds vs exact root", rows=tuple(rows))


def _nand_pulldown(n: int, width: float) -> Branch:
    return Branch(
        tuple(
            Transistor(id=f"T{i+1}", width=width, polarity="nmos", input_index=i)
            for i in range(n)
        )
    )


def stack_current_sweep(
    p: DeviceParams, v_dd: float, t: float, width: float = 0.5e-6
) -> VerifyCase:
    """Collapsed-chain OFF current against the exact stack solver for
    NAND-style pull-downs of 1..4 equal-width devices, all input vectors."""
    rows: list[VerifyRow] = []
    currents_by_off_count: dict[int, float] = {}
    for n in range(1, 5):
        branch = _nand_pulldown(n, width)
        for vec in range(2**n):
            inputs = tuple((vec >> i) & 1 for i in range(n))
            off = classify_branch(branch, inputs)
            if not off:
                continue  # ON branch: pinned, no OFF current
            chain = Branch(off)
            model = off_current(collapse_chain(chain, p, v_dd, t).w_eff, p, t)
            ref = exact_stack_current(chain, p, v_dd, t).i
            currents_by_off_count[len(off)] = model
            rows.append(
                VerifyRow(
                    label=f"N={n} inputs={''.join(map(str, inputs))} off={len(off)}",
                    model=model,
                    reference=ref,
                    rel_err=_rel(model, ref),
                    tolerance=STACK_CURRENT_TOL,
                )
            )
    ordering_ok = all(
        currents_by_off_count[k + 1] < currents_by_off_count[k]
        for k in range(1, max(currents_by_off_count))
    )
    return VerifyCase(
        name="stack currents vs exact solver",
        rows=tuple(rows),
        extra_checks=(("stack-effect ordering", ordering_ok),),
    )


def profile_scan_sweep(
    k_si: float = 148.0,
    spec: QuadratureSpec = QuadratureSpec(),
) -> VerifyCase:
    """Min-combined analytic profile against quadrature along a transverse
    scan through a 1 um x 0.1 um source dissipating 10 mW."""
    src = HeatSource(x=0.0, y=0.0, w=1e-6, l=0.1e-6, p=10e-3)
    rows: list[VerifyRow] = []
    scan_um = (0.0, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 8.0, 10.0, 15.0, 20.0)
    for d_um in scan_um:
        y = d_um * 1e-6
        model = min_rise(src, 0.0, y, k_si)
        ref = quadrature_rise(src, 0.0, y, k_si, spec)
        if d_um == 0.0:
            tol = PROFILE_NEAR_TOL
        elif y >= 10.0 * src.w:
            tol = PROFILE_FAR_TOL
        else:
            tol = PROFILE_MID_TOL
        rows.append(
            VerifyRow(
                label=f"scan y={d_um:g} um",
                model=model,
                reference=ref,
                rel_err=_rel(model, ref),
                tolerance=tol,
            )
        )
    return VerifyCase(name="thermal profile vs quadrature", rows=tuple(rows))


def three_block_scene(
    k_si: float = 148.0, t_sink: float = 300.0, image_order: int = 2
) -> ThermalScene:
    """1 mm x 1 mm die with three dissipating logic blocks."""
    return ThermalScene(
        die_w=1e-3,
        die_h=1e-3,
        t_sub=0.5e-3,
        k_si=k_si,
        t_sink=t_sink,
        image_order=image_order,
        sources=(
            HeatSource(x=250e-6, y=700e-6, w=300e-6, l=300e-6, p=0.4),
            HeatSource(x=650e-6, y=250e-6, w=400e-6, l=200e-6, p=0.6),
            HeatSource(x=750e-6, y=700e-6, w=200e-6, l=300e-6, p=0.3),
        ),
    )


def boundary_flux_sweep(
    k_si: float = 148.0, t_sink: float = 300.0
) -> VerifyCase:
    """Normalized edge-midline flux of the three-block scene at image orders
    0 and 2; order 2 must fall under tolerance and below order 0."""
    base = three_block_scene(k_si=k_si, t_sink=t_sink, image_order=0)
    flux0 = boundary_flux_probe(base, normalized=True)
    flux2 = boundary_flux_probe(
        replace(base, image_order=2), normalized=True
    )
    rows = (
        VerifyRow(
            label="normalized edge flux, image_order=2",
            model=flux2,
            reference=0.0,
            rel_err=flux2,
            tolerance=BOUNDARY_FLUX_TOL,
        ),
    )
    return VerifyCase(
        name="boundary flux vs image order",
        rows=rows,
        extra_checks=(("order 2 flux < order 0 flux", flux2 < flux0),),
    )


def run_all(p: DeviceParams, v_dd: float, t: float, k_si: float) -> tuple[VerifyCase, ...]:
    return (
        pair_vds_sweep(p, v_dd, t),
        stack_current_sweep(p, v_dd, t),
        profile_scan_sweep(k_si=k_si),
        boundary_flux_sweep(k_si=k_si),
    )
