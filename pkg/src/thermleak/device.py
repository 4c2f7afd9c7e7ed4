"""Subthreshold MOS device model.

Holds the per-polarity process constants and evaluates the two closed-form
device equations everything else is built on: the threshold voltage with
body effect, DIBL and temperature sensitivity, and the subthreshold drain
current with its (T/T_ref)^2 prefactor and drain saturation factor.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

# Exact SI-2019 values.
BOLTZMANN = 1.380649e-23  # J/K
ELEMENTARY_CHARGE = 1.602176634e-19  # C


@dataclass(frozen=True)
class DeviceParams:
    """Process constants for one transistor polarity.

    ``i0`` is the drain current of a W = L device at T = ``t_ref`` with unit
    exponential factor, i.e. the W/L scaling is outside of ``i0``.  ``k_t``
    is the signed sensitivity of the threshold voltage to temperature (V/K,
    negative for the usual threshold roll-off).
    """

    i0: float
    n: float
    v_t0: float
    gamma: float
    sigma: float
    k_t: float
    l: float
    v_b: float = 0.0
    t_ref: float = 300.0
    polarity: str = "nmos"

    def __post_init__(self):
        if self.i0 <= 0:
            raise DomainError(f"i0 must be > 0, got {self.i0}")
        if self.n < 1:
            raise DomainError(f"ideality n must be >= 1, got {self.n}")
        if self.l <= 0:
            raise DomainError(f"channel length must be > 0, got {self.l}")
        if self.t_ref <= 0:
            raise DomainError(f"t_ref must be > 0, got {self.t_ref}")
        if self.sigma < 0:
            raise DomainError(f"sigma must be >= 0, got {self.sigma}")
        if self.gamma < 0:
            raise DomainError(f"gamma must be >= 0, got {self.gamma}")
        if self.polarity not in ("nmos", "pmos"):
            raise DomainError(f"polarity must be nmos or pmos, got {self.polarity!r}")


@dataclass(frozen=True)
class OperatingPoint:
    """Bias point of a single device: terminal voltages, temperature, rail."""

    v_gs: float
    v_ds: float
    v_sb: float
    t: float
    v_dd: float

    def __post_init__(self):
        if self.t <= 0:
            raise DomainError(f"temperature must be > 0 K, got {self.t}")
        if self.v_dd <= 0:
            raise DomainError(f"v_dd must be > 0, got {self.v_dd}")


def thermal_voltage(t: float) -> float:
    """k_B * T / q in volts; ~25.85 mV at 300 K."""
    if t <= 0:
        raise DomainError(f"temperature must be > 0 K, got {t}")
    return BOLTZMANN * t / ELEMENTARY_CHARGE


def threshold_voltage(p: DeviceParams, op: OperatingPoint) -> float:
    """Threshold voltage with body effect, temperature shift and DIBL.

    V_TH = V_T0 + gamma * V_SB + K_T * (T - T_ref) - sigma * (V_DS - V_DD);
    affine in each bias and in temperature.
    """
    return (
        p.v_t0
        + p.gamma * op.v_sb
        + p.k_t * (op.t - p.t_ref)
        - p.sigma * (op.v_ds - op.v_dd)
    )


def subthreshold_current(p: DeviceParams, op: OperatingPoint, w: float) -> float:
    """Subthreshold drain current of a single device of width ``w`` (meters).

    I = (W/L) * I0 * (T/T_ref)^2 * exp[(V_GS - V_TH)/(n V_T)]
        * (1 - exp[-V_DS / V_T])

    Non-negative whenever V_DS >= 0.
    """
    if w <= 0:
        raise DomainError(f"width must be > 0, got {w}")
    vt = thermal_voltage(op.t)
    v_th = threshold_voltage(p, op)
    return (
        (w / p.l)
        * p.i0
        * (op.t / p.t_ref) ** 2
        * math.exp((op.v_gs - v_th) / (p.n * vt))
        * (1.0 - math.exp(-op.v_ds / vt))
    )


# Calibration placeholders for a generic 0.12 um low-leakage process; not
# extracted from any foundry kit.  All regression values pinned in the test
# suite depend on these numbers.
DEFAULT_V_DD = 1.2


def default_nmos() -> DeviceParams:
    return DeviceParams(
        i0=50e-9,
        n=1.4,
        v_t0=0.30,
        gamma=0.20,
        sigma=0.08,
        k_t=-0.7e-3,
        l=0.12e-6,
        v_b=0.0,
        t_ref=300.0,
        polarity="nmos",
    )


def default_pmos() -> DeviceParams:
    # Same magnitudes as the nMOS set; pMOS biases are handled by the
    # source/drain/gate duality transform in the leakage module, so all
    # stored constants stay positive-magnitude.
    return DeviceParams(
        i0=50e-9,
        n=1.4,
        v_t0=0.30,
        gamma=0.20,
        sigma=0.08,
        k_t=-0.7e-3,
        l=0.12e-6,
        v_b=0.0,
        t_ref=300.0,
        polarity="pmos",
    )
