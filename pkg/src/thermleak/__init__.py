"""Analytic electro-thermal estimation of digital ICs.

Subthreshold leakage of CMOS gates via transistor-stack collapsing, die
thermal profiles via closed-form heat-source superposition with the method
of images, and a fixed-point loop coupling the two, plus a brute-force
oracle suite validating every analytic approximation.
"""

from .cosim import Block, CosimConfig, CosimReport, GateInstance, solve
from .device import (
    DeviceParams,
    OperatingPoint,
    default_nmos,
    default_pmos,
    subthreshold_current,
    thermal_voltage,
    threshold_voltage,
)
from .leakage import (
    Branch,
    CollapseResult,
    GateNetwork,
    Transistor,
    classify_branch,
    collapse_chain,
    gate_static_power,
    network_effective_width,
    pair_vds,
    transient_power,
)
from .thermal import (
    HeatSource,
    ThermalGrid,
    ThermalScene,
    center_rise,
    expand_images,
    line_rise,
    min_rise,
    point_source_rise,
    sample_grid,
    temperature_at,
    thermal_resistance,
)

__version__ = "0.1.0"

__all__ = [
    "Block",
    "Branch",
    "CollapseResult",
    "CosimConfig",
    "CosimReport",
    "DeviceParams",
    "GateInstance",
    "GateNetwork",
    "HeatSource",
    "OperatingPoint",
    "ThermalGrid",
    "ThermalScene",
    "Transistor",
    "center_rise",
    "classify_branch",
    "collapse_chain",
    "default_nmos",
    "default_pmos",
    "expand_images",
    "gate_static_power",
    "line_rise",
    "min_rise",
    "network_effective_width",
    "pair_vds",
    "point_source_rise",
    "sample_grid",
    "solve",
    "subthreshold_current",
    "temperature_at",
    "thermal_resistance",
    "thermal_voltage",
    "threshold_voltage",
    "transient_power",
]
