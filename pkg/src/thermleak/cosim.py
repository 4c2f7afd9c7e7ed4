"""Electro-thermal fixed-point loop.

Leakage grows exponentially with temperature and leakage power heats the
die, so block temperatures and static powers are iterated to a joint fixed
point: evaluate leakage at the current temperatures, superpose the thermal
field from dynamic + static power, read back the block-center temperatures,
and relax until the largest update drops below tolerance (or the loop runs
away).
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .device import DeviceParams
from .errors import DomainError
from .leakage import GateNetwork, gate_static_power
from .thermal import HeatSource, ThermalScene, expand_images, temperature_at


@dataclass(frozen=True)
class GateInstance:
    gate: GateNetwork
    inputs: tuple[int, ...]
    multiplicity: int = 1

    def __post_init__(self):
        if self.multiplicity < 1:
            raise DomainError("gate multiplicity must be >= 1")


@dataclass(frozen=True)
class Block:
    """Rectangular floorplan block: a heat source plus its leaking gates."""

    id: str
    x: float
    y: float
    w: float
    l: float
    dynamic_power: float
    gate_instances: tuple[GateInstance, ...] = ()

    def footprint(self, power: float) -> HeatSource:
        return HeatSource(self.x, self.y, self.w, self.l, power)


@dataclass(frozen=True)
class CosimConfig:
    tol: float = 0.01  # K
    max_iter: int = 50
    damping: float = 1.0
    runaway_limit: float = 500.0  # K rise above the sink

    def __post_init__(self):
        if self.tol <= 0:
            raise DomainError("tolerance must be > 0")
        if not (0.0 < self.damping <= 1.0):
            raise DomainError("damping must be in (0, 1]")
        if self.max_iter < 0:
            raise DomainError("max_iter must be >= 0")


@dataclass(frozen=True)
class IterationRecord:
    index: int
    block_temps: dict[str, float]
    static_power: dict[str, float]
    total_power: float
    delta_t_max: float


@dataclass(frozen=True)
class CosimReport:
    records: tuple[IterationRecord, ...]
    status: str  # "converged" | "max_iter_reached" | "thermal_runaway"

    @property
    def final_temps(self) -> dict[str, float]:
        return self.records[-1].block_temps if self.records else {}

    @property
    def iterations(self) -> int:
        return len(self.records)


def _static_power(
    block: Block,
    t: float,
    n_params: DeviceParams,
    p_params: DeviceParams,
    v_dd: float,
) -> float:
    return sum(
        gate_static_power(gi.gate, gi.inputs, n_params, p_params, v_dd, t).p_static
        * gi.multiplicity
        for gi in block.gate_instances
    )


def solve(
    scene_template: ThermalScene,
    blocks: tuple[Block, ...],
    n_params: DeviceParams,
    p_params: DeviceParams,
    v_dd: float,
    config: CosimConfig = CosimConfig(),
) -> CosimReport:
    """Iterate leakage and thermal field to a self-consistent fixed point.

    Cold start at the sink temperature.  When an iteration's power vector is
    bitwise identical to the previous one the field cannot change, so the
    loop is already at its fixed point and stops without another field
    evaluation (temperature-independent scenes converge in one iteration).
    """
    if not blocks:
        raise DomainError("no blocks to simulate")
    temps = {b.id: scene_template.t_sink for b in blocks}
    prev_powers: dict[str, float] | None = None
    records: list[IterationRecord] = []
    status = "max_iter_reached"

    for it in range(1, config.max_iter + 1):
        static = {
            b.id: _static_power(b, temps[b.id], n_params, p_params, v_dd)
            for b in blocks
        }
        powers = {b.id: b.dynamic_power + static[b.id] for b in blocks}
        if powers == prev_powers:
            status = "converged"
            if records:
                records[-1] = replace(records[-1], delta_t_max=0.0)
            break
        prev_powers = powers

        scene = replace(
            scene_template,
            sources=tuple(b.footprint(powers[b.id]) for b in blocks),
        )
        expanded = expand_images(scene)
        t_new = {
            b.id: temperature_at(scene, b.x, b.y, absolute=True, expanded=expanded)
            for b in blocks
        }
        updated = {
            bid: temps[bid] + config.damping * (t_new[bid] - temps[bid])
            for bid in temps
        }
        delta = max(abs(updated[bid] - temps[bid]) for bid in temps)
        temps = updated
        records.append(
            IterationRecord(
                index=it,
                block_temps=dict(temps),
                static_power=static,
                total_power=sum(powers.values()),
                delta_t_max=delta,
            )
        )
        if any(temps[bid] - scene_template.t_sink > config.runaway_limit for bid in temps):
            status = "thermal_runaway"
            break
        if delta <= config.tol:
            status = "converged"
            break

    return CosimReport(records=tuple(records), status=status)
