"""Project file schema and conversion to core model objects.

A project is a single JSON document with five sections: technology (device
constants per polarity plus supply and silicon conductivity), die geometry,
a named gate library, the floorplan blocks, and co-simulation settings.
Geometry is given in micrometers and power in milliwatts; everything is
converted to SI on the way in.
"""
from __future__ import annotations

import json
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from . import cosim, leakage, thermal
from .device import DeviceParams
from .errors import ProjectValidationError

UM = 1e-6
MW = 1e-3


class DeviceSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    i0: float = Field(gt=0, description="A, W=L current prefactor at t_ref")
    n: float = Field(ge=1)
    v_t0: float
    gamma: float = Field(ge=0)
    sigma: float = Field(ge=0)
    k_t: float  # V/K, signed
    l: float = Field(gt=0, description="channel length, um")
    v_b: float = 0.0
    t_ref: float = Field(default=300.0, gt=0)


class TechnologySection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    v_dd: float = Field(gt=0)
    k_si: float = Field(default=148.0, gt=0, description="W/(m K)")
    nmos: DeviceSection
    pmos: DeviceSection


class DieSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    width: float = Field(gt=0, description="um")
    height: float = Field(gt=0, description="um")
    thickness: float = Field(gt=0, description="um")
    t_sink: float = Field(default=300.0, gt=0, description="K")
    image_order: int = Field(default=2, ge=0, le=thermal.IMAGE_ORDER_CAP)


class TransistorSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    width: float = Field(gt=0, description="um")
    input: int = Field(ge=0)


class GateSpec(BaseModel):
    """Branches ordered rail-to-output; polarity implied by the side."""

    model_config = ConfigDict(extra="forbid")

    num_inputs: int = Field(ge=1)
    pull_up: list[list[TransistorSpec]] = Field(min_length=1)
    pull_down: list[list[TransistorSpec]] = Field(min_length=1)


class GateInstanceSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    gate: str
    inputs: str = Field(pattern="^[01]+$")
    multiplicity: int = Field(default=1, ge=1)


class BlockSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: str
    x: float  # center, um
    y: float
    w: float = Field(gt=0)
    l: float = Field(gt=0)
    dynamic_power: float = Field(ge=0, description="mW")
    gates: list[GateInstanceSpec] = Field(default_factory=list)


class CosimSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    tol: float = Field(default=0.01, gt=0, description="K")
    max_iter: int = Field(default=50, ge=0)
    damping: float = Field(default=1.0, gt=0, le=1)
    runaway_limit: float = Field(default=500.0, gt=0, description="K")


class Project(BaseModel):
    model_config = ConfigDict(extra="forbid")

    technology: TechnologySection
    die: DieSection
    gates: dict[str, GateSpec] = Field(default_factory=dict)
    blocks: list[BlockSpec] = Field(default_factory=list)
    cosim: CosimSection = CosimSection()

    def validate_cross_references(self) -> None:
        for blk in self.blocks:
            if not (
                 0 <= blk.x - blk.w / 2
                 and blk.x + blk.w / 2 <= self.die.width
                 and 0 <= blk.y - blk.l / 2
                 and blk.y + blk.l / 2 <= self.die.height
            ):
                raise ProjectValidationError(
                    f"block {blk.id!r} extends outside the die"
                )
            for gi in blk.gates:
                if gi.gate not in self.gates:
                    raise ProjectValidationError(
                        f"block {blk.id!r} references unknown gate {gi.gate!r}"
                    )
                spec = self.gates[gi.gate]
                if len(gi.inputs) != spec.num_inputs:
                    raise ProjectValidationError(
                        f"block {blk.id!r}: gate {gi.gate!r} takes "
                        f"{spec.num_inputs} inputs, vector {gi.inputs!r} given"
                    )
        for name, spec in self.gates.items():
            for side, branches in (("pull_up", spec.pull_up), ("pull_down", spec.pull_down)):
                for branch in branches:
                    if not branch:
                        raise ProjectValidationError(
                            f"gate {name!r}: empty {side} branch"
                        )
                    for tr in branch:
                        if tr.input >= spec.num_inputs:
                            raise ProjectValidationError(
                                f"gate {name!r}: input index {tr.input} out of "
                                f"range for {spec.num_inputs} inputs"
                            )


def load_project(path: str | Path) -> Project:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ProjectValidationError(f"cannot read project file: {exc}") from exc
    return parse_project(data)


def parse_project(data: dict) -> Project:
    try:
        project = Project.model_validate(data)
    except ValidationError as exc:
        raise ProjectValidationError(str(exc)) from exc
    project.validate_cross_references()
    return project


# ---------------------------------------------------------------------------
# Conversion to core objects (SI units)

def device_params(section: DeviceSection, polarity: str) -> DeviceParams:
    return DeviceParams(
        i0=section.i0,
        n=section.n,
        v_t0=section.v_t0,
        gamma=section.gamma,
        sigma=section.sigma,
        k_t=section.k_t,
        l=section.l * UM,
        v_b=section.v_b,
        t_ref=section.t_ref,
        polarity=polarity,
    )


def gate_network(name: str, spec: GateSpec) -> leakage.GateNetwork:
    def side(branches: list[list[TransistorSpec]], polarity: str, tag: str):
        out = []
        for bi, branch in enumerate(branches):
            out.append(
                leakage.Branch(
                    tuple(
                        leakage.Transistor(
                            id=f"{name}.{tag}{bi}.{ti}",
                            width=tr.width * UM,
                            polarity=polarity,
                            input_index=tr.input,
                        )
                        for ti, tr in enumerate(branch)
                    )
                )
            )
        return tuple(out)

    return leakage.GateNetwork(
        name=name,
        pull_up=side(spec.pull_up, "pmos", "pu"),
        pull_down=side(spec.pull_down, "nmos", "pd"),
        num_inputs=spec.num_inputs,
    )


def parse_vector(bits: str) -> tuple[int, ...]:
    return tuple(int(b) for b in bits)


def scene_template(project: Project) -> thermal.ThermalScene:
    d = project.die
    return thermal.ThermalScene(
        die_w=d.width * UM,
        die_h=d.height * UM,
        t_sub=d.thickness * UM,
        k_si=project.technology.k_si,
        t_sink=d.t_sink,
        image_order=d.image_order,
        sources=(),
    )


def blocks(project: Project) -> tuple[cosim.Block, ...]:
    gate_lib = {name: gate_network(name, spec) for name, spec in project.gates.items()}
    out = []
    for blk in project.blocks:
        out.append(
            cosim.Block(
                id=blk.id,
                x=blk.x * UM,
                y=blk.y * UM,
                w=blk.w * UM,
                l=blk.l * UM,
                dynamic_power=blk.dynamic_power * MW,
                gate_instances=tuple(
                    cosim.GateInstance(
                        gate=gate_lib[gi.gate],
                        inputs=parse_vector(gi.inputs),
                        multiplicity=gi.multiplicity,
                    )
                    for gi in blk.gates
                ),
            )
        )
    return tuple(out)


def cosim_config(project: Project) -> cosim.CosimConfig:
    c = project.cosim
    return cosim.CosimConfig(
        tol=c.tol,
        max_iter=c.max_iter,
        damping=c.damping,
        runaway_limit=c.runaway_limit,
    )
