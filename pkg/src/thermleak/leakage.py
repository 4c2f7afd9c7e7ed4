"""Gate-level static current via transistor-stack collapsing.

An OFF chain of series transistors is collapsed bottom-up into a single
equivalent device: each collapse step assigns the lower transistor of the
current top pair a closed-form drain-source drop, and shrinks the running
equivalent width exponentially with that drop.  Parallel OFF chains add
their effective widths; a chain in parallel with an ON chain is discarded.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .device import DeviceParams, thermal_voltage
from .errors import DomainError, TopologyError


@dataclass(frozen=True)
class Transistor:
    id: str
    width: float  # m
    polarity: str  # "nmos" | "pmos"
    input_index: int

    def __post_init__(self):
        if self.width <= 0:
            raise DomainError(f"transistor {self.id}: width must be > 0")
        if self.polarity not in ("nmos", "pmos"):
            raise DomainError(f"transistor {self.id}: bad polarity {self.polarity!r}")


@dataclass(frozen=True)
class Branch:
    """Series chain, ordered from the rail-side device outward.

    For an nMOS pull-down chain index 0 is the transistor closest to ground;
    for a pMOS pull-up chain index 0 is closest to the supply.
    """

    transistors: tuple[Transistor, ...]

    def __post_init__(self):
        if not self.transistors:
            raise DomainError("branch must contain at least one transistor")
        pol = self.transistors[0].polarity
        if any(t.polarity != pol for t in self.transistors):
            raise DomainError("branch mixes polarities")

    @property
    def polarity(self) -> str:
        return self.transistors[0].polarity


@dataclass(frozen=True)
class GateNetwork:
    name: str
    pull_up: tuple[Branch, ...]
    pull_down: tuple[Branch, ...]
    num_inputs: int

    def __post_init__(self):
        for b in self.pull_up:
            if b.polarity != "pmos":
                raise DomainError(f"gate {self.name}: pull-up branch is not pMOS")
        for b in self.pull_down:
            if b.polarity != "nmos":
                raise DomainError(f"gate {self.name}: pull-down branch is not nMOS")
        for b in self.pull_up + self.pull_down:
            for t in b.transistors:
                if not (0 <= t.input_index < self.num_inputs):
                    raise DomainError(
                        f"gate {self.name}: transistor {t.id} input index "
                        f"{t.input_index} out of range"
                    )


@dataclass(frozen=True)
class CollapseResult:
    """Equivalent width of a collapsed OFF chain plus the per-level drops.

    ``node_drops`` lists the drain-source voltage assigned to each lower
    transistor of a collapse step, top pair first.  ``v_top`` is their sum:
    the source voltage of the topmost transistor.
    """

    w_eff: float
    node_drops: tuple[float, ...]
    v_top: float


def pair_vds(
    w_top: float, w_bot: float, p: DeviceParams, v_dd: float, t: float
) -> float:
    """Closed-form drain-source drop across the lower device of an OFF pair.

    With f = ln(w_top/w_bot) + sigma*V_DD/(n*V_T) and
    alpha = n/(1 + gamma + 2*sigma):

        V = V_T * {1 + (alpha-1) e^f / (alpha-1 + e^f)} * ln(1 + e^f)

    which interpolates between the two asymptotes alpha*V_T*f (f large
    positive) and V_T*e^f (f large negative).  Always positive.
    """
    if w_top <= 0 or w_bot <= 0:
        raise DomainError("pair widths must be > 0")
    vt = thermal_voltage(t)
    f = math.log(w_top / w_bot) + p.sigma * v_dd / (p.n * vt)
    alpha = p.n / (1.0 + p.gamma + 2.0 * p.sigma)
    if f > 0:
        # exp(-f) form avoids overflow for extreme width ratios
        brace = 1.0 + (alpha - 1.0) / (1.0 + (alpha - 1.0) * math.exp(-f))
        log1pef = f + math.log1p(math.exp(-f))
    else:
        ef = math.exp(f)
        brace = 1.0 + (alpha - 1.0) * ef / (alpha - 1.0 + ef)
        log1pef = math.log1p(ef)
    return vt * brace * log1pef


def collapse_chain(
    branch: Branch,
    p: DeviceParams,
    v_dd: float,
    t: float,
    running_width: bool = True,
) -> CollapseResult:
    """Collapse a chain of OFF transistors into one equivalent device.

    Starting from the rail-distant (top) transistor, each step pairs the
    current equivalent top device with the next transistor down, assigns the
    lower device its pair_vds drop, and shrinks the equivalent width by
    exp[-(1+sigma+gamma)*V_DS/(n*V_T)].  The final width also follows in
    closed form from the summed drops; both agree to round-off.

    ``running_width=False`` computes each pair's drop from the original
    widths at that level instead of the running equivalent width (comparison
    mode for oracle studies).
    """
    devices = branch.transistors
    if not devices:
        raise DomainError("cannot collapse an empty branch")
    vt = thermal_voltage(t)
    shrink = (1.0 + p.sigma + p.gamma) / (p.n * vt)
    top = devices[-1]
    w_eq = top.width
    upper_w = top.width
    drops: list[float] = []
    for tr in reversed(devices[:-1]):
        w_for_f = w_eq if running_width else upper_w
        v = pair_vds(w_for_f, tr.width, p, v_dd, t)
        drops.append(v)
        w_eq *= math.exp(-shrink * v)
        upper_w = tr.width
    v_top = math.fsum(drops)
    w_eff = top.width * math.exp(-shrink * v_top)
    return CollapseResult(w_eff=w_eff, node_drops=tuple(drops), v_top=v_top)


def classify_branch(branch: Branch, inputs: tuple[int, ...]) -> tuple[Transistor, ...]:
    """OFF transistors of a branch under an input vector, rail-to-out order.

    An nMOS device is ON when its input is high, a pMOS device when its
    input is low.  An empty result means the branch is fully ON (conducting);
    ON devices inside an OFF branch are elided, as they merely extend the
    internal nodes.
    """
    off: list[Transistor] = []
    for tr in branch.transistors:
        try:
            bit = inputs[tr.input_index]
        except IndexError:
            raise DomainError(
                f"input vector of length {len(inputs)} too short for "
                f"input index {tr.input_index}"
            ) from None
        on = bool(bit) if tr.polarity == "nmos" else not bool(bit)
        if not on:
            off.append(tr)
    return tuple(off)


def network_effective_width(
    branches: tuple[Branch, ...],
    inputs: tuple[int, ...],
    p: DeviceParams,
    v_dd: float,
    t: float,
) -> float | None:
    """Effective width of a parallel network of chains, or None if pinned.

    Returns None when any branch conducts (the network pins its output node
    and contributes no OFF current).  Otherwise every branch is OFF and the
    result is the sum of the collapsed effective widths of the OFF
    subsequences.
    """
    if not branches:
        raise DomainError("network has no branches")
    off_chains: list[Branch] = []
    for b in branches:
        off = classify_branch(b, inputs)
        if not off:
            return None
        off_chains.append(Branch(off))
    return math.fsum(
        collapse_chain(c, p, v_dd, t).w_eff for c in off_chains
    )


def off_current(w_eff: float, p: DeviceParams, t: float) -> float:
    """OFF current of an equivalent device of width ``w_eff`` with grounded
    gate and saturated drain:

        I = (W_eff/L) * I0 * (T/T_ref)^2
            * exp[(-V_T0 - K_T (T - T_ref) + gamma * V_B) / (n V_T)]
    """
    vt = thermal_voltage(t)
    return (
        (w_eff / p.l)
        * p.i0
        * (t / p.t_ref) ** 2
        * math.exp((-p.v_t0 - p.k_t * (t - p.t_ref) + p.gamma * p.v_b) / (p.n * vt))
    )


@dataclass(frozen=True)
class GateStaticResult:
    i_off: float  # A
    p_static: float  # W
    side: str  # leaking network: "pull_up" | "pull_down"
    w_eff: float  # m


def gate_static_power(
    gate: GateNetwork,
    inputs: tuple[int, ...],
    n_params: DeviceParams,
    p_params: DeviceParams,
    v_dd: float,
    t: float,
) -> GateStaticResult:
    """Static current and power of a complementary gate for one input vector.

    Exactly one of the two networks must conduct (pin the output); the
    other, fully OFF, network sets the leakage:

        I_OFF = (W_eff/L) * I0 * (T/T_ref)^2
                * exp[(-V_T0 - K_T (T - T_ref) + gamma * V_B) / (n V_T)]

    evaluated with the OFF network's polarity parameters, P = V_DD * I_OFF.
    """
    if len(inputs) != gate.num_inputs:
        raise DomainError(
            f"gate {gate.name} expects {gate.num_inputs} inputs, got {len(inputs)}"
        )
    w_up = network_effective_width(gate.pull_up, inputs, p_params, v_dd, t)
    w_down = network_effective_width(gate.pull_down, inputs, n_params, v_dd, t)
    if w_up is None and w_down is None:
        raise TopologyError(
            f"gate {gate.name}, inputs {inputs}: both networks conduct "
            "(non-complementary gate)"
        )
    if w_up is not None and w_down is not None:
        raise TopologyError(
            f"gate {gate.name}, inputs {inputs}: both networks OFF "
            "(floating output)"
        )
    if w_up is not None:
        side, w_eff, p = "pull_up", w_up, p_params
    else:
        side, w_eff, p = "pull_down", w_down, n_params
    i_off = off_current(w_eff, p, t)
    return GateStaticResult(i_off=i_off, p_static=v_dd * i_off, side=side, w_eff=w_eff)


def transient_power(activity: float, f: float, c: float, v_dd: float) -> float:
    """Switching power alpha * f * C * V_DD^2 of a capacitive load."""
    if activity < 0 or f < 0 or c < 0 or v_dd < 0:
        raise DomainError("transient power arguments must be non-negative")
    return activity * f * c * v_dd * v_dd
