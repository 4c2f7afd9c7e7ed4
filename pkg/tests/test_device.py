import math

import pytest

from thermleak.device import (
    DeviceParams,
    OperatingPoint,
    subthreshold_current,
    thermal_voltage,
    threshold_voltage,
)
from thermleak.errors import DomainError

from conftest import T_ROOM, V_DD


def op(v_gs=0.0, v_ds=V_DD, v_sb=0.0, t=T_ROOM, v_dd=V_DD):
    return OperatingPoint(v_gs=v_gs, v_ds=v_ds, v_sb=v_sb, t=t, v_dd=v_dd)


class TestThermalVoltage:
    def test_room_temperature(self):
        # hand evaluation of k_B*T/q with the exact SI constants
        assert thermal_voltage(300.0) == pytest.approx(0.0258520, rel=1e-5)

    def test_linear_in_t(self):
        assert thermal_voltage(600.0) == 2.0 * thermal_voltage(300.0)

    @pytest.mark.parametrize("t", [0.0, -10.0])
    def test_nonpositive_temperature_rejected(self, t):
        with pytest.raises(DomainError):
            thermal_voltage(t)


class TestThresholdVoltage:
    def test_neutral_point_returns_v_t0(self, nmos):
        assert threshold_voltage(nmos, op(v_ds=V_DD)) == nmos.v_t0

    def test_dibl_term_only(self, nmos):
        # v_ds = v_dd - 0.1 with sigma = 0.08 adds +0.008
        v = threshold_voltage(nmos, op(v_ds=V_DD - 0.1))
        assert v == pytest.approx(nmos.v_t0 + 0.008, abs=1e-15)

    def test_temperature_term_only(self, nmos):
        v = threshold_voltage(nmos, op(t=nmos.t_ref + 50.0))
        assert v == pytest.approx(nmos.v_t0 - 0.035, abs=1e-15)

    @pytest.mark.parametrize("var", ["v_sb", "t", "v_ds"])
    def test_affine_in_each_bias(self, nmos, var):
        # three-point collinearity: f(mid) == (f(a) + f(b)) / 2
        a, b = {"v_sb": (0.0, 0.8), "t": (280.0, 360.0), "v_ds": (0.2, 1.2)}[var]
        f = lambda x: threshold_voltage(nmos, op(**{var: x}))
        assert f((a + b) / 2) == pytest.approx((f(a) + f(b)) / 2, rel=1e-14)


class TestSubthresholdCurrent:
    def test_zero_vds_zero_current(self, nmos):
        assert subthreshold_current(nmos, op(v_ds=0.0), 1e-6) == 0.0

    def test_linear_in_width(self, nmos):
        i1 = subthreshold_current(nmos, op(), 1e-6)
        i2 = subthreshold_current(nmos, op(), 2e-6)
        assert i2 == pytest.approx(2.0 * i1, rel=1e-14)

    def test_unit_exponential_at_threshold(self, nmos):
        # V_GS = V_TH, t = t_ref, saturated drain: I ~ (w/L) * I0
        point = op(v_gs=nmos.v_t0)
        assert threshold_voltage(nmos, point) == nmos.v_t0
        i = subthreshold_current(nmos, point, 2.0 * nmos.l)
        assert i == pytest.approx(2.0 * nmos.i0, rel=1e-12)

    def test_default_parameter_regression(self, nmos):
        # pinned by direct evaluation with the shipped default constants
        i = subthreshold_current(nmos, op(), nmos.l)
        assert i == pytest.approx(1.2564014917760774e-11, rel=1e-12)

    def test_nonpositive_width_rejected(self, nmos):
        with pytest.raises(DomainError):
            subthreshold_current(nmos, op(), 0.0)

    @pytest.mark.parametrize(
        "var,values",
        [
            ("v_gs", [0.0, 0.05, 0.1, 0.2]),
            ("t", [280.0, 300.0, 330.0, 370.0]),
        ],
    )
    def test_strictly_increasing(self, nmos, var, values):
        currents = [subthreshold_current(nmos, op(**{var: v}), 1e-6) for v in values]
        assert all(a < b for a, b in zip(currents, currents[1:]))

    def test_increasing_in_width(self, nmos):
        widths = [0.1e-6, 0.3e-6, 1e-6]
        currents = [subthreshold_current(nmos, op(), w) for w in widths]
        assert all(a < b for a, b in zip(currents, currents[1:]))

    def test_dibl_derivative_positive(self, nmos):
        # dI/dv_ds > 0 via central finite differences over the sweep
        h = 1e-5
        for v_ds in (0.01, 0.05, 0.3, 0.8, 1.2):
            d = (
                subthreshold_current(nmos, op(v_ds=v_ds + h), 1e-6)
                - subthreshold_current(nmos, op(v_ds=v_ds - h), 1e-6)
            ) / (2 * h)
            assert d > 0.0


class TestDeviceParamsInvariants:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"i0": 0.0},
            {"i0": -1e-9},
            {"n": 0.9},
            {"l": 0.0},
            {"t_ref": -1.0},
            {"sigma": -0.1},
            {"gamma": -0.1},
            {"polarity": "cmos"},
        ],
    )
    def test_invalid_params_rejected(self, nmos, kwargs):
        base = dict(
            i0=nmos.i0,
            n=nmos.n,
            v_t0=nmos.v_t0,
            gamma=nmos.gamma,
            sigma=nmos.sigma,
            k_t=nmos.k_t,
            l=nmos.l,
        )
        base.update(kwargs)
        with pytest.raises(DomainError):
            DeviceParams(**base)

    def test_operating_point_invariants(self):
        with pytest.raises(DomainError):
            OperatingPoint(v_gs=0, v_ds=0, v_sb=0, t=-1.0, v_dd=1.2)
        with pytest.raises(DomainError):
            OperatingPoint(v_gs=0, v_ds=0, v_sb=0, t=300.0, v_dd=0.0)
