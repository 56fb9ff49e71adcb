import dataclasses
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.constants import c

from hybridnoise.params import (FrequencyGrid, InterferometerParams, ParameterError,
                                SpinParams, SqueezeParams, advanced_ligo_preset,
                                dump_config, from_config, load_config,
                                normalized_power, prototype_10m_preset, to_config)

TWO_PI = 2 * math.pi


def test_advligo_normalized_power():
    ifo, _, _ = advanced_ligo_preset()
    # nominal (2 pi 100 Hz)^3, rounded
    assert ifo.Theta == pytest.approx((TWO_PI * 100) ** 3, rel=0.01)
    assert ifo.Theta == pytest.approx(2.48e8, rel=0.01)


def test_advligo_fields():
    ifo, spin, sqz = advanced_ligo_preset()
    assert (ifo.arm_length_L, ifo.mirror_mass_m) == (4000.0, 40.0)
    assert ifo.kappa_I == pytest.approx(TWO_PI * 500)
    assert ifo.circulating_power_I_c == 840e3
    assert spin.Omega_S == spin.gamma_S == pytest.approx(TWO_PI * 3)
    assert math.exp(2 * sqz.squeeze_factor_r) == pytest.approx(15.0, rel=1e-14)
    assert ifo.input_efficiency_eta_I1 == ifo.output_efficiency_eta_I3 == 0.975
    assert spin.input_efficiency_eta_S1 == spin.output_efficiency_eta_S3 == 0.975
    assert ifo.roundtrip_loss_A_I == 1e-4
    assert spin.intracavity_loss_A_S == 3e-3


def test_advligo_loss_bandwidth():
    ifo, _, _ = advanced_ligo_preset()
    assert ifo.kappa_Il == pytest.approx(c * 1e-4 / (4 * 4000), rel=1e-15)
    # 1.875 s^-1 with c rounded to 3e8
    assert ifo.kappa_Il == pytest.approx(1.875, rel=1e-3)


def test_prototype_preset():
    ifo, spin, _ = prototype_10m_preset()
    assert ifo.Theta == pytest.approx((TWO_PI * 575) ** 3, rel=0.01)
    direct = 8 * ifo.omega_o * 1000 / (0.1 * c * 10)
    assert ifo.Theta == pytest.approx(direct, rel=1e-14)
    assert direct == pytest.approx(4.7e10, rel=0.01)
    assert spin.larmor_Omega_S == 30.0
    assert spin.Omega_S / TWO_PI == pytest.approx(30.0)


def test_normalized_power_scaling():
    ifo, _, _ = advanced_ligo_preset()
    base = normalized_power(ifo.omega_o, 840e3, 40.0, 4000.0)
    assert normalized_power(ifo.omega_o, 840e3, 80.0, 4000.0) == pytest.approx(base / 2)
    with pytest.raises(ValueError):
        normalized_power(ifo.omega_o, 0.0, 40.0, 4000.0)


def test_derived_quantities_consistent():
    ifo, spin, _ = advanced_ligo_preset()
    assert ifo.eta_I2 * ifo.kappa_I + ifo.kappa_Il == pytest.approx(ifo.kappa_I, rel=1e-12)
    total = spin.coupling_T_S + spin.intracavity_loss_A_S
    assert spin.eta_S2 * total == pytest.approx(spin.coupling_T_S, rel=1e-12)
    assert spin.finesse * total == pytest.approx(TWO_PI, rel=1e-12)
    assert spin.theta_SP == pytest.approx(spin.theta * total / 4, rel=1e-12)


def test_squeeze_identity():
    sqz = SqueezeParams.from_power_ratio(15)
    assert sqz.cosh2r ** 2 - sqz.sinh2r ** 2 == pytest.approx(1.0, abs=1e-12)
    assert sqz.cosh2r == pytest.approx(113 / 15)
    assert sqz.tanh2r == pytest.approx(224 / 226)
    assert SqueezeParams().sinh2r == 0.0


@pytest.mark.parametrize("field, value", [
    ("mirror_mass_m", 0.0),
    ("input_efficiency_eta_I1", 1.5),
    ("output_efficiency_eta_I3", 0.0),
    ("roundtrip_loss_A_I", 1.0),
    ("circulating_power_I_c", -1.0),
])
def test_interferometer_validation(field, value):
    ifo, _, _ = advanced_ligo_preset()
    with pytest.raises(ParameterError) as info:
        dataclasses.replace(ifo, **{field: value})
    assert info.value.key == field


def test_loss_dominated_cavity_rejected():
    ifo, _, _ = advanced_ligo_preset()
    # 10 m arms with 10% loss: kappa_Il >> kappa_I
    with pytest.raises(ParameterError, match="roundtrip_loss_A_I"):
        dataclasses.replace(ifo, arm_length_L=10.0, roundtrip_loss_A_I=0.1)


def test_spin_validation():
    _, spin, _ = advanced_ligo_preset()
    with pytest.raises(ParameterError):
        dataclasses.replace(spin, intracavity_loss_A_S=1.0)
    with pytest.raises(ParameterError):
        dataclasses.replace(spin, readout_rate_Gamma_S=0.0)


def test_frequency_grid():
    grid = FrequencyGrid()
    f = grid.frequencies
    assert len(f) == 1000 and f[0] == 1.0 and f[-1] == pytest.approx(1e4)
    assert np.all(np.diff(np.log(f)) > 0)
    with pytest.raises(ParameterError):
        FrequencyGrid(0.0, 10.0, 10)
    with pytest.raises(ParameterError):
        FrequencyGrid(10.0, 1.0, 10)
    with pytest.raises(ParameterError):
        FrequencyGrid(1.0, 10.0, 1)


def test_config_round_trip_presets(tmp_path):
    for preset in (advanced_ligo_preset, prototype_10m_preset):
        triple = preset()
        path = tmp_path / "cfg.json"
        dump_config(path, *triple)
        assert load_config(path) == triple


finite = dict(allow_nan=False, allow_infinity=False)


@settings(max_examples=200, deadline=None)
@given(
    L=st.floats(1.0, 1e4, **finite), m=st.floats(1e-3, 1e3, **finite),
    kappa=st.floats(10.0, 1e4, **finite), power=st.floats(1.0, 1e7, **finite),
    eta1=st.floats(0.01, 1.0, **finite), eta3=st.floats(0.01, 1.0, **finite),
    larmor=st.floats(0.1, 1e3, **finite), gamma=st.floats(0.1, 1e3, **finite),
    Gamma=st.floats(1.0, 1e5, **finite), T_S=st.floats(1e-4, 1.0, **finite),
    A_S=st.floats(0.0, 0.5, **finite), r=st.floats(0.0, 3.0, **finite),
)
def test_config_round_trip_bit_exact(L, m, kappa, power, eta1, eta3, larmor, gamma,
                                     Gamma, T_S, A_S, r):
    ifo = InterferometerParams(L, m, kappa, power, input_efficiency_eta_I1=eta1,
                               output_efficiency_eta_I3=eta3)
    spin = SpinParams(larmor, gamma, Gamma, T_S, A_S)
    sqz = SqueezeParams(r)
    text = json.dumps(to_config(ifo, spin, sqz))
    back = from_config(json.loads(text))
    assert back == (ifo, spin, sqz)
    for a, b in zip(back, (ifo, spin, sqz)):
        for f in dataclasses.fields(a):
            assert getattr(a, f.name).hex() == float(getattr(b, f.name)).hex()


def test_config_rejects_unknown_key():
    cfg = to_config(*advanced_ligo_preset())
    cfg["mirror_mass"] = 40
    with pytest.raises(ParameterError) as info:
        from_config(cfg)
    assert info.value.key == "mirror_mass"


def test_config_missing_key_named():
    cfg = to_config(*advanced_ligo_preset())
    del cfg["coupling_T_S"]
    with pytest.raises(ParameterError, match="coupling_T_S"):
        from_config(cfg)


def test_config_partial_override_on_preset():
    base = advanced_ligo_preset()
    ifo, spin, sqz = from_config({"mirror_mass_m": 20}, base=base)
    assert ifo.mirror_mass_m == 20.0
    assert spin == base[1] and sqz == base[2]


def test_config_rejects_non_numbers():
    with pytest.raises(ParameterError, match="arm_length_L"):
        from_config({"arm_length_L": "4000"}, base=advanced_ligo_preset())
    with pytest.raises(ParameterError, match="arm_length_L"):
        from_config({"arm_length_L": True}, base=advanced_ligo_preset())
