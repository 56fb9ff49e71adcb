"""Parameter sets for the interferometer, the spin system and the squeezer.

Frequency-like fields are stored in Hz (ordinary frequency), which is
also what the JSON config files carry; every computation goes through
the angular-frequency properties (rad/s).
"""

from __future__ import annotations

import dataclasses
import json
import math
import numbers
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT

from .matching import (UnphysicalTransmissivityWarning, design_balanced_spin,
                       matched_gamma_S)

TWO_PI = 2.0 * math.pi

#: Carrier wavelength of the interferometer laser, m.
LASER_WAVELENGTH = 1064e-9

#: Loss budget shared by both presets.
PRESET_LOSSES = dict(
    input_efficiency_eta_I1=0.975,
    output_efficiency_eta_I3=0.975,
    roundtrip_loss_A_I=1e-4,
    input_efficiency_eta_S1=0.975,
    output_efficiency_eta_S3=0.975,
    intracavity_loss_A_S=3e-3,
)


class ParameterError(ValueError):
    """Invalid parameter value or config entry.

    ``key`` names the offending field when there is one.
    """

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key


def _require(cond, key, message):
    if not cond:
        raise ParameterError(f"{key}: {message}", key=key)


def _positive(obj, *names):
    for name in names:
        value = getattr(obj, name)
        _require(math.isfinite(value) and value > 0, name,
                 f"must be positive and finite, got {value!r}")


def _efficiency(obj, *names):
    for name in names:
        value = getattr(obj, name)
        _require(0 < value <= 1, name, f"must lie in (0, 1], got {value!r}")


def normalized_power(omega_o, I_c, m, L):
    """Normalized optical power ``Theta = 8 omega_o I_c / (m c L)`` in s^-3."""
    for name, value in (("omega_o", omega_o), ("I_c", I_c), ("m", m), ("L", L)):
        _require(value > 0, name, f"must be positive, got {value!r}")
    return 8.0 * omega_o * I_c / (m * SPEED_OF_LIGHT * L)


@dataclass(frozen=True)
class InterferometerParams:
    """Arm cavity of the gravitational-wave detector.

    Attributes
    ----------
    arm_length_L : float
        Arm length, m.
    mirror_mass_m : float
        Test-mass mirror mass, kg.
    half_bandwidth_kappa_I : float
        Arm cavity half-bandwidth, Hz (``kappa_I`` gives rad/s).
    circulating_power_I_c : float
        Power circulating in each arm, W.
    laser_angular_frequency_omega_o : float
        Laser carrier frequency, Hz (``omega_o`` gives rad/s).
    roundtrip_loss_A_I : float
        Intracavity round-trip power loss.
    input_efficiency_eta_I1, output_efficiency_eta_I3 : float
        Quantum efficiencies of the input and detection paths.
    """

    arm_length_L: float
    mirror_mass_m: float
    half_bandwidth_kappa_I: float
    circulating_power_I_c: float
    laser_angular_frequency_omega_o: float = SPEED_OF_LIGHT / LASER_WAVELENGTH
    roundtrip_loss_A_I: float = 0.0
    input_efficiency_eta_I1: float = 1.0
    output_efficiency_eta_I3: float = 1.0

    def __post_init__(self):
        _positive(self, "arm_length_L", "mirror_mass_m", "half_bandwidth_kappa_I",
                  "circulating_power_I_c", "laser_angular_frequency_omega_o")
        _efficiency(self, "input_efficiency_eta_I1", "output_efficiency_eta_I3")
        _require(0 <= self.roundtrip_loss_A_I < 1, "roundtrip_loss_A_I",
                 f"must lie in [0, 1), got {self.roundtrip_loss_A_I!r}")
        _require(self.kappa_Il < self.kappa_I, "roundtrip_loss_A_I",
                 f"loss half-bandwidth {self.kappa_Il:.4g} rad/s is not below "
                 f"kappa_I = {self.kappa_I:.4g} rad/s")

    @property
    def kappa_I(self):
        return TWO_PI * self.half_bandwidth_kappa_I

    @property
    def omega_o(self):
        return TWO_PI * self.laser_angular_frequency_omega_o

    @property
    def Theta(self):
        return normalized_power(self.omega_o, self.circulating_power_I_c,
                                self.mirror_mass_m, self.arm_length_L)

    @property
    def kappa_Il(self):
        """Part of the half-bandwidth due to intracavity loss, rad/s."""
        return SPEED_OF_LIGHT * self.roundtrip_loss_A_I / (4.0 * self.arm_length_L)

    @property
    def kappa_Ic(self):
        """Part of the half-bandwidth due to input coupling, rad/s."""
        return self.kappa_I - self.kappa_Il

    @property
    def eta_I2(self):
        return self.kappa_Ic / self.kappa_I


@dataclass(frozen=True)
class SpinParams:
    """Spin oscillator in its optical cavity.

    Frequencies and rates are in Hz; ``Omega_S``, ``gamma_S`` and
    ``Gamma_S`` return rad/s.
    """

    larmor_Omega_S: float
    linewidth_gamma_S: float
    readout_rate_Gamma_S: float
    coupling_T_S: float
    intracavity_loss_A_S: float = 0.0
    input_efficiency_eta_S1: float = 1.0
    output_efficiency_eta_S3: float = 1.0

    def __post_init__(self):
        _positive(self, "larmor_Omega_S", "linewidth_gamma_S",
                  "readout_rate_Gamma_S", "coupling_T_S")
        _efficiency(self, "input_efficiency_eta_S1", "output_efficiency_eta_S3")
        _require(0 <= self.intracavity_loss_A_S < 1, "intracavity_loss_A_S",
                 f"must lie in [0, 1), got {self.intracavity_loss_A_S!r}")
        if self.coupling_T_S > 1:
            warnings.warn(f"coupling_T_S = {self.coupling_T_S:.4g} exceeds 1",
                          UnphysicalTransmissivityWarning, stacklevel=3)

    @property
    def Omega_S(self):
        return TWO_PI * self.larmor_Omega_S

    @property
    def gamma_S(self):
        return TWO_PI * self.linewidth_gamma_S

    @property
    def Gamma_S(self):
        return TWO_PI * self.readout_rate_Gamma_S

    @property
    def theta(self):
        """Coupling factor ``Omega_S * Gamma_S``, s^-2."""
        return self.Omega_S * self.Gamma_S

    @property
    def eta_S2(self):
        return self.coupling_T_S / (self.coupling_T_S + self.intracavity_loss_A_S)

    @property
    def finesse(self):
        return TWO_PI / (self.coupling_T_S + self.intracavity_loss_A_S)

    @property
    def theta_SP(self):
        """Single-pass value of the coupling factor."""
        return self.theta * (self.coupling_T_S + self.intracavity_loss_A_S) / 4.0

    @property
    def d0(self):
        return self.readout_rate_Gamma_S / self.linewidth_gamma_S


@dataclass(frozen=True)
class SqueezeParams:
    squeeze_factor_r: float = 0.0

    def __post_init__(self):
        _require(math.isfinite(self.squeeze_factor_r) and self.squeeze_factor_r >= 0,
                 "squeeze_factor_r", f"must be >= 0, got {self.squeeze_factor_r!r}")

    @classmethod
    def from_power_ratio(cls, ratio):
        """Squeezer with ``exp(2 r) == ratio``."""
        return cls(math.log(ratio) / 2.0)

    @property
    def cosh2r(self):
        return math.cosh(2.0 * self.squeeze_factor_r)

    @property
    def sinh2r(self):
        return math.sinh(2.0 * self.squeeze_factor_r)

    @property
    def tanh2r(self):
        return math.tanh(2.0 * self.squeeze_factor_r)


@dataclass(frozen=True)
class FrequencyGrid:
    """Logarithmic grid of analysis frequencies in Hz."""

    f_min: float = 1.0
    f_max: float = 1e4
    n_points: int = 1000

    def __post_init__(self):
        _require(math.isfinite(self.f_min) and self.f_min > 0, "f_min",
                 f"must be positive, got {self.f_min!r}")
        _require(math.isfinite(self.f_max) and self.f_max > self.f_min, "f_max",
                 f"must exceed f_min = {self.f_min!r}, got {self.f_max!r}")
        _require(isinstance(self.n_points, numbers.Integral) and self.n_points >= 2,
                 "n_points", f"must be an integer >= 2, got {self.n_points!r}")

    @property
    def frequencies(self):
        return np.geomspace(self.f_min, self.f_max, self.n_points)

    @property
    def omega(self):
        return TWO_PI * self.frequencies


# --- scenarios -------------------------------------------------------------

def _balanced_spin(ifo, larmor_hz, linewidth_hz, finesse, A_S, eta_S1, eta_S3):
    design = design_balanced_spin(ifo.Theta, ifo.kappa_I, ifo.eta_I2,
                                  TWO_PI * larmor_hz, A_S, finesse)
    return SpinParams(
        larmor_Omega_S=larmor_hz,
        linewidth_gamma_S=linewidth_hz,
        readout_rate_Gamma_S=design.Gamma_S / TWO_PI,
        coupling_T_S=design.T_S,
        intracavity_loss_A_S=A_S,
        input_efficiency_eta_S1=eta_S1,
        output_efficiency_eta_S3=eta_S3,
    )


def _scenario(L, m, kappa_hz, I_c, spin_hz, finesse, losses):
    lossy = PRESET_LOSSES if losses else dict(
        input_efficiency_eta_I1=1.0, output_efficiency_eta_I3=1.0,
        roundtrip_loss_A_I=0.0, input_efficiency_eta_S1=1.0,
        output_efficiency_eta_S3=1.0, intracavity_loss_A_S=0.0)
    ifo = InterferometerParams(
        arm_length_L=L, mirror_mass_m=m, half_bandwidth_kappa_I=kappa_hz,
        circulating_power_I_c=I_c,
        roundtrip_loss_A_I=lossy["roundtrip_loss_A_I"],
        input_efficiency_eta_I1=lossy["input_efficiency_eta_I1"],
        output_efficiency_eta_I3=lossy["output_efficiency_eta_I3"])
    spin = _balanced_spin(ifo, spin_hz, spin_hz, finesse,
                          lossy["intracavity_loss_A_S"],
                          lossy["input_efficiency_eta_S1"],
                          lossy["output_efficiency_eta_S3"])
    return ifo, spin, SqueezeParams.from_power_ratio(15.0)


def advanced_ligo_preset(losses=True):
    """Advanced LIGO arm cavities with a 3 Hz spin oscillator.

    The spin readout rate and coupling mirror come from the balance
    solver with a spin-cavity finesse near 70. ``losses=False`` gives the
    ideal lossless variant, for which ``Gamma_S`` equals
    :func:`~hybridnoise.matching.matched_gamma_S`.
    """
    return _scenario(4000.0, 40.0, 500.0, 840e3, 3.0, 70.0, losses)


def prototype_10m_preset(losses=True):
    """10 m prototype interferometer with a 30 Hz spin oscillator."""
    return _scenario(10.0, 0.1, 2000.0, 1e3, 30.0, 35.0, losses)


PRESETS = {
    "advligo": advanced_ligo_preset,
    "prototype10m": prototype_10m_preset,
}


def matched_readout_rate_hz(ifo: InterferometerParams, spin: SpinParams):
    return matched_gamma_S(ifo.Theta, ifo.kappa_I, spin.Omega_S) / TWO_PI


def strip_losses(ifo: InterferometerParams, spin: SpinParams):
    """Copies of ``ifo`` and ``spin`` with every optical loss removed."""
    ifo = dataclasses.replace(ifo, roundtrip_loss_A_I=0.0, input_efficiency_eta_I1=1.0,
                              output_efficiency_eta_I3=1.0)
    spin = dataclasses.replace(spin, intracavity_loss_A_S=0.0,
                               input_efficiency_eta_S1=1.0,
                               output_efficiency_eta_S3=1.0)
    return ifo, spin


# --- config files ----------------------------------------------------------

_SECTIONS = (InterferometerParams, SpinParams, SqueezeParams)
CONFIG_KEYS = {f.name: cls for cls in _SECTIONS for f in dataclasses.fields(cls)}


def to_config(ifo, spin, sqz):
    """Flat mapping of every field, in the units stored on the dataclasses."""
    out = {}
    for obj in (ifo, spin, sqz):
        out.update(dataclasses.asdict(obj))
    return out


def dump_config(path, ifo, spin, sqz):
    Path(path).write_text(json.dumps(to_config(ifo, spin, sqz), indent=2) + "\n",
                          encoding="utf-8")


def from_config(mapping, base=None):
    """Build ``(ifo, spin, sqz)`` from a flat mapping.

    With ``base`` (a preset triple) the mapping only needs to carry the
    fields being overridden; without it every field without a default is
    required. Unknown keys and non-numeric values raise
    :class:`ParameterError` naming the key.
    """
    if not isinstance(mapping, dict):
        raise ParameterError("config must be a JSON object")
    for key, value in mapping.items():
        if key not in CONFIG_KEYS:
            raise ParameterError(f"{key}: unknown config key", key=key)
        if isinstance(value, bool) or not isinstance(value, numbers.Real):
            raise ParameterError(f"{key}: expected a number, got {value!r}", key=key)
    built = []
    for i, cls in enumerate(_SECTIONS):
        values = {} if base is None else dataclasses.asdict(base[i])
        values.update({k: float(v) for k, v in mapping.items() if CONFIG_KEYS[k] is cls})
        missing = [f.name for f in dataclasses.fields(cls)
                   if f.name not in values
                   and f.default is dataclasses.MISSING]
        if missing:
            raise ParameterError(f"{missing[0]}: missing from config", key=missing[0])
        built.append(cls(**values))
    return tuple(built)


def load_config(path, base=None):
    try:
        mapping = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParameterError(f"{path}: not valid JSON ({exc})") from exc
    return from_config(mapping, base=base)
