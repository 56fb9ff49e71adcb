import math

import numpy as np
from scipy.constants import c

from hybridnoise.params import (InterferometerParams, SpinParams, SqueezeParams,
                                LASER_WAVELENGTH)
from hybridnoise.matching import matched_gamma_S

TWO_PI = 2 * math.pi


def random_setup(rng, r=None, lossless=False):
    """Draw a valid (ifo, spin, sqz) triple spanning both preset scales."""
    L = 10 ** rng.uniform(1, 3.7)
    m = 10 ** rng.uniform(-1, 1.7)
    kappa_hz = 10 ** rng.uniform(2, 3.5)
    theta_root_hz = 10 ** rng.uniform(1.5, 3)
    omega_o = TWO_PI * c / LASER_WAVELENGTH
    Theta = (TWO_PI * theta_root_hz) ** 3
    I_c = Theta * m * c * L / (8 * omega_o)
    if lossless:
        A_I, eta_I1, eta_I3 = 0.0, 1.0, 1.0
        A_S, eta_S1, eta_S3 = 0.0, 1.0, 1.0
    else:
        A_I = 4 * L * rng.uniform(0, 0.05) * TWO_PI * kappa_hz / c
        eta_I1, eta_I3 = rng.uniform(0.9, 1.0, size=2)
        A_S = rng.uniform(0, 0.01)
        eta_S1, eta_S3 = rng.uniform(0.9, 1.0, size=2)
    ifo = InterferometerParams(
        arm_length_L=L, mirror_mass_m=m, half_bandwidth_kappa_I=kappa_hz,
        circulating_power_I_c=I_c, roundtrip_loss_A_I=A_I,
        input_efficiency_eta_I1=eta_I1, output_efficiency_eta_I3=eta_I3)
    larmor = rng.uniform(1, 50)
    Gamma = matched_gamma_S(ifo.Theta, ifo.kappa_I, TWO_PI * larmor) * rng.uniform(0.5, 2)
    spin = SpinParams(
        larmor_Omega_S=larmor, linewidth_gamma_S=rng.uniform(1, 50),
        readout_rate_Gamma_S=Gamma / TWO_PI, coupling_T_S=rng.uniform(0.01, 0.3),
        intracavity_loss_A_S=A_S, input_efficiency_eta_S1=eta_S1,
        output_efficiency_eta_S3=eta_S3)
    sqz = SqueezeParams(rng.uniform(0, 1.5) if r is None else r)
    return ifo, spin, sqz


def rel_err(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return np.abs(a - b) / np.abs(b)
