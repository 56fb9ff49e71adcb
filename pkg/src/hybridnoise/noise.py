"""Quantum-noise spectral densities of the interferometer and the hybrid.

Densities are double-sided and symmetrized, with vacuum quadrature
variance 1/2. Force densities are in N^2/Hz and position densities in
m^2/Hz. Only the phase quadrature is detected in both channels, and
thermal/technical forces on the mirrors are left out.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.constants import hbar

from .params import FrequencyGrid, TWO_PI
from .response import SingularityError, free_mass_susceptibility, transfer_set


@dataclass(frozen=True)
class InputSpectra:
    """Excess input noise from the two-mode squeezer after input losses."""

    rho_I: float
    rho_S: float
    rho_IS: float


@dataclass(frozen=True)
class SigmaSet:
    """Normalized spectral densities of both channels and their cross term."""

    sigma_I: np.ndarray
    sigma_Spin: np.ndarray
    sigma_ISpin: np.ndarray


@dataclass(frozen=True)
class NoiseSpectrum:
    frequency: np.ndarray
    S_sql_x: np.ndarray
    S_ifo_x: np.ndarray
    S_hybrid_x: np.ndarray
    gain_db: np.ndarray
    abs_chi: Optional[np.ndarray] = None
    abs_chi_S: Optional[np.ndarray] = None


def sql_position_psd(m, Omega):
    """Standard quantum limit for the position of a free mass ``m``."""
    Omega = np.asarray(Omega, dtype=float)
    if np.any(Omega == 0):
        raise SingularityError("SQL is singular at Omega = 0")
    return hbar / (m * Omega ** 2)


def input_spectra(r, eta_I1, eta_S1):
    if r < 0:
        raise ValueError(f"squeeze factor must be >= 0, got {r!r}")
    for name, eta in (("eta_I1", eta_I1), ("eta_S1", eta_S1)):
        if not 0 < eta <= 1:
            raise ValueError(f"{name} must lie in (0, 1], got {eta!r}")
    sinh2 = np.sinh(r) ** 2
    return InputSpectra(
        rho_I=2.0 * eta_I1 * sinh2,
        rho_S=2.0 * eta_S1 * sinh2,
        rho_IS=np.sqrt(eta_I1 * eta_S1) * np.sinh(2.0 * r),
    )


def sigma_set(Omega, ifo, spin, inp: InputSpectra, transfer=None):
    """Normalized noise densities of the interferometer and spin channels.

    ``transfer`` must have been evaluated at the same ``Omega``; it is
    computed here when omitted.
    """
    tr = transfer_set(Omega, ifo, spin) if transfer is None else transfer
    Theta, kappa_I, eta_I2 = ifo.Theta, ifo.kappa_I, ifo.eta_I2
    theta, eta_S2 = spin.theta, spin.eta_S2
    abs_ell2 = np.abs(tr.ell) ** 2
    abs_chi2 = np.abs(tr.chi) ** 2
    abs_chiS2 = np.abs(tr.chi_S) ** 2

    sigma_I = (np.abs(tr.R_I) ** 2 * inp.rho_I + 1.0 / ifo.output_efficiency_eta_I3
               + 4.0 * eta_I2 * kappa_I ** 2 * Theta ** 2 * abs_chi2 / abs_ell2 ** 2
               * (eta_I2 * inp.rho_I + 1.0))
    sigma_Spin = (tr.R_S ** 2 * inp.rho_S + 1.0 / spin.output_efficiency_eta_S3
                  + 4.0 * eta_S2 * theta ** 2 * abs_chiS2 * (eta_S2 * inp.rho_S + 1.0)
                  + 4.0 * eta_S2 * theta * np.abs(tr.chi_S.imag))
    sigma_ISpin = (-tr.R_I * tr.R_S
                   + 4.0 * ifo.kappa_Ic * eta_S2 * Theta * theta * tr.chi
                   * np.conj(tr.chi_S) / tr.ell ** 2) * inp.rho_IS
    return SigmaSet(sigma_I, sigma_Spin, sigma_ISpin)


def force_psds(Omega, sigmas: SigmaSet, ifo, spin, transfer=None):
    """Return ``(S_I, S_Spin, S_ISpin)``.

    ``S_I`` is the force-referred noise of the interferometer channel
    alone (N^2/Hz), ``S_Spin`` the density of the spin detector output
    and ``S_ISpin`` their cross-spectral density.
    """
    tr = transfer_set(Omega, ifo, spin) if transfer is None else transfer
    m, Theta, kappa_Ic = ifo.mirror_mass_m, ifo.Theta, ifo.kappa_Ic
    if np.any(tr.chi == 0):
        raise SingularityError("free-mass susceptibility vanishes")
    S_I = hbar * m * np.abs(tr.ell) ** 2 * sigmas.sigma_I / (
        4.0 * kappa_Ic * Theta * np.abs(tr.chi) ** 2)
    S_Spin = spin.output_efficiency_eta_S3 / 2.0 * sigmas.sigma_Spin
    S_ISpin = (0.5 * np.sqrt(hbar * m * spin.output_efficiency_eta_S3 / (2.0 * kappa_Ic * Theta))
               * tr.ell / tr.chi * sigmas.sigma_ISpin)
    return S_I, S_Spin, S_ISpin


def optimal_weight(S_ISpin, S_Spin):
    """Complex per-frequency weight of the spin output in the force estimate."""
    S_Spin = np.asarray(S_Spin, dtype=float)
    if np.any(S_Spin <= 0):
        raise ValueError("spin channel density must be positive")
    return -np.asarray(S_ISpin) / S_Spin


def signal_gain(ifo, transfer):
    """Transfer from signal force to the interferometer output, 1/sqrt(N^2/Hz)."""
    return (np.sqrt(ifo.output_efficiency_eta_I3)
            * np.sqrt(2.0 * ifo.kappa_Ic * ifo.Theta / (hbar * ifo.mirror_mass_m))
            * transfer.chi / transfer.ell)


def detector_weight(alpha, ifo, transfer):
    """Convert a force-estimate weight into a weight on the raw detector outputs.

    Returns ``w`` such that the estimate is proportional to
    ``b_I + w * b_S``; in the lossless in-band limit ``w -> tanh 2r``.
    """
    return signal_gain(ifo, transfer) * alpha


def _position_prefactor(ifo, transfer):
    # hbar |ell|^2 / (4 kappa_Ic Theta m): sigma -> m^2/Hz
    return hbar * np.abs(transfer.ell) ** 2 / (
        4.0 * ifo.kappa_Ic * ifo.Theta * ifo.mirror_mass_m)


def sigma_residual(sigmas: SigmaSet):
    """``sigma_I - |sigma_ISpin|^2 / sigma_Spin``."""
    return sigmas.sigma_I - np.abs(sigmas.sigma_ISpin) ** 2 / sigmas.sigma_Spin


def hybrid_position_psd(Omega, ifo, spin, sqz):
    """Position noise of the optimally weighted hybrid readout, m^2/Hz."""
    tr = transfer_set(Omega, ifo, spin)
    inp = input_spectra(sqz.squeeze_factor_r, ifo.input_efficiency_eta_I1,
                        spin.input_efficiency_eta_S1)
    return _position_prefactor(ifo, tr) * sigma_residual(sigma_set(Omega, ifo, spin, inp, tr))


def interferometer_only_position_psd(Omega, ifo, r_effective=0.0):
    """Position noise of the interferometer read out on its own, m^2/Hz.

    The input light carries uncorrelated, phase-squeezed quadratures with
    variances ``exp(-2r)/2`` (phase) and ``exp(2r)/2`` (amplitude);
    ``r_effective = 0`` is coherent light, i.e. the SQL-limited detector.
    """
    if r_effective < 0:
        raise ValueError("r_effective must be >= 0")
    Omega = np.asarray(Omega, dtype=float)
    chi = free_mass_susceptibility(Omega)
    eta1, eta3 = ifo.input_efficiency_eta_I1, ifo.output_efficiency_eta_I3
    ell = ifo.kappa_I - 1j * Omega
    R_I = 2.0 * ifo.kappa_Ic / ell - 1.0
    abs_T_I2 = 4.0 * ifo.kappa_Ic * ifo.kappa_Il / np.abs(ell) ** 2
    # twice the densities of the effective input quadratures
    phase = eta1 * np.exp(-2.0 * r_effective) + 1.0 - eta1
    amplitude = eta1 * np.exp(2.0 * r_effective) + 1.0 - eta1
    K = ifo.Theta * chi / ell
    sigma = (np.abs(R_I) ** 2 * phase
             + np.abs(2.0 * ifo.kappa_Ic * K / ell) ** 2 * amplitude
             + abs_T_I2 * (1.0 + np.abs(K) ** 2)
             + (1.0 - eta3) / eta3)
    return hbar * np.abs(ell) ** 2 / (4.0 * ifo.kappa_Ic * ifo.Theta * ifo.mirror_mass_m) * sigma


def leading_order_residual(Omega, ifo, spin, sqz):
    """Large-squeezing approximation of ``sigma_I - |sigma_ISpin|^2/sigma_Spin``.

    Keeps only the terms growing as ``exp(2r)``. The residual vanishes
    when the two back-action responses cancel.
    """
    r = sqz.squeeze_factor_r
    if not r > 0:
        raise ValueError("leading-order expansion needs r > 0")
    tr = transfer_set(Omega, ifo, spin)
    eta_I2, eta_S2, theta = ifo.eta_I2, spin.eta_S2, spin.theta
    imbalance = (tr.R_S * eta_I2 * ifo.kappa_I * ifo.Theta * tr.chi / tr.ell ** 2
                 + tr.R_I * eta_S2 * theta * tr.chi_S)
    norm = tr.R_S ** 2 + 4.0 * eta_S2 ** 2 * theta ** 2 * np.abs(tr.chi_S) ** 2
    return (ifo.input_efficiency_eta_I1 * np.exp(2.0 * r) / 2.0
            * 4.0 * np.abs(imbalance) ** 2 / norm)


def compute_spectrum(frequencies, ifo, spin, sqz, reference_r=0.0):
    """Sweep the SQL, interferometer-only and hybrid densities.

    ``frequencies`` is a :class:`~hybridnoise.params.FrequencyGrid` or an
    array in Hz. The gain compares the interferometer alone at
    ``reference_r`` with the hybrid.
    """
    f = frequencies.frequencies if isinstance(frequencies, FrequencyGrid) \
        else np.asarray(frequencies, dtype=float)
    Omega = TWO_PI * f
    tr = transfer_set(Omega, ifo, spin)
    S_sql = sql_position_psd(ifo.mirror_mass_m, Omega)
    S_ifo = interferometer_only_position_psd(Omega, ifo, reference_r)
    S_hyb = hybrid_position_psd(Omega, ifo, spin, sqz)
    return NoiseSpectrum(
        frequency=f, S_sql_x=S_sql, S_ifo_x=S_ifo, S_hybrid_x=S_hyb,
        gain_db=10.0 * np.log10(S_ifo / S_hyb),
        abs_chi=np.abs(tr.chi), abs_chi_S=np.abs(tr.chi_S),
    )
