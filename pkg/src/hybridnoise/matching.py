"""Design solvers for the spin reference system.

Everything here works on plain floats in SI units with angular
frequencies, so the functions can be used without building the
parameter dataclasses.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass


class UnphysicalTransmissivityWarning(UserWarning):
    """Balanced coupling-mirror transmissivity came out above 1."""


class LossDominatedError(ValueError):
    """A cavity has more loss than coupling (efficiency <= 1/2)."""


@dataclass(frozen=True)
class SpinMicrophysics:
    """Atomic ensemble and probe properties that set the spin rates.

    Attributes
    ----------
    finesse_F : float
        Finesse of the cavity around the atomic cell.
    cross_section_sigma : float
        Resonant atomic optical cross section, m^2.
    atom_number_N_a : float
        Number of atoms.
    beam_area_A : float
        Cross section of the spin ensemble / probe beam, m^2.
    optical_linewidth_gamma_opt : float
        Optical transition bandwidth, rad/s.
    detuning_Delta_opt : float
        Probe detuning from the atomic resonance, rad/s.
    photon_flux_Phi : float
        Probe photon flux, 1/s.
    """

    finesse_F: float
    cross_section_sigma: float
    atom_number_N_a: float
    beam_area_A: float
    optical_linewidth_gamma_opt: float
    detuning_Delta_opt: float
    photon_flux_Phi: float

    def __post_init__(self):
        for name in ("finesse_F", "cross_section_sigma", "atom_number_N_a",
                     "beam_area_A", "optical_linewidth_gamma_opt",
                     "detuning_Delta_opt"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if not self.photon_flux_Phi >= 0:
            raise ValueError("photon_flux_Phi must be non-negative")

    @property
    def single_pass_depth(self):
        return self.cross_section_sigma * self.atom_number_N_a / self.beam_area_A

    @property
    def d0(self):
        """Cavity-enhanced resonant optical depth."""
        return 2.0 * self.finesse_F / math.pi * self.single_pass_depth


def spin_rates_from_microphysics(mp: SpinMicrophysics):
    """Return ``(d0, gamma_S, Gamma_S)`` for an atomic ensemble.

    ``gamma_S`` is the optically induced spin linewidth and
    ``Gamma_S = gamma_S * d0`` the readout rate, both in rad/s.
    """
    d0 = mp.d0
    gamma_S = (mp.cross_section_sigma / mp.beam_area_A
               * mp.optical_linewidth_gamma_opt ** 2 * mp.photon_flux_Phi
               / mp.detuning_Delta_opt ** 2)
    return d0, gamma_S, gamma_S * d0


def matched_gamma_S(Theta, kappa_I, Omega_S):
    """Spin readout rate that matches the interferometer response.

    Far above the spin resonance both susceptibilities reduce to
    ``1/Omega**2`` with opposite signs, so matching the back-action
    responses needs ``theta = Omega_S * Gamma_S = Theta / kappa_I``.

    Parameters
    ----------
    Theta : float
        Normalized optical power of the interferometer, s^-3.
    kappa_I : float
        Interferometer half-bandwidth, rad/s.
    Omega_S : float
        Larmor frequency, rad/s.

    Returns
    -------
    float
        ``Gamma_S`` in rad/s.
    """
    for name, value in (("Theta", Theta), ("kappa_I", kappa_I), ("Omega_S", Omega_S)):
        if not value > 0:
            raise ValueError(f"{name} must be positive, got {value!r}")
    return Theta / (kappa_I * Omega_S)


def _check_efficiency(name, eta):
    if not eta > 0.5:
        raise LossDominatedError(
            f"{name} = {eta!r} <= 1/2: cavity is loss dominated, back actions "
            "cannot be balanced")


def frequency_independent_condition(theta, Theta, kappa_I, eta_I2, eta_S2):
    """Residual of the frequency-independent back-action balance.

    Zero when ``eta_S2 theta / (2 eta_S2 - 1)`` equals
    ``eta_I2 Theta / ((2 eta_I2 - 1) kappa_I)``.
    """
    _check_efficiency("eta_I2", eta_I2)
    _check_efficiency("eta_S2", eta_S2)
    return (eta_S2 * theta / (2.0 * eta_S2 - 1.0)
            - eta_I2 * Theta / ((2.0 * eta_I2 - 1.0) * kappa_I))


def balance_coefficient(theta_SP, Theta, kappa_I, eta_I2):
    """Linear coefficient ``b`` of the quadratic ``T**2 - 2 b T - A**2 = 0``."""
    _check_efficiency("eta_I2", eta_I2)
    return (2.0 * eta_I2 - 1.0) / eta_I2 * 2.0 * kappa_I * theta_SP / Theta


def balance_transmissivity(theta_SP, A_S, Theta, kappa_I, eta_I2):
    """Coupling-mirror transmissivity that balances the back actions.

    Returns the positive root of ``T**2 - 2 b T - A_S**2 = 0``. A root
    above 1 means the requested single-pass coupling cannot be balanced
    with a real mirror; a warning is issued and the value returned anyway.
    """
    for name, value in (("theta_SP", theta_SP), ("Theta", Theta), ("kappa_I", kappa_I)):
        if not value > 0:
            raise ValueError(f"{name} must be positive, got {value!r}")
    if not A_S >= 0:
        raise ValueError(f"A_S must be non-negative, got {A_S!r}")
    b = balance_coefficient(theta_SP, Theta, kappa_I, eta_I2)
    T_S = b + math.hypot(b, A_S)
    if T_S > 1.0:
        warnings.warn(
            f"balanced coupling transmissivity T_S = {T_S:.4g} exceeds 1; "
            "parameters are inconsistent", UnphysicalTransmissivityWarning,
            stacklevel=2)
    return T_S


@dataclass(frozen=True)
class BalancedSpin:
    """Spin cavity design produced by :func:`design_balanced_spin`.

    ``theta`` and ``Gamma_S`` are in s^-2 and rad/s respectively.
    """

    theta_SP: float
    T_S: float
    A_S: float
    theta: float
    Gamma_S: float

    @property
    def eta_S2(self):
        return self.T_S / (self.T_S + self.A_S)

    @property
    def finesse(self):
        return 2.0 * math.pi / (self.T_S + self.A_S)


def design_balanced_spin(Theta, kappa_I, eta_I2, Omega_S, A_S, finesse):
    """Pick a single-pass coupling, then balance it with the coupling mirror.

    The single-pass coupling is fixed so that the matched coupling
    ``Theta / kappa_I`` would be reached at the target ``finesse``. The
    transmissivity is then solved from the balance quadratic, which keeps
    the frequency-independent condition exact in the presence of losses.
    Without losses this reproduces ``Gamma_S = matched_gamma_S(...)``.
    """
    theta_matched = Theta / kappa_I
    theta_SP = theta_matched * (2.0 * math.pi / finesse) / 4.0
    T_S = balance_transmissivity(theta_SP, A_S, Theta, kappa_I, eta_I2)
    theta = 4.0 * theta_SP / (T_S + A_S)
    return BalancedSpin(theta_SP=theta_SP, T_S=T_S, A_S=A_S, theta=theta,
                        Gamma_S=theta / Omega_S)
