"""Susceptibilities and cavity transfer factors.

Fourier convention is ``exp(-i Omega t)``, so the arm cavity pole is
``ell = kappa_I - i Omega``. All functions broadcast over ``Omega``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class SingularityError(ValueError):
    """Requested frequency sits on a pole of a response function."""


def free_mass_susceptibility(Omega):
    """Mechanical susceptibility of a free mass (mass factored out), s^2."""
    Omega = np.asarray(Omega, dtype=float)
    if np.any(Omega == 0):
        raise SingularityError("free-mass susceptibility is singular at Omega = 0")
    return -1.0 / Omega ** 2


def spin_susceptibility(Omega, Omega_S, gamma_S):
    """Effective susceptibility of the negative-mass spin oscillator, s^2."""
    if gamma_S < 0:
        raise ValueError(f"gamma_S must be non-negative, got {gamma_S!r}")
    Omega = np.asarray(Omega, dtype=float)
    if gamma_S == 0 and np.any(np.abs(Omega) == Omega_S):
        raise SingularityError("undamped spin susceptibility is singular at |Omega| = Omega_S")
    return -1.0 / ((gamma_S - 1j * Omega) ** 2 + Omega_S ** 2)


def interferometer_factors(Omega, kappa_I, kappa_Ic, kappa_Il):
    """Return ``(ell, R_I, T_I)`` for the lossy arm cavity.

    ``R_I`` is the reflection of the incident field and ``T_I`` the
    transfer of the intracavity-loss vacuum to the output.
    """
    if kappa_Ic <= 0 or kappa_Il < 0:
        raise ValueError("kappa_Ic must be positive and kappa_Il non-negative")
    if abs(kappa_Ic + kappa_Il - kappa_I) > 1e-12 * kappa_I:
        raise ValueError(
            f"kappa_Ic + kappa_Il = {kappa_Ic + kappa_Il!r} does not add up to "
            f"kappa_I = {kappa_I!r}")
    ell = kappa_I - 1j * np.asarray(Omega, dtype=float)
    R_I = 2.0 * kappa_Ic / ell - 1.0
    T_I = 2.0 * np.sqrt(kappa_Ic * kappa_Il) / ell
    return ell, R_I, T_I


def spin_cavity_factors(T_S, A_S):
    """Frequency-flat reflection and loss factors of the spin cavity."""
    if not T_S > 0:
        raise ValueError(f"T_S must be positive, got {T_S!r}")
    if not 0 <= A_S < 1:
        raise ValueError(f"A_S must lie in [0, 1), got {A_S!r}")
    total = T_S + A_S
    return (T_S - A_S) / total, 2.0 * np.sqrt(T_S * A_S) / total


def spin_zero_point_force_psd(Omega, gamma_S):
    """Zero-temperature density of the spin's normalized thermal force."""
    return 2.0 * np.abs(np.asarray(Omega, dtype=float)) * gamma_S


@dataclass(frozen=True)
class TransferSet:
    ell: np.ndarray
    R_I: np.ndarray
    T_I: np.ndarray
    R_S: float
    T_S_factor: float
    chi: np.ndarray
    chi_S: np.ndarray


def transfer_set(Omega, ifo, spin):
    """Evaluate every response factor at ``Omega`` (rad/s)."""
    ell, R_I, T_I = interferometer_factors(Omega, ifo.kappa_I, ifo.kappa_Ic, ifo.kappa_Il)
    R_S, T_S_factor = spin_cavity_factors(spin.coupling_T_S, spin.intracavity_loss_A_S)
    return TransferSet(
        ell=ell, R_I=R_I, T_I=T_I, R_S=R_S, T_S_factor=T_S_factor,
        chi=free_mass_susceptibility(Omega),
        chi_S=spin_susceptibility(Omega, spin.Omega_S, spin.gamma_S),
    )
