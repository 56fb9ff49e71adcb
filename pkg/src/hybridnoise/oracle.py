"""Brute-force cross-check of the closed-form noise densities.

Each detector output is written as an explicit linear combination of
every input noise quadrature, term by term from the lossy input/output
relations, and the densities follow from the quadratic form
``v C v^H`` with the input covariance ``C``. Nothing here is simplified
algebraically, so a slip in the closed-form expressions shows up as a
mismatch.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.constants import hbar

from .response import spin_zero_point_force_psd, transfer_set

MODES = (
    "a_I^c", "a_I^s", "a_S^c", "a_S^s",
    "n_I1^c", "n_I1^s", "n_I2^c", "n_I2^s", "n_I3",
    "n_S1^c", "n_S1^s", "n_S2^c", "n_S2^s", "n_S3",
    "f_S",
)
INDEX = {name: i for i, name in enumerate(MODES)}


@dataclass(frozen=True)
class OutputMap:
    """Coefficients of ``b_I^s`` and ``b_S^s`` over :data:`MODES`.

    ``b_I`` and ``b_S`` have shape ``Omega.shape + (len(MODES),)``;
    ``signal`` is the coefficient of the signal force in ``b_I^s``.
    """

    b_I: np.ndarray
    b_S: np.ndarray
    signal: np.ndarray

    @property
    def force_I(self):
        """Interferometer row referred to signal force."""
        return self.b_I / self.signal[..., None]


def build_output_map(Omega, ifo, spin, transfer=None):
    Omega = np.atleast_1d(np.asarray(Omega, dtype=float))
    tr = transfer_set(Omega, ifo, spin) if transfer is None else transfer
    shape = Omega.shape + (len(MODES),)
    b_I = np.zeros(shape, dtype=complex)
    b_S = np.zeros(shape, dtype=complex)

    Theta, kappa_Ic = ifo.Theta, ifo.kappa_Ic
    eta_I1, eta_I3 = ifo.input_efficiency_eta_I1, ifo.output_efficiency_eta_I3
    eta_S1, eta_S3 = spin.input_efficiency_eta_S1, spin.output_efficiency_eta_S3
    theta, eta_S2 = spin.theta, spin.eta_S2

    def add(row, mode, coeff):
        row[..., INDEX[mode]] += coeff

    # interferometer: sqrt(eta_I3) [ R_I c^s + 2 kappa_Ic Theta chi / ell^2 c^c
    #   + T_I (n_I2^s + Theta chi / ell n_I2^c) ] + sqrt(1 - eta_I3) n_I3
    shot = np.sqrt(eta_I3) * tr.R_I
    qba = np.sqrt(eta_I3) * 2.0 * kappa_Ic * Theta * tr.chi / tr.ell ** 2
    add(b_I, "a_I^s", shot * np.sqrt(eta_I1))
    add(b_I, "n_I1^s", shot * np.sqrt(1.0 - eta_I1))
    add(b_I, "a_I^c", qba * np.sqrt(eta_I1))
    add(b_I, "n_I1^c", qba * np.sqrt(1.0 - eta_I1))
    add(b_I, "n_I2^s", np.sqrt(eta_I3) * tr.T_I)
    add(b_I, "n_I2^c", np.sqrt(eta_I3) * tr.T_I * Theta * tr.chi / tr.ell)
    add(b_I, "n_I3", np.sqrt(1.0 - eta_I3))

    # spin: sqrt(eta_S3) [ R_S c^s + 2 eta_S2 theta chi_S c^c
    #   + T_S (n_S2^s + theta chi_S n_S2^c) + sqrt(2 eta_S2 theta) chi_S f_S ]
    #   + sqrt(1 - eta_S3) n_S3
    shot_S = np.sqrt(eta_S3) * tr.R_S * np.ones_like(Omega)
    qba_S = np.sqrt(eta_S3) * 2.0 * eta_S2 * theta * tr.chi_S
    add(b_S, "a_S^s", shot_S * np.sqrt(eta_S1))
    add(b_S, "n_S1^s", shot_S * np.sqrt(1.0 - eta_S1))
    add(b_S, "a_S^c", qba_S * np.sqrt(eta_S1))
    add(b_S, "n_S1^c", qba_S * np.sqrt(1.0 - eta_S1))
    add(b_S, "n_S2^s", np.sqrt(eta_S3) * tr.T_S_factor)
    add(b_S, "n_S2^c", np.sqrt(eta_S3) * tr.T_S_factor * theta * tr.chi_S)
    add(b_S, "f_S", np.sqrt(eta_S3) * np.sqrt(2.0 * eta_S2 * theta) * tr.chi_S)
    add(b_S, "n_S3", np.sqrt(1.0 - eta_S3))

    signal = np.sqrt(eta_I3) * np.sqrt(2.0 * kappa_Ic * Theta / (hbar * ifo.mirror_mass_m)) \
        * tr.chi / tr.ell
    return OutputMap(b_I=b_I, b_S=b_S, signal=signal)


def two_mode_squeezer(r):
    """Matrix taking vacuum ``(z_I^c, z_I^s, z_S^c, z_S^s)`` to ``a`` quadratures."""
    ch, sh = np.cosh(r), np.sinh(r)
    return np.array([
        [ch, 0.0, sh, 0.0],    # a_I^c = z_I^c cosh r + z_S^c sinh r
        [0.0, ch, 0.0, -sh],   # a_I^s = z_I^s cosh r - z_S^s sinh r
        [sh, 0.0, ch, 0.0],    # a_S^c = z_S^c cosh r + z_I^c sinh r
        [0.0, -sh, 0.0, ch],   # a_S^s = z_S^s cosh r - z_I^s sinh r
    ])


def input_covariance(Omega, r, gamma_S):
    """Covariance of the :data:`MODES` at each ``Omega``, shape ``(..., 15, 15)``."""
    Omega = np.atleast_1d(np.asarray(Omega, dtype=float))
    n = len(MODES)
    cov = np.zeros(Omega.shape + (n, n))
    cov[..., np.arange(n), np.arange(n)] = 0.5
    M = two_mode_squeezer(r)
    cov[..., :4, :4] = 0.5 * M @ M.T
    f = INDEX["f_S"]
    cov[..., f, f] = spin_zero_point_force_psd(Omega, gamma_S)
    return cov


def quadratic_form(u, cov, v):
    """``u C v^H`` over the trailing mode axis."""
    return np.einsum("...i,...ij,...j->...", u, cov, np.conj(v))


def _check_psd(cov):
    eig = np.linalg.eigvalsh(cov)
    scale = np.max(np.abs(eig), axis=-1, keepdims=True)
    if np.any(eig < -1e-12 * scale):
        raise ValueError("covariance matrix is not positive semi-definite")


def psd_via_covariance(output_map: OutputMap, covariance, alpha=0.0, check=True):
    """Force-referred density of the estimate ``b_I / signal + alpha * b_S``."""
    if check:
        _check_psd(covariance)
    alpha = np.asarray(alpha)
    row = output_map.force_I + alpha[..., None] * output_map.b_S
    return quadratic_form(row, covariance, row).real


def force_psds_via_covariance(output_map: OutputMap, covariance):
    """``(S_I, S_Spin, S_ISpin)`` from covariance propagation."""
    _check_psd(covariance)
    F = output_map.force_I
    S = output_map.b_S
    return (quadratic_form(F, covariance, F).real,
            quadratic_form(S, covariance, S).real,
            quadratic_form(F, covariance, S))


def numeric_optimal_alpha(output_map: OutputMap, covariance):
    """Minimize the estimate density over complex ``alpha`` numerically.

    The density is quadratic in ``(Re alpha, Im alpha)``, so a single
    Newton step from finite-difference derivatives lands on the minimum.
    """
    _check_psd(covariance)
    S_I = quadratic_form(output_map.force_I, covariance, output_map.force_I).real
    S_Spin = quadratic_form(output_map.b_S, covariance, output_map.b_S).real
    if np.any(S_Spin <= 0):
        raise ValueError("spin channel carries no noise; optimal weight undefined")
    h = np.sqrt(S_I / S_Spin)

    def f(a):
        return psd_via_covariance(output_map, covariance, a, check=False)

    f0 = f(0.0 * h)
    fx_p, fx_m = f(h + 0j), f(-h + 0j)
    fy_p, fy_m = f(1j * h), f(-1j * h)
    fxy = f((1 + 1j) * h)
    gx = (fx_p - fx_m) / (2 * h)
    gy = (fy_p - fy_m) / (2 * h)
    hxx = (fx_p - 2 * f0 + fx_m) / h ** 2
    hyy = (fy_p - 2 * f0 + fy_m) / h ** 2
    hxy = (fxy - fx_p - fy_p + f0) / h ** 2
    det = hxx * hyy - hxy ** 2
    x = -(hyy * gx - hxy * gy) / det
    y = -(hxx * gy - hxy * gx) / det
    return x + 1j * y
