"""Symplectic spectra and von Neumann entropies of three-mode Gaussian states.

Covariance matrices use the Wigner convention in which the vacuum diagonal is
1/4, quadratures ordered (x1, p1, x2, p2, x3, p3). A thermal mode with mean
photon number N has diagonal (2N+1)/4, so the entropy of a state with
symplectic eigenvalues nu_j is sum_j g(2 nu_j - 1/2) with g the usual
bosonic entropy function in bits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UnphysicalStateError, ValidationError

VACUUM_EIGENVALUE = 0.25
# tolerance below the vacuum floor before a state is declared unphysical
PHYSICALITY_TOL = 1e-9
_SYMMETRY_RTOL = 1e-12


def _symplectic_form(n_modes: int) -> np.ndarray:
    omega = np.zeros((2 * n_modes, 2 * n_modes))
    for m in range(n_modes):
        omega[2 * m, 2 * m + 1] = 1.0
        omega[2 * m + 1, 2 * m] = -1.0
    return omega


OMEGA = _symplectic_form(3)
OMEGA.setflags(write=False)


@dataclass(frozen=True)
class Covariance3Mode:
    """Validated 6x6 Wigner covariance matrix.

    Parameters
    ----------
    entries : array_like
        Real 6x6 matrix, symmetric to within 1e-12 relative and positive
        definite. Stored read-only.
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.entries, dtype=float)
        if arr.shape != (6, 6):
            raise ValidationError(f"covariance must be 6x6, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValidationError("covariance has non-finite entries")
        scale = max(1.0, float(np.max(np.abs(arr))))
        if np.max(np.abs(arr - arr.T)) > _SYMMETRY_RTOL * scale:
            raise ValidationError("covariance is not symmetric within 1e-12")
        try:
            np.linalg.cholesky(0.5 * (arr + arr.T))
        except np.linalg.LinAlgError:
            raise ValidationError("covariance is not positive definite") from None
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)


@dataclass(frozen=True)
class SymplecticSpectrum:
    """Three symplectic eigenvalues, sorted descending, each >= 1/4."""

    eigenvalues: tuple[float, float, float]

    def __post_init__(self) -> None:
        ev = tuple(float(v) for v in self.eigenvalues)
        if len(ev) != 3:
            raise ValidationError("spectrum must have exactly 3 eigenvalues")
        if any(ev[i] < ev[i + 1] for i in range(2)):
            raise ValidationError("eigenvalues must be sorted descending")
        if any(v < VACUUM_EIGENVALUE - PHYSICALITY_TOL for v in ev):
            raise UnphysicalStateError(
                f"symplectic eigenvalue below vacuum floor: {min(ev)!r}"
            )
        object.__setattr__(self, "eigenvalues", ev)


def _as_cov(cov) -> np.ndarray:
    if isinstance(cov, Covariance3Mode):
        return cov.entries
    return Covariance3Mode(np.asarray(cov)).entries


def symplectic_eigenvalues(cov) -> SymplecticSpectrum:
    """Symplectic spectrum of a validated covariance matrix.

    The eigenvalues of Omega @ cov come in conjugate pairs +/- i nu_j; the
    moduli of the three positive-imaginary-part eigenvalues are returned,
    sorted descending.

    Raises
    ------
    ValidationError
        If the input is not symmetric positive definite.
    UnphysicalStateError
        If any eigenvalue falls below 1/4 - 1e-9.
    """
    entries = _as_cov(cov)
    eig = np.linalg.eigvals(OMEGA @ entries)
    pos = eig[eig.imag > 0]
    if pos.size != 3:
        # PD symmetric input guarantees pure-imaginary +/- pairs
        raise ValidationError("eigenvalues of Omega @ cov failed to pair")
    moduli = np.sort(np.abs(pos))[::-1]
    return SymplecticSpectrum(tuple(float(v) for v in moduli))


def thermal_entropy(n: float) -> float:
    """Entropy g(N) = (N+1) log2(N+1) - N log2 N of a thermal state, in bits.

    g(0) = 0 by continuity; N below 1e-12 is treated as 0 to avoid log(0).
    """
    if n < 0:
        raise DomainError(f"mean photon number must be >= 0, got {n!r}")
    if n < 1e-12:
        return 0.0
    return float((n + 1) * np.log2(n + 1) - n * np.log2(n))


def von_neumann_entropy(cov) -> float:
    """Entropy in bits of the Gaussian state with the given covariance."""
    spectrum = symplectic_eigenvalues(cov)
    total = 0.0
    for nu in spectrum.eigenvalues:
        # eigenvalues within PHYSICALITY_TOL below 1/4 map to N = 0
        total += thermal_entropy(max(2.0 * nu - 0.5, 0.0))
    return total
