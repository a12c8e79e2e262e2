"""Eavesdropper attack states and information bounds.

The collective attack injects light from one arm of an entangled-pair source
into the channel toward Bob and holds the other arm (the idler) in a quantum
memory. Conditioned on Bob's bit k, the eavesdropper's per-mode state is a
zero-mean three-mode Gaussian state over (tapped Alice-to-Bob light, idler,
amplified Bob-to-Alice return); its covariance is built here and fed to the
entropy routines to bound the Holevo information per channel use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError
from .gaussian import Covariance3Mode, von_neumann_entropy


@dataclass(frozen=True)
class SystemParams:
    """Full link budget shared by the rate computations.

    W is the optical bandwidth in Hz, R the modulation rate in bit/s; the
    number of modes per bit M = W/R is derived when not given and must agree
    with W/R to 1e-9 relative when it is. gamma = N_B/G_B likewise.
    """

    W: float
    R: float
    kappa: float
    eta: float
    kappa_B: float
    G_B: float
    N_B: float
    beta: float
    hbar_omega0: float
    M: float | None = None
    gamma: float | None = None

    def __post_init__(self) -> None:
        if self.W <= 0 or self.R <= 0:
            raise ValidationError("W and R must be positive")
        m = self.W / self.R
        if self.M is None:
            object.__setattr__(self, "M", m)
        elif not math.isclose(self.M, m, rel_tol=1e-9, abs_tol=0.0):
            raise ValidationError(f"M={self.M!r} inconsistent with W/R={m!r}")
        if self.M < 1:
            raise ValidationError("M = W/R must be >= 1")
        g = self.N_B / self.G_B if self.G_B > 0 else float("nan")
        if self.gamma is None:
            object.__setattr__(self, "gamma", g)
        elif not math.isclose(self.gamma, g, rel_tol=1e-12, abs_tol=0.0):
            raise ValidationError(f"gamma={self.gamma!r} inconsistent with N_B/G_B={g!r}")
        if not 0.0 < self.kappa < 1.0:
            raise ValidationError(f"kappa must be in (0,1), got {self.kappa!r}")
        if not 0.0 < self.eta <= 1.0:
            raise ValidationError(f"eta must be in (0,1], got {self.eta!r}")
        if not 0.0 <= self.kappa_B < 1.0:
            raise ValidationError(f"kappa_B must be in [0,1), got {self.kappa_B!r}")
        if self.G_B < 1.0:
            raise ValidationError(f"G_B must be >= 1, got {self.G_B!r}")
        if self.N_B < 0.0:
            raise ValidationError(f"N_B must be >= 0, got {self.N_B!r}")
        if not 0.0 < self.beta <= 1.0:
            raise ValidationError(f"beta must be in (0,1], got {self.beta!r}")
        if self.hbar_omega0 <= 0.0:
            raise ValidationError("hbar_omega0 must be positive")


@dataclass(frozen=True)
class AttackState:
    """Injection fraction with its derived brightness and covariances."""

    f_e: float
    n_s: float
    n_e: float
    cov_k0: Covariance3Mode
    cov_k1: Covariance3Mode
    cov_uncond: Covariance3Mode


def eve_injection_brightness(f_e: float, n_s: float, kappa: float) -> float:
    """Injected brightness N_E = kappa N_S f_E / [(1-kappa)(1-f_E)].

    The injection replaces a fraction f_E of the light reaching Bob while the
    total flux is unchanged, which fixes N_E as above. f_E = 1 (total
    replacement) is outside this model's domain.
    """
    if not 0.0 <= f_e < 1.0:
        raise DomainError(f"injection fraction must be in [0,1), got {f_e!r}")
    if n_s < 0:
        raise DomainError(f"source brightness must be >= 0, got {n_s!r}")
    if not 0.0 < kappa < 1.0:
        raise DomainError(f"kappa must be in (0,1), got {kappa!r}")
    return kappa * n_s * f_e / ((1.0 - kappa) * (1.0 - f_e))


def _covariance_entries(k: int, params: SystemParams, n_s: float, f_e: float) -> np.ndarray:
    n_e = eve_injection_brightness(f_e, n_s, params.kappa)
    kap = params.kappa
    gb_loss = params.G_B * (1.0 - params.kappa_B)
    n_ab = (1.0 - kap) * n_s + kap * n_e
    c_ia = 2.0 * math.sqrt(kap * n_e * (n_e + 1.0))
    # signed: goes negative once the injected brightness exceeds the source's
    c_ab = 2.0 * math.sqrt(gb_loss * kap * (1.0 - kap)) * (n_s - n_e)
    c_ib = 2.0 * math.sqrt(gb_loss * (1.0 - kap) * n_e * (n_e + 1.0))
    n_ba = gb_loss * (kap * n_s + (1.0 - kap) * n_e) + params.N_B
    a = 2.0 * n_ab + 1.0
    e = 2.0 * n_e + 1.0
    b = 2.0 * n_ba + 1.0
    s = 1.0 - 2.0 * k  # (-1)^k
    return np.array(
        [
            [a, 0.0, -c_ia, 0.0, s * c_ab, 0.0],
            [0.0, a, 0.0, c_ia, 0.0, s * c_ab],
            [-c_ia, 0.0, e, 0.0, s * c_ib, 0.0],
            [0.0, c_ia, 0.0, e, 0.0, -s * c_ib],
            [s * c_ab, 0.0, s * c_ib, 0.0, b, 0.0],
            [0.0, s * c_ab, 0.0, -s * c_ib, 0.0, b],
        ]
    ) / 4.0


def conditional_covariance(k: int, params: SystemParams, n_s: float, f_e: float) -> Covariance3Mode:
    """Per-mode covariance of the eavesdropper's state given Bob's bit k."""
    if k not in (0, 1):
        raise DomainError(f"bit must be 0 or 1, got {k!r}")
    if n_s < 0:
        raise DomainError(f"source brightness must be >= 0, got {n_s!r}")
    return Covariance3Mode(_covariance_entries(k, params, n_s, f_e))


def attack_state(params: SystemParams, n_s: float, f_e: float) -> AttackState:
    """Assemble both conditional covariances and their equal-weight average."""
    c0 = conditional_covariance(0, params, n_s, f_e)
    c1 = conditional_covariance(1, params, n_s, f_e)
    uncond = Covariance3Mode(0.5 * (c0.entries + c1.entries))
    n_e = eve_injection_brightness(f_e, n_s, params.kappa)
    return AttackState(f_e=f_e, n_s=n_s, n_e=n_e, cov_k0=c0, cov_k1=c1, cov_uncond=uncond)


def holevo_bound(params: SystemParams, n_s: float, f_e: float) -> float:
    """Upper bound on the eavesdropper's Holevo information, bits per use.

    Per-mode entropies are scaled by M through tensor-product additivity and
    the result is clamped to [0, 1]; one bit per use is all a binary-encoded
    channel can leak.
    """
    state = attack_state(params, n_s, f_e)
    s_uncond = von_neumann_entropy(state.cov_uncond)
    s_cond = 0.5 * (von_neumann_entropy(state.cov_k0) + von_neumann_entropy(state.cov_k1))
    chi = params.M * (s_uncond - s_cond)
    # floor absorbs -1e-12-scale noise on the uncond >= cond inequality
    return min(max(chi, 0.0), 1.0)


def chernoff_ber_passive(params: SystemParams, n_s: float) -> float:
    """Quantum Chernoff bound on a passive eavesdropper's bit-error rate."""
    if n_s < 0:
        raise DomainError(f"source brightness must be >= 0, got {n_s!r}")
    kap = params.kappa
    exponent = 4.0 * params.M * kap * (1.0 - kap) * (1.0 - params.kappa_B) * n_s * n_s
    return 0.5 * math.exp(-exponent)
