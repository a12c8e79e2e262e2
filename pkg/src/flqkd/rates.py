"""Bit-error rates, mutual information, and secret-key-rate optimization.

The receiver-side chain: Alice's homodyne BER through the Gaussian-noise
Q-function, Shannon information of the resulting binary symmetric channel,
secret-key efficiency SKE = beta * I_AB - chi against the collective-attack
Holevo bound, and a grid-plus-golden-section maximizer over the source
brightness N_S.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError
from .eve import SystemParams, chernoff_ber_passive, holevo_bound

_SQRT_PI = math.sqrt(math.pi)
_SQRT_2 = math.sqrt(2.0)
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0


def _erf_series(x: float) -> float:
    # Maclaurin series for erf; alternating terms, used for |x| < 1.5 where
    # cancellation stays below a few ulps.
    xx = x * x
    term = x
    total = x
    n = 0
    while True:
        n += 1
        term *= -xx / n
        contrib = term / (2 * n + 1)
        total += contrib
        if abs(contrib) <= 1e-17 * abs(total):
            return 2.0 / _SQRT_PI * total


def _erfc_continued_fraction(x: float) -> float:
    # erfc(x) = exp(-x^2)/sqrt(pi) / F with F = x + (1/2)/(x + 1/(x + (3/2)/(x + ...)));
    # evaluated by the modified Lentz algorithm, valid for x >= 1.5.
    tiny = 1e-300
    f = x
    c = f
    d = 0.0
    n = 0
    while True:
        n += 1
        a = 0.5 * n
        d = x + a * d
        if d == 0.0:
            d = tiny
        c = x + a / c
        if c == 0.0:
            c = tiny
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-16 or n > 300:
            break
    return math.exp(-x * x) / (_SQRT_PI * f)


def erfc(x: float) -> float:
    """Complementary error function via series / continued fraction.

    Relative accuracy is better than 1e-12 over the range the Q-function
    needs (|x| <= 8/sqrt(2) and well beyond). Negative arguments use
    erfc(-x) = 2 - erfc(x).
    """
    x = float(x)
    if math.isnan(x):
        return x
    if math.isinf(x):
        return 0.0 if x > 0 else 2.0
    ax = abs(x)
    if ax < 1.5:
        r = 1.0 - _erf_series(ax)
    else:
        r = _erfc_continued_fraction(ax)
    return 2.0 - r if x < 0 else r


def q_function(x: float) -> float:
    """Upper-tail probability of the standard normal, Q(x) = erfc(x/sqrt(2))/2."""
    return 0.5 * erfc(float(x) / _SQRT_2)


def alice_ber(n_s: float, params: SystemParams) -> float:
    """Alice's homodyne bit-error rate Q(sqrt(2 M kappa eta (1-kappa_B) N_S / gamma))."""
    if n_s < 0:
        raise DomainError(f"source brightness must be >= 0, got {n_s!r}")
    arg = 2.0 * params.M * params.kappa * params.eta * (1.0 - params.kappa_B) * n_s / params.gamma
    return q_function(math.sqrt(arg))


def shannon_info(ber: float) -> float:
    """Shannon information of a binary symmetric channel with error rate ber."""
    if not 0.0 <= ber <= 1.0:
        raise DomainError(f"bit-error rate must be in [0,1], got {ber!r}")
    p = ber
    total = 1.0
    if 0.0 < p:
        total += p * math.log2(p)
    if p < 1.0:
        total += (1.0 - p) * math.log2(1.0 - p)
    return total


@dataclass(frozen=True)
class RatePoint:
    """One operating point of the key-rate model."""

    n_s: float
    ppb: float
    ber: float
    i_ab: float
    chi_ub: float
    ske: float
    skr: float


@dataclass(frozen=True)
class ConfidenceSpec:
    """Measured injection fraction with uncertainty and a sigma multiplier."""

    f_e_hat: float
    sigma: float
    n_sigma: int

    def __post_init__(self) -> None:
        if self.sigma < 0:
            raise ValidationError(f"sigma must be >= 0, got {self.sigma!r}")
        if int(self.n_sigma) != self.n_sigma or self.n_sigma < 1:
            raise ValidationError(f"n_sigma must be a positive integer, got {self.n_sigma!r}")


@dataclass(frozen=True)
class OptimizeResult:
    """Brightness maximizing the key rate; positive_key is False when the
    whole search range yields no positive rate."""

    n_s_opt: float
    point: RatePoint
    positive_key: bool


def skr_lower_bound(n_s: float, f_e: float, params: SystemParams) -> RatePoint:
    """Assemble the full rate point at one (N_S, f_E).

    SKE may be negative (no key possible); it is reported unclamped.
    """
    ber = alice_ber(n_s, params)
    i_ab = shannon_info(ber)
    chi = holevo_bound(params, n_s, f_e)
    ske = params.beta * i_ab - chi
    return RatePoint(
        n_s=n_s,
        ppb=params.M * n_s,
        ber=ber,
        i_ab=i_ab,
        chi_ub=chi,
        ske=ske,
        skr=ske * params.R,
    )


def _golden_max(fun, lo: float, hi: float, rel_tol: float) -> float:
    h = hi - lo
    c = lo + _INV_PHI2 * h
    d = lo + _INV_PHI * h
    yc = fun(c)
    yd = fun(d)
    while h > rel_tol * max(abs(lo), abs(hi)):
        h *= _INV_PHI
        if yc > yd:
            hi, d, yd = d, c, yc
            c = lo + _INV_PHI2 * h
            yc = fun(c)
        else:
            lo, c, yc = c, d, yd
            d = lo + _INV_PHI * h
            yd = fun(d)
    return 0.5 * (lo + hi)


def optimize_brightness(
    f_e: float,
    params: SystemParams,
    n_s_range: tuple[float, float] = (1e-5, 1.0),
    rel_tol: float = 1e-6,
    grid_points: int = 64,
) -> OptimizeResult:
    """Maximize the secret key rate over the source brightness.

    A log-spaced coarse grid locates the bracketing interval (the rate is
    unimodal in N_S: BER improvement against Holevo growth); golden-section
    search then refines the maximizer to rel_tol. An everywhere-negative
    range is not an error; the best point is returned flagged.
    """
    lo, hi = float(n_s_range[0]), float(n_s_range[1])
    if not 0.0 <= lo < hi:
        raise DomainError(f"need 0 <= lo < hi, got {n_s_range!r}")
    grid_lo = max(lo, 1e-12 * hi)
    grid = np.logspace(math.log10(grid_lo), math.log10(hi), grid_points)
    if lo < grid_lo:
        grid = np.concatenate(([lo], grid))

    def skr_at(x: float) -> float:
        return skr_lower_bound(x, f_e, params).skr

    vals = np.array([skr_at(x) for x in grid])
    best = int(np.argmax(vals))
    bracket_lo = grid[max(best - 1, 0)]
    bracket_hi = grid[min(best + 1, grid.size - 1)]
    n_s_opt = _golden_max(skr_at, float(bracket_lo), float(bracket_hi), rel_tol)
    point = skr_lower_bound(n_s_opt, f_e, params)
    if point.skr < vals[best]:
        # golden refinement can only improve on the grid seed; keep the seed otherwise
        n_s_opt = float(grid[best])
        point = skr_lower_bound(n_s_opt, f_e, params)
    return OptimizeResult(n_s_opt=n_s_opt, point=point, positive_key=point.skr > 0.0)


def pirandola_limit(kappa: float) -> float:
    """Repeaterless one-way key-rate limit -log2(1 - kappa), bits per mode."""
    if not 0.0 < kappa < 1.0:
        raise DomainError(f"kappa must be in (0,1), got {kappa!r}")
    return -math.log2(1.0 - kappa)


def brightness_from_power(p: float, hbar_omega0: float, w: float) -> float:
    """Photons per mode N_S = P / (hbar omega0 W) from measured power."""
    if p <= 0 or hbar_omega0 <= 0 or w <= 0:
        raise DomainError("power, photon energy, and bandwidth must all be positive")
    return p / (hbar_omega0 * w)


def f_e_upper_bound(spec: ConfidenceSpec) -> float:
    """Confidence-level upper bound clamp(f_e_hat + n_sigma * sigma, 0, 1).

    The measured value is used as-is (it may be negative, noise around zero)
    before the multiple of sigma is added; only the sum is clamped.
    """
    raw = spec.f_e_hat + spec.n_sigma * spec.sigma
    return min(max(raw, 0.0), 1.0 - 1e-12)


def eve_ber_passive(n_s: float, params: SystemParams) -> float:
    """Convenience re-export of the passive-attack Chernoff bound."""
    return chernoff_ber_passive(params, n_s)
