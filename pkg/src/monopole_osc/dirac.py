"""Dirac oscillator in the global monopole background: spectrum, radial spinor components, normalization."""

import math

import numpy as np

from .model import (
    Branch,
    EnergyLevel,
    RadialProfile,
    mu_dirac,
)
from .oracle import adaptive_quad
from .specfun import DomainError, kummer_m, kummer_m_array, ln_gamma

PROFILE_POINTS = 2001
PROFILE_TAIL = 40.0


class SingularCaseError(ArithmeticError):
    """The lower component has a vanishing denominator E + m."""


def dirac_energy_squared(bg, ch, osc):
    a, k, m = bg.alpha, ch.kappa, osc.mass
    shift = (math.sqrt(a * a + 4.0 * k * (k + a)) + 2.0 * k) / (4.0 * a) + 0.25
    return m * m + 4.0 * osc.m_omega * a * a * (ch.n + shift)


def dirac_energy(bg, ch, osc, branch=Branch.POSITIVE):
    """E = +/- sqrt(m^2 + 4 m omega alpha^2 (n + (sqrt(alpha^2 + 4 kappa(kappa + alpha)) + 2 kappa)/(4 alpha) + 1/4))."""
    e2 = dirac_energy_squared(bg, ch, osc)
    if e2 < 0:
        raise DomainError(f"negative E^2 = {e2:.6g} for {ch.tag} at alpha={bg.alpha}")
    branch = Branch(branch)
    return EnergyLevel(value=branch.sign * math.sqrt(e2), branch=branch, n=ch.n, channel=ch.tag)


def power_gauss(p, s):
    """s^p e^(-s/2) evaluated in log space (no overflow for large s); accepts arrays."""
    s = np.asarray(s, dtype=float)
    with np.errstate(divide="ignore"):
        out = np.exp(p * np.log(np.where(s > 0, s, 1.0)) - 0.5 * s)
    if np.any(s == 0):
        out = np.where(s == 0, 0.0 if p > 0 else (1.0 if p == 0 else np.inf), out)
    return out if out.ndim else float(out)


def _kummer(a, b, s):
    return kummer_m_array(a, b, s) if np.ndim(s) else kummer_m(a, b, s)


def _lower_denominator(energy, mass):
    denom = energy + mass
    if abs(denom) <= 1e-12 * mass:
        raise SingularCaseError("E = -m makes the lower component singular")
    return denom


def dirac_f(s, bg, ch, osc):
    """Upper component with C = 1: (m omega)^(1/4) s^(mu+1/4) e^(-s/2) M(-n, 2mu+1; s)."""
    mu = mu_dirac(bg.alpha, ch.kappa)
    return osc.m_omega**0.25 * power_gauss(mu + 0.25, s) * _kummer(-ch.n, 2.0 * mu + 1.0, s)


def dirac_g(s, bg, ch, osc, energy):
    """Lower component with C = 1; the M(1-n, ...) term is absent for n = 0."""
    a, k, n = bg.alpha, ch.kappa, ch.n
    mu = mu_dirac(a, k)
    b = 2.0 * mu + 1.0
    denom = _lower_denominator(energy, osc.mass)
    bracket = (a + 2.0 * k + 4.0 * a * mu) * _kummer(-n, b, s)
    if n >= 1:
        bracket = bracket - 4.0 * n * a / b * np.multiply(s, _kummer(1 - n, b + 1.0, s))
    return osc.m_omega**0.75 * power_gauss(mu - 0.25, s) / (2.0 * denom) * bracket


def _require_positive_omega(osc):
    if not osc.omega > 0:
        raise DomainError("eigenfunctions need omega > 0 (s = m omega r^2 degenerates at omega = 0)")


def dirac_norm_quadrature(bg, ch, osc, branch=Branch.POSITIVE, tol=1e-10):
    """C such that (1/alpha) * integral_0^inf (f^2 + g^2) dr = 1, by quadrature in s."""
    _require_positive_omega(osc)
    energy = dirac_energy(bg, ch, osc, branch).value
    _lower_denominator(energy, osc.mass)
    mw, a = osc.m_omega, bg.alpha

    def integrand(s):
        if s == 0.0:
            return 0.0
        f = dirac_f(s, bg, ch, osc)
        g = dirac_g(s, bg, ch, osc, energy)
        return (f * f + g * g) / (2.0 * a * math.sqrt(mw * s))

    integral = adaptive_quad(integrand, 0.0, math.inf, tol=tol)
    return 1.0 / math.sqrt(integral)


def dirac_norm_closed(bg, ch, osc):
    """Closed-form C with factorials of real arguments taken as Gamma(x + 1).

    The middle bracket term carries a Kronecker factor that removes it at
    n = 0. Reported alongside the quadrature constant, not trusted over it.
    """
    a, k, n, m = bg.alpha, ch.kappa, ch.n, osc.mass
    mu = mu_dirac(a, k)
    if not 2.0 * mu > 0:
        raise DomainError("closed-form constant needs 2 mu > 0 for (2 mu - 1)!")
    energy = dirac_energy(bg, ch, osc, Branch.POSITIVE).value
    big_a = a + 2.0 * k + 4.0 * a * mu
    fact_n = math.exp(ln_gamma(n + 1.0))
    fact_2mu = math.exp(ln_gamma(2.0 * mu + 1.0))
    fact_2mu_m1 = math.exp(ln_gamma(2.0 * mu))
    delta = 1.0 if n >= 1 else 0.0
    bracket = (
        fact_n * big_a**2 * fact_2mu_m1
        - 8.0 * a * fact_n * big_a * fact_2mu * delta
        + 16.0 * n * a * a * fact_n * fact_2mu * (2.0 * mu + 1.0) ** 2
    )
    braces = fact_n * fact_2mu + osc.m_omega / (4.0 * (energy + m) ** 2) * bracket
    prefactor = 2.0 * a * math.exp(ln_gamma(n + 2.0 * mu + 1.0) - ln_gamma(2.0 * mu + 1.0))
    return math.sqrt(prefactor / braces)


def peak_location(fun, s_hi):
    """Grid estimate of argmax |fun| on [0, s_hi]."""
    s = np.linspace(0.0, s_hi, 4001)
    return float(s[np.argmax(np.abs(fun(s)))])


def default_grid(bg, ch, osc, points=PROFILE_POINTS):
    mu = mu_dirac(bg.alpha, ch.kappa)
    s_peak = peak_location(lambda x: dirac_f(x, bg, ch, osc), 4.0 * (ch.n + mu) + 30.0)
    return np.linspace(0.0, s_peak + PROFILE_TAIL, points)


def dirac_eigenfunctions(bg, ch, osc, grid=None, branch=Branch.POSITIVE):
    """Normalized (f, g) sampled on an s-grid (default: 2001 points on [0, s_peak + 40])."""
    _require_positive_omega(osc)
    energy = dirac_energy(bg, ch, osc, branch).value
    _lower_denominator(energy, osc.mass)
    grid = default_grid(bg, ch, osc) if grid is None else np.asarray(grid, dtype=float)
    c = dirac_norm_quadrature(bg, ch, osc, branch)
    f = dirac_f(grid, bg, ch, osc)
    g = dirac_g(grid, bg, ch, osc, energy)
    return RadialProfile(s=grid, values=c * np.vstack([f, g]), labels=("f", "g"), norm_constant=c)


def dirac_levels(bg, ch, osc, n_max, branch=Branch.POSITIVE):
    """Levels n = 0..n_max of one channel."""
    return [dirac_energy(bg, ch.with_n(n), osc, branch) for n in range(n_max + 1)]


__all__ = [
    "SingularCaseError",
    "dirac_energy",
    "dirac_energy_squared",
    "dirac_eigenfunctions",
    "dirac_f",
    "dirac_g",
    "dirac_levels",
    "dirac_norm_closed",
    "dirac_norm_quadrature",
]
