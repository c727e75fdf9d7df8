"""Klein-Gordon oscillator in the global monopole background."""

import math

import numpy as np

from .dirac import PROFILE_POINTS, PROFILE_TAIL, peak_location, power_gauss
from .model import Branch, EnergyLevel, RadialProfile, mu_kgo
from .oracle import adaptive_quad
from .specfun import DomainError, kummer_m, kummer_m_array, ln_gamma


def kgo_energy_squared(bg, ch, osc):
    a = bg.alpha
    return osc.mass**2 + 4.0 * osc.m_omega * a * a * (ch.n + mu_kgo(a, ch.l, ch.xi) + 1.25)


def kgo_energy(bg, ch, osc, branch=Branch.POSITIVE):
    """E = +/- sqrt(m^2 + 4 m omega alpha^2 (n + mu_bar + 5/4))."""
    branch = Branch(branch)
    e = math.sqrt(kgo_energy_squared(bg, ch, osc))
    return EnergyLevel(value=branch.sign * e, branch=branch, n=ch.n, channel=ch.tag)


def kgo_r(s, bg, ch, osc):
    """R with D = 1: (m omega)^(3/4) s^(mu_bar - 1/4) e^(-s/2) M(-n, 2 mu_bar + 1; s)."""
    mu = mu_kgo(bg.alpha, ch.l, ch.xi)
    m_part = kummer_m_array(-ch.n, 2.0 * mu + 1.0, s) if np.ndim(s) else kummer_m(-ch.n, 2.0 * mu + 1.0, s)
    return osc.m_omega**0.75 * power_gauss(mu - 0.25, s) * m_part


def kgo_norm_closed(bg, ch, osc=None):
    """D = sqrt(2 alpha (n + 2 mu_bar)! / n!) / (2 mu_bar)!, factorials as Gamma(x + 1)."""
    mu = mu_kgo(bg.alpha, ch.l, ch.xi)
    n = ch.n
    log_d = (0.5 * (math.log(2.0 * bg.alpha) + ln_gamma(n + 2.0 * mu + 1.0) - ln_gamma(n + 1.0))
             - ln_gamma(2.0 * mu + 1.0))
    return math.exp(log_d)


def kgo_norm_quadrature(bg, ch, osc, tol=1e-10):
    """D such that (1/alpha) * integral_0^inf r^2 R^2 dr = 1, by quadrature in s."""
    if not osc.omega > 0:
        raise DomainError("eigenfunctions need omega > 0")
    mw, a = osc.m_omega, bg.alpha

    def integrand(s):
        if s == 0.0:
            return 0.0
        r = kgo_r(s, bg, ch, osc)
        # r^2 dr = (s / m omega) ds / (2 sqrt(m omega s))
        return r * r * math.sqrt(s) / (2.0 * a * mw**1.5)

    return 1.0 / math.sqrt(adaptive_quad(integrand, 0.0, math.inf, tol=tol))


def default_grid(bg, ch, osc, points=PROFILE_POINTS):
    mu = mu_kgo(bg.alpha, ch.l, ch.xi)
    s_peak = peak_location(lambda x: kgo_r(x, bg, ch, osc), 4.0 * (ch.n + mu) + 30.0)
    return np.linspace(0.0, s_peak + PROFILE_TAIL, points)


def kgo_eigenfunction(bg, ch, osc, grid=None):
    """Normalized R sampled on an s-grid (default: 2001 points on [0, s_peak + 40])."""
    if not osc.omega > 0:
        raise DomainError("eigenfunctions need omega > 0")
    grid = default_grid(bg, ch, osc) if grid is None else np.asarray(grid, dtype=float)
    d = kgo_norm_quadrature(bg, ch, osc)
    values = d * kgo_r(grid, bg, ch, osc)
    return RadialProfile(s=grid, values=values, labels=("R",), norm_constant=d)


def kgo_levels(bg, ch, osc, n_max, branch=Branch.POSITIVE):
    return [kgo_energy(bg, ch.with_n(n), osc, branch) for n in range(n_max + 1)]
