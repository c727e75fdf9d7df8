"""
Independent numerical ground truth for the closed-form results.

Nothing here evaluates a hypergeometric function or a closed-form spectrum:

* fd_eigenvalues discretizes u'' + (lam - V(r)) u = 0 with second-order
  finite differences and extracts eigenvalues of the symmetric tridiagonal
  matrix by Sturm-sequence bisection (LAPACK stebz).
* shoot_dirac_mit integrates the coupled first-order Dirac system outward
  from the regular small-r solution and locates f(r0) = g(r0).
* adaptive_quad integrates exponentially decaying integrands on [a, inf).
"""

from dataclasses import dataclass
import math
from typing import Callable, Optional

import numpy as np
from scipy import integrate, optimize
from scipy.linalg import eigh_tridiagonal

from .model import mu_dirac

DECAY_WIDTHS = 12.0
R_MIN_FRACTION = 1e-10
SHOOT_START_FRACTION = 1e-6


class QuadratureError(ArithmeticError):
    def __init__(self, message, estimate, error):
        self.estimate = estimate
        self.error = error
        super().__init__(f"{message} (estimate {estimate:.12g}, error {error:.3g})")


class BracketError(ValueError):
    """Bracket does not contain a sign change."""


@dataclass(frozen=True)
class RadialProblem:
    """u'' + (lam - V(r)) u = 0 on [r_min, r_max] with u(r_min) = 0.

    boundary at r_max: "decay" and "dirichlet" impose u = 0 (decay relies on
    r_max lying deep in the classically forbidden region); "neumann" imposes
    u'(r_max) = robin * u(r_max). to_energy maps an eigenvalue lam to E.
    """

    potential: Callable[[np.ndarray], np.ndarray]
    to_energy: Callable[[float], float]
    r_max: Optional[float] = None
    r_min: Optional[float] = None
    boundary: str = "decay"
    robin: float = 0.0
    decay_length: float = 1.0
    name: str = ""

    def __post_init__(self):
        if self.boundary not in ("decay", "dirichlet", "neumann"):
            raise ValueError(f"unknown boundary kind {self.boundary!r}")
        if self.boundary != "decay" and self.r_max is None:
            raise ValueError("a wall boundary needs an explicit r_max")


def dirac_problem(bg, ch, osc, r_max=None, boundary="decay"):
    """Second-order equation for the upper Dirac component f(r).

    V = kappa(kappa + alpha) / (alpha^2 r^2) + (m omega r)^2 and
    lam = [E^2 - m^2 + m omega alpha (alpha - 2 kappa)] / alpha^2.
    """
    a, k, m, mw = bg.alpha, ch.kappa, osc.mass, osc.m_omega
    centrifugal = k * (k + a) / (a * a)

    def to_energy(lam):
        return math.sqrt(m * m + a * a * lam - mw * a * (a - 2.0 * k))

    return RadialProblem(
        potential=lambda r: centrifugal / r**2 + (mw * r) ** 2,
        to_energy=to_energy,
        r_max=r_max,
        boundary=boundary,
        robin=0.0,
        decay_length=1.0 / math.sqrt(mw) if mw > 0 else 1.0,
        name=f"dirac kappa={k:g} alpha={a:g}",
    )


def kgo_problem(bg, ch, osc, r_max=None, boundary="decay"):
    """Klein-Gordon radial equation written for u = r R(r).

    V = [2 xi (1 - alpha^2) + l(l+1)] / (alpha^2 r^2) + (m omega r)^2 and
    lam = (E^2 - m^2 - 3 m omega alpha^2) / alpha^2. A Neumann wall on R
    becomes u'(r0) = u(r0) / r0.
    """
    a, m, mw = bg.alpha, osc.mass, osc.m_omega
    centrifugal = (2.0 * ch.xi * (1.0 - a * a) + ch.l * (ch.l + 1)) / (a * a)

    def to_energy(lam):
        return math.sqrt(m * m + 3.0 * mw * a * a + a * a * lam)

    return RadialProblem(
        potential=lambda r: centrifugal / r**2 + (mw * r) ** 2,
        to_energy=to_energy,
        r_max=r_max,
        boundary=boundary,
        robin=1.0 / r_max if boundary == "neumann" else 0.0,
        decay_length=1.0 / math.sqrt(mw) if mw > 0 else 1.0,
        name=f"kgo l={ch.l} xi={ch.xi:g} alpha={a:g}",
    )


def fd_operator(problem, grid_points, r_max=None):
    """Grid and symmetric tridiagonal bands (diag, offdiag) of -d2/dr2 + V."""
    r_max = problem.r_max if r_max is None else r_max
    r_min = problem.r_min if problem.r_min is not None else r_max * R_MIN_FRACTION
    if problem.boundary == "neumann":
        # unknowns at interior nodes plus the wall node
        r = np.linspace(r_min, r_max, grid_points + 1)[1:]
    else:
        r = np.linspace(r_min, r_max, grid_points + 2)[1:-1]
    h = r[1] - r[0]
    diag = 2.0 / h**2 + problem.potential(r)
    off = np.full(r.size - 1, -1.0 / h**2)
    if problem.boundary == "neumann":
        # ghost node u_{N+1} = u_{N-1} + 2 h robin u_N; the wall row is symmetrized
        # by rescaling the wall unknown by 1/sqrt(2)
        diag[-1] -= 2.0 * problem.robin / h
        off[-1] *= math.sqrt(2.0)
    return r, diag, off


def _lowest(diag, off, count):
    return eigh_tridiagonal(
        diag, off, eigvals_only=True, select="i", select_range=(0, count - 1),
        lapack_driver="stebz",
    )


def _turning_point(problem, lam, r_hi):
    r = np.linspace(r_hi * 1e-3, r_hi, 4000)
    outside = np.nonzero(problem.potential(r) > lam)[0]
    outside = outside[r[outside] > r[np.argmin(problem.potential(r))]]
    return r[outside[0]] if outside.size else r_hi


def fd_eigenvalues(problem, grid_points=4000, count=5):
    """Lowest `count` eigenvalues lam of the finite-difference operator.

    For boundary "decay" the domain is [r_max * 1e-10, r_max] with
    r_max = r_turn + 12 decay lengths, r_turn being the classical turning
    point of the highest requested level; r_max is enlarged until stable.
    """
    if grid_points < 500:
        raise ValueError("grid_points must be at least 500")
    if problem.boundary != "decay":
        _, diag, off = fd_operator(problem, grid_points)
        return _lowest(diag, off, count)

    width = DECAY_WIDTHS * problem.decay_length
    r_max = problem.r_max or 2.0 * width
    for _ in range(20):
        _, diag, off = fd_operator(problem, grid_points, r_max=r_max)
        lam = _lowest(diag, off, count)
        needed = _turning_point(problem, lam[-1], r_max) + width
        if needed <= r_max * 1.001:
            return lam
        r_max = needed * 1.05
    raise ArithmeticError(f"finite-difference domain did not stabilize for {problem.name}")


def richardson(problem, grid_points, count=5):
    """Eigenvalues on N and 2N points and their h^2 Richardson extrapolation."""
    coarse = fd_eigenvalues(problem, grid_points, count)
    fine = fd_eigenvalues(problem, 2 * grid_points, count)
    return coarse, fine, fine + (fine - coarse) / 3.0


def fd_energies(problem, grid_points=4000, count=5, extrapolate=False):
    """Energies from the FD eigenvalues; extrapolate=True uses the N/2N Richardson value.

    Channels whose regular solution starts like r^gamma with gamma close to 1
    carry a large h^2 error constant (a few 1e-5 at N = 4000); the
    extrapolated value removes it.
    """
    if extrapolate:
        lam = richardson(problem, grid_points, count)[2]
    else:
        lam = fd_eigenvalues(problem, grid_points, count)
    return [problem.to_energy(x) for x in lam]


def rayleigh_quotient(problem, u, r_max, grid_points=4000, extrapolate=False):
    """<u, H u> / <u, u> with H the finite-difference operator on [.., r_max]; u is a callable of r.

    extrapolate=True combines grid_points and 2 * grid_points as in richardson.
    """
    if extrapolate:
        coarse = rayleigh_quotient(problem, u, r_max, grid_points)
        fine = rayleigh_quotient(problem, u, r_max, 2 * grid_points)
        return fine + (fine - coarse) / 3.0
    r, diag, off = fd_operator(problem, grid_points, r_max=r_max)
    v = u(r)
    hv = diag * v
    hv[:-1] += off * v[1:]
    hv[1:] += off * v[:-1]
    return float(v @ hv / (v @ v))


def _dirac_rhs(energy, alpha, kappa, mass, m_omega):
    def rhs(r, y):
        f, g = y
        df = ((energy + mass) * g - kappa * f / r - m_omega * alpha * r * f) / alpha
        dg = (-(energy - mass) * f + kappa * g / r + m_omega * alpha * r * g) / alpha
        return [df, dg]
    return rhs


def dirac_wall_mismatch(energy, bg, ch, osc, r0, rtol=1e-11):
    """(f - g) / |(f, g)| at r0 for the regular solution of the first-order system."""
    a, k, m, mw = bg.alpha, ch.kappa, osc.mass, osc.m_omega
    r_start = r0 * SHOOT_START_FRACTION
    # regular small-r behaviour: f ~ r^(2 mu + 1/2), i.e. s^(mu + 1/4)
    gamma = 2.0 * mu_dirac(a, k) + 0.5
    if 2.0 * k + a > 0:
        g0 = r_start ** (gamma - 1.0)
        f0 = (energy + m) / (2.0 * k + a) * r_start**gamma
    else:
        f0 = r_start**gamma
        g0 = -(energy - m) / (a - 2.0 * k) * r_start ** (gamma + 1.0)
    sol = integrate.solve_ivp(
        _dirac_rhs(energy, a, k, m, mw), (r_start, r0), [f0, g0],
        method="DOP853", rtol=rtol, atol=1e-300,
    )
    if not sol.success:
        raise ArithmeticError(f"Dirac shooting failed: {sol.message}")
    f, g = sol.y[:, -1]
    return (f - g) / math.hypot(f, g)


def shoot_dirac_mit(bg, ch, osc, wall, energy_bracket, rtol=1e-11):
    """MIT-bag level in energy_bracket from direct integration of the Dirac system."""
    r0 = wall.r0
    lo, hi = energy_bracket
    fun = lambda e: dirac_wall_mismatch(e, bg, ch, osc, r0, rtol=rtol)
    f_lo, f_hi = fun(lo), fun(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if f_lo * f_hi > 0:
        raise BracketError(f"no sign change of f(r0) - g(r0) on [{lo}, {hi}]")
    return optimize.brentq(fun, lo, hi, xtol=1e-13 * abs(hi), rtol=4 * np.finfo(float).eps)


def adaptive_quad(f, a, b=math.inf, tol=1e-10, chunk=8.0, max_chunks=500):
    """Integral of f over [a, b] with relative error at most tol.

    Infinite ranges are cut into chunks of width `chunk`; integration stops
    once the integrand has decayed so that the tail bound 2 |f(x)| (valid
    for polynomial times e^(-s) integrands past their last extremum) and the
    last chunk are both below 1e-3 tol of the running total.
    """
    def piece(lo, hi):
        value, err = integrate.quad(f, lo, hi, epsabs=0.0, epsrel=tol * 1e-2, limit=400)
        return value, err

    if math.isfinite(b):
        value, err = piece(a, b)
        if not err <= tol * abs(value):
            raise QuadratureError("tolerance not reached", value, err)
        return value

    total, err_total = 0.0, 0.0
    lo = a
    for _ in range(max_chunks):
        hi = lo + chunk
        value, err = piece(lo, hi)
        total += value
        err_total += err
        tail = 2.0 * abs(f(hi))
        small = 1e-3 * tol * abs(total)
        if total != 0.0 and abs(value) <= small and tail <= small:
            err_total += tail
            if not err_total <= tol * abs(total):
                raise QuadratureError("tolerance not reached", total, err_total)
            return total
        lo = hi
    raise QuadratureError("integrand did not decay within the chunk budget", total, err_total)
