"""
Hard-wall confinement at s0 = m omega r0^2.

Exact levels come from sign-change scans of the boundary-condition residuals
followed by Brent refinement; the asymptotic spectra are the large-nu cosine
approximations. The integer labelling the asymptotic levels is not tied to a
node count, so compare_levels aligns it to the exact root index by nearest
match and reports the offset together with the measured constant.
"""

from dataclasses import dataclass, field
from enum import Enum
import math
from typing import List

import numpy as np
from scipy import optimize

from .model import Branch, EnergyLevel, mu_dirac, mu_kgo
from .specfun import DomainError, kummer_m

RESIDUAL_TOL = 1e-10
SCAN_EXTRA_LEVELS = 3
MIN_SCAN_STEPS = 200
# exact levels used to fix the asymptotic index alignment, whatever the requested count
ALIGN_LEVELS = 11


class Condition(str, Enum):
    MIT = "mit"
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"


class Mode(str, Enum):
    EXACT = "exact"
    ASYMPTOTIC = "asymptotic"


# constant added to n + mu in the asymptotic formulas
ASYMPTOTIC_CONSTANT = {Condition.MIT: 1.25, Condition.DIRICHLET: 0.75, Condition.NEUMANN: 1.25}


@dataclass(frozen=True)
class HardWallSpec:
    r0: float
    condition: Condition = Condition.DIRICHLET
    mode: Mode = Mode.EXACT

    def __post_init__(self):
        if not (math.isfinite(self.r0) and self.r0 > 0):
            raise DomainError(f"wall radius must be positive, got {self.r0}")
        object.__setattr__(self, "condition", Condition(self.condition))
        object.__setattr__(self, "mode", Mode(self.mode))

    def s0(self, osc):
        return osc.m_omega * self.r0**2


class HardWallRootError(ArithmeticError):
    """Fewer roots than requested inside the scan window; `roots` holds those found."""

    def __init__(self, message, roots):
        self.roots = roots
        super().__init__(message)


def _require_omega(osc, wall):
    if not osc.omega > 0:
        raise DomainError("exact wall levels need omega > 0; use the asymptotic mode at omega = 0")
    if not wall.s0(osc) > 0:
        raise DomainError("s0 must be positive")


def mit_residual(energy, bg, ch, osc, wall):
    """Left-hand side of f(s0) - g(s0) = 0 written through M(a, b; s0) at general nu(E).

    The coefficient of M(a + 1, b + 1; s0) is a / b with a = mu - nu + 1/2,
    from d/ds M(a, b; s) = (a / b) M(a + 1, b + 1; s).
    """
    _require_omega(osc, wall)
    if energy == -osc.mass:
        raise DomainError("MIT residual is singular at E = -m")
    a_, k, m, mw = bg.alpha, ch.kappa, osc.mass, osc.m_omega
    s0 = wall.s0(osc)
    mu = mu_dirac(a_, k)
    nu = (energy**2 - m * m + mw * a_ * (a_ - 2.0 * k)) / (4.0 * mw * a_ * a_)
    a = mu - nu + 0.5
    b = 2.0 * mu + 1.0
    first = 2.0 * a_ * math.sqrt(mw * s0) / (energy + m) * a / b * kummer_m(a + 1.0, b + 1.0, s0)
    coeff = math.sqrt(mw) / (energy + m) * (2.0 * a_ * (mu + 0.25) + k) / math.sqrt(s0) - 1.0
    return first + coeff * kummer_m(a, b, s0)


def _kgo_ab(energy, bg, ch, osc):
    a_, mw = bg.alpha, osc.m_omega
    mu = mu_kgo(a_, ch.l, ch.xi)
    nu = (energy**2 - osc.mass**2 - 3.0 * mw * a_ * a_) / (4.0 * mw * a_ * a_)
    return mu, mu - nu + 0.5, 2.0 * mu + 1.0


def dirichlet_residual(energy, bg, ch, osc, wall):
    """s0^(mu_bar - 1/4) e^(-s0/2) M(mu_bar - nu_bar + 1/2, 2 mu_bar + 1; s0)."""
    _require_omega(osc, wall)
    s0 = wall.s0(osc)
    mu, a, b = _kgo_ab(energy, bg, ch, osc)
    return math.exp((mu - 0.25) * math.log(s0) - 0.5 * s0) * kummer_m(a, b, s0)


def neumann_residual(energy, bg, ch, osc, wall):
    """d/ds [s^(mu_bar - 1/4) e^(-s/2) M(a, b; s)] at s0."""
    _require_omega(osc, wall)
    s0 = wall.s0(osc)
    mu, a, b = _kgo_ab(energy, bg, ch, osc)
    p = mu - 0.25
    envelope = math.exp((p - 1.0) * math.log(s0) - 0.5 * s0)
    deriv = a / b * kummer_m(a + 1.0, b + 1.0, s0) if a != 0.0 else 0.0
    return envelope * ((p - 0.5 * s0) * kummer_m(a, b, s0) + s0 * deriv)


RESIDUALS = {
    Condition.MIT: mit_residual,
    Condition.DIRICHLET: dirichlet_residual,
    Condition.NEUMANN: neumann_residual,
}


def dirac_hardwall_asymptotic_squared(bg, ch, osc, wall, n):
    a, k, m = bg.alpha, ch.kappa, osc.mass
    x = n + mu_dirac(a, k) + ASYMPTOTIC_CONSTANT[Condition.MIT]
    return m * m - osc.m_omega * a * (a - 2.0 * k) + (a * math.pi / wall.r0) ** 2 * x * x


def dirac_hardwall_asymptotic(bg, ch, osc, wall, n, branch=Branch.POSITIVE):
    """Large-nu MIT-bag spectrum; n may be any integer (see compare_levels)."""
    e2 = dirac_hardwall_asymptotic_squared(bg, ch, osc, wall, n)
    if e2 < 0:
        raise DomainError(f"negative E^2 = {e2:.6g} in the asymptotic MIT spectrum")
    branch = Branch(branch)
    return EnergyLevel(branch.sign * math.sqrt(e2), branch, n, f"mit:{ch.tag}")


def kgo_hardwall_asymptotic_squared(bg, ch, osc, wall, n, condition=None):
    condition = Condition(condition or wall.condition)
    if condition is Condition.MIT:
        raise ValueError("the MIT condition applies to the Dirac oscillator only")
    a, m = bg.alpha, osc.mass
    x = n + mu_kgo(a, ch.l, ch.xi) + ASYMPTOTIC_CONSTANT[condition]
    return m * m + 3.0 * osc.m_omega * a * a + (a * math.pi / wall.r0) ** 2 * x * x


def kgo_hardwall_asymptotic(bg, ch, osc, wall, n, condition=None, branch=Branch.POSITIVE):
    """Large-nu_bar Dirichlet (constant 3/4) or Neumann (5/4) spectrum."""
    condition = Condition(condition or wall.condition)
    e2 = kgo_hardwall_asymptotic_squared(bg, ch, osc, wall, n, condition)
    branch = Branch(branch)
    return EnergyLevel(branch.sign * math.sqrt(e2), branch, n, f"{condition.value}:{ch.tag}")


def asymptotic_squared(bg, ch, osc, wall, n):
    if wall.condition is Condition.MIT:
        return dirac_hardwall_asymptotic_squared(bg, ch, osc, wall, n)
    return kgo_hardwall_asymptotic_squared(bg, ch, osc, wall, n)


def _mu(bg, ch, condition):
    if condition is Condition.MIT:
        return mu_dirac(bg.alpha, ch.kappa)
    return mu_kgo(bg.alpha, ch.l, ch.xi)


def _scan_roots(fun, e2_lo, e2_hi, step, count):
    n_steps = max(2, int(math.ceil((e2_hi - e2_lo) / step)))
    energies = np.sqrt(np.linspace(e2_lo, e2_hi, n_steps + 1))
    roots = []
    prev_e, prev_v = energies[0], fun(energies[0])
    for e in energies[1:]:
        v = fun(e)
        if prev_v == 0.0:
            roots.append(prev_e)
        elif prev_v * v < 0:
            roots.append(optimize.brentq(fun, prev_e, e, xtol=1e-15, rtol=8.9e-16, maxiter=200))
        if len(roots) == count:
            break
        prev_e, prev_v = e, v
    return roots


def exact_levels(bg, ch, osc, wall, count, e_scan_max=None):
    """Lowest `count` roots with E > m of the residual selected by wall.condition."""
    if count < 1:
        raise ValueError("count must be at least 1")
    _require_omega(osc, wall)
    condition = wall.condition
    residual = RESIDUALS[condition]
    fun = lambda e: residual(e, bg, ch, osc, wall)
    m = osc.mass

    x0 = _mu(bg, ch, condition) + ASYMPTOTIC_CONSTANT[condition]
    gap = (bg.alpha * math.pi / wall.r0) ** 2 * (2.0 * x0 + 1.0)
    e2_lo = m * m * (1.0 + 1e-12)
    if e_scan_max is None:
        e2_hi = asymptotic_squared(bg, ch, osc, wall, count + SCAN_EXTRA_LEVELS)
    else:
        e2_hi = e_scan_max**2
    if not e2_hi > e2_lo:
        raise HardWallRootError("scan window (m, E_scan_max] is empty", [])
    # half the smallest predicted gap, and never fewer than MIN_SCAN_STEPS steps
    step = min(0.5 * gap, (e2_hi - e2_lo) / MIN_SCAN_STEPS)

    roots = _scan_roots(fun, e2_lo, e2_hi, step, count)
    tag = f"{condition.value}:{ch.tag}"
    levels = [EnergyLevel(e, Branch.POSITIVE, i, tag) for i, e in enumerate(roots)]
    for level in levels:
        r = fun(level.value)
        if not abs(r) <= RESIDUAL_TOL:
            raise HardWallRootError(
                f"residual {r:.3g} at root {level.value!r} exceeds {RESIDUAL_TOL}", levels)
    if len(levels) < count:
        raise HardWallRootError(
            f"found {len(levels)} of {count} {condition.value} levels below E = {math.sqrt(e2_hi):.6g}",
            levels)
    return levels


def mit_exact_levels(bg, ch, osc, wall, count, e_scan_max=None):
    return exact_levels(bg, ch, osc, _with_condition(wall, Condition.MIT), count, e_scan_max)


def dirichlet_exact_levels(bg, ch, osc, wall, count, e_scan_max=None):
    return exact_levels(bg, ch, osc, _with_condition(wall, Condition.DIRICHLET), count, e_scan_max)


def neumann_exact_levels(bg, ch, osc, wall, count, e_scan_max=None):
    return exact_levels(bg, ch, osc, _with_condition(wall, Condition.NEUMANN), count, e_scan_max)


def _with_condition(wall, condition):
    if wall.condition is condition:
        return wall
    return HardWallSpec(wall.r0, condition, wall.mode)


@dataclass
class WallComparison:
    """Exact roots against the aligned asymptotic formula.

    asymptotic[i] uses integer n = i + offset. measured_constant[i] is the
    value c for which the asymptotic formula with n = i reproduces exact[i];
    formula_constant is the c printed in the formula.
    """

    condition: Condition
    exact: List[float]
    asymptotic: List[float]
    rel_dev: List[float]
    offset: int
    formula_constant: float
    measured_constant: List[float] = field(default_factory=list)


def align_offset(exact, asymptotic_energy, search=3):
    """Integer shift d minimizing |E_asym(top + d) - E_exact[top]| at the top exact index."""
    top = len(exact) - 1
    candidates = []
    for d in range(-search, search + 1):
        try:
            candidates.append((abs(asymptotic_energy(top + d) - exact[top]), d))
        except DomainError:
            continue
    return min(candidates)[1]


def compare_levels(bg, ch, osc, wall, count):
    """Exact levels, aligned asymptotic levels, relative deviations and measured constant."""
    levels = exact_levels(bg, ch, osc, wall, max(count, ALIGN_LEVELS))
    asym = lambda n: math.sqrt(asymptotic_squared(bg, ch, osc, wall, n))
    offset = align_offset([lvl.value for lvl in levels], asym)
    exact = [lvl.value for lvl in levels[:count]]
    asymptotic = [asym(i + offset) for i in range(count)]
    rel_dev = [abs(e - a) / e for e, a in zip(exact, asymptotic)]

    # invert E^2 = base + (alpha pi / r0)^2 (n + mu + c)^2 for c at n = i
    base = asymptotic_squared(bg, ch, osc, wall, -_mu(bg, ch, wall.condition)
                              - ASYMPTOTIC_CONSTANT[wall.condition])
    scale = bg.alpha * math.pi / wall.r0
    mu = _mu(bg, ch, wall.condition)
    measured = [math.sqrt(max(e * e - base, 0.0)) / scale - i - mu for i, e in enumerate(exact)]
    return WallComparison(
        condition=wall.condition,
        exact=exact,
        asymptotic=asymptotic,
        rel_dev=rel_dev,
        offset=offset,
        formula_constant=ASYMPTOTIC_CONSTANT[wall.condition],
        measured_constant=measured,
    )
