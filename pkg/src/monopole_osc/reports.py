"""
Tabular data behind the CLI: normalization tables, figure curves, and the
oracle-equivalence verification report. Every function returns a list of
row dicts (or a report dict) so that formatting stays in the CLI.
"""

import math
import time

import numpy as np

from . import oracle
from .dirac import (
    dirac_eigenfunctions,
    dirac_energy,
    dirac_f,
    dirac_g,
    dirac_norm_closed,
    dirac_norm_quadrature,
)
from .hardwall import (
    Condition,
    HardWallSpec,
    compare_levels,
    dirac_hardwall_asymptotic,
    exact_levels,
    kgo_hardwall_asymptotic,
)
from .kgo import kgo_energy, kgo_eigenfunction, kgo_norm_closed, kgo_norm_quadrature, kgo_r
from .model import (
    Branch,
    DiracChannel,
    KgoChannel,
    MonopoleBackground,
    Oscillator,
    count_nodes,
    mu_dirac,
    mu_kgo,
)

TABLE_ALPHAS = (1.0, 0.8, 0.6)
TABLE_NS = (0, 1, 2)

# printed normalization constants, keyed by (alpha, n); l = 0, kappa = 1, omega/m = 0.5
PUBLISHED_C = {
    (1.0, 0): 1.1053, (0.8, 0): 0.9132, (0.6, 0): 0.6669,
    (1.0, 1): 1.7491, (0.8, 1): 1.3963, (0.6, 1): 0.9523,
    (1.0, 2): 2.0035, (0.8, 2): 1.5911, (0.6, 2): 1.0702,
}
# l = xi = 0; rows labelled 1, 2, 3 in print correspond to n = 0, 1, 2
PUBLISHED_D = {
    (1.0, 0): 1.5022, (0.8, 0): 1.3436, (0.6, 0): 1.1636,
    (1.0, 1): 1.8398, (0.8, 1): 1.6456, (0.6, 1): 1.4251,
    (1.0, 2): 2.0570, (0.8, 2): 1.8398, (0.6, 2): 1.5934,
}


def table_rows(table_id):
    if table_id == 1:
        osc = Oscillator(1.0, 0.5)
        rows = []
        for n in TABLE_NS:
            for alpha in TABLE_ALPHAS:
                bg, ch = MonopoleBackground(alpha), DiracChannel(kappa=1.0, n=n, l=0)
                closed = dirac_norm_closed(bg, ch, osc)
                quad = dirac_norm_quadrature(bg, ch, osc)
                published = PUBLISHED_C[(alpha, n)]
                rows.append({
                    "alpha": alpha, "n": n,
                    "c_closed": closed, "c_quadrature": quad, "c_published": published,
                    "closed_vs_quadrature": (closed - quad) / quad,
                    "deviation_from_published": (quad - published) / published,
                })
        return rows
    if table_id == 2:
        osc = Oscillator(1.0, 0.5)
        rows = []
        for n in TABLE_NS:
            for alpha in TABLE_ALPHAS:
                bg, ch = MonopoleBackground(alpha), KgoChannel(l=0, xi=0.0, n=n)
                closed = kgo_norm_closed(bg, ch)
                published = PUBLISHED_D[(alpha, n)]
                rows.append({
                    "alpha": alpha, "n": n,
                    "d_closed": closed, "d_quadrature": kgo_norm_quadrature(bg, ch, osc),
                    "d_published": published,
                    "deviation_from_published": (closed - published) / published,
                })
        return rows
    raise ValueError(f"unknown table id {table_id}; expected 1 or 2")


# ---------------------------------------------------------------- figures

FIGURES = {
    # name: (description, panels)
    "dirac-energy": "Dirac oscillator energies vs omega/m (kappa = 1/2)",
    "kgo-energy": "Klein-Gordon oscillator energies vs omega/m (l = xi = 0)",
    "dirac-profile": "normalized f(s), g(s) (kappa = 1/2, m = omega = 1)",
    "kgo-profile": "normalized R(s) (l = 1, xi = 0, m = omega = 1)",
    "mit-wall": "MIT-bag levels (m r0 = 2.5, kappa = 5/2)",
    "kgo-wall": "Dirichlet and Neumann levels (m r0 = 2.5, l = 1, xi = 0)",
}
OMEGA_GRID = np.linspace(0.0, 3.0, 31)
WALL_OMEGA_GRID = np.linspace(0.1, 3.0, 30)
ALPHA_GRID = np.linspace(0.4, 1.0, 13)
WALL_R0 = 2.5
WALL_OMEGA = 2.5


def _energy_curves(energy_fn, make_channel, panel):
    if panel == "left":
        combos = [(a, 1) for a in (1.0, 0.75, 0.5)]
    else:
        combos = [(0.5, n) for n in range(4)]
    rows = []
    for alpha, n in combos:
        bg, ch = MonopoleBackground(alpha), make_channel(n)
        for w in OMEGA_GRID:
            osc = Oscillator(1.0, float(w))
            rows.append({
                "omega_over_m": float(w), "alpha": alpha, "n": n,
                "energy_pos": energy_fn(bg, ch, osc, Branch.POSITIVE).value,
                "energy_neg": energy_fn(bg, ch, osc, Branch.NEGATIVE).value,
            })
    return rows


def _profile_curves(kind, panel, points=401):
    osc = Oscillator(1.0, 1.0)
    if kind == "dirac":
        combos = [(a, 1) for a in (1.0, 0.75, 0.5)] if panel == "left" else [(0.5, n) for n in range(4)]
    else:
        combos = [(a, 1) for a in (1.0, 0.8, 0.6)] if panel == "left" else [(0.8, n) for n in range(4)]
    grid = np.linspace(0.0, 40.0, points)
    rows = []
    for alpha, n in combos:
        bg = MonopoleBackground(alpha)
        if kind == "dirac":
            prof = dirac_eigenfunctions(bg, DiracChannel(kappa=0.5, n=n), osc, grid)
            for s, f, g in zip(grid, prof["f"], prof["g"]):
                rows.append({"s": float(s), "alpha": alpha, "n": n, "f": f, "g": g})
        else:
            prof = kgo_eigenfunction(bg, KgoChannel(l=1, xi=0.0, n=n), osc, grid)
            for s, r in zip(grid, prof["R"]):
                rows.append({"s": float(s), "alpha": alpha, "n": n, "R": r})
    return rows


def _wall_rows(conditions, make_channel, panel, count=4):
    rows = []
    if panel == "left":
        points = [(1.0, float(w)) for w in WALL_OMEGA_GRID]
        points += [(a, float(w)) for a in (0.8, 0.6) for w in WALL_OMEGA_GRID]
        levels = (1,)
    else:
        points = [(float(a), WALL_OMEGA) for a in ALPHA_GRID]
        levels = tuple(range(count))
    for condition in conditions:
        wall = HardWallSpec(WALL_R0, condition)
        for alpha, w in points:
            bg, osc = MonopoleBackground(alpha), Oscillator(1.0, w)
            exact = exact_levels(bg, make_channel(0), osc, wall, max(levels) + 1)
            for n in levels:
                ch = make_channel(n)
                if condition is Condition.MIT:
                    asym = dirac_hardwall_asymptotic(bg, ch, osc, wall, n).value
                else:
                    asym = kgo_hardwall_asymptotic(bg, ch, osc, wall, n, condition).value
                rows.append({
                    "condition": condition.value, "omega_over_m": w, "alpha": alpha, "n": n,
                    "energy_exact": exact[n].value, "energy_asymptotic": asym,
                })
    return rows


def figure_rows(name, panel):
    if panel not in ("left", "right"):
        raise ValueError(f"panel must be left or right, got {panel!r}")
    if name == "dirac-energy":
        return _energy_curves(dirac_energy, lambda n: DiracChannel(kappa=0.5, n=n), panel)
    if name == "kgo-energy":
        return _energy_curves(kgo_energy, lambda n: KgoChannel(l=0, xi=0.0, n=n), panel)
    if name == "dirac-profile":
        return _profile_curves("dirac", panel)
    if name == "kgo-profile":
        return _profile_curves("kgo", panel)
    if name == "mit-wall":
        return _wall_rows((Condition.MIT,), lambda n: DiracChannel(kappa=2.5, n=n), panel)
    if name == "kgo-wall":
        return _wall_rows((Condition.DIRICHLET, Condition.NEUMANN),
                          lambda n: KgoChannel(l=1, xi=0.0, n=n), panel)
    raise ValueError(f"unknown figure {name!r}; expected one of {sorted(FIGURES)}")


# ---------------------------------------------------------------- verification

REPORT_SCHEMA = {
    "type": "object",
    "required": ["suite", "passed", "n_checks", "n_failed", "elapsed_s", "checks"],
    "properties": {
        "suite": {"enum": ["quick", "full"]},
        "passed": {"type": "boolean"},
        "n_checks": {"type": "integer", "minimum": 0},
        "n_failed": {"type": "integer", "minimum": 0},
        "elapsed_s": {"type": "number", "minimum": 0},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "params", "measured", "tolerance", "passed"],
                "properties": {
                    "name": {"type": "string"},
                    "params": {"type": "object"},
                    "measured": {"type": ["number", "null"]},
                    "tolerance": {"type": "number"},
                    "passed": {"type": "boolean"},
                    "error": {"type": "string"},
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

SPECTRUM_RTOL = 1e-5
RAYLEIGH_RTOL = 1e-6
NORM_RTOL = 1e-8
SHOOT_RTOL = 1e-6
FD_POINTS = 4000
RAYLEIGH_POINTS = 10000


def verify_grid(suite):
    """Parameter grid of the oracle-equivalence checks."""
    if suite == "quick":
        return {"alphas": (1.0, 0.6), "omegas": (0.5,), "kappas": (1.0, -1.0), "ls": (0, 1),
                "xis": (0.0,), "n_max": 2}
    if suite == "full":
        return {"alphas": (0.6, 0.8, 1.0), "omegas": (0.5, 1.0), "kappas": (1.0, 2.0, -1.0),
                "ls": (0, 1, 2), "xis": (0.0, 1.0 / 6.0), "n_max": 4}
    raise ValueError(f"unknown suite {suite!r}")


def _check(name, params, fn, tolerance):
    try:
        measured = float(fn())
        return {"name": name, "params": params, "measured": measured,
                "tolerance": tolerance, "passed": bool(measured <= tolerance)}
    except (ArithmeticError, ValueError) as exc:
        return {"name": name, "params": params, "measured": None,
                "tolerance": tolerance, "passed": False, "error": str(exc)}


def _spectrum_dev(problem, exact, n_max):
    fd = oracle.fd_energies(problem, FD_POINTS, n_max + 1, extrapolate=True)
    return max(abs(e - x) / x for e, x in zip(fd, exact))


def _rayleigh_dev(problem, u, lam, s_max, mw):
    r_max = math.sqrt(s_max / mw)
    rq = oracle.rayleigh_quotient(problem, u, r_max, RAYLEIGH_POINTS, extrapolate=True)
    return abs(rq - lam) / abs(lam)


def _dirac_checks(alpha, w, kappa, n_max):
    bg, osc = MonopoleBackground(alpha), Oscillator(1.0, w)
    ch0 = DiracChannel(kappa)
    params = {"model": "dirac", "alpha": alpha, "omega": w, "kappa": kappa, "n_max": n_max}
    problem = oracle.dirac_problem(bg, ch0, osc)
    exact = [dirac_energy(bg, ch0.with_n(n), osc).value for n in range(n_max + 1)]
    checks = [_check("spectrum_vs_fd", params, lambda: _spectrum_dev(problem, exact, n_max), SPECTRUM_RTOL)]
    mu = mu_dirac(alpha, kappa)
    for n in range(n_max + 1):
        ch = ch0.with_n(n)
        e = exact[n]
        lam = (e * e - 1.0 + w * alpha * (alpha - 2.0 * kappa)) / alpha**2
        u = lambda r, ch=ch: dirac_f(w * r * r, bg, ch, osc)
        p = dict(params, n=n)
        checks.append(_check("rayleigh_quotient", p,
                             lambda: _rayleigh_dev(problem, u, lam, 4.0 * (n + mu) + 40.0, w),
                             RAYLEIGH_RTOL))
        checks.append(_check("dirac_normalization", p,
                             lambda ch=ch: _dirac_norm_dev(bg, ch, osc), NORM_RTOL))
    return checks


def _dirac_norm_dev(bg, ch, osc):
    c = dirac_norm_quadrature(bg, ch, osc)
    e = dirac_energy(bg, ch, osc).value

    def integrand(s):
        if s == 0.0:
            return 0.0
        f = c * dirac_f(s, bg, ch, osc)
        g = c * dirac_g(s, bg, ch, osc, e)
        return (f * f + g * g) / (2.0 * bg.alpha * math.sqrt(osc.m_omega * s))

    return abs(oracle.adaptive_quad(integrand, 0.0) - 1.0)


def _kgo_checks(alpha, w, l, xi, n_max):
    bg, osc = MonopoleBackground(alpha), Oscillator(1.0, w)
    ch0 = KgoChannel(l=l, xi=xi)
    params = {"model": "kgo", "alpha": alpha, "omega": w, "l": l, "xi": xi, "n_max": n_max}
    problem = oracle.kgo_problem(bg, ch0, osc)
    exact = [kgo_energy(bg, ch0.with_n(n), osc).value for n in range(n_max + 1)]
    checks = [_check("spectrum_vs_fd", params, lambda: _spectrum_dev(problem, exact, n_max), SPECTRUM_RTOL)]
    mu = mu_kgo(alpha, l, xi)
    for n in range(n_max + 1):
        ch = ch0.with_n(n)
        e = exact[n]
        lam = (e * e - 1.0 - 3.0 * w * alpha**2) / alpha**2
        u = lambda r, ch=ch: r * kgo_r(w * r * r, bg, ch, osc)
        p = dict(params, n=n)
        checks.append(_check("rayleigh_quotient", p,
                             lambda: _rayleigh_dev(problem, u, lam, 4.0 * (n + mu) + 40.0, w),
                             RAYLEIGH_RTOL))
        checks.append(_check("kgo_norm_closed_vs_quadrature", p,
                             lambda ch=ch: abs(kgo_norm_closed(bg, ch) - kgo_norm_quadrature(bg, ch, osc))
                             / kgo_norm_closed(bg, ch), NORM_RTOL))
    return checks


def _mit_shooting_checks(alphas):
    checks = []
    osc, wall, ch = Oscillator(1.0, WALL_OMEGA), HardWallSpec(WALL_R0, Condition.MIT), DiracChannel(2.5)
    for alpha in alphas:
        bg = MonopoleBackground(alpha)

        def dev():
            levels = exact_levels(bg, ch, osc, wall, 3)
            worst = 0.0
            for lvl in levels:
                e = lvl.value
                shot = oracle.shoot_dirac_mit(bg, ch, osc, wall, (e * (1 - 1e-3), e * (1 + 1e-3)))
                worst = max(worst, abs(shot - e) / e)
            return worst

        checks.append(_check("mit_roots_vs_shooting",
                             {"model": "dirac", "alpha": alpha, "omega": WALL_OMEGA, "kappa": 2.5,
                              "r0": WALL_R0, "levels": 3}, dev, SHOOT_RTOL))
    return checks


def run_verify(suite="quick"):
    """Run the oracle-equivalence suite; returns a report dict matching REPORT_SCHEMA."""
    start = time.perf_counter()
    grid = verify_grid(suite)
    checks = []
    for alpha in grid["alphas"]:
        for w in grid["omegas"]:
            for kappa in grid["kappas"]:
                checks += _dirac_checks(alpha, w, kappa, grid["n_max"])
            for l in grid["ls"]:
                for xi in grid["xis"]:
                    checks += _kgo_checks(alpha, w, l, xi, grid["n_max"])
    checks += _mit_shooting_checks(grid["alphas"])
    failed = sum(not c["passed"] for c in checks)
    return {
        "suite": suite,
        "passed": failed == 0,
        "n_checks": len(checks),
        "n_failed": failed,
        "elapsed_s": time.perf_counter() - start,
        "checks": checks,
    }


def wall_comparison_rows(bg, ch, osc, wall, count):
    """Rows index, energy_exact, energy_asymptotic, rel_dev and the alignment metadata."""
    cmp = compare_levels(bg, ch, osc, wall, count)
    rows = [
        {"index": i, "energy_exact": e, "energy_asymptotic": a, "rel_dev": d}
        for i, (e, a, d) in enumerate(zip(cmp.exact, cmp.asymptotic, cmp.rel_dev))
    ]
    meta = {
        "alignment_offset": cmp.offset,
        "formula_constant": cmp.formula_constant,
        "measured_constant_top": cmp.measured_constant[-1],
    }
    return rows, meta


def profile_summary(profile):
    """Node count and tail-to-peak ratio of each component."""
    out = {}
    for label, values in zip(profile.labels, profile.values):
        peak = np.max(np.abs(values))
        if peak == 0.0:
            # the lower component vanishes identically when alpha + 2 kappa + 4 alpha mu = 0 at n = 0
            out[label] = {"nodes": 0, "tail_over_peak": None}
            continue
        out[label] = {"nodes": count_nodes(values), "tail_over_peak": float(abs(values[-1]) / peak)}
    return out
