import math

import numpy as np
import pytest

from monopole_osc.dirac import dirac_energy
from monopole_osc.hardwall import (
    ALIGN_LEVELS,
    Condition,
    HardWallRootError,
    HardWallSpec,
    compare_levels,
    dirac_hardwall_asymptotic,
    dirac_hardwall_asymptotic_squared,
    dirichlet_exact_levels,
    dirichlet_residual,
    exact_levels,
    kgo_hardwall_asymptotic,
    kgo_hardwall_asymptotic_squared,
    mit_exact_levels,
    mit_residual,
    neumann_exact_levels,
    neumann_residual,
)
from monopole_osc.model import DiracChannel, KgoChannel, MonopoleBackground, Oscillator, mu_kgo
from monopole_osc.specfun import DomainError

R0 = 2.5
MIT_CH = DiracChannel(2.5)
KGO_CH = KgoChannel(1, 0.0)


def test_spec_validation():
    with pytest.raises(DomainError):
        HardWallSpec(0.0)
    with pytest.raises(ValueError):
        HardWallSpec(1.0, "robin")
    assert HardWallSpec(2.0, "neumann").condition is Condition.NEUMANN


def test_exact_levels_need_omega():
    with pytest.raises(DomainError):
        mit_exact_levels(MonopoleBackground(1.0), MIT_CH, Oscillator(1.0, 0.0), HardWallSpec(R0, Condition.MIT), 2)


def test_mit_residual_nonzero_at_free_levels():
    bg, osc = MonopoleBackground(0.8), Oscillator(1.0, 1.0)
    wall = HardWallSpec(R0, Condition.MIT)
    for n in range(4):
        e = dirac_energy(bg, MIT_CH.with_n(n), osc).value
        assert abs(mit_residual(e, bg, MIT_CH, osc, wall)) > 1e-6


@pytest.mark.parametrize("residual, ch, condition", [
    (mit_residual, MIT_CH, Condition.MIT),
    (dirichlet_residual, KGO_CH, Condition.DIRICHLET),
    (neumann_residual, KGO_CH, Condition.NEUMANN),
])
def test_residual_continuous_above_mass(residual, ch, condition):
    bg, osc = MonopoleBackground(0.8), Oscillator(1.0, 1.0)
    wall = HardWallSpec(R0, condition)
    e = np.linspace(1.0 + 1e-9, 12.0, 20001)
    v = np.array([residual(x, bg, ch, osc, wall) for x in e])
    assert np.all(np.isfinite(v))
    # no poles: neighbouring samples never jump by more than a small fraction of the range
    assert np.max(np.abs(np.diff(v))) < 0.01 * np.max(np.abs(v))


@pytest.mark.parametrize("solver, ch, condition", [
    (mit_exact_levels, MIT_CH, Condition.MIT),
    (dirichlet_exact_levels, KGO_CH, Condition.DIRICHLET),
    (neumann_exact_levels, KGO_CH, Condition.NEUMANN),
])
def test_roots_are_bracketed_and_small(solver, ch, condition):
    bg, osc = MonopoleBackground(0.6), Oscillator(1.0, 2.5)
    wall = HardWallSpec(R0, condition)
    residual = {Condition.MIT: mit_residual, Condition.DIRICHLET: dirichlet_residual,
                Condition.NEUMANN: neumann_residual}[condition]
    levels = solver(bg, ch, osc, wall, 6)
    for lvl in levels:
        e = lvl.value
        assert abs(residual(e, bg, ch, osc, wall)) <= 1e-10
        lo, hi = residual(e * (1 - 1e-7), bg, ch, osc, wall), residual(e * (1 + 1e-7), bg, ch, osc, wall)
        assert lo * hi < 0


def test_root_count_matches_asymptotic_count():
    bg, osc = MonopoleBackground(1.0), Oscillator(1.0, 2.5)
    wall = HardWallSpec(R0, Condition.MIT)
    e_max = 12.0
    exact = mit_exact_levels(bg, MIT_CH, osc, wall, 3, e_scan_max=e_max)
    with pytest.raises(HardWallRootError) as info:
        mit_exact_levels(bg, MIT_CH, osc, wall, 50, e_scan_max=e_max)
    found = len(info.value.roots)
    asym = sum(1 for n in range(50) if dirac_hardwall_asymptotic(bg, MIT_CH, osc, wall, n).value <= e_max)
    assert len(exact) == 3
    assert abs(found - asym) <= 1


def test_small_omega_box_law():
    bg, osc = MonopoleBackground(1.0), Oscillator(1.0, 1e-6)
    levels = dirichlet_exact_levels(bg, KgoChannel(), osc, HardWallSpec(R0), 4)
    for n, lvl in enumerate(levels):
        box = math.sqrt(1.0 + (math.pi * (n + 1) / R0) ** 2)
        assert lvl.value == pytest.approx(box, rel=1e-3)


def test_neumann_interlaces_dirichlet():
    bg, osc = MonopoleBackground(0.8), Oscillator(1.0, 1.0)
    d = [x.value for x in dirichlet_exact_levels(bg, KGO_CH, osc, HardWallSpec(R0), 6)]
    nm = [x.value for x in neumann_exact_levels(bg, KGO_CH, osc, HardWallSpec(R0, Condition.NEUMANN), 6)]
    for i in range(5):
        assert nm[i] < d[i] < nm[i + 1]


def test_dirac_asymptotic_flat_small_omega():
    bg, osc = MonopoleBackground(1.0), Oscillator(1.0, 0.0)
    wall = HardWallSpec(R0, Condition.MIT)
    for kappa in (-1.0, 0.5, 2.5):
        for n in range(3):
            e2 = dirac_hardwall_asymptotic_squared(bg, DiracChannel(kappa), osc, wall, n)
            expected = (math.pi / R0) ** 2 * (n + abs(2 * kappa + 1) / 4 + 1.25) ** 2
            assert e2 - 1.0 == pytest.approx(expected, rel=1e-14)


def test_asymptotic_continuous_at_zero_omega():
    bg, wall = MonopoleBackground(0.7), HardWallSpec(R0, Condition.MIT)
    at_zero = dirac_hardwall_asymptotic(bg, MIT_CH, Oscillator(1.0, 0.0), wall, 2).value
    near = dirac_hardwall_asymptotic(bg, MIT_CH, Oscillator(1.0, 1e-12), wall, 2).value
    assert math.isfinite(at_zero) and near == pytest.approx(at_zero, rel=1e-10)
    k0 = kgo_hardwall_asymptotic(bg, KGO_CH, Oscillator(1.0, 0.0), wall, 2, Condition.DIRICHLET).value
    k1 = kgo_hardwall_asymptotic(bg, KGO_CH, Oscillator(1.0, 1e-12), wall, 2, Condition.DIRICHLET).value
    assert k1 == pytest.approx(k0, rel=1e-10)


def test_neumann_minus_dirichlet_identity():
    for alpha in (0.6, 0.8, 1.0):
        bg, osc = MonopoleBackground(alpha), Oscillator(1.0, 1.3)
        for n in range(5):
            x = n + mu_kgo(alpha, 1, 0.0)
            diff = (kgo_hardwall_asymptotic_squared(bg, KGO_CH, osc, HardWallSpec(R0), n, Condition.NEUMANN)
                    - kgo_hardwall_asymptotic_squared(bg, KGO_CH, osc, HardWallSpec(R0), n, Condition.DIRICHLET))
            expected = (alpha * math.pi / R0) ** 2 * ((x + 1.25) ** 2 - (x + 0.75) ** 2)
            assert diff == pytest.approx(expected, rel=1e-12)


def test_asymptotic_minkowski_wall():
    bg, osc = MonopoleBackground(1.0), Oscillator(1.0, 0.4)
    for l in range(3):
        for n in range(3):
            e2 = kgo_hardwall_asymptotic_squared(bg, KgoChannel(l, 0.3), osc, HardWallSpec(R0), n)
            expected = 1.0 + 3 * 0.4 + (math.pi / R0) ** 2 * (n + (2 * l + 1) / 4 + 0.75) ** 2
            assert e2 == pytest.approx(expected, rel=1e-14)


def test_asymptotic_neumann_above_dirichlet():
    bg, osc = MonopoleBackground(0.8), Oscillator(1.0, 2.5)
    for n in range(6):
        d = kgo_hardwall_asymptotic(bg, KGO_CH, osc, HardWallSpec(R0), n, Condition.DIRICHLET).value
        nm = kgo_hardwall_asymptotic(bg, KGO_CH, osc, HardWallSpec(R0), n, Condition.NEUMANN).value
        assert nm > d


@pytest.mark.parametrize("condition, ch", [
    (Condition.MIT, MIT_CH), (Condition.DIRICHLET, KGO_CH), (Condition.NEUMANN, KGO_CH),
])
def test_comparison_report(condition, ch):
    cmp = compare_levels(MonopoleBackground(1.0), ch, Oscillator(1.0, 2.5), HardWallSpec(R0, condition), 11)
    assert len(cmp.exact) == len(cmp.asymptotic) == len(cmp.rel_dev) == 11
    assert -3 <= cmp.offset <= 3
    assert cmp.formula_constant in (0.75, 1.25)
    assert all(math.isfinite(c) for c in cmp.measured_constant)


def test_alignment_independent_of_count():
    bg, osc = MonopoleBackground(1.0), Oscillator(1.0, 2.5)
    wall = HardWallSpec(R0, Condition.DIRICHLET)
    offsets = {compare_levels(bg, KGO_CH, osc, wall, c).offset for c in (2, 4, ALIGN_LEVELS)}
    assert len(offsets) == 1


def test_count_must_be_positive():
    with pytest.raises(ValueError):
        exact_levels(MonopoleBackground(1.0), KGO_CH, Oscillator(1.0, 1.0), HardWallSpec(R0), 0)
