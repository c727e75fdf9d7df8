import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import optimize

from monopole_osc.specfun import (
    DomainError,
    KummerConvergenceError,
    factorial,
    gamma,
    kummer_asymptotic,
    kummer_envelope,
    kummer_m,
    kummer_m_array,
    kummer_m_derivative,
    laguerre,
    laguerre_recurrence,
    ln_gamma,
)


@pytest.mark.parametrize("x, expected", [
    (1.0, 0.0),
    (0.5, 0.5 * math.log(math.pi)),
    (2.5, math.log(1.5 * 0.5 * math.sqrt(math.pi))),
])
def test_ln_gamma_values(x, expected):
    assert ln_gamma(x) == pytest.approx(expected, rel=1e-13, abs=1e-15)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
def test_ln_gamma_domain(x):
    with pytest.raises(DomainError):
        ln_gamma(x)


def test_half_integer_factorial():
    assert factorial(0.5) == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-14)
    assert gamma(5.0) == pytest.approx(24.0, rel=1e-14)


@pytest.mark.parametrize("a, b, s, expected", [
    (0, 3, 7.2, 1.0),
    (1.3, 2.1, 0.0, 1.0),
    (-1, 2, 1, 0.5),
    (-2, 2, 1, 1.0 / 6.0),
])
def test_kummer_examples(a, b, s, expected):
    assert kummer_m(a, b, s) == pytest.approx(expected, rel=1e-15, abs=1e-15)


@pytest.mark.parametrize("b", [0, -1, -3])
def test_kummer_pole(b):
    with pytest.raises(DomainError):
        kummer_m(0.5, b, 1.0)


@pytest.mark.parametrize("a, b, s", [
    (0.3, 1.7, 5.0), (-3.5, 2.5, 12.0), (-40.2, 1.5, 3.0), (-120.7, 2.0, 1.0),
    (2.25, 3.5, 30.0), (-7.3, 4.2, 25.0), (-250.3, 1.5, 15.6),
])
def test_kummer_vs_mpmath(a, b, s):
    ref = float(mpmath.hyp1f1(a, b, s))
    assert kummer_m(a, b, s) == pytest.approx(ref, rel=1e-11, abs=1e-12 * abs(ref) + 1e-300)


def test_kummer_tiny_argument_large_negative_a():
    # hard-wall regime at very small omega: a ~ -4e5, s ~ 6e-6
    a, b, s = -4.1e5 + 0.3, 1.5, 6.25e-6
    ref = float(mpmath.hyp1f1(a, b, s))
    assert kummer_m(a, b, s) == pytest.approx(ref, rel=1e-10)


def test_kummer_convergence_error_carries_diagnostics(monkeypatch):
    import monopole_osc.specfun as sf
    monkeypatch.setattr(sf, "TERM_CAP", 5)
    with pytest.raises(KummerConvergenceError) as info:
        sf.kummer_m(0.5, 1.5, 40.0)
    assert info.value.terms == 5
    assert math.isfinite(info.value.partial_sum)


def test_polynomial_terminates_exactly():
    assert kummer_m(-3, 0.5, 2.0) == pytest.approx(1 - 12 + 16 - 64 / 15, rel=1e-14)


@pytest.mark.parametrize("a, b, s, expected", [
    (0, 2, 3, 0.0),
    (-1, 2, 5, -0.5),
    (-2, 2, 1, -2.0 / 3.0),
])
def test_derivative_examples(a, b, s, expected):
    assert kummer_m_derivative(a, b, s) == pytest.approx(expected, rel=1e-14, abs=1e-15)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(0, 10), b=st.floats(0.5, 5.0), s=st.floats(0.01, 20.0))
def test_polynomial_matches_laguerre(n, b, s):
    direct = kummer_m(-n, b, s)
    via_laguerre = laguerre_recurrence(n, b - 1.0, s) * math.exp(
        ln_gamma(n + 1.0) + ln_gamma(b) - ln_gamma(n + b))
    scale = max(1.0, sum(abs(math.comb(n, k)) * s**k for k in range(n + 1)) / max(abs(direct), 1e-300))
    assert abs(direct - via_laguerre) <= 1e-12 * abs(direct) * scale


@settings(max_examples=60, deadline=None)
@given(a=st.floats(-6.0, 3.0), b=st.floats(0.6, 5.0), s=st.floats(0.1, 15.0))
def test_derivative_matches_central_difference(a, b, s):
    h = 1e-5 * max(1.0, s)
    fd = (kummer_m(a, b, s + h) - kummer_m(a, b, s - h)) / (2 * h)
    exact = kummer_m_derivative(a, b, s)
    assert abs(fd - exact) <= 1e-6 * max(abs(exact), abs(kummer_m(a, b, s)) / max(1.0, s))


def test_array_path_matches_scalar():
    s = np.linspace(0.0, 30.0, 17)
    for a, b in [(-4, 2.5), (-0.5, 1.5), (1.2, 3.0)]:
        arr = kummer_m_array(a, b, s)
        assert np.allclose(arr, [kummer_m(a, b, x) for x in s], rtol=1e-13, atol=0)


@pytest.mark.parametrize("n, g, x, expected", [
    (0, 0.5, 3.3, 1.0),
    (1, 0.0, 2.0, -1.0),
    (2, 1.0, 1.0, 0.5),
])
def test_laguerre_examples(n, g, x, expected):
    assert laguerre(n, g, x) == pytest.approx(expected, rel=1e-13, abs=1e-14)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(0, 12), g=st.floats(-0.9, 6.0), x=st.floats(0.0, 25.0))
def test_laguerre_identity_vs_recurrence(n, g, x):
    a, b = laguerre(n, g, x), laguerre_recurrence(n, g, x)
    ref = float(mpmath.laguerre(n, g, x))
    assert a == pytest.approx(ref, rel=1e-10, abs=1e-10 * max(1.0, abs(b)))
    assert b == pytest.approx(ref, rel=1e-10, abs=1e-10 * max(1.0, abs(b)))


def test_laguerre_domain():
    with pytest.raises(DomainError):
        laguerre(2, -1.0, 1.0)


def test_asymptotic_close_at_minus_fifty():
    exact = kummer_m(-50, 2, 1)
    assert abs(kummer_asymptotic(-50, 2, 1) - exact) / abs(exact) < 0.02


def test_asymptotic_improves_from_fifty_to_two_hundred():
    dev = lambda a: abs(kummer_asymptotic(a, 2, 1) - kummer_m(a, 2, 1)) / abs(kummer_m(a, 2, 1))
    assert dev(-200) < dev(-50)


def test_asymptotic_relative_error_monotone():
    devs = [abs(kummer_asymptotic(a, 2, 1) - kummer_m(a, 2, 1)) / abs(kummer_m(a, 2, 1))
            for a in (-25, -50, -100, -200)]
    assert all(x > y for x, y in zip(devs, devs[1:])), devs


def test_asymptotic_error_shrinks_relative_to_envelope():
    # plain relative error is spoiled near zeros of the cosine, so compare to the amplitude
    devs = [abs(kummer_asymptotic(a, 2, 1) - kummer_m(a, 2, 1)) / kummer_envelope(a, 2, 1)
            for a in (-25, -50, -100, -200)]
    assert all(x > y for x, y in zip(devs, devs[1:]))


def test_asymptotic_zero_positions():
    # every zero of M(-100, 3/2; s) on (0, 4) against the nearest zero of the cosine form,
    # measured in units of the local zero spacing
    a, b = -100, 1.5
    grid = np.linspace(0.002, 4.0, 4000)

    def zeros(fun):
        v = np.array([fun(x) for x in grid])
        idx = np.nonzero(np.sign(v[1:]) != np.sign(v[:-1]))[0]
        return np.array([optimize.brentq(fun, grid[i], grid[i + 1]) for i in idx])

    exact = zeros(lambda x: kummer_m(a, b, x))
    approx = zeros(lambda x: kummer_asymptotic(a, b, x))
    assert len(exact) == len(approx) >= 3
    spacing = np.gradient(exact)
    assert np.all(np.abs(exact - approx) < 0.01 * spacing)


def test_asymptotic_domain():
    with pytest.raises(DomainError):
        kummer_asymptotic(-50, 2, 0.0)
