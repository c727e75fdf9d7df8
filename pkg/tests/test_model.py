import json
import math

import numpy as np
import pytest

from monopole_osc.model import (
    Branch,
    DiracChannel,
    EnergyLevel,
    KgoChannel,
    MonopoleBackground,
    Oscillator,
    RadialProfile,
    count_nodes,
    dirac_params,
    from_dict,
    kgo_params,
    mu_dirac,
    mu_kgo,
    to_dict,
)
from monopole_osc.specfun import DomainError


@pytest.mark.parametrize("alpha", [0.0, -0.3, math.inf, math.nan])
def test_background_rejects_bad_alpha(alpha):
    with pytest.raises(DomainError):
        MonopoleBackground(alpha)


def test_background_accepts_superfluid_alpha():
    assert MonopoleBackground(1.4).alpha == 1.4


def test_oscillator_validation():
    with pytest.raises(DomainError):
        Oscillator(0.0, 1.0)
    with pytest.raises(DomainError):
        Oscillator(1.0, -0.1)
    assert Oscillator(2.0, 0.25).m_omega == 0.5


def test_channel_from_lj():
    assert DiracChannel.from_lj(0, 0.5).kappa == 0.0
    assert DiracChannel.from_lj(1, 1.5).kappa == -1.0
    assert DiracChannel.from_lj(1, 0.5).kappa == 1.0
    with pytest.raises(DomainError):
        DiracChannel.from_lj(1, 2.5)
    with pytest.raises(DomainError):
        DiracChannel(kappa=1.0, n=-1)


def test_channel_accepts_half_integer_kappa():
    assert DiracChannel(kappa=0.5, n=1).kappa == 0.5


def test_kgo_channel_validation():
    with pytest.raises(DomainError):
        KgoChannel(l=-1)
    with pytest.raises(DomainError):
        KgoChannel(l=1.5)


@pytest.mark.parametrize("alpha, kappa, mu", [(1.0, 1.0, 0.75), (0.5, 0.5, 0.75)])
def test_dirac_mu_examples(alpha, kappa, mu):
    assert mu_dirac(alpha, kappa) == pytest.approx(mu, rel=1e-15)


def test_dirac_nu_example():
    p = dirac_params(MonopoleBackground(1.0), DiracChannel(1.0), Oscillator(1.0, 0.5), 2.0)
    assert p.mu == pytest.approx(0.75)
    assert p.nu == pytest.approx(1.25, rel=1e-15)


@pytest.mark.parametrize("alpha", [1.0, 0.8])
def test_kgo_mu_bar_examples(alpha):
    assert mu_kgo(alpha, 0, 0.0) == pytest.approx(0.25, rel=1e-15)


def test_kgo_nu_example():
    p = kgo_params(MonopoleBackground(1.0), KgoChannel(), Oscillator(1.0, 0.5), 2.0)
    assert p.mu_bar == pytest.approx(0.25)
    assert p.nu_bar == pytest.approx(0.75, rel=1e-15)


def test_params_reject_zero_omega():
    with pytest.raises(DomainError):
        dirac_params(MonopoleBackground(1.0), DiracChannel(1.0), Oscillator(1.0, 0.0), 1.0)
    with pytest.raises(DomainError):
        kgo_params(MonopoleBackground(1.0), KgoChannel(), Oscillator(1.0, 0.0), 1.0)


def test_mu_bar_negative_radicand():
    with pytest.raises(DomainError):
        mu_kgo(0.5, 0, -5.0)


def test_minkowski_reductions():
    for kappa in (-2.0, -1.0, 1.0, 2.0):
        assert mu_dirac(1.0, kappa) == pytest.approx(math.sqrt(1 + 4 * kappa * (kappa + 1)) / 4, rel=1e-15)
    for l in range(4):
        for xi in (0.0, 1 / 6, 1.0):
            assert mu_kgo(1.0, l, xi) == pytest.approx((2 * l + 1) / 4, rel=1e-15)


def test_profile_validation():
    s = np.linspace(0, 1, 5)
    RadialProfile(s=s, values=s, labels=("R",), norm_constant=1.0)
    with pytest.raises(ValueError):
        RadialProfile(s=s[::-1], values=s, labels=("R",), norm_constant=1.0)
    with pytest.raises(ValueError):
        RadialProfile(s=s, values=s * np.nan, labels=("R",), norm_constant=1.0)
    with pytest.raises(ValueError):
        RadialProfile(s=s, values=s, labels=("R",), norm_constant=0.0)
    prof = RadialProfile(s=s, values=np.vstack([s, -s]), labels=("f", "g"), norm_constant=2.0)
    assert np.array_equal(prof["g"], -s)


def test_count_nodes():
    x = np.linspace(0, 10, 1001)
    assert count_nodes(np.sin(x)) == 3
    assert count_nodes(np.exp(-x)) == 0


@pytest.mark.parametrize("obj", [
    MonopoleBackground(0.8),
    Oscillator(1.0, 0.5),
    DiracChannel(kappa=-1.0, n=2, l=1, j=1.5),
    KgoChannel(l=2, xi=1 / 6, n=3),
    EnergyLevel(value=2.0, branch=Branch.NEGATIVE, n=1, channel="x"),
])
def test_json_roundtrip(obj):
    text = json.dumps(to_dict(obj))
    assert from_dict(type(obj), json.loads(text)) == obj


def test_from_dict_rejects_unknown_fields():
    with pytest.raises(ValueError):
        from_dict(Oscillator, {"mass": 1.0, "frequency": 2.0})
