"""
Parameter and quantum-number types shared by the solvers.

Natural units (hbar = c = 1). The deficit parameter alpha of the monopole
metric enters every radial equation; s = m * omega * r^2 is the dimensionless
radial coordinate in which the eigenfunctions are written.
"""

from dataclasses import asdict, dataclass, fields
from enum import Enum
import math
from typing import Optional

import numpy as np

from .specfun import DomainError


class Branch(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"

    @property
    def sign(self):
        return 1.0 if self is Branch.POSITIVE else -1.0


@dataclass(frozen=True)
class MonopoleBackground:
    """Pointlike global monopole; alpha = 1 is flat space, alpha > 1 the superfluid analogue."""

    alpha: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha > 0):
            raise DomainError(f"alpha must be positive and finite, got {self.alpha}")


@dataclass(frozen=True)
class Oscillator:
    mass: float = 1.0
    omega: float = 0.0

    def __post_init__(self):
        if not self.mass > 0:
            raise DomainError(f"mass must be positive, got {self.mass}")
        if not self.omega >= 0:
            raise DomainError(f"omega must be non-negative, got {self.omega}")

    @property
    def m_omega(self):
        return self.mass * self.omega


@dataclass(frozen=True)
class DiracChannel:
    """Spin-orbit channel of the Dirac oscillator.

    Only kappa enters the radial equations; l and j are carried for
    bookkeeping. Any real kappa is accepted (the figures use kappa = 1/2).
    """

    kappa: float
    n: int = 0
    l: Optional[int] = None
    j: Optional[float] = None

    def __post_init__(self):
        if self.n < 0 or int(self.n) != self.n:
            raise DomainError(f"radial quantum number must be a non-negative integer, got {self.n}")

    @classmethod
    def from_lj(cls, l, j, n=0):
        """Build the channel from (l, j) using kappa = -j + 1/2 (j = l + 1/2) or j + 1/2 (j = l - 1/2)."""
        if l < 0:
            raise DomainError(f"l must be non-negative, got {l}")
        if math.isclose(j, l + 0.5):
            kappa = -j + 0.5
        elif math.isclose(j, l - 0.5) and l >= 1:
            kappa = j + 0.5
        else:
            raise DomainError(f"j={j} is not l +/- 1/2 for l={l}")
        return cls(kappa=kappa, n=n, l=l, j=j)

    def with_n(self, n):
        return DiracChannel(kappa=self.kappa, n=n, l=self.l, j=self.j)

    @property
    def tag(self):
        return f"dirac(kappa={self.kappa:g},n={self.n})"


@dataclass(frozen=True)
class KgoChannel:
    l: int = 0
    xi: float = 0.0
    n: int = 0

    def __post_init__(self):
        if self.l < 0 or int(self.l) != self.l:
            raise DomainError(f"l must be a non-negative integer, got {self.l}")
        if self.n < 0 or int(self.n) != self.n:
            raise DomainError(f"radial quantum number must be a non-negative integer, got {self.n}")

    def with_n(self, n):
        return KgoChannel(l=self.l, xi=self.xi, n=n)

    @property
    def tag(self):
        return f"kgo(l={self.l},xi={self.xi:g},n={self.n})"


@dataclass(frozen=True)
class DiracWhittakerParams:
    mu: float
    nu: float


@dataclass(frozen=True)
class KgoWhittakerParams:
    mu_bar: float
    nu_bar: float


@dataclass(frozen=True)
class EnergyLevel:
    value: float
    branch: Branch
    n: int
    channel: str = ""


@dataclass(frozen=True)
class RadialProfile:
    """Radial eigenfunction samples on an s-grid.

    values has one row per component: (f, g) for the Dirac oscillator,
    (R,) for the Klein-Gordon oscillator.
    """

    s: np.ndarray
    values: np.ndarray
    labels: tuple
    norm_constant: float
    norm_source: str = "quadrature"

    def __post_init__(self):
        s = np.asarray(self.s, dtype=float)
        values = np.atleast_2d(np.asarray(self.values, dtype=float))
        if s.ndim != 1 or values.shape != (len(self.labels), s.size):
            raise ValueError("profile values must have shape (components, grid points)")
        if np.any(s < 0) or np.any(np.diff(s) <= 0):
            raise ValueError("profile grid must be non-negative and strictly increasing")
        if not np.all(np.isfinite(values)):
            raise ValueError("profile values must be finite")
        if not self.norm_constant > 0:
            raise ValueError("normalization constant must be positive")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "values", values)

    def __getitem__(self, label):
        return self.values[self.labels.index(label)]


def mu_dirac(alpha, kappa):
    """sqrt(alpha^2 + 4 kappa (kappa + alpha)) / (4 alpha); the radicand is (2 kappa + alpha)^2."""
    return math.sqrt(alpha * alpha + 4.0 * kappa * (kappa + alpha)) / (4.0 * alpha)


def mu_kgo(alpha, l, xi):
    radicand = alpha * alpha + 8.0 * xi * (1.0 - alpha * alpha) + 4.0 * l * (l + 1)
    if radicand < 0:
        raise DomainError(f"mu_bar radicand is negative ({radicand:.6g}); xi={xi} too negative")
    return math.sqrt(radicand) / (4.0 * alpha)


def _require_omega(osc):
    if not osc.omega > 0:
        raise DomainError("Whittaker parameters need omega > 0; use the explicit spectra for omega = 0")


def dirac_params(bg, ch, osc, energy):
    """Whittaker parameters (mu, nu) of the Dirac-oscillator radial equation at a given energy."""
    _require_omega(osc)
    a, k, mw = bg.alpha, ch.kappa, osc.m_omega
    nu = (energy**2 - osc.mass**2 + mw * a * (a - 2.0 * k)) / (4.0 * mw * a * a)
    return DiracWhittakerParams(mu=mu_dirac(a, k), nu=nu)


def kgo_params(bg, ch, osc, energy):
    _require_omega(osc)
    a, mw = bg.alpha, osc.m_omega
    nu_bar = (energy**2 - osc.mass**2 - 3.0 * mw * a * a) / (4.0 * mw * a * a)
    return KgoWhittakerParams(mu_bar=mu_kgo(a, ch.l, ch.xi), nu_bar=nu_bar)


def count_nodes(values, rtol=1e-10):
    """Sign changes of a sampled function, ignoring samples negligibly close to zero."""
    values = np.asarray(values, dtype=float)
    scale = np.max(np.abs(values))
    if scale == 0.0:
        return 0
    signs = np.sign(values[np.abs(values) > rtol * scale])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


# JSON schema: lowercase snake_case keys, numbers as doubles.

def to_dict(obj):
    d = asdict(obj)
    for key, value in d.items():
        if isinstance(value, Enum):
            d[key] = value.value
    return d


def from_dict(cls, data):
    names = {f.name for f in fields(cls)}
    unknown = set(data) - names
    if unknown:
        raise ValueError(f"unknown {cls.__name__} fields: {sorted(unknown)}")
    kwargs = dict(data)
    if cls is EnergyLevel and "branch" in kwargs:
        kwargs["branch"] = Branch(kwargs["branch"])
    return cls(**kwargs)
