"""
Scalar special functions used by the closed-form solutions.

Kummer's confluent hypergeometric function M(a, b; s) = 1F1(a; b; s) is
summed directly from its power series. When a = -n the series is a
polynomial and terminates after n + 1 terms. For non-terminating series the
summation tracks the largest term; if cancellation would cost more digits
than the tolerance allows (large negative a with moderate s, the regime of
the hard-wall problems), the value is taken from scipy's hyp1f1 instead.
"""

import math

import numpy as np
from scipy import special as _sc

TERM_CAP = 10_000
SERIES_RTOL = 1e-15
# accept series result only if eps * max|term| / |sum| stays below this
CANCELLATION_RTOL = 1e-13

_EPS = np.finfo(float).eps


class DomainError(ValueError):
    """Argument outside the domain of a special function or formula."""


class KummerConvergenceError(ArithmeticError):
    """Power series for 1F1 failed to converge within the term cap."""

    def __init__(self, a, b, s, partial_sum, last_term, terms):
        self.a, self.b, self.s = a, b, s
        self.partial_sum = partial_sum
        self.last_term = last_term
        self.terms = terms
        super().__init__(
            f"1F1({a}, {b}; {s}) did not converge after {terms} terms "
            f"(partial sum {partial_sum:.6g}, last term {last_term:.3g})"
        )


def ln_gamma(x):
    """Natural log of the gamma function for x > 0."""
    if not x > 0:
        raise DomainError(f"ln_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def gamma(x):
    return math.exp(ln_gamma(x))


def factorial(x):
    """Real-argument factorial x! = Gamma(x + 1)."""
    return gamma(x + 1.0)


def _nonpositive_integer(x):
    return x <= 0 and float(x).is_integer()


def _check_b(b):
    if _nonpositive_integer(b):
        raise DomainError(f"1F1 second parameter b={b} is a pole (non-positive integer)")


def _future_ratio_bound(a, b, s, k):
    """Upper bound on |t_{j+1} / t_j| for all j > k, or inf when none is available."""
    j = k + 1
    if b + j <= 0:
        return math.inf
    # (a + j) / (b + j) is monotone in j with limit 1
    head = max(1.0, abs(a + j) / (b + j)) * abs(s) / (j + 1)
    if a >= 0 or j >= -a or b <= 0:
        return head if b > 0 or j >= -b else math.inf
    # before the sign flip |a + j| shrinks; after it (j + a) s / ((b + j)(j + 1)) <= s / (4|a|)
    before = abs(a + j) * abs(s) / ((b + j) * (j + 1))
    return max(before, abs(s) / (4.0 * abs(a)))


def kummer_m(a, b, s):
    """Kummer's function M(a, b; s) for real arguments.

    Parameters
    ----------
    a, b : float
        Parameters; b must not be zero or a negative integer.
    s : float
        Argument (finite).

    Returns
    -------
    float

    Raises
    ------
    DomainError
        If b is a pole or s is not finite.
    KummerConvergenceError
        If the non-terminating series has not converged after TERM_CAP terms.
    """
    _check_b(b)
    if not math.isfinite(s):
        raise DomainError(f"1F1 argument must be finite, got {s}")
    if s == 0.0 or a == 0.0:
        return 1.0

    polynomial = _nonpositive_integer(a)
    n_terms = int(-a) + 1 if polynomial else TERM_CAP

    term = 1.0
    total = 1.0
    biggest = 1.0
    for k in range(n_terms - 1 if polynomial else n_terms):
        ratio = (a + k) / (b + k) * s / (k + 1)
        term *= ratio
        total += term
        if abs(term) > biggest:
            biggest = abs(term)
        if (not polynomial and abs(term) <= SERIES_RTOL * abs(total)
                and _future_ratio_bound(a, b, s, k) < 0.5):
            # every later ratio is below 1/2, so the tail is below |term|
            break
    else:
        if not polynomial:
            raise KummerConvergenceError(a, b, s, total, term, n_terms)

    if total == 0.0 or _EPS * biggest > CANCELLATION_RTOL * abs(total):
        return float(_sc.hyp1f1(a, b, s))
    return total


def kummer_m_derivative(a, b, s):
    """d/ds M(a, b; s) = (a/b) M(a+1, b+1; s)."""
    _check_b(b)
    if a == 0.0:
        return 0.0
    return a / b * kummer_m(a + 1.0, b + 1.0, s)


def kummer_m_array(a, b, s):
    """Evaluate kummer_m elementwise over an array of arguments.

    The terminating case a = -n is summed for all arguments at once.
    """
    _check_b(b)
    s = np.asarray(s, dtype=float)
    if _nonpositive_integer(a):
        if not np.all(np.isfinite(s)):
            raise DomainError("1F1 argument must be finite")
        term = np.ones_like(s)
        total = np.ones_like(s)
        for k in range(int(-a)):
            term = term * ((a + k) / (b + k) / (k + 1)) * s
            total = total + term
        return total
    return np.array([kummer_m(a, b, x) for x in s.ravel()]).reshape(s.shape)


def laguerre(n, gamma_, x):
    """Associated Laguerre polynomial L_n^gamma(x) through its 1F1 form.

    L_n^g(x) = (n+g)! / (n! g!) * M(-n, g+1; x), factorials taken as Gamma.
    """
    if n < 0 or int(n) != n:
        raise DomainError(f"laguerre degree must be a non-negative integer, got {n}")
    if not gamma_ > -1:
        raise DomainError(f"laguerre order must exceed -1, got {gamma_}")
    n = int(n)
    log_binom = ln_gamma(n + gamma_ + 1.0) - ln_gamma(n + 1.0) - ln_gamma(gamma_ + 1.0)
    return math.exp(log_binom) * kummer_m(-n, gamma_ + 1.0, x)


def laguerre_recurrence(n, gamma_, x):
    """L_n^gamma(x) from the three-term recurrence in n (independent check)."""
    if n < 0 or int(n) != n:
        raise DomainError(f"laguerre degree must be a non-negative integer, got {n}")
    if not gamma_ > -1:
        raise DomainError(f"laguerre order must exceed -1, got {gamma_}")
    prev, cur = 0.0, 1.0
    for k in range(int(n)):
        prev, cur = cur, ((2 * k + 1 + gamma_ - x) * cur - (k + gamma_) * prev) / (k + 1)
    return cur


def kummer_asymptotic(a, b, s):
    """Large -a cosine approximation of M(a, b; s) at fixed b and s > 0.

    Gamma(b) [s(b/2 - a)]^(1/4 - b/2) pi^(-1/2) e^(s/2)
        * cos(sqrt(s(2b - 4a)) - b pi/2 + pi/4)

    Only meaningful for -a >> 1; validity is the caller's responsibility.
    """
    if not s > 0:
        raise DomainError(f"kummer_asymptotic requires s > 0, got {s}")
    k = s * (b / 2.0 - a)
    if not k > 0:
        raise DomainError(f"kummer_asymptotic requires s(b/2 - a) > 0, got {k}")
    return kummer_envelope(a, b, s) * math.cos(
        math.sqrt(s * (2.0 * b - 4.0 * a)) - b * math.pi / 2.0 + math.pi / 4.0
    )


def kummer_envelope(a, b, s):
    """Amplitude of the cosine in kummer_asymptotic."""
    k = s * (b / 2.0 - a)
    log_amp = math.lgamma(b) + (0.25 - b / 2.0) * math.log(k) + s / 2.0 - 0.5 * math.log(math.pi)
    sign = 1.0 if b > 0 or math.floor(b) % 2 == 0 else -1.0
    return sign * math.exp(log_amp)
