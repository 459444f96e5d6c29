"""Special functions used by the closed-form outage expressions.

The regularized lower incomplete gamma function is the workhorse: both
link CDFs reduce to it.  The two Meijer G-function families that appear in
the outage closed forms are evaluated through exact elementary reductions
instead of a general Mellin-Barnes integrator, because only these two
fixed parameter patterns ever occur:

    G^{2,0}_{0,2}(z | -; 0, 1/2)                  = sqrt(pi) * exp(-2*sqrt(z))
    G^{2,1}_{1,3}(z | 1-M/2; 0, 1/2, -M/2)        = 2*sqrt(pi)*Gamma(M)*(4z)^(-M/2) * P(M, 2*sqrt(z))

where P is the regularized lower incomplete gamma.  Both identities are
confirmed against a generic series evaluator in the test suite.
"""

import math
from dataclasses import dataclass

_MAX_ITER = 500
_TERM_TOL = 1e-14


class GammaConvergenceError(RuntimeError):
    """Raised when the incomplete gamma iteration hits its cap."""


def regularized_lower_gamma(a: float, x: float) -> float:
    """Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).

    Series expansion for x < a + 1, continued fraction for the complement
    otherwise, with term tolerance 1e-14 and a 500-iteration cap.  Hitting
    the cap raises GammaConvergenceError rather than returning a silently
    inaccurate value.
    """
    if not a > 0.0:
        raise ValueError("a must be positive, got %r" % (a,))
    if x < 0.0:
        raise ValueError("x must be nonnegative, got %r" % (x,))
    if x == 0.0:
        return 0.0
    if x < a + 1.0:
        return _lower_series(a, x)
    return 1.0 - _upper_continued_fraction(a, x)


def _gamma_prefactor(a, x):
    # x^a e^{-x} / Gamma(a), computed in log space to dodge overflow
    return math.exp(a * math.log(x) - x - math.lgamma(a))


def _lower_series(a, x):
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _TERM_TOL:
            return total * _gamma_prefactor(a, x)
    raise GammaConvergenceError("series for P(%g, %g) did not converge" % (a, x))


def _upper_continued_fraction(a, x):
    # modified Lentz evaluation of the continued fraction for Q(a, x)
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _TERM_TOL:
            return h * _gamma_prefactor(a, x)
    raise GammaConvergenceError(
        "continued fraction for Q(%g, %g) did not converge" % (a, x)
    )


@dataclass(frozen=True)
class MeijerG2013Args:
    """Argument and lower parameters of the G^{2,0}_{0,2} family."""

    z: float
    b1: float = 0.0
    b2: float = 0.5

    def __post_init__(self):
        if not self.z > 0.0:
            raise ValueError("z must be positive, got %r" % (self.z,))


@dataclass(frozen=True)
class MeijerG2113Args:
    """Argument and parameters of the G^{2,1}_{1,3} family.

    The supported pattern is a1 = 1 - M/2 and lower parameters
    (0, 1/2, -M/2) for integer M >= 1.
    """

    z: float
    a1: float
    b1: float = 0.0
    b2: float = 0.5
    b3: float = -0.5

    def __post_init__(self):
        if not self.z > 0.0:
            raise ValueError("z must be positive, got %r" % (self.z,))


def meijer_g_2013(args: MeijerG2013Args) -> float:
    """G^{2,0}_{0,2}(z | -; 0, 1/2) via its exponential reduction."""
    if (args.b1, args.b2) != (0.0, 0.5):
        raise ValueError(
            "unsupported parameters: only (b1, b2) = (0, 0.5) is implemented"
        )
    return math.sqrt(math.pi) * math.exp(-2.0 * math.sqrt(args.z))


def _branch_count_from_args(args: MeijerG2113Args) -> int:
    m = -2.0 * args.b3
    if m < 1.0 or m != round(m):
        raise ValueError("unsupported parameters: b3 must be -M/2 for integer M >= 1")
    m = int(round(m))
    if args.a1 != 1.0 - m / 2.0 or args.b1 != 0.0 or args.b2 != 0.5:
        raise ValueError(
            "unsupported parameters: expected a1 = 1 - M/2 and (b1, b2) = (0, 0.5)"
        )
    return m


def meijer_g_2113(args: MeijerG2113Args) -> float:
    """G^{2,1}_{1,3}(z | 1-M/2; 0, 1/2, -M/2) via its incomplete-gamma reduction."""
    m = _branch_count_from_args(args)
    p = regularized_lower_gamma(float(m), 2.0 * math.sqrt(args.z))
    return 2.0 * math.sqrt(math.pi) * math.gamma(m) * (4.0 * args.z) ** (-m / 2.0) * p
