"""Gamma-family special functions and Jacobi norm constants.

Everything that can overflow for large degree or large weight exponents
(the norms g_m, Gamma at large argument) is carried in log space and
exponentiated as late as possible.
"""

import cmath
import math
from dataclasses import dataclass

__all__ = [
    "JacobiParams",
    "log_gamma_real",
    "log_gamma_complex",
    "jacobi_norm",
    "log_jacobi_norm",
    "norm_ratio",
]

_LN2 = math.log(2.0)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)

# Lanczos rational approximation, g = 607/128 with 15 terms (Godfrey's
# double-precision set); relative error below 1e-13 on Re(z) >= 1/2.
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)


@dataclass(frozen=True)
class JacobiParams:
    """Weight exponents (alpha, beta) of a Jacobi family.

    Both exponents must lie strictly above -1 (open-interval constraint;
    the basis functions leave L2 otherwise), enforced at construction.
    """

    alpha: float
    beta: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha > -1.0):
            raise ValueError(f"alpha must exceed -1 (got {self.alpha})")
        if not (math.isfinite(self.beta) and self.beta > -1.0):
            raise ValueError(f"beta must exceed -1 (got {self.beta})")


def log_gamma_real(x: float) -> float:
    """ln Gamma(x) for x > 0.

    Raises
    ------
    ValueError
        If x <= 0 (outside the supported domain).
    """
    if not x > 0.0:
        raise ValueError(f"log_gamma_real requires x > 0 (got {x})")
    return math.lgamma(x)


def _lanczos_log_gamma(z: complex) -> complex:
    # Principal branch on Re(z) >= 1/2: the log(t) term has Re(t) > 0
    # throughout, so no unwinding is ever needed.
    zm1 = z - 1.0
    s = _LANCZOS_C[0]
    for k in range(1, len(_LANCZOS_C)):
        s += _LANCZOS_C[k] / (zm1 + k)
    t = zm1 + _LANCZOS_G + 0.5
    return (zm1 + 0.5) * cmath.log(t) - t + _HALF_LOG_TWO_PI + cmath.log(s)


def _log_sin_pi(z: complex) -> complex:
    # log(sin(pi z)) for Im(z) >= 0, safe against e^{pi Im z} overflow.
    if z.imag < 20.0:
        return cmath.log(cmath.sin(math.pi * z))
    # sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z}),  |e^{2 i pi z}| << 1
    return cmath.log(0.5j) - 1j * math.pi * z + cmath.log(1.0 - cmath.exp(2j * math.pi * z))


def log_gamma_complex(z: complex) -> complex:
    """Principal-branch ln Gamma(z).

    Lanczos approximation on Re(z) >= 1/2, reflection formula
    Gamma(z)Gamma(1-z) = pi/sin(pi z) otherwise.  Conjugate symmetry
    ln Gamma(conj z) = conj ln Gamma(z) holds bit-exactly because the lower
    half plane is evaluated by conjugation.

    Raises
    ------
    ValueError
        At the poles (z a non-positive real integer).
    """
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise ValueError(f"log_gamma_complex pole at z = {z.real}")
    if z.imag < 0.0:
        return log_gamma_complex(z.conjugate()).conjugate()
    if z.real >= 0.5:
        return _lanczos_log_gamma(z)
    return math.log(math.pi) - _log_sin_pi(z) - _lanczos_log_gamma(1.0 - z)


def log_jacobi_norm(params: JacobiParams, m: int) -> float:
    """ln of the squared weighted L2 norm g_m of the degree-m Jacobi polynomial.

    g_m = 2^{1+a+b} Gamma(1+a+m) Gamma(1+b+m)
          / [m! (1+a+b+2m) Gamma(1+a+b+m)].

    The m = 0 case is folded into Gamma(a+b+2) so the formula stays valid
    when 1+a+b <= 0.
    """
    if m < 0:
        raise ValueError(f"degree must be nonnegative (got {m})")
    a, b = params.alpha, params.beta
    s = a + b
    if m == 0:
        return (s + 1.0) * _LN2 + math.lgamma(a + 1.0) + math.lgamma(b + 1.0) - math.lgamma(s + 2.0)
    return (
        (s + 1.0) * _LN2
        + math.lgamma(a + m + 1.0)
        + math.lgamma(b + m + 1.0)
        - math.lgamma(m + 1.0)
        - math.log(s + 2.0 * m + 1.0)
        - math.lgamma(s + m + 1.0)
    )


def jacobi_norm(params: JacobiParams, m: int) -> float:
    """Squared weighted L2 norm g_m of the degree-m Jacobi polynomial."""
    return math.exp(log_jacobi_norm(params, m))


def norm_ratio(params: JacobiParams, m: int, delta: int) -> float:
    """sqrt(g_{m+delta} / g_m) through the cancellation-safe closed form.

    For delta = +1 the factor (a+b+2m+1)/(a+b+m+1) is identically 1 at
    m = 0, which resolves the removable 0/0 when a+b = -1; the analogous
    factor for delta = -1 is identically 1 at m = 1.
    """
    if delta not in (1, -1):
        raise ValueError(f"delta must be +1 or -1 (got {delta})")
    if m < 0 or m + delta < 0:
        raise ValueError(f"m + delta must be nonnegative (got m={m}, delta={delta})")
    a, b = params.alpha, params.beta
    s = a + b
    if delta == 1:
        base = (a + m + 1.0) * (b + m + 1.0) / ((m + 1.0) * (s + 2.0 * m + 3.0))
        tail = 1.0 if m == 0 else (s + 2.0 * m + 1.0) / (s + m + 1.0)
        return math.sqrt(base * tail)
    base = m * (s + 2.0 * m + 1.0) / ((a + m) * (b + m))
    tail = 1.0 if m == 1 else (s + m) / (s + 2.0 * m - 1.0)
    return math.sqrt(base * tail)
