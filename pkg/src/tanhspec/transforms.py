"""Expansion coefficients: fast trigonometric paths and the quadrature path.

For the four half-integer parameter pairs the coefficient integrals reduce
to cosine/sine sums over the first-kind Chebyshev angles
theta_k = (2k+1) pi / (2N), evaluated with FFT-based kernels in
O(N log N); every other parameter pair goes through an N-point
Gauss-Jacobi rule in O(N^2).  Both routes approximate the same integrals
(quadrature semantics, no endpoint samples), so they agree to rounding on
band-limited inputs and converge together otherwise.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import fft as _sfft

from .basis import BasisSpec, Expansion, clenshaw_eval
from .jacobi import gauss_jacobi, orthonormal_eval_batch
from .special import JacobiParams

__all__ = [
    "SampleGrid",
    "dct",
    "sample_grid",
    "analyze_full",
    "analyze_half",
    "analyze_unweighted",
    "synthesize",
]

_SQRT_PI = math.sqrt(math.pi)
_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)

#: transform kinds with their defining sums (x of length N, m = 0..N-1):
#:   DCT-I : y_m = x_0/2 + (-1)^m x_{N-1}/2 + sum_{n=1}^{N-2} x_n cos(pi m n / (N-1))
#:   DCT-II: y_m = sum_n x_n cos(pi m (2n+1) / (2N))
#:   DCT-IV: y_m = sum_n x_n cos(pi (2m+1)(2n+1) / (4N))
#:   DST-I : y_m = sum_n x_n sin(pi (m+1)(n+1) / (N+1))
#:   DST-II: y_m = sum_n x_n sin(pi (m+1)(2n+1) / (2N))
#:   DST-IV: y_m = sum_n x_n sin(pi (2m+1)(2n+1) / (4N))
_KERNELS = {
    "DCT-I": (_sfft.dct, 1),
    "DCT-II": (_sfft.dct, 2),
    "DCT-IV": (_sfft.dct, 4),
    "DST-I": (_sfft.dst, 1),
    "DST-II": (_sfft.dst, 2),
    "DST-IV": (_sfft.dst, 4),
}


def dct(kind: str, data) -> np.ndarray:
    """Trigonometric transform of `data` per the defining sums above.

    The FFT backend is O(N log N) for every length (mixed radix); the
    backend's convention is exactly twice each sum, hence the 0.5 factor.
    """
    key = kind.upper()
    if key not in _KERNELS:
        raise ValueError(f"unknown transform kind {kind!r}")
    x = np.asarray(data, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise ValueError("data must be a nonempty 1-d sequence")
    if key == "DCT-I" and x.size < 2:
        raise ValueError("DCT-I requires at least two samples")
    fn, typ = _KERNELS[key]
    return 0.5 * fn(x, type=typ)


@dataclass(frozen=True, eq=False)
class SampleGrid:
    """First-kind Chebyshev angles with their mapped real-line sample points."""

    theta: np.ndarray
    x: np.ndarray
    size: int


@lru_cache(maxsize=64)
def _full_grid(n: int):
    k = np.arange(n)
    theta = (2.0 * k + 1.0) * math.pi / (2.0 * n)
    t = np.cos(theta)
    x = np.arctanh(t)
    half = 0.5 * theta
    return theta, t, x, np.sin(half), np.cos(half), np.sin(theta)


@lru_cache(maxsize=64)
def _half_grid(n: int):
    k = np.arange(n)
    theta = (2.0 * k + 1.0) * math.pi / (2.0 * n)
    t = np.cos(theta)
    x = np.arctanh(np.sqrt(0.5 * (1.0 + t)))
    half = 0.5 * theta
    return theta, t, x, np.sin(half), np.cos(half), np.sin(theta)


def sample_grid(mode: str, n: int) -> SampleGrid:
    """The sampling grid used by the fast paths (no endpoint samples)."""
    if n < 1:
        raise ValueError(f"grid size must be positive (got {n})")
    if mode == "full":
        theta, _, x, _, _, _ = _full_grid(n)
    elif mode == "half":
        theta, _, x, _, _, _ = _half_grid(n)
    else:
        raise ValueError(f"mode must be 'full' or 'half' (got {mode!r})")
    return SampleGrid(theta=theta, x=x, size=n)


def _sample(f, x: np.ndarray) -> np.ndarray:
    try:
        vals = np.asarray(f(x), dtype=float)
        if vals.shape != x.shape:
            raise ValueError
    except (ValueError, TypeError):
        # scalar-only callables are sampled pointwise
        vals = np.array([float(f(xi)) for xi in x])
    bad = ~np.isfinite(vals)
    if np.any(bad):
        where = x[bad][0]
        raise ValueError(
            f"non-finite sample f({where!r}); the function decays too slowly "
            "for this basis (modified integrand unbounded)"
        )
    return vals


def _is_half_integer_pair(params: JacobiParams) -> bool:
    return abs(params.alpha) == 0.5 and abs(params.beta) == 0.5


def _alternate_signs(c: np.ndarray) -> np.ndarray:
    c[1::2] *= -1.0
    return c


def _fast_full(params: JacobiParams, f, n: int) -> np.ndarray:
    a, b = params.alpha, params.beta
    theta, t, x, sin_h, cos_h, sin_t = _full_grid(n)
    fx = _sample(f, x)
    # modified function F = f(x) / [(1-t)^{(a+1)/2} (1+t)^{(b+1)/2}],
    # written in theta to avoid endpoint cancellation:
    # (1-t) = 2 sin^2(theta/2), (1+t) = 2 cos^2(theta/2)
    w = 2.0 ** (0.5 * (a + b + 2.0)) * sin_h ** (a + 1.0) * cos_h ** (b + 1.0)
    F = fx / w
    scale = math.pi / n
    if (a, b) == (-0.5, -0.5):
        y = dct("DCT-II", F)
        c = scale * y
        c[0] /= _SQRT_PI
        c[1:] *= _SQRT_2_OVER_PI
    elif (a, b) == (0.5, 0.5):
        y = dct("DST-II", F * sin_t)
        # the m = N-1 integrand contains cos(2N theta), the one frequency the
        # first-kind midpoint rule aliases (onto the constant, doubling the
        # band-limited contribution); halving restores rule exactness
        y[-1] *= 0.5
        c = scale * _SQRT_2_OVER_PI * y
    elif (a, b) == (0.5, -0.5):
        y = dct("DST-IV", F * sin_h)
        c = (2.0 * scale / _SQRT_PI) * y
    else:  # (-0.5, 0.5)
        y = dct("DCT-IV", F * cos_h)
        c = (2.0 * scale / _SQRT_PI) * y
    return _alternate_signs(c)


def _quadrature_full(params: JacobiParams, f, n: int) -> np.ndarray:
    rule = gauss_jacobi(params, n)
    t = rule.nodes
    x = np.arctanh(t)
    fx = _sample(f, x)
    F = fx / ((1.0 - t) ** (0.5 * (params.alpha + 1.0)) * (1.0 + t) ** (0.5 * (params.beta + 1.0)))
    Q = orthonormal_eval_batch(params, n - 1, t)
    c = Q @ (rule.weights * F)
    return _alternate_signs(c)


def analyze_full(spec: BasisSpec, f, n: int, method: str = "auto") -> Expansion:
    """First n expansion coefficients of the callable f in a full-range basis.

    method 'fast' forces the trigonometric path (half-integer parameter
    pairs only), 'quadrature' forces the Gauss-Jacobi path, 'auto' picks
    fast whenever available.
    """
    if spec.mode != "full":
        raise ValueError("analyze_full requires a full-mode basis spec")
    if n < 1:
        raise ValueError(f"coefficient count must be positive (got {n})")
    if method not in ("auto", "fast", "quadrature"):
        raise ValueError(f"unknown method {method!r}")
    fast = _is_half_integer_pair(spec.params)
    if method == "fast" and not fast:
        raise ValueError("fast path requires alpha, beta in {-1/2, +1/2}")
    if method == "auto":
        method = "fast" if fast else "quadrature"
    if method == "fast":
        c = _fast_full(spec.params, f, n)
    else:
        c = _quadrature_full(spec.params, f, n)
    return Expansion(spec=spec, coeffs=c)


def analyze_half(spec: BasisSpec, f, n: int) -> Expansion:
    """First n coefficients through the even/odd half-range transforms.

    f is split into even and odd parts sampled on (0, inf); even-index
    coefficients come from the (alpha, -1/2) system, odd ones from
    (alpha, +1/2), interleaved as (c_0, c_1, c_2, ...).  For
    alpha = -1/2 the two transforms are cosine-type kernels (DCT-II and
    DCT-IV), for alpha = +1/2 sine-type (DST-IV and DST-II); any other
    alpha uses Gauss-Jacobi quadrature.
    """
    if spec.mode != "half":
        raise ValueError("analyze_half requires a half-mode basis spec")
    if n < 2 or n % 2:
        raise ValueError(f"coefficient count must be even and >= 2 (got {n})")
    a = spec.params.alpha
    nh = n // 2
    root2 = math.sqrt(2.0)
    quarter = 2.0 ** 0.25

    if a in (-0.5, 0.5):
        grid = _half_grid(nh)
        theta, t, x, sin_h, cos_h, sin_t = grid
        fp = _sample(f, x)
        fm = _sample(f, -x)
        fe = 0.5 * (fp + fm)
        fo = 0.5 * (fp - fm)
        # (1-t) = 2 sin^2(theta/2), (1+t) = 2 cos^2(theta/2)
        wE = (2.0 * sin_h**2) ** (0.5 * (1.0 + a))
        FE = fe / wE
        FO = fo / (wE * root2 * cos_h)
        scale = math.pi / nh
        if a == -0.5:
            y = dct("DCT-II", FE)
            ce = scale * y
            ce[0] /= _SQRT_PI
            ce[1:] *= _SQRT_2_OVER_PI
            yo = dct("DCT-IV", FO * cos_h)
            co = (2.0 * scale / _SQRT_PI) * yo
        else:
            y = dct("DST-IV", FE * sin_h)
            ce = (2.0 * scale / _SQRT_PI) * y
            yo = dct("DST-II", FO * sin_t)
            yo[-1] *= 0.5  # same top-frequency aliasing fix as the full U path
            co = scale * _SQRT_2_OVER_PI * yo
    else:
        ce = _half_quadrature(JacobiParams(a, -0.5), f, nh, odd=False)
        co = _half_quadrature(JacobiParams(a, 0.5), f, nh, odd=True)

    c = np.empty(n)
    c[0::2] = quarter * ce
    c[1::2] = -quarter * co
    return Expansion(spec=spec, coeffs=c)


def _half_quadrature(par: JacobiParams, f, nh: int, odd: bool) -> np.ndarray:
    a = par.alpha
    rule = gauss_jacobi(par, nh)
    t = rule.nodes
    x = np.arctanh(np.sqrt(0.5 * (1.0 + t)))
    fp = _sample(f, x)
    fm = _sample(f, -x)
    if odd:
        F = 0.5 * (fp - fm) / ((1.0 - t) ** (0.5 * (1.0 + a)) * np.sqrt(1.0 + t))
    else:
        F = 0.5 * (fp + fm) / (1.0 - t) ** (0.5 * (1.0 + a))
    Q = orthonormal_eval_batch(par, nh - 1, t)
    return Q @ (rule.weights * F)


def analyze_unweighted(f, m_max: int, n: int | None = None) -> np.ndarray:
    """Coefficients a_0..a_{m_max} of f(x) = sum a_m T~_m(tanh x).

    The unweighted first-kind series (T~_0 = 1/sqrt 2, T~_m = T_m) used for
    variable coefficients of multiplication operators; same DCT machinery
    as the Chebyshev-T transform but without the boundary-weight division.
    """
    if m_max < 0:
        raise ValueError(f"m_max must be nonnegative (got {m_max})")
    if n is None:
        n = max(32, 2 * (m_max + 1))
    if n <= m_max:
        raise ValueError("sample count must exceed m_max")
    _, _, x, _, _, _ = _full_grid(n)
    fx = _sample(f, x)
    y = dct("DCT-II", fx)
    coeffs = (2.0 / n) * y
    coeffs[0] /= math.sqrt(2.0)
    return coeffs[: m_max + 1]


def synthesize(e: Expansion, points) -> np.ndarray:
    """Evaluate the expansion at the given points (Clenshaw per point batch)."""
    pts = np.atleast_1d(np.asarray(points, dtype=float))
    return np.asarray(clenshaw_eval(e, pts))
