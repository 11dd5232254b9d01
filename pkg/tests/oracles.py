"""Independent oracles shared across the test modules.

Everything here is deliberately implemented from first principles (direct
sums, explicit formulas, panelled quadrature) or delegated to scipy, so
the routes under test never check themselves.
"""

import math

import numpy as np

TWO_PI = 2.0 * math.pi


def naive_trig_transform(kind: str, x) -> np.ndarray:
    """O(N^2) evaluation of the defining trigonometric sums."""
    x = np.asarray(x, dtype=float)
    n = x.size
    m = np.arange(n)[:, None]
    k = np.arange(n)[None, :]
    kind = kind.upper()
    if kind == "DCT-I":
        inner = x[0] / 2 + ((-1.0) ** m[:, 0]) * x[-1] / 2
        core = np.cos(np.pi * m * k / (n - 1))[:, 1 : n - 1] @ x[1 : n - 1]
        return inner + core
    if kind == "DCT-II":
        return np.cos(np.pi * m * (2 * k + 1) / (2 * n)) @ x
    if kind == "DCT-IV":
        return np.cos(np.pi * (2 * m + 1) * (2 * k + 1) / (4 * n)) @ x
    if kind == "DST-I":
        return np.sin(np.pi * (m + 1) * (k + 1) / (n + 1)) @ x
    if kind == "DST-II":
        return np.sin(np.pi * (m + 1) * (2 * k + 1) / (2 * n)) @ x
    if kind == "DST-IV":
        return np.sin(np.pi * (2 * m + 1) * (2 * k + 1) / (4 * n)) @ x
    raise ValueError(kind)


def jacobi_explicit_sum(a: float, b: float, m: int, t: float) -> float:
    """Degree-m Jacobi value through the explicit finite sum
    sum_s binom(m+a, m-s) binom(m+b, s) ((t-1)/2)^s ((t+1)/2)^{m-s}."""
    total = 0.0
    for s in range(m + 1):
        c1 = math.exp(math.lgamma(m + a + 1) - math.lgamma(m - s + 1) - math.lgamma(a + s + 1))
        c2 = math.exp(math.lgamma(m + b + 1) - math.lgamma(s + 1) - math.lgamma(b + m - s + 1))
        total += c1 * c2 * ((t - 1.0) / 2.0) ** s * ((t + 1.0) / 2.0) ** (m - s)
    return total


def fd_derivative(f, x: float, h: float = 1e-5) -> float:
    """5-point central first derivative."""
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)


def fd_second_derivative(f, x: float, h: float = 1e-4) -> float:
    """5-point central second derivative."""
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (
        12 * h * h
    )


def gauss_panels(f, lo: float, hi: float, width: float, npts: int = 16):
    """Composite Gauss-Legendre quadrature with fixed panel width.

    Accepts vectorised integrands; complex results pass through.
    """
    nodes, weights = np.polynomial.legendre.leggauss(npts)
    edges = np.arange(lo, hi, width)
    total = 0.0
    for e in edges:
        a, b = e, min(e + width, hi)
        xs = 0.5 * (a + b) + 0.5 * (b - a) * nodes
        total = total + 0.5 * (b - a) * np.sum(weights * f(xs))
    return total


def direct_fourier(f, xi: float, halfwidth: float = 42.0) -> complex:
    """(2 pi)^{-1/2} int f(x) e^{-i x xi} dx by oscillation-aware panels.

    Panel width is capped at pi/(1 + |xi|) for the oscillation and at 1 for
    the integrand's own structure.
    """
    width = min(1.0, math.pi / (1.0 + abs(xi)))
    val = gauss_panels(lambda x: f(x) * np.exp(-1j * xi * x), -halfwidth, halfwidth, width, npts=24)
    return complex(val) / math.sqrt(TWO_PI)
