"""Coefficient-space operator algebra.

Differentiation acts on coefficient vectors by

    (D c)_m = b_{m-1} c_{m-1} - b_m c_{m+1},

the transpose of the matrix whose columns hold phi_m' (the two differ by a
sign because that matrix is skew); this is the convention under which
synthesize(diff_apply(c)) equals the pointwise derivative, and the one
every test below pins.  Multiplication by a(x) = sum a_m T~_m(tanh x) in
the Chebyshev-T basis is the symmetric, banded Toeplitz-plus-Hankel
operator; its entries are the exact Gram integrals int a phi_i phi_j dx,
which fixes the T~_0 = 1/sqrt 2 scaling on row/column 0 and a checkerboard
sign carried over from the (-1)^m in the basis functions.
"""

import math
from dataclasses import dataclass

import numpy as np

from .basis import DiffOp, Expansion

__all__ = [
    "BandedMatrix",
    "MultOp",
    "SolveResult",
    "diff_apply",
    "diff_squared_apply",
    "dense_diff",
    "mult_op",
    "assemble_first_order",
    "solve_first_order",
]

_SQRT1_2 = 1.0 / math.sqrt(2.0)


def diff_apply(d: DiffOp, c) -> np.ndarray:
    """Apply the differentiation operator to a coefficient window.

    Length-n input produces length-n output with the one-slot lookahead
    c_n = 0; pad with trailing zeros when the output must match the
    infinite operator exactly.
    """
    c = np.asarray(c, dtype=float)
    n = c.size
    if n == 0:
        return np.zeros(0)
    if len(d) < n:
        raise ValueError(f"DiffOp holds {len(d)} couplings, need at least {n}")
    b = d.b
    out = np.zeros(n)
    out[1:] += b[: n - 1] * c[: n - 1]
    out[:-1] -= b[: n - 1] * c[1:]
    return out


def diff_squared_apply(d: DiffOp, c) -> np.ndarray:
    """Apply D twice with two-slot zero padding.

    The padded window makes the result equal to the infinite-matrix D^2
    restricted to the first n entries, so the window never sees truncation
    (and the quadratic form c . D^2 c = -|Dc|^2 stays nonpositive).
    """
    c = np.asarray(c, dtype=float)
    n = c.size
    if n == 0:
        return np.zeros(0)
    padded = np.concatenate([c, [0.0, 0.0]])
    return diff_apply(d, diff_apply(d, padded))[:n]


def dense_diff(d: DiffOp, n: int) -> np.ndarray:
    """Dense n-by-n window of the coefficient-space differentiation matrix.

    Sub/super diagonals hold +-b_m built from shared values, so the
    skew-symmetry D + D^T = 0 is bitwise.
    """
    if len(d) < n - 1:
        raise ValueError(f"DiffOp holds {len(d)} couplings, need at least {n - 1}")
    out = np.zeros((n, n))
    idx = np.arange(n - 1)
    out[idx + 1, idx] = d.b[: n - 1]
    out[idx, idx + 1] = -d.b[: n - 1]
    return out


class MultOp:
    """Multiplication by a(x) = sum_{m<=M} a_m T~_m(tanh x) in coefficient space.

    Entries (i, j >= 1):
        i != j : (-1)^{i+j} (a_{|i-j|} + a_{i+j}) / 2
        i == j : a_0/sqrt(2) + a_{2i}/2
    row/column 0:
        (0, 0) : a_0/sqrt(2)
        (0, k) : (-1)^k a_k/sqrt(2)
    Symmetric, bandwidth M.  On the block i, j >= 1 this is exactly
    Toeplitz + Hankel with t_0 = a_0/sqrt 2, t_k = (-1)^k a_k/2 and
    h_s = (-1)^s a_s/2.
    """

    def __init__(self, a_coeffs, size: int):
        a = np.asarray(a_coeffs, dtype=float)
        if a.ndim != 1 or a.size == 0:
            raise ValueError("coefficient sequence must be nonempty and 1-d")
        if not np.all(np.isfinite(a)):
            raise ValueError("coefficients must be finite")
        if size < 1:
            raise ValueError(f"size must be positive (got {size})")
        self.a_coeffs = a.copy()
        self.a_coeffs.flags.writeable = False
        self.size = size
        self.bandwidth = a.size - 1

    def _a(self, k: int) -> float:
        return self.a_coeffs[k] if 0 <= k <= self.bandwidth else 0.0

    def entry(self, i: int, j: int) -> float:
        if i < 0 or j < 0:
            raise ValueError("indices must be nonnegative")
        if i > j:
            i, j = j, i
        if i == 0:
            if j == 0:
                return self._a(0) * _SQRT1_2
            sign = -1.0 if j % 2 else 1.0
            return sign * self._a(j) * _SQRT1_2
        if i == j:
            return self._a(0) * _SQRT1_2 + 0.5 * self._a(2 * i)
        sign = -1.0 if (i + j) % 2 else 1.0
        return sign * 0.5 * (self._a(j - i) + self._a(i + j))

    def apply(self, c) -> np.ndarray:
        """Exact banded action on a coefficient window (no truncation error
        for windows at least as long as the input support plus M)."""
        c = np.asarray(c, dtype=float)
        n = c.size
        M = self.bandwidth
        out = np.zeros(n)
        for i in range(n):
            lo = max(0, i - M)
            hi = min(n - 1, i + M)
            out[i] = sum(self.entry(i, j) * c[j] for j in range(lo, hi + 1))
        return out

    def dense(self, rows: int | None = None, cols: int | None = None) -> np.ndarray:
        rows = self.size if rows is None else rows
        cols = self.size if cols is None else cols
        out = np.zeros((rows, cols))
        for i in range(rows):
            lo = max(0, i - self.bandwidth)
            hi = min(cols - 1, i + self.bandwidth)
            for j in range(lo, hi + 1):
                out[i, j] = self.entry(i, j)
        return out

    def toeplitz_hankel_parts(self):
        """Sequences (t, h) with entry(i, j) = t_|i-j| + h_{i+j} on i, j >= 1."""
        M = self.bandwidth
        t = np.zeros(M + 1)
        h = np.zeros(2 * self.size)
        t[0] = self._a(0) * _SQRT1_2
        for k in range(1, M + 1):
            t[k] = (-1.0) ** k * 0.5 * self._a(k)
        for s in range(2, min(2 * self.size, M + 1)):
            h[s] = (-1.0) ** s * 0.5 * self._a(s)
        return t, h


def mult_op(a_coeffs, bandwidth: int, size: int) -> MultOp:
    """Assemble the multiplication operator for a_0..a_M (M = bandwidth).

    Raises
    ------
    ValueError
        If bandwidth >= size, or nonzero coefficients lie beyond bandwidth.
    """
    a = np.asarray(a_coeffs, dtype=float)
    if bandwidth < 0:
        raise ValueError(f"bandwidth must be nonnegative (got {bandwidth})")
    if bandwidth >= size:
        raise ValueError(f"bandwidth must be smaller than size (got M={bandwidth}, N={size})")
    if a.size > bandwidth + 1:
        if np.any(a[bandwidth + 1 :] != 0.0):
            raise ValueError("nonzero coefficients beyond the declared bandwidth")
        a = a[: bandwidth + 1]
    elif a.size < bandwidth + 1:
        a = np.concatenate([a, np.zeros(bandwidth + 1 - a.size)])
    return MultOp(a, size)


@dataclass(eq=False)
class BandedMatrix:
    """Rectangular matrix in band storage: data[i - j + upper_bw, j] = A[i, j]."""

    rows: int
    cols: int
    lower_bw: int
    upper_bw: int
    data: np.ndarray

    @classmethod
    def zeros(cls, rows: int, cols: int, lower_bw: int, upper_bw: int) -> "BandedMatrix":
        if rows < 1 or cols < 1:
            raise ValueError("matrix dimensions must be positive")
        data = np.zeros((lower_bw + upper_bw + 1, cols))
        return cls(rows=rows, cols=cols, lower_bw=lower_bw, upper_bw=upper_bw, data=data)

    def _inband(self, i: int, j: int) -> bool:
        return 0 <= i < self.rows and 0 <= j < self.cols and -self.upper_bw <= i - j <= self.lower_bw

    def get(self, i: int, j: int) -> float:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"index ({i}, {j}) out of range")
        if not self._inband(i, j):
            return 0.0
        return float(self.data[i - j + self.upper_bw, j])

    def set(self, i: int, j: int, value: float) -> None:
        if not self._inband(i, j):
            raise IndexError(f"({i}, {j}) lies outside the stored band")
        self.data[i - j + self.upper_bw, j] = value

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols))
        for j in range(self.cols):
            lo = max(0, j - self.upper_bw)
            hi = min(self.rows - 1, j + self.lower_bw)
            for i in range(lo, hi + 1):
                out[i, j] = self.data[i - j + self.upper_bw, j]
        return out

    def matvec(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        if v.size != self.cols:
            raise ValueError(f"vector length {v.size} does not match {self.cols} columns")
        out = np.zeros(self.rows)
        for j in range(self.cols):
            lo = max(0, j - self.upper_bw)
            hi = min(self.rows - 1, j + self.lower_bw)
            out[lo : hi + 1] += self.data[lo - j + self.upper_bw : hi - j + self.upper_bw + 1, j] * v[j]
        return out


def assemble_first_order(d: DiffOp, mult: MultOp, n: int) -> BandedMatrix:
    """Rectangular banded truncation of L = D + A for u' + a(x) u.

    The truncation keeps n columns and n + bandwidth rows, so every
    equation touching the retained coefficients is present; bandwidth is
    max(1, M) on both sides.
    """
    if n < 1:
        raise ValueError(f"truncation size must be positive (got {n})")
    bw = max(1, mult.bandwidth)
    rows = n + bw
    if len(d) < rows:
        raise ValueError(f"DiffOp holds {len(d)} couplings, need at least {rows}")
    out = BandedMatrix.zeros(rows, n, lower_bw=bw, upper_bw=bw)
    for j in range(n):
        lo = max(0, j - bw)
        hi = min(rows - 1, j + bw)
        for i in range(lo, hi + 1):
            v = mult.entry(i, j)
            if i == j + 1:
                v += d.b[j]
            elif j == i + 1:
                v -= d.b[i]
            if v != 0.0:
                out.set(i, j, v)
    return out


def banded_qr_lstsq(mat: BandedMatrix, rhs, rank_tol: float = 1e-13):
    """Least-squares solve of a banded rectangular system by Householder QR.

    Reflectors are applied column by column on the stored band with a
    fill-in allowance of lower_bw extra superdiagonals.  Returns the
    solution and the projected residual norm |Q^T b|_tail.

    Raises
    ------
    numpy.linalg.LinAlgError
        If a diagonal of R falls below rank_tol relative to the largest.
    """
    m, n = mat.rows, mat.cols
    if m < n:
        raise ValueError("system must have at least as many rows as columns")
    b = np.asarray(rhs, dtype=float).copy()
    if b.size != m:
        raise ValueError(f"rhs length {b.size} does not match {m} rows")
    lb, ub = mat.lower_bw, mat.upper_bw
    ubw = lb + ub  # upper bandwidth of R after fill-in
    W = np.zeros((lb + ubw + 1, n))
    for j in range(n):
        lo = max(0, j - ub)
        hi = min(m - 1, j + lb)
        for i in range(lo, hi + 1):
            W[i - j + ubw, j] = mat.data[i - j + mat.upper_bw, j]

    for j in range(n):
        i_hi = min(j + lb, m - 1)
        length = i_hi - j + 1
        if length <= 1:
            continue
        col = W[ubw : ubw + length, j].copy()
        normx = math.sqrt(float(col @ col))
        if normx == 0.0:
            continue
        alpha = -math.copysign(normx, col[0]) if col[0] != 0.0 else -normx
        v = col
        v[0] -= alpha
        vnorm2 = float(v @ v)
        if vnorm2 == 0.0:
            continue
        W[ubw, j] = alpha
        W[ubw + 1 : ubw + length, j] = 0.0
        for k in range(j + 1, min(j + ubw, n - 1) + 1):
            off = j - k + ubw
            y = W[off : off + length, k]
            coef = 2.0 * float(v @ y) / vnorm2
            y -= coef * v
        yb = b[j : j + length]
        coef = 2.0 * float(v @ yb) / vnorm2
        yb -= coef * v

    rdiag = np.abs(W[ubw, :])
    biggest = rdiag.max()
    if biggest == 0.0 or rdiag.min() < rank_tol * biggest:
        worst = int(rdiag.argmin())
        raise np.linalg.LinAlgError(
            f"rank-deficient system: |R[{worst},{worst}]| = {rdiag.min():.3e} "
            f"below {rank_tol:.1e} of max {biggest:.3e}"
        )
    x = np.zeros(n)
    for j in range(n - 1, -1, -1):
        acc = b[j]
        for k in range(j + 1, min(j + ubw, n - 1) + 1):
            acc -= W[j - k + ubw, k] * x[k]
        x[j] = acc / W[ubw, j]
    tail = b[n:]
    return x, math.sqrt(float(tail @ tail))


@dataclass(frozen=True, eq=False)
class SolveResult:
    """Least-squares solution of the first-order operator with its residual."""

    expansion: Expansion
    residual: float


def solve_first_order(d: DiffOp, mult: MultOp, rhs: Expansion, n: int) -> SolveResult:
    """Solve u' + a(x) u = f in coefficient space on an n-column window.

    The rectangular banded truncation of L = D + A is factored by
    Householder QR; the reported residual is |L u - f| on the retained
    window.  A multiplication operator that is identically zero is
    rejected (u' = f alone has no unique solution in L2).
    """
    if not np.any(mult.a_coeffs != 0.0):
        raise ValueError("singular operator: a(x) = 0 leaves u' = f without a unique solution")
    mat = assemble_first_order(d, mult, n)
    b = np.zeros(mat.rows)
    take = min(len(rhs), mat.rows)
    b[:take] = rhs.coeffs[:take]
    x, _ = banded_qr_lstsq(mat, b)
    residual = float(np.linalg.norm(mat.matvec(x) - b))
    return SolveResult(expansion=Expansion(spec=rhs.spec, coeffs=x), residual=residual)
