"""Eigenvalue extraction for symmetric matrices.

Two deliberately independent algorithms live here:

* Sturm-count bisection for symmetric tridiagonal matrices (the production
  path), which is overflow-free where raw characteristic-polynomial
  evaluation is not, and
* a cyclic Jacobi rotation solver for dense symmetric matrices (the
  brute-force oracle backend).

They share no eigensolving code, so agreement between the two paths is a
meaningful cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


@dataclass
class TridiagonalSym:
    """Real symmetric tridiagonal matrix: diagonal + off-diagonal arrays."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        self.diag = np.asarray(self.diag, dtype=float)
        self.offdiag = np.asarray(self.offdiag, dtype=float)
        if self.diag.ndim != 1 or self.offdiag.ndim != 1:
            raise ValueError("diag and offdiag must be 1-d arrays")
        if self.diag.size < 1:
            raise ValueError("empty tridiagonal matrix")
        if self.offdiag.size != max(self.diag.size - 1, 0):
            raise ValueError("offdiag length must be len(diag) - 1")

    @property
    def dim(self) -> int:
        return self.diag.size

    @property
    def trace(self) -> float:
        return float(self.diag.sum())

    def to_dense(self) -> np.ndarray:
        M = np.diag(self.diag)
        idx = np.arange(self.dim - 1)
        M[idx, idx + 1] = self.offdiag
        M[idx + 1, idx] = self.offdiag
        return M

    def gershgorin(self) -> tuple[float, float]:
        r = np.zeros(self.dim)
        if self.dim > 1:
            r[:-1] += np.abs(self.offdiag)
            r[1:] += np.abs(self.offdiag)
        return float(np.min(self.diag - r)), float(np.max(self.diag + r))


@njit(cache=True)
def _sturm_count_kernel(diag, off2, x, pivmin):
    """Number of eigenvalues strictly below x (LDL^T sign-count recurrence)."""
    count = 0
    q = diag[0] - x
    if abs(q) < pivmin:
        q = -pivmin
    if q < 0.0:
        count += 1
    for i in range(1, diag.size):
        q = (diag[i] - x) - off2[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


@njit(cache=True)
def _bisect_kernel(diag, off2, gl, gu, tol, pivmin, maxit):
    """All eigenvalues of an irreducible block via per-index bisection."""
    n = diag.size
    lo = np.full(n, gl)
    hi = np.full(n, gu)
    for _ in range(maxit):
        moved = False
        for j in range(n):
            if hi[j] - lo[j] > tol:
                moved = True
                mid = 0.5 * (lo[j] + hi[j])
                c = _sturm_count_kernel(diag, off2, mid, pivmin)
                if c >= j + 1:
                    hi[j] = mid
                else:
                    lo[j] = mid
        if not moved:
            break
    return 0.5 * (lo + hi)


def _pivmin(T: TridiagonalSym) -> float:
    scale = max(1.0, float(np.max(np.abs(T.diag))),
                float(np.max(np.abs(T.offdiag))) if T.offdiag.size else 0.0)
    return max(np.finfo(float).tiny / np.finfo(float).eps,
               np.finfo(float).eps ** 2 * scale)


def sturm_count(T: TridiagonalSym, x: float) -> int:
    """Number of eigenvalues of T strictly less than x."""
    off2 = T.offdiag * T.offdiag
    return int(_sturm_count_kernel(T.diag, off2, float(x), _pivmin(T)))


def _split_points(T: TridiagonalSym) -> list[tuple[int, int]]:
    # decouple at negligible off-diagonals (zero weights make exact zeros)
    eps = np.finfo(float).eps
    bounds = []
    start = 0
    for i in range(T.offdiag.size):
        if abs(T.offdiag[i]) <= eps * (abs(T.diag[i]) + abs(T.diag[i + 1])):
            bounds.append((start, i + 1))
            start = i + 1
    bounds.append((start, T.dim))
    return bounds


def tridiag_eigenvalues(T: TridiagonalSym, tol: float) -> np.ndarray:
    """All eigenvalues (with multiplicity), ascending, each bracketed to
    an absolute width <= tol by bisection on Sturm counts."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    out = []
    for a, b in _split_points(T):
        d = T.diag[a:b]
        if d.size == 1:
            out.append(d)
            continue
        sub = TridiagonalSym(d, T.offdiag[a:b - 1])
        gl, gu = sub.gershgorin()
        pad = tol + np.finfo(float).eps * max(abs(gl), abs(gu))
        gl, gu = gl - pad, gu + pad
        maxit = int(math.ceil(math.log2(max((gu - gl) / tol, 2.0)))) + 3
        off2 = sub.offdiag * sub.offdiag
        out.append(_bisect_kernel(d, off2, gl, gu, float(tol),
                                  _pivmin(sub), maxit))
    return np.sort(np.concatenate(out))


@njit(cache=True)
def _jacobi_kernel(A, tol, max_sweeps):
    """Cyclic Jacobi sweeps until off-diagonal Frobenius mass <= tol * ||A||_F."""
    n = A.shape[0]
    norm = 0.0
    for i in range(n):
        for j in range(n):
            norm += A[i, j] * A[i, j]
    norm = math.sqrt(norm)
    if norm == 0.0:
        return np.zeros(n)
    for _ in range(max_sweeps):
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off += 2.0 * A[i, j] * A[i, j]
        if math.sqrt(off) <= tol * norm:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                for i in range(n):
                    if i != p and i != q:
                        aip = A[i, p]
                        aiq = A[i, q]
                        A[i, p] = aip * c - aiq * s
                        A[p, i] = A[i, p]
                        A[i, q] = aiq * c + aip * s
                        A[q, i] = A[i, q]
                A[p, p] -= t * apq
                A[q, q] += t * apq
                A[p, q] = 0.0
                A[q, p] = 0.0
    w = np.empty(n)
    for i in range(n):
        w[i] = A[i, i]
    return w


def dense_sym_eigenvalues(M: np.ndarray, tol: float = 1e-14) -> np.ndarray:
    """All eigenvalues of a dense real symmetric matrix via cyclic Jacobi
    rotations, ascending."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("matrix must be square")
    scale = max(1.0, float(np.max(np.abs(M))))
    if float(np.max(np.abs(M - M.T))) > 1e-12 * scale:
        raise ValueError("matrix is not symmetric")
    A = 0.5 * (M + M.T)  # exact symmetrization of representable noise
    return np.sort(_jacobi_kernel(A, float(tol), 100))


@dataclass
class MatchReport:
    """Result of a tolerance-aware comparison of two sorted multisets."""

    matched: bool
    max_deviation: float
    first_mismatch: Optional[int]
    reason: str

    def __bool__(self) -> bool:
        return self.matched


def multiset_match(A, B, tol: float) -> MatchReport:
    """Greedy pairing of two sorted real multisets: match iff equal length
    and every paired |a - b| <= tol."""
    a = np.sort(np.asarray(A, dtype=float).ravel())
    b = np.sort(np.asarray(B, dtype=float).ravel())
    if a.size != b.size:
        return MatchReport(False, math.inf, None,
                           f"length mismatch: {a.size} vs {b.size}")
    if a.size == 0:
        return MatchReport(True, 0.0, None, "empty")
    dev = np.abs(a - b)
    worst = int(np.argmax(dev))
    if dev[worst] <= tol:
        return MatchReport(True, float(dev[worst]), None, "ok")
    return MatchReport(False, float(dev[worst]), worst,
                       f"deviation {dev[worst]:.3e} > tol at index {worst}")
