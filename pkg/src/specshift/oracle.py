"""Brute-force ground truth: dense/sparse truncations built directly from the
operator actions, independent of the recurrence machinery.

``build_Vk_operator`` realizes the averaged shift/adjoint tensor operator on
the degree-k monomial basis; ``build_truncated_sym_product`` compresses the
symmetric shift-diagonal products to the index range [0, N].  Compression
drops images with an out-of-range index, which is exact on the retained
levels because both product operators are strictly graded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from . import blocks
from .eig import dense_sym_eigenvalues
from .weights import WeightSequence, weight_at

SHIFT_DIAG = "shift-diag"          # S_a (.) M
ADJSHIFT_DIAG = "adjshift-diag"    # S_a* (.) M
_PRODUCTS = (SHIFT_DIAG, ADJSHIFT_DIAG)


@dataclass
class TruncatedOperator:
    """A matrix over a labeled orthonormal basis.

    ``matrix`` is a dense ndarray for the small degree-k operators and a
    scipy CSR matrix for the shift-diagonal truncations (whose basis grows
    quadratically in N).
    """

    basis: Sequence[tuple[int, int]]
    matrix: object
    which: str = ""
    meta: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def dense(self) -> np.ndarray:
        if sp.issparse(self.matrix):
            return self.matrix.toarray()
        return np.asarray(self.matrix)

    def levels(self) -> np.ndarray:
        return np.array([i + j for i, j in self.basis])


class CouplingError(RuntimeError):
    """The sector change of basis failed to block-diagonalize the operator;
    signals a construction bug rather than a numerical tolerance issue."""


def build_Vk_operator(k: int, w: WeightSequence) -> TruncatedOperator:
    """Matrix of T = (S_w (x) S_w* + S_w* (x) S_w)/2 on the degree-k
    monomials z^i w^{k-i}, i = 0..k.  Exactly symmetric by construction."""
    if k < 0:
        raise ValueError("k must be >= 0")
    wm = [abs(weight_at(w, i)) for i in range(max(k, 1))]
    M = np.zeros((k + 1, k + 1))
    # the action moves one degree between the factors: entry (i+1, i) couples
    # z^i w^{k-i} -> z^{i+1} w^{k-i-1} with weight w(i) w(k-i-1) / 2
    for i in range(k):
        M[i + 1, i] = M[i, i + 1] = 0.5 * wm[i] * wm[k - 1 - i]
    basis = [(i, k - i) for i in range(k + 1)]
    return TruncatedOperator(basis, M, which="Vk", meta={"k": k})


def _sector_basis(k: int) -> tuple[np.ndarray, int, int]:
    """Orthonormal change of basis (k+1)x(k+1): symmetric-sector columns
    first, then antisymmetric ones."""
    d_sym = blocks.block_dimension(blocks.SYM, k)
    d_asym = blocks.block_dimension(blocks.ASYM, k)
    U = np.zeros((k + 1, k + 1))
    col = 0
    r = 1.0 / math.sqrt(2.0)
    for i in range(d_sym):
        if i == k - i:
            U[i, col] = 1.0
        else:
            U[i, col] = r
            U[k - i, col] = r
        col += 1
    for i in range(d_asym):
        U[i, col] = r
        U[k - i, col] = -r
        col += 1
    return U, d_sym, d_asym


def oracle_block_eigenvalues(kind: str, k: int, w: WeightSequence,
                             tol: float = 1e-14) -> np.ndarray:
    """Eigenvalues of the degree-k sector block obtained by conjugating the
    dense monomial-basis operator into the +/- sector basis and eigensolving
    the sector submatrix with the Jacobi oracle."""
    d = blocks.block_dimension(kind, k)
    if d == 0:
        raise blocks.EmptyBlockError("antisymmetric block at k = 0 is empty")
    M = build_Vk_operator(k, w).dense()
    U, d_sym, _ = _sector_basis(k)
    A = U.T @ M @ U
    scale = max(1.0, float(np.max(np.abs(A))))
    coupling = float(np.max(np.abs(A[:d_sym, d_sym:]))) if d_sym < k + 1 else 0.0
    if coupling > 1e-12 * scale:
        raise CouplingError(f"sector coupling {coupling:.3e} at k={k}")
    sub = A[:d_sym, :d_sym] if kind == blocks.SYM else A[d_sym:, d_sym:]
    return dense_sym_eigenvalues(sub, tol)


def _basis_index(N: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Basis pairs (i, j), i <= j <= N, ordered by level i+j then i, plus a
    pair -> position lookup table."""
    jj, ii = np.meshgrid(np.arange(N + 1), np.arange(N + 1))
    keep = ii <= jj
    ii, jj = ii[keep], jj[keep]
    order = np.lexsort((ii, ii + jj))
    ii, jj = ii[order], jj[order]
    lookup = np.full((N + 1, N + 1), -1, dtype=np.int64)
    lookup[ii, jj] = np.arange(ii.size)
    return ii, jj, lookup


def strictly_level_raising(op: TruncatedOperator) -> bool:
    """True iff every nonzero entry maps basis level s to level s + 1 (which
    forces nilpotency of order at most the number of levels)."""
    M = op.matrix.tocoo() if sp.issparse(op.matrix) else sp.coo_matrix(op.matrix)
    lv = op.levels()
    return bool(np.all(lv[M.row] == lv[M.col] + 1))


def strictly_level_lowering(op: TruncatedOperator) -> bool:
    """True iff every nonzero entry maps basis level s to level s - 1."""
    M = op.matrix.tocoo() if sp.issparse(op.matrix) else sp.coo_matrix(op.matrix)
    lv = op.levels()
    return bool(np.all(lv[M.row] == lv[M.col] - 1))


def build_truncated_sym_product(which: str, alpha: WeightSequence,
                                mu: WeightSequence, N: int) -> TruncatedOperator:
    """Compression of S_a (.) M (or its adjoint-shift variant) to the span of
    the orthonormal basis sqrt(2) e_i (.) e_j (i < j <= N), e_i (.) e_i (i <= N).

    The sqrt(2) bookkeeping converts the plain-tensor action coefficients to
    this basis; images with an index above N are dropped.
    """
    if which not in _PRODUCTS:
        raise ValueError(f"which must be one of {_PRODUCTS}")
    if N < 1:
        raise ValueError("N must be >= 1")
    a = np.array([weight_at(alpha, t) for t in range(N + 1)], dtype=complex)
    m = np.array([weight_at(mu, t) for t in range(N + 1)], dtype=complex)
    ii, jj, lookup = _basis_index(N)
    dim = ii.size
    rows, cols, vals = [], [], []
    r2 = math.sqrt(2.0)

    def emit(src_i, src_j, tgt_i, tgt_j, coeff, src_diag: bool):
        # coeff is the plain e_i (.) e_j coefficient; rescale both ends
        keep = (tgt_i >= 0) & (tgt_j >= 0) & (tgt_i <= N) & (tgt_j <= N)
        src_i, src_j = src_i[keep], src_j[keep]
        ti, tj, c = tgt_i[keep], tgt_j[keep], coeff[keep]
        swap = ti > tj
        ti2 = np.where(swap, tj, ti)
        tj2 = np.where(swap, ti, tj)
        nu_src = 1.0 if src_diag else r2
        nu_tgt = np.where(ti2 == tj2, 1.0, r2)
        rows.append(lookup[ti2, tj2])
        cols.append(lookup[src_i, src_j])
        vals.append(c * (nu_src / nu_tgt))

    diag = ii == jj
    di = ii[diag]
    off_i, off_j = ii[~diag], jj[~diag]
    if which == SHIFT_DIAG:
        # (S_a . M)(e_i . e_j) = (mu_i a_j e_i . e_{j+1} + mu_j a_i e_{i+1} . e_j)/2
        emit(di, di, di, di + 1, m[di] * a[di], src_diag=True)
        emit(off_i, off_j, off_i, off_j + 1,
             0.5 * m[off_i] * a[off_j], src_diag=False)
        emit(off_i, off_j, off_i + 1, off_j,
             0.5 * m[off_j] * a[off_i], src_diag=False)
    else:
        # (S_a* . M)(e_i . e_j) = (mu_j a_{i-1} e_{i-1} . e_j
        #                          + mu_i a_{j-1} e_i . e_{j-1})/2, halves
        # vanishing at i = 0 / j = 0 and merging at i = j
        dpos = di[di >= 1]
        emit(dpos, dpos, dpos - 1, dpos,
             m[dpos] * a[dpos - 1], src_diag=True)
        lower_ok = off_i >= 1
        li, lj = off_i[lower_ok], off_j[lower_ok]
        emit(li, lj, li - 1, lj, 0.5 * m[lj] * a[li - 1], src_diag=False)
        emit(off_i, off_j, off_i, off_j - 1,
             0.5 * m[off_i] * a[off_j - 1], src_diag=False)

    if rows:
        rows = np.concatenate(rows)
        cols = np.concatenate(cols)
        vals = np.concatenate(vals)
    else:  # pragma: no cover
        rows = cols = np.zeros(0, dtype=np.int64)
        vals = np.zeros(0, dtype=complex)
    M = sp.coo_matrix((vals, (rows, cols)), shape=(dim, dim)).tocsr()
    basis = list(zip(ii.tolist(), jj.tolist()))
    return TruncatedOperator(basis, M, which=which, meta={"N": N})
