"""Graded blocks of the averaged shift/adjoint tensor operator.

The operator T = (S_w (x) S_w* + S_w* (x) S_w)/2 preserves each span of the
degree-k monomials and splits there into a symmetric-sector and an
antisymmetric-sector tridiagonal block.  This module builds those blocks and
evaluates the three-term determinant recurrences whose roots are their
eigenvalues.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .eig import TridiagonalSym
from .weights import WeightSequence, weight_at

SYM = "sym"
ASYM = "asym"
KINDS = (SYM, ASYM)


def block_dimension(kind: str, k: int) -> int:
    """Dimension of the degree-k block: floor(k/2)+1 in the symmetric sector,
    floor((k-1)/2)+1 in the antisymmetric one (0 at k=0)."""
    _check_kind(kind)
    if k < 0:
        raise ValueError("k must be >= 0")
    if kind == SYM:
        return k // 2 + 1
    return 0 if k == 0 else (k - 1) // 2 + 1


@dataclass(frozen=True, order=True)
class BlockSpec:
    """Identifies one graded block: sector kind and total degree k."""

    kind: str
    k: int

    def __post_init__(self):
        _check_kind(self.kind)
        if self.k < 0:
            raise ValueError("k must be >= 0")

    @property
    def dim(self) -> int:
        return block_dimension(self.kind, self.k)


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")


class EmptyBlockError(ValueError):
    """Requested the antisymmetric block at k = 0, which is {0}."""


def build_block_matrix(kind: str, k: int, w: WeightSequence) -> TridiagonalSym:
    """Tridiagonal matrix of T restricted to the degree-k sector block.

    Unified construction: off-diagonal entry i is w(i) w(k-1-i) / 2, except
    that for even k the last symmetric-sector entry carries an extra sqrt(2)
    (the middle monomial z^{k/2} w^{k/2} is a norm-1 singleton rather than a
    paired combination).  The diagonal is zero except for odd k, where the
    last entry is +/- w((k-1)/2)^2 / 2 by sector.  Weights enter as moduli.
    """
    d = block_dimension(kind, k)
    if d == 0:
        raise EmptyBlockError("antisymmetric block at k = 0 is empty")
    wm = [abs(weight_at(w, i)) for i in range(max(k, 1))]
    diag = np.zeros(d)
    off = np.array([wm[i] * wm[k - 1 - i] / 2.0 for i in range(d - 1)])
    if k % 2 == 1:
        half = wm[(k - 1) // 2] ** 2 / 2.0
        diag[-1] = half if kind == SYM else -half
    elif kind == SYM and d >= 2:
        off[-1] *= np.sqrt(2.0)
    return TridiagonalSym(diag, off)


def _w2(w: WeightSequence, i: int) -> float:
    return abs(weight_at(w, i)) ** 2


def eval_D(n: int, m: int, x: float, w: WeightSequence) -> float:
    """Determinant recurrence for the leading minors of the odd-degree blocks:
    D_m = x D_{m-1} - w^2(m-2) w^2(2n-m) D_{m-2} / 4, with D_{-1} = 0, D_0 = 1."""
    return _three_term(n, m, x, w, shift=0)


def eval_K(n: int, m: int, x: float, w: WeightSequence) -> float:
    """Like eval_D but with the even-degree coupling w^2(m-2) w^2(2n-m+1)."""
    return _three_term(n, m, x, w, shift=1)


def _three_term(n: int, m: int, x: float, w: WeightSequence, shift: int) -> float:
    if n < 1:
        raise ValueError("n must be >= 1")
    if not -1 <= m <= n:
        raise ValueError(f"m must lie in [-1, {n}], got {m}")
    prev, cur = 0.0, 1.0  # D_{-1}, D_0
    if m == -1:
        return prev
    for step in range(1, m + 1):
        if step == 1:
            nxt = x  # the step-1 coupling multiplies D_{-1} = 0
        else:
            nxt = x * cur - 0.25 * _w2(w, step - 2) * _w2(w, 2 * n - step + shift) * prev
        prev, cur = cur, nxt
    return cur


def eval_char_poly(kind: str, k: int, x: float, w: WeightSequence) -> float:
    """Characteristic polynomial det(xI - B) of the degree-k sector block,
    evaluated by the D/K recurrences (not by forming the matrix)."""
    _check_kind(kind)
    d = block_dimension(kind, k)
    if d == 0:
        raise EmptyBlockError("antisymmetric block at k = 0 is empty")
    if k == 0:
        return x
    if k % 2 == 1:
        n = (k + 1) // 2
        sign = -1.0 if kind == SYM else 1.0
        val = (x + sign * 0.5 * _w2(w, n - 1)) * eval_D(n, n - 1, x, w)
        if n >= 2:
            val -= 0.25 * _w2(w, n - 2) * _w2(w, n) * eval_D(n, n - 2, x, w)
        return val
    n = k // 2
    if kind == ASYM:
        return eval_K(n, n, x, w)
    val = x * eval_K(n, n, x, w)
    val -= 0.5 * _w2(w, n - 1) * _w2(w, n) * eval_K(n, n - 1, x, w)
    return val
