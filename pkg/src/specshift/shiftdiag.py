"""Symmetric tensor products of a weighted shift with a diagonal operator.

Covers the action coefficients and kernel induction for S_a (.) M, the norm
sandwich and certified eigenvector disks for S_a* (.) M, and the unweighted
rank-one eigenvectors that show the disk inclusion is not sharp.

Coefficient convention: a :class:`SymCoefficientMap` stores the plain
coefficients c_{ij} of v = sum c_{ij} e_i (.) e_j over i <= j.  Residual
certification against the truncated operators is the normative contract, so
any consistent convention is interchangeable; this is the one used
throughout the module.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import oracle
from .weights import ScalarEstimate, WeightSequence, inf_geo_mean, sup_modulus, weight_at

_SQRT2 = math.sqrt(2.0)


class HypothesisError(ValueError):
    """A weight required to be nonzero vanishes on the scanned range."""


class OutsideDiskError(ValueError):
    """The requested eigenvalue lies outside the certified disk."""


class CertificationError(RuntimeError):
    """The residual target could not be met within the truncation budget."""


@dataclass
class SymCoefficientMap:
    """Finite map (i, j) -> coefficient with 0 <= i <= j (plain convention,
    see module docstring)."""

    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        for (i, j) in self.entries:
            if not 0 <= i <= j:
                raise ValueError(f"key ({i}, {j}) violates 0 <= i <= j")

    def to_component_vector(self, op: oracle.TruncatedOperator) -> np.ndarray:
        """Components in the orthonormal basis of ``op`` (entries outside the
        truncation are an error)."""
        v = np.zeros(op.dim, dtype=complex)
        index = {pair: pos for pos, pair in enumerate(op.basis)}
        for (i, j), c in self.entries.items():
            scale = 1.0 if i == j else 1.0 / _SQRT2  # e_i (.) e_j = f_ij / sqrt(2)
            v[index[(i, j)]] += c * scale
        return v


def apply_shift_diag(i: int, j: int, alpha: WeightSequence,
                     mu: WeightSequence) -> SymCoefficientMap:
    """Image of e_i (.) e_j under S_a (.) M as a canonical coefficient map:
    (mu_i a_j) e_i (.) e_{j+1} / 2 + (mu_j a_i) e_{i+1} (.) e_j / 2, the two
    halves merging when i = j."""
    if not 0 <= i <= j:
        raise ValueError("require 0 <= i <= j")
    mi, mj = weight_at(mu, i), weight_at(mu, j)
    ai, aj = weight_at(alpha, i), weight_at(alpha, j)
    out: dict = {}
    if i == j:
        out[(i, i + 1)] = mi * ai
    else:
        out[(i, j + 1)] = 0.5 * mi * aj
        key = (i + 1, j) if i + 1 <= j else (j, i + 1)
        out[key] = out.get(key, 0.0) + 0.5 * mj * ai
    return SymCoefficientMap(out)


@dataclass
class KernelSolveReport:
    """Outcome of the forward zeroing induction on the coefficient wedge."""

    trivial_only: bool
    lam: complex
    N: int
    rows_determined: int
    kernel_map: Optional[SymCoefficientMap] = None
    witness: Optional[int] = None
    trace: dict = field(default_factory=dict)


def _require_nonvanishing(seq: WeightSequence, N: int, name: str) -> None:
    for i in range(N + 1):
        if weight_at(seq, i) == 0:
            raise HypothesisError(f"{name}_{i} = 0 violates the nonvanishing hypothesis")


def kernel_induction_solve(alpha: WeightSequence, mu: WeightSequence,
                           lam: complex, N: int) -> KernelSolveReport:
    """Row-by-row zeroing of a candidate eigenvector's coefficient wedge.

    Executes the coefficient equations (1)-(6) of the eigen-system for
    (S_a (.) M) v = lam v literally, restricted to column indices <= N.  Each
    forced zero is tagged with the equation that produced it.  Only rows whose
    full set of forcing equations lies inside the truncation are claimed, so
    compression artifacts never yield a false zero.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    _require_nonvanishing(alpha, N, "alpha")
    lam = complex(lam)
    if lam == 0:
        for i in range(N + 1):
            if weight_at(mu, i) == 0:
                # (S_a (.) M)(e_i (.) e_i) = 0: an explicit kernel vector
                return KernelSolveReport(
                    trivial_only=False, lam=lam, N=N, rows_determined=0,
                    kernel_map=SymCoefficientMap({(i, i): 1.0}), witness=i)
        return _induction_lambda_zero(N)
    _require_nonvanishing(mu, N, "mu")
    return _induction_lambda_nonzero(lam, N)


def _induction_lambda_zero(N: int) -> KernelSolveReport:
    trace: dict = {(0, 0): "(2)"}
    for l in range(1, N):
        trace[(0, l)] = "(3)"  # forced by the coefficient at (0, l+1)
    k = 0
    while True:
        k += 1
        grew = False
        if k <= N and (k - 1, k) not in trace:
            trace[(k - 1, k)] = "(4)"  # coefficient at (k, k), no prerequisites
            grew = True
        if k + 1 <= N and (k - 1, k + 1) in trace and (k, k) not in trace:
            trace[(k, k)] = "(5)"
            grew = True
        for l in range(k + 2, N):
            if (l + 1 <= N and (k - 1, l + 1) in trace
                    and (k, l) not in trace):
                trace[(k, l)] = "(6)"
                grew = True
        if not grew:
            break
    rows = _rows_fully_determined(trace, N)
    return KernelSolveReport(trivial_only=True, lam=0.0, N=N,
                             rows_determined=rows, trace=trace)


def _induction_lambda_nonzero(lam: complex, N: int) -> KernelSolveReport:
    trace: dict = {(0, 0): "(1)"}
    if N >= 1:
        trace[(0, 1)] = "(2)"
    for l in range(2, N + 1):
        trace[(0, l)] = "(3)"
    for k in range(1, N + 1):
        if (k - 1, k) in trace:
            trace[(k, k)] = "(4)"
        if k + 1 <= N and (k, k) in trace and (k - 1, k + 1) in trace:
            trace[(k, k + 1)] = "(5)"
        for l in range(k + 2, N + 1):
            if (k, l - 1) in trace and (k - 1, l) in trace:
                trace[(k, l)] = "(6)"
    rows = _rows_fully_determined(trace, N)
    return KernelSolveReport(trivial_only=True, lam=lam, N=N,
                             rows_determined=rows, trace=trace)


def _rows_fully_determined(trace: dict, N: int) -> int:
    rows = -1
    for k in range(N + 1):
        # claim row k only up to the wedge the truncated equations support
        top = max(col for (r, col) in trace if r == k) if any(
            r == k for (r, _) in trace) else -1
        if top < k:
            break
        if all((k, l) in trace for l in range(k, top + 1)):
            rows = k
        else:
            break
    return rows


@dataclass
class SpectrumClassification:
    """Truncated verdict on the point spectrum of S_a (.) M."""

    classification: str  # "contains-zero" | "empty-within-truncation"
    witness: Optional[int] = None
    checks: dict = field(default_factory=dict)


def classify_point_spectrum_shift_diag(alpha: WeightSequence, mu: WeightSequence,
                                       N: int) -> SpectrumClassification:
    """contains-zero iff some mu_i vanishes on [0, N]; otherwise empty within
    the truncation, cross-certified by the zeroing induction and by exact
    nilpotency of the compressed operator."""
    _require_nonvanishing(alpha, N, "alpha")
    for i in range(N + 1):
        if weight_at(mu, i) == 0:
            return SpectrumClassification("contains-zero", witness=i)
    report = kernel_induction_solve(alpha, mu, 0.0, N)
    op = oracle.build_truncated_sym_product(oracle.SHIFT_DIAG, alpha, mu, N)
    checks = {"induction_trivial": report.trivial_only,
              "strictly_level_raising": oracle.strictly_level_raising(op)}
    if not all(checks.values()):  # pragma: no cover - construction invariant
        raise RuntimeError(f"cross-certification failed: {checks}")
    return SpectrumClassification("empty-within-truncation", checks=checks)


@dataclass
class NormBounds:
    """Two-sided operator norm enclosure for S_a* (.) M."""

    lower: float
    upper: float
    lower_witness: Optional[int]
    upper_is_estimate: bool

    def __post_init__(self):
        if self.lower > self.upper + 1e-15:
            raise ValueError("lower bound exceeds upper bound")


def norm_bounds_adj(alpha: WeightSequence, mu: WeightSequence,
                    scan: int) -> NormBounds:
    """lower = sup |a_{i-1} mu_i| / sqrt(2) over 1 <= i <= scan (attained on a
    diagonal basis vector), upper = sup|a| sup|mu|."""
    if scan < 1:
        raise ValueError("scan range must be >= 1")
    lower, witness = 0.0, None
    for i in range(1, scan + 1):
        val = abs(weight_at(alpha, i - 1) * weight_at(mu, i)) / _SQRT2
        if val > lower:
            lower, witness = val, i
    sa = sup_modulus(alpha, scan)
    sm = sup_modulus(mu, scan)
    return NormBounds(lower=lower, upper=sa.value * sm.value,
                      lower_witness=witness,
                      upper_is_estimate=sa.is_estimate or sm.is_estimate)


def estimate_norm_truncated(A: oracle.TruncatedOperator, iters: int,
                            seed: int) -> float:
    """Largest singular value of the truncated matrix by power iteration on
    A*A from a seeded random start; a lower bound on the operator norm."""
    if iters < 1:
        raise ValueError("iters must be >= 1")
    M = A.matrix
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(A.dim) + 1j * rng.standard_normal(A.dim)
    x /= np.linalg.norm(x)
    Mh = M.conj().T
    best = 0.0
    for _ in range(iters):
        y = M @ x
        z = Mh @ y
        nz = np.linalg.norm(z)
        rq = float(np.real(np.vdot(x, z)))
        best = max(best, rq)
        if nz == 0.0:
            break
        x = z / nz
        if nz - rq <= 1e-15 * max(nz, 1.0) and abs(rq - best) <= 1e-15 * best:
            break
    return math.sqrt(max(best, 0.0))


@dataclass
class DiskRadius:
    """Radius of the certified eigenvalue disk |mu_0| inf-geo-mean(a) / 2."""

    value: float
    is_estimate: bool
    zero_is_eigenvalue: bool
    inf_used: ScalarEstimate


def disk_radius(alpha: WeightSequence, mu: WeightSequence, J: int) -> DiskRadius:
    if J < 1:
        raise ValueError("J must be >= 1")
    mu0 = abs(weight_at(mu, 0))
    inf = inf_geo_mean(alpha, J)
    return DiskRadius(value=0.5 * mu0 * inf.value,
                      is_estimate=inf.is_estimate,
                      zero_is_eigenvalue=(mu0 == 0.0),
                      inf_used=inf)


@dataclass
class DiskCertificate:
    """A numerically verified eigenpair for S_a* (.) M inside the disk."""

    lam: complex
    radius: float
    J: int
    residual: float
    beta: float


def build_disk_eigenvector(lam: complex, alpha: WeightSequence,
                           mu: WeightSequence, tol: float = 1e-10,
                           max_terms: int = 400
                           ) -> tuple[SymCoefficientMap, DiskCertificate]:
    """Geometric-series eigenvector v = e_0 (.) e_0 + sum_j c_j e_0 (.) e_j
    with c_j = (2 lam)^j / (mu_0^j a_0 ... a_{j-1}), truncated adaptively so
    the relative eigen-equation residual drops below ``tol``.

    The coefficient tail obeys |c_j| <= beta^j with beta = |2 lam| divided by
    |mu_0| times the geometric-mean infimum of the shift weights, so the
    residual shrinks like beta^J.
    """
    lam = complex(lam)
    mu0 = weight_at(mu, 0)
    if mu0 == 0:
        raise HypothesisError("mu_0 = 0: the disk degenerates (0 is still an eigenvalue)")
    rad = disk_radius(alpha, mu, max_terms)
    if rad.inf_used.value == 0.0:
        if lam == 0:
            return (SymCoefficientMap({(0, 0): 1.0}),
                    DiskCertificate(lam, rad.value, 1, 0.0, 0.0))
        raise OutsideDiskError("geometric-mean infimum is 0: only lam = 0 certifiable")
    beta = abs(2.0 * lam) / (abs(mu0) * rad.inf_used.value)
    if beta >= 1.0:
        raise OutsideDiskError(f"|lam| = {abs(lam):.6g} outside disk radius "
                               f"{rad.value:.6g} (beta = {beta:.4f})")
    if lam == 0:
        return (SymCoefficientMap({(0, 0): 1.0}),
                DiskCertificate(lam, rad.value, 1, 0.0, 0.0))
    J = 8 if beta == 0.0 else min(max_terms, max(
        8, int(math.ceil(math.log(0.01 * tol) / math.log(beta)))))
    while True:
        vmap = _disk_coefficients(lam, alpha, mu0, J)
        residual = _eigen_residual(vmap, lam, alpha, mu, N=J + 1)
        if residual <= tol:
            return vmap, DiskCertificate(lam, rad.value, J, residual, beta)
        if J >= max_terms:
            raise CertificationError(
                f"residual {residual:.3e} > {tol:.1e} at the J = {max_terms} cap")
        J = min(max_terms, 2 * J)


def _disk_coefficients(lam: complex, alpha: WeightSequence, mu0: complex,
                       J: int) -> SymCoefficientMap:
    entries = {(0, 0): 1.0 + 0.0j}
    c = 1.0 + 0.0j
    for j in range(1, J + 1):
        aj = weight_at(alpha, j - 1)
        if aj == 0:
            raise HypothesisError(f"alpha_{j - 1} = 0 inside the series range")
        c *= 2.0 * lam / (mu0 * aj)
        entries[(0, j)] = c
    return SymCoefficientMap(entries)


def _eigen_residual(vmap: SymCoefficientMap, lam: complex,
                    alpha: WeightSequence, mu: WeightSequence, N: int) -> float:
    op = oracle.build_truncated_sym_product(oracle.ADJSHIFT_DIAG, alpha, mu, N)
    v = vmap.to_component_vector(op)
    nv = np.linalg.norm(v)
    return float(np.linalg.norm(op.matrix @ v - lam * v) / nv)


def unweighted_disk_eigenvector(lam: complex, N: Optional[int] = None,
                                tol: float = 1e-8,
                                max_N: int = 600
                                ) -> tuple[SymCoefficientMap, float]:
    """Rank-one eigenvector e_lam (x) e_lam of S* (.) I for any |lam| < 1,
    truncated at index N (chosen adaptively from the geometric tail when
    omitted).  Returns the coefficient map and its relative residual.

    These certify eigenvalues arbitrarily close to the unit circle, i.e. far
    outside the radius-1/2 disk that the series construction covers.
    """
    lam = complex(lam)
    r = abs(lam)
    if r >= 1.0:
        raise OutsideDiskError("require |lam| < 1")
    if N is None:
        if r == 0.0:
            N = 1
        else:
            N = min(max_N, max(8, int(math.ceil(
                (math.log(tol) + math.log(max(1.0 - r, 1e-12)) - math.log(4.0))
                / math.log(r)))))
    if N < 1:
        raise ValueError("N must be >= 1")
    powers = lam ** np.arange(2 * N + 1)
    entries = {}
    for i in range(N + 1):
        entries[(i, i)] = powers[2 * i]
        for j in range(i + 1, N + 1):
            entries[(i, j)] = 2.0 * powers[i + j]
    vmap = SymCoefficientMap(entries)
    ones = WeightSequence("constant", param=1.0, label="const:1")
    residual = _eigen_residual(vmap, lam, ones, ones, N=N)
    return vmap, residual
