"""Point-spectrum multisets of the symmetric/antisymmetric shift-adjoint
tensor products, assembled block by block.

Each graded block contributes its eigenvalues tagged with a
:class:`~specshift.blocks.BlockSpec`; the result is an honest truncation of
the full point spectrum at a caller-chosen degree, with a spectral-radius
bound on the first omitted block reported as a tail indicator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import blocks
from .eig import tridiag_eigenvalues
from .weights import WeightSequence


@dataclass(frozen=True)
class EigenEntry:
    value: float
    block: Optional[blocks.BlockSpec] = None
    multiplicity: int = 1


@dataclass
class EigenMultiset:
    """Eigenvalues sorted ascending with per-block provenance."""

    entries: list[EigenEntry]
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.entries = sorted(self.entries, key=lambda e: e.value)

    def values(self) -> np.ndarray:
        """All values, ascending, repeated by multiplicity."""
        return np.array(sorted(
            v for e in self.entries for v in [e.value] * e.multiplicity))

    def total_count(self) -> int:
        return sum(e.multiplicity for e in self.entries)

    def by_block(self) -> dict:
        """Map BlockSpec -> ascending value array."""
        out: dict = {}
        for e in self.entries:
            out.setdefault(e.block, []).extend([e.value] * e.multiplicity)
        return {b: np.array(sorted(v)) for b, v in out.items()}


def point_spectrum(kind: str, w: WeightSequence, k_max: int,
                   tol: float) -> EigenMultiset:
    """Union over degrees k <= k_max of the sector-block eigenvalues, each
    tagged with its block.  The symmetric sector's degree-0 block is the 1x1
    zero matrix and contributes a single exact 0."""
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    entries = []
    k_start = 0 if kind == blocks.SYM else 1
    for k in range(k_start, k_max + 1):
        spec = blocks.BlockSpec(kind, k)
        T = blocks.build_block_matrix(kind, k, w)
        for val in tridiag_eigenvalues(T, tol):
            entries.append(EigenEntry(float(val), spec))
    meta = {"kind": kind, "k_max": k_max, "tol": tol,
            "tail_bound": _tail_bound(kind, k_max + 1, w)}
    return EigenMultiset(entries, meta)


def _tail_bound(kind: str, k: int, w: WeightSequence) -> float:
    """Gershgorin spectral-radius bound of the first omitted block."""
    try:
        T = blocks.build_block_matrix(kind, k, w)
    except blocks.EmptyBlockError:  # pragma: no cover
        return 0.0
    gl, gu = T.gershgorin()
    return max(abs(gl), abs(gu))


def closed_form_spectrum(a: float, kind: str, k_max: int) -> EigenMultiset:
    """Exact spectra for the geometric weights w(i) = a^{-i}: block k carries
    a^{-(k-1)} cos((2j-1) pi / (k+2)) in the symmetric sector and
    a^{-(k-1)} cos(2j pi / (k+2)) in the antisymmetric one."""
    if a < 1.0:
        raise ValueError("require a >= 1")
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    entries = []
    k_start = 0 if kind == blocks.SYM else 1
    for k in range(k_start, k_max + 1):
        spec = blocks.BlockSpec(kind, k)
        scale = a ** (-(k - 1))
        for j in range(1, spec.dim + 1):
            if kind == blocks.SYM:
                angle = (2 * j - 1) * math.pi / (k + 2)
            else:
                angle = 2 * j * math.pi / (k + 2)
            entries.append(EigenEntry(scale * math.cos(angle), spec))
    return EigenMultiset(entries, {"kind": kind, "k_max": k_max, "a": a,
                                   "closed_form": True})


def zero_multiplicity(spec: EigenMultiset, tol: float) -> int:
    """Count, with multiplicity, of eigenvalues within tol of zero."""
    return int(sum(e.multiplicity for e in spec.entries if abs(e.value) <= tol))
