"""Weight and diagonal-entry sequences for shift-operator computations.

A :class:`WeightSequence` is the defining data of a unilateral weighted
shift (or of a diagonal operator): a rule ``i -> w(i)``.  Built-in
families cover the constant, geometric, Dirichlet, Bergman and Kronecker
cases plus finite explicit lists loaded from JSON files.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional, Sequence


class WeightSpecError(ValueError):
    """Malformed weight specification string or invalid family parameter."""


class WeightIndexError(IndexError):
    """Index outside an explicit list under the strict out-of-range policy."""


_FAMILIES = ("explicit", "constant", "geometric", "dirichlet", "bergman", "kronecker")


@dataclass(frozen=True)
class WeightSequence:
    """A sequence of (possibly complex) weights, defined by family + parameters.

    ``zero_extend`` only applies to ``explicit`` lists: when False, indexing
    past the end raises; when True, missing entries are 0.  Zero extension is
    opt-in because silent zero weights change spectra drastically.
    """

    family: str
    param: complex = 0.0
    values: Optional[tuple] = None
    zero_extend: bool = False
    label: str = ""

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise WeightSpecError(f"unknown weight family {self.family!r}")
        if self.family == "explicit" and self.values is None:
            raise WeightSpecError("explicit family requires a value list")
        if self.family == "geometric" and not float(self.param.real) >= 1.0:
            raise WeightSpecError("geometric family requires a >= 1")


def constant(c: complex, label: str = "") -> WeightSequence:
    return WeightSequence("constant", param=c, label=label or f"const:{c}")


def geometric(a: float) -> WeightSequence:
    return WeightSequence("geometric", param=a, label=f"geom:{a}")


def dirichlet() -> WeightSequence:
    return WeightSequence("dirichlet", label="dirichlet")


def bergman() -> WeightSequence:
    return WeightSequence("bergman", label="bergman")


def kronecker(i0: int) -> WeightSequence:
    if i0 < 0:
        raise WeightSpecError("kronecker index must be >= 0")
    return WeightSequence("kronecker", param=i0, label=f"kron:{i0}")


def explicit(values: Sequence[complex], zero_extend: bool = False,
             label: str = "") -> WeightSequence:
    return WeightSequence("explicit", values=tuple(complex(v) for v in values),
                          zero_extend=zero_extend, label=label or "explicit")


def weight_at(seq: WeightSequence, i: int) -> complex:
    """The i-th weight.  Raises WeightIndexError past a strict explicit list."""
    if i < 0:
        raise WeightIndexError(f"negative weight index {i}")
    f = seq.family
    if f == "constant":
        return complex(seq.param)
    if f == "geometric":
        return complex(float(seq.param.real) ** (-i))
    if f == "dirichlet":
        return complex(math.sqrt((i + 2) / (i + 1)))
    if f == "bergman":
        return complex(math.sqrt((i + 1) / (i + 2)))
    if f == "kronecker":
        return complex(1.0 if i == int(seq.param.real) else 0.0)
    # explicit
    if i < len(seq.values):
        return seq.values[i]
    if seq.zero_extend:
        return 0.0j
    raise WeightIndexError(
        f"index {i} out of range for explicit list of length {len(seq.values)}")


def moduli(seq: WeightSequence, n: int):
    """|w(0)|, ..., |w(n-1)| as a list of floats."""
    return [abs(weight_at(seq, i)) for i in range(n)]


@dataclass(frozen=True)
class ScalarEstimate:
    """A scalar aggregate of a sequence; is_estimate marks finite-range values
    that may under- or over-shoot the true supremum/infimum."""

    value: float
    is_estimate: bool = False
    witness: Optional[int] = None


def sup_modulus(seq: WeightSequence, n: int) -> ScalarEstimate:
    """sup of |w(i)| over 0 <= i < n, replaced by the exact analytic supremum
    for families where it is known."""
    if n < 1:
        raise ValueError("range must be >= 1")
    f = seq.family
    if f == "constant":
        return ScalarEstimate(abs(seq.param), witness=0)
    if f == "geometric":
        return ScalarEstimate(1.0, witness=0)
    if f == "dirichlet":
        return ScalarEstimate(math.sqrt(2.0), witness=0)
    if f == "bergman":
        # increasing toward 1; the finite-range max is a strict lower estimate
        return ScalarEstimate(math.sqrt(n / (n + 1)), is_estimate=True, witness=n - 1)
    if f == "kronecker":
        return ScalarEstimate(1.0, witness=int(seq.param.real))
    vals = moduli(seq, min(n, len(seq.values)))
    if not vals:
        return ScalarEstimate(0.0, is_estimate=False)
    m = max(vals)
    return ScalarEstimate(m, is_estimate=n < len(seq.values), witness=vals.index(m))


def inf_geo_mean(seq: WeightSequence, J: int) -> ScalarEstimate:
    """inf over 1 <= j <= J of |w(0)...w(j-1)|^(1/j).

    For families with a known analytic infimum over all j the analytic value
    is returned (is_estimate False); otherwise the finite-range minimum is
    returned flagged as an estimate.
    """
    if J < 1:
        raise ValueError("J must be >= 1")
    analytic = _analytic_inf_geo_mean(seq)
    best = math.inf
    witness = None
    logsum = 0.0
    for j in range(1, J + 1):
        try:
            a = abs(weight_at(seq, j - 1))
        except WeightIndexError:
            break
        if a == 0.0:
            return ScalarEstimate(0.0, is_estimate=False, witness=j)
        logsum += math.log(a)
        gm = math.exp(logsum / j)
        if gm < best:
            best, witness = gm, j
    if analytic is not None:
        return ScalarEstimate(analytic, is_estimate=False, witness=witness)
    return ScalarEstimate(best, is_estimate=True, witness=witness)


def _analytic_inf_geo_mean(seq: WeightSequence) -> Optional[float]:
    f = seq.family
    if f == "constant":
        return abs(seq.param)
    if f == "geometric":
        a = float(seq.param.real)
        # partial geometric means (1/a)^((j-1)/2) -> 0 for a > 1
        return 1.0 if a == 1.0 else 0.0
    if f == "dirichlet":
        return 1.0
    if f == "bergman":
        return math.sqrt(2.0) / 2.0
    if f == "kronecker":
        # every long enough partial product contains a zero factor
        return 0.0
    return None


def parse_weight_spec(spec: str) -> WeightSequence:
    """Parse ``const:<c>``, ``geom:<a>``, ``dirichlet``, ``bergman``,
    ``kron:<i0>`` or ``file:<path>`` into a WeightSequence."""
    spec = spec.strip()
    if spec == "dirichlet":
        return dirichlet()
    if spec == "bergman":
        return bergman()
    head, sep, arg = spec.partition(":")
    if not sep:
        raise WeightSpecError(f"malformed weight spec {spec!r}")
    if head == "const":
        try:
            c = complex(arg)
        except ValueError as exc:
            raise WeightSpecError(f"bad constant in {spec!r}") from exc
        return constant(c, label=spec)
    if head == "geom":
        try:
            a = float(arg)
        except ValueError as exc:
            raise WeightSpecError(f"bad ratio in {spec!r}") from exc
        if a < 1.0:
            raise WeightSpecError(f"geom ratio must be >= 1, got {a}")
        return geometric(a)
    if head == "kron":
        try:
            i0 = int(arg)
        except ValueError as exc:
            raise WeightSpecError(f"bad index in {spec!r}") from exc
        return kronecker(i0)
    if head == "file":
        return _load_weight_file(arg)
    raise WeightSpecError(f"unknown weight spec {spec!r}")


def _load_weight_file(path: str) -> WeightSequence:
    """Payload: a flat JSON array of numbers, or of [re, im] pairs."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise WeightSpecError(f"cannot read weight file {path!r}: {exc}") from exc
    if not isinstance(data, list):
        raise WeightSpecError(f"weight file {path!r} must contain a flat array")
    vals = []
    for entry in data:
        if isinstance(entry, (int, float)):
            vals.append(complex(entry))
        elif (isinstance(entry, list) and len(entry) == 2
              and all(isinstance(x, (int, float)) for x in entry)):
            vals.append(complex(entry[0], entry[1]))
        else:
            raise WeightSpecError(f"invalid entry {entry!r} in weight file {path!r}")
    return explicit(vals, label=f"file:{path}")
