"""Exact phase arithmetic and reproducible complex accumulation.

Phases are tracked as exact rationals modulo 1; floating point enters only
when a phase is finally turned into a point on the unit circle.  All large
reductions go through a fixed-shape compensated tree so that results do not
depend on how work was chunked or parallelised.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

import numpy as np

RationalLike = Union[int, Fraction, "PhaseFraction"]

#: Chunk width of the deterministic reduction tree.  Fixed so that results
#: are bit-identical regardless of thread count.
CHUNK = 1024

#: Default number of mantissa bits of the working precision.
DEFAULT_PRECISION = 53


class PhaseFraction:
    """An exact rational phase reduced into [0, 1).

    Supports exact addition and integer scalar multiplication; the value is
    always kept reduced modulo 1.
    """

    __slots__ = ("value",)

    def __init__(self, q: RationalLike):
        if isinstance(q, PhaseFraction):
            self.value = q.value
        else:
            self.value = Fraction(q) % 1

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    def __add__(self, other: RationalLike) -> "PhaseFraction":
        other_value = other.value if isinstance(other, PhaseFraction) else other
        return PhaseFraction(self.value + other_value)

    __radd__ = __add__

    def __mul__(self, scalar: int) -> "PhaseFraction":
        if not isinstance(scalar, int):
            return NotImplemented
        return PhaseFraction(self.value * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "PhaseFraction":
        return PhaseFraction(-self.value)

    def __eq__(self, other) -> bool:
        if isinstance(other, PhaseFraction):
            return self.value == other.value
        return self.value == other

    def __hash__(self) -> int:
        return hash(self.value)

    def __repr__(self) -> str:
        return f"PhaseFraction({self.value})"


def unit_root(q: RationalLike | float, precision: int | None = None):
    """Return e(q) = exp(2*pi*i*q).

    With ``precision`` unset (or <= 53) the result is a Python complex with
    components accurate to a couple of ulps, comfortably inside the
    2**-(precision-4) relative-error contract.  Larger precisions are served
    by mpmath and return an ``mpmath.mpc``.
    """
    if isinstance(q, PhaseFraction):
        q = q.value
    if precision is not None and precision > DEFAULT_PRECISION:
        import mpmath

        with mpmath.workprec(precision):
            two_q = mpmath.mpf(2) * mpmath.mpmathify(q)
            return mpmath.mpc(mpmath.cospi(two_q), mpmath.sinpi(two_q))
    # Exact quadrant reduction keeps the evaluated angle below pi/2, where a
    # single libm call stays within ~1 ulp; the quadrant rotation is exact.
    if isinstance(q, (int, Fraction)):
        x = Fraction(q) % 1
        quadrant = int(4 * x)
        t = float(x - Fraction(quadrant, 4))
    else:
        x = float(q) % 1.0
        quadrant = min(int(4.0 * x), 3)
        t = x - 0.25 * quadrant  # exact: quarter steps are representable
    angle = math.tau * t
    c, s = math.cos(angle), math.sin(angle)
    if quadrant == 0:
        return complex(c, s)
    if quadrant == 1:
        return complex(-s, c)
    if quadrant == 2:
        return complex(-c, -s)
    return complex(s, -c)


def root_table(modulus: int) -> np.ndarray:
    """All modulus-th roots of unity e(t/modulus), t = 0..modulus-1."""
    if modulus < 1:
        raise ValueError("modulus must be positive")
    t = np.arange(modulus, dtype=np.float64)
    return np.exp(2j * np.pi * (t / modulus))


def _neumaier_columns(mat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Sequential compensated accumulation along axis 1, vectorised over rows.
    s = mat[:, 0].astype(np.float64, copy=True)
    comp = np.zeros_like(s)
    for i in range(1, mat.shape[1]):
        x = mat[:, i]
        t = s + x
        big = np.abs(s) >= np.abs(x)
        comp += np.where(big, (s - t) + x, (x - t) + s)
        s = t
    return s, comp


def _neumaier_sequence(values: np.ndarray) -> float:
    s = 0.0
    comp = 0.0
    for x in values:
        x = float(x)
        t = s + x
        if abs(s) >= abs(x):
            comp += (s - t) + x
        else:
            comp += (x - t) + s
        s = t
    return s + comp


def _tree_sum_real(flat: np.ndarray) -> float:
    if flat.size == 0:
        return 0.0
    pad = (-flat.size) % CHUNK
    if pad:
        flat = np.concatenate([flat, np.zeros(pad, dtype=np.float64)])
    mat = flat.reshape(-1, CHUNK)
    s, comp = _neumaier_columns(mat)
    return _neumaier_sequence(np.concatenate([s, comp]))


def tree_sum(values: np.ndarray | Iterable) -> complex | float:
    """Deterministic compensated sum of an array.

    Elements are consumed in C order, accumulated with Neumaier compensation
    inside fixed chunks of :data:`CHUNK`, and the chunk totals are combined
    sequentially.  The result is therefore independent of any parallel
    partitioning of the same chunk structure.
    """
    arr = np.asarray(values)
    if arr.size == 0:
        return 0j if np.iscomplexobj(arr) else 0.0
    flat = arr.ravel(order="C")
    if np.iscomplexobj(flat):
        return complex(
            _tree_sum_real(flat.real.astype(np.float64)),
            _tree_sum_real(flat.imag.astype(np.float64)),
        )
    return _tree_sum_real(flat.astype(np.float64))


def compensated_sum(values: Iterable) -> complex:
    """Compensated sum of a finite sequence of complex values."""
    arr = np.fromiter((complex(v) for v in values), dtype=np.complex128, count=-1)
    if arr.size == 0:
        return 0j
    return complex(tree_sum(arr))


def modulus_power(abs_squared: np.ndarray, r: float) -> np.ndarray:
    """|z|^r from |z|^2, for real r >= 2.

    Even integer exponents stay in pure multiplications; other exponents use
    exp((r/2) log |z|^2) with zeros mapped to zero.
    """
    half = r / 2.0
    if half == int(half):
        return abs_squared ** int(half)
    out = np.zeros_like(abs_squared)
    nz = abs_squared > 0.0
    out[nz] = np.exp(half * np.log(abs_squared[nz]))
    return out
