"""Complex log-gamma and gamma-ratio evaluation with explicit pole bookkeeping.

Everything downstream that needs a product of gamma functions builds a
:class:`GammaRatio` and hands it to :func:`eval_gamma_ratio`, which returns a
:class:`MeroValue`. Pole pairs that cancel between numerator and denominator
are replaced by their exact Pochhammer limit, so integer-exponent kernels give
clean finite values instead of NaN.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from numbers import Real
from typing import Sequence

import numpy as np

from ._backend import kernels

POLE_TOL = 1e-9
EXACT_POCHHAMMER_MAX = 64


class DomainError(ValueError):
    """Input lies outside the domain where an operation is defined."""


class PoleError(DomainError):
    """A quantity was requested as a number but sits on a pole."""


class MeroTag(enum.Enum):
    FINITE = "finite"
    ZERO = "zero"
    POLE = "pole"


@dataclass(frozen=True)
class MeroValue:
    """Value of a meromorphic expression: a finite number, a structural zero, or a pole."""

    tag: MeroTag
    value: complex | None = None

    def __post_init__(self):
        if self.tag is MeroTag.FINITE:
            if self.value is None:
                raise ValueError("finite MeroValue needs a payload")
            v = complex(self.value)
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise DomainError(f"non-finite payload {v!r}")
            object.__setattr__(self, "value", v)
        elif self.value is not None:
            raise ValueError(f"{self.tag.value} MeroValue carries no payload")

    @classmethod
    def finite(cls, value) -> "MeroValue":
        return cls(MeroTag.FINITE, complex(value))

    @classmethod
    def zero(cls) -> "MeroValue":
        return cls(MeroTag.ZERO)

    @classmethod
    def pole(cls) -> "MeroValue":
        return cls(MeroTag.POLE)

    @property
    def is_finite(self) -> bool:
        return self.tag is MeroTag.FINITE

    @property
    def is_zero(self) -> bool:
        return self.tag is MeroTag.ZERO

    @property
    def is_pole(self) -> bool:
        return self.tag is MeroTag.POLE

    def to_complex(self) -> complex:
        """Numeric value; a structural zero becomes ``0j``. Poles raise :class:`PoleError`."""
        if self.tag is MeroTag.POLE:
            raise PoleError("value is a pole")
        if self.tag is MeroTag.ZERO:
            return 0j
        return self.value

    def scale(self, c) -> "MeroValue":
        """Multiply by a finite nonzero scalar."""
        c = complex(c)
        if c == 0:
            raise ValueError("scale factor must be nonzero")
        if self.tag is MeroTag.FINITE:
            return MeroValue.finite(self.value * c)
        return self

    def __mul__(self, other: "MeroValue") -> "MeroValue":
        if not isinstance(other, MeroValue):
            return NotImplemented
        tags = {self.tag, other.tag}
        if tags == {MeroTag.ZERO, MeroTag.POLE}:
            raise DomainError("zero times pole is indeterminate without a common limit")
        if MeroTag.POLE in tags:
            return MeroValue.pole()
        if MeroTag.ZERO in tags:
            return MeroValue.zero()
        return MeroValue.finite(self.value * other.value)

    def __str__(self) -> str:
        if self.tag is MeroTag.FINITE:
            v = self.value
            return f"{v.real:.15g}" if v.imag == 0 else f"{v.real:.15g}{v.imag:+.15g}i"
        return self.tag.value


@dataclass(frozen=True)
class GammaRatio:
    """``prefactor * prod Gamma(numerator) / prod Gamma(denominator)``."""

    numerator: tuple[complex, ...] = ()
    denominator: tuple[complex, ...] = ()
    prefactor: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(complex(a) for a in self.numerator))
        object.__setattr__(self, "denominator", tuple(complex(b) for b in self.denominator))
        object.__setattr__(self, "prefactor", complex(self.prefactor))
        if self.prefactor == 0:
            raise ValueError("prefactor must be nonzero")


def is_gamma_pole(z, tol: float = POLE_TOL) -> bool:
    """True iff ``z`` is within ``tol`` of a nonpositive integer in both components."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    z = complex(z)
    if abs(z.imag) > tol or z.real > tol:
        return False
    return abs(z.real - round(z.real)) <= tol


def log_gamma(z) -> complex:
    """Principal-branch ``log Gamma(z)``, analytic off the cut ``(-inf, 0]``.

    The kernels return ``log Gamma`` modulo ``2 pi i`` on the reflected half
    plane. The branch is fixed by the shift recurrence
    ``log Gamma(z) = log Gamma(z+n) - sum_k log(z+k)``, whose imaginary part
    needs only argument sums.
    """
    z = complex(z)
    if is_gamma_pole(z):
        raise DomainError(f"log_gamma has a pole at {z}")
    value = complex(kernels.loggamma(z))
    if z.real >= 0.5:
        return value
    n = math.ceil(0.5 - z.real)
    target = complex(kernels.loggamma(z + n)).imag - math.fsum(np.arctan2(z.imag, z.real + np.arange(n)))
    turns = round((target - value.imag) / (2 * math.pi))
    return complex(value.real, value.imag + 2 * math.pi * turns)


def gamma(z) -> complex:
    """``Gamma(z)`` as a complex number; real arguments give an exactly real result."""
    z = complex(z)
    if is_gamma_pole(z):
        raise PoleError(f"Gamma has a pole at {z}")
    if z.imag == 0:
        return complex(_real_gamma_sign(z.real) * math.exp(kernels.loggamma(z).real))
    return cmath.exp(kernels.loggamma(z))


def _real_gamma_sign(x: float) -> int:
    if x > 0:
        return 1
    return -1 if math.floor(x) % 2 else 1


def _is_real_input(x) -> bool:
    return isinstance(x, Real) or (isinstance(x, np.ndarray) and np.isrealobj(x))


def pochhammer(a, l: int):
    """Rising factorial ``a (a+1) ... (a+l-1)``.

    Exact product for ``l <= 64``; beyond that a log-gamma ratio is used unless
    a factor crosses a pole of Gamma, in which case the product is kept.
    Real input gives a float, complex input a complex.
    """
    if l < 0 or int(l) != l:
        raise ValueError("l must be a nonnegative integer")
    l = int(l)
    real_in = _is_real_input(a)
    za = complex(a)
    if l <= EXACT_POCHHAMMER_MAX or is_gamma_pole(za) or is_gamma_pole(za + l):
        acc = 1.0 + 0j
        for j in range(l):
            acc *= za + j
    else:
        acc = _finite_ratio((za + l,), (za,), 1.0)
    return acc.real if real_in else acc


def _finite_ratio(num: Sequence[complex], den: Sequence[complex], prefactor: complex) -> complex:
    # Gamma ratio with no pole arguments; real inputs stay exactly real.
    if all(a.imag == 0 for a in num) and all(b.imag == 0 for b in den) and prefactor.imag == 0:
        sign = 1
        logmag = 0.0
        for a in num:
            sign *= _real_gamma_sign(a.real)
            logmag += kernels.loggamma(a).real
        for b in den:
            sign *= _real_gamma_sign(b.real)
            logmag -= kernels.loggamma(b).real
        return complex(prefactor.real * sign * math.exp(logmag))
    acc = 0j
    for a in num:
        acc += kernels.loggamma(a)
    for b in den:
        acc -= kernels.loggamma(b)
    return prefactor * cmath.exp(acc)


def _nearest_int(z: complex) -> int:
    return int(round(z.real))


def eval_gamma_ratio(expr: GammaRatio, tol: float = POLE_TOL) -> MeroValue:
    """Evaluate a gamma ratio, cancelling numerator/denominator pole pairs.

    Poles are sorted by real part and each numerator pole is paired with the
    nearest unmatched denominator pole. A pair ``Gamma(a0)/Gamma(b0)`` with
    ``k = a0 - b0`` is the limit of ``Gamma(x+k)/Gamma(x)`` at ``x = b0``:
    ``(b0)_k`` for ``k >= 0`` and ``1/(a0)_{-k}`` otherwise. The limit is taken
    along a common shift of both arguments.
    """
    num_poles, num_regular = [], []
    for a in expr.numerator:
        (num_poles if is_gamma_pole(a, tol) else num_regular).append(a)
    den_poles, den_regular = [], []
    for b in expr.denominator:
        (den_poles if is_gamma_pole(b, tol) else den_regular).append(b)

    num_ints = sorted(_nearest_int(a) for a in num_poles)
    den_ints = sorted(_nearest_int(b) for b in den_poles)
    pair_factor = 1.0
    unmatched_num = 0
    for a0 in num_ints:
        if not den_ints:
            unmatched_num += 1
            continue
        j = min(range(len(den_ints)), key=lambda i: (abs(a0 - den_ints[i]), i))
        b0 = den_ints.pop(j)
        k = a0 - b0
        if k >= 0:
            pair_factor *= math.prod(range(b0, b0 + k)) if k else 1
        else:
            pair_factor /= math.prod(range(a0, a0 - k))
    if unmatched_num:
        return MeroValue.pole()
    if den_ints:
        return MeroValue.zero()
    value = _finite_ratio(num_regular, den_regular, expr.prefactor * pair_factor)
    return MeroValue.finite(value)


def gamma_ratio(numerator=(), denominator=(), prefactor=1.0) -> MeroValue:
    """Shorthand for ``eval_gamma_ratio(GammaRatio(...))``."""
    return eval_gamma_ratio(GammaRatio(tuple(numerator), tuple(denominator), prefactor))


__all__ = [
    "DomainError",
    "PoleError",
    "MeroTag",
    "MeroValue",
    "GammaRatio",
    "is_gamma_pole",
    "log_gamma",
    "gamma",
    "pochhammer",
    "eval_gamma_ratio",
    "gamma_ratio",
]
