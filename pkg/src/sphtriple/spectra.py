"""Multipliers of the three sphere integral operators and related Fourier constants.

The operators act on functions on a sphere by integrating against a power of
a two-point kernel:

* symplectic ``T_mu`` on ``S^{2n-1}``, kernel ``|[w, e]|^(-mu-n)``;
* distance ``R_mu`` on ``S^m``, kernel ``|w - e|^(-mu-m)``;
* inner-product ``Q_mu`` on ``S^{N-1}``, kernel ``|<w, e>|^(-mu-N/2)``.

Each acts as a scalar on a harmonic subspace. Every multiplier is written as
an l-independent gamma ratio times ``prod Gamma(l + a) / prod Gamma(l + b)``
(a :class:`MultiplierFamily`), which gives both exact evaluation at special
points and a cheap ratio recurrence for long spectral sums.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .specfun import DomainError, GammaRatio, MeroValue, PoleError, eval_gamma_ratio, gamma_ratio, is_gamma_pole

SQRT_PI = math.sqrt(math.pi)


def _cpow(base: float, exponent) -> complex:
    return cmath.exp(complex(exponent) * math.log(base))


def sphere_volume(N: int) -> float:
    """Euclidean surface measure of ``S^{N-1}``: ``2 pi^{N/2} / Gamma(N/2)``."""
    return 2 * math.pi ** (N / 2) / math.gamma(N / 2)


# ---------------------------------------------------------------------------
# Operator kinds


@dataclass(frozen=True)
class OperatorKind:
    """``tag`` is ``"symplectic"`` (dim = n), ``"distance"`` (dim = m) or ``"inner"`` (dim = N)."""

    tag: str
    dim: int

    def __post_init__(self):
        if self.tag not in ("symplectic", "distance", "inner"):
            raise ValueError(f"unknown operator kind {self.tag!r}")
        if int(self.dim) != self.dim or self.dim < 1:
            raise ValueError("dimension parameter must be a positive integer")
        if self.tag == "inner" and self.dim < 2:
            raise ValueError("inner-product kind needs N >= 2")

    @property
    def ambient_dim(self) -> int:
        """Dimension of the Euclidean space containing the sphere."""
        return {"symplectic": 2 * self.dim, "distance": self.dim + 1, "inner": self.dim}[self.tag]

    @property
    def shift(self) -> float:
        """``s`` in kernel exponent ``-mu - s``: n, m or N/2."""
        return self.dim / 2 if self.tag == "inner" else float(self.dim)

    @property
    def sphere_volume(self) -> float:
        return sphere_volume(self.ambient_dim)


def Symplectic(n: int) -> OperatorKind:
    return OperatorKind("symplectic", n)


def Distance(m: int) -> OperatorKind:
    return OperatorKind("distance", m)


def InnerProduct(N: int) -> OperatorKind:
    return OperatorKind("inner", N)


# ---------------------------------------------------------------------------
# Multiplier families


@dataclass(frozen=True)
class MultiplierFamily:
    """``base * sign^l * prod Gamma(l + upper) / prod Gamma(l + lower)`` for ``l = 0, 1, ...``.

    ``base`` carries the l-independent gamma factors and prefactor.
    """

    base: GammaRatio
    upper: tuple[complex, ...]
    lower: tuple[complex, ...]
    sign: complex = 1.0

    def ratio_at(self, l: int) -> GammaRatio:
        return GammaRatio(
            self.base.numerator + tuple(l + a for a in self.upper),
            self.base.denominator + tuple(l + b for b in self.lower),
            self.base.prefactor * complex(self.sign) ** l,
        )

    def at(self, l: int) -> MeroValue:
        return eval_gamma_ratio(self.ratio_at(l))

    def values(self, count: int) -> np.ndarray:
        """Multipliers for ``l = 0 .. count-1`` as a complex array.

        Indices near gamma poles are evaluated exactly; past them a ratio
        recurrence is used. Raises :class:`PoleError` if any value is a pole.
        """
        out = np.zeros(count, dtype=np.complex128)
        shifts = self.upper + self.lower
        l_star = max([0] + [math.floor(-s.real) + 2 for s in shifts if s.real < 1])
        head = min(l_star + 1, count)
        for l in range(head):
            v = self.at(l)
            if v.is_pole:
                raise PoleError(f"multiplier at l={l} is a pole")
            out[l] = v.to_complex()
        if count <= head:
            return out
        ls = np.arange(head - 1, count - 1, dtype=np.float64)
        r = np.full(ls.shape, complex(self.sign), dtype=np.complex128)
        for a in self.upper:
            r *= ls + a
        for b in self.lower:
            r /= ls + b
        out[head:] = out[head - 1] * np.cumprod(r)
        return out


def symplectic_family(n: int, mu) -> MultiplierFamily:
    """``A_{2l}(mu)`` on ``H^{a,b}(C^n)`` with ``a + b = 2l``."""
    mu = complex(mu)
    base = GammaRatio(((1 - n - mu) / 2,), ((n + mu) / 2,), 2 * _cpow(math.pi, n - 0.5))
    return MultiplierFamily(base, ((n + mu) / 2,), ((n - mu) / 2,))


def distance_family(m: int, mu, variant: str = "funk_hecke") -> MultiplierFamily:
    """Multiplier of ``R_mu`` on ``H^k(R^{m+1})`` indexed by ``k``."""
    mu = complex(mu)
    if variant == "funk_hecke":
        base = GammaRatio((-mu / 2,), ((m + mu) / 2,), _cpow(math.pi, m / 2) * _cpow(2.0, -mu))
    elif variant == "printed":
        base = GammaRatio(
            (m + 0.5, -mu / 2), ((mu + m) / 2,), 1 / (_cpow(2.0, mu + 1) * SQRT_PI)
        )
    else:
        raise ValueError(f"unknown distance multiplier variant {variant!r}")
    return MultiplierFamily(base, ((m + mu) / 2,), ((m - mu) / 2,))


def inner_family(N: int, mu) -> MultiplierFamily:
    """``c_N(mu, l)`` on ``H^{2l}(R^N)``."""
    mu = complex(mu)
    base = GammaRatio(
        ((2 - N - 2 * mu) / 4,), ((N + 2 * mu) / 4,), 2 * _cpow(math.pi, (N - 1) / 2)
    )
    return MultiplierFamily(base, ((2 * mu + N) / 4,), ((N - 2 * mu) / 4,), sign=-1.0)


# ---------------------------------------------------------------------------
# Named multipliers and constants


def A_k(n: int, k: int, mu) -> MeroValue:
    """Multiplier of ``T_mu`` on bidegree-``(a, b)`` harmonics up to the sign ``(-1)^b``; ``k = a + b``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k % 2:
        return MeroValue.zero()
    return symplectic_family(n, mu).at(k // 2)


def A_0_closed(n: int, mu) -> MeroValue:
    """``2 pi^{n-1/2} Gamma((1-n-mu)/2) / Gamma((n-mu)/2)``; equals ``A_0``."""
    mu = complex(mu)
    return gamma_ratio(((1 - n - mu) / 2,), ((n - mu) / 2,), 2 * _cpow(math.pi, n - 0.5))


def t_eigen(n: int, alpha: int, beta: int, mu) -> MeroValue:
    """Eigenvalue of ``T_mu`` on ``H^{alpha,beta}(C^n)``: ``(-1)^beta A_{alpha+beta}(mu)``."""
    v = A_k(n, alpha + beta, mu)
    return v.scale(-1.0) if beta % 2 else v


_I_POW = (1, -1j, -1, 1j)  # i^{-k} for k mod 4


def B_N(N: int, lam, k: int) -> MeroValue:
    """Fourier multiplier ``F p_lam = B_N(lam, k) p_{-lam-N}``.

    ``p_lam(r w) = r^lam p(w)`` extends a degree-``k`` spherical harmonic ``p``
    homogeneously with degree ``lam``.

    ``pi^{-lam-N/2} i^{-k} Gamma((k+lam+N)/2) / Gamma((k-lam)/2)``.
    """
    lam = complex(lam)
    pref = _cpow(math.pi, -lam - N / 2) * _I_POW[k % 4]
    return gamma_ratio(((k + lam + N) / 2,), ((k - lam) / 2,), pref)


def C_N(N: int, mu) -> MeroValue:
    """``2 pi^{mu+(N-1)/2} Gamma((2-N-2mu)/4) / Gamma((N+2mu)/4)``."""
    mu = complex(mu)
    return gamma_ratio(((2 - N - 2 * mu) / 4,), ((N + 2 * mu) / 4,), 2 * _cpow(math.pi, mu + (N - 1) / 2))


def C_N_trig(N: int, mu) -> complex:
    """``(2 pi)^w / (Gamma(w) cos(pi w / 2))`` with ``w = mu + N/2``; must agree with :func:`C_N` off its poles."""
    w = complex(mu) + N / 2
    from .specfun import gamma

    return _cpow(2 * math.pi, w) / (gamma(w) * cmath.cos(math.pi * w / 2))


def gamma_k_printed(m: int, k: int, mu) -> MeroValue:
    """``Gamma(m+1/2) Gamma(-mu/2) Gamma(k+(m+mu)/2) / (2^{mu+1} sqrt(pi) Gamma((mu+m)/2) Gamma(k+(m-mu)/2))``."""
    return distance_family(m, mu, "printed").at(k)


def gamma_k_funk_hecke(m: int, k: int, mu) -> MeroValue:
    """Multiplier of ``R_mu`` on ``H^k(R^{m+1})`` from the Funk-Hecke formula, Euclidean measure.

    ``pi^{m/2} 2^{-mu} Gamma(-mu/2) Gamma(k+(m+mu)/2) / (Gamma((m+mu)/2) Gamma(k+(m-mu)/2))``.
    """
    return distance_family(m, mu, "funk_hecke").at(k)


def gamma_k_ratio_constant(m: int) -> float:
    """``gamma_k_printed / gamma_k_funk_hecke = Gamma(m+1/2) / (2 pi^{(m+1)/2})``, independent of k and mu."""
    return math.gamma(m + 0.5) / (2 * math.pi ** ((m + 1) / 2))


def rcn_constant(m: int, mu) -> MeroValue:
    """``Gamma(m+1/2) Gamma(-mu/2) / (2^{mu+2} pi^m Gamma((1-mu-m)/2))``: the k-independent ratio of printed gamma_k to ``A_{2k}``."""
    mu = complex(mu)
    return gamma_ratio((m + 0.5, -mu / 2), ((1 - mu - m) / 2,), 1 / (_cpow(2.0, mu + 2) * math.pi**m))


def c_Nl(N: int, l: int, mu) -> MeroValue:
    """Eigenvalue of ``Q_mu`` on ``H^{2l}(R^N)``."""
    if l < 0:
        raise ValueError("l must be nonnegative")
    return inner_family(N, mu).at(l)


def q_eigen(N: int, k: int, mu) -> MeroValue:
    """Eigenvalue of ``Q_mu`` on ``H^k(R^N)``; zero for odd ``k``."""
    if k % 2:
        return MeroValue.zero()
    return c_Nl(N, k // 2, mu)


def r_eigen(m: int, k: int, mu, variant: str = "funk_hecke") -> MeroValue:
    """Eigenvalue of ``R_mu`` on ``H^k(R^{m+1})``."""
    return distance_family(m, mu, variant).at(k)


# ---------------------------------------------------------------------------
# Parameter dictionary


class ParameterError(ValueError):
    """Parameter set is incomplete or internally inconsistent."""


_CONSISTENCY_TOL = 1e-12


@dataclass(frozen=True)
class ParamSet:
    """Triple-integral parameters in all coordinate systems.

    ``lam`` are the lambda parameters, ``abgd`` is ``(alpha, beta, gamma, delta)``
    with ``delta = alpha + beta + gamma``, ``mu`` the operator parameters and
    ``exponents`` the kernel exponents ``e_j = -mu_j - s`` attached to the pairs
    ``(Y,Z)``, ``(Z,X)``, ``(X,Y)``.
    """

    kind: OperatorKind
    lam: tuple[complex, complex, complex] | None = None
    mu: tuple[complex, complex, complex] | None = None
    abgd: tuple[complex, complex, complex, complex] | None = None

    @property
    def exponents(self) -> tuple[complex, complex, complex]:
        s = self.kind.shift
        return tuple(0 - m - s for m in self.mu)

    @property
    def nu(self) -> tuple[complex, complex, complex]:
        """Inner-product exponents halved: kernel ``|<y,z>|^{-2 nu_1}``."""
        return tuple(-e / 2 for e in self.exponents)

    @property
    def complete(self) -> bool:
        return self.lam is not None and self.mu is not None and self.abgd is not None

    @classmethod
    def build(cls, kind: OperatorKind, *, lam=None, mu=None, abg=None, delta=None, exponents=None, nu=None) -> "ParamSet":
        """Construct from any one (or more, if consistent) coordinate system."""
        abgd = None
        if abg is not None:
            a, b, g = (complex(v) for v in abg)
            abgd = (a, b, g, a + b + g if delta is None else complex(delta))
        elif delta is not None:
            raise ParameterError("delta alone does not determine the parameters")
        mus = []
        if mu is not None:
            mus.append(tuple(complex(v) for v in mu))
        if exponents is not None:
            mus.append(tuple(-complex(e) - kind.shift for e in exponents))
        if nu is not None:
            if kind.tag != "inner":
                raise ParameterError("nu parameters only apply to the inner-product kind")
            mus.append(tuple(2 * complex(v) - kind.dim / 2 for v in nu))
        for other in mus[1:]:
            if any(abs(x - y) > _CONSISTENCY_TOL * max(1.0, abs(x)) for x, y in zip(mus[0], other)):
                raise ParameterError("mu, exponent and nu inputs disagree")
        return param_convert(
            cls(kind, None if lam is None else tuple(complex(v) for v in lam), mus[0] if mus else None, abgd)
        )


def _close(u: Sequence[complex], v: Sequence[complex]) -> bool:
    return all(abs(x - y) <= _CONSISTENCY_TOL * max(1.0, abs(x), abs(y)) for x, y in zip(u, v))


def _lam_from_mu(mu, s):
    smu = sum(mu)
    return tuple(smu + s - m for m in mu)


def _mu_from_lam(lam, s):
    half = (sum(lam) - s) / 2
    return tuple(half - l for l in lam)


def _abgd_from_lam(lam):
    l1, l2, l3 = lam
    a, b, g = l1 - l2 - l3, -l1 + l2 - l3, -l1 - l2 + l3
    return (a, b, g, a + b + g)


def _lam_from_abgd(abgd):
    a, b, g, _ = abgd
    return (-(b + g) / 2, -(a + g) / 2, -(a + b) / 2)


def param_convert(p: ParamSet) -> ParamSet:
    """Fill every coordinate system of ``p`` from whichever ones are present.

    Raises :class:`ParameterError` if nothing is given or the given systems
    disagree.
    """
    s = p.kind.shift
    candidates = []
    if p.lam is not None:
        candidates.append(tuple(p.lam))
    if p.mu is not None:
        candidates.append(_lam_from_mu(p.mu, s))
    if p.abgd is not None:
        a, b, g, d = p.abgd
        if abs(d - (a + b + g)) > _CONSISTENCY_TOL * max(1.0, abs(d)):
            raise ParameterError("delta must equal alpha + beta + gamma")
        candidates.append(_lam_from_abgd(p.abgd))
    if not candidates:
        raise ParameterError("need lambda, mu or alpha/beta/gamma parameters")
    lam = candidates[0]
    for other in candidates[1:]:
        if not _close(lam, other):
            raise ParameterError("coordinate systems are inconsistent")
    return ParamSet(p.kind, lam, _mu_from_lam(lam, s), _abgd_from_lam(lam))


__all__ = [
    "sphere_volume",
    "OperatorKind",
    "Symplectic",
    "Distance",
    "InnerProduct",
    "MultiplierFamily",
    "symplectic_family",
    "distance_family",
    "inner_family",
    "A_k",
    "A_0_closed",
    "t_eigen",
    "B_N",
    "C_N",
    "C_N_trig",
    "gamma_k_printed",
    "gamma_k_funk_hecke",
    "gamma_k_ratio_constant",
    "rcn_constant",
    "c_Nl",
    "q_eigen",
    "r_eigen",
    "ParameterError",
    "ParamSet",
    "param_convert",
]
