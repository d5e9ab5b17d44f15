"""Dimensions of harmonic polynomial spaces and concrete harmonic test polynomials.

Dimensions are exact Python integers. ``H^k(R^N)`` is the space of harmonic
homogeneous polynomials of degree ``k`` on ``R^N``; ``H^{a,b}(C^n)`` is the
space of harmonic polynomials of bidegree ``(a, b)`` in ``(z, conj z)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .specfun import DomainError


def _rising(a: int, l: int) -> int:
    return math.prod(range(a, a + l))


def dim_hk(N: int, k: int) -> int:
    """``dim H^k(R^N) = (2k+N-2) (k+1)_{N-3} / (N-2)!`` for ``N >= 3``."""
    if N < 1 or k < 0:
        raise ValueError("need N >= 1 and k >= 0")
    if N == 1:
        return 1 if k <= 1 else 0
    if N == 2:
        return 1 if k == 0 else 2
    return (2 * k + N - 2) * _rising(k + 1, N - 3) // math.factorial(N - 2)


def dim_hab(n: int, alpha: int, beta: int) -> int:
    """``dim H^{a,b}(C^n) = (a+b+n-1) (a+1)_{n-2} (b+1)_{n-2} / (Gamma(n) Gamma(n-1))``."""
    if n < 1 or alpha < 0 or beta < 0:
        raise ValueError("need n >= 1 and nonnegative bidegree")
    if n == 1:
        return 1 if alpha * beta == 0 else 0
    num = (alpha + beta + n - 1) * _rising(alpha + 1, n - 2) * _rising(beta + 1, n - 2)
    return num // (math.factorial(n - 1) * math.factorial(n - 2))


def alternating_sum_D(n: int, k: int) -> int:
    """``D(k) = sum_{a+b=k} (-1)^b dim H^{a,b}(C^n)``, summed term by term."""
    return sum((-1) ** b * dim_hab(n, k - b, b) for b in range(k + 1))


def chebyshev_like_coeffs(l: int) -> list[int]:
    """Coefficients ``c_j`` with ``x^l + x^-l = sum_j c_j (x + 1/x)^(l-2j)``."""
    if l < 1:
        raise ValueError("l must be at least 1")
    return [(-1) ** j * dim_hk(l + 2 - 2 * j, j) for j in range(l // 2 + 1)]


@dataclass(frozen=True)
class TestPolynomial:
    """A harmonic homogeneous polynomial on ``R^dim`` with an evaluation closure.

    ``kind`` is ``"zonal"`` or ``"bidegree"``. Bidegree polynomials live on
    ``R^{2n}`` with ``z_j = x_j + i x_{n+j}`` and are complex valued; ``part``
    selects ``"complex"``, ``"real"`` or ``"imag"``.
    """

    __test__ = False  # keep pytest from collecting this class

    kind: str
    dim: int
    degree: int
    params: dict = field(hash=False)
    _fn: Callable[[np.ndarray], np.ndarray] = field(repr=False, compare=False, hash=False)

    def __call__(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        if X.shape[-1] != self.dim:
            raise ValueError(f"expected points in R^{self.dim}, got shape {X.shape}")
        return self._fn(X)


def zonal(N: int, k: int, axis=None) -> TestPolynomial:
    """Zonal harmonic of degree ``k`` about ``axis`` (default ``e_N``), equal to 1 at ``axis``.

    Built from the Gegenbauer recurrence in the homogeneous variables
    ``t = <x, axis>`` and ``r^2 = |x|^2``; Chebyshev for ``N = 2``.
    """
    if N < 1 or k < 0:
        raise DomainError("need N >= 1 and k >= 0")
    if N == 1 and k > 1:
        raise DomainError("no harmonics of degree > 1 on R^1")
    a = np.zeros(N)
    if axis is None:
        a[-1] = 1.0
    else:
        a = np.asarray(axis, dtype=np.float64)
        if a.shape != (N,):
            raise DomainError("axis has the wrong dimension")
        a = a / np.linalg.norm(a)
    lam = (N - 2) / 2

    def fn(X):
        t = X @ a
        r2 = np.einsum("...i,...i->...", X, X)
        prev, cur = np.ones_like(t), t.copy()
        if k == 0:
            return prev
        if lam == 0 or N == 1:
            for _ in range(2, k + 1):
                prev, cur = cur, 2 * t * cur - r2 * prev
            return cur
        cur = 2 * lam * t
        for j in range(2, k + 1):
            prev, cur = cur, (2 * (j + lam - 1) * t * cur - (j + 2 * lam - 2) * r2 * prev) / j
        return cur / _gegen_norm(k, lam)

    return TestPolynomial("zonal", N, k, {"axis": tuple(a)}, fn)


def _gegen_norm(j: int, lam: float) -> float:
    # C_j^lam(1) = (2 lam)_j / j!
    return math.prod((2 * lam + i) / (i + 1) for i in range(j))


def bidegree(n: int, alpha: int, beta: int, index_pair=(1, 2), part: str = "complex") -> TestPolynomial:
    """``z_i^alpha conj(z_j)^beta`` on ``C^n = R^{2n}`` (1-based indices).

    Harmonic when ``i != j``, or when one of ``alpha``, ``beta`` vanishes.
    For ``n = 1`` only ``z^alpha`` or ``conj(z)^beta`` exist.
    """
    if n < 1 or alpha < 0 or beta < 0:
        raise DomainError("need n >= 1 and nonnegative bidegree")
    if part not in ("complex", "real", "imag"):
        raise DomainError(f"unknown part {part!r}")
    if n == 1:
        if alpha and beta:
            raise DomainError("H^{a,b}(C^1) vanishes when a, b >= 1")
        i = j = 1
    else:
        i, j = index_pair
        if not (1 <= i <= n and 1 <= j <= n):
            raise DomainError("index out of range")
        if i == j and alpha and beta:
            raise DomainError("z_i^a conj(z_i)^b with a, b >= 1 is not harmonic")

    def fn(X):
        zi = X[..., i - 1] + 1j * X[..., n + i - 1]
        zj = X[..., j - 1] + 1j * X[..., n + j - 1]
        v = zi**alpha * np.conj(zj) ** beta
        if part == "real":
            return v.real
        if part == "imag":
            return v.imag
        return v

    params = {"alpha": alpha, "beta": beta, "index_pair": (i, j), "part": part}
    return TestPolynomial("bidegree", 2 * n, alpha + beta, params, fn)


def make_test_polynomial(kind: str, **spec) -> TestPolynomial:
    """Build a zonal (``N, k, axis``) or bidegree (``n, alpha, beta, index_pair, part``) harmonic."""
    if kind == "zonal":
        return zonal(**spec)
    if kind == "bidegree":
        return bidegree(**spec)
    raise DomainError(f"unknown test polynomial kind {kind!r}")


__all__ = [
    "dim_hk",
    "dim_hab",
    "alternating_sum_D",
    "chebyshev_like_coeffs",
    "TestPolynomial",
    "zonal",
    "bidegree",
    "make_test_polynomial",
]
