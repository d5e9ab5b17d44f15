"""Brute-force ground truth: Monte Carlo on spheres, torus quadrature, 1-D Fourier pairing.

All sphere integrals use the Euclidean surface measure, so the constant
kernel integrates to ``vol(S^{N-1}) = 2 pi^{N/2} / Gamma(N/2)`` per factor.

Monte Carlo runs are split into shards. Shard ``i`` draws from a Philox
counter-based generator keyed by ``(seed, i)``, and shard statistics are
merged in shard order, so a result depends only on ``(seed, samples, shards)``
and not on thread scheduling.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from ._backend import kernels
from .harmonics import TestPolynomial
from .specfun import DomainError
from .spectra import B_N, OperatorKind, sphere_volume
from .triple import region_checks_exponents

KIND_CODES = {"symplectic": kernels.KIND_SYMPLECTIC, "distance": kernels.KIND_DISTANCE, "inner": kernels.KIND_INNER}
DEFAULT_SHARDS = 8
DEFAULT_CHUNK = 1 << 18
MIN_MC_EXPONENT = -0.5
_MASK64 = (1 << 64) - 1


class RegionError(DomainError):
    """Kernel exponents outside the range where the estimate is meaningful."""


# ---------------------------------------------------------------------------
# Sampling and the symplectic form


def shard_rng(seed: int, shard: int) -> np.random.Generator:
    """Independent Philox stream for one shard."""
    return np.random.Generator(np.random.Philox(key=(shard << 64) | (seed & _MASK64)))


def sample_sphere(N: int, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """Uniform points on ``S^{N-1}`` by normalising standard Gaussian vectors.

    Returns shape ``(N,)`` if ``size`` is None, else ``(size, N)``.
    """
    if N < 1:
        raise ValueError("N must be positive")
    shape = (N,) if size is None else (size, N)
    g = rng.standard_normal(shape)
    norm = np.linalg.norm(g, axis=-1, keepdims=True)
    return g / norm


def symplectic_form(X, Y) -> np.ndarray:
    """``[X, Y] = -<x, eta> + <y, xi>`` for ``X = (x, xi)``, ``Y = (y, eta)`` in ``R^{2n}``."""
    X = np.asarray(X, dtype=np.float64)
    Y = np.asarray(Y, dtype=np.float64)
    if X.shape[-1] != Y.shape[-1] or X.shape[-1] % 2:
        raise ValueError("symplectic form needs matching even dimensions")
    n = X.shape[-1] // 2
    return -np.einsum("...i,...i->...", X[..., :n], Y[..., n:]) + np.einsum("...i,...i->...", Y[..., :n], X[..., n:])


def complex_structure(Y) -> np.ndarray:
    """``J(y, eta) = (-eta, y)``; ``[X, Y] = <X, J Y>``."""
    Y = np.asarray(Y, dtype=np.float64)
    n = Y.shape[-1] // 2
    return np.concatenate([-Y[..., n:], Y[..., :n]], axis=-1)


# ---------------------------------------------------------------------------
# Kernels and estimates


@dataclass(frozen=True)
class KernelSpec:
    """Operator kind plus kernel exponents: three for a triple integral, one for an operator."""

    kind: OperatorKind
    exponents: tuple[float, ...]

    def __post_init__(self):
        exps = tuple(float(e) for e in self.exponents)
        if len(exps) not in (1, 3):
            raise ValueError("give one exponent (operator) or three (triple integral)")
        object.__setattr__(self, "exponents", exps)

    @property
    def polynomial(self) -> bool:
        """All exponents even nonnegative integers, so the kernel is a polynomial."""
        return all(e >= 0 and e == int(e) and int(e) % 2 == 0 for e in self.exponents)

    @classmethod
    def for_operator(cls, kind: OperatorKind, mu: float) -> "KernelSpec":
        """Kernel of the operator with parameter ``mu``: exponent ``-mu - s``."""
        return cls(kind, (-float(mu) - kind.shift,))


@dataclass(frozen=True)
class MCEstimate:
    mean: float
    stderr: float
    samples: int
    seed: int
    shards: int = DEFAULT_SHARDS

    def z_score(self, expected: float) -> float:
        """``|mean - expected| / stderr``; zero-error estimates give 0 or inf."""
        diff = abs(self.mean - expected)
        if self.stderr == 0:
            return 0.0 if diff <= 1e-12 * max(1.0, abs(expected)) else math.inf
        return diff / self.stderr

    def agrees(self, expected: float, sigmas: float = 3.0) -> bool:
        return self.z_score(expected) <= sigmas


def _ambient_dim(kind: OperatorKind) -> int:
    return kind.ambient_dim


def _check_mc_exponents(kernel: KernelSpec) -> None:
    if len(kernel.exponents) == 3:
        bad = [c for c in region_checks_exponents(kernel.kind, kernel.exponents) if not c.holds]
        if bad:
            raise RegionError("exponents outside the convergence region: " + ", ".join(c.name for c in bad))
    neg = [e for e in kernel.exponents if e < 0]
    if any(e <= MIN_MC_EXPONENT for e in neg):
        raise RegionError(f"Monte Carlo needs exponents > {MIN_MC_EXPONENT}")
    if neg:
        warnings.warn("negative kernel exponents give heavy-tailed samples; stderr may be unreliable", RuntimeWarning, stacklevel=3)


def _merge(acc, part):
    # Chan et al. pairwise combination of (count, mean, M2).
    n_a, mean_a, m2_a = acc
    n_b, mean_b, m2_b = part
    if n_a == 0:
        return part
    n = n_a + n_b
    delta = mean_b - mean_a
    return n, mean_a + delta * n_b / n, m2_a + m2_b + delta * delta * n_a * n_b / n


def _shard_sizes(samples: int, shards: int) -> list[int]:
    base, extra = divmod(samples, shards)
    return [base + (1 if i < extra else 0) for i in range(shards)]


def _run_sharded(sample_fn, samples: int, seed: int, shards: int, workers: int | None, chunk: int):
    """Run ``sample_fn(rng, size) -> values`` over shards; return (count, mean, M2)."""

    def shard_stats(i: int, size: int):
        rng = shard_rng(seed, i)
        acc = (0, 0.0, 0.0)
        done = 0
        while done < size:
            k = min(chunk, size - done)
            v = sample_fn(rng, k)
            m = float(v.mean())
            acc = _merge(acc, (k, m, float(((v - m) ** 2).sum())))
            done += k
        return acc

    sizes = _shard_sizes(samples, shards)
    if workers == 1:
        parts = [shard_stats(i, s) for i, s in enumerate(sizes)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(shard_stats, range(shards), sizes))
    total = (0, 0.0, 0.0)
    for part in parts:
        total = _merge(total, part)
    return total


def _estimate(stats, scale: float, samples: int, seed: int, shards: int) -> MCEstimate:
    n, mean, m2 = stats
    var = m2 / (n - 1) if n > 1 else 0.0
    return MCEstimate(scale * mean, scale * math.sqrt(var / n), samples, seed, shards)


def mc_triple(
    kernel: KernelSpec,
    samples: int,
    seed: int,
    shards: int = DEFAULT_SHARDS,
    workers: int | None = None,
    chunk: int = DEFAULT_CHUNK,
) -> MCEstimate:
    """``vol^3`` times the sample mean of ``|f(Y,Z)|^e1 |f(Z,X)|^e2 |f(X,Y)|^e3`` at uniform triples."""
    if len(kernel.exponents) != 3:
        raise ValueError("mc_triple needs three exponents")
    if samples < 1:
        raise ValueError("samples must be positive")
    _check_mc_exponents(kernel)
    d = _ambient_dim(kernel.kind)
    code = KIND_CODES[kernel.kind.tag]
    e1, e2, e3 = kernel.exponents

    def sample_fn(rng, k):
        # one (3, d) block per sample keeps the stream independent of chunking
        P = rng.standard_normal((k, 3, d))
        P /= np.linalg.norm(P, axis=-1, keepdims=True)
        return kernels.triple_kernel_values(code, P[:, 0], P[:, 1], P[:, 2], e1, e2, e3)

    stats = _run_sharded(sample_fn, samples, seed, shards, workers, chunk)
    return _estimate(stats, sphere_volume(d) ** 3, samples, seed, shards)


def mc_apply_operator(
    kernel: KernelSpec,
    p: TestPolynomial,
    eta,
    samples: int,
    seed: int,
    shards: int = DEFAULT_SHARDS,
    workers: int | None = None,
    chunk: int = DEFAULT_CHUNK,
) -> MCEstimate:
    """Estimate ``int p(w) |f(w, eta)|^e dsigma(w)`` for a real-valued polynomial ``p``."""
    if len(kernel.exponents) != 1:
        raise ValueError("operator kernels take one exponent")
    _check_mc_exponents(kernel)
    d = _ambient_dim(kernel.kind)
    if p.dim != d:
        raise ValueError(f"polynomial lives on R^{p.dim}, sphere is in R^{d}")
    eta = np.asarray(eta, dtype=np.float64)
    if eta.shape != (d,) or abs(np.linalg.norm(eta) - 1) > 1e-12:
        raise ValueError("eta must be a unit vector of the ambient dimension")
    code = KIND_CODES[kernel.kind.tag]
    (e,) = kernel.exponents
    probe = p(eta)
    if np.iscomplexobj(probe):
        raise ValueError("use a real-valued test polynomial (part='real' or 'imag')")

    def sample_fn(rng, k):
        W = sample_sphere(d, rng, k)
        E = np.broadcast_to(eta, W.shape)
        return p(W) * kernels.pair_kernel_values(code, W, E, e)

    stats = _run_sharded(sample_fn, samples, seed, shards, workers, chunk)
    return _estimate(stats, sphere_volume(d), samples, seed, shards)


def mc_multiplier(
    kernel: KernelSpec, p: TestPolynomial, eta, samples: int, seed: int, min_abs: float = 0.1, **kw
) -> MCEstimate:
    """Operator applied to ``p`` at ``eta`` divided by ``p(eta)``; estimates the eigenvalue."""
    pe = float(p(np.asarray(eta, dtype=np.float64)))
    if abs(pe) <= min_abs:
        raise DomainError(f"|p(eta)| = {abs(pe):.3g} too small; choose another eta")
    est = mc_apply_operator(kernel, p, eta, samples, seed, **kw)
    return MCEstimate(est.mean / pe, est.stderr / abs(pe), est.samples, est.seed, est.shards)


# ---------------------------------------------------------------------------
# Deterministic circle quadrature


def _circle_kind(kind: str) -> int:
    try:
        return KIND_CODES[kind]
    except KeyError:
        raise ValueError(f"unknown kernel kind {kind!r}") from None


def torus_quadrature_triple(n_grid: int, exponents, kind: str = "symplectic") -> float:
    """Triple integral over ``(S^1)^3`` by the trapezoid rule on the 2-torus.

    Rotation invariance fixes the third point, leaving a periodic 2-D
    integrand; with even integer exponents it is a trigonometric polynomial,
    for which the rule is exact once ``n_grid`` exceeds its bandwidth.
    ``kind`` selects ``[X,Y]`` (symplectic, n = 1), ``|X-Y|`` (distance,
    m = 1) or ``<X,Y>`` (inner, N = 2).
    """
    if n_grid < 64 or n_grid & (n_grid - 1):
        raise ValueError("n_grid must be a power of two >= 64")
    exps = tuple(float(e) for e in exponents)
    if len(exps) != 3 or any(e < 0 or e != int(e) or int(e) % 2 for e in exps):
        raise ValueError("exponents must be three even nonnegative integers")
    code = _circle_kind(kind)
    t = 2 * np.pi * np.arange(n_grid) / n_grid
    a, b = np.meshgrid(t, t, indexing="ij")
    X = np.stack([np.cos(a.ravel()), np.sin(a.ravel())], axis=1)
    Y = np.stack([np.cos(b.ravel()), np.sin(b.ravel())], axis=1)
    Z = np.tile([1.0, 0.0], (X.shape[0], 1))
    vals = kernels.triple_kernel_values(code, X, Y, Z, *exps)
    return float(2 * np.pi * (2 * np.pi / n_grid) ** 2 * math.fsum(vals))


# ---------------------------------------------------------------------------
# One-dimensional Fourier pairing


def _gauss_moment(power: float) -> float:
    # int_R |x|^power exp(-pi x^2) dx, singular endpoint handled by QUADPACK's algebraic weight
    f = lambda x: np.exp(-np.pi * x * x)
    head, _ = integrate.quad(f, 0.0, 1.0, weight="alg", wvar=(power, 0.0), epsabs=0.0, epsrel=1e-13, limit=200)
    tail, _ = integrate.quad(lambda x: x**power * f(x), 1.0, np.inf, epsabs=0.0, epsrel=1e-13, limit=200)
    return 2.0 * (head + tail)


def gaussian_pairing_check(lam: float) -> tuple[float, float]:
    """Pair ``|x|^lam`` and its Fourier transform with the self-dual Gaussian ``exp(-pi x^2)``.

    Returns ``(<|x|^lam, g>, B_1(lam, 0) <|y|^{-lam-1}, g>)``; the two agree
    when ``B_1`` is the correct Fourier multiplier.
    """
    lam = float(lam)
    if not -1.0 < lam < 0.0:
        raise DomainError("need -1 < lam < 0 for both sides to be integrable")
    lhs = _gauss_moment(lam)
    b = B_N(1, lam, 0)
    rhs = b.to_complex().real * _gauss_moment(-lam - 1.0)
    return lhs, rhs


__all__ = [
    "RegionError",
    "shard_rng",
    "sample_sphere",
    "symplectic_form",
    "complex_structure",
    "KernelSpec",
    "MCEstimate",
    "mc_triple",
    "mc_apply_operator",
    "mc_multiplier",
    "torus_quadrature_triple",
    "gaussian_pairing_check",
]
