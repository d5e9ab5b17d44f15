"""Closed forms for triple-product sphere integrals and the spectral sums behind them.

For three points ``X, Y, Z`` on a sphere and a two-point function ``f`` the
integral ``int |f(Y,Z)|^e1 |f(Z,X)|^e2 |f(X,Y)|^e3`` equals the trace of a
product of three commuting integral operators. Summing eigenvalue products
over harmonic subspaces gives a hypergeometric series whose sum is known in
closed form.

Two closed-form variants are provided for the distance and inner-product
kernels. ``*_printed`` reproduces the published display verbatim;
``*_consistent`` is assembled from the multipliers validated against the
brute-force oracles. Their ratio is a pure constant that the verification
suite measures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .harmonics import dim_hk
from .hyper import SeriesResult, dougall_rhs, richardson_sum, whipple_rhs
from .specfun import DomainError, MeroValue, PoleError, gamma_ratio
from .spectra import (
    OperatorKind,
    ParamSet,
    A_0_closed,
    Distance,
    InnerProduct,
    Symplectic,
    _cpow,
    c_Nl,
    distance_family,
    gamma_k_ratio_constant,
    inner_family,
    rcn_constant,
    symplectic_family,
)

DEFAULT_REL_TOL = 1e-12
DEFAULT_MAX_TERMS = 100_000
DECAY_MARGIN = 1e-3


def _three(mu) -> tuple[complex, complex, complex]:
    mu = tuple(complex(v) for v in mu)
    if len(mu) != 3:
        raise ValueError("expected three parameters")
    return mu


def _require(p: ParamSet, tag: str) -> None:
    if p.kind.tag != tag:
        raise ValueError(f"expected a {tag} parameter set, got {p.kind.tag}")


# ---------------------------------------------------------------------------
# Symplectic kernel


def closed_symplectic(p: ParamSet) -> MeroValue:
    """Closed form of the symplectic triple integral in alpha/beta/gamma/delta form."""
    _require(p, "symplectic")
    n = p.kind.dim
    a, b, g, d = p.abgd
    l1, l2, l3 = p.lam
    return gamma_ratio(
        numerator=((2 - n + a) / 4, (2 - n + b) / 4, (2 - n + g) / 4, (d + n) / 4),
        denominator=(n, (n - l1) / 2, (n - l2) / 2, (n - l3) / 2),
        prefactor=(2 * math.pi ** (n - 0.5)) ** 3,
    )


def trace_closed_T(n: int, mu) -> MeroValue:
    """``Trace(T_mu1 T_mu2 T_mu3)`` on ``S^{2n-1}`` in closed form."""
    m1, m2, m3 = _three(mu)
    return gamma_ratio(
        numerator=((1 - n - m1) / 2, (1 - n - m2) / 2, (1 - n - m3) / 2, (-m1 - m2 - m3 - n) / 2),
        denominator=(n, -(m1 + m2) / 2, -(m2 + m3) / 2, -(m1 + m3) / 2),
        prefactor=(2 * math.pi ** (n - 0.5)) ** 3,
    )


def trace_dougall(n: int, mu) -> MeroValue:
    """``A_0(mu1) A_0(mu2) A_0(mu3)`` times the Dougall sum of the normalised spectral series."""
    m1, m2, m3 = _three(mu)
    out = dougall_rhs(n, -(n + m1) / 2, -(n + m2) / 2, -(n + m3) / 2)
    for m in (m1, m2, m3):
        out = A_0_closed(n, m) * out
    return out


# ---------------------------------------------------------------------------
# Distance kernel


def closed_distance_printed(p: ParamSet) -> MeroValue:
    """The published closed form for the distance kernel on ``S^m``, verbatim."""
    _require(p, "distance")
    m = p.kind.dim
    a, b, g, d = p.abgd
    l1, l2, l3 = p.lam
    pref = (math.gamma(m + 0.5) / (2 ** (1 - m / 2) * math.sqrt(math.pi))) ** 3
    pref /= _cpow(2.0, (l1 + l2 + l3) / 2)
    return gamma_ratio(
        numerator=((a + m) / 4, (b + m) / 4, (g + m) / 4, (d + m) / 4),
        denominator=(m, (m - l1) / 2, (m - l2) / 2, (m - l3) / 2),
        prefactor=pref,
    )


def comparison_constant(m: int, mu) -> MeroValue:
    """``c`` with printed-distance trace ``= c * Trace(T_mu1 T_mu2 T_mu3)`` on ``S^{2m-1}``."""
    out = MeroValue.finite(1.0)
    for mj in _three(mu):
        out = out * rcn_constant(m, mj)
    return out


def closed_distance_consistent(p: ParamSet) -> MeroValue:
    """Distance triple integral from the Funk-Hecke multipliers and the symplectic closed trace."""
    _require(p, "distance")
    m = p.kind.dim
    scale = (1 / gamma_k_ratio_constant(m)) ** 3
    return (comparison_constant(m, p.mu) * trace_closed_T(m, p.mu)).scale(scale)


# ---------------------------------------------------------------------------
# Inner-product kernel


def _inner_3f2_params(N: int, nu):
    from .hyper import HyperParams

    n1, n2, n3 = nu
    return HyperParams((0.5 - n1, n2, n3), (0.5, N / 2 - n1), 1.0)


def closed_inner_printed(N: int, nu, rel_tol: float = DEFAULT_REL_TOL, max_terms: int = DEFAULT_MAX_TERMS) -> SeriesResult:
    """The published 3F2 closed form for kernel ``|<y,z>|^{-2nu1} |<z,x>|^{-2nu2} |<x,y>|^{-2nu3}``.

    A pole in the gamma prefactor raises :class:`PoleError`; a structural
    zero gives an exact zero.
    """
    from .hyper import pfq

    n1, n2, n3 = _three(nu)
    pref = gamma_ratio(
        numerator=(0.5 - n1, 0.5 - n2, 0.5 - n3),
        denominator=(N / 2, N / 2 - n2 - n3, N / 2 - n1),
        prefactor=(2 * math.pi ** ((N - 3) / 2)) ** 3,
    )
    return _scaled_series(pref, lambda: pfq(_inner_3f2_params(N, (n1, n2, n3)), rel_tol, max_terms))


def whipple_args(N: int, mu) -> tuple[complex, complex, complex, complex, complex]:
    """``(a, b, c, d, e)`` of the Whipple transformation for the inner-product spectral series."""
    m1, m2, m3 = _three(mu)
    return (N / 2 - 1, (N - 1) / 2, (N + 2 * m1) / 4, (N + 2 * m2) / 4, (N + 2 * m3) / 4)


def closed_inner_consistent(N: int, mu, rel_tol: float = DEFAULT_REL_TOL, max_terms: int = DEFAULT_MAX_TERMS) -> SeriesResult:
    """``c_N(mu1,0) c_N(mu2,0) c_N(mu3,0)`` times the Whipple-transformed spectral series."""
    pref = MeroValue.finite(1.0)
    for mj in _three(mu):
        pref = pref * c_Nl(N, 0, mj)
    return _scaled_series(pref, lambda: whipple_rhs(*whipple_args(N, mu), rel_tol=rel_tol, max_terms=max_terms))


def _scaled_series(pref: MeroValue, series_fn) -> SeriesResult:
    if pref.is_pole:
        raise PoleError("closed-form prefactor has a pole")
    if pref.is_zero:
        return SeriesResult(0j, 0, 0.0, True, "terminating")
    s = series_fn()
    c = pref.value
    return SeriesResult(s.value * c, s.terms_used, s.last_term_mag * abs(c), s.converged, s.method, s.error_estimate * abs(c))


# ---------------------------------------------------------------------------
# Spectral sums


@dataclass(frozen=True)
class _Spectrum:
    families: tuple
    multiplicity: object  # callable l -> int
    decay: complex  # term ~ l^(-decay)
    alternating: bool


def _spectrum(kind: OperatorKind, mu, variant: str = "funk_hecke") -> _Spectrum:
    mu = _three(mu)
    d = kind.dim
    smu = sum(mu)
    if kind.tag == "symplectic":
        fams = tuple(symplectic_family(d, m) for m in mu)
        return _Spectrum(fams, lambda l: dim_hk(d + 1, l), -(d - 1 + smu), False)
    if kind.tag == "distance":
        fams = tuple(distance_family(d, m, variant) for m in mu)
        return _Spectrum(fams, lambda l: dim_hk(d + 1, l), -(d - 1 + smu), False)
    fams = tuple(inner_family(d, m) for m in mu)
    return _Spectrum(fams, lambda l: dim_hk(d, 2 * l), -(d - 2 + smu), True)


def spectral_terms(kind: OperatorKind, mu, count: int, variant: str = "funk_hecke") -> np.ndarray:
    """First ``count`` terms ``multiplicity_l * prod_j multiplier_l(mu_j)`` of the trace series.

    Symplectic: index ``l`` runs over degrees ``2l`` with multiplicity
    ``D(2l) = dim H^l(R^{n+1})``. Distance: degree ``k`` with multiplicity
    ``dim H^k(R^{m+1})``. Inner product: degree ``2l`` with multiplicity
    ``dim H^{2l}(R^N)``.
    """
    sp = _spectrum(kind, mu, variant)
    mult = np.array([float(sp.multiplicity(l)) for l in range(count)])
    out = mult.astype(np.complex128)
    for fam in sp.families:
        out *= fam.values(count)
    return out


def series_decay(kind: OperatorKind, mu) -> complex:
    """Exponent ``q`` with trace-series terms decaying like ``l^(-q)``."""
    return _spectrum(kind, mu).decay


def trace_series(
    kind: OperatorKind,
    mu,
    rel_tol: float = DEFAULT_REL_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
    variant: str = "funk_hecke",
) -> SeriesResult:
    """``Trace`` of three commuting operators as a sum over harmonic subspaces.

    The partial sums are extrapolated in the cut-off using the known
    algebraic decay of the terms. Refuses parameters for which the series
    does not converge with margin. For the distance kind both the Funk-Hecke
    and the printed multipliers are summed; the one not selected by
    ``variant`` is stored in ``variants``.
    """
    sp = _spectrum(kind, mu, variant)
    q = sp.decay
    if sp.alternating:
        if q.real <= DECAY_MARGIN:
            raise DomainError(f"alternating spectral series needs decay exponent > {DECAY_MARGIN}, got {q.real:.6g}")
        tail = q
    else:
        if q.real - 1 <= DECAY_MARGIN:
            raise DomainError(f"spectral series needs decay exponent > {1 + DECAY_MARGIN}, got {q.real:.6g}")
        tail = q - 1

    cache: dict[str, np.ndarray] = {}

    def partial_at(L: int) -> complex:
        if "terms" not in cache or len(cache["terms"]) < L + 1:
            count = max(L + 1, 2 * len(cache.get("terms", ())))
            cache["terms"] = spectral_terms(kind, mu, count, variant)
            cache["sums"] = np.cumsum(cache["terms"])
        return cache["sums"][L]

    res = richardson_sum(partial_at, tail, rel_tol, max_terms, _first_cutoff(mu))
    if kind.tag == "distance":
        other = "printed" if variant == "funk_hecke" else "funk_hecke"
        ratio = (gamma_k_ratio_constant(kind.dim) ** 3) if other == "printed" else gamma_k_ratio_constant(kind.dim) ** -3
        res.variants[other] = res.value * ratio
    return res


def _first_cutoff(mu) -> int:
    scale = max(abs(m) for m in mu)
    L = 32
    while L < 4 * scale:
        L *= 2
    return L


@dataclass
class TraceReport:
    """Spectral sum next to the printed and consistent closed forms."""

    kind: OperatorKind
    mu: tuple
    series: SeriesResult
    closed_printed: MeroValue
    closed_consistent: MeroValue
    ratio: complex | None = None
    rel_diff: float | None = None


def trace_report(kind: OperatorKind, mu, rel_tol: float = DEFAULT_REL_TOL, max_terms: int = DEFAULT_MAX_TERMS) -> TraceReport:
    mu = _three(mu)
    series = trace_series(kind, mu, rel_tol, max_terms)
    p = ParamSet.build(kind, mu=mu)
    if kind.tag == "symplectic":
        printed = consistent = trace_closed_T(kind.dim, mu)
    elif kind.tag == "distance":
        printed = closed_distance_printed(p)
        consistent = closed_distance_consistent(p)
    else:
        printed = MeroValue.finite(closed_inner_printed(kind.dim, p.nu, rel_tol, max_terms).value)
        consistent = MeroValue.finite(closed_inner_consistent(kind.dim, mu, rel_tol, max_terms).value)
    report = TraceReport(kind, mu, series, printed, consistent)
    if consistent.is_finite and consistent.value != 0:
        report.rel_diff = abs(series.value / consistent.value - 1)
    if printed.is_finite and consistent.is_finite and printed.value != 0:
        report.ratio = consistent.value / printed.value
    return report


# ---------------------------------------------------------------------------
# Convergence regions


@dataclass(frozen=True)
class Inequality:
    """``Re(lhs) > bound``, evaluated."""

    name: str
    lhs: complex
    bound: float

    @property
    def holds(self) -> bool:
        return complex(self.lhs).real > self.bound


@dataclass(frozen=True)
class RegionVerdict:
    """Whether the triple integral converges absolutely, with the inequalities checked.

    For the symplectic kind ``alt_checks`` holds the equivalent
    alpha/beta/gamma/delta formulation.
    """

    kind: OperatorKind
    checks: tuple[Inequality, ...]
    alt_checks: tuple[Inequality, ...] = ()

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks)

    @property
    def alt_ok(self) -> bool | None:
        return all(c.holds for c in self.alt_checks) if self.alt_checks else None

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        lines = [f"region: {'convergent' if self.ok else 'divergent'}"]
        for c in self.checks + self.alt_checks:
            lines.append(f"  Re({c.name}) = {complex(c.lhs).real:.6g} > {c.bound:g}: {'ok' if c.holds else 'FAIL'}")
        return "\n".join(lines)


def region_checks_exponents(kind: OperatorKind, exponents) -> tuple[Inequality, ...]:
    """Absolute-convergence inequalities on the kernel exponents ``(e1, e2, e3)``."""
    e = _three(exponents)
    d = kind.dim
    if kind.tag == "distance":
        per, total = -float(d), -2.0 * d
    else:
        per, total = -1.0, (-2.0 if kind.tag == "symplectic" and d == 1 else None)
    checks = [Inequality(f"e{j + 1}", e[j], per) for j in range(3)]
    if total is not None:
        checks.append(Inequality("e1+e2+e3", sum(e), total))
    return tuple(checks)


def region_checks_abgd(n: int, abgd) -> tuple[Inequality, ...]:
    """The symplectic region written with alpha, beta, gamma (and delta for n = 1)."""
    a, b, g, d = (complex(v) for v in abgd)
    checks = [Inequality("alpha", a, n - 2.0), Inequality("beta", b, n - 2.0), Inequality("gamma", g, n - 2.0)]
    if n == 1:
        checks.append(Inequality("delta", d, -1.0))
    return tuple(checks)


def region_check(p: ParamSet) -> RegionVerdict:
    """Convergence verdict for the triple integral described by ``p``."""
    checks = region_checks_exponents(p.kind, p.exponents)
    alt = region_checks_abgd(p.kind.dim, p.abgd) if p.kind.tag == "symplectic" else ()
    return RegionVerdict(p.kind, checks, alt)


__all__ = [
    "closed_symplectic",
    "trace_closed_T",
    "trace_dougall",
    "closed_distance_printed",
    "closed_distance_consistent",
    "comparison_constant",
    "closed_inner_printed",
    "closed_inner_consistent",
    "whipple_args",
    "spectral_terms",
    "series_decay",
    "trace_series",
    "TraceReport",
    "trace_report",
    "Inequality",
    "RegionVerdict",
    "region_checks_exponents",
    "region_checks_abgd",
    "region_check",
]
