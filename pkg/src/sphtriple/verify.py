"""Verification suites: every closed formula against an independent computation.

Suites are ``exact`` (integer identities and closed-form constants),
``series`` (spectral sums against closed forms), ``mc`` (Monte Carlo oracles)
and ``audit`` (measured ratios between printed closed forms and the oracle).
Audit entries report constants and never fail the run.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import platform
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import __version__
from ._backend import BACKEND
from .harmonics import alternating_sum_D, bidegree, chebyshev_like_coeffs, dim_hab, dim_hk, zonal
from .hyper import dougall_params, dougall_rhs, pfq, whipple_lhs_params, whipple_rhs
from .oracle import KernelSpec, gaussian_pairing_check, mc_apply_operator, mc_multiplier, mc_triple, torus_quadrature_triple
from .specfun import MeroValue
from .spectra import (
    A_k,
    B_N,
    C_N,
    C_N_trig,
    Distance,
    InnerProduct,
    ParamSet,
    Symplectic,
    c_Nl,
    gamma_k_funk_hecke,
    gamma_k_printed,
    gamma_k_ratio_constant,
    sphere_volume,
    t_eigen,
)
from .triple import (
    closed_distance_consistent,
    closed_distance_printed,
    closed_inner_consistent,
    closed_inner_printed,
    closed_symplectic,
    comparison_constant,
    region_check,
    region_checks_abgd,
    region_checks_exponents,
    trace_closed_T,
    trace_dougall,
    trace_series,
)

SUITES = ("exact", "series", "mc", "audit")
ENTRY_KINDS = ("exact", "tolerance", "mc-sigma", "constant-audit")
CSV_HEADER = ("name", "kind", "expected", "observed", "sigma", "pass", "details")


@dataclass(frozen=True)
class RunConfig:
    seed: int = 42
    samples: int = 1_000_000
    rel_tol: float = 1e-12
    max_terms: int = 100_000
    output_format: str = "text"
    output_path: str | None = None
    deterministic: bool = False

    def __post_init__(self):
        if not 0 < self.rel_tol <= 1e-2:
            raise ValueError("rel_tol must lie in (0, 1e-2]")
        if self.samples < 1000:
            raise ValueError("samples must be at least 1000")
        if self.max_terms < 1:
            raise ValueError("max_terms must be positive")
        if self.output_format not in ("json", "csv", "text"):
            raise ValueError(f"unknown output format {self.output_format!r}")


@dataclass
class Entry:
    name: str
    kind: str
    expected: object
    observed: object
    passed: bool
    sigma: float | None = None
    details: str = ""

    def to_dict(self) -> dict:
        d = {"name": self.name, "kind": self.kind, "expected": self.expected, "observed": self.observed}
        if self.sigma is not None:
            d["sigma"] = self.sigma
        d["pass"] = self.passed
        if self.details:
            d["details"] = self.details
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Entry":
        return cls(d["name"], d["kind"], d["expected"], d["observed"], d["pass"], d.get("sigma"), d.get("details", ""))


@dataclass
class ConstantRow:
    theorem: str
    dim: int
    measured: float
    spread: float
    predicted: float | None = None

    def to_dict(self) -> dict:
        d = {"theorem": self.theorem, "dim": self.dim, "measured": self.measured, "spread": self.spread}
        if self.predicted is not None:
            d["predicted"] = self.predicted
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ConstantRow":
        return cls(d["theorem"], d["dim"], d["measured"], d["spread"], d.get("predicted"))


@dataclass
class VerificationReport:
    suite: list[Entry] = field(default_factory=list)
    constants: list[ConstantRow] = field(default_factory=list)
    env: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.suite if e.kind != "constant-audit")

    def failures(self) -> list[Entry]:
        return [e for e in self.suite if e.kind != "constant-audit" and not e.passed]

    def to_dict(self) -> dict:
        return {
            "suite": [e.to_dict() for e in self.suite],
            "constants": [c.to_dict() for c in self.constants],
            "env": dict(self.env),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        return cls([Entry.from_dict(e) for e in d["suite"]], [ConstantRow.from_dict(c) for c in d["constants"]], dict(d["env"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for e in self.suite:
            w.writerow([e.name, e.kind, _fmt(e.expected), _fmt(e.observed), "" if e.sigma is None else repr(e.sigma), e.passed, e.details])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = []
        for e in self.suite:
            status = "AUDIT" if e.kind == "constant-audit" else ("PASS" if e.passed else "FAIL")
            extra = f"  sigma={e.sigma:.3g}" if e.sigma is not None else ""
            lines.append(f"[{status}] {e.name}: expected {_fmt(e.expected)}, observed {_fmt(e.observed)}{extra}")
            if e.details:
                lines.append(f"        {e.details}")
        if self.constants:
            lines.append("")
            lines.append("measured constants (oracle / printed closed form):")
            for c in self.constants:
                pred = f"  predicted {c.predicted:.12g}" if c.predicted is not None else ""
                lines.append(f"  {c.theorem} dim={c.dim}: {c.measured:.12g}  spread {c.spread:.3g}{pred}")
        n_fail = len(self.failures())
        lines.append("")
        lines.append(f"{len(self.suite)} entries, {n_fail} failures" + (f", wall {self.env['wall_ms']} ms" if "wall_ms" in self.env else ""))
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        return {"json": self.to_json, "csv": self.to_csv, "text": self.to_text}[fmt]()


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.15g}"
    return str(v)


def _num(z) -> float | list[float] | str:
    """JSON-friendly scalar: real float, ``[re, im]`` pair, or a tag string."""
    if isinstance(z, MeroValue):
        if not z.is_finite:
            return z.tag.value
        z = z.value
    z = complex(z)
    return z.real if abs(z.imag) <= 1e-14 * abs(z) else [z.real, z.imag]


def _rel(a, b) -> float:
    a, b = complex(a), complex(b)
    return abs(a - b) / max(abs(b), 1e-300)


class _Builder:
    def __init__(self, report: VerificationReport):
        self.report = report

    def exact(self, name, expected, observed, details=""):
        self.report.suite.append(Entry(name, "exact", expected, observed, expected == observed, None, details))

    def tol(self, name, expected, observed, tol, details=""):
        err = _rel(observed, expected)
        self.report.suite.append(Entry(name, "tolerance", _num(expected), _num(observed), err <= tol, None, details or f"rel err {err:.3g} (tol {tol:g})"))

    def worst(self, name, errors, tol, details=""):
        w = max(errors)
        self.report.suite.append(Entry(name, "tolerance", 0.0, w, w <= tol, None, details or f"{len(errors)} cases, worst rel err {w:.3g} (tol {tol:g})"))

    def sigma(self, name, expected, est, sigmas=3.0, details=""):
        z = est.z_score(complex(expected).real)
        self.report.suite.append(
            Entry(name, "mc-sigma", _num(expected), est.mean, z <= sigmas, est.stderr, details or f"z = {z:.3g}, n = {est.samples}")
        )

    def audit(self, name, expected, observed, details=""):
        self.report.suite.append(Entry(name, "constant-audit", _num(expected), _num(observed), True, None, details))


# ---------------------------------------------------------------------------
# Suites


def _suite_exact(b: _Builder, cfg: RunConfig, rng: np.random.Generator) -> None:
    rec = all(dim_hk(N, k) + dim_hk(N + 1, k - 1) == dim_hk(N + 1, k) for N in range(2, 13) for k in range(1, 26))
    b.exact("dim recurrence N<=12 k<=25", True, rec)
    direct = all(sum(dim_hab(n, a, k - a) for a in range(k + 1)) == dim_hk(2 * n, k) for n in range(1, 7) for k in range(21))
    b.exact("bidegree direct sum n<=6 k<=20", True, direct)
    alt = all(alternating_sum_D(n, 2 * l) == dim_hk(n + 1, l) for n in range(1, 7) for l in range(13))
    b.exact("alternating sum D(2l) = dim H^l(R^{n+1}) n<=6 l<=12", True, alt)
    b.exact("D(odd) = 0", True, all(alternating_sum_D(n, k) == 0 for n in range(1, 7) for k in range(1, 25, 2)))
    b.exact("dim_hk(4,2)", 9, dim_hk(4, 2))
    b.exact("dim_hab(2,1,1)", 3, dim_hab(2, 1, 1))
    b.exact("chebyshev coeffs l=1..3", [[1], [1, -2], [1, -3]], [chebyshev_like_coeffs(l) for l in (1, 2, 3)])

    errs = []
    for _ in range(100):
        x = rng.uniform(0.2, 5.0)
        l = int(rng.integers(1, 13))
        lhs = x**l + x**-l
        rhs = sum(c * (x + 1 / x) ** (l - 2 * j) for j, c in enumerate(chebyshev_like_coeffs(l)))
        errs.append(_rel(rhs, lhs))
    b.worst("x^l + x^-l expansion, 100 draws", errs, 1e-10)

    p = ParamSet.build(Symplectic(1), lam=(-5, -5, -5))
    b.tol("closed_symplectic n=1 lam=-5 vs 3pi^3/4", 3 * math.pi**3 / 4, closed_symplectic(p).value, 1e-12)
    b.tol("torus quadrature symplectic (2,2,2)", 3 * math.pi**3 / 4, torus_quadrature_triple(64, (2, 2, 2)), 1e-10)
    b.tol("closed_symplectic vs torus", torus_quadrature_triple(64, (2, 2, 2)), closed_symplectic(p).value, 1e-10)
    for N in range(2, 7):
        b.tol(f"c_Nl({N},0,-N/2) = vol(S^{N - 1})", sphere_volume(N), c_Nl(N, 0, -N / 2).value, 1e-12)
    for n in (1, 2, 3):
        b.tol(f"A_0({n},{-n - 2}) = pi^{n}/{n}!", math.pi**n / math.factorial(n), A_k(n, 0, -n - 2).value, 1e-12)

    errs = []
    for _ in range(100):
        n = int(rng.integers(1, 4))
        a, bb = (int(v) for v in rng.integers(0, 8, size=2))
        if (a + bb) % 2:
            bb += 1
        mu = complex(rng.uniform(-7, 3), rng.uniform(-1, 1))
        lhs = (-1) ** ((a - bb) // 2) * C_N(2 * n, mu).value * B_N(2 * n, mu - n, a + bb).value
        errs.append(_rel(lhs, t_eigen(n, a, bb, mu).value))
    b.worst("C_2n B_2n factorisation = (-1)^b A_k, 100 draws", errs, 1e-10)

    errs = []
    for _ in range(100):
        N = int(rng.integers(1, 7))
        mu = complex(rng.uniform(-6, 4), rng.uniform(-1, 1))
        errs.append(_rel(C_N_trig(N, mu), C_N(N, mu).value))
    b.worst("C_N gamma form vs trigonometric form, 100 draws", errs, 1e-11)

    for lam in (-0.25, -0.5, -0.75):
        lhs, rhs = gaussian_pairing_check(lam)
        b.tol(f"Gaussian pairing lambda={lam}", lhs, rhs, 1e-9)
    b.tol("B_1(-1/2,0) = 1", 1.0, B_N(1, -0.5, 0).value, 1e-10)
    b.tol("B_1(-1/4,0) B_1(-3/4,0) = 1", 1.0, B_N(1, -0.25, 0).value * B_N(1, -0.75, 0).value, 1e-10)

    _region_entries(b, rng)


def _region_entries(b: _Builder, rng: np.random.Generator) -> None:
    cases = [
        (Symplectic(2), (0.5, 0.5, 0.5), True),
        (Symplectic(2), (-1.0, 0.5, 0.5), False),
        (Symplectic(2), (-0.999, -0.999, -0.999), True),
        (Symplectic(1), (-0.9, -0.9, -0.9), False),
        (Symplectic(1), (-0.6, -0.6, -0.6), True),
        (Symplectic(1), (-0.5, -0.5, -1.0), False),
        (InnerProduct(3), (-0.99, -0.99, -0.99), True),
        (InnerProduct(3), (-1.0, 0.0, 0.0), False),
        (Distance(2), (-1.5, -1.5, -1.5), False),
        (Distance(2), (-1.3, -1.3, -1.3), True),
        (Distance(2), (-2.0, 1.0, 1.0), False),
    ]
    ok = all(region_check(ParamSet.build(k, exponents=e)).ok == want for k, e, want in cases)
    b.exact("region predicates, boundary cases", True, ok)
    agree = True
    for _ in range(1000):
        n = int(rng.integers(1, 4))
        lam = rng.uniform(-4, 4, size=3) + 1j * rng.uniform(-1, 1, size=3)
        v = region_check(ParamSet.build(Symplectic(n), lam=lam))
        agree &= v.ok == v.alt_ok
    b.exact("symplectic region: exponent form = alpha/beta/gamma form, 1000 draws", True, bool(agree))


def _suite_series(b: _Builder, cfg: RunConfig, rng: np.random.Generator) -> None:
    tol = max(cfg.rel_tol, 1e-14)
    errs, errs_d = [], []
    for _ in range(20):
        n = int(rng.integers(1, 4))
        mu = rng.uniform(-8, -3, size=3) + 1j * rng.uniform(-1, 1, size=3)
        s = trace_series(Symplectic(n), mu, tol, cfg.max_terms)
        closed = trace_closed_T(n, mu).value
        errs.append(_rel(s.value, closed))
        errs_d.append(_rel(trace_dougall(n, mu).value, closed))
    b.worst("symplectic spectral sum vs closed trace, 20 draws", errs, 1e-8)
    b.worst("Dougall assembly vs closed trace, 20 draws", errs_d, 1e-8)
    b.tol("symplectic spectral sum n=1 mu=-3", 3 * math.pi**3 / 4, trace_series(Symplectic(1), (-3, -3, -3)).value, 1e-8)

    errs = []
    draws = 0
    while draws < 50:
        m = rng.uniform(1.05, 3)
        x, y, z = rng.uniform(-0.9, -0.1, size=3)
        if 2 * (m + x + y + z) <= 0.5:
            continue
        draws += 1
        errs.append(_rel(pfq(dougall_params(m, x, y, z), tol, cfg.max_terms).value, dougall_rhs(m, x, y, z).value))
    b.worst("Dougall 5F4 vs gamma product, 50 draws", errs, 1e-8)
    b.tol("dougall_rhs(2,-1/2,-1/2,-1/2) = pi^2/8", math.pi**2 / 8, dougall_rhs(2, -0.5, -0.5, -0.5).value, 1e-12)

    errs = []
    draws = 0
    while draws < 30:
        a = rng.uniform(0.5, 3.0)
        bb, c, d, e = rng.uniform(-0.5, 1.0, size=4)
        lhs_p = whipple_lhs_params(a, bb, c, d, e)
        if lhs_p.excess.real + 1 <= 1.5 or (1 + a - d - e) <= 0.5:
            continue
        draws += 1
        errs.append(_rel(pfq(lhs_p, tol, cfg.max_terms).value, whipple_rhs(a, bb, c, d, e, tol, cfg.max_terms).value))
    b.worst("Whipple 6F5(-1) vs 3F2 side, 30 draws", errs, 1e-8)

    errs_r, errs_p, errs_q = [], [], []
    for _ in range(10):
        m = int(rng.integers(1, 4))
        mu = rng.uniform(-8, -4, size=3) + 1j * rng.uniform(-1, 1, size=3)
        p = ParamSet.build(Distance(m), mu=mu)
        errs_r.append(_rel(trace_series(Distance(m), mu, tol, cfg.max_terms).value, closed_distance_consistent(p).value))
        errs_p.append(_rel((comparison_constant(m, mu) * trace_closed_T(m, mu)).value, closed_distance_printed(p).value))
        N = int(rng.integers(2, 7))
        mu_q = rng.uniform(-6, -2, size=3) + 1j * rng.uniform(-0.5, 0.5, size=3)
        errs_q.append(_rel(trace_series(InnerProduct(N), mu_q, tol, cfg.max_terms).value, closed_inner_consistent(N, mu_q, tol, cfg.max_terms).value))
    b.worst("distance spectral sum vs Funk-Hecke closed form, 10 draws", errs_r, 1e-8)
    b.worst("printed distance form = c * closed trace, 10 draws", errs_p, 1e-10)
    b.worst("inner spectral sum vs Whipple closed form, 10 draws", errs_q, 1e-8)


def _suite_mc(b: _Builder, cfg: RunConfig, rng: np.random.Generator) -> None:
    S, seed = cfg.samples, cfg.seed
    est = mc_triple(KernelSpec(Symplectic(1), (2, 2, 2)), S, seed)
    b.sigma("MC symplectic triple n=1 (2,2,2)", 3 * math.pi**3 / 4, est)
    est = mc_triple(KernelSpec(InnerProduct(3), (2, 2, 2)), S, seed + 1)
    b.sigma("MC inner triple N=3 (2,2,2) vs spectral sum", trace_series(InnerProduct(3), (-3.5,) * 3).value, est)
    est = mc_triple(KernelSpec(Distance(2), (2, 2, 2)), S, seed + 2)
    b.sigma("MC distance triple m=2 (2,2,2) vs Funk-Hecke spectral sum", trace_series(Distance(2), (-4,) * 3).value, est)

    p = bidegree(1, 2, 0, part="real")
    for i, t in enumerate((0.0, 1.0, 2.5)):
        eta = np.array([math.cos(t), math.sin(t)])
        est = mc_multiplier(KernelSpec.for_operator(Symplectic(1), -3), p, eta, S, seed + 10 + i)
        b.sigma(f"T eigenvalue n=1 mu=-3 on Re z^2, eta angle {t}", t_eigen(1, 2, 0, -3).value, est)
    p = bidegree(2, 1, 1, (1, 2), part="real")
    eta = np.array([1.0, 1.0, 0.0, 0.0]) / math.sqrt(2)
    est = mc_multiplier(KernelSpec.for_operator(Symplectic(2), -4), p, eta, S, seed + 20)
    b.sigma("T eigenvalue n=2 mu=-4 on Re z1 conj z2", t_eigen(2, 1, 1, -4).value, est)
    for n in (1, 2, 3):
        one = zonal(2 * n, 0)
        est = mc_apply_operator(KernelSpec.for_operator(Symplectic(n), -n - 2), one, np.eye(2 * n)[0], S, seed + 30 + n)
        b.sigma(f"A_0({n},{-n - 2}) = pi^{n}/{n}! vs MC second moment", math.pi**n / math.factorial(n), est)
    for m in (1, 2, 3):
        z1 = zonal(m + 1, 1)
        est = mc_multiplier(KernelSpec.for_operator(Distance(m), -m - 2), z1, np.eye(m + 1)[-1], S, seed + 40 + m)
        b.sigma(f"Funk-Hecke gamma_1 m={m} mu={-m - 2} vs MC", gamma_k_funk_hecke(m, 1, -m - 2).value, est)


def _spread(ratios, sigmas) -> tuple[float, float, bool]:
    w = np.array([1 / s**2 if s > 0 else 1e30 for s in sigmas])
    r = np.array(ratios)
    mean = float((w * r).sum() / w.sum())
    spread = float((r.max() - r.min()) / abs(mean))
    ok = all(
        abs(ri - rj) <= 3 * math.hypot(si, sj) + 1e-10 * abs(mean)
        for (ri, si), (rj, sj) in itertools.combinations(zip(ratios, sigmas), 2)
    )
    return mean, spread, ok


def _suite_audit(b: _Builder, cfg: RunConfig, rng: np.random.Generator) -> None:
    report = b.report
    for m in (1, 2, 3):
        ratios = []
        for _ in range(20):
            k = int(rng.integers(0, 8))
            mu = complex(rng.uniform(-9, -m - 0.5), rng.uniform(-1, 1))
            ratios.append(gamma_k_printed(m, k, mu).value / gamma_k_funk_hecke(m, k, mu).value)
        r = np.array(ratios)
        spread = float(np.max(np.abs(r - r[0])) / abs(r[0]))
        b.audit(f"gamma_k printed/Funk-Hecke m={m}", gamma_k_ratio_constant(m), r[0], f"spread {spread:.3g} over 20 draws (k,mu)")
        report.constants.append(ConstantRow("gamma_k printed/derived", m, float(r[0].real), spread, gamma_k_ratio_constant(m)))
    est = mc_multiplier(KernelSpec.for_operator(Distance(2), -4), zonal(3, 1), [0.0, 0.0, 1.0], cfg.samples, cfg.seed + 50)
    b.sigma("gamma_k_funk_hecke(2,1,-4) = -8pi/3 vs MC", -8 * math.pi / 3, est)

    torus = torus_quadrature_triple(64, (2, 2, 2), "distance")
    printed = closed_distance_printed(ParamSet.build(Distance(1), exponents=(2, 2, 2))).value.real
    b.tol("distance torus quadrature m=1 (2,2,2) = 48pi^3", 48 * math.pi**3, torus, 1e-10)
    b.tol("printed distance form m=1 (2,2,2) = (3/4)pi^{3/2}", 0.75 * math.pi**1.5, printed, 1e-12)
    b.audit("distance: oracle / printed at m=1 (2,2,2)", 64 * math.pi**1.5, torus / printed)
    for N in (3, 4, 5):
        val = closed_inner_printed(N, (0, 0, 0)).value.real
        b.tol(f"printed inner form nu=0 times pi^3 = vol(S^{N - 1})^3", sphere_volume(N) ** 3, val * math.pi**3, 1e-10)
        b.audit(f"inner: oracle / printed at nu=0, N={N}", math.pi**3, sphere_volume(N) ** 3 / val)

    choices = [(0, 0, 0), (2, 0, 0), (2, 2, 0), (2, 2, 2), (4, 2, 2), (4, 4, 2)]
    for m in (1, 2):
        ratios, sig = [], []
        for i, e in enumerate(choices):
            printed = closed_distance_printed(ParamSet.build(Distance(m), exponents=e)).value.real
            if m == 1:
                val, err = torus_quadrature_triple(64, e, "distance"), 0.0
            else:
                est = mc_triple(KernelSpec(Distance(m), e), cfg.samples, cfg.seed + 100 + i)
                val, err = est.mean, est.stderr
            ratios.append(val / printed)
            sig.append(err / abs(printed))
        mean, spread, ok = _spread(ratios, sig)
        pred = gamma_k_ratio_constant(m) ** -3
        b.audit(f"distance oracle/printed constant m={m}", pred, mean, f"spread {spread:.3g} over {len(choices)} exponent choices; consistent within 3 sigma: {ok}")
        report.constants.append(ConstantRow("distance triple", m, mean, spread, pred))
    for N in (3, 4):
        ratios, sig = [], []
        for i, e in enumerate(choices):
            nu = tuple(-x / 2 for x in e)
            printed = closed_inner_printed(N, nu).value.real
            est = mc_triple(KernelSpec(InnerProduct(N), e), cfg.samples, cfg.seed + 200 + i)
            ratios.append(est.mean / printed)
            sig.append(est.stderr / abs(printed))
        mean, spread, ok = _spread(ratios, sig)
        b.audit(f"inner oracle/printed constant N={N}", math.pi**3, mean, f"spread {spread:.3g} over {len(choices)} exponent choices; consistent within 3 sigma: {ok}")
        report.constants.append(ConstantRow("inner-product triple", N, mean, spread, math.pi**3))


_RUNNERS: dict[str, Callable] = {
    "exact": _suite_exact,
    "series": _suite_series,
    "mc": _suite_mc,
    "audit": _suite_audit,
}


def run_verification(suite: str = "all", config: RunConfig | None = None) -> VerificationReport:
    """Run one suite (or ``"all"``) and collect a report."""
    cfg = config or RunConfig()
    names = SUITES if suite == "all" else (suite,)
    for name in names:
        if name not in _RUNNERS:
            raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    report = VerificationReport()
    b = _Builder(report)
    start = time.perf_counter()
    for i, name in enumerate(names):
        _RUNNERS[name](b, cfg, np.random.default_rng([cfg.seed, i]))
    env = {"seed": cfg.seed, "samples": cfg.samples, "suite": suite, "backend": BACKEND}
    if not cfg.deterministic:
        env["wall_ms"] = int(round(1000 * (time.perf_counter() - start)))
        env["versions"] = {"sphtriple": __version__, "python": platform.python_version(), "numpy": np.__version__}
    report.env = env
    return report


__all__ = ["RunConfig", "Entry", "ConstantRow", "VerificationReport", "SUITES", "run_verification"]
