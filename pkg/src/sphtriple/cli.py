"""Command-line interface: ``sphtriple {eval,spectrum,trace,verify,region}``.

Exit codes: 0 success, 1 a non-audit verification failure, 2 usage error,
3 I/O error. Complex inputs are written ``re`` or ``re+imi``; triples are
comma separated.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import math
import sys

import click

from .harmonics import alternating_sum_D, dim_hk
from .specfun import DomainError, MeroValue
from .spectra import (
    A_k,
    Distance,
    InnerProduct,
    OperatorKind,
    ParameterError,
    ParamSet,
    Symplectic,
    gamma_k_funk_hecke,
    gamma_k_printed,
    q_eigen,
)
from .triple import (
    closed_distance_consistent,
    closed_distance_printed,
    closed_inner_consistent,
    closed_inner_printed,
    closed_symplectic,
    region_check,
    trace_report,
)
from .verify import SUITES, RunConfig, run_verification

EXIT_FAIL, EXIT_USAGE, EXIT_IO = 1, 2, 3
KINDS = ("symplectic", "distance", "inner")
K_MAX_LIMIT = 10_000


def parse_complex(text: str) -> complex:
    """``"1.5"``, ``"-2+0.5i"``, ``"3i"`` to a complex number; rejects non-finite values."""
    s = text.strip().replace(" ", "")
    if s.endswith("i"):
        s = s[:-1] + "j"
    try:
        z = complex(s)
    except ValueError:
        raise ValueError(f"cannot parse {text!r} as a number (use re or re+imi)") from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{text!r} is not finite")
    return z


def parse_triple(text: str) -> tuple[complex, complex, complex]:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"expected three comma-separated values, got {text!r}")
    return tuple(parse_complex(p) for p in parts)


class ComplexParam(click.ParamType):
    name = "complex"

    def convert(self, value, param, ctx):
        if isinstance(value, complex):
            return value
        try:
            return parse_complex(value)
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


class TripleParam(click.ParamType):
    name = "triple"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        try:
            return parse_triple(value)
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


COMPLEX, TRIPLE = ComplexParam(), TripleParam()


def format_number(z) -> str:
    z = complex(z)
    if abs(z.imag) <= 1e-14 * max(abs(z), 1e-300):
        return f"{z.real:.15g}"
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real:.15g}{sign}{abs(z.imag):.15g}i"


def _json_number(z):
    z = complex(z)
    return z.real if abs(z.imag) <= 1e-14 * max(abs(z), 1e-300) else [z.real, z.imag]


def _mero_fields(v: MeroValue) -> dict:
    return {"status": v.tag.value, "value": _json_number(v.value) if v.is_finite else None}


def _mero_text(v: MeroValue) -> str:
    return format_number(v.value) if v.is_finite else v.tag.value


# ---------------------------------------------------------------------------
# Shared options and output


def run_options(f):
    """Options common to every subcommand; bundled into a :class:`RunConfig`."""

    @click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=42, show_default=True)
    @click.option("--samples", type=click.IntRange(min=1000), default=1_000_000, show_default=True)
    @click.option("--rel-tol", type=click.FloatRange(0, 1e-2, min_open=True), default=1e-12, show_default=True)
    @click.option("--max-terms", type=click.IntRange(min=1), default=100_000, show_default=True)
    @click.option("--format", "output_format", type=click.Choice(["json", "csv", "text"]), default="text", show_default=True)
    @click.option("--out", "output_path", type=click.Path(dir_okay=False), default=None, help="Write output here instead of stdout.")
    @click.option("--deterministic", is_flag=True, help="Omit wall time and versions from reports.")
    @functools.wraps(f)
    def wrapper(seed, samples, rel_tol, max_terms, output_format, output_path, deterministic, **kw):
        cfg = RunConfig(seed, samples, rel_tol, max_terms, output_format, output_path, deterministic)
        return f(cfg, **kw)

    return wrapper


def dim_options(f):
    f = click.option("--N", "big_n", type=click.IntRange(min=1), help="Ambient dimension for the inner-product kind.")(f)
    f = click.option("--m", "m", type=click.IntRange(min=1), help="Sphere dimension for the distance kind.")(f)
    f = click.option("--n", "n", type=click.IntRange(min=1), help="Complex dimension for the symplectic kind.")(f)
    return f


def param_options(f):
    f = click.option("--exponents", type=TRIPLE, help="Kernel exponents e1,e2,e3.")(f)
    f = click.option("--delta", type=COMPLEX, help="delta (symplectic, optional).")(f)
    f = click.option("--gamma", "gamma_", type=COMPLEX, help="gamma (symplectic).")(f)
    f = click.option("--beta", type=COMPLEX, help="beta (symplectic).")(f)
    f = click.option("--alpha", type=COMPLEX, help="alpha (symplectic).")(f)
    f = click.option("--nu", type=TRIPLE, help="nu1,nu2,nu3 (inner product).")(f)
    f = click.option("--mu", type=TRIPLE, help="mu1,mu2,mu3.")(f)
    f = click.option("--lambda", "lam", type=TRIPLE, help="lambda1,lambda2,lambda3.")(f)
    return f


def resolve_kind(kind: str, n, m, big_n) -> OperatorKind:
    needed = {"symplectic": ("--n", n), "distance": ("--m", m), "inner": ("--N", big_n)}[kind]
    flag, value = needed
    if value is None:
        raise click.UsageError(f"{kind} needs {flag}")
    return {"symplectic": Symplectic, "distance": Distance, "inner": InnerProduct}[kind](value)


def build_params(k: OperatorKind, lam, mu, nu, alpha, beta, gamma_, delta, exponents) -> ParamSet:
    abg = None
    if any(v is not None for v in (alpha, beta, gamma_)):
        if k.tag != "symplectic":
            raise click.UsageError("--alpha/--beta/--gamma apply to the symplectic kind only")
        if None in (alpha, beta, gamma_):
            raise click.UsageError("give all of --alpha, --beta, --gamma")
        abg = (alpha, beta, gamma_)
    elif delta is not None:
        raise click.UsageError("--delta needs --alpha, --beta, --gamma")
    if nu is not None and k.tag != "inner":
        raise click.UsageError("--nu applies to the inner kind only")
    given = [x for x in (lam, mu, nu, abg, exponents) if x is not None]
    if not given:
        raise click.UsageError("give one of --lambda, --mu, --nu, --alpha/--beta/--gamma, --exponents")
    try:
        return ParamSet.build(k, lam=lam, mu=mu, abg=abg, delta=delta, exponents=exponents, nu=nu)
    except (ParameterError, DomainError) as exc:
        raise click.UsageError(str(exc)) from None


def emit(cfg: RunConfig, text: str) -> None:
    """Write ``text`` to ``cfg.output_path`` or stdout; I/O failures exit with code 3."""
    if cfg.output_path is None:
        click.echo(text)
        return
    try:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    except OSError as exc:
        click.echo(f"error: cannot write {cfg.output_path}: {exc}", err=True)
        sys.exit(EXIT_IO)


def render_record(cfg: RunConfig, record: dict, text: str) -> str:
    if cfg.output_format == "json":
        return json.dumps(record, indent=2, sort_keys=True)
    if cfg.output_format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        flat = {k: v for k, v in record.items() if not isinstance(v, (dict, list)) or k == "value"}
        w.writerow(flat.keys())
        w.writerow(flat.values())
        return buf.getvalue()
    return text


def render_table(cfg: RunConfig, header: list[str], rows: list[list], meta: dict) -> str:
    if cfg.output_format == "json":
        return json.dumps({**meta, "rows": [dict(zip(header, r)) for r in rows]}, indent=2, sort_keys=True)
    if cfg.output_format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    cells = [[c if isinstance(c, str) else format_number(c) if isinstance(c, (float, complex)) else str(c) for c in r] for r in rows]
    widths = [max(len(h), *(len(r[i]) for r in cells)) if cells else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Commands


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="artifact")
def main():
    """Triple integrals over spheres: closed forms, spectra and verification."""


@main.command("eval")
@click.argument("kind", type=click.Choice(KINDS))
@dim_options
@param_options
@run_options
def cmd_eval(cfg, kind, n, m, big_n, lam, mu, nu, alpha, beta, gamma_, delta, exponents):
    """Evaluate the closed form for KIND and report its convergence region."""
    k = resolve_kind(kind, n, m, big_n)
    p = build_params(k, lam, mu, nu, alpha, beta, gamma_, delta, exponents)
    verdict = region_check(p)
    record = {"kind": kind, "dim": k.dim, "mu": [_json_number(x) for x in p.mu], "region": "convergent" if verdict.ok else "divergent"}
    lines = [f"{kind} (dim {k.dim}), mu = ({', '.join(format_number(x) for x in p.mu)})"]
    if kind == "symplectic":
        v = closed_symplectic(p)
        record.update(_mero_fields(v))
        lines.append(f"value: {_mero_text(v)}")
        lines.append(f"status: {v.tag.value}")
    elif kind == "distance":
        printed, consistent = closed_distance_printed(p), closed_distance_consistent(p)
        record.update(_mero_fields(printed))
        record["consistent"] = _mero_fields(consistent)
        lines.append(f"value (printed normalisation): {_mero_text(printed)}")
        lines.append(f"status: {printed.tag.value}")
        lines.append(f"value (Euclidean measure, spectral sum): {_mero_text(consistent)}")
        lines.append("note: the printed constant is audited, see `verify --suite audit`")
    else:
        try:
            printed = closed_inner_printed(k.dim, p.nu, cfg.rel_tol, cfg.max_terms)
            consistent = closed_inner_consistent(k.dim, p.mu, cfg.rel_tol, cfg.max_terms)
        except DomainError as exc:
            raise click.UsageError(str(exc)) from None
        record.update({"status": "finite", "value": _json_number(printed.value), "consistent": _json_number(consistent.value)})
        lines.append(f"value (printed normalisation): {format_number(printed.value)}")
        lines.append(f"status: {'finite' if printed.value != 0 else 'zero'} ({printed.method}, {printed.terms_used} terms)")
        lines.append(f"value (Euclidean measure, spectral sum): {format_number(consistent.value)}")
        lines.append("note: the printed constant is audited, see `verify --suite audit`")
    lines.append(verdict.describe())
    emit(cfg, render_record(cfg, record, "\n".join(lines)))


@main.command("spectrum")
@click.argument("kind", type=click.Choice(KINDS))
@dim_options
@click.option("--mu", "mu", type=COMPLEX, required=True, help="Operator parameter.")
@click.option("--k-max", type=click.IntRange(0, K_MAX_LIMIT), default=8, show_default=True)
@run_options
def cmd_spectrum(cfg, kind, n, m, big_n, mu, k_max):
    """Tabulate operator multipliers and multiplicities for degrees 0..K_MAX."""
    k = resolve_kind(kind, n, m, big_n)

    def cell(v: MeroValue):
        return v.value if v.is_finite else v.tag.value

    rows = []
    if kind == "symplectic":
        header = ["k", "A_k", "dim H^k(R^2n)", "sum (-1)^b dim H^{a,b}"]
        for j in range(k_max + 1):
            rows.append([j, cell(A_k(k.dim, j, mu)), dim_hk(2 * k.dim, j), alternating_sum_D(k.dim, j)])
    elif kind == "distance":
        header = ["k", "gamma_k printed", "gamma_k Funk-Hecke", "dim H^k(R^(m+1))"]
        for j in range(k_max + 1):
            rows.append([j, cell(gamma_k_printed(k.dim, j, mu)), cell(gamma_k_funk_hecke(k.dim, j, mu)), dim_hk(k.dim + 1, j)])
    else:
        header = ["k", "c_N", "dim H^k(R^N)"]
        for j in range(k_max + 1):
            rows.append([j, cell(q_eigen(k.dim, j, mu)), dim_hk(k.dim, j)])
    if cfg.output_format == "json":
        rows = [[_json_number(c) if isinstance(c, (float, complex)) else c for c in r] for r in rows]
    elif cfg.output_format == "csv":
        rows = [[format_number(c) if isinstance(c, (float, complex)) else c for c in r] for r in rows]
    emit(cfg, render_table(cfg, header, rows, {"kind": kind, "dim": k.dim, "mu": _json_number(mu)}))


@main.command("trace")
@click.argument("kind", type=click.Choice(KINDS))
@dim_options
@click.option("--mu", "mu", type=TRIPLE, required=True, help="mu1,mu2,mu3.")
@run_options
def cmd_trace(cfg, kind, n, m, big_n, mu):
    """Sum the spectral series for the trace and compare with the closed forms."""
    k = resolve_kind(kind, n, m, big_n)
    try:
        rep = trace_report(k, mu, cfg.rel_tol, cfg.max_terms)
    except DomainError as exc:
        raise click.UsageError(str(exc)) from None
    s = rep.series
    record = {
        "kind": kind,
        "dim": k.dim,
        "mu": [_json_number(x) for x in mu],
        "series": _json_number(s.value),
        "terms": s.terms_used,
        "converged": s.converged,
        "error_estimate": s.error_estimate,
        "closed": _mero_fields(rep.closed_consistent),
        "closed_printed": _mero_fields(rep.closed_printed),
        "consistent_over_printed": _json_number(rep.ratio) if rep.ratio is not None else None,
        "rel_diff": rep.rel_diff,
    }
    lines = [
        f"{kind} (dim {k.dim}), mu = ({', '.join(format_number(x) for x in mu)})",
        f"spectral sum: {format_number(s.value)}  ({s.method}, {s.terms_used} terms, error estimate {s.error_estimate:.3g})",
        f"closed form: {_mero_text(rep.closed_consistent)}",
    ]
    if kind != "symplectic":
        lines.append(f"printed closed form: {_mero_text(rep.closed_printed)}")
        if rep.ratio is not None:
            lines.append(f"closed / printed: {format_number(rep.ratio)}")
    if rep.rel_diff is not None:
        lines.append(f"spectral sum vs closed form, relative difference: {rep.rel_diff:.3g}")
    emit(cfg, render_record(cfg, record, "\n".join(lines)))


@main.command("region")
@click.argument("kind", type=click.Choice(KINDS))
@dim_options
@param_options
@run_options
def cmd_region(cfg, kind, n, m, big_n, lam, mu, nu, alpha, beta, gamma_, delta, exponents):
    """Check whether the triple integral converges absolutely at the given parameters."""
    k = resolve_kind(kind, n, m, big_n)
    verdict = region_check(build_params(k, lam, mu, nu, alpha, beta, gamma_, delta, exponents))
    record = {
        "kind": kind,
        "dim": k.dim,
        "convergent": verdict.ok,
        "checks": [{"name": c.name, "value": complex(c.lhs).real, "bound": c.bound, "holds": c.holds} for c in verdict.checks + verdict.alt_checks],
    }
    emit(cfg, render_record(cfg, record, verdict.describe()))


@main.command("verify")
@click.option("--suite", type=click.Choice(SUITES + ("all",)), default="all", show_default=True)
@run_options
def cmd_verify(cfg, suite):
    """Run verification suites; exit 1 if any non-audit entry fails."""
    report = run_verification(suite, cfg)
    emit(cfg, report.render(cfg.output_format))
    if not report.passed:
        sys.exit(EXIT_FAIL)


if __name__ == "__main__":  # pragma: no cover
    main()
