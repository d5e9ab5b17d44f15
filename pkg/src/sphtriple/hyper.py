"""Generalized hypergeometric series and the two closed summation identities.

Series at unit argument converge algebraically: the terms decay like
``l^(-s-1)`` where ``s = sum(lower) - sum(upper)`` is the convergence excess.
Summing term by term until terms are tiny would stop far from the limit, so
at ``z = 1`` and ``z = -1`` the partial sums are taken at geometrically spaced
cut-offs and extrapolated with Richardson's scheme using the known exponent
of the tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ._backend import kernels
from .specfun import DomainError, MeroValue, PoleError, gamma_ratio, is_gamma_pole

DEFAULT_REL_TOL = 1e-12
DEFAULT_MAX_TERMS = 100_000
UNIT_EXCESS_MARGIN = 0.05
_UNIT_TOL = 1e-14
TERMINATE_TOL = 1e-13  # a parameter this close to -k truncates the series


@dataclass(frozen=True)
class HyperParams:
    """Upper parameters, lower parameters and argument of a pFq series."""

    upper: tuple[complex, ...]
    lower: tuple[complex, ...]
    argument: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(complex(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(complex(b) for b in self.lower))
        object.__setattr__(self, "argument", complex(self.argument))

    @property
    def excess(self) -> complex:
        """``sum(lower) - sum(upper)``; governs convergence on the unit circle."""
        return sum(self.lower, 0j) - sum(self.upper, 0j)


@dataclass
class SeriesResult:
    """Outcome of summing an infinite (or terminating) series.

    ``method`` is ``"terminating"``, ``"direct"`` or ``"richardson"``. For the
    extrapolated method ``last_term_mag`` holds the extrapolation error
    estimate rather than the size of the last summand, so that
    ``converged`` always means ``last_term_mag <= rel_tol * |value|``.
    """

    value: complex
    terms_used: int
    last_term_mag: float
    converged: bool
    method: str = "direct"
    error_estimate: float = 0.0
    variants: dict = field(default_factory=dict)

    def __post_init__(self):
        self.value = complex(self.value)


def _nonpositive_int_index(params: Sequence[complex]) -> int | None:
    # Smallest k such that some parameter equals -k.
    hits = [int(round(-p.real)) for p in params if is_gamma_pole(p, TERMINATE_TOL)]
    return min(hits) if hits else None


def richardson_sum(
    partial_at: Callable[[int], complex],
    tail_exponent: complex,
    rel_tol: float,
    max_terms: int,
    first_cutoff: int = 32,
) -> SeriesResult:
    """Extrapolate partial sums whose error behaves like ``sum_j d_j L^(-p-j)``.

    ``partial_at(L)`` must return the sum of terms ``0..L`` and is called with
    increasing ``L = first_cutoff * 2**i``. Stops when the change between
    successive extrapolants drops below ``rel_tol`` relative, when roundoff
    makes the estimate grow again, or when the next cut-off exceeds
    ``max_terms``.
    """
    p = complex(tail_exponent)
    cutoffs: list[int] = []
    table: list[list[complex]] = []
    best_val, best_err = None, math.inf
    last_err = math.inf
    rising = 0
    L = first_cutoff
    while L + 1 <= max_terms:
        s = complex(partial_at(L))
        cutoffs.append(L)
        table.append([s])
        _extend_table(table, p)
        K = len(table) - 1
        if K >= 2:
            est = table[0][K]
            err = abs(table[0][K] - table[0][K - 1])
            if err < best_err:
                best_val, best_err = est, err
            if err <= rel_tol * abs(est) or err == 0.0:
                return SeriesResult(est, L + 1, err, True, "richardson", err)
            rising = rising + 1 if err > last_err else 0
            last_err = err
            if rising >= 2:
                break
        L *= 2
    if best_val is None:
        if not table:
            raise DomainError("max_terms too small for extrapolation")
        best_val = table[0][-1]
        best_err = abs(table[-1][0] - table[-2][0]) if len(table) > 1 else math.inf
    used = cutoffs[-1] + 1 if cutoffs else 0
    ok = best_err <= rel_tol * abs(best_val)
    return SeriesResult(best_val, used, best_err, ok, "richardson", best_err)


def _extend_table(table: list[list[complex]], p: complex) -> None:
    # table[i][j]: j-th extrapolant from levels i..i+j. Adding the newest level
    # K fills the anti-diagonal table[K-j][j].
    K = len(table) - 1
    for j in range(K):
        i = K - j - 1
        r = 2.0 ** (p + j)
        table[i].append((r * table[i + 1][j] - table[i][j]) / (r - 1.0))


def _direct(params: HyperParams, n_steps: int, rel_tol: float, stop: bool):
    state = kernels.hyper_advance(
        params.upper, params.lower, params.argument, 0, 1.0, 1.0, n_steps, rel_tol, 0, stop
    )
    l, term, partial, _, stopped = state
    return l, complex(term), complex(partial), stopped


def _first_cutoff(params: HyperParams) -> int:
    scale = max([abs(a) for a in params.upper + params.lower] + [1.0])
    L = 32
    while L < 4 * scale:
        L *= 2
    return L


def pfq(params: HyperParams, rel_tol: float = DEFAULT_REL_TOL, max_terms: int = DEFAULT_MAX_TERMS) -> SeriesResult:
    """Sum ``sum_l prod (a_i)_l / prod (b_j)_l * z^l / l!``.

    Terminating series (an upper parameter equal to ``-k``) are summed exactly
    over ``l = 0..k``. On the unit circle only ``z = 1`` and ``z = -1`` are
    supported, with ``p = q + 1`` and a convergence excess ``s`` satisfying
    ``Re s > 0.05`` at ``z = 1`` and ``Re s > -0.95`` at ``z = -1``.
    """
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    if max_terms < 1:
        raise ValueError("max_terms must be positive")
    z = params.argument
    k = _nonpositive_int_index(params.upper)
    j = _nonpositive_int_index(params.lower)
    if j is not None and (k is None or j < k):
        raise DomainError(f"lower parameter -{j} reached before the series terminates")

    if k is not None or z == 0:
        n = 0 if z == 0 else k
        steps = min(n, max_terms - 1)
        l, term, partial, _ = _direct(params, steps, 0.0, False)
        done = steps == n
        return SeriesResult(partial, steps + 1, abs(term), done, "terminating", 0.0 if done else abs(term))

    p, q = len(params.upper), len(params.lower)
    if p > q + 1:
        raise DomainError(f"{p}F{q} diverges for nonzero argument")

    on_circle = abs(abs(z) - 1.0) <= _UNIT_TOL
    if p == q + 1 and abs(z) > 1.0 + _UNIT_TOL:
        raise DomainError("argument outside the unit disc")
    if p <= q or not on_circle:
        l, term, partial, stopped = _direct(params, max_terms - 1, rel_tol, True)
        return SeriesResult(partial, l + 1, abs(term), stopped, "direct", abs(term))

    s = params.excess
    if abs(z - 1.0) <= _UNIT_TOL:
        if s.real <= UNIT_EXCESS_MARGIN:
            raise DomainError(f"series at z=1 needs Re(excess) > {UNIT_EXCESS_MARGIN}, got {s.real:.6g}")
        tail = s
    elif abs(z + 1.0) <= _UNIT_TOL:
        if s.real + 1.0 <= UNIT_EXCESS_MARGIN:
            raise DomainError(f"series at z=-1 needs Re(excess) > {UNIT_EXCESS_MARGIN - 1}, got {s.real:.6g}")
        tail = s + 1.0
    else:
        raise DomainError("on the unit circle only z = 1 and z = -1 are supported")

    state = {"l": 0, "term": 1.0 + 0j, "partial": 1.0 + 0j}

    def partial_at(L: int) -> complex:
        st = kernels.hyper_advance(
            params.upper, params.lower, z, state["l"], state["term"], state["partial"],
            L - state["l"], 0.0, 0, False,
        )
        state["l"], state["term"], state["partial"] = st[0], complex(st[1]), complex(st[2])
        return state["partial"]

    return richardson_sum(partial_at, tail, rel_tol, max_terms, _first_cutoff(params))


def is_well_poised(params: HyperParams, tol: float = 1e-10) -> bool:
    """True iff ``1 + a_1 = a_2 + b_1 = ... = a_p + b_q`` to ``tol``."""
    up, lo = params.upper, params.lower
    if len(up) != len(lo) + 1:
        raise ValueError("well-poisedness needs p = q + 1")
    target = 1.0 + up[0]
    return all(abs(a + b - target) <= tol for a, b in zip(up[1:], lo))


def dougall_params(m, x, y, z) -> HyperParams:
    """The very-well-poised 5F4 at 1 summed by :func:`dougall_rhs`.

    At ``m = 1`` the pair ``(m-1)_l / ((m-1)/2)_l`` is ``0/0`` with limit 2
    for ``l >= 1``; the series built here truncates instead, so the identity
    holds only in the limit ``m -> 1``.
    """
    m, x, y, z = (complex(v) for v in (m, x, y, z))
    return HyperParams(
        upper=(m - 1, (m + 1) / 2, -x, -y, -z),
        lower=((m - 1) / 2, m + x, m + y, m + z),
        argument=1.0,
    )


def dougall_rhs(m, x, y, z) -> MeroValue:
    """Closed value of the Dougall 5F4 sum as a gamma ratio."""
    m, x, y, z = (complex(v) for v in (m, x, y, z))
    return gamma_ratio(
        numerator=(x + m, y + m, z + m, x + y + z + m),
        denominator=(m, x + y + m, y + z + m, x + z + m),
    )


def whipple_lhs_params(a, b, c, d, e) -> HyperParams:
    """The well-poised 6F5 at argument -1 transformed by :func:`whipple_rhs`."""
    a, b, c, d, e = (complex(v) for v in (a, b, c, d, e))
    return HyperParams(
        upper=(a, 1 + a / 2, b, c, d, e),
        lower=(a / 2, 1 + a - b, 1 + a - c, 1 + a - d, 1 + a - e),
        argument=-1.0,
    )


def whipple_3f2_params(a, b, c, d, e) -> HyperParams:
    a, b, c, d, e = (complex(v) for v in (a, b, c, d, e))
    return HyperParams(
        upper=(1 + a - b - c, d, e),
        lower=(1 + a - b, 1 + a - c),
        argument=1.0,
    )


def whipple_rhs(a, b, c, d, e, rel_tol: float = DEFAULT_REL_TOL, max_terms: int = DEFAULT_MAX_TERMS) -> SeriesResult:
    """Gamma prefactor times the balanced-side 3F2 of Whipple's transformation.

    A structural zero in the prefactor gives an exact zero; a pole raises
    :class:`PoleError`.
    """
    a, b, c, d, e = (complex(v) for v in (a, b, c, d, e))
    pref = gamma_ratio(numerator=(1 + a - d, 1 + a - e), denominator=(1 + a, 1 + a - d - e))
    if pref.is_pole:
        raise PoleError("Whipple prefactor has a pole")
    if pref.is_zero:
        return SeriesResult(0j, 0, 0.0, True, "terminating")
    series = pfq(whipple_3f2_params(a, b, c, d, e), rel_tol, max_terms)
    scale = pref.value
    return SeriesResult(
        series.value * scale,
        series.terms_used,
        series.last_term_mag * abs(scale),
        series.converged,
        series.method,
        series.error_estimate * abs(scale),
    )


__all__ = [
    "HyperParams",
    "SeriesResult",
    "pfq",
    "richardson_sum",
    "is_well_poised",
    "dougall_params",
    "dougall_rhs",
    "whipple_lhs_params",
    "whipple_3f2_params",
    "whipple_rhs",
]
