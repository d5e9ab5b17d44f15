"""Closed forms, spectral sums and independent oracles for triple integrals over spheres."""

__version__ = "0.1.0"

from ._backend import BACKEND
from .harmonics import bidegree, dim_hab, dim_hk, make_test_polynomial, zonal
from .hyper import HyperParams, SeriesResult, pfq
from .oracle import KernelSpec, MCEstimate, mc_apply_operator, mc_multiplier, mc_triple, torus_quadrature_triple
from .specfun import DomainError, GammaRatio, MeroValue, PoleError, eval_gamma_ratio
from .spectra import Distance, InnerProduct, OperatorKind, ParamSet, Symplectic, param_convert
from .triple import (
    closed_distance_consistent,
    closed_distance_printed,
    closed_inner_consistent,
    closed_inner_printed,
    closed_symplectic,
    region_check,
    trace_report,
    trace_series,
)

__all__ = [
    "__version__",
    "BACKEND",
    "dim_hk",
    "dim_hab",
    "zonal",
    "bidegree",
    "make_test_polynomial",
    "HyperParams",
    "SeriesResult",
    "pfq",
    "KernelSpec",
    "MCEstimate",
    "mc_triple",
    "mc_apply_operator",
    "mc_multiplier",
    "torus_quadrature_triple",
    "DomainError",
    "PoleError",
    "GammaRatio",
    "MeroValue",
    "eval_gamma_ratio",
    "OperatorKind",
    "Symplectic",
    "Distance",
    "InnerProduct",
    "ParamSet",
    "param_convert",
    "closed_symplectic",
    "closed_distance_printed",
    "closed_distance_consistent",
    "closed_inner_printed",
    "closed_inner_consistent",
    "trace_series",
    "trace_report",
    "region_check",
]
