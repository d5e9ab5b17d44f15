"""The compiled kernels and the pure-Python fallback must agree."""

import importlib
import os
import subprocess
import sys

import numpy as np
import pytest

from sphtriple import _pycore

core = pytest.importorskip("sphtriple._core")

KINDS = [_pycore.KIND_SYMPLECTIC, _pycore.KIND_DISTANCE, _pycore.KIND_INNER]


def test_kind_codes_match():
    assert (core.KIND_SYMPLECTIC, core.KIND_DISTANCE, core.KIND_INNER) == tuple(KINDS)


def test_loggamma(rng):
    z = rng.uniform(-20, 20, 300) + 1j * rng.uniform(-20, 20, 300)
    a = np.array([core.loggamma(v) for v in z])
    b = np.array([_pycore.loggamma(v) for v in z])
    assert np.max(np.abs(np.exp(a - b) - 1)) < 1e-13
    assert np.allclose(core.loggamma_array(z), _pycore.loggamma_array(z), rtol=1e-14, atol=1e-13)


def test_hyper_advance():
    args = ((0.5 + 0j, 1.25 + 0j, -0.3 + 0j), (2.5 + 0j, 1.75 + 0j), -1.0 + 0j, 0, 1 + 0j, 1 + 0j, 500, 1e-12, 0, False)
    a, b = core.hyper_advance(*args), _pycore.hyper_advance(*args)
    assert a[0] == b[0] and a[3:] == b[3:]
    assert abs(a[2] - b[2]) < 1e-14 * abs(b[2])


def test_hyper_advance_stops_on_small():
    args = ((1 + 0j,), (2 + 0j,), 0.1 + 0j, 0, 1 + 0j, 1 + 0j, 10_000, 1e-12, 0, True)
    a, b = core.hyper_advance(*args), _pycore.hyper_advance(*args)
    assert a[4] and b[4] and a[0] == b[0]


@pytest.mark.parametrize("kind", KINDS)
def test_kernels(kind, rng):
    d = 4
    X, Y, Z = (rng.normal(size=(500, d)) for _ in range(3))
    for e in (0.0, 2.0, -0.3, 1.7):
        assert np.allclose(core.pair_kernel_values(kind, X, Y, e), _pycore.pair_kernel_values(kind, X, Y, e), rtol=1e-14)
    assert np.allclose(
        core.triple_kernel_values(kind, X, Y, Z, 2.0, 0.5, 4.0),
        _pycore.triple_kernel_values(kind, X, Y, Z, 2.0, 0.5, 4.0),
        rtol=1e-13,
    )


def test_fallback_selected_by_environment():
    code = "import sphtriple; print(sphtriple.BACKEND)"
    env = dict(os.environ, SPHTRIPLE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_fallback_reproduces_desk_value():
    code = (
        "import math; from sphtriple import *;"
        "p = ParamSet.build(Symplectic(1), lam=(-5,-5,-5));"
        "print(repr(closed_symplectic(p).value.real), repr(trace_series(Symplectic(1), (-3.3,-4,-5)).value.real))"
    )
    env = dict(os.environ, SPHTRIPLE_PURE_PYTHON="1")
    pure = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout.split()
    env.pop("SPHTRIPLE_PURE_PYTHON")
    fast = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout.split()
    assert abs(float(pure[0]) - float(fast[0])) < 1e-12 * abs(float(fast[0]))
    assert abs(float(pure[1]) - float(fast[1])) < 1e-12 * abs(float(fast[1]))
