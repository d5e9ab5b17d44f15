"""Pure-Python kernels; reference implementation for the compiled ``_core``.

Every function here has a twin of the same name and signature in
``_core.pyx``. Keep the two in lockstep.
"""

import cmath
import math

import numpy as np

# Lanczos approximation, g = 607/128, 15 terms.
LANCZOS_G_HALF = 5.2421875
LANCZOS_COEF = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
LOG_SQRT_2PI = 0.91893853320467274178
LOG_PI = 1.14472988584940017414
TWO_PI = 6.28318530717958647693

KIND_SYMPLECTIC = 0
KIND_DISTANCE = 1
KIND_INNER = 2


def _sinpi(z):
    # sin(pi z) with the real part reduced first so zeros stay exact
    x, y = z.real, z.imag
    k = round(x)
    r = x - k
    s = math.sin(math.pi * r)
    c = math.cos(math.pi * r)
    if k % 2:
        s, c = -s, -c
    return complex(s * math.cosh(math.pi * y), c * math.sinh(math.pi * y))


def _loggamma_right(z):
    ser = LANCZOS_COEF[0]
    for k in range(1, 15):
        ser += LANCZOS_COEF[k] / (z + k)
    t = z + LANCZOS_G_HALF
    return (z + 0.5) * cmath.log(t) - t + LOG_SQRT_2PI + cmath.log(ser) - cmath.log(z)


def loggamma(z):
    """log Gamma(z) modulo 2 pi i for z off the poles; exp() of it is exact."""
    z = complex(z)
    if z.real >= 0.5:
        return _loggamma_right(z)
    shift = math.copysign(TWO_PI, z.imag) * math.floor(0.5 * z.real + 0.25)
    return complex(LOG_PI, shift) - cmath.log(_sinpi(z)) - _loggamma_right(1.0 - z)


def loggamma_array(z):
    z = np.asarray(z, dtype=np.complex128)
    out = np.empty_like(z)
    flat_in = z.ravel()
    flat_out = out.ravel()
    for i in range(flat_in.size):
        flat_out[i] = loggamma(flat_in[i])
    return out


def hyper_advance(upper, lower, z, l, term, partial, n_steps, rel_tol, small_run, stop_on_small):
    """Advance the running-ratio series by up to ``n_steps`` terms.

    State is ``(l, term_l, partial)`` where ``partial`` already includes
    ``term_l``. Returns the new state plus the small-term run length and
    whether the three-small-terms rule stopped the loop.
    """
    z = complex(z)
    term = complex(term)
    partial = complex(partial)
    stopped = False
    for _ in range(n_steps):
        num = 1.0 + 0j
        for a in upper:
            num *= a + l
        den = 1.0 + 0j
        for b in lower:
            den *= b + l
        term = term * num / den * z / (l + 1)
        l += 1
        partial += term
        if rel_tol > 0.0 and abs(term) <= rel_tol * abs(partial):
            small_run += 1
            if stop_on_small and small_run >= 3:
                stopped = True
                break
        else:
            small_run = 0
    return l, term, partial, small_run, stopped


def _pair_values(kind, A, B, e):
    if kind == KIND_SYMPLECTIC:
        h = A.shape[1] // 2
        v = -np.einsum("ij,ij->i", A[:, :h], B[:, h:]) + np.einsum("ij,ij->i", B[:, :h], A[:, h:])
    elif kind == KIND_DISTANCE:
        v = np.sqrt(np.einsum("ij,ij->i", A - B, A - B))
    elif kind == KIND_INNER:
        v = np.einsum("ij,ij->i", A, B)
    else:
        raise ValueError(f"unknown kernel kind {kind}")
    return np.abs(v) ** e


def pair_kernel_values(kind, A, B, e):
    """Per-sample |f(A,B)|^e for point batches."""
    A = np.ascontiguousarray(A, dtype=np.float64)
    B = np.ascontiguousarray(B, dtype=np.float64)
    return _pair_values(kind, A, B, e)


def triple_kernel_values(kind, X, Y, Z, e1, e2, e3):
    """Per-sample |f(Y,Z)|^e1 |f(Z,X)|^e2 |f(X,Y)|^e3 for point batches."""
    X = np.ascontiguousarray(X, dtype=np.float64)
    Y = np.ascontiguousarray(Y, dtype=np.float64)
    Z = np.ascontiguousarray(Z, dtype=np.float64)
    return _pair_values(kind, Y, Z, e1) * _pair_values(kind, Z, X, e2) * _pair_values(kind, X, Y, e3)
