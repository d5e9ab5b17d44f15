# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Mirrors ``_pycore`` function for function."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sin, cos, sinh, cosh, floor, copysign, fabs, sqrt, pow, round as cround

cnp.import_array()

cdef extern from "<complex.h>" nogil:
    double complex clog(double complex)

cdef double LANCZOS_G_HALF = 5.2421875
cdef double[15] LANCZOS_COEF
LANCZOS_COEF[:] = [
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
]
cdef double LOG_SQRT_2PI = 0.91893853320467274178
cdef double LOG_PI = 1.14472988584940017414
cdef double TWO_PI = 6.28318530717958647693
cdef double PI = 3.14159265358979323846

KIND_SYMPLECTIC = 0
KIND_DISTANCE = 1
KIND_INNER = 2


cdef inline double complex _sinpi(double complex z) nogil:
    cdef double x = z.real
    cdef double y = z.imag
    cdef double k = cround(x)
    cdef double r = x - k
    cdef double s = sin(PI * r)
    cdef double c = cos(PI * r)
    if <long long>k % 2 != 0:
        s = -s
        c = -c
    return s * cosh(PI * y) + 1j * (c * sinh(PI * y))


cdef inline double complex _loggamma_right(double complex z) nogil:
    cdef double complex ser = LANCZOS_COEF[0]
    cdef int k
    for k in range(1, 15):
        ser = ser + LANCZOS_COEF[k] / (z + k)
    cdef double complex t = z + LANCZOS_G_HALF
    return (z + 0.5) * clog(t) - t + LOG_SQRT_2PI + clog(ser) - clog(z)


cdef inline double complex _loggamma(double complex z) nogil:
    cdef double shift
    if z.real >= 0.5:
        return _loggamma_right(z)
    shift = copysign(TWO_PI, z.imag) * floor(0.5 * z.real + 0.25)
    return LOG_PI + 1j * shift - clog(_sinpi(z)) - _loggamma_right(1.0 - z)


def loggamma(z):
    """log Gamma(z) modulo 2 pi i for z off the poles; exp() of it is exact."""
    return _loggamma(<double complex>complex(z))


def loggamma_array(z):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] flat = np.ascontiguousarray(z, dtype=np.complex128).ravel()
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty_like(flat)
    cdef Py_ssize_t i, n = flat.shape[0]
    with nogil:
        for i in range(n):
            out[i] = _loggamma(flat[i])
    return out.reshape(np.shape(z))


cdef inline double _cabs(double complex w) nogil:
    cdef double a = fabs(w.real)
    cdef double b = fabs(w.imag)
    cdef double r
    if a < b:
        a, b = b, a
    if a == 0.0:
        return 0.0
    r = b / a
    return a * sqrt(1.0 + r * r)


def hyper_advance(upper, lower, z, long long l, term, partial, long long n_steps,
                  double rel_tol, int small_run, bint stop_on_small):
    """Advance the running-ratio series by up to ``n_steps`` terms.

    Same state convention as ``_pycore.hyper_advance``.
    """
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] ua = np.asarray(upper, dtype=np.complex128).ravel()
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] la = np.asarray(lower, dtype=np.complex128).ravel()
    cdef double complex zz = complex(z)
    cdef double complex t = complex(term)
    cdef double complex s = complex(partial)
    cdef double complex num, den
    cdef Py_ssize_t p = ua.shape[0], q = la.shape[0], i
    cdef long long step
    cdef bint stopped = False
    cdef double complex* up = <double complex*> ua.data
    cdef double complex* lp = <double complex*> la.data
    with nogil:
        for step in range(n_steps):
            num = 1.0
            for i in range(p):
                num = num * (up[i] + l)
            den = 1.0
            for i in range(q):
                den = den * (lp[i] + l)
            t = t * num / den * zz / (l + 1)
            l += 1
            s = s + t
            if rel_tol > 0.0 and _cabs(t) <= rel_tol * _cabs(s):
                small_run += 1
                if stop_on_small and small_run >= 3:
                    stopped = True
                    break
            else:
                small_run = 0
    return l, complex(t), complex(s), small_run, bool(stopped)


cdef inline double _powr(double x, double p) nogil:
    # x**p with an exact-multiplication path for small nonnegative integer p
    cdef long k
    cdef double acc
    if p == 0.0:
        return 1.0
    if p > 0.0 and p <= 64.0 and p == floor(p):
        k = <long> p
        acc = 1.0
        while k:
            if k & 1:
                acc *= x
            x *= x
            k >>= 1
        return acc
    return pow(x, p)


cdef inline double _pair_pow(int kind, double* A, double* B, Py_ssize_t d, double e) nogil:
    # |f(A,B)|^e; the distance kernel works from the squared distance
    cdef Py_ssize_t j, h
    cdef double acc = 0.0, diff
    if kind == 0:
        h = d // 2
        for j in range(h):
            acc += -A[j] * B[h + j] + B[j] * A[h + j]
        return _powr(fabs(acc), e)
    elif kind == 1:
        for j in range(d):
            diff = A[j] - B[j]
            acc += diff * diff
        return _powr(acc, 0.5 * e)
    else:
        for j in range(d):
            acc += A[j] * B[j]
        return _powr(fabs(acc), e)


def pair_kernel_values(int kind, A, B, double e):
    """Per-sample |f(A,B)|^e for point batches."""
    if kind not in (0, 1, 2):
        raise ValueError(f"unknown kernel kind {kind}")
    cdef cnp.ndarray[cnp.float64_t, ndim=2] aa = np.ascontiguousarray(A, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] ba = np.ascontiguousarray(B, dtype=np.float64)
    cdef Py_ssize_t n = aa.shape[0], d = aa.shape[1], i
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef double* ap = <double*> aa.data
    cdef double* bp = <double*> ba.data
    with nogil:
        for i in range(n):
            out[i] = _pair_pow(kind, ap + i * d, bp + i * d, d, e)
    return out


def triple_kernel_values(int kind, X, Y, Z, double e1, double e2, double e3):
    """Per-sample |f(Y,Z)|^e1 |f(Z,X)|^e2 |f(X,Y)|^e3 for point batches."""
    if kind not in (0, 1, 2):
        raise ValueError(f"unknown kernel kind {kind}")
    cdef cnp.ndarray[cnp.float64_t, ndim=2] xa = np.ascontiguousarray(X, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] ya = np.ascontiguousarray(Y, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] za = np.ascontiguousarray(Z, dtype=np.float64)
    cdef Py_ssize_t n = xa.shape[0], d = xa.shape[1], i
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef double* xp = <double*> xa.data
    cdef double* yp = <double*> ya.data
    cdef double* zp = <double*> za.data
    with nogil:
        for i in range(n):
            out[i] = (_pair_pow(kind, yp + i * d, zp + i * d, d, e1)
                      * _pair_pow(kind, zp + i * d, xp + i * d, d, e2)
                      * _pair_pow(kind, xp + i * d, yp + i * d, d, e3))
    return out
