# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Bessel kernels; same algorithms as ``_bessel_py``."""
from libc.math cimport exp, log, lgamma, sqrt, cos, sin, fabs, isinf, isnan, INFINITY, M_PI

cdef double SERIES_X = 2.0
cdef double RESCALE = 1e250
cdef double _EPS = 2.220446049250313e-16
cdef double _SCAN_STEP = 1.0
cdef int _MAX_REFINE = 200
cdef double MAX_ORDER = 100.0
cdef double LN2 = 0.6931471805599453


cdef double _series(double nu, double x) nogil:
    cdef double q = -0.25 * x * x
    cdef double term = 1.0
    cdef double total = 1.0
    cdef int k = 0
    while True:
        k += 1
        term *= q / (k * (nu + k))
        total += term
        if fabs(term) <= _EPS * fabs(total) * 0.5 or k > 500:
            break
    return total * exp(nu * (log(x) - LN2) - lgamma(nu + 1.0))


cdef double _hankel(double nu, double x) nogil:
    cdef double mu = 4.0 * nu * nu
    cdef double p = 0.0, q = 0.0, term = 1.0, prev = INFINITY, mag, w
    cdef int k = 0
    while True:
        mag = fabs(term)
        if mag > prev or mag < 1e-17:
            break
        prev = mag
        if k % 4 == 0:
            p += term
        elif k % 4 == 1:
            q += term
        elif k % 4 == 2:
            p -= term
        else:
            q -= term
        k += 1
        term *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x)
        if term == 0.0:
            break
    w = x - (0.5 * nu + 0.25) * M_PI
    return sqrt(2.0 / (M_PI * x)) * (p * cos(w) - q * sin(w))


cdef double _miller(double nu, double x) nogil:
    cdef int m = 2 * <int>(0.5 * (x + 30.0 + 6.0 * sqrt(x))) + 2
    cdef int kk = m // 2
    cdef double g = 1.0 / kk
    cdef int i, j
    cdef double f_next = 0.0, f = 1e-30, total = 0.0, f_prev
    for i in range(1, kk):
        g *= (nu + i) / i
    if isinf(g):
        return INFINITY
    for j in range(m, 0, -1):
        if j % 2 == 0:
            total += (nu + j) * g * f
            if kk > 1:
                g *= kk / (nu + kk - 1.0)
            kk -= 1
        f_prev = 2.0 * (nu + j) / x * f - f_next
        f_next = f
        f = f_prev
        if fabs(f) > RESCALE:
            f /= RESCALE
            f_next /= RESCALE
            total /= RESCALE
    total += f
    return f / total * exp(nu * (log(x) - LN2) - lgamma(nu + 1.0))


cdef double _j(double nu, double x) nogil:
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0
    if x <= SERIES_X or 0.25 * x * x <= nu + 1.0:
        return _series(nu, x)
    if x > 30.0 + nu * nu:
        return _hankel(nu, x)
    return _miller(nu, x)


cdef _check(double nu, double x):
    if nu < 0 or x < 0 or isnan(nu) or isnan(x):
        raise ValueError(f"bessel_j needs nu >= 0 and x >= 0, got nu={nu}, x={x}")
    if nu > MAX_ORDER or (x > 1e8 and not isinf(x)):
        raise OverflowError(f"bessel_j argument out of supported range: nu={nu}, x={x}")


def bessel_j(nu, x):
    """J_nu(x) for real nu >= 0, x >= 0."""
    cdef double dnu = float(nu), dx = float(x), v
    _check(dnu, dx)
    if isinf(dx):
        return 0.0
    v = _j(dnu, dx)
    if isinf(v):
        raise OverflowError(f"bessel_j normalisation overflow at nu={dnu}, x={dx}")
    return v


cdef double _refine(double nu, double a, double fa, double b, double fb) nogil:
    cdef int side = 0, it
    cdef double c, fc
    for it in range(_MAX_REFINE):
        if b - a <= 4.0 * _EPS * b:
            break
        c = (a * fb - b * fa) / (fb - fa)
        if not (a < c < b):
            c = 0.5 * (a + b)
        fc = _j(nu, c)
        if fc == 0.0:
            return c
        if (fc > 0) == (fa > 0):
            a = c
            fa = fc
            if side == -1:
                fb *= 0.5
            side = -1
        else:
            b = c
            fb = fc
            if side == 1:
                fa *= 0.5
            side = 1
    return 0.5 * (a + b)


def bessel_zeros(nu, count, xmax=float("inf")):
    """The first ``count`` positive zeros of J_nu, stopping early past ``xmax``."""
    cdef double dnu = float(nu), dmax = float(xmax), a, fa, b, fb
    cdef Py_ssize_t n = int(count)
    if dnu < 0 or n < 0:
        raise ValueError("bessel_zeros needs nu >= 0 and count >= 0")
    if dnu > MAX_ORDER:
        raise OverflowError(f"bessel_zeros order nu={dnu} exceeds {MAX_ORDER}")
    zeros = []
    a = dnu if dnu > 0.5 else 0.5
    fa = _j(dnu, a)
    while len(zeros) < n and a <= dmax:
        if a > 1e8:
            raise OverflowError("bessel_zeros scanned past the supported range")
        b = a + _SCAN_STEP
        fb = _j(dnu, b)
        if isinf(fb):
            raise OverflowError(f"bessel_j normalisation overflow at nu={dnu}, x={b}")
        if fb == 0.0:
            zeros.append(b)
            b += 1e-9 * b
            fb = _j(dnu, b)
        elif (fa > 0) != (fb > 0):
            zeros.append(_refine(dnu, a, fa, b, fb))
        a = b
        fa = fb
    return [z for z in zeros if z <= dmax]
