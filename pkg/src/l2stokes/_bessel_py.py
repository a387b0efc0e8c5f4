"""Pure-Python Bessel kernels. ``_bessel_ext.pyx`` mirrors this file line for line."""
import math

SERIES_X = 2.0
RESCALE = 1e250
_LN2 = math.log(2.0)
_EPS = 2.220446049250313e-16
_SCAN_STEP = 1.0  # below the minimal spacing (~3.1) of consecutive zeros of J_nu, nu >= 0
_MAX_REFINE = 200
MAX_ORDER = 100.0


def _series(nu, x):
    # (x/2)^nu / Gamma(nu+1) * sum_k (-x^2/4)^k / (k! (nu+1)_k)
    q = -0.25 * x * x
    term = 1.0
    total = 1.0
    k = 0
    while True:
        k += 1
        term *= q / (k * (nu + k))
        total += term
        if abs(term) <= _EPS * abs(total) * 0.5 or k > 500:
            break
    return total * math.exp(nu * (math.log(x) - _LN2) - math.lgamma(nu + 1.0))


def _hankel(nu, x):
    mu = 4.0 * nu * nu
    p = 0.0
    q = 0.0
    term = 1.0
    k = 0
    prev = math.inf
    while True:
        mag = abs(term)
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
        term *= (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        if term == 0.0:
            break
    w = x - (0.5 * nu + 0.25) * math.pi
    return math.sqrt(2.0 / (math.pi * x)) * (p * math.cos(w) - q * math.sin(w))


def _miller(nu, x):
    # backward recurrence J_{v-1} = (2v/x) J_v - J_{v+1}, normalised by
    # (x/2)^nu / Gamma(nu+1) = sum_k c_k J_{nu+2k},  c_0 = 1, c_k = (nu+2k) g_k,
    # g_k = (nu+1)_{k-1} / k!
    m = 2 * int(0.5 * (x + 30.0 + 6.0 * math.sqrt(x))) + 2
    kk = m // 2
    g = 1.0 / kk
    for i in range(1, kk):
        g *= (nu + i) / i
    if math.isinf(g):
        raise OverflowError(f"bessel_j normalisation overflow at nu={nu}, x={x}")
    f_next = 0.0
    f = 1e-30
    total = 0.0
    for j in range(m, 0, -1):
        if j % 2 == 0:
            total += (nu + j) * g * f
            g *= kk / (nu + kk - 1.0) if kk > 1 else 1.0
            kk -= 1
        f_prev = 2.0 * (nu + j) / x * f - f_next
        f_next = f
        f = f_prev
        if abs(f) > RESCALE:
            f /= RESCALE
            f_next /= RESCALE
            total /= RESCALE
    total += f
    return f / total * math.exp(nu * (math.log(x) - _LN2) - math.lgamma(nu + 1.0))


def bessel_j(nu, x):
    """J_nu(x) for real nu >= 0, x >= 0."""
    nu = float(nu)
    x = float(x)
    if nu < 0 or x < 0 or math.isnan(nu) or math.isnan(x):
        raise ValueError(f"bessel_j needs nu >= 0 and x >= 0, got nu={nu}, x={x}")
    if math.isinf(x):
        return 0.0
    if nu > MAX_ORDER or x > 1e8:
        raise OverflowError(f"bessel_j argument out of supported range: nu={nu}, x={x}")
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0
    if x <= SERIES_X or 0.25 * x * x <= nu + 1.0:
        return _series(nu, x)
    if x > 30.0 + nu * nu:
        return _hankel(nu, x)
    return _miller(nu, x)


def _refine(nu, a, fa, b, fb):
    # Illinois regula falsi with bisection safeguard; returns the root in [a, b]
    side = 0
    for _ in range(_MAX_REFINE):
        if b - a <= 4.0 * _EPS * b:
            break
        c = (a * fb - b * fa) / (fb - fa)
        if not a < c < b:
            c = 0.5 * (a + b)
        fc = bessel_j(nu, c)
        if fc == 0.0:
            return c
        if (fc > 0) == (fa > 0):
            a, fa = c, fc
            if side == -1:
                fb *= 0.5
            side = -1
        else:
            b, fb = c, fc
            if side == 1:
                fa *= 0.5
            side = 1
    return 0.5 * (a + b)


def bessel_zeros(nu, count, xmax=math.inf):
    """The first ``count`` positive zeros of J_nu, stopping early past ``xmax``."""
    nu = float(nu)
    count = int(count)
    if nu < 0 or count < 0:
        raise ValueError("bessel_zeros needs nu >= 0 and count >= 0")
    if nu > MAX_ORDER:
        raise OverflowError(f"bessel_zeros order nu={nu} exceeds {MAX_ORDER}")
    zeros = []
    # J_nu > 0 on (0, j_{nu,1}) and j_{nu,1} > nu
    a = max(nu, 0.5)
    fa = bessel_j(nu, a)
    while len(zeros) < count and a <= xmax:
        b = a + _SCAN_STEP
        fb = bessel_j(nu, b)
        if fb == 0.0:
            zeros.append(b)
            b += 1e-9 * b
            fb = bessel_j(nu, b)
        elif (fa > 0) != (fb > 0):
            zeros.append(_refine(nu, a, fa, b, fb))
        a, fa = b, fb
    return [z for z in zeros if z <= xmax]
