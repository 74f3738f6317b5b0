"""Dense univariate polynomials as coefficient lists (index = power).

Coefficients are exact rationals unless noted; all functions are pure
and return new lists.  The zero polynomial is the empty list.
"""

from math import comb

from .rationals import QQ, ZERO, ONE


def ptrim(p):
    n = len(p)
    while n and p[n - 1] == 0:
        n -= 1
    return list(p[:n])


def padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return ptrim(out)


def psub(a, b):
    return padd(a, [-c for c in b])


def pscale(a, c):
    if c == 0:
        return []
    return [c * x for x in a]


def pmul(a, b):
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y == 0:
                continue
            out[i + j] = out[i + j] + x * y
    return ptrim(out)


def ppow(a, n):
    out = [ONE]
    for _ in range(n):
        out = pmul(out, a)
    return out


def pderiv(a):
    return ptrim([i * a[i] for i in range(1, len(a))])


def peval(a, x):
    acc = ZERO if not isinstance(x, float) else 0.0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def pshift(a, t):
    """Coefficients of p(u + t)."""
    out = [ZERO] * len(a)
    for i, c in enumerate(a):
        if c == 0:
            continue
        tp = ONE
        for s in range(i, -1, -1):
            out[s] = out[s] + c * comb(i, i - s) * tp
            tp = tp * t
    return ptrim(out)


def prod_linear(zs):
    """Coefficients of prod_l (u + z_l)."""
    out = [ONE]
    for z in zs:
        out = pmul(out, [QQ(z), ONE])
    return out


def pdivmod(a, b):
    """Polynomial division over the coefficient field; b must be nonzero."""
    b = ptrim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    quot = [ZERO] * max(0, len(rem) - len(b) + 1)
    inv_lead = ONE / b[-1]
    for k in range(len(rem) - len(b), -1, -1):
        c = rem[k + len(b) - 1] * inv_lead
        quot[k] = c
        if c != 0:
            for j, bj in enumerate(b):
                rem[k + j] = rem[k + j] - c * bj
    return ptrim(quot), ptrim(rem)


def pdiv_exact(a, b):
    quot, rem = pdivmod(a, b)
    if rem:
        raise ValueError("polynomial division left a nonzero remainder")
    return quot
