"""Integer and mod-p polynomial helpers.

Polynomials are coefficient lists, constant term first.  Everything here is
exact: Fractions over Q, plain ints mod p.
"""

from fractions import Fraction
from math import comb, lcm


def trim(poly):
    poly = list(poly)
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def degree(poly):
    return len(trim(poly)) - 1


def poly_eval(poly, x):
    acc = 0
    for c in reversed(list(poly)):
        acc = acc * x + c
    return acc


def poly_derivative(poly):
    return [i * c for i, c in enumerate(poly)][1:]


def poly_shift(poly, a, b=1):
    """Coefficients of f(a + b*t)."""
    n = len(poly)
    out = [0] * n
    for i, c in enumerate(poly):
        if c == 0:
            continue
        for k in range(i + 1):
            out[k] += c * comb(i, k) * a ** (i - k) * b**k
    return out


def poly_gcd_q(a, b):
    """Monic gcd over Q."""
    a = trim([Fraction(c) for c in a])
    b = trim([Fraction(c) for c in b])
    while b:
        r = list(a)
        while len(r) >= len(b):
            q = r[-1] / b[-1]
            for i in range(len(b)):
                r[len(r) - len(b) + i] -= q * b[i]
            r = trim(r)
            if not r:
                break
        a, b = b, r
    if not a:
        return [Fraction(1)]
    return [c / a[-1] for c in a]


def poly_div_q(a, b):
    """Exact quotient over Q (remainder must vanish)."""
    a = [Fraction(c) for c in a]
    b = trim([Fraction(c) for c in b])
    out = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    r = trim(a)
    while len(r) >= len(b):
        q = r[-1] / b[-1]
        out[len(r) - len(b)] = q
        for i in range(len(b)):
            r[len(r) - len(b) + i] -= q * b[i]
        r = trim(r)
        if not r:
            break
    if r:
        raise ValueError("division is not exact")
    return out


def resultant(f, g):
    """Resultant over Q via the Euclidean algorithm."""
    f = trim([Fraction(c) for c in f])
    g = trim([Fraction(c) for c in g])
    if not f or not g:
        return Fraction(0)
    res = Fraction(1)
    while True:
        df, dg = len(f) - 1, len(g) - 1
        if dg == 0:
            return res * g[0] ** df
        r = list(f)
        while len(r) >= len(g):
            q = r[-1] / g[-1]
            for i in range(len(g)):
                r[len(r) - len(g) + i] -= q * g[i]
            r = trim(r)
            if not r:
                break
        if not r:
            return Fraction(0)
        dr = len(r) - 1
        res *= (-1) ** (df * dg) * g[-1] ** (df - dr)
        f, g = g, r


def discriminant(f):
    """Discriminant of f over Q."""
    f = trim([Fraction(c) for c in f])
    n = len(f) - 1
    if n < 1:
        return Fraction(0)
    sign = (-1) ** (n * (n - 1) // 2)
    return sign * resultant(f, poly_derivative(f)) / f[-1]


def is_squarefree(f):
    return degree(poly_gcd_q(f, poly_derivative(f))) == 0


def clear_denominators(poly):
    den = 1
    for c in poly:
        den = lcm(den, Fraction(c).denominator)
    return [int(Fraction(c) * den) for c in poly]


# -- mod p -------------------------------------------------------------------


def poly_mod(poly, p):
    return trim([c % p for c in poly])


def poly_eval_mod(poly, x, p):
    acc = 0
    for c in reversed(list(poly)):
        acc = (acc * x + c) % p
    return acc


def poly_mul_mod(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return trim(out)


def poly_divmod_mod(a, b, p):
    a = poly_mod(a, p)
    b = poly_mod(b, p)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [0] * max(len(a) - len(b) + 1, 1)
    r = list(a)
    inv_lead = pow(b[-1], -1, p)
    while len(r) >= len(b):
        c = r[-1] * inv_lead % p
        q[len(r) - len(b)] = c
        for i in range(len(b)):
            r[len(r) - len(b) + i] = (r[len(r) - len(b) + i] - c * b[i]) % p
        r = trim(r)
        if not r:
            break
    return trim(q), trim(r)


def poly_gcd_mod(a, b, p):
    a, b = poly_mod(a, p), poly_mod(b, p)
    while b:
        _, r = poly_divmod_mod(a, b, p)
        a, b = b, r
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def is_square_poly_mod(f, p):
    """Is f a square in F_p[x]?  (p odd; handles the zero polynomial.)"""
    f = poly_mod(f, p)
    if not f:
        return True
    d = len(f) - 1
    if d % 2 != 0:
        return False
    if legendre(f[-1], p) != 1:
        return False
    if d == 0:
        return True
    # if a square root exists it is found by coefficient descent from the
    # top; the lower half of f is then overdetermined, so verify at the end
    m = d // 2
    h = [0] * (m + 1)
    h[m] = _sqrt_mod_prime(f[-1], p)
    inv2h = pow(2 * h[m] % p, -1, p)
    for t in range(m - 1, -1, -1):
        k = t + m
        s = 0
        for i in range(t + 1, k // 2 + 1):
            j = k - i
            if j > m:
                continue
            s += h[i] * h[j] * (1 if i == j else 2)
        h[t] = (f[k] - s) * inv2h % p
    return poly_mul_mod(h, h, p) == f


def _sqrt_mod_prime(a, p):
    """A square root of a residue a mod an odd prime p (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1
