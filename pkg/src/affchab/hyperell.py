"""Even-degree hyperelliptic curves y^2 = f(x) over Q.

Point counting over F_p, residue-disc parametrizations, expansions of the
basis differentials x^j dx / y on discs, tiny integrals, and reduction of
differentials modulo p with zero-order counting.

Disc parameters are scaled so that t ranges over Z_p: a disc around a
point with y != 0 mod p is parametrized by x = x0 + p*t, a disc around a
point with y = 0 (and f'(x0) a unit) by y = p*t.  In both cases the basis
differentials expand as sum a_k t^k dt with v(a_k) >= k+1; this integrality
is what keeps the tail of a formally integrated series under control, and
it is asserted on every computed expansion.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import (
    DifferentDiscs,
    PrecisionExhausted,
    UnsupportedCuspField,
    WeierstrassUnsupportedForJ,
    ZeroDifferential,
)
from .padic import PadicNumber, PadicSeries, hensel_sqrt, vp_fraction
from . import polyutil as pu


class HyperellipticCurve:
    """y^2 = f(x) with f squarefree of even degree 2g+2 >= 4."""

    def __init__(self, f_coeffs):
        f = [int(c) for c in f_coeffs]
        if pu.trim(f) != f:
            raise ValueError("leading coefficient must be nonzero")
        d = len(f) - 1
        if d < 4 or d % 2 != 0:
            raise ValueError(f"degree must be even and >= 4, got {d}")
        self.f = f
        self.genus = d // 2 - 1
        self.disc = pu.discriminant(f)
        if self.disc == 0:
            raise ValueError("f must be squarefree")

    @property
    def degree(self):
        return len(self.f) - 1

    @property
    def leading(self):
        return self.f[-1]

    def has_good_reduction(self, p):
        return p != 2 and self.leading % p != 0 and self.disc % p != 0

    def f_eval(self, x):
        return pu.poly_eval(self.f, x)

    def __repr__(self):
        return f"HyperellipticCurve(genus {self.genus}, f={self.f})"


def count_affine_points(curve, p):
    """#{(x, y) in F_p^2 : y^2 = f(x)} by direct loop."""
    if p == 2:
        raise ValueError("p must be odd")
    squares = {}
    for y in range(p):
        squares.setdefault(y * y % p, 0)
        squares[y * y % p] += 1
    return sum(squares.get(pu.poly_eval_mod(curve.f, x, p), 0)
               for x in range(p))


def points_mod_p(curve, p):
    out = []
    for x in range(p):
        v = pu.poly_eval_mod(curve.f, x, p)
        if v == 0:
            out.append((x, 0))
        elif pu.legendre(v, p) == 1:
            r = pu._sqrt_mod_prime(v, p)
            out.extend([(x, r), (x, p - r)])
    return sorted(out)


@dataclass(frozen=True)
class CuspInvariants:
    n: int          # geometric points at infinity
    num_cusps: int  # closed points of the boundary
    n1: int         # real embeddings of the cusp residue fields
    n2: int         # conjugate pairs of complex embeddings


def cusp_invariants(curve):
    """Boundary invariants of the two points at infinity over Q.

    The residue field at infinity is Q(sqrt(lc)); the four cases are the
    sign and squareness of the leading coefficient.
    """
    lc = curve.leading
    if lc == 0:
        raise UnsupportedCuspField("degenerate leading coefficient")
    if lc > 0 and isqrt(lc) ** 2 == lc:
        return CuspInvariants(n=2, num_cusps=2, n1=2, n2=0)
    if lc > 0:
        return CuspInvariants(n=2, num_cusps=1, n1=2, n2=0)
    if isqrt(-lc) ** 2 == -lc:
        return CuspInvariants(n=2, num_cusps=1, n1=0, n2=1)
    return CuspInvariants(n=2, num_cusps=1, n1=0, n2=1)


# ---------------------------------------------------------------------------
# residue discs and expansions
# ---------------------------------------------------------------------------


class ResidueDisc:
    """A residue disc of the affine curve mod p, with a chosen center.

    ``kind`` is "general" (y nonzero mod p, parameter t with x = cx + p t)
    or "weierstrass" (y = 0 mod p, parameter t with y = p t).  The center
    abscissa cx is any rational with the right reduction; anchoring it at a
    known rational point makes t = 0 that point.
    """

    def __init__(self, curve, p, x0, y0, center_x=None, y_seed=None):
        if p == 2:
            raise ValueError("discs need p odd")
        self.curve = curve
        self.p = p
        self.x0 = x0 % p
        self.y0 = y0 % p
        if pu.poly_eval_mod(curve.f, self.x0, p) != self.y0 * self.y0 % p:
            raise ValueError(f"({x0},{y0}) is not on the curve mod {p}")
        if self.y0 != 0:
            self.kind = "general"
        else:
            if pu.poly_eval_mod(pu.poly_derivative(curve.f), self.x0, p) == 0:
                raise ValueError(f"({x0},{y0}) is a singular point mod {p}")
            self.kind = "weierstrass"
        self.center_x = Fraction(center_x if center_x is not None else self.x0)
        if self.center_x != self.x0 and vp_fraction(self.center_x - self.x0, p) < 1:
            raise ValueError("center does not reduce to the disc")
        self.y_seed = y_seed if y_seed is not None else self.y0

    def label(self):
        return f"({self.x0},{self.y0})"

    def parameter_of(self, x, y):
        """The t-value of a point (x, y) of the disc (exact rationals)."""
        p = self.p
        if self.kind == "general":
            t = (Fraction(x) - self.center_x) / p
            if vp_fraction(t, p) < 0:
                raise DifferentDiscs(f"x = {x} is not in disc {self.label()}")
            if y is not None and (Fraction(y).numerator % p) % p != 0:
                yr = _reduce_fraction_mod(Fraction(y), p)
                if yr != self.y0:
                    raise DifferentDiscs("y-branch differs from the disc center")
            return t
        t = Fraction(y) / p
        if vp_fraction(t, p) < 0:
            raise DifferentDiscs(f"y = {y} is not in disc {self.label()}")
        xr = _reduce_fraction_mod(Fraction(x), p)
        if xr != self.x0:
            raise DifferentDiscs(f"x = {x} is not in disc {self.label()}")
        return t


def _reduce_fraction_mod(q, p):
    q = Fraction(q)
    if q.denominator % p == 0:
        raise DifferentDiscs("point is not p-integral")
    return q.numerator * pow(q.denominator, -1, p) % p


def _series_sqrt(F, s0, n):
    """Power series s with s^2 = F and s[0] = s0 (PadicNumber arithmetic)."""
    s = [s0]
    two_s0 = s0 + s0
    for k in range(1, n):
        acc = F[k]
        for i in range(1, k):
            acc = acc - s[i] * s[k - i]
        s.append(acc / two_s0)
    return s


def _series_inv(A, n):
    inv0 = PadicNumber.from_int(A[0].p, 1, A[0].abs_prec - A[0].v + 1) / A[0]
    out = [inv0]
    for k in range(1, n):
        acc = None
        for i in range(1, k + 1):
            term = A[i] * out[k - i] if i < len(A) else None
            if term is None:
                continue
            acc = term if acc is None else acc + term
        out.append(-(acc / A[0]) if acc is not None else PadicNumber.exact_zero(A[0].p))
    return out


def _series_mul(A, B, n):
    p = A[0].p
    out = []
    for k in range(n):
        acc = PadicNumber.exact_zero(p)
        for i in range(k + 1):
            if i < len(A) and k - i < len(B):
                acc = acc + A[i] * B[k - i]
        out.append(acc)
    return out


def expand_basis_differentials(curve, disc, n_terms, prec):
    """Expansions of x^j dx/y, j = 0..g, in the disc parameter t.

    Returns a list of PadicSeries (coefficients of dt) with the integrality
    tail bound v(a_k) >= k + 1 attached, and verified on the listed part.
    """
    g = curve.genus
    p = disc.p
    work = prec + n_terms + 3
    if disc.kind == "general":
        series = _expand_general(curve, disc, n_terms, work)
    else:
        series = _expand_weierstrass(curve, disc, n_terms, work)
    out = []
    for j, coeffs in enumerate(series):
        for k, c in enumerate(coeffs):
            if c.vmin < k + 1:
                raise WeierstrassUnsupportedForJ(
                    f"expansion of basis element {j} violates integrality "
                    f"at order {k} (valuation {c.vmin})")
        out.append(PadicSeries(p, coeffs, tail_base=n_terms + 1, tail_slope=1))
    return out


def _expand_general(curve, disc, n_terms, work):
    p = disc.p
    n = n_terms
    F_exact = pu.poly_shift(curve.f, disc.center_x, p)
    F = [PadicNumber.from_fraction(p, c, work) for c in F_exact]
    F += [PadicNumber.exact_zero(p)] * max(0, n - len(F))
    y0 = hensel_sqrt(F[0], disc.y_seed)
    y = _series_sqrt(F, y0, n)
    yi = _series_inv(y, n)
    pn = PadicNumber.from_int(p, p, work)
    x_series = [PadicNumber.from_fraction(p, disc.center_x, work), pn]
    out = []
    xpow = [PadicNumber.from_int(p, 1, work)]
    for j in range(curve.genus + 1):
        wj = [pn * c for c in _series_mul(xpow, yi, n)]
        out.append(wj)
        xpow = _series_mul(xpow, x_series, n)
    return out


def _expand_weierstrass(curve, disc, n_terms, work):
    p = disc.p
    n = n_terms + 2  # x(t) is even in t; keep two guard orders
    f = curve.f
    fprime = pu.poly_derivative(f)

    # exact Z_p root of f near x0 by integer Newton
    mod = p**work
    x = disc.x0
    for _ in range(work.bit_length() + 3):
        fx = pu.poly_eval(f, x) % mod
        dfx = pu.poly_eval(fprime, x) % mod
        x = (x - fx * pow(dfx, -1, mod)) % mod
    xstar = PadicNumber.from_int(p, x, work)

    zero = PadicNumber.exact_zero(p)
    p2t2 = [zero, zero, PadicNumber.from_int(p, p * p, work)]

    def poly_of_series(poly, X):
        acc = [PadicNumber.from_fraction(p, poly[-1], work)]
        for c in reversed(poly[:-1]):
            acc = _series_mul(acc, X, n)
            acc[0] = acc[0] + PadicNumber.from_fraction(p, c, work)
        return acc

    X = [xstar] + [zero] * (n - 1)
    for _ in range(n.bit_length() + 2):
        fX = poly_of_series(f, X)
        err = [a - (p2t2[k] if k < 3 else zero) for k, a in enumerate(fX)]
        dfX = poly_of_series(fprime, X)
        corr = _series_mul(err, _series_inv(dfX, n), n)
        X = [a - b for a, b in zip(X, corr)]
    # check f(X) = (pt)^2 to working order
    fX = poly_of_series(f, X)
    for k, c in enumerate(fX):
        target = p2t2[k] if k < 3 else zero
        if not (c - target).is_zeroish():
            raise WeierstrassUnsupportedForJ(
                f"local solver did not converge at order {k}")

    # omega_j = x^j dx / y = X^j * (X'(t)/(p t)) dt
    xprime_over_pt = []
    for k in range(n_terms):
        c = X[k + 2] if k + 2 < len(X) else zero
        factor = PadicNumber.from_int(p, k + 2, work)
        xprime_over_pt.append(c * factor / PadicNumber.from_int(p, p, work))
    out = []
    xpow = [PadicNumber.from_int(p, 1, work)]
    for j in range(curve.genus + 1):
        out.append(_series_mul(xpow, xprime_over_pt, n_terms))
        xpow = _series_mul(xpow, X, n_terms)
    return out


def disc_expand_differential(curve, disc, j, n_terms, prec=12):
    """Expansion of the basis differential x^j dx/y on a disc."""
    if j < 0 or j > curve.genus:
        raise ValueError(f"basis index {j} outside 0..{curve.genus}")
    return expand_basis_differentials(curve, disc, n_terms, prec)[j]


def combine_differential(curve, alphas, expansions):
    """The expansion of sum_j alpha_j x^j dx/y given basis expansions."""
    if all(a.is_zeroish() for a in alphas):
        raise ZeroDifferential("all coefficients vanish at this precision")
    total = None
    for a, w in zip(alphas, expansions):
        part = w.scale(a)
        total = part if total is None else total + part
    return total


def tiny_integral(curve, alphas, point_a, point_b, p, prec=12, n_terms=None):
    """Integral of sum alpha_j x^j dx/y between two points of one disc.

    Points are (x, y) pairs of rationals reducing to the same smooth point
    of the curve mod p.  Computed by formally integrating the expansion in
    the disc parameter and evaluating at the endpoints.
    """
    if n_terms is None:
        n_terms = prec + curve.genus + 2
    xa, ya = point_a
    xb, yb = point_b
    for (x, y) in (point_a, point_b):
        if Fraction(y) ** 2 != curve.f_eval(Fraction(x)):
            raise ValueError(f"({x},{y}) is not on the curve")
    ra = (_reduce_fraction_mod(xa, p), _reduce_fraction_mod(ya, p))
    rb = (_reduce_fraction_mod(xb, p), _reduce_fraction_mod(yb, p))
    if ra != rb:
        raise DifferentDiscs(f"{ra} and {rb} differ")
    disc = ResidueDisc(curve, p, ra[0], ra[1], center_x=xa,
                       y_seed=ra[1] if ra[1] else None)
    exps = expand_basis_differentials(curve, disc, n_terms, prec)
    omega = combine_differential(curve, alphas, exps)
    F = omega.antiderivative()
    work = prec + n_terms + 3
    ta = PadicNumber.from_fraction(p, disc.parameter_of(xa, ya), work)
    tb = PadicNumber.from_fraction(p, disc.parameter_of(xb, yb), work)
    return F.evaluate(tb) - F.evaluate(ta)


# ---------------------------------------------------------------------------
# reduction of differentials mod p
# ---------------------------------------------------------------------------


def _series_sqrt_modp(F, s0, n, p):
    s = [s0 % p]
    inv2s0 = pow(2 * s[0] % p, -1, p)
    for k in range(1, n):
        acc = F[k] if k < len(F) else 0
        for i in range(1, k):
            acc -= s[i] * s[k - i]
        s.append(acc * inv2s0 % p)
    return s


def _series_inv_modp(A, n, p):
    out = [pow(A[0], -1, p)]
    for k in range(1, n):
        acc = 0
        for i in range(1, k + 1):
            if i < len(A):
                acc += A[i] * out[k - i]
        out.append(-acc * out[0] % p)
    return out


def _series_mul_modp(A, B, n, p):
    out = [0] * n
    for i, a in enumerate(A[:n]):
        if a == 0:
            continue
        for j, b in enumerate(B[:n - i]):
            out[i + j] = (out[i + j] + a * b) % p
    return out


def reduce_and_order(curve, alphas, p):
    """Reduce the differential sum alpha_j x^j dx/y mod p and count zeros.

    The differential is scaled by the power of p that makes the minimal
    coefficient valuation zero, then reduced.  For every smooth affine
    F_p-point the order of vanishing is read off the reduction of the disc
    expansion; returns (n_C, {point: order}).
    """
    if not curve.has_good_reduction(p):
        raise ValueError(f"good reduction at {p} required")
    vals = [None if a.is_zeroish() else a.valuation() for a in alphas]
    if all(v is None for v in vals):
        raise ZeroDifferential("zero differential at this precision")
    e = min(v for v in vals if v is not None)
    abar = []
    for a, v in zip(alphas, vals):
        if v is None:
            # an unresolved coefficient is certifiably zero in the
            # reduction only when its valuation bound exceeds the scale
            if not a.is_exact_zero() and a.vmin <= e:
                raise PrecisionExhausted(
                    f"coefficient bound O(p^{a.vmin}) cannot be separated "
                    f"from the scaling power {e}")
            abar.append(0)
        elif v > e:
            abar.append(0)
        else:
            abar.append(a.unit % p)
    g = curve.genus
    n_terms = 4 * g + 6
    npoly = pu.poly_mod(abar, p)
    orders = {}
    for (x0, y0) in points_mod_p(curve, p):
        if y0 != 0:
            fshift = pu.poly_mod(pu.poly_shift(curve.f, x0), p)
            ybar = _series_sqrt_modp(fshift, y0, n_terms, p)
            nshift = pu.poly_mod(pu.poly_shift(npoly, x0), p)
            series = _series_mul_modp(
                nshift + [0] * n_terms, _series_inv_modp(ybar, n_terms, p),
                n_terms, p)
        else:
            series = _weierstrass_reduction_series(curve, npoly, x0, n_terms, p)
        ord_ = next((k for k, c in enumerate(series) if c % p != 0), None)
        if ord_ is None:
            raise ZeroDifferential(
                f"reduction vanishes to order > {n_terms} at ({x0},{y0})")
        orders[(x0, y0)] = ord_
    return sum(orders.values()), orders


def _weierstrass_reduction_series(curve, npoly, x0, n_terms, p):
    # parameter s = y; x(s) solves f(x) = s^2 with x(0) = x0
    f = pu.poly_mod(curve.f, p)
    fprime = pu.poly_derivative(f)
    X = [x0] + [0] * (n_terms - 1)
    s2 = [0, 0, 1]

    def eval_poly_series(poly, X):
        acc = [poly[-1] % p] + [0] * (n_terms - 1)
        for c in reversed(poly[:-1]):
            acc = _series_mul_modp(acc, X, n_terms, p)
            acc[0] = (acc[0] + c) % p
        return acc

    for _ in range(n_terms.bit_length() + 2):
        fX = eval_poly_series(f, X)
        err = [(a - (s2[k] if k < 3 else 0)) % p for k, a in enumerate(fX)]
        dfX = eval_poly_series(fprime, X)
        corr = _series_mul_modp(err, _series_inv_modp(dfX, n_terms, p),
                                n_terms, p)
        X = [(a - b) % p for a, b in zip(X, corr)]
    nX = eval_poly_series(list(npoly), X)
    dfX = eval_poly_series(fprime, X)
    two_over = _series_inv_modp(dfX, n_terms, p)
    series = _series_mul_modp(nX, two_over, n_terms, p)
    return [(2 * c) % p for c in series]


def residues_at_infinity(curve, alphas, prec=12):
    """Residues of sum alpha_j x^j dx/y at the two points at infinity.

    Requires a square leading coefficient (rational cusps).  Returns the
    pair ordered by the sign of the chosen square root.
    """
    lc = curve.leading
    r = isqrt(lc) if lc > 0 else -1
    if lc <= 0 or r * r != lc:
        raise UnsupportedCuspField("residues need rational points at infinity")
    p = alphas[0].p
    g = curve.genus
    n = g + 3
    work = prec + n
    ftilde = [PadicNumber.from_int(p, c, work) for c in reversed(curve.f)]
    out = []
    for sign in (1, -1):
        s0 = PadicNumber.from_int(p, sign * r, work)
        w = _series_sqrt(ftilde, s0, n)
        wi = _series_inv(w, n)
        # residue = -(sum_j alpha_j u^(g-j) / w)(0) read at u^0
        poly = [PadicNumber.exact_zero(p)] * (g + 1)
        for j, a in enumerate(alphas):
            poly[g - j] = a
        quot = _series_mul(poly, wi, n)
        out.append(-quot[0])
    return out


# ---------------------------------------------------------------------------
# brute-force search (oracle)
# ---------------------------------------------------------------------------


def brute_force_integral_points(curve, height, s_primes=()):
    """All S-integral points with numerator and denominator up to height.

    Returns sorted (x, y) pairs of Fractions, both y-signs listed.
    """
    denominators = [1]
    for q in s_primes:
        extended = []
        for d in denominators:
            while d <= height:
                extended.append(d)
                d *= q
        denominators = sorted(set(extended))
    from math import gcd
    found = []
    gplus1 = curve.genus + 1
    for d in denominators:
        for a in range(-height, height + 1):
            if d > 1 and gcd(a, d) != 1:
                continue
            num = sum(c * a**i * d ** (curve.degree - i)
                      for i, c in enumerate(curve.f))
            if num < 0:
                continue
            ry = isqrt(num)
            if ry * ry != num:
                continue
            x = Fraction(a, d)
            y = Fraction(ry, d**gplus1)
            if ry == 0:
                found.append((x, y))
            else:
                found.extend([(x, y), (x, -y)])
    return sorted(set(found))
