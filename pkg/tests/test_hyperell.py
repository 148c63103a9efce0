import random
from fractions import Fraction
from math import isqrt

import pytest

from affchab.errors import DifferentDiscs, UnsupportedCuspField, ZeroDifferential
from affchab.hyperell import (
    CuspInvariants,
    HyperellipticCurve,
    ResidueDisc,
    brute_force_integral_points,
    combine_differential,
    count_affine_points,
    cusp_invariants,
    disc_expand_differential,
    expand_basis_differentials,
    points_mod_p,
    reduce_and_order,
    residues_at_infinity,
    tiny_integral,
)
from affchab.padic import PadicNumber, PadicSeries, iwasawa_log
from affchab import polyutil as pu

QUARTIC = HyperellipticCurve([0, 1, 6, 5, 1])          # y^2 = x^4+5x^3+6x^2+x
SEXTIC = HyperellipticCurve([4, 0, -28, 0, 0, 0, 1])   # y^2 = x^6-28x^2+4
SEXTIC_IQ = HyperellipticCurve([1, -10, 1, 6, 2, -4, 1])


def test_counts_match_published_values():
    assert count_affine_points(QUARTIC, 5) == 3
    assert count_affine_points(SEXTIC, 7) == 2
    assert count_affine_points(SEXTIC_IQ, 7) == 6


def test_count_exhaustive_small():
    curve = HyperellipticCurve([1, 0, 0, 0, 1])  # y^2 = x^4+1
    p = 3
    brute = sum(1 for x in range(p) for y in range(p)
                if (y * y - pu.poly_eval(curve.f, x)) % p == 0)
    assert count_affine_points(curve, p) == brute


def test_points_mod_p_agree_with_count():
    for p in (5, 7, 11):
        assert len(points_mod_p(SEXTIC_IQ, p)) == count_affine_points(SEXTIC_IQ, p)


def test_cusp_invariants_cases():
    assert cusp_invariants(QUARTIC) == CuspInvariants(2, 2, 2, 0)
    neg = HyperellipticCurve([2, 0, 0, 0, -1])
    assert cusp_invariants(neg) == CuspInvariants(2, 1, 0, 1)
    pos_nonsq = HyperellipticCurve([1, 1, 0, 0, 3])
    assert cusp_invariants(pos_nonsq) == CuspInvariants(2, 1, 2, 0)


def test_curve_validation():
    with pytest.raises(ValueError):
        HyperellipticCurve([1, 2, 1])          # odd degree 2
    with pytest.raises(ValueError):
        HyperellipticCurve([0, 0, 1, 2, 1])    # x^2(x+1)^2 not squarefree


# ---------------------------------------------------------------------------
# disc expansions
# ---------------------------------------------------------------------------

def test_expansion_integrality_general_disc():
    disc = ResidueDisc(SEXTIC_IQ, 7, 0, 1)
    for j in range(SEXTIC_IQ.genus + 1):
        w = disc_expand_differential(SEXTIC_IQ, disc, j, 10)
        for k, c in enumerate(w.coeffs):
            assert c.vmin >= k + 1
        assert w.tail_slope == 1


def test_expansion_general_matches_exact_series():
    # independent expansion with exact rationals
    curve = SEXTIC_IQ
    p = 7
    n = 9
    disc = ResidueDisc(curve, p, 0, 1)
    w0 = disc_expand_differential(curve, disc, 0, n)
    F = pu.poly_shift(curve.f, 0, p)
    y = [Fraction(1)]
    for k in range(1, n):
        acc = Fraction(F[k]) if k < len(F) else Fraction(0)
        acc -= sum(y[i] * y[k - i] for i in range(1, k))
        y.append(acc / 2)
    yi = [Fraction(1)]
    for k in range(1, n):
        yi.append(-sum(y[i] * yi[k - i] for i in range(1, k + 1)))
    for k in range(n):
        assert w0.coeffs[k] == PadicNumber.from_fraction(p, 7 * yi[k], 20)


def test_expansion_weierstrass_disc():
    # (0,0) on the quartic mod 5 is a Weierstrass disc center
    disc = ResidueDisc(QUARTIC, 5, 0, 0)
    assert disc.kind == "weierstrass"
    for j in range(QUARTIC.genus + 1):
        w = disc_expand_differential(QUARTIC, disc, j, 8)
        for k, c in enumerate(w.coeffs):
            assert c.vmin >= k + 1


def test_weierstrass_parametrization_consistency():
    # f(x(t)) = (pt)^2 was asserted inside; check the visible effect:
    # integrating from (0,0) to itself is zero, and the parameter of the
    # Weierstrass center is 0
    disc = ResidueDisc(QUARTIC, 5, 0, 0)
    assert disc.parameter_of(0, 0) == 0


def test_gm_analogue_log_series():
    # dz/z on the unit disc of a=1: z = 1 + 5t, the integral from 1 to b
    # is log(b); compare the formal antiderivative against iwasawa_log
    from affchab.hyperell import _series_inv
    p = 5
    work = 20
    n = 12
    zc = [PadicNumber.from_fraction(p, c, work) for c in [1, 5]]
    zi = _series_inv(zc + [PadicNumber.exact_zero(p)] * (n - 2), n)
    omega = PadicSeries(p, [PadicNumber.from_int(p, 5, work) * c for c in zi],
                        tail_base=n + 1, tail_slope=1)
    F = omega.antiderivative()
    for t in (1, 3, 4):
        val = F.evaluate(PadicNumber.from_int(p, t, work))
        expected = iwasawa_log(PadicNumber.from_int(p, 1 + 5 * t, work))
        assert val == expected


# ---------------------------------------------------------------------------
# tiny integrals
# ---------------------------------------------------------------------------

def unit_alphas(p, g, prec=14):
    return [PadicNumber.from_int(p, 1, prec) for _ in range(g + 1)]


def test_tiny_integral_same_point_is_zero():
    val = tiny_integral(SEXTIC_IQ, unit_alphas(7, 2), (0, 1), (0, 1), 7)
    assert val.is_zeroish()


def test_tiny_integral_additivity():
    p = 7
    alphas = unit_alphas(p, 2)
    # three points in the disc of (0,1): x = 0, 7, 14 with y = sqrt(f(x))
    # additivity in the parameter: integrate 0->7 plus 7->14 equals 0->14,
    # evaluated through the antiderivative directly
    disc = ResidueDisc(SEXTIC_IQ, p, 0, 1)
    exps = expand_basis_differentials(SEXTIC_IQ, disc, 12, 12)
    F = combine_differential(SEXTIC_IQ, alphas, exps).antiderivative()
    t0 = PadicNumber.from_int(p, 0, 20)
    t1 = PadicNumber.from_int(p, 1, 20)
    t2 = PadicNumber.from_int(p, 2, 20)
    a = F.evaluate(t1) - F.evaluate(t0)
    b = F.evaluate(t2) - F.evaluate(t1)
    c = F.evaluate(t2) - F.evaluate(t0)
    assert a + b == c


def test_tiny_integral_rejects_different_discs():
    # (2, 1) is on the curve but reduces to a different residue disc
    assert SEXTIC_IQ.f_eval(2) == 1
    with pytest.raises(DifferentDiscs):
        tiny_integral(SEXTIC_IQ, unit_alphas(7, 2), (0, 1), (2, 1), 7)


def test_tiny_integral_coordinate_independence():
    # (-1, 1) and (4, 26) lie in the same disc of the quartic mod 5;
    # integrating with either point as the parametrization center must
    # give the same value
    curve = QUARTIC
    p = 5
    a = (Fraction(-1), Fraction(1))
    b = (Fraction(4), Fraction(26))
    assert curve.f_eval(-1) == 1 and curve.f_eval(4) == 26 * 26
    alphas = unit_alphas(p, 1)
    v1 = tiny_integral(curve, alphas, a, b, p)       # centered at a
    v2 = -tiny_integral(curve, alphas, b, a, p)      # centered at b
    assert v1 == v2
    assert not v1.is_zeroish()
    # a third center: the plain integer lift of the disc
    disc_c = ResidueDisc(curve, p, 4, 1, center_x=9, y_seed=1)
    exps = expand_basis_differentials(curve, disc_c, 16, 12)
    F = combine_differential(curve, alphas, exps).antiderivative()
    ta = PadicNumber.from_fraction(p, disc_c.parameter_of(*a), 20)
    tb = PadicNumber.from_fraction(p, disc_c.parameter_of(*b), 20)
    v3 = F.evaluate(tb) - F.evaluate(ta)
    assert v1 == v3


# ---------------------------------------------------------------------------
# reduction mod p and orders
# ---------------------------------------------------------------------------

def padic_alphas(p, ints, prec=12):
    return [PadicNumber.from_int(p, c, prec) for c in ints]


def test_reduce_and_order_unit_constant():
    # alpha = (1, 0, 0): omega = dx/y, zero divisor supported at infinity
    n_c, orders = reduce_and_order(SEXTIC_IQ, padic_alphas(7, [1, 0, 0]), 7)
    assert n_c == sum(orders.values())
    assert all(v == 0 for v in orders.values())


def test_reduce_and_order_bound_and_oracle():
    rng = random.Random(5)
    curves = 0
    while curves < 50:
        g = rng.choice([1, 1, 2, 2, 3])
        coeffs = [rng.randrange(-8, 9) for _ in range(2 * g + 2)] + [1]
        try:
            curve = HyperellipticCurve(coeffs)
        except ValueError:
            continue
        p = rng.choice([5, 7, 11, 13, 17, 19, 23, 29, 31])
        if not curve.has_good_reduction(p):
            continue
        alphas = [PadicNumber.from_int(
            p, rng.randrange(-40, 41) * p ** rng.randrange(0, 2), 14)
            for _ in range(g + 1)]
        if all(a.is_zeroish() for a in alphas):
            continue
        n_c, orders = reduce_and_order(curve, alphas, p)
        curves += 1
        inv = cusp_invariants(curve)
        assert n_c <= 2 * g - 2 + inv.n, (coeffs, p, n_c)
        # algebraic oracle at non-Weierstrass points: the order equals the
        # multiplicity of (x - x0) in the reduced numerator polynomial
        e = min(a.valuation() for a in alphas if not a.is_exact_zero())
        nbar = [(a.unit % p if not a.is_exact_zero() and a.valuation() == e else 0)
                for a in alphas]
        for (x0, y0), order in orders.items():
            if y0 == 0:
                continue
            mult = 0
            poly = pu.trim(nbar)
            while poly and pu.poly_eval_mod(poly, x0, p) == 0:
                q, r = pu.poly_divmod_mod(poly, [-x0, 1], p)
                assert r == []
                poly = q
                mult += 1
            assert order == mult, ((x0, y0), order, mult)


def test_reduce_rejects_zero():
    with pytest.raises(ZeroDifferential):
        reduce_and_order(SEXTIC_IQ, [PadicNumber.exact_zero(7)] * 3, 7)


def test_residues_sum_to_zero():
    rng = random.Random(9)
    for _ in range(20):
        g = rng.choice([1, 2])
        coeffs = [rng.randrange(-6, 7) for _ in range(2 * g + 2)] + [rng.choice([1, 4, 9])]
        try:
            curve = HyperellipticCurve(coeffs)
        except ValueError:
            continue
        p = 11
        alphas = padic_alphas(p, [rng.randrange(-20, 21) for _ in range(g + 1)], 14)
        if all(a.is_zeroish() for a in alphas):
            continue
        res = residues_at_infinity(curve, alphas, 12)
        assert (res[0] + res[1]).is_zeroish()
        # only the top basis element has a pole: residue = -alpha_g / sqrt(lc)
        lead_root = isqrt(curve.leading)
        expect = -alphas[g] / PadicNumber.from_int(p, lead_root, 14)
        assert res[0] == expect


def test_residues_need_rational_cusps():
    with pytest.raises(UnsupportedCuspField):
        residues_at_infinity(HyperellipticCurve([1, 1, 0, 0, 3]),
                             padic_alphas(11, [1, 1]), 10)


def test_basis_dimension_matches_two_cusp_count():
    inv = cusp_invariants(QUARTIC)
    assert QUARTIC.genus + 1 == QUARTIC.genus + inv.n - 1


# ---------------------------------------------------------------------------
# brute-force search
# ---------------------------------------------------------------------------

def test_search_quartic():
    pts = brute_force_integral_points(QUARTIC, 1000)
    assert pts == sorted([(Fraction(0), Fraction(0)),
                          (Fraction(-1), Fraction(1)), (Fraction(-1), Fraction(-1)),
                          (Fraction(4), Fraction(26)), (Fraction(4), Fraction(-26))])


def test_search_sextic():
    pts = brute_force_integral_points(SEXTIC, 1000)
    expect = sorted([(Fraction(0), Fraction(2)), (Fraction(0), Fraction(-2)),
                     (Fraction(7), Fraction(341)), (Fraction(7), Fraction(-341)),
                     (Fraction(-7), Fraction(341)), (Fraction(-7), Fraction(-341))])
    assert pts == expect


def test_search_x4_plus_1():
    curve = HyperellipticCurve([1, 0, 0, 0, 1])
    pts = brute_force_integral_points(curve, 10)
    assert pts == [(Fraction(0), Fraction(-1)), (Fraction(0), Fraction(1))]


def test_search_s_integral():
    curve = HyperellipticCurve([1, 0, 0, 0, 1])
    pts = brute_force_integral_points(curve, 20, s_primes=(2,))
    assert (Fraction(0), Fraction(1)) in pts
    for (x, y) in pts:
        assert y * y == curve.f_eval(x)
        assert all(q == 2 for q in _prime_factors(x.denominator))


def _prime_factors(n):
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def test_weierstrass_disc_integral_is_odd():
    # the hyperelliptic involution fixes (0,0) and negates the basis
    # differentials, so the antiderivative on a Weierstrass disc is odd
    from affchab.hyperell import combine_differential
    p = 5
    disc = ResidueDisc(QUARTIC, p, 0, 0)
    exps = expand_basis_differentials(QUARTIC, disc, 12, 12)
    alphas = unit_alphas(p, 1, 16)
    F = combine_differential(QUARTIC, alphas, exps).antiderivative()
    for t in (1, 2, 3):
        plus = F.evaluate(PadicNumber.from_int(p, t, 18))
        minus = F.evaluate(PadicNumber.from_int(p, -t, 18))
        assert plus == -minus
        assert not plus.is_zeroish()
    assert tiny_integral(QUARTIC, alphas, (0, 0), (0, 0), p).is_zeroish()
