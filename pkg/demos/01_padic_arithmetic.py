#!/usr/bin/env python3
# A tour of the p-adic layer: capped-precision arithmetic, the Iwasawa
# logarithm, Hensel square roots, formal integration, and certified
# zero counts for power series.

from fractions import Fraction

from affchab import (
    PadicNumber,
    PadicSeries,
    hensel_sqrt,
    iwasawa_log,
    strassmann_zero_count,
)

p = 7
PREC = 10

x = PadicNumber.from_int(p, 2, PREC)
y = PadicNumber.from_int(p, 5, PREC)
print("2 + 5 at p=7:", x + y)            # carries into valuation 1
print("1/2 at p=7:  ", PadicNumber.from_int(p, 1, PREC) / x)

half = PadicNumber.from_fraction(p, Fraction(1, 2), PREC)
print("1/2 times 2 =", half * x)

# the logarithm kills powers of p and is a homomorphism on units
u = PadicNumber.from_int(p, 3, PREC)
v = PadicNumber.from_int(p, 10, PREC)
print("log(p) =", iwasawa_log(PadicNumber.from_int(p, p, PREC)))
print("log(3*10) - log(3) - log(10) =",
      iwasawa_log(u * v) - iwasawa_log(u) - iwasawa_log(v))

# square roots pick the branch matching a mod-p seed
s = hensel_sqrt(PadicNumber.from_int(p, 2, PREC), 3)
print("sqrt(2) with seed 3:", s)
print("square back:        ", s * s)

# formal integration: each coefficient a_n / (n+1) loses v_p(n+1) digits
f = PadicSeries.from_fractions(p, [1, 1, 1, 1, 1, 1, 1], PREC)
F = f.antiderivative()
print("integral of the truncated geometric series, first digits:",
      [c.digits(2) if not c.is_exact_zero() else [0] for c in F.coeffs[:5]],
      "...")
print("coefficient of t^7 keeps one digit less:",
      F.coeffs[7].abs_prec, "vs", PREC)

# Strassmann: the series below has its minimal valuation only at t^1 and
# a tail bound above it, so it has exactly one zero in Z_p (at t = 0)
coeffs = [PadicNumber.exact_zero(p)]
for val in (3, 4, 5, 6, 11, 8):
    coeffs.append(PadicNumber.from_int(p, p**val, val + 6))
series = PadicSeries(p, coeffs, tail_base=8, tail_slope=0)
print("zero count on Z_p:", strassmann_zero_count(series, "Zp"))

# a split pair of unit roots is certified as exactly two zeros
g = PadicSeries.from_fractions(5, [5, -6, 1], 12)   # (t-1)(t-5)
print("zeros of (t-1)(t-5) in Z_5:", strassmann_zero_count(g, "Zp"))
print("zeros of (t-1)(t-5) in 5Z_5:", strassmann_zero_count(g, "pZp"))
