"""Finite-precision p-adic arithmetic and p-adic power series.

Values are stored as p^v * unit with the unit known modulo p^(abs_prec - v),
so every element carries its own absolute precision.  Arithmetic never
reports more digits than the inputs justify: sums keep the minimum of the
absolute precisions, products keep the minimum of the relative precisions.
The only exact element is the exact zero (valuation +infinity).

Power series carry one p-adic coefficient per listed exponent plus a proven
lower bound on the valuations of all unlisted tail coefficients.  The tail
bound is affine in the exponent: v(a_n) >= base + slope*(n - start).  A
positive slope is what makes formal integration keep a finite tail bound.
"""

from fractions import Fraction
from math import inf

from .errors import (
    DivisionByZero,
    EvenPrimeUnsupported,
    HypothesisViolated,
    NotASquare,
    PrecisionExhausted,
    PrimeMismatch,
)

NEG_INF = -inf


def vp_int(n, p):
    """Valuation of a nonzero integer at p."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_fraction(q, p):
    if q == 0:
        return inf
    q = Fraction(q)
    num, den = q.numerator, q.denominator
    if num % p == 0:
        return vp_int(num, p)
    if den % p == 0:
        return -vp_int(den, p)
    return 0


def _ilog(n, p):
    """floor(log_p(n)) for n >= 1."""
    e = 0
    while p ** (e + 1) <= n:
        e += 1
    return e


class PadicNumber:
    """An element of Q_p known modulo p^abs_prec.

    Normal form: valuation v (int), unit (int, coprime to p, reduced modulo
    p^(abs_prec - v)), abs_prec (int > v).  Two degenerate forms:

    * exact zero: v = +inf, unit = 0, abs_prec = +inf;
    * inexact zero O(p^N): v = N, unit = 0, abs_prec = N.  Nothing is known
      beyond "valuation >= N".
    """

    __slots__ = ("p", "v", "unit", "abs_prec")

    def __init__(self, p, v, unit, abs_prec):
        self.p = p
        self.v = v
        self.unit = unit
        self.abs_prec = abs_prec

    # -- constructors -------------------------------------------------------

    @classmethod
    def exact_zero(cls, p):
        return cls(p, inf, 0, inf)

    @classmethod
    def inexact_zero(cls, p, abs_prec):
        return cls(p, abs_prec, 0, abs_prec)

    @classmethod
    def from_int(cls, p, n, abs_prec):
        return cls.from_fraction(p, Fraction(n), abs_prec)

    @classmethod
    def from_fraction(cls, p, q, abs_prec):
        q = Fraction(q)
        if q == 0:
            return cls.exact_zero(p)
        if abs_prec == inf:
            raise ValueError("nonzero values need a finite precision")
        v = vp_fraction(q, p)
        if v >= abs_prec:
            return cls.inexact_zero(p, abs_prec)
        u = q / Fraction(p) ** v
        rel = abs_prec - v
        unit = u.numerator * pow(u.denominator, -1, p**rel) % p**rel
        return cls(p, v, unit, abs_prec)

    @classmethod
    def from_string(cls, p, text):
        """Parse the wire format "v:d0,d1,..." (digits base p, low to high).

        "zero" denotes the exact zero.  Trailing zero digits are significant:
        the value is asserted modulo p^(v + number of digits).
        """
        text = text.strip()
        if text == "zero":
            return cls.exact_zero(p)
        head, _, tail = text.partition(":")
        v = int(head)
        digits = [int(d) for d in tail.split(",") if d.strip() != ""]
        if any(d < 0 or d >= p for d in digits):
            raise ValueError(f"digit out of range for p={p}: {text!r}")
        unit = sum(d * p**i for i, d in enumerate(digits))
        if unit == 0:
            return cls.inexact_zero(p, v + len(digits))
        return cls(p, v, unit, v + len(digits)).normalized()

    def normalized(self):
        """Strip p-powers absorbed into the unit; canonicalize zeros."""
        if self.unit == 0:
            if self.v == inf:
                return self
            return PadicNumber.inexact_zero(self.p, self.abs_prec)
        shift = vp_int(self.unit, self.p)
        v = self.v + shift
        if v >= self.abs_prec:
            return PadicNumber.inexact_zero(self.p, self.abs_prec)
        unit = self.unit // self.p**shift % self.p ** (self.abs_prec - v)
        if unit == 0:
            return PadicNumber.inexact_zero(self.p, self.abs_prec)
        return PadicNumber(self.p, v, unit, self.abs_prec)

    # -- predicates and accessors -------------------------------------------

    def is_exact_zero(self):
        return self.v == inf

    def is_zeroish(self):
        """No nonzero digit is known (exact or inexact zero)."""
        return self.unit == 0

    @property
    def vmin(self):
        """Certified lower bound on the valuation (exact unless zeroish)."""
        return self.v

    def valuation(self):
        if self.unit == 0 and self.v != inf:
            raise PrecisionExhausted(f"valuation only known to be >= {self.v}")
        return self.v

    def rel_prec(self):
        if self.unit == 0:
            return 0
        return self.abs_prec - self.v

    def lift_fraction(self):
        """A rational representative (the stored digits, nothing more)."""
        if self.unit == 0:
            return Fraction(0)
        return Fraction(self.p) ** self.v * self.unit

    def digits(self, count=None):
        n = self.rel_prec() if count is None else count
        u = self.unit
        out = []
        for _ in range(n):
            u, d = divmod(u, self.p)
            out.append(d)
        return out

    def to_string(self):
        if self.is_exact_zero():
            return "zero"
        return f"{self.v}:" + ",".join(str(d) for d in self.digits())

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, PadicNumber):
            raise TypeError(f"expected PadicNumber, got {type(other)!r}")
        if self.p != other.p:
            raise PrimeMismatch(f"primes {self.p} and {other.p}")

    def __add__(self, other):
        self._check(other)
        p = self.p
        if self.is_exact_zero():
            return other
        if other.is_exact_zero():
            return self
        prec = min(self.abs_prec, other.abs_prec)
        w = min(self.v, other.v)
        mod = p ** (prec - w)
        s = (self.unit * p ** (self.v - w) + other.unit * p ** (other.v - w)) % mod
        return PadicNumber(p, w, s, prec).normalized()

    def __neg__(self):
        if self.unit == 0:
            return self
        rel = self.abs_prec - self.v
        return PadicNumber(self.p, self.v, (-self.unit) % self.p**rel,
                           self.abs_prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        p = self.p
        if self.is_exact_zero() or other.is_exact_zero():
            return PadicNumber.exact_zero(p)
        if self.unit == 0 or other.unit == 0:
            return PadicNumber.inexact_zero(p, self.v + other.v)
        rel = min(self.rel_prec(), other.rel_prec())
        v = self.v + other.v
        unit = self.unit * other.unit % p**rel
        return PadicNumber(p, v, unit, v + rel).normalized()

    def __truediv__(self, other):
        self._check(other)
        p = self.p
        if other.is_exact_zero():
            raise DivisionByZero("division by exact zero")
        if other.unit == 0:
            raise PrecisionExhausted(
                "division by a value indistinguishable from zero")
        if self.is_exact_zero():
            return PadicNumber.exact_zero(p)
        if self.unit == 0:
            return PadicNumber.inexact_zero(p, self.v - other.v)
        rel = min(self.rel_prec(), other.rel_prec())
        v = self.v - other.v
        unit = self.unit * pow(other.unit, -1, p**rel) % p**rel
        return PadicNumber(p, v, unit, v + rel)

    def __pow__(self, k):
        if self.is_exact_zero():
            if k <= 0:
                raise DivisionByZero("0 to a nonpositive power")
            return self
        if k == 0:
            return PadicNumber.from_int(self.p, 1, max(self.rel_prec(), 1))
        if k < 0:
            inv_prec = max(self.rel_prec(), 1) - min(self.v, 0) * (-k) + 1
            one = PadicNumber.from_int(self.p, 1, inv_prec)
            return one / self ** (-k)
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def __eq__(self, other):
        """Congruence: no digit distinguishes the two values."""
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self.is_zeroish()
            prec = self.abs_prec
            if prec == inf:
                prec = vp_fraction(other, self.p) + 1
            other = PadicNumber.from_fraction(self.p, other, prec)
        if not isinstance(other, PadicNumber):
            return NotImplemented
        if self.p != other.p:
            return False
        return (self - other).is_zeroish()

    __hash__ = None

    def __repr__(self):
        if self.is_exact_zero():
            return "0 (exact)"
        if self.unit == 0:
            return f"O({self.p}^{self.abs_prec})"
        terms = [f"{d}*{self.p}^{self.v + i}"
                 for i, d in enumerate(self.digits()) if d != 0]
        return " + ".join(terms) + f" + O({self.p}^{self.abs_prec})"


def add(a, b):
    return a + b


def mul(a, b):
    return a * b


def div(a, b):
    return a / b


def neg(a):
    return -a


def iwasawa_log(a):
    """The branch of the p-adic logarithm with log(p) = 0.

    For a = p^v * u this is log(u), computed through w = u^(p-1) = 1 mod p
    and the series log(1 + z) = sum (-1)^(n+1) z^n / n.  The result is
    correct modulo p^rel where rel is the input's relative precision.
    """
    if a.is_exact_zero():
        raise DivisionByZero("log of zero")
    if a.unit == 0:
        raise PrecisionExhausted("log of a value with no known digits")
    p = a.p
    rel = a.rel_prec()
    w = pow(a.unit, p - 1, p**rel)
    z = w - 1  # v_p(z) >= 1
    if z == 0:
        return PadicNumber.inexact_zero(p, rel)
    # guard digits absorb the v_p(n) losses of the representatives
    loss = _ilog(rel + 2, p) + 1
    guard = rel + loss
    mod = p**guard
    acc = 0
    zpow = 1
    for n in range(1, guard + 2):
        zpow = zpow * z % mod
        if zpow == 0:
            break
        e = vp_int(n, p) if n % p == 0 else 0
        term = zpow // p**e * pow(n // p**e, -1, mod) % mod
        acc = (acc - term if n % 2 == 0 else acc + term) % mod
    result = PadicNumber(p, 0, acc % p**rel, rel).normalized()
    pm1 = PadicNumber.from_int(p, p - 1, rel + 1)
    return result / pm1


def hensel_sqrt(a, seed):
    """Square root of a, choosing the branch with reduction seed mod p.

    Requires p odd, even valuation, and a square unit part.  The result s
    satisfies s*s == a to the input's precision.
    """
    p = a.p
    if p == 2:
        raise EvenPrimeUnsupported("square roots need p odd")
    if a.is_exact_zero():
        return a
    if a.unit == 0:
        raise PrecisionExhausted("sqrt of a value with no known digits")
    if a.v % 2 != 0:
        raise NotASquare(f"odd valuation {a.v}")
    seed = seed % p
    if seed == 0 or seed * seed % p != a.unit % p:
        if pow(a.unit % p, (p - 1) // 2, p) != 1:
            raise NotASquare(f"unit {a.unit % p} is not a residue mod {p}")
        raise NotASquare(f"seed {seed} does not square to the unit mod {p}")
    rel = a.rel_prec()
    x = seed
    k = 1
    while k < rel:
        k = min(2 * k, rel)
        m = p**k
        x = (x + a.unit % m * pow(x, -1, m)) * pow(2, -1, m) % m
    return PadicNumber(p, a.v // 2, x, a.v // 2 + rel)


def newton_bound_mplus1(m, p):
    """Zero bound m+1 for integrals whose derivative vanishes to order m.

    Valid only in the range m < p - 2.
    """
    if m < 0:
        raise HypothesisViolated("vanishing order must be nonnegative")
    if m >= p - 2:
        raise HypothesisViolated(f"m = {m} is not < p - 2 = {p - 2}")
    return m + 1


# ---------------------------------------------------------------------------
# power series
# ---------------------------------------------------------------------------


class PadicSeries:
    """A power series with PadicNumber coefficients and a tail bound.

    ``coeffs[n]`` is the coefficient of t^n.  For unlisted exponents
    n >= len(coeffs) the guarantee is v(a_n) >= tail_base +
    tail_slope*(n - len(coeffs)).  ``tail_base = -inf`` means no tail
    information; ``tail_base = +inf`` means the series is a polynomial.
    """

    __slots__ = ("p", "coeffs", "tail_base", "tail_slope")

    def __init__(self, p, coeffs, tail_base=inf, tail_slope=0):
        self.p = p
        self.coeffs = list(coeffs)
        self.tail_base = tail_base
        self.tail_slope = tail_slope

    @classmethod
    def from_fractions(cls, p, values, abs_prec, tail_base=inf, tail_slope=0):
        coeffs = [PadicNumber.from_fraction(p, q, abs_prec) for q in values]
        return cls(p, coeffs, tail_base, tail_slope)

    def __len__(self):
        return len(self.coeffs)

    def tail_at(self, n):
        """Certified valuation bound for coefficient n (listed or not)."""
        if n < len(self.coeffs):
            return self.coeffs[n].vmin
        if self.tail_base == NEG_INF or self.tail_base == inf:
            return self.tail_base
        return self.tail_base + self.tail_slope * (n - len(self.coeffs))

    @property
    def tail_valuation_bound(self):
        """Flat lower bound for all unlisted coefficients."""
        return self.tail_base

    def truncate(self, n):
        """Keep exponents < n; dropped coefficients join the tail with
        their own certified bounds, so the bound stays valid."""
        if n >= len(self.coeffs):
            return self
        dropped = [c.vmin for c in self.coeffs[n:]]
        base = min(dropped + [self.tail_base])
        return PadicSeries(self.p, self.coeffs[:n], base, 0)

    def __add__(self, other):
        if self.p != other.p:
            raise PrimeMismatch(f"primes {self.p} and {other.p}")
        n = min(len(self.coeffs), len(other.coeffs))
        a, b = self.truncate(n), other.truncate(n)
        coeffs = [x + y for x, y in zip(a.coeffs, b.coeffs)]
        base = min(a.tail_base, b.tail_base)
        slope = min(a.tail_slope, b.tail_slope)
        return PadicSeries(self.p, coeffs, base, slope)

    def scale(self, c):
        """Multiply by a single p-adic number."""
        coeffs = [c * x for x in self.coeffs]
        if c.is_exact_zero():
            return PadicSeries(self.p, coeffs, inf, 0)
        if self.tail_base == NEG_INF or self.tail_base == inf:
            return PadicSeries(self.p, coeffs, self.tail_base, self.tail_slope)
        return PadicSeries(self.p, coeffs, self.tail_base + c.vmin,
                           self.tail_slope)

    def derivative(self):
        p = self.p
        coeffs = []
        for n, c in enumerate(self.coeffs[1:], start=1):
            if c.is_exact_zero():
                coeffs.append(c)
            else:
                coeffs.append(c * PadicNumber.from_int(
                    p, n, c.abs_prec + vp_int(n, p) + 1))
        # coefficient n of f' is (n+1) a_{n+1}, no worse than a_{n+1}
        return PadicSeries(p, coeffs, self.tail_base, self.tail_slope)

    def antiderivative(self):
        """Termwise integral with constant term exact zero.

        Coefficient a_n / (n+1) loses v_p(n+1) digits.  The new tail bound
        minimizes  old_bound(m-1) - v_p(m)  over unlisted exponents m; a
        tail slope >= 1 keeps this finite (the candidate minimizers are the
        smallest multiples of p^e at or beyond the truncation point).
        """
        p = self.p
        out = [PadicNumber.exact_zero(p)]
        for n, c in enumerate(self.coeffs):
            if c.is_exact_zero():
                out.append(c)
            else:
                d = PadicNumber.from_int(p, n + 1,
                                         c.abs_prec + vp_int(n + 1, p) + 1)
                out.append(c / d)
        if self.tail_base == inf:
            return PadicSeries(p, out, inf, 0)
        if self.tail_base == NEG_INF or self.tail_slope < 1:
            # flat finite tails give no uniform bound after dividing by m
            return PadicSeries(p, out, NEG_INF, 0)
        L = len(out)  # first unlisted exponent of the integral
        best = None
        for e in range(_ilog(max(L, 1), p) + 2):
            pe = p**e
            m = pe * -(-L // pe)  # smallest multiple of p^e that is >= L
            val = self.tail_at(m - 1) - e
            if best is None or val < best:
                best = val
        return PadicSeries(p, out, best, 0)

    def multiply(self, other, order):
        """Truncated product up to exponent < order.  Coefficients beyond a
        polynomial tail count as zero; anything else must be listed."""
        if self.p != other.p:
            raise PrimeMismatch(f"primes {self.p} and {other.p}")

        def coeff(s, i):
            if i < len(s.coeffs):
                return s.coeffs[i]
            if s.tail_base == inf:
                return None  # exact zero
            raise PrecisionExhausted(
                "product needs coefficients beyond the listed range")

        out = []
        for k in range(order):
            acc = PadicNumber.exact_zero(self.p)
            for i in range(k + 1):
                a = coeff(self, i)
                b = coeff(other, k - i)
                if a is None or b is None:
                    continue
                acc = acc + a * b
            out.append(acc)
        return PadicSeries(self.p, out, NEG_INF, 0)

    def evaluate(self, t):
        """Evaluate at t with v(t) >= 0; the tail enters as O(p^bound)."""
        if t.vmin < 0:
            raise ValueError("series evaluation needs v(t) >= 0")
        p = self.p
        acc = PadicNumber.exact_zero(p)
        tpow = None
        for c in self.coeffs:
            if tpow is None:
                acc = acc + c
                tpow = t
            else:
                acc = acc + c * tpow
                tpow = tpow * t
        if self.tail_base == inf:
            return acc
        if self.tail_base == NEG_INF:
            raise PrecisionExhausted("evaluation needs a tail bound")
        err = self.tail_base + len(self.coeffs) * t.vmin
        return acc + PadicNumber.inexact_zero(p, err)

    def valuation_profile(self):
        """Coefficient valuation bounds (inf marks exact zeros)."""
        return [c.vmin for c in self.coeffs]

    def __repr__(self):
        head = ", ".join(repr(c) for c in self.coeffs[:4])
        more = ", ..." if len(self.coeffs) > 4 else ""
        return (f"PadicSeries(p={self.p}, [{head}{more}], "
                f"tail>={self.tail_base}+{self.tail_slope}*k)")


def series_antiderivative(f):
    return f.antiderivative()


# ---------------------------------------------------------------------------
# Newton polygons and Strassmann counting
# ---------------------------------------------------------------------------


class NewtonPolygon:
    """Lower convex hull of the points (n, v(a_n)) of a series."""

    def __init__(self, points):
        pts = sorted((n, v) for n, v in points if v != inf)
        hull = []
        for pt in pts:
            while len(hull) >= 2:
                (x1, y1), (x2, y2) = hull[-2], hull[-1]
                # drop the middle point if it lies on or above the chord
                if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                    hull.pop()
                else:
                    break
            hull.append(pt)
        self.vertices = hull

    def slopes(self):
        """(slope, horizontal length) for each hull segment."""
        out = []
        for (x1, y1), (x2, y2) in zip(self.vertices, self.vertices[1:]):
            out.append((Fraction(y2 - y1, x2 - x1), x2 - x1))
        return out

    def value_at(self, x):
        """Hull ordinate at abscissa x (within the hull's span)."""
        vs = self.vertices
        if len(vs) == 1 and x == vs[0][0]:
            return Fraction(vs[0][1])
        for (x1, y1), (x2, y2) in zip(vs, vs[1:]):
            if x1 <= x <= x2:
                return Fraction(y1) + Fraction(y2 - y1, x2 - x1) * (x - x1)
        raise ValueError("abscissa outside hull span")


class StrassmannResult:
    """Verdict of a zero count: 'exact', 'at_most' or 'inconclusive'."""

    __slots__ = ("kind", "count", "reason")

    def __init__(self, kind, count=None, reason=""):
        self.kind = kind
        self.count = count
        self.reason = reason

    def __repr__(self):
        if self.kind == "exact":
            return f"Exact({self.count})"
        if self.kind == "at_most":
            return f"AtMost({self.count})"
        return f"Inconclusive({self.reason})"

    def __eq__(self, other):
        return (isinstance(other, StrassmannResult)
                and (self.kind, self.count) == (other.kind, other.count))

    __hash__ = None


def strassmann_zero_count(f, domain="Zp"):
    """Count zeros of f in Z_p or pZ_p, with certification.

    Zeros are counted with multiplicity.  Exact(k) is returned only when
    the count is forced by the data: the sup-norm index N is determined,
    the tail bound strictly exceeds the minimal (weighted) valuation, the
    leading coefficients up to the first known nonzero one are exact zeros,
    and every nonpositive-slope Newton polygon segment has horizontal
    length one (such a segment carries a single root, necessarily rational
    of nonnegative integral valuation).  AtMost(k) is the plain sup-norm
    bound; Inconclusive signals insufficient precision, never a wrong count.

    For the domain pZ_p the coefficient valuations are weighted by the
    exponent (substituting t -> p*t) before any comparison.
    """
    if domain not in ("Zp", "pZp"):
        raise ValueError(f"unknown domain {domain!r}")
    shift = 1 if domain == "pZp" else 0
    if f.tail_base == NEG_INF:
        return StrassmannResult("inconclusive", reason="no tail bound")

    known = {}    # index -> weighted valuation, exactly known
    unknown = {}  # index -> weighted lower bound only
    exact_zero = set()
    for n, c in enumerate(f.coeffs):
        if c.is_exact_zero():
            exact_zero.add(n)
        elif c.unit == 0:
            unknown[n] = c.vmin + shift * n
        else:
            known[n] = c.v + shift * n

    if not known:
        return StrassmannResult(
            "inconclusive", reason="no coefficient with a known nonzero digit")

    vmin = min(known.values())
    N = max(n for n, w in known.items() if w == vmin)

    # the tail and every merely-bounded coefficient beyond N must stay
    # strictly above the minimum, otherwise N itself is uncertain
    L = len(f.coeffs)
    if f.tail_base != inf:
        tail_min = f.tail_base + shift * L  # slope >= 0 and weights increase
        if tail_min <= vmin:
            return StrassmannResult(
                "inconclusive",
                reason=f"tail bound {tail_min} does not exceed minimum {vmin}")
    for n, b in unknown.items():
        if n > N and b <= vmin:
            return StrassmannResult(
                "inconclusive",
                reason=f"coefficient {n} is not resolved below the minimum")

    # ---- exactness certification ----
    lead = 0
    while lead in exact_zero:
        lead += 1
    if lead == min(known):
        if lead == N:
            return StrassmannResult("exact", N)
        poly = NewtonPolygon((n, w) for n, w in known.items()
                             if lead <= n <= N)
        segments = poly.slopes()
        ok = all(length == 1 for slope, length in segments if slope <= 0)
        ok = ok and all(slope <= 0 for slope, _ in segments)
        if ok:
            for n, b in unknown.items():
                if lead <= n <= N and b < poly.value_at(n):
                    ok = False
                    break
        if ok:
            return StrassmannResult("exact", N)
    return StrassmannResult("at_most", N)
