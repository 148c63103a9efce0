"""Annihilating differentials, disc sweeps, and point-count bounds.

The annihilating differential is a kernel vector of a period matrix whose
rows are integrals between known generators, computed by p-adic elimination
with largest-absolute-value pivoting.  Its integral, normalized per
reduction-type class, is expanded on each residue disc and fed to the
Strassmann zero counter; the bound formulas turn fibre data and curve
invariants into explicit point-count bounds.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    ConditionFails,
    HypothesesFail,
    MissingFibre,
    ParseError,
    RankDeficientInput,
)
from .hyperell import (
    ResidueDisc,
    combine_differential,
    count_affine_points,
    expand_basis_differentials,
    points_mod_p,
    reduce_and_order,
)
from .modeldata import check_d_transversal, liu_star_checks
from .padic import PadicNumber, strassmann_zero_count
from .selmer import chabauty_condition, chabauty_condition_uniform


# ---------------------------------------------------------------------------
# period matrices and kernel vectors
# ---------------------------------------------------------------------------


@dataclass
class PeriodMatrix:
    """Rows of integrals from the base point to known points, as p-adic
    numbers with tracked precision."""
    prime: int
    rows: list            # list of lists of PadicNumber
    labels: list = field(default_factory=list)

    @classmethod
    def from_json(cls, data):
        obj = json.loads(data) if isinstance(data, (bytes, str)) else data
        try:
            p = int(obj["prime"])
            rows = [[PadicNumber.from_string(p, s) for s in row["values"]]
                    for row in obj["rows"]]
            labels = [str(row.get("point_label", i))
                      for i, row in enumerate(obj["rows"])]
            if any(len(r) != int(obj["basis_size"]) for r in rows):
                raise ParseError("row length differs from basis_size")
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"malformed period fixture: {e!r}") from e
        return cls(prime=p, rows=rows, labels=labels)


def annihilating_differential(periods, normalize=True, allow_rank_deficit=False):
    """A nonzero kernel vector of the period matrix.

    Elimination pivots on the entry of minimal valuation (largest p-adic
    absolute value), the numerically robust choice.  Returns (alphas,
    info) where info records the pivot valuations and whether the rows
    were dependent at working precision; in that case a larger kernel
    exists and the first basis vector is returned (or, with
    ``allow_rank_deficit`` false, RankDeficientInput is raised).
    """
    rows = [list(r) for r in periods.rows]
    if not rows:
        raise ValueError("empty period matrix")
    ncols = len(rows[0])
    if len(rows) >= ncols:
        raise ValueError("need fewer rows than columns for a guaranteed kernel")
    p = periods.prime
    pivots = {}  # column -> row index
    used_rows = set()
    info = {"pivot_valuations": [], "rank_deficient": False}
    for _ in range(len(rows)):
        best = None
        for i, row in enumerate(rows):
            if i in used_rows:
                continue
            for j, x in enumerate(row):
                if j in pivots or x.is_zeroish():
                    continue
                if best is None or x.valuation() < best[2]:
                    best = (i, j, x.valuation())
        if best is None:
            info["rank_deficient"] = True
            break
        i, j, val = best
        info["pivot_valuations"].append(val)
        used_rows.add(i)
        pivots[j] = i
        for k, row in enumerate(rows):
            if k == i or row[j].is_zeroish():
                continue
            factor = row[j] / rows[i][j]
            rows[k] = [a - factor * b for a, b in zip(row, rows[i])]
    if info["rank_deficient"] and not allow_rank_deficit:
        raise RankDeficientInput(
            "period rows are dependent at working precision")
    free = [j for j in range(ncols) if j not in pivots]
    j0 = free[-1]
    alphas = [PadicNumber.exact_zero(p)] * ncols
    one_prec = min((rows[i][j].abs_prec for j, i in pivots.items()),
                   default=12)
    alphas[j0] = PadicNumber.from_int(p, 1, max(int(one_prec), 2))
    for j, i in pivots.items():
        alphas[j] = -(rows[i][j0] / rows[i][j])
    if normalize:
        lead = next((a for a in alphas if not a.is_zeroish()), None)
        alphas = [a / lead for a in alphas]
    # the kernel property, certified at the attained precision
    for i, row in enumerate(periods.rows):
        acc = PadicNumber.exact_zero(p)
        for a, x in zip(alphas, row):
            acc = acc + a * x
        if not acc.is_zeroish():
            raise ArithmeticError(f"row {i} is not annihilated: {acc!r}")
    return alphas, info


@dataclass
class ChabautyFunction:
    """Integral of a fixed differential minus a per-class constant."""
    prime: int
    alphas: list                 # PadicNumber coefficients on x^j dx/y
    constant: PadicNumber = None

    def __post_init__(self):
        if self.constant is None:
            self.constant = PadicNumber.exact_zero(self.prime)
        if all(a.is_zeroish() for a in self.alphas):
            raise ValueError("the differential must be nonzero")


@dataclass
class AlphaFixture:
    prime: int
    precision: int
    alphas: list
    constant: PadicNumber
    known_points: list    # dicts with keys label, x, y_seed


def load_alpha_fixture(data):
    """Fixture JSON: either explicit "alpha" strings or period "rows".

    Known points are (x, y_seed) pairs: the y-coordinate is pinned down by
    its residue mod p (it need not be rational).
    """
    obj = json.loads(data) if isinstance(data, (bytes, str)) else data
    try:
        p = int(obj["prime"])
        prec = int(obj["precision"])
        if "alpha" in obj:
            alphas = [PadicNumber.from_string(p, s) for s in obj["alpha"]]
        else:
            periods = PeriodMatrix.from_json(obj)
            alphas, _ = annihilating_differential(periods)
        constant = PadicNumber.from_string(p, obj.get("constant", "zero"))
        known = [{"label": str(k.get("label", i)),
                  "x": Fraction(k["x"]),
                  "y_seed": int(k["y_seed"])}
                 for i, k in enumerate(obj.get("known_points", []))]
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed fixture: {e!r}") from e
    return AlphaFixture(prime=p, precision=prec, alphas=alphas,
                        constant=constant, known_points=known)


# ---------------------------------------------------------------------------
# per-disc series and the sweep
# ---------------------------------------------------------------------------


def rho_series_on_disc(curve, fn, disc, base_value=None, n_terms=12, prec=None):
    """The function's power series in the disc parameter.

    ``base_value`` is the integral from the global base point to the disc
    center (zero when the center is the base point or a known zero of the
    function); the constant term of the result is base_value - c.
    """
    p = fn.prime
    if prec is None:
        prec = max((a.abs_prec - a.vmin for a in fn.alphas
                    if not a.is_zeroish()), default=12)
    exps = expand_basis_differentials(curve, disc, n_terms, prec)
    omega = combine_differential(curve, fn.alphas, exps)
    series = omega.antiderivative()
    shift = (base_value if base_value is not None
             else PadicNumber.exact_zero(p)) - fn.constant
    series.coeffs[0] = series.coeffs[0] + shift
    return series


@dataclass
class DiscVerdict:
    disc_label: str
    anchors: list
    verdict: object           # StrassmannResult or None
    reason: str = ""


@dataclass
class SweepReport:
    verdicts: list
    exact_zeros: int          # total over discs with an exact verdict
    upper_zeros: int          # total counting at-most verdicts as well
    all_exact: bool
    inconclusive: list
    component_bound: int      # #(C cap Y)(F_p) + n_C from the reduction
    orders: dict

    @property
    def all_conclusive(self):
        return not self.inconclusive


def strassmann_sweep(curve, fn, p, known_points, n_terms=12, prec=None):
    """Zero counts of the function on every affine residue disc.

    Discs are anchored at supplied known points (the function vanishes at
    every known integral point of the class, so the series has constant
    term zero there).  Discs without an anchor cannot be expanded around a
    zero and come back inconclusive.
    """
    anchors = {}
    for kp in known_points:
        red = (int(Fraction(kp["x"]) % p), kp["y_seed"] % p)
        anchors.setdefault(red, []).append(kp)
    n_c, orders = reduce_and_order(curve, fn.alphas, p)
    verdicts = []
    exact_total = 0
    upper_total = 0
    all_exact = True
    inconclusive = []
    for (x0, y0) in points_mod_p(curve, p):
        label = f"({x0},{y0})"
        here = anchors.get((x0, y0), [])
        if not here:
            verdicts.append(DiscVerdict(label, [], None, "no anchor point"))
            inconclusive.append(label)
            all_exact = False
            continue
        kp = here[0]
        disc = ResidueDisc(curve, p, x0, y0, center_x=kp["x"],
                           y_seed=kp["y_seed"])
        series = rho_series_on_disc(curve, fn, disc, n_terms=n_terms,
                                    prec=prec)
        result = strassmann_zero_count(series, "Zp")
        verdicts.append(DiscVerdict(label, [k["label"] for k in here], result))
        if result.kind == "exact":
            exact_total += result.count
            upper_total += result.count
        elif result.kind == "at_most":
            upper_total += result.count
            all_exact = False
        else:
            inconclusive.append(label)
            all_exact = False
    count = count_affine_points(curve, p)
    return SweepReport(
        verdicts=verdicts,
        exact_zeros=exact_total,
        upper_zeros=upper_total,
        all_exact=all_exact,
        inconclusive=inconclusive,
        component_bound=count + n_c,
        orders=orders,
    )


# ---------------------------------------------------------------------------
# explicit bounds
# ---------------------------------------------------------------------------


def bound_sharp_hyperelliptic(curve, p, mw_rank):
    """#Y(F_p) + 2g for monic even-degree curves passing the reduction
    hypotheses at every prime, assuming the rank equals the genus."""
    report = liu_star_checks(curve.f)
    report.raise_if_failed()
    g = curve.genus
    if p <= 2 * g + 2:
        raise HypothesesFail(f"p = {p} is not > 2g+2 = {2 * g + 2}")
    if not curve.has_good_reduction(p):
        raise HypothesesFail(f"f is not separable modulo {p}")
    if mw_rank != g:
        raise HypothesesFail(
            f"rank {mw_rank} != genus {g}; the sharp bound needs r = g")
    return count_affine_points(curve, p) + 2 * g


def _require_base_conditions(fibres, p, inv, s_primes):
    if p in s_primes:
        raise ConditionFails("the working prime cannot lie in S")
    if p not in fibres:
        raise MissingFibre(f"no fibre supplied at the working prime {p}")
    for q in s_primes:
        if q not in fibres:
            raise MissingFibre(f"no fibre supplied for S-prime {q}")
    for q in s_primes:
        if not check_d_transversal(fibres[q]):
            raise ConditionFails(f"fibre at {q} is not transversal")
    if not chabauty_condition_uniform(inv, len(s_primes)):
        raise ConditionFails(
            "the uniform rank inequality fails for this S")
    if p <= 2 * inv.genus + inv.n:
        raise ConditionFails(
            f"p = {p} is not > 2g+n = {2 * inv.genus + inv.n}")


def bound_general(fibres, p, inv, s_primes=()):
    """Base count times the product of per-prime reduction-type counts."""
    s_primes = set(s_primes)
    _require_base_conditions(fibres, p, inv, s_primes)
    base = fibres[p].smooth_noncusp_total() + 2 * inv.genus - 2 + inv.n
    total = base
    for q, fibre in fibres.items():
        if q == p:
            continue
        n_ell = fibre.n_components_with_point()
        if q in s_primes:
            total *= n_ell + fibre.cuspidal_type_count()
        else:
            total *= n_ell
    return total


def bound_improved(fibres, p, inv, s_primes=()):
    """The refinement collapsing reduction types that share a function.

    Only primes where the boundary meets more than one component keep
    separate component types; elsewhere one cuspidal type covers them all.
    S-primes with no rational boundary point are treated as ordinary
    primes (points are automatically integral there).
    """
    s_primes = set(s_primes)
    _require_base_conditions(fibres, p, inv, s_primes)
    effective_s = {q for q in s_primes
                   if fibres[q].cuspidal_type_count() > 0}
    t_primes = {q for q, fibre in fibres.items()
                if q != p and len(fibre.components_meeting_boundary()) > 1}
    base = fibres[p].smooth_noncusp_total() + 2 * inv.genus - 2 + inv.n
    s_and_t = sorted(effective_s & t_primes)
    always = effective_s - t_primes

    def nprime(q):
        fibre = fibres[q]
        if q not in s_primes:
            return fibre.n_components_with_point()
        off = 0
        for c in fibre.components:
            if not c.has_smooth_point:
                continue
            carries = any(fibre.component_of_point(pid)[0] == c.id
                          for pid in fibre.smooth_cusp_points)
            if not carries:
                off += 1
        return off

    total = 0
    for mask in range(2 ** len(s_and_t)):
        chosen = {q for bit, q in enumerate(s_and_t) if mask >> bit & 1}
        s0 = always | chosen
        term = 1
        for q in s0:
            term *= fibres[q].cuspidal_type_count()
        for q in sorted(t_primes - s0 - {p}):
            term *= nprime(q)
        total += term
    return base * total


def bound_fixed_type(fibre_at_p, component, inv, c_sigma=0):
    """Per-type bound: smooth points of the chosen component plus 2g-2+n."""
    if not chabauty_condition(inv, c_sigma):
        raise ConditionFails("the rank inequality fails for this type")
    p = fibre_at_p.prime
    if p <= 2 * inv.genus + inv.n:
        raise ConditionFails(
            f"p = {p} is not > 2g+n = {2 * inv.genus + inv.n}")
    comp = fibre_at_p.component(component)
    if comp.smooth_noncusp_point_count is None:
        raise MissingFibre(f"component {component} has no point count")
    return comp.smooth_noncusp_point_count + 2 * inv.genus - 2 + inv.n
