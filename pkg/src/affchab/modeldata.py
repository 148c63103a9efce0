"""Per-prime regular-model fibre data: schema, validation, synthesis.

A fibre file describes the special fibre of a regular model at one prime:
components with multiplicities, the intersection matrix, the points of the
normalized boundary closure with their cusp labels, residue degrees and
ramification indices, the intersection cycles of each component with the
boundary, and which boundary points are valid cuspidal reduction types.

Fibre data is an ingested artifact.  The only synthesized case is a prime
of good reduction of an even-degree hyperelliptic curve, where everything
is determined by counting points and factoring the cusp residue data.
"""

import json
from dataclasses import dataclass, field
from math import isqrt

from .errors import (
    BadReduction,
    HypothesesFail,
    InvariantViolation,
    ParseError,
)
from . import polyutil as pu
from . import ratlinalg as rl
from .hyperell import HyperellipticCurve, count_affine_points


@dataclass(frozen=True)
class Component:
    id: str
    multiplicity: int
    smooth_noncusp_point_count: int | None
    has_smooth_point: bool


@dataclass(frozen=True)
class DtildePoint:
    id: str
    cusp: str
    residue_degree: int
    ramification_index: int
    model_point: str  # boundary points sharing a model point collide there


@dataclass
class FibreData:
    prime: int
    residue_field_size: int
    components: list
    intersection_matrix: list       # rows of ints, ordered as components
    dtilde_points: list
    component_cusp_cycles: dict     # component id -> {point id: int}
    smooth_cusp_points: list        # point ids usable as cuspidal types
    base_point: dict | None = None  # {"component": id, "cusp_cycle": {...}}

    def component_ids(self):
        return [c.id for c in self.components]

    def component(self, cid):
        for c in self.components:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def point_ids(self):
        return [x.id for x in self.dtilde_points]

    def point(self, pid):
        for x in self.dtilde_points:
            if x.id == pid:
                return x
        raise KeyError(pid)

    def multiplicities(self):
        return [c.multiplicity for c in self.components]

    def cycle_of(self, cid):
        return dict(self.component_cusp_cycles.get(cid, {}))

    def boundary_cycle(self):
        """[D~ at this prime] = sum of e_x [x]."""
        return {x.id: x.ramification_index for x in self.dtilde_points}

    def components_meeting_boundary(self):
        return [cid for cid in self.component_ids()
                if any(v != 0 for v in self.cycle_of(cid).values())]

    def component_of_point(self, pid):
        """The components through a boundary point, from the cycles."""
        return [cid for cid in self.component_ids()
                if self.cycle_of(cid).get(pid, 0) != 0]

    def n_components_with_point(self):
        """Number of components off the boundary containing a smooth
        rational point (the per-prime reduction-type count n_ell)."""
        return sum(1 for c in self.components if c.has_smooth_point)

    def smooth_noncusp_total(self):
        total = 0
        for c in self.components:
            if c.smooth_noncusp_point_count is None:
                raise InvariantViolation(
                    "point-count-missing",
                    f"component {c.id} has no smooth point count")
            total += c.smooth_noncusp_point_count
        return total

    def cuspidal_type_count(self):
        return len(self.smooth_cusp_points)


@dataclass(frozen=True)
class BasePointData:
    """Reduction data of the base point at one prime."""
    component: str
    cusp_cycle: dict = field(default_factory=dict)

    def is_integral(self):
        return all(v == 0 for v in self.cusp_cycle.values())


@dataclass(frozen=True)
class NumberFieldInvariants:
    """Numerical invariants of the curve over its ground field."""
    degree: int        # [K:Q]
    unit_rank: int
    genus: int
    n: int             # geometric cusps
    num_cusps: int     # closed points of the boundary
    n1: int            # real cusp embeddings
    n2: int            # conjugate pairs of complex cusp embeddings
    mw_rank: int

    def __post_init__(self):
        if self.n1 + 2 * self.n2 != self.degree * self.n:
            raise InvariantViolation(
                "cusp-embedding-count",
                f"n1 + 2 n2 = {self.n1 + 2 * self.n2} != degree*n = "
                f"{self.degree * self.n}")

    @classmethod
    def from_dict(cls, d):
        try:
            return cls(degree=d.get("degree", 1),
                       unit_rank=d.get("unit_rank", 0),
                       genus=d["genus"],
                       n=d["n"],
                       num_cusps=d["num_cusps"],
                       n1=d["n1"],
                       n2=d["n2"],
                       mw_rank=d["mw_rank"])
        except KeyError as e:
            raise ParseError(f"invariants block is missing {e}") from e


# ---------------------------------------------------------------------------
# parsing and validation
# ---------------------------------------------------------------------------


def parse_fibre_file(data):
    """Parse and fully validate a fibre description (bytes, str or dict)."""
    if isinstance(data, (bytes, str)):
        try:
            obj = json.loads(data)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e}") from e
    else:
        obj = data
    try:
        components = [Component(
            id=str(c["id"]),
            multiplicity=int(c["multiplicity"]),
            smooth_noncusp_point_count=(
                None if c.get("smooth_noncusp_point_count") is None
                else int(c["smooth_noncusp_point_count"])),
            has_smooth_point=bool(c["has_smooth_point"]),
        ) for c in obj["components"]]
        points = [DtildePoint(
            id=str(x["id"]),
            cusp=str(x["cusp"]),
            residue_degree=int(x["residue_degree"]),
            ramification_index=int(x["ramification_index"]),
            model_point=str(x.get("model_point", x["id"])),
        ) for x in obj["dtilde_points"]]
        fibre = FibreData(
            prime=int(obj["prime"]),
            residue_field_size=int(obj["residue_field_size"]),
            components=components,
            intersection_matrix=[[int(v) for v in row]
                                 for row in obj["intersection_matrix"]],
            dtilde_points=points,
            component_cusp_cycles={
                str(cid): {str(pid): int(n) for pid, n in cyc.items()}
                for cid, cyc in obj["component_cusp_cycles"].items()},
            smooth_cusp_points=[str(x) for x in obj["smooth_cusp_points"]],
            base_point=obj.get("base_point"),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed fibre file: {e!r}") from e
    validate_fibre(fibre)
    return fibre


def validate_fibre(fibre):
    ids = fibre.component_ids()
    if len(set(ids)) != len(ids):
        raise InvariantViolation("component-ids-unique")
    pids = fibre.point_ids()
    if len(set(pids)) != len(pids):
        raise InvariantViolation("point-ids-unique")
    n = len(ids)
    m = fibre.intersection_matrix
    if len(m) != n or any(len(row) != n for row in m):
        raise InvariantViolation("matrix-shape",
                                 f"expected {n}x{n} intersection matrix")
    if not rl.is_symmetric(m):
        raise InvariantViolation("matrix-symmetric")
    mults = fibre.multiplicities()
    if any(mu < 1 for mu in mults):
        raise InvariantViolation("multiplicity-positive")
    if any(x != 0 for x in rl.matvec(rl.mat(m), mults)):
        raise InvariantViolation(
            "matrix-kills-multiplicities",
            "the complete fibre must intersect every vertical divisor "
            "trivially (M * m != 0)")
    if n - rl.rank(m) != 1:
        raise InvariantViolation(
            "matrix-corank", f"corank is {n - rl.rank(m)}, expected 1")
    for cid in fibre.component_cusp_cycles:
        if cid not in ids:
            raise InvariantViolation("cycle-component-known", cid)
        for pid in fibre.component_cusp_cycles[cid]:
            if pid not in pids:
                raise InvariantViolation("cycle-point-known", pid)
    # sum over components of m_V * (V.D~) equals the boundary cycle
    total = {pid: 0 for pid in pids}
    for c in fibre.components:
        for pid, k in fibre.cycle_of(c.id).items():
            if k < 0:
                raise InvariantViolation("cycle-nonnegative", pid)
            total[pid] += c.multiplicity * k
    expect = fibre.boundary_cycle()
    if total != expect:
        raise InvariantViolation(
            "cusp-cycle-total",
            f"sum m_V (V.D~) = {total} but [D~] = {expect}")
    for pid in fibre.smooth_cusp_points:
        if pid not in pids:
            raise InvariantViolation("smooth-cusp-point-known", pid)
        x = fibre.point(pid)
        if x.residue_degree != 1:
            raise InvariantViolation(
                "smooth-cusp-point-rational",
                f"{pid} has residue degree {x.residue_degree}")
    for c in fibre.components:
        if c.smooth_noncusp_point_count is not None:
            if c.has_smooth_point != (c.smooth_noncusp_point_count > 0):
                raise InvariantViolation(
                    "smooth-point-flag",
                    f"component {c.id} flag disagrees with its count")
            if c.multiplicity > 1 and c.smooth_noncusp_point_count > 0:
                raise InvariantViolation(
                    "smooth-point-multiplicity",
                    f"component {c.id} has multiplicity {c.multiplicity}")
    if fibre.base_point is not None:
        if fibre.base_point.get("component") not in ids:
            raise InvariantViolation("base-point-component")
        for pid in fibre.base_point.get("cusp_cycle", {}):
            if pid not in pids:
                raise InvariantViolation("base-point-cycle-point", pid)


def fibre_to_dict(fibre):
    out = {
        "prime": fibre.prime,
        "residue_field_size": fibre.residue_field_size,
        "components": [{
            "id": c.id,
            "multiplicity": c.multiplicity,
            "smooth_noncusp_point_count": c.smooth_noncusp_point_count,
            "has_smooth_point": c.has_smooth_point,
        } for c in fibre.components],
        "intersection_matrix": [list(row) for row in fibre.intersection_matrix],
        "dtilde_points": [{
            "id": x.id,
            "cusp": x.cusp,
            "residue_degree": x.residue_degree,
            "ramification_index": x.ramification_index,
            "model_point": x.model_point,
        } for x in fibre.dtilde_points],
        "component_cusp_cycles": {
            cid: dict(sorted(cyc.items()))
            for cid, cyc in sorted(fibre.component_cusp_cycles.items())},
        "smooth_cusp_points": list(fibre.smooth_cusp_points),
    }
    if fibre.base_point is not None:
        out["base_point"] = fibre.base_point
    return out


def serialize_fibre(fibre):
    """Canonical bytes: sorted keys, fixed separators."""
    return json.dumps(fibre_to_dict(fibre), sort_keys=True,
                      separators=(",", ":")).encode()


def base_point_of(fibre):
    """The base-point data stored in the fibre, or the integral default
    on the first component with a smooth point."""
    if fibre.base_point is not None:
        return BasePointData(
            component=fibre.base_point["component"],
            cusp_cycle=dict(fibre.base_point.get("cusp_cycle", {})))
    for c in fibre.components:
        if c.has_smooth_point:
            return BasePointData(component=c.id)
    raise InvariantViolation("no-component-for-base-point")


# ---------------------------------------------------------------------------
# synthesis for good-reduction hyperelliptic primes
# ---------------------------------------------------------------------------


def good_reduction_fibre(curve, q):
    """The fibre of the standard model of y^2 = f(x) at a good prime.

    One component of multiplicity 1 with matrix [0]; the boundary points
    come from factoring the cusp residue data modulo q.
    """
    if not isinstance(curve, HyperellipticCurve):
        raise BadReduction("synthesis needs an explicit hyperelliptic curve")
    if not curve.has_good_reduction(q):
        raise BadReduction(f"bad reduction at {q}")
    count = count_affine_points(curve, q)
    lc = curve.leading
    points = []
    r = isqrt(lc) if lc > 0 else -1
    if lc > 0 and r * r == lc:
        points = [DtildePoint("inf+", "inf+", 1, 1, "inf+"),
                  DtildePoint("inf-", "inf-", 1, 1, "inf-")]
    else:
        d = _squarefree_part(lc)
        sym = pu.legendre(d, q)
        if sym == 1:
            points = [DtildePoint("inf.1", "inf", 1, 1, "inf.1"),
                      DtildePoint("inf.2", "inf", 1, 1, "inf.2")]
        elif sym == -1:
            points = [DtildePoint("inf", "inf", 2, 1, "inf")]
        else:
            points = [DtildePoint("inf", "inf", 1, 2, "inf")]
    fibre = FibreData(
        prime=q,
        residue_field_size=q,
        components=[Component("C0", 1, count, count > 0)],
        intersection_matrix=[[0]],
        dtilde_points=points,
        component_cusp_cycles={
            "C0": {x.id: x.ramification_index for x in points}},
        smooth_cusp_points=[x.id for x in points
                            if x.residue_degree == 1
                            and x.ramification_index == 1],
    )
    validate_fibre(fibre)
    return fibre


def _squarefree_part(n):
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = sign
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e % 2 == 1:
            out *= d
        d += 1
    return out * n


# ---------------------------------------------------------------------------
# transversality check
# ---------------------------------------------------------------------------


def check_d_transversal(fibre):
    """True iff every listed cuspidal type meets the fibre transversally.

    For each listed smooth cusp point the total of m_V * (V.D~) over all
    boundary points sharing its model point, weighted by residue degrees,
    must be 1; the point must also lie on a single multiplicity-1
    component (smoothness of the fibre there).
    """
    for pid in fibre.smooth_cusp_points:
        x = fibre.point(pid)
        group = [y for y in fibre.dtilde_points
                 if y.model_point == x.model_point]
        total = 0
        for y in group:
            local = sum(c.multiplicity * fibre.cycle_of(c.id).get(y.id, 0)
                        for c in fibre.components)
            total += local * y.residue_degree
        if total != 1:
            return False
        carriers = fibre.component_of_point(pid)
        if len(carriers) != 1:
            return False
        if fibre.component(carriers[0]).multiplicity != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# the mod-2 and odd-prime hypotheses of the sharp hyperelliptic bound
# ---------------------------------------------------------------------------


@dataclass
class LiuReport:
    monic: bool
    squarefree: bool
    degree_ok: bool
    odd_prime_square: dict     # ell -> f mod ell is a square (must be False)
    f_top_odd: bool
    two_adic_ok: bool | None   # None when f_top_odd already settles it
    two_adic_detail: dict
    failures: list

    @property
    def passed(self):
        return not self.failures

    def raise_if_failed(self):
        if self.failures:
            raise HypothesesFail("; ".join(self.failures))


def liu_star_checks(f):
    """Check the mod-ell squareness and mod-2 normality hypotheses.

    f must be monic, squarefree, of even degree >= 4.  Reports, for every
    odd prime dividing disc(f), whether f is a square in F_ell[x] (any
    square fails the hypothesis); then either the subleading coefficient
    is odd, or f = 4P + Q^2 with Q monic of degree g+1 such that
    y^2 + Q y - P mod 2 has no polynomial root of degree <= g+1.
    """
    f = [int(c) for c in f]
    failures = []
    d = pu.degree(f)
    monic = f[-1] == 1 if f else False
    degree_ok = d >= 4 and d % 2 == 0
    disc = pu.discriminant(f)
    squarefree = disc != 0
    if not monic:
        failures.append("f is not monic")
    if not degree_ok:
        failures.append(f"degree {d} is not an even number >= 4")
    if not squarefree:
        failures.append("f is not squarefree")
    if failures:
        return LiuReport(monic, squarefree, degree_ok, {}, False, None,
                         {}, failures)

    odd_prime_square = {}
    for ell in sorted(_prime_factors(abs(int(disc)))):
        if ell == 2:
            continue
        sq = pu.is_square_poly_mod(f, ell)
        odd_prime_square[ell] = sq
        if sq:
            failures.append(f"f is a square modulo {ell}")

    g = d // 2 - 1
    f_top_odd = f[d - 1] % 2 == 1
    two_detail = {}
    two_ok = None
    if not f_top_odd:
        two_ok, two_detail = _two_adic_check(f, g)
        if not two_ok:
            failures.append("mod-2 condition fails: " +
                            two_detail.get("reason", ""))
    return LiuReport(monic, squarefree, degree_ok, odd_prime_square,
                     f_top_odd, two_ok, two_detail, failures)


def _two_adic_check(f, g):
    # squares in F_2[x] are exactly the polynomials in x^2
    fbar = pu.poly_mod(f, 2)
    if any(c for i, c in enumerate(fbar) if i % 2 == 1):
        return False, {"reason": "f mod 2 is not a square, no Q exists"}
    qbar = [fbar[2 * i] if 2 * i < len(fbar) else 0 for i in range(g + 2)]
    Q = list(qbar)  # the 0/1 lift; any other lift squares to the same mod 4
    q2 = [0] * (2 * g + 3)
    for i, a in enumerate(Q):
        for j, b in enumerate(Q):
            q2[i + j] += a * b
    diff = [fc - qc for fc, qc in zip(f + [0] * (2 * g + 3 - len(f)), q2)]
    if any(c % 4 != 0 for c in diff):
        return False, {"reason": "f - Q^2 is not divisible by 4 for the "
                                 "canonical lift of Q"}
    P = [c // 4 for c in diff]
    pbar = pu.poly_mod(P, 2)
    # search all 2^(g+2) candidate roots y0 of y^2 + Q y - P over F_2
    for mask in range(2 ** (g + 2)):
        y0 = [(mask >> i) & 1 for i in range(g + 2)]
        y2 = pu.poly_mul_mod(y0, y0, 2)
        qy = pu.poly_mul_mod(qbar, y0, 2)
        total = [0] * max(len(y2), len(qy), len(pbar), 1)
        for i, c in enumerate(y2):
            total[i] ^= c
        for i, c in enumerate(qy):
            total[i] ^= c
        for i, c in enumerate(pbar):
            total[i] ^= c
        if not any(total):
            return False, {"reason": f"y^2 + Qy - P has the root "
                                     f"{pu.trim(y0)} over F_2",
                           "Q": Q, "P": P}
    return True, {"Q": Q, "P": P}


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


# ---------------------------------------------------------------------------
# curve files
# ---------------------------------------------------------------------------


@dataclass
class CurveInput:
    """A parsed curve file: explicit hyperelliptic data and/or invariants."""
    curve: HyperellipticCurve | None
    genus: int
    invariants: NumberFieldInvariants | None
    label: str

    def require_curve(self):
        if self.curve is None:
            raise ParseError(f"curve file {self.label!r} has no equation")
        return self.curve


def parse_curve_file(data):
    """Curve JSON: {"f_coefficients": [...], "genus": g, "field": "Q"}.

    Optional keys: "label", and an "invariants" override block with the
    ground-field numerics {degree, unit_rank, genus, n, num_cusps, n1, n2,
    mw_rank} for curves whose boundary data is not derived from an
    equation (or lives over a larger field).
    """
    if isinstance(data, (bytes, str)):
        try:
            obj = json.loads(data)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e}") from e
    else:
        obj = data
    if obj.get("field", "Q") != "Q":
        raise ParseError("only curves over Q are supported")
    curve = None
    if "f_coefficients" in obj:
        try:
            curve = HyperellipticCurve(obj["f_coefficients"])
        except ValueError as e:
            raise ParseError(str(e)) from e
    genus = obj.get("genus", curve.genus if curve else None)
    if genus is None:
        raise ParseError("genus not given and no equation to derive it")
    if curve is not None and genus != curve.genus:
        raise ParseError(
            f"stated genus {genus} does not match the equation's "
            f"{curve.genus}")
    invariants = None
    if "invariants" in obj:
        inv = dict(obj["invariants"])
        inv.setdefault("genus", genus)
        invariants = NumberFieldInvariants.from_dict(inv)
    return CurveInput(curve=curve, genus=genus, invariants=invariants,
                      label=str(obj.get("label", "")))
