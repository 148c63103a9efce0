"""Intersection-theoretic maps on fibre data, exactly over Q.

Everything here is linear algebra against one FibreData: the generalised
inverse of minus the intersection matrix, the vertical correction Phi that
kills intersection numbers against every vertical divisor, intersection
cycles with the normalized boundary closure, and the local constraint sets
attached to reduction types.  Values in the quotient space (zero-cycles on
the boundary modulo its full fibre cycle) are kept in a canonical form so
equality is literal dictionary equality.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeNonZero, InvalidType, UnknownPoint
from . import ratlinalg as rl


def generalised_inverse(m):
    """A generalised inverse of -M and the common denominator of its entries.

    Returns (L, a) with (-M) L (-M) = (-M) exactly; L is the Moore-Penrose
    pseudoinverse of -M over Q, and a is the least common denominator of
    its entries.
    """
    neg = [[-Fraction(x) for x in row] for row in m]
    pinv = rl.moore_penrose(neg)
    check = rl.matmul(rl.matmul(neg, pinv), neg)
    if check != neg:
        raise ArithmeticError("pseudoinverse identity failed")
    return pinv, rl.common_denominator(pinv)


def perturbed_generalised_inverse(m, w):
    """A second generalised inverse: L + (I - L(-M)) W for any W.

    Used to confirm that downstream values do not depend on the choice.
    """
    neg = [[-Fraction(x) for x in row] for row in m]
    pinv, _ = generalised_inverse(m)
    n = len(m)
    resid = [[(1 if i == j else 0) - x for j, x in enumerate(row)]
             for i, row in enumerate(rl.matmul(pinv, neg))]
    return [[a + b for a, b in zip(r1, r2)]
            for r1, r2 in zip(pinv, rl.matmul(resid, rl.mat(w)))]


class VElement:
    """A class in Z_0(D~ at q) / [D~ at q] tensor Q, in canonical form.

    The representative is normalized so that its coefficient at the fibre's
    first boundary point vanishes; two classes are equal iff the canonical
    coefficient dictionaries are equal.
    """

    __slots__ = ("fibre", "coeffs")

    def __init__(self, fibre, cycle):
        self.fibre = fibre
        pids = fibre.point_ids()
        for pid in cycle:
            if pid not in pids:
                raise UnknownPoint(pid)
        full = {pid: Fraction(cycle.get(pid, 0)) for pid in pids}
        pivot = fibre.dtilde_points[0]
        lam = full[pivot.id] / pivot.ramification_index
        boundary = fibre.boundary_cycle()
        self.coeffs = {
            pid: full[pid] - lam * boundary[pid]
            for pid in pids if full[pid] - lam * boundary[pid] != 0}

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return (isinstance(other, VElement)
                and self.fibre is other.fibre
                and self.coeffs == other.coeffs)

    __hash__ = None

    def __add__(self, other):
        out = dict(self.coeffs)
        for pid, v in other.coeffs.items():
            out[pid] = out.get(pid, 0) + v
        return VElement(self.fibre, out)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for pid, v in other.coeffs.items():
            out[pid] = out.get(pid, 0) - v
        return VElement(self.fibre, out)

    def scaled(self, c):
        return VElement(self.fibre,
                        {pid: Fraction(c) * v for pid, v in self.coeffs.items()})

    def key(self):
        return tuple(sorted((pid, v) for pid, v in self.coeffs.items()))

    def __repr__(self):
        if not self.coeffs:
            return "[0]"
        body = " + ".join(f"{v}*[{pid}]" for pid, v in sorted(self.coeffs.items()))
        return f"[{body}]"


def velement(fibre, cycle):
    return VElement(fibre, cycle)


def sigma_principal(fibre, unit_valuations):
    """The boundary cycle of a principal divisor from its cusp valuations.

    ``unit_valuations`` maps boundary point ids to ord_x(f(Q)); the class
    is zero when the function restricts to 1 on the boundary.
    """
    return VElement(fibre, unit_valuations)


def compute_phi(fibre, component_vector, inverse=None):
    """The vertical correction Phi with M Phi = -E, exactly.

    ``component_vector`` maps component ids to integers/rationals and must
    have degree zero with respect to multiplicities.  The result is a map
    component id -> Fraction, canonical only modulo the complete fibre.
    """
    ids = fibre.component_ids()
    e = [Fraction(component_vector.get(cid, 0)) for cid in ids]
    mults = fibre.multiplicities()
    if sum(m * x for m, x in zip(mults, e)) != 0:
        raise DegreeNonZero(
            f"multiplicity-weighted degree is "
            f"{sum(m * x for m, x in zip(mults, e))}")
    if inverse is None:
        inverse, _ = generalised_inverse(fibre.intersection_matrix)
    phi = rl.matvec(inverse, e)
    # M Phi = -E is the defining property; it must hold exactly
    check = rl.matvec(rl.mat(fibre.intersection_matrix), phi)
    if any(c + x != 0 for c, x in zip(check, e)):
        raise ArithmeticError("M Phi != -E")
    return dict(zip(ids, phi))


def phi_dot_dtilde(fibre, phi):
    """Intersection cycle of a vertical Q-divisor with the boundary,
    reduced to the quotient: sum over components of Phi_V * (V.D~)."""
    cycle = {}
    for cid, coeff in phi.items():
        if coeff == 0:
            continue
        for pid, k in fibre.cycle_of(cid).items():
            cycle[pid] = cycle.get(pid, 0) + Fraction(coeff) * k
    return VElement(fibre, cycle)


@dataclass
class LocalConstraintSet:
    """Either a single class (component types) or a line base + Z*direction
    (cuspidal types)."""
    kind: str                  # "point" or "line"
    base: VElement
    direction: VElement | None = None

    def is_point(self):
        return self.kind == "point"

    def members_equal(self, other):
        if self.kind != other.kind:
            return False
        if self.kind == "point":
            return self.base == other.base
        return (constraint_subset(self, other)
                and constraint_subset(other, self))

    def key(self):
        if self.kind == "point":
            return ("point", self.base.key())
        return ("line", self.base.key(), self.direction.key())


def local_constraint_set(fibre, base, choice):
    """The local constraint set of a reduction-type choice at this prime.

    ``choice`` is a component id (integral/component type, which must
    contain a smooth point) or a boundary point id listed as a smooth cusp
    point (cuspidal type).  ``base`` is the base-point data: its reduction
    component and its boundary intersection cycle.
    """
    ids = fibre.component_ids()
    minus_p0 = VElement(
        fibre, {pid: -Fraction(v) for pid, v in base.cusp_cycle.items()})
    if base.component not in ids:
        raise InvalidType(f"unknown base component {base.component}")
    if choice in ids:
        comp = fibre.component(choice)
        if not comp.has_smooth_point:
            raise InvalidType(
                f"component {choice} has no smooth rational point")
        e = {choice: Fraction(1)}
        e[base.component] = e.get(base.component, 0) - 1
        phi = compute_phi(fibre, e)
        return LocalConstraintSet("point", minus_p0 + phi_dot_dtilde(fibre, phi))
    if choice in fibre.point_ids():
        if choice not in fibre.smooth_cusp_points:
            raise InvalidType(
                f"boundary point {choice} is not a valid cuspidal type")
        carriers = fibre.component_of_point(choice)
        e = {carriers[0]: Fraction(1)}
        e[base.component] = e.get(base.component, 0) - 1
        phi = compute_phi(fibre, e)
        direction = VElement(fibre, {choice: 1})
        return LocalConstraintSet(
            "line", minus_p0 + phi_dot_dtilde(fibre, phi), direction)
    raise InvalidType(f"{choice!r} is neither a component nor a cusp point")


def point_zero(fibre):
    return LocalConstraintSet("point", VElement(fibre, {}))


def constraint_subset(a, b):
    """Decide containment of one local constraint set in another."""
    if a.kind == "point" and b.kind == "point":
        return a.base == b.base
    if a.kind == "point" and b.kind == "line":
        return _on_line(a.base, b)
    if a.kind == "line" and b.kind == "point":
        return a.direction.is_zero() and a.base == b.base
    # line in line: directions must be integer multiples and bases shift
    # by an integer step
    if a.direction.is_zero():
        return _on_line(a.base, b)
    m = _integer_ratio(a.direction, b.direction)
    if m is None:
        return False
    return _on_line(a.base, b)


def _integer_ratio(u, v):
    """m with u = m*v (m integer), or None."""
    if v.is_zero():
        return 0 if u.is_zero() else None
    pid, coeff = next(iter(sorted(v.coeffs.items())))
    m = Fraction(u.coeffs.get(pid, 0)) / coeff
    if m.denominator != 1:
        return None
    if u.key() != v.scaled(m).key():
        return None
    return int(m)


def _on_line(point, line):
    diff = point - line.base
    if diff.is_zero():
        return True
    k = _integer_ratio(diff, line.direction)
    return k is not None
