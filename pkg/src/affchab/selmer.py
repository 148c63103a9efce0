"""Global assembly: reduction types, rank formulas, condition checks.

A reduction type picks, for every relevant prime, either a component of
the fibre (always allowed) or, at primes of the allowed denominator set S,
a rational point where the boundary meets the smooth locus (a cuspidal
choice).  Good-reduction primes outside S admit exactly one choice and are
left implicit; only the supplied fibres are enumerated.

Rank formulas and the two inequalities gating the method take the curve's
ground-field numerics as plain inputs; nothing here computes ranks.
"""

from dataclasses import dataclass
from itertools import product

from .errors import InvariantViolation, MissingFibre, SingleRationalCusp
from .dintersect import local_constraint_set
from .modeldata import base_point_of, check_d_transversal


@dataclass(frozen=True)
class ReductionType:
    """Per-prime choices; each entry is ("component", id) or ("cusp", id)."""
    choices: tuple   # tuple of (prime, kind, id), sorted by prime
    s_primes: frozenset

    @classmethod
    def make(cls, mapping, s_primes):
        items = tuple(sorted((q, kind, cid) for q, (kind, cid) in mapping.items()))
        return cls(items, frozenset(s_primes))

    def choice_at(self, q):
        for prime, kind, cid in self.choices:
            if prime == q:
                return (kind, cid)
        return None

    def cuspidal_primes(self):
        return sorted(q for q, kind, _ in self.choices if kind == "cusp")

    @property
    def c_sigma(self):
        return len(self.cuspidal_primes())

    def __repr__(self):
        parts = [f"{q}:{kind[0]}{cid}" for q, kind, cid in self.choices]
        return "Sigma(" + ", ".join(parts) + ")"


def _choices_for_prime(fibre, q, in_s, prune):
    components = [c.id for c in fibre.components if c.has_smooth_point]
    if not in_s:
        return [("component", cid) for cid in components]
    if fibre.smooth_cusp_points and not check_d_transversal(fibre):
        raise InvariantViolation(
            "transversality-at-s-prime",
            f"fibre at {q} lists cuspidal types but is not transversal")
    cusps = [("cusp", pid) for pid in fibre.smooth_cusp_points]
    if prune and cusps:
        # cuspidal types cover the component of their point; when the
        # boundary meets a single component they cover every component
        if len(fibre.components_meeting_boundary()) == 1:
            return cusps
        covered = {fibre.component_of_point(pid)[0]
                   for _, pid in cusps}
        components = [cid for cid in components if cid not in covered]
    return [("component", cid) for cid in components] + cusps


def enumerate_reduction_types(fibres, s_primes, p=None, prune=False):
    """All reduction types over the supplied fibres.

    ``fibres`` maps primes to FibreData and must cover every prime of S;
    the Chabauty prime p is excluded (its component is accounted for
    separately in the bounds).  Good-reduction primes without a fibre have
    a unique implicit choice.
    """
    s_primes = set(s_primes)
    for q in s_primes:
        if q not in fibres:
            raise MissingFibre(f"no fibre supplied for S-prime {q}")
    per_prime = []
    primes = []
    for q in sorted(fibres):
        if q == p:
            continue
        opts = _choices_for_prime(fibres[q], q, q in s_primes, prune)
        primes.append(q)
        per_prime.append(opts)
    out = []
    for combo in product(*per_prime):
        mapping = dict(zip(primes, combo))
        out.append(ReductionType.make(mapping, s_primes))
    return out


# ---------------------------------------------------------------------------
# rank formulas and conditions
# ---------------------------------------------------------------------------


def ker_sigma_rank(inv):
    """Rank of the kernel of the boundary-intersection homomorphism."""
    return inv.n1 + inv.n2 - inv.num_cusps - inv.unit_rank + inv.mw_rank


def selmer_rank(inv, c_sigma):
    """Rank of the group whose translate contains the local constraints."""
    if inv.num_cusps == 1 and inv.n == 1:
        raise SingleRationalCusp(
            "boundary is a single rational point; use the classical "
            "projective method (r < g) instead")
    return ker_sigma_rank(inv) + c_sigma


def chabauty_condition(inv, c_sigma):
    """r + #C(Sigma) + (d-1) n  <  g + unit rank + #cusps + n2 - 1."""
    lhs = inv.mw_rank + c_sigma + (inv.degree - 1) * inv.n
    rhs = inv.genus + inv.unit_rank + inv.num_cusps + inv.n2 - 1
    return lhs < rhs


def chabauty_condition_uniform(inv, num_s):
    """The uniform form with #S in place of #C(Sigma); over Q this is
    r + #S < g + #cusps + n2 - 1 and implies the per-type condition."""
    lhs = inv.mw_rank + num_s + (inv.degree - 1) * inv.n
    rhs = inv.genus + inv.unit_rank + inv.num_cusps + inv.n2 - 1
    return lhs < rhs


def condition_margins(inv, c_sigma):
    """(lhs, rhs) of the per-type inequality, for reporting."""
    lhs = inv.mw_rank + c_sigma + (inv.degree - 1) * inv.n
    rhs = inv.genus + inv.unit_rank + inv.num_cusps + inv.n2 - 1
    return lhs, rhs


def ros_condition(inv, c_sigma):
    """r + #C(Sigma) <= d(g-2) + n2 + #cusps + unit rank (the restriction
    of scalars variant)."""
    lhs = inv.mw_rank + c_sigma
    rhs = inv.degree * (inv.genus - 2) + inv.n2 + inv.num_cusps + inv.unit_rank
    return lhs <= rhs


# ---------------------------------------------------------------------------
# global constraint sets
# ---------------------------------------------------------------------------


@dataclass
class GlobalConstraintReport:
    sigma: ReductionType
    rank: int
    locals: dict          # prime -> LocalConstraintSet
    constraint_key: tuple


def base_points_for(fibres, bases=None):
    out = {}
    for q, fibre in fibres.items():
        if bases and q in bases:
            out[q] = bases[q]
        else:
            out[q] = base_point_of(fibre)
    return out


def selmer_set_rank_report(fibres, sigma, inv, bases=None):
    """Assemble the per-prime constraint sets of one reduction type.

    The rank is reported conditionally on the set being nonempty, exactly
    as the underlying statement provides it.  Types sharing the same
    constraint key share their annihilating differential downstream.
    """
    bases = base_points_for(fibres, bases)
    locals_ = {}
    for q, kind_cid in ((q, sigma.choice_at(q)) for q in sorted(fibres)):
        if kind_cid is None:
            continue
        kind, cid = kind_cid
        locals_[q] = local_constraint_set(fibres[q], bases[q], cid)
    key = tuple((q, cs.key()) for q, cs in sorted(locals_.items()))
    return GlobalConstraintReport(
        sigma=sigma,
        rank=selmer_rank(inv, sigma.c_sigma),
        locals=locals_,
        constraint_key=key,
    )


def group_types_by_constraints(fibres, types, inv, bases=None):
    """Group reduction types whose constraint sets coincide."""
    groups = {}
    for sigma in types:
        report = selmer_set_rank_report(fibres, sigma, inv, bases)
        groups.setdefault(report.constraint_key, []).append(report)
    return groups
