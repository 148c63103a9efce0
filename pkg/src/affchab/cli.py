"""Command-line front end.

Subcommands: check-conditions, bound, count-points, sigma, strassmann,
search.  Output is human-readable text, or a stable JSON document with
--json.  Exit codes: 0 ok, 1 condition failure, 2 inconclusive analysis,
3 input error.
"""

import argparse
import json
import sys

from .errors import AffChabError, ConditionFails, HypothesesFail
from .chabauty import (
    ChabautyFunction,
    bound_general,
    bound_improved,
    bound_sharp_hyperelliptic,
    load_alpha_fixture,
    strassmann_sweep,
)
from .dintersect import constraint_subset, local_constraint_set
from .hyperell import brute_force_integral_points, count_affine_points
from .modeldata import (
    NumberFieldInvariants,
    base_point_of,
    check_d_transversal,
    good_reduction_fibre,
    parse_curve_file,
    parse_fibre_file,
)
from .selmer import (
    condition_margins,
    enumerate_reduction_types,
    ker_sigma_rank,
    ros_condition,
    selmer_rank,
)

SCHEMA = 1

OK, CONDITION_FAILURE, INCONCLUSIVE, INPUT_ERROR = 0, 1, 2, 3


def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise AffChabError(f"cannot read {path}: {e}") from e


def _invariants(curve_input, rank_override=None):
    inv = curve_input.invariants
    if inv is None:
        raise AffChabError(
            f"curve file {curve_input.label!r} carries no invariants block")
    if rank_override is not None and rank_override != inv.mw_rank:
        inv = NumberFieldInvariants(
            degree=inv.degree, unit_rank=inv.unit_rank, genus=inv.genus,
            n=inv.n, num_cusps=inv.num_cusps, n1=inv.n1, n2=inv.n2,
            mw_rank=rank_override)
    return inv


def _load_fibres(args, curve_input, s_primes, p=None):
    fibres = {}
    for path in args.fibre or []:
        fibre = parse_fibre_file(_read(path))
        fibres[fibre.prime] = fibre
    if curve_input.curve is not None:
        for q in set(s_primes) | ({p} if p else set()):
            if q not in fibres and curve_input.curve.has_good_reduction(q):
                fibres[q] = good_reduction_fibre(curve_input.curve, q)
    return fibres


def _emit(args, text_lines, payload):
    if args.json:
        payload["schema_version"] = SCHEMA
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        for line in text_lines:
            print(line)


# ---------------------------------------------------------------------------


def cmd_check_conditions(args):
    curve_input = parse_curve_file(_read(args.curve))
    inv = _invariants(curve_input, args.rank)
    s_primes = set(args.S or [])
    fibres = _load_fibres(args, curve_input, s_primes, args.p)

    lines = []
    payload = {"command": "check-conditions", "types": []}
    all_pass = True

    if all(q in fibres for q in s_primes):
        types = enumerate_reduction_types(fibres, s_primes, p=args.p,
                                          prune=args.prune)
        described = [(repr(sigma), sigma.c_sigma) for sigma in types]
    else:
        # without fibre data the cuspidal count per type is unknown;
        # report every possible count up to #S (the worst case decides)
        described = [(f"any type with {c} cuspidal prime(s)", c)
                     for c in range(len(s_primes) + 1)]
    for name, c in described:
        lhs, rhs = condition_margins(inv, c)
        ok = lhs < rhs
        all_pass = all_pass and ok
        rank = selmer_rank(inv, c)
        lines.append(
            f"type {name}: cuspidal primes {c}, constraint rank {rank}, "
            f"rank condition {lhs} < {rhs} {'PASS' if ok else 'FAIL'}")
        payload["types"].append({
            "sigma": name, "c_sigma": c, "selmer_rank": rank,
            "lhs": lhs, "rhs": rhs, "pass": ok})

    ros = ros_condition(inv, 0)
    payload["kernel_rank"] = ker_sigma_rank(inv)
    payload["ros_condition"] = ros
    payload["all_pass"] = all_pass
    lines.append(f"kernel rank: {ker_sigma_rank(inv)}")
    lines.append(f"scalar-restriction condition: "
                 f"{'PASS' if ros else 'FAIL'}")
    lines.append("all requested conditions: "
                 + ("PASS" if all_pass else "FAIL"))
    _emit(args, lines, payload)
    return OK if all_pass else CONDITION_FAILURE


def cmd_bound(args):
    curve_input = parse_curve_file(_read(args.curve))
    inv = _invariants(curve_input, args.rank)
    s_primes = set(args.S or [])
    fibres = _load_fibres(args, curve_input, s_primes, args.p)

    candidates = {}
    failures = {}
    if curve_input.curve is not None and not s_primes:
        try:
            candidates["sharp-hyperelliptic"] = bound_sharp_hyperelliptic(
                curve_input.curve, args.p, inv.mw_rank)
        except (HypothesesFail, AffChabError) as e:
            failures["sharp-hyperelliptic"] = str(e)
    try:
        candidates["type-product"] = bound_general(
            fibres, args.p, inv, s_primes)
    except AffChabError as e:
        failures["type-product"] = str(e)
    try:
        candidates["collapsed-type-product"] = bound_improved(
            fibres, args.p, inv, s_primes)
    except AffChabError as e:
        failures["collapsed-type-product"] = str(e)

    lines = []
    payload = {"command": "bound", "candidates": candidates,
               "inapplicable": failures, "prime": args.p,
               "s_primes": sorted(s_primes)}
    for name, value in candidates.items():
        lines.append(f"{name}: {value}")
    for name, why in failures.items():
        lines.append(f"{name}: not applicable ({why})")
    if not candidates:
        lines.append("no bound applies")
        payload["bound"] = None
        _emit(args, lines, payload)
        return CONDITION_FAILURE
    best = min(candidates.values())
    by = min(candidates, key=lambda k: candidates[k])
    payload["bound"] = best
    payload["by"] = by
    lines.append(f"bound: {best} (via {by})")
    _emit(args, lines, payload)
    return OK


def cmd_count_points(args):
    curve_input = parse_curve_file(_read(args.curve))
    curve = curve_input.require_curve()
    count = count_affine_points(curve, args.p)
    _emit(args, [f"points mod {args.p}: {count}"],
          {"command": "count-points", "prime": args.p, "count": count})
    return OK


def cmd_sigma(args):
    fibre = parse_fibre_file(_read(args.fibre[0]))
    base = base_point_of(fibre)
    transversal = check_d_transversal(fibre)
    lines = [f"prime {fibre.prime}: {len(fibre.components)} component(s), "
             f"{len(fibre.dtilde_points)} boundary point(s), "
             f"transversal: {transversal}"]
    payload = {"command": "sigma", "prime": fibre.prime,
               "transversal": transversal, "constraints": []}
    sets = {}
    for c in fibre.components:
        if not c.has_smooth_point:
            continue
        cs = local_constraint_set(fibre, base, c.id)
        sets[c.id] = cs
        desc = {pid: str(v) for pid, v in cs.base.coeffs.items()}
        lines.append(f"component {c.id}: point {desc or 0}")
        payload["constraints"].append(
            {"choice": c.id, "kind": "point", "base": desc})
    for pid in fibre.smooth_cusp_points:
        cs = local_constraint_set(fibre, base, pid)
        sets[pid] = cs
        desc = {q: str(v) for q, v in cs.base.coeffs.items()}
        dirdesc = {q: str(v) for q, v in cs.direction.coeffs.items()}
        covered = [cid for cid, other in sets.items()
                   if other.kind == "point" and constraint_subset(other, cs)]
        lines.append(f"cusp point {pid}: line base {desc or 0} "
                     f"direction {dirdesc or 0}; covers {covered}")
        payload["constraints"].append(
            {"choice": pid, "kind": "line", "base": desc,
             "direction": dirdesc, "covers_components": covered})
    _emit(args, lines, payload)
    return OK


def cmd_strassmann(args):
    curve_input = parse_curve_file(_read(args.curve))
    curve = curve_input.require_curve()
    fixture = load_alpha_fixture(_read(args.fixture))
    if fixture.prime != args.p:
        raise AffChabError(
            f"fixture prime {fixture.prime} differs from -p {args.p}")
    if count_affine_points(curve, args.p) == 0:
        _emit(args, ["no affine residue discs"],
              {"command": "strassmann", "discs": [], "certified_zeros": 0})
        return OK
    fn = ChabautyFunction(fixture.prime, fixture.alphas, fixture.constant)
    report = strassmann_sweep(curve, fn, args.p, fixture.known_points,
                              n_terms=args.terms, prec=args.prec)
    lines = []
    payload = {"command": "strassmann", "discs": [],
               "component_bound": report.component_bound}
    for v in report.verdicts:
        if v.verdict is None:
            lines.append(f"disc {v.disc_label}: Inconclusive ({v.reason})")
            payload["discs"].append({"disc": v.disc_label,
                                     "verdict": "inconclusive",
                                     "reason": v.reason})
            continue
        tag = repr(v.verdict)
        extra = " at t=0" if v.verdict.kind == "exact" else ""
        lines.append(f"disc {v.disc_label}: {tag}{extra} "
                     f"[anchors: {', '.join(v.anchors)}]")
        payload["discs"].append({"disc": v.disc_label,
                                 "verdict": v.verdict.kind,
                                 "count": v.verdict.count,
                                 "anchors": v.anchors})
    payload["exact_zeros"] = report.exact_zeros
    payload["all_exact"] = report.all_exact
    payload["inconclusive"] = report.inconclusive
    lines.append(f"certified zeros: {report.exact_zeros} "
                 f"(component bound {report.component_bound})")
    if report.inconclusive:
        lines.append("inconclusive discs: " + ", ".join(report.inconclusive))
    _emit(args, lines, payload)
    return OK if report.all_conclusive else INCONCLUSIVE


def cmd_search(args):
    curve_input = parse_curve_file(_read(args.curve))
    curve = curve_input.require_curve()
    pts = brute_force_integral_points(curve, args.height,
                                      tuple(args.S or []))
    lines = [f"({x}, {y})" for x, y in pts]
    lines.append(f"total: {len(pts)}")
    payload = {"command": "search", "height": args.height,
               "s_primes": sorted(args.S or []),
               "points": [[str(x), str(y)] for x, y in pts],
               "total": len(pts)}
    _emit(args, lines, payload)
    return OK


# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="affchab",
        description="Bounds and certified zero counts for S-integral "
                    "points on affine curves.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, curve=True, fibres=True, prime=True):
        if curve:
            sp.add_argument("--curve", required=True, help="curve JSON file")
        if fibres:
            sp.add_argument("--fibre", action="append",
                            help="fibre JSON file (repeatable)")
            sp.add_argument("-S", type=int, nargs="*", default=[],
                            help="primes allowed in denominators")
        if prime:
            sp.add_argument("-p", type=int, required=True,
                            help="working prime")
        sp.add_argument("--prec", type=int, default=12,
                        help="working precision (p-adic digits)")
        sp.add_argument("--json", action="store_true",
                        help="machine-readable output")

    sp = sub.add_parser("check-conditions",
                        help="evaluate the rank inequalities per type")
    common(sp, prime=False)
    sp.add_argument("-p", type=int, default=None, help="working prime")
    sp.add_argument("--rank", type=int, default=None,
                    help="override the stored Mordell-Weil rank")
    sp.add_argument("--prune", action="store_true",
                    help="drop component types covered by cuspidal ones")
    sp.set_defaults(func=cmd_check_conditions)

    sp = sub.add_parser("bound", help="explicit point-count bounds")
    common(sp)
    sp.add_argument("--rank", type=int, default=None)
    sp.add_argument("--prune", action="store_true")
    sp.add_argument("--improved", action="store_true",
                    help="kept for compatibility; the collapsed bound is "
                         "always reported")
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("count-points", help="count points mod p")
    common(sp, fibres=False)
    sp.set_defaults(func=cmd_count_points)

    sp = sub.add_parser("sigma", help="local constraint sets of a fibre")
    sp.add_argument("--fibre", action="append", required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_sigma)

    sp = sub.add_parser("strassmann",
                        help="certified zero counts on residue discs")
    common(sp, fibres=False)
    sp.add_argument("--fixture", required=True,
                    help="annihilating-differential fixture JSON")
    sp.add_argument("--terms", type=int, default=12,
                    help="series truncation order")
    sp.set_defaults(func=cmd_strassmann)

    sp = sub.add_parser("search", help="brute-force S-integral points")
    common(sp, fibres=True, prime=False)
    sp.add_argument("-H", "--height", type=int, required=True,
                    help="numerator/denominator bound")
    sp.set_defaults(func=cmd_search)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConditionFails, HypothesesFail) as e:
        print(f"condition failure: {e}", file=sys.stderr)
        return CONDITION_FAILURE
    except AffChabError as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
