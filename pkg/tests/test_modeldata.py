import json
import random
from pathlib import Path

import pytest

from affchab.errors import (
    BadReduction,
    HypothesesFail,
    InvariantViolation,
    ParseError,
)
from affchab.hyperell import HyperellipticCurve, count_affine_points
from affchab.modeldata import (
    NumberFieldInvariants,
    base_point_of,
    check_d_transversal,
    fibre_to_dict,
    good_reduction_fibre,
    liu_star_checks,
    parse_curve_file,
    parse_fibre_file,
    serialize_fibre,
)

DATA = Path(__file__).resolve().parent.parent / "data"

QUARTIC = HyperellipticCurve([0, 1, 6, 5, 1])
SEXTIC = HyperellipticCurve([4, 0, -28, 0, 0, 0, 1])


def load(name):
    return (DATA / name).read_text()


def test_parse_good_reduction_single_component():
    fibre = good_reduction_fibre(QUARTIC, 11)
    assert fibre.intersection_matrix == [[0]]
    assert len(fibre.components) == 1
    data = serialize_fibre(fibre)
    again = parse_fibre_file(data)
    assert serialize_fibre(again) == data


def test_round_trip_is_canonical():
    raw = load("fibre_cubic_5.json")
    fibre = parse_fibre_file(raw)
    once = serialize_fibre(fibre)
    twice = serialize_fibre(parse_fibre_file(once))
    assert once == twice


def test_bad_fibre_file_at_3_is_accepted():
    fibre = parse_fibre_file(load("fibre_cubic_3.json"))
    assert len(fibre.components) == 1
    assert fibre.smooth_cusp_points == []
    # both boundary points collide on the model
    assert len({x.model_point for x in fibre.dtilde_points}) == 1


def test_invariant_violation_on_corrupted_matrix():
    obj = json.loads(load("fibre_cubic_5.json"))
    obj["intersection_matrix"] = [[1]]  # M*m != 0
    with pytest.raises(InvariantViolation) as err:
        parse_fibre_file(json.dumps(obj))
    assert err.value.name == "matrix-kills-multiplicities"


def test_invariant_violation_on_wrong_cycle_total():
    obj = json.loads(load("fibre_cubic_5.json"))
    obj["component_cusp_cycles"]["C0"]["Q1"] = 2
    with pytest.raises(InvariantViolation) as err:
        parse_fibre_file(json.dumps(obj))
    assert err.value.name == "cusp-cycle-total"


def test_invariant_violation_on_corank():
    obj = json.loads(load("fibre_cubic_5.json"))
    obj["components"].append({"id": "C1", "multiplicity": 1,
                              "smooth_noncusp_point_count": 0,
                              "has_smooth_point": False})
    obj["intersection_matrix"] = [[0, 0], [0, 0]]  # corank 2
    with pytest.raises(InvariantViolation) as err:
        parse_fibre_file(json.dumps(obj))
    assert err.value.name == "matrix-corank"


def test_parse_error_on_garbage():
    with pytest.raises(ParseError):
        parse_fibre_file(b"{not json")
    with pytest.raises(ParseError):
        parse_fibre_file(json.dumps({"prime": 5}))


# -- synthesis ---------------------------------------------------------------

def test_synthesized_counts_match_published():
    f5 = good_reduction_fibre(QUARTIC, 5)
    assert f5.components[0].smooth_noncusp_point_count == 3
    f7 = good_reduction_fibre(SEXTIC, 7)
    assert f7.components[0].smooth_noncusp_point_count == 2


def test_synthesized_cusp_degree_sum():
    rng = random.Random(2)
    built = 0
    while built < 25:
        g = rng.choice([1, 2])
        coeffs = [rng.randrange(-9, 10) for _ in range(2 * g + 2)]
        coeffs.append(rng.choice([1, 4, 3, -1, -5]))
        try:
            curve = HyperellipticCurve(coeffs)
        except ValueError:
            continue
        q = rng.choice([3, 5, 7, 11, 13])
        if not curve.has_good_reduction(q):
            continue
        fibre = good_reduction_fibre(curve, q)
        built += 1
        total = sum(x.ramification_index * x.residue_degree
                    for x in fibre.dtilde_points)
        assert total == 2  # two geometric cusps at infinity
        assert fibre.components[0].smooth_noncusp_point_count == \
            count_affine_points(curve, q)


def test_bad_reduction_rejected():
    # 7 divides disc(f) = 49
    with pytest.raises(BadReduction):
        good_reduction_fibre(QUARTIC, 7)
    with pytest.raises(BadReduction):
        good_reduction_fibre(SEXTIC, 2)


# -- transversality ----------------------------------------------------------

def test_transversal_good_fibre():
    fibre = good_reduction_fibre(QUARTIC, 11)
    assert check_d_transversal(fibre)


def test_collision_point_fails_transversality():
    # list the colliding mod-3 point as a cuspidal type: check must fail
    obj = json.loads(load("fibre_cubic_3.json"))
    obj["smooth_cusp_points"] = ["Q1"]
    fibre = parse_fibre_file(json.dumps(obj))
    assert not check_d_transversal(fibre)


def test_multiplicity_two_component_fails_transversality():
    fibre = parse_fibre_file(json.dumps({
        "prime": 5, "residue_field_size": 5,
        "components": [
            {"id": "A", "multiplicity": 2, "smooth_noncusp_point_count": 0,
             "has_smooth_point": False},
            {"id": "B", "multiplicity": 1, "smooth_noncusp_point_count": 3,
             "has_smooth_point": True}],
        "intersection_matrix": [[-1, 2], [2, -4]],
        "dtilde_points": [
            {"id": "x", "cusp": "Q", "residue_degree": 1,
             "ramification_index": 2}],
        "component_cusp_cycles": {"A": {"x": 1}, "B": {}},
        "smooth_cusp_points": ["x"],
    }))
    assert not check_d_transversal(fibre)


# -- Liu-style hypotheses ------------------------------------------------------

def test_liu_checks_quartic():
    report = liu_star_checks([0, 1, 6, 5, 1])
    assert report.passed
    assert report.f_top_odd           # f_3 = 5 is odd
    assert report.odd_prime_square == {7: False}


def test_liu_checks_sextic_two_adic():
    report = liu_star_checks([4, 0, -28, 0, 0, 0, 1])
    assert report.passed
    assert not report.f_top_odd
    assert report.two_adic_ok
    assert report.two_adic_detail["Q"] == [0, 0, 0, 1]       # Q = x^3
    assert report.two_adic_detail["P"][:3] == [1, 0, -7]     # P = 1 - 7x^2


def test_liu_checks_fail_on_square_reduction():
    # (x^2+1)^2 + 5*(x+2): mod 5 this is a square
    base = [1, 0, 2, 0, 1]
    f = list(base)
    f[0] += 5 * 2
    f[1] += 5
    report = liu_star_checks(f)
    assert 5 in report.odd_prime_square
    if report.odd_prime_square.get(5):
        assert not report.passed
        with pytest.raises(HypothesesFail):
            report.raise_if_failed()


def test_liu_checks_preconditions():
    assert not liu_star_checks([1, 0, 0, 0, 2]).passed    # not monic
    assert not liu_star_checks([0, 0, 1, 2, 1]).passed    # not squarefree


# -- curve files and invariants ------------------------------------------------

def test_parse_curve_files():
    c = parse_curve_file(load("curve_quartic_rank1.json"))
    assert c.curve is not None and c.genus == 1
    assert c.invariants.mw_rank == 1
    iq = parse_curve_file(load("curve_sextic_imagquad.json"))
    assert iq.invariants.degree == 2 and iq.invariants.n2 == 2
    cubic = parse_curve_file(load("curve_cubic_genus1.json"))
    assert cubic.curve is None
    assert cubic.invariants.n == 3 and cubic.invariants.n2 == 1


def test_invariants_validation():
    with pytest.raises(InvariantViolation):
        NumberFieldInvariants(degree=2, unit_rank=0, genus=2, n=2,
                              num_cusps=2, n1=1, n2=2, mw_rank=0)


def test_base_point_defaults():
    fibre = good_reduction_fibre(QUARTIC, 11)
    bp = base_point_of(fibre)
    assert bp.component == "C0" and bp.is_integral()


def test_fibre_to_dict_fields():
    fibre = parse_fibre_file(load("fibre_cubic_7.json"))
    d = fibre_to_dict(fibre)
    assert set(d) >= {"prime", "components", "intersection_matrix",
                      "dtilde_points", "component_cusp_cycles",
                      "smooth_cusp_points"}
    assert d["prime"] == 7
    assert len(d["dtilde_points"]) == 3
