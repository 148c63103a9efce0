import json
import random
from pathlib import Path

import pytest

from affchab.errors import MissingFibre, SingleRationalCusp
from affchab.hyperell import HyperellipticCurve
from affchab.modeldata import (
    NumberFieldInvariants,
    check_d_transversal,
    good_reduction_fibre,
    parse_fibre_file,
)
from affchab.selmer import (
    chabauty_condition,
    chabauty_condition_uniform,
    condition_margins,
    enumerate_reduction_types,
    group_types_by_constraints,
    ker_sigma_rank,
    ros_condition,
    selmer_rank,
    selmer_set_rank_report,
)

from fibregen import random_fibre

DATA = Path(__file__).resolve().parent.parent / "data"

INV_IQ = NumberFieldInvariants(degree=2, unit_rank=0, genus=2, n=2,
                               num_cusps=2, n1=0, n2=2, mw_rank=2)
INV_CUBIC = NumberFieldInvariants(degree=1, unit_rank=0, genus=1, n=3,
                                  num_cusps=2, n1=1, n2=1, mw_rank=1)
INV_Q_TWO_CUSPS = NumberFieldInvariants(degree=1, unit_rank=0, genus=2, n=2,
                                        num_cusps=2, n1=2, n2=0, mw_rank=0)


def fibre(name):
    return parse_fibre_file((DATA / name).read_text())


# -- rank formulas -------------------------------------------------------------

def test_ker_sigma_rank_values():
    assert ker_sigma_rank(INV_IQ) == 0 + 2 - 2 - 0 + 2 == 2
    assert ker_sigma_rank(INV_CUBIC) == 1 + 1 - 2 - 0 + 1 == 1
    single = NumberFieldInvariants(degree=1, unit_rank=0, genus=3, n=1,
                                   num_cusps=1, n1=1, n2=0, mw_rank=0)
    assert ker_sigma_rank(single) == 0


def test_selmer_rank_values():
    assert selmer_rank(INV_IQ, 0) == 2
    assert selmer_rank(INV_CUBIC, 1) == 2
    assert selmer_rank(INV_Q_TWO_CUSPS, 0) == 0


def test_selmer_rank_minus_ker_rank_is_c_sigma():
    rng = random.Random(3)
    for _ in range(200):
        d = rng.randrange(1, 4)
        n = rng.randrange(1, 5)
        n2 = rng.randrange(0, d * n // 2 + 1)
        n1 = d * n - 2 * n2
        if n1 < 0:
            continue
        num_cusps = rng.randrange(1, n + 1)
        if num_cusps == 1 and n == 1:
            continue
        inv = NumberFieldInvariants(degree=d, unit_rank=rng.randrange(0, 3),
                                    genus=rng.randrange(0, 5), n=n,
                                    num_cusps=num_cusps, n1=n1, n2=n2,
                                    mw_rank=rng.randrange(0, 6))
        c = rng.randrange(0, 4)
        assert selmer_rank(inv, c) - ker_sigma_rank(inv) == c


def test_single_rational_cusp_error():
    single = NumberFieldInvariants(degree=1, unit_rank=0, genus=3, n=1,
                                   num_cusps=1, n1=1, n2=0, mw_rank=1)
    with pytest.raises(SingleRationalCusp):
        selmer_rank(single, 0)


# -- conditions ----------------------------------------------------------------

def test_imagquad_condition_instance():
    # 2 + 0 + 2 < 2 + 0 + 2 + 2 - 1 = 5
    assert condition_margins(INV_IQ, 0) == (4, 5)
    assert chabauty_condition(INV_IQ, 0)


def test_cubic_condition_instance():
    # 1 + 1 < 1 + 2 + 1 - 1 = 3
    assert condition_margins(INV_CUBIC, 1) == (2, 3)
    assert chabauty_condition(INV_CUBIC, 1)


def test_condition_fails_for_large_rank():
    inv = NumberFieldInvariants(degree=1, unit_rank=0, genus=1, n=3,
                                num_cusps=2, n1=1, n2=1, mw_rank=99)
    assert not chabauty_condition(inv, 0)


def test_condition_monotone_in_rank_and_cusps():
    rng = random.Random(11)
    for _ in range(1000):
        d = rng.randrange(1, 4)
        n = rng.randrange(1, 5)
        n2 = rng.randrange(0, d * n // 2 + 1)
        n1 = d * n - 2 * n2
        if n1 < 0:
            continue
        inv = NumberFieldInvariants(degree=d, unit_rank=rng.randrange(0, 3),
                                    genus=rng.randrange(0, 6), n=n,
                                    num_cusps=rng.randrange(1, n + 1), n1=n1,
                                    n2=n2, mw_rank=rng.randrange(0, 8))
        c = rng.randrange(0, 4)
        if not chabauty_condition(inv, c):
            assert not chabauty_condition(inv, c + rng.randrange(0, 4))
            bigger = NumberFieldInvariants(
                degree=d, unit_rank=inv.unit_rank, genus=inv.genus, n=n,
                num_cusps=inv.num_cusps, n1=n1, n2=n2,
                mw_rank=inv.mw_rank + rng.randrange(0, 5))
            assert not chabauty_condition(bigger, c)
        if not ros_condition(inv, c):
            assert not ros_condition(inv, c + rng.randrange(0, 4))


def test_uniform_implies_per_type_over_q():
    rng = random.Random(13)
    for _ in range(500):
        n = rng.randrange(1, 5)
        n2 = rng.randrange(0, n // 2 + 1)
        n1 = n - 2 * n2
        if n1 < 0:
            continue
        inv = NumberFieldInvariants(degree=1, unit_rank=0,
                                    genus=rng.randrange(0, 6), n=n,
                                    num_cusps=rng.randrange(1, n + 1),
                                    n1=n1, n2=n2, mw_rank=rng.randrange(0, 6))
        num_s = rng.randrange(0, 4)
        if chabauty_condition_uniform(inv, num_s):
            for c in range(num_s + 1):  # #C(Sigma) <= #S
                assert chabauty_condition(inv, c)


def test_ros_even_degree_specialization():
    # over a quadratic field with two rational cusps and S empty the
    # inequality reads r <= d g - unit rank
    for g in (1, 2, 3):
        for r in range(0, 2 * g + 2):
            inv = NumberFieldInvariants(degree=2, unit_rank=0, genus=g, n=2,
                                        num_cusps=2, n1=0, n2=2, mw_rank=r)
            assert ros_condition(inv, 0) == (r <= 2 * g)


def test_ros_small_instance():
    inv = NumberFieldInvariants(degree=1, unit_rank=0, genus=2, n=2,
                                num_cusps=2, n1=2, n2=0, mw_rank=0)
    assert ros_condition(inv, 0)  # 0 <= 1*(0) + 0 + 2 + 0


# -- enumeration ----------------------------------------------------------------

def test_enumeration_counts_cubic():
    f5 = fibre("fibre_cubic_5.json")
    f13 = fibre("fibre_cubic_13.json")
    f3 = fibre("fibre_cubic_3.json")
    # S = {5}: inert case, 1 component + 1 cusp point at 5; one component
    # choice at 3 and 13
    types = enumerate_reduction_types({3: f3, 5: f5, 13: f13}, {5}, p=7)
    assert len(types) == (1 + 1) * 1 * 1
    pruned = enumerate_reduction_types({3: f3, 5: f5, 13: f13}, {5}, p=7,
                                       prune=True)
    assert len(pruned) == 1
    assert pruned[0].c_sigma == 1
    # S = {13}: split case, 3 cusp points
    types13 = enumerate_reduction_types({3: f3, 5: f5, 13: f13}, {13}, p=7,
                                        prune=True)
    assert len(types13) == 3
    assert all(t.c_sigma == 1 for t in types13)


def test_enumeration_unpruned_product_formula():
    rng = random.Random(17)
    for _ in range(40):
        fibres = {}
        s_primes = set()
        expected = 1
        for q in (3, 5, 11):
            fb = random_fibre(rng, prime=q)
            fibres[q] = fb
            in_s = (rng.random() < 0.5 and fb.smooth_cusp_points != []
                    and check_d_transversal(fb))
            n_ell = fb.n_components_with_point()
            if in_s:
                s_primes.add(q)
                expected *= n_ell + len(fb.smooth_cusp_points)
            else:
                expected *= n_ell
        if expected == 0:
            continue
        types = enumerate_reduction_types(fibres, s_primes, p=7)
        assert len(types) == expected


def test_enumeration_missing_fibre():
    with pytest.raises(MissingFibre):
        enumerate_reduction_types({}, {5})


def test_enumeration_no_fibres_one_type():
    types = enumerate_reduction_types({}, set())
    assert len(types) == 1
    assert types[0].c_sigma == 0


# -- reports ---------------------------------------------------------------------

def test_report_all_good_integral_base():
    curve = HyperellipticCurve([0, 1, 6, 5, 1])
    f11 = good_reduction_fibre(curve, 11)
    inv = NumberFieldInvariants(degree=1, unit_rank=0, genus=1, n=2,
                                num_cusps=2, n1=2, n2=0, mw_rank=1)
    types = enumerate_reduction_types({11: f11}, set())
    assert len(types) == 1
    report = selmer_set_rank_report({11: f11}, types[0], inv)
    assert report.rank == ker_sigma_rank(inv)
    assert all(cs.kind == "point" and cs.base.is_zero()
               for cs in report.locals.values())


def test_report_single_constraint_class_when_boundary_meets_one_component():
    # both supplied fibres have one component: every type shares one class
    f3 = fibre("fibre_cubic_3.json")
    f5 = fibre("fibre_cubic_5.json")
    types = enumerate_reduction_types({3: f3, 5: f5}, set(), p=7)
    groups = group_types_by_constraints({3: f3, 5: f5}, types, INV_CUBIC)
    assert len(groups) == 1


def test_report_split_cusp_classes_distinct():
    f13 = fibre("fibre_cubic_13.json")
    types = enumerate_reduction_types({13: f13}, {13}, p=7, prune=True)
    groups = group_types_by_constraints({13: f13}, types, INV_CUBIC)
    assert len(groups) == 3  # three distinct cuspidal constraint classes
