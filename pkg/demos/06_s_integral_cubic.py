#!/usr/bin/env python3
# S-integral points on the genus-1 cubic with one rational and one
# quadratic cusp: enumerating reduction types at a denominator prime q and
# turning fibre data into the point-count bound, which depends only on
# whether q splits at the quadratic cusp.

from pathlib import Path

from affchab import (
    NumberFieldInvariants,
    bound_general,
    bound_improved,
    enumerate_reduction_types,
    parse_fibre_file,
)
from affchab.selmer import group_types_by_constraints

DATA = Path(__file__).resolve().parent.parent / "data"

inv = NumberFieldInvariants(degree=1, unit_rank=0, genus=1, n=3,
                            num_cusps=2, n1=1, n2=1, mw_rank=1)

fibres = {q: parse_fibre_file((DATA / f"fibre_cubic_{q}.json").read_text())
          for q in (3, 5, 7, 11, 13)}

for q in (5, 11, 13):
    supplied = {3: fibres[3], 5: fibres[5], 7: fibres[7], q: fibres[q]}
    types = enumerate_reduction_types(supplied, {q}, p=7, prune=True)
    groups = group_types_by_constraints(
        {qq: f for qq, f in supplied.items() if qq != 7}, types, inv)
    general = bound_general(supplied, 7, inv, {q})
    improved = bound_improved(supplied, 7, inv, {q})
    split = "splits" if q % 3 == 1 else "stays inert"
    print(f"q = {q} ({split} at the quadratic cusp): "
          f"{len(types)} cuspidal type(s), {len(groups)} constraint class(es)")
    print(f"  bound: {improved}  (unpruned product: {general})")
