#!/usr/bin/env python3
# Fibre data and the intersection-theoretic maps: the generalised inverse
# of the intersection matrix, the vertical correction, boundary cycles,
# and the local constraint sets of reduction types.

import json
from pathlib import Path

from affchab import (
    check_d_transversal,
    compute_phi,
    constraint_subset,
    generalised_inverse,
    local_constraint_set,
    parse_fibre_file,
    phi_dot_dtilde,
)
from affchab.modeldata import base_point_of

DATA = Path(__file__).resolve().parent.parent / "data"

# a hand-built two-component fibre: both components multiplicity 1,
# meeting twice, each holding one rational boundary point
fibre = parse_fibre_file(json.dumps({
    "prime": 11, "residue_field_size": 11,
    "components": [
        {"id": "A", "multiplicity": 1, "smooth_noncusp_point_count": 4,
         "has_smooth_point": True},
        {"id": "B", "multiplicity": 1, "smooth_noncusp_point_count": 2,
         "has_smooth_point": True}],
    "intersection_matrix": [[-2, 2], [2, -2]],
    "dtilde_points": [
        {"id": "xA", "cusp": "Q", "residue_degree": 1, "ramification_index": 1},
        {"id": "xB", "cusp": "Q", "residue_degree": 1, "ramification_index": 1}],
    "component_cusp_cycles": {"A": {"xA": 1}, "B": {"xB": 1}},
    "smooth_cusp_points": ["xA", "xB"],
    "base_point": {"component": "A", "cusp_cycle": {}},
}))
print("transversal:", check_d_transversal(fibre))

L, a = generalised_inverse(fibre.intersection_matrix)
print("generalised inverse rows:", L, " common denominator:", a)

# the correction for a point moving from component A to component B
phi = compute_phi(fibre, {"B": 1, "A": -1})
print("Phi(B - A) =", phi)
print("Phi . boundary =", phi_dot_dtilde(fibre, phi))

base = base_point_of(fibre)
for choice in ("A", "B", "xA", "xB"):
    cs = local_constraint_set(fibre, base, choice)
    print(f"constraint set of {choice}: kind={cs.kind}, base={cs.base}",
          f"direction={cs.direction}" if cs.direction else "")

# a component type is swallowed by the cuspidal type of a point on it
cs_b = local_constraint_set(fibre, base, "B")
cs_xb = local_constraint_set(fibre, base, "xB")
print("component B inside the line of xB:", constraint_subset(cs_b, cs_xb))

# the bad fibre of the genus-1 example: the two cusp closures share a
# model point, so listing it as a cuspidal type fails transversality
bad = json.loads((DATA / "fibre_cubic_3.json").read_text())
bad["smooth_cusp_points"] = ["Q1"]
print("collision fibre transversal:",
      check_d_transversal(parse_fibre_file(json.dumps(bad))))
