#!/usr/bin/env python3
# The certified zero sweep on a genus-2 curve whose integral points over
# Z[zeta_3] are pinned down by a single annihilating differential: each
# residue disc mod 7 carries exactly one zero of the integral, located at
# the known point anchoring the disc.

from pathlib import Path

from affchab import HyperellipticCurve, load_alpha_fixture, strassmann_sweep
from affchab.chabauty import ChabautyFunction, rho_series_on_disc
from affchab.hyperell import ResidueDisc

DATA = Path(__file__).resolve().parent.parent / "data"

curve = HyperellipticCurve([1, -10, 1, 6, 2, -4, 1])
fixture = load_alpha_fixture((DATA / "alphas_imagquad_7.json").read_text())
print("annihilating differential coefficients:")
for j, a in enumerate(fixture.alphas):
    print(f"  alpha_{j} =", a)

fn = ChabautyFunction(7, fixture.alphas, fixture.constant)

# the series on the disc of (0,1): coefficient valuations start
# (inf, 3, 4, 5, 6, 11, 8) and the tail stays at 8 or above, so the
# minimal valuation is attained once and the count is certified
disc = ResidueDisc(curve, 7, 0, 1, center_x=0, y_seed=1)
series = rho_series_on_disc(curve, fn, disc, n_terms=10)
print("\ndisc (0,1) coefficient valuations:", series.valuation_profile()[:8])
print("tail bound:", series.tail_base)

report = strassmann_sweep(curve, fn, 7, fixture.known_points)
print("\nper-disc verdicts:")
for v in report.verdicts:
    print(f"  disc {v.disc_label}: {v.verdict}  anchors {v.anchors}")
print("certified zeros:", report.exact_zeros,
      " component bound:", report.component_bound)
print("zero set equals the six known points:",
      report.all_exact and report.exact_zeros == 6)
