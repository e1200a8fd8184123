"""
The attainable set and the scalarized problems
==============================================

Points (lambda1, 1/(lambda1 T)) of unit-area shapes, the curves that bound
them, and the minimizers of k lambda1 + T and l lambda2 + T.
"""

import tempfile
from pathlib import Path

from spectral_torsion import diagram
from spectral_torsion.diagram import Family

# the disk is the tip of the cone
print(f"disk: x = {diagram.FK_X:.4f}, y = {diagram.region_bounds(diagram.FK_X)[0]:.4f}")

# two disks trace a curve that returns to the same height
for p in diagram.sample_family(Family.TWO_DISKS, 5):
    print(f"r/R = {p.params[0]:.2f}: x = {p.x:8.4f}  y = {p.y:.6f}  curve {diagram.two_disk_curve(p.x):.6f}")

# rectangles stay under their bound curve
print()
for p in diagram.sample_family(Family.RECTANGLES, 6):
    print(f"b/a = {p.params[0]:6.2f}: x = {p.x:8.3f}  y = {p.y:.6f}  bound {diagram.rect_curve(p.x):.6f}")

# write the data for a plot
out = Path(tempfile.mkdtemp())
pts = [p for f in (Family.TWO_DISKS, Family.RECTANGLES, Family.OMEGA_N)
       for p in diagram.sample_family(f, 30)]
diagram.write_points_csv(pts, out / "points.csv")
diagram.write_bounds_csv([diagram.FK_X * (1 + i / 20) for i in range(60)], out / "bounds.csv")
print()
print(f"wrote {len(pts)} points to {out}")

# k lambda1 + T: a small ball below the threshold, the unit-area ball above
print()
ks = diagram.k_threshold(2)
for k in (ks / 10, ks, 10 * ks):
    pred = diagram.scalarize_k_predict(k, 2)
    brute = diagram.scalarize_brute(k, 1, 2, 100)
    print(f"k = {k:.3e} {pred.regime.value:16s} r = {pred.minimizer.r:.6f}"
          f"  value {pred.value:.8e}  brute {brute.value:.8e} ({brute.family})")

# l lambda2 + T: always two equal balls
ls = diagram.l_threshold(2)
for l in (ls / 10, 10 * ls):
    pred = diagram.scalarize_l_predict(l, 2)
    brute = diagram.scalarize_brute(l, 2, 2, 100)
    print(f"l = {l:.3e} {pred.regime.value:16s} r = {pred.minimizer.parts[0].r:.6f}"
          f"  value {pred.value:.8e}  brute {brute.value:.8e} ({brute.family})")
