"""
Torsion from the heat content
=============================

The torsion is the time integral of the heat content, and heat contents
multiply over products, so a box only needs interval heat contents.
"""

import math

from spectral_torsion import exact, heat

# heat content of the unit interval, early and late
for t in (0.0, 1e-4, 1e-2, 0.1, 0.5, 1.0):
    print(f"Q(1, {t:g}) = {heat.q_interval(1.0, t):.12g}")

# the integral recovers a^3/12
print()
T = heat.heat_torsion(heat.interval_curve(1.0), 1e-11)
print(f"int Q dt = {T:.15f}   1/12 = {1 / 12:.15f}")

# rectangles: series against quadrature of the product heat content
print()
for a, b in [(1, 1), (1, 3), (0.2, 1.7)]:
    series = exact.rect_torsion_series(a, b)[0]
    quad = heat.torsion_rect_via_heat(a, b)
    print(f"{a} x {b}: series {series:.12g}  heat {quad:.12g}")

# thin slabs (0, eps) x (0, 1) squeezed between the product bounds
print()
print("  eps     lower          T              upper")
for eps in (0.2, 0.1, 0.05):
    T = exact.rect_torsion_series(eps, 1.0)[0]
    up = heat.product_torsion_upper(eps**3 / 12, 1.0)
    lo = heat.product_torsion_lower(eps**3 / 12, math.pi**2 / eps**2, eps, 1, 1.0, 2.0)
    print(f"{eps:5.2f}   {lo:.6e}   {T:.6e}   {up:.6e}")

# the lower bound on T lambda1^2 from the spectrum, against the disk
print()
print(f"spectral lower bound (d=2): {heat.ab_bound(2):.4f}")
print(f"disk value                 : {exact.kohler_jobin_ball(2):.4f}")
