"""
Balls, rectangles and the efficiency lambda1 T / |Omega|
========================================================

"""

import math

from spectral_torsion import Ball, Rect, exact

# the unit disk: lambda1 = j01^2, T = pi/8
disk = exact.summary(Ball(2, 1.0))
print(f"disk       lambda1 = {disk.lambda1:.10f}  T = {disk.torsion:.10f}")

# the unit square goes through the torsion series
square = exact.summary(Rect(1.0, 1.0))
print(f"square     lambda1 = {square.lambda1:.10f}  T = {square.torsion:.10f}")

# efficiency is scale invariant and never exceeds 1
for name, s in [("disk", disk), ("square", square)]:
    print(f"{name:10s} F = {exact.efficiency(s):.6f}")

# the efficiency of balls falls with the dimension
print()
print(" d   F(ball)")
for d in (1, 2, 3, 4, 8, 16, 30):
    print(f"{d:2d}   {exact.alpha(d):.6f}")

# thin rectangles of unit area creep up towards pi^2/12
print()
print("   a      F(Rect(a, 1/a))")
for a in (1.0, 0.5, 0.2, 0.1, 0.05, 0.02):
    F = exact.efficiency(exact.summary(Rect(a, 1 / a)))
    print(f"{a:5.2f}   {F:.6f}")
print(f"limit   {math.pi**2 / 12:.6f}")

# the torsion of a long rectangle against its two-term expansion
a, b = 0.1, 10.0
T, err = exact.rect_torsion_series(a, b)
asym, bound = exact.rect_torsion_asymptotic(a, b)
print()
print(f"T({a} x {b}) = {T:.12g} (series err {err:.1e})")
print(f"asymptotic  = {asym:.12g}, |difference| <= {bound:.1e}")
