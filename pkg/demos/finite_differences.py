"""
Finite differences on the unit disk
===================================

"""

import math

from spectral_torsion import Ball, fd_solver

lam_exact = 2.404825557695773**2
T_exact = math.pi / 8

print("    h     nodes     lambda1 err    T err")
prev = None
for n in (16, 32, 64, 128):
    dom = fd_solver.rasterize(Ball(2, 1.0), 1 / n)
    T, w = fd_solver.torsion_fd(dom)
    lam = fd_solver.eigen_fd(dom)[0]
    print(f"1/{n:<4d} {dom.count:8d}   {lam / lam_exact - 1:+.3e}   {T / T_exact - 1:+.3e}")
    if prev is not None:
        lam_x = fd_solver.extrapolate(prev[0], lam)
        T_x = fd_solver.extrapolate(prev[1], T)
        print(f"        extrapolated   {lam_x / lam_exact - 1:+.3e}   {T_x / T_exact - 1:+.3e}")
    prev = (lam, T)

# two equal disks share their first eigenvalue
from spectral_torsion import DisjointUnion

pair = fd_solver.rasterize(DisjointUnion((Ball(2, 1.0), Ball(2, 1.0))), 1 / 32)
lam1, lam2 = fd_solver.eigen_fd(pair, 2)
print()
print(f"two disks: {pair.n_components()} components, lambda1 = {lam1:.8f}, lambda2 = {lam2:.8f}")

# the maximum of the torsion function sits at the centre, near 1/4
print(f"max w = {w.values.max():.6f}")
