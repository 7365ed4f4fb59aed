"""Delone sets and their two defining radii.

A Delone set keeps points at least 2r apart (packing) while leaving no
empty ball of radius larger than R (covering).  This walk-through builds a
few classic sets, reads off r and R exactly, and inspects clusters,
distance spectra and 2R-chains.
"""

from fractions import Fraction as F

from delone import (build_periodic, cluster, crop_to_window,
                    delone_params, distance_spectrum, square_lattice,
                    triangular_lattice, two_r_chain)

print(__doc__)

# -- the square lattice --------------------------------------------------
z2 = square_lattice()
params = delone_params(z2)
print("Z^2:")
print("  r =", params.r, "=", float(params.r))
print("  R =", params.R, "=", float(params.R), "(circumradius of a unit square)")

# clusters are closed balls: at rho = sqrt(2) the diagonals join exactly
for rho, label in ((1, "rho = 1"), (F(9, 10), "rho = 0.9 (< 2r)"),):
    c = cluster(z2, (F(0), F(0)), rho)
    print(f"  |C(0, {label})| = {c.size}")
from delone import Radical
c = cluster(z2, (F(0), F(0)), Radical.sqrt(2))
print("  |C(0, sqrt(2))| =", c.size, "(the four diagonal points sit exactly on the sphere)")

spec = distance_spectrum(z2, (F(0), F(0)), F(21, 10))
print("  spectrum up to 2.1:", [str(d) for d in spec.distances])

# -- the triangular lattice: exact arithmetic in Q(sqrt 3) ----------------
tri = triangular_lattice()
pt = delone_params(tri)
print("triangular lattice:  r =", pt.r, "  R =", pt.R, "=", float(pt.R))

# -- a rectangular lattice, the starting point of the shifted-row family --
rect = build_periodic(((F(1, 5), F(0)), (F(0), F(1))), [(F(0), F(0))])
pr = delone_params(rect)
print("rectangular a=1/5, b=1:   R =", pr.R, "(= sqrt(a^2+b^2)/2 exactly)")

# -- finite windows flag what they cannot know ----------------------------
window = crop_to_window(z2, (F(-10), F(-10)), (F(10), F(10)))
pw = delone_params(window)
print("21x21 window of Z^2:", len(window.points), "points;",
      "R is a", pw.R_exactness)

# -- every pair of points is linked by a chain of short hops --------------
chain = two_r_chain(z2, (F(0), F(0)), (F(3), F(0)))
print("2R-chain (0,0) -> (3,0):", [tuple(map(int, v)) for v in chain.vertices])
print("every consecutive gap is strictly below 2R =", float(2 * params.R))
