"""Certifying global structure from finite local data.

The regular-system check asks for a radius rho0 with a single class of
(rho0+2R)-clusters and no loss of cluster symmetry across the 2R
extension; the crystal check relaxes "single class" to "m classes, stable
across the extension".  Both are exact certificates on periodic input.
"""

from fractions import Fraction as F

from delone import (build_periodic, certify_auto, check_regular_criterion,
                    square_lattice, triangular_lattice)
from delone.scalars import Radical

print(__doc__)

# -- lattices are regular systems -----------------------------------------
for name, handle in (("Z^2", square_lattice()),
                     ("triangular", triangular_lattice())):
    report = certify_auto(handle, "regular")
    print(f"{name}: {report.verdict} at rho0 = {float(report.rho0):.4f}; "
          f"group check {report.group_check}")

# a single-radius evaluation shows the report internals
report = check_regular_criterion(square_lattice(), Radical.sqrt(2))
print("Z^2 at rho0 = 2R:", report.verdict,
      "| N(rho0) =", report.n_at_rho0,
      "| N(rho0+2R) =", report.n_at_rho0_plus_2r,
      "| orders:", report.group_check)

# -- a genuine two-orbit crystal ------------------------------------------
# three columns per cell at x = 0, 3/10, 7/10: the outer pair is a mirror
# orbit, the x = 0 column is its own class, so m = 2
crystal = build_periodic(((F(1), F(0)), (F(0), F(1))),
                         [(F(0), F(0)), (F(3, 10), F(0)), (F(7, 10), F(0))])
report = certify_auto(crystal, "crystal")
print("three-column crystal:", report.verdict, "with m =", report.m)
print("  per-class group stabilization:", report.group_check)

# -- beware: two interleaved copies of one lattice stay a regular system --
# Z^2 united with Z^2 + (3/10, 0) looks like a 2-orbit crystal, but the
# half-turn about (3/20, 0) swaps the copies, so every cluster pair is
# equivalent and the certifier correctly finds m = 1
union = build_periodic(((F(1), F(0)), (F(0), F(1))),
                       [(F(0), F(0)), (F(3, 10), F(0))])
report = certify_auto(union, "crystal")
print("Z^2 union (Z^2 + (3/10, 0)):", report.verdict, "with m =", report.m,
      "(a single regular system)")
