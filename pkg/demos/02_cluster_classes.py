"""Cluster equivalence, the counting function N(rho), and cluster groups.

Two rho-clusters are equivalent when an isometry carries center to center
and point set onto point set; a cluster is more than its bare point set.
N(rho) counts equivalence classes; the cluster group collects the
center-fixing self-maps.
"""

from fractions import Fraction as F

from delone import (Radical, classify, cluster, cluster_group,
                    clusters_equivalent, group_orders_by_class, n_profile,
                    square_lattice, three_coset_fixture)
from delone.geometry import Tolerance
from delone.sets import Cluster

print(__doc__)
TOL = Tolerance.exact_mode()

z2 = square_lattice()

# translates of the same cluster shape are equivalent
c1 = cluster(z2, (F(0), F(0)), 1)
c2 = cluster(z2, (F(3), F(4)), 1)
witness = clusters_equivalent(c1, c2, TOL)
print("witness for C(0,0) ~ C(3,4):  linear =", witness.linear,
      " shift =", witness.shift)

# the same POINT SET around two different centers need not be equivalent:
pts = tuple(sorted([(F(0), F(0)), (F(1), F(0)), (F(3), F(0))]))
ca = Cluster(center=(F(0), F(0)), radius=Radical.of(F(10)), points=pts)
cb = Cluster(center=(F(1), F(0)), radius=Radical.of(F(10)), points=pts)
print("same row {0,1,3} about centers 0 and 1 equivalent?",
      clusters_equivalent(ca, cb, TOL) is not None)

# a chiral cluster matches its mirror image through a det = -1 witness
chiral = Cluster(center=(F(0), F(0)), radius=Radical.of(4), points=tuple(sorted(
    [(F(0), F(0)), (F(1), F(0)), (F(0), F(2)), (F(-3), F(0))])))
mirror = Cluster(center=(F(0), F(0)), radius=Radical.of(4), points=tuple(sorted(
    [(F(0), F(0)), (F(-1), F(0)), (F(0), F(2)), (F(3), F(0))])))
w = clusters_equivalent(chiral, mirror, TOL)
print("chiral vs mirror: witness determinant =", w.det())

# classify: Z^2 is translation-transitive, one class at every radius
print("Z^2: N(3) =", classify(z2, 3).n)

# the three-coset fixture splits into two classes at 2R = 1
fixture = three_coset_fixture()
part = classify(fixture, 1)
print("three-coset fixture: N(2R) =", part.n,
      " class sizes:", [len(c.members) for c in part.classes])
print(" group orders by class:", group_orders_by_class(part))

# N(rho) is a non-decreasing right-continuous step function
prof = n_profile(fixture, 2)
print("N(rho) profile of the fixture up to rho = 2:")
for b, v in zip(prof.breakpoints, prof.values):
    print(f"   rho >= {float(b):.6f}: N = {v}")

# cluster groups: the 4-neighbor cross of Z^2 has the full dihedral symmetry
g = cluster_group(z2, (F(0), F(0)), 1)
print("Z^2 cluster group at rho = 1: order", g.order,
      "(4 rotations + 4 reflections)")
g2 = cluster_group(z2, (F(0), F(0)), Radical.sqrt(8))
print("at rho = sqrt(8) the group is still order", g2.order,
      "and is a subgroup of the smaller-radius group:",
      g2.is_subgroup_of(g))
