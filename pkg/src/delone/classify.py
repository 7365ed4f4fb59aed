"""Cluster equivalence, the class partition, and cluster groups.

Two clusters are equivalent when some isometry carries one center to the
other and one point set onto the other.  Witnesses are synthesized from
point correspondences: pick a frame of independent offsets in the first
cluster, enumerate candidate images with matching distance data in the
second, solve for the unique linear part, then verify orthogonality and a
full set bijection.  Cluster sizes are bounded by packing, so the frame
enumeration stays small.

Degenerate clusters (offsets spanning fewer than d dimensions) get their
frame completed with orthogonal-complement vectors.  A rank deficit of one
contributes a +-1 choice on the normal line; a deficit of two or more
makes the center-fixing group infinite and ``cluster_group`` raises.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .geometry import (Isometry, Tolerance, apply, compose, dist_sq, identity,
                       mat_mul, mat_solve, orthogonal_complement, p_dot,
                       p_sub, rank)
from .scalars import Radical, field_sqrt, quadext, sfloat
from .sets import Cluster, as_radius, cluster, distance_spectrum

__all__ = [
    "Fingerprint",
    "ClusterClass",
    "ClusterPartition",
    "ClusterGroup",
    "NRhoProfile",
    "InfiniteGroupError",
    "fingerprint",
    "clusters_equivalent",
    "classify",
    "cluster_group",
    "cluster_group_of",
    "n_profile",
    "group_orders_by_class",
]


class InfiniteGroupError(Exception):
    """The cluster's center-fixing symmetry group is not finite."""


@dataclass(frozen=True)
class Fingerprint:
    """Isometry-invariant cluster summary used as a fast equivalence filter.

    One entry per cluster point: squared distance from the center plus the
    sorted row of squared distances to every cluster point; the multiset of
    entries is sorted canonically.  ``digest`` is a cheap hashable proxy
    (floats) used to bucket candidates before the exact comparison.
    """

    data: tuple
    digest: tuple = None

    def __post_init__(self):
        if self.digest is None:
            dg = (len(self.data),
                  tuple(round(sfloat(d2c), 9) for d2c, _ in self.data))
            object.__setattr__(self, "digest", dg)

    def __len__(self):
        return len(self.data)


@lru_cache(maxsize=512)
def _point_entries(c):
    """Per-point (d2-to-center, sorted squared-distance row), points order.

    Rational coordinates are rescaled to integers so the all-pairs table
    runs on machine ints; the handful of distinct values then lift back to
    Fractions once each.
    """
    pts = c.points
    scale = 1
    fast = True
    for p in pts:
        for x in p:
            if isinstance(x, Fraction):
                scale = math.lcm(scale, x.denominator)
            elif not isinstance(x, int):
                fast = False
                break
        if not fast:
            break
    if not fast or isinstance(c.center[0], float):
        out = []
        for p in pts:
            row = sorted(dist_sq(p, q) for q in pts)
            out.append((dist_sq(p, c.center), tuple(row)))
        return tuple(out)
    ipts = [tuple(int(x * scale) for x in p) for p in pts]
    icen = tuple(int(x * scale) for x in c.center)
    s2 = scale * scale
    memo = {}

    def fr(v):
        f = memo.get(v)
        if f is None:
            f = Fraction(v, s2)
            memo[v] = f
        return f

    n = len(ipts)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        pi = ipts[i]
        for j in range(i + 1, n):
            s = 0
            for a, b in zip(pi, ipts[j]):
                t = a - b
                s += t * t
            rows[i][j] = rows[j][i] = s
    out = []
    for i in range(n):
        d2c = 0
        for a, b in zip(ipts[i], icen):
            t = a - b
            d2c += t * t
        out.append((fr(d2c), tuple(fr(v) for v in sorted(rows[i]))))
    return tuple(out)


@lru_cache(maxsize=512)
def _fingerprint_cached(c):
    return Fingerprint(data=tuple(sorted(_point_entries(c))))


def fingerprint(c, tol):
    return _fingerprint_cached(c)


def _entries_match(e1, e2, tol):
    if tol.exact:
        return e1 == e2
    d1, row1 = e1
    d2, row2 = e2
    if len(row1) != len(row2):
        return False
    band = 4 * tol.eps_abs

    def close(a, b):
        return abs(a - b) <= band * (1.0 + math.sqrt(abs(a) + abs(b)))

    return close(d1, d2) and all(close(a, b) for a, b in zip(row1, row2))


def fingerprints_match(f1, f2, tol):
    if len(f1) != len(f2):
        return False
    if tol.exact:
        return f1.digest == f2.digest and f1.data == f2.data
    return all(_entries_match(a, b, tol) for a, b in zip(f1.data, f2.data))


# ---------------------------------------------------------------------------
# witness synthesis

def _greedy_frame(offsets, tol):
    """Independent offsets preferring small distance shells; sorted input."""
    frame = []
    for v in offsets:
        if rank(frame + [v], exact=tol.exact) > len(frame):
            frame.append(v)
            if len(frame) == len(v):
                break
    return frame


def _sorted_offsets(c, tol):
    offs = list(c.offsets())
    offs.sort(key=lambda v: (sfloat(p_dot(v, v)), tuple(map(sfloat, v))))
    return offs


def _profiles(c, tol):
    """Per-offset invariants within the cluster: (|v|^2, sorted row)."""
    entries = _point_entries(c)
    prof = {}
    for p, entry in zip(c.points, entries):
        if p == c.center:
            continue
        prof[p_sub(p, c.center)] = entry
    return prof


def _gram_ok(frame, images, v, t, tol):
    if tol.exact:
        if p_dot(v, v) != p_dot(t, t):
            return False
        return all(p_dot(v, f) == p_dot(t, g) for f, g in zip(frame, images))
    eps = 8 * tol.eps_abs

    def close(a, b):
        return abs(a - b) <= eps * (1.0 + abs(a) + abs(b))

    if not close(p_dot(v, v), p_dot(t, t)):
        return False
    return all(close(p_dot(v, f), p_dot(t, g)) for f, g in zip(frame, images))


def _solve_map(frame_rows, image_rows, tol):
    """Row-major orthogonal matrix O with O @ f_i = t_i, or None."""
    cols = mat_solve(tuple(frame_rows),
                     tuple(tuple(r[k] for r in image_rows) for k in range(len(frame_rows[0]))),
                     exact=tol.exact)
    if cols is None:
        return None
    o = tuple(cols)  # column k of O^T is row k of O
    iso = Isometry(o, tuple((0 if tol.exact else 0.0) for _ in range(len(o))))
    if not iso.is_orthogonal(tol):
        return None
    return o


def _map_bijects(o, offs1, offs2_set, tol, grid=None):
    for v in offs1:
        image = tuple(sum(o[i][j] * v[j] for j in range(len(v))) for i in range(len(o)))
        if tol.exact:
            if image not in offs2_set:
                return False
        else:
            if grid is None or not grid.has(image):
                return False
    return True


class _FloatGrid:
    """Hash grid for approximate point membership in floating mode."""

    def __init__(self, points, eps):
        self.eps = eps
        self.cell = max(4 * eps, 1e-12)
        self.map = {}
        for p in points:
            self.map.setdefault(self._key(p), []).append(p)

    def _key(self, p):
        return tuple(int(math.floor(c / self.cell)) for c in p)

    def has(self, p):
        base = self._key(p)
        from itertools import product
        for off in product((-1, 0, 1), repeat=len(p)):
            for q in self.map.get(tuple(a + b for a, b in zip(base, off)), ()):
                if all(abs(a - b) <= self.eps for a, b in zip(p, q)):
                    return True
        return False


def _scale_root(ratio):
    """sqrt of a positive rational, lifting to Q(sqrt(disc)) if needed."""
    if not isinstance(ratio, Fraction):
        if isinstance(ratio, int):
            ratio = Fraction(ratio)
        else:
            raise NotImplementedError(
                "cross-span completion over a quadratic field is unsupported")
    mu = field_sqrt(ratio)
    if mu is not None:
        return mu
    disc = ratio.numerator * ratio.denominator
    return quadext(0, Fraction(1, ratio.denominator), disc)


def _complement_images(comp1, offs2, d, tol):
    """Images for complement frame vectors when spans differ.

    Scales the target complement basis so lengths match; exact mode lifts
    into a quadratic extension when the scale is irrational.
    """
    from .geometry import _fdiv
    comp2 = orthogonal_complement(offs2, d)
    if len(comp2) != len(comp1):
        return None
    images = []
    for u, w in zip(comp1, comp2):
        n1, n2 = p_dot(u, u), p_dot(w, w)
        if tol.exact:
            mu = _scale_root(_fdiv(n1, n2))
        else:
            mu = math.sqrt(n1 / n2)
        images.append(tuple(mu * c for c in w))
    return images


def _witness_linear_parts(c1, c2, tol, want_all):
    """Orthogonal linear parts mapping offsets(c1) onto offsets(c2).

    Yields row-major matrices; enumeration order is deterministic.
    """
    offs1 = _sorted_offsets(c1, tol)
    offs2 = _sorted_offsets(c2, tol)
    if len(offs1) != len(offs2):
        return
    d = c1.dim
    if not offs1:
        from .geometry import mat_identity
        if not want_all:
            yield mat_identity(d)  # canonical witness: plain translation
        elif d == 1:
            yield mat_identity(d)
            yield ((Fraction(-1),),)
        else:
            raise InfiniteGroupError(
                f"a single-point cluster in {d}-d has stabilizer O({d})")
        return
    prof1 = _profiles(c1, tol)
    prof2 = _profiles(c2, tol)
    frame = _greedy_frame(offs1, tol)
    s = len(frame)
    comp1 = orthogonal_complement(frame, d) if s < d else []
    spans_parallel = s == d or rank(frame + offs2, exact=tol.exact) == s
    offs2_set = frozenset(offs2) if tol.exact else None
    grid = None if tol.exact else _FloatGrid(offs2, tol.eps_abs)

    def candidates(v):
        pv = prof1[v]
        out = [t for t in offs2 if _entries_match(prof2[t], pv, tol)]
        return out

    comp_image_choices = None
    if s < d:
        if spans_parallel:
            base = [list(comp1)]
        else:
            imgs = _complement_images(comp1, offs2, d, tol)
            if imgs is None:
                return
            base = [imgs]
        if d - s == 1:
            comp_image_choices = [base[0], [tuple(-c for c in base[0][0])]]
        elif want_all:
            raise InfiniteGroupError(
                f"cluster spans only {s} of {d} dimensions; its group is infinite")
        else:
            comp_image_choices = [base[0]]

    def assignments(i, images):
        if i == s:
            yield list(images)
            return
        for t in candidates(frame[i]):
            if t in images:
                continue
            if _gram_ok(frame[:i], images, frame[i], t, tol):
                yield from assignments(i + 1, images + [t])

    seen = set()
    for images in assignments(0, []):
        comp_choices = comp_image_choices or [[]]
        for comp_imgs in comp_choices:
            o = _solve_map(frame + comp1, images + list(comp_imgs), tol)
            if o is None:
                continue
            if not _map_bijects(o, offs1, offs2_set, tol, grid):
                continue
            key = o if tol.exact else tuple(tuple(round(x, 9) for x in row) for row in o)
            if key in seen:
                continue
            seen.add(key)
            yield o
            if not want_all:
                return


def clusters_equivalent(c1, c2, tol=None):
    """A witness isometry g with g(center1) = center2 and g(C1) = C2, or None.

    Radii must agree.  The witness may reverse orientation (det -1); for
    rank-deficient clusters one canonical completion is returned out of the
    continuum of valid witnesses.
    """
    tol = tol or Tolerance.exact_mode()
    if tol.exact:
        r1 = c1.radius if isinstance(c1.radius, Radical) else Radical.of(c1.radius)
        if r1.cmp(c2.radius if isinstance(c2.radius, Radical) else Radical.of(c2.radius)) != 0:
            raise ValueError("clusters have different radii")
    elif abs(c1.radius - c2.radius) > tol.eps_abs:
        raise ValueError("clusters have different radii")
    if c1.size != c2.size:
        return None
    if not fingerprints_match(fingerprint(c1, tol), fingerprint(c2, tol), tol):
        return None
    for o in _witness_linear_parts(c1, c2, tol, want_all=False):
        shift = p_sub(c2.center, tuple(sum(o[i][j] * c1.center[j] for j in range(c1.dim))
                                       for i in range(c1.dim)))
        return Isometry(o, shift)
    return None


def cluster_group_of(c, tol=None):
    """The full finite group of center-fixing self-maps of a cluster."""
    tol = tol or Tolerance.exact_mode()
    elements = []
    for o in _witness_linear_parts(c, c, tol, want_all=True):
        shift = p_sub(c.center, tuple(sum(o[i][j] * c.center[j] for j in range(c.dim))
                                      for i in range(c.dim)))
        elements.append(Isometry(o, shift))
    group = ClusterGroup(center=c.center, rho=c.radius, elements=tuple(elements),
                         tol=tol)
    group.verify_closure()
    return group


def cluster_group(handle, x, rho):
    """Group of the rho-cluster at x; see :func:`cluster_group_of`."""
    return cluster_group_of(cluster(handle, x, rho), handle.tol)


@dataclass(frozen=True)
class ClusterGroup:
    """Center-fixing isometries mapping a cluster onto itself."""

    center: tuple
    rho: object
    elements: tuple
    tol: Tolerance

    @property
    def order(self):
        return len(self.elements)

    def linear_set(self):
        if self.tol.exact:
            return frozenset(g.linear for g in self.elements)
        return tuple(g.linear for g in self.elements)

    def contains_linear(self, lin):
        if self.tol.exact:
            return lin in self.linear_set()
        from .geometry import ORTHO_EPS
        for other in self.elements:
            if all(abs(a - b) <= ORTHO_EPS
                   for ra, rb in zip(lin, other.linear) for a, b in zip(ra, rb)):
                return True
        return False

    def verify_closure(self):
        for g in self.elements:
            if not self.contains_linear(g.inverse().linear):
                raise AssertionError("cluster group not closed under inverse")
        for g in self.elements:
            for h in self.elements:
                if not self.contains_linear(mat_mul(g.linear, h.linear)):
                    raise AssertionError("cluster group not closed under composition")

    def equals(self, other):
        """Element-wise equality of two groups at the same center."""
        if self.order != other.order:
            return False
        return all(other.contains_linear(g.linear) for g in self.elements)

    def is_subgroup_of(self, bigger):
        return all(bigger.contains_linear(g.linear) for g in self.elements)


# ---------------------------------------------------------------------------
# the partition X_1 .. X_N(rho)

@dataclass(frozen=True)
class ClusterClass:
    representative: Cluster
    members: tuple      # member center points, lexicographic; rep first
    witnesses: tuple    # per member, isometry sending representative to it


@dataclass(frozen=True)
class ClusterPartition:
    """Equivalence classes of rho-clusters over the classified population."""

    rho: object
    classes: tuple
    tol: Tolerance

    @property
    def n(self):
        return len(self.classes)

    def class_of(self, point):
        for i, cl in enumerate(self.classes):
            if point in cl.members:
                return i
        raise KeyError(f"{point} was not classified")


def classify(handle, rho):
    """Partition the population into classes of equivalent rho-clusters.

    Population: motif points of a periodic set, or interior points of a
    window.  Representatives are the lexicographically smallest members and
    every member carries a witness isometry from the representative.
    """
    radius = as_radius(rho, handle.tol)
    population = sorted(handle.population(radius))
    tol = handle.tol
    reps = []      # (cluster, fingerprint, members, witnesses)
    exact_index = {}
    for x in population:
        cx = cluster(handle, x, radius)
        fx = fingerprint(cx, tol)
        witness = None
        hit = None
        if tol.exact:
            for idx in exact_index.get(fx.digest, ()):
                if reps[idx][1].data != fx.data:
                    continue
                witness = clusters_equivalent(reps[idx][0], cx, tol)
                if witness is not None:
                    hit = idx
                    break
        else:
            for idx, (rc, rf, _, _) in enumerate(reps):
                if not fingerprints_match(rf, fx, tol):
                    continue
                witness = clusters_equivalent(rc, cx, tol)
                if witness is not None:
                    hit = idx
                    break
        if hit is None:
            reps.append((cx, fx, [x], [identity(handle.dim)]))
            if tol.exact:
                exact_index.setdefault(fx.digest, []).append(len(reps) - 1)
        else:
            reps[hit][2].append(x)
            reps[hit][3].append(witness)
    classes = tuple(ClusterClass(representative=rc, members=tuple(ms), witnesses=tuple(ws))
                    for rc, _, ms, ws in reps)
    return ClusterPartition(rho=radius, classes=classes, tol=tol)


@dataclass(frozen=True)
class NRhoProfile:
    """The cluster counting function N(rho) sampled at its breakpoints.

    Values are right-continuous: value[i] holds on [breakpoints[i],
    breakpoints[i+1]).  For windows the population is fixed to the points
    interior at rho_max so the profile is monotone by construction.
    """

    breakpoints: tuple
    values: tuple

    def value_at(self, rho):
        out = None
        for b, v in zip(self.breakpoints, self.values):
            if (b.cmp(rho) <= 0) if isinstance(b, Radical) else b <= sfloat(rho):
                out = v
        return 1 if out is None else out


def n_profile(handle, rho_max):
    """Evaluate N at every distance-spectrum breakpoint up to rho_max."""
    radius = as_radius(rho_max, handle.tol)
    population = sorted(handle.population(radius))
    tol = handle.tol
    if tol.exact:
        d2s = set()
        for x in population:
            d2s.update(distance_spectrum(handle, x, radius).dist_sqs)
        breakpoints = [Radical.sqrt(d2) for d2 in sorted(d2s, key=sfloat)]
    else:
        vals = []
        for x in population:
            vals.extend(distance_spectrum(handle, x, radius).distances)
        vals.sort()
        breakpoints = []
        for v in vals:
            if not breakpoints or v - breakpoints[-1] > tol.eps_abs:
                breakpoints.append(v)
    part_max = classify(handle, radius)
    rep_points = [cl.representative.center for cl in part_max.classes]
    values = []
    for b in breakpoints:
        values.append(_count_classes_among(handle, rep_points, b))
    for a, b in zip(values, values[1:]):
        if a > b:
            raise AssertionError("N(rho) profile must be non-decreasing")
    return NRhoProfile(breakpoints=tuple(breakpoints), values=tuple(values))


def _count_classes_among(handle, points, rho):
    tol = handle.tol
    reps = []
    for x in points:
        cx = cluster(handle, x, rho)
        fx = fingerprint(cx, tol)
        if not any(fingerprints_match(rf, fx, tol)
                   and clusters_equivalent(rc, cx, tol) is not None
                   for rc, rf in reps):
            reps.append((cx, fx))
    return len(reps)


def group_orders_by_class(partition):
    """Per-class group order M_i, verified at a sampled member by conjugation.

    Groups of equivalent clusters are conjugate, so the order computed at
    the representative must recur at any member; the check conjugates the
    representative group by the member's witness and verifies it maps the
    member cluster onto itself.
    """
    tol = partition.tol
    out = []
    for idx, cl in enumerate(partition.classes):
        group = cluster_group_of(cl.representative, tol)
        if len(cl.members) > 1:
            w = cl.witnesses[1]
            member_pts = frozenset(apply(w, p) for p in cl.representative.points) \
                if tol.exact else [apply(w, p) for p in cl.representative.points]
            grid = None if tol.exact else _FloatGrid(member_pts, tol.eps_abs)
            w_inv = w.inverse()
            for g in group.elements:
                conj = compose(w, compose(g, w_inv))
                for p in (member_pts if tol.exact else list(member_pts)):
                    q = apply(conj, p)
                    ok = (q in member_pts) if tol.exact else grid.has(q)
                    if not ok:
                        raise AssertionError(
                            "conjugated group element does not preserve the member cluster")
        out.append((idx, group.order))
    return out
