"""Delone set handles: periodic and finite-window point sets.

A periodic handle is a lattice plus a motif and answers range queries for
the infinite set exactly.  A window handle is a finite list of points cut
from a larger set; statistics at radius rho are only offered for points
whose rho-ball stays inside the trusted region (bounds inset by the
validity margin), because a truncated set is not Delone near its edge.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .geometry import (Lattice, Tolerance, dist_sq, p_add, p_dot, p_sub,
                       point_is_exact)
from .scalars import Radical, is_exact_scalar, sfloat, ssign

__all__ = [
    "PointSetHandle",
    "DeloneParams",
    "Cluster",
    "DistanceSpectrum",
    "Chain",
    "TruncationError",
    "WindowTooSmallError",
    "as_radius",
    "radius_covers",
    "build_periodic",
    "build_window",
    "packing_radius",
    "covering_radius",
    "delone_params",
    "cluster",
    "distance_spectrum",
    "two_r_chain",
    "crop_to_window",
]


class TruncationError(Exception):
    """A query ran off the trusted part of a finite window."""


class WindowTooSmallError(Exception):
    """The window has no interior points at the requested radius."""


def as_radius(rho, tol):
    """Normalize a user-facing radius to a Radical (exact) or float."""
    if tol.exact:
        if isinstance(rho, Radical):
            return rho
        if is_exact_scalar(rho):
            if ssign(rho) < 0:
                raise ValueError("radius must be nonnegative")
            return Radical.of(rho)
        raise TypeError(f"exact mode needs an exact radius, got {type(rho).__name__}")
    return float(rho)


def radius_covers(radius, d2, tol):
    """Whether sqrt(d2) <= radius (closed-ball membership)."""
    if tol.exact:
        sq = radius.square_scalar()
        if sq is not None:
            return ssign(sq - d2) >= 0
        return radius.cmp_sqrt(d2) >= 0
    return math.sqrt(d2) <= radius + tol.eps_abs


def radius_lt(radius, d2, tol):
    """Whether sqrt(d2) < radius strictly (used by 2R-chains)."""
    if tol.exact:
        sq = radius.square_scalar()
        if sq is not None:
            return ssign(sq - d2) > 0
        return radius.cmp_sqrt(d2) > 0
    return math.sqrt(d2) < radius - tol.eps_abs


@dataclass(frozen=True)
class DeloneParams:
    """Packing radius r and covering radius R with exactness flags."""

    r: object
    R: object
    r_exactness: str
    R_exactness: str

    def __post_init__(self):
        if not (sfloat(self.r) > 0):
            raise ValueError("packing radius must be positive")


@dataclass(frozen=True)
class Cluster:
    """A center point together with all set points within a closed radius."""

    center: tuple
    radius: object
    points: tuple  # lexicographically sorted, includes the center

    @property
    def dim(self):
        return len(self.center)

    @property
    def size(self):
        return len(self.points)

    def offsets(self):
        """Points relative to the center (center excluded)."""
        return tuple(p_sub(p, self.center) for p in self.points if p != self.center)


@dataclass(frozen=True)
class DistanceSpectrum:
    """Sorted distinct distances from a center to other set points."""

    center: tuple
    cutoff: object
    distances: tuple          # increasing Radicals (exact) or floats
    dist_sqs: tuple = ()      # squared distances, field scalars (exact mode)


@dataclass(frozen=True)
class Chain:
    """Point sequence with consecutive gaps < 2R linking two set points."""

    vertices: tuple

    def gaps_sq(self):
        return tuple(dist_sq(a, b) for a, b in zip(self.vertices, self.vertices[1:]))


class PointSetHandle:
    """Immutable handle for a Delone set; see module docstring."""

    def __init__(self, mode, dim, tol, lattice=None, motif=None,
                 points=None, bounds=None, margin=0):
        self.mode = mode
        self.dim = dim
        self.tol = tol
        self.lattice = lattice
        self.motif = motif
        self.points = points
        self.bounds = bounds
        self.margin = margin
        self._cache = {}

    # -- membership -------------------------------------------------------

    def contains(self, p):
        if len(p) != self.dim:
            raise ValueError("dimension mismatch")
        if self.mode == "periodic":
            if self.tol.exact:
                return self.lattice.reduce_point(p) in self._motif_set()
            # lattice-coordinate test avoids cell-boundary flapping
            return any(self.lattice.contains(p_sub(p, m), self.tol)
                       for m in self.motif)
        if self.tol.exact:
            return p in self._window_set()
        return any(_close(p, q, self.tol) for q in self.points)

    def _motif_set(self):
        if "motif_set" not in self._cache:
            self._cache["motif_set"] = frozenset(self.motif)
        return self._cache["motif_set"]

    def _window_set(self):
        if "window_set" not in self._cache:
            self._cache["window_set"] = frozenset(self.points)
        return self._cache["window_set"]

    # -- range queries ----------------------------------------------------

    def points_in_ball(self, center, radius):
        """All set points p with |p - center| <= radius, as (d2, p) pairs."""
        rho_f = sfloat(radius)
        out = []
        if self.mode == "periodic":
            pad = 1e-9 * (1.0 + abs(rho_f))
            for m in self.motif:
                v = p_sub(center, m)
                for k in self.lattice.offsets_in_ball(v, rho_f + pad):
                    p = p_add(m, self.lattice.from_coords(k))
                    d2 = dist_sq(p, center)
                    if radius_covers(radius, d2, self.tol):
                        out.append((d2, p))
        else:
            for p in self.points:
                d2 = dist_sq(p, center)
                if radius_covers(radius, d2, self.tol):
                    out.append((d2, p))
        return out

    def neighborhood(self, center, radius):
        """Cached variant of points_in_ball keyed by the center point."""
        key = ("nbhd", center)
        rho_f = sfloat(radius)
        hit = self._cache.get(key)
        if hit is None or hit[0] < rho_f:
            grow = max(rho_f * 1.25, rho_f + 0.01)
            pairs = self.points_in_ball(center, _float_radius_cover(grow, self.tol))
            pairs.sort(key=lambda t: (sfloat(t[0]), t[1]) if self.tol.exact else t)
            hit = (grow, pairs)
            self._cache[key] = hit
        return [t for t in hit[1] if radius_covers(radius, t[0], self.tol)]

    def points_in_box(self, lo, hi):
        """All set points inside the closed axis-aligned box [lo, hi]."""
        if self.mode == "window":
            return [p for p in self.points if _in_box(p, lo, hi, self.tol)]
        corner_radius = math.sqrt(sum((sfloat(a) - sfloat(b)) ** 2
                                      for a, b in zip(lo, hi))) / 2 + 1e-9
        center = tuple(_half(a + b) for a, b in zip(lo, hi))
        out = []
        for m in self.motif:
            v = p_sub(center, m)
            for k in self.lattice.offsets_in_ball(v, corner_radius + 0.01):
                p = p_add(m, self.lattice.from_coords(k))
                if _in_box(p, lo, hi, self.tol):
                    out.append(p)
        return out

    # -- interior bookkeeping ----------------------------------------------

    def boundary_distance(self, p):
        """Distance from p to the trusted-region boundary (window mode)."""
        if self.mode != "window":
            raise ValueError("boundary distance is a window-mode notion")
        lo, hi = self.bounds
        raw = None
        for a, l, h in zip(p, lo, hi):
            for v in (a - l, h - a):
                if raw is None or _lt(v, raw):
                    raw = v
        return raw - self.margin

    def interior_points(self, radius):
        """Points able to host a closed radius-ball inside the trusted region."""
        if self.mode == "periodic":
            return list(self.motif)
        out = []
        for p in self.points:
            bd = self.boundary_distance(p)
            if self.tol.exact:
                if Radical.of(bd).cmp(radius) >= 0:
                    out.append(p)
            else:
                if bd >= radius - self.tol.eps_abs:
                    out.append(p)
        return out

    def population(self, radius):
        """Classification population: motif points or interior points."""
        pts = self.interior_points(radius)
        if not pts:
            raise WindowTooSmallError(
                f"no interior points at radius {sfloat(radius):g}")
        return pts

    def capacity(self):
        """Largest radius for which some interior point exists."""
        if self.mode == "periodic":
            return None
        best = None
        for p in self.points:
            bd = self.boundary_distance(p)
            if best is None or _lt(best, bd):
                best = bd
        return best

    def __repr__(self):
        if self.mode == "periodic":
            return f"<periodic set d={self.dim} motif={len(self.motif)}>"
        return f"<window set d={self.dim} n={len(self.points)}>"


def _half(x):
    return x / 2 if not isinstance(x, int) else Fraction(x, 2)


def _lt(a, b):
    if is_exact_scalar(a) and is_exact_scalar(b):
        return ssign(a - b) < 0
    return sfloat(a) < sfloat(b)


def _close(p, q, tol):
    return all(abs(a - b) <= tol.eps_abs for a, b in zip(p, q))


def _in_box(p, lo, hi, tol):
    if tol.exact:
        return all(ssign(a - l) >= 0 and ssign(h - a) >= 0
                   for a, l, h in zip(p, lo, hi))
    e = tol.eps_abs
    return all(l - e <= a <= h + e for a, l, h in zip(p, lo, hi))


def _float_radius_cover(rho_f, tol):
    """An exact radius guaranteed to be >= the float rho_f."""
    if tol.exact:
        return Radical.of(Fraction(rho_f) + Fraction(1, 1024))
    return rho_f


# ---------------------------------------------------------------------------
# constructors

def _autoscale_eps(handle):
    """Default floating eps_abs is 1e-9 times the estimated packing radius."""
    try:
        r = math.sqrt(min_dist_sq(handle)) / 2
    except ValueError:
        return handle
    if r > 0:
        handle.tol = Tolerance.floating(1e-9 * r)
        handle._cache.clear()
    return handle


def build_periodic(basis, motif, tol=None):
    """Handle for the infinite periodic set motif + Lambda.

    ``basis`` is a Lattice or a sequence of d basis vectors; motif points
    are reduced into the fundamental cell and must be distinct mod Lambda.
    In floating mode with no explicit tolerance, eps_abs defaults to
    1e-9 times the packing radius (a scale-invariant band).
    """
    lattice = basis if isinstance(basis, Lattice) else Lattice(basis)
    autoscale = tol is None and not lattice.exact
    if tol is None:
        tol = Tolerance.exact_mode() if lattice.exact else Tolerance.floating()
    if tol.exact and not lattice.exact:
        raise ValueError("exact mode requires an exact lattice basis")
    motif = list(motif)
    if not motif:
        raise ValueError("motif must be nonempty")
    if any(len(m) != lattice.dim for m in motif):
        raise ValueError("motif dimension mismatch")
    reduced = [lattice.reduce_point(tuple(m)) for m in motif]
    reduced.sort(key=_lex_key(tol))
    for i in range(len(reduced)):
        for j in range(i + 1, len(reduced)):
            if points_equal_mod(reduced[i], reduced[j], lattice, tol):
                raise ValueError(
                    f"motif points {motif[i]} and {motif[j]} coincide mod the lattice")
    handle = PointSetHandle("periodic", lattice.dim, tol,
                            lattice=lattice, motif=tuple(reduced))
    return _autoscale_eps(handle) if autoscale else handle


def points_equal_mod(p, q, lattice, tol):
    return lattice.contains(p_sub(p, q), tol)


def _lex_key(tol):
    # exact scalars are totally ordered, so plain tuple comparison is lex
    return None


def build_window(points, bounds, margin=0, tol=None):
    """Handle for a finite window cut from a larger set.

    ``bounds`` is (lo, hi); all listed points must lie inside.  ``margin``
    insets the trusted region: statistics at radius rho use only points at
    distance >= rho + margin from the bounds.  Floating-point input with no
    explicit tolerance gets eps_abs = 1e-9 times the packing radius.
    """
    points = [tuple(p) for p in points]
    if not points:
        raise ValueError("window point list is empty")
    dim = len(points[0])
    lo, hi = tuple(bounds[0]), tuple(bounds[1])
    if len(lo) != dim or len(hi) != dim:
        raise ValueError("bounds dimension mismatch")
    autoscale = False
    if tol is None:
        exact_pts = all(point_is_exact(p) for p in points)
        tol = Tolerance.exact_mode() if exact_pts else Tolerance.floating()
        autoscale = not exact_pts
    if any(_lt(h, l) for l, h in zip(lo, hi)):
        raise ValueError("bounds are inverted")
    if is_exact_scalar(margin):
        if ssign(margin) < 0:
            raise ValueError("margin must be nonnegative")
    elif margin < 0:
        raise ValueError("margin must be nonnegative")
    for p in points:
        if len(p) != dim:
            raise ValueError("point dimension mismatch")
        if not _in_box(p, lo, hi, tol):
            raise ValueError(f"point {p} lies outside the window bounds")
    points.sort(key=_lex_key(tol))
    if tol.exact:
        if len(set(points)) != len(points):
            raise ValueError("window points are not pairwise distinct")
    else:
        for a, b in zip(points, points[1:]):
            if _close(a, b, tol):
                raise ValueError("window points are not pairwise distinct")
    handle = PointSetHandle("window", dim, tol, points=tuple(points),
                            bounds=(lo, hi), margin=margin)
    return _autoscale_eps(handle) if autoscale else handle


def crop_to_window(handle, lo, hi, margin=0):
    """Materialize a periodic (or larger window) set on a finite box."""
    pts = handle.points_in_box(tuple(lo), tuple(hi))
    return build_window(pts, (tuple(lo), tuple(hi)), margin=margin, tol=handle.tol)


# ---------------------------------------------------------------------------
# Delone parameters

def packing_radius(handle):
    """r = half the minimum pairwise distance; exact for periodic sets."""
    return delone_params(handle).r


def covering_radius(handle):
    """R = sup over space of the distance to the nearest set point.

    Computed from Delaunay circumradii (d <= 3); window handles yield a
    lower-bound estimate (see DeloneParams.R_exactness).
    """
    return delone_params(handle).R


def delone_params(handle):
    if "params" not in handle._cache:
        handle._cache["params"] = _compute_params(handle)
    return handle._cache["params"]


def min_dist_sq(handle):
    if "min_d2" not in handle._cache:
        handle._cache["min_d2"] = _min_dist_sq(handle)
    return handle._cache["min_d2"]


def _min_dist_sq(handle):
    tol = handle.tol
    if handle.mode == "periodic":
        lat = handle.lattice
        best = None
        for b in lat.reduced:
            n2 = p_dot(b, b)
            if best is None or _lt(n2, best):
                best = n2
        for i in range(len(handle.motif)):
            for j in range(i, len(handle.motif)):
                v = p_sub(handle.motif[j], handle.motif[i])
                rad = math.sqrt(sfloat(best)) + 1e-9
                for k in lat.offsets_in_ball(tuple(-c for c in v), rad):
                    w = p_add(v, lat.from_coords(k))
                    if all((ssign(c) == 0) if tol.exact else abs(c) <= tol.eps_abs
                           for c in w):
                        continue
                    d2 = p_dot(w, w)
                    if _lt(d2, best):
                        best = d2
        return best
    pts = handle.points
    if len(pts) < 2:
        raise ValueError("packing radius needs at least two points")
    best = None
    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            dx = q[0] - p[0]
            if best is not None and not _lt(dx * dx, best):
                break  # points are sorted by first coordinate
            d2 = dist_sq(p, q)
            if best is None or _lt(d2, best):
                best = d2
    return best


def _compute_params(handle):
    tol = handle.tol
    d2 = min_dist_sq(handle)
    if tol.exact:
        r = Radical.sqrt(d2 / 4 if not isinstance(d2, int) else Fraction(d2, 4))
    else:
        r = math.sqrt(d2) / 2
    big_r, flag = _covering(handle)
    r_flag = "exact" if handle.mode == "periodic" else "window-estimate"
    return DeloneParams(r=r, R=big_r, r_exactness=r_flag, R_exactness=flag)


def _circumcenter(simplex_points, exact):
    """Exact circumcenter of an affinely independent simplex, or None."""
    from .geometry import mat_solve
    p0 = simplex_points[0]
    rows = []
    rhs = []
    for p in simplex_points[1:]:
        rows.append(tuple(2 * (a - b) for a, b in zip(p, p0)))
        rhs.append(p_dot(p, p) - p_dot(p0, p0))
    d = len(p0)
    if len(rows) != d:
        return None
    sol = mat_solve(tuple(rows), (tuple(rhs),), exact=exact)
    if sol is None:
        return None
    return sol[0]


def _covering(handle):
    tol = handle.tol
    d = handle.dim
    if d == 1:
        return _covering_1d(handle)
    if d > 3:
        return _covering_grid(handle)
    try:
        from scipy.spatial import Delaunay, QhullError
    except ImportError as exc:  # pragma: no cover
        raise RuntimeError("scipy is required for covering radii in d >= 2") from exc

    if handle.mode == "periodic":
        lat = handle.lattice
        span = max(math.sqrt(sum(sfloat(c) ** 2 for c in b)) for b in lat.reduced)
        center = tuple(_half(sum(col)) for col in zip(*lat.reduced))
        patch_r = 2.5 * span + math.sqrt(sum(sfloat(c) ** 2 for c in center)) + 1.0
        pts = [p for _, p in handle.points_in_ball(
            tuple(Fraction(0) for _ in range(d)) if tol.exact else tuple(0.0 for _ in range(d)),
            _float_radius_cover(patch_r, tol))]
    else:
        pts = list(handle.points)
    coords = [[sfloat(c) for c in p] for p in pts]
    if len(coords) < d + 1:
        raise WindowTooSmallError("too few points for a covering-radius estimate")
    try:
        tri = Delaunay(coords)
    except QhullError:
        tri = Delaunay(coords, qhull_options="QJ")
    candidates = []
    for simplex in tri.simplices:
        sp = [pts[i] for i in simplex]
        cc = _circumcenter(sp, exact=tol.exact)
        if cc is None:
            continue
        r2 = dist_sq(cc, sp[0])
        if handle.mode == "periodic":
            ks = handle.lattice.coords(cc)
            if not all(-0.35 <= sfloat(k) <= 1.35 for k in ks):
                continue
        else:
            bd = handle.boundary_distance(cc)
            ok = (Radical.of(bd).cmp_sqrt(r2) >= 0) if tol.exact \
                else bd >= math.sqrt(r2) - tol.eps_abs
            if not ok:
                continue
        candidates.append((sfloat(r2), r2, cc))
    if not candidates:
        raise WindowTooSmallError("no circumball fits inside the trusted window")
    candidates.sort(key=lambda t: -t[0])
    best = None
    for _, r2, cc in candidates:
        if _circumball_empty(handle, cc, r2):
            best = r2
            break
    if best is None:  # float Delaunay produced only sliver artifacts
        raise RuntimeError("covering-radius triangulation could not be verified")
    radius = Radical.sqrt(best) if tol.exact else math.sqrt(best)
    flag = "exact" if handle.mode == "periodic" else "lower-bound-estimate"
    return radius, flag


def _circumball_empty(handle, center, r2):
    """No set point strictly inside the open circumball (float slivers fail)."""
    tol = handle.tol
    rad = _float_radius_cover(math.sqrt(sfloat(r2)) * (1 + 1e-12), tol)
    for d2, _ in handle.points_in_ball(center, rad):
        inside = (ssign(r2 - d2) > 0) if tol.exact \
            else d2 < r2 - 2 * tol.eps_abs * math.sqrt(sfloat(r2))
        if inside:
            return False
    return True


def _covering_1d(handle):
    tol = handle.tol
    if handle.mode == "periodic":
        period = handle.lattice.reduced[0][0]
        if _lt(period, 0):
            period = -period
        xs = sorted([m[0] for m in handle.motif], key=sfloat)
        xs.append(xs[0] + period)
        gap = None
        for a, b in zip(xs, xs[1:]):
            g = b - a
            if gap is None or _lt(gap, g):
                gap = g
        half = _half(gap)
        return (Radical.of(half) if tol.exact else float(half)), "exact"
    xs = [p[0] for p in handle.points]
    gap = None
    for a, b in zip(xs, xs[1:]):
        g = b - a
        if gap is None or _lt(gap, g):
            gap = g
    if gap is None:
        raise WindowTooSmallError("need two points for a 1-d covering estimate")
    half = _half(gap)
    return (Radical.of(half) if tol.exact else float(half)), "lower-bound-estimate"


def _covering_grid(handle):
    """Grid-sampled lower bound for d >= 4 (flagged estimate)."""
    if handle.mode != "window":
        raise NotImplementedError("d >= 4 covering radii only for windows")
    lo, hi = handle.bounds
    r = math.sqrt(sfloat(min_dist_sq(handle))) / 2
    step = max(r / 2, 1e-6)
    axes = [
        [sfloat(l) + step * i for i in range(int((sfloat(h) - sfloat(l)) / step) + 1)]
        for l, h in zip(lo, hi)]
    coords = [[sfloat(c) for c in p] for p in handle.points]
    best = 0.0
    from itertools import product
    for g in product(*axes):
        dmin = min(sum((a - b) ** 2 for a, b in zip(g, c)) for c in coords)
        best = max(best, dmin)
    return math.sqrt(best), "grid-estimate"


def two_r_bound_sq(handle):
    """(2R)^2 as a field scalar (exact) or float."""
    params = delone_params(handle)
    if handle.tol.exact:
        sq = params.R.square_scalar()
        return 4 * sq
    return (2 * params.R) ** 2


# ---------------------------------------------------------------------------
# clusters, spectra, chains

def _require_member(handle, x):
    if not handle.contains(x):
        raise ValueError(f"point {x} is not in the set")


def _require_interior(handle, x, radius):
    if handle.mode != "window":
        return
    bd = handle.boundary_distance(x)
    if handle.tol.exact:
        ok = Radical.of(bd).cmp(radius) >= 0
    else:
        ok = bd >= radius - handle.tol.eps_abs
    if not ok:
        raise TruncationError(
            f"point {tuple(map(sfloat, x))} is within {sfloat(radius):g} of the window boundary")


def cluster(handle, x, rho):
    """The rho-cluster of x: all set points at closed distance <= rho."""
    x = tuple(x)
    radius = as_radius(rho, handle.tol)
    _require_member(handle, x)
    _require_interior(handle, x, radius)
    pairs = handle.neighborhood(x, radius)
    pts = sorted((p for _, p in pairs), key=_lex_key(handle.tol))
    return Cluster(center=x, radius=radius, points=tuple(pts))


def distance_spectrum(handle, x, cutoff):
    """Sorted distinct distances from x to other set points, <= cutoff."""
    x = tuple(x)
    radius = as_radius(cutoff, handle.tol)
    _require_member(handle, x)
    _require_interior(handle, x, radius)
    pairs = handle.neighborhood(x, radius)
    if handle.tol.exact:
        d2s = sorted({d2 for d2, p in pairs if p != x}, key=sfloat)
        dists = tuple(Radical.sqrt(d2) for d2 in d2s)
        return DistanceSpectrum(center=x, cutoff=radius, distances=dists,
                                dist_sqs=tuple(d2s))
    eps = handle.tol.eps_abs
    ds = sorted(math.sqrt(d2) for d2, p in pairs if not _close(p, x, handle.tol))
    out = []
    for v in ds:
        if not out or v - out[-1] > eps:
            out.append(v)
    return DistanceSpectrum(center=x, cutoff=radius, distances=tuple(out),
                            dist_sqs=tuple(v * v for v in out))


def two_r_chain(handle, x, y):
    """A shortest-hop chain from x to y with every gap strictly below 2R.

    Breadth-first search over points linked when |pq| < 2R; neighbor
    expansion is ordered lexicographically for determinism.  Periodic sets
    search a corridor around the segment, widening it until a chain shows
    up (one always exists).  Window sets raise TruncationError when the
    window truncates every chain.
    """
    x, y = tuple(x), tuple(y)
    _require_member(handle, x)
    _require_member(handle, y)
    if x == y or (not handle.tol.exact and _close(x, y, handle.tol)):
        return Chain(vertices=(x,))
    params = delone_params(handle)
    bound2 = two_r_bound_sq(handle)
    two_r = 2 * sfloat(params.R)

    if handle.mode == "window":
        chain = _bfs_chain(handle, x, y, bound2, corridor=None)
        if chain is None:
            raise TruncationError("no 2R-chain inside the window (truncation)")
        return chain

    width = 2.0 * two_r
    for _ in range(12):
        chain = _bfs_chain(handle, x, y, bound2, corridor=(x, y, width))
        if chain is not None:
            return chain
        width *= 2.0
    raise RuntimeError("2R-chain search failed to converge")  # pragma: no cover


def _seg_dist_sq_leq(p, a, b, w2_float, tol):
    """dist(p, segment ab)^2 <= w2, decided in float with a safety pad."""
    pf = [sfloat(c) for c in p]
    af = [sfloat(c) for c in a]
    bf = [sfloat(c) for c in b]
    ab = [u - v for u, v in zip(bf, af)]
    ap = [u - v for u, v in zip(pf, af)]
    denom = sum(u * u for u in ab)
    t = 0.0 if denom == 0 else max(0.0, min(1.0, sum(u * v for u, v in zip(ap, ab)) / denom))
    d2 = sum((pf[i] - (af[i] + t * ab[i])) ** 2 for i in range(len(pf)))
    return d2 <= w2_float * (1 + 1e-9) + 1e-9


def _bfs_chain(handle, x, y, bound2, corridor):
    from collections import deque
    lex = _lex_key(handle.tol)
    radius_2r = (Radical.sqrt(bound2) if handle.tol.exact else math.sqrt(bound2))
    start = x
    parent = {start: None}
    queue = deque([start])
    w2 = corridor[2] ** 2 if corridor else None
    while queue:
        v = queue.popleft()
        if v == y:
            break
        nbrs = []
        for d2, p in handle.neighborhood(v, radius_2r):
            if p == v or p in parent:
                continue
            if not radius_lt(radius_2r, d2, handle.tol):
                continue
            if corridor and not _seg_dist_sq_leq(p, corridor[0], corridor[1], w2, handle.tol):
                continue
            nbrs.append(p)
        for p in sorted(nbrs, key=lex):
            parent[p] = v
            queue.append(p)
    if y not in parent:
        return None
    path = []
    v = y
    while v is not None:
        path.append(v)
        v = parent[v]
    path.reverse()
    return Chain(vertices=tuple(path))
