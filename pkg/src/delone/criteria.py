"""Certifiers for global structure from local cluster statistics.

* regular-system check: N(rho0 + 2R) = 1 and M(rho0) = M(rho0 + 2R);
* crystal check: N(rho0) = N(rho0 + 2R) = m and the cluster groups
  stabilize element-wise across the 2R extension, per class;
* local antipodality of every 2R-cluster, and the global central symmetry
  it implies;
* reconstruction of a locally antipodal set from a single seed cluster by
  inversion closure;
* decomposition of a locally antipodal set into cosets of its maximal
  invariance lattice (at most 2^d - 1 of them).

Window-mode verdicts never claim the global theorems: reports carry a
``window_limited`` flag and callers label them satisfied-on-window.
"""

from dataclasses import dataclass
from fractions import Fraction
import math

from .classify import InfiniteGroupError, classify, cluster_group_of
from .geometry import (Lattice, Tolerance, dist_sq, lattice_from_generators,
                       p_add, p_neg, p_scale, p_sub)
from .scalars import Radical, sfloat, ssign
from .sets import (WindowTooSmallError, as_radius, cluster, delone_params,
                   distance_spectrum, radius_covers)

__all__ = [
    "CriterionReport",
    "AntipodalReport",
    "CosetDecomposition",
    "NotAntipodalError",
    "DecompositionError",
    "check_regular_criterion",
    "check_crystal_criterion",
    "certify_auto",
    "is_locally_antipodal",
    "check_global_antipodality",
    "reconstruct_from_2R_cluster",
    "antipodal_lattice_decomposition",
]


class NotAntipodalError(Exception):
    """An input that must be locally antipodal is not."""


class DecompositionError(Exception):
    """The coset decomposition hit a structural inconsistency (diagnostic)."""


@dataclass(frozen=True)
class CriterionReport:
    criterion: str              # "regular" | "crystal"
    verdict: str                # "satisfied" | "violated" | "inconclusive-window"
    rho0: object
    n_at_rho0: object = None
    n_at_rho0_plus_2r: object = None
    m: object = None
    group_check: tuple = ()     # (class_index, M_rho0, M_hi, equal) rows
    witnesses: tuple = ()
    window_limited: bool = False
    notes: tuple = ()

    def __post_init__(self):
        if self.verdict == "satisfied":
            if self.criterion == "regular" and self.n_at_rho0_plus_2r != 1:
                raise AssertionError("satisfied regular criterion needs N(rho0+2R)=1")
            if self.criterion == "crystal" and self.n_at_rho0 != self.n_at_rho0_plus_2r:
                raise AssertionError("satisfied crystal criterion needs equal counts")
            if any(not row[3] for row in self.group_check):
                raise AssertionError("satisfied criterion needs stabilized groups")


def _two_r(handle):
    params = delone_params(handle)
    if handle.tol.exact:
        return params.R * 2
    return 2.0 * params.R


def _order_or_none(c, tol):
    try:
        return cluster_group_of(c, tol)
    except InfiniteGroupError:
        return None


def check_regular_criterion(handle, rho0):
    """Evaluate the regular-system conditions at one radius rho0.

    Satisfied means: every (rho0+2R)-cluster falls in one class, and the
    cluster-group order does not drop across the 2R extension.  A window
    too small for radius rho0+2R yields an inconclusive-window verdict.
    """
    tol = handle.tol
    radius0 = as_radius(rho0, tol)
    rho_hi = radius0 + _two_r(handle)
    window_limited = handle.mode == "window"
    try:
        part_hi = classify(handle, rho_hi)
        part_lo = classify(handle, radius0)
    except WindowTooSmallError as exc:
        return CriterionReport(criterion="regular", verdict="inconclusive-window",
                               rho0=radius0, window_limited=window_limited,
                               notes=(str(exc),))
    n_hi = part_hi.n
    n_lo = part_lo.n
    rep = part_hi.classes[0].representative.center
    g_lo = _order_or_none(cluster(handle, rep, radius0), tol)
    g_hi = _order_or_none(part_hi.classes[0].representative, tol)
    m_lo = g_lo.order if g_lo else None
    m_hi = g_hi.order if g_hi else None
    orders_equal = m_lo is not None and m_hi is not None and m_lo == m_hi
    ok = n_hi == 1 and orders_equal
    witnesses = ()
    if n_hi > 1:
        witnesses = tuple(cl.representative.center for cl in part_hi.classes)
    return CriterionReport(
        criterion="regular",
        verdict="satisfied" if ok else "violated",
        rho0=radius0, n_at_rho0=n_lo, n_at_rho0_plus_2r=n_hi,
        m=1 if ok else None,
        group_check=((0, m_lo, m_hi, orders_equal),),
        witnesses=witnesses, window_limited=window_limited)


def check_crystal_criterion(handle, rho0, group_mode="representative"):
    """Evaluate the crystal conditions at one radius rho0.

    Condition 1: N(rho0) = N(rho0+2R) = m.  Condition 2: for each class,
    the cluster group matches element-wise across the 2R extension --
    checked at the class representative (``group_mode="representative"``,
    sound because class groups are conjugate) or at every population point
    (``group_mode="all"``).
    """
    if group_mode not in ("representative", "all"):
        raise ValueError("group_mode must be 'representative' or 'all'")
    tol = handle.tol
    radius0 = as_radius(rho0, tol)
    rho_hi = radius0 + _two_r(handle)
    window_limited = handle.mode == "window"
    try:
        part_hi = classify(handle, rho_hi)
        part_lo = classify(handle, radius0)
    except WindowTooSmallError as exc:
        return CriterionReport(criterion="crystal", verdict="inconclusive-window",
                               rho0=radius0, window_limited=window_limited,
                               notes=(str(exc),))
    counts_ok = part_lo.n == part_hi.n
    if group_mode == "representative":
        sample_points = [cl.representative.center for cl in part_hi.classes]
    else:
        sample_points = sorted(handle.population(rho_hi))
    rows = []
    groups_ok = True
    for i, x in enumerate(sample_points):
        g_lo = _order_or_none(cluster(handle, x, radius0), tol)
        g_hi = _order_or_none(cluster(handle, x, rho_hi), tol)
        equal = (g_lo is not None and g_hi is not None and g_lo.equals(g_hi))
        groups_ok = groups_ok and equal
        rows.append((i, g_lo.order if g_lo else None,
                     g_hi.order if g_hi else None, equal))
    ok = counts_ok and groups_ok
    witnesses = ()
    if not counts_ok:
        witnesses = tuple(cl.representative.center for cl in part_hi.classes)
    return CriterionReport(
        criterion="crystal",
        verdict="satisfied" if ok else "violated",
        rho0=radius0, n_at_rho0=part_lo.n, n_at_rho0_plus_2r=part_hi.n,
        m=part_hi.n if ok else None,
        group_check=tuple(rows), witnesses=witnesses,
        window_limited=window_limited)


def _scan_candidates(handle, reps, limit_radius, cap):
    """Candidate rho0 breakpoints: spectrum values and values shifted by -2R."""
    tol = handle.tol
    two_r = _two_r(handle)
    if tol.exact:
        d2s = set()
        for x in reps:
            d2s.update(distance_spectrum(handle, x, limit_radius).dist_sqs)
        vals = [Radical.sqrt(d2) for d2 in sorted(d2s, key=sfloat)]
        out = []
        for v in vals:
            if v.cmp(cap) <= 0:
                out.append(v)
            shifted = v - two_r
            if shifted.sign() > 0 and shifted.cmp(cap) <= 0:
                out.append(shifted)
        out.sort(key=sfloat)
        dedup = []
        for v in out:
            if not dedup or dedup[-1].cmp(v) != 0:
                dedup.append(v)
        return dedup
    vals = set()
    for x in reps:
        vals.update(distance_spectrum(handle, x, limit_radius).distances)
    out = sorted(v for v in vals if v <= cap + tol.eps_abs)
    out.extend(sorted(v - two_r for v in vals if v - two_r > tol.eps_abs))
    out.sort()
    dedup = []
    for v in out:
        if not dedup or v - dedup[-1] > tol.eps_abs:
            dedup.append(v)
    return dedup


def certify_auto(handle, criterion, cap_mult=6, group_mode="representative"):
    """Scan rho0 over spectrum breakpoints and report the first success.

    The scan is capped at ``cap_mult * R`` (and at the window capacity).
    A regular-criterion scan that sees N >= 2 anywhere reports violated --
    a sound disproof, since regular systems have N identically 1.  When no
    rho0 below the cap satisfies the conditions and no violation witness
    exists, the verdict is inconclusive-window.
    """
    if criterion not in ("regular", "crystal"):
        raise ValueError("criterion must be 'regular' or 'crystal'")
    tol = handle.tol
    params = delone_params(handle)
    two_r = _two_r(handle)
    cap = params.R * cap_mult
    limit = cap + two_r
    capacity = handle.capacity()
    if capacity is not None:
        cap_radius = Radical.of(capacity) if tol.exact else float(capacity)
        if (limit.cmp(cap_radius) > 0) if tol.exact else limit > cap_radius:
            limit = cap_radius
    try:
        part_limit = classify(handle, limit)
    except WindowTooSmallError as exc:
        return CriterionReport(criterion=criterion, verdict="inconclusive-window",
                               rho0=limit, window_limited=True, notes=(str(exc),))
    reps = [cl.representative.center for cl in part_limit.classes]
    candidates = [c for c in _scan_candidates(handle, reps, limit, cap)
                  if _fits(c + two_r, limit, tol)]

    if criterion == "regular":
        if part_limit.n > 1:
            # N >= 2 somewhere disproves regularity; anchor rho0 so that
            # rho0 + 2R is exactly the radius where the split was seen
            rho0 = limit - two_r
            nonneg = (rho0.sign() >= 0) if tol.exact else rho0 >= 0
            if not nonneg:
                return CriterionReport(
                    criterion="regular", verdict="violated", rho0=limit,
                    n_at_rho0_plus_2r=part_limit.n, witnesses=tuple(reps),
                    window_limited=handle.mode == "window",
                    notes=("several cluster classes below 2R",))
            report = check_regular_criterion(handle, rho0)
            if report.verdict != "violated":  # pragma: no cover
                raise AssertionError("classify disagreement during auto scan")
            return report
        # N = 1 up to the limit, so condition (I) holds for every candidate;
        # scan the group orders for stabilization
        for rho0 in candidates:
            rep = reps[0]
            g_lo = _order_or_none(cluster(handle, rep, rho0), tol)
            if g_lo is None:
                continue
            g_hi = _order_or_none(cluster(handle, rep, rho0 + two_r), tol)
            if g_hi is not None and g_lo.order == g_hi.order:
                return check_regular_criterion(handle, rho0)
        return CriterionReport(
            criterion="regular", verdict="inconclusive-window", rho0=cap,
            n_at_rho0=part_limit.n, window_limited=handle.mode == "window",
            notes=("no stabilizing rho0 below the scan cap",))

    for rho0 in candidates:
        n_lo = _count_among(handle, reps, rho0)
        n_hi = _count_among(handle, reps, rho0 + two_r)
        if n_lo != n_hi:
            continue
        report = check_crystal_criterion(handle, rho0, group_mode=group_mode)
        if report.verdict == "satisfied":
            return report
    return CriterionReport(
        criterion="crystal", verdict="inconclusive-window", rho0=cap,
        n_at_rho0=part_limit.n, window_limited=handle.mode == "window",
        notes=("no stabilizing rho0 below the scan cap",))


def _fits(radius, limit, tol):
    return (radius.cmp(limit) <= 0) if tol.exact else radius <= limit + tol.eps_abs


def _count_among(handle, points, rho):
    from .classify import _count_classes_among
    return _count_classes_among(handle, points, rho)


# ---------------------------------------------------------------------------
# antipodality

@dataclass(frozen=True)
class AntipodalReport:
    """Per-point local antipodality flags over the tested population."""

    flags: tuple                 # (point, bool) rows
    all_antipodal: bool
    first_violation: object      # (center, unmatched offset) or None
    window_limited: bool = False


def is_locally_antipodal(handle):
    """Check that every tested point's 2R-cluster is centrally symmetric."""
    tol = handle.tol
    two_r = _two_r(handle)
    population = sorted(handle.population(two_r))
    flags = []
    first = None
    for x in population:
        c = cluster(handle, x, two_r)
        offs = c.offsets()
        bad = _antipode_violation(offs, tol)
        flags.append((x, bad is None))
        if bad is not None and first is None:
            first = (x, bad)
    return AntipodalReport(flags=tuple(flags),
                           all_antipodal=all(ok for _, ok in flags),
                           first_violation=first,
                           window_limited=handle.mode == "window")


def _antipode_violation(offsets, tol):
    if tol.exact:
        s = frozenset(offsets)
        for v in offsets:
            if p_neg(v) not in s:
                return v
        return None
    from .classify import _FloatGrid
    grid = _FloatGrid(offsets, tol.eps_abs)
    for v in offsets:
        if not grid.has(p_neg(v)):
            return v
    return None


def check_global_antipodality(handle, x):
    """Whether the point inversion about x maps the set onto itself.

    Periodic sets are checked exactly and globally (motif arithmetic);
    windows are checked on the largest symmetric sub-window about x.
    """
    x = tuple(x)
    if not handle.contains(x):
        raise ValueError("center must belong to the set")
    if handle.mode == "periodic":
        for m in handle.motif:
            if not handle.contains(p_sub(p_scale(x, 2), m)):
                return False
        return True
    lo, hi = handle.bounds
    margin = handle.margin
    half = None
    for a, l, h in zip(x, lo, hi):
        for v in (a - (l + margin), (h - margin) - a):
            if half is None or _lt_scalar(v, half):
                half = v
    if (ssign(half) < 0) if handle.tol.exact else half < -handle.tol.eps_abs:
        return True  # empty symmetric window: vacuous
    w_lo = tuple(a - half for a in x)
    w_hi = tuple(a + half for a in x)
    for p in handle.points_in_box(w_lo, w_hi):
        if not handle.contains(p_sub(p_scale(x, 2), p)):
            return False
    return True


def _lt_scalar(a, b):
    from .scalars import is_exact_scalar
    if is_exact_scalar(a) and is_exact_scalar(b):
        return ssign(a - b) < 0
    return sfloat(a) < sfloat(b)


# ---------------------------------------------------------------------------
# reconstruction by inversion closure

def reconstruct_from_2R_cluster(seed, rho_max, tol=None, max_points=None):
    """Rebuild a locally antipodal set inside a ball from one 2R-cluster.

    Inversion closure: repeatedly add sigma_y(z) for known points y, z with
    |yz| <= seed.radius, clipped to the closed ball of radius rho_max about
    the seed center.  Points are processed radially outward, mirroring the
    induction along the distance spectrum that makes the closure complete.
    Returns the reconstructed points as a sorted tuple.
    """
    from .geometry import point_is_exact
    tol = tol or (Tolerance.exact_mode() if point_is_exact(seed.center)
                  else Tolerance.floating())
    offs = seed.offsets()
    bad = _antipode_violation(offs, tol)
    if bad is not None:
        raise NotAntipodalError(
            f"seed cluster is not antipodal: offset {bad} has no antipode")
    center = seed.center
    radius_max = as_radius(rho_max, tol)
    pair_radius = seed.radius if tol.exact else float(seed.radius)
    if max_points is None:
        max_points = _packing_cap(seed, radius_max)
    known = {}
    for p in seed.points:
        if radius_covers(radius_max, dist_sq(p, center), tol):
            known[p] = dist_sq(p, center)
    order = sorted(known, key=lambda p: (sfloat(known[p]), _fkey(p)))
    idx = 0
    while idx < len(order):
        y = order[idx]
        idx += 1
        additions = []
        for z in list(known):
            if z == y:
                continue
            d2 = dist_sq(y, z)
            if not radius_covers(pair_radius, d2, tol):
                continue
            for cand in (p_sub(p_scale(y, 2), z), p_sub(p_scale(z, 2), y)):
                if cand in known:
                    continue
                cd2 = dist_sq(cand, center)
                if radius_covers(radius_max, cd2, tol):
                    known[cand] = cd2
                    additions.append(cand)
        if additions:
            if len(known) > max_points:
                raise RuntimeError(
                    "reconstruction exceeded the packing bound; "
                    "the seed is not a valid 2R-cluster")
            tail = order[idx:] + additions
            tail.sort(key=lambda p: (sfloat(known[p]), _fkey(p)))
            order = order[:idx] + tail
    return tuple(sorted(known))


def _fkey(p):
    return tuple(sfloat(c) for c in p)


def _packing_cap(seed, radius_max):
    d2min = None
    pts = seed.points
    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            d2 = dist_sq(p, q)
            if d2min is None or sfloat(d2) < sfloat(d2min):
                d2min = d2
    if d2min is None:
        raise ValueError("seed must contain at least two points")
    r = math.sqrt(sfloat(d2min)) / 2
    d = len(seed.center)
    return int(((sfloat(radius_max) + r) / r) ** d * 4) + 64


# ---------------------------------------------------------------------------
# lattice-coset decomposition

@dataclass(frozen=True)
class CosetDecomposition:
    """X = union of (base + half_vectors[i]/2 + lattice), disjointly."""

    base_point: tuple
    lattice: Lattice
    half_vectors: tuple       # lambda_i in Lambda, lambda_i/2 the coset offsets
    n: int
    window_limited: bool = False

    def coset_offsets(self):
        return tuple(p_scale(v, Fraction(1, 2)) for v in self.half_vectors)


def antipodal_lattice_decomposition(handle):
    """Decompose a locally antipodal set into cosets of its maximal lattice.

    The invariance lattice is generated by the handle's own periods plus
    every motif difference that translates the set onto itself (any
    invariant translation is such a difference), which makes it maximal.
    Emits half-vectors 2*(x_i - x) and verifies the 2^d - 1 bound; a count
    of 2^d raises a diagnostic rather than silently repairing.
    """
    report = is_locally_antipodal(handle)
    if not report.all_antipodal:
        x, v = report.first_violation
        raise NotAntipodalError(
            f"set is not locally antipodal at {tuple(map(sfloat, x))}")
    if handle.mode == "periodic":
        lam, reps = _max_lattice_periodic(handle)
        window_limited = False
    else:
        lam, reps = _max_lattice_window(handle)
        window_limited = True
    d = handle.dim
    base = reps[0]
    half_vectors = []
    for x in reps:
        lam_vec = p_scale(p_sub(x, base), 2)
        if not lam.contains(lam_vec, handle.tol):
            raise DecompositionError(
                f"coset offset {lam_vec} is not half a lattice vector")
        half_vectors.append(lam_vec)
    two_lam = lam.scaled(2)
    for i in range(len(half_vectors)):
        for j in range(i + 1, len(half_vectors)):
            if two_lam.contains(p_sub(half_vectors[i], half_vectors[j]), handle.tol):
                raise DecompositionError("half-vectors collide modulo 2*Lambda")
    n = len(reps)
    if n >= 2 ** d:
        raise DecompositionError(
            f"{n} cosets found in dimension {d}; a maximal lattice admits at most {2**d - 1}")
    return CosetDecomposition(base_point=base, lattice=lam,
                              half_vectors=tuple(half_vectors), n=n,
                              window_limited=window_limited)


def _set_plus_t_equal_periodic(handle, t):
    for m in handle.motif:
        if not handle.contains(p_add(m, t)):
            return False
    return True


def _max_lattice_periodic(handle):
    lat = handle.lattice
    tol = handle.tol
    motif = list(handle.motif)
    extra = []
    for i in range(len(motif)):
        for j in range(len(motif)):
            if i == j:
                continue
            t = p_sub(motif[j], motif[i])
            if _set_plus_t_equal_periodic(handle, t):
                extra.append(t)
    lam = _extend_lattice(lat, extra, tol)
    reps = _coset_reps(motif, lam, tol)
    return lam, reps


def _extend_lattice(lat, extra, tol):
    """The lattice generated by lat and extra translations.

    Works in basis coordinates so quadratic-field bases stay supported;
    the extra vectors must have rational coordinates in the basis.
    """
    if not extra:
        return lat
    coord_rows = [tuple(Fraction(1) if i == j else Fraction(0) for j in range(lat.dim))
                  for i in range(lat.dim)]
    for t in extra:
        ks = lat.coords(t)
        if not all(isinstance(k, (int, Fraction)) for k in ks):
            raise NotImplementedError(
                "invariant translation has irrational lattice coordinates")
        coord_rows.append(tuple(Fraction(k) for k in ks))
    coord_lattice = lattice_from_generators(coord_rows)
    new_basis = tuple(
        tuple(sum(row[i] * lat.reduced[i][j] for i in range(lat.dim))
              for j in range(lat.dim))
        for row in coord_lattice.reduced)
    return Lattice(new_basis)


def _coset_reps(points, lam, tol):
    reps = []
    for p in sorted(points):
        if not any(lam.contains(p_sub(p, q), tol) for q in reps):
            reps.append(p)
    return reps


def _max_lattice_window(handle):
    tol = handle.tol
    params = delone_params(handle)
    capacity = handle.capacity()
    cap_f = min(sfloat(capacity), 6 * sfloat(params.R))
    lo, hi = handle.bounds
    center = tuple((sfloat(l) + sfloat(h)) / 2 for l, h in zip(lo, hi))
    x0 = min(handle.points, key=lambda p: sum((sfloat(c) - m) ** 2
                                              for c, m in zip(p, center)))
    from .sets import _float_radius_cover
    cands = []
    for d2, p in handle.points_in_ball(x0, _float_radius_cover(cap_f, tol)):
        if p != x0:
            cands.append(p_sub(p, x0))
    passing = [t for t in cands if _translation_fits_window(handle, t)]
    if not passing:
        raise WindowTooSmallError("window too small to confirm lattice invariance")
    from .geometry import rank
    if rank(passing, exact=tol.exact) < handle.dim:
        raise WindowTooSmallError("invariant translations do not span the space")
    if not tol.exact:
        raise NotImplementedError("window decomposition requires exact coordinates")
    lam = lattice_from_generators(passing)
    interior = handle.interior_points(as_radius(0, tol) if tol.exact else 0.0)
    reps = _coset_reps(interior, lam, tol)
    return lam, reps


def _translation_fits_window(handle, t):
    """X + t = X as far as the window can tell (both directions)."""
    tol = handle.tol
    checked = 0
    for p in handle.points:
        for q in (p_add(p, t), p_sub(p, t)):
            bd = handle.boundary_distance(q)
            inside = (ssign(bd) >= 0) if tol.exact else bd >= -tol.eps_abs
            if inside:
                checked += 1
                if not handle.contains(q):
                    return False
    return checked > 0
