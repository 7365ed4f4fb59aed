"""Independent brute-force oracles used to cross-check the library.

These deliberately avoid the production code paths (fingerprints, profile
filters, greedy frames, complement completion): matchings are enumerated
from raw point tuples with only norm/Gram pruning, and window transitivity
is verified by mapping every window point.
"""

from delone.geometry import Isometry, mat_solve, p_dot, p_sub, rank
from delone.scalars import sfloat, ssign


def _first_frame(offsets):
    """First full-rank tuple of offsets, scanning in the given order."""
    d = len(offsets[0])
    frame = []
    for v in offsets:
        if rank(frame + [v], exact=True) > len(frame):
            frame.append(v)
            if len(frame) == d:
                return frame
    return None


def brute_force_linear_maps(offs_a, offs_b):
    """All orthogonal maps sending offs_a onto offs_b (full-rank, exact).

    Enumerates images for one fixed frame over all same-norm candidates,
    prunes by Gram equality, solves the linear system and verifies the
    whole bijection.
    """
    if len(offs_a) != len(offs_b):
        return []
    offs_a = sorted(offs_a)
    offs_b = sorted(offs_b)
    frame = _first_frame(offs_a)
    if frame is None:
        raise ValueError("oracle requires a full-rank cluster")
    d = len(frame)
    set_b = frozenset(offs_b)
    found = []

    def recurse(i, images):
        if i == d:
            cols = mat_solve(tuple(frame),
                             tuple(tuple(r[k] for r in images) for k in range(d)),
                             exact=True)
            if cols is None:
                return
            o = tuple(cols)
            q = tuple(tuple(sum(o[r][i2] * o[r][j2] for r in range(d))
                            for j2 in range(d)) for i2 in range(d))
            if any(q[i2][j2] != (1 if i2 == j2 else 0)
                   for i2 in range(d) for j2 in range(d)):
                return
            for v in offs_a:
                img = tuple(sum(o[r][c] * v[c] for c in range(d)) for r in range(d))
                if img not in set_b:
                    return
            if o not in found:
                found.append(o)
            return
        for t in offs_b:
            if p_dot(t, t) != p_dot(frame[i], frame[i]):
                continue
            if any(p_dot(t, images[j]) != p_dot(frame[i], frame[j]) for j in range(i)):
                continue
            recurse(i + 1, images + [t])

    recurse(0, [])
    return found


def brute_force_group_order(c):
    """Order of the center-fixing group of a full-rank cluster."""
    offs = list(c.offsets())
    return len(brute_force_linear_maps(offs, offs))


def window_isometries(handle, x, y):
    """Candidate isometries g with g(x)=y built from max-radius clusters."""
    bd_x = handle.boundary_distance(x)
    bd_y = handle.boundary_distance(y)
    rho = bd_x if ssign(bd_x - bd_y) <= 0 else bd_y
    from delone.sets import cluster, as_radius
    radius = as_radius(rho, handle.tol)
    ca = cluster(handle, x, radius)
    cb = cluster(handle, y, radius)
    if ca.size != cb.size:
        return []
    out = []
    for o in brute_force_linear_maps(list(ca.offsets()), list(cb.offsets())):
        shift = p_sub(y, tuple(sum(o[i][j] * x[j] for j in range(len(x)))
                               for i in range(len(x))))
        out.append(Isometry(o, shift))
    return out


def maps_window_onto_itself(handle, g):
    """Window-overlap test: g(p) inside the trusted region must be a point."""
    gi = g.inverse()
    count = 0
    for p in handle.points:
        for h in (g, gi):
            q = h(p)
            bd = handle.boundary_distance(q)
            if ssign(bd) >= 0:
                count += 1
                if not handle.contains(q):
                    return False
    return count > 0


def window_transitivity_oracle(handle, pairs):
    """True when every pair admits an isometry x -> y fixing the window.

    This is the desk-scale meaning of a transitive symmetry group.
    """
    for x, y in pairs:
        if not any(maps_window_onto_itself(handle, g)
                   for g in window_isometries(handle, x, y)):
            return False, (x, y)
    return True, None


def grid_covering_estimate(handle, samples=60):
    """Float lower bound of the covering radius by dense grid sampling."""
    lo, hi = handle.bounds
    lo_f = [sfloat(v) for v in lo]
    hi_f = [sfloat(v) for v in hi]
    pts = [[sfloat(c) for c in p] for p in handle.points]
    # stay away from the boundary so the sampled deep hole is genuine
    inset = [0.25 * (h - l) for l, h in zip(lo_f, hi_f)]
    best = 0.0
    for i in range(samples + 1):
        for j in range(samples + 1):
            gx = lo_f[0] + inset[0] + (hi_f[0] - lo_f[0] - 2 * inset[0]) * i / samples
            gy = lo_f[1] + inset[1] + (hi_f[1] - lo_f[1] - 2 * inset[1]) * j / samples
            d2 = min((gx - p[0]) ** 2 + (gy - p[1]) ** 2 for p in pts)
            best = max(best, d2)
    return best ** 0.5
