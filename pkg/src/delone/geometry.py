"""Points, isometries, lattices and the tolerance model.

Points are plain tuples of scalars.  In exact mode the scalars are
Fractions (or QuadExt elements of one quadratic field); in floating mode
they are Python floats and all predicates compare against an absolute
tolerance ``eps_abs``.

An isometry is stored as an orthogonal linear part plus a shift,
``g(p) = linear @ p + shift``.  Matrices are row-major tuples of tuples.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .scalars import is_exact_scalar, sfloat, ssign

__all__ = [
    "Tolerance",
    "Isometry",
    "Lattice",
    "apply",
    "compose",
    "point_inversion",
    "points_equal",
    "identity",
    "translation",
    "dist_sq",
    "p_add",
    "p_sub",
    "ORTHO_EPS",
]

# a posteriori orthogonality bound for synthesized linear parts (float mode)
ORTHO_EPS = 1e-9


@dataclass(frozen=True)
class Tolerance:
    """Numeric regime: exact field arithmetic or floats with eps_abs."""

    mode: str = "exact"          # "exact" | "float"
    eps_abs: float = 1e-9

    def __post_init__(self):
        if self.mode not in ("exact", "float"):
            raise ValueError(f"unknown numeric mode {self.mode!r}")
        if self.mode == "float" and not self.eps_abs > 0:
            raise ValueError("eps_abs must be positive in floating mode")

    @property
    def exact(self):
        return self.mode == "exact"

    @staticmethod
    def exact_mode():
        return Tolerance("exact")

    @staticmethod
    def floating(eps_abs=1e-9):
        return Tolerance("float", eps_abs)


def _check_dims(p, q):
    if len(p) != len(q):
        raise ValueError(f"dimension mismatch: {len(p)} vs {len(q)}")


def p_add(p, q):
    _check_dims(p, q)
    return tuple(a + b for a, b in zip(p, q))


def p_sub(p, q):
    _check_dims(p, q)
    return tuple(a - b for a, b in zip(p, q))


def p_neg(p):
    return tuple(-a for a in p)


def p_scale(p, k):
    return tuple(a * k for a in p)


def p_dot(p, q):
    _check_dims(p, q)
    return sum(a * b for a, b in zip(p, q))


def dist_sq(p, q):
    """Squared distance, a field scalar (or float in floating mode)."""
    _check_dims(p, q)
    return sum((a - b) * (a - b) for a, b in zip(p, q))


def points_equal(p, q, tol):
    """Componentwise equality (exact) or max-norm closeness (floating)."""
    _check_dims(p, q)
    if tol.exact:
        return all(a == b for a, b in zip(p, q))
    return all(abs(a - b) <= tol.eps_abs for a, b in zip(p, q))


def point_is_exact(p):
    return all(is_exact_scalar(c) for c in p)


# ---------------------------------------------------------------------------
# small dense matrices over a field (or floats), row-major tuples

def mat_identity(d):
    return tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))


def mat_vec(m, v):
    return tuple(sum(r[j] * v[j] for j in range(len(v))) for r in m)


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return tuple(tuple(sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m))
                 for i in range(n))


def mat_t(m):
    return tuple(zip(*m))


def _pivot_size(x):
    return abs(sfloat(x))


def _fdiv(a, b):
    """Field-safe division (ints promote to Fractions)."""
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    if isinstance(b, int):
        b = Fraction(b)
    return a / b


def mat_solve(a, rhs_cols, exact=True):
    """Solve ``a @ X = rhs`` for the matrix X; rhs given as columns.

    Returns the solution as a tuple of columns, or None if ``a`` is
    singular (exactly singular in exact mode, tiny pivot in float mode).
    """
    n = len(a)
    aug = [list(a[i]) + [col[i] for col in rhs_cols] for i in range(n)]
    for col in range(n):
        piv = None
        best = 0.0
        for r in range(col, n):
            v = aug[r][col]
            nz = (ssign(v) != 0) if exact else (abs(v) > 1e-13)
            if nz and (_pivot_size(v) > best):
                piv, best = r, _pivot_size(v)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        prow = aug[col]
        for r in range(n):
            if r == col:
                continue
            f = aug[r][col]
            if (ssign(f) == 0) if exact else f == 0:
                continue
            fi = _fdiv(f, prow[col])
            row = aug[r]
            for j in range(col, len(row)):
                row[j] = row[j] - fi * prow[j]
    xs = []
    for k in range(len(rhs_cols)):
        xs.append(tuple(_fdiv(aug[i][n + k], aug[i][i]) for i in range(n)))
    return tuple(xs)


def mat_inv(m, exact=True):
    d = len(m)
    eye = [tuple(Fraction(int(i == j)) for i in range(d)) for j in range(d)]
    cols = mat_solve(m, eye, exact=exact)
    if cols is None:
        return None
    return mat_t(cols)


def mat_det(m, exact=True):
    n = len(m)
    a = [list(r) for r in m]
    det = Fraction(1) if exact else 1.0
    for col in range(n):
        piv = None
        for r in range(col, n):
            nz = (ssign(a[r][col]) != 0) if exact else abs(a[r][col]) > 1e-13
            if nz:
                piv = r
                break
        if piv is None:
            return det * 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det = det * a[col][col]
        for r in range(col + 1, n):
            f = _fdiv(a[r][col], a[col][col])
            if (ssign(f) == 0) if exact else f == 0:
                continue
            for j in range(col, n):
                a[r][j] = a[r][j] - f * a[col][j]
    return det


def rank(vectors, exact=True):
    """Rank of a list of d-vectors over the field."""
    if not vectors:
        return 0
    rows = [list(v) for v in vectors]
    d = len(rows[0])
    r = 0
    for col in range(d):
        piv = None
        for i in range(r, len(rows)):
            nz = (ssign(rows[i][col]) != 0) if exact else abs(rows[i][col]) > 1e-10
            if nz:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i == r:
                continue
            f = _fdiv(rows[i][col], rows[r][col])
            if (ssign(f) == 0) if exact else f == 0:
                continue
            for j in range(d):
                rows[i][j] = rows[i][j] - f * rows[r][j]
        r += 1
        if r == len(rows):
            break
    return r


def orthogonal_complement(vectors, d):
    """Exact basis of the orthogonal complement of span(vectors) in R^d.

    Gram-Schmidt against the span, applied to the standard basis; returned
    vectors are pairwise orthogonal and orthogonal to every input vector,
    with field-scalar entries (no normalization).
    """
    basis = []

    def project_out(v, onto):
        for u in onto:
            v = p_sub(v, p_scale(u, _fdiv(p_dot(v, u), p_dot(u, u))))
        return v

    span = []
    for v in vectors:
        w = project_out(v, span)
        if any(ssign(c) != 0 for c in w):
            span.append(w)
    for i in range(d):
        e = tuple(Fraction(int(j == i)) for j in range(d))
        w = project_out(e, span + basis)
        if any(ssign(c) != 0 for c in w):
            basis.append(w)
    return basis


# ---------------------------------------------------------------------------
# isometries

@dataclass(frozen=True)
class Isometry:
    """Affine map ``p -> linear @ p + shift`` with orthogonal linear part."""

    linear: tuple
    shift: tuple

    @property
    def dim(self):
        return len(self.shift)

    def __post_init__(self):
        if len(self.linear) != len(self.shift) or any(len(r) != len(self.shift) for r in self.linear):
            raise ValueError("linear part and shift dimensions disagree")

    def __call__(self, p):
        return apply(self, p)

    def inverse(self):
        lt = mat_t(self.linear)
        return Isometry(lt, p_neg(mat_vec(lt, self.shift)))

    def det(self, exact=True):
        return mat_det(self.linear, exact=exact)

    def is_orthogonal(self, tol):
        q = mat_mul(mat_t(self.linear), self.linear)
        d = self.dim
        if tol.exact:
            return all(q[i][j] == (1 if i == j else 0) for i in range(d) for j in range(d))
        return all(abs(sfloat(q[i][j]) - (1.0 if i == j else 0.0)) <= ORTHO_EPS
                   for i in range(d) for j in range(d))

    def is_identity(self, tol):
        d = self.dim
        if tol.exact:
            return (all(self.linear[i][j] == (1 if i == j else 0)
                        for i in range(d) for j in range(d))
                    and all(s == 0 for s in self.shift))
        return (all(abs(sfloat(self.linear[i][j]) - (1.0 if i == j else 0.0)) <= ORTHO_EPS
                    for i in range(d) for j in range(d))
                and all(abs(s) <= tol.eps_abs for s in self.shift))


def identity(d):
    return Isometry(mat_identity(d), tuple(Fraction(0) for _ in range(d)))


def translation(v):
    return Isometry(mat_identity(len(v)), tuple(v))


def apply(g, p):
    """Image ``linear @ p + shift`` of a point under an isometry."""
    if g.dim != len(p):
        raise ValueError(f"dimension mismatch: isometry is {g.dim}-d, point is {len(p)}-d")
    return p_add(mat_vec(g.linear, p), g.shift)


def compose(g, h):
    """The isometry ``p -> g(h(p))`` (h acts first)."""
    if g.dim != h.dim:
        raise ValueError("dimension mismatch in composition")
    return Isometry(mat_mul(g.linear, h.linear),
                    p_add(mat_vec(g.linear, h.shift), g.shift))


def point_inversion(x):
    """Central inversion ``p -> 2x - p`` about the point x; an involution."""
    d = len(x)
    lin = tuple(tuple(Fraction(-1 if i == j else 0) for j in range(d)) for i in range(d))
    return Isometry(lin, tuple(2 * c for c in x))


def isometries_equal(g, h, tol):
    if g.dim != h.dim:
        return False
    if tol.exact:
        return g.linear == h.linear and g.shift == h.shift
    return (all(abs(sfloat(a) - sfloat(b)) <= ORTHO_EPS
                for ra, rb in zip(g.linear, h.linear) for a, b in zip(ra, rb))
            and all(abs(sfloat(a) - sfloat(b)) <= tol.eps_abs
                    for a, b in zip(g.shift, h.shift)))


# ---------------------------------------------------------------------------
# lattices

def _snearest(x):
    if isinstance(x, float):
        return math.floor(x + 0.5)
    from .scalars import sfloor
    return sfloor(x + Fraction(1, 2))


def lll_reduce(basis, exact=True, delta=Fraction(3, 4)):
    """Lenstra-Lenstra-Lovasz reduction of a full-rank basis (rows)."""
    b = [list(v) for v in basis]
    n = len(b)

    def gso():
        star = []
        mu = [[0] * n for _ in range(n)]
        for i in range(n):
            v = list(b[i])
            for j in range(i):
                num = sum(b[i][t] * star[j][t] for t in range(len(v)))
                den = sum(star[j][t] * star[j][t] for t in range(len(v)))
                mu[i][j] = _fdiv(num, den)
                for t in range(len(v)):
                    v[t] = v[t] - mu[i][j] * star[j][t]
            star.append(v)
        return star, mu

    star, mu = gso()
    k = 1
    guard = 0
    while k < n:
        guard += 1
        if guard > 10000:
            raise RuntimeError("LLL failed to terminate")
        for j in range(k - 1, -1, -1):
            q = _snearest(mu[k][j])
            if q != 0:
                for t in range(len(b[k])):
                    b[k][t] = b[k][t] - q * b[j][t]
                star, mu = gso()
        lhs = sum(x * x for x in star[k])
        rhs = (delta - mu[k][k - 1] * mu[k][k - 1]) * sum(x * x for x in star[k - 1])
        ge = (ssign(lhs - rhs) >= 0) if exact else lhs >= rhs
        if ge:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            star, mu = gso()
            k = max(k - 1, 1)
    return tuple(tuple(v) for v in b)


class Lattice:
    """Full-rank lattice spanned by d basis vectors (rows).

    Stores the raw basis together with an LLL-reduced copy used for
    enumeration and nearest-vector heuristics.  ``exact`` is inferred from
    the entry types.
    """

    def __init__(self, basis):
        basis = tuple(tuple(v) for v in basis)
        d = len(basis)
        if any(len(v) != d for v in basis):
            raise ValueError("lattice basis must be square (d vectors of length d)")
        self.exact = all(point_is_exact(v) for v in basis)
        det = mat_det(basis, exact=self.exact)
        if (ssign(det) == 0) if self.exact else abs(det) < 1e-12:
            raise ValueError("degenerate lattice basis")
        self.basis = basis
        self.dim = d
        self.det = det
        self.reduced = lll_reduce(basis, exact=self.exact)
        self._inv = mat_inv(self.reduced, exact=self.exact)  # columns of B^-1
        self._inv_float = [[sfloat(x) for x in row] for row in self._inv]

    def coords(self, v):
        """Coefficients k with v = k @ reduced_basis (field scalars)."""
        return tuple(sum(v[i] * self._inv[i][j] for i in range(self.dim))
                     for j in range(self.dim))

    def contains(self, v, tol):
        """Whether v is a lattice vector."""
        ks = self.coords(v)
        if tol.exact:
            return all(isinstance(k, Fraction) and k.denominator == 1 for k in ks)
        return all(abs(k - round(k)) <= tol.eps_abs for k in ks)

    def from_coords(self, ks):
        return tuple(sum(ks[i] * self.reduced[i][j] for i in range(self.dim))
                     for j in range(self.dim))

    def reduce_point(self, p):
        """Canonical representative of p modulo the lattice, in [0,1)^d cell."""
        from .scalars import sfloor
        ks = self.coords(p)
        if self.exact:
            fl = tuple(sfloor(k) for k in ks)
        else:
            fl = tuple(math.floor(k + 1e-12) for k in ks)
        return p_sub(p, self.from_coords(fl))

    def offsets_in_ball(self, v, rho_float):
        """Integer tuples k such that |k @ reduced - v| <= rho can hold.

        A conservative float box; callers re-test membership exactly.
        """
        d = self.dim
        vf = [sfloat(x) for x in v]
        k0 = [sum(vf[i] * self._inv_float[i][j] for i in range(d)) for j in range(d)]
        cols = [[self._inv_float[i][j] for i in range(d)] for j in range(d)]
        hw = [rho_float * math.sqrt(sum(c * c for c in col)) + 0.01 for col in cols]
        ranges = [range(math.floor(k0[j] - hw[j] - 0.5), math.ceil(k0[j] + hw[j] + 0.5) + 1)
                  for j in range(d)]
        return _product(ranges)

    def scaled(self, k):
        """The lattice k * Lambda."""
        return Lattice(tuple(p_scale(v, k) for v in self.basis))

    def __repr__(self):
        return f"Lattice({self.basis!r})"


def _product(ranges):
    if not ranges:
        yield ()
        return
    for head in ranges[0]:
        for rest in _product(ranges[1:]):
            yield (head,) + rest


def lattice_from_generators(vectors, exact=True):
    """The lattice generated by an arbitrary set of (rational) vectors.

    Uses integer HNF on a common-denominator scaling; requires full rank.
    Only supported in exact mode with Fraction entries.
    """
    vecs = [v for v in vectors if any(ssign(c) != 0 for c in v)]
    if not vecs:
        raise ValueError("no nonzero generators")
    d = len(vecs[0])
    if rank(vecs, exact=True) < d:
        raise ValueError("generators do not span the space")
    den = 1
    for v in vecs:
        for c in v:
            if isinstance(c, Fraction):
                den = den * c.denominator // math.gcd(den, c.denominator)
            elif not isinstance(c, int):
                raise ValueError("lattice generators must be rational")
    rows = [[int(c * den) for c in v] for v in vecs]
    h = _hnf(rows, d)
    return Lattice(tuple(tuple(Fraction(x, den) for x in row) for row in h))


def _hnf(rows, d):
    """Row-style Hermite normal form; returns d independent rows."""
    rows = [list(r) for r in rows]
    out = []
    col = 0
    while col < d:
        pivots = [r for r in rows if r[col] != 0]
        if not pivots:
            raise ValueError("generators lost rank in HNF")
        while True:
            pivots.sort(key=lambda r: abs(r[col]))
            p = pivots[0]
            done = True
            for r in pivots[1:]:
                q = r[col] // p[col]
                if q != 0:
                    for j in range(d):
                        r[j] -= q * p[j]
                    done = False
            pivots = [r for r in pivots if r[col] != 0]
            if done and len(pivots) == 1:
                break
        piv = pivots[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        out.append(piv)
        rows = [r for r in rows if r is not piv and any(r)]
        for r in rows:
            q = r[col] // piv[col]
            if q:
                for j in range(d):
                    r[j] -= q * piv[j]
        rows = [r for r in rows if any(x != 0 for x in r)]
        col += 1
    return out
