"""Exact scalar arithmetic underpinning the geometric predicates.

Two kinds of exact scalars flow through the library:

* *field scalars* -- ``fractions.Fraction`` (or plain ``int``), optionally
  extended to a real quadratic field Q(sqrt(D)) via :class:`QuadExt`.
  Coordinates, squared distances, Gram matrices and matrix entries are
  field scalars, so they are closed under +, -, *, /.
* :class:`Radical` -- finite sums ``q0 + sum_i c_i*sqrt(m_i)`` with field
  scalar parts.  Radii and distances are radicals, which makes closed-ball
  membership tests ``|x - y| <= rho`` exactly decidable even for composite
  radii such as ``rho0 + 2R``.

Floating-point mode never enters this module; float handles compare with an
absolute tolerance instead (see ``geometry.Tolerance``).
"""

import math
from fractions import Fraction

__all__ = [
    "QuadExt",
    "Radical",
    "ExactComparisonError",
    "quadext",
    "ssign",
    "sfloat",
    "sfloor",
    "field_sqrt",
    "scalar_cmp",
    "is_exact_scalar",
]


class ExactComparisonError(Exception):
    """Raised when a radical sign cannot be decided by repeated squaring."""


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected a rational, got {type(x).__name__}")


def quadext(a, b, d):
    """Build ``a + b*sqrt(d)``, collapsing to a Fraction when b == 0."""
    a = _as_fraction(a)
    b = _as_fraction(b)
    if b == 0:
        return a
    return QuadExt(a, b, d)


class QuadExt:
    """Element ``a + b*sqrt(d)`` of the real quadratic field Q(sqrt(d)).

    ``d`` is a fixed positive non-square integer.  Arithmetic that would
    land back in Q returns a plain Fraction, so rational values have a
    single representation (important for hashing point tuples).
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d):
        if not (isinstance(d, int) and d > 1):
            raise ValueError(f"radicand must be an integer > 1, got {d!r}")
        if math.isqrt(d) ** 2 == d:
            raise ValueError(f"radicand {d} is a perfect square")
        self.a = _as_fraction(a)
        self.b = _as_fraction(b)
        if self.b == 0:
            raise ValueError("use quadext() so rational values collapse")
        self.d = d

    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise ValueError(f"mixed radicands sqrt({self.d}) and sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt.__new_raw(Fraction(other), Fraction(0), self.d)
        return None

    @staticmethod
    def __new_raw(a, b, d):
        obj = object.__new__(QuadExt)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b)
        object.__setattr__(obj, "d", d)
        return obj

    def __setattr__(self, name, value):
        if hasattr(self, "d") and name in self.__slots__ and getattr(self, name, None) is not None:
            raise AttributeError("QuadExt is immutable")
        object.__setattr__(self, name, value)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return quadext(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return quadext(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return quadext(o.a - self.a, o.b - self.b, self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return quadext(self.a * o.a + self.b * o.b * self.d,
                       self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.a * o.a - o.b * o.b * self.d  # field norm, nonzero for o != 0
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(d))")
        return self * quadext(o.a / n, -o.b / n, self.d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o.__truediv__(self)

    def __neg__(self):
        return QuadExt.__new_raw(-self.a, -self.b, self.d)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def sign(self):
        sa, sb = _frac_sign(self.a), _frac_sign(self.b)
        if sa == sb or sa == 0:
            return sb if sa == 0 else sa
        if sb == 0:
            return sa
        # opposite signs: compare a^2 with b^2 d
        t = self.a * self.a - self.b * self.b * self.d
        if t == 0:
            return 0
        return sa if t > 0 else sb

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return False  # b != 0 always
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.__sub_sign(o) < 0

    def __sub_sign(self, o):
        diff = quadext(self.a - o.a, self.b - o.b, self.d)
        return diff.sign() if isinstance(diff, QuadExt) else _frac_sign(diff)

    def __le__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.__sub_sign(o) <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.__sub_sign(o) > 0

    def __ge__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.__sub_sign(o) >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        return f"({self.a}{'+' if self.b > 0 else '-'}{abs(self.b)}*sqrt({self.d}))"


def _frac_sign(q):
    return (q > 0) - (q < 0)


def is_exact_scalar(x):
    return isinstance(x, (int, Fraction, QuadExt))


def ssign(x):
    """Exact sign of a field scalar."""
    if isinstance(x, QuadExt):
        return x.sign()
    return _frac_sign(x)


def sfloat(x):
    return float(x)


def sfloor(x):
    """Exact floor of a field scalar."""
    if isinstance(x, QuadExt):
        n = math.floor(float(x))
        # float estimate can be off by one near integers; fix exactly
        while ssign(x - n) < 0:
            n -= 1
        while ssign(x - (n + 1)) >= 0:
            n += 1
        return n
    if isinstance(x, Fraction):
        return x.numerator // x.denominator
    return x // 1


def scalar_cmp(x, y):
    return ssign(x - y)


def _frac_sqrt(q):
    """Exact sqrt of a nonnegative Fraction, or None if irrational."""
    q = _as_fraction(q)
    if q < 0:
        return None
    if q == 0:
        return Fraction(0)
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def field_sqrt(x):
    """Square root of a field scalar inside its own field, or None.

    For ``x = A + B*sqrt(d)`` a root ``p + q*sqrt(d)`` exists iff
    ``A^2 - B^2 d`` is a rational square and one of ``(A +- s)/2`` is too.
    """
    if isinstance(x, (int, Fraction)):
        return _frac_sqrt(x)
    if x.sign() < 0:
        return None
    s = _frac_sqrt(x.a * x.a - x.b * x.b * x.d)
    if s is None:
        return None
    for branch in (s, -s):
        p = _frac_sqrt((x.a + branch) / 2)
        if p is None or p == 0:
            continue
        cand = quadext(p, x.b / (2 * p), x.d)
        if ssign(cand) >= 0 and cand * cand == x:
            return cand
    return None


def _term_key(term):
    # deterministic ordering of radical terms; radicands are distinct
    return float(term[1])


class Radical:
    """Exact scalar ``rat + sum_i coef_i * sqrt(rad_i)``.

    ``rat``, the coefficients and the radicands are field scalars from one
    field (Fraction or a single Q(sqrt(d))).  Instances are immutable,
    totally ordered and support addition, subtraction and scaling by field
    scalars.  Signs are decided exactly by repeated squaring.
    """

    __slots__ = ("rat", "terms")

    def __init__(self, rat=0, terms=()):
        canon_rat, canon_terms = _canonicalize(rat, terms)
        object.__setattr__(self, "rat", canon_rat)
        object.__setattr__(self, "terms", canon_terms)

    def __setattr__(self, *a):
        raise AttributeError("Radical is immutable")

    @staticmethod
    def of(x):
        """The radical equal to a plain field scalar."""
        if not is_exact_scalar(x):
            raise TypeError(f"not an exact scalar: {x!r}")
        return Radical(x, ())

    @staticmethod
    def sqrt(m):
        """The radical sqrt(m) for a nonnegative field scalar m."""
        if ssign(m) < 0:
            raise ValueError("sqrt of a negative scalar")
        return Radical(0, ((1, m),))

    def __add__(self, other):
        if isinstance(other, Radical):
            return Radical(self.rat + other.rat, self.terms + other.terms)
        if is_exact_scalar(other):
            return Radical(self.rat + other, self.terms)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Radical(-self.rat, tuple((-c, m) for c, m in self.terms))

    def __mul__(self, k):
        if not is_exact_scalar(k):
            return NotImplemented
        return Radical(self.rat * k, tuple((c * k, m) for c, m in self.terms))

    __rmul__ = __mul__

    def __truediv__(self, k):
        if not is_exact_scalar(k):
            return NotImplemented
        return self * (Fraction(1) / k if not isinstance(k, QuadExt) else 1 / k)

    def sign(self):
        return _sign_sum(self.rat, self.terms)

    def cmp(self, other):
        """Sign of self - other; other may be a Radical or field scalar."""
        if is_exact_scalar(other):
            other = Radical.of(other)
        return (self - other).sign()

    def cmp_sqrt(self, d2):
        """Sign of self - sqrt(d2) for a nonnegative field scalar d2."""
        return self.cmp(Radical.sqrt(d2))

    def square(self):
        """self**2 as a Radical (used by nesting-free callers)."""
        rat, terms = _square(self.rat, self.terms)
        return Radical(rat, terms)

    def square_scalar(self):
        """self**2 as a field scalar, if self has at most one sqrt term."""
        if not self.terms:
            return self.rat * self.rat
        if len(self.terms) == 1 and ssign(self.rat) == 0:
            c, m = self.terms[0]
            return c * c * m
        return None

    def is_zero(self):
        return self.rat == 0 and not self.terms  # canonical form

    def __eq__(self, other):
        if isinstance(other, Radical) or is_exact_scalar(other):
            return self.cmp(other) == 0
        return NotImplemented

    def __lt__(self, other):
        return self.cmp(other) < 0

    def __le__(self, other):
        return self.cmp(other) <= 0

    def __gt__(self, other):
        return self.cmp(other) > 0

    def __ge__(self, other):
        return self.cmp(other) >= 0

    def __hash__(self):
        # canonical form makes equal values structurally identical for
        # same-field radicals, which is all the library ever hashes
        return hash((self.rat, self.terms))

    def __float__(self):
        return float(self.rat) + sum(float(c) * math.sqrt(float(m)) for c, m in self.terms)

    def __repr__(self):
        parts = [str(self.rat)] if self.rat != 0 or not self.terms else []
        for c, m in self.terms:
            parts.append(f"sqrt({m})" if c == 1 else f"{c}*sqrt({m})")
        return " + ".join(parts).replace("+ -", "- ")


def _to_field(x):
    if isinstance(x, int):
        return Fraction(x)
    if not is_exact_scalar(x):
        raise TypeError(f"not an exact scalar: {x!r}")
    return x


def _canonicalize(rat, terms):
    merged = []
    rat = _to_field(rat)
    terms = [(_to_field(c), _to_field(m)) for c, m in terms]
    for c, m in terms:
        if ssign(c) == 0 or ssign(m) == 0:
            continue
        if ssign(m) < 0:
            raise ValueError("negative radicand")
        r = field_sqrt(m)
        if r is not None:
            rat = rat + c * r
            continue
        placed = False
        for i, (c0, m0) in enumerate(merged):
            if m0 == m:
                merged[i] = (c0 + c, m0)
                placed = True
                break
            # sqrt(m) = t*sqrt(m0) iff m/m0 is a field square
            ratio = field_sqrt(m / m0)
            if ratio is not None:
                merged[i] = (c0 + c * ratio, m0)
                placed = True
                break
        if not placed:
            merged.append((c, m))
    merged = [(c, m) for c, m in merged if ssign(c) != 0]
    merged.sort(key=_term_key)
    return rat, tuple(merged)


def _square(u, terms):
    """Exact expansion of (u + sum c_i sqrt(m_i))**2 as (rat, terms)."""
    rat = u * u
    out = []
    for c, m in terms:
        rat = rat + c * c * m
        if ssign(u) != 0:
            out.append((2 * u * c, m))
    for i in range(len(terms)):
        for j in range(i + 1, len(terms)):
            ci, mi = terms[i]
            cj, mj = terms[j]
            out.append((2 * ci * cj, mi * mj))
    return rat, out


def _sign_sum(u, terms):
    """Exact sign of u + sum_i c_i*sqrt(m_i).

    Decides by splitting into two halves and squaring; terminates for any
    sum with <= 3 sqrt terms, or 4 terms with u == 0 (all the library ever
    produces; composite radii carry at most two sqrt terms).
    """
    terms = [(c, m) for c, m in terms if ssign(c) != 0 and ssign(m) != 0]
    k = len(terms)
    su = ssign(u)
    if k == 0:
        return su
    if k == 1:
        c, m = terms[0]
        sc = ssign(c)
        if su == 0:
            return sc
        if su == sc:
            return su
        t = ssign(u * u - c * c * m)
        if t == 0:
            return 0
        return su if t > 0 else sc
    if k >= 4 and su != 0:
        raise ExactComparisonError(
            "cannot decide sign of a 4-term radical with a rational part")
    if k >= 5:
        raise ExactComparisonError("too many radical terms")
    if k == 4:
        a_terms, b_terms = terms[:2], terms[2:]
        a_rat = u  # zero here
    else:
        a_terms, b_terms = terms[:1], terms[1:]
        a_rat = u
    # sign(A + B) where A = a_rat + a_terms, B = b_terms
    sa = _sign_sum(a_rat, a_terms)
    snb = _sign_sum(0, [(-c, m) for c, m in b_terms])  # sign(-B)
    if sa != snb:
        if sa == 0:
            return -snb
        return sa
    if sa == 0:
        return 0
    a2_rat, a2_terms = _square(a_rat, a_terms)
    b2_rat, b2_terms = _square(0, b_terms)
    diff_sign = _sign_sum(a2_rat - b2_rat,
                          list(a2_terms) + [(-c, m) for c, m in b2_terms])
    # both A and -B share sign sa: A > -B iff |A| > |B| (sa=1) or |A| < |B| (sa=-1)
    return diff_sign if sa > 0 else -diff_sign
