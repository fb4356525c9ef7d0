"""Exact scalar arithmetic for every ring and ordered field used downstream.

Four scalar families:

* :class:`Eisenstein` -- a + b*omega with omega = (-1 + sqrt(-3))/2, the ring
  Z[omega] (rational coordinates give its fraction field Q(omega)).
* :class:`Gauss` -- a + b*i, the ring Z[i] (or Q(i) with rational coordinates).
* :class:`Sqrt3` -- x + y*sqrt(3) over Q, with an exact total order.
* :class:`Tower` -- u + v*sqrt(r) with u, v, r in Q(sqrt3), r > 0; one
  quadratic level on top of Sqrt3, with an exact sign.

All values are immutable and hashable; every operation is pure.  Integer
coordinates are arbitrary precision, and Fraction coordinates are accepted
everywhere so the same classes serve both the rings and their fraction
fields.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Rat = Union[int, Fraction]


class NonDivisibleError(ArithmeticError):
    """Exact ring division was requested but the quotient is not integral."""


def _as_rat(x) -> Rat:
    if isinstance(x, int) or isinstance(x, Fraction):
        return x
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


def _norm_rat(x: Rat) -> Rat:
    # collapse Fraction(n, 1) to int so reprs and hashes stay tidy
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def sign_rat(x: Rat) -> int:
    return (x > 0) - (x < 0)


def _round_nearest(x: Rat) -> int:
    """Nearest integer (ties toward even, which is fine for Euclidean division)."""
    if isinstance(x, int):
        return x
    n = x.numerator
    d = x.denominator
    q, r = divmod(n, d)
    if 2 * r > d or (2 * r == d and q % 2):
        q += 1
    return q


class _QuadRing:
    """Shared machinery for Z[omega] and Z[i] style rings.

    Subclasses fix the multiplication rule, conjugation and the unit group.
    """

    __slots__ = ("a", "b")

    def __init__(self, a: Rat = 0, b: Rat = 0):
        object.__setattr__(self, "a", _norm_rat(_as_rat(a)))
        object.__setattr__(self, "b", _norm_rat(_as_rat(b)))

    def __setattr__(self, *_):
        raise AttributeError("scalars are immutable")

    # -- structure ---------------------------------------------------------

    def _make(self, a, b):
        return type(self)(a, b)

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, (int, Fraction)):
            return self._make(other, 0)
        return None

    @property
    def is_integral(self) -> bool:
        return isinstance(self.a, int) and isinstance(self.b, int)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def rational(self) -> Rat:
        """The value as a rational number; only valid when b == 0."""
        if self.b != 0:
            raise ValueError(f"{self!r} is not rational")
        return self.a

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._make(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._make(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return self._make(-self.a, -self.b)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero scalar")
        num = self * o.conj()
        return self._make(Fraction(num.a, 1) / n, Fraction(num.b, 1) / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((type(self).__name__, self.a, self.b))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    # -- Euclidean ring ----------------------------------------------------

    def euclid_divmod(self, other):
        """Euclidean division: q, r with self = q*other + r, N(r) < N(other).

        Both operands must be integral (works in the ring, not the field).
        Rounding each field-quotient coordinate to the nearest integer keeps
        the remainder norm <= 3/4 (omega) resp. 1/2 (i) of the divisor norm.
        """
        if not (self.is_integral and other.is_integral):
            raise ValueError("Euclidean division needs integral operands")
        q_field = self / other
        q = self._make(_round_nearest(q_field.a), _round_nearest(q_field.b))
        r = self - q * other
        return q, r

    def divides(self, other) -> bool:
        """True when self divides other exactly in the ring."""
        o = self._coerce(other)
        if self.norm() == 0:
            return o.norm() == 0
        q = o / self
        return isinstance(q.a, int) and isinstance(q.b, int)

    def exact_div(self, other):
        """other / self when exact in the ring, else NonDivisibleError."""
        o = self._coerce(other)
        q = o / self
        if not q.is_integral:
            raise NonDivisibleError(f"{self} does not divide {other}")
        return q

    def gcd(self, other):
        """A gcd in the ring (defined up to units), via the Euclidean algorithm."""
        x, y = self, self._coerce(other)
        while y.norm() != 0:
            _, r = x.euclid_divmod(y)
            x, y = y, r
        return x

    def canonical_associate(self):
        """A deterministic representative among the unit multiples of self.

        Real positive representative when one exists (Hermitian determinants
        are real), otherwise the lexicographically largest coordinate pair.
        """
        if self.norm() == 0:
            return self
        cands = [self * u for u in self.units()]
        for c in cands:
            if c.b == 0 and c.a > 0:
                return c
        return max(cands, key=lambda c: (c.a, c.b))


class Eisenstein(_QuadRing):
    """a + b*omega with omega^2 + omega + 1 = 0."""

    __slots__ = ()

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a1, b1, a2, b2 = self.a, self.b, o.a, o.b
        return Eisenstein(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2 - b1 * b2)

    def conj(self) -> "Eisenstein":
        return Eisenstein(self.a - self.b, -self.b)

    def norm(self) -> Rat:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def real(self) -> Rat:
        # omega = -1/2 + sqrt(3)/2 i
        return self.a - Fraction(self.b, 2)

    @staticmethod
    def units():
        return (Eisenstein(1), Eisenstein(-1), Eisenstein(0, 1),
                Eisenstein(0, -1), Eisenstein(-1, -1), Eisenstein(1, 1))

    def __repr__(self):
        if self.b == 0:
            return f"{self.a}"
        return f"({self.a}{self.b:+}w)" if isinstance(self.b, int) else f"({self.a}+({self.b})w)"


class Gauss(_QuadRing):
    """a + b*i with i^2 = -1."""

    __slots__ = ()

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a1, b1, a2, b2 = self.a, self.b, o.a, o.b
        return Gauss(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2)

    def conj(self) -> "Gauss":
        return Gauss(self.a, -self.b)

    def norm(self) -> Rat:
        return self.a * self.a + self.b * self.b

    def real(self) -> Rat:
        return self.a

    @staticmethod
    def units():
        return (Gauss(1), Gauss(-1), Gauss(0, 1), Gauss(0, -1))

    def __repr__(self):
        if self.b == 0:
            return f"{self.a}"
        return f"({self.a}{self.b:+}i)" if isinstance(self.b, int) else f"({self.a}+({self.b})i)"


OMEGA = Eisenstein(0, 1)
OMEGA_BAR = Eisenstein(-1, -1)
THETA = Eisenstein(1, 2)        # theta = omega - conj(omega) = sqrt(-3)
GAUSS_I = Gauss(0, 1)
ONE_PLUS_I = Gauss(1, 1)


class Sqrt3:
    """x + y*sqrt(3) with rational x, y; exactly ordered."""

    __slots__ = ("x", "y")

    def __init__(self, x: Rat = 0, y: Rat = 0):
        object.__setattr__(self, "x", _norm_rat(_as_rat(x)))
        object.__setattr__(self, "y", _norm_rat(_as_rat(y)))

    def __setattr__(self, *_):
        raise AttributeError("scalars are immutable")

    def _coerce(self, other):
        if isinstance(other, Sqrt3):
            return other
        if isinstance(other, (int, Fraction)):
            return Sqrt3(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Sqrt3(self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Sqrt3(self.x - o.x, self.y - o.y)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Sqrt3(-self.x, -self.y)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Sqrt3(self.x * o.x + 3 * self.y * o.y, self.x * o.y + self.y * o.x)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = o.x * o.x - 3 * o.y * o.y
        if d == 0:
            raise ZeroDivisionError("division by zero scalar")
        num = self * Sqrt3(o.x, -o.y)
        return Sqrt3(Fraction(num.x, 1) / d, Fraction(num.y, 1) / d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.x == o.x and self.y == o.y

    def __hash__(self):
        return hash(("Sqrt3", self.x, self.y))

    def __bool__(self):
        return self.x != 0 or self.y != 0

    def sign(self) -> int:
        """Sign of the real value x + y*sqrt(3), by integer arithmetic only."""
        sx, sy = sign_rat(self.x), sign_rat(self.y)
        if sy == 0:
            return sx
        if sx == 0:
            return sy
        if sx == sy:
            return sx
        # opposite signs: compare x^2 against 3 y^2
        cmp = sign_rat(self.x * self.x - 3 * self.y * self.y)
        return sx * cmp

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() >= 0

    def __float__(self):
        return float(self.x) + float(self.y) * 3 ** 0.5

    def __repr__(self):
        if self.y == 0:
            return f"{self.x}"
        return f"({self.x}{'+' if sign_rat(self.y) >= 0 else '-'}{abs(self.y)}*sqrt3)"

    def as_string(self) -> str:
        """Stable "x+y*sqrt3" form used by certificate serialization."""
        return f"{self.x}{'+' if sign_rat(self.y) >= 0 else '-'}{abs(self.y)}*sqrt3"


SQRT3 = Sqrt3(0, 1)


def _as_sqrt3(v) -> Sqrt3:
    if isinstance(v, Sqrt3):
        return v
    return Sqrt3(_as_rat(v), 0)


class Tower:
    """u + v*sqrt(r) with u, v, r in Q(sqrt3) and r > 0.

    Exactly one extension level: r itself must be a Sqrt3 value.  Arithmetic
    is only defined between values sharing the same radicand.
    """

    __slots__ = ("u", "v", "r")

    def __init__(self, u, v=0, r=1):
        u, v, r = _as_sqrt3(u), _as_sqrt3(v), _as_sqrt3(r)
        if r.sign() <= 0:
            raise ValueError("radicand must be positive")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "r", r)

    def __setattr__(self, *_):
        raise AttributeError("scalars are immutable")

    def _coerce(self, other):
        if isinstance(other, Tower):
            if other.v == Sqrt3(0) or self.v == Sqrt3(0) or other.r == self.r:
                r = self.r if self.v != Sqrt3(0) or other.v == Sqrt3(0) else other.r
                return Tower(other.u, other.v, r), Tower(self.u, self.v, r)
            return None
        if isinstance(other, (int, Fraction, Sqrt3)):
            return Tower(_as_sqrt3(other), 0, self.r), self
        return None

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        o, s = pair
        return Tower(s.u + o.u, s.v + o.v, s.r)

    __radd__ = __add__

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        o, s = pair
        return Tower(s.u - o.u, s.v - o.v, s.r)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Tower(-self.u, -self.v, self.r)

    def __mul__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        o, s = pair
        return Tower(s.u * o.u + s.v * o.v * s.r, s.u * o.v + s.v * o.u, s.r)

    __rmul__ = __mul__

    def __truediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        o, s = pair
        d = o.u * o.u - o.v * o.v * s.r
        if not d:
            raise ZeroDivisionError("division by zero scalar")
        num = s * Tower(o.u, -o.v, s.r)
        return Tower(num.u / d, num.v / d, s.r)

    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        o, s = pair
        return s.u == o.u and s.v == o.v

    def __hash__(self):
        if self.v == Sqrt3(0):
            return hash(("Tower", self.u, self.v))
        return hash(("Tower", self.u, self.v, self.r))

    def __bool__(self):
        return bool(self.u) or bool(self.v)

    def sign(self) -> int:
        """Sign of u + v*sqrt(r), determined by nested squaring."""
        su, sv = self.u.sign(), self.v.sign()
        if sv == 0:
            return su
        if su == 0:
            return sv
        if su == sv:
            return su
        cmp = (self.u * self.u - self.v * self.v * self.r).sign()
        return su * cmp

    def __lt__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        o, s = pair
        return (s - o).sign() < 0

    def __gt__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        o, s = pair
        return (s - o).sign() > 0

    def __float__(self):
        return float(self.u) + float(self.v) * float(self.r) ** 0.5

    def __repr__(self):
        return f"({self.u!r}+{self.v!r}*sqrt({self.r!r}))"


def sqrt3_sqrt(value: Sqrt3):
    """Exact square root of a Q(sqrt3) element inside Q(sqrt3), or None.

    Solves (p + q*sqrt3)^2 = x + y*sqrt3 over the rationals.
    """
    x, y = Fraction(value.x), Fraction(value.y)
    if value.sign() < 0:
        return None
    if y == 0:
        # p*q = 0: either p^2 = x or 3 q^2 = x
        r = _rat_sqrt(x)
        if r is not None:
            return Sqrt3(r, 0)
        r = _rat_sqrt(x / 3)
        if r is not None:
            return Sqrt3(0, r)
        return None
    # p^2 + 3 q^2 = x and 2 p q = y: p^2 satisfies t^2 - x t + 3 (y/2)^2 = 0
    disc = x * x - 3 * y * y
    d = _rat_sqrt(disc)
    if d is None:
        return None
    for t in ((x + d) / 2, (x - d) / 2):
        p = _rat_sqrt(t)
        if p is not None and p != 0:
            q = y / (2 * p)
            cand = Sqrt3(p, q)
            if cand * cand == value and cand.sign() > 0:
                return cand
            cand = -cand
            if cand * cand == value and cand.sign() > 0:
                return cand
    return None


def _rat_sqrt(x: Fraction):
    """Exact rational square root, or None."""
    if x < 0:
        return None
    x = Fraction(x)
    from math import isqrt
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sign_of(x) -> int:
    """Sign of any supported ordered scalar (int, Fraction, Sqrt3, Tower)."""
    if isinstance(x, (int, Fraction)):
        return sign_rat(x)
    return x.sign()
