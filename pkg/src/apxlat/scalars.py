"""Exact scalars: rationals, real quadratic fields Q(sqrt(d)), and Z[1/p].

All decisions (ordering, window membership, Pisot tests) are made by exact
rational arithmetic; floats appear only as display/plotting companions.

Textual syntax, used by the CLI and all serialized artifacts:

    rational   "3/4", "-7", "0"
    quadratic  "a+b*sqrt(d)"  e.g. "1/2+1/2*sqrt(5)", "3-2*sqrt(2)"
    p-scaled   "m/p^k"        e.g. "3/2^2" (= 3/4 carrying p=2), "8/2^0"
"""

from __future__ import annotations

import math
import re
from fractions import Fraction


def _is_squarefree(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


class QuadScalar:
    """Element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)).

    d is a fixed square-free integer >= 2.  Equality is componentwise on
    (a, b); comparisons are exact sign computations, never floats.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        if not _is_squarefree(d):
            raise ValueError(f"d must be square-free and >= 2, got {d}")
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "d", d)

    def __setattr__(self, *args):
        raise AttributeError("QuadScalar is immutable")

    # -- ring structure ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, QuadScalar):
            if other.d != self.d and other.b != 0 and self.b != 0:
                raise ValueError(f"mixed field discriminants {self.d} and {other.d}")
            d = self.d if self.b != 0 or other.b == 0 else other.d
            return QuadScalar(other.a, other.b, self.d) if other.b == 0 else other
        if isinstance(other, (int, Fraction)):
            return QuadScalar(other, 0, self.d)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadScalar(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadScalar(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadScalar(
            self.a * o.a + self.b * o.b * self.d,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadScalar":
        n = self.a * self.a - self.d * self.b * self.b
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadScalar(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = QuadScalar(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- exact order -------------------------------------------------------

    def sign(self) -> int:
        """Exact sign of the real value a + b*sqrt(d)."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 against d*b^2
        lhs, rhs = a * a, self.d * b * b
        if a > 0:  # b < 0
            return 1 if lhs > rhs else (-1 if lhs < rhs else 0)
        return -1 if lhs > rhs else (1 if lhs < rhs else 0)

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare QuadScalar with {type(other)}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, QuadScalar):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        # rationals embedded in the field hash like plain rationals, so that
        # QuadScalar(3, 0, 5) == Fraction(3) stays hash-consistent
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __floor__(self) -> int:
        k = math.floor(float(self))
        # float estimate, then exact fix-up
        while self._cmp(k) < 0:
            k -= 1
        while self._cmp(k + 1) >= 0:
            k += 1
        return k

    def conj(self) -> "QuadScalar":
        return QuadScalar(self.a, -self.b, self.d)

    def __repr__(self):
        return f"QuadScalar({self.a}, {self.b}, d={self.d})"

    def __str__(self):
        return format_quad(self)


def galois_conj(x: QuadScalar) -> QuadScalar:
    """The nontrivial field automorphism sqrt(d) -> -sqrt(d)."""
    return x.conj()


def is_algebraic_integer(x: QuadScalar) -> bool:
    """True iff x lies in the ring of integers of Q(sqrt(d)).

    x = a + b*sqrt(d) is integral iff trace 2a and norm a^2 - d*b^2 are both
    rational integers; this covers the half-integer elements when d = 1 mod 4.
    """
    tr = 2 * x.a
    nm = x.a * x.a - x.d * x.b * x.b
    return tr.denominator == 1 and nm.denominator == 1


def is_pisot(x: QuadScalar) -> bool:
    """True iff x is an algebraic integer, x > 1, and |conjugate| < 1.

    All three comparisons are exact.
    """
    if not is_algebraic_integer(x):
        return False
    if not (x > 1):
        return False
    return abs(galois_conj(x)) < 1


class PScaled:
    """Element of Z[1/p]: a rational whose denominator is a power of p."""

    __slots__ = ("value", "p")

    def __init__(self, value, p: int):
        if not is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        v = Fraction(value)
        den = v.denominator
        while den % p == 0:
            den //= p
        if den != 1:
            raise ValueError(f"{v} is not in Z[1/{p}]")
        object.__setattr__(self, "value", v)
        object.__setattr__(self, "p", p)

    def __setattr__(self, *args):
        raise AttributeError("PScaled is immutable")

    def _coerce(self, other):
        if isinstance(other, PScaled):
            if other.p != self.p:
                raise ValueError(f"mixed primes {self.p} and {other.p}")
            return other
        if isinstance(other, (int, Fraction)):
            return PScaled(other, self.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PScaled(self.value + o.value, self.p)

    __radd__ = __add__

    def __neg__(self):
        return PScaled(-self.value, self.p)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PScaled(self.value - o.value, self.p)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PScaled(self.value * o.value, self.p)

    __rmul__ = __mul__

    def __abs__(self):
        return PScaled(abs(self.value), self.p)

    def _cmp_value(self, other):
        if isinstance(other, PScaled):
            return other.value
        if isinstance(other, (int, Fraction)):
            return Fraction(other)
        raise TypeError(f"cannot compare PScaled with {type(other)}")

    def __lt__(self, other):
        return self.value < self._cmp_value(other)

    def __le__(self, other):
        return self.value <= self._cmp_value(other)

    def __gt__(self, other):
        return self.value > self._cmp_value(other)

    def __ge__(self, other):
        return self.value >= self._cmp_value(other)

    def __eq__(self, other):
        if isinstance(other, PScaled):
            return self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __bool__(self):
        return self.value != 0

    def __float__(self):
        return float(self.value)

    def __repr__(self):
        return f"PScaled({self.value}, p={self.p})"

    def __str__(self):
        return format_pscaled(self)


def padic_valuation(x, p: int):
    """v_p(x) for a rational or PScaled x; None for x = 0."""
    v = x.value if isinstance(x, PScaled) else Fraction(x)
    if v == 0:
        return None
    num, den, val = v.numerator, v.denominator, 0
    while num % p == 0:
        num //= p
        val += 1
    while den % p == 0:
        den //= p
        val -= 1
    return val


def padic_norm(x, p: int | None = None) -> Fraction:
    """|x|_p = p^(-v_p(x)) as an exact rational; |0|_p = 0."""
    if isinstance(x, PScaled):
        p = x.p
    if p is None:
        raise ValueError("prime required for non-PScaled input")
    v = padic_valuation(x, p)
    if v is None:
        return Fraction(0)
    return Fraction(p) ** (-v)


# -- textual syntax ---------------------------------------------------------

_QUAD_RE = re.compile(
    r"^(?P<a>[+-]?\d+(?:/\d+)?)"
    r"(?P<sign>[+-])(?P<b>\d+(?:/\d+)?)\*sqrt\((?P<d>\d+)\)$"
)
_PSCALED_RE = re.compile(r"^(?P<m>[+-]?\d+)/(?P<p>\d+)\^(?P<k>\d+)$")


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip().replace(" ", ""))


def format_rational(x: Fraction) -> str:
    return str(x)


def parse_quad(text: str, d: int | None = None) -> QuadScalar:
    s = text.strip().replace(" ", "")
    m = _QUAD_RE.match(s)
    if m:
        b = Fraction(m.group("b"))
        if m.group("sign") == "-":
            b = -b
        dd = int(m.group("d"))
        if d is not None and dd != d:
            raise ValueError(f"expected sqrt({d}), got sqrt({dd})")
        return QuadScalar(Fraction(m.group("a")), b, dd)
    if d is None:
        raise ValueError(f"cannot parse quadratic scalar {text!r} without d")
    return QuadScalar(Fraction(s), 0, d)


def format_quad(x: QuadScalar) -> str:
    if x.b >= 0:
        return f"{x.a}+{x.b}*sqrt({x.d})"
    return f"{x.a}-{-x.b}*sqrt({x.d})"


def parse_pscaled(text: str, p: int | None = None) -> PScaled:
    s = text.strip().replace(" ", "")
    m = _PSCALED_RE.match(s)
    if m:
        pp = int(m.group("p"))
        if p is not None and pp != p:
            raise ValueError(f"expected prime {p}, got {pp}")
        return PScaled(Fraction(int(m.group("m")), pp ** int(m.group("k"))), pp)
    if p is None:
        raise ValueError(f"cannot parse p-scaled value {text!r} without p")
    return PScaled(Fraction(s), p)


def format_pscaled(x: PScaled) -> str:
    v = padic_valuation(x, x.p)
    k = max(0, -v) if v is not None else 0
    num = x.value * x.p**k
    assert num.denominator == 1
    return f"{num.numerator}/{x.p}^{k}"
