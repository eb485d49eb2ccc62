"""Exact 2x2 matrices over any one scalar kind (Fraction, QuadScalar, PScaled).

Group elements are required to have determinant exactly 1; inversion is the
adjugate and is rejected otherwise.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import PScaled, QuadScalar, galois_conj


class Mat2:
    __slots__ = ("e11", "e12", "e21", "e22", "_hash")

    def __init__(self, e11, e12, e21, e22):
        object.__setattr__(self, "e11", e11)
        object.__setattr__(self, "e12", e12)
        object.__setattr__(self, "e21", e21)
        object.__setattr__(self, "e22", e22)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *args):
        raise AttributeError("Mat2 is immutable")

    def entries(self):
        return (self.e11, self.e12, self.e21, self.e22)

    def __mul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.e11 * other.e11 + self.e12 * other.e21,
            self.e11 * other.e12 + self.e12 * other.e22,
            self.e21 * other.e11 + self.e22 * other.e21,
            self.e21 * other.e12 + self.e22 * other.e22,
        )

    def det(self):
        return self.e11 * self.e22 - self.e12 * self.e21

    def inv(self) -> "Mat2":
        if self.det() != 1:
            raise ValueError(f"inversion requires det = 1, got {self.det()}")
        return Mat2(self.e22, -self.e12, -self.e21, self.e11)

    def __eq__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return self.entries() == other.entries()

    def __hash__(self):
        # Fraction hashing is costly; matrices are immutable, so memoize
        h = self._hash
        if h is None:
            h = hash(self.entries())
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"Mat2({self.e11}, {self.e12}, {self.e21}, {self.e22})"

    def __str__(self):
        return format_mat2(self)

    def map(self, f) -> "Mat2":
        return Mat2(f(self.e11), f(self.e12), f(self.e21), f(self.e22))

    def float_entries(self):
        return tuple(float(e) for e in self.entries())


def mat2_mul(a: Mat2, b: Mat2) -> Mat2:
    return a * b


def mat2_inv(a: Mat2) -> Mat2:
    return a.inv()


def mat2_det(a: Mat2):
    return a.det()


def mat2_identity(like: Mat2 | None = None, one=None, zero=None) -> Mat2:
    """Identity matrix over the scalar kind of `like` (or explicit one/zero)."""
    if one is None or zero is None:
        if like is None:
            one, zero = Fraction(1), Fraction(0)
        else:
            s = like.e11
            if isinstance(s, QuadScalar):
                one, zero = QuadScalar(1, 0, s.d), QuadScalar(0, 0, s.d)
            elif isinstance(s, PScaled):
                one, zero = PScaled(1, s.p), PScaled(0, s.p)
            else:
                one, zero = Fraction(1), Fraction(0)
    return Mat2(one, zero, zero, one)


def mat2_conj(a: Mat2) -> Mat2:
    """Entrywise Galois conjugation (QuadScalar entries only)."""
    return a.map(galois_conj)


def _coord_height(x) -> int:
    """Max absolute numerator/denominator over the coordinates of x.

    QuadScalar coordinates are taken in the ring basis {1, omega_d} (omega =
    (1+sqrt(d))/2 for d = 1 mod 4, else sqrt(d)), so ring integers have
    integer coordinates and the golden ratio has height 1.
    """
    if isinstance(x, QuadScalar):
        if x.d % 4 == 1:
            n = 2 * x.b
            m = x.a - x.b
        else:
            m, n = x.a, x.b
        return max(abs(m.numerator), m.denominator, abs(n.numerator), n.denominator)
    if isinstance(x, PScaled):
        x = x.value
    x = Fraction(x)
    return max(abs(x.numerator), x.denominator)


def mat2_height(a: Mat2) -> int:
    return max(_coord_height(e) for e in a.entries())


def sup_dist_from_identity(a: Mat2):
    """Exact sup-norm of a - I over the entries."""
    one = mat2_identity(like=a)
    diffs = [abs(x - y) for x, y in zip(a.entries(), one.entries())]
    out = diffs[0]
    for v in diffs[1:]:
        if v > out:
            out = v
    return out


def format_mat2(a: Mat2) -> str:
    e = [str(x) for x in a.entries()]
    return f"[[{e[0]},{e[1]}],[{e[2]},{e[3]}]]"


def parse_mat2(text: str, parse_scalar) -> Mat2:
    s = text.strip().replace(" ", "")
    if not (s.startswith("[[") and s.endswith("]]")):
        raise ValueError(f"bad matrix syntax: {text!r}")
    rows = s[2:-2].split("],[")
    if len(rows) != 2:
        raise ValueError(f"bad matrix syntax: {text!r}")
    cells = []
    for row in rows:
        parts = row.split(",")
        if len(parts) != 2:
            raise ValueError(f"bad matrix row: {row!r}")
        cells.extend(parse_scalar(p) for p in parts)
    return Mat2(*cells)
