"""The twisted central extension of SL2(Z[1/p]) by Z[1/p].

Elements are pairs (lambda, a) with lambda an exact determinant-1 matrix over
Z[1/p] and a in Z[1/p]; multiplication is

    (l1, a1) (l2, a2) = (l1 l2, a1 + a2 + beta(l1, l2))

with beta the bounded Euler cocycle evaluated on the float images of the
exact matrices and consumed as a gated exact integer.  The fiber map
delta(lambda, a) = -a is a quasimorphism whose defect realizes the cocycle:
delta(uv) - delta(u) - delta(v) = -beta in {-1, 0}.
"""

from __future__ import annotations

from functools import lru_cache

from dataclasses import dataclass
from fractions import Fraction

from .euler import RealMat2, euler_cocycle
from .groups import AmbientGroup, PointSet
from .matrices import Mat2, mat2_height, mat2_identity, parse_mat2
from .scalars import PScaled, format_pscaled, parse_pscaled

_beta_cache: dict = {}
_float_cache: dict = {}


def _as_real(m: Mat2) -> RealMat2:
    hit = _float_cache.get(m)
    if hit is None:
        hit = RealMat2.from_exact(m)
        _float_cache[m] = hit
    return hit


def beta_exact(l1: Mat2, l2: Mat2, product: Mat2 | None = None) -> int:
    """Euler cocycle on exact matrices, memoized on the exact pair."""
    key = (l1, l2)
    hit = _beta_cache.get(key)
    if hit is not None:
        return hit
    if product is None:
        product = l1 * l2
    value, _residual = euler_cocycle(_as_real(l1), _as_real(l2), _as_real(product))
    _beta_cache[key] = value
    return value


def _require_zp_entries(m: Mat2, p: int):
    for e in m.entries():
        v = e.value if isinstance(e, PScaled) else Fraction(e)
        den = v.denominator
        while den % p == 0:
            den //= p
        if den != 1:
            raise ValueError(f"matrix entry {e} is not in Z[1/{p}]")


class ExtElem:
    """(lambda, a): a determinant-1 matrix with a central Z[1/p] coordinate."""

    __slots__ = ("lam", "a")

    def __init__(self, lam: Mat2, a: PScaled):
        if lam.det() != 1:
            raise ValueError(f"matrix determinant must be 1, got {lam.det()}")
        _require_zp_entries(lam, a.p)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "a", a)

    def __setattr__(self, *args):
        raise AttributeError("ExtElem is immutable")

    @property
    def p(self) -> int:
        return self.a.p

    def __eq__(self, other):
        if not isinstance(other, ExtElem):
            return NotImplemented
        return self.lam == other.lam and self.a == other.a

    def __hash__(self):
        return hash((self.lam, self.a))

    def __repr__(self):
        return f"ExtElem({self.lam!r}, {self.a!r})"

    def __str__(self):
        return format_ext(self)


def _make_ext(lam: Mat2, a: PScaled) -> ExtElem:
    # internal fast path: determinants multiply and Z[1/p] is closed under
    # the ring operations, so products of validated elements need no re-check
    u = ExtElem.__new__(ExtElem)
    object.__setattr__(u, "lam", lam)
    object.__setattr__(u, "a", a)
    return u


def twisted_product(u: ExtElem, v: ExtElem) -> ExtElem:
    if u.p != v.p:
        raise ValueError(f"mixed primes {u.p} and {v.p}")
    lam = u.lam * v.lam
    b = beta_exact(u.lam, v.lam, product=lam)
    return _make_ext(lam, u.a + v.a + b)


def twisted_inverse(u: ExtElem) -> ExtElem:
    lam_inv = u.lam.inv()
    b = beta_exact(u.lam, lam_inv)
    return _make_ext(lam_inv, -u.a - b)


def ext_identity(p: int) -> ExtElem:
    one, zero = Fraction(1), Fraction(0)
    return ExtElem(Mat2(one, zero, zero, one), PScaled(0, p))


def delta_qm(u: ExtElem) -> PScaled:
    """The fiber quasimorphism delta(lambda, a) = -a."""
    return -u.a


def ext_gauge(u: ExtElem):
    # identity sits at 0; inversion shifts the fiber part by at most the
    # cocycle bound 1, which the covering margins absorb
    return Fraction(mat2_height(u.lam) - 1) + abs(u.a.value)


@lru_cache(maxsize=None)
def ext_ambient(p: int) -> AmbientGroup:
    return AmbientGroup(
        name=f"sl2-z1over{p}-twisted",
        compose=twisted_product,
        invert=twisted_inverse,
        identity=ext_identity(p),
        size_gauge=ext_gauge,
        fmt=format_ext,
    )


def default_generators(p: int = 2, include_diag: bool = True):
    """Shears, the p-power diagonal, their inverses, and the central units."""
    one, zero = Fraction(1), Fraction(0)
    mats = [
        Mat2(one, one, zero, one),
        Mat2(one, zero, one, one),
    ]
    if include_diag:
        mats.append(Mat2(Fraction(p), zero, zero, Fraction(1, p)))
    gens = []
    for m in mats:
        gens.append(ExtElem(m, PScaled(0, p)))
        gens.append(ExtElem(m.inv(), PScaled(0, p)))
    ident = mat2_identity()
    gens.append(ExtElem(ident, PScaled(1, p)))
    gens.append(ExtElem(ident, PScaled(-1, p)))
    return gens


def ext_ball(
    generators, length: int, ambient: AmbientGroup | None = None
) -> PointSet:
    """All twisted products of at most `length` generators (BFS, deduplicated)."""
    if not generators:
        raise ValueError("need at least one generator")
    p = generators[0].p
    amb = ambient or ext_ambient(p)
    seen = {ext_identity(p)}
    frontier = [ext_identity(p)]
    for _ in range(length):
        nxt = []
        for u in frontier:
            for g in generators:
                w = twisted_product(u, g)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return PointSet(amb, seen, length)


def kernel_Delta(ball: PointSet, bound=2, symmetrize: bool = True) -> PointSet:
    """The approximate kernel {u : -bound < delta(u) < bound} of delta.

    With the {0,1} cocycle section the raw kernel is not quite inverse-closed
    (inversion can shift the fiber by 1), so by default the inverse-closed
    core Delta n Delta^-1 is returned; symmetrize=False gives the raw filter.
    """
    bound = Fraction(bound)
    inside = [u for u in ball.elements if abs(u.a.value) < bound]
    if not symmetrize:
        return PointSet(ball.ambient, inside, ball.region)
    # the raw kernel is not inverse-closed (inversion can shift the fiber by
    # the cocycle, and the ball itself grows under inversion), so keep the
    # largest symmetric core inside the ball
    inside_set = set(inside)
    kept = [u for u in inside if twisted_inverse(u) in inside_set]
    return PointSet(ball.ambient, kept, ball.region)


# -- serialization -------------------------------------------------------------


def format_ext(u: ExtElem) -> str:
    entries = []
    for e in u.lam.entries():
        v = e.value if isinstance(e, PScaled) else Fraction(e)
        entries.append(str(v))
    m = f"[[{entries[0]},{entries[1]}],[{entries[2]},{entries[3]}]]"
    return f"({m}; {format_pscaled(u.a)})"


def parse_ext(text: str, p: int | None = None) -> ExtElem:
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"bad extension element syntax: {text!r}")
    body = s[1:-1]
    mat_part, sep, a_part = body.rpartition(";")
    if not sep:
        raise ValueError(f"bad extension element syntax: {text!r}")
    a = parse_pscaled(a_part.strip(), p)
    m = parse_mat2(mat_part.strip(), Fraction)
    return ExtElem(m, a)
