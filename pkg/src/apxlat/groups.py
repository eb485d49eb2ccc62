"""Ambient groups and finite truncated point sets.

A PointSet is a finite, duplicate-free, canonically ordered slice of a subset
of an ambient group, tagged with the truncation bound it represents.  For
generated sets the bound means "every intended element of gauge <= region is
present"; for derived sets (products, intersections) it is the inherited outer
bound, and claims should target its interior.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Optional


class AmbientMismatch(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class AmbientGroup:
    """A group presented by callables, with a size gauge for truncations.

    size_gauge must return exactly comparable values (int, Fraction, or an
    exact scalar with total order); the identity has gauge 0.  distance is
    optional and only needed for Delone-style checks.  ordered_line marks
    ambients whose elements carry the real line's total order.
    """

    name: str
    compose: Callable
    invert: Callable
    identity: object
    size_gauge: Callable
    fmt: Callable = staticmethod(str)
    distance: Optional[Callable] = None
    sort_key: Optional[Callable] = None
    ordered_line: bool = False

    def canonical_key(self, x):
        if self.sort_key is not None:
            return self.sort_key(x)
        return (self.size_gauge(x), self.fmt(x))


class PointSet:
    """Finite truncation of a subset of an ambient group."""

    __slots__ = ("ambient", "elements", "region", "_member")

    def __init__(self, ambient: AmbientGroup, elements: Iterable, region):
        elems = list(dict.fromkeys(elements))
        elems.sort(key=ambient.canonical_key)
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "elements", tuple(elems))
        object.__setattr__(self, "region", region)
        object.__setattr__(self, "_member", frozenset(elems))

    def __setattr__(self, *args):
        raise AttributeError("PointSet is immutable")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._member

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.ambient is other.ambient and self.elements == other.elements

    def __hash__(self):
        return hash((id(self.ambient), self.elements))

    def restrict(self, region) -> "PointSet":
        g = self.ambient.size_gauge
        return PointSet(
            self.ambient, (x for x in self.elements if g(x) <= region), region
        )

    def invert(self) -> "PointSet":
        inv = self.ambient.invert
        return PointSet(self.ambient, (inv(x) for x in self.elements), self.region)

    def is_symmetric(self):
        """(ok, witness): identity present and closed under inversion."""
        if self.ambient.identity not in self:
            return False, self.ambient.identity
        inv = self.ambient.invert
        for x in self.elements:
            if inv(x) not in self:
                return False, x
        return True, None

    def serialize(self) -> str:
        return "\n".join(self.ambient.fmt(x) for x in self.elements) + "\n"

    def __repr__(self):
        return (
            f"PointSet({self.ambient.name}, {len(self.elements)} elements, "
            f"region={self.region})"
        )


def require_same_ambient(*sets: PointSet):
    a = sets[0].ambient
    for s in sets[1:]:
        if s.ambient is not a:
            raise AmbientMismatch(
                f"ambient mismatch: {a.name} vs {s.ambient.name}"
            )
    return a


# -- standard ambients -------------------------------------------------------


def _abs_gauge(x):
    return abs(x)


@lru_cache(maxsize=None)
def rational_line() -> AmbientGroup:
    """(Q, +) with archimedean absolute value as the gauge."""
    return AmbientGroup(
        name="rational-line",
        compose=lambda x, y: x + y,
        invert=lambda x: -x,
        identity=Fraction(0),
        size_gauge=_abs_gauge,
        distance=lambda x, y: abs(x - y),
        ordered_line=True,
    )


def integer_interval(lo: int, hi: int, ambient: AmbientGroup | None = None) -> PointSet:
    amb = ambient or rational_line()
    region = max(abs(lo), abs(hi))
    return PointSet(amb, (Fraction(k) for k in range(lo, hi + 1)), region)


@lru_cache(maxsize=None)
def quad_line(d: int) -> AmbientGroup:
    """(Z[omega_d] inside R, +) with exact archimedean gauge."""
    return AmbientGroup(
        name=f"quad-line-sqrt{d}",
        compose=lambda x, y: x + y,
        invert=lambda x: -x,
        identity=Fraction(0),
        size_gauge=_abs_gauge,
        distance=lambda x, y: abs(x - y),
        ordered_line=True,
    )


@lru_cache(maxsize=None)
def pscaled_line(p: int) -> AmbientGroup:
    """(Z[1/p] inside R, +): archimedean gauge, p-adic data on the side."""
    from .scalars import PScaled

    return AmbientGroup(
        name=f"z1over{p}-line",
        compose=lambda x, y: x + y,
        invert=lambda x: -x,
        identity=PScaled(0, p),
        size_gauge=_abs_gauge,
        distance=lambda x, y: abs(x - y),
        ordered_line=True,
    )


@lru_cache(maxsize=None)
def pscaled_padic(p: int) -> AmbientGroup:
    """(Z[1/p] inside Q_p, +): the p-adic norm is the gauge."""
    from .scalars import PScaled, padic_norm

    return AmbientGroup(
        name=f"z1over{p}-padic",
        compose=lambda x, y: x + y,
        invert=lambda x: -x,
        identity=PScaled(0, p),
        size_gauge=padic_norm,
        distance=lambda x, y: padic_norm(x - y),
    )


def grid_probes(interior, spacing: Fraction):
    """Rational probe grid [-interior, interior] for covering-radius scans."""
    interior = Fraction(interior)
    spacing = Fraction(spacing)
    n = int(interior / spacing)
    return [k * spacing for k in range(-n, n + 1)]
