"""Quasimorphisms: Brooks counting on the free group, the nearest-integer
quasi-homomorphism on the line, defect scans, homogenization estimates, and
approximate kernels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .freewords import FreeWord
from .groups import PointSet


@dataclass(frozen=True)
class Quasimorphism:
    """An evaluable map into exact rationals with a declared defect bound."""

    name: str
    evaluator: Callable
    declared_defect: object = "unknown"  # non-negative Fraction or "unknown"

    def __call__(self, g):
        return self.evaluator(g)


def brooks_count(w: FreeWord, g: FreeWord) -> int:
    """Maximal number of non-overlapping copies of w inside the reduced g.

    Occurrences all have w's length, so the left-to-right greedy scan attains
    the maximum; str.count implements exactly that scan.
    """
    if not w:
        raise ValueError("w must be nontrivial")
    if not w.is_cyclically_reduced():
        raise ValueError("w must be cyclically reduced")
    if not g:
        return 0
    return g.letters.count(w.letters)


def brooks_value(w: FreeWord, g: FreeWord) -> int:
    """Copies of w minus copies of w^-1 in g (the Brooks counting function)."""
    return brooks_count(w, g) - brooks_count(w.inv(), g)


def in_brooks_A(w: FreeWord, g: FreeWord) -> bool:
    """Whether g carries as many copies of w as of w^-1."""
    return brooks_value(w, g) == 0


def brooks_quasimorphism(w: FreeWord) -> Quasimorphism:
    return Quasimorphism(
        name=f"brooks[{w}]",
        evaluator=lambda g: brooks_value(w, g),
    )


def empirical_defect(q: Quasimorphism, ball: PointSet) -> Fraction:
    """max |q(gh) - q(g) - q(h)| over all ordered pairs from the ball."""
    if len(ball) == 0:
        raise ValueError("empty ball")
    compose = ball.ambient.compose
    elems = ball.elements
    vals = [q(g) for g in elems]
    worst = Fraction(0)
    for i, g in enumerate(elems):
        vg = vals[i]
        for j, h in enumerate(elems):
            d = abs(q(compose(g, h)) - vg - vals[j])
            if d > worst:
                worst = Fraction(d)
    return worst


@dataclass(frozen=True)
class HomogenizationEstimate:
    base: int
    values: tuple  # q(g^N)/N for N, 2N, 4N

    @property
    def estimate(self):
        return self.values[0]

    def as_dict(self):
        return {
            "N": self.base,
            "sequence": [str(v) for v in self.values],
        }


def homogenize_estimate(q: Quasimorphism, g, n: int) -> HomogenizationEstimate:
    """q(g^N)/N with the doubled-N sequence for convergence inspection.

    These are estimates of the homogeneous part, never asserted convergent.
    """
    if n < 1:
        raise ValueError("N must be >= 1")
    vals = []
    for k in (n, 2 * n, 4 * n):
        vals.append(Fraction(q(g**k), k))
    return HomogenizationEstimate(base=n, values=tuple(vals))


def approximate_kernel(q: Quasimorphism, bound, ball: PointSet) -> PointSet:
    """{g in ball : |q(g)| <= bound}, exact comparisons."""
    bound = Fraction(bound)
    if bound < 0:
        raise ValueError("bound must be >= 0")
    kept = [g for g in ball.elements if abs(Fraction(q(g))) <= bound]
    return PointSet(ball.ambient, kept, ball.region)


def nearest_integer_qh(gamma: Fraction, t) -> int:
    """The cut-at-gamma retraction of the line onto the integers.

    Writing t = n + delta with delta in [0, 1): returns n when delta <= gamma,
    else n + 1.  For every pair s, t the defect lies in {-1, 0, 1}.
    """
    gamma = Fraction(gamma)
    if not (0 < gamma <= 1):
        raise ValueError("gamma must lie in (0, 1]")
    t = Fraction(t)
    n = t.numerator // t.denominator  # floor
    delta = t - n
    return n if delta <= gamma else n + 1


def nearest_integer_quasimorphism(gamma) -> Quasimorphism:
    gamma = Fraction(gamma)
    return Quasimorphism(
        name=f"nearest-integer[gamma={gamma}]",
        evaluator=lambda t: nearest_integer_qh(gamma, t),
        declared_defect=Fraction(1),
    )
