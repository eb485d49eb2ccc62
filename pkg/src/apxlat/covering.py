"""Covering certificates and approximate-subgroup checks on finite truncations.

The central object is the CoveringCertificate: an explicit finite translate
set F with an exhaustively verified claim "every y in Y with gauge <= region
lies in X.f for some f in F".  Positive certificates are honest statements
about the underlying infinite sets, because every membership is witnessed by
exact arithmetic; the interior-region and translate-bound conventions keep
the claims relevant (boundary products escape any finite truncation).

Greedy construction: scan the target in canonical order; for an uncovered y,
the translate is f = x^-1 y for the canonically smallest x in X such that f's
gauge stays within the translate bound (default: the covered region itself;
strict checks pass half the region to keep translates interior).  A target
element with no in-bound translate raises Uncoverable - the truncation is too
small to certify the claim, which is a statement about the truncation, not
about the infinite object.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .groups import AmbientGroup, PointSet, require_same_ambient


class Uncoverable(RuntimeError):
    """No in-bound translate can cover some target element."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotSymmetric(ValueError):
    """A set required to be symmetric is not; carries the offending element."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class CoveringCertificate:
    base: PointSet
    target: PointSet
    translates: tuple
    covered_region: object
    translate_bound: object
    validated: bool
    checked_count: int

    def __len__(self):
        return len(self.translates)

    def revalidate(self) -> bool:
        """Exhaustive membership re-check of the covering claim."""
        amb = self.base.ambient
        gauge, compose, invert = amb.size_gauge, amb.compose, amb.invert
        inv_translates = [invert(f) for f in self.translates]
        for y in self.target:
            if gauge(y) > self.covered_region:
                continue
            if not any(compose(y, fi) in self.base for fi in inv_translates):
                return False
        return True

    def as_dict(self) -> dict:
        amb = self.base.ambient
        return {
            "translates": [amb.fmt(f) for f in self.translates],
            "region": _num(self.covered_region),
            "translate_bound": _num(self.translate_bound),
            "validated": self.validated,
            "counts": {
                "translates": len(self.translates),
                "base": len(self.base),
                "target": len(self.target),
                "checked": self.checked_count,
            },
        }


def _num(x):
    if x is None:
        return None
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    return float(x)


def product_set(x: PointSet, y: PointSet) -> PointSet:
    """All pairwise products, duplicate-free; region is the combined outer bound."""
    amb = require_same_ambient(x, y)
    compose = amb.compose
    out = {compose(a, b) for a in x.elements for b in y.elements}
    return PointSet(amb, out, x.region + y.region)


def covering_certificate(
    x: PointSet,
    y: PointSet,
    region,
    translate_bound=None,
    max_translates: Optional[int] = None,
) -> CoveringCertificate:
    """Greedy translate cover of {y in Y : gauge(y) <= region} by X.F."""
    amb = require_same_ambient(x, y)
    gauge, compose, invert = amb.size_gauge, amb.compose, amb.invert
    if translate_bound is None:
        translate_bound = region
    targets = [e for e in y.elements if gauge(e) <= region]
    if targets and len(x) == 0:
        raise Uncoverable("base set is empty", witness=targets[0])

    x_sorted = x.elements  # already canonical
    uncovered = dict.fromkeys(targets)  # insertion-ordered set
    translates = []
    while uncovered:
        yy = next(iter(uncovered))
        f = None
        for xx in x_sorted:
            cand = compose(invert(xx), yy)
            if gauge(cand) <= translate_bound:
                f = cand
                break
        if f is None:
            raise Uncoverable(
                f"no translate of gauge <= {translate_bound} covers "
                f"{amb.fmt(yy)}; truncation too small",
                witness=yy,
            )
        translates.append(f)
        if max_translates is not None and len(translates) > max_translates:
            raise Uncoverable(
                f"translate budget {max_translates} exceeded", witness=yy
            )
        for xx in x_sorted:
            uncovered.pop(compose(xx, f), None)

    cert = CoveringCertificate(
        base=x,
        target=y,
        translates=tuple(translates),
        covered_region=region,
        translate_bound=translate_bound,
        validated=False,
        checked_count=len(targets),
    )
    validated = cert.revalidate()
    if not validated:
        raise AssertionError("greedy cover failed its own exhaustive validation")
    return CoveringCertificate(
        base=cert.base,
        target=cert.target,
        translates=cert.translates,
        covered_region=cert.covered_region,
        translate_bound=cert.translate_bound,
        validated=True,
        checked_count=cert.checked_count,
    )


def verify_approximate_subgroup(
    x: PointSet, interior_margin=None, translate_bound=None
) -> CoveringCertificate:
    """Certify X ~ X^2 at finite scale: symmetry, then a cover of X.X.

    The certificate covers the product set restricted to gauge <=
    interior_margin (default: X's own region, i.e. half of the product's
    combined bound).
    """
    ok, witness = x.is_symmetric()
    if not ok:
        raise NotSymmetric(
            f"not symmetric: missing inverse or identity for "
            f"{x.ambient.fmt(witness)}",
            witness=witness,
        )
    if interior_margin is None:
        interior_margin = x.region
    squared = product_set(x, x)
    return covering_certificate(
        x, squared, interior_margin, translate_bound=translate_bound
    )


def commensurable(x: PointSet, y: PointSet, region, translate_bound=None):
    """Certify both covering directions on the region.

    Returns (cover of X by Y-translates, cover of Y by X-translates).
    """
    require_same_ambient(x, y)
    cert_x = covering_certificate(y, x, region, translate_bound=translate_bound)
    cert_y = covering_certificate(x, y, region, translate_bound=translate_bound)
    return cert_x, cert_y


def intersect_classes(x: PointSet, y: PointSet) -> PointSet:
    """(X.X^-1) intersect (Y.Y^-1), the finite shadow of the class meet."""
    amb = require_same_ambient(x, y)
    xx = product_set(x, x.invert())
    yy = product_set(y, y.invert())
    common = [e for e in xx.elements if e in yy]
    return PointSet(amb, common, min(xx.region, yy.region))


def maximal_free_set(y: PointSet, x: PointSet) -> PointSet:
    """Greedy maximal X-free subset B of Y: B^-1 B avoids X, Y <= B u B.X.

    X must be symmetric and identity-free; elements are taken in canonical
    order, so the result is deterministic.
    """
    amb = require_same_ambient(y, x)
    compose, invert = amb.compose, amb.invert
    if amb.identity in x:
        raise ValueError("X contains identity")
    for e in x.elements:
        if invert(e) not in x:
            raise ValueError(f"X is not symmetric: {amb.fmt(e)}")

    b = []
    blocked = set()  # running B.X
    for e in y.elements:
        if e in blocked:
            continue
        b.append(e)
        for xx in x.elements:
            blocked.add(compose(e, xx))
    return PointSet(amb, b, y.region)


@dataclass(frozen=True)
class DeloneReport:
    min_gap: object
    covering_radius: object
    probe_spacing: object
    point_count: int
    gap_alphabet: tuple = ()

    def as_dict(self) -> dict:
        return {
            "min_gap": _display(self.min_gap),
            "covering_radius": _display(self.covering_radius),
            "probe_spacing": _num(self.probe_spacing),
            "point_count": self.point_count,
            "gap_alphabet": [_display(g) for g in self.gap_alphabet],
        }


def _display(v):
    if v is None:
        return None
    return {"exact": str(v), "float": float(v)}


def delone_check(
    x: PointSet, interior_region, probe_spacing: Fraction = Fraction(1, 4)
) -> DeloneReport:
    """Uniform-discreteness and relative-denseness surrogate numbers.

    min_gap is the exact minimal distance between distinct points.  The
    covering radius is the max over a rational probe grid (spacing stated in
    the report) on [-interior, interior] of the distance to the nearest point.
    """
    amb = x.ambient
    if amb.distance is None:
        raise ValueError(f"ambient {amb.name} has no distance")
    if len(x) < 2:
        raise ValueError("fewer than 2 points")

    dist = amb.distance
    gap_alphabet: tuple = ()
    if amb.ordered_line:
        # adjacent gaps after exact sort by value
        ordered = sorted(x.elements)
        gaps = [ordered[i + 1] - ordered[i] for i in range(len(ordered) - 1)]
        min_gap = min(gaps)
        interior_gaps = {
            g
            for i, g in enumerate(gaps)
            if abs(ordered[i]) <= interior_region
            and abs(ordered[i + 1]) <= interior_region
        }
        gap_alphabet = tuple(sorted(interior_gaps))
    else:
        min_gap = None
        elems = x.elements
        for i in range(len(elems)):
            for j in range(i + 1, len(elems)):
                d = dist(elems[i], elems[j])
                if min_gap is None or d < min_gap:
                    min_gap = d

    covering_radius = None
    if amb.ordered_line:
        from .groups import grid_probes

        for probe in grid_probes(interior_region, probe_spacing):
            best = None
            for e in x.elements:
                d = abs(e - probe)
                if best is None or d < best:
                    best = d
            if covering_radius is None or best > covering_radius:
                covering_radius = best

    return DeloneReport(
        min_gap=min_gap,
        covering_radius=covering_radius,
        probe_spacing=probe_spacing if amb.ordered_line else None,
        point_count=len(x),
        gap_alphabet=gap_alphabet,
    )
