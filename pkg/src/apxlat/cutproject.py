"""Cut-and-project schemes and the flagship model sets.

A scheme carries a lattice with two embeddings (physical and internal) and a
window on the internal side; the model set is the physical projection of the
lattice points whose internal image falls in the window.  Everything is exact:
enumeration bounds, window membership, and the physical gauge.

Schemes provided:

  quadratic ring   Z[omega] in R x R via the Galois star map (Fibonacci-type
                   one-dimensional quasicrystals),
  zp               Z[1/p] in R x Q_p, physical side R, p-adic ball window,
  zp-ring          Z[1/p] in Q_p x R, p-adic gauge and real window (the
                   approximate ring {a/p^n : |a| <= p^n}),
  pisot            SL2 over a real quadratic ring, entrywise-conjugate
                   internal map and sup-norm matrix window.
"""

from __future__ import annotations

from functools import lru_cache

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .covering import (
    CoveringCertificate,
    Uncoverable,
    commensurable,
    product_set,
    verify_approximate_subgroup,
)
from .groups import AmbientGroup, PointSet, pscaled_line, pscaled_padic, quad_line
from .matrices import (
    Mat2,
    mat2_conj,
    mat2_height,
    mat2_identity,
    sup_dist_from_identity,
)
from .scalars import (
    PScaled,
    QuadScalar,
    is_algebraic_integer,
    is_prime,
    padic_norm,
)


# -- windows -----------------------------------------------------------------


@dataclass(frozen=True)
class Window:
    """Symmetric acceptance region on the internal side, exact membership.

    kinds: real_interval (radius), real_box (radii per coordinate),
    padic_ball (radius p^exponent), matrix_ball (sup-norm radius on g - I).
    """

    kind: str
    radius: Optional[Fraction] = None
    radii: Optional[tuple] = None
    p: Optional[int] = None
    exponent: Optional[int] = None

    @staticmethod
    def real_interval(radius) -> "Window":
        radius = Fraction(radius)
        if radius < 0:
            raise ValueError("radius must be >= 0")
        return Window(kind="real_interval", radius=radius)

    @staticmethod
    def real_box(radii) -> "Window":
        rs = tuple(Fraction(r) for r in radii)
        if any(r < 0 for r in rs):
            raise ValueError("radii must be >= 0")
        return Window(kind="real_box", radii=rs)

    @staticmethod
    def padic_ball(p: int, exponent: int) -> "Window":
        if not is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        return Window(kind="padic_ball", p=p, exponent=exponent)

    @staticmethod
    def matrix_ball(eps) -> "Window":
        eps = Fraction(eps)
        if eps <= 0:
            raise ValueError("eps must be > 0")
        return Window(kind="matrix_ball", radius=eps)

    def contains(self, value) -> bool:
        if self.kind == "real_interval":
            return abs(value) <= self.radius
        if self.kind == "real_box":
            return all(abs(v) <= r for v, r in zip(value, self.radii))
        if self.kind == "padic_ball":
            return padic_norm(value, self.p) <= Fraction(self.p) ** self.exponent
        if self.kind == "matrix_ball":
            return sup_dist_from_identity(value) <= self.radius
        raise ValueError(f"unknown window kind {self.kind}")

    def minkowski_double(self) -> "Window":
        """A window containing W.W^-1 (exact for intervals; p-adic balls are
        groups, so they are their own double)."""
        if self.kind == "real_interval":
            return Window.real_interval(2 * self.radius)
        if self.kind == "padic_ball":
            return Window.padic_ball(self.p, self.exponent)
        raise ValueError(f"no doubling rule for window kind {self.kind}")

    def as_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.radius is not None:
            out["radius"] = str(self.radius)
        if self.radii is not None:
            out["radii"] = [str(r) for r in self.radii]
        if self.p is not None:
            out["p"] = self.p
        if self.exponent is not None:
            out["exponent"] = self.exponent
        return out


# -- schemes ------------------------------------------------------------------


@dataclass(frozen=True)
class CutProjectScheme:
    name: str
    physical_side: str
    internal_side: str
    ambient: AmbientGroup
    window: Window
    lattice_enumerator: Callable  # range -> iterable of (element, internal)
    internal_map: Callable  # element -> internal value
    config: dict

    def enumerate(self, rng) -> Iterable:
        return self.lattice_enumerator(rng)


class ModelSet:
    """Physical projection of the windowed lattice slice, with provenance."""

    __slots__ = ("points", "pairs", "scheme", "range")

    def __init__(self, points: PointSet, pairs, scheme: CutProjectScheme, rng):
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "pairs", tuple(pairs))
        object.__setattr__(self, "scheme", scheme)
        object.__setattr__(self, "range", rng)

    def __setattr__(self, *args):
        raise AttributeError("ModelSet is immutable")

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def recheck_window(self) -> bool:
        w = self.scheme.window
        imap = self.scheme.internal_map
        return all(w.contains(imap(x)) for x in self.points)

    def provenance(self) -> dict:
        return {
            "scheme": dict(self.scheme.config),
            "window": self.scheme.window.as_dict(),
            "range": str(Fraction(self.range)),
            "count": len(self.points),
        }

    def __repr__(self):
        return f"ModelSet({self.scheme.name}, range={self.range}, n={len(self)})"


def generate_model_set(scheme: CutProjectScheme, rng) -> ModelSet:
    """All lattice points of physical gauge <= range whose internal image lies
    in the window; exact membership, canonical order."""
    if rng <= 0:
        raise ValueError("range must be > 0")
    window = scheme.window
    gauge = scheme.ambient.size_gauge
    accepted = {}
    for element, internal in scheme.enumerate(rng):
        if gauge(element) <= rng and window.contains(internal):
            accepted.setdefault(element, internal)
    points = PointSet(scheme.ambient, accepted.keys(), rng)
    pairs = [(x, accepted[x]) for x in points.elements]
    return ModelSet(points, pairs, scheme, rng)


# -- quadratic-ring schemes (Fibonacci et al.) ---------------------------------


def ring_generator(d: int) -> QuadScalar:
    """omega with Z[omega] the ring of integers of Q(sqrt(d))."""
    if d % 4 == 1:
        return QuadScalar(Fraction(1, 2), Fraction(1, 2), d)
    return QuadScalar(0, 1, d)


def quad_scheme(d: int, window: Window, name: Optional[str] = None) -> CutProjectScheme:
    """Z[omega] embedded in R x R by (identity, Galois star)."""
    omega = ring_generator(d)
    omega_star = omega.conj()
    spread = float(omega) - float(omega_star)  # sqrt(d) or 2 sqrt(d)
    if window.kind != "real_interval":
        raise ValueError("quadratic schemes take a real_interval window")
    r = window.radius

    def enumerate_lattice(rng):
        rng = Fraction(rng)
        n_cap = int(math.floor((float(rng) + float(r)) / spread)) + 2
        for n in range(-n_cap, n_cap + 1):
            shift = n * omega
            shift_star = n * omega_star
            # m must satisfy both |m + n w| <= rng and |m + n w*| <= r;
            # intersect the two integer intervals (floor is exact)
            lo = max(math.floor(-rng - shift), math.floor(-r - shift_star))
            hi = min(math.floor(rng - shift), math.floor(r - shift_star))
            for m in range(lo, hi + 2):
                x = m + shift
                if abs(x) <= rng and abs(x.conj()) <= r:
                    yield x, x.conj()

    return CutProjectScheme(
        name=name or f"quad-d{d}",
        physical_side="R",
        internal_side="R (Galois star)",
        ambient=quad_line(d),
        window=window,
        lattice_enumerator=enumerate_lattice,
        internal_map=lambda x: x.conj(),
        config={"scheme": "quad", "d": d},
    )


def fibonacci_scheme(window_radius=1) -> CutProjectScheme:
    """The golden-ratio scheme: Z[phi] with star-map window [-r, r]."""
    w = Window.real_interval(window_radius)
    return quad_scheme(5, w, name="fibonacci")


# -- Z[1/p] schemes -------------------------------------------------------------


def zp_scheme(p: int, window: Window) -> CutProjectScheme:
    """Z[1/p] in R x Q_p: real line physical, p-adic ball window."""
    if window.kind != "padic_ball" or window.p != p:
        raise ValueError("zp scheme takes a padic_ball window for the same p")
    n = window.exponent

    def enumerate_lattice(rng):
        rng = Fraction(rng)
        seen = set()
        for k in range(0, max(n, 0) + 1):
            scale = Fraction(p) ** k
            cap = int(rng * scale)
            step = p ** (-n) if n < 0 else 1
            for a in range(-cap, cap + 1):
                if a % step:
                    continue
                v = Fraction(a) / scale
                if v in seen:
                    continue
                seen.add(v)
                x = PScaled(v, p)
                yield x, x

    return CutProjectScheme(
        name=f"z1over{p}",
        physical_side="R",
        internal_side=f"Q_{p}",
        ambient=pscaled_line(p),
        window=window,
        lattice_enumerator=enumerate_lattice,
        internal_map=lambda x: x,
        config={"scheme": "zp", "p": p},
    )


def zp_ring_scheme(p: int, window_radius=1) -> CutProjectScheme:
    """Z[1/p] in Q_p x R: p-adic norm is the gauge, real window the acceptance.

    This realizes the approximate ring {a/p^n : |a| <= p^n} by swapping which
    completion carries the gauge and which carries the window.
    """
    window = Window.real_interval(window_radius)
    w = window.radius

    def enumerate_lattice(rng):
        # gauge cap is a p-adic norm: the largest p^n <= rng
        rng = Fraction(rng)
        if rng < 1:
            raise ValueError("p-adic range below 1 excludes all integers")
        n = 0
        while Fraction(p) ** (n + 1) <= rng:
            n += 1
        scale = p**n
        cap = int(w * scale)
        for a in range(-cap, cap + 1):
            x = PScaled(Fraction(a, scale), p)
            yield x, x.value

    return CutProjectScheme(
        name=f"approx-ring-z1over{p}",
        physical_side=f"Q_{p}",
        internal_side="R",
        ambient=pscaled_padic(p),
        window=window,
        lattice_enumerator=enumerate_lattice,
        internal_map=lambda x: x.value,
        config={"scheme": "zp-ring", "p": p},
    )


def approximate_ring_zp(p: int, n: int, rng=None, window_radius=1) -> ModelSet:
    """The set {a/p^k : k <= n, |a/p^k| <= window_radius} as a model set.

    n >= 0 sets the p-adic gauge cap p^n; rng optionally tightens it.
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if n < 0:
        raise ValueError("n must be >= 0")
    gauge_cap = Fraction(p) ** n
    if rng is not None:
        gauge_cap = min(gauge_cap, Fraction(rng))
    scheme = zp_ring_scheme(p, window_radius)
    return generate_model_set(scheme, gauge_cap)


# -- Pisot-entry SL2 scheme ------------------------------------------------------


def mat2_gauge(g: Mat2) -> int:
    # height of the identity is 1; shift so the identity sits at gauge 0
    return mat2_height(g) - 1


@lru_cache(maxsize=None)
def quad_mat2_ambient(d: int) -> AmbientGroup:
    one = QuadScalar(1, 0, d)
    zero = QuadScalar(0, 0, d)
    return AmbientGroup(
        name=f"sl2-quad-d{d}",
        compose=lambda a, b: a * b,
        invert=lambda a: a.inv(),
        identity=Mat2(one, zero, zero, one),
        size_gauge=mat2_gauge,
        fmt=str,
    )


def _integral_entry_candidates(d: int, height: int):
    """Ring integers m + n*omega with |m|, |n| <= height."""
    omega = ring_generator(d)
    out = []
    for m in range(-height, height + 1):
        for n in range(-height, height + 1):
            out.append(m + n * omega)
    return out


def pisot_scheme(d: int, eps, height: int) -> CutProjectScheme:
    """SL2 over the ring of integers of Q(sqrt(d)), internal map the entrywise
    Galois conjugate, window a sup-norm ball of radius eps around the identity.

    Enumeration is by entry height (max numerator/denominator magnitude of the
    rational coordinates); the window constraints prune entry candidates before
    matrices are assembled, which changes nothing about the accepted set.
    """
    window = Window.matrix_ball(eps)
    eps = window.radius
    ambient = quad_mat2_ambient(d)
    one = QuadScalar(1, 0, d)

    def enumerate_lattice(rng):
        h = int(rng) + 1  # gauge cap back to a height cap
        cand = _integral_entry_candidates(d, h)
        diag = [c for c in cand if abs(c.conj() - 1) <= eps]
        off = [c for c in cand if abs(c.conj()) <= eps]
        height_ok = lambda q: mat2_height(q) <= h
        seen = set()
        for e11 in diag:
            if not e11:
                continue
            for e12 in off:
                for e21 in off:
                    e22 = (one + e12 * e21) / e11
                    if not is_algebraic_integer(e22):
                        continue
                    if abs(e22.conj() - 1) > eps:
                        continue
                    g = Mat2(e11, e12, e21, e22)
                    if not height_ok(g) or g in seen:
                        continue
                    seen.add(g)
                    yield g, mat2_conj(g)
        if eps >= 1:
            # e11 = 0 is only reachable when the window admits |e11* - 1| = 1
            for e12 in off:
                nrm = e12 * e12.conj()
                if not e12 or abs(nrm) != 1:
                    continue
                e21 = -e12.inverse()
                if abs(e21.conj()) > eps:
                    continue
                for e22 in cand:
                    if abs(e22.conj() - 1) > eps:
                        continue
                    g = Mat2(QuadScalar(0, 0, d), e12, e21, e22)
                    if not height_ok(g) or g in seen:
                        continue
                    seen.add(g)
                    yield g, mat2_conj(g)

    return CutProjectScheme(
        name=f"pisot-sl2-d{d}",
        physical_side="SL2(R)",
        internal_side="SL2(R) (entrywise star)",
        ambient=ambient,
        window=window,
        lattice_enumerator=enumerate_lattice,
        internal_map=mat2_conj,
        config={"scheme": "pisot", "d": d, "eps": str(eps)},
    )


def pisot_matrix_set(d: int, eps, height: int) -> ModelSet:
    """Unit-determinant matrices of bounded entry height whose conjugate lies
    within eps of the identity; symmetric, identity included."""
    scheme = pisot_scheme(d, eps, height)
    return generate_model_set(scheme, height - 1)


# -- derived checks ---------------------------------------------------------------


@dataclass(frozen=True)
class MeyerReport:
    subset_ok: bool
    subset_witness: object
    cert_m_by_s: Optional[CoveringCertificate]
    cert_s_by_m: Optional[CoveringCertificate]
    failure: Optional[str]
    failure_witness: object = None

    @property
    def is_meyer(self) -> bool:
        return self.subset_ok and self.failure is None

    def as_dict(self) -> dict:
        return {
            "subset_ok": self.subset_ok,
            "subset_witness": None
            if self.subset_witness is None
            else str(self.subset_witness),
            "covering_m_by_s": None
            if self.cert_m_by_s is None
            else self.cert_m_by_s.as_dict(),
            "covering_s_by_m": None
            if self.cert_s_by_m is None
            else self.cert_s_by_m.as_dict(),
            "failure": self.failure,
            "failure_witness": None
            if self.failure_witness is None
            else str(self.failure_witness),
            "is_meyer": self.is_meyer,
        }


def meyer_check(m: PointSet, s: ModelSet, region) -> MeyerReport:
    """Certify M as a Meyer candidate: M inside the model set and mutually
    commensurable with it on the region.

    Translates are held to half the region, so a candidate that only covers
    the model set near the truncation edge (e.g. a half-line slice) fails
    honestly instead of leaning on boundary translates.
    """
    sp = s.points
    witness = next((e for e in m.elements if e not in sp), None)
    if witness is not None:
        return MeyerReport(False, witness, None, None, "not a subset", witness)
    try:
        cert_m, cert_s = commensurable(
            m, sp, region, translate_bound=Fraction(region) * Fraction(1, 2)
        )
    except Uncoverable as exc:
        return MeyerReport(True, None, None, None, str(exc), exc.witness)
    return MeyerReport(True, None, cert_m, cert_s, None)


@dataclass(frozen=True)
class PullbackReport:
    containment_ok: bool
    containment_witness: object
    difference_count: int
    certificate: Optional[CoveringCertificate]

    def as_dict(self) -> dict:
        return {
            "containment_ok": self.containment_ok,
            "containment_witness": None
            if self.containment_witness is None
            else str(self.containment_witness),
            "difference_count": self.difference_count,
            "certificate": None
            if self.certificate is None
            else self.certificate.as_dict(),
        }


def pullback_containment_check(
    scheme: CutProjectScheme, region, interior_margin=None
) -> PullbackReport:
    """With X the windowed slice on the region: check X.X^-1 lands inside the
    pullback of the doubled window, and certify X.X^-1 as an approximate
    subgroup.

    Requires the scheme's internal map to be a genuine homomorphism, which all
    schemes here are.
    """
    x = generate_model_set(scheme, region).points
    doubled = scheme.window.minkowski_double()
    imap = scheme.internal_map
    diffs = product_set(x, x.invert())
    witness = next(
        (e for e in diffs.elements if not doubled.contains(imap(e))), None
    )
    if witness is not None:
        return PullbackReport(False, witness, len(diffs), None)
    cert = verify_approximate_subgroup(diffs, interior_margin=interior_margin)
    return PullbackReport(True, None, len(diffs), cert)


# -- scheme configuration ----------------------------------------------------------


def scheme_from_config(cfg: dict) -> CutProjectScheme:
    """Build a scheme from the flat config keys shared by CLI and files."""
    kind = cfg.get("scheme")
    if kind in ("fibonacci", "quad"):
        d = int(cfg.get("d", 5))
        radius = Fraction(cfg.get("window", 1))
        return quad_scheme(
            d, Window.real_interval(radius), name="fibonacci" if d == 5 else None
        )
    if kind == "zp":
        p = int(cfg["p"])
        exp = int(cfg.get("window_exp", 0))
        return zp_scheme(p, Window.padic_ball(p, exp))
    if kind == "zp-ring":
        p = int(cfg["p"])
        radius = Fraction(cfg.get("window", 1))
        return zp_ring_scheme(p, radius)
    if kind == "pisot":
        d = int(cfg.get("d", 5))
        eps = Fraction(cfg.get("eps", "1/5"))
        height = int(cfg.get("height", 8))
        return pisot_scheme(d, eps, height)
    raise ValueError(f"unknown scheme kind {kind!r}")
