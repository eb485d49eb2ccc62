"""The bounded Euler cocycle of SL2(R) via monotone circle-map lifts.

SL2(R) acts on the unit-vector circle by g.v / |g.v|.  For each g we take the
monotone lift s(g) of the induced angle map, normalized by s(g)(0) in
[0, 2*pi).  The cocycle

    beta(g, h) = ( s(g)(s(h)(0)) - s(gh)(0) ) / (2*pi)

is an exact integer; with this section the value always lies in {0, 1}.
Floats enter only through the lift; every integer is gated by a rounding
residual below RESIDUAL_TOL, and ambiguity is a hard error rather than a
silent guess.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional

from .matrices import Mat2

TWO_PI = 2.0 * math.pi
RESIDUAL_TOL = 1e-6
_MIN_STEP = 1e-8
_DET_TOL = 1e-9


class LiftError(RuntimeError):
    pass


class UnresolvedRounding(RuntimeError):
    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class RealMat2:
    """Double-precision 2x2 matrix with determinant 1 (within 1e-9)."""

    e11: float
    e12: float
    e21: float
    e22: float
    source: Optional[Mat2] = None

    def __post_init__(self):
        d = self.e11 * self.e22 - self.e12 * self.e21
        if abs(d - 1.0) >= _DET_TOL:
            raise ValueError(f"determinant {d} not within {_DET_TOL} of 1")

    @staticmethod
    def from_exact(m: Mat2) -> "RealMat2":
        e = m.float_entries()
        return RealMat2(e[0], e[1], e[2], e[3], source=m)

    @staticmethod
    def rotation(angle: float) -> "RealMat2":
        c, s = math.cos(angle), math.sin(angle)
        # snap the quarter-turn values so that e.g. rotation(pi) is exactly
        # [[-1,0],[0,-1]]; otherwise the float product of two half turns
        # lands a hair below the angle-0 branch cut of the section
        for exact in (-1.0, 0.0, 1.0):
            if abs(c - exact) < 1e-12:
                c = exact
            if abs(s - exact) < 1e-12:
                s = exact
        return RealMat2(c, -s, s, c)

    @staticmethod
    def identity() -> "RealMat2":
        return RealMat2(1.0, 0.0, 0.0, 1.0)

    def __mul__(self, other: "RealMat2") -> "RealMat2":
        src = None
        if self.source is not None and other.source is not None:
            src = self.source * other.source
        return RealMat2(
            self.e11 * other.e11 + self.e12 * other.e21,
            self.e11 * other.e12 + self.e12 * other.e22,
            self.e21 * other.e11 + self.e22 * other.e21,
            self.e21 * other.e12 + self.e22 * other.e22,
            source=src,
        )

    def apply(self, vx: float, vy: float):
        return (self.e11 * vx + self.e12 * vy, self.e21 * vx + self.e22 * vy)

    def cache_key(self):
        if self.source is not None:
            return self.source
        return (self.e11, self.e12, self.e21, self.e22)


def circle_action(g: RealMat2, theta: float) -> float:
    """Angle in [0, 2*pi) of g applied to the unit vector at angle theta."""
    wx, wy = g.apply(math.cos(theta), math.sin(theta))
    if math.hypot(wx, wy) < 1e-12:
        raise LiftError("near-singular image vector")
    return math.atan2(wy, wx) % TWO_PI


def lift_eval(g: RealMat2, theta: float) -> float:
    """The normalized monotone lift s(g) evaluated at theta in [0, 4*pi].

    Walks from 0 to theta in steps small enough that the image angle moves by
    less than pi/2 per step, halving adaptively; a forced step below 1e-8
    signals an ill-conditioned matrix.
    """
    if theta < 0 or theta > 2 * TWO_PI:
        raise ValueError("theta must lie in [0, 4*pi]")
    lifted = circle_action(g, 0.0)  # s(g)(0) in [0, 2*pi) by normalization
    t = 0.0
    step = math.pi / 4
    while t < theta:
        t_next = min(t + step, theta)
        raw = circle_action(g, t_next)
        delta = (raw - lifted) % TWO_PI
        if delta > math.pi:
            delta -= TWO_PI
        if abs(delta) >= math.pi / 2:
            step /= 2.0
            if step < _MIN_STEP:
                raise LiftError("subdivision failure: step below 1e-8")
            continue
        # the action is orientation preserving, so the true increment on a
        # small step is the small representative; negatives can appear only
        # transiently from the mod wrap and stay below pi/2
        lifted += delta
        t = t_next
        step = min(step * 1.5, math.pi / 4)  # recover after a steep stretch
    return lifted


def euler_cocycle(g: RealMat2, h: RealMat2, product: Optional[RealMat2] = None):
    """beta(g, h) as an exact integer in {0, 1}; raises UnresolvedRounding if
    the float residual exceeds RESIDUAL_TOL."""
    if product is None:
        product = g * h
    sh0 = circle_action(h, 0.0)
    composed = lift_eval(g, sh0)
    direct = circle_action(product, 0.0)
    value = (composed - direct) / TWO_PI
    beta = round(value)
    residual = abs(value - beta)
    if residual >= RESIDUAL_TOL:
        raise UnresolvedRounding(
            f"cocycle value {value} is not within {RESIDUAL_TOL} of an integer",
            residual,
        )
    return beta, residual


def cocycle_identity_check(g: RealMat2, h: RealMat2, k: RealMat2) -> bool:
    """beta(g,h) + beta(gh,k) == beta(h,k) + beta(g,hk), exact integers."""
    b_gh, _ = euler_cocycle(g, h)
    b_ghk, _ = euler_cocycle(g * h, k)
    b_hk, _ = euler_cocycle(h, k)
    b_g_hk, _ = euler_cocycle(g, h * k)
    return b_gh + b_ghk == b_hk + b_g_hk


def random_det1(rng: random.Random, entry_bound: float = 2.0) -> RealMat2:
    """Random matrix with entries drawn from [-bound, bound], then normalized
    to determinant exactly 1 (columns swapped first when the determinant is
    negative; near-singular draws are rejected)."""
    while True:
        a, b, c, d = (rng.uniform(-entry_bound, entry_bound) for _ in range(4))
        det = a * d - b * c
        if abs(det) < 0.05:
            continue
        if det < 0:
            a, b = b, a
            c, d = d, c
            det = -det
        s = 1.0 / math.sqrt(det)
        return RealMat2(a * s, b * s, c * s, d * s)
