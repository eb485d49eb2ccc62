"""Covering certificates, commensurability, free sets, Delone numbers.

Expected translate sets below were derived by running the documented greedy
by hand on paper (canonical order, translate bound = covered region) and are
cross-checked by the exhaustive revalidation that every certificate runs.
"""

import itertools
from fractions import Fraction

import pytest

from apxlat.covering import (
    NotSymmetric,
    Uncoverable,
    commensurable,
    covering_certificate,
    delone_check,
    intersect_classes,
    maximal_free_set,
    product_set,
    verify_approximate_subgroup,
)
from apxlat.freewords import FreeWord, f2_ball, free_group_f2
from apxlat.groups import AmbientMismatch, PointSet, integer_interval, rational_line

AMB = rational_line()


def zset(lo, hi):
    return integer_interval(lo, hi, AMB)


def pset(vals, region):
    return PointSet(AMB, [Fraction(v) for v in vals], region)


class TestProductSet:
    def test_identity_element(self):
        y = zset(-3, 3)
        e = pset([0], 0)
        assert product_set(e, y).elements == y.elements

    def test_interval_sums(self):
        x = zset(-2, 2)
        got = product_set(x, x)
        assert [int(v) for v in got.elements if True] == sorted(
            range(-4, 5), key=lambda k: (abs(k), str(Fraction(k)))
        )
        assert got.region == 4

    def test_free_group_ball(self):
        amb = free_group_f2()
        g = FreeWord("x")
        x = PointSet(amb, [g, g.inv(), FreeWord()], 1)
        sq = product_set(x, x)
        powers = {FreeWord("xx"), g, FreeWord(), g.inv(), FreeWord("XX")}
        assert set(sq.elements) == powers

    def test_ambient_mismatch(self):
        other = PointSet(free_group_f2(), [FreeWord()], 0)
        with pytest.raises(AmbientMismatch):
            product_set(zset(0, 1), other)


class TestCoveringCertificate:
    def test_self_cover(self):
        x = zset(-5, 5)
        cert = covering_certificate(x, x, 5)
        assert [str(f) for f in cert.translates] == ["0"]
        assert cert.validated and cert.revalidate()

    def test_interval_three_translates(self):
        x, y = zset(-10, 10), zset(-20, 20)
        cert = covering_certificate(x, y, 20)
        assert len(cert) == 3
        assert cert.revalidate()

    def test_fibonacci_product_small_f(self):
        from apxlat.cutproject import fibonacci_scheme, generate_model_set

        x = generate_model_set(fibonacci_scheme(1), 40).points
        y = product_set(x, x)
        cert = covering_certificate(x, y, 40)
        assert len(cert) <= 10
        assert cert.revalidate()

    def test_empty_base_uncoverable(self):
        with pytest.raises(Uncoverable):
            covering_certificate(pset([], 0), zset(-2, 2), 2)

    def test_strict_bound_uncoverable(self):
        # half-line base cannot cover the far negative side with interior
        # translates
        x = pset(range(0, 21), 20)
        y = zset(-20, 20)
        with pytest.raises(Uncoverable) as exc:
            covering_certificate(x, y, 20, translate_bound=10)
        assert exc.value.witness is not None

    def test_translate_budget(self):
        x = pset([0], 10)
        y = zset(-10, 10)
        with pytest.raises(Uncoverable):
            covering_certificate(x, y, 10, max_translates=3)


class TestVerifyApproximateSubgroup:
    def test_interval_doubling(self):
        cert = verify_approximate_subgroup(zset(-10, 10), interior_margin=20)
        assert len(cert) == 3

    def test_subgroup_single_translate(self):
        sub = pset([3 * k for k in range(-6, 7)], 18)
        cert = verify_approximate_subgroup(sub)
        assert len(cert) == 1
        assert str(cert.translates[0]) == "0"

    def test_not_symmetric_witness(self):
        bad = pset([0, 1, 2], 2)
        with pytest.raises(NotSymmetric) as exc:
            verify_approximate_subgroup(bad)
        assert exc.value.witness == 1

    def test_missing_identity(self):
        bad = pset([1, -1], 1)
        with pytest.raises(NotSymmetric):
            verify_approximate_subgroup(bad)


class TestCommensurable:
    def test_equal_sets(self):
        x = zset(-8, 8)
        ca, cb = commensurable(x, x, 8)
        assert [str(f) for f in ca.translates] == ["0"]
        assert [str(f) for f in cb.translates] == ["0"]

    def test_z_and_2z(self):
        x = zset(-10, 10)
        y = pset([2 * k for k in range(-10, 11)], 20)
        ca, cb = commensurable(x, y, 10)
        assert len(ca) == 2 and len(cb) == 1

    def test_swap_symmetry(self):
        x, y = zset(-10, 10), pset([2 * k for k in range(-10, 11)], 20)
        ca, cb = commensurable(x, y, 10)
        cb2, ca2 = commensurable(y, x, 10)
        assert ca.translates == ca2.translates
        assert cb.translates == cb2.translates


class TestIntersectClasses:
    def test_self(self):
        x = pset([0, 1, 3], 3)
        got = intersect_classes(x, x)
        want = product_set(x, x.invert())
        assert got.elements == want.elements

    def test_z_and_2z(self):
        x = zset(-10, 10)
        y = pset([2 * k for k in range(-5, 6)], 10)
        got = intersect_classes(x, y)
        assert set(got.elements) == {Fraction(2 * k) for k in range(-10, 11)}

    def test_disjoint_generated_free_group(self):
        amb = free_group_f2()
        xs = PointSet(amb, [FreeWord("x") ** k for k in range(-3, 4)], 3)
        ys = PointSet(amb, [FreeWord("y") ** k for k in range(-3, 4)], 3)
        got = intersect_classes(xs, ys)
        assert set(got.elements) == {FreeWord()}


class TestMaximalFreeSet:
    def test_empty_x(self):
        y = zset(0, 5)
        b = maximal_free_set(y, pset([], 0))
        assert b.elements == y.elements

    def test_pm_one(self):
        b = maximal_free_set(zset(0, 5), pset([1, -1], 1))
        assert [int(v) for v in b] == [0, 2, 4]

    def test_pm_one_two(self):
        b = maximal_free_set(zset(0, 9), pset([1, -1, 2, -2], 2))
        assert [int(v) for v in b] == [0, 3, 6, 9]

    def test_rejects_identity(self):
        with pytest.raises(ValueError, match="identity"):
            maximal_free_set(zset(0, 5), pset([0, 1, -1], 1))

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError, match="symmetric"):
            maximal_free_set(zset(0, 5), pset([1], 1))

    @pytest.mark.parametrize("steps", [(1,), (2,), (1, 2), (1, 3), (2, 3), (1, 2, 3)])
    @pytest.mark.parametrize("lo,hi", [(0, 5), (0, 9), (-4, 4), (2, 13)])
    def test_free_and_maximal_exhaustive(self, steps, lo, hi):
        y = zset(lo, hi)
        x = pset([s for v in steps for s in (v, -v)], max(steps))
        b = maximal_free_set(y, x)
        members = set(b.elements)
        for u in members:
            for v in members:
                assert (u - v) not in set(x.elements)
        for e in y:
            if e not in members:
                assert any(e - s in members or e + s in members for s in
                           [Fraction(v) for v in steps]), e

    def test_matches_brute_force_family(self):
        # full subset enumeration for a small instance
        y = zset(0, 7)
        x = pset([1, -1, 2, -2], 2)
        b = set(maximal_free_set(y, x).elements)
        xs = set(x.elements)
        free_maximal = []
        universe = list(y.elements)
        for mask in range(1 << len(universe)):
            cand = {universe[i] for i in range(len(universe)) if mask >> i & 1}
            if any(u - v in xs for u in cand for v in cand):
                continue
            if all(
                e in cand or any(e - s in cand for s in xs) for e in universe
            ):
                free_maximal.append(cand)
        assert b in free_maximal


class TestDeloneCheck:
    def test_integers(self):
        rep = delone_check(zset(-10, 10), 10)
        assert rep.min_gap == 1
        assert rep.covering_radius == Fraction(1, 2)
        assert rep.gap_alphabet == (Fraction(1),)

    def test_degenerate(self):
        with pytest.raises(ValueError, match="fewer than 2"):
            delone_check(pset([0], 0), 1)

    def test_min_gap_equals_all_pairs_oracle(self):
        vals = [0, 1, Fraction(5, 2), 4, Fraction(17, 4)]
        x = pset(vals, 5)
        rep = delone_check(x, 5)
        oracle = min(
            abs(Fraction(a) - Fraction(b))
            for a, b in itertools.combinations(vals, 2)
        )
        assert rep.min_gap == oracle == Fraction(1, 4)


def test_certificate_as_dict_shape():
    cert = covering_certificate(zset(-4, 4), zset(-8, 8), 8)
    d = cert.as_dict()
    assert d["validated"] is True
    assert set(d["counts"]) == {"translates", "base", "target", "checked"}
    assert d["region"] == 8
