import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import braidplumb.curves as cv
from braidplumb.braidwords import BraidWord, parse_braid
from braidplumb.curves import (
    NormalCurve,
    TwistFactor,
    apply_monodromy,
    curve_from_rectangle,
    dehn_twist,
    geometric_intersection,
    reduce_curve,
    reduce_cyclic,
    self_intersection,
    signed_intersection,
    traverses_band,
)
from braidplumb.errors import EmptyCurve, NonEmbeddedCore
from braidplumb.fatgraph import build_surface
from braidplumb.monodromy import intersection_form
from braidplumb.plumbing import torus_braid

FIGURE_BRAID = BraidWord(6, (4, 4, 3, 2, 1, 5, 5, 3, 4, 2, 2, 5, 3, 4, 1, 1, 2, 2, 3))


def surface(text):
    return build_surface(parse_braid(text))


def random_curve(s, rng):
    x = curve_from_rectangle(s, rng.choice(s.rectangles))
    return apply_monodromy(s, x, rng.randint(0, 3))


class TestReduce:
    def test_cancellation(self):
        s = surface("1 1 1")
        x = reduce_curve(s, (1, -1, 2, -3))
        assert x.word == (2, -3)

    def test_wraparound_cancellation(self):
        assert reduce_cyclic((2, 3, -3, 1, -2)) == (1,)

    def test_idempotent(self):
        s = surface("1 1 1")
        x = reduce_curve(s, (1, -2))
        assert reduce_curve(s, x.word).word == x.word

    def test_null_homotopic_raises(self):
        s = surface("1 1 1")
        with pytest.raises(EmptyCurve):
            reduce_curve(s, (1, -1))

    def test_homology_preserved_by_reduction(self):
        s = surface("1 1 1")
        messy = NormalCurve(s, (1, -3, 3, -2), reduce=True)
        clean = NormalCurve(s, (1, -2), reduce=False)
        assert messy.homology == clean.homology


@settings(max_examples=150, deadline=None)
@given(st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), min_size=0, max_size=14))
def test_reduce_cyclic_leaves_no_cancelling_pair(word):
    out = reduce_cyclic(tuple(word))
    n = len(out)
    for i in range(n):
        assert out[i] != -out[(i + 1) % n] or n == 1


class TestRectangleCurves:
    def test_two_edge_cycle(self):
        s = surface("1 1 1")
        top = curve_from_rectangle(s, s.rectangles[0])
        assert top.word == (1, -2)
        assert self_intersection(top) == 0
        assert top.homology == (1, 0)

    def test_all_rectangles_embedded_with_basis_homology(self):
        s = build_surface(torus_braid(4, 4))
        for idx, rect in enumerate(s.rectangles):
            x = curve_from_rectangle(s, rect)
            assert self_intersection(x) == 0
            assert x.homology == tuple(
                1 if i == idx else 0 for i in range(len(s.rectangles))
            )


class TestGeometricIntersection:
    def test_same_column_adjacent(self):
        s = surface("1 1 1")
        r1, r2 = (curve_from_rectangle(s, r) for r in s.rectangles)
        assert geometric_intersection(r1, r2) == 1

    def test_same_column_distant(self):
        s = surface("1 1 1 1")
        r1 = curve_from_rectangle(s, s.rectangles[0])
        r3 = curve_from_rectangle(s, s.rectangles[2])
        assert geometric_intersection(r1, r3) == 0

    def test_adjacent_columns(self):
        interleaved = surface("1 2 1 2")
        a, b = (curve_from_rectangle(interleaved, r) for r in interleaved.rectangles)
        assert geometric_intersection(a, b) == 1
        stacked = surface("1 1 2 2")
        a, b = (curve_from_rectangle(stacked, r) for r in stacked.rectangles)
        assert geometric_intersection(a, b) == 0

    def test_far_columns_disjoint(self):
        s = surface("1 1 2 2 3 3 1 2 3")
        col1 = curve_from_rectangle(s, s.rectangles[s.rect_index[(1, 0)]])
        col3 = curve_from_rectangle(s, s.rectangles[s.rect_index[(3, 4)]])
        assert geometric_intersection(col1, col3) == 0

    def test_symmetry(self):
        rng = random.Random(9)
        s = build_surface(torus_braid(3, 5))
        for _ in range(50):
            x, y = random_curve(s, rng), random_curve(s, rng)
            assert geometric_intersection(x, y) == geometric_intersection(y, x)

    def test_homological_bound(self):
        rng = random.Random(10)
        s = build_surface(torus_braid(3, 5))
        j = intersection_form(s)
        n = len(j)
        for _ in range(200):
            x, y = random_curve(s, rng), random_curve(s, rng)
            pairing = sum(
                x.homology[a] * j[a][b] * y.homology[b]
                for a in range(n)
                for b in range(n)
            )
            assert signed_intersection(x, y) == pairing
            assert abs(pairing) <= geometric_intersection(x, y)

    def test_same_class_copies_are_disjoint(self):
        s = surface("1 1 1")
        x = curve_from_rectangle(s, s.rectangles[0])
        y = NormalCurve(s, x.word, reduce=False)
        assert geometric_intersection(x, y) == 0


class TestDehnTwist:
    def test_disjoint_core_fixes_curve(self):
        s = surface("1 1 1 1")
        core = TwistFactor(curve_from_rectangle(s, s.rectangles[0]))
        x = curve_from_rectangle(s, s.rectangles[2])
        assert dehn_twist(core, x).word == x.word

    def test_core_fixes_itself(self):
        s = surface("1 1 1")
        gamma = curve_from_rectangle(s, s.rectangles[0])
        assert dehn_twist(TwistFactor(gamma), gamma).word == gamma.word

    def test_nonembedded_core_rejected(self):
        s = build_surface(torus_braid(3, 4))
        r0 = curve_from_rectangle(s, s.rectangles[0])
        x = apply_monodromy(s, r0, 1)
        # splice a figure-eight-like word: r0 followed by a far curve
        ugly = NormalCurve(s, x.word + x.word, reduce=False)
        if self_intersection(ugly) != 0:
            with pytest.raises(NonEmbeddedCore):
                TwistFactor(ugly)

    def test_trefoil_twists_match_transvections(self):
        s = surface("1 1 1")
        j = intersection_form(s)
        bottom = TwistFactor(curve_from_rectangle(s, s.rectangles[1]))
        top = TwistFactor(curve_from_rectangle(s, s.rectangles[0]))
        r1 = curve_from_rectangle(s, s.rectangles[0])
        after_bottom = dehn_twist(bottom, r1)
        pairing = sum(
            r1.homology[a] * j[a][1] for a in range(2)
        )
        expect = tuple(
            r1.homology[k] + cv.RIGHT_HANDED_SIGN * pairing * (1 if k == 1 else 0)
            for k in range(2)
        )
        assert after_bottom.homology == expect
        after_both = dehn_twist(top, after_bottom)
        assert after_both.homology != r1.homology

    def test_transvection_property_random(self):
        rng = random.Random(31)
        s = build_surface(torus_braid(3, 4))
        j = intersection_form(s)
        n = len(j)
        for _ in range(300):
            gamma = curve_from_rectangle(s, rng.choice(s.rectangles))
            x = random_curve(s, rng)
            right = rng.random() < 0.5
            tw = dehn_twist(TwistFactor(gamma, right=right), x)
            pairing = sum(
                x.homology[a] * j[a][b] * gamma.homology[b]
                for a in range(n)
                for b in range(n)
            )
            sign = cv.RIGHT_HANDED_SIGN if right else -cv.RIGHT_HANDED_SIGN
            expect = tuple(
                x.homology[k] + sign * pairing * gamma.homology[k] for k in range(n)
            )
            assert tw.homology == expect

    def test_left_inverts_right(self):
        rng = random.Random(32)
        s = build_surface(torus_braid(3, 4))
        for _ in range(200):
            gamma = curve_from_rectangle(s, rng.choice(s.rectangles))
            x = random_curve(s, rng)
            y = dehn_twist(TwistFactor(gamma, right=True), x)
            z = dehn_twist(TwistFactor(gamma, right=False), y)
            assert z.is_isotopic(x, oriented=True)

    def test_twists_preserve_intersections(self):
        rng = random.Random(33)
        s = build_surface(torus_braid(3, 4))
        for _ in range(200):
            f = TwistFactor(curve_from_rectangle(s, rng.choice(s.rectangles)))
            x, y = random_curve(s, rng), random_curve(s, rng)
            assert geometric_intersection(
                dehn_twist(f, x), dehn_twist(f, y)
            ) == geometric_intersection(x, y)

    def test_core_intersection_preserved(self):
        rng = random.Random(34)
        s = build_surface(torus_braid(3, 5))
        for _ in range(100):
            f = TwistFactor(curve_from_rectangle(s, rng.choice(s.rectangles)))
            x = random_curve(s, rng)
            assert geometric_intersection(
                dehn_twist(f, x), f.core
            ) == geometric_intersection(x, f.core)


class TestMonodromyOrbits:
    def test_torus43_steps(self):
        s = build_surface(torus_braid(4, 3))
        r = curve_from_rectangle(s, s.top_left_rectangle())
        for k in (1, 2):
            image = apply_monodromy(s, r, k)
            target = curve_from_rectangle(s, s.rectangles[s.rect_index[(k + 1, k)]])
            assert image.is_isotopic(target)

    def test_torus38_shift_three(self):
        s = build_surface(torus_braid(3, 8))
        r = curve_from_rectangle(s, s.top_left_rectangle())
        shifted = apply_monodromy(s, r, 3)
        target = curve_from_rectangle(s, s.rectangles[s.rect_index[(1, 6)]])
        assert shifted.is_isotopic(target)

    def test_torus57_shift_five(self):
        s = build_surface(torus_braid(5, 7))
        r = curve_from_rectangle(s, s.top_left_rectangle())
        shifted = apply_monodromy(s, r, 5)
        target = curve_from_rectangle(s, s.rectangles[s.rect_index[(1, 20)]])
        assert shifted.is_isotopic(target)

    def test_inverse_monodromy_inverts(self):
        s = build_surface(torus_braid(3, 4))
        rng = random.Random(35)
        for _ in range(20):
            x = random_curve(s, rng)
            y = cv.apply_inverse_monodromy(s, apply_monodromy(s, x, 1), 1)
            assert y.is_isotopic(x, oriented=True)


class TestTraversesBand:
    def test_rectangle_traverses_own_bands_once(self):
        s = surface("1 1 1")
        r = curve_from_rectangle(s, s.rectangles[0])
        assert traverses_band(r, 0) == 1
        assert traverses_band(r, 1) == 1
        assert traverses_band(r, 2) == 0

    def test_figure_braid_image_avoids_top_band(self):
        s = build_surface(FIGURE_BRAID)
        assert FIGURE_BRAID.letters[0] == FIGURE_BRAID.letters[1] == 4
        r = curve_from_rectangle(s, s.rectangles[s.rect_index[(4, 0)]])
        image = apply_monodromy(s, r, 1)
        assert traverses_band(image, 0) == 0
