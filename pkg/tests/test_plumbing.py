import dataclasses
import json

import pytest

from braidplumb.alexpoly import burau_alexander, hironaka_max_n
from braidplumb.braidwords import BraidWord, parse_braid
from braidplumb.errors import (
    DisjointnessFailure,
    InternalConsistencyError,
    NotAKnot,
    TrivialKnot,
)
from braidplumb.fatgraph import build_surface
from braidplumb.plumbing import (
    ChainCertificate,
    detect_chain,
    torus_braid,
    torus_summand_report,
    trefoil_decompose,
    trefoil_decomposition_from_json,
    trefoil_step,
    validate_chain_certificate,
    validate_trefoil_decomposition,
    validate_trefoil_step,
)


class TestTorusBraid:
    def test_two_strand(self):
        assert torus_braid(2, 3).letters == (1, 1, 1)

    def test_four_three(self):
        assert torus_braid(4, 3).letters == (1, 2, 3, 1, 2, 3, 1, 2, 3)

    def test_zero_power(self):
        w = torus_braid(3, 0)
        assert w.strands == 3 and w.letters == ()


class TestDetectChain:
    def test_two_strand_fills_surface(self):
        for q in range(2, 10):
            s = build_surface(torus_braid(2, q))
            cert = detect_chain(s, s.top_left_rectangle(), q + 3)
            assert cert.n == q - 1

    def test_torus_lower_bound(self):
        for p, q in ((3, 4), (3, 5), (4, 5)):
            s = build_surface(torus_braid(p, q))
            cert = detect_chain(s, s.top_left_rectangle(), p)
            assert cert.n >= p - 1

    def test_monotone_prefix(self):
        s = build_surface(torus_braid(3, 5))
        big = detect_chain(s, s.top_left_rectangle(), 6)
        for m in range(1, big.n + 1):
            small = detect_chain(s, s.top_left_rectangle(), m)
            assert small.n == m
            assert small.curve_words == big.curve_words[:m]

    def test_single_curve_chain(self):
        s = build_surface(torus_braid(3, 4))
        cert = detect_chain(s, s.top_left_rectangle(), 1)
        assert cert.n == 1 and cert.rank == 1

    def test_certificate_validates_and_round_trips(self):
        s = build_surface(torus_braid(3, 5))
        cert = detect_chain(s, s.top_left_rectangle(), 6)
        assert validate_chain_certificate(cert)
        reloaded = ChainCertificate.from_json(json.loads(json.dumps(cert.to_json())))
        assert validate_chain_certificate(reloaded)
        assert reloaded == cert

    def test_corrupted_certificate_rejected(self):
        s = build_surface(torus_braid(3, 5))
        cert = detect_chain(s, s.top_left_rectangle(), 6)
        bad_table = tuple(
            tuple(2 if (a, b) == (0, 1) else v for b, v in enumerate(row))
            for a, row in enumerate(cert.intersections)
        )
        bad = dataclasses.replace(cert, intersections=bad_table)
        with pytest.raises(InternalConsistencyError):
            validate_chain_certificate(bad)

    def test_chain_invariants_hold(self):
        s = build_surface(torus_braid(3, 8))
        cert = detect_chain(s, s.top_left_rectangle(), 9)
        assert cert.n == 8
        for a in range(cert.n):
            for b in range(cert.n):
                expect = 1 if abs(a - b) == 1 else 0
                if a != b:
                    assert cert.intersections[a][b] == expect
        assert cert.rank == cert.n


class TestTrefoilStep:
    def test_trefoil(self):
        step = trefoil_step(parse_braid("1 1 1"))
        assert step.m == 1
        assert step.after.letters == (1,)
        assert step.traversals == 0
        assert validate_trefoil_step(step)

    def test_genus_drops(self):
        w = torus_braid(3, 4)
        step = trefoil_step(w)
        assert step.after.b1 == w.b1 - 2
        assert step.after.is_knot

    def test_not_a_knot(self):
        with pytest.raises(NotAKnot):
            trefoil_step(parse_braid("1 2 1 2 1 2"))

    def test_trivial_knot(self):
        with pytest.raises(TrivialKnot):
            trefoil_step(parse_braid("1 2"))


class TestTrefoilDecompose:
    def test_trefoil_single_step(self):
        dec = trefoil_decompose(parse_braid("1 1 1"))
        assert len(dec.steps) == 1
        assert dec.ribbon_twist_count == 1
        assert validate_trefoil_decomposition(dec)

    def test_torus34_three_steps(self):
        dec = trefoil_decompose(torus_braid(3, 4))
        assert len(dec.steps) == 3
        assert dec.ribbon_twist_count == 3
        assert validate_trefoil_decomposition(dec)

    def test_two_component_rejected(self):
        with pytest.raises(NotAKnot):
            trefoil_decompose(parse_braid("3 1 2 2 3 1 2 1"))

    def test_unknot_empty_decomposition(self):
        dec = trefoil_decompose(parse_braid("1 2"))
        assert dec.steps == ()
        assert dec.ribbon_twist_count == 0

    def test_json_round_trip(self):
        dec = trefoil_decompose(torus_braid(3, 4))
        blob = json.dumps(dec.to_json())
        back = trefoil_decomposition_from_json(json.loads(blob))
        assert validate_trefoil_decomposition(back)
        assert back.word.letters == dec.word.letters
        assert [s.to_json() for s in back.steps] == [s.to_json() for s in dec.steps]

    def test_every_step_disjointness_holds(self):
        dec = trefoil_decompose(torus_braid(4, 5))
        assert len(dec.steps) == 6
        assert all(s.traversals == 0 for s in dec.steps)


class TestTorusSummandReport:
    def test_proposition_one_cases(self):
        rep = torus_summand_report(3, 7)
        assert (rep.detector_n, rep.hironaka_max_plumbing, rep.verdict) == (6, 6, "exact")
        rep = torus_summand_report(3, 8)
        assert (rep.detector_n, rep.hironaka_max_plumbing, rep.verdict) == (8, 8, "exact")

    def test_lower_bound_case(self):
        rep = torus_summand_report(4, 5)
        assert rep.detector_n >= 3
        assert rep.verdict in ("exact", "lower_bound")
        assert rep.detector_n <= rep.hironaka_max_plumbing

    def test_certificate_present_and_valid(self):
        rep = torus_summand_report(3, 5)
        assert rep.certificate is not None
        assert validate_chain_certificate(rep.certificate)

    def test_torus_link_bound_via_burau(self):
        rep = torus_summand_report(2, 4)  # T(2,4) is a link
        assert rep.detector_n == 3
        assert rep.hironaka_max_plumbing is not None


class TestObstructionConsistency:
    def test_chain_implies_bound(self):
        for p, q in ((2, 5), (2, 6), (3, 4), (3, 5)):
            word = torus_braid(p, q)
            s = build_surface(word)
            best = 0
            for seed in s.column_rectangles(1):
                best = max(best, detect_chain(s, seed, s.b1 + 1).n)
            n_max, _ = hironaka_max_n(burau_alexander(word))
            assert n_max >= best + 1
