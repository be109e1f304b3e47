import itertools

from braidplumb.braidwords import BraidWord, min_rotation
from braidplumb.selftest import (
    necklaces_fixed_content,
    reduced_knot_corpus,
    run_all,
)


def brute_necklaces(content):
    n = sum(content)
    k = len(content)
    out = set()
    for w in itertools.product(range(k), repeat=n):
        if all(w.count(j) == content[j] for j in range(k)):
            out.add(min(w[r:] + w[:r] for r in range(n)))
    return out


class TestNecklaceEnumerator:
    def test_matches_bruteforce(self):
        for content in [
            (2,),
            (5,),
            (2, 2),
            (3, 2),
            (2, 4),
            (1, 1, 2),
            (2, 2, 2),
            (4, 2, 2),
            (2, 3, 3),
            (2, 2, 2, 2),
        ]:
            got = set(necklaces_fixed_content(content))
            assert got == brute_necklaces(content), content

    def test_outputs_are_least_rotations(self):
        for neck in necklaces_fixed_content((3, 2, 2)):
            assert neck == min_rotation(neck)


class TestCorpus:
    def test_small_scale_matches_bruteforce(self):
        got = {(w.strands, w.letters) for w in reduced_knot_corpus(7)}
        want = set()
        for s in range(2, 5):
            k = s - 1
            for c in range(2 * k, 8):
                for letters in itertools.product(range(1, s), repeat=c):
                    if any(letters.count(g) < 2 for g in range(1, s)):
                        continue
                    canon = min_rotation(letters)
                    if canon != letters:
                        continue
                    w = BraidWord(s, letters)
                    if w.is_knot:
                        want.add((s, letters))
        assert got == want

    def test_members_are_reduced_connected_knots(self):
        for w in reduced_knot_corpus(8):
            assert w.is_connected and w.is_reduced and w.is_knot
            assert w.b1 % 2 == 0


def test_run_all_quick_passes():
    results = run_all(quick=True)
    assert len(results) == 8
    for res in results:
        assert res.passed, res.line()
