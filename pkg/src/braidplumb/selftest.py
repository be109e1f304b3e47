"""Acceptance suite: every headline claim as one timed pass/fail check.

Each criterion function returns a CriterionResult; run_all executes them in
order and reuses the chain certificates of the torus criteria for the
final obstruction-consistency check.  All expectations are exact.
"""

from __future__ import annotations

import dataclasses
import random
import time
from math import gcd
from typing import Callable, Optional

from . import curves as cv
from .alexpoly import (
    LaurentPolynomial,
    burau_alexander,
    hironaka_max_n,
    hironaka_solve,
    torus_alexander,
)
from .braidwords import BraidWord
from .fatgraph import build_surface
from .monodromy import alexander_from_monodromy, intersection_form
from .plumbing import (
    ChainCertificate,
    detect_chain,
    torus_braid,
    torus_summand_report,
    trefoil_step,
)


@dataclasses.dataclass
class CriterionResult:
    name: str
    passed: bool
    detail: str
    elapsed: float
    limit: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"[{status}] {self.name}: {self.detail} "
            f"({self.elapsed:.2f}s / limit {self.limit:g}s)"
        )


def _timed(limit: float):
    def wrap(fn: Callable[..., tuple[bool, str]]):
        def run(*args, **kwargs) -> CriterionResult:
            t0 = time.time()
            passed, detail = fn(*args, **kwargs)
            elapsed = time.time() - t0
            if elapsed > limit:
                passed = False
                detail += f"; exceeded the {limit:.0f}s budget"
            return CriterionResult(fn.__name__, passed, detail, elapsed, limit)

        return run

    return wrap


# ---------------------------------------------------------------------------
# Corpus enumeration (criterion 5)
# ---------------------------------------------------------------------------


def necklaces_fixed_content(content: tuple[int, ...]) -> list[tuple[int, ...]]:
    """All least-rotation representatives of cyclic words with the given
    letter multiplicities (letters 0..k-1, counts all >= 1)."""
    n = sum(content)
    k = len(content)
    a = [0] * n
    counts = list(content)
    out: list[tuple[int, ...]] = []
    counts[0] -= 1

    def gen(t: int, p: int):
        if t == n:
            if n % p == 0:
                out.append(tuple(a))
            return
        lo = a[t - p]
        for j in range(lo, k):
            if counts[j]:
                a[t] = j
                counts[j] -= 1
                gen(t + 1, p if j == lo else t + 1)
                counts[j] += 1

    gen(1, 1)
    return out


def _compositions(total: int, parts: int, minimum: int):
    if parts == 1:
        if total >= minimum:
            yield (total,)
        return
    for first in range(minimum, total - minimum * (parts - 1) + 1):
        for rest in _compositions(total - first, parts - 1, minimum):
            yield (first,) + rest


def _is_knot_word(letters: tuple[int, ...], strands: int) -> bool:
    perm = list(range(strands))
    for x in letters:
        perm[x - 1], perm[x] = perm[x], perm[x - 1]
    v, cnt = perm[0], 1
    while v != 0:
        v = perm[v]
        cnt += 1
    return cnt == strands


def reduced_knot_corpus(max_crossings: int):
    """Connected reduced positive knot words up to cyclic rotation.

    Connected: every generator present; reduced: every generator at least
    twice; knot: the closure permutation is one cycle (which forces
    c = s - 1 mod 2).
    """
    for k in range(1, max_crossings // 2 + 1):
        s = k + 1
        for c in range(2 * k, max_crossings + 1):
            if (c - k) % 2:
                continue
            for content in _compositions(c, k, 2):
                for neck in necklaces_fixed_content(content):
                    word = tuple(x + 1 for x in neck)
                    if _is_knot_word(word, s):
                        yield BraidWord(s, word)


def random_connected_word(rng: random.Random, c: int, s: int) -> BraidWord:
    base = list(range(1, s)) + [rng.randint(1, s - 1) for _ in range(c - s + 1)]
    rng.shuffle(base)
    return BraidWord(s, tuple(base))


def _random_curve(surface, rng: random.Random) -> cv.NormalCurve:
    x = cv.curve_from_rectangle(surface, rng.choice(surface.rectangles))
    return cv.apply_monodromy(surface, x, rng.randint(0, 3))


# ---------------------------------------------------------------------------
# Criteria
# ---------------------------------------------------------------------------


@_timed(0.1)
def torus37_identity() -> tuple[bool, str]:
    delta = torus_alexander(3, 7)
    target = LaurentPolynomial(
        {0: 1, 2: -1, 3: 1, 5: -1, 6: 1, 7: 1, 8: -1, 10: 1, 11: -1, 13: 1}
    )
    product_ok = (LaurentPolynomial({1: 1, 0: 1}) * delta) == target
    sol = hironaka_solve(delta, 7, 1)
    p_expected = LaurentPolynomial({0: 1, 1: -1, 3: 1, 4: -1, 6: 1})
    sol_ok = sol is not None and sol.n == 7 and sol.P == p_expected and sol.verify(delta)
    return product_ok and sol_ok, f"identity={product_ok} solver={sol_ok}"


@_timed(30.0)
def proposition1(cert_sink: Optional[list] = None) -> tuple[bool, str]:
    ok = True
    checked = []
    for k in range(1, 5):
        for q, expect_n_max, expect_chain in (
            (3 * k + 1, 3 * k + 1, 3 * k),
            (3 * k + 2, 3 * k + 3, 3 * k + 2),
        ):
            n_max, _ = hironaka_max_n(torus_alexander(3, q))
            rep = torus_summand_report(3, q, hironaka_bound=n_max - 1)
            good = (
                n_max == expect_n_max
                and rep.detector_n == expect_chain
                and rep.verdict == "exact"
            )
            ok = ok and good
            checked.append(f"T(3,{q}):{rep.detector_n}/{n_max}{'' if good else '!'}")
            if cert_sink is not None and rep.certificate is not None:
                cert_sink.append(rep.certificate)
    return ok, " ".join(checked)


@_timed(30.0)
def general_lower_bound(cert_sink: Optional[list] = None) -> tuple[bool, str]:
    ok = True
    details = []
    for p in range(2, 6):
        for q in range(p + 1, 10):
            if gcd(p, q) != 1:
                continue
            rep = torus_summand_report(p, q)
            good = rep.detector_n >= p - 1
            ok = ok and good
            details.append(f"T({p},{q}):{rep.detector_n}{'' if good else '!'}")
            if cert_sink is not None and rep.certificate is not None:
                cert_sink.append(rep.certificate)
    for q in range(2, 10):
        surface = build_surface(torus_braid(2, q))
        cert = detect_chain(surface, surface.top_left_rectangle(), q + 1)
        good = cert.n == q - 1
        ok = ok and good
        details.append(f"s1^{q}:{cert.n}{'' if good else '!'}")
        if cert_sink is not None:
            cert_sink.append(cert)
    return ok, " ".join(details)


@_timed(60.0)
def proposition2(cert_sink: Optional[list] = None) -> tuple[bool, str]:
    surface = build_surface(torus_braid(5, 7))
    best = None
    for seed in surface.column_rectangles(1):
        cert = detect_chain(surface, seed, 14)
        if best is None or cert.n > best.n:
            best = cert
    if cert_sink is not None:
        cert_sink.append(best)
    return best.n >= 14, f"T(5,7) chain n={best.n} (need >= 14)"


@_timed(600.0)
def trefoil_exhaustive(max_crossings: int = 12) -> tuple[bool, str]:
    memo: dict = {}

    def decompose_ok(word: BraidWord) -> tuple[int, bool]:
        if word.b1 == 0:
            return 0, True
        key = (word.strands, word.canonical())
        hit = memo.get(key)
        if hit is not None:
            return hit
        step = trefoil_step(word)
        sub, good = decompose_ok(step.after)
        res = (sub + 1, good and step.traversals == 0)
        memo[key] = res
        return res

    total = 0
    bad = 0
    for word in reduced_knot_corpus(max_crossings):
        total += 1
        steps, good = decompose_ok(word)
        if not good or steps != word.b1 // 2:
            bad += 1
    return bad == 0, f"{total} knot classes (c <= {max_crossings}), {bad} failures"


@_timed(60.0)
def alexander_three_way() -> tuple[bool, str]:
    ok = True
    pairs = 0
    for p in range(2, 6):
        for q in range(p + 1, 10):
            if gcd(p, q) != 1:
                continue
            word = torus_braid(p, q)
            a_torus = torus_alexander(p, q)
            a_burau = burau_alexander(word)
            a_mono = alexander_from_monodromy(build_surface(word))
            if not (a_torus.unit_equal(a_burau) and a_burau.unit_equal(a_mono)):
                ok = False
            pairs += 1
    rng = random.Random(20240711)
    randoms = 0
    while randoms < 100:
        s = rng.randint(2, 6)
        c = rng.randint(max(2, s - 1), 12)
        word = random_connected_word(rng, c, s)
        if not word.is_connected:
            continue
        if not burau_alexander(word).unit_equal(
            alexander_from_monodromy(build_surface(word))
        ):
            ok = False
        randoms += 1
    return ok, f"{pairs} torus pairs, {randoms} random words"


@_timed(60.0)
def curve_property_suite() -> tuple[bool, str]:
    rng = random.Random(987123)
    surfaces = [
        build_surface(torus_braid(3, 5)),
        build_surface(torus_braid(4, 4)),
        build_surface(BraidWord(4, (3, 1, 2, 2, 3, 1, 2, 1))),
        build_surface(BraidWord(3, (1, 1, 2, 2, 1, 2))),
    ]
    forms = {id(s): intersection_form(s) for s in surfaces}

    pl_ok = True
    for _ in range(1000):
        surface = rng.choice(surfaces)
        j = forms[id(surface)]
        gamma = cv.curve_from_rectangle(surface, rng.choice(surface.rectangles))
        x = _random_curve(surface, rng)
        right = rng.random() < 0.5
        tw = cv.dehn_twist(cv.TwistFactor(gamma, right=right), x)
        n = len(j)
        pairing = sum(
            x.homology[a] * j[a][b] * gamma.homology[b]
            for a in range(n)
            for b in range(n)
        )
        sign = cv.RIGHT_HANDED_SIGN if right else -cv.RIGHT_HANDED_SIGN
        expect = tuple(
            x.homology[k] + sign * pairing * gamma.homology[k] for k in range(n)
        )
        if tw.homology != expect:
            pl_ok = False
            break

    bound_ok = True
    for _ in range(1000):
        surface = rng.choice(surfaces)
        j = forms[id(surface)]
        x = _random_curve(surface, rng)
        y = _random_curve(surface, rng)
        n = len(j)
        pairing = sum(
            x.homology[a] * j[a][b] * y.homology[b] for a in range(n) for b in range(n)
        )
        if abs(pairing) > cv.geometric_intersection(x, y):
            bound_ok = False
            break

    orbit_ok = True
    s43 = build_surface(torus_braid(4, 3))
    r = cv.curve_from_rectangle(s43, s43.top_left_rectangle())
    for k in (1, 2):
        image = cv.apply_monodromy(s43, r, k)
        target = cv.curve_from_rectangle(
            s43, s43.rectangles[s43.rect_index[(k + 1, k)]]
        )
        orbit_ok = orbit_ok and image.is_isotopic(target)
    s38 = build_surface(torus_braid(3, 8))
    r38 = cv.curve_from_rectangle(s38, s38.top_left_rectangle())
    shifted = cv.apply_monodromy(s38, r38, 3)
    orbit_ok = orbit_ok and shifted.is_isotopic(
        cv.curve_from_rectangle(s38, s38.rectangles[s38.rect_index[(1, 6)]])
    )
    s57 = build_surface(torus_braid(5, 7))
    r57 = cv.curve_from_rectangle(s57, s57.top_left_rectangle())
    shifted57 = cv.apply_monodromy(s57, r57, 5)
    orbit_ok = orbit_ok and shifted57.is_isotopic(
        cv.curve_from_rectangle(s57, s57.rectangles[s57.rect_index[(1, 20)]])
    )

    return (
        pl_ok and bound_ok and orbit_ok,
        f"transvection={pl_ok} pairing-bound={bound_ok} orbits={orbit_ok}",
    )


@_timed(120.0)
def obstruction_consistency(certs: list[ChainCertificate]) -> tuple[bool, str]:
    ok = True
    cache: dict = {}
    for cert in certs:
        key = (cert.word.strands, cert.word.letters)
        n_max = cache.get(key)
        if n_max is None:
            delta = burau_alexander(cert.word)
            n_max, _ = hironaka_max_n(delta)
            cache[key] = n_max
        if n_max < cert.n + 1:
            ok = False
    return ok, f"{len(certs)} certificates against their Alexander bounds"


def run_all(quick: bool = False) -> list[CriterionResult]:
    """Run the acceptance criteria in order; quick mode shrinks the corpus."""
    certs: list[ChainCertificate] = []
    results = [
        torus37_identity(),
        proposition1(certs),
        general_lower_bound(certs),
        proposition2(certs),
        trefoil_exhaustive(10 if quick else 12),
        alexander_three_way(),
        curve_property_suite(),
        obstruction_consistency(certs),
    ]
    return results
