"""Plumbing structure detectors and machine-checkable certificates.

Two evidence objects: ChainCertificate witnesses an iterated-Hopf chain of
curves C_k = phi^k(C_0) (consecutive curves meet once, all others are
disjoint, classes independent over Q), and TrefoilDecomposition witnesses
a genus-many sequence of square-removal steps, each certified by a
monodromy-image disjointness check.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction
from math import gcd
from typing import Optional

from . import curves as cv
from .alexpoly import burau_alexander, hironaka_max_n, torus_alexander
from .braidwords import (
    BraidWord,
    Destabilize,
    RewriteMove,
    apply_move,
    move_from_json,
    replay_moves,
    square_normalization,
    DEFAULT_SEARCH_BUDGET,
)
from .errors import (
    DisjointnessFailure,
    InternalConsistencyError,
    NotAKnot,
    TrivialKnot,
)
from .fatgraph import FatGraphSurface, RectangleCurve, build_surface
from .monodromy import homological_monodromy


# ---------------------------------------------------------------------------
# Exact linear algebra helpers
# ---------------------------------------------------------------------------


def _rational_rank(vectors) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank = 0
    cols = len(rows[0]) if rows else 0
    pivot_col = 0
    while rank < len(rows) and pivot_col < cols:
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][pivot_col]:
                pivot = r
                break
        if pivot is None:
            pivot_col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pr = rows[rank]
        inv = 1 / pr[pivot_col]
        rows[rank] = [x * inv for x in pr]
        for r in range(len(rows)):
            if r != rank and rows[r][pivot_col]:
                f = rows[r][pivot_col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        pivot_col += 1
    return rank


def _invert_rational(matrix):
    n = len(matrix)
    aug = [
        [Fraction(matrix[r][c]) for c in range(n)]
        + [Fraction(1 if c == r else 0) for c in range(n)]
        for r in range(n)
    ]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise InternalConsistencyError("homological monodromy must be invertible")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


# ---------------------------------------------------------------------------
# Chain certificates
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class ChainCertificate:
    """Witness of an n-fold iterated-plumbing chain grown from one rectangle."""

    word: BraidWord
    seed: RectangleCurve
    n: int
    curve_words: tuple[tuple[int, ...], ...]
    intersections: tuple[tuple[int, ...], ...]
    rank: int

    def to_json(self):
        return {
            "word": list(self.word.letters),
            "strands": self.word.strands,
            "seed": self.seed.to_json(),
            "n": self.n,
            "curves": [list(w) for w in self.curve_words],
            "intersections": [list(r) for r in self.intersections],
            "rank": self.rank,
        }

    @classmethod
    def from_json(cls, data) -> "ChainCertificate":
        return cls(
            word=BraidWord(int(data["strands"]), tuple(data["word"])),
            seed=RectangleCurve(
                column=int(data["seed"]["column"]),
                top=int(data["seed"]["top"]),
                bottom=int(data["seed"]["bottom"]),
            ),
            n=int(data["n"]),
            curve_words=tuple(tuple(w) for w in data["curves"]),
            intersections=tuple(tuple(r) for r in data["intersections"]),
            rank=int(data["rank"]),
        )


def _chain_ok(candidate, chain, homologies) -> bool:
    if cv.self_intersection(candidate) != 0:
        return False
    if cv.geometric_intersection(candidate, chain[-1]) != 1:
        return False
    for earlier in chain[:-1]:
        if cv.geometric_intersection(candidate, earlier) != 0:
            return False
    return _rational_rank(homologies + [list(candidate.homology)]) == len(chain) + 1


def detect_chain(
    surface: FatGraphSurface, seed: RectangleCurve, max_n: int
) -> ChainCertificate:
    """Largest chain C_0, phi(C_0), ..., phi^{n-1}(C_0) with n <= max_n.

    Greedy growth; a single embedded curve is a valid 1-chain, so n >= 1.
    The result is prefix-monotone in max_n by construction.
    """
    c0 = cv.curve_from_rectangle(surface, seed)
    if cv.self_intersection(c0) != 0:
        raise InternalConsistencyError("rectangle curves must be embedded")
    chain = [c0]
    homologies = [list(c0.homology)]
    last = c0
    while len(chain) < max_n:
        candidate = cv.apply_monodromy(surface, last, 1)
        if not _chain_ok(candidate, chain, homologies):
            break
        chain.append(candidate)
        homologies.append(list(candidate.homology))
        last = candidate
    n = len(chain)
    table = tuple(
        tuple(
            0 if a == b else cv.geometric_intersection(chain[a], chain[b])
            for b in range(n)
        )
        for a in range(n)
    )
    return ChainCertificate(
        word=surface.word,
        seed=seed,
        n=n,
        curve_words=tuple(c.word for c in chain),
        intersections=table,
        rank=_rational_rank(homologies),
    )


def validate_chain_certificate(cert: ChainCertificate) -> bool:
    """Recompute every invariant of a (possibly deserialized) certificate.

    Checks the iterate property C_k = phi^k(C_0), embeddedness, the chain
    intersection pattern, the stored table, rank over Q, and the cut
    independence of the transversal-arc functionals u H^{-k} (u pairs
    cycles with the seed's top band); the latter certifies that cutting
    the surface along the chain's arcs leaves it connected.
    """
    surface = build_surface(cert.word)
    chain = [cv.NormalCurve(surface, w, reduce=False) for w in cert.curve_words]
    n = cert.n
    if len(chain) != n or n < 1:
        raise InternalConsistencyError("certificate length disagrees with n")
    seed_curve = cv.curve_from_rectangle(surface, cert.seed)
    if not chain[0].is_isotopic(seed_curve, oriented=True):
        raise InternalConsistencyError("chain does not start at the seed rectangle")
    for k in range(1, n):
        expected = cv.apply_monodromy(surface, chain[k - 1], 1)
        if expected.word != chain[k].word and not expected.is_isotopic(
            chain[k], oriented=True
        ):
            raise InternalConsistencyError(f"C_{k} is not the monodromy image of C_{k-1}")
    for a in range(n):
        if cv.self_intersection(chain[a]) != 0:
            raise InternalConsistencyError(f"C_{a} is not embedded")
        for b in range(n):
            expect = 0
            if abs(a - b) == 1:
                expect = 1
            got = 0 if a == b else cv.geometric_intersection(chain[a], chain[b])
            if got != expect or cert.intersections[a][b] != got:
                raise InternalConsistencyError(
                    f"intersection table mismatch at ({a}, {b}): {got}"
                )
    homologies = [list(c.homology) for c in chain]
    if _rational_rank(homologies) != n or cert.rank != n:
        raise InternalConsistencyError("chain classes are not independent over Q")
    if not _arc_functionals_independent(surface, cert.seed, n):
        raise InternalConsistencyError("cut surface would disconnect: arc rank too low")
    return True


def _arc_functionals_independent(
    surface: FatGraphSurface, seed: RectangleCurve, n: int
) -> bool:
    """Rank-n test for the pairing functionals of the n chain arcs.

    Pairing a cycle with the k-th arc equals pairing its phi^{-k} image
    with a transversal arc of the seed's top band, so the functionals are
    the rows u H^{-k}; independence is exactly what keeps the cut surface
    connected.
    """
    h = homological_monodromy(surface)
    h_inv = _invert_rational(h)
    u = [Fraction(0)] * len(surface.rectangles)
    for idx, rect in enumerate(surface.rectangles):
        if rect.top == seed.top:
            u[idx] += 1
        if rect.bottom == seed.top:
            u[idx] -= 1
    rows = []
    row = u
    for _ in range(n):
        rows.append(row)
        row = [
            sum(row[a] * h_inv[a][b] for a in range(len(row)))
            for b in range(len(row))
        ]
    return _rational_rank(rows) == n


# ---------------------------------------------------------------------------
# Trefoil decomposition
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class TrefoilStep:
    """One square-removal step, certified by the disjointness check."""

    before: BraidWord
    moves: tuple[RewriteMove, ...]
    normalized: BraidWord
    m: int
    curve: tuple[int, ...]
    image: tuple[int, ...]
    traversals: int
    after: BraidWord

    def to_json(self):
        return {
            "before": list(self.before.letters),
            "moves": [m.to_json() for m in self.moves],
            "m": self.m,
            "R": list(self.curve),
            "phiR": list(self.image),
            "after": list(self.after.letters),
        }


@dataclasses.dataclass(frozen=True)
class TrefoilDecomposition:
    """Iterated square removal from a positive braid knot down to genus 0."""

    word: BraidWord
    steps: tuple[TrefoilStep, ...]
    final_word: BraidWord
    ribbon_twist_count: int

    @property
    def genus(self) -> int:
        return len(self.steps)

    def to_json(self):
        return {
            "word": list(self.word.letters),
            "strands": self.word.strands,
            "steps": [s.to_json() for s in self.steps],
            "genus": self.genus,
            "ribbon_twists": self.ribbon_twist_count,
            "final_word": list(self.final_word.letters),
        }


def trefoil_step(word: BraidWord, budget: int = DEFAULT_SEARCH_BUDGET) -> TrefoilStep:
    """Normalize to a square prefix, verify the deplumbing disjointness,
    and remove the square.

    The disjointness of the monodromy image from the top band is a theorem
    for positive braid knots; its failure is fatal, not recoverable.
    """
    if not word.is_knot:
        raise NotAKnot(f"closure has {word.components} components")
    if word.b1 == 0:
        raise TrivialKnot("genus zero: nothing to deplumb")
    res = square_normalization(word, budget)
    norm = res.word
    surface = build_surface(norm)
    rect = surface.rectangles[surface.rect_index[(res.m, 0)]]
    if rect.bottom != 1:
        raise InternalConsistencyError("square prefix must give the top rectangle (0, 1)")
    r_curve = cv.curve_from_rectangle(surface, rect)
    image = cv.apply_monodromy(surface, r_curve, 1)
    traversals = cv.traverses_band(image, 0)
    if traversals != 0:
        raise DisjointnessFailure(
            f"monodromy image meets the top band {traversals} times on {norm.text()!r}"
        )
    after = BraidWord(norm.strands, norm.letters[2:])
    if not after.is_connected:
        raise InternalConsistencyError("square removal disconnected a knot word")
    if after.b1 != norm.b1 - 2:
        raise InternalConsistencyError("square removal must drop b1 by exactly 2")
    return TrefoilStep(
        before=word,
        moves=res.moves,
        normalized=norm,
        m=res.m,
        curve=r_curve.word,
        image=image.word,
        traversals=traversals,
        after=after,
    )


def _destabilizes_to_empty(word: BraidWord) -> bool:
    w = word
    while w.length:
        counts = {}
        for x in w.letters:
            counts[x] = counts.get(x, 0) + 1
        lone = next((g for g, k in counts.items() if k == 1), None)
        if lone is None:
            return False
        w = apply_move(w, Destabilize(lone))
    return True


def trefoil_decompose(
    word: BraidWord, budget: int = DEFAULT_SEARCH_BUDGET
) -> TrefoilDecomposition:
    """Iterate trefoil_step until genus zero; step count equals the genus.

    Every step is re-validated from its stored fields before the
    decomposition is returned.
    """
    if not word.is_knot:
        raise NotAKnot(f"closure has {word.components} components")
    genus = word.b1 // 2
    steps = []
    w = word
    while w.b1 > 0:
        step = trefoil_step(w, budget)
        validate_trefoil_step(step)
        steps.append(step)
        w = step.after
    if len(steps) != genus:
        raise InternalConsistencyError("step count disagrees with the genus")
    if not _destabilizes_to_empty(w):
        raise InternalConsistencyError("final word does not destabilize to the identity")
    return TrefoilDecomposition(
        word=word,
        steps=tuple(steps),
        final_word=w,
        ribbon_twist_count=len(steps),
    )


def validate_trefoil_step(step: TrefoilStep) -> bool:
    """Replay the moves and recompute every stored field of a step."""
    norm = replay_moves(step.before, list(step.moves))
    if norm.letters != step.normalized.letters or norm.strands != step.normalized.strands:
        raise InternalConsistencyError("move replay does not reach the normalized word")
    if norm.letters[0] != step.m or norm.letters[1] != step.m:
        raise InternalConsistencyError("normalized word does not start with the square")
    surface = build_surface(norm)
    rect = surface.rectangles[surface.rect_index[(step.m, 0)]]
    r_curve = cv.curve_from_rectangle(surface, rect)
    if r_curve.word != step.curve:
        raise InternalConsistencyError("stored curve is not the top rectangle")
    image = cv.apply_monodromy(surface, r_curve, 1)
    if image.word != step.image:
        raise InternalConsistencyError("stored image is not the monodromy image")
    if cv.traverses_band(image, 0) != 0 or step.traversals != 0:
        raise DisjointnessFailure("stored step fails the disjointness check")
    if step.after.letters != norm.letters[2:]:
        raise InternalConsistencyError("stored after-word is not the square removal")
    return True


def validate_trefoil_decomposition(dec: TrefoilDecomposition) -> bool:
    w = dec.word
    for step in dec.steps:
        if step.before.letters != w.letters or step.before.strands != w.strands:
            raise InternalConsistencyError("steps do not chain")
        validate_trefoil_step(step)
        w = step.after
    if w.letters != dec.final_word.letters:
        raise InternalConsistencyError("final word mismatch")
    if dec.ribbon_twist_count != len(dec.steps) or len(dec.steps) != dec.word.b1 // 2:
        raise InternalConsistencyError("ribbon twist count must equal the genus")
    if not _destabilizes_to_empty(dec.final_word):
        raise InternalConsistencyError("final word does not destabilize to the identity")
    return True


def trefoil_decomposition_from_json(data) -> TrefoilDecomposition:
    strands = int(data["strands"])
    word = BraidWord(strands, tuple(data["word"]))
    steps = []
    w = word
    for raw in data["steps"]:
        before = BraidWord(w.strands, tuple(raw["before"]))
        moves = tuple(move_from_json(m) for m in raw["moves"])
        norm = replay_moves(before, list(moves))
        after = BraidWord(norm.strands, tuple(raw["after"]))
        steps.append(
            TrefoilStep(
                before=before,
                moves=moves,
                normalized=norm,
                m=int(raw["m"]),
                curve=tuple(raw["R"]),
                image=tuple(raw["phiR"]),
                traversals=0,
                after=after,
            )
        )
        w = after
    return TrefoilDecomposition(
        word=word,
        steps=tuple(steps),
        final_word=BraidWord(w.strands, tuple(data["final_word"])),
        ribbon_twist_count=int(data["ribbon_twists"]),
    )


# ---------------------------------------------------------------------------
# Torus braids
# ---------------------------------------------------------------------------


def torus_braid(p: int, q: int) -> BraidWord:
    """The braid (s_1 s_2 ... s_{p-1})^q on p strands."""
    if p < 1 or q < 0:
        raise ValueError("need p >= 1 and q >= 0")
    return BraidWord(p, tuple(list(range(1, p)) * q))


@dataclasses.dataclass(frozen=True)
class TorusSummandReport:
    p: int
    q: int
    detector_n: int
    hironaka_max_plumbing: Optional[int]
    verdict: str
    certificate: Optional[ChainCertificate]

    def to_json(self):
        return {
            "p": self.p,
            "q": self.q,
            "detector_n": self.detector_n,
            "hironaka_max_plumbing": self.hironaka_max_plumbing,
            "verdict": self.verdict,
            "certificate": self.certificate.to_json() if self.certificate else None,
        }


def torus_summand_report(
    p: int, q: int, hironaka_bound: Optional[int] = None
) -> TorusSummandReport:
    """Chain detector versus the Alexander-polynomial bound for T(p, q).

    Seeds every rectangle of the first column (the optimal deep-orbit
    chains re-enter the left column).  When the detector meets the bound
    the answer is exact; otherwise the detector value is a lower bound.
    """
    word = torus_braid(p, q)
    if hironaka_bound is None and q >= 1 and p >= 2:
        if gcd(p, q) == 1:
            delta = torus_alexander(p, q)
        else:
            delta = burau_alexander(word)
        n_max, _ = hironaka_max_n(delta)
        hironaka_bound = n_max - 1
    if q < 2 or p < 2:
        return TorusSummandReport(p, q, 0, hironaka_bound, "degenerate", None)
    surface = build_surface(word)
    cap = hironaka_bound + 2 if hironaka_bound is not None else surface.b1 + 1
    best = None
    for seed in surface.column_rectangles(1):
        cert = detect_chain(surface, seed, cap)
        if best is None or cert.n > best.n:
            best = cert
    detector_n = best.n if best else 0
    if hironaka_bound is not None and detector_n > hironaka_bound:
        raise InternalConsistencyError(
            "detected chain exceeds the Alexander-polynomial bound"
        )
    verdict = "exact" if detector_n == hironaka_bound else "lower_bound"
    return TorusSummandReport(p, q, detector_n, hironaka_bound, verdict, best)
