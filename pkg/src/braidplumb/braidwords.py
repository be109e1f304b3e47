"""Positive braid words: parsing, invariants, rewriting moves, square-prefix form.

A word is a sequence of 1-based generator indices; letter i is one positive
crossing of strands i and i+1, read top to bottom.  All rewriting moves
preserve the closure link: cyclic conjugation, the braid relation
s_i s_{i+1} s_i = s_{i+1} s_i s_{i+1}, distant commutation, and Markov
destabilization of a generator occurring exactly once.
"""

from __future__ import annotations

import dataclasses
from collections import deque
from typing import Optional, Union

from .errors import (
    DisconnectedWord,
    IllegalMove,
    InvalidGenerator,
    SearchBudgetExceeded,
    TrivialLink,
)

DEFAULT_SEARCH_BUDGET = 10**6


@dataclasses.dataclass(frozen=True)
class BraidWord:
    """A positive braid word on `strands` strands."""

    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.strands < 1:
            raise InvalidGenerator("strand count must be at least 1")
        for x in self.letters:
            if not isinstance(x, int) or x < 1 or x >= self.strands:
                raise InvalidGenerator(
                    f"letter {x!r} outside the generator range 1..{self.strands - 1}"
                )
        object.__setattr__(self, "letters", tuple(self.letters))

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def is_connected(self) -> bool:
        """True when every generator 1..strands-1 occurs at least once."""
        if self.strands == 1:
            return True
        return len(set(self.letters)) == self.strands - 1

    @property
    def is_reduced(self) -> bool:
        """True when every generator occurs at least twice."""
        counts = [0] * self.strands
        for x in self.letters:
            counts[x] += 1
        return all(counts[i] >= 2 for i in range(1, self.strands))

    @property
    def b1(self) -> int:
        """First Betti number of the fibre surface, c - s + 1."""
        if not self.is_connected:
            raise DisconnectedWord("b1 is defined for connected words only")
        return self.length - self.strands + 1

    def permutation(self) -> tuple[int, ...]:
        """Image of each strand under the closure, 0-indexed."""
        perm = list(range(self.strands))
        for x in self.letters:
            perm[x - 1], perm[x] = perm[x], perm[x - 1]
        return tuple(perm)

    def cycles(self) -> list[tuple[int, ...]]:
        perm = self.permutation()
        seen = [False] * self.strands
        out = []
        for start in range(self.strands):
            if seen[start]:
                continue
            cyc = []
            v = start
            while not seen[v]:
                seen[v] = True
                cyc.append(v)
                v = perm[v]
            out.append(tuple(cyc))
        return out

    @property
    def components(self) -> int:
        return len(self.cycles())

    @property
    def is_knot(self) -> bool:
        return self.components == 1

    def canonical(self) -> tuple[int, ...]:
        """Lexicographically least cyclic rotation of the letter sequence."""
        return min_rotation(self.letters)

    def rotated(self, shift: int) -> "BraidWord":
        c = self.length
        if c == 0:
            return self
        shift %= c
        return BraidWord(self.strands, self.letters[shift:] + self.letters[:shift])

    def text(self) -> str:
        return " ".join(str(x) for x in self.letters)

    def __str__(self):
        return f"BraidWord(s={self.strands}, [{self.text()}])"


def min_rotation(letters: tuple[int, ...]) -> tuple[int, ...]:
    c = len(letters)
    if c == 0:
        return ()
    best = letters
    for r in range(1, c):
        cand = letters[r:] + letters[:r]
        if cand < best:
            best = cand
    return best


def parse_braid(text: str, strands: Optional[int] = None) -> BraidWord:
    """Parse whitespace-separated generator indices into a BraidWord.

    The strand count defaults to max letter + 1.
    """
    tokens = text.split()
    letters = []
    for tok in tokens:
        try:
            val = int(tok)
        except ValueError as exc:
            raise InvalidGenerator(f"non-integer token {tok!r}") from exc
        if val < 1:
            raise InvalidGenerator(f"generator index {val} must be positive")
        letters.append(val)
    if strands is None:
        strands = (max(letters) + 1) if letters else 1
    for val in letters:
        if val >= strands:
            raise InvalidGenerator(f"letter {val} needs more than {strands} strands")
    return BraidWord(strands, tuple(letters))


def closure_components(word: BraidWord) -> tuple[int, list[tuple[int, ...]]]:
    """Component count of the closure, with the strand cycle partition."""
    cycles = word.cycles()
    return len(cycles), cycles


@dataclasses.dataclass(frozen=True)
class InvariantReport:
    c: int
    s: int
    b1: int
    components: int
    genus: Optional[int]
    reduced: bool
    connected: bool


def braid_invariants(word: BraidWord) -> InvariantReport:
    """Length, Betti number, component count, and (for knots) the genus."""
    if not word.is_connected:
        raise DisconnectedWord("some generator is absent; the closure splits")
    b1 = word.b1
    comps = word.components
    genus = None
    if comps == 1:
        if b1 % 2:
            raise AssertionError("knot closure with odd b1; impossible")
        genus = b1 // 2
    return InvariantReport(
        c=word.length,
        s=word.strands,
        b1=b1,
        components=comps,
        genus=genus,
        reduced=word.is_reduced,
        connected=word.is_connected,
    )


# ---------------------------------------------------------------------------
# Rewriting moves
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class CyclicConjugate:
    shift: int

    def to_json(self):
        return {"kind": "cyclic", "shift": self.shift}


@dataclasses.dataclass(frozen=True)
class BraidRelation:
    position: int
    direction: int = 1  # +1 rewrites (i, i+1, i); -1 rewrites (i+1, i, i+1)

    def to_json(self):
        return {"kind": "braid", "position": self.position, "direction": self.direction}


@dataclasses.dataclass(frozen=True)
class CommutationSwap:
    position: int

    def to_json(self):
        return {"kind": "commute", "position": self.position}


@dataclasses.dataclass(frozen=True)
class Destabilize:
    generator: int

    def to_json(self):
        return {"kind": "destabilize", "generator": self.generator}


RewriteMove = Union[CyclicConjugate, BraidRelation, CommutationSwap, Destabilize]


def move_from_json(data: dict) -> RewriteMove:
    kind = data["kind"]
    if kind == "cyclic":
        return CyclicConjugate(int(data["shift"]))
    if kind == "braid":
        return BraidRelation(int(data["position"]), int(data.get("direction", 1)))
    if kind == "commute":
        return CommutationSwap(int(data["position"]))
    if kind == "destabilize":
        return Destabilize(int(data["generator"]))
    raise IllegalMove(f"unknown move kind {kind!r}")


def apply_move(word: BraidWord, move: RewriteMove) -> BraidWord:
    """Apply a legal rewriting move; the closure link type is preserved."""
    letters = word.letters
    c = len(letters)
    if isinstance(move, CyclicConjugate):
        if c == 0:
            return word
        return word.rotated(move.shift)
    if isinstance(move, BraidRelation):
        p = move.position
        if p < 0 or p + 2 >= c:
            raise IllegalMove(f"braid relation needs positions {p}..{p+2} inside the word")
        a, b, a2 = letters[p], letters[p + 1], letters[p + 2]
        if a != a2 or abs(a - b) != 1:
            raise IllegalMove(f"no braid relation pattern at position {p}")
        if move.direction == 1 and b != a + 1:
            raise IllegalMove("direction +1 expects the pattern (i, i+1, i)")
        if move.direction == -1 and b != a - 1:
            raise IllegalMove("direction -1 expects the pattern (i+1, i, i+1)")
        new = letters[:p] + (b, a, b) + letters[p + 3 :]
        return BraidWord(word.strands, new)
    if isinstance(move, CommutationSwap):
        p = move.position
        if p < 0 or p + 1 >= c:
            raise IllegalMove(f"commutation needs positions {p}, {p+1} inside the word")
        a, b = letters[p], letters[p + 1]
        if abs(a - b) < 2:
            raise IllegalMove(f"letters {a}, {b} do not commute")
        new = letters[:p] + (b, a) + letters[p + 2 :]
        return BraidWord(word.strands, new)
    if isinstance(move, Destabilize):
        g = move.generator
        if letters.count(g) != 1:
            raise IllegalMove(f"generator {g} does not occur exactly once")
        # Rotate the lone letter to the front; the rest splits into letters
        # below and above g, which commute pairwise, so the closure is the
        # connected sum realized by the merged (s-1)-strand word.  Sorting
        # must happen before renumbering: afterwards g-1 and g no longer
        # commute.
        pos = letters.index(g)
        tail = letters[pos + 1 :] + letters[:pos]
        low = tuple(x for x in tail if x < g)
        high = tuple(x - 1 for x in tail if x > g)
        return BraidWord(word.strands - 1, low + high)
    raise IllegalMove(f"unknown move {move!r}")


def replay_moves(word: BraidWord, moves: list[RewriteMove]) -> BraidWord:
    for m in moves:
        word = apply_move(word, m)
    return word


# ---------------------------------------------------------------------------
# Square-prefix normalization
# ---------------------------------------------------------------------------


def square_prefix_generator(letters: tuple[int, ...]) -> Optional[int]:
    """Return m when the word starts s_m s_m s_{m-1}^+ ... s_1^+, else None."""
    c = len(letters)
    if c < 2 or letters[0] != letters[1]:
        return None
    m = letters[0]
    i = 2
    for g in range(m - 1, 0, -1):
        if i >= c or letters[i] != g:
            return None
        while i < c and letters[i] == g:
            i += 1
    return m


def is_trivial_closure(word: BraidWord) -> bool:
    """True when the closure is a trivial link (split union of unknots).

    Split the word into blocks of consecutively-present generators; each
    block closes to an unknot exactly when every generator in it occurs
    once, i.e. the block fully destabilizes.
    """
    counts = [0] * (word.strands + 1)
    for x in word.letters:
        counts[x] += 1
    g = 1
    while g < word.strands:
        if counts[g] == 0:
            g += 1
            continue
        block_total = 0
        block_gens = 0
        while g < word.strands and counts[g] > 0:
            block_total += counts[g]
            block_gens += 1
            g += 1
        if block_total != block_gens:
            return False
    return True


@dataclasses.dataclass(frozen=True)
class NormalizationResult:
    word: BraidWord
    m: int
    moves: tuple[RewriteMove, ...]


def _destabilize_all(word: BraidWord, moves: list[RewriteMove]) -> BraidWord:
    """Remove every generator occurring exactly once, repeatedly."""
    changed = True
    while changed and word.length:
        changed = False
        counts = [0] * (word.strands + 1)
        for x in word.letters:
            counts[x] += 1
        for g in range(1, word.strands):
            if counts[g] == 1:
                move = Destabilize(g)
                word = apply_move(word, move)
                moves.append(move)
                changed = True
                break
    return word


def _greedy_front_runs(word: BraidWord, moves: list[RewriteMove]) -> Optional[BraidWord]:
    """Try to reach the square-prefix form by rotation plus commutations only."""
    letters = word.letters
    c = len(letters)
    for r in range(c):
        rot = letters[r:] + letters[:r]
        if rot[0] != rot[1]:
            continue
        m = rot[0]
        trial_moves: list[RewriteMove] = []
        if r:
            trial_moves.append(CyclicConjugate(r))
        cur = list(rot)
        front = 2
        ok = True
        for g in range(m - 1, 0, -1):
            pulled = 0
            scan = front
            while scan < c:
                if cur[scan] == g:
                    # Everything between the run front and this letter must commute.
                    if all(abs(cur[k] - g) >= 2 for k in range(front, scan)):
                        for k in range(scan, front, -1):
                            cur[k], cur[k - 1] = cur[k - 1], cur[k]
                            trial_moves.append(CommutationSwap(k - 1))
                        front += 1
                        pulled += 1
                        scan = front
                        continue
                    else:
                        break
                scan += 1
            if pulled == 0:
                ok = False
                break
        if ok:
            result = tuple(cur)
            assert square_prefix_generator(result) == m
            moves.extend(trial_moves)
            return BraidWord(word.strands, result)
    return None


def _cyclic_neighbors(word: BraidWord):
    """All words one move away, with moves normalized to act on a rotation."""
    letters = word.letters
    c = len(letters)
    doubled = letters + letters
    for p in range(c):
        a, b, a2 = doubled[p], doubled[p + 1], doubled[p + 2]
        if a == a2 and abs(a - b) == 1:
            if p + 2 < c:
                mv: list[RewriteMove] = [BraidRelation(p, 1 if b == a + 1 else -1)]
                new = letters[:p] + (b, a, b) + letters[p + 3 :]
            else:
                rot = letters[p:] + letters[:p]
                mv = [CyclicConjugate(p), BraidRelation(0, 1 if b == a + 1 else -1)]
                new = (b, a, b) + rot[3:]
            yield BraidWord(word.strands, new), mv
        if abs(a - b) >= 2:
            if p + 1 < c:
                mv = [CommutationSwap(p)]
                new = letters[:p] + (b, a) + letters[p + 2 :]
            else:
                rot = letters[p:] + letters[:p]
                mv = [CyclicConjugate(p), CommutationSwap(0)]
                new = (b, a) + rot[2:]
            yield BraidWord(word.strands, new), mv
    seen_gens = set()
    for g in letters:
        if g in seen_gens:
            continue
        seen_gens.add(g)
        if letters.count(g) == 1:
            yield apply_move(word, Destabilize(g)), [Destabilize(g)]


def square_normalization(
    word: BraidWord, budget: int = DEFAULT_SEARCH_BUDGET
) -> NormalizationResult:
    """Rewrite to a word starting with s_m^2 s_{m-1}^+ ... s_1^+.

    Existence is guaranteed for non-trivial closures; the search is a
    breadth-first walk over the closure-preserving moves, deduplicated by
    the least cyclic rotation, with a node budget against pathologies.
    """
    if is_trivial_closure(word):
        raise TrivialLink("the closure destabilizes to a trivial link")

    moves: list[RewriteMove] = []
    start = _destabilize_all(word, moves)

    m = square_prefix_generator(start.letters)
    if m is not None:
        return NormalizationResult(start, m, tuple(moves))
    fast = _greedy_front_runs(start, moves)
    if fast is not None:
        return NormalizationResult(fast, square_prefix_generator(fast.letters), tuple(moves))

    # Full breadth-first search.
    visited = {(start.strands, start.canonical())}
    queue = deque([(start, moves)])
    nodes = 0
    while queue:
        cur, path = queue.popleft()
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded(f"no square-prefix form within {budget} nodes")
        for nxt, mv in _cyclic_neighbors(cur):
            key = (nxt.strands, nxt.canonical())
            if key in visited:
                continue
            visited.add(key)
            new_path = path + mv
            extra: list[RewriteMove] = []
            candidate = _destabilize_all(nxt, extra)
            if extra:
                new_path = new_path + extra
                ckey = (candidate.strands, candidate.canonical())
                if ckey in visited:
                    continue
                visited.add(ckey)
            m = square_prefix_generator(candidate.letters)
            if m is not None:
                return NormalizationResult(candidate, m, tuple(new_path))
            fast_moves = list(new_path)
            fast = _greedy_front_runs(candidate, fast_moves)
            if fast is not None:
                return NormalizationResult(
                    fast, square_prefix_generator(fast.letters), tuple(fast_moves)
                )
            queue.append((candidate, new_path))
    raise SearchBudgetExceeded("move space exhausted without a square-prefix form")


def normalize_to_square(
    word: BraidWord, budget: int = DEFAULT_SEARCH_BUDGET
) -> tuple[BraidWord, int]:
    """The square-prefix normal form and its squared generator."""
    res = square_normalization(word, budget)
    return res.word, res.m
