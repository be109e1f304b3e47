"""Free homotopy classes of curves on the fibre surface, and Dehn twists.

A curve is a reduced cyclic word of oriented band traversals on the
fatgraph spine; reduced cyclic words are canonical representatives of free
homotopy classes, so equality testing is rotation equality.

Geometric intersection numbers are computed by linked-pair counting.  Two
strands can only be forced to cross where they pass a common vertex disk;
a pair of passes is "linked" when the four path germs leaving the disk
alternate around its boundary.  Germs entering the same band are ordered
by their first divergence, and strand pairs sharing a run of bands are
anchored at one designated end of the run so each crossing is counted
exactly once.  A Dehn twist splices an oriented copy of the core into the
curve at every counted crossing and reduces.
"""

from __future__ import annotations

import dataclasses
import functools
from collections import defaultdict

from .errors import EmptyCurve, InternalConsistencyError, NonEmbeddedCore
from .fatgraph import FatGraphSurface, RectangleCurve

# Global handedness: with the vertex rings stored in ascending word-position
# order, inserting the core with this orientation at a positively-linked
# crossing realizes the *right-handed* twist.  Calibrated once against the
# torus-braid orbit facts (see tests); everything downstream inherits it.
RIGHT_HANDED_SIGN = -1


def reduce_cyclic(word) -> tuple[int, ...]:
    """Cyclically reduce an edge word (free cancellation of e, -e pairs)."""
    out: list[int] = []
    for t in word:
        if out and out[-1] == -t:
            out.pop()
        else:
            out.append(t)
    while len(out) >= 2 and out[0] == -out[-1]:
        out.pop()
        out.pop(0)
    return tuple(out)


def _validate_path(surface: FatGraphSurface, word):
    c = surface.word.length
    for t in word:
        j = abs(t)
        if t == 0 or j > c:
            raise EmptyCurve(f"traversal {t} outside the edge range 1..{c}")
    L = len(word)
    for i in range(L):
        here = surface.end_vertex[surface.target_end(word[i])]
        there = surface.end_vertex[surface.source_end(word[(i + 1) % L])]
        if here != there:
            raise EmptyCurve(
                f"traversals {word[i]} -> {word[(i + 1) % L]} do not share a strand disk"
            )


class NormalCurve:
    """A free homotopy class, stored as its reduced cyclic edge word."""

    __slots__ = ("surface", "word", "_transits", "_self_int", "_homology")

    def __init__(self, surface: FatGraphSurface, word, reduce: bool = True):
        word = tuple(word)
        if reduce:
            word = reduce_cyclic(word)
        if not word:
            raise EmptyCurve("the word reduces to nothing: null-homotopic curve")
        _validate_path(surface, word)
        self.surface = surface
        self.word = word
        self._transits = None
        self._self_int = None
        self._homology = None

    def canonical(self) -> tuple[int, ...]:
        """Least rotation of the word; equality of classes keeps orientation."""
        w = self.word
        return min(w[r:] + w[:r] for r in range(len(w)))

    def reversed_word(self) -> tuple[int, ...]:
        return tuple(-t for t in reversed(self.word))

    def unoriented_canonical(self) -> tuple[int, ...]:
        rev = self.reversed_word()
        return min(
            self.canonical(), min(rev[r:] + rev[:r] for r in range(len(rev)))
        )

    def is_isotopic(self, other: "NormalCurve", oriented: bool = False) -> bool:
        if self.surface is not other.surface:
            return False
        if oriented:
            return self.canonical() == other.canonical()
        return self.unoriented_canonical() == other.unoriented_canonical()

    def __eq__(self, other):
        if not isinstance(other, NormalCurve):
            return NotImplemented
        return self.surface is other.surface and self.canonical() == other.canonical()

    def __hash__(self):
        return hash((id(self.surface), self.canonical()))

    def transits(self):
        """Per position i: (vertex, incoming end, outgoing end) between
        word[i-1] and word[i]."""
        if self._transits is None:
            s = self.surface
            w = self.word
            L = len(w)
            out = []
            for i in range(L):
                inc = s.target_end(w[i - 1])
                dep = s.source_end(w[i])
                out.append((s.end_vertex[dep], inc, dep))
            self._transits = out
        return self._transits

    @property
    def support(self) -> dict[int, int]:
        """Unsigned traversal counts per word position."""
        out: dict[int, int] = {}
        for t in self.word:
            out[abs(t) - 1] = out.get(abs(t) - 1, 0) + 1
        return out

    def traverses(self, position: int) -> int:
        e = position + 1
        return sum(1 for t in self.word if abs(t) == e)

    @property
    def homology(self) -> tuple[int, ...]:
        if self._homology is None:
            counts: dict[int, int] = {}
            for t in self.word:
                counts[abs(t) - 1] = counts.get(abs(t) - 1, 0) + (1 if t > 0 else -1)
            self._homology = self.surface.homology_from_edge_counts(counts)
        return self._homology

    @property
    def is_embedded(self) -> bool:
        return self_intersection(self) == 0

    def to_json(self):
        return list(self.word)

    def __repr__(self):
        return f"NormalCurve({list(self.word)})"


def reduce_curve(surface: FatGraphSurface, word) -> NormalCurve:
    """Reduce an arbitrary closed edge word to its canonical curve."""
    return NormalCurve(surface, word, reduce=True)


def curve_from_rectangle(surface: FatGraphSurface, rect: RectangleCurve) -> NormalCurve:
    return NormalCurve(surface, surface.rectangle_word(rect), reduce=False)


@dataclasses.dataclass(frozen=True)
class TwistFactor:
    """A Dehn twist along an embedded core curve."""

    core: NormalCurve
    right: bool = True

    def __post_init__(self):
        if self_intersection(self.core) != 0:
            raise NonEmbeddedCore("twist cores must be embedded circles")


# ---------------------------------------------------------------------------
# Linked-pair machinery
# ---------------------------------------------------------------------------
#
# A germ is an infinite reduced edge path leaving a vertex, encoded as
# (word, L, anchor, forward).  Step k of a forward germ anchored at transit
# i is word[(i+k) % L]; of a backward germ, -word[(i-1-k) % L].


def _germ_step(word, L, anchor, forward, k):
    if forward:
        return word[(anchor + k) % L]
    return -word[(anchor - 1 - k) % L]


def _compare_germs(surface, g1, g2, bound):
    """Order two germs sharing their first traversal.

    Follows both until the first divergence and orders the departing bands
    counterclockwise after the arrival band; this equals the transverse
    order of the two parallel strands at the shared starting band.  Returns
    -1/+1, or 0 for rays that never diverge (parallel forever).
    """
    w1, L1, a1, f1 = g1
    w2, L2, a2, f2 = g2
    prev = _germ_step(w1, L1, a1, f1, 0)
    for k in range(1, bound + 1):
        s1 = _germ_step(w1, L1, a1, f1, k)
        s2 = _germ_step(w2, L2, a2, f2, k)
        if s1 == s2:
            prev = s1
            continue
        pivot = surface.target_end(prev)
        ring_len = len(surface.vertex_slots[surface.end_vertex[pivot]])
        base = surface.end_slot[pivot]
        n1 = (surface.end_slot[surface.source_end(s1)] - base) % ring_len
        n2 = (surface.end_slot[surface.source_end(s2)] - base) % ring_len
        return -1 if n1 < n2 else 1
    return 0


# Germ tags inside one pair evaluation.
_XB, _XF, _YB, _YF = 0, 1, 2, 3


def _pair_event(surface, wx, Lx, tx, ix, wy, Ly, ty, jy, bound):
    """Classify one transit pair; return (sign, inside_tag) when it is a
    forced crossing, else None.

    Pairs are anchored so that strand pairs sharing a run of bands are
    counted at exactly one end of the run: parallel runs at the vertex
    where they merge, antiparallel runs at the end where x's outgoing band
    is y's incoming band.
    """
    _, inx, outx = tx[ix]
    _, iny, outy = ty[jy]
    if inx == iny:
        return None
    if outx == outy:
        bundle = (_XF, _YF)
    elif outx == iny:
        if inx == outy:
            return None
        bundle = (_XF, _YB)
    elif inx == outy:
        return None
    else:
        bundle = None

    slot = surface.end_slot
    keys = [
        [slot[inx], 0],
        [slot[outx], 0],
        [slot[iny], 0],
        [slot[outy], 0],
    ]
    if bundle is not None:
        t1, t2 = bundle
        g1 = (wx, Lx, ix, t1 == _XF) if t1 < 2 else (wy, Ly, jy, t1 == _YF)
        g2 = (wx, Lx, ix, t2 == _XF) if t2 < 2 else (wy, Ly, jy, t2 == _YF)
        order = _compare_germs(surface, g1, g2, bound)
        if order == 0:
            return None
        if order < 0:
            keys[t2][1] = 1
        else:
            keys[t1][1] = 1
    tags = sorted(range(4), key=lambda t: (keys[t][0], keys[t][1]))
    z = tags.index(_XB)
    tags = tags[z:] + tags[:z]
    if tags[1] >= 2 and tags[2] == _XF:
        return (1 if tags[1] == _YB else -1, tags[1])
    return None


def _events(surface, x: NormalCurve, y: NormalCurve):
    """All forced crossings between x and y as (i, j, sign, inside_tag)."""
    if x.surface is not surface or y.surface is not surface:
        raise InternalConsistencyError("curves live on a different surface")
    wx, wy = x.word, y.word
    Lx, Ly = len(wx), len(wy)
    tx, ty = x.transits(), y.transits()
    bound = Lx + Ly + 2
    by_vertex = defaultdict(list)
    for j, t in enumerate(ty):
        by_vertex[t[0]].append(j)
    out = []
    for i, t in enumerate(tx):
        for j in by_vertex.get(t[0], ()):
            ev = _pair_event(surface, wx, Lx, tx, i, wy, Ly, ty, j, bound)
            if ev is not None:
                out.append((i, j, ev[0], ev[1]))
    return out


def _primitive_root(word):
    """Smallest rotation period; returns (root, power)."""
    L = len(word)
    for p in range(1, L + 1):
        if L % p:
            continue
        if word[p:] + word[:p] == word:
            return word[:p], L // p
    return word, 1


def _same_unoriented_class(a: NormalCurve, b: NormalCurve) -> bool:
    return a.unoriented_canonical() == b.unoriented_canonical()


def self_intersection(x: NormalCurve) -> int:
    """Minimal self-crossing number of the class."""
    if x._self_int is not None:
        return x._self_int
    root, power = _primitive_root(x.word)
    if power > 1:
        base = self_intersection(NormalCurve(x.surface, root, reduce=False))
        x._self_int = power * power * base + (power - 1)
        return x._self_int
    events = _events(x.surface, x, x)
    crossings = sum(1 for (i, j, _, _) in events if i != j)
    if crossings % 2:
        raise InternalConsistencyError("self-crossing events must pair up")
    x._self_int = crossings // 2
    return x._self_int


def geometric_intersection(x: NormalCurve, y: NormalCurve) -> int:
    """Minimal transverse intersection number of the two classes."""
    rx, px = _primitive_root(x.word)
    ry, py = _primitive_root(y.word)
    bx = NormalCurve(x.surface, rx, reduce=False) if px > 1 else x
    by = NormalCurve(y.surface, ry, reduce=False) if py > 1 else y
    if _same_unoriented_class(bx, by):
        return px * py * 2 * self_intersection(bx)
    return px * py * len(_events(x.surface, bx, by))


def signed_intersection(x: NormalCurve, y: NormalCurve) -> int:
    """Algebraic intersection number (equals the homological pairing)."""
    rx, px = _primitive_root(x.word)
    ry, py = _primitive_root(y.word)
    bx = NormalCurve(x.surface, rx, reduce=False) if px > 1 else x
    by = NormalCurve(y.surface, ry, reduce=False) if py > 1 else y
    if _same_unoriented_class(bx, by):
        return 0
    total = sum(sign for (_, _, sign, _) in _events(x.surface, bx, by))
    return px * py * total


def traverses_band(x: NormalCurve, position: int) -> int:
    """How often the reduced word runs through the band at a word position.

    Zero certifies disjointness from every transversal arc of that band.
    """
    return x.traverses(position)


# ---------------------------------------------------------------------------
# Dehn twists
# ---------------------------------------------------------------------------


def _insertion_order_key(surface, x: NormalCurve, core: NormalCurve, bound):
    """Comparator ordering same-transit crossings along x's chord."""
    slot = surface.end_slot
    tx = x.transits()
    tc = core.transits()
    wc, Lc = core.word, len(core.word)

    def germ_of(event):
        _, j, _, tag = event
        return (wc, Lc, j, tag == _YF)

    def end_of(event):
        _, j, _, tag = event
        return tc[j][2] if tag == _YF else tc[j][1]

    def cmp(e1, e2):
        if e1[0] != e2[0]:
            return -1 if e1[0] < e2[0] else 1
        base = slot[tx[e1[0]][1]]
        v = tx[e1[0]][0]
        ring_len = len(surface.vertex_slots[v])
        end1, end2 = end_of(e1), end_of(e2)
        if end1 != end2:
            n1 = (slot[end1] - base) % ring_len
            n2 = (slot[end2] - base) % ring_len
            return -1 if n1 < n2 else 1
        return _compare_germs(surface, germ_of(e1), germ_of(e2), bound)

    return functools.cmp_to_key(cmp)


def dehn_twist(factor: TwistFactor, x: NormalCurve) -> NormalCurve:
    """Image of x under the twist; computed in minimal position.

    At every forced crossing an oriented copy of the core is spliced into
    x, the orientation given by the crossing sign and handedness, then the
    word is reduced.
    """
    core = factor.core
    surface = x.surface
    if core.surface is not surface:
        raise NonEmbeddedCore("core and curve live on different surfaces")
    if _same_unoriented_class(x, core):
        return x
    events = _events(surface, x, core)
    if not events:
        return x
    bound = len(x.word) + len(core.word) + 2
    events.sort(key=_insertion_order_key(surface, x, core, bound))
    hand = RIGHT_HANDED_SIGN if factor.right else -RIGHT_HANDED_SIGN
    wx, wc = x.word, core.word
    out: list[int] = []
    prev = 0
    for i, j, sign, _tag in events:
        out.extend(wx[prev:i])
        rotated = wc[j:] + wc[:j]
        if sign * hand > 0:
            out.extend(rotated)
        else:
            out.extend(-t for t in reversed(rotated))
        prev = i
    out.extend(wx[prev:])
    return NormalCurve(surface, out, reduce=True)


def _twist_factors(surface: FatGraphSurface):
    if surface._twist_cache is None:
        factors = []
        for idx in surface.twist_ordering:
            rect = surface.rectangles[idx]
            factors.append(TwistFactor(curve_from_rectangle(surface, rect), right=True))
        surface._twist_cache = tuple(factors)
    return surface._twist_cache


def apply_monodromy(surface: FatGraphSurface, x: NormalCurve, power: int = 1) -> NormalCurve:
    """Apply the full ordered product of right-handed rectangle twists."""
    if power < 0:
        raise ValueError("power must be non-negative; invert via left twists instead")
    factors = _twist_factors(surface)
    for _ in range(power):
        for f in factors:
            x = dehn_twist(f, x)
    return x


def apply_inverse_monodromy(
    surface: FatGraphSurface, x: NormalCurve, power: int = 1
) -> NormalCurve:
    """Apply the inverse monodromy (left twists in the reverse order)."""
    factors = _twist_factors(surface)
    inverse = [TwistFactor(f.core, right=False) for f in reversed(factors)]
    for _ in range(power):
        for f in inverse:
            x = dehn_twist(f, x)
    return x
