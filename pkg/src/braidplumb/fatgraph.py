"""Ribbon-graph spine of the fibre surface of a positive braid.

The surface of a connected positive word has one disk per strand and one
band per crossing; it deformation-retracts onto the brick diagram.  As a
fatgraph: vertex v = strand v, edge j = crossing j joining strands
word[j] and word[j]+1, and the edge-ends at each vertex are cyclically
ordered by word position.  With that structure the boundary cycles of the
fatgraph are exactly the components of the braid closure, which is checked
at build time.

Half-edge encoding: crossing j has a lower end 2j (on strand word[j]) and
an upper end 2j+1 (on strand word[j]+1).  An oriented traversal of edge j
is the signed integer +(j+1) (upward, lower strand to upper) or -(j+1).
"""

from __future__ import annotations

import dataclasses

from .braidwords import BraidWord
from .errors import DisconnectedWord, InternalConsistencyError


@dataclasses.dataclass(frozen=True)
class RectangleCurve:
    """Two consecutive crossings in one column; bounds an embedded circle."""

    column: int
    top: int  # word position of the upper crossing
    bottom: int  # word position of the lower crossing

    def to_json(self):
        return {"column": self.column, "top": self.top, "bottom": self.bottom}


@dataclasses.dataclass(frozen=True)
class BrickDiagram:
    """Column occupancy of a positive word plus its rectangles."""

    columns: tuple[tuple[int, ...], ...]  # columns[i-1] = positions of generator i
    rectangles: tuple[RectangleCurve, ...]

    @classmethod
    def from_word(cls, word: BraidWord) -> "BrickDiagram":
        cols: list[list[int]] = [[] for _ in range(word.strands - 1)]
        for pos, g in enumerate(word.letters):
            cols[g - 1].append(pos)
        rects = []
        for i, col in enumerate(cols, start=1):
            for a, b in zip(col, col[1:]):
                rects.append(RectangleCurve(column=i, top=a, bottom=b))
        return cls(tuple(tuple(c) for c in cols), tuple(rects))


class FatGraphSurface:
    """Fibre surface of a connected positive braid word, as a fatgraph.

    Exposes the brick diagram, the rectangle basis of the cycle space, the
    plumbing order of the monodromy twists, and fast half-edge lookups for
    the curve engine.
    """

    __slots__ = (
        "word",
        "brick",
        "rectangles",
        "rect_index",
        "twist_ordering",
        "vertex_slots",
        "end_vertex",
        "end_slot",
        "boundary_count",
        "_rect_words",
        "_twist_cache",
    )

    def __init__(self, word: BraidWord):
        if not word.is_connected:
            raise DisconnectedWord("the fibre surface needs every generator present")
        self.word = word
        self.brick = BrickDiagram.from_word(word)
        self.rectangles = self.brick.rectangles
        self.rect_index = {(r.column, r.top): i for i, r in enumerate(self.rectangles)}

        # Action order of the monodromy twists: columns right to left,
        # bottom to top inside each column; the first entry acts first.
        order = []
        for col in range(word.strands - 1, 0, -1):
            col_rects = [i for i, r in enumerate(self.rectangles) if r.column == col]
            col_rects.sort(key=lambda i: -self.rectangles[i].top)
            order.extend(col_rects)
        self.twist_ordering = tuple(order)

        s, letters = word.strands, word.letters
        slots: list[list[int]] = [[] for _ in range(s + 1)]
        for j, g in enumerate(letters):
            slots[g].append(2 * j)
            slots[g + 1].append(2 * j + 1)
        self.vertex_slots = tuple(tuple(x) for x in slots)
        end_vertex = [0] * (2 * len(letters))
        end_slot = [0] * (2 * len(letters))
        for v in range(1, s + 1):
            for idx, end in enumerate(self.vertex_slots[v]):
                end_vertex[end] = v
                end_slot[end] = idx
        self.end_vertex = tuple(end_vertex)
        self.end_slot = tuple(end_slot)
        self.boundary_count = self._trace_boundary()
        if self.boundary_count != word.components:
            raise InternalConsistencyError(
                "fatgraph boundary count disagrees with the closure permutation"
            )
        self._rect_words: dict[int, tuple[int, int]] = {}
        self._twist_cache = None  # filled lazily by the curve engine

    # -- basic invariants ---------------------------------------------------

    @property
    def euler_characteristic(self) -> int:
        return self.word.strands - self.word.length

    @property
    def b1(self) -> int:
        return self.word.b1

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic - self.boundary_count) // 2

    def _trace_boundary(self) -> int:
        """Count face orbits of (cyclic successor at vertex) o (other end)."""
        n_ends = 2 * self.word.length
        succ = [0] * n_ends
        for v in range(1, self.word.strands + 1):
            ring = self.vertex_slots[v]
            k = len(ring)
            for idx, end in enumerate(ring):
                succ[end] = ring[(idx + 1) % k]
        seen = [False] * n_ends
        cycles = 0
        for start in range(n_ends):
            if seen[start]:
                continue
            cycles += 1
            h = start
            while not seen[h]:
                seen[h] = True
                h = succ[h ^ 1]  # cross the edge, then step around the vertex
        return cycles

    # -- traversal helpers (used heavily by the curve engine) ----------------

    def source_end(self, traversal: int) -> int:
        j = abs(traversal) - 1
        return 2 * j if traversal > 0 else 2 * j + 1

    def target_end(self, traversal: int) -> int:
        j = abs(traversal) - 1
        return 2 * j + 1 if traversal > 0 else 2 * j

    def rectangle_word(self, rect: RectangleCurve) -> tuple[int, int]:
        """Edge word of the rectangle circle: up through the top crossing,
        back down through the bottom one."""
        idx = self.rect_index[(rect.column, rect.top)]
        cached = self._rect_words.get(idx)
        if cached is None:
            cached = (rect.top + 1, -(rect.bottom + 1))
            self._rect_words[idx] = cached
        return cached

    def top_left_rectangle(self) -> RectangleCurve:
        """Topmost rectangle of the leftmost column."""
        first_col = self.brick.columns[0]
        return self.rectangles[self.rect_index[(1, first_col[0])]]

    def column_rectangles(self, column: int) -> list[RectangleCurve]:
        return [r for r in self.rectangles if r.column == column]

    def homology_from_edge_counts(self, counts: dict[int, int]) -> tuple[int, ...]:
        """Coordinates of a cycle in the rectangle basis.

        counts maps word position -> net signed traversals.  Within each
        column the rectangle coefficients are the partial sums; a nonzero
        column total means the input was not a cycle.
        """
        coords = [0] * len(self.rectangles)
        for col_i, col in enumerate(self.brick.columns, start=1):
            running = 0
            for a, b in zip(col, col[1:]):
                running += counts.get(a, 0)
                coords[self.rect_index[(col_i, a)]] = running
            total = running + counts.get(col[-1], 0)
            if total != 0:
                raise InternalConsistencyError("edge counts do not form a cycle")
        return tuple(coords)

    def to_json(self):
        return {
            "word": list(self.word.letters),
            "strands": self.word.strands,
            "edges": [
                {"position": j, "generator": g} for j, g in enumerate(self.word.letters)
            ],
            "rectangles": [r.to_json() for r in self.rectangles],
            "boundary_components": self.boundary_count,
        }

    def __repr__(self):
        return (
            f"FatGraphSurface(word=[{self.word.text()}], chi={self.euler_characteristic}, "
            f"boundary={self.boundary_count})"
        )


def build_surface(word: BraidWord) -> FatGraphSurface:
    """Construct the fibre surface spine; raises DisconnectedWord otherwise."""
    return FatGraphSurface(word)
