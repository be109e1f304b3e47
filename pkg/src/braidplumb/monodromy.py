"""Homological shadow of the monodromy: intersection form and its transvections.

The rectangle circles form a basis of the cycle space, the algebraic
intersection numbers assemble into an antisymmetric form J, and each
right-handed twist acts on homology by the transvection
x -> x + sign * <x, r> * r.  The ordered product over the plumbing order is
the homological monodromy; its characteristic polynomial computes the
Alexander polynomial of the fibred closure.
"""

from __future__ import annotations

from .alexpoly import LaurentPolynomial
from .curves import (
    RIGHT_HANDED_SIGN,
    curve_from_rectangle,
    signed_intersection,
)
from .fatgraph import FatGraphSurface


def intersection_form(surface: FatGraphSurface) -> list[list[int]]:
    """Antisymmetric pairing matrix of the rectangle basis."""
    curves = [curve_from_rectangle(surface, r) for r in surface.rectangles]
    n = len(curves)
    j = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            val = signed_intersection(curves[a], curves[b])
            j[a][b] = val
            j[b][a] = -val
    return j


def homological_monodromy(surface: FatGraphSurface) -> list[list[int]]:
    """Matrix of the monodromy on the rectangle basis (columns = images)."""
    j = intersection_form(surface)
    n = len(j)
    cols = []
    for k in range(n):
        v = [0] * n
        v[k] = 1
        for idx in surface.twist_ordering:
            pairing = sum(v[a] * j[a][idx] for a in range(n) if v[a])
            if pairing:
                v[idx] += RIGHT_HANDED_SIGN * pairing
        cols.append(v)
    return [[cols[c][r] for c in range(n)] for r in range(n)]


def charpoly(matrix: list[list[int]]) -> LaurentPolynomial:
    """det(tI - M) by the Faddeev-LeVerrier recursion; exact over the integers."""
    n = len(matrix)
    if n == 0:
        return LaurentPolynomial.one()
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = [row[:] for row in matrix]
    c = 1
    for k in range(1, n + 1):
        if k > 1:
            for i in range(n):
                m[i][i] += c
            m = _int_mat_mul(matrix, m)
        trace = sum(m[i][i] for i in range(n))
        if trace % k:
            raise AssertionError("Faddeev-LeVerrier trace division must be exact")
        c = -trace // k
        coeffs[n - k] = c
    return LaurentPolynomial({e: c for e, c in enumerate(coeffs) if c})


def _int_mat_mul(a, b):
    n = len(a)
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def monodromy_determinant(matrix: list[list[int]]) -> int:
    p = charpoly(matrix)
    n = len(matrix)
    return (-1) ** n * p[0]


def alexander_from_monodromy(surface: FatGraphSurface) -> LaurentPolynomial:
    """Alexander polynomial of the closure as det(tI - H), normalized."""
    h = homological_monodromy(surface)
    return charpoly(h).normalized()
