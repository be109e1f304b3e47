"""Exact integer Laurent polynomials and Alexander polynomial machinery.

Everything here is exact: integer coefficients, Fraction-free solving,
no floating point.  Alexander polynomials are only ever defined up to a
unit +-t^k, so most comparisons go through ``normalized()``, which picks
the representative with lowest exponent 0 and positive constant term.
"""

from __future__ import annotations

import dataclasses
from math import gcd
from typing import Iterable, Mapping, Optional

from .errors import DisconnectedWord, NotCoprime, NotDivisible, ZeroPolynomial


class LaurentPolynomial:
    """Sparse Laurent polynomial with integer coefficients.

    Stored as a dict exponent -> nonzero coefficient.  Instances are
    immutable; arithmetic returns new objects.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        d = {}
        for e, c in items:
            if c:
                d[int(e)] = d.get(int(e), 0) + int(c)
                if not d[int(e)]:
                    del d[int(e)]
        self.coeffs = d

    @classmethod
    def term(cls, coeff: int, exp: int = 0) -> "LaurentPolynomial":
        return cls({exp: coeff})

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return cls({0: 1})

    @classmethod
    def t(cls) -> "LaurentPolynomial":
        return cls({1: 1})

    @classmethod
    def from_dense(cls, coeffs: Iterable[int], min_exp: int = 0) -> "LaurentPolynomial":
        return cls({min_exp + i: c for i, c in enumerate(coeffs)})

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no degree")
        return max(self.coeffs)

    @property
    def min_exp(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no minimal exponent")
        return min(self.coeffs)

    def __getitem__(self, exp: int) -> int:
        return self.coeffs.get(exp, 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPolynomial.term(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other) -> "LaurentPolynomial":
        if isinstance(other, int):
            other = LaurentPolynomial.term(other)
        d = dict(self.coeffs)
        for e, c in other.coeffs.items():
            d[e] = d.get(e, 0) + c
            if not d[e]:
                del d[e]
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out.coeffs = d
        return out

    def __neg__(self) -> "LaurentPolynomial":
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out.coeffs = {e: -c for e, c in self.coeffs.items()}
        return out

    def __sub__(self, other) -> "LaurentPolynomial":
        if isinstance(other, int):
            other = LaurentPolynomial.term(other)
        return self + (-other)

    def __mul__(self, other) -> "LaurentPolynomial":
        if isinstance(other, int):
            other = LaurentPolynomial.term(other)
        d = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                d[e] = d.get(e, 0) + c1 * c2
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out.coeffs = {e: c for e, c in d.items() if c}
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPolynomial":
        if n < 0:
            raise ValueError("negative powers are not Laurent-polynomial valued here")
        acc = LaurentPolynomial.one()
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by t^k."""
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out.coeffs = {e + k: c for e, c in self.coeffs.items()}
        return out

    def reciprocal(self) -> "LaurentPolynomial":
        """Substitute t -> 1/t."""
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out.coeffs = {-e: c for e, c in self.coeffs.items()}
        return out

    def normalized(self) -> "LaurentPolynomial":
        """Canonical representative up to units: min exponent 0, constant term > 0."""
        if not self.coeffs:
            return LaurentPolynomial()
        m = self.min_exp
        sign = 1 if self.coeffs[m] > 0 else -1
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out.coeffs = {e - m: sign * c for e, c in self.coeffs.items()}
        return out

    def unit_equal(self, other: "LaurentPolynomial") -> bool:
        """Equality up to multiplication by +-t^k."""
        return self.normalized() == other.normalized()

    def dense(self) -> list[int]:
        """Coefficient list of the normalized representative, constant term first."""
        p = self.normalized()
        if not p.coeffs:
            return [0]
        return [p[e] for e in range(0, p.degree + 1)]

    def evaluate(self, value: int) -> int:
        if any(e < 0 for e in self.coeffs) and value in (0,):
            raise ZeroDivisionError("negative exponents at 0")
        return sum(c * value**e for e, c in self.coeffs.items())

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in sorted(self.coeffs.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "LaurentPolynomial":
        return cls({int(e): int(c) for e, c in data.items()})

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            mag = "" if abs(c) == 1 and e != 0 else str(abs(c))
            if e == 0:
                var = ""
            elif e == 1:
                var = "t"
            else:
                var = f"t^{e}"
            body = (mag + ("*" if mag and var else "") + var) or str(abs(c))
            parts.append(("-" if c < 0 else "+") + body)
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


def divide_exact(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    """Exact quotient a/b in the Laurent ring; raises NotDivisible on remainder."""
    if b.is_zero():
        raise ZeroPolynomial("division by the zero polynomial")
    if a.is_zero():
        return LaurentPolynomial()
    # Shift both to ordinary polynomials and long-divide from the top.
    sa, sb = a.min_exp, b.min_exp
    rem = dict(a.shift(-sa).coeffs)
    bb = b.shift(-sb)
    db = bb.degree
    lead = bb[db]
    quot: dict[int, int] = {}
    while rem:
        dr = max(rem)
        if dr < db:
            break
        head = rem[dr]
        if head % lead:
            break
        q = head // lead
        quot[dr - db] = q
        for e, c in bb.coeffs.items():
            k = e + dr - db
            rem[k] = rem.get(k, 0) - q * c
            if not rem[k]:
                del rem[k]
    if rem:
        raise NotDivisible(
            "remainder is nonzero", remainder=LaurentPolynomial(rem).shift(sa)
        )
    return LaurentPolynomial(quot).shift(sa - sb)


def cyclotomic_like(n: int) -> LaurentPolynomial:
    """t^n - 1."""
    return LaurentPolynomial({n: 1, 0: -1})


def torus_alexander(p: int, q: int) -> LaurentPolynomial:
    """Alexander polynomial of the (p, q) torus knot, normalized.

    Computed as the exact quotient (t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1)).
    """
    if p < 1 or q < 1:
        raise NotCoprime("torus parameters must be positive")
    if gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) != 1: the closure is a link, not a knot")
    num = cyclotomic_like(p * q) * cyclotomic_like(1)
    den = cyclotomic_like(p) * cyclotomic_like(q)
    return divide_exact(num, den).normalized()


# ---------------------------------------------------------------------------
# Reduced Burau representation
# ---------------------------------------------------------------------------


def _reduced_burau_generator(i: int, n: int) -> list[list[LaurentPolynomial]]:
    """Matrix of the reduced Burau image of the i-th generator in B_n.

    Acts on the basis f_1..f_{n-1} (differences of the unreduced basis) by
    f_{i-1} -> f_{i-1} + t f_i,  f_i -> -t f_i,  f_{i+1} -> f_i + f_{i+1}.
    """
    one = LaurentPolynomial.one()
    zero = LaurentPolynomial()
    t = LaurentPolynomial.t()
    m = [[one if r == c else zero for c in range(n - 1)] for r in range(n - 1)]
    g = i - 1
    m[g][g] = -t
    if g - 1 >= 0:
        m[g][g - 1] = t
    if g + 1 <= n - 2:
        m[g][g + 1] = one
    return m


def _mat_mul(a, b):
    n = len(a)
    out = []
    for r in range(n):
        row = []
        ar = a[r]
        for c in range(n):
            acc = LaurentPolynomial()
            for k in range(n):
                if ar[k].coeffs and b[k][c].coeffs:
                    acc = acc + ar[k] * b[k][c]
            row.append(acc)
        out.append(row)
    return out


def _poly_det(matrix) -> LaurentPolynomial:
    """Fraction-free Bareiss determinant over the Laurent ring."""
    n = len(matrix)
    if n == 0:
        return LaurentPolynomial.one()
    m = [row[:] for row in matrix]
    sign = 1
    prev = LaurentPolynomial.one()
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return LaurentPolynomial()
        for r in range(k + 1, n):
            for c in range(k + 1, n):
                num = m[k][k] * m[r][c] - m[r][k] * m[k][c]
                m[r][c] = divide_exact(num, prev)
            m[r][k] = LaurentPolynomial()
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def reduced_burau(word) -> list[list[LaurentPolynomial]]:
    """Reduced Burau matrix of a positive braid word (letters applied in order)."""
    n = word.strands
    one = LaurentPolynomial.one()
    zero = LaurentPolynomial()
    acc = [[one if r == c else zero for c in range(n - 1)] for r in range(n - 1)]
    for letter in word.letters:
        acc = _mat_mul(acc, _reduced_burau_generator(letter, n))
    return acc


def burau_alexander(word) -> LaurentPolynomial:
    """Alexander polynomial of the closure via the reduced Burau determinant.

    Uses det(rho(word) - I) = +-t^k (1 + t + ... + t^{s-1}) Delta and
    normalizes the quotient.  Independent of the monodromy route: it never
    touches the fibre surface.
    """
    if not word.is_connected:
        raise DisconnectedWord("split closures have no single Alexander quotient here")
    s = word.strands
    if s == 1:
        return LaurentPolynomial.one()
    m = reduced_burau(word)
    one = LaurentPolynomial.one()
    for i in range(s - 1):
        m[i][i] = m[i][i] - one
    det = _poly_det(m)
    if det.is_zero():
        # Unknots on >=2 strands: det vanishes only when Delta is a unit.
        return LaurentPolynomial.one()
    denom = LaurentPolynomial({e: 1 for e in range(s)})
    return divide_exact(det, denom).normalized()


# ---------------------------------------------------------------------------
# Plumbing obstruction solver
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class HironakaSolution:
    """Witness for (t+1)*Delta = t^n P(t) + eps t^d P(1/t) with integral P."""

    n: int
    epsilon: int
    d: int
    P: LaurentPolynomial
    attained_degree: int

    def verify(self, delta: LaurentPolynomial) -> bool:
        q = (LaurentPolynomial({1: 1, 0: 1}) * delta.normalized()).normalized()
        rhs = self.P.shift(self.n) + self.epsilon * self.P.reciprocal().shift(self.d)
        return q == rhs


def _solve_qcoeffs(q: list[int], n: int, epsilon: int) -> Optional[LaurentPolynomial]:
    """Solve q_j = p_{j-n}[n<=j<=n+d] + eps p_{d-j}[0<=j<=d], d = deg q - n.

    Returns an integral P of degree <= d, or None.  The system decouples into
    directly determined coefficients plus singular 2x2 pairs in the overlap,
    so feasibility reduces to coefficient conditions.
    """
    big_n = len(q) - 1
    d = big_n - n
    if d < 0:
        return None
    p = [0] * (d + 1)
    if n > d:
        # Disjoint supports: both windows determine P outright.
        for k in range(d + 1):
            p[k] = q[n + k]
        for j in range(d + 1):
            if epsilon * p[d - j] != q[j]:
                return None
        for j in range(d + 1, n):
            if q[j] != 0:
                return None
        return LaurentPolynomial({k: p[k] for k in range(d + 1)})
    # Overlapping windows: pairs (k, m-k) with m = d - n are coupled by a
    # singular block, solvable iff q is eps-symmetric across the overlap.
    m = d - n
    for k in range(m + 1, d + 1):
        p[k] = q[n + k]
        if epsilon * q[d - k] != p[k]:
            return None
    for k in range(0, m + 1):
        kk = m - k
        if q[n + k] != epsilon * q[n + kk]:
            return None
    done = [False] * (m + 1)
    for k in range(0, m + 1):
        if done[k]:
            continue
        kk = m - k
        if k == kk:
            val = q[n + k]
            if epsilon == 1:
                if val % 2:
                    return None
                p[k] = val // 2
            else:
                if val != 0:
                    return None
                p[k] = 0
        else:
            p[k] = q[n + k]
            p[kk] = 0
        done[k] = done[kk] = True
    return LaurentPolynomial({k: p[k] for k in range(d + 1)})


def hironaka_solve(
    delta: LaurentPolynomial, n: int, epsilon: int
) -> Optional[HironakaSolution]:
    """Find integral P with (t+1)*Delta = t^n P(t) + eps t^d P(1/t), if any.

    Delta is taken up to units.  Replacing Delta by -Delta flips P, and
    t^k-shifts realign the exponent windows, so normalizing Q = (t+1)*Delta
    to minimal exponent 0 with positive constant term covers every unit
    representative at once.  Every returned solution re-substitutes exactly.
    """
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be +1 or -1")
    if delta.is_zero():
        raise ZeroPolynomial("the zero polynomial is not an Alexander polynomial")
    base = delta.normalized()
    tp1 = LaurentPolynomial({1: 1, 0: 1})
    q_poly = (tp1 * base).normalized()
    deg_q = q_poly.degree
    if n > deg_q or n < 0:
        return None
    q = [q_poly[e] for e in range(deg_q + 1)]
    p = _solve_qcoeffs(q, n, epsilon)
    if p is None:
        return None
    d = deg_q - n
    rhs = p.shift(n) + epsilon * p.reciprocal().shift(d)
    if rhs != q_poly:
        return None
    attained = p.degree if not p.is_zero() else 0
    return HironakaSolution(n=n, epsilon=epsilon, d=d, P=p, attained_degree=attained)


@dataclasses.dataclass(frozen=True)
class FeasibilityRow:
    n: int
    epsilon: int
    feasible: bool
    attained_degree: Optional[int] = None
    degree_budget: Optional[int] = None


def hironaka_max_n(
    delta: LaurentPolynomial,
) -> tuple[int, list[FeasibilityRow]]:
    """Largest n admitting a solution, with the full (n, eps) feasibility table.

    The published plumbing bound is n_max - 1: an n-chain summand forces
    feasibility at n + 1.
    """
    if delta.is_zero():
        raise ZeroPolynomial("the zero polynomial is not an Alexander polynomial")
    q_deg = ((LaurentPolynomial({1: 1, 0: 1}) * delta).normalized()).degree
    table = []
    n_max = -1
    for n in range(q_deg + 1):
        for eps in (1, -1):
            sol = hironaka_solve(delta, n, eps)
            if sol is None:
                table.append(FeasibilityRow(n=n, epsilon=eps, feasible=False))
            else:
                table.append(
                    FeasibilityRow(
                        n=n,
                        epsilon=eps,
                        feasible=True,
                        attained_degree=sol.attained_degree,
                        degree_budget=sol.d,
                    )
                )
                n_max = max(n_max, n)
    if n_max < 0:
        raise ZeroPolynomial("no feasible decomposition at any n; malformed input")
    return n_max, table
