"""Integer lattice points, total additive orderings, and group decompositions.

Points are plain tuples of ints (rational points: tuples of Fraction), so
they hash, compare structurally, and stay exact. Orderings are the total
additive orderings the rest of the library relies on: the standard order on
a one-dimensional factor, the lexicographic order, and orderings pulled
back through an invertible rational matrix.

Orderings over the whole of a lattice cannot be machine-verified; the
axiom checker here quantifies over an explicit finite box and reports the
box it used, so every "pass" is a bounded statement.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

Point = tuple[int, ...]
RationalPoint = tuple[Fraction, ...]

LESS, EQUAL, GREATER = -1, 0, 1


def add(a: Point, b: Point) -> Point:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def sub(a: Point, b: Point) -> Point:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def neg(a: Point) -> Point:
    return tuple(-x for x in a)


def box_points(dim: int, radius: int) -> Iterator[Point]:
    """All points of [-radius, radius]^dim in lexicographic order."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    return itertools.product(range(-radius, radius + 1), repeat=dim)


@dataclass(frozen=True)
class StandardZ:
    """The usual order on a one-dimensional factor."""

    def compare(self, a: Point, b: Point) -> int:
        if len(a) != 1 or len(b) != 1:
            raise ValueError("standard order applies to 1-dimensional factors only")
        return (a[0] > b[0]) - (a[0] < b[0])


@dataclass(frozen=True)
class Lexicographic:
    """Lexicographic order on tuples of any fixed dimension."""

    def compare(self, a: Point, b: Point) -> int:
        if len(a) != len(b):
            raise ValueError("dimension mismatch")
        return (a > b) - (a < b)


@dataclass(frozen=True)
class LinearComposed:
    """Order a point by the lexicographic order of its image under a matrix.

    The matrix must be square and invertible (checked exactly), so distinct
    points have distinct images and the induced order is total.
    """

    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.matrix)
        if n == 0 or any(len(row) != n for row in self.matrix):
            raise ValueError("matrix must be square and nonempty")
        if _det(self.matrix) == 0:
            raise ValueError("matrix is singular; induced order would not be total")

    @property
    def dimension(self) -> int:
        return len(self.matrix)

    def image(self, p: Sequence[int]) -> RationalPoint:
        if len(p) != len(self.matrix):
            raise ValueError("dimension mismatch")
        return tuple(sum(c * x for c, x in zip(row, p)) for row in self.matrix)

    def compare(self, a: Point, b: Point) -> int:
        ia, ib = self.image(a), self.image(b)
        return (ia > ib) - (ia < ib)


Ordering = StandardZ | Lexicographic | LinearComposed


def _det(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    m = [list(row) for row in matrix]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = Fraction(1) / m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] * inv
            for c in range(col, n):
                m[r][c] -= factor * m[col][c]
    return det


def compare(order: Ordering, a: Point, b: Point) -> int:
    """Compare two points under a total additive ordering.

    Returns LESS (-1), EQUAL (0) or GREATER (1).
    """
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return order.compare(tuple(a), tuple(b))


def order_min(order: Ordering, x: Point, y: Point) -> Point:
    return x if compare(order, x, y) <= 0 else y


def order_max(order: Ordering, x: Point, y: Point) -> Point:
    return y if compare(order, x, y) <= 0 else x


def sort_points(order: Ordering, points: Sequence[Point]) -> list[Point]:
    import functools

    return sorted(points, key=functools.cmp_to_key(lambda a, b: compare(order, a, b)))


@dataclass(frozen=True)
class OrderingAxiomReport:
    """Outcome of the bounded ordering-axiom check.

    ``ok`` is a statement about the recorded box only, never about the
    whole lattice.
    """

    ok: bool
    dimension: int
    box_radius: int
    failed_axiom: str | None = None
    witness: tuple[Point, ...] | None = None


def check_ordering_axioms(
    order: Ordering | Callable[[Point, Point], int],
    dim: int,
    box_radius: int,
) -> OrderingAxiomReport:
    """Exhaustively check order axioms on the box [-box_radius, box_radius]^dim.

    Checks totality and antisymmetry on pairs, transitivity on triples, and
    additivity (x < y implies x+z < y+z) on triples. Accepts a raw compare
    callable so tests can probe deliberately broken orders.
    """
    cmp = order if callable(order) and not hasattr(order, "compare") else (
        lambda a, b: compare(order, a, b)  # type: ignore[arg-type]
    )
    pts = list(box_points(dim, box_radius))

    def fail(axiom: str, *witness: Point) -> OrderingAxiomReport:
        return OrderingAxiomReport(False, dim, box_radius, axiom, tuple(witness))

    for a in pts:
        for b in pts:
            c_ab, c_ba = cmp(a, b), cmp(b, a)
            if c_ab not in (LESS, EQUAL, GREATER):
                return fail("totality", a, b)
            if c_ab != -c_ba:
                return fail("antisymmetry", a, b)
            if (c_ab == EQUAL) != (a == b):
                return fail("equality-is-structural", a, b)
    for a in pts:
        for b in pts:
            if cmp(a, b) > 0:
                continue
            for c in pts:
                if cmp(b, c) <= 0 and cmp(a, c) > 0:
                    return fail("transitivity", a, b, c)
    for a in pts:
        for b in pts:
            if cmp(a, b) != LESS:
                continue
            for z in pts:
                if cmp(add(a, z), add(b, z)) != LESS:
                    return fail("additivity", a, b, z)
    return OrderingAxiomReport(True, dim, box_radius)


@dataclass(frozen=True)
class Decomposition:
    """A direct-sum factorization of the ambient lattice, with one total
    additive ordering per factor.

    ``factors`` lists (dimension, ordering) pairs; factor indices are
    1-based throughout, matching the conditional-slice conventions.
    """

    factors: tuple[tuple[int, Ordering], ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("decomposition needs at least one factor")
        for dim, order in self.factors:
            if dim < 1:
                raise ValueError("factor dimensions must be >= 1")
            if isinstance(order, StandardZ) and dim != 1:
                raise ValueError("standard order requires a 1-dimensional factor")
            if isinstance(order, LinearComposed) and order.dimension != dim:
                raise ValueError("matrix dimension does not match factor dimension")

    @property
    def dimension(self) -> int:
        return sum(dim for dim, _ in self.factors)

    @property
    def factor_count(self) -> int:
        return len(self.factors)

    def factor_dim(self, i: int) -> int:
        self._check_index(i)
        return self.factors[i - 1][0]

    def factor_order(self, i: int) -> Ordering:
        self._check_index(i)
        return self.factors[i - 1][1]

    def span(self, i: int) -> tuple[int, int]:
        """Coordinate range [start, stop) of factor i."""
        self._check_index(i)
        start = sum(dim for dim, _ in self.factors[: i - 1])
        return start, start + self.factors[i - 1][0]

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= len(self.factors):
            raise IndexError(f"factor index {i} out of range 1..{len(self.factors)}")


def standard_decomposition(n: int) -> Decomposition:
    """The cartesian decomposition into n one-dimensional standard factors."""
    return Decomposition(tuple((1, StandardZ()) for _ in range(n)))


def single_factor(n: int, order: Ordering | None = None) -> Decomposition:
    """The whole lattice as one factor (lexicographic order by default)."""
    if order is None:
        order = StandardZ() if n == 1 else Lexicographic()
    return Decomposition(((n, order),))


def project(p: Point, d: Decomposition, i: int) -> Point:
    """Coordinates of p that belong to factor i (1-based)."""
    if len(p) != d.dimension:
        raise ValueError("point dimension does not match decomposition")
    start, stop = d.span(i)
    return tuple(p[start:stop])


def prefix(p: Point, d: Decomposition, i: int) -> Point:
    """Concatenated coordinates of factors 1..i-1 (empty for i=1)."""
    if len(p) != d.dimension:
        raise ValueError("point dimension does not match decomposition")
    start, _ = d.span(i)
    return tuple(p[:start])


def parse_ordering(spec: str) -> Ordering:
    """Parse an ordering name: ``std``, ``lex``, or ``lin:<matrix>``.

    The matrix is row-major with entries ``p/q`` separated by commas and
    rows separated by semicolons, e.g. ``lin:0,1;1,0``.
    """
    from .rational import parse_rational

    s = spec.strip()
    if s == "std":
        return StandardZ()
    if s == "lex":
        return Lexicographic()
    if s.startswith("lin:"):
        body = s[len("lin:"):]
        rows = []
        for row_text in body.split(";"):
            entries = [e for e in row_text.split(",") if e.strip()]
            if not entries:
                raise ValueError(f"empty matrix row in {spec!r}")
            rows.append(tuple(parse_rational(e) for e in entries))
        return LinearComposed(tuple(rows))
    raise ValueError(f"unknown ordering spec {spec!r} (expected std, lex, or lin:<matrix>)")


def format_ordering(order: Ordering) -> str:
    if isinstance(order, StandardZ):
        return "std"
    if isinstance(order, Lexicographic):
        return "lex"
    if isinstance(order, LinearComposed):
        from .rational import format_rational

        rows = ";".join(",".join(format_rational(e) for e in row) for row in order.matrix)
        return f"lin:{rows}"
    raise TypeError(f"not an ordering: {order!r}")
