"""Bounded checkers for the structural axioms of pairing operations.

Three families of checks:

* translation equivariance: T(x+z, y+z) = T(x, y) + z on a finite box;
* conditional monotonicity: every slice of T is monotone in both arguments
  under its factor's ordering, and each factor's output ignores later
  coordinates;
* exclusivity: for a finite set A and base point z there is a pair
  x, y in A whose two cross values T(x, z-y), T(y, z-x) escape the image
  sets of A minus one point, and avoid the image of A minus both.

All quantifiers over the lattice are truncated to explicit boxes and every
report records the box it used, so a pass is a statement about that box
and nothing more. Searches scan in deterministic lexicographic order and
return the first hit, which keeps reports reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .lattice import (
    Decomposition,
    Ordering,
    Point,
    add,
    box_points,
    compare,
    sort_points,
    sub,
)
from .pairing import PairingOp, SliceOp, apply, conditional_slice


@dataclass(frozen=True)
class TranslationReport:
    ok: bool
    box_radius: int
    shift_radius: int
    witness: tuple[Point, Point, Point] | None = None  # (x, y, z) with T(x+z,y+z) != T(x,y)+z


def check_translation_equivariance(
    op: PairingOp, dim: int, box_radius: int, shift_radius: int
) -> TranslationReport:
    """Exhaustively verify T(x+z, y+z) = T(x, y) + z over box and shifts."""
    if box_radius < 0 or shift_radius < 0:
        raise ValueError("radii must be >= 0")
    pts = list(box_points(dim, box_radius))
    shifts = list(box_points(dim, shift_radius))
    for x in pts:
        for y in pts:
            base = apply(op, x, y)
            for z in shifts:
                if apply(op, add(x, z), add(y, z)) != add(base, z):
                    return TranslationReport(False, box_radius, shift_radius, (x, y, z))
    return TranslationReport(True, box_radius, shift_radius)


@dataclass(frozen=True)
class MonotonicityWitness:
    factor: int
    prefixes: tuple[Point, Point]
    quadruple: tuple[Point, Point, Point, Point]  # x1, x2, y1, y2
    outputs: tuple[Point, Point]  # slice(x1,y1), slice(x2,y2)


@dataclass(frozen=True)
class DependenceWitness:
    factor: int
    pairs: tuple[tuple[Point, Point], tuple[Point, Point]]  # two (x, y) pairs
    outputs: tuple[Point, Point]


@dataclass(frozen=True)
class MonotonicityReport:
    ok: bool
    box_radius: int
    monotonicity_witness: MonotonicityWitness | None = None
    dependence_witness: DependenceWitness | None = None


def check_monotonicity(
    op: PairingOp, d: Decomposition, box_radius: int
) -> MonotonicityReport:
    """Bounded check that op is monotone factor by factor.

    For each factor i, each in-box pair of prefixes (a, b), and each in-box
    quadruple with x1 <= x2 and y1 <= y2 under the factor's ordering, the
    slice outputs must satisfy slice(x1, y1) <= slice(x2, y2). Monotonicity
    is asserted with the non-strict relation. The check also verifies that
    factor i of the output never changes when coordinates of later factors
    vary inside the box.
    """
    dep = _check_dependence(op, d, box_radius)
    if dep is not None:
        return MonotonicityReport(False, box_radius, dependence_witness=dep)
    for i in range(1, d.factor_count + 1):
        order = d.factor_order(i)
        start, stop = d.span(i)
        factor_pts = list(box_points(stop - start, box_radius))
        prefix_pts = list(box_points(start, box_radius))
        nonstrict = [
            (p, q) for p in factor_pts for q in factor_pts if compare(order, p, q) <= 0
        ]
        for a in prefix_pts:
            for b in prefix_pts:
                sl = conditional_slice(op, d, i, a, b)
                for x1, x2 in nonstrict:
                    for y1, y2 in nonstrict:
                        lo, hi = sl(x1, y1), sl(x2, y2)
                        if compare(order, lo, hi) > 0:
                            return MonotonicityReport(
                                False,
                                box_radius,
                                monotonicity_witness=MonotonicityWitness(
                                    i, (a, b), (x1, x2, y1, y2), (lo, hi)
                                ),
                            )
    return MonotonicityReport(True, box_radius)


def _check_dependence(
    op: PairingOp, d: Decomposition, box_radius: int
) -> DependenceWitness | None:
    """Find factor outputs that illegally read later coordinates, if any."""
    pts = list(box_points(d.dimension, box_radius))
    for i in range(1, d.factor_count + 1):
        start, stop = d.span(i)
        seen: dict[tuple[Point, Point], tuple[Point, Point, Point]] = {}
        for x in pts:
            for y in pts:
                key = (x[:stop], y[:stop])
                out = apply(op, x, y)[start:stop]
                prev = seen.get(key)
                if prev is None:
                    seen[key] = (out, x, y)
                elif prev[0] != out:
                    return DependenceWitness(i, ((prev[1], prev[2]), (x, y)), (prev[0], out))
    return None


@dataclass(frozen=True)
class PairDiagnostics:
    """Evaluation of the exclusivity conditions for one candidate pair.

    ``images`` are the sets T(A1, z-A1), T(A2, z-A2), T(A3, z-A3) computed
    over ordered pairs, with A1 = A minus x, A2 = A minus y, A3 = A minus
    both. ``escapes`` records, per i in {1, 2}, whether the cross values
    are not all contained in the i-th image set; ``disjoint`` whether they
    avoid the third.
    """

    pair: tuple[Point, Point]
    cross: tuple[Point, Point]  # T(x, z-y), T(y, z-x)
    images: tuple[frozenset[Point], frozenset[Point], frozenset[Point]]
    escapes: tuple[bool, bool]
    disjoint: bool

    @property
    def ok(self) -> bool:
        return self.escapes[0] and self.escapes[1] and self.disjoint


def image_set(op: SliceOp, points: Iterable[Point], z: Point) -> frozenset[Point]:
    """{T(u, z-v) : u, v in points}, over ordered pairs including u = v."""
    pts = list(points)
    return frozenset(op(u, sub(z, v)) for u in pts for v in pts)


def evaluate_pair(
    op: SliceOp, points: Sequence[Point], z: Point, x: Point, y: Point
) -> PairDiagnostics:
    """Diagnostics of the exclusivity conditions for the ordered pair (x, y)."""
    rest: list[Point] = [p for p in points if p != x and p != y]
    a1 = rest + [y]
    a2 = rest + [x]
    cross = (op(x, sub(z, y)), op(y, sub(z, x)))
    cross_set = frozenset(cross)
    img1 = image_set(op, a1, z)
    img2 = image_set(op, a2, z)
    img3 = image_set(op, rest, z)
    return PairDiagnostics(
        pair=(x, y),
        cross=cross,
        images=(img1, img2, img3),
        escapes=(not cross_set <= img1, not cross_set <= img2),
        disjoint=not (cross_set & img3),
    )


@dataclass(frozen=True)
class ExclusivityReport:
    """Outcome of the exclusivity check for one (A, z) instance.

    On success, ``witness``/``witness_diagnostics`` hold the first passing
    pair in lexicographic scan order. On violation, ``failures`` holds the
    diagnostics of every distinct ordered pair, each failing (the report is
    a complete demonstration, not a sample).
    """

    exclusive: bool
    points: tuple[Point, ...]
    z: Point
    witness: tuple[Point, Point] | None = None
    witness_diagnostics: PairDiagnostics | None = None
    failures: tuple[PairDiagnostics, ...] = ()


def check_exclusive(op: SliceOp, points: Iterable[Point], z: Point) -> ExclusivityReport:
    """Decide the exclusivity conditions for the instance (A, z) by enumeration."""
    pts = sorted(set(map(tuple, points)))
    if len(pts) < 2:
        raise ValueError("exclusivity needs a set with at least two elements")
    failures: list[PairDiagnostics] = []
    for x in pts:
        for y in pts:
            if x == y:
                continue
            diag = evaluate_pair(op, pts, z, x, y)
            if diag.ok:
                return ExclusivityReport(True, tuple(pts), z, (x, y), diag)
            failures.append(diag)
    return ExclusivityReport(False, tuple(pts), z, failures=tuple(failures))


@dataclass(frozen=True)
class SearchReport:
    """First violation found by a bounded exclusivity sweep, or a pass.

    ``checked`` counts (A, z) instances examined; the box parameters make
    the quantifier truncation explicit.
    """

    ok: bool
    box_radius: int
    max_set_size: int
    z_radius: int
    checked: int
    violation: ExclusivityReport | None = None


def exclusivity_search(
    op: SliceOp, box_radius: int, max_set_size: int, z_radius: int
) -> SearchReport:
    """Scan all A in the box with 2 <= |A| <= max_set_size and all z in the
    z-box, smallest sets first, each in lexicographic order; return the
    first violating instance."""
    if max_set_size < 2:
        raise ValueError("max_set_size must be >= 2")
    pts = sorted(box_points(op.dim, box_radius))
    zs = list(box_points(op.dim, z_radius))
    checked = 0
    for size in range(2, max_set_size + 1):
        for subset in itertools.combinations(pts, size):
            for z in zs:
                checked += 1
                report = check_exclusive(op, subset, z)
                if not report.exclusive:
                    return SearchReport(
                        False, box_radius, max_set_size, z_radius, checked, report
                    )
    return SearchReport(True, box_radius, max_set_size, z_radius, checked)


@dataclass(frozen=True)
class WitnessResult:
    pair: tuple[Point, Point]
    verified: bool
    diagnostics: PairDiagnostics


def monotone_witness_pair(
    op: SliceOp, order: Ordering, points: Iterable[Point], z: Point
) -> WitnessResult:
    """The (min A, max A) witness for monotone slices, independently re-verified.

    For translation-equivariant, slice-monotone operations the extremes of
    A under the ordering always satisfy the exclusivity conditions; this
    returns that pair but trusts nothing: the conditions are re-derived by
    enumeration and a failure is reported in the result rather than
    silently accepted.
    """
    pts = sorted(set(map(tuple, points)))
    if len(pts) < 2:
        raise ValueError("witness pair needs a set with at least two elements")
    ordered = sort_points(order, pts)
    x, y = ordered[0], ordered[-1]
    diag = evaluate_pair(op, pts, z, x, y)
    return WitnessResult((x, y), diag.ok, diag)


@dataclass(frozen=True)
class SliceExclusivityReport:
    ok: bool
    box_radius: int
    max_set_size: int
    z_radius: int
    factor: int | None = None
    prefixes: tuple[Point, Point] | None = None
    violation: ExclusivityReport | None = None


def check_slice_exclusivity(
    op: PairingOp,
    d: Decomposition,
    box_radius: int,
    max_set_size: int,
    z_radius: int | None = None,
) -> SliceExclusivityReport:
    """Run the bounded exclusivity sweep on every conditional slice of op.

    Quantifies factor index and in-box prefix pairs exhaustively; the first
    violating slice instance is returned with its location.
    """
    zr = box_radius if z_radius is None else z_radius
    for i in range(1, d.factor_count + 1):
        start, _ = d.span(i)
        prefix_pts = list(box_points(start, box_radius))
        for a in prefix_pts:
            for b in prefix_pts:
                sl = conditional_slice(op, d, i, a, b)
                result = exclusivity_search(sl, box_radius, max_set_size, zr)
                if not result.ok:
                    return SliceExclusivityReport(
                        False, box_radius, max_set_size, zr, i, (a, b), result.violation
                    )
    return SliceExclusivityReport(True, box_radius, max_set_size, zr)
