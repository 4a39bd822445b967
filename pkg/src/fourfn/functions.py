"""Finitely supported functions and the four-function inequality checks.

A SparseFn maps lattice points to positive rationals and is zero off its
finite support. The hypothesis check compares f(x)g(y) against
h(T(x,y))k(x+y-T(x,y)) for every pair of support points (off-support pairs
hold trivially because the left side vanishes), and the conclusion check
compares the products of the four total sums. Both are exact: a verdict is
never subject to tolerance.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .axioms import (
    MonotonicityReport,
    SliceExclusivityReport,
    TranslationReport,
    check_monotonicity,
    check_slice_exclusivity,
    check_translation_equivariance,
)
from .lattice import Decomposition, Point, add, sub
from .pairing import PairingOp, apply, complement
from .rational import sqrt_rational


class SparseFn:
    """A finitely supported function from lattice points to rationals >= 0.

    Zero values are dropped at construction, negative values rejected, so
    the stored entries are exactly the support.
    """

    __slots__ = ("dimension", "_entries")

    def __init__(self, dimension: int, entries: Mapping[Point, Fraction] | None = None):
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        self.dimension = dimension
        clean: dict[Point, Fraction] = {}
        for point, value in (entries or {}).items():
            p = tuple(point)
            if len(p) != dimension:
                raise ValueError(f"point {p} has dimension {len(p)}, expected {dimension}")
            v = Fraction(value)
            if v < 0:
                raise ValueError(f"negative value {v} at {p}")
            if v > 0:
                clean[p] = v
        self._entries = clean

    @classmethod
    def indicator(cls, dimension: int, points: Iterable[Point]) -> "SparseFn":
        return cls(dimension, {tuple(p): Fraction(1) for p in points})

    def __call__(self, point: Point) -> Fraction:
        return self._entries.get(tuple(point), Fraction(0))

    def support(self) -> tuple[Point, ...]:
        return tuple(sorted(self._entries))

    def items(self) -> list[tuple[Point, Fraction]]:
        return sorted(self._entries.items())

    def total(self) -> Fraction:
        return sum(self._entries.values(), Fraction(0))

    def translate(self, shift: Point) -> "SparseFn":
        return SparseFn(self.dimension, {add(p, tuple(shift)): v for p, v in self._entries.items()})

    def scale(self, factor: Fraction) -> "SparseFn":
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return SparseFn(self.dimension, {p: v * factor for p, v in self._entries.items()})

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparseFn)
            and self.dimension == other.dimension
            and self._entries == other._entries
        )

    def __repr__(self) -> str:
        return f"SparseFn(dim={self.dimension}, support={len(self._entries)})"


@dataclass(frozen=True)
class FourTuple:
    f: SparseFn
    g: SparseFn
    h: SparseFn
    k: SparseFn

    def __post_init__(self):
        dims = {fn.dimension for fn in (self.f, self.g, self.h, self.k)}
        if len(dims) != 1:
            raise ValueError(f"all four functions must share a dimension, got {sorted(dims)}")

    @property
    def dimension(self) -> int:
        return self.f.dimension


def z_section(f: SparseFn, g: SparseFn, z: Point) -> SparseFn:
    """The section j -> f(j) * g(z - j); applied to (h, k) it gives the
    target section of the same base point."""
    if f.dimension != g.dimension:
        raise ValueError("dimension mismatch")
    z = tuple(z)
    out: dict[Point, Fraction] = {}
    for j, fv in f.items():
        gv = g(sub(z, j))
        if gv:
            out[j] = fv * gv
    return SparseFn(f.dimension, out)


@dataclass(frozen=True)
class HypothesisViolation:
    x: Point
    y: Point
    lhs: Fraction  # f(x) g(y)
    rhs: Fraction  # h(T(x,y)) k(x+y-T(x,y))


def check_hypothesis(t: FourTuple, op: PairingOp) -> list[HypothesisViolation]:
    """All support pairs where f(x)g(y) > h(T(x,y)) k(x+y-T(x,y)), exactly."""
    violations = []
    for x, fv in t.f.items():
        for y, gv in t.g.items():
            lhs = fv * gv
            rhs = t.h(apply(op, x, y)) * t.k(complement(op, x, y))
            if lhs > rhs:
                violations.append(HypothesisViolation(x, y, lhs, rhs))
    return violations


@dataclass(frozen=True)
class ConclusionReport:
    sum_f: Fraction
    sum_g: Fraction
    sum_h: Fraction
    sum_k: Fraction

    @property
    def lhs(self) -> Fraction:
        return self.sum_f * self.sum_g

    @property
    def rhs(self) -> Fraction:
        return self.sum_h * self.sum_k

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


def check_conclusion(t: FourTuple) -> ConclusionReport:
    """Exact comparison of (sum f)(sum g) against (sum h)(sum k)."""
    return ConclusionReport(t.f.total(), t.g.total(), t.h.total(), t.k.total())


def tight_hk(f: SparseFn, g: SparseFn, op: PairingOp) -> tuple[SparseFn, SparseFn]:
    """The canonical admissible pair (h, k) for given (f, g).

    With m(x, y) = sqrt(f(x) g(y)), sets h(u) to the max of m over the
    fiber T(x, y) = u and k(v) to the max over the complement fiber, so the
    hypothesis holds by construction. Requires every value of f and g to be
    a rational square so m stays rational; raises NonSquareValueError
    otherwise (loose_hk is the fallback for arbitrary values).
    """
    if f.dimension != g.dimension:
        raise ValueError("dimension mismatch")
    roots_f = {x: sqrt_rational(v) for x, v in f.items()}
    roots_g = {y: sqrt_rational(v) for y, v in g.items()}
    h: dict[Point, Fraction] = {}
    k: dict[Point, Fraction] = {}
    for x, rf in roots_f.items():
        for y, rg in roots_g.items():
            m = rf * rg
            u = apply(op, x, y)
            v = sub(add(x, y), u)
            if m > h.get(u, Fraction(0)):
                h[u] = m
            if m > k.get(v, Fraction(0)):
                k[v] = m
    return SparseFn(f.dimension, h), SparseFn(f.dimension, k)


def loose_hk(f: SparseFn, g: SparseFn, op: PairingOp) -> tuple[SparseFn, SparseFn]:
    """Admissible (h, k) without square roots: h collects f-values over
    T-fibers, k collects g-values over complement fibers. Coarser than
    tight_hk but valid for arbitrary nonnegative rational values."""
    if f.dimension != g.dimension:
        raise ValueError("dimension mismatch")
    h: dict[Point, Fraction] = {}
    k: dict[Point, Fraction] = {}
    for x, fv in f.items():
        for y, gv in g.items():
            u = apply(op, x, y)
            v = complement(op, x, y)
            if fv > h.get(u, Fraction(0)):
                h[u] = fv
            if gv > k.get(v, Fraction(0)):
                k[v] = gv
    return SparseFn(f.dimension, h), SparseFn(f.dimension, k)


@dataclass(frozen=True)
class TheoremReport:
    """Bundle of the bounded axiom checks and the exact inequality checks.

    A failing conclusion while the hypothesis and both bounded axiom checks
    pass would contradict the theorem this library is built around; the
    ``contradiction`` flag exists so test suites can treat that as fatal.
    """

    translation: TranslationReport
    monotonicity: MonotonicityReport | SliceExclusivityReport
    hypothesis_violations: tuple[HypothesisViolation, ...]
    conclusion: ConclusionReport

    @property
    def hypothesis_ok(self) -> bool:
        return not self.hypothesis_violations

    @property
    def all_ok(self) -> bool:
        return (
            self.translation.ok
            and self.monotonicity.ok
            and self.hypothesis_ok
            and self.conclusion.holds
        )

    @property
    def contradiction(self) -> bool:
        return (
            self.translation.ok
            and self.monotonicity.ok
            and self.hypothesis_ok
            and not self.conclusion.holds
        )


def verify_four_functions(
    t: FourTuple,
    op: PairingOp,
    d: Decomposition,
    box_radius: int = 2,
    use_exclusivity: bool = False,
    max_set_size: int = 3,
) -> TheoremReport:
    """Run the full verdict bundle for a four-tuple and an operation.

    Axiom checks are bounded by box_radius; the hypothesis check is
    exhaustive over the supports and the conclusion check is exact. With
    use_exclusivity the monotonicity check is replaced by the bounded
    slice-exclusivity sweep, which needs no ordering.
    """
    translation = check_translation_equivariance(op, t.dimension, box_radius, box_radius)
    if use_exclusivity:
        structure: MonotonicityReport | SliceExclusivityReport = check_slice_exclusivity(
            op, d, box_radius, max_set_size
        )
    else:
        structure = check_monotonicity(op, d, box_radius)
    violations = tuple(check_hypothesis(t, op))
    conclusion = check_conclusion(t)
    return TheoremReport(translation, structure, violations, conclusion)


@dataclass(frozen=True)
class FiniteGroupSpec:
    """A finite abelian group given as a product of cyclic factors."""

    moduli: tuple[int, ...]

    def __post_init__(self):
        if not self.moduli or any(m < 2 for m in self.moduli):
            raise ValueError("moduli must all be >= 2")

    @property
    def dimension(self) -> int:
        return len(self.moduli)

    def residues(self) -> list[Point]:
        return [tuple(r) for r in itertools.product(*(range(m) for m in self.moduli))]

    def contains(self, residue: Point) -> bool:
        return len(residue) == len(self.moduli) and all(
            0 <= r < m for r, m in zip(residue, self.moduli)
        )


def lift_finite(spec: FiniteGroupSpec, values: Mapping[Point, Fraction]) -> SparseFn:
    """Lift a function on a finite group to the lattice.

    The lift is supported on the fundamental domain 0 <= x_i < p_i and zero
    elsewhere; residues outside that range are rejected. Sums are preserved
    because the domain maps bijectively onto the group.
    """
    out: dict[Point, Fraction] = {}
    for residue, value in values.items():
        r = tuple(residue)
        if not spec.contains(r):
            raise ValueError(f"residue {r} outside the fundamental domain of {spec.moduli}")
        out[r] = Fraction(value)
    return SparseFn(spec.dimension, out)
