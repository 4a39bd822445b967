"""Build and independently validate certificates for the section-sum inequality.

For a base point z, a source section F(j) = f(j) g(z-j) and a target
section H(j) = h(j) k(z-j), the claim being certified is

    sum_{j in A} F(j)  <=  sum_{j in T(A, z-A)} H(j)

for a finite set A, where T(A, z-A) = {T(u, z-v) : u, v in A} over ordered
pairs. The certificate replays the induction that proves the claim: at
each step an exclusive pair (x, y) is chosen, oriented so F(x) <= F(y),
and the step either peels off x (Case1, when F(y) dominates both cross
target values) or peels off both x and y (Case2, via the max/sum bound).

Certificates are built deterministically (lexicographically first witness
pair, no swap on ties) and carry every rational they rely on, so a
validator can re-derive the whole tree from scratch and reject any
tampering.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .axioms import PairDiagnostics, check_exclusive, evaluate_pair, image_set
from .functions import ConclusionReport, FourTuple, SparseFn, check_conclusion, z_section
from .lattice import Point, sub
from .pairing import PairingOp, SliceOp, whole_slice


@dataclass(frozen=True)
class MaxSumResult:
    """Applicability and verdict of the max/sum bound for (a, b, c, d).

    The bound: if ab <= cd and max(a, b) <= max(c, d) then a + b <= c + d.
    ``holds`` is None when the preconditions fail; when they hold, a False
    here would be a library bug, not an input condition.
    """

    product_ok: bool
    max_ok: bool
    holds: bool | None

    @property
    def applicable(self) -> bool:
        return self.product_ok and self.max_ok


def max_sum_inequality(a: Fraction, b: Fraction, c: Fraction, d: Fraction) -> MaxSumResult:
    values = tuple(map(Fraction, (a, b, c, d)))
    if any(v < 0 for v in values):
        raise ValueError("max/sum bound requires nonnegative inputs")
    a, b, c, d = values
    product_ok = a * b <= c * d
    max_ok = max(a, b) <= max(c, d)
    holds = (a + b <= c + d) if (product_ok and max_ok) else None
    return MaxSumResult(product_ok, max_ok, holds)


class NotExclusiveError(Exception):
    """No pair of the current set satisfies the exclusivity conditions."""

    def __init__(self, points, z, report):
        super().__init__(f"no exclusive pair for set {points} at z={z}")
        self.points = points
        self.z = z
        self.report = report


class ChainedInequalityError(Exception):
    """The section data violates an inequality the hypothesis guarantees.

    Raised when F(j) > H(T(j, z-j)) at a base step or
    F(x)F(y) > H(T(x,z-y)) H(T(y,z-x)) at an induction step; either means
    the input tuple did not satisfy the four-function hypothesis.
    """


class CertificationError(Exception):
    """Internal soundness check failed while building a certificate."""


BASE0, BASE1, CASE1, CASE2 = "Base0", "Base1", "Case1", "Case2"


@dataclass(frozen=True)
class CertNode:
    """One step of the induction. ``values`` holds the exact rationals the
    step relies on: source/target for Base1; source_x, source_y, target_xy,
    target_yx for the two inductive cases."""

    points: tuple[Point, ...]
    z: Point
    case: str
    pair: tuple[Point, Point] | None = None
    values: dict[str, Fraction] = field(default_factory=dict)
    exclusivity: PairDiagnostics | None = None
    child: "CertNode | None" = None

    def depth(self) -> int:
        return 1 + (self.child.depth() if self.child else 0)

    def nodes(self) -> list["CertNode"]:
        return [self] + (self.child.nodes() if self.child else [])


Certificate = CertNode


def _sum_over(fn: SparseFn, points) -> Fraction:
    return sum((fn(p) for p in points), Fraction(0))


def certify_sum_inequality(
    op: SliceOp, z: Point, points, source: SparseFn, target: SparseFn
) -> CertNode:
    """Build the certificate tree for (A, z) by replaying the induction.

    Every inequality the induction leans on is re-verified here, not
    assumed: a base or chained-product violation raises
    ChainedInequalityError, a set with no exclusive pair raises
    NotExclusiveError, and the node-level sum inequality is re-checked as a
    guard against construction bugs before the node is returned.
    """
    z = tuple(z)
    pts = tuple(sorted(set(map(tuple, points))))
    node = _build(op, z, pts, source, target)
    return node


def _build(op: SliceOp, z: Point, pts: tuple[Point, ...], source, target) -> CertNode:
    if len(pts) == 0:
        return CertNode(pts, z, BASE0)
    if len(pts) == 1:
        j = pts[0]
        fj = source(j)
        tj = target(op(j, sub(z, j)))
        if fj > tj:
            raise ChainedInequalityError(
                f"base bound fails at {j}, z={z}: {fj} > {tj}; "
                "the underlying tuple violates the hypothesis"
            )
        return CertNode(pts, z, BASE1, values={"source": fj, "target": tj})

    report = check_exclusive(op, pts, z)
    if not report.exclusive:
        raise NotExclusiveError(pts, z, report)
    x, y = report.witness
    if source(x) > source(y):
        x, y = y, x
    diag = evaluate_pair(op, pts, z, x, y)
    if not diag.ok:
        raise CertificationError("oriented pair lost the exclusivity conditions")
    fx, fy = source(x), source(y)
    hxy = target(op(x, sub(z, y)))
    hyx = target(op(y, sub(z, x)))
    if fx * fy > hxy * hyx:
        raise ChainedInequalityError(
            f"chained product fails for pair ({x}, {y}) at z={z}: "
            f"{fx * fy} > {hxy * hyx}; the underlying tuple violates the hypothesis"
        )
    values = {"source_x": fx, "source_y": fy, "target_xy": hxy, "target_yx": hyx}

    if fy > max(hxy, hyx):
        if fx > min(hxy, hyx):
            raise CertificationError("dominated source value exceeds both targets")
        rest = tuple(p for p in pts if p != x)
        child = _build(op, z, rest, source, target)
        node = CertNode(pts, z, CASE1, (x, y), values, diag, child)
    else:
        if op(x, sub(z, y)) == op(y, sub(z, x)):
            raise CertificationError(
                "cross values coincide; the operation is not translation equivariant"
            )
        step = max_sum_inequality(fx, fy, hxy, hyx)
        if not step.applicable or not step.holds:
            raise CertificationError("max/sum step failed in a Case2 node")
        rest = tuple(p for p in pts if p != x and p != y)
        child = _build(op, z, rest, source, target)
        node = CertNode(pts, z, CASE2, (x, y), values, diag, child)

    lhs = _sum_over(source, pts)
    rhs = _sum_over(target, image_set(op, pts, z))
    if lhs > rhs:
        raise CertificationError(f"node sum inequality fails: {lhs} > {rhs}")
    return node


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    depth: int | None = None  # depth (root = 0) of the first failing node
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_certificate(
    cert: CertNode, op: SliceOp, source: SparseFn, target: SparseFn
) -> ValidationResult:
    """Re-derive every node of a certificate from scratch.

    Checks, per node: set shapes and child linkage, exclusivity conditions
    by full enumeration, stored image sets against recomputed ones, the
    orientation rule, case preconditions, all stored rationals against
    recomputed values, and the node-level sum inequality over T(A, z-A).
    Accepts any sound pair choice, not only the builder's lexicographic
    one.
    """
    return _validate(cert, op, source, target, 0)


def _fail(depth: int, reason: str) -> ValidationResult:
    return ValidationResult(False, depth, reason)


def _validate(node: CertNode, op: SliceOp, source, target, depth: int) -> ValidationResult:
    pts = node.points
    z = node.z
    if list(pts) != sorted(set(pts)):
        return _fail(depth, "point set is not a sorted set")

    lhs = _sum_over(source, pts)
    rhs = _sum_over(target, image_set(op, pts, z))
    if lhs > rhs:
        return _fail(depth, f"sum inequality fails: {lhs} > {rhs}")

    if node.case == BASE0:
        if pts or node.pair is not None or node.child is not None:
            return _fail(depth, "malformed empty-set node")
        return ValidationResult(True)

    if node.case == BASE1:
        if len(pts) != 1 or node.pair is not None or node.child is not None:
            return _fail(depth, "malformed singleton node")
        j = pts[0]
        fj, tj = source(j), target(op(j, sub(z, j)))
        if node.values.get("source") != fj or node.values.get("target") != tj:
            return _fail(depth, "stored base values do not match recomputation")
        if fj > tj:
            return _fail(depth, f"base bound fails: {fj} > {tj}")
        return ValidationResult(True)

    if node.case not in (CASE1, CASE2):
        return _fail(depth, f"unknown case tag {node.case!r}")
    if len(pts) < 2 or node.pair is None or node.child is None:
        return _fail(depth, "malformed inductive node")
    x, y = node.pair
    if x == y or x not in pts or y not in pts:
        return _fail(depth, "pair must be two distinct elements of the set")

    diag = evaluate_pair(op, pts, z, x, y)
    if not diag.ok:
        return _fail(depth, "exclusivity conditions fail for the stored pair")
    if node.exclusivity is not None:
        if node.exclusivity.cross != diag.cross:
            return _fail(depth, "stored cross values do not match recomputation")
        if node.exclusivity.images != diag.images:
            return _fail(depth, "stored image sets do not match recomputation")

    fx, fy = source(x), source(y)
    hxy = target(op(x, sub(z, y)))
    hyx = target(op(y, sub(z, x)))
    if fx > fy:
        return _fail(depth, "orientation rule violated: source(x) > source(y)")
    stored = node.values
    expected = {"source_x": fx, "source_y": fy, "target_xy": hxy, "target_yx": hyx}
    if stored != expected:
        return _fail(depth, "stored values do not match recomputation")
    if fx * fy > hxy * hyx:
        return _fail(depth, "chained product inequality fails")

    if node.case == CASE1:
        if fy < max(hxy, hyx):
            return _fail(depth, "Case1 requires source(y) >= both target values")
        if fx > min(hxy, hyx):
            return _fail(depth, "Case1 requires source(x) <= both target values")
        expected_child = tuple(p for p in pts if p != x)
    else:
        if fy > max(hxy, hyx):
            return _fail(depth, "Case2 requires source(y) <= the larger target value")
        if diag.cross[0] == diag.cross[1]:
            return _fail(depth, "Case2 requires distinct cross values")
        if fx + fy > hxy + hyx:
            return _fail(depth, "max/sum conclusion fails")
        expected_child = tuple(p for p in pts if p != x and p != y)

    child = node.child
    if child.points != expected_child:
        return _fail(depth + 1, "child set does not match the case rule")
    if child.z != z:
        return _fail(depth + 1, "child base point differs from parent")
    return _validate(child, op, source, target, depth + 1)


@dataclass(frozen=True)
class SectionCheck:
    """Per-base-point record of the certified inequality."""

    z: Point
    certificate: CertNode
    validated: bool
    source_sum: Fraction          # sum of F over A = supp(F)
    certified_target_sum: Fraction  # sum of H over T(A, z-A)
    section_target_sum: Fraction    # sum of H over its whole support

    @property
    def ok(self) -> bool:
        return (
            self.validated
            and self.source_sum <= self.certified_target_sum
            and self.certified_target_sum <= self.section_target_sum
        )


@dataclass(frozen=True)
class ConclusionCrossCheck:
    """Aggregate of per-z certificates against the direct conclusion check.

    The per-z inequalities sum to (sum f)(sum g) <= (sum h)(sum k); both
    that aggregate verdict and the direct product comparison are recorded
    so their agreement can be asserted.
    """

    sections: tuple[SectionCheck, ...]
    lhs_total: Fraction
    rhs_total: Fraction
    direct: ConclusionReport

    @property
    def sections_ok(self) -> bool:
        return all(s.ok for s in self.sections)

    @property
    def aggregate_holds(self) -> bool:
        return self.sections_ok and self.lhs_total <= self.rhs_total

    @property
    def agrees_with_direct(self) -> bool:
        return self.aggregate_holds == self.direct.holds


def certify_conclusion(t: FourTuple, op: PairingOp) -> ConclusionCrossCheck:
    """Certify the conclusion z by z and cross-check the direct verdict.

    For every z with a nonempty source section, the full induction is
    replayed on A = supp(F_z) and validated; the per-z target sums are then
    chained into the global product inequality. Exclusivity failures
    propagate (the whole-group induction only applies to exclusive
    operations, e.g. one-dimensional ones).
    """
    sl = whole_slice(op, t.dimension)
    zs = sorted({tuple(a + b for a, b in zip(p, q))
                 for p in t.f.support() for q in t.g.support()})
    sections = []
    lhs_total = Fraction(0)
    rhs_total = Fraction(0)
    for z in zs:
        source = z_section(t.f, t.g, z)
        target = z_section(t.h, t.k, z)
        pts = source.support()
        if not pts:
            continue
        cert = certify_sum_inequality(sl, z, pts, source, target)
        validated = bool(validate_certificate(cert, sl, source, target))
        source_sum = source.total()
        certified = _sum_over(target, image_set(sl, pts, z))
        section_total = target.total()
        sections.append(
            SectionCheck(z, cert, validated, source_sum, certified, section_total)
        )
        lhs_total += source_sum
        rhs_total += section_total
    direct = check_conclusion(t)
    return ConclusionCrossCheck(tuple(sections), lhs_total, rhs_total, direct)
