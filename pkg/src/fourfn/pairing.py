"""Pairing operations T(x, y) on lattice points and their complements.

Every operation here maps a pair of points to a point of the same
dimension; its complement x + y - T(x, y) is what the fourth function in
the four-function hypothesis is evaluated at. The mixing operations take a
rational weight so floors and ceilings are exact integer divisions; an
irrational weight has no representation and is rejected at construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .lattice import (
    Decomposition,
    Ordering,
    Point,
    compare,
    format_ordering,
    parse_ordering,
    prefix as d_prefix,
    project as d_project,
)


class PairingOp:
    """Base class; concrete ops implement apply(x, y) -> Point."""

    def apply(self, x: Point, y: Point) -> Point:
        raise NotImplementedError

    def spec_name(self) -> str:
        raise NotImplementedError


def _check_dims(x: Point, y: Point) -> None:
    if len(x) != len(y):
        raise ValueError(f"dimension mismatch: {len(x)} vs {len(y)}")


@dataclass(frozen=True)
class Meet(PairingOp):
    def apply(self, x: Point, y: Point) -> Point:
        _check_dims(x, y)
        return tuple(min(a, b) for a, b in zip(x, y))

    def spec_name(self) -> str:
        return "meet"


@dataclass(frozen=True)
class Join(PairingOp):
    def apply(self, x: Point, y: Point) -> Point:
        _check_dims(x, y)
        return tuple(max(a, b) for a, b in zip(x, y))

    def spec_name(self) -> str:
        return "join"


def _validate_weight(lam: Fraction) -> None:
    if not 0 <= lam <= 1:
        raise ValueError(f"mixing weight {lam} outside [0, 1]")


@dataclass(frozen=True)
class FloorMix(PairingOp):
    """Coordinatewise floor of lam*x + (1-lam)*y."""

    lam: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        _validate_weight(self.lam)

    def apply(self, x: Point, y: Point) -> Point:
        _check_dims(x, y)
        p, q = self.lam.numerator, self.lam.denominator
        return tuple((p * a + (q - p) * b) // q for a, b in zip(x, y))

    def spec_name(self) -> str:
        return f"floormix:{self.lam.numerator}/{self.lam.denominator}"


@dataclass(frozen=True)
class CeilMix(PairingOp):
    """Coordinatewise ceiling of lam*x + (1-lam)*y, via ceil(r) = -floor(-r)."""

    lam: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        _validate_weight(self.lam)

    def apply(self, x: Point, y: Point) -> Point:
        _check_dims(x, y)
        p, q = self.lam.numerator, self.lam.denominator
        return tuple(-((-(p * a + (q - p) * b)) // q) for a, b in zip(x, y))

    def spec_name(self) -> str:
        return f"ceilmix:{self.lam.numerator}/{self.lam.denominator}"


@dataclass(frozen=True)
class OrderMin(PairingOp):
    """Whole-point minimum of {x, y} under a total additive ordering."""

    order: Ordering

    def apply(self, x: Point, y: Point) -> Point:
        _check_dims(x, y)
        return x if compare(self.order, x, y) <= 0 else y

    def spec_name(self) -> str:
        return f"ordermin:{format_ordering(self.order)}"


@dataclass(frozen=True)
class OrderMax(PairingOp):
    order: Ordering

    def apply(self, x: Point, y: Point) -> Point:
        _check_dims(x, y)
        return y if compare(self.order, x, y) <= 0 else x

    def spec_name(self) -> str:
        return f"ordermax:{format_ordering(self.order)}"


@dataclass(frozen=True)
class ParityMix(PairingOp):
    """Pick x_i when the count of disagreeing coordinates up to i is odd.

    Only meaningful with the standard decomposition into one-dimensional
    factors; slicing it against coarser factors is rejected.
    """

    def apply(self, x: Point, y: Point) -> Point:
        _check_dims(x, y)
        out = []
        disagreements = 0
        for a, b in zip(x, y):
            if a != b:
                disagreements += 1
            out.append(a if disagreements % 2 == 1 else b)
        return tuple(out)

    def spec_name(self) -> str:
        return "paritymix"


@dataclass(frozen=True)
class PerFactor(PairingOp):
    """Apply an independent operation to each factor of a decomposition.

    ``dims`` carries the factor dimensions so the operation can split its
    arguments without an external decomposition.
    """

    ops: tuple[PairingOp, ...]
    dims: tuple[int, ...]

    def __post_init__(self):
        if len(self.ops) != len(self.dims):
            raise ValueError("one operation per factor required")
        if any(d < 1 for d in self.dims):
            raise ValueError("factor dimensions must be >= 1")

    def apply(self, x: Point, y: Point) -> Point:
        _check_dims(x, y)
        if len(x) != sum(self.dims):
            raise ValueError("point dimension does not match factor dimensions")
        out: list[int] = []
        start = 0
        for op, d in zip(self.ops, self.dims):
            out.extend(op.apply(x[start:start + d], y[start:start + d]))
            start += d
        return tuple(out)

    def spec_name(self) -> str:
        return "perfactor:[" + ",".join(op.spec_name() for op in self.ops) + "]"


def apply(op: PairingOp, x: Point, y: Point) -> Point:
    return op.apply(tuple(x), tuple(y))


def complement(op: PairingOp, x: Point, y: Point) -> Point:
    """x + y - T(x, y), the argument of the fourth function."""
    t = op.apply(tuple(x), tuple(y))
    return tuple(a + b - c for a, b, c in zip(x, y, t))


@dataclass(frozen=True)
class SliceOp:
    """A binary operation on one factor, as used by the exclusivity checks.

    Wraps a callable (u, v) -> point of dimension ``dim`` together with a
    label for reports.
    """

    fn: Callable[[Point, Point], Point]
    dim: int
    label: str

    def __call__(self, u: Point, v: Point) -> Point:
        return self.fn(u, v)


def whole_slice(op: PairingOp, dim: int) -> SliceOp:
    """The operation itself viewed as the slice of a one-factor decomposition."""
    return SliceOp(lambda u, v: op.apply(u, v), dim, op.spec_name())


def conditional_slice(
    op: PairingOp, d: Decomposition, i: int, a: Point, b: Point
) -> SliceOp:
    """The conditional slice of factor i with prefixes a, b frozen.

    Arguments are embedded after the prefixes, trailing factors are filled
    with zeros, and factor i of the full result is read off. Filling with
    zeros is legal only for operations whose factor i ignores later
    coordinates; the monotonicity checker verifies that independently.
    """
    start, stop = d.span(i)
    if len(a) != start or len(b) != start:
        raise ValueError(f"prefixes for factor {i} must have dimension {start}")
    if isinstance(op, ParityMix) and any(dim != 1 for dim, _ in d.factors):
        raise ValueError("parity mixing is defined for one-dimensional factors only")
    tail = (0,) * (d.dimension - stop)

    def fn(u: Point, v: Point) -> Point:
        if len(u) != stop - start or len(v) != stop - start:
            raise ValueError(f"slice arguments must have dimension {stop - start}")
        full = op.apply(a + tuple(u) + tail, b + tuple(v) + tail)
        return full[start:stop]

    return SliceOp(fn, stop - start, f"{op.spec_name()}[factor {i}; prefixes {a},{b}]")


def parse_op(spec: str) -> PairingOp:
    """Parse an operation name as used by the CLI and config files.

    Grammar: ``meet``, ``join``, ``floormix:p/q``, ``ceilmix:p/q``,
    ``paritymix``, ``ordermin:<ordering>``, ``ordermax:<ordering>``,
    ``perfactor:[op,op,...]`` (per-factor entries may not nest matrix
    orderings, whose commas would be ambiguous).
    """
    from .rational import parse_rational

    s = spec.strip()
    if s == "meet":
        return Meet()
    if s == "join":
        return Join()
    if s == "paritymix":
        return ParityMix()
    if s.startswith("floormix:"):
        return FloorMix(parse_rational(s[len("floormix:"):]))
    if s.startswith("ceilmix:"):
        return CeilMix(parse_rational(s[len("ceilmix:"):]))
    if s.startswith("ordermin:"):
        return OrderMin(parse_ordering(s[len("ordermin:"):]))
    if s.startswith("ordermax:"):
        return OrderMax(parse_ordering(s[len("ordermax:"):]))
    if s.startswith("perfactor:[") and s.endswith("]"):
        body = s[len("perfactor:["):-1]
        if "lin:" in body:
            raise ValueError("lin orderings are not supported inside perfactor specs")
        entries = [e.strip() for e in body.split(",") if e.strip()]
        if not entries:
            raise ValueError("perfactor needs at least one operation")
        ops = tuple(parse_op(e) for e in entries)
        return PerFactor(ops, tuple(1 for _ in ops))
    raise ValueError(f"unknown operation spec {spec!r}")


def parse_decomposition(spec: str, dim: int) -> Decomposition:
    """Parse a decomposition: ``std``, ``lex``, or ``<d>:<ordering>`` entries
    joined by ``+`` (e.g. ``1:std+1:std``, ``2:lex``)."""
    from .lattice import single_factor, standard_decomposition, Decomposition as D

    s = spec.strip()
    if s == "std":
        return standard_decomposition(dim)
    if s == "lex":
        return single_factor(dim)
    factors = []
    for entry in s.split("+"):
        head, sep, order_text = entry.partition(":")
        if not sep:
            raise ValueError(f"bad decomposition entry {entry!r} (expected d:ordering)")
        factors.append((int(head), parse_ordering(order_text)))
    d = D(tuple(factors))
    if d.dimension != dim:
        raise ValueError(f"decomposition covers {d.dimension} dimensions, expected {dim}")
    return d


# re-exported for callers that work with slices of multi-factor operations
project = d_project
prefix = d_prefix
