"""Orientation-preserving piecewise-linear self-homeomorphisms of [0, ell]
with exact breakpoints and slopes, and membership in the groups of PL maps
with prescribed singularity set A and slope group P.

A map is stored as (ell, breakpoints, slopes) anchored at f(0) = 0, which
makes continuity automatic; f(ell) = ell is a constructor check.  The
canonical form has no breakpoint where the slope does not change, so maps
are equal iff their fields are.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

from .numbers import (
    ONE,
    ZERO,
    AdditiveGroup,
    ExactNumber,
    NonMember,
    ParseError,
    SlopeGroup,
    format_number,
    parse_number,
)


@dataclass(frozen=True)
class PLMap:
    ell: ExactNumber
    breakpoints: tuple[ExactNumber, ...]
    slopes: tuple[ExactNumber, ...]

    def __post_init__(self) -> None:
        if self.ell.sign() <= 0:
            raise ValueError("right endpoint must be positive")
        if len(self.slopes) != len(self.breakpoints) + 1:
            raise ValueError("need exactly one slope per segment")
        prev = ZERO
        for b in self.breakpoints:
            if not (prev < b < self.ell):
                raise ValueError("breakpoints must be strictly increasing inside (0, ell)")
            prev = b
        for s in self.slopes:
            if s.sign() <= 0:
                raise ValueError("slopes must be positive")
        # Canonical form: a breakpoint must change the slope.
        for i in range(len(self.breakpoints)):
            if self.slopes[i] == self.slopes[i + 1]:
                raise ValueError("spurious breakpoint (equal adjacent slopes); use PLMap.make")
        if self._value_at_end() != self.ell:
            raise ValueError("map does not fix the right endpoint")

    def _value_at_end(self) -> ExactNumber:
        value = ZERO
        prev = ZERO
        for b, s in zip(self.breakpoints, self.slopes):
            value = value + s * (b - prev)
            prev = b
        return value + self.slopes[-1] * (self.ell - prev)

    @staticmethod
    def make(ell, breakpoints, slopes) -> PLMap:
        """Build a map, pruning breakpoints where the slope does not change."""
        ell = ExactNumber.of(ell)
        bs = [ExactNumber.of(b) for b in breakpoints]
        ss = [ExactNumber.of(s) for s in slopes]
        pruned_b: list[ExactNumber] = []
        pruned_s: list[ExactNumber] = [ss[0]]
        for b, s in zip(bs, ss[1:]):
            if s == pruned_s[-1]:
                continue
            pruned_b.append(b)
            pruned_s.append(s)
        return PLMap(ell, tuple(pruned_b), tuple(pruned_s))

    @staticmethod
    def identity(ell=1) -> PLMap:
        return PLMap(ExactNumber.of(ell), (), (ONE,))

    @property
    def is_identity(self) -> bool:
        return not self.breakpoints and self.slopes[0] == ONE

    @cached_property
    def _knots(self) -> tuple[tuple[ExactNumber, ExactNumber], ...]:
        """(x, f(x)) at 0, each breakpoint, and ell."""
        out = [(ZERO, ZERO)]
        for b, s in zip(self.breakpoints, self.slopes):
            x0, y0 = out[-1]
            out.append((b, y0 + s * (b - x0)))
        x0, y0 = out[-1]
        out.append((self.ell, y0 + self.slopes[-1] * (self.ell - x0)))
        return tuple(out)

    def _segment_index(self, x: ExactNumber) -> int:
        lo, hi = 0, len(self.breakpoints)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.breakpoints[mid] <= x:
                lo = mid + 1
            else:
                hi = mid
        return lo

    def __call__(self, x) -> ExactNumber:
        x = ExactNumber.of(x)
        if x < ZERO or x > self.ell:
            raise ValueError(f"{x} is outside [0, {self.ell}]")
        i = self._segment_index(x)
        x0, y0 = self._knots[i]
        return y0 + self.slopes[i] * (x - x0)

    def slope_at(self, x: ExactNumber) -> ExactNumber:
        """Slope on the segment whose interior contains x (right slope at a
        breakpoint, left slope at ell)."""
        if x == self.ell:
            return self.slopes[-1]
        return self.slopes[self._segment_index(x)]

    @property
    def initial_slope(self) -> ExactNumber:
        return self.slopes[0]

    @property
    def final_slope(self) -> ExactNumber:
        return self.slopes[-1]

    def inverse(self) -> PLMap:
        breaks = tuple(self._knots[i + 1][1] for i in range(len(self.breakpoints)))
        slopes = tuple(s.inverse() for s in self.slopes)
        return PLMap(self.ell, breaks, slopes)

    def __mul__(self, other: PLMap) -> PLMap:
        return compose(self, other)

    def __str__(self) -> str:
        return format_plmap(self)


def compose(f: PLMap, g: PLMap) -> PLMap:
    """The map x -> f(g(x)).  Breakpoints are those of g together with the
    g-preimages of those of f, pruned back to canonical form."""
    if f.ell != g.ell:
        raise ValueError("maps act on different intervals")
    g_inv = g.inverse()
    candidates = set(g.breakpoints) | {g_inv(b) for b in f.breakpoints}
    breaks = sorted(candidates)
    slopes = []
    prev = ZERO
    half = ExactNumber.rational(1, 2)
    for b in list(breaks) + [f.ell]:
        mid = (prev + b) * half
        slopes.append(g.slope_at(mid) * f.slope_at(g(mid)))
        prev = b
    return PLMap.make(f.ell, breaks, slopes)


def support(f: PLMap) -> tuple[tuple[ExactNumber, ExactNumber], ...]:
    """Maximal open intervals where f(x) != x."""
    knots = f._knots
    fixed_cuts: list[ExactNumber] = [ZERO]
    identity_spans: list[tuple[ExactNumber, ExactNumber]] = []
    for i, s in enumerate(f.slopes):
        x0, y0 = knots[i]
        x1, _ = knots[i + 1]
        if s == ONE:
            if y0 == x0:
                identity_spans.append((x0, x1))
        else:
            # f(x) - x has a single root on this segment, if any.
            root = (y0 - s * x0) / (ONE - s)
            if x0 <= root <= x1:
                fixed_cuts.append(root)
    fixed_cuts.append(f.ell)
    # Every event point is fixed by f, and between consecutive events f is
    # either the identity or fixed-point free, so the midpoint decides.
    events = sorted(set(fixed_cuts) | {a for a, _ in identity_spans} | {b for _, b in identity_spans})
    out = []
    for a, b in zip(events, events[1:]):
        mid = (a + b) * ExactNumber.rational(1, 2)
        if f(mid) != mid:
            out.append((a, b))
    return tuple(out)


@dataclass(frozen=True)
class PLGroupSpec:
    """The group of PL self-homeomorphisms of [0, ell] with singularities
    (and their images) in A and slopes in P."""

    ell: ExactNumber
    singularities: AdditiveGroup
    slopes: SlopeGroup

    def __post_init__(self) -> None:
        if not self.singularities.contains(self.ell):
            raise ValueError(f"ell = {self.ell} is not in {self.singularities}")
        for p in self.slopes.generators:
            for a in self.singularities.sample_elements():
                if not (self.singularities.contains(p * a) and self.singularities.contains(p.inverse() * a)):
                    raise ValueError(f"slope {p} does not preserve {self.singularities}")

    def __str__(self) -> str:
        return f"G([0,{format_number(self.ell)}]; {self.singularities}, {self.slopes})"


@dataclass(frozen=True)
class MembershipReport:
    ok: bool
    violations: tuple[str, ...]


def is_member(f: PLMap, spec: PLGroupSpec) -> MembershipReport:
    """Check breakpoints, breakpoint images, and slopes against the spec."""
    if f.ell != spec.ell:
        return MembershipReport(False, (f"domain [0,{f.ell}] does not match [0,{spec.ell}]",))
    violations = []
    for b in f.breakpoints:
        if not spec.singularities.contains(b):
            violations.append(f"singularity {b} is not in {spec.singularities}")
        if not spec.singularities.contains(f(b)):
            violations.append(f"image {f(b)} of singularity {b} is not in {spec.singularities}")
    for s in f.slopes:
        if not spec.slopes.contains(s):
            violations.append(f"slope {s} is not in {spec.slopes}")
    return MembershipReport(not violations, tuple(violations))


def endpoint_characters(f: PLMap, slopes: SlopeGroup) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Exponent vectors of the slopes at 0+ and ell-.

    Slopes at the two endpoints are multiplicative under composition, so
    these exponent vectors are additive; they vanish on commutators.  This
    is the natural pair of homomorphisms fixed by conjugation-like
    symmetries of the group, offered without any claim of canonicity.
    """
    try:
        left = slopes.factor(f.initial_slope)
        right = slopes.factor(f.final_slope)
    except NonMember as exc:
        raise NonMember(f"endpoint slope does not factor: {exc}") from exc
    return left, right


def scaling_family(p, q, r) -> tuple[PLMap, PLMap, PLMap]:
    """The three unit-interval maps with parameters p, q, r > 1: the first
    contracts near 0 by 1/p and is supported on [0, 3/4]; the other two fix
    [0, 1/4] and scale by 1/q (resp. 1/r) just past it.  Exact parameters
    only (rational or in Q(sqrt5))."""
    p, q, r = ExactNumber.of(p), ExactNumber.of(q), ExactNumber.of(r)
    for name, val in (("p", p), ("q", q), ("r", r)):
        if not val > ONE:
            raise ValueError(f"parameter {name} must be > 1")
    three, four = ExactNumber.of(3), ExactNumber.of(4)
    quarter = ExactNumber.rational(1, 4)
    f = PLMap.make(
        ONE,
        (three * p / (four * p + four), ExactNumber.rational(3, 4)),
        (p.inverse(), p, ONE),
    )

    def late_scaler(u: ExactNumber) -> PLMap:
        return PLMap.make(
            ONE,
            (quarter, (four * u + ONE) / (four * u + four)),
            (ONE, u.inverse(), u),
        )

    return f, late_scaler(q), late_scaler(r)


_PL_RE = re.compile(r"^\s*pl\s+ell=(?P<ell>\S+)\s+breaks=\[(?P<breaks>[^\]]*)\]\s+slopes=\[(?P<slopes>[^\]]*)\]\s*$")


def format_plmap(f: PLMap) -> str:
    breaks = ",".join(format_number(b) for b in f.breakpoints)
    slopes = ",".join(format_number(s) for s in f.slopes)
    return f"pl ell={format_number(f.ell)} breaks=[{breaks}] slopes=[{slopes}]"


def parse_plmap(text: str) -> PLMap:
    m = _PL_RE.match(text)
    if not m:
        raise ParseError("invalid PL map literal", text, 0)
    ell = parse_number(m.group("ell"))
    breaks = [parse_number(s) for s in m.group("breaks").split(",") if s.strip()]
    slopes = [parse_number(s) for s in m.group("slopes").split(",") if s.strip()]
    return PLMap(ell, tuple(breaks), tuple(slopes))
