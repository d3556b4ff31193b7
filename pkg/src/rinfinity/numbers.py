"""Exact arithmetic in Q and Q(sqrt5), plus the additive/multiplicative
subgroups of R that the piecewise-linear groups are built from.

Every value is an element a + b*t of Q(sqrt5), where t = (sqrt(5)-1)/2 is
the small golden ratio, subject to t**2 = 1 - t.  Rational numbers are the
values with b == 0.  No floating point is used anywhere: signs are decided
by integer squaring, and comparisons reduce to signs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class ParseError(ValueError):
    """Malformed literal; carries the offending position."""

    def __init__(self, message: str, text: str, pos: int) -> None:
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


def _sqrt5_combination_sign(u: Fraction, v: Fraction) -> int:
    """Exact sign of u + v*sqrt(5), by squaring with a four-way case split."""
    if v == 0:
        return (u > 0) - (u < 0)
    if u == 0:
        return (v > 0) - (v < 0)
    if u > 0 and v > 0:
        return 1
    if u < 0 and v < 0:
        return -1
    # Opposite signs: compare u**2 with 5*v**2.
    d = u * u - 5 * v * v
    s = (d > 0) - (d < 0)
    return s if u > 0 else -s


@dataclass(frozen=True)
class ExactNumber:
    """Element a + b*t of Q(sqrt5), with t = (sqrt(5)-1)/2, so t*t = 1 - t."""

    a: Fraction
    b: Fraction = Fraction(0)

    @staticmethod
    def of(value) -> ExactNumber:
        if isinstance(value, ExactNumber):
            return value
        if isinstance(value, (int, Fraction)):
            return ExactNumber(Fraction(value))
        raise TypeError(f"cannot coerce {value!r} to ExactNumber")

    @staticmethod
    def rational(num, den=1) -> ExactNumber:
        return ExactNumber(Fraction(num, den))

    @staticmethod
    def quadratic(a, b) -> ExactNumber:
        return ExactNumber(Fraction(a), Fraction(b))

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    @property
    def is_integer(self) -> bool:
        return self.b == 0 and self.a.denominator == 1

    def __add__(self, other) -> ExactNumber:
        o = ExactNumber.of(other)
        return ExactNumber(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self) -> ExactNumber:
        return ExactNumber(-self.a, -self.b)

    def __sub__(self, other) -> ExactNumber:
        return self + (-ExactNumber.of(other))

    def __rsub__(self, other) -> ExactNumber:
        return (-self) + other

    def __mul__(self, other) -> ExactNumber:
        o = ExactNumber.of(other)
        # (a1 + b1 t)(a2 + b2 t) with t^2 = 1 - t.
        cross = self.a * o.b + self.b * o.a
        sq = self.b * o.b
        return ExactNumber(self.a * o.a + sq, cross - sq)

    __rmul__ = __mul__

    def conjugate(self) -> ExactNumber:
        # Galois conjugate sends t to -1 - t.
        return ExactNumber(self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        # Product with the conjugate: a^2 - a*b - b^2, a rational.
        return self.a * self.a - self.a * self.b - self.b * self.b

    def inverse(self) -> ExactNumber:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero")
        c = self.conjugate()
        return ExactNumber(c.a / n, c.b / n)

    def __truediv__(self, other) -> ExactNumber:
        return self * ExactNumber.of(other).inverse()

    def __rtruediv__(self, other) -> ExactNumber:
        return ExactNumber.of(other) * self.inverse()

    def __pow__(self, k: int) -> ExactNumber:
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def sign(self) -> int:
        # a + b t = ((2a - b) + b*sqrt5) / 2
        return _sqrt5_combination_sign(2 * self.a - self.b, self.b)

    def __lt__(self, other) -> bool:
        return (self - ExactNumber.of(other)).sign() < 0

    def __le__(self, other) -> bool:
        return (self - ExactNumber.of(other)).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - ExactNumber.of(other)).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - ExactNumber.of(other)).sign() >= 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, ExactNumber)):
            o = ExactNumber.of(other)
            return self.a == o.a and self.b == o.b
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __abs__(self) -> ExactNumber:
        return -self if self.sign() < 0 else self

    def __str__(self) -> str:
        return format_number(self)

    def __repr__(self) -> str:
        return f"ExactNumber({self.a!r}, {self.b!r})"


ZERO = ExactNumber.rational(0)
ONE = ExactNumber.rational(1)
TAU = ExactNumber.quadratic(0, 1)


def _format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_number(x: ExactNumber) -> str:
    """Canonical literal: `a/b` for rationals, `a+b*t` / `a-b*t` otherwise."""
    if x.b == 0:
        return _format_fraction(x.a)
    sign = "+" if x.b > 0 else "-"
    return f"{_format_fraction(x.a)}{sign}{_format_fraction(abs(x.b))}*t"


_RAT = r"-?\d+(?:/\d+)?"
_NUMBER_RE = re.compile(rf"^\s*({_RAT})\s*(?:([+-])\s*({_RAT})\s*\*\s*t)?\s*$")


def parse_number(text: str) -> ExactNumber:
    """Parse a number literal: `a/b`, bare integer, or `a+b*t` / `a-b*t`."""
    m = _NUMBER_RE.match(text)
    if not m:
        stripped = text.strip()
        bad = len(text) - len(text.lstrip())
        for i, ch in enumerate(stripped):
            if ch not in "0123456789/+-* t":
                bad = text.index(stripped) + i if stripped else 0
                break
        raise ParseError("invalid number literal", text, bad)
    a = Fraction(m.group(1))
    if m.group(2) is None:
        return ExactNumber(a)
    b = Fraction(m.group(3))
    if m.group(2) == "-":
        b = -b
    return ExactNumber(a, b)


class NonMember(ValueError):
    """A value was asked to factor over a group it does not belong to."""


@dataclass(frozen=True)
class AdditiveGroup:
    """Additive subgroup of R: Z[1/n], Z[t], or all of Q.

    kind is one of 'zinv' (denominators divide a power of n), 'ztau'
    (integer coordinates in the (1, t) basis), 'rational'.
    """

    kind: str
    n: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("zinv", "ztau", "rational"):
            raise ValueError(f"unknown additive group kind {self.kind!r}")
        if self.kind == "zinv" and (self.n is None or self.n < 2):
            raise ValueError("Z[1/n] requires n >= 2")

    @staticmethod
    def z_inv(n: int) -> AdditiveGroup:
        return AdditiveGroup("zinv", n)

    @staticmethod
    def z_tau() -> AdditiveGroup:
        return AdditiveGroup("ztau")

    @staticmethod
    def rationals() -> AdditiveGroup:
        return AdditiveGroup("rational")

    def contains(self, x: ExactNumber) -> bool:
        if self.kind == "rational":
            return x.is_rational
        if self.kind == "zinv":
            if not x.is_rational:
                return False
            d = x.a.denominator
            assert self.n is not None
            g = gcd(d, self.n)
            while g > 1:
                while d % g == 0:
                    d //= g
                g = gcd(d, self.n)
            return d == 1
        return x.a.denominator == 1 and x.b.denominator == 1

    def sample_elements(self) -> tuple[ExactNumber, ...]:
        """Small test set used when checking closure conditions."""
        if self.kind == "zinv":
            assert self.n is not None
            inv = ExactNumber.rational(1, self.n)
            return (ONE, inv, inv * inv)
        if self.kind == "ztau":
            return (ONE, TAU)
        return (ONE, ExactNumber.rational(1, 2), ExactNumber.rational(1, 3))

    def __str__(self) -> str:
        if self.kind == "zinv":
            return f"Z[1/{self.n}]"
        return "Z[t]" if self.kind == "ztau" else "Q"


def _prime_factors(m: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def _rational_exponents(q: Fraction, primes: list[int]) -> list[int] | None:
    """Exponent vector of q over the given primes, or None if q is not
    supported on them."""
    out = []
    num, den = q.numerator, q.denominator
    for p in primes:
        e = 0
        while num % p == 0:
            num //= p
            e += 1
        while den % p == 0:
            den //= p
            e -= 1
        out.append(e)
    if num != 1 or den != 1:
        return None
    return out


@dataclass(frozen=True)
class SlopeGroup:
    """Finitely generated multiplicative subgroup of the positive reals.

    Generators must be > 0, != 1, and multiplicatively independent (a
    documented precondition, only sanity-checked).  factor() covers the
    cases needed here: all-rational generator sets via smooth
    factorization, and single-generator sets via iterated exact division.
    """

    generators: tuple[ExactNumber, ...]

    def __post_init__(self) -> None:
        if not self.generators:
            raise ValueError("slope group needs at least one generator")
        for g in self.generators:
            if g.sign() <= 0 or g == ONE:
                raise ValueError(f"generator {g} must be positive and != 1")

    @staticmethod
    def of(*gens) -> SlopeGroup:
        return SlopeGroup(tuple(ExactNumber.of(g) for g in gens))

    @property
    def rank(self) -> int:
        return len(self.generators)

    def _factor_rational(self, x: ExactNumber) -> tuple[int, ...]:
        primes: set[int] = set()
        for g in self.generators:
            primes |= set(_prime_factors(g.a.numerator))
            primes |= set(_prime_factors(g.a.denominator))
        plist = sorted(primes)
        target = _rational_exponents(x.a, plist)
        if target is None:
            raise NonMember(f"{x} is not supported on the primes of {self}")
        cols = [_rational_exponents(g.a, plist) for g in self.generators]
        # Solve the integer linear system prime-row by prime-row via
        # fraction-free Gaussian elimination; the solution, if any, is
        # unique because the generators are independent.
        from .intlinalg import IntMatrix, solve_integer

        mat = IntMatrix(tuple(tuple(col[i] for col in cols) for i in range(len(plist))))  # type: ignore[index]
        sol = solve_integer(mat, tuple(target))
        if sol is None:
            raise NonMember(f"{x} is not in {self}")
        return sol

    def _factor_single(self, x: ExactNumber) -> tuple[int, ...]:
        g = self.generators[0]
        base = g if g > ONE else g.inverse()
        flip = g < ONE
        # base > 1: divide toward 1 from whichever side x sits on.
        y = x
        e = 0
        while y > ONE:
            y = y / base
            e += 1
        while y < ONE:
            y = y * base
            e -= 1
        if y != ONE:
            raise NonMember(f"{x} is not a power of {g}")
        return (-e if flip else e,)

    def factor(self, x: ExactNumber) -> tuple[int, ...]:
        """Exponent vector e with x = prod(g_i ** e_i); NonMember otherwise."""
        if x.sign() <= 0:
            raise ValueError("can only factor positive values")
        if all(g.is_rational for g in self.generators):
            if not x.is_rational:
                raise NonMember(f"{x} is irrational, {self} is not")
            return self._factor_rational(x)
        if len(self.generators) == 1:
            return self._factor_single(x)
        raise ValueError(
            "factoring over mixed quadratic multi-generator groups is not supported"
        )

    def contains(self, x: ExactNumber) -> bool:
        try:
            self.factor(x)
            return True
        except NonMember:
            return False

    def expand(self, exponents: tuple[int, ...]) -> ExactNumber:
        if len(exponents) != len(self.generators):
            raise ValueError("exponent vector has wrong length")
        out = ONE
        for g, e in zip(self.generators, exponents):
            out = out * g**e
        return out

    def __str__(self) -> str:
        return "<" + ",".join(format_number(g) for g in self.generators) + ">"


_GROUP_RE = re.compile(r"^\s*Z\[\s*(1/(\d+)|t)\s*\]\s*$|^\s*Q\s*$")


def parse_additive_group(text: str) -> AdditiveGroup:
    """Parse `Z[1/n]`, `Z[t]`, or `Q`."""
    m = _GROUP_RE.match(text)
    if not m:
        raise ParseError("invalid additive group", text, 0)
    if m.group(0).strip() == "Q":
        return AdditiveGroup.rationals()
    if m.group(1) == "t":
        return AdditiveGroup.z_tau()
    return AdditiveGroup.z_inv(int(m.group(2)))


def parse_slope_group(text: str) -> SlopeGroup:
    """Parse `<g1,g2,...>` with number-literal generators."""
    stripped = text.strip()
    if not (stripped.startswith("<") and stripped.endswith(">")):
        raise ParseError("slope group must look like <2,3>", text, 0)
    parts = stripped[1:-1].split(",")
    return SlopeGroup(tuple(parse_number(p) for p in parts))
