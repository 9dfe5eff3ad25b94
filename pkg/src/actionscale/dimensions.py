"""Exact-rational dimension algebra and logarithmic magnitude arithmetic.

Dimension exponents over the four base dimensions (mass, length, time,
temperature) are ``fractions.Fraction`` values, so chains of products and
rational powers never accumulate floating error.  Magnitudes are carried as
base-10 logarithms: the engine works in decades, needs arbitrary rational
powers (1/4, 3/2, ...) and touches intermediates around 1e60 and beyond,
all of which are effortless in log space.

Quantities are strictly positive magnitudes.  There is deliberately no
addition or subtraction: every formula in scope is a monomial, and summing
order-of-magnitude estimates would only hide modeling errors.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction

__all__ = [
    "Rational",
    "DimVec",
    "Quantity",
    "DimensionMismatch",
    "ParseError",
    "DIMENSIONLESS",
    "MASS",
    "LENGTH",
    "TIME",
    "TEMPERATURE",
    "VELOCITY",
    "FORCE",
    "ENERGY",
    "ACTION",
    "CHARGE",
    "NAMED_DIMENSIONS",
    "log10_ratio",
    "parse_quantity",
    "render_quantity",
    "display_quantity",
    "require_dim",
]


class DimensionMismatch(ValueError):
    """Two quantities of different dimensions were combined.

    This always signals a modeling bug in the caller; dimensions are never
    silently coerced.
    """


class ParseError(ValueError):
    """A quantity literal is malformed; carries the byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


def as_rational(value: Rational | int | str) -> Rational:
    """Coerce an exponent to an exact Fraction; floats are rejected."""
    if isinstance(value, float):
        raise TypeError("exponents must be exact rationals, not floats")
    return Fraction(value)


@dataclass(frozen=True)
class DimVec:
    """Vector of exact rational exponents over {M, L, T, Θ}.

    Absent (zero) exponents and explicit zeros compare equal; products add
    exponents componentwise and rational powers scale them exactly.
    """

    mass: Rational = Fraction(0)
    length: Rational = Fraction(0)
    time: Rational = Fraction(0)
    temperature: Rational = Fraction(0)

    def __post_init__(self):
        for name in ("mass", "length", "time", "temperature"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))

    def __mul__(self, other: DimVec) -> DimVec:
        if not isinstance(other, DimVec):
            return NotImplemented
        return DimVec(
            self.mass + other.mass,
            self.length + other.length,
            self.time + other.time,
            self.temperature + other.temperature,
        )

    def __truediv__(self, other: DimVec) -> DimVec:
        if not isinstance(other, DimVec):
            return NotImplemented
        return self * other ** -1

    def __pow__(self, exponent: Rational | int | str) -> DimVec:
        r = as_rational(exponent)
        return DimVec(
            self.mass * r, self.length * r, self.time * r, self.temperature * r
        )

    @property
    def is_dimensionless(self) -> bool:
        return not (self.mass or self.length or self.time or self.temperature)

    def exponents(self) -> tuple[Rational, Rational, Rational, Rational]:
        return (self.mass, self.length, self.time, self.temperature)

    def __str__(self) -> str:
        if self.is_dimensionless:
            return "1"
        parts = []
        for symbol, exp in zip(("M", "L", "T", "Θ"), self.exponents()):
            if exp == 0:
                continue
            if exp == 1:
                parts.append(symbol)
            elif exp.denominator == 1:
                parts.append(f"{symbol}^{exp.numerator}")
            else:
                parts.append(f"{symbol}^({exp.numerator}/{exp.denominator})")
        return " ".join(parts)


DIMENSIONLESS = DimVec()
MASS = DimVec(mass=1)
LENGTH = DimVec(length=1)
TIME = DimVec(time=1)
TEMPERATURE = DimVec(temperature=1)
VELOCITY = LENGTH / TIME
FORCE = MASS * LENGTH / TIME ** 2
ENERGY = FORCE * LENGTH
ACTION = ENERGY * TIME
# Electrostatic convention: charge²/length² is a force, so charge itself
# carries M^(1/2) L^(3/2) T^(-1).  No permittivity constant is needed.
CHARGE = (FORCE * LENGTH ** 2) ** Fraction(1, 2)

NAMED_DIMENSIONS = {
    "dimensionless": DIMENSIONLESS,
    "mass": MASS,
    "length": LENGTH,
    "time": TIME,
    "temperature": TEMPERATURE,
    "velocity": VELOCITY,
    "force": FORCE,
    "energy": ENERGY,
    "action": ACTION,
    "charge": CHARGE,
}


@dataclass(frozen=True)
class Quantity:
    """A strictly positive physical magnitude with a dimension.

    The magnitude is stored as its base-10 logarithm.  Multiplication,
    division and rational powers are supported; addition deliberately is not.
    """

    log10_magnitude: float
    dim: DimVec = DIMENSIONLESS

    @classmethod
    def from_si(cls, value: float, dim: DimVec = DIMENSIONLESS) -> Quantity:
        if not (value > 0) or math.isinf(value):
            raise ValueError(f"magnitudes are strictly positive, got {value!r}")
        return cls(math.log10(value), dim)

    @property
    def si(self) -> float:
        """Magnitude in SI base units (may overflow float for >~1e308)."""
        return 10.0 ** self.log10_magnitude

    def __mul__(self, other: Quantity | int | float) -> Quantity:
        if isinstance(other, Quantity):
            return Quantity(
                self.log10_magnitude + other.log10_magnitude, self.dim * other.dim
            )
        if isinstance(other, (int, float)):
            return self * Quantity.from_si(other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: Quantity | int | float) -> Quantity:
        if isinstance(other, Quantity):
            return Quantity(
                self.log10_magnitude - other.log10_magnitude, self.dim / other.dim
            )
        if isinstance(other, (int, float)):
            return self / Quantity.from_si(other)
        return NotImplemented

    def __rtruediv__(self, other: int | float) -> Quantity:
        if isinstance(other, (int, float)):
            return Quantity.from_si(other) / self
        return NotImplemented

    def __pow__(self, exponent: Rational | int | str) -> Quantity:
        r = as_rational(exponent)
        return Quantity(self.log10_magnitude * float(r), self.dim ** r)

    def __str__(self) -> str:
        return display_quantity(self)


def require_dim(q: Quantity, dim: DimVec, what: str) -> None:
    """Assert that ``q`` has dimension ``dim``; raise DimensionMismatch."""
    if q.dim != dim:
        raise DimensionMismatch(f"{what}: expected dimension {dim}, got {q.dim}")


def log10_ratio(a: Quantity, b: Quantity) -> float:
    """Decades between two quantities of identical dimension."""
    if a.dim != b.dim:
        raise DimensionMismatch(
            f"cannot compare {a.dim} against {b.dim}; ratios need equal dimensions"
        )
    return a.log10_magnitude - b.log10_magnitude


# --- quantity literal grammar -------------------------------------------
#
#   quantity    ::= significand (ws unit)*
#   significand ::= decimal ["e" int]
#   unit        ::= token ["^" "(" int ["/" posint] ")"]
#   token       ::= "kg" | "m" | "s" | "K" | "N" | "J"
#
# Division is not supported; use negative exponents, e.g. "1.38e-23 J K^(-1)".

UNIT_DIMS = {
    "kg": MASS,
    "m": LENGTH,
    "s": TIME,
    "K": TEMPERATURE,
    "N": FORCE,
    "J": ENERGY,
}

_WS = re.compile(r"\s+")
_SIGNIFICAND = re.compile(r"\d+(?:\.\d*)?(?:[eE][+-]?\d+)?")
_LETTERS = re.compile(r"[A-Za-z]+")
_INT = re.compile(r"[+-]?\d+")
_POSINT = re.compile(r"\d+")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        m = _WS.match(self.text, self.pos)
        if m:
            self.pos = m.end()

    def take(self, pattern: re.Pattern, expected: str) -> str:
        m = pattern.match(self.text, self.pos)
        if not m:
            raise ParseError(f"expected {expected}", self.pos)
        self.pos = m.end()
        return m.group()

    def take_literal(self, char: str, expected: str) -> None:
        if not self.text.startswith(char, self.pos):
            raise ParseError(f"expected {expected}", self.pos)
        self.pos += len(char)

    @property
    def done(self) -> bool:
        return self.pos >= len(self.text)


def _parse_exponent(sc: _Scanner) -> Rational:
    sc.take_literal("^", "'^'")
    sc.take_literal("(", "'(' after '^'")
    num = int(sc.take(_INT, "integer exponent"))
    den = 1
    if sc.text.startswith("/", sc.pos):
        sc.pos += 1
        den = int(sc.take(_POSINT, "positive denominator"))
        if den == 0:
            raise ParseError("denominator must be nonzero", sc.pos - 1)
    sc.take_literal(")", "')'")
    return Fraction(num, den)


def parse_quantity(text: str) -> Quantity:
    """Parse a quantity literal such as ``1.5e-14 N^(1/2) m``.

    The unit expression is reduced to base dimensions (N -> M L T^-2,
    J -> M L^2 T^-2).  Raises ParseError with the byte offset on bad input.
    """
    sc = _Scanner(text)
    sc.skip_ws()
    start = sc.pos
    value = float(sc.take(_SIGNIFICAND, "decimal significand"))
    if value == 0.0:
        raise ParseError("significand must be positive", start)
    dim = DIMENSIONLESS
    while True:
        before = sc.pos
        sc.skip_ws()
        if sc.done:
            break
        if sc.pos == before:
            raise ParseError("expected whitespace before unit token", sc.pos)
        tok_start = sc.pos
        token = sc.take(_LETTERS, "unit token (kg, m, s, K, N, J)")
        if token not in UNIT_DIMS:
            raise ParseError(
                f"unknown unit {token!r}; expected one of kg, m, s, K, N, J",
                tok_start,
            )
        exp = Fraction(1)
        if sc.text.startswith("^", sc.pos):
            exp = _parse_exponent(sc)
        dim = dim * UNIT_DIMS[token] ** exp
    return Quantity(math.log10(value), dim)


def _unit_text(dim: DimVec) -> str:
    parts = []
    for token, exp in zip(("kg", "m", "s", "K"), dim.exponents()):
        if exp == 0:
            continue
        if exp == 1:
            parts.append(token)
        elif exp.denominator == 1:
            parts.append(f"{token}^({exp.numerator})")
        else:
            parts.append(f"{token}^({exp.numerator}/{exp.denominator})")
    return " ".join(parts)


def _significand_decade(log10_magnitude: float, digits: int) -> tuple[float, int]:
    decade = math.floor(log10_magnitude)
    sig = 10.0 ** (log10_magnitude - decade)
    if float(f"{sig:.{digits}g}") >= 10.0:
        sig /= 10.0
        decade += 1
    return sig, decade


def render_quantity(q: Quantity, digits: int = 15) -> str:
    """Render a quantity as a literal that parses back to an equal quantity."""
    sig, decade = _significand_decade(q.log10_magnitude, digits)
    text = f"{sig:.{digits}g}e{decade:+d}"
    units = _unit_text(q.dim)
    return f"{text} {units}" if units else text


def display_quantity(q: Quantity, unit_hint: str | None = None) -> str:
    """Three-significant-digit rendering plus the explicit log10 value."""
    sig, decade = _significand_decade(q.log10_magnitude, 3)
    units = unit_hint if unit_hint is not None else _unit_text(q.dim)
    head = f"{sig:.2f}e{decade:+d}"
    if units:
        head = f"{head} {units}"
    return f"{head} (log10 = {q.log10_magnitude:.4f})"
