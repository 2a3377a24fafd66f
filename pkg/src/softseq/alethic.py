"""Exact arithmetic on the extended positive reals [0, inf].

Every quantity is parameterized by a hardness degree p in (0, inf].  For
finite p a value v is stored exactly through its power coordinate v**p,
which is kept as a big-integer rational; for p = inf the value itself is
stored.  The five structural operations (conjunctive and disjunctive
multiplication, duality, soft sum and harmonic soft sum) are closed over
extended rationals in this coordinate system, so everything here is exact.

Zero and infinity are handled by explicit case analysis in every
operation; in particular 0 (x) inf = 0 for the conjunctive product while
0 (x*) inf = inf for its disjunctive twin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class HardnessMismatch(ValueError):
    """Raised when two values under different hardness degrees interact."""


class NotRepresentable(ValueError):
    """Raised when a rational value has no rational power coordinate."""


def parse_rational(text: str) -> Fraction | None:
    """Parse ``n``, ``n/m`` or ``inf``; ``inf`` maps to None."""
    text = text.strip()
    if text == "inf":
        return None
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational literal {text!r}") from exc
    if "." in text or value < 0:
        raise ValueError(f"bad rational literal {text!r}")
    return value


def format_rational(value: Fraction | None) -> str:
    return "inf" if value is None else str(value)


@dataclass(frozen=True)
class Hardness:
    """Degree of hardness p: a positive rational, or infinite."""

    power: Fraction | None  # None encodes p = inf

    def __post_init__(self) -> None:
        if self.power is not None and self.power <= 0:
            raise ValueError("hardness must be a strictly positive rational or inf")

    @staticmethod
    def finite(value: Fraction | int | str) -> "Hardness":
        return Hardness(Fraction(value))

    @staticmethod
    def parse(text: str) -> "Hardness":
        q = parse_rational(text)
        if q is not None and q <= 0:
            raise ValueError(f"hardness must be positive, got {text!r}")
        return Hardness(q)

    @property
    def is_finite(self) -> bool:
        return self.power is not None

    def __str__(self) -> str:
        return format_rational(self.power)


INFINITE_HARDNESS = Hardness(None)


def _nth_root_exact(q: Fraction, n: int) -> Fraction | None:
    """Exact n-th root of a nonnegative rational, or None if irrational."""
    if n == 1:
        return q
    num = _int_nth_root(q.numerator, n)
    den = _int_nth_root(q.denominator, n)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _int_nth_root(value: int, n: int) -> int | None:
    if value in (0, 1):
        return value
    root = round(value ** (1.0 / n))
    for candidate in range(max(root - 2, 1), root + 3):
        if candidate**n == value:
            return candidate
    # float seed can be far off for huge ints; fall back to bisection
    lo, hi = 1, value
    while lo <= hi:
        mid = (lo + hi) // 2
        power = mid**n
        if power == value:
            return mid
        if power < value:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


@dataclass(frozen=True)
class Value:
    """An element of [0, inf] under a fixed hardness.

    ``coord`` is the power coordinate v**p for finite p and v itself at
    p = inf; None is the explicit infinity marker.
    """

    hardness: Hardness
    coord: Fraction | None

    def __post_init__(self) -> None:
        if self.coord is not None and self.coord < 0:
            raise ValueError("power coordinate must be nonnegative")

    @property
    def is_infinite(self) -> bool:
        return self.coord is None

    @property
    def is_zero(self) -> bool:
        return self.coord == 0

    @property
    def is_finite_positive(self) -> bool:
        return self.coord is not None and self.coord > 0

    def __str__(self) -> str:
        return f"{format_rational(self.coord)}@p={self.hardness}"


def zero(p: Hardness) -> Value:
    return Value(p, Fraction(0))


def one(p: Hardness) -> Value:
    return Value(p, Fraction(1))


def infinity(p: Hardness) -> Value:
    return Value(p, None)


def from_power_coord(p: Hardness, coord: Fraction | None) -> Value:
    return Value(p, Fraction(coord) if coord is not None else None)


def from_rational(p: Hardness, v: Fraction | int | None) -> Value:
    """Build the value v, converting to the power coordinate v**p.

    For fractional p the coordinate exists only when v**p is rational;
    anything else is rejected rather than approximated.
    """
    if v is None:
        return infinity(p)
    v = Fraction(v)
    if v < 0:
        raise ValueError("values live in [0, inf]")
    if not p.is_finite or v in (0, 1):
        return Value(p, v)
    num, den = p.power.numerator, p.power.denominator
    powered = v**num
    coord = _nth_root_exact(powered, den)
    if coord is None:
        raise NotRepresentable(f"{v}^{p.power} is not rational; cannot represent {v} at p={p}")
    return Value(p, coord)


def _require_same_hardness(a: Value, b: Value) -> Hardness:
    if a.hardness != b.hardness:
        raise HardnessMismatch(f"mixed hardness: {a.hardness} vs {b.hardness}")
    return a.hardness


def tensor(a: Value, b: Value) -> Value:
    """Conjunctive multiplication; 0 absorbs everything, including 0 (x) inf."""
    p = _require_same_hardness(a, b)
    if a.is_zero or b.is_zero:
        return zero(p)
    if a.is_infinite or b.is_infinite:
        return infinity(p)
    return Value(p, a.coord * b.coord)


def cotensor(a: Value, b: Value) -> Value:
    """Disjunctive multiplication; differs from tensor only at 0 (x*) inf = inf."""
    p = _require_same_hardness(a, b)
    if a.is_infinite or b.is_infinite:
        return infinity(p)
    if a.is_zero or b.is_zero:
        return zero(p)
    return Value(p, a.coord * b.coord)


def dual(a: Value) -> Value:
    """Inversion: 0* = inf, inf* = 0, finite a -> 1/a.  Involutive."""
    if a.is_zero:
        return infinity(a.hardness)
    if a.is_infinite:
        return zero(a.hardness)
    return Value(a.hardness, 1 / a.coord)


def padd(a: Value, b: Value) -> Value:
    """Soft sum: (a^p + b^p)^(1/p) for finite p, max at p = inf."""
    p = _require_same_hardness(a, b)
    if a.is_infinite or b.is_infinite:
        return infinity(p)
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    if not p.is_finite:
        return a if a.coord >= b.coord else b
    return Value(p, a.coord + b.coord)


def pcoadd(a: Value, b: Value) -> Value:
    """Harmonic soft sum: (a^-p + b^-p)^(-1/p) for finite p, min at p = inf."""
    p = _require_same_hardness(a, b)
    if a.is_zero or b.is_zero:
        return zero(p)
    if a.is_infinite:
        return b
    if b.is_infinite:
        return a
    if not p.is_finite:
        return a if a.coord <= b.coord else b
    return Value(p, (a.coord * b.coord) / (a.coord + b.coord))


def residual(a: Value, b: Value) -> Value:
    """a -o b, the residuation a* (x*) b; satisfies a <= b -o c iff a (x) b <= c."""
    p = _require_same_hardness(a, b)
    if a.is_zero:
        return infinity(p)
    if a.is_infinite:
        return infinity(p) if b.is_infinite else zero(p)
    if b.is_zero:
        return zero(p)
    if b.is_infinite:
        return infinity(p)
    return Value(p, b.coord / a.coord)


def leq(a: Value, b: Value) -> bool:
    """Total order with 0 at the bottom and inf on top.

    For finite p the power map is strictly monotone, so comparing power
    coordinates is comparing values.
    """
    _require_same_hardness(a, b)
    if b.is_infinite:
        return True
    if a.is_infinite:
        return False
    return a.coord <= b.coord


def value_max(a: Value, b: Value) -> Value:
    return b if leq(a, b) else a


def qualitative_additive(a: Value) -> bool:
    """Additive mode of truth: a > 0."""
    return not a.is_zero


def qualitative_multiplicative(a: Value) -> bool:
    """Multiplicative mode of truth: 1 <= a."""
    return leq(one(a.hardness), a)


def to_float(a: Value) -> float:
    """Decimal approximation of the value (p-th root of the coordinate).

    Accurate to well within 2^-40 * max(1, v) for finite values; infinity
    maps to float inf.
    """
    if a.is_infinite:
        return math.inf
    if a.is_zero:
        return 0.0
    log_coord = math.log(a.coord.numerator) - math.log(a.coord.denominator)
    if a.hardness.is_finite:
        log_coord /= float(a.hardness.power)
    return math.exp(log_coord)


def format_value(a: Value) -> str:
    """Exact power coordinate plus decimal, e.g. ``1/2@p=2 (0.7071067812)``."""
    if a.is_infinite:
        return f"inf@p={a.hardness} (inf)"
    return f"{a.coord}@p={a.hardness} ({to_float(a):.10g})"
