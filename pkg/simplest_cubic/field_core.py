"""
Exact arithmetic in simplest cubic fields

K = Q(rho) where rho is the largest root of f(x) = x^3 - a x^2 - (a+3) x - 1.
Provides:
- FieldContext: the parameter a with certified rational root intervals
- FieldElement: exact elements over the power basis {1, rho, rho^2}
- Conjugation, characteristic polynomials, total positivity and unit tests
- Rational enclosures of the three real embeddings
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Tuple, Union

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]
Coords = Tuple[Fraction, Fraction, Fraction]
Interval = Tuple[Fraction, Fraction]
IntTriple = Tuple[int, int, int]

DEFAULT_PRECISION = Fraction(1, 2**64)


class SimplestCubicError(Exception):
    """Base class for all errors raised by this package"""


class ContextMismatchError(SimplestCubicError, ValueError):
    """Arithmetic between elements of fields with different parameters"""


class NotIntegralError(SimplestCubicError, ValueError):
    """An algebraic integer was required"""


class NotTotallyPositiveError(SimplestCubicError, ValueError):
    """A totally positive element was required"""


class RootIsolationError(SimplestCubicError, RuntimeError):
    """Sign-change isolation of a root of f failed"""


def min_poly_value(a: int, x: Rational) -> Fraction:
    """Evaluate f(x) = x^3 - a x^2 - (a+3) x - 1 exactly"""
    x = Fraction(x)
    return ((x - a) * x - (a + 3)) * x - 1


@dataclass(frozen=True)
class FieldContext:
    """Parameter a together with certified enclosures of rho, rho', rho''

    root_intervals is indexed by embedding: 0 -> rho (largest root),
    1 -> rho' = -1 - 1/rho (below -1), 2 -> rho'' = -1/(1 + rho) (in (-1, 0)).
    """

    a: int
    delta_disc: int
    min_poly_coeffs: Tuple[int, int, int, int]
    root_intervals: Tuple[Interval, Interval, Interval]
    interval_precision: Fraction

    def rho(self) -> "FieldElement":
        return FieldElement.rho(self.a)

    def one(self) -> "FieldElement":
        return FieldElement.rational(self.a, 1)

    def element(self, x1: Rational, x2: Rational, x3: Rational) -> "FieldElement":
        return FieldElement(self.a, (Fraction(x1), Fraction(x2), Fraction(x3)))

    def root_midpoints(self) -> Tuple[float, float, float]:
        return tuple(float((lo + hi) / 2) for lo, hi in self.root_intervals)  # type: ignore[return-value]

    def refine(self, precision: Fraction) -> "FieldContext":
        """Return a context whose root intervals are at most `precision` wide"""
        if precision >= self.interval_precision:
            return self
        intervals = tuple(
            _bisect(self.a, lo, hi, precision) for lo, hi in self.root_intervals
        )
        return FieldContext(
            a=self.a,
            delta_disc=self.delta_disc,
            min_poly_coeffs=self.min_poly_coeffs,
            root_intervals=intervals,  # type: ignore[arg-type]
            interval_precision=Fraction(precision),
        )


def _bisect(a: int, lo: Fraction, hi: Fraction, precision: Fraction) -> Interval:
    f_lo = min_poly_value(a, lo)
    f_hi = min_poly_value(a, hi)
    if f_lo == 0:
        return lo, lo
    if f_hi == 0:
        return hi, hi
    if (f_lo > 0) == (f_hi > 0):
        raise RootIsolationError(f"No sign change of f on [{lo}, {hi}] for a={a}")
    while hi - lo > precision:
        mid = (lo + hi) / 2
        f_mid = min_poly_value(a, mid)
        if f_mid == 0:
            return mid, mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return lo, hi


def _starting_brackets(a: int) -> Tuple[Interval, Interval, Interval]:
    # f(-1) = 1 and f(0) = -1, so the three roots sit in (0, B), (-B, -1), (-1, 0)
    bound = Fraction(1 + max(abs(a), abs(a + 3), 1))
    generic = (
        (Fraction(0), bound),
        (-bound, Fraction(-1)),
        (Fraction(-1), Fraction(0)),
    )
    if a < 7:
        return generic
    tight = (
        (Fraction(a + 1), Fraction(a + 1) + Fraction(2, a)),
        (Fraction(-1) - Fraction(1, a), Fraction(-1) - Fraction(1, 2 * a)),
        (Fraction(-1, a + 2), Fraction(-1, a + 3)),
    )
    for lo, hi in tight:
        if min_poly_value(a, lo) * min_poly_value(a, hi) >= 0:
            logger.warning(f"Tight root bracket [{lo}, {hi}] rejected for a={a}")
            return generic
    return tight


def make_context(a: int, precision: Rational = DEFAULT_PRECISION) -> FieldContext:
    """Build the field context for parameter a

    Args:
        a: Family parameter, a >= -1
        precision: Maximal width of the root intervals

    Returns:
        FieldContext with isolated, ordered root intervals
    """
    if a < -1:
        raise ValueError(f"Parameter a must be >= -1, got {a}")
    precision = Fraction(precision)
    if precision <= 0:
        raise ValueError("Interval precision must be positive")

    intervals = tuple(
        _bisect(a, lo, hi, precision) for lo, hi in _starting_brackets(a)
    )
    logger.debug(f"Isolated roots of f for a={a} to width {precision}")
    return FieldContext(
        a=a,
        delta_disc=a * a + 3 * a + 9,
        min_poly_coeffs=(1, -a, -(a + 3), -1),
        root_intervals=intervals,  # type: ignore[arg-type]
        interval_precision=precision,
    )


def char_poly_int(a: int, y1: int, y2: int, y3: int) -> IntTriple:
    """Characteristic polynomial of y1 + y2 rho + y3 rho^2 over Z

    Returns (E1, E2, E3) with x^3 - E1 x^2 + E2 x - E3 the characteristic
    polynomial, read off the regular representation matrix.
    """
    # columns: y, y*rho, y*rho^2
    z1, z2, z3 = y3, y1 + (a + 3) * y3, y2 + a * y3
    w1, w2, w3 = z3, z1 + (a + 3) * z3, z2 + a * z3
    e1 = y1 + z2 + w3
    e2 = (y1 * z2 - z1 * y2) + (y1 * w3 - w1 * y3) + (z2 * w3 - w2 * z3)
    e3 = (
        y1 * (z2 * w3 - w2 * z3)
        - z1 * (y2 * w3 - w2 * y3)
        + w1 * (y2 * z3 - z2 * y3)
    )
    return e1, e2, e3


def is_totally_positive_int(a: int, y1: int, y2: int, y3: int) -> bool:
    """Total positivity of an integer vector over the power basis"""
    if y1 == 0 and y2 == 0 and y3 == 0:
        return False
    e1, e2, e3 = char_poly_int(a, y1, y2, y3)
    return e1 > 0 and e2 > 0 and e3 > 0


def is_integral_scaled(a: int, q: int, y1: int, y2: int, y3: int) -> bool:
    """Whether (y1 + y2 rho + y3 rho^2)/q is an algebraic integer"""
    e1, e2, e3 = char_poly_int(a, y1, y2, y3)
    return e1 % q == 0 and e2 % (q * q) == 0 and e3 % (q * q * q) == 0


def _as_fraction(value: Rational) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


@dataclass(frozen=True)
class FieldElement:
    """Exact element x1 + x2 rho + x3 rho^2 of K"""

    a: int
    coords: Coords

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "coords", tuple(_as_fraction(c) for c in self.coords)
        )

    @classmethod
    def rational(cls, a: int, value: Rational) -> "FieldElement":
        return cls(a, (Fraction(value), Fraction(0), Fraction(0)))

    @classmethod
    def rho(cls, a: int) -> "FieldElement":
        return cls(a, (Fraction(0), Fraction(1), Fraction(0)))

    @classmethod
    def from_ints(cls, a: int, x1: Rational, x2: Rational, x3: Rational) -> "FieldElement":
        return cls(a, (Fraction(x1), Fraction(x2), Fraction(x3)))

    def _coerce(self, other: object) -> Optional["FieldElement"]:
        if isinstance(other, FieldElement):
            if other.a != self.a:
                raise ContextMismatchError(
                    f"Cannot combine elements for a={self.a} and a={other.a}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement.rational(self.a, other)
        return None

    def __add__(self, other: object) -> "FieldElement":
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return FieldElement(self.a, tuple(p + q for p, q in zip(self.coords, y.coords)))  # type: ignore[arg-type]

    __radd__ = __add__

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.a, tuple(-c for c in self.coords))  # type: ignore[arg-type]

    def __sub__(self, other: object) -> "FieldElement":
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return self + (-y)

    def __rsub__(self, other: object) -> "FieldElement":
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return y - self

    def __mul__(self, other: object) -> "FieldElement":
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        a = self.a
        x1, x2, x3 = self.coords
        y1, y2, y3 = y.coords
        c0 = x1 * y1
        c1 = x1 * y2 + x2 * y1
        c2 = x1 * y3 + x2 * y2 + x3 * y1
        c3 = x2 * y3 + x3 * y2
        c4 = x3 * y3
        # rho^3 = 1 + (a+3) rho + a rho^2, rho^4 = a + (a^2+3a+1) rho + (a^2+a+3) rho^2
        return FieldElement(
            a,
            (
                c0 + c3 + a * c4,
                c1 + (a + 3) * c3 + (a * a + 3 * a + 1) * c4,
                c2 + a * c3 + (a * a + a + 3) * c4,
            ),
        )

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "FieldElement":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in K")
            return FieldElement(self.a, tuple(c / other for c in self.coords))  # type: ignore[arg-type]
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return self * inverse(y)

    def __pow__(self, exponent: int) -> "FieldElement":
        base = self if exponent >= 0 else inverse(self)
        result = FieldElement.rational(self.a, 1)
        e = abs(exponent)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return self.coords[1] == 0 and self.coords[2] == 0

    def scaled(self) -> Tuple[int, IntTriple]:
        """Return (q, y) with self = (y1 + y2 rho + y3 rho^2)/q, q > 0 minimal"""
        q = 1
        for c in self.coords:
            q = q * c.denominator // math.gcd(q, c.denominator)
        y = tuple(int(c * q) for c in self.coords)
        return q, y  # type: ignore[return-value]

    def __str__(self) -> str:
        x1, x2, x3 = self.coords
        return f"{x1} + {x2}*rho + {x3}*rho^2"


def _apply_automorphism(x: FieldElement, image: FieldElement) -> FieldElement:
    x1, x2, x3 = x.coords
    return x1 + x2 * image + x3 * (image * image)


def conjugate1(x: FieldElement) -> FieldElement:
    """Apply rho -> rho' = a+2 + a rho - rho^2"""
    a = x.a
    return _apply_automorphism(x, FieldElement.from_ints(a, a + 2, a, -1))


def conjugate2(x: FieldElement) -> FieldElement:
    """Apply rho -> rho'' = -2 - (a+1) rho + rho^2"""
    a = x.a
    return _apply_automorphism(x, FieldElement.from_ints(a, -2, -(a + 1), 1))


def char_poly(x: FieldElement) -> Tuple[Fraction, Fraction, Fraction]:
    """Return (e1, e2, e3): x^3 - e1 X^2 + e2 X - e3 is the char. polynomial"""
    q, (y1, y2, y3) = x.scaled()
    e1, e2, e3 = char_poly_int(x.a, y1, y2, y3)
    return Fraction(e1, q), Fraction(e2, q * q), Fraction(e3, q * q * q)


def trace(x: FieldElement) -> Fraction:
    return char_poly(x)[0]


def norm(x: FieldElement) -> Fraction:
    return char_poly(x)[2]


def inverse(x: FieldElement) -> FieldElement:
    """Exact inverse x' x'' / N(x)"""
    n = norm(x)
    if n == 0:
        raise ZeroDivisionError("zero has no inverse in K")
    return (conjugate1(x) * conjugate2(x)) / n


def is_totally_positive(x: FieldElement) -> bool:
    """Decide x >> 0 from the signs of the symmetric functions of its conjugates"""
    if x.is_zero():
        return False
    e1, e2, e3 = char_poly(x)
    return e1 > 0 and e2 > 0 and e3 > 0


def is_totally_nonnegative(x: FieldElement) -> bool:
    return x.is_zero() or is_totally_positive(x)


def is_algebraic_integer(x: FieldElement) -> bool:
    return all(e.denominator == 1 for e in char_poly(x))


def is_unit(x: FieldElement) -> bool:
    if not is_algebraic_integer(x):
        raise NotIntegralError(f"{x} is not an algebraic integer")
    return abs(norm(x)) == 1


def unit_power(a: int, i: int, j: int) -> FieldElement:
    """rho^i * rho'^j"""
    rho = FieldElement.rho(a)
    return (rho**i) * (conjugate1(rho) ** j)


def rho_inverse(a: int) -> FieldElement:
    """rho^-1 = rho^2 - a rho - (a+3)"""
    return FieldElement.from_ints(a, -(a + 3), -a, 1)


def _quadratic_range(
    x1: Fraction, x2: Fraction, x3: Fraction, lo: Fraction, hi: Fraction
) -> Interval:
    values = [x1 + x2 * lo + x3 * lo * lo, x1 + x2 * hi + x3 * hi * hi]
    if x3 != 0:
        vertex = -x2 / (2 * x3)
        if lo < vertex < hi:
            values.append(x1 + x2 * vertex + x3 * vertex * vertex)
    return min(values), max(values)


def conjugate_enclosure(ctx: FieldContext, x: FieldElement, k: int) -> Interval:
    """Rational interval containing sigma_k(x), k = 0 (rho), 1 (rho'), 2 (rho'')"""
    if x.a != ctx.a:
        raise ContextMismatchError(f"Element for a={x.a} used with context a={ctx.a}")
    if k not in (0, 1, 2):
        raise ValueError(f"Embedding index must be 0, 1 or 2, got {k}")
    lo, hi = ctx.root_intervals[k]
    return _quadratic_range(*x.coords, lo, hi)


def conjugate_enclosures(ctx: FieldContext, x: FieldElement) -> Tuple[Interval, Interval, Interval]:
    return tuple(conjugate_enclosure(ctx, x, k) for k in range(3))  # type: ignore[return-value]


def conjugates_float(ctx: FieldContext, x: FieldElement) -> Tuple[float, float, float]:
    """Midpoints of the conjugate enclosures; for bounding and display only"""
    return tuple(float((lo + hi) / 2) for lo, hi in conjugate_enclosures(ctx, x))  # type: ignore[return-value]


def sum_elements(a: int, elements: Iterable[FieldElement]) -> FieldElement:
    total = FieldElement.rational(a, 0)
    for x in elements:
        total = total + x
    return total
