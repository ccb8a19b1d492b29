"""
Classification of simplest cubic fields

Computes the conductor, the module index delta = [O_K : Z[rho]], the
monogenity verdict and an integral basis of the form
B_p(k, l) = {1, rho, (k + l rho + rho^2)/p}.
"""

import logging
from dataclasses import asdict, dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from sympy import factorint, integer_nthroot, isprime
from sympy.ntheory.residue_ntheory import sqrt_mod

from .field_core import (
    FieldElement,
    Rational,
    SimplestCubicError,
    char_poly_int,
    is_algebraic_integer,
)

logger = logging.getLogger(__name__)

EXCEPTIONAL_MONOGENIC = frozenset({-1, 0, 1, 2, 3, 5, 12, 54, 66, 1259, 2389})


class BasisKind(str, Enum):
    """Shape of the integral basis"""

    POWER = "power"
    BP = "Bp"
    UNSUPPORTED = "unsupported"


@dataclass(frozen=True)
class BasisDescriptor:
    """Integral basis g1 = 1, g2 = rho, g3 = (k + l rho + rho^2)/p

    The power basis is the case p = 1, k = l = 0.
    """

    kind: BasisKind
    p: int = 1
    k: int = 0
    l: int = 0

    @classmethod
    def power(cls) -> "BasisDescriptor":
        return cls(BasisKind.POWER)

    @classmethod
    def bp(cls, p: int, k: int, l: int) -> "BasisDescriptor":
        return cls(BasisKind.BP, p, k, l)

    @classmethod
    def unsupported(cls) -> "BasisDescriptor":
        return cls(BasisKind.UNSUPPORTED)

    @property
    def supported(self) -> bool:
        return self.kind != BasisKind.UNSUPPORTED

    @property
    def label(self) -> str:
        if self.kind == BasisKind.POWER:
            return "Z[rho]"
        if self.kind == BasisKind.BP:
            return f"B{self.p}({self.k},{self.l})"
        return "unsupported"

    def g3(self, a: int) -> FieldElement:
        return FieldElement.from_ints(
            a, Fraction(self.k, self.p), Fraction(self.l, self.p), Fraction(1, self.p)
        )

    def elements(self, a: int) -> Tuple[FieldElement, FieldElement, FieldElement]:
        return FieldElement.rational(a, 1), FieldElement.rho(a), self.g3(a)

    def basis_matrix(self) -> Tuple[Tuple[Fraction, ...], ...]:
        """Rows g1, g2, g3 over the power basis (1, rho, rho^2)"""
        self._require_supported()
        return (
            (Fraction(1), Fraction(0), Fraction(0)),
            (Fraction(0), Fraction(1), Fraction(0)),
            (Fraction(self.k, self.p), Fraction(self.l, self.p), Fraction(1, self.p)),
        )

    def to_basis_coords(self, x: FieldElement) -> Tuple[Fraction, Fraction, Fraction]:
        """Coordinates of x over (g1, g2, g3); integral iff x is in O_K"""
        self._require_supported()
        c1, c2, c3 = x.coords
        return c1 - self.k * c3, c2 - self.l * c3, self.p * c3

    def to_int_coords(self, x: FieldElement) -> Tuple[int, int, int]:
        u = self.to_basis_coords(x)
        if any(c.denominator != 1 for c in u):
            raise ValueError(f"{x} is not in O_K for basis {self.label}")
        return tuple(int(c) for c in u)  # type: ignore[return-value]

    def from_basis_coords(self, a: int, u: Tuple[Rational, Rational, Rational]) -> FieldElement:
        self._require_supported()
        u1, u2, u3 = (Fraction(c) for c in u)
        return FieldElement.from_ints(
            a,
            u1 + self.k * u3 / self.p,
            u2 + self.l * u3 / self.p,
            u3 / self.p,
        )

    def _require_supported(self) -> None:
        if not self.supported:
            raise UnsupportedFieldError("No integral basis available for this field")

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["kind"] = self.kind.value
        data["label"] = self.label
        return data


@dataclass(frozen=True)
class Classification:
    """Arithmetic invariants of the field with parameter a"""

    a: int
    delta_disc: int
    b: int
    c: int
    conductor: int
    module_index: int
    monogenic: bool
    in_exceptional_list: bool
    in_p3_family: bool
    basis: BasisDescriptor

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["basis"] = self.basis.to_dict()
        return data


class UnsupportedFieldError(SimplestCubicError):
    """The field lies outside the cases handled by the enumeration machinery"""

    def __init__(self, message: str, classification: Optional[Classification] = None) -> None:
        super().__init__(message)
        self.classification = classification


@dataclass(frozen=True)
class CanovasForm:
    """Parameters of the equivalent polynomial theta^3 - p theta + p q"""

    p: int
    q: int
    in_range: bool = field(default=True)


def cubefree_split(n: int) -> Tuple[int, int]:
    """Write n = b c^3 with b cube-free"""
    if n <= 0:
        raise ValueError(f"cubefree_split needs a positive integer, got {n}")
    b, c = 1, 1
    for prime, exp in factorint(n).items():
        b *= prime ** (exp % 3)
        c *= prime ** (exp // 3)
    return b, c


def discriminant_parameter(a: int) -> int:
    return a * a + 3 * a + 9


def conductor(a: int) -> int:
    """Conductor of K from the cube-free part of a^2 + 3a + 9"""
    if a < -1:
        raise ValueError(f"Parameter a must be >= -1, got {a}")
    b, _ = cubefree_split(discriminant_parameter(a))
    primes = list(factorint(b))
    if a % 3 != 0 or a % 27 == 12:
        result = 1
        for prime in primes:
            result *= prime
        return result
    result = 9
    for prime in primes:
        if prime != 3:
            result *= prime
    return result


def module_index(a: int) -> int:
    return discriminant_parameter(a) // conductor(a)


def is_monogenic(a: int) -> bool:
    if a in EXCEPTIONAL_MONOGENIC:
        return True
    _, exact = integer_nthroot(module_index(a), 3)
    return bool(exact)


def h_polynomials(a: int, k: int, l: int) -> Tuple[int, int, int]:
    """h1, h2, h3: p^i times the coefficients of the minimal polynomial of (k+l rho+rho^2)/p"""
    h1 = a * a + (l + 2) * a + 3 * k + 6
    h2 = (
        (2 * k - l + 1) * a * a
        + (-l * l + 2 * k * l + 4 * k - 3 * l + 4) * a
        + 3 * k * k - 3 * l * l + 12 * k - 3 * l + 9
    )
    h3 = (
        (k * k - k * l + k) * a * a
        + (k * k * l - k * l * l + 2 * k * k + l * l - 3 * k * l + 4 * k - l) * a
        + k**3 + l**3 - 3 * k * l * l + 6 * k * k - 3 * k * l + 9 * k - 3 * l + 1
    )
    return h1, h2, h3


def _passes_congruences(a: int, p: int, k: int, l: int) -> bool:
    h1, h2, h3 = h_polynomials(a, k, l)
    return h1 % p == 0 and h2 % (p * p) == 0 and h3 % (p**3) == 0


def _require_odd_prime(p: int) -> None:
    if p < 3 or not isprime(p):
        raise ValueError(f"p must be an odd prime, got {p}")


def find_all_kl(a: int, p: int) -> List[Tuple[int, int]]:
    _require_odd_prime(p)
    return [
        (k, l)
        for k in range(1, p)
        for l in range(1, p)
        if _passes_congruences(a, p, k, l)
    ]


def closed_form_kl(a: int, p: int) -> Tuple[int, int]:
    """l = -(2a^2+4a+6)/(2a+3), k = -(al+a^2+2a+6)/3 modulo p, for p > 3"""
    if p <= 3:
        raise ValueError("Closed forms for (k, l) need p > 3")
    l = (-(2 * a * a + 4 * a + 6) * pow(2 * a + 3, -1, p)) % p
    k = (-(a * l + a * a + 2 * a + 6) * pow(3, -1, p)) % p
    return k, l


def find_kl(a: int, p: int) -> Optional[Tuple[int, int]]:
    """The pair (k, l) with (k + l rho + rho^2)/p in O_K, if any

    All pairs 1 <= k, l <= p-1 are searched; for p > 3 a hit is
    cross-checked against the closed forms.
    """
    pairs = find_all_kl(a, p)
    if not pairs:
        return None
    if len(pairs) > 1:
        logger.warning(f"Several (k,l) pass the congruences for a={a}, p={p}: {pairs}")
    k, l = pairs[0]
    if p > 3 and (2 * a + 3) % p != 0:
        expected = closed_form_kl(a, p)
        if expected != (k, l):
            logger.error(f"Closed form {expected} disagrees with search {(k, l)} for a={a}, p={p}")
    return k, l


def hensel_roots(p: int) -> List[int]:
    """Roots of x^2 + 3x + 9 modulo p^2, lifted from the simple roots modulo p"""
    roots_mod_p = []
    for s in sqrt_mod(-27 % p, p, all_roots=True) or []:
        roots_mod_p.append(((s - 3) * pow(2, -1, p)) % p)
    modulus = p * p
    lifted = []
    for x0 in sorted(set(roots_mod_p)):
        fx = x0 * x0 + 3 * x0 + 9
        x1 = (x0 - fx * pow(2 * x0 + 3, -1, modulus)) % modulus
        lifted.append(x1)
    return sorted(lifted)


def family_parameters(p: int) -> Optional[List[Tuple[int, Tuple[int, int]]]]:
    """The two classes of a modulo p^2 with integral basis B_p, each with (k, l)"""
    if p <= 3 or not isprime(p):
        raise ValueError(f"p must be a prime > 3, got {p}")
    if p % 6 != 1:
        return None
    rows = []
    for residue in hensel_roots(p):
        k, l = closed_form_kl(residue, p)
        h1, h2, _ = h_polynomials(residue, k, l)
        if h1 % p or h2 % (p * p):
            logger.error(f"(k,l)=({k},{l}) fails the congruences for a={residue} mod {p}^2")
        rows.append((residue, (k, l)))
    logger.debug(f"Family parameters for p={p}: {rows}")
    return rows


def table1(pmax: int) -> List[Dict[str, Any]]:
    """Rows (p, a mod p^2, k, l) for every prime 7 <= p <= pmax, p = 1 mod 6"""
    rows = []
    for p in range(7, pmax + 1):
        if not isprime(p):
            continue
        params = family_parameters(p)
        if params is None:
            continue
        for residue, (k, l) in params:
            rows.append({"p": p, "a_mod_p2": residue, "k": k, "l": l})
    return rows


def in_p3_family(a: int) -> bool:
    """a = 3 or 21 (mod 27), a > 12 and (a^2+3a+9)/27 square-free"""
    if a <= 12 or a % 27 not in (3, 21):
        return False
    return all(exp == 1 for exp in factorint(discriminant_parameter(a) // 27).values())


def classify(a: int) -> Classification:
    """Assemble the full classification record for parameter a"""
    if a < -1:
        raise ValueError(f"Parameter a must be >= -1, got {a}")
    delta_disc = discriminant_parameter(a)
    b, c = cubefree_split(delta_disc)
    cond = conductor(a)
    index = delta_disc // cond
    family = in_p3_family(a)

    if family:
        basis = BasisDescriptor.bp(3, 1, 1)
        if index != 3:
            logger.error(f"p=3 family member a={a} has module index {index}")
    elif index == 1:
        basis = BasisDescriptor.power()
    elif isprime(index):
        pair = find_kl(a, index)
        if pair is None:
            logger.warning(f"No (k,l) found for a={a} with module index {index}")
            basis = BasisDescriptor.unsupported()
        else:
            basis = BasisDescriptor.bp(index, *pair)
    else:
        logger.warning(f"Module index {index} for a={a} is not 1 or prime; basis unsupported")
        basis = BasisDescriptor.unsupported()

    return Classification(
        a=a,
        delta_disc=delta_disc,
        b=b,
        c=c,
        conductor=cond,
        module_index=index,
        monogenic=is_monogenic(a),
        in_exceptional_list=a in EXCEPTIONAL_MONOGENIC,
        in_p3_family=family,
        basis=basis,
    )


def require_p3_family(a: int) -> Classification:
    result = classify(a)
    if not result.in_p3_family:
        raise UnsupportedFieldError(
            f"a={a} is not in the family with integral basis B3(1,1)", result
        )
    return result


def require_supported(a: int) -> Classification:
    result = classify(a)
    if not result.basis.supported:
        raise UnsupportedFieldError(
            f"a={a} has module index {result.module_index}; no supported integral basis",
            result,
        )
    return result


def to_canovas_form(a: int) -> CanovasForm:
    """p = (a^2+3a+9)/3 and q = (2a+3)/9 with 4p - 27q^2 = 9"""
    if a % 27 not in (3, 21):
        raise ValueError(f"a={a} is not congruent to 3 or 21 modulo 27")
    p = discriminant_parameter(a) // 3
    q = (2 * a + 3) // 9
    in_range = q % 3 != 0 and q > 2
    if not in_range:
        logger.info(f"Canovas form for a={a} is at the boundary: q={q}")
    return CanovasForm(p=p, q=q, in_range=in_range)


def basis_is_integral(a: int, basis: BasisDescriptor) -> bool:
    return is_algebraic_integer(basis.g3(a))


def smallest_valid_representative(p: int, residue: int, limit: int = 10_000) -> int:
    """Least a = residue (mod p^2) outside the exceptional list with basis B_p"""
    a = residue % (p * p)
    for _ in range(limit):
        if a not in EXCEPTIONAL_MONOGENIC:
            basis = classify(a).basis
            if basis.kind == BasisKind.BP and basis.p == p:
                return a
        a += p * p
    raise UnsupportedFieldError(f"No field with basis B{p} found in class {residue} mod {p}^2")


def integrality_coefficients(a: int, p: int, k: int, l: int) -> Tuple[Fraction, Fraction, Fraction]:
    """Char. polynomial coefficients of (k + l rho + rho^2)/p computed from the field"""
    e1, e2, e3 = char_poly_int(a, k, l, 1)
    return Fraction(e1, p), Fraction(e2, p * p), Fraction(e3, p**3)
