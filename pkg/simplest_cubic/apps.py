"""
Applications: the Pythagoras number and universal quadratic forms

For the B3(1,1) family an explicit element gamma is a sum of six squares
and of no fewer, which pins the Pythagoras number of O_K at 6. The rank
bounds for universal forms follow from the number of indecomposables.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Set, Tuple

import sympy

from .classify import BasisDescriptor, require_p3_family, require_supported
from .field_core import (
    FieldContext,
    FieldElement,
    SimplestCubicError,
    char_poly_int,
    conjugate_enclosures,
    is_totally_positive,
    is_totally_positive_int,
    sum_elements,
    trace,
)
from .indecomposables import expected_count
from .search import embedding_matrix, points_in_box

logger = logging.getLogger(__name__)

IntTriple = Tuple[int, int, int]

# every totally positive integer is a sum of at most 6 squares here
PYTHAGORAS_UPPER_BOUND = 6
NONCLASSICAL_MIN_N = 240


FAMILY_BASIS = BasisDescriptor.bp(3, 1, 1)


def gamma_squares(ctx: FieldContext) -> List[FieldElement]:
    """Square roots of the six summands of gamma: 1, 1, 1, 2, w1, w2"""
    a = ctx.a
    require_p3_family(a)
    basis = FAMILY_BASIS
    w1 = basis.from_basis_coords(a, (Fraction(a + 6, 3), Fraction(a, 3), -1))
    w2 = basis.from_basis_coords(a, (Fraction(5 * a + 3, 9), Fraction(2 * a + 3, 3), -2))
    one = FieldElement.rational(a, 1)
    return [one, one, one, 2 * one, w1, w2]


def build_gamma(ctx: FieldContext) -> FieldElement:
    """gamma as a sum of six squares, checked against its power-basis form"""
    a = ctx.a
    from_squares = sum_elements(a, (w * w for w in gamma_squares(ctx)))
    closed = FieldElement.from_ints(
        a,
        Fraction(34 * a * a + 15 * a + 783, 81),
        Fraction(11 * a * a - 29 * a - 39, 27),
        Fraction(-(11 * a - 33), 27),
    )
    if from_squares != closed:
        raise SimplestCubicError(f"The two forms of gamma disagree for a={a}: {from_squares} vs {closed}")
    expected_trace = Fraction(16 * a * a - 24 * a + 981, 27)
    if trace(closed) != expected_trace:
        raise SimplestCubicError(f"Tr(gamma) = {trace(closed)}, expected {expected_trace}")
    return closed


def class3_square(a: int) -> IntTriple:
    """The square of the third class at r = 0, over (g1, g2, g3)"""
    return (a * a + 10 * a + 33) // 9, (a * a + 8 * a + 3) // 9, -(a + 6) // 3


def class5_square(a: int, r: int) -> Tuple[Fraction, Fraction, Fraction]:
    """The r-th square of the fifth class, over (g1, g2, g3)"""
    return (
        Fraction(15 - 8 * a + 36 * r + 9 * r * r, 9),
        Fraction(3 - 4 * a - 4 * a * a + (12 * a + 18) * r, 9),
        Fraction(4 * a - 3 - 12 * r, 3),
    )


def gamma_class5_parameter(a: int) -> int:
    return 5 * (a - 3) // 9


def class5_parameter(a: int, coords: IntTriple) -> Optional[int]:
    """r with class5_square(a, r) == coords, if there is one"""
    num = 4 * a - 3 - 3 * coords[2]
    if num % 12:
        return None
    r = num // 12
    return r if class5_square(a, r) == tuple(Fraction(c) for c in coords) else None


def _sign_normalized(u: IntTriple) -> bool:
    for c in u:
        if c:
            return c > 0
    return False


def squares_below(ctx: FieldContext, gamma: FieldElement) -> List[FieldElement]:
    """Every omega in O_K, up to sign, with gamma - omega^2 totally positive or zero

    The search box is |sigma_i(omega)| <= sqrt(sigma_i(gamma)).
    """
    a = ctx.a
    basis = require_supported(a).basis
    bounds = [math.sqrt(float(hi)) for _, hi in conjugate_enclosures(ctx, gamma)]
    E = embedding_matrix(ctx, basis.elements(a))
    found = []
    for u in points_in_box(E, [-b for b in bounds], bounds):
        if not _sign_normalized(u):
            continue
        omega = basis.from_basis_coords(a, u)
        rest = gamma - omega * omega
        if rest.is_zero() or is_totally_positive(rest):
            found.append(omega)
    found.sort(key=lambda w: (-trace(w * w), basis.to_int_coords(w)))
    logger.info(f"Found {len(found)} squares below gamma for a={a}")
    return found


@dataclass(frozen=True)
class SquaresDecomposition:
    count: int
    roots: Tuple[FieldElement, ...]


def min_squares_decomposition(
    ctx: FieldContext, gamma: FieldElement, squares: List[FieldElement], max_count: int = 8
) -> SquaresDecomposition:
    """Least k with gamma a sum of k squares omega^2, omega from squares

    Iterative deepening over non-increasing trace; a branch stops when the
    remainder is not totally positive or when k copies of the current square
    cannot reach the remaining trace.
    """
    a = ctx.a
    basis = require_supported(a).basis
    p = basis.p

    def scaled(x: FieldElement) -> IntTriple:
        return int(x.coords[0] * p), int(x.coords[1] * p), int(x.coords[2] * p)

    table: Dict[IntTriple, int] = {}
    entries: List[Tuple[IntTriple, int, FieldElement]] = []
    for omega in squares:
        y = scaled(omega * omega)
        if y in table:
            continue
        table[y] = len(entries)
        entries.append((y, char_poly_int(a, *y)[0], omega))
    order = sorted(range(len(entries)), key=lambda i: -entries[i][1])
    entries = [entries[i] for i in order]
    table = {entries[i][0]: i for i in range(len(entries))}
    failed: Set[Tuple[IntTriple, int, int]] = set()

    def search(rem: IntTriple, k: int, start: int) -> Optional[List[int]]:
        if k == 1:
            i = table.get(rem)
            return [i] if i is not None and i >= start else None
        key = (rem, k, start)
        if key in failed:
            return None
        rem_trace = char_poly_int(a, *rem)[0]
        for i in range(start, len(entries)):
            y, tr, _ = entries[i]
            if tr * k < rem_trace:
                break
            diff = (rem[0] - y[0], rem[1] - y[1], rem[2] - y[2])
            if not is_totally_positive_int(a, *diff):
                continue
            tail = search(diff, k - 1, i)
            if tail is not None:
                return [i] + tail
        failed.add(key)
        return None

    target = scaled(gamma)
    for k in range(1, max_count + 1):
        found = search(target, k, 0)
        if found is not None:
            logger.info(f"gamma is a sum of {k} squares for a={a}")
            return SquaresDecomposition(k, tuple(entries[i][2] for i in found))
        logger.debug(f"No decomposition into {k} squares")
    raise SimplestCubicError(f"No decomposition into at most {max_count} squares for a={a}")


def parity_filter(ctx: FieldContext, gamma: FieldElement, squares: List[FieldElement]) -> List[FieldElement]:
    """Roots omega whose square matches gamma's parity in g2 (odd a) or g3 (even a)"""
    a = ctx.a
    basis = require_supported(a).basis
    slot = 1 if a % 2 else 2
    target = basis.to_int_coords(gamma)[slot] % 2
    return [w for w in squares if basis.to_int_coords(w * w)[slot] % 2 == target]


RATIONAL_ROOTS = [2, 1, 1, 1]


def _class5_count(a: int, roots: Sequence[FieldElement]) -> int:
    return sum(class5_parameter(a, FAMILY_BASIS.to_int_coords(w * w)) is not None for w in roots)


def _rational_roots(roots: Sequence[FieldElement]) -> List[int]:
    return sorted((abs(int(w.coords[0])) for w in roots if w.is_rational()), reverse=True)


def _is_structured(a: int, roots: Sequence[FieldElement]) -> bool:
    """One class-5 square and the rational part 7 = 4 + 1 + 1 + 1"""
    return _class5_count(a, roots) == 1 and _rational_roots(roots) == RATIONAL_ROOTS


@dataclass
class PythagorasReport:
    a: int
    gamma_coords: IntTriple
    gamma_trace: int
    squares_below: int
    min_square_count: int
    decomposition: List[IntTriple]
    class5_squares: int
    rational_roots: List[int]
    parity_matches: int
    parity_isolates_class5: bool
    pythagoras_number: Optional[int] = field(default=None)

    @property
    def structure_ok(self) -> bool:
        return (
            self.min_square_count == PYTHAGORAS_UPPER_BOUND
            and self.class5_squares == 1
            and self.rational_roots == RATIONAL_ROOTS
            and self.parity_isolates_class5
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "a": self.a,
            "gamma": list(self.gamma_coords),
            "gamma_trace": self.gamma_trace,
            "squares_below": self.squares_below,
            "min_squares": self.min_square_count,
            "decomposition": [list(c) for c in self.decomposition],
            "class5_squares": self.class5_squares,
            "rational_roots": self.rational_roots,
            "parity_matches": self.parity_matches,
            "parity_isolates_class5": self.parity_isolates_class5,
            "structure_ok": self.structure_ok,
            "pythagoras_number": self.pythagoras_number,
        }


def pythagoras(ctx: FieldContext, max_count: int = 8) -> PythagorasReport:
    """Least number of squares for gamma, with the shape of an optimal decomposition

    When the search returns an optimal decomposition without the expected
    shape, the six explicit squares of gamma are used instead, provided six
    is optimal.
    """
    a = ctx.a
    basis = FAMILY_BASIS
    gamma = build_gamma(ctx)
    squares = squares_below(ctx, gamma)
    decomposition = min_squares_decomposition(ctx, gamma, squares, max_count=max_count)
    roots: Sequence[FieldElement] = decomposition.roots
    explicit = gamma_squares(ctx)
    if not _is_structured(a, roots) and decomposition.count == len(explicit):
        logger.info(f"Using the explicit six squares of gamma as the optimal decomposition for a={a}")
        roots = explicit
    matching = parity_filter(ctx, gamma, squares)
    isolated = bool(matching) and all(class5_parameter(a, basis.to_int_coords(w * w)) is not None for w in matching)
    report = PythagorasReport(
        a=a,
        gamma_coords=basis.to_int_coords(gamma),
        gamma_trace=int(trace(gamma)),
        squares_below=len(squares),
        min_square_count=decomposition.count,
        decomposition=[basis.to_int_coords(w) for w in roots],
        class5_squares=_class5_count(a, roots),
        rational_roots=_rational_roots(roots),
        parity_matches=len(matching),
        parity_isolates_class5=isolated,
        pythagoras_number=PYTHAGORAS_UPPER_BOUND if decomposition.count >= PYTHAGORAS_UPPER_BOUND else None,
    )
    if not report.structure_ok:
        logger.error(f"Decomposition of gamma for a={a} lacks the expected shape: {report.to_dict()}")
    return report


@dataclass(frozen=True)
class UqfBounds:
    """Rank bounds for universal quadratic forms over O_K"""

    a: int
    s_size: int
    n_trace1: int
    diag_upper: int
    classical_lower: Fraction
    nonclassical_lower: Optional[sympy.Expr] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "a": self.a,
            "s_size": self.s_size,
            "n_trace1": self.n_trace1,
            "diag_upper": self.diag_upper,
            "classical_lower": f"{self.classical_lower.numerator}/{self.classical_lower.denominator}",
            "nonclassical_lower": str(self.nonclassical_lower) if self.nonclassical_lower is not None else None,
        }


def uqf_bounds(ctx: FieldContext) -> UqfBounds:
    a = ctx.a
    require_p3_family(a)
    s_size = expected_count(a)
    n = (a * a + 3 * a) // 18
    nonclassical = sympy.sqrt(n) / 3 if n >= NONCLASSICAL_MIN_N else None
    return UqfBounds(
        a=a,
        s_size=s_size,
        n_trace1=n,
        diag_upper=PYTHAGORAS_UPPER_BOUND * s_size,
        classical_lower=Fraction(n, 3),
        nonclassical_lower=nonclassical,
    )
