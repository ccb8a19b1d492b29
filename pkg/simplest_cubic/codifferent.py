"""
The codifferent O_K^v and minimal traces

The dual basis phi_1, phi_2, phi_3 satisfies Tr(g_i phi_j) = [i == j], so
for d = sum u_j phi_j and alpha = sum a_i g_i the trace Tr(d alpha) is the
plain dot product of the coordinate vectors. The minimal trace of a totally
positive alpha is the least Tr(d alpha) over totally positive d in O_K^v.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import sympy

from .classify import BasisDescriptor, require_supported
from .field_core import (
    DEFAULT_PRECISION,
    FieldContext,
    FieldElement,
    NotIntegralError,
    NotTotallyPositiveError,
    SimplestCubicError,
    conjugate_enclosures,
    is_algebraic_integer,
    is_totally_positive,
    is_totally_positive_int,
    make_context,
    trace,
)
from .search import embedding_matrix, points_in_box

logger = logging.getLogger(__name__)

Matrix3 = Tuple[Tuple[Fraction, ...], ...]
IntTriple = Tuple[int, int, int]

# u1, u2, u3 in -3..3 covers the witnesses used for the families of minimal trace 1
HEURISTIC_RADIUS = 3


@dataclass(frozen=True)
class CodifferentElement:
    dual_coords: IntTriple
    as_field_elem: FieldElement

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dual_coords": list(self.dual_coords),
            "coords": [f"{c.numerator}/{c.denominator}" for c in self.as_field_elem.coords],
        }


@dataclass(frozen=True)
class MinimalTrace:
    """Result of a minimal trace computation

    checked_points counts the lattice points examined in the certifying box.
    """

    value: int
    witness: CodifferentElement
    certified: bool
    checked_points: int = 0
    bound: Optional[int] = field(default=None)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "min_trace": self.value,
            "witness": self.witness.to_dict(),
            "certified": self.certified,
            "checked_points": self.checked_points,
        }


def gram_matrix(ctx: FieldContext, basis: BasisDescriptor) -> Matrix3:
    """M[i][k] = Tr(g_i g_k), exact"""
    g = basis.elements(ctx.a)
    return tuple(tuple(trace(g[i] * g[k]) for k in range(3)) for i in range(3))


def _to_sympy(matrix: Matrix3) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in row] for row in matrix])


def _from_sympy(matrix: sympy.Matrix) -> Matrix3:
    return tuple(
        tuple(Fraction(int(matrix[i, k].p), int(matrix[i, k].q)) for k in range(3))
        for i in range(3)
    )


def invert_gram(matrix: Matrix3) -> Matrix3:
    m = _to_sympy(matrix)
    if m.det() == 0:
        raise SimplestCubicError("Trace form Gram matrix is singular")
    return _from_sympy(m.inv())


def closed_form_inverse_p3(a: int) -> Matrix3:
    """Inverse Gram matrix of the basis B3(1,1) in closed form"""
    delta = a * a + 3 * a + 9
    rows = (
        (a * a + 7 * a + 21, a * a + 7 * a + 9, -3 * (a + 6)),
        (a * a + 7 * a + 9, 2 * (a * a + 3 * a + 3), -3 * (2 * a + 3)),
        (-3 * (a + 6), -3 * (2 * a + 3), 18),
    )
    return tuple(tuple(Fraction(c, delta) for c in row) for row in rows)


class Codifferent:
    """Dual lattice of O_K under the trace form, for a supported basis"""

    def __init__(self, ctx: FieldContext, basis: Optional[BasisDescriptor] = None) -> None:
        self.ctx = ctx
        self.a = ctx.a
        self.basis = basis or require_supported(ctx.a).basis
        self.g = self.basis.elements(self.a)
        self.gram = gram_matrix(ctx, self.basis)
        self.gram_inverse = invert_gram(self.gram)
        self.phi = tuple(
            sum((self.gram_inverse[i][j] * self.g[i] for i in range(3)), FieldElement.rational(self.a, 0))
            for j in range(3)
        )
        # common denominator for the integer total-positivity test
        self._scale = 1
        for phi in self.phi:
            q, _ = phi.scaled()
            self._scale = math.lcm(self._scale, q)
        self._phi_scaled = tuple(tuple(int(c * self._scale) for c in phi.coords) for phi in self.phi)
        self._embedding: Optional[np.ndarray] = None

    def from_dual_coords(self, u: Tuple[int, int, int]) -> CodifferentElement:
        u1, u2, u3 = (int(c) for c in u)
        elem = u1 * self.phi[0] + u2 * self.phi[1] + u3 * self.phi[2]
        return CodifferentElement((u1, u2, u3), elem)

    def is_totally_positive(self, u: Tuple[int, int, int]) -> bool:
        y = [sum(u[j] * self._phi_scaled[j][i] for j in range(3)) for i in range(3)]
        return is_totally_positive_int(self.a, *y)

    def trace_pairing(self, d: CodifferentElement, alpha: FieldElement, check: bool = True) -> int:
        """Tr(d alpha) as the dot product of dual and integral coordinates"""
        try:
            coords = self.basis.to_int_coords(alpha)
        except ValueError as e:
            raise NotIntegralError(str(e)) from e
        value = sum(u * c for u, c in zip(d.dual_coords, coords))
        if check:
            direct = trace(d.as_field_elem * alpha)
            if direct != value:
                raise SimplestCubicError(f"Trace pairing {value} disagrees with Tr = {direct}")
        return value

    def _embedding_matrix(self) -> np.ndarray:
        if self._embedding is None:
            self._embedding = embedding_matrix(self.ctx, self.phi)
        return self._embedding

    def _heuristic(self, coords: IntTriple) -> Optional[Tuple[int, IntTriple]]:
        best: Optional[Tuple[int, IntTriple]] = None
        span = range(-HEURISTIC_RADIUS, HEURISTIC_RADIUS + 1)
        for u in itertools.product(span, repeat=3):
            value = sum(x * y for x, y in zip(u, coords))
            if value <= 0 or (best is not None and value >= best[0]):
                continue
            if self.is_totally_positive(u):  # type: ignore[arg-type]
                best = (value, u)  # type: ignore[assignment]
        return best

    def _box_search(self, alpha: FieldElement, coords: IntTriple, t_max: int) -> Tuple[Optional[Tuple[int, IntTriple]], int]:
        """Least Tr(d alpha) <= t_max over d >> 0, scanning 0 < sigma_i(d) < t_max/sigma_i(alpha)"""
        ctx = self.ctx
        enclosures = conjugate_enclosures(ctx, alpha)
        while any(lo <= 0 for lo, _ in enclosures):
            ctx = ctx.refine(ctx.interval_precision / 2**32)
            enclosures = conjugate_enclosures(ctx, alpha)
        hi = [float(Fraction(t_max) / lo) for lo, _ in enclosures]
        best: Optional[Tuple[int, IntTriple]] = None
        checked = 0
        for u in points_in_box(self._embedding_matrix(), [0.0, 0.0, 0.0], hi):
            checked += 1
            value = sum(x * y for x, y in zip(u, coords))
            if value <= 0 or value > t_max or (best is not None and value >= best[0]):
                continue
            if self.is_totally_positive(u):
                best = (value, u)
        return best, checked

    def minimal_trace(self, alpha: FieldElement, certify: bool = True, certify_limit: int = 4) -> MinimalTrace:
        """Least Tr(d alpha) over totally positive d in O_K^v

        A heuristic scan of small dual coordinates gives an upper bound U.
        Certification enumerates every d with conjugates below (U-1)/sigma_i(alpha);
        finding none proves U minimal. The box only goes up to certify_limit;
        a larger U comes back uncertified.
        """
        if not is_algebraic_integer(alpha):
            raise NotIntegralError(f"{alpha} is not an algebraic integer")
        if not is_totally_positive(alpha):
            raise NotTotallyPositiveError(f"{alpha} is not totally positive")
        coords = self.basis.to_int_coords(alpha)

        upper = self._heuristic(coords)
        if upper is not None and upper[0] == 1:
            return MinimalTrace(1, self.from_dual_coords(upper[1]), certified=True)

        if upper is not None and not certify:
            logger.warning(f"Minimal trace of {coords} not certified: bound {upper[0]}")
            return MinimalTrace(upper[0], self.from_dual_coords(upper[1]), certified=False, bound=upper[0])

        if upper is not None:
            t_max = min(upper[0] - 1, certify_limit)
            found, checked = self._box_search(alpha, coords, t_max) if t_max >= 1 else (None, 0)
            if found is not None:
                return MinimalTrace(found[0], self.from_dual_coords(found[1]), certified=True, checked_points=checked)
            if t_max < upper[0] - 1:
                logger.warning(f"Minimal trace of {coords} certified only above t={t_max}: bound {upper[0]}")
                return MinimalTrace(
                    upper[0], self.from_dual_coords(upper[1]), certified=False, bound=upper[0], checked_points=checked
                )
            return MinimalTrace(upper[0], self.from_dual_coords(upper[1]), certified=True, checked_points=checked)

        t_max, checked = 1, 0
        while True:
            found, count = self._box_search(alpha, coords, t_max)
            checked += count
            if found is not None:
                return MinimalTrace(found[0], self.from_dual_coords(found[1]), certified=True, checked_points=checked)
            t_max *= 2
            if t_max > 1024:
                raise SimplestCubicError(f"No totally positive codifferent element found for {coords}")


@lru_cache(maxsize=64)
def codifferent_for(a: int, precision: Fraction = DEFAULT_PRECISION) -> Codifferent:
    return Codifferent(make_context(a, precision))


def dual_basis(ctx: FieldContext, basis: BasisDescriptor) -> Tuple[FieldElement, FieldElement, FieldElement]:
    return Codifferent(ctx, basis).phi  # type: ignore[return-value]


def trace_pairing(d: CodifferentElement, alpha: FieldElement) -> int:
    return codifferent_for(alpha.a).trace_pairing(d, alpha)


def minimal_trace(alpha: FieldElement, certify: bool = True) -> MinimalTrace:
    return codifferent_for(alpha.a).minimal_trace(alpha, certify=certify)


def duality_table(codiff: Codifferent) -> List[List[Fraction]]:
    """Tr(g_i phi_j), which must be the identity"""
    return [[trace(codiff.g[i] * codiff.phi[j]) for j in range(3)] for i in range(3)]
