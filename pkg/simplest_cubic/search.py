"""
Lattice points inside a box of conjugate values

Given a basis b1, b2, b3 of a lattice in K and its float embedding matrix
E[i][j] = sigma_i(b_j), enumerate integer vectors u with

    lo_i < sum_j E[i][j] u_j < hi_i   for i = 0, 1, 2.

Floats only shape the search: every bound is widened before rounding, so
the caller must confirm each emitted point with exact arithmetic.
"""

import logging
import math
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .field_core import FieldContext, FieldElement, conjugates_float

logger = logging.getLogger(__name__)

RELATIVE_PAD = 2.0**-20
ABSOLUTE_PAD = 1e-9

IntTriple = Tuple[int, int, int]


def embedding_matrix(ctx: FieldContext, elements: Sequence[FieldElement]) -> np.ndarray:
    """E[i][j] = sigma_i(elements[j]) as floats"""
    columns = [conjugates_float(ctx, x) for x in elements]
    return np.array(columns, dtype=float).T


def _pad(value: float) -> float:
    return RELATIVE_PAD * (1.0 + abs(value)) + ABSOLUTE_PAD


def _int_range(lower: float, upper: float) -> range:
    lo = math.ceil(lower - _pad(lower))
    hi = math.floor(upper + _pad(upper))
    return range(lo, hi + 1)


def _row_range(row: np.ndarray, lo: Sequence[float], hi: Sequence[float]) -> Tuple[float, float]:
    """Range of row . y over the box lo < y < hi"""
    low = sum(c * (lo[i] if c > 0 else hi[i]) for i, c in enumerate(row))
    high = sum(c * (hi[i] if c > 0 else lo[i]) for i, c in enumerate(row))
    return float(low), float(high)


def _u1_bounds(
    E: np.ndarray, lo: Sequence[float], hi: Sequence[float], u2: float, u3: int
) -> Tuple[float, float]:
    lower, upper = -math.inf, math.inf
    for i in range(3):
        c = E[i][0]
        rest = E[i][1] * u2 + E[i][2] * u3
        if abs(c) < 1e-300:
            continue
        b_lo, b_hi = (lo[i] - rest) / c, (hi[i] - rest) / c
        if c < 0:
            b_lo, b_hi = b_hi, b_lo
        lower, upper = max(lower, b_lo), min(upper, b_hi)
    return lower, upper


def _u2_interval(
    E: np.ndarray, lo: Sequence[float], hi: Sequence[float], u3: int
) -> Optional[Tuple[float, float]]:
    """Eliminate u1 from the three strips; what is left is an interval in u2"""
    lowers: List[Tuple[float, float]] = []  # u1 >= p + q*u2
    uppers: List[Tuple[float, float]] = []  # u1 <= p + q*u2
    direct_lo, direct_hi = -math.inf, math.inf
    for i in range(3):
        c, d, e = E[i]
        if abs(c) < 1e-300:
            if abs(d) < 1e-300:
                if not lo[i] < e * u3 < hi[i]:
                    return None
                continue
            b_lo, b_hi = (lo[i] - e * u3) / d, (hi[i] - e * u3) / d
            if d < 0:
                b_lo, b_hi = b_hi, b_lo
            direct_lo, direct_hi = max(direct_lo, b_lo), min(direct_hi, b_hi)
            continue
        first = ((lo[i] - e * u3) / c, -d / c)
        second = ((hi[i] - e * u3) / c, -d / c)
        if c > 0:
            lowers.append(first)
            uppers.append(second)
        else:
            lowers.append(second)
            uppers.append(first)

    u2_lo, u2_hi = direct_lo, direct_hi
    for p_low, q_low in lowers:
        for p_up, q_up in uppers:
            # p_low + q_low u2 <= p_up + q_up u2
            slope = q_low - q_up
            gap = p_up - p_low
            if abs(slope) < 1e-300:
                if gap < -_pad(p_up) - _pad(p_low):
                    return None
            elif slope > 0:
                u2_hi = min(u2_hi, gap / slope)
            else:
                u2_lo = max(u2_lo, gap / slope)
    return u2_lo, u2_hi


def points_in_box(
    E: np.ndarray, lo: Sequence[float], hi: Sequence[float]
) -> Iterator[IntTriple]:
    """Integer u with lo < E u < hi, up to the widening of every bound

    The u3 range comes from the inverse embedding matrix, u2 from eliminating
    u1 for each fixed u3, and u1 from the three strips directly.
    """
    F = np.linalg.inv(E)
    u3_lo, u3_hi = _row_range(F[2], lo, hi)
    u2_glo, u2_ghi = _row_range(F[1], lo, hi)
    count = 0
    for u3 in _int_range(u3_lo, u3_hi):
        interval = _u2_interval(E, lo, hi, u3)
        if interval is None:
            continue
        u2_lo = max(interval[0], u2_glo)
        u2_hi = min(interval[1], u2_ghi)
        if u2_lo > u2_hi + _pad(u2_hi):
            continue
        for u2 in _int_range(u2_lo, u2_hi):
            u1_lo, u1_hi = _u1_bounds(E, lo, hi, u2, u3)
            for u1 in _int_range(u1_lo, u1_hi):
                count += 1
                yield u1, u2, u3
    logger.debug(f"Box search emitted {count} points")
