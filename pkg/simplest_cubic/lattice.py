"""
Candidates for indecomposables: lattice points of the two parallelepipeds

The totally positive cone is covered by unit multiples of two simplicial
cones with nodes (1, rho^2, (1+rho)^2) and (1, rho^2, l3), where

    l3 = -1 - a - (a^2+3a+3) rho + (a+2) rho^2.

Up to totally positive units every indecomposable is a lattice point of one
of the two half-open parallelepipeds spanned by these nodes.

For the B3(1,1) family the points of the second parallelepiped are known in
closed form, indexed by s in {0,1,2} and w = v(a+2) + r = t(a+1) + l; for
other bases they are found by scanning the t3 layers directly.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Set, Tuple

from .classify import BasisDescriptor, BasisKind, UnsupportedFieldError, require_p3_family
from .field_core import (
    FieldContext,
    FieldElement,
    SimplestCubicError,
    conjugate1,
    conjugate2,
    is_integral_scaled,
    is_totally_positive_int,
)
from .regions import REGIONS_BY_TAG, index_set
from .regions import region_of as _region_for_index

logger = logging.getLogger(__name__)

FIRST_PAR_TAG = "FirstPar"


class Parallelepiped(str, Enum):
    FIRST = "first"
    SECOND = "second"


def _ceil_div(num: int, den: int) -> int:
    return -(-num // den)


def _fraction_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class LatticeCandidate:
    """A lattice point of O_K in one of the parallelepipeds

    index is u = p(a^2+3a+3) t3 for the second parallelepiped and n = 2p t3
    for the first. The remaining integer labels are only known for the
    closed-form points of the B3(1,1) family.
    """

    elem: FieldElement
    parallelepiped: Parallelepiped
    index: int
    s: Optional[int] = None
    v: Optional[int] = None
    r: Optional[int] = None
    w: Optional[int] = None
    t: Optional[int] = None
    l_aux: Optional[int] = None
    e1: Optional[int] = None
    e2: Optional[int] = None
    region: Optional[str] = None
    basis_coords: Optional[Tuple[int, int, int]] = field(default=None, compare=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "parallelepiped": self.parallelepiped.value,
            "index": self.index,
            "s": self.s,
            "v": self.v,
            "r": self.r,
            "region": self.region,
            "coords": [_fraction_str(c) for c in self.elem.coords],
            "basis_coords": list(self.basis_coords) if self.basis_coords else None,
        }


def third_node(a: int) -> FieldElement:
    """l3 = rho'^-2, a totally positive unit"""
    return FieldElement.from_ints(a, -1 - a, -(a * a + 3 * a + 3), a + 2)


def first_parallelepiped_nodes(ctx: FieldContext) -> Tuple[FieldElement, FieldElement, FieldElement]:
    a = ctx.a
    return (
        FieldElement.rational(a, 1),
        FieldElement.from_ints(a, 0, 0, 1),
        FieldElement.from_ints(a, 1, 2, 1),
    )


def second_parallelepiped_nodes(ctx: FieldContext) -> Tuple[FieldElement, FieldElement, FieldElement]:
    a = ctx.a
    return FieldElement.rational(a, 1), FieldElement.from_ints(a, 0, 0, 1), third_node(a)


def parallelepiped_coordinates(x: FieldElement, which: Parallelepiped) -> Tuple[Fraction, Fraction, Fraction]:
    """Exact (t1, t2, t3) with x = t1 n1 + t2 n2 + t3 n3 over the nodes"""
    a = x.a
    x1, x2, x3 = x.coords
    if which == Parallelepiped.FIRST:
        t3 = x2 / 2
        return x1 - t3, x3 - t3, t3
    t3 = -x2 / (a * a + 3 * a + 3)
    return x1 + (a + 1) * t3, x3 - (a + 2) * t3, t3


def in_parallelepiped(x: FieldElement, which: Parallelepiped) -> bool:
    """Half-open membership: t1, t2 in [0, 1) and t3 in (0, 1)"""
    t1, t2, t3 = parallelepiped_coordinates(x, which)
    return 0 <= t1 < 1 and 0 <= t2 < 1 and 0 < t3 < 1


def ceiling_e1(a: int, s: int, v: int, r: int) -> int:
    D = a * a + 3 * a + 3
    return _ceil_div(s * (a * a + 2 * a + 2) + 3 * (v - r * (a + 1)), 3 * D)


def ceiling_e2(a: int, s: int, t: int, l: int) -> int:
    D = a * a + 3 * a + 3
    return _ceil_div(s * (a * a + 4 * a + 5) + 3 * (l * (a + 2) - t), 3 * D)


def candidate_shape(region: str) -> Tuple[int, int]:
    """(d1, d2) with alpha_s(v, r) = -(v - d1) - w rho + (v + d2) rho^2 - s g3"""
    return REGIONS_BY_TAG[region].shape


def _p3_point(a: int, s: int, v: int, r: int) -> LatticeCandidate:
    w = v * (a + 2) + r
    t, l = divmod(w, a + 1)
    e1 = ceiling_e1(a, s, v, r)
    e2 = ceiling_e2(a, s, t, l)
    tag = _region_for_index(a, s, v, r).tag
    d1, d2 = candidate_shape(tag)
    if (e1, t + e2) != (d1, v + d2):
        raise SimplestCubicError(
            f"Ceilings ({e1},{e2}) disagree with region {tag} shape {(d1, d2)} at s={s}, v={v}, r={r}, a={a}"
        )
    third = Fraction(s, 3)
    elem = FieldElement.from_ints(a, -v + e1 - third, -w - third, t + e2 - third)
    basis_coords = (-v + e1 - t - e2, -w - t - e2, -s + 3 * (t + e2))
    return LatticeCandidate(
        elem=elem,
        parallelepiped=Parallelepiped.SECOND,
        index=3 * w + s,
        s=s,
        v=v,
        r=r,
        w=w,
        t=t,
        l_aux=l,
        e1=e1,
        e2=e2,
        region=tag,
        basis_coords=basis_coords,
    )


def alpha_point(a: int, s: int, v: int, r: int) -> LatticeCandidate:
    """The closed-form point alpha_s(v, r) of the B3(1,1) family"""
    return _p3_point(a, s, v, r)


def second_parallelepiped_points_p3(ctx: FieldContext) -> List[LatticeCandidate]:
    """All 3(a^2+3a+3) - 1 closed-form points, ordered by (s, v, r)"""
    a = ctx.a
    require_p3_family(a)
    points = []
    for s in range(3):
        for v, r in index_set(a, s):
            cand = _p3_point(a, s, v, r)
            q, y = cand.elem.scaled()
            if not is_integral_scaled(a, q, *y):
                raise SimplestCubicError(f"alpha_{s}({v},{r}) is not an algebraic integer for a={a}")
            if not in_parallelepiped(cand.elem, Parallelepiped.SECOND):
                raise SimplestCubicError(f"alpha_{s}({v},{r}) lies outside the second parallelepiped")
            points.append(cand)
    logger.info(f"Generated {len(points)} closed-form candidates for a={a}")
    return points


def _require_bp_or_power(basis: BasisDescriptor) -> None:
    if basis.kind == BasisKind.UNSUPPORTED:
        raise UnsupportedFieldError(f"Lattice enumeration needs an integral basis, got {basis.label}")


def _decode_p3(a: int, cand: LatticeCandidate) -> LatticeCandidate:
    s = cand.index % 3
    w = cand.index // 3
    v, r = divmod(w, a + 2)
    t, l = divmod(w, a + 1)
    x1, _, x3 = cand.elem.coords
    third = Fraction(s, 3)
    e1 = int(x1 + v + third)
    e2 = int(x3 - t + third)
    return LatticeCandidate(
        elem=cand.elem,
        parallelepiped=cand.parallelepiped,
        index=cand.index,
        s=s,
        v=v,
        r=r,
        w=w,
        t=t,
        l_aux=l,
        e1=e1,
        e2=e2,
        region=_region_for_index(a, s, v, r).tag,
        basis_coords=cand.basis_coords,
    )


def second_parallelepiped_points_bruteforce(
    ctx: FieldContext, basis: BasisDescriptor
) -> List[LatticeCandidate]:
    """Scan t3 = u/(pD), D = a^2+3a+3, for every u in 1..pD-1

    x = (m + n rho + o rho^2)/p has n = -u, and the half-open windows for
    t1 and t2 leave p values each for m and o.
    """
    _require_bp_or_power(basis)
    a, p = ctx.a, basis.p
    D = a * a + 3 * a + 3
    decode = basis.kind == BasisKind.BP and basis.p == 3 and (basis.k, basis.l) == (1, 1)
    points = []
    for u in range(1, p * D):
        o_start = _ceil_div((a + 2) * u, D)
        m_start = _ceil_div(-(a + 1) * u, D)
        for o in range(o_start, o_start + p):
            for m in range(m_start, m_start + p):
                if not is_integral_scaled(a, p, m, -u, o):
                    continue
                elem = FieldElement.from_ints(a, Fraction(m, p), Fraction(-u, p), Fraction(o, p))
                cand = LatticeCandidate(
                    elem=elem,
                    parallelepiped=Parallelepiped.SECOND,
                    index=u,
                    basis_coords=basis.to_int_coords(elem),
                )
                points.append(_decode_p3(a, cand) if decode else cand)
    logger.info(f"Brute force found {len(points)} second-parallelepiped points for a={a}, basis {basis.label}")
    return points


def first_parallelepiped_points(ctx: FieldContext, basis: BasisDescriptor) -> List[LatticeCandidate]:
    """Points (m + n rho + o rho^2)/p, 1 <= n <= 2p-1, with m, o in [n/2, n/2 + p)

    Integrality forces o = n/l and m = k o modulo p.
    """
    _require_bp_or_power(basis)
    a, p = ctx.a, basis.p
    l_inv = pow(basis.l, -1, p) if p > 1 else 0
    points = []
    for n in range(1, 2 * p):
        start = _ceil_div(n, 2)
        o_res = (n * l_inv) % p if p > 1 else 0
        o = start + (o_res - start) % p if p > 1 else start
        m_res = (basis.k * o) % p if p > 1 else 0
        m = start + (m_res - start) % p if p > 1 else start
        if not is_integral_scaled(a, p, m, n, o):
            logger.debug(f"Dropping non-integral ({m} + {n} rho + {o} rho^2)/{p}")
            continue
        if not is_totally_positive_int(a, m, n, o):
            logger.info(f"Dropping ({m} + {n} rho + {o} rho^2)/{p}: not totally positive")
            continue
        elem = FieldElement.from_ints(a, Fraction(m, p), Fraction(n, p), Fraction(o, p))
        points.append(
            LatticeCandidate(
                elem=elem,
                parallelepiped=Parallelepiped.FIRST,
                index=n,
                region=FIRST_PAR_TAG,
                basis_coords=basis.to_int_coords(elem),
            )
        )
    logger.info(f"First parallelepiped has {len(points)} integral points for a={a}")
    return points


def transform_T1(x: FieldElement) -> FieldElement:
    """T1(x) = x' l3; permutes the nodes 1 -> l3 -> rho^2 -> 1"""
    return conjugate1(x) * third_node(x.a)


def transform_T2(x: FieldElement) -> FieldElement:
    """T2(x) = x'' rho^2 = T1(T1(x))"""
    return conjugate2(x) * FieldElement.from_ints(x.a, 0, 0, 1)


def region_of(candidate: LatticeCandidate) -> str:
    if candidate.parallelepiped == Parallelepiped.FIRST:
        return FIRST_PAR_TAG
    if candidate.s is None or candidate.v is None or candidate.r is None:
        raise SimplestCubicError("Region tags exist only for closed-form B3(1,1) points")
    return _region_for_index(candidate.elem.a, candidate.s, candidate.v, candidate.r).tag


def index_candidates(candidates: Iterable[LatticeCandidate]) -> Dict[FieldElement, LatticeCandidate]:
    return {cand.elem: cand for cand in candidates}


def region_image(
    ctx: FieldContext,
    transform: Callable[[FieldElement], FieldElement],
    tags: Iterable[str],
    points: Optional[List[LatticeCandidate]] = None,
) -> Set[Tuple[int, int, int]]:
    """(s, v, r) labels of the images of the given regions' points"""
    points = points if points is not None else second_parallelepiped_points_p3(ctx)
    lookup = index_candidates(points)
    wanted = set(tags)
    image = set()
    for cand in points:
        if cand.region not in wanted:
            continue
        target = lookup.get(transform(cand.elem))
        if target is None:
            raise SimplestCubicError(f"Image of alpha_{cand.s}({cand.v},{cand.r}) left the parallelepiped")
        image.add((target.s, target.v, target.r))
    return image  # type: ignore[return-value]


def region_points(ctx: FieldContext, tags: Iterable[str]) -> Set[Tuple[int, int, int]]:
    result = set()
    for tag in tags:
        region = REGIONS_BY_TAG[tag]
        for v, r in region.points(ctx.a):
            result.add((region.s, v, r))
    return result
