"""
Region tables for the second parallelepiped of the B3(1,1) family

A lattice point alpha_s(v, r) of the second parallelepiped is
    -(v - d1) - w rho + (v + d2) rho^2 - s g3,   w = v(a+2) + r,
where the shape (d1, d2) depends only on the region containing (v, r).
Regions P1..P4 (s=0), R1..R15 (s=1) and S1..S15 (s=2) tile the index set.
"""

from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Tuple

from .field_core import SimplestCubicError


class RegionError(SimplestCubicError):
    """An index (s, v, r) is covered by no region or by several"""


@dataclass(frozen=True)
class Region:
    """Rows of the form  v_lo <= v <= v_hi,  r_lo(v) <= r <= r_hi(v)"""

    tag: str
    s: int
    shape: Tuple[int, int]
    v_range: Callable[[int, int, int], Tuple[int, int]]
    r_range: Callable[[int, int, int, int], Tuple[int, int]]

    def contains(self, a: int, v: int, r: int) -> bool:
        third, two_thirds = a // 3, 2 * a // 3
        v_lo, v_hi = self.v_range(a, third, two_thirds)
        if not v_lo <= v <= v_hi:
            return False
        r_lo, r_hi = self.r_range(a, third, two_thirds, v)
        return r_lo <= r <= r_hi

    def points(self, a: int) -> Iterator[Tuple[int, int]]:
        third, two_thirds = a // 3, 2 * a // 3
        v_lo, v_hi = self.v_range(a, third, two_thirds)
        for v in range(v_lo, v_hi + 1):
            r_lo, r_hi = self.r_range(a, third, two_thirds, v)
            for r in range(r_lo, r_hi + 1):
                yield v, r


def _row(tag: str, s: int, shape: Tuple[int, int], v_range, r_range) -> Region:  # type: ignore[no-untyped-def]
    return Region(tag, s, shape, v_range, r_range)


# A = a/3, B = 2a/3; rows transcribed with inclusive bounds.
REGIONS: Tuple[Region, ...] = (
    _row("P1", 0, (0, 1), lambda a, A, B: (0, a - 1), lambda a, A, B, v: (1, a - v)),
    _row("P2", 0, (0, 1), lambda a, A, B: (0, a), lambda a, A, B, v: (a - v + 1, a - v + 1)),
    _row("P3", 0, (0, 2), lambda a, A, B: (0, a), lambda a, A, B, v: (a - v + 2, a + 1)),
    _row("P4", 0, (1, 1), lambda a, A, B: (1, a + 1), lambda a, A, B, v: (0, 0)),
    _row("R1", 1, (1, 1), lambda a, A, B: (0, A), lambda a, A, B, v: (1, A)),
    _row("R2", 1, (1, 1), lambda a, A, B: (A + 1, B - 1), lambda a, A, B, v: (1, B - v)),
    _row("R3", 1, (1, 1), lambda a, A, B: (0, B + 1), lambda a, A, B, v: (0, 0)),
    _row("R4", 1, (0, 1), lambda a, A, B: (0, A - 1), lambda a, A, B, v: (A + 1, B - v)),
    _row("R5", 1, (1, 2), lambda a, A, B: (A + 1, B), lambda a, A, B, v: (B - v + 1, A)),
    _row("R6", 1, (1, 2), lambda a, A, B: (B + 1, a - 1), lambda a, A, B, v: (1, a - v)),
    _row("R7", 1, (1, 2), lambda a, A, B: (B + 1, a), lambda a, A, B, v: (a - v + 1, a - v + 1)),
    _row("R8", 1, (1, 2), lambda a, A, B: (B + 1, a), lambda a, A, B, v: (a - v + 2, A + 1)),
    _row("R9", 1, (1, 2), lambda a, A, B: (B + 2, a + 1), lambda a, A, B, v: (0, 0)),
    _row("R10", 1, (0, 2), lambda a, A, B: (0, A), lambda a, A, B, v: (B - v + 1, a - v)),
    _row("R11", 1, (0, 2), lambda a, A, B: (A + 1, B - 1), lambda a, A, B, v: (A + 1, a - v)),
    _row("R12", 1, (0, 2), lambda a, A, B: (0, B), lambda a, A, B, v: (a - v + 1, a - v + 1)),
    _row("R13", 1, (0, 2), lambda a, A, B: (1, B), lambda a, A, B, v: (a - v + 2, a + 1)),
    _row("R14", 1, (0, 2), lambda a, A, B: (B + 1, a), lambda a, A, B, v: (A + 2, a + B - v + 2)),
    _row("R15", 1, (0, 3), lambda a, A, B: (B + 2, a), lambda a, A, B, v: (a + B - v + 3, a + 1)),
    _row("S1", 2, (1, 1), lambda a, A, B: (0, A - 2), lambda a, A, B, v: (1, A - v - 1)),
    _row("S2", 2, (1, 1), lambda a, A, B: (0, A - 1), lambda a, A, B, v: (0, 0)),
    _row("S3", 2, (1, 2), lambda a, A, B: (0, A - 1), lambda a, A, B, v: (A - v, B)),
    _row("S4", 2, (1, 2), lambda a, A, B: (A, a - 1), lambda a, A, B, v: (1, a - v)),
    _row("S5", 2, (1, 2), lambda a, A, B: (A, a), lambda a, A, B, v: (a - v + 1, a - v + 1)),
    _row("S6", 2, (1, 2), lambda a, A, B: (A + 1, B), lambda a, A, B, v: (a - v + 2, B + 1)),
    _row("S7", 2, (1, 2), lambda a, A, B: (B + 1, a), lambda a, A, B, v: (a - v + 2, a + A - v + 1)),
    _row("S8", 2, (1, 2), lambda a, A, B: (A, a + 1), lambda a, A, B, v: (0, 0)),
    _row("S9", 2, (0, 2), lambda a, A, B: (0, A - 1), lambda a, A, B, v: (B + 1, a - v)),
    _row("S10", 2, (0, 2), lambda a, A, B: (0, A - 1), lambda a, A, B, v: (a - v + 1, a - v + 1)),
    _row("S11", 2, (0, 2), lambda a, A, B: (1, A - 1), lambda a, A, B, v: (a - v + 2, a + 1)),
    _row("S12", 2, (0, 2), lambda a, A, B: (A, B - 1), lambda a, A, B, v: (B + 2, a + A - v + 1)),
    _row("S13", 2, (1, 3), lambda a, A, B: (B + 1, a), lambda a, A, B, v: (a + A - v + 2, B + 1)),
    _row("S14", 2, (0, 3), lambda a, A, B: (A + 1, B), lambda a, A, B, v: (a + A - v + 2, a + 1)),
    _row("S15", 2, (0, 3), lambda a, A, B: (B + 1, a), lambda a, A, B, v: (B + 2, a + 1)),
)

REGIONS_BY_TAG: Dict[str, Region] = {region.tag: region for region in REGIONS}


def regions_for(s: int) -> List[Region]:
    return [region for region in REGIONS if region.s == s]


def index_set(a: int, s: int) -> Iterator[Tuple[int, int]]:
    """All admissible (v, r): 0 <= v, r <= a+1, r = 0 if v = a+1, not the zero point"""
    for v in range(a + 2):
        r_max = 0 if v == a + 1 else a + 1
        for r in range(r_max + 1):
            if s == 0 and v == 0 and r == 0:
                continue
            yield v, r


def region_of(a: int, s: int, v: int, r: int) -> Region:
    """The unique region containing alpha_s(v, r)"""
    hits = [region for region in regions_for(s) if region.contains(a, v, r)]
    if len(hits) != 1:
        found = [region.tag for region in hits]
        raise RegionError(f"(s={s}, v={v}, r={r}) lies in {found or 'no region'} for a={a}")
    return hits[0]


def render_region_map(a: int, s: int) -> str:
    """ASCII picture of the (v, r) plane, r growing upwards"""
    tags = {(v, r): region_of(a, s, v, r).tag for v, r in index_set(a, s)}
    width = max(len(tag) for tag in tags.values()) + 1
    lines = []
    for r in range(a + 1, -1, -1):
        cells = [tags.get((v, r), ".").rjust(width) for v in range(a + 2)]
        lines.append(f"{r:>4} |" + "".join(cells))
    lines.append("     +" + "-" * (width * (a + 2)))
    lines.append("      " + "".join(str(v).rjust(width) for v in range(a + 2)))
    return "\n".join(lines)
