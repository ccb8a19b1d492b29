"""
Indecomposable integers of simplest cubic fields

For the B3(1,1) family the indecomposables are known in closed form, up to
multiplication by totally positive units: 1, g3 and eight families indexed
by v or r. This module generates that list, decides indecomposability by an
exhaustive search for a splitting alpha = beta + (alpha - beta), and checks
the one against the other on every lattice candidate.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from .classify import (
    BasisDescriptor,
    BasisKind,
    UnsupportedFieldError,
    classify,
    family_parameters,
    require_p3_family,
    require_supported,
    smallest_valid_representative,
)
from .codifferent import codifferent_for
from .field_core import (
    FieldContext,
    FieldElement,
    NotIntegralError,
    NotTotallyPositiveError,
    conjugate_enclosures,
    is_algebraic_integer,
    is_totally_positive,
    is_totally_positive_int,
    make_context,
    norm,
    unit_power,
)
from .lattice import (
    LatticeCandidate,
    Parallelepiped,
    first_parallelepiped_nodes,
    first_parallelepiped_points,
    in_parallelepiped,
    second_parallelepiped_nodes,
    second_parallelepiped_points_bruteforce,
    second_parallelepiped_points_p3,
)
from .parallel import parallel_map
from .search import embedding_matrix, points_in_box

logger = logging.getLogger(__name__)

IntTriple = Tuple[int, int, int]

DEFAULT_MAX_A_ORACLE = 48
CANONICAL_UNIT_RANGE = 4


class IndecFamily(str, Enum):
    UNIT = "unit1"
    I = "i"
    II = "ii"
    III = "iii"
    IV = "iv"
    V = "v"
    VI = "vi"
    VII = "vii"
    VIII = "viii"
    EXTERN = "extern"


FAMILY_MIN_TRACE = {
    IndecFamily.UNIT: 1,
    IndecFamily.I: 1,
    IndecFamily.II: 2,
    IndecFamily.III: 2,
    IndecFamily.IV: 2,
    IndecFamily.V: 1,
    IndecFamily.VI: 1,
    IndecFamily.VII: 1,
    IndecFamily.VIII: 1,
}


def _coords_str(x: FieldElement) -> List[str]:
    return [f"{c.numerator}/{c.denominator}" for c in x.coords]


@dataclass(frozen=True)
class IndecRecord:
    elem: FieldElement
    family: IndecFamily
    params: Tuple[int, ...]
    min_trace: int
    norm_abs: int
    basis_coords: Optional[IntTriple] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family.value,
            "params": list(self.params),
            "coords": _coords_str(self.elem),
            "basis_coords": list(self.basis_coords) if self.basis_coords else None,
            "min_trace": self.min_trace,
            "norm": self.norm_abs,
        }


def expected_count(a: int) -> int:
    """(a^2 + 3a)/18 + 2a + 2"""
    return (a * a + 3 * a) // 18 + 2 * a + 2


def generate_theorem_list(ctx: FieldContext) -> List[IndecRecord]:
    """The closed-form indecomposables of the B3(1,1) family, in family order"""
    a = ctx.a
    require_p3_family(a)
    basis = BasisDescriptor.bp(3, 1, 1)
    g3 = basis.g3(a)
    A, B = a // 3, 2 * a // 3

    def power(x1: int, x2: int, x3: int) -> FieldElement:
        return FieldElement.from_ints(a, x1, x2, x3)

    rows: List[Tuple[IndecFamily, Tuple[int, ...], FieldElement]] = [
        (IndecFamily.UNIT, (), power(1, 0, 0)),
        (IndecFamily.I, (), g3),
    ]
    rows += [(IndecFamily.II, (r,), power(0, -r, 1)) for r in range(1, A + 1)]
    rows += [
        (IndecFamily.III, (v,), power(-v, -(v * (a + 2) + 1), v + 1))
        for v in range(B + 1, a + 1)
    ]
    rows += [
        (IndecFamily.IV, (v,), power(-v, -(v * (a + 2) + a - v + 1), v + 1))
        for v in range(A)
    ]
    rows += [
        (IndecFamily.V, (v, r), power(-v, -(v * (a + 2) + r), v + 1) - g3)
        for v in range(A)
        for r in range(A + 1, B - v + 1)
    ]
    rows += [(IndecFamily.VI, (r,), power(1, -r, 1) - 2 * g3) for r in range(A)]
    rows += [
        (IndecFamily.VII, (v,), power(-v, -(v * (a + 2) + B + 1), v + 2) - 2 * g3)
        for v in range(A)
    ]
    rows += [
        (IndecFamily.VIII, (v,), power(-v, -(v * (a + 2) + a + A - v + 1), v + 2) - 2 * g3)
        for v in range(A, B)
    ]

    records = [
        IndecRecord(
            elem=elem,
            family=family,
            params=params,
            min_trace=FAMILY_MIN_TRACE[family],
            norm_abs=abs(int(norm(elem))),
            basis_coords=basis.to_int_coords(elem),
        )
        for family, params, elem in rows
    ]
    if len(records) != expected_count(a):
        logger.error(f"Generated {len(records)} indecomposables for a={a}, expected {expected_count(a)}")
    logger.info(f"Generated {len(records)} indecomposables for a={a}")
    return records


# Brute-force oracle


@dataclass(frozen=True)
class OracleResult:
    elem: FieldElement
    indecomposable: bool
    witness: Optional[Tuple[FieldElement, FieldElement]] = None
    scanned: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "coords": _coords_str(self.elem),
            "indecomposable": self.indecomposable,
            "witness": [_coords_str(x) for x in self.witness] if self.witness else None,
            "scanned": self.scanned,
        }


@dataclass
class _OracleSetup:
    ctx: FieldContext
    basis: BasisDescriptor
    embedding: np.ndarray
    summands: List[IntTriple]


@lru_cache(maxsize=16)
def _oracle_setup(a: int) -> _OracleSetup:
    ctx = make_context(a)
    basis = require_supported(a).basis
    embedding = embedding_matrix(ctx, basis.elements(a))
    nodes = list(first_parallelepiped_nodes(ctx)) + list(second_parallelepiped_nodes(ctx))
    nodes.append(basis.g3(a))
    summands: List[IntTriple] = []
    for node in nodes:
        y = (int(node.coords[0] * basis.p), int(node.coords[1] * basis.p), int(node.coords[2] * basis.p))
        # g3 is not totally positive for every B_p
        if y not in summands and is_totally_positive_int(a, *y):
            summands.append(y)
    return _OracleSetup(ctx, basis, embedding, summands)


def _difference(x: Sequence[int], y: Sequence[int]) -> IntTriple:
    return x[0] - y[0], x[1] - y[1], x[2] - y[2]


def is_indecomposable_bruteforce(alpha: FieldElement) -> OracleResult:
    """Search every beta in O_K with 0 << beta << alpha

    beta runs over the integral-basis lattice points with conjugates in
    (0, sigma_i(alpha)); both beta and alpha - beta are confirmed totally
    positive exactly.
    """
    a = alpha.a
    if not is_algebraic_integer(alpha):
        raise NotIntegralError(f"{alpha} is not an algebraic integer")
    if not is_totally_positive(alpha):
        raise NotTotallyPositiveError(f"{alpha} is not totally positive")
    setup = _oracle_setup(a)
    basis = setup.basis
    p, k, l = basis.p, basis.k, basis.l
    scaled = tuple(int(c * p) for c in alpha.coords)

    def witness(beta_scaled: Sequence[int]) -> Tuple[FieldElement, FieldElement]:
        beta = FieldElement.from_ints(a, *(Fraction(c, p) for c in beta_scaled))
        return beta, alpha - beta

    for summand in setup.summands:
        if summand != scaled and is_totally_positive_int(a, *_difference(scaled, summand)):
            return OracleResult(alpha, False, witness(summand), 0)

    hi = [float(upper) for _, upper in conjugate_enclosures(setup.ctx, alpha)]
    scanned = 0
    for u1, u2, u3 in points_in_box(setup.embedding, [0.0, 0.0, 0.0], hi):
        scanned += 1
        beta = (p * u1 + k * u3, p * u2 + l * u3, u3)
        if beta == scaled or not is_totally_positive_int(a, *beta):
            continue
        if is_totally_positive_int(a, *_difference(scaled, beta)):
            return OracleResult(alpha, False, witness(beta), scanned)
    return OracleResult(alpha, True, None, scanned)


def check_witness(alpha: FieldElement, pair: Tuple[FieldElement, FieldElement]) -> bool:
    beta, rest = pair
    return beta + rest == alpha and is_totally_positive(beta) and is_totally_positive(rest)


# Closed-form decompositions


def decomposition_witness_closed_form(
    ctx: FieldContext, cand: LatticeCandidate
) -> Optional[Tuple[FieldElement, FieldElement]]:
    """An explicit splitting (beta, alpha - beta) for a decomposable closed-form point

    Covers the points whose decomposition is written down directly; the
    rest follow from these through T1 and get no closed-form witness.
    """
    if cand.s is None or cand.v is None or cand.r is None:
        return None
    a = ctx.a
    A, B = a // 3, 2 * a // 3
    s, v, r, tag = cand.s, cand.v, cand.r, cand.region
    g3 = BasisDescriptor.bp(3, 1, 1).g3(a)

    def alpha1(r0: int) -> FieldElement:
        return FieldElement.from_ints(a, 0, -r0, 1) - g3

    alpha2 = FieldElement.from_ints(a, 1, 0, 1) - 2 * g3

    beta: Optional[FieldElement] = None
    if s == 0 and tag in ("P1", "P2"):
        if v == 0 and B + 1 <= r <= a:
            beta = alpha1(B)
        elif 0 <= v <= A - 1 and A + 1 <= r <= B - v:
            beta = g3
        elif (1 <= v <= A - 1 and v + 1 <= r <= A) or (v, r) == (A, A + 1):
            beta = alpha1(A + 1)
        elif 1 <= v <= A - 1 and B - v + 1 <= r <= a - 2 * v:
            beta = alpha1(B)
    elif s == 1:
        if tag in ("R1", "R2") and v == 0:
            beta = alpha2
        elif (tag in ("R1", "R2") and 1 <= v <= B - 1) or (tag == "R3" and 1 <= v <= B):
            beta = alpha1(B)
        elif tag in ("R5", "R6", "R7"):
            beta = alpha2
        elif tag == "R13" and 1 <= v <= B - 1 and r <= a + A - v + 1:
            beta = alpha1(A + 1)
    elif s == 2:
        if tag in ("S1", "S2") and 1 <= v <= A - 1 and r <= A - v - 1:
            beta = alpha1(B)
        elif tag in ("S3", "S4", "S5", "S8") and r > 0:
            beta = alpha2
        elif tag == "S8" and r == 0:
            beta = alpha1(A + 1)
        elif tag in ("S10", "S11"):
            beta = alpha1(v + r - B)
        elif tag == "S13":
            beta = alpha2

    if beta is None:
        return None
    return beta, cand.elem - beta


# Unit normalization


@lru_cache(maxsize=16)
def _tp_units(a: int, bound: int) -> Tuple[FieldElement, ...]:
    """rho^(2i) rho'^(2j) for |i|, |j| <= bound"""
    return tuple(
        unit_power(a, 2 * i, 2 * j)
        for i in range(-bound, bound + 1)
        for j in range(-bound, bound + 1)
    )


def canonical_representative(
    alpha: FieldElement, basis: Optional[BasisDescriptor] = None, bound: int = CANONICAL_UNIT_RANGE
) -> FieldElement:
    """Unit multiple of alpha with the least integral coordinates

    Multiples lying in one of the half-open parallelepipeds are preferred;
    without one the least multiple overall is used.
    """
    a = alpha.a
    basis = basis or require_supported(a).basis
    inside: List[Tuple[IntTriple, FieldElement]] = []
    everything: List[Tuple[IntTriple, FieldElement]] = []
    for unit in _tp_units(a, bound):
        multiple = unit * alpha
        key = basis.to_int_coords(multiple)
        everything.append((key, multiple))
        if in_parallelepiped(multiple, Parallelepiped.FIRST) or in_parallelepiped(multiple, Parallelepiped.SECOND):
            inside.append((key, multiple))
    if inside:
        return min(inside, key=lambda item: item[0])[1]
    logger.debug(f"No unit multiple of {alpha} inside the parallelepipeds within range {bound}")
    return min(everything, key=lambda item: item[0])[1]


def canonical_set(elements: Iterable[FieldElement], basis: Optional[BasisDescriptor] = None) -> Set[FieldElement]:
    return {canonical_representative(x, basis) for x in elements}


# Verification


@dataclass
class VerificationReport:
    a: int
    expected_count: int
    theorem_count: int
    candidate_count: int = 0
    indecomposable_count: int = 0
    decomposable_count: int = 0
    closed_form_witnesses: int = 0
    min_traces_checked: int = 0
    mismatches: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches and self.theorem_count == self.expected_count

    def to_dict(self) -> Dict[str, Any]:
        return {
            "a": self.a,
            "ok": self.ok,
            "expected_count": self.expected_count,
            "theorem_count": self.theorem_count,
            "candidate_count": self.candidate_count,
            "indecomposable_count": self.indecomposable_count,
            "decomposable_count": self.decomposable_count,
            "closed_form_witnesses": self.closed_form_witnesses,
            "min_traces_checked": self.min_traces_checked,
            "mismatches": self.mismatches,
        }


def _check_oracle_cap(a: int, max_a_oracle: int, allow_large: bool) -> None:
    if a <= max_a_oracle:
        return
    if not allow_large:
        raise ValueError(f"a={a} exceeds the oracle cap {max_a_oracle}; pass allow_large to run anyway")
    logger.warning(f"Running the brute-force oracle for a={a} beyond the cap {max_a_oracle}")


def verify_classification(
    ctx: FieldContext,
    max_a_oracle: int = DEFAULT_MAX_A_ORACLE,
    allow_large: bool = False,
    certify: bool = False,
    threads: Optional[int] = None,
    progress: bool = False,
) -> VerificationReport:
    """Check the closed-form list against the oracle on every candidate

    Every listed element must be indecomposable, every other candidate must
    split, and every closed-form splitting must consist of totally positive
    parts. With certify, the listed minimal traces are certified as well.
    """
    a = ctx.a
    require_p3_family(a)
    _check_oracle_cap(a, max_a_oracle, allow_large)

    records = generate_theorem_list(ctx)
    report = VerificationReport(a=a, expected_count=expected_count(a), theorem_count=len(records))
    basis = BasisDescriptor.bp(3, 1, 1)

    candidates = first_parallelepiped_points(ctx, basis) + second_parallelepiped_points_p3(ctx)
    one = FieldElement.rational(a, 1)
    elements = [one] + [cand.elem for cand in candidates]
    report.candidate_count = len(elements)

    results = parallel_map(is_indecomposable_bruteforce, elements, threads, desc=f"oracle a={a}", progress=progress)
    passing = {res.elem for res in results if res.indecomposable}
    listed = {rec.elem for rec in records}
    report.indecomposable_count = len(passing)
    report.decomposable_count = len(results) - len(passing)

    for res in results:
        if res.witness is not None and not check_witness(res.elem, res.witness):
            report.mismatches.append({"kind": "invalid_oracle_witness", "oracle": res.to_dict()})
    enumerated = set(elements)
    for rec in records:
        if rec.elem not in enumerated:
            report.mismatches.append({"kind": "not_enumerated", "record": rec.to_dict()})
        elif rec.elem not in passing:
            found = next(res for res in results if res.elem == rec.elem)
            report.mismatches.append({"kind": "listed_but_decomposable", "record": rec.to_dict(), "oracle": found.to_dict()})
    for res in results:
        if res.indecomposable and res.elem not in listed:
            report.mismatches.append({"kind": "unlisted_indecomposable", "oracle": res.to_dict()})

    if canonical_set(passing, basis) != canonical_set(listed, basis):
        report.mismatches.append({"kind": "unit_classes_differ"})

    for cand in candidates:
        pair = decomposition_witness_closed_form(ctx, cand)
        if pair is None:
            continue
        report.closed_form_witnesses += 1
        if not check_witness(cand.elem, pair):
            report.mismatches.append({"kind": "invalid_closed_form_witness", "candidate": cand.to_dict()})

    if certify:
        codiff = codifferent_for(a, ctx.interval_precision)
        for rec in records:
            found = codiff.minimal_trace(rec.elem, certify=True)
            report.min_traces_checked += 1
            if found.value != rec.min_trace:
                report.mismatches.append(
                    {"kind": "min_trace", "record": rec.to_dict(), "found": found.to_dict()}
                )

    if report.ok:
        logger.info(f"Verified {len(records)} indecomposables for a={a}")
    else:
        logger.error(f"Verification for a={a} found {len(report.mismatches)} mismatches")
    return report


# Norms


@dataclass(frozen=True)
class NormExtremes:
    a: int
    min_nonrational: int
    max_indec: int
    argmin: IndecRecord
    argmax: IndecRecord
    expected_min: int
    expected_max: int

    @property
    def matches(self) -> bool:
        return (self.min_nonrational, self.max_indec) == (self.expected_min, self.expected_max)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "a": self.a,
            "min_nonrational": self.min_nonrational,
            "max_indec": self.max_indec,
            "expected_min": self.expected_min,
            "expected_max": self.expected_max,
            "matches": self.matches,
            "argmin": self.argmin.to_dict(),
            "argmax": self.argmax.to_dict(),
        }


SMALL_NORM_EXCEPTIONS = (21, 30, 48)


def expected_norm_extremes(a: int) -> Tuple[int, int]:
    delta = a * a + 3 * a + 9
    if a in SMALL_NORM_EXCEPTIONS:
        return delta // 27, (2 * a**3 + 9 * a * a + 27 * a + 27) // 27
    return 2 * a + 3, delta * delta // 729


def family_vi_norm(a: int, r: int) -> Fraction:
    """Norm of 1 - r rho + rho^2 - 2 g3 as a polynomial in r"""
    return (
        -Fraction(r**3) - 3 * r * r + Fraction((a * a + 3 * a - 18) * r, 9) + Fraction(4 * a * a + 12 * a + 9, 27)
    )


def norm_extremes(ctx: FieldContext) -> NormExtremes:
    records = generate_theorem_list(ctx)
    nonrational = [rec for rec in records if not rec.elem.is_rational()]
    argmin = min(nonrational, key=lambda rec: rec.norm_abs)
    argmax = max(records, key=lambda rec: rec.norm_abs)
    expected_min, expected_max = expected_norm_extremes(ctx.a)
    result = NormExtremes(
        a=ctx.a,
        min_nonrational=argmin.norm_abs,
        max_indec=argmax.norm_abs,
        argmin=argmin,
        argmax=argmax,
        expected_min=expected_min,
        expected_max=expected_max,
    )
    if not result.matches:
        logger.error(
            f"Norm extremes for a={ctx.a}: found ({result.min_nonrational}, {result.max_indec}), "
            f"expected ({expected_min}, {expected_max})"
        )
    return result


# The field a = 41


A41 = 41


@dataclass(frozen=True)
class A41Item:
    item: int
    min_trace: int
    elements: Tuple[IntTriple, ...]


def a41_expected() -> List[A41Item]:
    """The fourteen families for a = 41 over the basis B7(4,3)"""
    items: List[Tuple[int, int, List[IntTriple]]] = [
        (1, 1, [(-(5 * v + 2), -w, 7 * v + 3) for v in range(6) for w in range(46 * v + 14, 45 * v + 20)]),
        (2, 1, [(0, -v, 1) for v in range(1, 7)]),
        (3, 1, [(-1, -v, 2) for v in range(1, 13)]),
        (4, 1, [(-(5 * v + 125), -(45 * v + 1132), 7 * v + 176) for v in range(6)]),
        (5, 1, [(-(5 * v + 31), -(45 * v + 283), 7 * v + 44) for v in range(12)]),
        (6, 1, [(-(5 * v + 5), -(46 * v + 22), 7 * v + 8) for v in range(6)]),
        (7, 1, [(-(5 * v + 6), -(46 * v + 41), 7 * v + 9) for v in range(12)]),
        (8, 2, [(-3, -v, 5) for v in range(9, 15)]),
        (9, 2, [(-(5 * v + 3), -(45 * v + 32), 7 * v + 5) for v in range(6)]),
        (10, 2, [(-(5 * v + 93), -(46 * v + 837), 7 * v + 131) for v in range(6)]),
        (11, 2, [(-4, -4, 7), (-4, -45, 7), (-209, -1890, 294)]),
        (12, 3, [(-4, -v, 7) for v in range(5, 10)]),
        (13, 3, [(-(5 * v + 4), -(45 * v + 45), 7 * v + 7) for v in range(1, 6)]),
        (14, 3, [(-(5 * v + 184), -(46 * v + 1660), 7 * v + 259) for v in range(5)]),
    ]
    return [A41Item(item, trace_value, tuple(elements)) for item, trace_value, elements in items]


@dataclass
class A41Report:
    expected_total: int
    found_total: int
    by_trace: Dict[int, int]
    expected_by_trace: Dict[int, int]
    mismatches: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> Dict[str, Any]:
        return {
            "a": A41,
            "ok": self.ok,
            "expected_total": self.expected_total,
            "found_total": self.found_total,
            "by_trace": {str(t): n for t, n in sorted(self.by_trace.items())},
            "expected_by_trace": {str(t): n for t, n in sorted(self.expected_by_trace.items())},
            "mismatches": self.mismatches,
        }


def verify_a41(ctx: FieldContext, threads: Optional[int] = None, progress: bool = False) -> A41Report:
    """Enumerate both parallelepipeds for a = 41 and compare with the itemized list"""
    if ctx.a != A41:
        raise UnsupportedFieldError(f"verify_a41 needs a=41, got a={ctx.a}")
    basis = require_supported(A41).basis
    if (basis.kind, basis.p, basis.k, basis.l) != (BasisKind.BP, 7, 4, 3):
        raise UnsupportedFieldError(f"Unexpected basis {basis.label} for a=41")

    candidates = first_parallelepiped_points(ctx, basis) + second_parallelepiped_points_bruteforce(ctx, basis)
    results = parallel_map(
        is_indecomposable_bruteforce, [c.elem for c in candidates], threads, desc="oracle a=41", progress=progress
    )
    found = canonical_set((res.elem for res in results if res.indecomposable), basis)
    bad_witnesses = [res for res in results if res.witness is not None and not check_witness(res.elem, res.witness)]

    expected: Dict[FieldElement, Tuple[int, int]] = {}
    for item in a41_expected():
        for coords in item.elements:
            elem = canonical_representative(basis.from_basis_coords(A41, coords), basis)
            expected[elem] = (item.item, item.min_trace)

    report = A41Report(
        expected_total=len(expected),
        found_total=len(found),
        by_trace={},
        expected_by_trace={},
    )
    for res in bad_witnesses:
        report.mismatches.append({"kind": "invalid_oracle_witness", "oracle": res.to_dict()})
    for _, trace_value in expected.values():
        report.expected_by_trace[trace_value] = report.expected_by_trace.get(trace_value, 0) + 1

    codiff = codifferent_for(A41, ctx.interval_precision)
    for elem in sorted(found, key=basis.to_int_coords):
        value = codiff.minimal_trace(elem, certify=True).value
        report.by_trace[value] = report.by_trace.get(value, 0) + 1
        if elem not in expected:
            report.mismatches.append({"kind": "unlisted_indecomposable", "basis_coords": list(basis.to_int_coords(elem)), "min_trace": value})
        elif expected[elem][1] != value:
            report.mismatches.append(
                {"kind": "min_trace", "item": expected[elem][0], "basis_coords": list(basis.to_int_coords(elem)), "found": value}
            )
    for elem, (item, _) in expected.items():
        if elem not in found:
            report.mismatches.append({"kind": "missing", "item": item, "basis_coords": list(basis.to_int_coords(elem))})
    return report


# First parallelepiped for p > 3


def first_par_table_expected() -> Dict[Tuple[int, int], List[IntTriple]]:
    """(p, a mod p^2) -> indecomposables of the first parallelepiped, over (g1, g2, g3)"""
    return {
        (7, 5): [],
        (7, 41): [],
        (13, 66): [(0, -1, 2), (-1, -3, 6), (-1, -3, 5)],
        (13, 100): [(-1, -1, 2), (-3, -2, 5), (-4, -3, 6)],
        (19, 154): [(-2, -1, 4), (-3, -1, 6), (-5, -2, 9)],
        (19, 204): [(-1, -3, 4), (-2, -5, 6), (-3, -7, 9)],
        (31, 356): [(-2, -2, 3), (-10, -8, 13), (-12, -10, 15), (-6, -5, 8), (-7, -6, 9), (-11, -9, 14)],
        (31, 602): [(0, -1, 3), (-2, -5, 15), (-2, -5, 13), (-1, -3, 9), (-1, -3, 8), (-2, -5, 14)],
    }


def first_par_indec_table(p: int, threads: Optional[int] = None) -> List[Dict[str, Any]]:
    """Indecomposables among the first-parallelepiped points, one row per class of a mod p^2"""
    params = family_parameters(p)
    if params is None:
        raise UnsupportedFieldError(f"No field has integral basis B{p} for p={p}")
    rows = []
    for residue, (k, l) in params:
        a = smallest_valid_representative(p, residue)
        ctx = make_context(a)
        basis = classify(a).basis
        points = first_parallelepiped_points(ctx, basis)
        results = parallel_map(is_indecomposable_bruteforce, [c.elem for c in points], threads)
        codiff = codifferent_for(a)
        elements = []
        invalid = []
        for cand, res in zip(points, results):
            if res.witness is not None and not check_witness(res.elem, res.witness):
                logger.error(f"Invalid splitting of {cand.basis_coords} for a={a}")
                invalid.append(res.to_dict())
            if res.indecomposable:
                elements.append(
                    {
                        "basis_coords": list(cand.basis_coords or basis.to_int_coords(cand.elem)),
                        "min_trace": codiff.minimal_trace(cand.elem, certify=True).value,
                    }
                )
        logger.info(f"p={p}, a={a}: {len(elements)} indecomposables in the first parallelepiped")
        rows.append(
            {"p": p, "a_mod_p2": residue, "a": a, "k": k, "l": l, "indecomposables": elements, "invalid_witnesses": invalid}
        )
    return rows
