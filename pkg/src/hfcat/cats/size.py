"""Size classification of categories, and the multirelation category."""
from __future__ import annotations

import dataclasses
from typing import Sequence

from ..encodings import graph_of, kpair
from ..hfset import SetTerm, canon, numeral
from ..hierarchy import hierarchy_for
from ..universes import UniverseSpec, is_class, is_small
from .category import FinCat


@dataclasses.dataclass(frozen=True)
class SizeVerdict:
    universe: UniverseSpec
    small: bool
    light: bool
    moderate: bool
    least_k: int | None          # least k <= kmax with C k-moderate
    kmax: int
    witnesses: dict              # flag -> description of the failing component

    def consistent(self) -> bool:
        """small => light => moderate => 1-moderate, and 0-moderate == small."""
        if self.small and not self.light or self.light and not self.moderate:
            return False
        if self.small != (self.least_k == 0):
            return False
        if self.moderate and self.kmax >= 1:
            return self.least_k is not None and self.least_k <= 1
        return True


def _components(C: FinCat):
    yield "ob", C.object_set()
    for a in C.objects:
        for b in C.objects:
            yield f"hom({a}, {b})", C.homset_term(a, b)


def classify_category(C: FinCat, U: UniverseSpec, kmax: int = 3) -> SizeVerdict:
    h = hierarchy_for(U)
    comps = list(_components(C))
    witnesses = {}

    def first_failing(pred, parts):
        return next((name for name, t in parts if not pred(t)), None)

    ob = comps[:1]
    homs = comps[1:]
    w_small = first_failing(lambda t: is_small(t, U), comps)
    w_ob_class = first_failing(lambda t: is_class(t, U), ob)
    w_hom_small = first_failing(lambda t: is_small(t, U), homs)
    w_hom_class = first_failing(lambda t: is_class(t, U), homs)
    small = w_small is None
    light = w_ob_class is None and w_hom_small is None
    moderate = w_ob_class is None and w_hom_class is None
    if not small:
        witnesses["small"] = w_small
    if not light:
        witnesses["light"] = w_ob_class or w_hom_small
    if not moderate:
        witnesses["moderate"] = w_ob_class or w_hom_class
    least = None
    for k in range(kmax + 1):
        bad = first_failing(lambda t: h.is_k_class(t, k), comps)
        if bad is None:
            least = k
            break
        witnesses[f"{k}-moderate"] = bad
    return SizeVerdict(U, small, light, moderate, least, kmax, witnesses)


# -- multirelations -------------------------------------------------------------

Matrix = tuple[tuple[int, ...], ...]


def multirel_id(n: int) -> Matrix:
    return tuple(tuple(1 if a == b else 0 for b in range(n)) for a in range(n))


def multirel_compose(p: Sequence[Sequence[int]], q: Sequence[Sequence[int]]) -> Matrix:
    """Composite of p: A -|-> B followed by q: B -|-> C, (a, c) |-> sum_b p[a][b] q[b][c].

    Matrices are lists of rows; an A x B matrix with |A| = 0 has no rows, so
    its column count is carried by ``q``'s row count.
    """
    inner = len(q)
    if any(len(row) != inner for row in p):
        raise ValueError(f"dimension mismatch: p has rows of length "
                         f"{sorted({len(r) for r in p})}, q has {inner} rows")
    cols = len(q[0]) if q else 0
    if any(len(row) != cols for row in q):
        raise ValueError("q is not rectangular")
    for m in (p, q):
        if any(v < 0 or int(v) != v for row in m for v in row):
            raise ValueError("multirelation entries must be natural numbers")
    return tuple(tuple(sum(p[a][b] * q[b][c] for b in range(inner)) for c in range(cols))
                 for a in range(len(p)))


def matrix_term(p: Sequence[Sequence[int]]) -> SetTerm:
    """A matrix as the graph (a, b) |-> numeral p[a][b] over numeral indices."""
    return graph_of((kpair(numeral(a), numeral(b)), numeral(v))
                    for a, row in enumerate(p) for b, v in enumerate(row))


@dataclasses.dataclass(frozen=True)
class MultirelHomset:
    """All natural-number matrices between sets of the given sizes (symbolic)."""
    rows: int
    cols: int

    @property
    def finite(self) -> bool:
        return self.rows * self.cols == 0

    def sample(self, bound: int) -> Matrix:
        """A member whose entries equal ``bound``; exists whenever the homset is infinite."""
        return tuple(tuple(bound for _ in range(self.cols)) for _ in range(self.rows))


@dataclasses.dataclass(frozen=True)
class HomsetJudgement:
    small: bool
    is_class: bool
    witness: Matrix | None
    reason: str


def judge_multirel_homset(H: MultirelHomset, U: UniverseSpec) -> HomsetJudgement:
    """Decide smallness and class-hood of a symbolic multirelation homset.

    A nonempty-dimension homset is infinite, so never a finite set; it is a
    class exactly when every matrix term lies in U, true for HF and false for
    any V_n (entries of size n push the term out of V_n).
    """
    if H.finite:
        t = matrix_term(H.sample(0))
        return HomsetJudgement(is_small(canon([t]), U), is_small(t, U), None,
                               "single empty matrix")
    if U.is_hf:
        return HomsetJudgement(False, True, None,
                               "infinitely many matrices, each hereditarily finite")
    witness = H.sample(U.n)
    assert not is_small(matrix_term(witness), U)
    return HomsetJudgement(False, False, witness,
                           f"matrix with entries {U.n} has rank >= {U.n}")
