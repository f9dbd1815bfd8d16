"""Pairing, tupling, representative selection and quotient encodings."""
from __future__ import annotations

import dataclasses
import enum
import itertools
from typing import Callable, Iterable, Mapping

from .config import budget
from .errors import LawError, ResourceError
from .hfset import EMPTY, SetTerm, _ack_key, canon, numeral

ZERO = numeral(0)
ONE = numeral(1)


# -- Kuratowski pairs and function graphs ------------------------------------

def kpair(a: SetTerm, b: SetTerm) -> SetTerm:
    return canon([canon([a]), canon([a, b])])


def kunpair(z: SetTerm) -> tuple[SetTerm, SetTerm] | None:
    kids = z.children
    if len(kids) == 1:
        (s,) = kids
        if len(s) == 1:
            return s.children[0], s.children[0]
        return None
    if len(kids) != 2:
        return None
    p, q = kids
    if len(p) == 1 and len(q) == 2:
        single, double = p, q
    elif len(q) == 1 and len(p) == 2:
        single, double = q, p
    else:
        return None
    a = single.children[0]
    x, y = double.children
    if x is a:
        return a, y
    if y is a:
        return a, x
    return None


def graph_of(mapping: Mapping[SetTerm, SetTerm] | Iterable[tuple[SetTerm, SetTerm]]) -> SetTerm:
    """Function graph {(i, f(i))} of a finite mapping."""
    items = mapping.items() if isinstance(mapping, Mapping) else mapping
    return canon(kpair(i, v) for i, v in items)


_fn_memo: dict[SetTerm, dict | None] = {}


def as_function(z: SetTerm) -> dict[SetTerm, SetTerm] | None:
    """Decode a function graph into a dict, or None if z is not one."""
    if z in _fn_memo:
        return _fn_memo[z]
    out: dict[SetTerm, SetTerm] | None = {}
    for e in z:
        p = kunpair(e)
        if p is None or p[0] in out:
            out = None
            break
        out[p[0]] = p[1]
    _fn_memo[z] = out
    return out


def graph_domain(z: SetTerm) -> SetTerm | None:
    f = as_function(z)
    return None if f is None else canon(f)


# -- level-k encodings -------------------------------------------------------

def pair_level(k: int, A: SetTerm, B: SetTerm) -> SetTerm:
    if k == 0:
        return kpair(A, B)
    return canon([pair_level(k - 1, ZERO, x) for x in A] +
                 [pair_level(k - 1, ONE, y) for y in B])


def tuple_level(k: int, I: SetTerm, fam: Mapping[SetTerm, SetTerm]) -> SetTerm:
    missing = [i for i in I if i not in fam]
    if missing:
        raise ValueError(f"family undefined at index {missing[0]}")
    if k == 0:
        return graph_of((i, fam[i]) for i in I)
    return canon(pair_level(k - 1, i, x) for i in I for x in fam[i])


def untuple_level1(z: SetTerm, I: SetTerm) -> dict[SetTerm, SetTerm] | None:
    """Invert ``tuple_level(1, I, -)`` for a known index set."""
    parts: dict[SetTerm, list] = {i: [] for i in I}
    for e in z:
        p = kunpair(e)
        if p is None or p[0] not in parts:
            return None
        parts[p[0]].append(p[1])
    return {i: canon(xs) for i, xs in parts.items()}


# -- Scott-McCarty star pairs --------------------------------------------------

_star_memo: dict[tuple[SetTerm, SetTerm], SetTerm] = {}


def star_pair(A: SetTerm, B: SetTerm) -> SetTerm:
    """The unique solution of (A,B)* = {(0,x)* | x in A} | {(1,y)* | y in B}.

    Recursive calls have a component drawn from A or B, so they descend in
    rank; the first component of every recursive call is 0 or 1.
    """
    key = (A, B)
    hit = _star_memo.get(key)
    if hit is None:
        hit = canon([star_pair(ZERO, x) for x in A] + [star_pair(ONE, y) for y in B])
        _star_memo[key] = hit
    return hit


_unstar_memo: dict[SetTerm, tuple | None] = {}


def star_unpair(z: SetTerm) -> tuple[SetTerm, SetTerm] | None:
    if z in _unstar_memo:
        return _unstar_memo[z]
    A, B = [], []
    out = None
    for e in z:
        d = star_unpair(e)
        if d is None:
            break
        if d[0] is ZERO:
            A.append(d[1])
        elif d[0] is ONE:
            B.append(d[1])
        else:
            break
    else:
        a, b = canon(A), canon(B)
        if star_pair(a, b) is z:
            out = (a, b)
    _unstar_memo[z] = out
    return out


def star_tuple(I: SetTerm, fam: Mapping[SetTerm, SetTerm]) -> SetTerm:
    return canon(star_pair(i, x) for i in I for x in fam[i])


# -- representative selection and quotients -----------------------------------

class ThetaMode(enum.Enum):
    SCOTT = "scott"
    CHOICE = "choice"

    @classmethod
    def parse(cls, text: str) -> ThetaMode:
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"theta mode must be scott or choice, got {text!r}") from None


def theta(X: SetTerm, mode: ThetaMode = ThetaMode.SCOTT) -> SetTerm:
    """Representative of a nonempty set.

    Scott mode returns the subset of least-rank elements; choice mode
    returns the Ackermann-least element itself.
    """
    if not X:
        raise ValueError("theta is undefined on the empty set")
    if mode is ThetaMode.CHOICE:
        return X.children[0]
    least = min(x.rank for x in X)
    return canon(x for x in X if x.rank == least)


@dataclasses.dataclass(frozen=True)
class EquivRelation:
    carrier: SetTerm
    pairs: SetTerm

    def __post_init__(self):
        rel = self._relation()
        carrier = set(self.carrier)
        for x in carrier:
            if x not in rel[x]:
                raise LawError(f"not reflexive at {x}")
        for x, ys in rel.items():
            for y in ys:
                if x not in rel[y]:
                    raise LawError(f"not symmetric at ({x}, {y})")
                if not rel[y] <= rel[x]:
                    z = next(iter(rel[y] - rel[x]))
                    raise LawError(f"not transitive at ({x}, {y}, {z})")

    def _relation(self) -> dict[SetTerm, set]:
        rel: dict[SetTerm, set] = {x: set() for x in self.carrier}
        for p in self.pairs:
            d = kunpair(p)
            if d is None:
                raise LawError(f"relation element {p} is not a pair")
            x, y = d
            if x not in rel or y not in rel:
                raise LawError(f"pair ({x}, {y}) leaves the carrier")
            rel[x].add(y)
        return rel

    def related(self, x: SetTerm, y: SetTerm) -> bool:
        return kpair(x, y) in self.pairs

    def block(self, x: SetTerm) -> SetTerm:
        return canon(y for y in self.carrier if kpair(x, y) in self.pairs)

    def blocks(self) -> list[SetTerm]:
        seen, out = set(), []
        for x in self.carrier:
            if x not in seen:
                b = self.block(x)
                seen.update(b)
                out.append(b)
        return out

    @classmethod
    def from_blocks(cls, carrier: SetTerm, blocks: Iterable[Iterable[SetTerm]]) -> EquivRelation:
        pairs = [kpair(x, y) for b in blocks for x in b for y in b]
        return cls(carrier, canon(pairs))

    @classmethod
    def from_key(cls, carrier: SetTerm, key: Callable[[SetTerm], object]) -> EquivRelation:
        groups: dict = {}
        for x in carrier:
            groups.setdefault(key(x), []).append(x)
        return cls.from_blocks(carrier, groups.values())

    @classmethod
    def identity(cls, carrier: SetTerm) -> EquivRelation:
        return cls(carrier, canon(kpair(x, x) for x in carrier))


def set_partitions(items: list) -> list[list[list]]:
    """All partitions of a list, blocks in first-occurrence order."""
    if not items:
        return [[]]
    head, rest = items[0], items[1:]
    out = []
    for p in set_partitions(rest):
        out.append([[head]] + p)
        for i in range(len(p)):
            out.append(p[:i] + [[head] + p[i]] + p[i + 1:])
    return out


def equivalence_relations(carrier: SetTerm) -> list[EquivRelation]:
    """Every equivalence relation on a set, ordered by Ackermann order of the pair sets."""
    rels = [EquivRelation.from_blocks(carrier, p) for p in set_partitions(list(carrier))]
    return sorted(rels, key=lambda r: _ack_key(r.pairs))


def quotient_star(A: SetTerm, R: EquivRelation, mode: ThetaMode = ThetaMode.SCOTT) -> SetTerm:
    """A /* R: the set of theta-representatives of the R-blocks."""
    if R.carrier is not A:
        raise LawError("relation carrier differs from the quotiented set")
    return canon(theta(b, mode) for b in R.blocks())


def representative_of(x: SetTerm, R: EquivRelation, mode: ThetaMode = ThetaMode.SCOTT) -> SetTerm:
    return theta(R.block(x), mode)


# -- class constructions -------------------------------------------------------

def class_sum(B: SetTerm, C: SetTerm) -> SetTerm:
    return canon([kpair(ZERO, b) for b in B] + [kpair(ONE, c) for c in C])


def class_prod(B: SetTerm, C: SetTerm) -> SetTerm:
    return canon(kpair(b, c) for b in B for c in C)


def class_sigma(B: SetTerm, fam: Mapping[SetTerm, SetTerm]) -> SetTerm:
    return canon(kpair(b, c) for b in B for c in fam[b])


def class_pi(I: SetTerm, fam: Mapping[SetTerm, SetTerm]) -> SetTerm:
    """Set of all choice tuples, each a function graph over I."""
    size = 1
    for i in I:
        size *= len(fam[i])
        if size > budget().max_product:
            raise ResourceError(f"product over {len(I)} indices exceeds max_product")
    idx = I.children
    return canon(graph_of(zip(idx, choice))
                 for choice in itertools.product(*(fam[i].children for i in idx)))


# -- pluggable encoding for the tuple clauses of Psi -------------------------

class PairEncoding:
    """How pairs and indexed tuples of elements are represented as sets."""

    name = "abstract"

    def pair(self, a, b):  # pragma: no cover - interface
        raise NotImplementedError

    def unpair(self, z):  # pragma: no cover - interface
        raise NotImplementedError

    def tuple(self, I, fam):  # pragma: no cover - interface
        raise NotImplementedError

    def tuple_values(self, z, I):  # pragma: no cover - interface
        """Values if z is the I-indexed tuple of some family, else None."""
        raise NotImplementedError

    def min_domain(self, z):  # pragma: no cover - interface
        """Least index set over which z could be a tuple, or None."""
        raise NotImplementedError


class KuratowskiEncoding(PairEncoding):
    name = "kuratowski"

    def pair(self, a, b):
        return kpair(a, b)

    def unpair(self, z):
        return kunpair(z)

    def tuple(self, I, fam):
        return graph_of((i, fam[i]) for i in I)

    def tuple_values(self, z, I):
        f = as_function(z)
        if f is None or len(f) != len(I) or any(i not in f for i in I):
            return None
        return f

    def min_domain(self, z):
        return graph_domain(z)


class StarEncoding(PairEncoding):
    name = "star"

    def pair(self, a, b):
        return star_pair(a, b)

    def unpair(self, z):
        return star_unpair(z)

    def tuple(self, I, fam):
        return star_tuple(I, fam)

    def tuple_values(self, z, I):
        parts: dict[SetTerm, list] = {i: [] for i in I}
        for e in z:
            d = star_unpair(e)
            if d is None or d[0] not in parts:
                return None
            parts[d[0]].append(d[1])
        return {i: canon(v) for i, v in parts.items()}

    def min_domain(self, z):
        firsts = []
        for e in z:
            d = star_unpair(e)
            if d is None:
                return None
            firsts.append(d[0])
        return canon(firsts)


KURATOWSKI = KuratowskiEncoding()
STAR = StarEncoding()


def sorted_terms(terms: Iterable[SetTerm]) -> list[SetTerm]:
    return sorted(set(terms), key=_ack_key)


__all__ = [
    "ZERO", "ONE", "kpair", "kunpair", "graph_of", "as_function", "graph_domain",
    "pair_level", "tuple_level", "untuple_level1", "star_pair", "star_unpair",
    "star_tuple", "ThetaMode", "theta", "EquivRelation", "quotient_star",
    "representative_of", "set_partitions", "equivalence_relations", "class_sum", "class_prod", "class_sigma", "class_pi",
    "PairEncoding", "KURATOWSKI", "STAR", "sorted_terms", "EMPTY",
]
