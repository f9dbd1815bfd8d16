"""The Psi closure and the k-class / k-entity predicates.

``Psi(A)`` is the least collection containing every small set, every member
of ``A``, every pair of its members, and every ``I``-indexed tuple of its
members for ``I`` in ``A``.  Membership is decided top-down: a term can only
enter through one of those four clauses, and the components named by the last
two have strictly lower rank, so the recursion terminates.

A 0-class and a 0-entity are small sets; a (k+1)-class is a set of k-entities;
a k-entity (k >= 1) is a member of Psi(k-classes).
"""
from __future__ import annotations

import dataclasses
import random
from typing import Iterable

from .encodings import (KURATOWSKI, PairEncoding, class_pi, class_prod, class_sigma,
                        class_sum, kpair)
from .hfset import EMPTY, SetTerm, canon
from .universes import HF, UniverseSpec, elements, is_small


@dataclasses.dataclass(frozen=True)
class ClassSpec:
    """Parameter A of Psi: an explicit finite set, or all k-classes."""
    explicit: SetTerm | None = None
    k: int | None = None

    @classmethod
    def of(cls, A: SetTerm) -> ClassSpec:
        return cls(explicit=A)

    @classmethod
    def k_classes(cls, k: int) -> ClassSpec:
        return cls(k=k)

    def contains(self, x: SetTerm, U: UniverseSpec) -> bool:
        if self.explicit is not None:
            return x in self.explicit
        return is_k_class(x, self.k, U)

    def __str__(self):
        return f"{self.k}-classes" if self.explicit is None else str(self.explicit)


class Hierarchy:
    """Memoized predicates for one universe and pair encoding."""

    def __init__(self, U: UniverseSpec = HF, encoding: PairEncoding = KURATOWSKI):
        self.U = U
        self.encoding = encoding
        self._psi: dict = {}
        self._cls: dict = {}
        self._ent: dict = {}

    def psi_member(self, x: SetTerm, A: ClassSpec) -> bool:
        key = (x, A)
        hit = self._psi.get(key)
        if hit is None:
            hit = self._psi[key] = self._psi_uncached(x, A)
        return hit

    def _psi_uncached(self, x: SetTerm, A: ClassSpec) -> bool:
        U = self.U
        if is_small(x, U) or self._in_spec(x, A):
            return True
        enc = self.encoding
        p = enc.unpair(x)
        if p is not None and self.psi_member(p[0], A) and self.psi_member(p[1], A):
            return True
        for I in self._candidate_domains(x, A):
            vals = enc.tuple_values(x, I)
            if vals is not None and all(self.psi_member(v, A) for v in vals.values()):
                return True
        return False

    def _in_spec(self, x: SetTerm, A: ClassSpec) -> bool:
        if A.explicit is not None:
            return x in A.explicit
        return self.is_k_class(x, A.k)

    def _candidate_domains(self, x: SetTerm, A: ClassSpec) -> Iterable[SetTerm]:
        if A.explicit is not None:
            return A.explicit.children
        # k-classes are closed under subsets, so the least domain is the
        # only one worth testing
        I = self.encoding.min_domain(x)
        if I is None or not self.is_k_class(I, A.k):
            return ()
        return (I,)

    def is_k_class(self, x: SetTerm, k: int) -> bool:
        if k == 0:
            return is_small(x, self.U)
        key = (x, k)
        hit = self._cls.get(key)
        if hit is None:
            hit = self._cls[key] = all(self.is_k_entity(y, k - 1) for y in x)
        return hit

    def is_k_entity(self, x: SetTerm, k: int) -> bool:
        if k == 0:
            return is_small(x, self.U)
        key = (x, k)
        hit = self._ent.get(key)
        if hit is None:
            hit = self._ent[key] = self.psi_member(x, ClassSpec.k_classes(k))
        return hit

    def least_k_class(self, x: SetTerm, max_k: int) -> int | None:
        return next((k for k in range(max_k + 1) if self.is_k_class(x, k)), None)

    def least_k_entity(self, x: SetTerm, max_k: int) -> int | None:
        return next((k for k in range(max_k + 1) if self.is_k_entity(x, k)), None)


_sessions: dict = {}


def hierarchy_for(U: UniverseSpec, encoding: PairEncoding = KURATOWSKI) -> Hierarchy:
    key = (U, encoding.name)
    h = _sessions.get(key)
    if h is None:
        h = _sessions[key] = Hierarchy(U, encoding)
    return h


def psi_member(x: SetTerm, A: ClassSpec | SetTerm, U: UniverseSpec = HF,
               encoding: PairEncoding = KURATOWSKI) -> bool:
    if isinstance(A, SetTerm):
        A = ClassSpec.of(A)
    return hierarchy_for(U, encoding).psi_member(x, A)


def is_k_class(x: SetTerm, k: int, U: UniverseSpec = HF) -> bool:
    return hierarchy_for(U).is_k_class(x, k)


def is_k_entity(x: SetTerm, k: int, U: UniverseSpec = HF) -> bool:
    return hierarchy_for(U).is_k_entity(x, k)


# -- closure theorem -----------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class ClosureFailure:
    construction: str       # "sum" | "prod" | "sigma" | "pi"
    inputs: tuple[SetTerm, ...]
    result: SetTerm
    offender: SetTerm | None  # an element of the result that is not a (k-1)-entity


@dataclasses.dataclass(frozen=True)
class ClosureReport:
    k: int
    universe: UniverseSpec
    instances: int
    checks: int
    failures: tuple[ClosureFailure, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def _offender(h: Hierarchy, z: SetTerm, k: int) -> SetTerm | None:
    if k == 0:
        return None
    return next((y for y in z if not h.is_k_entity(y, k - 1)), None)


def _entity_pool(h: Hierarchy, k: int, rng: random.Random, size: int) -> list[SetTerm]:
    """A sample of k-entities, built from the clauses that generate them."""
    if h.U.is_hf:
        base = [canon(), canon([canon()])]
        for _ in range(size):
            a, b = rng.sample(base, 2) if len(base) > 1 else (base[0], base[0])
            base.append(rng.choice([canon([a, b]), kpair(a, b), canon([a])]))
        small = base
    else:
        small = list(elements(h.U))
    if k == 0:
        return small
    classes = _class_pool(h, k, rng, size)
    pool = list(dict.fromkeys(small + classes))
    for _ in range(size):
        a, b = rng.choice(pool), rng.choice(pool)
        pool.append(kpair(a, b))
    for I in classes[: max(1, size // 4)]:
        if len(I) <= 3:
            pool.append(h.encoding.tuple(I, {i: rng.choice(pool) for i in I}))
    return [x for x in dict.fromkeys(pool) if h.is_k_entity(x, k)]


def _class_pool(h: Hierarchy, k: int, rng: random.Random, size: int) -> list[SetTerm]:
    if k == 0:
        return [x for x in _entity_pool(h, 0, rng, size) if len(x) <= 4]
    ents = _entity_pool(h, k - 1, rng, size)
    out = [EMPTY]
    for _ in range(size):
        out.append(canon(rng.sample(ents, min(len(ents), rng.randint(1, 3)))))
    return [x for x in dict.fromkeys(out) if h.is_k_class(x, k)]


def closure_check(k: int, U: UniverseSpec = HF, instances: int = 100, seed: int = 0,
                  pool_size: int = 24) -> ClosureReport:
    """Test that sums, products, Sigma and Pi of k-classes are k-classes.

    ``is_k_class`` is the judge.  Pi is indexed by a (k-1)-class (a 0-class
    when k = 0).
    """
    h = hierarchy_for(U)
    rng = random.Random(seed)
    classes = _class_pool(h, k, rng, pool_size)
    index_classes = [I for I in _class_pool(h, max(k - 1, 0), rng, pool_size) if len(I) <= 3]
    failures = []
    checks = 0

    def judge(name, inputs, z):
        nonlocal checks
        checks += 1
        if not h.is_k_class(z, k):
            failures.append(ClosureFailure(name, inputs, z, _offender(h, z, k)))

    small_classes = [B for B in classes if len(B) <= 3]
    for _ in range(instances):
        B, C = rng.choice(classes), rng.choice(classes)
        judge("sum", (B, C), class_sum(B, C))
        judge("prod", (B, C), class_prod(B, C))
        fam = {b: rng.choice(classes) for b in B}
        judge("sigma", (B, canon(kpair(b, c) for b, c in fam.items())), class_sigma(B, fam))
        I = rng.choice(index_classes)
        pfam = {i: rng.choice(small_classes) for i in I}
        judge("pi", (I, canon(kpair(i, c) for i, c in pfam.items())), class_pi(I, pfam))
    return ClosureReport(k, U, instances, checks, tuple(failures))
