"""Toy universes and the small/class predicates.

``HF`` is the genuine least universe; every term is small in it, so the
small/class split collapses.  ``V(n)`` (all sets of rank < n) is not a
universe, since powerset and pairing escape it, but it makes the split strict.
"""
from __future__ import annotations

import dataclasses
import itertools
import re

from .config import budget
from .encodings import graph_of
from .hfset import EMPTY, SetTerm, canon, powerset, terms_below_rank


@dataclasses.dataclass(frozen=True)
class UniverseSpec:
    n: int | None = None  # None means HF

    @property
    def is_hf(self) -> bool:
        return self.n is None

    def __str__(self):
        return "HF" if self.n is None else f"V{self.n}"

    @classmethod
    def parse(cls, text: str) -> UniverseSpec:
        text = text.strip()
        if text.upper() == "HF":
            return HF
        m = re.fullmatch(r"[Vv](\d+)", text)
        if not m:
            raise ValueError(f"universe must be HF or V<n>, got {text!r}")
        return cls(int(m.group(1)))


HF = UniverseSpec()


def V(n: int) -> UniverseSpec:
    if n < 0:
        raise ValueError("V_n needs n >= 0")
    return UniverseSpec(n)


def is_small(x: SetTerm, U: UniverseSpec) -> bool:
    return U.n is None or x.rank < U.n


def is_class(X: SetTerm, U: UniverseSpec) -> bool:
    if U.n is None:
        return True
    return all(y.rank < U.n for y in X)


def elements(U: UniverseSpec) -> tuple[SetTerm, ...]:
    """Elements of a V_n universe, Ackermann order.  HF is infinite."""
    if U.n is None:
        raise ValueError("HF has no finite element listing")
    return terms_below_rank(U.n)


# -- universe axioms ---------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class ClauseResult:
    clause: str
    status: str                      # "pass" | "fail" | "n/a"
    witness: tuple[SetTerm, ...] = ()
    result: SetTerm | None = None    # the escaping set, for failures
    note: str = ""
    checked: int = 0                 # instances examined (0 = symbolic)

    @property
    def ok(self) -> bool:
        return self.status != "fail"


@dataclasses.dataclass(frozen=True)
class AxiomReport:
    universe: UniverseSpec
    clauses: tuple[ClauseResult, ...]
    bounds: dict

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.clauses)

    def clause(self, name: str) -> ClauseResult:
        for c in self.clauses:
            if c.clause == name:
                return c
        raise KeyError(name)


CLAUSES = ("transitive", "empty", "pairing", "union", "powerset")


def _hf_report() -> AxiomReport:
    notes = {
        "transitive": "every element of a finite-rank set has smaller finite rank",
        "empty": "rank({}) = 0",
        "pairing": "rank({x,y}) = 1 + max(rank x, rank y) is finite",
        "union": "rank of a finite union is at most the max rank of the parts",
        "powerset": "rank(P A) = rank(A) + 1 is finite",
    }
    return AxiomReport(HF, tuple(ClauseResult(c, "pass", note=notes[c]) for c in CLAUSES),
                       {"mode": "symbolic"})


def check_universe_axioms(U: UniverseSpec, max_instances: int | None = None) -> AxiomReport:
    """Verify the universe clauses; for V_n by exhaustive search up to a bound.

    Instances are visited in Ackermann order, so the reported witness for a
    failing clause is the least one.
    """
    if U.is_hf:
        return _hf_report()
    n = U.n
    limit = max_instances if max_instances is not None else budget().max_search
    elems = elements(U)
    small = lambda t: t.rank < n  # noqa: E731
    results = []

    # transitivity: x in U implies x subset of U
    checked, fail = 0, None
    for x in elems:
        checked += 1
        bad = [y for y in x if not small(y)]
        if bad:
            fail = ClauseResult("transitive", "fail", (x, bad[0]), checked=checked)
            break
        if checked >= limit:
            break
    results.append(fail or ClauseResult("transitive", "pass", checked=checked))

    if n == 0:
        results.append(ClauseResult("empty", "fail", (), EMPTY, note="V0 is empty"))
    else:
        results.append(ClauseResult("empty", "pass", checked=1))

    checked, fail = 0, None
    for x, y in itertools.product(elems, repeat=2):
        if checked >= limit:
            break
        checked += 1
        z = canon([x, y])
        if not small(z):
            fail = ClauseResult("pairing", "fail", (x, y), z, checked=checked)
            break
    results.append(fail or ClauseResult("pairing", "pass", checked=checked,
                                        note="vacuous" if not elems else ""))

    # indexed union over I in U of families I -> U
    checked, fail = 0, None
    for I in elems:
        if fail or checked >= limit:
            break
        for family in itertools.product(elems, repeat=len(I)):
            if checked >= limit:
                break
            checked += 1
            z = canon(y for A in family for y in A)
            if not small(z):
                fam = graph_of(zip(I, family))
                fail = ClauseResult("union", "fail", (I, fam), z, checked=checked)
                break
    results.append(fail or ClauseResult("union", "pass", checked=checked,
                                        note="vacuous" if not elems else ""))

    checked, fail = 0, None
    for A in elems:
        if checked >= limit:
            break
        checked += 1
        if len(A) > 16:
            continue
        z = powerset(A)
        if not small(z):
            fail = ClauseResult("powerset", "fail", (A,), z, checked=checked)
            break
    results.append(fail or ClauseResult("powerset", "pass", checked=checked,
                                        note="vacuous" if not elems else ""))

    return AxiomReport(U, tuple(results), {"mode": "exhaustive", "max_instances": limit})
