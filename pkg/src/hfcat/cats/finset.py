"""Finite full subcategories of Set: objects are given sets, morphisms all function graphs."""
from __future__ import annotations

import itertools
from typing import Sequence

from ..config import budget
from ..encodings import as_function, equivalence_relations, graph_of
from ..errors import ResourceError
from ..hfset import SetTerm, canon, numeral, powerset
from .category import Arrow, FinCat


def functions(A: SetTerm, B: SetTerm) -> list[SetTerm]:
    """All function graphs A -> B, in product order of B's elements."""
    dom = A.children
    return [graph_of(zip(dom, vals)) for vals in itertools.product(B.children, repeat=len(dom))]


def compose_graphs(g: SetTerm, f: SetTerm) -> SetTerm:
    """Graph of g . f."""
    gm, fm = as_function(g), as_function(f)
    return graph_of((x, gm[y]) for x, y in fm.items())


def identity_graph(A: SetTerm) -> SetTerm:
    return graph_of((x, x) for x in A)


def finset_on(objects: Sequence[SetTerm], name: str = "") -> FinCat:
    objs = tuple(dict.fromkeys(objects))
    total = sum(len(b) ** len(a) for a in objs for b in objs)
    if total > budget().max_search:
        raise ResourceError(f"FinSet on {len(objs)} objects has {total} morphisms")
    hom = {(a, b): tuple(functions(a, b)) for a in objs for b in objs}
    maps = {t: as_function(t) for ts in hom.values() for t in ts}
    comp = {}
    for a in objs:
        for b in objs:
            fs = hom[(a, b)]
            if not fs:
                continue
            for c in objs:
                for g in hom[(b, c)]:
                    gm = maps[g]
                    ga = Arrow(b, c, g)
                    for f in fs:
                        h = graph_of((x, gm[y]) for x, y in maps[f].items())
                        comp[(ga, Arrow(a, b, f))] = h
    ident = {a: identity_graph(a) for a in objs}
    return FinCat(objs, hom, comp, ident, name=name)


def _check_bound(m: int):
    if m > budget().max_finset:
        raise ResourceError(f"FinSet skeleton bound {m} exceeds max_finset")


def finset_full(m: int) -> FinCat:
    """The full skeleton on the von Neumann numerals 0..m."""
    _check_bound(m)
    return finset_on([numeral(i) for i in range(m + 1)], name=f"FinSet{m}")


def finset_subsets(m: int) -> FinCat:
    """FinSet on every subset of the numeral m (closed under taking subsets)."""
    _check_bound(m)
    return finset_on(powerset(numeral(m)).children, name=f"FinSetSub{m}")


def finset_quotients(m: int) -> FinCat:
    """FinSet on the numerals 0..m together with every quotient c/r of them."""
    _check_bound(m)
    objs = [numeral(i) for i in range(m + 1)]
    for c in list(objs):
        for r in equivalence_relations(c):
            objs.append(canon(r.blocks()))
    return finset_on(objs, name=f"FinSetQuot{m}")


def is_injective(f: Arrow) -> bool:
    vals = as_function(f.term).values()
    return len(set(vals)) == len(vals)


def is_surjective(f: Arrow) -> bool:
    return set(as_function(f.term).values()) == set(f.cod)
