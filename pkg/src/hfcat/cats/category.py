from __future__ import annotations

import dataclasses
from typing import Iterable, Iterator, NamedTuple

from ..encodings import as_function, kpair, kunpair, tuple_level, untuple_level1
from ..errors import LawError
from ..hfset import SetTerm, _ack_key, canon, numeral


class Arrow(NamedTuple):
    """A morphism as it sits in a FinCat: typed by the table, untagged as a term."""
    dom: SetTerm
    cod: SetTerm
    term: SetTerm

    def __str__(self):
        return f"{self.term}: {self.dom} -> {self.cod}"


@dataclasses.dataclass(frozen=True)
class Violation:
    law: str
    witnesses: tuple = ()
    message: str = ""

    def __str__(self):
        return f"{self.law}: {self.message}" if self.message else self.law


@dataclasses.dataclass(eq=False)
class FinCat:
    objects: tuple[SetTerm, ...]
    hom: dict[tuple[SetTerm, SetTerm], tuple[SetTerm, ...]]
    comp: dict[tuple[Arrow, Arrow], SetTerm]
    ident: dict[SetTerm, SetTerm]
    name: str = ""

    def __post_init__(self):
        self.objects = tuple(self.objects)
        self.hom = {k: tuple(v) for k, v in self.hom.items()}
        self._out: dict[SetTerm, list[Arrow]] | None = None
        self._in: dict[SetTerm, list[Arrow]] | None = None

    def homset(self, a: SetTerm, b: SetTerm) -> tuple[SetTerm, ...]:
        return self.hom.get((a, b), ())

    def arrows(self, a: SetTerm, b: SetTerm) -> list[Arrow]:
        return [Arrow(a, b, t) for t in self.homset(a, b)]

    def all_arrows(self) -> Iterator[Arrow]:
        for a in self.objects:
            for b in self.objects:
                yield from self.arrows(a, b)

    def _index(self):
        if self._out is None:
            out = {a: [] for a in self.objects}
            inc = {a: [] for a in self.objects}
            for f in self.all_arrows():
                out[f.dom].append(f)
                inc[f.cod].append(f)
            self._out, self._in = out, inc

    def arrows_from(self, a: SetTerm) -> list[Arrow]:
        self._index()
        return self._out.get(a, [])

    def arrows_into(self, b: SetTerm) -> list[Arrow]:
        self._index()
        return self._in.get(b, [])

    def id(self, a: SetTerm) -> Arrow:
        return Arrow(a, a, self.ident[a])

    def compose(self, g: Arrow, f: Arrow) -> Arrow:
        """g . f for f: a -> b, g: b -> c."""
        try:
            return Arrow(f.dom, g.cod, self.comp[(g, f)])
        except KeyError:
            raise LawError(f"composite of {g} after {f} is undefined") from None

    def is_iso(self, f: Arrow) -> bool:
        return self.inverse(f) is not None

    def inverse(self, f: Arrow) -> Arrow | None:
        for g in self.arrows(f.cod, f.dom):
            if self.compose(g, f) == self.id(f.dom) and self.compose(f, g) == self.id(f.cod):
                return g
        return None

    def op(self) -> FinCat:
        cached = getattr(self, "_op", None)
        if cached is not None:
            return cached
        hom = {(b, a): ts for (a, b), ts in self.hom.items()}
        comp = {}
        for (g, f), h in self.comp.items():
            # in C: f: a -> b, g: b -> c; in C^op: g^op: c -> b, f^op: b -> a
            comp[(Arrow(f.cod, f.dom, f.term), Arrow(g.cod, g.dom, g.term))] = h
        D = FinCat(self.objects, hom, comp, dict(self.ident),
                   name=f"{self.name}^op" if self.name else "")
        self._op, D._op = D, self
        return D

    def object_set(self) -> SetTerm:
        return canon(self.objects)

    def homset_term(self, a: SetTerm, b: SetTerm) -> SetTerm:
        return canon(self.homset(a, b))

    def _normal(self):
        hom = {k: frozenset(v) for k, v in self.hom.items() if v}
        return frozenset(self.objects), hom, dict(self.comp), dict(self.ident)

    def __eq__(self, other):
        if not isinstance(other, FinCat):
            return NotImplemented
        return self._normal() == other._normal()

    __hash__ = None


def validate_category(C: FinCat) -> Violation | None:
    """Check every category law exhaustively; return the first violation."""
    objs = set(C.objects)
    if len(objs) != len(C.objects):
        dup = next(o for i, o in enumerate(C.objects) if o in C.objects[:i])
        return Violation("objects", (dup,), f"object {dup} listed twice")
    for (a, b), ts in C.hom.items():
        if a not in objs or b not in objs:
            return Violation("hom", (a, b), f"homset ({a}, {b}) names a non-object")
        if len(set(ts)) != len(ts):
            return Violation("hom", (a, b), f"homset ({a}, {b}) repeats a morphism")
    for a in C.objects:
        i = C.ident.get(a)
        if i is None:
            return Violation("identity", (a,), f"object {a} has no identity")
        if i not in C.homset(a, a):
            return Violation("identity", (a,), f"identity of {a} is not in hom({a}, {a})")
    arrows = set(C.all_arrows())
    for (g, f), h in C.comp.items():
        if g not in arrows or f not in arrows or g.dom != f.cod:
            return Violation("composition", (g, f), f"composite defined on non-composable ({g}, {f})")
        if h not in C.homset(f.dom, g.cod):
            return Violation("composition", (g, f), f"composite of ({g}, {f}) lands outside hom")
    for f in arrows:
        for g in C.arrows_from(f.cod):
            if (g, f) not in C.comp:
                return Violation("composition", (g, f), f"composite of ({g}, {f}) missing")
    for f in arrows:
        if C.compose(C.id(f.cod), f) != f or C.compose(f, C.id(f.dom)) != f:
            return Violation("unit", (f,), f"identity law fails at {f}")
    for e in arrows:
        for f in C.arrows_from(e.cod):
            fe = C.compose(f, e)
            for g in C.arrows_from(f.cod):
                if C.compose(g, fe) != C.compose(C.compose(g, f), e):
                    return Violation("associativity", (e, f, g),
                                     f"g.(f.e) != (g.f).e for e={e}, f={f}, g={g}")
    return None


def make_category(objects: Iterable[SetTerm],
                  arrows: Iterable[tuple[SetTerm, SetTerm, SetTerm]],
                  ident: dict[SetTerm, SetTerm],
                  comp: dict[tuple[SetTerm, SetTerm, SetTerm, SetTerm, SetTerm], SetTerm] | None = None,
                  name: str = "", fill_units: bool = True) -> FinCat:
    """Build a FinCat from (dom, cod, term) triples.

    ``comp`` maps (a, b, c, g, f) to the term of g.f; composites with an
    identity are filled in automatically when ``fill_units`` is set.
    """
    objects = tuple(objects)
    hom: dict = {}
    for a, b, t in arrows:
        hom.setdefault((a, b), []).append(t)
    table = {}
    for (a, b, c, g, f), h in (comp or {}).items():
        table[(Arrow(b, c, g), Arrow(a, b, f))] = h
    if fill_units:
        for (a, b), ts in hom.items():
            for t in ts:
                f = Arrow(a, b, t)
                if b in ident:
                    table.setdefault((Arrow(b, b, ident[b]), f), t)
                if a in ident:
                    table.setdefault((f, Arrow(a, a, ident[a])), t)
    return FinCat(objects, hom, table, dict(ident), name=name)


def walking_arrow() -> FinCat:
    """Objects 0 and 1, identities {}, one non-identity arrow 0 -> 1 named 1."""
    z, o = numeral(0), numeral(1)
    return make_category([z, o], [(z, z, z), (o, o, z), (z, o, o)], {z: z, o: z},
                         name="walking-arrow")


def chain(n: int) -> FinCat:
    """The poset 0 <= 1 <= ... <= n-1; the arrow i -> j is the pair (i, j)."""
    objs = [numeral(i) for i in range(n)]
    arrows = [(objs[i], objs[j], kpair(objs[i], objs[j])) for i in range(n) for j in range(i, n)]
    ident = {o: kpair(o, o) for o in objs}
    comp = {}
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                a, b, c = objs[i], objs[j], objs[k]
                comp[(a, b, c, kpair(b, c), kpair(a, b))] = kpair(a, c)
    return make_category(objs, arrows, ident, comp, name=f"chain{n}")


def discrete(objects: Iterable[SetTerm], name: str = "") -> FinCat:
    objs = tuple(objects)
    return make_category(objs, [(o, o, numeral(0)) for o in objs],
                         {o: numeral(0) for o in objs}, name=name)


# -- encoding as a single set -------------------------------------------------

def _comp_key(a, b, c):
    return kpair(kpair(a, b), c)


def encode_category(C: FinCat) -> SetTerm:
    """Package (objects, homs, composition, identities) as one set.

    Each component is a level-1 tuple over Kuratowski pairs; the four are
    joined as a level-1 tuple indexed by the numeral 4.
    """
    obj = canon(C.objects)
    hom_idx = canon(kpair(a, b) for a in C.objects for b in C.objects)
    homs = tuple_level(1, hom_idx, {kpair(a, b): canon(C.homset(a, b))
                                    for a in C.objects for b in C.objects})
    by_key: dict = {}
    for (g, f), h in C.comp.items():
        by_key.setdefault(_comp_key(f.dom, f.cod, g.cod), []).append(kpair(kpair(g.term, f.term), h))
    comp_idx = canon(by_key)
    comps = tuple_level(1, comp_idx, {k: canon(v) for k, v in by_key.items()})
    ids = tuple_level(0, obj, C.ident)
    return tuple_level(1, numeral(4), {numeral(0): obj, numeral(1): homs,
                                       numeral(2): comps, numeral(3): ids})


def decode_category(z: SetTerm) -> FinCat:
    parts = untuple_level1(z, numeral(4))
    if parts is None:
        raise LawError("not a category encoding")
    obj, homs, comps, ids = (parts[numeral(i)] for i in range(4))
    objects = obj.children
    idx = canon(kpair(a, b) for a in objects for b in objects)
    homvals = untuple_level1(homs, idx)
    ident = as_function(ids)
    if homvals is None or ident is None:
        raise LawError("malformed category encoding")
    hom = {}
    for a in objects:
        for b in objects:
            ts = homvals[kpair(a, b)]
            if ts:
                hom[(a, b)] = ts.children
    keys = {_comp_key(a, b, c): (a, b, c) for a in objects for b in objects for c in objects}
    comp = {}
    for e in comps:
        k, v = _split(e)
        a, b, c = keys[k]
        gf, h = _split(v)
        g, f = _split(gf)
        comp[(Arrow(b, c, g), Arrow(a, b, f))] = h
    return FinCat(objects, hom, comp, ident)


def _split(p):
    d = kunpair(p)
    if d is None:
        raise LawError(f"{p} is not a pair")
    return d


def sorted_objects(objs: Iterable[SetTerm]) -> list[SetTerm]:
    return sorted(set(objs), key=_ack_key)
