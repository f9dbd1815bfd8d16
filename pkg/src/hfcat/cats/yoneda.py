"""Presheaves on a FinCat, natural transformations, and the Yoneda bijection."""
from __future__ import annotations

import dataclasses
import itertools
from typing import Sequence

from ..config import budget
from ..encodings import as_function, graph_of
from ..errors import LawError, ResourceError
from ..hfset import SetTerm, _ack_key, canon
from ..hierarchy import hierarchy_for
from ..universes import UniverseSpec, V
from .category import Arrow, FinCat, Violation
from .finset import compose_graphs, functions, identity_graph


@dataclasses.dataclass(eq=False)
class Presheaf:
    """A functor C^op -> Set: F(f) maps F(cod f) to F(dom f)."""
    cat: FinCat
    obj: dict[SetTerm, SetTerm]
    mor: dict[Arrow, SetTerm]
    name: str = ""

    def at(self, c: SetTerm) -> SetTerm:
        return self.obj[c]

    def apply(self, f: Arrow, x: SetTerm) -> SetTerm:
        return as_function(self.mor[f])[x]

    def validate(self) -> Violation | None:
        C = self.cat
        for c in C.objects:
            if c not in self.obj:
                return Violation("presheaf", (c,), f"no value at {c}")
        for f in C.all_arrows():
            g = self.mor.get(f)
            m = None if g is None else as_function(g)
            if m is None or set(m) != set(self.obj[f.cod]) or \
                    not set(m.values()) <= set(self.obj[f.dom]):
                return Violation("presheaf", (f,), f"F({f}) is not a function F(cod) -> F(dom)")
        for c in C.objects:
            if self.mor[C.id(c)] is not identity_graph(self.obj[c]):
                return Violation("presheaf-identity", (c,), f"F(id {c}) is not the identity")
        for f in C.all_arrows():
            for g in C.arrows_from(f.cod):
                gf = C.compose(g, f)
                if self.mor[gf] is not compose_graphs(self.mor[f], self.mor[g]):
                    return Violation("presheaf-composition", (g, f),
                                     f"F({g}.{f}) != F({f}).F({g})")
        return None

    def __eq__(self, other):
        return isinstance(other, Presheaf) and self.cat is other.cat and \
            self.obj == other.obj and self.mor == other.mor

    __hash__ = None


@dataclasses.dataclass(eq=False)
class NatTrans:
    source: Presheaf
    target: Presheaf
    comp: dict[SetTerm, SetTerm]

    def at(self, c: SetTerm, x: SetTerm) -> SetTerm:
        return as_function(self.comp[c])[x]

    def encode(self) -> SetTerm:
        """Function graph c -> component graph, indexed by the objects."""
        return graph_of(self.comp)

    def validate(self) -> Violation | None:
        F, G, C = self.source, self.target, self.source.cat
        for c in C.objects:
            m = as_function(self.comp.get(c, canon()))
            if c not in self.comp or m is None or set(m) != set(F.obj[c]) or \
                    not set(m.values()) <= set(G.obj[c]):
                return Violation("component", (c,), f"component at {c} is not F c -> G c")
        for f in C.all_arrows():
            if not _square_commutes(self.comp, F, G, f):
                return Violation("naturality", (f,), f"square at {f} does not commute")
        return None

    def __eq__(self, other):
        return isinstance(other, NatTrans) and self.comp == other.comp

    def __hash__(self):
        return hash(self.encode())


def _square_commutes(comp, F: Presheaf, G: Presheaf, f: Arrow) -> bool:
    # alpha_a . F(f) == G(f) . alpha_b  as maps F(b) -> G(a), for f: a -> b
    a_map = as_function(comp[f.dom])
    b_map = as_function(comp[f.cod])
    Ff, Gf = as_function(F.mor[f]), as_function(G.mor[f])
    return all(a_map[Ff[x]] is Gf[b_map[x]] for x in F.obj[f.cod])


def vcompose(beta: NatTrans, alpha: NatTrans) -> NatTrans:
    """Vertical composite beta . alpha."""
    return NatTrans(alpha.source, beta.target,
                    {c: compose_graphs(beta.comp[c], alpha.comp[c]) for c in alpha.comp})


def identity_nat(F: Presheaf) -> NatTrans:
    return NatTrans(F, F, {c: identity_graph(F.obj[c]) for c in F.cat.objects})


def presheaf_from_maps(C: FinCat, obj: dict[SetTerm, SetTerm],
                       gen: dict[Arrow, dict[SetTerm, SetTerm]], name: str = "") -> Presheaf:
    """Extend values on some arrows to all arrows by composing.

    Identities map to identity graphs; every other arrow must either be given
    or be a composite of given arrows (searched breadth-first).
    """
    mor = {C.id(c): identity_graph(obj[c]) for c in C.objects}
    for f, m in gen.items():
        mor[f] = graph_of(m)
    changed = True
    while changed:
        changed = False
        for f in list(mor):
            for g in C.arrows_from(f.cod):
                if g in mor:
                    gf = C.compose(g, f)
                    if gf not in mor:
                        mor[gf] = compose_graphs(mor[f], mor[g])
                        changed = True
    return Presheaf(C, dict(obj), mor, name=name)


def yoneda_object(C: FinCat, c: SetTerm) -> Presheaf:
    """The representable C(-, c)."""
    if c not in C.objects:
        raise LawError(f"{c} is not an object")
    obj = {d: canon(C.homset(d, c)) for d in C.objects}
    mor = {}
    for f in C.all_arrows():
        # Y c (f) : C(b, c) -> C(a, c), g |-> g . f
        mor[f] = graph_of((g, C.compose(Arrow(f.cod, c, g), f).term) for g in C.homset(f.cod, c))
    return Presheaf(C, obj, mor, name=f"Y{c}")


def yoneda_arrow(C: FinCat, f: Arrow) -> NatTrans:
    """Y f : Y a -> Y b, postcomposition with f: a -> b."""
    Ya, Yb = yoneda_object(C, f.dom), yoneda_object(C, f.cod)
    comp = {d: graph_of((g, C.compose(f, Arrow(d, f.dom, g)).term) for g in C.homset(d, f.dom))
            for d in C.objects}
    return NatTrans(Ya, Yb, comp)


def yoneda_beta(C: FinCat, c: SetTerm, F: Presheaf, x: SetTerm,
                Yc: Presheaf | None = None) -> NatTrans:
    """beta_{c,F}(x): Y c -> F with component g |-> F(g)(x)."""
    if x not in F.obj[c]:
        raise LawError(f"{x} is not an element of F({c})")
    Yc = Yc or yoneda_object(C, c)
    comp = {d: graph_of((g, F.apply(Arrow(d, c, g), x)) for g in C.homset(d, c))
            for d in C.objects}
    return NatTrans(Yc, F, comp)


def nat_trans_enumerate(F: Presheaf, G: Presheaf) -> list[NatTrans]:
    """Every natural transformation F -> G, by pruned exhaustive search."""
    C = F.cat
    objs = C.objects
    space = 1
    for d in objs:
        space *= max(1, len(G.obj[d]) ** len(F.obj[d]))
        if space > budget().max_search:
            raise ResourceError(f"Nat search space exceeds max_search ({space})")
    choices = [functions(F.obj[d], G.obj[d]) for d in objs]
    pos = {d: i for i, d in enumerate(objs)}
    # squares to check once both endpoints are assigned
    checks: list[list[Arrow]] = [[] for _ in objs]
    for f in C.all_arrows():
        checks[max(pos[f.dom], pos[f.cod])].append(f)
    out = []
    comp: dict[SetTerm, SetTerm] = {}

    def go(i):
        if i == len(objs):
            out.append(NatTrans(F, G, dict(comp)))
            return
        d = objs[i]
        for g in choices[i]:
            comp[d] = g
            if all(_square_commutes(comp, F, G, f) for f in checks[i]):
                go(i + 1)
        comp.pop(d, None)

    go(0)
    out.sort(key=lambda t: _ack_key(t.encode()))
    return out


# -- verification report --------------------------------------------------------

@dataclasses.dataclass
class Probe:
    c: SetTerm
    F: Presheaf
    alphas: Sequence[NatTrans] = ()


@dataclasses.dataclass
class ProbeResult:
    c: SetTerm
    presheaf: str
    size_Fc: int
    size_nat: int
    injective: bool
    surjective: bool
    c_squares: int
    c_failures: list
    f_squares: int
    f_failures: list
    entities_ok: bool
    homset_ok: bool
    failures: list = dataclasses.field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.size_Fc == self.size_nat and self.injective and self.surjective
                and not self.c_failures and not self.f_failures
                and self.entities_ok and self.homset_ok and not self.failures)


@dataclasses.dataclass
class YonedaReport:
    category: str
    universe: UniverseSpec
    probes: list[ProbeResult]

    @property
    def ok(self) -> bool:
        return all(p.ok for p in self.probes)


def yoneda_check(C: FinCat, probes: Sequence[Probe], U: UniverseSpec = V(6)) -> YonedaReport:
    """Verify the Yoneda bijection and both naturality laws on each probe.

    Also checks that every enumerated transformation, encoded as a graph over
    the objects, is a 1-entity of U and that the Nat homset is a 2-class.
    """
    h = hierarchy_for(U)
    results = []
    reps = {c: yoneda_object(C, c) for c in C.objects}
    for probe in probes:
        c, F = probe.c, probe.F
        Yc = reps[c]
        Fc = F.obj[c]
        betas = {x: yoneda_beta(C, c, F, x, Yc) for x in Fc}
        nats = nat_trans_enumerate(Yc, F)
        images = [b.encode() for b in betas.values()]
        nat_terms = [n.encode() for n in nats]
        failures = [f"beta({x}) not natural: {v}" for x, b in betas.items()
                    if (v := b.validate()) is not None]
        injective = len(set(images)) == len(images)
        surjective = set(images) == set(nat_terms)

        # naturality in c: beta_{c',F}(F(f) x) == beta_{c,F}(x) . Y f for f: c' -> c
        c_sq, c_fail = 0, []
        for f in C.arrows_into(c) + [g for g in C.arrows_from(c) if g.cod != c]:
            src, tgt = f.dom, f.cod
            Yf = yoneda_arrow(C, f)
            for x in F.obj[tgt]:
                c_sq += 1
                lhs = yoneda_beta(C, src, F, F.apply(f, x), reps[src])
                rhs = vcompose(yoneda_beta(C, tgt, F, x, reps[tgt]), Yf)
                if lhs.comp != rhs.comp:
                    c_fail.append((f, x))

        # naturality in F: alpha . beta_{c,F}(x) == beta_{c,G}(alpha_c x)
        f_sq, f_fail = 0, []
        for alpha in probe.alphas:
            G = alpha.target
            for x in Fc:
                f_sq += 1
                lhs = vcompose(alpha, betas[x])
                rhs = yoneda_beta(C, c, G, alpha.at(c, x), Yc)
                if lhs.comp != rhs.comp:
                    f_fail.append((alpha, x))

        entities_ok = all(h.is_k_entity(t, 1) for t in nat_terms)
        homset_ok = h.is_k_class(canon(nat_terms), 2)
        results.append(ProbeResult(c, F.name, len(Fc), len(nats), injective, surjective,
                                   c_sq, c_fail, f_sq, f_fail, entities_ok, homset_ok, failures))
    return YonedaReport(C.name, U, results)


def all_presheaves(C: FinCat, values: Sequence[SetTerm], limit: int | None = None) -> list[Presheaf]:
    """Presheaves whose object values are drawn from ``values``.

    Enumerated by brute force over assignments to objects and non-identity
    arrows, keeping only functorial ones; deterministic order.
    """
    objs = C.objects
    arrows = [f for f in C.all_arrows() if f != C.id(f.dom)]
    out = []
    for vals in itertools.product(values, repeat=len(objs)):
        obj = dict(zip(objs, vals))
        spaces = [functions(obj[f.cod], obj[f.dom]) for f in arrows]
        for pick in itertools.product(*spaces):
            mor = {C.id(c): identity_graph(obj[c]) for c in objs}
            mor.update(zip(arrows, pick))
            P = Presheaf(C, obj, mor)
            if P.validate() is None:
                out.append(P)
                if limit is not None and len(out) >= limit:
                    return out
    return out
