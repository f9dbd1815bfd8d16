"""Mono-like subcategories, M/c, Sub*, well-powerings and the subobject classifier.

A member predicate ``M`` is any callable on :class:`Arrow`.  Co-well-powerings
are handled by running the mono-side code on the opposite category, so every
epi-side check is literally the mirror of its mono-side counterpart.
"""
from __future__ import annotations

import dataclasses
from typing import Callable, Iterable

from .cats.category import Arrow, FinCat, Violation
from .cats.finset import (finset_full, finset_quotients, finset_subsets, functions,
                          identity_graph, is_injective, is_surjective)
from .encodings import (EquivRelation, ThetaMode, as_function, equivalence_relations,
                        graph_of, kpair, quotient_star, theta)
from .hfset import SetTerm, _ack_key, canon, numeral, powerset
from .universes import HF, UniverseSpec, is_small

Member = Callable[[Arrow], bool]


def injections(f: Arrow) -> bool:
    return is_injective(f)


def surjections(f: Arrow) -> bool:
    return is_surjective(f)


def monos_of(C: FinCat) -> Member:
    """The class of all monomorphisms of C, decided by left cancellation."""
    cache: dict[Arrow, bool] = {}

    def member(f: Arrow) -> bool:
        if f not in cache:
            cache[f] = _cancellation_witness(C, f) is None
        return cache[f]
    return member


def epis_of(C: FinCat) -> Member:
    """All epimorphisms of C, by right cancellation (monos of C^op)."""
    m = monos_of(C.op())
    return lambda f: m(Arrow(f.cod, f.dom, f.term))


def op_member(M: Member) -> Member:
    """The same class of morphisms viewed in the opposite category."""
    return lambda f: M(Arrow(f.cod, f.dom, f.term))


def _cancellation_witness(C: FinCat, f: Arrow):
    """(u, v) with f.u == f.v and u != v, or None if f is monic."""
    for x in C.objects:
        seen: dict[SetTerm, Arrow] = {}
        for u in C.arrows(x, f.dom):
            t = C.compose(f, u).term
            if t in seen:
                return seen[t], u
            seen[t] = u
    return None


def validate_mono_like(C: FinCat, M: Member) -> Violation | None:
    for a in C.objects:
        if not M(C.id(a)):
            return Violation("wide", (a,), f"identity on {a} is not a member")
    members = [f for f in C.all_arrows() if M(f)]
    for f in members:
        w = _cancellation_witness(C, f)
        if w is not None:
            return Violation("monic", (f,) + w, f"member {f} is not monic")
    for f in C.all_arrows():
        for g in C.arrows_from(f.cod):
            gf = C.compose(g, f)
            if M(f) and M(g) and not M(gf):
                return Violation("composition", (g, f), f"members {g} . {f} compose outside M")
            if M(gf) and not M(f):
                return Violation("right-factor", (g, f), f"{g} . {f} is a member but {f} is not")
    return None


def validate_epi_like(C: FinCat, E: Member) -> Violation | None:
    return validate_mono_like(C.op(), op_member(E))


# -- the preorder M/c ------------------------------------------------------------

@dataclasses.dataclass
class SliceOrder:
    c: SetTerm
    pairs: list[Arrow]                       # members f: x -> c
    leq: dict[tuple[int, int], Arrow]        # (i, j) -> the mediating h
    blocks: list[list[int]]                  # the iso classes, as index lists
    anomalies: list[str]

    def below(self, i: int, j: int) -> bool:
        return (i, j) in self.leq

    def iso(self, i: int, j: int) -> bool:
        return (i, j) in self.leq and (j, i) in self.leq

    def block_of(self, i: int) -> int:
        return next(b for b, members in enumerate(self.blocks) if i in members)


def mediators(C: FinCat, f: Arrow, g: Arrow) -> list[Arrow]:
    """All h with g . h == f."""
    return [h for h in C.arrows(f.dom, g.dom) if C.compose(g, h) == f]


def m_over_c(C: FinCat, M: Member, c: SetTerm) -> SliceOrder:
    pairs = [f for f in C.arrows_into(c) if M(f)]
    leq, anomalies = {}, []
    for i, f in enumerate(pairs):
        for j, g in enumerate(pairs):
            hs = mediators(C, f, g)
            if not hs:
                continue
            if len(hs) > 1:
                anomalies.append(f"mediator from {f} to {g} is not unique")
            if not M(hs[0]):
                anomalies.append(f"mediator {hs[0]} is not a member")
            leq[(i, j)] = hs[0]
    for (i, j), h in leq.items():
        if (j, i) in leq:
            k = leq[(j, i)]
            if C.compose(k, h) != C.id(pairs[i].dom) or C.compose(h, k) != C.id(pairs[j].dom):
                anomalies.append(f"mediators between {pairs[i]} and {pairs[j]} are not inverse")
    blocks: list[list[int]] = []
    for i in range(len(pairs)):
        for b in blocks:
            if (i, b[0]) in leq and (b[0], i) in leq:
                b.append(i)
                break
        else:
            blocks.append([i])
    return SliceOrder(c, pairs, leq, blocks, anomalies)


def encode_subpair(f: Arrow) -> SetTerm:
    return kpair(f.dom, f.term)


@dataclasses.dataclass
class SubobjectPoset:
    c: SetTerm
    mode: ThetaMode
    elements: SetTerm                     # Sub*(c) as a set
    rep: list[SetTerm]                    # theta-representative of each block
    leq: set[tuple[SetTerm, SetTerm]]
    slice: SliceOrder

    def antisymmetric(self) -> bool:
        return all(a is b for a, b in self.leq if (b, a) in self.leq)

    def ordered(self) -> list[SetTerm]:
        return list(self.elements)


def subs_star(C: FinCat, M: Member, c: SetTerm,
              mode: ThetaMode = ThetaMode.SCOTT) -> SubobjectPoset:
    """(M/c) /* (iso), with the order induced by the slice preorder."""
    S = m_over_c(C, M, c)
    enc = [encode_subpair(f) for f in S.pairs]
    A = canon(enc)
    R = EquivRelation.from_blocks(A, [[enc[i] for i in b] for b in S.blocks])
    elements = quotient_star(A, R, mode)
    rep = [theta(canon(enc[i] for i in b), mode) for b in S.blocks]
    leq = {(rep[p], rep[q]) for p, bp in enumerate(S.blocks) for q, bq in enumerate(S.blocks)
           if S.below(bp[0], bq[0])}
    return SubobjectPoset(c, mode, elements, rep, leq, S)


# -- well-powerings ----------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class WPEntry:
    index: SetTerm
    obj: SetTerm
    mor: SetTerm        # obj -> c for a well-powering, c -> obj for a co-well-powering


@dataclasses.dataclass
class WellPowering:
    cat: FinCat
    families: dict[SetTerm, list[WPEntry]]
    dual: bool = False
    order: dict[SetTerm, set[tuple[SetTerm, SetTerm]]] | None = None

    def indices(self, c: SetTerm) -> SetTerm:
        return canon(e.index for e in self.families.get(c, ()))

    def entry_arrow(self, c: SetTerm, e: WPEntry) -> Arrow:
        return Arrow(c, e.obj, e.mor) if self.dual else Arrow(e.obj, c, e.mor)

    def mono_view(self) -> tuple[FinCat, WellPowering]:
        """The category and family on which mono-side checks run."""
        if not self.dual:
            return self.cat, self
        return self.cat.op(), dataclasses.replace(self, dual=False)


def canonical_wp_finset(m: int) -> WellPowering:
    """c |-> (U, inclusion U -> c) over every subset U of c, in FinSet on P(m)."""
    C = finset_subsets(m)
    fam, order = {}, {}
    for c in C.objects:
        subs = powerset(c).children
        fam[c] = [WPEntry(U, U, identity_graph(U)) for U in subs]
        order[c] = {(U, V) for U in subs for V in subs if U.issubset(V)}
    return WellPowering(C, fam, order=order)


def canonical_cowp_finset(m: int) -> WellPowering:
    """c |-> (c/r, x |-> [x]_r) over the equivalence relations r on c.

    Non-numeral objects of the ambient category (the quotients themselves)
    get quotient objects that are numerals, so the family is total.
    """
    C = finset_quotients(m)
    fam, order = {}, {}
    for c in C.objects:
        rels = equivalence_relations(c)
        entries = []
        is_numeral = c is numeral(len(c))
        for r in rels:
            blocks = sorted(r.blocks(), key=_ack_key)
            if is_numeral:
                target = canon(blocks)
                proj = graph_of((x, r.block(x)) for x in c)
            else:
                target = numeral(len(blocks))
                pos = {b: numeral(i) for i, b in enumerate(blocks)}
                proj = graph_of((x, pos[r.block(x)]) for x in c)
            entries.append(WPEntry(r.pairs, target, proj))
        fam[c] = entries
        order[c] = {(r.pairs, s.pairs) for r in rels for s in rels if r.pairs.issubset(s.pairs)}
    return WellPowering(C, fam, dual=True, order=order)


@dataclasses.dataclass
class WPReport:
    violation: Violation | None
    index_small: dict[SetTerm, bool]
    checked_pairs: int

    @property
    def ok(self) -> bool:
        return self.violation is None


def _slice_leq(C: FinCat, f: Arrow, g: Arrow) -> bool:
    return bool(mediators(C, f, g))


def induced_order(C: FinCat, W: WellPowering, c: SetTerm) -> set[tuple[SetTerm, SetTerm]]:
    """U <= V iff (a_U, s_U) below (a_V, s_V); for a co-well-powering, iff s_V factors through s_U."""
    D = C.op() if W.dual else C
    es = W.families.get(c, [])
    arrows = [Arrow(e.obj, c, e.mor) for e in es]
    out = set()
    for e1, f1 in zip(es, arrows):
        for e2, f2 in zip(es, arrows):
            if (_slice_leq(D, f2, f1) if W.dual else _slice_leq(D, f1, f2)):
                out.add((e1.index, e2.index))
    return out


def validate_well_powering(C: FinCat, M: Member, W: WellPowering,
                           U: UniverseSpec = HF) -> WPReport:
    """Existence and uniqueness of a representative for every member pair into c.

    For a co-well-powering, ``M`` is the epi-like class in C and all checks
    run in C^op.
    """
    if W.dual:
        D, Mm = C.op(), op_member(M)
    else:
        D, Mm = C, M
    _, Wm = W.mono_view()
    small = {c: is_small(W.indices(c), U) for c in C.objects}
    checked = 0
    for c in D.objects:
        es = Wm.families.get(c, [])
        seen: dict[SetTerm, WPEntry] = {}
        for e in es:
            if e.index in seen:
                return WPReport(Violation("uniqueness", (c, e.index),
                                          f"index {e.index} listed twice at {c}"), small, checked)
            seen[e.index] = e
            f = Wm.entry_arrow(c, e)
            if f.term not in D.homset(f.dom, f.cod) or not Mm(f):
                return WPReport(Violation("membership", (c, e.index),
                                          f"representative {e.index} at {c} is not in M/{c}"),
                                small, checked)
        reps = [Wm.entry_arrow(c, e) for e in es]
        for f in D.arrows_into(c):
            if not Mm(f):
                continue
            checked += 1
            hits = [e.index for e, g in zip(es, reps)
                    if _slice_leq(D, f, g) and _slice_leq(D, g, f)]
            if not hits:
                return WPReport(Violation("existence", (c, f),
                                          f"pair {f} into {c} has no representative"), small, checked)
            if len(hits) > 1:
                return WPReport(Violation("uniqueness", (c, f) + tuple(hits),
                                          f"pair {f} into {c} has {len(hits)} representatives"),
                                small, checked)
        if W.order is not None and c in W.order:
            if W.order[c] != induced_order(C, W, c):
                return WPReport(Violation("order", (c,),
                                          f"declared index order at {c} differs from the slice order"),
                                small, checked)
    return WPReport(None, small, checked)


@dataclasses.dataclass
class IsoMatch:
    index1: SetTerm
    index2: SetTerm
    iso: Arrow


def wp_uniqueness_iso(W1: WellPowering, W2: WellPowering) -> dict[SetTerm, list[IsoMatch]] | Violation:
    """The unique index bijection between two well-powerings, with mediating isos.

    Isos are reported in the orientation of the mono view (for a
    co-well-powering, as arrows of C^op).
    """
    if W1.dual != W2.dual:
        return Violation("mismatch", (), "cannot match a well-powering with a co-well-powering")
    D, A = W1.mono_view()
    _, B = W2.mono_view()
    out = {}
    for c in D.objects:
        e1s, e2s = A.families.get(c, []), B.families.get(c, [])
        if len(e1s) != len(e2s):
            return Violation("mismatch", (c,), f"{len(e1s)} vs {len(e2s)} indices at {c}")
        matches, used = [], set()
        for e1 in e1s:
            f = A.entry_arrow(c, e1)
            found = []
            for e2 in e2s:
                g = B.entry_arrow(c, e2)
                h, k = mediators(D, f, g), mediators(D, g, f)
                if h and k:
                    found.append((e2, h))
            if len(found) != 1:
                return Violation("mismatch", (c, e1.index),
                                 f"index {e1.index} at {c} matches {len(found)} indices")
            e2, hs = found[0]
            if len(hs) != 1 or e2.index in used:
                return Violation("mismatch", (c, e1.index), f"matching at {c} is not unique")
            used.add(e2.index)
            matches.append(IsoMatch(e1.index, e2.index, hs[0]))
        out[c] = matches
    return out


class RecoveredMembers:
    """Membership in M decided by factoring through a representative via an iso."""

    def __init__(self, C: FinCat, W: WellPowering):
        self.W = W
        self.D, self.Wm = W.mono_view()
        self.anomalies: list[str] = []
        self._cache: dict[Arrow, bool] = {}

    def factorizations(self, f: Arrow) -> list[tuple[SetTerm, Arrow]]:
        if self.W.dual:
            f = Arrow(f.cod, f.dom, f.term)
        D, c = self.D, f.cod
        out = []
        for e in self.Wm.families.get(c, []):
            s = self.Wm.entry_arrow(c, e)
            for g in D.arrows(f.dom, e.obj):
                if D.compose(s, g) == f and D.is_iso(g):
                    out.append((e.index, g))
        return out

    def __call__(self, f: Arrow) -> bool:
        hit = self._cache.get(f)
        if hit is None:
            fs = self.factorizations(f)
            if len(fs) > 1:
                self.anomalies.append(f"{f} factors {len(fs)} ways")
            hit = self._cache[f] = bool(fs)
        return hit


def recover_m(C: FinCat, W: WellPowering) -> RecoveredMembers:
    return RecoveredMembers(C, W)


# -- subobject classifier ------------------------------------------------------------

@dataclasses.dataclass
class ClassifierReport:
    m: int
    mode: ThetaMode
    omega: SetTerm
    true: SetTerm
    monos: int
    unique: int                       # monos with exactly one classifying map
    failures: list[str]
    identity_constant_true: bool
    stable: bool
    omegas: dict[int, SetTerm]

    @property
    def ok(self) -> bool:
        return (len(self.omega) == 2 and self.unique == self.monos and not self.failures
                and self.identity_constant_true and self.stable)


def _omega(m: int, mode: ThetaMode) -> tuple[SetTerm, SetTerm]:
    C = finset_full(m)
    one = numeral(1)
    P = subs_star(C, injections, one, mode)
    top = next(i for i, f in enumerate(P.slice.pairs) if f == C.id(one))
    return P.elements, P.rep[P.slice.block_of(top)]


def is_pullback_of_true(C: FinCat, u: Arrow, chi: SetTerm, true: SetTerm) -> bool:
    """Brute-force pullback test of (U, u) against true: 1 -> Omega along chi.

    Test objects are all objects of C; the map to 1 is unique, so a cone is a
    p: X -> c with chi . p constantly true.
    """
    cm, um = as_function(chi), as_function(u.term)
    if any(cm[um[x]] is not true for x in u.dom):
        return False
    for X in C.objects:
        for p in C.arrows(X, u.cod):
            pm = as_function(p.term)
            if any(cm[pm[x]] is not true for x in X):
                continue
            lifts = [k for k in C.arrows(X, u.dom) if C.compose(u, k) == p]
            if len(lifts) != 1:
                return False
    return True


def classifier_check(m: int, mode: ThetaMode = ThetaMode.SCOTT) -> ClassifierReport:
    C = finset_full(m)
    omega, true = _omega(m, mode)
    failures = []
    monos = unique = 0
    identity_ok = True
    for c in C.objects:
        chis = functions(c, omega)
        for u in C.arrows_into(c):
            if not injections(u):
                continue
            monos += 1
            good = [chi for chi in chis if is_pullback_of_true(C, u, chi, true)]
            if len(good) == 1:
                unique += 1
            else:
                failures.append(f"mono {u} has {len(good)} classifying maps")
            if u == C.id(c) and good and any(v is not true for v in as_function(good[0]).values()):
                identity_ok = False
    omegas = {k: _omega(k, mode)[0] for k in range(1, m + 1)}
    stable = len(set(omegas.values())) == 1
    return ClassifierReport(m, mode, omega, true, monos, unique, failures, identity_ok,
                            stable, omegas)


def block_sizes_over_one(objects: Iterable[SetTerm], mode: ThetaMode = ThetaMode.SCOTT):
    """Sizes of the iso blocks of M/1 and Sub*(1) in FinSet on the given objects.

    Adding more singleton objects grows the blocks of the plain quotient
    while Sub*(1) stays the same set in Scott mode.
    """
    from .cats.finset import finset_on
    C = finset_on(list(objects))
    one = numeral(1)
    P = subs_star(C, injections, one, mode)
    return [len(b) for b in P.slice.blocks], P.elements


def index_bijection(W1: WellPowering, W2: WellPowering) -> dict[SetTerm, dict[SetTerm, SetTerm]]:
    res = wp_uniqueness_iso(W1, W2)
    if isinstance(res, Violation):
        raise ValueError(str(res))
    return {c: {m.index1: m.index2 for m in ms} for c, ms in res.items()}


def rename_indices(W: WellPowering, rename: Callable[[SetTerm], SetTerm]) -> WellPowering:
    fam = {c: [WPEntry(rename(e.index), e.obj, e.mor) for e in es] for c, es in W.families.items()}
    order = None
    if W.order is not None:
        order = {c: {(rename(a), rename(b)) for a, b in rel} for c, rel in W.order.items()}
    return WellPowering(W.cat, fam, W.dual, order)


__all__ = [
    "Member", "injections", "surjections", "monos_of", "epis_of", "op_member", "validate_mono_like",
    "validate_epi_like", "SliceOrder", "m_over_c", "mediators", "encode_subpair",
    "SubobjectPoset", "subs_star", "WPEntry", "WellPowering", "canonical_wp_finset",
    "canonical_cowp_finset", "WPReport", "induced_order", "validate_well_powering",
    "IsoMatch", "wp_uniqueness_iso", "RecoveredMembers", "recover_m", "ClassifierReport",
    "is_pullback_of_true", "classifier_check", "block_sizes_over_one", "index_bijection",
    "rename_indices",
]
