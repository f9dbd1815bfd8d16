import itertools

import pytest

from hfcat.cats import Arrow, chain, discrete, functions, walking_arrow
from hfcat.cats.yoneda import (NatTrans, Presheaf, Probe, all_presheaves, identity_nat,
                               nat_trans_enumerate, presheaf_from_maps, vcompose,
                               yoneda_arrow, yoneda_beta, yoneda_check, yoneda_object)
from hfcat.encodings import graph_of
from hfcat.hfset import EMPTY, canon, numeral
from hfcat.universes import V

E = EMPTY
VALUES = [numeral(i) for i in range(3)]


def brute_nat(F, G):
    """Every family of functions F c -> G c, kept when all squares commute."""
    C = F.cat
    spaces = [functions(F.obj[c], G.obj[c]) for c in C.objects]
    out = []
    for pick in itertools.product(*spaces):
        t = NatTrans(F, G, dict(zip(C.objects, pick)))
        if t.validate() is None:
            out.append(t)
    return out


def test_representables_on_walking_arrow():
    C = walking_arrow()
    a, b = C.objects
    Ya = yoneda_object(C, a)
    assert Ya.obj[a] is canon([C.id(a).term])
    assert Ya.obj[b] is E
    assert Ya.validate() is None


def test_beta_of_identity_is_identity():
    for C in (walking_arrow(), chain(3)):
        for c in C.objects:
            Yc = yoneda_object(C, c)
            assert yoneda_beta(C, c, Yc, C.id(c).term) == identity_nat(Yc)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_one_object_category(n):
    C = discrete([E])
    F = Presheaf(C, {E: numeral(n)}, {C.id(E): graph_of((x, x) for x in numeral(n))})
    betas = {yoneda_beta(C, E, F, x).encode() for x in numeral(n)}
    assert len(betas) == n
    assert {t.encode() for t in nat_trans_enumerate(yoneda_object(C, E), F)} == betas


def test_empty_presheaf_has_one_transformation():
    C = walking_arrow()
    a, b = C.objects
    F = presheaf_from_maps(C, {a: E, b: E}, {Arrow(a, b, numeral(1)): {}})
    assert F.validate() is None
    nats = nat_trans_enumerate(F, F)
    assert len(nats) == 1 and nats[0] == identity_nat(F)


@pytest.mark.parametrize("C", [walking_arrow(), chain(3)], ids=["arrow", "chain3"])
def test_enumeration_matches_brute_force(C):
    sheaves = [yoneda_object(C, c) for c in C.objects] + all_presheaves(C, VALUES, limit=6)
    for F in sheaves:
        for G in sheaves[:4]:
            fast = sorted(t.encode() for t in nat_trans_enumerate(F, G))
            slow = sorted(t.encode() for t in brute_nat(F, G))
            assert fast == slow


def test_planted_non_natural_family_rejected():
    C = walking_arrow()
    a, b = C.objects
    Ya, Yb = yoneda_object(C, a), yoneda_object(C, b)
    # Yb(a) = {arrow a->b}, Yb(b) = {id}; send nothing consistently: swap is impossible,
    # so plant the constant family on a presheaf with two elements instead
    F = presheaf_from_maps(C, {a: numeral(2), b: numeral(2)},
                           {Arrow(a, b, numeral(1)): {E: E, numeral(1): numeral(1)}})
    bad = NatTrans(F, F, {a: graph_of({E: numeral(1), numeral(1): E}),
                          b: graph_of((x, x) for x in numeral(2))})
    assert bad.validate() is not None
    assert bad not in nat_trans_enumerate(F, F)
    assert len(nat_trans_enumerate(Ya, Yb)) == 1


def test_yoneda_arrow_is_natural():
    C = chain(3)
    for f in C.all_arrows():
        assert yoneda_arrow(C, f).validate() is None


def test_vcompose_identity():
    C = chain(3)
    F = all_presheaves(C, VALUES, limit=5)[-1]
    for t in nat_trans_enumerate(F, F):
        assert vcompose(t, identity_nat(F)) == t
        assert vcompose(identity_nat(F), t) == t


def test_all_presheaves_counts():
    assert len(all_presheaves(walking_arrow(), VALUES)) == 11
    assert len(all_presheaves(chain(3), VALUES)) == 47


@pytest.mark.parametrize("C", [walking_arrow(), chain(3)], ids=["arrow", "chain3"])
def test_yoneda_check_with_alphas(C):
    reps = [yoneda_object(C, c) for c in C.objects]
    others = [F for F in all_presheaves(C, VALUES) if not any(F == R for R in reps)]
    sheaves = reps + others[: 10 - len(reps)]
    probes = []
    for F in sheaves:
        alphas = [t for G in sheaves[:3] for t in nat_trans_enumerate(F, G)][:4]
        probes.extend(Probe(c, F, alphas) for c in C.objects)
    rep = yoneda_check(C, probes, V(6))
    assert rep.ok
    assert sum(p.f_squares for p in rep.probes) > 0
    assert all(p.size_Fc == p.size_nat for p in rep.probes)
