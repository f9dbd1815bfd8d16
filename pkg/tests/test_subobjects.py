import itertools

import pytest
from hypothesis import given, settings

from hfcat.cats import Arrow, finset_full, is_injective, is_surjective
from hfcat.encodings import ThetaMode, kpair
from hfcat.hfset import EMPTY, canon, numeral, powerset
from hfcat.subobjects import (WellPowering, WPEntry, block_sizes_over_one,
                              canonical_cowp_finset, canonical_wp_finset, classifier_check,
                              epis_of, induced_order, injections, m_over_c, monos_of,
                              recover_m, rename_indices, subs_star, surjections,
                              validate_epi_like, validate_mono_like, validate_well_powering,
                              wp_uniqueness_iso)
from hfcat.universes import V

from strategies import nested_terms

E = EMPTY


@pytest.fixture(scope="module")
def wp3():
    return canonical_wp_finset(3)


@pytest.fixture(scope="module")
def cowp3():
    return canonical_cowp_finset(3)


def test_injections_are_mono_like():
    C = finset_full(2)
    assert validate_mono_like(C, injections) is None
    assert validate_epi_like(C, surjections) is None


def test_all_maps_fail_monicity():
    v = validate_mono_like(finset_full(2), lambda f: True)
    assert v.law == "monic"
    f = v.witnesses[0]
    assert not is_injective(f)


def test_missing_identity_fails_wideness():
    C = finset_full(2)
    v = validate_mono_like(C, lambda f: injections(f) and f != C.id(numeral(1)))
    assert v.law == "wide"


def test_monos_are_injections():
    C = finset_full(3)
    M, P = monos_of(C), epis_of(C)
    for f in C.all_arrows():
        assert M(f) == is_injective(f)
        assert P(f) == is_surjective(f)


def test_mediators_unique_and_members():
    C = finset_full(3)
    for c in C.objects:
        S = m_over_c(C, injections, c)
        assert not S.anomalies
        for (i, j), h in S.leq.items():
            assert injections(h)


@pytest.mark.parametrize("c,size", [(0, 1), (1, 2), (2, 4), (3, 8)])
def test_sub_star_sizes(c, size):
    for mode in ThetaMode:
        P = subs_star(finset_full(3), injections, numeral(c), mode)
        assert len(P.elements) == size
        assert P.antisymmetric()


def _isomorphic(rel1, xs, rel2, ys):
    for perm in itertools.permutations(ys):
        f = dict(zip(xs, perm))
        if {(f[a], f[b]) for a, b in rel1} == rel2:
            return True
    return False


def test_sub_star_of_two_is_powerset_order():
    P = subs_star(finset_full(2), injections, numeral(2))
    subsets = list(powerset(numeral(2)))
    incl = {(U, W) for U in subsets for W in subsets if U.issubset(W)}
    assert _isomorphic(P.leq, list(P.elements), incl, subsets)


def test_canonical_wp_indices(wp3):
    assert [e.index for e in wp3.families[E]] == [E]
    two = numeral(2)
    assert canon(e.index for e in wp3.families[two]) is powerset(two)


def test_canonical_wp_validates(wp3):
    rep = validate_well_powering(wp3.cat, injections, wp3)
    assert rep.ok and all(rep.index_small.values())
    # every member pair into every object was checked
    total = sum(1 for f in wp3.cat.all_arrows() if injections(f))
    assert rep.checked_pairs == total


def test_index_order_is_inclusion(wp3):
    for c in wp3.cat.objects:
        subs = list(powerset(c))
        assert induced_order(wp3.cat, wp3, c) == {(U, W) for U in subs for W in subs if U.issubset(W)}


def test_duplicate_representative(wp3):
    two = numeral(2)
    fam = dict(wp3.families)
    zero = canon([E])
    extra = WPEntry(canon([zero]), zero, canon([kpair(E, E)]))
    fam[two] = fam[two] + [extra]
    rep = validate_well_powering(wp3.cat, injections, WellPowering(wp3.cat, fam))
    assert rep.violation.law == "uniqueness"


def test_empty_family(wp3):
    fam = dict(wp3.families)
    fam[numeral(1)] = []
    rep = validate_well_powering(wp3.cat, injections, WellPowering(wp3.cat, fam))
    assert rep.violation.law == "existence"


def test_smallness_reported_separately(wp3):
    rep = validate_well_powering(wp3.cat, injections, wp3, V(2))
    assert rep.ok
    assert rep.index_small[E] and not rep.index_small[numeral(3)]


@pytest.mark.parametrize("c,bell", [(1, 1), (2, 2), (3, 5)])
def test_cowp_bell_counts(cowp3, c, bell):
    assert len(cowp3.families[numeral(c)]) == bell


def test_cowp_validates_dually(cowp3):
    rep = validate_well_powering(cowp3.cat, surjections, cowp3)
    assert rep.ok
    # the mirror: the same data validates as a well-powering of the opposite category
    D = cowp3.cat.op()
    converse = {c: {(v, u) for u, v in rel} for c, rel in cowp3.order.items()}
    W = WellPowering(D, cowp3.families, dual=False, order=converse)
    assert validate_well_powering(D, lambda f: surjections(Arrow(f.cod, f.dom, f.term)), W).ok


def test_cowp_order_is_inclusion(cowp3):
    for c in cowp3.cat.objects:
        assert induced_order(cowp3.cat, cowp3, c) == cowp3.order[c]


def test_recover_m(wp3, cowp3):
    R = recover_m(wp3.cat, wp3)
    assert all(R(f) == is_injective(f) for f in wp3.cat.all_arrows())
    assert not R.anomalies
    Q = recover_m(cowp3.cat, cowp3)
    assert all(Q(f) == is_surjective(f) for f in cowp3.cat.all_arrows())


def test_split_monos_recovered(wp3):
    C = wp3.cat
    R = recover_m(C, wp3)
    for f in C.all_arrows():
        if any(C.compose(r, f) == C.id(f.dom) for r in C.arrows(f.cod, f.dom)):
            assert R(f)


def test_blocks_match_indices(wp3):
    for c in wp3.cat.objects:
        assert len(subs_star(wp3.cat, injections, c).elements) == len(wp3.families[c])


def test_uniqueness_iso_identity(wp3):
    res = wp_uniqueness_iso(wp3, wp3)
    for c, ms in res.items():
        for m in ms:
            assert m.index1 is m.index2
            assert m.iso == wp3.cat.id(m.iso.dom)


def test_uniqueness_iso_renamed(wp3, cowp3):
    for W in (wp3, cowp3):
        tag = lambda U: kpair(U, numeral(7))  # noqa: E731
        res = wp_uniqueness_iso(W, rename_indices(W, tag))
        assert all(m.index2 is tag(m.index1) for ms in res.values() for m in ms)


def test_uniqueness_iso_missing_block(wp3):
    fam = dict(wp3.families)
    fam[numeral(2)] = fam[numeral(2)][:-1]
    res = wp_uniqueness_iso(wp3, WellPowering(wp3.cat, fam))
    assert res.law == "mismatch"


@settings(max_examples=10, deadline=None)
@given(nested_terms(4))
def test_renamed_wp_still_validates(tag):
    W = canonical_wp_finset(2)
    R = rename_indices(W, lambda U: kpair(tag, U))
    assert validate_well_powering(R.cat, injections, R).ok


def test_classifier_m2():
    rep = classifier_check(2)
    assert len(rep.omega) == 2
    assert rep.unique == rep.monos > 0
    assert rep.identity_constant_true and rep.ok


def test_classifier_stability():
    assert classifier_check(2).omega is classifier_check(3).omega


def test_choice_mode_classifier():
    rep = classifier_check(2, ThetaMode.CHOICE)
    assert rep.ok and len(rep.omega) == 2


def test_true_blocks_grow_with_skeleton():
    base = [numeral(0), numeral(1), numeral(2)]
    sizes1, omega1 = block_sizes_over_one(base)
    extra = base + [canon([numeral(2)]), canon([canon([numeral(2)])])]
    sizes2, omega2 = block_sizes_over_one(extra)
    assert sum(sizes2) > sum(sizes1)
    assert omega1 is omega2
