import pytest
from hypothesis import given, settings, strategies as st

from hfcat.encodings import STAR, as_function, class_prod, class_sum, kpair, kunpair
from hfcat.hfset import EMPTY, ack_decode, canon, numeral, terms_below_rank
from hfcat.hierarchy import (ClassSpec, Hierarchy, closure_check, hierarchy_for, is_k_class,
                             is_k_entity, psi_member)
from hfcat.universes import HF, V, is_small

import oracles
from strategies import nested_terms

E = EMPTY
S = canon([E])
TWO = numeral(2)


def test_psi_examples():
    assert psi_member(E, canon(), V(1))
    c = TWO
    A = canon([c])
    assert psi_member(kpair(c, c), A, V(2))
    assert not psi_member(canon([c]), A, V(2))
    assert psi_member(c, ClassSpec.of(A), V(2))


def test_k_class_examples():
    assert is_k_class(E, 0, V(2))
    assert is_k_class(TWO, 1, V(2))
    assert is_k_class(canon([TWO]), 2, V(2))
    assert not is_k_class(canon([TWO]), 1, V(2))


@pytest.fixture(scope="module")
def fixpoint():
    return oracles.psi_fixpoint(1 << 16, 2, 2)


def test_entities_match_fixpoint_oracle(fixpoint):
    entities, classes = fixpoint
    h = hierarchy_for(V(2))
    terms = terms_below_rank(5)
    for k in range(3):
        got_e = {n for n, x in enumerate(terms) if h.is_k_entity(x, k)}
        got_c = {n for n, x in enumerate(terms) if h.is_k_class(x, k)}
        assert got_e == entities[k]
        assert got_c == classes[k]


def test_fixpoint_counts(fixpoint):
    entities, classes = fixpoint
    assert [len(e) for e in entities] == [2, 25, 137]
    assert [len(c) for c in classes] == [2, 4, 128]


def test_monotone_exhaustive():
    h = hierarchy_for(V(2))
    for x in terms_below_rank(5):
        for k in range(3):
            if h.is_k_class(x, k):
                assert h.is_k_entity(x, k)
                assert h.is_k_class(x, k + 1)
            if h.is_k_entity(x, k):
                assert h.is_k_entity(x, k + 1)


@given(nested_terms(), st.integers(0, 3))
def test_hf_degenerate(x, k):
    assert is_k_class(x, k, HF) and is_k_entity(x, k, HF)
    assert psi_member(x, canon(), HF)


def test_strict_under_vn():
    h = hierarchy_for(V(2))
    assert h.is_k_class(TWO, 1) and not h.is_k_class(TWO, 0)
    x = canon([TWO])
    assert h.is_k_class(x, 2) and not h.is_k_class(x, 1)
    assert h.least_k_class(x, 3) == 2


def test_least_levels_v1():
    h = hierarchy_for(V(1))
    assert h.least_k_class(TWO, 3) == 2
    assert h.least_k_entity(TWO, 3) == 2
    assert h.least_k_class(E, 3) == 0


def test_star_encoding_seam():
    h = Hierarchy(V(2), STAR)
    assert h.is_k_entity(TWO, 1)
    assert h.encoding is STAR


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_closure_hf(k):
    rep = closure_check(k, HF, instances=100)
    assert rep.ok and rep.checks == 400


def test_closure_v3_k2():
    assert closure_check(2, V(3), instances=100).ok


@pytest.mark.parametrize("k", [0, 1])
def test_closure_v3_low_levels_fail_by_pairing(k):
    # V_n is not pairing-closed, so sums and products of small sets escape
    rep = closure_check(k, V(3), instances=100)
    assert not rep.ok
    for f in rep.failures:
        bad = f.result if k == 0 else f.offender
        assert bad is not None
        if k == 1:
            # a pair (sum, product, sigma) or a tuple (pi) of small parts
            assert not is_small(bad, V(3))
            if f.construction == "pi":
                g = as_function(bad)
                assert g is not None and all(is_small(v, V(3)) for v in g.values())
            else:
                assert all(is_small(p, V(3)) for p in kunpair(bad))


def test_sum_of_singletons_escapes_v3():
    z = class_sum(S, S)
    assert z.rank == 4
    assert not is_k_class(z, 0, V(3))
    assert is_k_class(z, 0, V(5))


def test_empty_inputs_close():
    for k in range(3):
        assert is_k_class(class_sum(E, E), k, V(3))
        assert is_k_class(class_prod(E, TWO), k, V(3))


@settings(max_examples=50)
@given(st.integers(0, (1 << 16) - 1))
def test_psi_with_explicit_set_matches_pairs(n):
    x = ack_decode(n)
    A = canon([TWO])
    if psi_member(x, A, V(2)) and not is_small(x, V(2)) and x is not TWO:
        p = kunpair(x)
        assert p is not None or as_function(x) is not None
