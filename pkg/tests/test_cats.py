import pytest
from hypothesis import given, settings, strategies as st

from hfcat.cats import (Arrow, FinCat, chain, compose_graphs, decode_category, discrete,
                        encode_category, finset_full, finset_quotients,
                        finset_subsets, functions, identity_graph, is_injective, is_surjective,
                        make_category, validate_category, walking_arrow)
from hfcat.cats.size import (MultirelHomset, classify_category, judge_multirel_homset,
                             matrix_term, multirel_compose, multirel_id)
from hfcat.config import budget_scope
from hfcat.encodings import as_function
from hfcat.errors import LawError, ResourceError
from hfcat.hfset import EMPTY, numeral
from hfcat.universes import HF, V

from strategies import matrices

E = EMPTY
A, B = numeral(1), numeral(2)


def test_walking_arrow_valid():
    C = walking_arrow()
    assert validate_category(C) is None
    assert len(list(C.all_arrows())) == 3


def _one_object(table):
    o = E
    ts = {"i": numeral(0), "a": numeral(1), "b": numeral(2)}
    comp = {(o, o, o, ts[g], ts[f]): ts[h] for (g, f), h in table.items()}
    return make_category([o], [(o, o, t) for t in ts.values()], {o: ts["i"]}, comp)


def test_planted_associativity_violation():
    C = _one_object({("a", "a"): "a", ("a", "b"): "a", ("b", "a"): "b", ("b", "b"): "a"})
    v = validate_category(C)
    assert v.law == "associativity"
    e, f, g = v.witnesses
    assert C.compose(g, C.compose(f, e)) != C.compose(C.compose(g, f), e)


def test_associative_table_passes():
    # {i, a, b} with a, b left zeros: x.y = x
    C = _one_object({("a", "a"): "a", ("a", "b"): "a", ("b", "a"): "b", ("b", "b"): "b"})
    assert validate_category(C) is None


def test_missing_identity():
    o, p = E, A
    C = make_category([o, p], [(o, o, E), (p, p, E)], {o: E})
    assert validate_category(C).law == "identity"


def test_missing_composite():
    C = make_category([E], [(E, E, E), (E, E, A)], {E: E})
    assert validate_category(C).law == "composition"


def test_compose_rejects_non_composable():
    C = walking_arrow()
    f = Arrow(E, A, A)
    with pytest.raises(LawError):
        C.compose(f, f)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_chain_valid(n):
    C = chain(n)
    assert validate_category(C) is None
    assert len(list(C.all_arrows())) == n * (n + 1) // 2


def test_op_is_involutive():
    C = chain(3)
    assert validate_category(C.op()) is None
    assert C.op().op() == C
    assert not (C.op() == C)


def test_functions_counts():
    assert len(functions(numeral(3), numeral(2))) == 8
    assert functions(numeral(2), E) == []
    assert functions(E, E) == [E]


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.data())
def test_graph_composition_associates(a, b, c, data):
    f = data.draw(st.sampled_from(functions(numeral(a), numeral(b)) or [None]))
    g = data.draw(st.sampled_from(functions(numeral(b), numeral(c)) or [None]))
    if f is None or g is None:
        return
    gf = as_function(compose_graphs(g, f))
    assert gf == {x: as_function(g)[y] for x, y in as_function(f).items()}
    assert compose_graphs(identity_graph(numeral(b)), f) is f


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_finset_full_valid(m):
    C = finset_full(m)
    assert validate_category(C) is None
    assert sum(1 for _ in C.all_arrows()) == sum(j ** i for i in range(m + 1) for j in range(m + 1))


def test_finset_variants_valid():
    assert validate_category(finset_subsets(2)) is None
    assert validate_category(finset_quotients(2)) is None
    assert len(finset_subsets(3).objects) == 8
    # numerals 0..3 plus 1 + 2 + 5 quotients of 1, 2, 3 (0/r is 0 again)
    assert len(finset_quotients(3).objects) == 4 + 1 + 2 + 5


def test_finset_guard():
    with pytest.raises(ResourceError):
        finset_full(5)
    with budget_scope(max_search=10):
        with pytest.raises(ResourceError):
            finset_full(2)


def test_injective_surjective():
    C = finset_full(2)
    inj = [f for f in C.arrows(A, B) if is_injective(f)]
    assert len(inj) == 2
    assert [is_surjective(f) for f in C.arrows(B, A)] == [True]


def test_encoding_roundtrip():
    for C in (walking_arrow(), chain(3), finset_full(2), discrete([E, A])):
        z = encode_category(C)
        assert decode_category(z) == C


def test_empty_category_encoding():
    C = FinCat((), {}, {}, {})
    z = encode_category(C)
    D = decode_category(z)
    assert D.objects == () and D == C
    # a level-1 tuple of four empty components is the empty set
    assert z is E
    from hfcat.encodings import untuple_level1
    assert untuple_level1(z, numeral(4)) == {numeral(i): E for i in range(4)}


def test_distinct_categories_distinct_terms():
    terms = {encode_category(C) for C in (walking_arrow(), chain(2), chain(3), discrete([E]),
                                          discrete([E, A]), finset_full(1))}
    assert len(terms) == 6


def test_decode_rejects_garbage():
    with pytest.raises(LawError):
        decode_category(numeral(3))


# -- size -------------------------------------------------------------------------

def test_discrete_on_empty_is_small():
    for U in (HF, V(2), V(5)):
        v = classify_category(discrete([E]), U)
        assert v.small and v.consistent()
    # below rank 2 the object set {0} itself is too big
    assert not classify_category(discrete([E]), V(1)).small


def test_finset2_small_in_hf():
    v = classify_category(finset_full(2), HF)
    assert v.small and v.light and v.moderate and v.least_k == 0


def test_finset1_in_v1():
    v = classify_category(finset_full(1), V(1))
    assert not v.small and v.least_k == 2 and v.consistent()


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_classification_consistent(n):
    for C in (walking_arrow(), chain(3), finset_full(1)):
        assert classify_category(C, V(n)).consistent()


# -- multirelations -----------------------------------------------------------------

def test_multirel_identity_and_scalar():
    assert multirel_id(2) == ((1, 0), (0, 1))
    assert multirel_compose([[3]], [[2]]) == ((6,),)
    with pytest.raises(ValueError):
        multirel_compose([[1, 2]], [[1]])


@settings(max_examples=200)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.data())
def test_multirel_category_laws(a, b, c, d, data):
    p = data.draw(matrices(a, b))
    q = data.draw(matrices(b, c))
    r = data.draw(matrices(c, d))
    assert multirel_compose(multirel_compose(p, q), r) == multirel_compose(p, multirel_compose(q, r))
    assert multirel_compose(multirel_id(a), p) == p
    assert multirel_compose(p, multirel_id(b)) == p


def test_multirel_homset_judgements():
    H = MultirelHomset(2, 2)
    j = judge_multirel_homset(H, HF)
    assert j.is_class and not j.small
    for n in range(1, 7):
        j = judge_multirel_homset(H, V(n))
        assert not j.small and not j.is_class
        assert matrix_term(j.witness).rank >= n


def test_matrix_term_is_graph():
    t = matrix_term(((1, 0), (2, 3)))
    assert len(as_function(t)) == 4
