import pytest
from hypothesis import given

from hfcat.encodings import kpair
from hfcat.hfset import EMPTY, canon, numeral, powerset
from hfcat.universes import HF, V, UniverseSpec, check_universe_axioms, elements, is_class, is_small

from strategies import nested_terms

S = canon([EMPTY])


def test_smallness_examples():
    assert is_small(EMPTY, V(1))
    assert not is_small(S, V(1))


@given(nested_terms())
def test_everything_small_in_hf(x):
    assert is_small(x, HF)
    assert is_class(x, HF)


def test_class_examples():
    assert is_class(EMPTY, V(0))
    assert is_class(S, V(1))
    assert not is_class(canon([S]), V(1))


def test_parse_and_str():
    assert UniverseSpec.parse("HF") == HF
    assert UniverseSpec.parse("V3") == V(3)
    assert str(V(3)) == "V3" and str(HF) == "HF"
    with pytest.raises(ValueError):
        UniverseSpec.parse("W2")


def test_hf_passes_symbolically():
    rep = check_universe_axioms(HF)
    assert rep.ok
    assert all(c.status == "pass" and c.checked == 0 for c in rep.clauses)


def test_v2_powerset_witness():
    rep = check_universe_axioms(V(2))
    c = rep.clause("powerset")
    assert c.status == "fail"
    assert c.witness == (S,)
    assert c.result is powerset(S) and c.result.rank == 2


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_transitivity_for_all_vn(n):
    assert check_universe_axioms(V(n)).clause("transitive").status == "pass"


def test_v3_pairing_instance():
    assert is_small(canon([EMPTY, EMPTY]), V(3))
    assert check_universe_axioms(V(3)).clause("pairing").status == "fail"


def test_elements_are_small():
    assert all(is_small(x, V(3)) for x in elements(V(3)))
    assert len(elements(V(3))) == 4
    with pytest.raises(ValueError):
        elements(HF)


def test_vn_not_pairing_closed():
    # the pair of two small sets can escape V_n
    x = numeral(2)
    assert is_small(x, V(3)) and not is_small(kpair(x, x), V(3))
