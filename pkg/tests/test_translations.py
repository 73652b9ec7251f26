import pytest
from hypothesis import given, strategies as st

from kocalab import config
from kocalab.aks import AbstractKrivineStructure, check_aks_axioms
from kocalab.koca import (
    boolean, check_koca, from_proper_quadruple, heyting_chain_quadruple,
)
from kocalab.lattice import RealizabilityLattice, bits
from kocalab.translations import (
    aks_to_koca, galois_check, koca_to_aks, order_iso_check, roundtrip_tripos_equivalence,
    streicher_iso_check, up_mask,
)

CHAIN = from_proper_quadruple(heyting_chain_quadruple(3, phi=(1, 2)))


def single_point_aks():
    lat = RealizabilityLattice(["t"], ["p"], [[True]], [[0]])
    return AbstractKrivineStructure(lat, [[0]], [0], 1, 0, 0, 0)


def test_koca_to_aks_shape_on_two_elements():
    x = boolean(1)
    a = koca_to_aks(x)
    assert a.terms == a.stacks == ("b0", "b1")
    assert a.lat.pole.tolist() == x.leq.tolist()
    assert a.lat.push.tolist() == x.imp.tolist()
    assert a.store.tolist() == [1, 0]          # p -> bot
    assert (a.K, a.S, a.CC) == (1, 1, 1)
    assert a.qp == 0b10
    assert check_aks_axioms(a).passed


def test_store_satisfies_s5_form():
    x = boolean(2)
    a = koca_to_aks(x)
    bot = x.bottom
    for t in range(x.n):
        for p in range(x.n):
            if x.le(t, p):
                for p2 in range(x.n):
                    assert x.le(int(a.store[p]), x.to(t, p2))
    assert a.store.tolist() == [x.to(p, bot) for p in range(x.n)]


def test_one_element_round_trip():
    x = boolean(0)
    a = koca_to_aks(x)
    assert a.lat.n_terms == 1 and check_aks_axioms(a).passed
    back = aks_to_koca(single_point_aks())
    assert back.n == 1 and check_koca(back).passed


def test_aks_to_koca_of_boolean_two():
    back = aks_to_koca(koca_to_aks(boolean(2)))
    assert check_koca(back).passed
    assert back.n == 4
    assert back.carrier[0] == "{b00,b01,b10,b11}"
    # reverse inclusion: the largest set is the bottom element
    assert back.bottom == 0
    k_set = back.stack_sets[back.k]
    assert back.in_phi(back.k) and k_set == up_mask(boolean(2), koca_to_aks(boolean(2)).K)


@pytest.mark.parametrize("x", [boolean(1), boolean(2), boolean(3), CHAIN], ids=["b1", "b2", "b3", "chain3"])
def test_galois_and_order_iso(x):
    assert galois_check(x).passed
    assert order_iso_check(x).passed


def test_closed_stack_set_count_equals_carrier():
    x = boolean(2)
    rep = galois_check(x)
    assert rep["closed-are-principal-filters"].count == 4


def test_galois_sampling_path():
    rep = galois_check(boolean(2), max_subsets=5)
    assert rep.passed
    assert rep["perp-is-principal"].detail.startswith("sampled")


@pytest.mark.parametrize("size", [0, 1, 2])
def test_streicher_and_roundtrip_exhaustive(size):
    for x in (boolean(1), boolean(2), CHAIN):
        assert streicher_iso_check(koca_to_aks(x), size).passed
        assert roundtrip_tripos_equivalence(x, size).passed


def test_streicher_on_single_point():
    rep = streicher_iso_check(single_point_aks(), 2)
    assert rep.passed and rep.meta["exhaustive"]
    assert rep["app-form-iff-aks-form"].count == 1


def test_roundtrip_counts_all_pairs():
    rep = roundtrip_tripos_equivalence(boolean(1), 2)
    assert rep["entailment-preserved-reflected"].count == 16


def test_sampled_predicate_pairs(monkeypatch):
    monkeypatch.setattr(config, "MAX_PREDICATES", 3)
    rep = roundtrip_tripos_equivalence(boolean(1), 2, config.make_rng(7), samples=25)
    assert rep.passed and rep.meta["exhaustive"] is False
    assert rep["entailment-preserved-reflected"].count == 25


@given(st.sampled_from([boolean(2), CHAIN]), st.data())
def test_up_is_order_embedding(x, data):
    a = data.draw(st.integers(0, x.n - 1))
    b = data.draw(st.integers(0, x.n - 1))
    # a <= b iff up(b) is contained in up(a)
    assert x.le(a, b) == (up_mask(x, b) & ~up_mask(x, a) == 0)
    assert x.inf(list(bits(up_mask(x, a)))) == a
