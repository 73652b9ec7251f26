import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracle
from kocalab.errors import ContractError, ResourceError, StructuralError
from kocalab.lattice import (
    RealizabilityLattice, closed_stack_sets_bruteforce, closure_stacks, closure_terms,
    enumerate_closed_stack_sets, is_closed_stacks, perp_of_stacks, perp_of_terms, push_set,
    right_conductor, sup_inf, to_vector,
)


def two_by_two():
    # pole = {(t0,p0), (t1,p0), (t1,p1)}
    return RealizabilityLattice(["t0", "t1"], ["p0", "p1"], [[True, False], [True, True]])


@st.composite
def lattices(draw, max_terms=4, max_stacks=4, with_push=False):
    n = draw(st.integers(0, max_terms))
    m = draw(st.integers(0, max_stacks))
    pole = draw(st.lists(st.lists(st.booleans(), min_size=m, max_size=m), min_size=n, max_size=n))
    push = None
    if with_push and m:
        push = draw(st.lists(st.lists(st.integers(0, m - 1), min_size=m, max_size=m),
                             min_size=n, max_size=n))
    pole = np.array(pole, dtype=bool).reshape(n, m)
    return RealizabilityLattice([f"t{i}" for i in range(n)], [f"p{i}" for i in range(m)],
                                pole, push)


# fixed examples

def test_two_by_two_perps():
    lat = two_by_two()
    assert perp_of_terms(lat, 0b11) == 0b01
    assert perp_of_stacks(lat, 0b10) == 0b10
    assert perp_of_terms(lat, 0) == 0b11
    assert perp_of_stacks(lat, 0) == 0b11


def test_two_by_two_closure_of_empty_is_p0():
    # p0 is orthogonal to every term, so it lies in every closed set
    lat = two_by_two()
    assert closure_stacks(lat, 0) == 0b01
    assert lat.stack_names(closure_stacks(lat, 0)) == ["p0"]


def test_two_by_two_closed_sets():
    lat = two_by_two()
    assert enumerate_closed_stack_sets(lat) == [0b11, 0b01]
    assert closed_stack_sets_bruteforce(lat) == [0b11, 0b01]


def test_full_and_empty_pole():
    full = RealizabilityLattice(["a", "b"], ["x", "y", "z"], np.ones((2, 3), bool))
    assert perp_of_terms(full, 0b11) == 0b111
    empty = RealizabilityLattice(["a", "b"], ["x", "y", "z"], np.zeros((2, 3), bool))
    assert perp_of_stacks(empty, 0b111) == 0
    assert enumerate_closed_stack_sets(empty) == [0b111, 0]


def test_no_terms_gives_only_pi():
    lat = RealizabilityLattice([], ["x", "y"], np.zeros((0, 2), bool))
    assert enumerate_closed_stack_sets(lat) == [0b11]


def test_boolean_vector_input_and_names():
    lat = two_by_two()
    assert perp_of_terms(lat, np.array([True, True])) == 0b01
    assert lat.term_set(["t1"]) == 0b10
    assert list(to_vector(0b01, 2)) == [True, False]


def test_structural_errors():
    with pytest.raises(StructuralError):
        RealizabilityLattice(["a", "a"], ["x"], [[True], [True]])
    with pytest.raises(StructuralError):
        RealizabilityLattice(["a"], ["x"], [[True, False]])
    with pytest.raises(StructuralError):
        perp_of_terms(two_by_two(), 0b111)
    with pytest.raises(StructuralError):
        push_set(two_by_two(), 1, 1)


def test_enumeration_bounds():
    lat = RealizabilityLattice(["a"], [f"p{i}" for i in range(5)], np.ones((1, 5), bool))
    with pytest.raises(ResourceError):
        enumerate_closed_stack_sets(lat, max_stacks=4)
    with pytest.raises(ResourceError):
        closed_stack_sets_bruteforce(lat, max_stacks=4)


def test_sup_inf_conventions():
    lat = two_by_two()
    assert sup_inf(lat, []) == (closure_stacks(lat, 0), 0b11)
    assert sup_inf(lat, [0b01]) == (0b01, 0b01)
    with pytest.raises(ContractError):
        sup_inf(lat, [0b10])


def test_push_conventions():
    lat = two_by_two().with_push([[1, 0], [0, 0]])
    assert push_set(lat, 0, 0b11) == 0
    assert right_conductor(lat, 0, 0b01) == 0b11
    assert right_conductor(lat, 0b11, 0b11) == 0b11
    assert push_set(lat, 0b01, 0b01) == 0b10


# properties against the oracle

@given(lattices())
def test_perps_match_oracle(lat):
    pole = lat.pole.tolist()
    n, m = lat.n_terms, lat.n_stacks
    for L in oracle.subsets(n):
        assert perp_of_terms(lat, oracle.mask(L)) == oracle.mask(oracle.perp_terms(pole, L, m))
    for P in oracle.subsets(m):
        assert perp_of_stacks(lat, oracle.mask(P)) == oracle.mask(oracle.perp_stacks(pole, P, n))


@given(lattices())
def test_enumeration_equals_bruteforce_and_oracle(lat):
    expected = [oracle.mask(P) for P in oracle.closed_sets(lat.pole.tolist(), lat.n_terms, lat.n_stacks)]
    assert enumerate_closed_stack_sets(lat) == expected
    assert closed_stack_sets_bruteforce(lat) == expected


@given(lattices())
def test_antitone_de_morgan_triple_perp(lat):
    n, m = lat.n_terms, lat.n_stacks
    for L in range(1 << n):
        for L2 in range(1 << n):
            if L & ~L2 == 0:
                assert perp_of_terms(lat, L2) & ~perp_of_terms(lat, L) == 0
            assert perp_of_terms(lat, L | L2) == perp_of_terms(lat, L) & perp_of_terms(lat, L2)
        assert perp_of_terms(lat, closure_terms(lat, L)) == perp_of_terms(lat, L)
    for P in range(1 << m):
        c = closure_stacks(lat, P)
        assert P & ~c == 0
        assert closure_stacks(lat, c) == c
        assert perp_of_stacks(lat, c) == perp_of_stacks(lat, P)


@given(lattices())
def test_perps_are_inverse_bijections_on_closed_sets(lat):
    closed_s = enumerate_closed_stack_sets(lat)
    closed_t = {closure_terms(lat, L) for L in range(1 << lat.n_terms)}
    image = {perp_of_stacks(lat, P) for P in closed_s}
    assert image == closed_t
    for P in closed_s:
        assert perp_of_terms(lat, perp_of_stacks(lat, P)) == P
    for P in closed_s:
        for Q in closed_s:
            if P & ~Q == 0:
                assert perp_of_stacks(lat, Q) & ~perp_of_stacks(lat, P) == 0


@given(lattices())
def test_sup_inf_are_bounds(lat):
    closed = enumerate_closed_stack_sets(lat)
    for P in closed:
        for Q in closed:
            sup, inf = sup_inf(lat, [P, Q])
            assert is_closed_stacks(lat, sup) and is_closed_stacks(lat, inf)
            uppers = [R for R in closed if (P | Q) & ~R == 0]
            lowers = [R for R in closed if R & ~(P & Q) == 0]
            assert sup in uppers and all(sup & ~R == 0 for R in uppers)
            assert inf in lowers and all(R & ~inf == 0 for R in lowers)


@given(lattices(max_terms=3, max_stacks=3, with_push=True))
def test_push_conductor_adjunction(lat):
    if lat.push is None:
        return
    n, m = lat.n_terms, lat.n_stacks
    for L in range(1 << n):
        for P in range(1 << m):
            LP = push_set(lat, L, P)
            for Q in range(1 << m):
                assert (LP & ~Q == 0) == (P & ~right_conductor(lat, L, Q) == 0)
