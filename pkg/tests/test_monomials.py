from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from sqfpow.graphs import cycle, path, random_forest
from sqfpow.monomials import (
    Monomial,
    MonomialError,
    MonomialIdeal,
    coprime,
    divides,
    edge_ideal,
    ideal_intersection,
    ideal_sum,
    initial_degree,
    lcm,
    matching_power,
    minimalize,
    monomial_grade,
    partial_star,
    scale,
    squarefree_power,
    unit_ideal,
    variable_multiple,
)


def m(*vs, n=6):
    return Monomial.of(n, *vs)


def test_lcm_divides_coprime():
    assert lcm(m(1, 2), m(2, 3)) == m(1, 2, 3)
    assert divides(m(1), m(1, 2)) and not divides(m(3), m(1, 2))
    assert coprime(m(1, 2), m(3, 4)) and not coprime(m(1, 2), m(2, 3))
    with pytest.raises(MonomialError):
        lcm(m(1, n=3), m(1, n=4))


def test_minimalize_drops_multiples():
    I = MonomialIdeal.from_supports(4, [[1, 2], [1, 2, 3], [3, 4]])
    assert I == MonomialIdeal.from_supports(4, [[1, 2], [3, 4]])


def test_sum_intersection_scale():
    I = MonomialIdeal.from_supports(4, [[1, 2]])
    J = MonomialIdeal.from_supports(4, [[2, 3]])
    assert ideal_intersection(I, J) == MonomialIdeal.from_supports(4, [[1, 2, 3]])
    assert ideal_sum(I, J).gens == I.gens | J.gens
    assert scale(0b1000, I) == MonomialIdeal.from_supports(4, [[1, 2, 4]])
    with pytest.raises(MonomialError, match="squarefree"):
        scale(0b0001, I)
    assert variable_multiple([3, 4], I) == MonomialIdeal.from_supports(4, [[1, 2, 3], [1, 2, 4]])


def test_squarefree_powers_of_paths():
    I = edge_ideal(path(4))
    assert squarefree_power(I, 2) == MonomialIdeal.from_supports(4, [[1, 2, 3, 4]])
    assert squarefree_power(I, 3).is_zero
    assert squarefree_power(I, 0) == unit_ideal(4)
    assert initial_degree(squarefree_power(edge_ideal(path(7)), 3)) == 6


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 9), st.integers(0, 10_000), st.integers(1, 4))
def test_squarefree_power_is_the_matching_power(n, seed, k):
    G = random_forest(n, seed)
    assert squarefree_power(edge_ideal(G), k) == matching_power(G, k)


def test_monomial_grade_is_matching_number():
    assert monomial_grade(edge_ideal(path(7))) == 3
    assert monomial_grade(edge_ideal(cycle(5))) == 2
    assert monomial_grade(MonomialIdeal.from_supports(3, [[1, 2]])) == 1


def test_partial_star():
    I = MonomialIdeal.from_supports(3, [[1, 2, 3]])
    assert partial_star(I) == MonomialIdeal.from_supports(3, [[1, 2], [1, 3], [2, 3]])
    J = squarefree_power(edge_ideal(path(6)), 2)
    assert partial_star(J) <= edge_ideal(path(6))


def test_minimalize_from_monomials():
    assert minimalize(3, [m(1, n=3), m(1, 2, n=3)]).gens == frozenset({1})
