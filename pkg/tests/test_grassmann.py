from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffradial.ambient import AmbientSpace
from ffradial.errors import BudgetExceeded, InvalidRange, ParseError
from ffradial.gf import field_new
from ffradial.grassmann import (Subspace, count_containing, enumerate_grassmannian,
                                extend_to_complement, gaussian_binomial, parse_subspace, rank,
                                rref, sample_uniform_subspace, subspace_from_vectors,
                                zero_subspace)

from oracles import brute_subspaces, span


def points_of(gamma):
    return frozenset(map(tuple, gamma.span_coords().tolist()))


def test_gaussian_binomial_examples():
    F3, F2 = field_new(3), field_new(2)
    assert len(brute_subspaces(F3, 3, 1)) == 13
    assert len(brute_subspaces(F2, 4, 2)) == 35
    assert gaussian_binomial(3, 1, 3) == 13
    assert gaussian_binomial(4, 2, 2) == 35
    for n in range(5):
        assert gaussian_binomial(n, 0, 7) == 1
        assert gaussian_binomial(n, n, 7) == 1


@pytest.mark.parametrize("q,n,k", [(2, 3, 1), (2, 3, 2), (2, 4, 1), (2, 4, 3), (3, 2, 1),
                                   (3, 3, 2), (4, 2, 1), (4, 3, 1), (5, 2, 1)])
def test_gaussian_binomial_vs_brute_force(q, n, k):
    assert gaussian_binomial(n, k, q) == len(brute_subspaces(field_new(q), n, k))


def test_gaussian_binomial_errors():
    with pytest.raises(InvalidRange):
        gaussian_binomial(3, 4, 2)
    with pytest.raises(InvalidRange):
        gaussian_binomial(3, -1, 2)
    with pytest.raises(InvalidRange):
        gaussian_binomial(3, 1, 1)


def test_count_containing_examples():
    assert count_containing(3, 2, 1, 2) == 3
    assert count_containing(5, 3, 3, 4) == 1
    assert count_containing(4, 2, 0, 3) == gaussian_binomial(4, 2, 3)
    with pytest.raises(InvalidRange):
        count_containing(3, 1, 2, 2)


@pytest.mark.parametrize("q,n", [(2, 3), (2, 4), (3, 3), (4, 3)])
def test_count_containing_by_filter(q, n):
    space = AmbientSpace(q, n)
    for l in range(n + 1):
        fixed = next(iter(enumerate_grassmannian(space, l)))
        for k in range(l, n + 1):
            hits = sum(g.contains_subspace(fixed) for g in enumerate_grassmannian(space, k))
            assert hits == count_containing(n, k, l, q)


def test_enumerate_q2_n2_k1():
    space = AmbientSpace(2, 2)
    found = {g.basis for g in enumerate_grassmannian(space, 1)}
    assert found == {((1, 0),), ((0, 1),), ((1, 1),)}
    assert [g.basis for g in enumerate_grassmannian(space, 0)] == [()]


@pytest.mark.parametrize("q,n,k", [(3, 3, 1), (2, 4, 2), (3, 3, 2), (4, 3, 1)])
def test_enumeration_matches_brute_sets(q, n, k):
    space = AmbientSpace(q, n)
    listed = [points_of(g) for g in enumerate_grassmannian(space, k)]
    assert len(listed) == len(set(listed)) == gaussian_binomial(n, k, q)
    assert set(listed) == brute_subspaces(space.field, n, k)


def test_enumeration_order_is_stable():
    space = AmbientSpace(3, 3)
    a = [g.serialize() for g in enumerate_grassmannian(space, 2)]
    b = [g.serialize() for g in enumerate_grassmannian(space, 2)]
    assert a == b
    pivots = [g.pivots for g in enumerate_grassmannian(space, 2)]
    assert pivots == sorted(pivots)


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_grassmannian(AmbientSpace(5, 4), 2, budget=100)


def test_rref_invariants():
    F = field_new(5)
    reduced, pivots = rref(F, [[2, 4, 1], [1, 2, 3], [3, 1, 0]])
    assert pivots == sorted(pivots)
    for i, p in enumerate(pivots):
        assert reduced[i][p] == 1
        assert all(reduced[j][p] == 0 for j in range(len(reduced)) if j != i)
    assert rank(F, [[1, 2, 3], [2, 4, 0]]) == 2
    assert rank(F, [[1, 2, 3], [2, 4, 1]]) == 1   # second row is twice the first mod 5


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9]), st.integers(1, 4), st.integers(0, 4),
       st.integers(0, 2 ** 32))
def test_sample_is_canonical(q, n, k, seed):
    k = min(k, n)
    space = AmbientSpace(q, n)
    gamma = sample_uniform_subspace(space, k, np.random.default_rng(seed))
    assert gamma.k == k and gamma.is_rref()
    assert subspace_from_vectors(space, gamma.basis) == gamma
    # a shuffled, rescaled spanning set canonicalizes to the same subspace
    rng = np.random.default_rng(seed + 1)
    if k:
        mixed = [list(v) for v in gamma.span_coords()[rng.permutation(q ** k)]]
        assert subspace_from_vectors(space, mixed) == gamma
        assert len(points_of(gamma)) == q ** k
        assert points_of(gamma) == span(space.field, gamma.basis, n)


def test_sample_edges():
    space = AmbientSpace(3, 3)
    rng = np.random.default_rng(0)
    assert sample_uniform_subspace(space, 0, rng) == zero_subspace(space)
    assert sample_uniform_subspace(space, 3, rng).basis == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_sampler_uniform_g31_q3():
    space = AmbientSpace(3, 3)
    rng = np.random.default_rng(2024)
    draws = 13000
    counts = Counter(sample_uniform_subspace(space, 1, rng) for _ in range(draws))
    assert set(counts) == set(enumerate_grassmannian(space, 1))
    sd = (draws * (1 / 13) * (12 / 13)) ** 0.5
    assert all(abs(c - 1000) <= 5 * sd for c in counts.values())


def test_extend_to_complement():
    space = AmbientSpace(2, 2)
    assert extend_to_complement(zero_subspace(space)) == ((1, 0), (0, 1))
    assert extend_to_complement(subspace_from_vectors(space, [(1, 0), (0, 1)])) == ()
    gamma = subspace_from_vectors(space, [(1, 1)])
    assert gamma.pivots == (0,)
    assert extend_to_complement(gamma) == ((0, 1),)


@pytest.mark.parametrize("q,n", [(2, 4), (3, 3), (4, 3)])
def test_complement_spans(q, n):
    space = AmbientSpace(q, n)
    for k in range(n + 1):
        for gamma in enumerate_grassmannian(space, k):
            assert rank(space.field, list(gamma.basis) + list(extend_to_complement(gamma))) == n


def test_serialize_roundtrip():
    space = AmbientSpace(5, 3)
    gamma = sample_uniform_subspace(space, 2, np.random.default_rng(1))
    text = gamma.serialize()
    assert text.startswith("G(5,3,2):")
    assert parse_subspace(space, text) == gamma
    with pytest.raises(ParseError):
        parse_subspace(space, "G(5,3,2):1,0,0")
    with pytest.raises(ParseError):
        parse_subspace(AmbientSpace(3, 3), text)
    assert Subspace(space, ()).serialize() == "G(5,3,0):"
