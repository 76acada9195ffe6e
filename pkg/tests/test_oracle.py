import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wilfcount import oracle, qpoly
from wilfcount.errors import ResourceLimitError
from wilfcount.formulas import q_factorial

perms = st.integers(min_value=1, max_value=8).flatmap(
    lambda n: st.permutations(range(1, n + 1)).map(tuple)
)


def test_reduce_examples():
    assert oracle.reduce([6, 3, 8, 2]) == (3, 2, 4, 1)
    assert oracle.reduce([math.pi, 0.5772156649, math.e, (1 + 5 ** 0.5) / 2]) == (4, 1, 3, 2)
    assert oracle.reduce([7]) == (1,)
    with pytest.raises(ValueError):
        oracle.reduce([1, 2, 1])
    with pytest.raises(ValueError):
        oracle.reduce([])


def test_as_permutation():
    assert oracle.as_permutation("51324") == (5, 1, 3, 2, 4)
    assert oracle.as_permutation([2, 1]) == (2, 1)
    with pytest.raises(ValueError):
        oracle.as_permutation([1, 3])


def test_occurrence_examples():
    assert oracle.occurrences("51324", [3, 1, 2]) == 5
    assert oracle.occurrences("51324", [2, 3, 1]) == 0
    assert oracle.occurrences("12345", [1, 2, 3]) == 10
    assert oracle.occurrences("21", [1]) == 2
    with pytest.raises(ValueError):
        oracle.occurrences("12", [1, 2, 3])


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@given(pi=perms)
def test_occurrences_over_all_patterns_sum_to_subsets(k, pi):
    if k > len(pi):
        return
    total = sum(oracle.occurrences(pi, s) for s in itertools.permutations(range(1, k + 1)))
    assert total == math.comb(len(pi), k)


@given(pi=perms, k=st.integers(min_value=1, max_value=5))
def test_reverse_symmetry(pi, k):
    if k > len(pi):
        return
    rev = tuple(reversed(pi))
    assert oracle.occurrences(pi, oracle.increasing(k)) == oracle.occurrences(rev, tuple(range(k, 0, -1)))


def test_distribution_examples(brute):
    assert qpoly.render(brute(3, 4)) == "q^4+3q^2+6q+14"
    assert qpoly.render(brute(4, 4)) == "q+23"
    assert qpoly.render(oracle.distribution_brute([1], 1)) == "q"
    assert qpoly.render(oracle.distribution_brute([1, 2, 3], 2)) == "2"


def test_distribution_guard():
    with pytest.raises(ResourceLimitError):
        oracle.distribution_brute([1, 2, 3], 11)
    assert oracle.distribution_brute([1, 2, 3], 3, limit=2 + 1).eval_at_one() == 6


@pytest.mark.parametrize("sigma", [(1, 2, 3), (1, 3, 2), (2, 1), (1, 2, 3, 4), (2, 4, 1, 3)])
def test_distribution_mass(sigma):
    for n in range(1, 7):
        assert oracle.distribution_brute(sigma, n).eval_at_one() == math.factorial(n)


def test_inversions_are_q_factorial():
    for n in range(1, 9):
        assert oracle.distribution_brute([2, 1], n) == q_factorial(n)


def test_weight_examples():
    w = oracle.catalytic_weight("21354", 3)
    assert w.q_exp == 4 and w.x == {1: 3, 2: 3, 3: 2}
    w = oracle.catalytic_weight("54321", 3)
    assert w.q_exp == 0 and w.x == {}
    w = oracle.catalytic_weight([3, 4, 5, 6, 1], 4)
    assert w.q_exp == 1
    assert w.x == {3: 3, 4: 1}
    assert w.y == {3: 3, 4: 2, 5: 1}
    with pytest.raises(ValueError):
        oracle.catalytic_weight([1, 1], 3)


def test_weight_y_only_for_k4():
    with pytest.raises(AttributeError):
        oracle.catalytic_weight("123", 3).y
    assert oracle.catalytic_weight("12345", 5).family(2) == {1: 4, 2: 3, 3: 2, 4: 1}


@given(pi=perms, k=st.integers(min_value=3, max_value=5))
def test_weight_q_exponent_counts_occurrences(pi, k):
    w = oracle.catalytic_weight(pi, k)
    assert w.q_exp == (oracle.occurrences(pi, oracle.increasing(k)) if k <= len(pi) else 0)
    # family 2 at value i counts larger entries to its right
    for p, v in enumerate(pi):
        assert w.family(2).get(v, 0) == sum(1 for u in pi[p + 1:] if u > v)


def test_behead_examples():
    assert oracle.behead_check("21354", 3)
    assert oracle.behead_check("51324", 3)
    assert oracle.behead_check("12", 3) and oracle.behead_check("21", 3)
    with pytest.raises(ValueError):
        oracle.behead_check("1", 3)


@pytest.mark.parametrize("k", [3, 4])
def test_behead_holds_exhaustively(k):
    for n in range(2, 8):
        for pi in itertools.permutations(range(1, n + 1)):
            assert oracle.behead_check(pi, k), pi


@pytest.mark.parametrize("k", [5, 6])
@given(pi=perms.filter(lambda p: len(p) >= 2))
def test_behead_holds_for_longer_patterns(k, pi):
    assert oracle.behead_check(pi, k)
