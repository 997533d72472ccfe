import itertools
import random

import pytest
from hypothesis import given, strategies as st

from affcanon.affine_root import cartan_datum
from affcanon.gram import (
    gram_matrix,
    inner_product,
    inner_product_bruteforce,
    inner_product_coproduct,
    xi_sum,
    xi_sum_bruteforce,
)
from affcanon.monomial import MonomialWord
from affcanon.qfield import ONE, Q, LaurentPoly, RatFn

A2 = cartan_datum("A", 2)
D4 = cartan_datum("D", 4)


def prod_inv(*factors):
    den = ONE
    for e in factors:
        den = den * (ONE - Q ** e)
    return RatFn(ONE, den)


def W(*letters):
    return MonomialWord(tuple(letters))


def words(datum, max_t=6):
    letter = st.tuples(st.sampled_from(list(datum.vertices)), st.integers(1, 3))
    return st.lists(letter, max_size=4).map(lambda ls: MonomialWord(tuple(ls))).filter(
        lambda w: len(w.colors()) <= max_t)


def shuffled(w, rnd):
    cols = list(w.colors())
    rnd.shuffle(cols)
    return MonomialWord(tuple((c, 1) for c in cols))


def test_closed_forms():
    assert inner_product(W((1, 1)), W((1, 1)), A2) == prod_inv(2)
    for c in range(1, 6):
        assert inner_product(W((2, c)), W((2, c)), A2) == prod_inv(*range(2, 2 * c + 1, 2))
    assert inner_product(W((1, 1), (2, 1)), W((2, 1), (1, 1)), A2) == RatFn(Q, (ONE - Q * Q) ** 2)
    assert inner_product(W((1, 1), (2, 1)), W((1, 1), (2, 1)), A2) == prod_inv(2, 2)
    assert inner_product(W(), W(), A2) == RatFn(1)
    assert inner_product_coproduct(W(), W(), A2) == RatFn(1)


def test_weight_mismatch_is_zero():
    assert not inner_product(W((1, 1)), W((2, 1)), A2)
    assert not inner_product_coproduct(W((1, 2)), W((1, 1)), A2)


def test_xi_sum_dp_against_enumeration():
    rnd = random.Random(7)
    for _ in range(150):
        t = rnd.randint(0, 7)
        a = tuple(rnd.choice(range(5)) for _ in range(t))
        b = list(a)
        rnd.shuffle(b)
        assert xi_sum(a, tuple(b), D4.matrix) == xi_sum_bruteforce(a, tuple(b), D4.matrix)


@given(words(A2), st.randoms(use_true_random=False))
def test_three_engines_agree(w1, rnd):
    w2 = shuffled(w1, rnd)
    a = inner_product(w1, w2, A2)
    assert a == inner_product_bruteforce(w1, w2, A2)
    assert a == inner_product_coproduct(w1, w2, A2)


@given(words(D4, 5), words(D4, 5))
def test_symmetry_d4(w1, w2):
    assert inner_product(w1, w2, D4) == inner_product(w2, w1, D4)


def test_divided_power_relation():
    # f_i^2 = [2] f_i^(2), so (f_i f_i, x) = (q + 1/q) (f_i^(2), x)
    x = W((1, 1), (2, 1), (1, 1))
    lhs = inner_product(W((1, 1), (1, 1), (2, 1)), x, A2)
    rhs = inner_product(W((1, 2), (2, 1)), x, A2) * LaurentPoly({1: 1, -1: 1})
    assert lhs == rhs


def test_serre_relation_is_radical():
    # f_1^(2) f_2 - f_1 f_2 f_1 + f_2 f_1^(2) pairs to zero with every word of its weight
    serre = [(W((1, 2), (2, 1)), 1), (W((1, 1), (2, 1), (1, 1)), -1), (W((2, 1), (1, 2)), 1)]
    for cols in set(itertools.permutations((1, 1, 2))):
        y = MonomialWord(tuple((c, 1) for c in cols))
        total = RatFn(0)
        for w, s in serre:
            total = total + inner_product(w, y, A2) * s
        assert not total


def test_gram_matrix_small(a2):
    g = gram_matrix((0, 1, 0), a2)
    assert len(g) == 1 and g[0, 0] == prod_inv(2)
    g = gram_matrix((0, 1, 1), a2)
    assert g.entries == ((prod_inv(2, 2), RatFn(Q, (ONE - Q * Q) ** 2)),
                         (RatFn(Q, (ONE - Q * Q) ** 2), prod_inv(2, 2)))


def test_gram_delta_symmetric_and_engines(a2):
    g = gram_matrix((1, 1, 1), a2)
    assert len(g) == 6
    for i, j in itertools.product(range(6), repeat=2):
        assert g[i, j] == g[j, i]
    assert g.entries == gram_matrix((1, 1, 1), a2, engine="oracle").entries
    assert g.entries == gram_matrix((1, 1, 1), a2, engine="brute").entries


def test_gram_parallel_matches_serial(a2):
    a = gram_matrix((2, 1, 2), a2, jobs=1)
    b = gram_matrix((2, 1, 2), a2, jobs=2)
    assert a.entries == b.entries and a.indices == b.indices


def test_unknown_engine(a2):
    with pytest.raises(ValueError):
        gram_matrix((1, 0, 0), a2, engine="magic")
