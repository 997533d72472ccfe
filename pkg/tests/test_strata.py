import pytest
from hypothesis import given, strategies as st

from affcanon.affine_root import build_h, cartan_datum, total_order_I
from affcanon.pbw_index import PBWIndex, enumerate_indices, kostka, partitions, weight
from affcanon.strata import (
    IndecClass,
    Quiver,
    character,
    classify_by_coxeter,
    classify_indecomposable,
    fibre_dim,
    flag_dim,
    flip,
    indices_of_stratum,
    induced_multiplicity,
    orientation_from_order,
    stratum_data_of_index,
    tilde_flag_dim,
)

from conftest import weights_up_to
from test_affine_root import ALL_TYPES


def test_a2_orientation(a2):
    Q = orientation_from_order(total_order_I(a2), a2.datum)
    assert Q.arrows == frozenset({(0, 1), (2, 1), (0, 2)})
    assert Q.is_sink(1) and Q.is_source(0)
    cur = Q
    for i in total_order_I(a2):
        cur = flip(cur, i)
    assert cur == Q


@pytest.mark.parametrize("typ,n", ALL_TYPES)
def test_sink_sequence_all_types(typ, n):
    d = cartan_datum(typ, n)
    o = total_order_I(build_h(d))
    Q = orientation_from_order(o, d)
    assert Q.is_acyclic() and Q.is_sink(o[0])
    assert len(Q.arrows) == len(d.edges)


def test_bad_order_rejected(a2):
    with pytest.raises(ValueError):
        orientation_from_order((1, 1, 0), a2.datum)
    # the sink-sequence property holds for any ordering of the vertices
    Q = orientation_from_order((0, 1, 2), a2.datum)
    assert Q.is_sink(0)


def test_flag_dims(a2):
    Q = orientation_from_order(total_order_I(a2), a2.datum)
    assert flag_dim(((1,), (3,))) == fibre_dim(((1,), (3,)), Q) == 0
    assert flag_dim(((2, 2), (2, 3))) == 6
    # joined pair: arrow 0 -> 1 means the letter order (0, 1) gives d_0 d_1
    assert tilde_flag_dim(((0, 1), (2, 3)), Q) == 6
    assert tilde_flag_dim(((1, 0), (2, 3)), Q) == 0
    with pytest.raises(ValueError):
        flag_dim(((1, 2), (1,)))


@given(st.lists(st.tuples(st.integers(0, 2), st.integers(1, 3)), max_size=6))
def test_tilde_is_sum(letters):
    Q = Quiver((0, 1, 2), frozenset({(0, 1), (2, 1), (0, 2)}))
    om = ([i for i, _ in letters], [c for _, c in letters])
    assert tilde_flag_dim(om, Q) == flag_dim(om) + fibre_dim(om, Q)


def test_defect_classification_matches_coxeter_orbits():
    for typ, n in [("A", 2), ("A", 3), ("D", 4)]:
        seq = build_h(cartan_datum(typ, n))
        for k in range(-3 * seq.N, 3 * seq.N + 1):
            b = seq.beta(k)
            assert classify_indecomposable(seq, b) == classify_by_coxeter(seq, b)


def test_a2_class_counts(a2):
    counts = {}
    for k in range(-8, 9):
        c = classify_indecomposable(a2, a2.beta(k))
        counts[c] = counts.get(c, 0) + 1
    assert counts == {IndecClass.PREPROJECTIVE: 7, IndecClass.PREINJECTIVE: 6, IndecClass.REGULAR: 4}


def test_imaginary_rejected(a2):
    with pytest.raises(ValueError):
        classify_indecomposable(a2, (1, 1, 1))


def test_stratum_examples(a2):
    c = PBWIndex.build({-1: 1}, None, {1: 1})
    sd = stratum_data_of_index(c, a2)
    assert (sd.l, sd.l_prime, sd.lam) == (0, 0, ())
    sd = stratum_data_of_index(PBWIndex.build(zero={1: (2,)}), a2)
    assert (sd.Y(), sd.l, sd.l_prime, sd.lam) == ((), 2, 0, (2,))
    sd = stratum_data_of_index(PBWIndex.build(zero={1: (1,), 2: (2,)}), a2)
    assert (sd.l, sd.l_prime, sd.lam) == (1, 2, (1,))


@pytest.mark.parametrize("nu", weights_up_to(3, 6))
def test_stratum_dimension_and_fibres(a2, nu):
    for c in enumerate_indices(nu, a2):
        sd = stratum_data_of_index(c, a2)
        assert sd.dim(a2.datum) == weight(c, a2) == nu
        fib = indices_of_stratum(sd, a2)
        assert c in fib
        assert all(stratum_data_of_index(d, a2) == sd for d in fib)


def test_character_table_s3():
    assert [character((3,), r) for r in [(1, 1, 1), (2, 1), (3,)]] == [1, 1, 1]
    assert [character((2, 1), r) for r in [(1, 1, 1), (2, 1), (3,)]] == [2, 0, -1]
    assert [character((1, 1, 1), r) for r in [(1, 1, 1), (2, 1), (3,)]] == [1, -1, 1]


def test_induced_multiplicity_examples():
    assert induced_multiplicity((1, 1, 1, 1), (2, 2)) == 2
    assert induced_multiplicity((3, 1), (3, 1)) == 1
    assert induced_multiplicity((2, 2), (1, 1, 1, 1)) == 0


@pytest.mark.parametrize("m", range(1, 7))
def test_induced_multiplicity_is_kostka(m):
    for mu in partitions(m):
        for lam in partitions(m):
            assert induced_multiplicity(mu, lam) == kostka(lam, mu)
