import itertools
import random
from math import factorial

import pytest

from twistcoh.arith import BivariatePoly, parse_bivariate, q_factorial, qt_double_factorial, specialize
from twistcoh.coxeter import (
    INF,
    CoxeterGraph,
    EnumerationBoundError,
    GraphParseError,
    affine_a_graph,
    affine_b_graph,
    affine_c_graph,
    dihedral_graph,
    enumerate_weighted_poincare,
    euler_characteristic_kfin,
    exceptional_graph,
    is_finite_type,
    minimal_coset_reps,
    parabolic_poincare_qt,
    parse_graph,
    path_graph,
    random_geodesic_special_count,
    random_two_dimensional_graph,
    root_orbit_is_finite,
    type_b_bfs,
    type_b_graph,
    type_d_graph,
    word_to_element,
)


def test_parse_graph_examples():
    b2 = parse_graph("rank 2\n1 2 4")
    assert b2.rank == 2 and b2.label(1, 2) == 4 and b2.label(2, 1) == 4
    tri = parse_graph("rank 3\n1 2 3\n2 3 3\n1 3 3")
    assert all(tri.label(i, j) == 3 for i, j in [(1, 2), (2, 3), (1, 3)])
    inf = parse_graph("rank 2\n1 2 inf  # infinite dihedral")
    assert inf.label(1, 2) == INF
    assert parse_graph("rank 3\n").label(1, 3) == 2


@pytest.mark.parametrize("text", ["", "rank -1", "rank 2\n1 1 3", "rank 2\n1 2 1", "rank 2\n1 3 3", "rank x"])
def test_parse_graph_rejects(text):
    with pytest.raises(GraphParseError):
        parse_graph(text)


def test_parse_round_trip():
    rng = random.Random(4)
    for _ in range(20):
        g = random_two_dimensional_graph(rng.randint(3, 6), rng)
        assert parse_graph(g.to_text()) == g


def test_finite_type_examples():
    assert is_finite_type(type_b_graph(3))
    assert not is_finite_type(parse_graph("rank 3\n1 2 3\n2 3 3\n1 3 3"))
    assert not is_finite_type(dihedral_graph(INF))
    for name in ["E6", "E7", "E8", "F4", "H3", "H4"]:
        assert is_finite_type(exceptional_graph(name))
    assert is_finite_type(type_d_graph(6))
    assert not is_finite_type(affine_b_graph(4))


def _rank4_finite():
    # every finite rank-4 diagram up to relabelling, connected or not
    out = [path_graph(4), type_b_graph(4), type_d_graph(4), exceptional_graph("F4"), exceptional_graph("H4")]
    out.append(CoxeterGraph(4, {frozenset((1, 2)): 5, frozenset((3, 4)): 6}))
    out.append(CoxeterGraph(4, {frozenset((1, 2)): 3, frozenset((2, 3)): 5}))
    out.append(CoxeterGraph(4, {}))
    return out


def test_finite_type_matches_root_enumeration():
    # the reflection-representation root orbit is an independent finiteness test
    for rank in (1, 2, 3):
        pairs = list(itertools.combinations(range(1, rank + 1), 2))
        for labs in itertools.product([2, 3, 4, 5, 6], repeat=len(pairs)):
            g = CoxeterGraph(rank, {frozenset(p): lab for p, lab in zip(pairs, labs) if lab != 2})
            assert is_finite_type(g) == root_orbit_is_finite(g, cap=250), g.to_text()
    pairs = list(itertools.combinations(range(1, 5), 2))
    rng = random.Random(11)
    graphs = _rank4_finite()
    for _ in range(150):
        labs = [rng.choice([2, 2, 3, 4, 5, 6]) for _ in pairs]
        graphs.append(CoxeterGraph(4, {frozenset(p): lab for p, lab in zip(pairs, labs) if lab != 2}))
    for g in graphs:
        assert is_finite_type(g) == root_orbit_is_finite(g, cap=250), g.to_text()


def test_parabolic_poincare_examples():
    assert parabolic_poincare_qt(2, {2}, "B") == parse_bivariate("1 + t")
    assert parabolic_poincare_qt(2, {1, 2}, "B") == qt_double_factorial(2)
    assert parabolic_poincare_qt(5, set(), "B") == BivariatePoly.constant(1)
    assert parabolic_poincare_qt(3, {1, 2}, "A") == BivariatePoly.from_univariate(q_factorial(3), "q")


def test_weighted_poincare_small():
    assert enumerate_weighted_poincare(1) == parse_bivariate("1 + t")
    assert enumerate_weighted_poincare(2) == parse_bivariate("1 + q + t + 2*q*t + q^2*t + q*t^2 + q^2*t^2")


@pytest.mark.parametrize("n", range(1, 7))
def test_weighted_poincare_equals_double_factorial(n):
    w = enumerate_weighted_poincare(n)
    assert w == qt_double_factorial(n)
    assert specialize(w, q=1, t=1) == 2 ** n * factorial(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_coset_factorization(n):
    reps, gen = minimal_coset_reps(n)
    assert len(reps) == 2 ** n
    assert gen * BivariatePoly.from_univariate(q_factorial(n), "q") == enumerate_weighted_poincare(n)
    records = type_b_bfs(n)
    for word, length, special in reps:
        rec = records[word_to_element(word, n)]
        # the closed-form length is the true length, so the words are reduced
        assert (rec.length, rec.special_count) == (length, special)


def test_coset_reps_n2():
    reps, gen = minimal_coset_reps(2)
    assert sorted(w for w, _, _ in reps) == sorted([(), (2,), (1, 2), (2, 1, 2)])
    assert gen == parse_bivariate("1+t") * parse_bivariate("1+q*t")


def test_special_count_is_geodesic_independent():
    rng = random.Random(0)
    for n in range(1, 5):
        records = type_b_bfs(n)
        for w, rec in records.items():
            assert 0 <= rec.special_count <= rec.length
            for _ in range(10):
                assert random_geodesic_special_count(records, w, rng) == rec.special_count


def test_enumeration_bound():
    with pytest.raises(EnumerationBoundError):
        type_b_bfs(9)


def test_euler_examples():
    assert euler_characteristic_kfin(parse_graph("rank 3\n1 2 3\n2 3 3\n1 3 3")) == 1
    assert euler_characteristic_kfin(parse_graph("rank 3\n1 2 3\n2 3 inf\n1 3 inf")) == -1


@pytest.mark.parametrize("n", range(1, 9))
def test_euler_affine(n):
    graphs = [affine_a_graph(n), affine_c_graph(n)]
    if n >= 2:
        graphs.append(affine_b_graph(n))
    for g in graphs:
        assert g.rank == n + 1
        assert euler_characteristic_kfin(g) == (-1) ** n


def test_euler_finite_type_is_zero():
    graphs = [path_graph(k) for k in range(1, 9)] + [type_b_graph(k) for k in range(2, 9)]
    graphs += [type_d_graph(k) for k in range(4, 9)]
    graphs += [exceptional_graph(x) for x in ["E6", "E7", "E8", "F4", "H3", "H4"]]
    graphs += [dihedral_graph(m) for m in range(2, 12)]
    for g in graphs:
        assert euler_characteristic_kfin(g) == 0


def test_euler_two_dimensional_random():
    rng = random.Random(2024)
    for _ in range(10):
        rank = rng.randint(3, 7)
        g = random_two_dimensional_graph(rank, rng)
        finite_pairs = sum(1 for i, j in itertools.combinations(g.vertices, 2) if g.label(i, j) != INF)
        assert euler_characteristic_kfin(g) == 1 - rank + finite_pairs
