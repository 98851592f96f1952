import pytest

from twistcoh.arith import QQ, BivariatePoly, LaurentPoly, parse_bivariate
from twistcoh.shapiro import (
    affine_cohomology_table,
    check_braid_relations,
    check_conjugation_equivalence,
    check_pure_braid_abelian,
    induced_representation,
    mat_mul,
    monomial_det,
    monomial_inverse,
    pure_braid_images,
    substitute_u,
    tym_cohomology_table,
    tym_representation,
)

b = parse_bivariate


def u_poly(coeff, k):
    return LaurentPoly.monomial(QQ, coeff, k, "u")


def test_tym_small():
    zero, one = u_poly(0, 0), u_poly(1, 0)
    assert tym_representation(1) == [[[zero, one], [u_poly(1, 1), zero]]]
    s2 = tym_representation(2)[1]
    assert s2 == [[one, zero, zero], [zero, zero, one], [zero, u_poly(1, 1), zero]]


def test_tym_determinants_are_units():
    for n in range(1, 6):
        for mat in tym_representation(n):
            assert monomial_det(mat) == u_poly(-1, 1)


def test_induced_small():
    z = BivariatePoly()
    s1, s2 = induced_representation(2)
    assert s1 == [[z, b("-q"), z], [b("q^-1*t"), z, z], [z, z, b("-q")]]
    assert s2 == [[b("-q"), z, z], [z, z, b("1")], [z, b("-t"), z]]


@pytest.mark.parametrize("n", range(1, 7))
def test_braid_relations(n):
    assert check_braid_relations(tym_representation(n))
    assert check_braid_relations(induced_representation(n))


def test_braid_relations_negative_control():
    mats = induced_representation(3)
    mats[1][0][0], mats[1][0][1] = mats[1][0][1], mats[1][0][0]
    assert not check_braid_relations(mats)


@pytest.mark.parametrize("n", range(1, 7))
def test_conjugation_identity(n):
    assert check_conjugation_equivalence(n)


def test_conjugation_wrong_substitution():
    for n in (2, 3, 4):
        assert not check_conjugation_equivalence(n, b("q^-2*t"))


def test_monomial_inverse():
    for mat in induced_representation(3) + tym_representation(3):
        inv = monomial_inverse(mat)
        prod = mat_mul(mat, inv)
        assert all((x == x ** 0) if r == c else not x for r, row in enumerate(prod) for c, x in enumerate(row))


def test_substitute_u():
    p = LaurentPoly(QQ, [1, 0, 2], -1, "u")
    assert substitute_u(p, b("-q^-2*t")) == b("-q^2*t^-1 - 2*q^-2*t")
    with pytest.raises(ValueError):
        substitute_u(p, b("1+q"))


@pytest.mark.parametrize("n", range(1, 5))
def test_pure_braids_commute(n):
    mats = tym_representation(n)
    images = pure_braid_images(mats)
    assert len(images) == (n + 1) * n // 2
    assert check_pure_braid_abelian(mats)


def test_pure_braid_images_are_diagonal():
    # A_ij acts by u on coordinates i and j
    for (i, j), mat in pure_braid_images(tym_representation(3)).items():
        for r, row in enumerate(mat):
            for c, x in enumerate(row):
                expected = u_poly(1, 1) if r == c and r + 1 in (i, j) else (u_poly(1, 0) if r == c else u_poly(0, 0))
                assert x == expected


def test_affine_tables():
    t = affine_cohomology_table(3, "Q").to_json()
    assert t["group"] == "A~_2" and t["provenance"] == "mapping-derived"
    assert t["degrees"] == {"0": ["1 + t"], "1": ["1 + t"], "2": ["1 + t"]}
    t = affine_cohomology_table(2, "Q[q]").to_json()
    assert t["degrees"] == {"1": ["{1}_1", "{2}_0"]}
    for n in range(2, 8):
        degs = affine_cohomology_table(n, "Q[q]").modules
        assert set(degs) <= set(range(n))
    with pytest.raises(ValueError):
        affine_cohomology_table(1)


def test_tym_tables():
    assert tym_cohomology_table(2).q_dimensions() == {1: 1, 2: 2}
    assert tym_cohomology_table(3).q_dimensions() == {1: 1, 2: 1, 3: 1}
    assert tym_cohomology_table(1).q_dimensions() == {1: 1}
    assert tym_cohomology_table(4).group == "Br_5"
