"""
작은 격자 검사 도구 검증
짧은 벡터, 동형 사상 탐색, 원시 벡터 탐색, 판별식 값 표를 확인합니다.
"""
import random

import pytest

from lattices import classifier, errors, oracle
from lattices.lattice_core import (
    change_basis,
    is_characteristic,
    is_primitive,
    make_lattice,
    norm,
    orthogonal_complement,
    parse_decomposition,
    standard,
)
from lattices.normal_forms import determinant


def _std(text):
    return standard(parse_decomposition(text))


def test_short_vectors_of_e8_roots():
    roots = oracle.short_vectors(_std("E8"), 2)
    assert len(roots) == 120
    assert all(value == 2 for _, value in roots)
    for vector, _ in roots:
        assert next(c for c in vector if c) > 0


def test_short_vectors_sorted_and_negative_definite():
    found = oracle.short_vectors(_std("A2(-1)"), 6)
    norms = [abs(value) for _, value in found]
    assert norms == sorted(norms)
    assert all(value < 0 for _, value in found)
    assert sum(1 for value in norms if value == 2) == 3


def test_short_vectors_errors():
    with pytest.raises(errors.IndefiniteInput):
        oracle.short_vectors(_std("U"), 2)
    with pytest.raises(errors.RankTooLarge):
        oracle.short_vectors(_std("<1>^11"), 1)


def test_isometry_small_a2_bases():
    a2 = _std("A2")
    other = make_lattice([[2, 1], [1, 2]])
    witness = oracle.isometry_small(a2, other)
    assert witness is not None
    assert witness.verify(a2, other)


def test_isometry_small_e8_random_basis():
    rng = random.Random(3)
    e8 = _std("E8")
    moved = change_basis(e8, oracle.random_unimodular(8, rng))
    witness = oracle.isometry_small(moved, e8)
    assert witness is not None
    assert witness.verify(moved, e8)


def test_isometry_small_different_genus():
    assert oracle.isometry_small(_std("A2"), _std("<1> + <3>")) is None
    assert oracle.isometry_small(_std("A2"), _std("A1^2")) is None


def test_isometry_small_indefinite():
    u = _std("U")
    other = make_lattice([[0, 1], [1, 2]])
    witness = oracle.isometry_small(u, other)
    assert witness is not None
    assert witness.verify(u, other)


def test_isometry_small_rank_limits():
    first = _std("<1>^10")
    basis = [[1 if i == j else 0 for j in range(10)] for i in range(10)]
    basis[0][1] = 1
    with pytest.raises(errors.RankTooLarge):
        oracle.isometry_small(first, change_basis(first, basis))


def test_enriques_complement_isometry():
    ambient = _std("U + E8(-1)")
    complement, _ = orthogonal_complement(ambient, (1, 1, 0, 0, 0, 0, 0, 0, 0, 0))
    expected = _std("<-2> + E8(-1)")
    assert classifier.genus_equal(classifier.genus_of(complement), classifier.genus_of(expected))
    witness = oracle.isometry_small(complement, expected)
    assert witness is not None
    assert witness.verify(complement, expected)


def test_find_primitive_vector_characteristic_diagonal():
    ambient = _std("<1>^3 + <-1>^18")
    vector = oracle.find_primitive_vector(ambient, 1, True)
    assert norm(ambient, vector) == 1
    assert is_characteristic(ambient, vector)
    assert is_primitive(ambient, vector)


def test_find_primitive_vector_non_characteristic_diagonal():
    ambient = _std("<1>^2 + <-1>^3")
    vector = oracle.find_primitive_vector(ambient, 2, False)
    assert norm(ambient, vector) == 2
    assert not is_characteristic(ambient, vector)


def test_find_primitive_vector_diagonal_order():
    # 양의 블록 제곱합이 가장 작은 후보, 좌표는 내림차순 중복집합
    assert oracle.find_primitive_vector(_std("<1>^2 + <-1>^3"), 2, False) == (0, 0, 0, 1, 1)
    assert oracle.find_primitive_vector(_std("<1>^3 + <-1>^18"), 1, True) == (1,) * 18 + (3, 3, 1)


def test_find_primitive_vector_hyperbolic_and_definite():
    assert oracle.find_primitive_vector(_std("U^3 + E8(-1)^2"), 2, False)[:2] == (1, 1)
    vector = oracle.find_primitive_vector(_std("E8"), 4, False)
    assert norm(_std("E8"), vector) == 4


def test_find_primitive_vector_failures():
    with pytest.raises(errors.NotFoundWithinBound):
        oracle.find_primitive_vector(_std("U"), 3, False, bound_start=1, bound_max=3)
    with pytest.raises(errors.NotFoundWithinBound):
        oracle.find_primitive_vector(_std("U^2"), 2, True)


def test_disc_form_table():
    table = oracle.disc_form_table(_std("D4"))
    assert len(table) == 4
    assert sorted(table.values()) == [0, 1, 1, 1]
    with pytest.raises(errors.OddLattice):
        oracle.disc_form_table(_std("<1> + <3>"))
    with pytest.raises(errors.GroupTooLarge):
        oracle.disc_form_table(_std("A4"), limit=4)


def test_random_unimodular():
    rng = random.Random(5)
    for rank in range(1, 7):
        assert abs(determinant(oracle.random_unimodular(rank, rng))) == 1
