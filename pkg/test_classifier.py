"""
종 분류 검증
유니모듈러 분류, 여공간의 종, 대표 격자, 카탈로그, 판별식 형식의 쌍대성을 확인합니다.
"""
import random

import pytest
from sympy import Rational

from lattices import classifier, discforms, errors
from lattices.lattice_core import (
    Parity,
    change_basis,
    is_characteristic,
    is_primitive,
    norm,
    orthogonal_complement,
    orthogonal_complement_sublattice,
    parity,
    parse_decomposition,
    signature,
    standard,
)
from lattices.normal_forms import smith_normal_form, transpose


def _std(text):
    return standard(parse_decomposition(text))


def _genus(text):
    return classifier.genus_of(_std(text))


def test_classify_unimodular_indefinite():
    assert str(classifier.classify_unimodular_indefinite((3, 19), Parity.EVEN)) == "U^3 + E8(-1)^2"
    assert str(classifier.classify_unimodular_indefinite((1, 9), "even")) == "U + E8(-1)"
    assert str(classifier.classify_unimodular_indefinite((9, 1), "even")) == "U + E8"
    assert str(classifier.classify_unimodular_indefinite((3, 2), Parity.ODD)) == "<-1>^2 + <1>^3"
    with pytest.raises(errors.DefiniteInput):
        classifier.classify_unimodular_indefinite((0, 8), Parity.EVEN)
    with pytest.raises(errors.EvenSignatureNotDivisibleBy8):
        classifier.classify_unimodular_indefinite((3, 2), Parity.EVEN)
    with pytest.raises(errors.ValidationError):
        classifier.classify_unimodular_indefinite((3, 2), "neither")


def test_genus_equal_separates_forms():
    assert classifier.genus_equal(_genus("<-2> + E8(-1)"), _genus("<-2> + E8(-1)"))
    assert not classifier.genus_equal(_genus("U(2)"), _genus("<2> + <-2>"))
    assert not classifier.genus_equal(_genus("<2> + U"), _genus("<-2> + U"))
    # E7(-1) 과 <2> 는 같은 판별식 이차 형식을 가짐
    assert classifier.genus_equal(_genus("E7(-1) + U^6 + E8(-1)^3"), _genus("<2> + U^5 + E8(-1)^4"))


def test_genus_to_json_renders_forms():
    record = _genus("<-2> + E8(-1)").to_json()
    assert record["signature"] == [0, 9]
    assert record["parity"] == "even"
    assert record["disc_group"] == [2]
    assert record["bilinear"] == "⟨1/2⟩"
    assert record["quadratic"] == "⟨3/2⟩"
    assert _genus("<-2> + E8(-1)").to_json(mod_z=True)["quadratic"] == "⟨1/2⟩"
    assert _genus("<3> + <-1>^2").to_json()["quadratic"] is None


def test_complement_genus_k3_degree_two():
    genus = classifier.complement_genus((3, 19), Parity.EVEN, 2, False)
    assert genus.signature == (2, 19)
    assert genus.parity == Parity.EVEN
    assert classifier.genus_equal(genus, _genus("<-2> + U^2 + E8(-1)^2"))


def test_complement_genus_horikawa_characteristic():
    genus = classifier.complement_genus((7, 37), Parity.ODD, 2, True)
    assert genus.signature == (6, 37)
    assert genus.rank == 43
    assert classifier.genus_equal(genus, _genus("<2> + U^5 + E8(-1)^4"))


def test_complement_genus_unimodular_complement():
    genus = classifier.complement_genus((3, 18), Parity.ODD, 1, True)
    assert genus.disc_order == 1
    assert classifier.genus_equal(genus, _genus("U^2 + E8(-1)^2"))


def test_complement_genus_odd_complement():
    genus = classifier.complement_genus((3, 2), Parity.ODD, 2, False)
    assert genus.parity == Parity.ODD
    assert genus.quadratic is None
    assert genus.bilinear.values == ((Rational(1, 2),),)


def test_complement_genus_errors():
    with pytest.raises(errors.IsotropicVector):
        classifier.complement_genus((3, 19), Parity.EVEN, 0, False)
    with pytest.raises(errors.SignMismatch):
        classifier.complement_genus((0, 5), Parity.ODD, 1, False)
    with pytest.raises(errors.CharacteristicInEven):
        classifier.complement_genus((3, 19), Parity.EVEN, 2, True)
    with pytest.raises(errors.UnrealizableNorm):
        classifier.complement_genus((3, 19), Parity.EVEN, 3, False)
    with pytest.raises(errors.UnrealizableNorm):
        classifier.complement_genus((3, 18), Parity.ODD, 2, True)


@pytest.mark.parametrize("hsq", [8, 16])
def test_complement_genus_isomorphic_refinements(hsq):
    # 밀그램 부호수가 같은 두 이차 세분은 동형 (hsq = 8 이면 u = 3) 이므로 하나로 셉니다
    genus = classifier.complement_genus((3, 19), Parity.EVEN, hsq, False)
    assert classifier.genus_equal(genus, _genus(f"<-{hsq}> + U^2 + E8(-1)^2"))
    named, gram = classifier.standard_representative(genus)
    assert str(named) == f"<-{hsq}> + U^2 + E8(-1)^2"
    assert classifier.genus_equal(classifier.genus_of(gram), genus)


def test_standard_representative_norm_eight():
    genus = _genus("<-8> + U + E8(-1)")
    named, gram = classifier.standard_representative(genus)
    assert str(named) == "<-8> + U + E8(-1)"
    assert signature(gram) == (1, 10)


@pytest.mark.parametrize("signature_, hsq", [((1, 1), 2), ((1, 1), -4), ((2, 0), 2), ((0, 2), -8)])
def test_complement_genus_rank_two_odd_rejects_even_norm(signature_, hsq):
    with pytest.raises(errors.UnrealizableNorm):
        classifier.complement_genus(signature_, Parity.ODD, hsq, False)


def test_complement_genus_rank_two_odd_allows_odd_norm():
    genus = classifier.complement_genus((1, 1), Parity.ODD, 3, False)
    assert genus.signature == (0, 1)
    assert classifier.genus_equal(genus, _genus("<-3>"))


def test_characteristic_complement_in_odd_rank_three_is_u():
    ambient = _std("<1>^2 + <-1>")
    vector = (1, 1, 1)
    assert norm(ambient, vector) == 1
    assert is_characteristic(ambient, vector)
    complement, _ = orthogonal_complement(ambient, vector)
    assert parity(complement) == Parity.EVEN
    assert classifier.genus_equal(classifier.genus_of(complement), _genus("U"))
    assert classifier.genus_equal(classifier.complement_genus((2, 1), Parity.ODD, 1, True), _genus("U"))


_CROSS_AMBIENTS = (
    "<1> + <-1>",
    "<1>^2",
    "<1>^2 + <-1>",
    "<1>^3 + <-1>^2",
    "<1>^2 + <-1>^6",
    "<1>^3 + <-1>^8",
    "<1>^5",
    "U^2",
    "U^3",
    "U + E8(-1)",
    "U^2 + E8(-1)",
)


def test_complement_genus_agrees_with_explicit_complement():
    """작은 원시 벡터의 직교 여공간을 직접 계산한 종과 complement_genus 의 결과가 같아야 합니다."""
    rng = random.Random(20240)
    ambients = [_std(text) for text in _CROSS_AMBIENTS]
    checked = 0
    attempts = 0
    while checked < 150 and attempts < 50_000:
        attempts += 1
        ambient = rng.choice(ambients)
        vector = [rng.choice((0, 0, 0, 0, 1, -1, 2, -2)) for _ in range(ambient.rank)]
        value = norm(ambient, vector)
        if value == 0 or abs(value) > 8 or not is_primitive(ambient, vector):
            continue
        characteristic = is_characteristic(ambient, vector)
        expected = classifier.complement_genus(signature(ambient), parity(ambient), value, characteristic)
        complement, _ = orthogonal_complement(ambient, vector)
        assert classifier.genus_equal(classifier.genus_of(complement), expected), (ambient.gram, vector)
        checked += 1
    assert checked == 150


def test_class_number_one_criteria():
    assert classifier.class_number_one(_genus("U^2 + E8(-1)^2")).to_json() is True
    assert classifier.class_number_one(_genus("E8(-1)")).to_json() == "undecided"
    assert classifier.class_number_one(_genus("<2> + <1> + <-1>")).to_json() == "undecided"
    assert classifier.class_number_one(_genus("<2> + <1>^2 + <-1>^2")).to_json() is True


def test_named_search():
    assert str(classifier.named_search(_genus("<-2> + E8(-1)"))) == "<-2> + E8(-1)"
    assert str(classifier.named_search(_genus("A4(-1)"))) == "A4(-1)"
    # 홀 종은 쌍선형 형식으로 비교하므로 <-3> 은 <3> 을 대신할 수 없음
    assert str(classifier.named_search(_genus("<3> + <-1>^2"))) == "<-1>^2 + <3>"


def test_standard_representative_builds_matching_gram():
    genus = classifier.complement_genus((3, 19), Parity.EVEN, 2, False)
    named, gram = classifier.standard_representative(genus)
    assert str(named) == "<-2> + U^2 + E8(-1)^2"
    assert classifier.genus_equal(classifier.genus_of(gram), genus)


def test_standard_representative_definite_genus():
    genus = _genus("<-2> + E8(-1)")
    named, gram = classifier.standard_representative(genus)
    assert str(named) == "<-2> + E8(-1)"
    assert signature(gram) == (0, 9)


def test_standard_representative_rejects_non_cyclic():
    with pytest.raises(errors.NonCyclicDiscGroup):
        classifier.standard_representative(_genus("<2>^2 + U"))


def test_definite_catalog_rows():
    entries = classifier.catalog_entries()
    assert [e.c1sq for e in entries] == list(range(1, 9))
    for entry in entries:
        lattice = entry.lattice
        assert lattice.rank == 9 - entry.c1sq
        assert abs(lattice.determinant) == entry.c1sq
        assert signature(lattice) == (0, lattice.rank)
        computed = discforms.disc_bilinear(lattice)
        assert discforms.forms_isomorphic(computed, entry.required_bilinear())
        assert discforms.forms_isomorphic(computed, entry.printed_bilinear()) == (not entry.printed_misprint)
    assert [e.c1sq for e in entries if e.printed_misprint] == [3, 7]
    assert classifier.definite_catalog(7).label == "[[-4, 1], [1, -2]]"
    assert classifier.definite_catalog(6).label == "<-2> + A2(-1)"


def test_definite_catalog_range():
    with pytest.raises(errors.OutOfRange):
        classifier.definite_catalog(0)
    with pytest.raises(errors.OutOfRange):
        classifier.definite_catalog(9)


def test_catalog_matches_canonical_complement_genus():
    """카탈로그 격자는 ⟨1⟩ + ⟨-1⟩^9 안에서 노름 k 인 특성 벡터의 여공간과 같은 종입니다."""
    for entry in classifier.catalog_entries():
        k = entry.c1sq
        genus = classifier.complement_genus((1, 9 - k), Parity.ODD, k, True)
        assert classifier.genus_equal(classifier.genus_of(entry.lattice), genus), k


_AMBIENTS = ("<1>^2 + <-1>^2", "<1>^3 + <-1>^3", "U^2", "U + <1> + <-1>", "<1>^4 + <-1>", "U^3", "<1> + <-1>^3")


def _random_primitive_sublattice(rng, ambient):
    n = ambient.rank
    k = rng.choice((1, 2))
    vectors = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(k)]
    diagonal, _, _ = smith_normal_form(vectors)
    if diagonal != [1] * k:
        return None
    columns = transpose(vectors)
    try:
        sub = change_basis(ambient, columns)
    except errors.Degenerate:
        return None
    return vectors, sub


def test_discriminant_forms_negate_on_complement():
    """유니모듈러 격자의 원시 부분격자 S 와 S⊥ 은 |det| 가 같고 판별식 형식이 부호만 다릅니다."""
    rng = random.Random(90210)
    checked = 0
    attempts = 0
    while checked < 200 and attempts < 20_000:
        attempts += 1
        ambient = _std(rng.choice(_AMBIENTS))
        sample = _random_primitive_sublattice(rng, ambient)
        if sample is None:
            continue
        vectors, sub = sample
        complement, _ = orthogonal_complement_sublattice(ambient, vectors)
        assert abs(sub.determinant) == abs(complement.determinant)
        assert discforms.forms_isomorphic(
            discforms.disc_bilinear(complement), discforms.negate(discforms.disc_bilinear(sub))
        ), (vectors, ambient.gram)
        checked += 1
    assert checked == 200
