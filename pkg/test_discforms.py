"""
판별식 형식 검증
판별식 군, 쌍선형/이차 형식, 동형 판정, 밀그램 부호수를 확인합니다.
"""
import random

import pytest
from sympy import Rational

from lattices import discforms, errors, oracle
from lattices.lattice_core import (
    Block,
    change_basis,
    decomposition,
    index,
    parse_decomposition,
    standard,
)


def _std(text):
    return standard(parse_decomposition(text))


def test_invariant_factors():
    assert discforms.invariant_factors(_std("E8")) == []
    assert discforms.invariant_factors(_std("A2(-1) + <-2>")) == [6]
    assert discforms.invariant_factors(_std("<2>^2 + U")) == [2, 2]
    assert discforms.invariant_factors(_std("D4")) == [2, 2]


def test_disc_forms_of_root_lattices():
    e7 = discforms.disc_quadratic(_std("E7"))
    assert e7.group.invariant_factors == (2,)
    assert e7.qvalues == (Rational(3, 2),)
    assert discforms.disc_quadratic(_std("E7(-1)")).qvalues == (Rational(1, 2),)
    assert discforms.disc_quadratic(_std("A2")).qvalues == (Rational(2, 3),)
    assert discforms.disc_bilinear(_std("E7(-1)")).values == ((Rational(1, 2),),)


def test_disc_quadratic_rejects_odd_lattice():
    with pytest.raises(errors.OddLattice):
        discforms.disc_quadratic(_std("<1> + <3>"))


def test_disc_quadratic_agrees_with_direct_table():
    """스미스 정규형 생성원으로 계산한 값과 쌍대 기저를 닫아 얻은 값 표가 같아야 합니다."""
    for text in ("A2", "D4", "A4(-1)", "<2> + <-6>", "A1^3", "U(2) + E7"):
        lattice = _std(text)
        form = discforms.disc_quadratic(lattice)
        values = sorted(form.value(x) for x in form.group.elements())
        table = oracle.disc_form_table(lattice)
        assert values == sorted(table.values()), text


def test_forms_isomorphic_cyclic():
    assert discforms.forms_isomorphic(discforms.cyclic_bilinear(Rational(1, 5)), discforms.cyclic_bilinear(Rational(4, 5)))
    assert not discforms.forms_isomorphic(
        discforms.cyclic_bilinear(Rational(1, 5)), discforms.cyclic_bilinear(Rational(2, 5))
    )
    assert discforms.forms_isomorphic(discforms.cyclic_bilinear(1), discforms.cyclic_bilinear(3))


def test_forms_isomorphic_distinguishes_u2_from_diagonal():
    u2 = discforms.disc_bilinear(_std("U(2)"))
    diagonal = discforms.disc_bilinear(_std("<2> + <-2>"))
    assert u2.group.invariant_factors == diagonal.group.invariant_factors == (2, 2)
    assert not discforms.forms_isomorphic(u2, diagonal)


def test_forms_isomorphic_is_basis_independent():
    rng = random.Random(11)
    for text in ("D4", "A2 + A2", "<2> + <-6> + U"):
        lattice = _std(text)
        moved = change_basis(lattice, oracle.random_unimodular(lattice.rank, rng))
        assert discforms.forms_isomorphic(discforms.disc_quadratic(lattice), discforms.disc_quadratic(moved))


def test_forms_isomorphic_errors():
    small = discforms.cyclic_bilinear(Rational(1, 11))
    with pytest.raises(errors.GroupTooLarge):
        discforms.forms_isomorphic(small, small, limit=5)
    with pytest.raises(errors.ValidationError):
        discforms.forms_isomorphic(small, discforms.quadratic_form((11,), (Rational(2, 11),)))


def test_negate():
    form = discforms.cyclic_bilinear(Rational(1, 3))
    assert discforms.negate(form).values == ((Rational(2, 3),),)
    q = discforms.quadratic_form((2,), (Rational(1, 2),))
    assert discforms.negate(q).qvalues == (Rational(3, 2),)


def test_coprime_sum():
    total = discforms.coprime_sum([Rational(1, 3), Rational(-1, 2)])
    assert total.group.invariant_factors == (6,)
    assert total.values == ((Rational(5, 6),),)
    assert discforms.coprime_sum([]).group.length == 0
    with pytest.raises(errors.ValidationError):
        discforms.coprime_sum([Rational(1, 2), Rational(1, 2)])


def test_canonical_cyclic():
    form = discforms.canonical_cyclic(discforms.cyclic_bilinear(Rational(-2, 7)))
    assert discforms.render_form(form) == "⟨3/7⟩"
    assert discforms.render_form(discforms.canonical_cyclic(discforms.cyclic_bilinear(Rational(4, 5)))) == "⟨1/5⟩"
    with pytest.raises(errors.NonCyclicDiscGroup):
        discforms.canonical_cyclic(discforms.disc_bilinear(_std("D4")))


def test_quadratic_refinements():
    halves = discforms.quadratic_refinements(discforms.cyclic_bilinear(Rational(1, 2)))
    assert sorted(form.qvalues for form in halves) == [(Rational(1, 2),), (Rational(3, 2),)]
    thirds = discforms.quadratic_refinements(discforms.cyclic_bilinear(Rational(1, 3)))
    assert [form.qvalues for form in thirds] == [(Rational(4, 3),)]


def test_render_form():
    assert discforms.render_form(discforms.cyclic_bilinear(1)) == "0"
    q = discforms.quadratic_form((2,), (Rational(3, 2),))
    assert discforms.render_form(q) == "⟨3/2⟩"
    assert discforms.render_form(q, mod_z=True) == "⟨1/2⟩"
    u2 = discforms.disc_bilinear(_std("U(2)"))
    assert discforms.render_form(u2) == "⟨0⟩ ⊕ ⟨0⟩ [b12=1/2]"


@pytest.mark.parametrize("text, sigma", [("E8", 0), ("E7", 7), ("E6", 6), ("A1", 1), ("D4", 4), ("A1(-1)", 7), ("U", 0)])
def test_milgram_signature_of_blocks(text, sigma):
    assert discforms.milgram_signature(discforms.disc_quadratic(_std(text))) == sigma


def _even_blocks():
    blocks = [Block("U", 0), Block("U", 0, 2)]
    for sign in (1, -1):
        blocks += [Block("A", n, sign) for n in range(1, 8)]
        blocks += [Block("D", n, sign) for n in range(4, 9)]
        blocks += [Block("E", n, sign) for n in (6, 7, 8)]
        blocks += [Block("diag", sign * m) for m in (2, 4, 6)]
    blocks.append(Block("A", 2, 2))
    return blocks


def test_milgram_matches_index_on_catalog_blocks():
    for block in _even_blocks():
        lattice = standard(decomposition([(block, 1)]))
        assert discforms.milgram_signature(discforms.disc_quadratic(lattice)) == index(lattice) % 8, block


def test_milgram_matches_index_on_random_sums():
    rng = random.Random(20240917)
    blocks = _even_blocks()
    for _ in range(100):
        items = []
        rank = 0
        order = 1
        for _ in range(rng.randint(1, 3)):
            block = rng.choice(blocks)
            lattice = standard(decomposition([(block, 1)]))
            if rank + lattice.rank > 12 or order * abs(lattice.determinant) > 2000:
                continue
            items.append((block, 1))
            rank += lattice.rank
            order *= abs(lattice.determinant)
        if not items:
            items = [(Block("E", 8), 1)]
        lattice = standard(decomposition(items))
        if rng.random() < 0.5:
            lattice = change_basis(lattice, oracle.random_unimodular(lattice.rank, rng))
        sigma = discforms.milgram_signature(discforms.disc_quadratic(lattice))
        assert sigma == index(lattice) % 8, items
