"""
판별식 형식(discriminant form) 모듈

격자 L 의 판별식 군 A(L) = L*/L 과 그 위의 형식을 계산합니다.
- 불변 인자 (스미스 정규형)
- Q/Z 값 판별식 쌍선형 형식 b_L
- Q/2Z 값 판별식 이차 형식 q_L (짝 격자에 한함)
- 유한 형식 동형 판정 (생성원 상의 전수 탐색)
- 밀그램(Milgram) 공식에 따른 mod 8 부호수

이차 형식 값은 mod 2Z 로 저장합니다. mod Z 표기는 render_form(mod_z=True) 로 얻습니다.
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from sympy import Float, I, Rational, S, atan2, exp, pi, sqrt

from lattices import errors, normal_forms
from lattices.lattice_core import Lattice, Parity, parity
from lattices.normal_forms import mat_mul, smith_normal_form, transpose

logger = logging.getLogger(__name__)

DEFAULT_GROUP_LIMIT = 10_000
DEFAULT_GAUSS_PRECISION = 40

Element = Tuple[int, ...]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """
    유한 아벨 군 Z/d_1 ⊕ ... ⊕ Z/d_k (d_1 | d_2 | ...).
    격자에서 온 경우 generator_lifts 는 L⊗Q 안의 생성원 대표입니다.
    """

    invariant_factors: Tuple[int, ...]
    generator_lifts: Tuple[Tuple[Rational, ...], ...] = field(default=(), compare=False)

    @property
    def order(self) -> int:
        result = 1
        for d in self.invariant_factors:
            result *= d
        return result

    @property
    def length(self) -> int:
        return len(self.invariant_factors)

    def elements(self) -> Iterator[Element]:
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.invariant_factors))


@dataclass(frozen=True)
class FiniteBilinearForm:
    group: FiniteAbelianGroup
    values: Tuple[Tuple[Rational, ...], ...]

    def value(self, x: Element, y: Element) -> Rational:
        total = Rational(0)
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if b:
                    total += a * b * self.values[i][j]
        return total % 1


@dataclass(frozen=True)
class FiniteQuadraticForm:
    group: FiniteAbelianGroup
    qvalues: Tuple[Rational, ...]
    bilinear: FiniteBilinearForm

    def value(self, x: Element) -> Rational:
        total = Rational(0)
        k = len(x)
        for i in range(k):
            if x[i]:
                total += x[i] * x[i] * self.qvalues[i]
                for j in range(i + 1, k):
                    if x[j]:
                        total += 2 * x[i] * x[j] * self.bilinear.values[i][j]
        return total % 2


FiniteForm = Union[FiniteBilinearForm, FiniteQuadraticForm]


def bilinear_form(factors: Sequence[int], values: Sequence[Sequence[Rational]]) -> FiniteBilinearForm:
    """주어진 값 표로 추상 쌍선형 형식을 만듭니다. 값은 mod 1 로 정규화됩니다."""
    group = FiniteAbelianGroup(tuple(int(d) for d in factors))
    table = tuple(tuple(Rational(v) % 1 for v in row) for row in values)
    return FiniteBilinearForm(group, table)


def quadratic_form(
    factors: Sequence[int], qvalues: Sequence[Rational], bilinear_values: Optional[Sequence[Sequence[Rational]]] = None
) -> FiniteQuadraticForm:
    """
    추상 이차 형식을 만듭니다. 쌍선형 표가 없으면 대각(직교) 형식으로 간주합니다.
    """
    k = len(factors)
    if bilinear_values is None:
        bilinear_values = [[Rational(qvalues[i]) if i == j else Rational(0) for j in range(k)] for i in range(k)]
    bilinear = bilinear_form(factors, bilinear_values)
    return FiniteQuadraticForm(bilinear.group, tuple(Rational(q) % 2 for q in qvalues), bilinear)


def cyclic_bilinear(value: Rational) -> FiniteBilinearForm:
    """
    ⟨a/n⟩ 형식을 Z/n 위에 만듭니다 (n 은 기약 분모). 정수 값이면 자명한 형식입니다.
    """
    value = Rational(value)
    n = int(value.q)
    if n == 1:
        return bilinear_form((), ())
    return bilinear_form((n,), ((value,),))


def coprime_sum(values: Sequence[Rational]) -> FiniteBilinearForm:
    """
    서로소 위수의 순환 형식 ⟨a_1/n_1⟩ ⊥ ⟨a_2/n_2⟩ ⊥ ... 를 하나의 순환 형식으로 합칩니다.
    생성원 합 g_1 + g_2 + ... 의 값은 각 값의 합입니다.
    """
    total = Rational(0)
    order = 1
    for value in values:
        value = Rational(value)
        n = int(value.q)
        if gcd(order, n) != 1:
            raise errors.ValidationError(f"위수가 서로소가 아닌 성분은 합칠 수 없습니다: {order}, {n}")
        order *= n
        total += value
    return cyclic_bilinear(total)


def _gram_snf(lattice: Lattice):
    diagonal, _, right = smith_normal_form(lattice.gram)
    active = [i for i, d in enumerate(diagonal) if abs(d) > 1]
    return diagonal, right, active


def invariant_factors(lattice: Lattice) -> List[int]:
    """스미스 정규형의 1 보다 큰 대각 성분 (d_1 | d_2 | ...)."""
    return [d for d in normal_forms.invariant_factors(lattice.gram) if d > 1]


def discriminant_group(lattice: Lattice) -> Tuple[FiniteAbelianGroup, List[List[int]]]:
    """
    판별식 군과 생성원 사이의 정수 그람 Vᵀ G V 를 함께 돌려줍니다.
    생성원 대표는 g_i = V e_i / d_i 입니다 (U G V = D).
    """
    diagonal, right, active = _gram_snf(lattice)
    factors = tuple(abs(diagonal[i]) for i in active)
    lifts = tuple(tuple(Rational(right[r][i], abs(diagonal[i])) for r in range(lattice.rank)) for i in active)
    w = mat_mul(mat_mul(transpose(right), lattice.rows()), right)
    pairing = [[w[i][j] for j in active] for i in active]
    return FiniteAbelianGroup(factors, lifts), pairing


def disc_bilinear(lattice: Lattice) -> FiniteBilinearForm:
    """판별식 쌍선형 형식 b_L : A(L) × A(L) → Q/Z."""
    group, pairing = discriminant_group(lattice)
    d = group.invariant_factors
    values = tuple(
        tuple(Rational(pairing[i][j], d[i] * d[j]) % 1 for j in range(len(d))) for i in range(len(d))
    )
    return FiniteBilinearForm(group, values)


def disc_quadratic(lattice: Lattice) -> FiniteQuadraticForm:
    """
    판별식 이차 형식 q_L : A(L) → Q/2Z.

    Raises:
        OddLattice: 홀 격자인 경우
    """
    if parity(lattice) != Parity.EVEN:
        raise errors.OddLattice("판별식 이차 형식은 짝 격자에서만 정의됩니다.")
    bilinear = disc_bilinear(lattice)
    _, pairing = discriminant_group(lattice)
    d = bilinear.group.invariant_factors
    qvalues = tuple(Rational(pairing[i][i], d[i] * d[i]) % 2 for i in range(len(d)))
    return FiniteQuadraticForm(bilinear.group, qvalues, bilinear)


def group_length(group: FiniteAbelianGroup) -> int:
    return group.length


def negate(form: FiniteForm) -> FiniteForm:
    """같은 군 위에서 값의 부호를 바꿉니다."""
    if isinstance(form, FiniteQuadraticForm):
        bilinear = negate(form.bilinear)
        return FiniteQuadraticForm(form.group, tuple((-q) % 2 for q in form.qvalues), bilinear)
    values = tuple(tuple((-v) % 1 for v in row) for row in form.values)
    return FiniteBilinearForm(form.group, values)


def forms_isomorphic(first: FiniteForm, second: FiniteForm, limit: int = DEFAULT_GROUP_LIMIT) -> bool:
    """
    두 유한 형식이 동형인지 판정합니다.

    첫 형식의 생성원 상을 둘째 군의 원소 중에서 순서대로 고르며, 값 표가 맞지 않으면
    되돌아갑니다. 판별식 쌍선형 형식은 비퇴화이므로 값을 보존하는 준동형은 단사입니다.

    Raises:
        GroupTooLarge: 군의 크기가 limit 를 넘는 경우
    """
    if type(first) is not type(second):
        raise errors.ValidationError("쌍선형 형식과 이차 형식은 서로 비교할 수 없습니다.")
    if first.group.invariant_factors != second.group.invariant_factors:
        return False
    if first.group.order > limit:
        raise errors.GroupTooLarge(f"군의 크기 {first.group.order} 가 전수 탐색 한도 {limit} 를 넘습니다.")

    quadratic = isinstance(first, FiniteQuadraticForm)
    source_b = first.bilinear if quadratic else first
    target_b = second.bilinear if quadratic else second
    factors = first.group.invariant_factors
    k = len(factors)
    if k == 0:
        return True

    target_elements = list(second.group.elements())
    target_q = {x: second.value(x) for x in target_elements} if quadratic else None

    def candidates(i: int) -> List[Element]:
        d = factors[i]
        result = []
        for x in target_elements:
            if any((a * d) % e for a, e in zip(x, factors)):
                continue
            if quadratic and target_q[x] != first.qvalues[i]:
                continue
            if target_b.value(x, x) != source_b.values[i][i]:
                continue
            result.append(x)
        return result

    pools = [candidates(i) for i in range(k)]
    images: List[Element] = []

    def extend(i: int) -> bool:
        if i == k:
            return True
        for x in pools[i]:
            if all(target_b.value(images[j], x) == source_b.values[j][i] for j in range(i)):
                images.append(x)
                if extend(i + 1):
                    return True
                images.pop()
        return False

    return extend(0)


def milgram_signature(form: FiniteQuadraticForm, precision: int = DEFAULT_GAUSS_PRECISION) -> int:
    """
    정규화된 가우스 합 Σ exp(πi q(x)) / √|A| 의 편각으로부터 mod 8 부호수를 구합니다.

    합은 precision 자릿수의 임의 정밀도로 계산하고, 결과를 √|A|·exp(πiσ/4) 와 비교해
    8 개 후보 중 하나로 확정합니다.

    Raises:
        NonUnitGaussSum: 정규화된 합이 8 차 단위근이 아닌 경우 (형식 표가 일관되지 않음)
    """
    n = form.group.order
    if n == 1:
        return 0
    counts = Counter(form.value(x) for x in form.group.elements())
    total = sum((count * exp(I * pi * q) for q, count in counts.items()), S.Zero).evalf(precision)
    real, imag = total.as_real_imag()
    tolerance = Float(10, precision) ** (-(precision // 2))
    size = (real ** 2 + imag ** 2).evalf(precision)
    if abs(size - n) > tolerance:
        raise errors.NonUnitGaussSum(f"가우스 합의 크기가 √{n} 이 아닙니다: |S|² = {size.evalf(10)}")
    sigma = int((atan2(imag, real) * 4 / pi).evalf(precision).round()) % 8
    expected = (sqrt(n) * exp(I * pi * Rational(sigma, 4))).evalf(precision)
    if abs(total - expected).evalf(precision) > tolerance:
        raise errors.NonUnitGaussSum("가우스 합의 편각이 π/4 의 정수배가 아닙니다.")
    return sigma


def quadratic_refinements(bilinear: FiniteBilinearForm) -> List[FiniteQuadraticForm]:
    """
    쌍선형 형식의 모든 Q/2Z 이차 세분(refinement)을 나열합니다.
    q(g_i) ∈ {b_ii, b_ii + 1} 중 d_i² q(g_i) ≡ 0 (mod 2) 를 만족하는 것만 남깁니다.
    """
    factors = bilinear.group.invariant_factors
    options = []
    for i, d in enumerate(factors):
        base = bilinear.values[i][i] % 1
        options.append([q for q in (base, base + 1) if (d * d * q) % 2 == 0])
    return [
        FiniteQuadraticForm(bilinear.group, tuple(choice), bilinear)
        for choice in itertools.product(*options)
    ]


def canonical_cyclic(form: FiniteBilinearForm) -> FiniteBilinearForm:
    """
    순환 형식 ⟨a/n⟩ 을 단위 u 에 대한 u²a 중 분자가 가장 작은 대표로 바꿉니다.
    동형인 순환 형식은 같은 대표를 가지므로 표 출력에 사용합니다.

    Raises:
        NonCyclicDiscGroup: 군이 순환군이 아닌 경우
    """
    if form.group.length == 0:
        return form
    if form.group.length > 1:
        raise errors.NonCyclicDiscGroup(f"순환군이 아닙니다: {list(form.group.invariant_factors)}")
    n = form.group.invariant_factors[0]
    numerator = int(form.values[0][0] * n) % n
    best = min((u * u * numerator) % n for u in range(1, n) if gcd(u, n) == 1)
    return bilinear_form((n,), ((Rational(best, n),),))


def _format_value(value: Rational) -> str:
    value = Rational(value)
    if value.q == 1:
        return str(value.p)
    return f"{value.p}/{value.q}"


def render_form(form: FiniteForm, mod_z: bool = False) -> str:
    """
    유한 형식을 "⟨a/n⟩ ⊕ ..." 문자열로 표시합니다.
    이차 형식은 기본적으로 mod 2, mod_z=True 이면 mod 1 값으로 표시합니다.
    비대각 성분이 있으면 [b_ij=...] 로 덧붙입니다. 자명한 형식은 "0" 입니다.
    """
    k = form.group.length
    if k == 0:
        return "0"
    if isinstance(form, FiniteQuadraticForm):
        modulus = 1 if mod_z else 2
        diagonal = [q % modulus for q in form.qvalues]
        table = form.bilinear.values
    else:
        diagonal = [form.values[i][i] for i in range(k)]
        table = form.values
    parts = [f"⟨{_format_value(v)}⟩" for v in diagonal]
    text = " ⊕ ".join(parts)
    extras = [f"b{i + 1}{j + 1}={_format_value(table[i][j])}" for i in range(k) for j in range(i + 1, k) if table[i][j] != 0]
    if extras:
        text += " [" + ", ".join(extras) + "]"
    return text
