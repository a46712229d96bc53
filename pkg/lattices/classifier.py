"""
격자 종(genus) 분류 모듈

- 종 기호 (계수, 부호수, 짝/홀, 판별식 형식) 와 종 비교
- 부정치 유니모듈러 격자의 분류 (대각형 / U 와 E8 의 직교합)
- 클래스 수 1 판정 기준 (충분조건만)
- 유니모듈러 격자 안에서 원시 벡터의 직교 여공간이 갖는 종
- 종의 대표 격자 구성과 이름 있는 블록 분해 탐색
- 음의 정부호 원시 격자 카탈로그 (c1² = 1..8)
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from sympy import Rational, divisors

from lattices import discforms, errors
from lattices.discforms import FiniteBilinearForm, FiniteQuadraticForm
from lattices.lattice_core import (
    Block,
    Lattice,
    NamedDecomposition,
    Parity,
    blocks_signature,
    decomposition,
    make_lattice,
    orthogonal_complement,
    parse_decomposition,
    parity,
    signature,
    standard,
)

logger = logging.getLogger(__name__)

DEFAULT_CATALOG_MAX_BLOCKS = 4


@dataclass(frozen=True)
class GenusSymbol:
    """니쿨린(Nikulin) 의 완전 불변량으로 나타낸 종."""

    rank: int
    signature: Tuple[int, int]
    parity: Parity
    bilinear: FiniteBilinearForm
    quadratic: Optional[FiniteQuadraticForm] = None

    @property
    def index(self) -> int:
        return self.signature[0] - self.signature[1]

    @property
    def group_length(self) -> int:
        return self.bilinear.group.length

    @property
    def disc_order(self) -> int:
        return self.bilinear.group.order

    @property
    def is_definite(self) -> bool:
        return self.signature[0] == 0 or self.signature[1] == 0

    def to_json(self, mod_z: bool = False) -> Dict[str, Any]:
        return {
            "rank": self.rank,
            "signature": list(self.signature),
            "index": self.index,
            "parity": self.parity.value,
            "disc_group": list(self.bilinear.group.invariant_factors),
            "bilinear": discforms.render_form(self.bilinear),
            "quadratic": discforms.render_form(self.quadratic, mod_z=mod_z) if self.quadratic else None,
        }


@dataclass(frozen=True)
class ClassNumberVerdict:
    """클래스 수 1 판정 결과. decided 가 False 이면 기준이 적용되지 않은 것입니다."""

    decided: bool
    value: Optional[bool] = None

    def to_json(self) -> Union[bool, str]:
        return self.value if self.decided else "undecided"


DECIDED_TRUE = ClassNumberVerdict(True, True)
UNDECIDED = ClassNumberVerdict(False)


def _as_parity(value: Union[Parity, str]) -> Parity:
    try:
        return Parity(value)
    except ValueError:
        raise errors.ValidationError(f"짝/홀 값은 'even' 또는 'odd' 이어야 합니다: {value}")


def genus_of(lattice: Lattice) -> GenusSymbol:
    lattice_parity = parity(lattice)
    quadratic = discforms.disc_quadratic(lattice) if lattice_parity == Parity.EVEN else None
    return GenusSymbol(
        rank=lattice.rank,
        signature=signature(lattice),
        parity=lattice_parity,
        bilinear=discforms.disc_bilinear(lattice),
        quadratic=quadratic,
    )


def genus_equal(first: GenusSymbol, second: GenusSymbol, limit: int = discforms.DEFAULT_GROUP_LIMIT) -> bool:
    """
    두 종이 같은지 비교합니다.
    짝 종은 이차 판별식 형식, 홀 종은 쌍선형 판별식 형식의 동형으로 비교합니다.
    """
    if (first.rank, first.signature, first.parity) != (second.rank, second.signature, second.parity):
        return False
    if first.parity == Parity.EVEN:
        return discforms.forms_isomorphic(first.quadratic, second.quadratic, limit=limit)
    return discforms.forms_isomorphic(first.bilinear, second.bilinear, limit=limit)


def classify_unimodular_indefinite(signature_pair: Sequence[int], lattice_parity: Union[Parity, str]) -> NamedDecomposition:
    """
    부정치 유니모듈러 격자의 이름 있는 분해를 돌려줍니다.

    Args:
        signature_pair: (b+, b-)
        lattice_parity: Parity.EVEN 또는 Parity.ODD

    Returns:
        NamedDecomposition: 홀이면 ⟨1⟩^p + ⟨-1⟩^n, 짝이면 U^s + E8(±1)^t

    Raises:
        DefiniteInput: b+ 또는 b- 가 0 인 경우
        EvenSignatureNotDivisibleBy8: 짝인데 b+ - b- 가 8 의 배수가 아닌 경우
    """
    pos, neg = int(signature_pair[0]), int(signature_pair[1])
    lattice_parity = _as_parity(lattice_parity)
    if pos < 1 or neg < 1:
        raise errors.DefiniteInput(f"부호수 ({pos},{neg}) 는 부정치가 아닙니다.")
    if lattice_parity == Parity.ODD:
        return decomposition([(Block("diag", 1), pos), (Block("diag", -1), neg)])
    tau = pos - neg
    if tau % 8:
        raise errors.EvenSignatureNotDivisibleBy8(f"짝 유니모듈러 격자의 지표 {tau} 는 8 의 배수여야 합니다.")
    items = []
    if tau >= 0:
        items.append((Block("U", 0), neg))
        if tau:
            items.append((Block("E", 8, 1), tau // 8))
    else:
        items.append((Block("U", 0), pos))
        items.append((Block("E", 8, -1), -tau // 8))
    return decomposition(items)


def class_number_one(genus: GenusSymbol) -> ClassNumberVerdict:
    """
    부정치 종의 클래스 수 1 충분조건을 확인합니다.
    짝: ℓ(A) ≤ rank - 2, 홀: ℓ(A) ≤ rank - 3. 정부호이거나 조건이 맞지 않으면 미결정입니다.
    """
    if genus.is_definite:
        return UNDECIDED
    slack = 2 if genus.parity == Parity.EVEN else 3
    if genus.group_length <= genus.rank - slack:
        return DECIDED_TRUE
    return UNDECIDED


def complement_genus(
    ambient_signature: Sequence[int],
    ambient_parity: Union[Parity, str],
    hsq: int,
    characteristic: bool,
    precision: int = discforms.DEFAULT_GAUSS_PRECISION,
) -> GenusSymbol:
    """
    유니모듈러 격자 안에서 노름 hsq 인 원시 벡터의 직교 여공간이 갖는 종을 계산합니다.

    판별식 쌍선형 형식은 -⟨1/hsq⟩ 이고, 여공간이 짝이면 이차 세분 중 밀그램 부호수가
    여공간의 지표와 mod 8 로 같은 것을 고릅니다.

    Raises:
        SignMismatch: hsq 의 부호를 실현할 양/음 방향이 없는 경우
        CharacteristicInEven: 짝 격자에서 특성 벡터를 요구한 경우
        UnrealizableNorm: 해당 노름의 벡터가 주변 격자에 있을 수 없는 경우
    """
    pos, neg = int(ambient_signature[0]), int(ambient_signature[1])
    ambient_parity = _as_parity(ambient_parity)
    hsq = int(hsq)
    if hsq == 0:
        raise errors.IsotropicVector("hsq = 0 인 벡터의 여공간은 비퇴화가 아닙니다.")
    if (hsq > 0 and pos < 1) or (hsq < 0 and neg < 1):
        raise errors.SignMismatch(f"부호수 ({pos},{neg}) 의 격자에는 노름 {hsq} 인 벡터가 없습니다.")
    if ambient_parity == Parity.EVEN:
        if characteristic:
            raise errors.CharacteristicInEven("짝 유니모듈러 격자의 원시 벡터는 특성 원소가 될 수 없습니다.")
        if (pos - neg) % 8:
            raise errors.EvenSignatureNotDivisibleBy8(f"짝 유니모듈러 격자의 지표 {pos - neg} 는 8 의 배수여야 합니다.")
        if hsq % 2:
            raise errors.UnrealizableNorm(f"짝 격자에는 홀수 노름 {hsq} 인 벡터가 없습니다.")
    elif characteristic and (hsq - (pos - neg)) % 8:
        raise errors.UnrealizableNorm(f"특성 벡터의 노름은 지표 {pos - neg} 와 mod 8 로 같아야 합니다: {hsq}")
    elif not characteristic and pos + neg <= 2 and (pos + neg == 1 or hsq % 2 == 0):
        # 계수 2 이하 홀 유니모듈러 격자의 비특성 원시 벡터는 한 좌표만 짝수이므로 노름이 홀수
        raise errors.UnrealizableNorm(f"부호수 ({pos},{neg}) 의 홀 격자에서 비특성 원시 벡터의 노름은 홀수입니다: {hsq}")

    complement_signature = (pos - 1, neg) if hsq > 0 else (pos, neg - 1)
    complement_parity = Parity.EVEN if ambient_parity == Parity.EVEN or characteristic else Parity.ODD
    bilinear = discforms.cyclic_bilinear(Rational(-1, hsq))
    quadratic = None
    if complement_parity == Parity.EVEN:
        target = (complement_signature[0] - complement_signature[1]) % 8
        matches = [
            form for form in discforms.quadratic_refinements(bilinear)
            if discforms.milgram_signature(form, precision=precision) == target
        ]
        distinct: List[FiniteQuadraticForm] = []
        for form in matches:
            if not any(discforms.forms_isomorphic(form, other) for other in distinct):
                distinct.append(form)
        if len(distinct) != 1:
            raise errors.UnrealizableNorm(f"밀그램 부호수 {target} 에 맞는 이차 세분의 동형류가 {len(distinct)}개 입니다.")
        quadratic = distinct[0]
    return GenusSymbol(
        rank=pos + neg - 1,
        signature=complement_signature,
        parity=complement_parity,
        bilinear=bilinear,
        quadratic=quadratic,
    )


# --- 대표 격자 ---

def _ambient_options(genus: GenusSymbol) -> List[Tuple[int, Tuple[int, int], Parity, bool]]:
    """(hsq, 주변 부호수, 주변 짝/홀, 특성 여부) 후보를 시도 순서대로 만듭니다."""
    d = genus.disc_order
    pos, neg = genus.signature
    options = []
    for hsq, ambient_signature in ((d, (pos + 1, neg)), (-d, (pos, neg + 1))):
        if genus.parity == Parity.EVEN:
            options.append((hsq, ambient_signature, Parity.EVEN, False))
            options.append((hsq, ambient_signature, Parity.ODD, True))
        else:
            options.append((hsq, ambient_signature, Parity.ODD, False))
    return options


def _filler(
    genus_parity: Parity, remaining: Tuple[int, int]
) -> Optional[List[Tuple[Block, int]]]:
    pos, neg = remaining
    if pos < 0 or neg < 0:
        return None
    if genus_parity == Parity.ODD:
        items = []
        if pos:
            items.append((Block("diag", 1), pos))
        if neg:
            items.append((Block("diag", -1), neg))
        return items
    tau = pos - neg
    if tau % 8:
        return None
    t = abs(tau) // 8
    s = min(pos, neg)
    items = []
    if s:
        items.append((Block("U", 0), s))
    if t:
        items.append((Block("E", 8, 1 if tau > 0 else -1), t))
    return items


def _special_blocks(genus: GenusSymbol) -> List[Tuple[Block, int]]:
    """판별식 군에 기여하는 블록 후보 (블록, |det|) 목록."""
    d = genus.disc_order
    candidates: List[Tuple[Block, int]] = []
    for m in divisors(d):
        if m > 1:
            candidates.append((Block("diag", m), m))
            candidates.append((Block("diag", -m), m))
    for sign in (1, -1):
        for n in range(2, genus.rank + 1):
            if d % (n + 1) == 0:
                candidates.append((Block("A", n, sign), n + 1))
        if d % 4 == 0:
            for n in range(4, genus.rank + 1):
                candidates.append((Block("D", n, sign), 4))
        if d % 3 == 0 and genus.rank >= 6:
            candidates.append((Block("E", 6, sign), 3))
        if d % 2 == 0 and genus.rank >= 7:
            candidates.append((Block("E", 7, sign), 2))
    if genus.parity == Parity.EVEN:
        candidates = [(b, m) for b, m in candidates if b.kind != "diag" or b.param % 2 == 0]
    candidates.sort(key=lambda item: item[0].sort_key())
    return candidates


def named_search(
    genus: GenusSymbol,
    max_blocks: int = DEFAULT_CATALOG_MAX_BLOCKS,
    limit: int = discforms.DEFAULT_GROUP_LIMIT,
) -> Optional[NamedDecomposition]:
    """
    표준 블록의 조합 중 종이 같은 분해를 찾습니다.
    판별식 블록을 최대 max_blocks 개 고르고, 나머지 계수는 U/E8 또는 ⟨±1⟩ 로 채웁니다.
    찾지 못하면 None 을 돌려줍니다.
    """
    candidates = _special_blocks(genus)
    d = genus.disc_order
    for size in range(0, max_blocks + 1):
        for combo in itertools.combinations_with_replacement(range(len(candidates)), size):
            product = 1
            for i in combo:
                product *= candidates[i][1]
            if product != d:
                continue
            items = [(candidates[i][0], 1) for i in combo]
            used = blocks_signature(decomposition(items)) if items else (0, 0)
            filler = _filler(genus.parity, (genus.signature[0] - used[0], genus.signature[1] - used[1]))
            if filler is None:
                continue
            candidate = decomposition(items + filler)
            if not candidate.blocks:
                continue
            if genus_equal(genus_of(standard(candidate)), genus, limit=limit):
                logger.debug(f"이름 있는 분해를 찾았습니다: {candidate}")
                return candidate
    return None


def standard_representative(
    genus: GenusSymbol,
    max_blocks: int = DEFAULT_CATALOG_MAX_BLOCKS,
    bound_start: int = 3,
    bound_max: int = 15,
    limit: int = discforms.DEFAULT_GROUP_LIMIT,
    precision: int = discforms.DEFAULT_GAUSS_PRECISION,
) -> Tuple[Optional[NamedDecomposition], Lattice]:
    """
    순환 판별식 군을 갖는 종의 대표 격자를 구성합니다.

    계수가 하나 큰 유니모듈러 격자에서 노름 ±|A| 인 원시 벡터를 찾아 그 직교 여공간의
    그람 행렬을 만들고, 이어서 이름 있는 분해를 탐색합니다.

    Returns:
        tuple: (이름 있는 분해 또는 None, 명시적 그람 격자)

    Raises:
        NonCyclicDiscGroup: 판별식 군이 순환군이 아닌 경우
        NoAmbientVectorFound: 탐색 범위 안에서 벡터를 찾지 못한 경우
    """
    from lattices import oracle

    if genus.group_length > 1:
        raise errors.NonCyclicDiscGroup(
            f"판별식 군 {list(genus.bilinear.group.invariant_factors)} 이 순환군이 아닙니다."
        )

    gram = None
    for hsq, ambient_signature, ambient_parity, characteristic in _ambient_options(genus):
        if min(ambient_signature) < 1:
            continue
        if ambient_parity == Parity.EVEN and (ambient_signature[0] - ambient_signature[1]) % 8:
            continue
        try:
            candidate_genus = complement_genus(ambient_signature, ambient_parity, hsq, characteristic, precision=precision)
        except errors.ValidationError:
            continue
        if not genus_equal(candidate_genus, genus, limit=limit):
            continue
        ambient = standard(classify_unimodular_indefinite(ambient_signature, ambient_parity))
        try:
            vector = oracle.find_primitive_vector(
                ambient, hsq, characteristic, bound_start=bound_start, bound_max=bound_max
            )
        except errors.NotFoundWithinBound:
            logger.info(f"주변 격자 {ambient_signature} ({ambient_parity.value}) 에서 벡터를 찾지 못했습니다. 다음 후보로 넘어갑니다.")
            continue
        gram, _ = orthogonal_complement(ambient, vector)
        logger.info(f"주변 격자 {ambient_signature} ({ambient_parity.value}) 의 벡터 {vector} 로 대표 격자를 구성했습니다.")
        break

    if gram is None:
        raise errors.NoAmbientVectorFound(
            f"부호수 {genus.signature}, 판별식 위수 {genus.disc_order} 인 종의 주변 벡터를 찾지 못했습니다."
        )
    if not genus_equal(genus_of(gram), genus, limit=limit):
        raise errors.LatticeError("구성한 여공간의 종이 요청한 종과 다릅니다.")

    named = named_search(genus, max_blocks=max_blocks, limit=limit)
    if named is None:
        logger.info("이름 있는 분해를 찾지 못했습니다. 명시적 그람 행렬만 반환합니다.")
    return named, gram


# --- 음의 정부호 카탈로그 ---

@dataclass(frozen=True)
class CatalogEntry:
    """
    정준 편극 곡면 (p_g = 0, χ = 1) 의 원시 격자 표 한 줄.
    printed_values 는 표에 인쇄된 순환 성분 값이며, printed_misprint 는 인쇄된 형식이
    격자의 실제 판별식 형식과 mod 1 로 일치하지 않는 줄입니다.
    """

    c1sq: int
    decomposition: Optional[NamedDecomposition]
    gram: Tuple[Tuple[int, ...], ...]
    printed_form: str
    printed_values: Tuple[Rational, ...]
    printed_misprint: bool = False

    @property
    def lattice(self) -> Lattice:
        return make_lattice(self.gram)

    @property
    def label(self) -> str:
        if self.decomposition is not None:
            return str(self.decomposition)
        return str([list(row) for row in self.gram])

    def printed_bilinear(self) -> FiniteBilinearForm:
        return discforms.coprime_sum(self.printed_values)

    def required_bilinear(self) -> FiniteBilinearForm:
        """여공간이 가져야 하는 형식 -⟨1/c1²⟩."""
        return discforms.cyclic_bilinear(Rational(-1, self.c1sq))


def _entry(c1sq: int, expr: Optional[str], printed_form: str, printed_values: Sequence[Rational],
           gram: Optional[Sequence[Sequence[int]]] = None, misprint: bool = False) -> CatalogEntry:
    decomp = parse_decomposition(expr) if expr else None
    lattice = standard(decomp) if decomp is not None else make_lattice(gram)
    return CatalogEntry(
        c1sq=c1sq,
        decomposition=decomp,
        gram=lattice.gram,
        printed_form=printed_form,
        printed_values=tuple(Rational(v) for v in printed_values),
        printed_misprint=misprint,
    )


_CATALOG: Dict[int, CatalogEntry] = {}


def _build_catalog() -> Dict[int, CatalogEntry]:
    if not _CATALOG:
        rows = [
            _entry(1, "E8(-1)", "0", ()),
            _entry(2, "E7(-1)", "⟨-1/2⟩", (Rational(-1, 2),)),
            _entry(3, "E6(-1)", "⟨1/3⟩", (Rational(1, 3),), misprint=True),
            _entry(4, "D5(-1)", "⟨-1/4⟩", (Rational(-1, 4),)),
            _entry(5, "A4(-1)", "⟨-4/5⟩", (Rational(-4, 5),)),
            _entry(6, "A2(-1) + <-2>", "⟨1/3⟩ ⊥ ⟨-1/2⟩", (Rational(1, 3), Rational(-1, 2))),
            _entry(7, None, "⟨1/7⟩", (Rational(1, 7),), gram=[[-4, 1], [1, -2]], misprint=True),
            _entry(8, "<-8>", "⟨-1/8⟩", (Rational(-1, 8),)),
        ]
        _CATALOG.update({row.c1sq: row for row in rows})
    return _CATALOG


def definite_catalog(c1sq: int) -> CatalogEntry:
    """
    c1² = 1..8 인 정준 편극 곡면의 음의 정부호 원시 격자를 돌려줍니다.

    Raises:
        OutOfRange: c1sq 가 1..8 밖인 경우
    """
    if not 1 <= int(c1sq) <= 8:
        raise errors.OutOfRange(f"카탈로그는 c1² = 1..8 만 다룹니다: {c1sq}")
    return _build_catalog()[int(c1sq)]


def catalog_entries() -> List[CatalogEntry]:
    return [definite_catalog(k) for k in range(1, 9)]
