"""
곡면 불변량과 원시 격자 파이프라인 모듈

이 모듈은 (b1, c1², c2) 로부터 곡면의 교차 격자 H_X 와 원시 격자 P_X = h⊥ 를 결정합니다.
- 파생 불변량 계산 (q, p_g, χ, τ, b2, h¹¹, 부호수)
- 교차 격자의 분류 (짝/홀은 입력 플래그)
- 원시 격자: p_g ≥ 1 이면 부정치 정리 경로, p_g = 0 이면 정부호 표 또는 미결정 경로
- 블로업(blow-up) 변환
- c1² 별 가능한 불변량 표 생성
- 엔리케스 분류 표
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import filters
from lattices import classifier, errors
from lattices.classifier import ClassNumberVerdict, GenusSymbol
from lattices.lattice_core import Block, Lattice, NamedDecomposition, Parity, decomposition

logger = logging.getLogger(__name__)

ROUTE_INDEFINITE = "indefinite-theorem"
ROUTE_DEFINITE_TABLE = "definite-table"
ROUTE_DEFINITE_UNDECIDED = "definite-undecided"


@dataclass(frozen=True)
class SurfaceInvariants:
    """위상 불변량 (b1, c1², c2) 와 그로부터 유도되는 값들."""

    b1: int
    c1sq: int
    c2: int

    @property
    def q(self) -> int:
        return self.b1 // 2

    @property
    def chi(self) -> int:
        return (self.c1sq + self.c2) // 12

    @property
    def pg(self) -> int:
        return self.chi - 1 + self.q

    @property
    def e(self) -> int:
        return self.c2

    @property
    def tau(self) -> int:
        return (self.c1sq - 2 * self.c2) // 3

    @property
    def b2(self) -> int:
        return self.c2 - 2 + 2 * self.b1

    @property
    def h11(self) -> int:
        return self.b2 - 2 * self.pg

    @property
    def signature(self) -> Tuple[int, int]:
        return (2 * self.pg + 1, self.h11 - 1)

    def to_json(self) -> Dict[str, Any]:
        return {
            "b1": self.b1,
            "c1sq": self.c1sq,
            "c2": self.c2,
            "q": self.q,
            "pg": self.pg,
            "chi": self.chi,
            "tau": self.tau,
            "b2": self.b2,
            "h11": self.h11,
            "signature": list(self.signature),
        }


def derive_invariants(b1: int, c1sq: int, c2: int) -> SurfaceInvariants:
    """
    (b1, c1², c2) 를 검증하고 파생 불변량을 갖는 객체를 만듭니다.

    Args:
        b1: 첫 베티 수 (음이 아닌 짝수)
        c1sq: c1²
        c2: c2 (위상 오일러 수)

    Returns:
        SurfaceInvariants: 검증된 불변량

    Raises:
        OddB1: b1 이 음수이거나 홀수인 경우
        NoetherNonIntegral: 12 ∤ (c1² + c2)
        IndexNonIntegral: 3 ∤ (c1² - 2c2)
        NegativePg: p_g < 0
        NonPositiveB2: b2 < 1 또는 h¹¹ < 1
    """
    b1, c1sq, c2 = int(b1), int(c1sq), int(c2)
    if b1 < 0 or b1 % 2:
        raise errors.OddB1(f"b1 은 음이 아닌 짝수여야 합니다: {b1}")
    if (c1sq + c2) % 12:
        raise errors.NoetherNonIntegral(f"뇌터 공식: c1² + c2 = {c1sq + c2} 가 12 로 나누어지지 않습니다.")
    if (c1sq - 2 * c2) % 3:
        raise errors.IndexNonIntegral(f"지표 공식: c1² - 2c2 = {c1sq - 2 * c2} 가 3 으로 나누어지지 않습니다.")
    inv = SurfaceInvariants(b1, c1sq, c2)
    if inv.pg < 0:
        raise errors.NegativePg(f"p_g = {inv.pg} 가 음수입니다.")
    if inv.b2 < 1 or inv.h11 < 1:
        raise errors.NonPositiveB2(f"b2 = {inv.b2}, h11 = {inv.h11} 는 1 이상이어야 합니다.")
    logger.debug(f"불변량 계산: {inv.to_json()}")
    return inv


def lemma_excepts_profile() -> SurfaceInvariants:
    """b2 ≤ 4, p_g = 1 인 곡면이 가져야 하는 유일한 불변량 (q=0, c1²=18, c2=6)."""
    return SurfaceInvariants(0, 18, 6)


def _is_exotic(inv: SurfaceInvariants) -> bool:
    profile = lemma_excepts_profile()
    return (inv.q, inv.pg, inv.c1sq, inv.c2) == (profile.q, profile.pg, profile.c1sq, profile.c2)


def intersection_lattice(inv: SurfaceInvariants, even: bool) -> NamedDecomposition:
    """
    교차 격자 H_X 의 이름 있는 분해를 돌려줍니다.

    Raises:
        PositiveDefiniteTotal: b2 = b+ 인 경우 (H_X 가 양의 정부호)
        EvenParityIndexNot8Divisible: 짝인데 τ 가 8 의 배수가 아닌 경우
    """
    pos, neg = inv.signature
    if neg < 1:
        raise errors.PositiveDefiniteTotal(
            f"부호수 ({pos},{neg}): H_X 가 양의 정부호이므로 0 이 아닌 원시 격자가 없습니다."
        )
    if even and inv.tau % 8:
        raise errors.EvenParityIndexNot8Divisible(f"짝 교차 격자의 지표 {inv.tau} 는 8 의 배수여야 합니다.")
    return classifier.classify_unimodular_indefinite((pos, neg), Parity.EVEN if even else Parity.ODD)


@dataclass(frozen=True)
class PrimitiveLatticeResult:
    invariants: SurfaceInvariants
    intersection: NamedDecomposition
    genus: GenusSymbol
    named: Optional[NamedDecomposition]
    gram: Lattice
    class_number_one: ClassNumberVerdict
    route: str
    notes: Tuple[str, ...] = field(default=())

    def to_json(self, mod_z: bool = False) -> Dict[str, Any]:
        return {
            "invariants": self.invariants.to_json(),
            "intersection": str(self.intersection),
            "genus": self.genus.to_json(mod_z=mod_z),
            "named": str(self.named) if self.named is not None else None,
            "gram": self.gram.rows(),
            "class_number_one": self.class_number_one.to_json(),
            "route": self.route,
            "notes": list(self.notes),
        }


def primitive_lattice(
    inv: SurfaceInvariants,
    even: bool,
    hsq: int,
    h_characteristic: bool,
    canonically_polarized: bool = False,
    max_blocks: int = classifier.DEFAULT_CATALOG_MAX_BLOCKS,
    bound_start: int = 3,
    bound_max: int = 15,
    limit: int = 10_000,
    precision: int = 40,
) -> PrimitiveLatticeResult:
    """
    원시 ample 류 h 의 직교 여공간 P_X 를 결정합니다.

    Args:
        inv: 곡면 불변량
        even: H_X 가 짝 격자인지 여부
        hsq: h·h (양수)
        h_characteristic: h 가 특성 원소인지 여부
        canonically_polarized: K 가 ample 이고 h = K 인 경우 (정부호 표 조회에 사용)
        max_blocks, bound_start, bound_max, limit, precision: 대표 격자 탐색 설정

    Returns:
        PrimitiveLatticeResult: 종, 이름 있는 분해, 그람, 클래스 수 판정, 경로

    Raises:
        NonPositiveHsq: hsq ≤ 0
        CharacteristicInEven: 짝 H_X 에서 특성 h 를 요구한 경우
        ExoticBallQuotient: q=0, p_g=1, c1²=18, c2=6 인 경우
        OddComplementRankGuard: b2 = 4 이고 P_X 가 홀인 경우
    """
    hsq = int(hsq)
    if hsq <= 0:
        raise errors.NonPositiveHsq(f"ample 류의 자기 교차수는 양수여야 합니다: {hsq}")
    if even and h_characteristic:
        raise errors.CharacteristicInEven("짝 교차 격자의 원시 벡터는 특성 원소가 될 수 없습니다.")
    if _is_exotic(inv):
        raise errors.ExoticBallQuotient(
            "q=0, p_g=1, c1²=18, c2=6 인 곡면은 존재 여부가 알려져 있지 않아 정리를 적용하지 않습니다."
        )

    ambient = intersection_lattice(inv, even)
    ambient_parity = Parity.EVEN if even else Parity.ODD
    genus = classifier.complement_genus(inv.signature, ambient_parity, hsq, h_characteristic, precision=precision)
    search_options = dict(
        max_blocks=max_blocks, bound_start=bound_start, bound_max=bound_max, limit=limit, precision=precision
    )
    if inv.pg >= 1 and genus.parity == Parity.ODD and inv.b2 == 4:
        raise errors.OddComplementRankGuard("P_X 가 홀 격자이고 b2 = 4 인 경우에는 정리가 적용되지 않습니다.")

    notes: List[str] = []
    if inv.pg >= 1:
        route = ROUTE_INDEFINITE
        named, gram = classifier.standard_representative(genus, **search_options)
        verdict = classifier.class_number_one(genus)
    elif (
        canonically_polarized and h_characteristic and inv.chi == 1 and inv.q == 0
        and 1 <= inv.c1sq <= 8 and hsq == inv.c1sq
    ):
        route = ROUTE_DEFINITE_TABLE
        entry = classifier.definite_catalog(inv.c1sq)
        if not classifier.genus_equal(classifier.genus_of(entry.lattice), genus):
            raise errors.LatticeError(f"카탈로그 c1²={inv.c1sq} 의 종이 계산된 종과 다릅니다.")
        named, gram = entry.decomposition, entry.lattice
        verdict = classifier.DECIDED_TRUE
        notes.append("정부호 종의 클래스 수 1 은 알려진 저계수 격자 목록에 따른 것입니다.")
    else:
        route = ROUTE_DEFINITE_UNDECIDED
        named, gram = classifier.standard_representative(genus, **search_options)
        verdict = classifier.UNDECIDED
        notes.append("정부호 종에는 둘 이상의 동형류가 있을 수 있어 대표 격자만 제시합니다.")

    logger.info(f"원시 격자 경로: {route}, 부호수 {genus.signature}, 분해: {named if named is not None else '이름 없음'}")
    return PrimitiveLatticeResult(
        invariants=inv,
        intersection=ambient,
        genus=genus,
        named=named,
        gram=gram,
        class_number_one=verdict,
        route=route,
        notes=tuple(notes),
    )


# --- 블로업 ---

def blow_up_invariants(inv: SurfaceInvariants) -> SurfaceInvariants:
    """
    한 점 블로업: c1² - 1, c2 + 1, b1 은 그대로입니다.
    블로업한 곡면의 교차 격자는 항상 홀 격자입니다.
    """
    return derive_invariants(inv.b1, inv.c1sq - 1, inv.c2 + 1)


def blow_up_lattice(expr: NamedDecomposition) -> NamedDecomposition:
    """H_X̃ = H_X ⊥ ⟨-1⟩."""
    return decomposition(list(expr.blocks) + [(Block("diag", -1), 1)])


# --- 불변량 표 ---

@dataclass(frozen=True)
class CandidateRow:
    chi: int
    c2: int
    pairs: Tuple[Tuple[int, int], ...]
    st: Optional[Tuple[int, int]] = None

    def to_json(self) -> Dict[str, Any]:
        return {
            "chi": self.chi,
            "c2": self.c2,
            "pg_q": [list(p) for p in self.pairs],
            "st": list(self.st) if self.st is not None else None,
        }


def st_pair(inv: SurfaceInvariants) -> Optional[Tuple[int, int]]:
    """
    c1² = 1 이고 h = K 일 때 P_X ≅ U^s ⊥ E8(-1)^t 의 지수 (s, t).
    그 밖의 경우나 지수가 정수가 아니면 None 입니다.
    """
    if inv.c1sq != 1:
        return None
    s = 2 * inv.pg
    rest = inv.h11 - 1 - s
    if rest < 0 or rest % 8:
        return None
    return s, rest // 8


def enumerate_candidates(c1sq: int) -> List[CandidateRow]:
    """
    K 가 ample 인 극소 일반형 곡면에 대해 가능한 (χ, c2, (p_g, q)) 를 나열합니다.

    조건: 뇌터 공식, 뇌터 부등식, 드바르 부등식, BMY 부등식, χ ≥ 1.

    Raises:
        OutOfRange: c1² < 1 인 경우
    """
    c1sq = int(c1sq)
    if c1sq < 1:
        raise errors.OutOfRange(f"일반형 곡면의 c1² 는 양수여야 합니다: {c1sq}")
    pg_max = c1sq // 2 + 2
    raw = []
    for chi in range(1, pg_max + 2):
        for pg in range(chi - 1, pg_max + 1):
            q = pg + 1 - chi
            raw.append({"chi": chi, "c1sq": c1sq, "c2": 12 * chi - c1sq, "pg": pg, "q": q})

    rows = []
    for chi, group in filters.group_by_chi(filters.apply_all_filters(raw)).items():
        pairs = tuple((c["pg"], c["q"]) for c in group)
        c2 = group[0]["c2"]
        st = None
        if c1sq == 1:
            st = st_pair(SurfaceInvariants(2 * pairs[0][1], c1sq, c2))
        rows.append(CandidateRow(chi, c2, pairs, st))
    logger.info(f"c1²={c1sq} 후보 표: {len(rows)}행")
    return rows


# --- 엔리케스 분류 ---

@dataclass(frozen=True)
class EnriquesClassRow:
    """분류 표의 한 줄. 값은 표에 적힌 그대로의 문자열 (g 는 선직 곡면의 종수)."""

    name: str
    kodaira: str
    b1: str
    pg: str
    c1sq: str
    c2: str

    def to_json(self) -> Dict[str, str]:
        return {
            "name": self.name, "kodaira": self.kodaira, "b1": self.b1,
            "pg": self.pg, "c1sq": self.c1sq, "c2": self.c2,
        }


ENRIQUES_CLASSES: Dict[str, EnriquesClassRow] = {
    row.name: row
    for row in (
        EnriquesClassRow("rational", "-inf", "0", "0", "8 or 9", "4 or 3"),
        EnriquesClassRow("ruled", "-inf", "2g", "0", "8(1-g)", "4(1-g)"),
        EnriquesClassRow("torus", "0", "4", "2", "0", "0"),
        EnriquesClassRow("K3", "0", "0", "1", "0", "24"),
        EnriquesClassRow("Enriques", "0", "0", "0", "0", "12"),
        EnriquesClassRow("bielliptic", "0", "2", "0", "0", "0"),
        EnriquesClassRow("properly-elliptic", "1", "", "", "0", ">=0"),
        EnriquesClassRow("general-type", "2", "", "", ">0", ">0"),
    )
}


def enriques_class_row(name: str) -> EnriquesClassRow:
    """
    Raises:
        UnknownClass: 표에 없는 이름인 경우
    """
    for key, row in ENRIQUES_CLASSES.items():
        if key.lower() == str(name).lower():
            return row
    raise errors.UnknownClass(f"알 수 없는 곡면 분류입니다: {name} (가능한 값: {', '.join(ENRIQUES_CLASSES)})")


def minimal_invariants_for_class(name: str, genus: Optional[int] = None) -> List[SurfaceInvariants]:
    """
    분류 표의 (b1, c1², c2) 를 구체적인 불변량으로 바꿉니다.
    유리 곡면은 두 가지 (P² 와 히르체브루흐 곡면), 선직 곡면은 genus (≥ 1) 가 필요합니다.

    Raises:
        UnknownClass: 이름이 없거나 표의 값이 하나로 정해지지 않는 분류인 경우
    """
    row = enriques_class_row(name)
    if row.name == "rational":
        triples = [(0, 9, 3), (0, 8, 4)]
    elif row.name == "ruled":
        if genus is None or int(genus) < 1:
            raise errors.UnknownClass("선직 곡면은 종수 g ≥ 1 을 지정해야 합니다 (--genus).")
        g = int(genus)
        triples = [(2 * g, 8 * (1 - g), 4 * (1 - g))]
    elif row.name in ("properly-elliptic", "general-type"):
        raise errors.UnknownClass(f"'{row.name}' 분류는 표에서 불변량이 하나로 정해지지 않습니다.")
    else:
        triples = [(int(row.b1), int(row.c1sq), int(row.c2))]
    return [derive_invariants(*t) for t in triples]
