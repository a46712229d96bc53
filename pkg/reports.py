"""
예제 표 생성 모듈

이 모듈은 계산 결과를 정렬된 텍스트 표로 만듭니다.
- c1² 별 가능한 불변량 표 (ex1, ex2, candidates)
- 정준 편극 곡면의 음의 정부호 원시 격자 표 (table1)
- K3 / 엔리케스 곡면의 교차 격자와 원시 격자 (k3, enriques)

표의 틀은 templates/table.txt.j2 이고, 열 너비 맞춤은 여기서 합니다.
같은 입력이면 출력은 바이트 단위로 같습니다.
"""

import logging
import os
from typing import Any, Dict, List, Optional, Sequence

from jinja2 import Environment, FileSystemLoader

import surfaces
from data_manager import Settings
from lattices import classifier, discforms, errors, oracle
from lattices.lattice_core import orthogonal_complement, parse_decomposition, standard

logger = logging.getLogger(__name__)

TEMPLATE_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "templates")
TABLES = ("ex1", "ex2", "table1", "k3", "enriques", "candidates")

_env = Environment(
    loader=FileSystemLoader(TEMPLATE_DIR),
    trim_blocks=True,
    keep_trailing_newline=True,
    autoescape=False,
)


def format_row(cells: Sequence[str], widths: Sequence[int]) -> str:
    return " | ".join(str(cell).ljust(width) for cell, width in zip(cells, widths)).rstrip()


def render_table(title: str, headers: Sequence[str], rows: Sequence[Sequence[Any]], notes: Sequence[str] = ()) -> str:
    """
    제목, 머리글, 행, 주석으로 텍스트 표를 만듭니다.

    Args:
        title (str): 표 제목
        headers (list): 열 이름
        rows (list): 각 행의 칸 값 (문자열로 변환됨)
        notes (list): 표 아래에 붙일 주석

    Returns:
        str: 줄바꿈으로 끝나는 표 텍스트
    """
    cells = [[str(c) for c in row] for row in rows]
    widths = [max([len(h)] + [len(row[i]) for row in cells]) for i, h in enumerate(headers)]
    rule = "-" * (sum(widths) + 3 * (len(widths) - 1))
    template = _env.get_template("table.txt.j2")
    return template.render(
        title=title,
        rule=rule,
        header=format_row(headers, widths),
        lines=[format_row(row, widths) for row in cells],
        notes=list(notes),
    )


def _pair(pair: Sequence[int]) -> str:
    return f"({pair[0]},{pair[1]})"


def _options(settings: Optional[Settings]) -> Dict[str, int]:
    return (settings or Settings()).search_options()


def _canonical_primitive(c1sq: int, c2: int, q: int, options: Dict[str, int]) -> str:
    """h = K 일 때 P_X 의 이름. 정리가 적용되지 않으면 오류 이름을 적습니다."""
    try:
        inv = surfaces.derive_invariants(2 * q, c1sq, c2)
        result = surfaces.primitive_lattice(
            inv, even=False, hsq=c1sq, h_characteristic=True, canonically_polarized=True, **options
        )
    except errors.LatticeError as e:
        logger.warning(f"c1²={c1sq}, c2={c2}, q={q}: {type(e).__name__} - {e}")
        return type(e).__name__
    return str(result.named) if result.named is not None else "unnamed"


def candidates_table(c1sq: int, settings: Optional[Settings] = None) -> str:
    """c1² 에 대해 가능한 (χ, c2, (p_g, q)) 와 P_X 를 표로 만듭니다."""
    options = _options(settings)
    headers = ["chi", "c2", "(pg,q)"] + (["(s,t)"] if c1sq == 1 else []) + ["P_X"]
    rows = []
    for row in surfaces.enumerate_candidates(c1sq):
        cells: List[Any] = [row.chi, row.c2, ", ".join(_pair(p) for p in row.pairs)]
        if c1sq == 1:
            cells.append(_pair(row.st) if row.st is not None else "-")
        cells.append("; ".join(_canonical_primitive(c1sq, row.c2, q, options) for _, q in row.pairs))
        rows.append(cells)

    notes = ["조건: 뇌터 공식, 뇌터 부등식, 드바르 부등식 (q > 0), BMY 부등식"]
    if c1sq == 1:
        notes.append("P_X = U^s + E8(-1)^t")
    notes.append("P_X 는 홀 교차 격자 H_X 안에서 특성 원소 K 의 직교 여공간입니다.")
    return render_table(f"c1² = {c1sq} 인 정준 편극 곡면의 가능한 불변량 (h = K)", headers, rows, notes)


def table1_table() -> str:
    """
    c1² = 1..8 카탈로그를 인쇄된 판별식 형식과 계산된 형식으로 비교합니다.
    computed 열은 canonical_cyclic 대표입니다.
    """
    headers = ["c1^2", "rank", "|det|", "lattice", "printed", "computed", "-<1/k>", "status"]
    rows = []
    for entry in classifier.catalog_entries():
        lattice = entry.lattice
        computed = discforms.disc_bilinear(lattice)
        required_ok = discforms.forms_isomorphic(computed, entry.required_bilinear())
        printed_ok = discforms.forms_isomorphic(computed, entry.printed_bilinear())
        if printed_ok == entry.printed_misprint:
            logger.warning(f"c1²={entry.c1sq}: 인쇄된 형식 비교 결과가 카탈로그 표시와 다릅니다.")
        rows.append([
            entry.c1sq,
            lattice.rank,
            abs(lattice.determinant),
            entry.label,
            entry.printed_form,
            discforms.render_form(discforms.canonical_cyclic(computed)),
            "yes" if required_ok else "no",
            "ok" if printed_ok else "misprint",
        ])
    notes = [
        "computed: 판별식 쌍선형 형식 (mod 1) 을 u²a 중 분자가 가장 작은 ⟨a/k⟩ 로 나타낸 값",
        "-<1/k>: 여공간이 가져야 하는 형식 -⟨1/k⟩ 와 동형인지 여부",
        "misprint: 인쇄된 형식이 격자의 판별식 형식과 부호가 반대인 줄",
    ]
    return render_table("정준 편극 곡면 (p_g = 0, χ = 1) 의 음의 정부호 원시 격자 P_X", headers, rows, notes)


def _invariant_rows(inv: surfaces.SurfaceInvariants) -> List[List[Any]]:
    return [
        ["b1", inv.b1],
        ["c1^2", inv.c1sq],
        ["c2", inv.c2],
        ["q", inv.q],
        ["pg", inv.pg],
        ["chi", inv.chi],
        ["tau", inv.tau],
        ["b2", inv.b2],
        ["signature", _pair(inv.signature)],
    ]


def k3_table(settings: Optional[Settings] = None) -> str:
    """K3 곡면의 교차 격자와 차수 2 편극의 원시 격자."""
    inv = surfaces.derive_invariants(0, 0, 24)
    result = surfaces.primitive_lattice(inv, even=True, hsq=2, h_characteristic=False, **_options(settings))
    rows = _invariant_rows(inv) + [
        ["H_X", result.intersection],
        ["P_X (h.h = 2)", result.named if result.named is not None else "unnamed"],
        ["P_X signature", _pair(result.genus.signature)],
        ["class number 1", str(result.class_number_one.to_json()).lower()],
        ["route", result.route],
    ]
    notes = ["K3 곡면은 c1 = 0 이므로 H_X 는 짝 유니모듈러 격자입니다."]
    return render_table("K3 곡면 (b1, c1², c2) = (0, 0, 24)", ["quantity", "value"], rows, notes)


def enriques_table(settings: Optional[Settings] = None) -> str:
    """
    엔리케스 곡면: H_X = U + E8(-1) 안에서 노름 2 인 원시 벡터의 여공간을
    ⟨-2⟩ + E8(-1) 과 종 비교 및 동형 사상으로 확인합니다.
    """
    settings = settings or Settings()
    inv = surfaces.derive_invariants(0, 0, 12)
    result = surfaces.primitive_lattice(inv, even=True, hsq=2, h_characteristic=False, **settings.search_options())

    ambient = standard(result.intersection)
    vector = oracle.find_primitive_vector(
        ambient, 2, False, bound_start=settings.vector_bound_start, bound_max=settings.vector_bound_max
    )
    complement, _ = orthogonal_complement(ambient, vector)
    expected = standard(parse_decomposition("<-2> + E8(-1)"))
    same_genus = classifier.genus_equal(classifier.genus_of(complement), classifier.genus_of(expected))
    witness = oracle.isometry_small(complement, expected, budget=settings.search_budget)

    rows = _invariant_rows(inv) + [
        ["H_X", result.intersection],
        ["h", vector],
        ["P_X", result.named if result.named is not None else "unnamed"],
        ["P_X signature", _pair(result.genus.signature)],
        ["same genus", "yes" if same_genus else "no"],
        ["isometry witness", "found" if witness is not None else "none"],
        ["class number 1", str(result.class_number_one.to_json()).lower()],
        ["route", result.route],
    ]
    notes = [
        "음의 정부호 종 <-2> + E8(-1) 의 클래스 수 1 은 알려진 저계수 분류 결과이며 여기서 다시 계산하지 않습니다.",
        "h = d·e + f (d ≠ ±1) 이면 여공간의 종에는 둘 이상의 동형류가 있습니다.",
        "부호를 바꾼 계수 9 짝 정부호 격자 중 클래스 수 1 인 것은 E8 + <2> 와 판별식 8 의 분해되지 않는 격자 G9 뿐이며, G9 는 E8 + <8> 과 동형이 아닙니다.",
    ]
    return render_table("엔리케스 곡면 (b1, c1², c2) = (0, 0, 12)", ["quantity", "value"], rows, notes)


def reproduce(table: str, settings: Optional[Settings] = None, c1sq: Optional[int] = None) -> str:
    """
    이름으로 표를 만듭니다.

    Raises:
        ValidationError: 알 수 없는 표 이름이거나 candidates 에 c1sq 가 없는 경우
    """
    logger.info(f"'{table}' 표를 생성합니다.")
    if table == "ex1":
        return candidates_table(1, settings)
    if table == "ex2":
        return candidates_table(2, settings)
    if table == "table1":
        return table1_table()
    if table == "k3":
        return k3_table(settings)
    if table == "enriques":
        return enriques_table(settings)
    if table == "candidates":
        if c1sq is None:
            raise errors.ValidationError("candidates 표에는 --c1sq 가 필요합니다.")
        return candidates_table(int(c1sq), settings)
    raise errors.ValidationError(f"알 수 없는 표입니다: {table} (가능한 값: {', '.join(TABLES)})")
