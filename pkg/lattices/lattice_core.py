"""
정수 격자 기본 연산 모듈

정수 그람 행렬로 주어진 격자를 다룹니다.
- 격자 생성 및 검증 (대칭성, 비퇴화성)
- 표준 블록 ⟨a⟩, U, A_n, D_n, E_6/E_7/E_8 과 이름 있는 분해
- 계수, 행렬식, 부호수, 짝/홀 판정, 스케일링, 직교합
- 특성 원소(characteristic element) 판정과 탐색
- 원시 벡터 판정과 직교 여공간 계산

모든 계산은 정수와 정확한 유리수(sympy.Rational)로만 수행합니다.
"""

import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from math import gcd
from typing import Dict, Iterable, List, Sequence, Tuple

from sympy import Rational

from lattices import errors
from lattices.normal_forms import determinant, integer_kernel, mat_mul, solve_mod2, transpose

logger = logging.getLogger(__name__)

LatticeVector = Tuple[int, ...]


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"


@dataclass(frozen=True)
class Lattice:
    """고정된 기저 위의 비퇴화 대칭 정수 그람 행렬."""

    gram: Tuple[Tuple[int, ...], ...]

    @cached_property
    def determinant(self) -> int:
        return determinant(self.gram)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def rows(self) -> List[List[int]]:
        return [list(row) for row in self.gram]

    def to_json(self) -> Dict[str, List[List[int]]]:
        return {"gram": self.rows()}


def make_lattice(gram: Sequence[Sequence[int]]) -> Lattice:
    """
    정수 행렬로부터 격자를 생성합니다.

    Args:
        gram: 정사각 정수 행렬

    Returns:
        Lattice: 검증된 격자

    Raises:
        DimensionMismatch: 정사각 행렬이 아닌 경우
        NonSymmetric: 대칭이 아닌 경우
        Degenerate: 행렬식이 0 인 경우
    """
    rows = [tuple(int(x) for x in row) for row in gram]
    size = len(rows)
    if any(len(row) != size for row in rows):
        raise errors.DimensionMismatch(f"그람 행렬이 정사각 행렬이 아닙니다: {size}행, 열 길이 {[len(r) for r in rows]}")
    for i in range(size):
        for j in range(i + 1, size):
            if rows[i][j] != rows[j][i]:
                raise errors.NonSymmetric(f"그람 행렬이 대칭이 아닙니다: ({i},{j}) = {rows[i][j]}, ({j},{i}) = {rows[j][i]}")
    lattice = Lattice(tuple(rows))
    if lattice.determinant == 0:
        raise errors.Degenerate("그람 행렬의 행렬식이 0 입니다 (퇴화된 형식).")
    return lattice


# --- 표준 블록 ---

# E8 의 콕세터 행렬 (Bourbaki 번호). E6, E7 은 앞쪽 주소행렬입니다.
E8_GRAM = (
    (2, 0, -1, 0, 0, 0, 0, 0),
    (0, 2, 0, -1, 0, 0, 0, 0),
    (-1, 0, 2, -1, 0, 0, 0, 0),
    (0, -1, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, 0),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, -1),
    (0, 0, 0, 0, 0, 0, -1, 2),
)

BLOCK_KINDS = ("diag", "U", "A", "D", "E")


@dataclass(frozen=True, order=True)
class Block:
    """이름 있는 분해의 한 블록. diag 는 param 이 대각 성분, U 는 param 0, A/D/E 는 param 이 첨자입니다."""

    kind: str
    param: int
    scale: int = 1

    def sort_key(self) -> Tuple[int, int, int]:
        return (BLOCK_KINDS.index(self.kind), self.param, self.scale)

    def label(self) -> str:
        if self.kind == "diag":
            base = f"<{self.param}>"
        elif self.kind == "U":
            base = "U"
        else:
            base = f"{self.kind}{self.param}"
        if self.scale != 1:
            base += f"({self.scale})"
        return base


@dataclass(frozen=True)
class NamedDecomposition:
    """표준 블록의 중복집합. blocks 는 (블록, 중복도) 쌍을 정렬된 순서로 가집니다."""

    blocks: Tuple[Tuple[Block, int], ...] = field(default_factory=tuple)

    def __str__(self) -> str:
        return format_decomposition(self)

    def multiset(self) -> Dict[Block, int]:
        return dict(self.blocks)


def _validate_block(block: Block, multiplicity: int):
    if block.kind not in BLOCK_KINDS:
        raise errors.UnknownBlock(f"알 수 없는 블록 종류입니다: {block.kind}")
    if block.scale == 0:
        raise errors.UnknownBlock("블록 스케일은 0 이 될 수 없습니다.")
    if multiplicity < 1:
        raise errors.UnknownBlock(f"중복도는 1 이상이어야 합니다: {multiplicity}")
    if block.kind == "diag" and block.param == 0:
        raise errors.UnknownBlock("⟨0⟩ 블록은 허용되지 않습니다.")
    if block.kind == "A" and block.param < 1:
        raise errors.UnknownBlock(f"A{block.param}: n ≥ 1 이어야 합니다.")
    if block.kind == "D" and block.param < 4:
        raise errors.UnknownBlock(f"D{block.param}: n ≥ 4 이어야 합니다.")
    if block.kind == "E" and block.param not in (6, 7, 8):
        raise errors.UnknownBlock(f"E{block.param}: E6, E7, E8 만 지원합니다.")


def decomposition(items: Iterable[Tuple[Block, int]]) -> NamedDecomposition:
    """
    (블록, 중복도) 목록을 정규화된 분해로 만듭니다.
    ⟨a⟩(m) 은 ⟨a·m⟩ 으로 합치고, 같은 블록의 중복도를 더한 뒤 정렬합니다.
    """
    merged: Dict[Block, int] = {}
    for block, multiplicity in items:
        _validate_block(block, multiplicity)
        if block.kind == "diag" and block.scale != 1:
            block = Block("diag", block.param * block.scale, 1)
        if block.kind == "U":
            block = Block("U", 0, block.scale)
        merged[block] = merged.get(block, 0) + multiplicity
    ordered = sorted(merged.items(), key=lambda item: item[0].sort_key())
    return NamedDecomposition(tuple(ordered))


def block_gram(block: Block) -> List[List[int]]:
    """블록 하나의 그람 행렬(스케일 적용)을 만듭니다."""
    if block.kind == "diag":
        base = [[block.param]]
    elif block.kind == "U":
        base = [[0, 1], [1, 0]]
    elif block.kind == "A":
        n = block.param
        base = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]
    elif block.kind == "D":
        n = block.param
        base = [[0] * n for _ in range(n)]
        for i in range(n):
            base[i][i] = 2
        for i in range(n - 2):
            base[i][i + 1] = base[i + 1][i] = -1
        # 마지막 꼭짓점은 n-3 번 꼭짓점에 연결
        base[n - 1][n - 3] = base[n - 3][n - 1] = -1
    elif block.kind == "E":
        n = block.param
        base = [list(E8_GRAM[i][:n]) for i in range(n)]
    else:
        raise errors.UnknownBlock(f"알 수 없는 블록 종류입니다: {block.kind}")
    return [[block.scale * x for x in row] for row in base]


def standard(expr: NamedDecomposition) -> Lattice:
    """
    이름 있는 분해를 블록 대각 그람 행렬로 펼칩니다.
    블록 순서는 분해의 정렬 순서(⟨a⟩ 오름차순, U, A, D, E, 스케일)를 따릅니다.
    """
    expr = decomposition(expr.blocks)
    grams = []
    for block, multiplicity in expr.blocks:
        grams.extend([block_gram(block)] * multiplicity)
    return make_lattice(_block_diagonal(grams))


def _block_diagonal(blocks: Sequence[Sequence[Sequence[int]]]) -> List[List[int]]:
    size = sum(len(b) for b in blocks)
    result = [[0] * size for _ in range(size)]
    offset = 0
    for b in blocks:
        n = len(b)
        for i in range(n):
            for j in range(n):
                result[offset + i][offset + j] = b[i][j]
        offset += n
    return result


_TERM_RE = re.compile(
    r"^\s*(?:(?P<u>U)|(?P<kind>[ADE])(?P<n>\d+)|[<⟨]\s*(?P<diag>[+-]?\d+)\s*[>⟩])"
    r"\s*(?:\(\s*(?P<scale>[+-]?\d+)\s*\))?"
    r"\s*(?:\^\s*(?P<mult>\d+))?\s*$"
)


def parse_decomposition(text: str) -> NamedDecomposition:
    """
    "U^3 + E8(-1)^2", "<2> + U^5 + E8(-1)^4" 형태의 문자열을 분해로 변환합니다.

    Raises:
        ParseError: 문법에 맞지 않는 항이 있는 경우
    """
    items = []
    normalized = text.replace("⊕", "+").replace("⊥", "+")
    for term in normalized.split("+"):
        if not term.strip():
            raise errors.ParseError(f"빈 항이 있습니다: '{text}'")
        match = _TERM_RE.match(term)
        if not match:
            raise errors.ParseError(f"분해 문법에 맞지 않는 항입니다: '{term.strip()}'")
        scale = int(match.group("scale")) if match.group("scale") else 1
        multiplicity = int(match.group("mult")) if match.group("mult") else 1
        if match.group("u"):
            block = Block("U", 0, scale)
        elif match.group("kind"):
            block = Block(match.group("kind"), int(match.group("n")), scale)
        else:
            block = Block("diag", int(match.group("diag")), scale)
        items.append((block, multiplicity))
    return decomposition(items)


def format_decomposition(expr: NamedDecomposition) -> str:
    parts = []
    for block, multiplicity in expr.blocks:
        label = block.label()
        parts.append(label if multiplicity == 1 else f"{label}^{multiplicity}")
    return " + ".join(parts)


# --- 불변량 ---

def rank(lattice: Lattice) -> int:
    return lattice.rank


def det(lattice: Lattice) -> int:
    return lattice.determinant


def signature(lattice: Lattice) -> Tuple[int, int]:
    """
    격자의 부호수 (b+, b-) 를 계산합니다.

    유리수 대칭 가우스 소거로 대각화합니다. 0 이 아닌 대각 피벗이 없으면
    0 이 아닌 비대각 성분으로 쌍곡 2x2 블록을 떼어내며, 이 블록은 (1,1) 을 기여합니다.
    """
    m = [[Rational(x) for x in row] for row in lattice.gram]
    pos = neg = 0
    while m:
        size = len(m)
        pivot = next((i for i in range(size) if m[i][i] != 0), None)
        if pivot is not None:
            a = m[pivot][pivot]
            if a > 0:
                pos += 1
            else:
                neg += 1
            rest = [k for k in range(size) if k != pivot]
            m = [[m[k][l] - m[k][pivot] * m[pivot][l] / a for l in rest] for k in rest]
            continue

        pair = next(((i, j) for i in range(size) for j in range(i + 1, size) if m[i][j] != 0), None)
        if pair is None:
            raise errors.Degenerate("부호수 계산 중 퇴화된 블록을 만났습니다.")
        i, j = pair
        a = m[i][j]
        pos += 1
        neg += 1
        rest = [k for k in range(size) if k not in (i, j)]
        m = [[m[k][l] - (m[k][i] * m[j][l] + m[k][j] * m[i][l]) / a for l in rest] for k in rest]
    return pos, neg


def index(lattice: Lattice) -> int:
    pos, neg = signature(lattice)
    return pos - neg


def parity(lattice: Lattice) -> Parity:
    """모든 대각 성분이 짝수이면 짝(Even) 격자입니다."""
    if all(lattice.gram[i][i] % 2 == 0 for i in range(lattice.rank)):
        return Parity.EVEN
    return Parity.ODD


def is_unimodular(lattice: Lattice) -> bool:
    return abs(lattice.determinant) == 1


def is_definite(lattice: Lattice) -> bool:
    pos, neg = signature(lattice)
    return pos == 0 or neg == 0


def scale(lattice: Lattice, m: int) -> Lattice:
    """그람 행렬에 m 을 곱한 격자 L(m) 을 만듭니다."""
    if m == 0:
        raise errors.ZeroScale("스케일 m 은 0 이 될 수 없습니다.")
    return make_lattice([[m * x for x in row] for row in lattice.gram])


def orthogonal_sum(first: Lattice, second: Lattice) -> Lattice:
    return make_lattice(_block_diagonal([first.gram, second.gram]))


def change_basis(lattice: Lattice, basis: Sequence[Sequence[int]]) -> Lattice:
    """
    기저 변환 행렬 M (열이 새 기저 벡터) 에 대해 Mᵀ G M 을 그람으로 하는 격자를 만듭니다.
    """
    m = [list(row) for row in basis]
    return make_lattice(mat_mul(mat_mul(transpose(m), lattice.rows()), m))


def inner(lattice: Lattice, x: Sequence[int], y: Sequence[int]) -> int:
    _check_dimension(lattice, x)
    _check_dimension(lattice, y)
    g = lattice.gram
    return sum(x[i] * sum(g[i][j] * y[j] for j in range(lattice.rank)) for i in range(lattice.rank))


def norm(lattice: Lattice, x: Sequence[int]) -> int:
    return inner(lattice, x, x)


def _check_dimension(lattice: Lattice, v: Sequence[int]):
    if len(v) != lattice.rank:
        raise errors.DimensionMismatch(f"벡터 길이 {len(v)} 가 격자 계수 {lattice.rank} 와 다릅니다.")


def _pairing_row(lattice: Lattice, v: Sequence[int]) -> List[int]:
    g = lattice.gram
    return [sum(g[i][j] * v[j] for j in range(lattice.rank)) for i in range(lattice.rank)]


# --- 특성 원소 ---

def is_characteristic(lattice: Lattice, c: Sequence[int]) -> bool:
    """모든 기저 벡터 b_i 에 대해 c·b_i ≡ b_i·b_i (mod 2) 인지 확인합니다."""
    _check_dimension(lattice, c)
    row = _pairing_row(lattice, c)
    return all((row[i] - lattice.gram[i][i]) % 2 == 0 for i in range(lattice.rank))


def find_characteristic(lattice: Lattice) -> LatticeVector:
    """
    2원소체 위의 연립방정식 G c ≡ diag(G) 를 풀어 특성 원소를 찾습니다.
    성분은 0 또는 1 입니다.

    Raises:
        NoCharacteristicElement: 해가 없는 경우 (행렬식이 홀수이면 일어나지 않음)
    """
    diagonal = [lattice.gram[i][i] for i in range(lattice.rank)]
    solution = solve_mod2(lattice.gram, diagonal)
    if solution is None:
        raise errors.NoCharacteristicElement("특성 원소가 존재하지 않습니다 (mod 2 연립방정식 불능).")
    return tuple(solution)


# --- 원시 벡터와 직교 여공간 ---

def is_primitive(lattice: Lattice, v: Sequence[int]) -> bool:
    _check_dimension(lattice, v)
    if not any(v):
        raise errors.ZeroVector("영벡터는 원시성을 판정할 수 없습니다.")
    g = 0
    for x in v:
        g = gcd(g, x)
    return g == 1


def orthogonal_complement_sublattice(
    lattice: Lattice, vectors: Sequence[Sequence[int]]
) -> Tuple[Lattice, List[LatticeVector]]:
    """
    벡터들이 생성하는 부분격자의 직교 여공간을 구합니다.

    Returns:
        tuple: (여공간 격자, 주변 격자 좌표로 표현한 여공간 기저)
    """
    for v in vectors:
        _check_dimension(lattice, v)
    rows = [_pairing_row(lattice, v) for v in vectors]
    basis = integer_kernel(rows, ambient_rank=lattice.rank)
    g = lattice.rows()
    gram = [[sum(x[i] * sum(g[i][j] * y[j] for j in range(lattice.rank)) for i in range(lattice.rank))
             for y in basis] for x in basis]
    return make_lattice(gram), [tuple(b) for b in basis]


def orthogonal_complement(lattice: Lattice, v: Sequence[int]) -> Tuple[Lattice, List[LatticeVector]]:
    """
    원시 비등방 벡터 v 의 직교 여공간 v⊥ 을 계산합니다.

    Raises:
        NotPrimitive: v 가 원시 벡터가 아닌 경우
        IsotropicVector: v·v = 0 인 경우
    """
    if not is_primitive(lattice, v):
        raise errors.NotPrimitive(f"벡터 {tuple(v)} 는 원시 벡터가 아닙니다.")
    if norm(lattice, v) == 0:
        raise errors.IsotropicVector(f"벡터 {tuple(v)} 는 등방 벡터입니다 (v·v = 0).")
    complement, basis = orthogonal_complement_sublattice(lattice, [v])
    logger.debug(f"직교 여공간 계산 완료: 계수 {complement.rank}, 행렬식 {complement.determinant}")
    return complement, basis


def blocks_signature(expr: NamedDecomposition) -> Tuple[int, int]:
    """분해를 펼치지 않고 부호수를 계산합니다."""
    pos = neg = 0
    for block, multiplicity in expr.blocks:
        if block.kind == "U":
            p, n = 1, 1
        elif block.kind == "diag":
            p, n = (1, 0) if block.param > 0 else (0, 1)
        else:
            size = block.param
            p, n = (size, 0) if block.scale > 0 else (0, size)
        pos += p * multiplicity
        neg += n * multiplicity
    return pos, neg
