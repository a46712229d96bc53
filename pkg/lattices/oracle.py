"""
독립 검증(oracle) 모듈

판별식 형식과 종 비교와는 다른 경로로 결과를 확인하는 전수 탐색 도구입니다.
- 짧은 벡터 열거 (정확한 유리수 Fincke-Pohst)
- 작은 계수 격자의 동형 사상 탐색 (되추적)
- 원시 벡터 탐색 (주어진 노름과 특성 여부)
- 판별식 이차 형식 값 표의 직접 계산
- 테스트용 무작위 유니모듈러 행렬
"""

import itertools
import logging
import random
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from sympy import Matrix, Rational, ceiling, floor

from lattices import errors
from lattices.discforms import DEFAULT_GROUP_LIMIT
from lattices.lattice_core import (
    Lattice,
    LatticeVector,
    Parity,
    is_characteristic,
    is_definite,
    norm,
    parity,
    signature,
)
from lattices.normal_forms import identity, mat_mul, transpose

logger = logging.getLogger(__name__)

DEFAULT_SEARCH_BUDGET = 10_000_000
SHORT_VECTOR_MAX_RANK = 10
ISOMETRY_MAX_RANK = 9
INDEFINITE_MAX_RANK = 4


@dataclass(frozen=True)
class IsometryWitness:
    """Mᵀ·G₁·M = G₂ 를 만족하는 기저 변환 행렬."""

    matrix: Tuple[Tuple[int, ...], ...]

    def verify(self, first: Lattice, second: Lattice) -> bool:
        m = [list(row) for row in self.matrix]
        return mat_mul(mat_mul(transpose(m), first.rows()), m) == second.rows()


# --- 짧은 벡터 ---

def _ldl(gram: Sequence[Sequence[int]]) -> List[List[Rational]]:
    """양의 정부호 그람의 이차 보완 분해. Q(x) = Σ q_ii (x_i + Σ_{j>i} q_ij x_j)²."""
    n = len(gram)
    q = [[Rational(x) for x in row] for row in gram]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def _integer_window(center: Rational, radius_sq: Rational) -> range:
    """(x - center)² ≤ radius_sq 를 만족하는 정수 x 의 범위."""
    if radius_sq < 0:
        return range(0)
    slack = isqrt(int(floor(radius_sq))) + 1
    low = int(floor(center)) - slack
    high = int(ceiling(center)) + slack
    while low <= high and (low - center) ** 2 > radius_sq:
        low += 1
    while high >= low and (high - center) ** 2 > radius_sq:
        high -= 1
    return range(low, high + 1)


def _enumerate_short(gram: Sequence[Sequence[int]], bound: int) -> Iterator[Tuple[int, ...]]:
    n = len(gram)
    q = _ldl(gram)
    x = [0] * n

    def descend(i: int, remaining: Rational) -> Iterator[Tuple[int, ...]]:
        if i < 0:
            yield tuple(x)
            return
        center = -sum((q[i][j] * x[j] for j in range(i + 1, n)), Rational(0))
        for value in _integer_window(center, remaining / q[i][i]):
            x[i] = value
            used = q[i][i] * (value - center) ** 2
            yield from descend(i - 1, remaining - used)
        x[i] = 0

    yield from descend(n - 1, Rational(bound))


def short_vectors(lattice: Lattice, bound: int) -> List[Tuple[LatticeVector, int]]:
    """
    정부호 격자에서 |x·x| ≤ bound 인 0 이 아닌 벡터를 부호 하나씩만 나열합니다.

    Args:
        lattice: 정부호 격자 (계수 10 이하)
        bound: 노름 절댓값 상한

    Returns:
        list: (벡터, 노름) 목록. |노름| 오름차순, 같은 노름 안에서는 사전순입니다.

    Raises:
        IndefiniteInput: 부정치 격자인 경우
        RankTooLarge: 계수가 10 을 넘는 경우
    """
    if not is_definite(lattice):
        raise errors.IndefiniteInput("짧은 벡터 열거는 정부호 격자에서만 가능합니다.")
    if lattice.rank > SHORT_VECTOR_MAX_RANK:
        raise errors.RankTooLarge(f"계수 {lattice.rank} 는 짧은 벡터 열거 한도 {SHORT_VECTOR_MAX_RANK} 를 넘습니다.")
    sign = 1 if signature(lattice)[0] > 0 else -1
    gram = [[sign * x for x in row] for row in lattice.gram]

    found = []
    for vector in _enumerate_short(gram, abs(bound)):
        first = next((c for c in vector if c), 0)
        if first > 0:
            found.append((vector, norm(lattice, vector)))
    found.sort(key=lambda item: (abs(item[1]), item[0]))
    return found


# --- 동형 사상 ---

def _candidate_key(vector: Sequence[int]) -> Tuple:
    # 단위 벡터에 가까운 후보를 먼저 시도
    weight = sum(1 for c in vector if c)
    return (weight, tuple(-abs(c) for c in vector), tuple(-c for c in vector))


def _backtrack(
    source: Lattice, target_gram: Sequence[Sequence[int]], pools: List[List[LatticeVector]], budget: int
) -> Optional[List[LatticeVector]]:
    """
    source 안에서 그람이 target_gram 인 벡터 열을 찾습니다.
    pools[i] 는 i 번째 벡터의 후보 목록입니다.
    """
    n = len(target_gram)
    images: List[LatticeVector] = []
    nodes = 0

    def extend(i: int) -> bool:
        nonlocal nodes
        if i == n:
            return True
        for candidate in pools[i]:
            nodes += 1
            if nodes > budget:
                raise errors.SearchBudgetExceeded(f"동형 사상 탐색이 노드 한도 {budget} 를 넘었습니다.")
            if all(_inner(source, images[j], candidate) == target_gram[j][i] for j in range(i)):
                images.append(candidate)
                if extend(i + 1):
                    return True
                images.pop()
        return False

    found = extend(0)
    logger.debug(f"동형 사상 탐색 노드 수: {nodes}")
    return images if found else None


def _inner(lattice: Lattice, x: Sequence[int], y: Sequence[int]) -> int:
    g = lattice.gram
    n = lattice.rank
    return sum(x[i] * g[i][j] * y[j] for i in range(n) if x[i] for j in range(n) if y[j])


def _definite_pools(source: Lattice, target: Lattice) -> List[List[LatticeVector]]:
    bound = max(abs(target.gram[i][i]) for i in range(target.rank))
    vectors = short_vectors(source, bound)
    by_norm: Dict[int, List[LatticeVector]] = {}
    for vector, value in vectors:
        by_norm.setdefault(value, []).append(vector)
        by_norm[value].append(tuple(-c for c in vector))
    pools = []
    for i in range(target.rank):
        pool = sorted(by_norm.get(target.gram[i][i], []), key=_candidate_key)
        pools.append(pool)
    return pools


def _box_pools(source: Lattice, target: Lattice, box: int) -> List[List[LatticeVector]]:
    by_norm: Dict[int, List[LatticeVector]] = {}
    for vector in itertools.product(range(-box, box + 1), repeat=source.rank):
        if any(vector):
            by_norm.setdefault(norm(source, vector), []).append(vector)
    return [sorted(by_norm.get(target.gram[i][i], []), key=_candidate_key) for i in range(target.rank)]


def _invert(matrix: Sequence[Sequence[int]]) -> List[List[int]]:
    inverse = Matrix(matrix).inv()
    return [[int(inverse[i, j]) for j in range(inverse.cols)] for i in range(inverse.rows)]


def isometry_small(
    first: Lattice, second: Lattice, budget: int = DEFAULT_SEARCH_BUDGET, indefinite_box: int = 3
) -> Optional[IsometryWitness]:
    """
    작은 계수의 두 격자 사이의 동형 사상을 찾습니다.

    정부호(계수 9 이하) 격자는 짧은 벡터 중 노름이 맞는 것으로, 계수 4 이하 부정치 격자는
    좌표 상자 안의 벡터로 기저의 상을 되추적합니다. 종이 다르면 바로 None 을 돌려줍니다.

    Returns:
        IsometryWitness | None: Mᵀ·G₁·M = G₂ 인 M, 또는 동형이 아니면 None

    Raises:
        RankTooLarge: 지원 범위를 넘는 계수
        SearchBudgetExceeded: 노드 한도를 넘었거나 부정치 상자 탐색이 실패한 경우
    """
    from lattices.classifier import genus_equal, genus_of

    if first.rank != second.rank or abs(first.determinant) != abs(second.determinant):
        return None
    if first.gram == second.gram:
        return IsometryWitness(tuple(tuple(row) for row in identity(first.rank)))
    try:
        if not genus_equal(genus_of(first), genus_of(second)):
            return None
    except errors.GroupTooLarge:
        if (signature(first), parity(first)) != (signature(second), parity(second)):
            return None

    definite = is_definite(first)
    if definite and first.rank > ISOMETRY_MAX_RANK:
        raise errors.RankTooLarge(f"정부호 동형 탐색은 계수 {ISOMETRY_MAX_RANK} 이하만 지원합니다.")
    if not definite and first.rank > INDEFINITE_MAX_RANK:
        raise errors.RankTooLarge(f"부정치 동형 탐색은 계수 {INDEFINITE_MAX_RANK} 이하만 지원합니다.")

    # 대각 성분이 작은 쪽을 목표로 삼아 후보 수를 줄임
    max_first = max(abs(first.gram[i][i]) for i in range(first.rank))
    max_second = max(abs(second.gram[i][i]) for i in range(second.rank))
    swap = max_first < max_second
    source, target = (second, first) if swap else (first, second)

    if definite:
        images = _backtrack(source, target.gram, _definite_pools(source, target), budget)
    else:
        images = None
        for box in range(1, indefinite_box + 1):
            images = _backtrack(source, target.gram, _box_pools(source, target, box), budget)
            if images is not None:
                break
        if images is None:
            raise errors.SearchBudgetExceeded(
                f"부정치 격자의 좌표 상자 {indefinite_box} 안에서 동형 사상을 찾지 못했습니다."
            )
    if images is None:
        return None

    m = [[images[j][i] for j in range(len(images))] for i in range(source.rank)]
    if swap:
        m = _invert(m)
    witness = IsometryWitness(tuple(tuple(row) for row in m))
    if not witness.verify(first, second):
        raise errors.LatticeError("동형 사상 검증에 실패했습니다.")
    return witness


# --- 원시 벡터 탐색 ---

def _is_primitive(vector: Sequence[int]) -> bool:
    g = 0
    for c in vector:
        g = gcd(g, c)
    return g == 1


def _hyperbolic_pair(lattice: Lattice) -> Optional[Tuple[int, int]]:
    g = lattice.gram
    for i in range(lattice.rank):
        if g[i][i]:
            continue
        for j in range(lattice.rank):
            if j != i and g[j][j] == 0 and g[i][j] == 1:
                return i, j
    return None


def _square_multisets(slots: int, target: int, bound: int, odd: bool) -> Iterator[List[int]]:
    """
    [0, bound] 의 값 slots 개로 제곱합이 target 인 내림차순 중복집합을 나열합니다.
    odd 이면 모든 값이 홀수입니다.
    """
    values = [v for v in range(bound, -1, -1) if not odd or v % 2]

    def build(remaining_slots: int, remaining: int, ceiling_value: int, prefix: List[int]) -> Iterator[List[int]]:
        if remaining_slots == 0:
            if remaining == 0:
                yield list(prefix)
            return
        for v in values:
            if v > ceiling_value:
                continue
            square = v * v
            if square > remaining:
                continue
            # 남은 칸을 모두 v 로 채워도 부족하면 중단
            if square * remaining_slots < remaining:
                break
            prefix.append(v)
            yield from build(remaining_slots - 1, remaining - square, v, prefix)
            prefix.pop()

    yield from build(slots, target, bound, [])


def _diagonal_search(
    lattice: Lattice, target_norm: int, characteristic: bool, bound: int
) -> Optional[LatticeVector]:
    positive = [i for i in range(lattice.rank) if lattice.gram[i][i] == 1]
    negative = [i for i in range(lattice.rank) if lattice.gram[i][i] == -1]
    p, n = len(positive), len(negative)
    if characteristic and (target_norm - (p - n)) % 8:
        return None
    start = max(target_norm, 0)
    for a in range(start, p * bound * bound + 1):
        b = a - target_norm
        if b > n * bound * bound:
            break
        if characteristic and ((a - p) % 8 or (b - n) % 8):
            continue
        for pos_values in _square_multisets(p, a, bound, characteristic):
            for neg_values in _square_multisets(n, b, bound, characteristic):
                coords = pos_values + neg_values
                if not characteristic and all(c % 2 for c in coords):
                    continue
                if not _is_primitive(coords):
                    continue
                vector = [0] * lattice.rank
                for index, value in zip(positive + negative, coords):
                    vector[index] = value
                return tuple(vector)
    return None


def _box_search(
    lattice: Lattice, target_norm: int, characteristic: bool, bound: int
) -> Optional[LatticeVector]:
    for vector in itertools.product(range(-bound, bound + 1), repeat=lattice.rank):
        if not any(vector) or not _is_primitive(vector):
            continue
        if norm(lattice, vector) == target_norm and is_characteristic(lattice, vector) == characteristic:
            return vector
    return None


def find_primitive_vector(
    lattice: Lattice,
    target_norm: int,
    characteristic: bool,
    bound_start: int = 3,
    bound_max: int = 15,
    box_max_rank: int = 6,
) -> LatticeVector:
    """
    유니모듈러 격자에서 노름이 target_norm 이고 특성 여부가 characteristic 인 원시 벡터를 찾습니다.

    - 쌍곡 평면 U 가 있으면 e + k·f (노름 2k) 를 먼저 시도합니다.
    - ⟨±1⟩ 대각 격자는 양/음 블록별 제곱합 분할로 탐색합니다.
      특성 벡터는 모든 좌표가 홀수, 비특성 벡터는 짝수 좌표가 하나 이상입니다.
    - 정부호 격자는 짧은 벡터 목록에서 고릅니다.
    - 그 밖의 작은 격자는 좌표 상자 탐색입니다.
    좌표 상한은 bound_start 부터 bound_max 까지 늘려 갑니다.

    대각 탐색이 돌려주는 벡터는 사전순 최소가 아닙니다. 양의 블록 제곱합이 작은 것부터,
    같은 제곱합 안에서는 내림차순 좌표 중복집합의 역사전순으로 고르며 좌표는 모두 0 이상입니다.
    상자 탐색은 itertools.product 순서 (좌표 -bound 부터) 입니다.

    Raises:
        NotFoundWithinBound: 상한 안에서 찾지 못한 경우
    """
    target_norm = int(target_norm)
    even = parity(lattice) == Parity.EVEN
    if characteristic and even:
        raise errors.NotFoundWithinBound("짝 유니모듈러 격자의 특성 원소는 2L 에 속하므로 원시 벡터가 될 수 없습니다.")

    pair = _hyperbolic_pair(lattice)
    if pair is not None and target_norm % 2 == 0 and target_norm:
        vector = [0] * lattice.rank
        vector[pair[0]] = 1
        vector[pair[1]] = target_norm // 2
        if is_characteristic(lattice, vector) == characteristic:
            return tuple(vector)

    diagonal = all(
        lattice.gram[i][j] == 0 for i in range(lattice.rank) for j in range(lattice.rank) if i != j
    ) and all(abs(lattice.gram[i][i]) == 1 for i in range(lattice.rank))

    if is_definite(lattice) and lattice.rank <= SHORT_VECTOR_MAX_RANK and not diagonal:
        for vector, value in short_vectors(lattice, abs(target_norm)):
            if value == target_norm and _is_primitive(vector) and is_characteristic(lattice, vector) == characteristic:
                return vector
        raise errors.NotFoundWithinBound(f"노름 {target_norm} 인 원시 벡터가 없습니다.")

    for bound in range(bound_start, bound_max + 1):
        if diagonal:
            vector = _diagonal_search(lattice, target_norm, characteristic, bound)
        elif lattice.rank <= box_max_rank:
            vector = _box_search(lattice, target_norm, characteristic, bound)
        else:
            break
        if vector is not None:
            logger.debug(f"좌표 상한 {bound} 에서 벡터를 찾았습니다: {vector}")
            return vector
        logger.info(f"좌표 상한 {bound} 에서 벡터를 찾지 못했습니다. 상한을 늘립니다.")
    raise errors.NotFoundWithinBound(
        f"노름 {target_norm}, 특성={characteristic} 인 원시 벡터를 좌표 상한 {bound_max} 안에서 찾지 못했습니다."
    )


# --- 판별식 값 표 ---

def disc_form_table(lattice: Lattice, limit: int = DEFAULT_GROUP_LIMIT) -> Dict[Tuple[Rational, ...], Rational]:
    """
    짝 격자의 판별식 이차 형식을 A(L) 의 모든 원소에서 직접 계산합니다.

    쌍대 기저 G⁻¹ 의 열들이 생성하는 군을 좌표 mod 1 로 닫을 때까지 확장하므로
    스미스 정규형을 쓰지 않습니다. 키는 L 기저 좌표의 분수 부분입니다.

    Raises:
        OddLattice: 홀 격자인 경우
        GroupTooLarge: |det| 가 limit 를 넘는 경우
    """
    if parity(lattice) != Parity.EVEN:
        raise errors.OddLattice("판별식 이차 형식 값 표는 짝 격자에서만 계산합니다.")
    if abs(lattice.determinant) > limit:
        raise errors.GroupTooLarge(f"판별식 군의 크기 {abs(lattice.determinant)} 가 한도 {limit} 를 넘습니다.")
    n = lattice.rank
    inverse = Matrix(lattice.rows()).inv()
    generators = [tuple(inverse[i, j] % 1 for i in range(n)) for j in range(n)]

    zero = tuple(Rational(0) for _ in range(n))
    seen = {zero}
    frontier = [zero]
    while frontier:
        next_frontier = []
        for element in frontier:
            for generator in generators:
                total = tuple((a + b) % 1 for a, b in zip(element, generator))
                if total not in seen:
                    seen.add(total)
                    next_frontier.append(total)
        frontier = next_frontier

    g = lattice.gram
    table = {}
    for element in sorted(seen):
        value = sum((element[i] * g[i][j] * element[j] for i in range(n) for j in range(n)), Rational(0))
        table[element] = value % 2
    return table


def random_unimodular(rank: int, rng: random.Random, steps: int = 12) -> List[List[int]]:
    """행 덧셈과 교환을 무작위로 합성한 유니모듈러 정수 행렬."""
    m = identity(rank)
    if rank < 2:
        return [[rng.choice((1, -1))]] if rank else []
    for _ in range(steps):
        i, j = rng.sample(range(rank), 2)
        action = rng.random()
        if action < 0.15:
            m[i], m[j] = m[j], m[i]
        elif action < 0.25:
            m[i] = [-x for x in m[i]]
        else:
            factor = rng.choice((-1, 1))
            m[i] = [a + factor * b for a, b in zip(m[i], m[j])]
    return m
