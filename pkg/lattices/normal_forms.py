"""
정수 행렬 정규형 모듈

격자 계산에 필요한 정수 행렬 연산을 sympy 위에서 제공합니다.
- 스미스 정규형 (좌/우 변환 행렬 포함)
- 스미스 분해의 우변환을 이용한 정수 핵(kernel) 기저
- 정확한 행렬식
- 2원소체 위의 연립방정식 풀이

sympy 행렬을 파이썬 정수 리스트로 바꿔 돌려주므로 호출하는 쪽은 sympy 타입을 다루지 않습니다.
"""

import logging
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors as _sympy_invariant_factors
from sympy.matrices.normalforms import smith_normal_decomp
from sympy.polys.domains import GF, ZZ
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)

IntMatrix = List[List[int]]

_F2 = GF(2)


def identity(size: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(size)] for i in range(size)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    """두 정수 행렬의 곱을 계산합니다."""
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def transpose(a: Sequence[Sequence[int]]) -> IntMatrix:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def _to_ints(matrix: Matrix) -> IntMatrix:
    return [[int(matrix[i, j]) for j in range(matrix.cols)] for i in range(matrix.rows)]


def determinant(matrix: Sequence[Sequence[int]]) -> int:
    """
    정수 정사각 행렬의 행렬식을 정확하게 계산합니다.

    Args:
        matrix: 정수 정사각 행렬

    Returns:
        int: 행렬식 (빈 행렬이면 1)
    """
    size = len(matrix)
    if size == 0:
        return 1
    dm = DomainMatrix([[ZZ(int(x)) for x in row] for row in matrix], (size, size), ZZ)
    return int(dm.det())


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> Tuple[List[int], IntMatrix, IntMatrix]:
    """
    정수 행렬의 스미스 정규형과 변환 행렬을 계산합니다.

    left · matrix · right = diag(d_1, d_2, ...) 이며 d_1 | d_2 | ... 를 만족합니다.
    left, right 는 가역(유니모듈러) 정수 행렬이고 대각 성분은 음수가 아닙니다.

    Args:
        matrix: 정수 행렬 (직사각 가능)

    Returns:
        tuple: (대각 성분 목록, left, right)
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    if rows == 0 or cols == 0:
        return [], identity(rows), identity(cols)
    smf, left, right = smith_normal_decomp(Matrix([[int(x) for x in row] for row in matrix]), domain=ZZ)
    left_rows = _to_ints(left)
    diagonal = [int(smf[k, k]) for k in range(min(rows, cols))]
    for k, d in enumerate(diagonal):
        if d < 0:
            diagonal[k] = -d
            left_rows[k] = [-x for x in left_rows[k]]
    return diagonal, left_rows, _to_ints(right)


def invariant_factors(matrix: Sequence[Sequence[int]]) -> List[int]:
    """정수 행렬의 불변 인자 (부호 없이, 나눗셈 순서)."""
    if not matrix or not matrix[0]:
        return []
    factors = _sympy_invariant_factors(Matrix([[int(x) for x in row] for row in matrix]), domain=ZZ)
    return [abs(int(f)) for f in factors]


def integer_kernel(rows: Sequence[Sequence[int]], ambient_rank: Optional[int] = None) -> IntMatrix:
    """
    정수 행렬 A 에 대해 {x ∈ Z^r : A x = 0} 의 기저를 구합니다.

    스미스 분해 left · A · right = D 에서 D 의 0 인 열에 대응하는 right 의 열들을
    돌려줍니다. right 가 유니모듈러이므로 결과 기저는 항상 원시(primitive)
    부분격자를 생성합니다.

    Args:
        rows: A 의 행 목록
        ambient_rank: 행이 없을 때 사용할 열 개수

    Returns:
        list: 핵 기저 벡터 목록 (각 벡터는 길이 r 의 정수 리스트)
    """
    if not rows:
        return identity(ambient_rank or 0)
    r = len(rows[0])
    diagonal, _, right = smith_normal_form(rows)
    return [[right[k][j] for k in range(r)] for j in range(r) if j >= len(diagonal) or diagonal[j] == 0]


def solve_mod2(matrix: Sequence[Sequence[int]], rhs: Sequence[int]) -> Optional[List[int]]:
    """
    2원소체 위에서 matrix · x ≡ rhs 를 풉니다.
    자유 변수는 0 으로 둡니다. 해가 없으면 None 을 반환합니다.
    """
    n = len(matrix)
    cols = len(matrix[0]) if n else 0
    if n == 0:
        return [0] * cols
    augmented = DomainMatrix(
        [[_F2(int(x) % 2) for x in row] + [_F2(int(b) % 2)] for row, b in zip(matrix, rhs)],
        (n, cols + 1),
        _F2,
    )
    reduced, pivots = augmented.rref()
    if cols in pivots:
        return None
    values = reduced.to_list()
    solution = [0] * cols
    for i, c in enumerate(pivots):
        solution[c] = int(values[i][cols]) % 2
    return solution
