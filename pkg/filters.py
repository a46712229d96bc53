"""
곡면 불변량 후보 필터링 모듈

이 모듈은 (χ, c1², c2, p_g, q) 후보 목록을 곡면 이론의 조건으로 걸러내는 기능을 제공합니다.
- 뇌터(Noether) 공식: 12 | (c1² + c2)
- 뇌터 부등식: p_g ≤ c1²/2 + 2
- 드바르(Debarre) 부등식: q > 0 이면 2p_g ≤ c1²
- BMY 부등식: c1² ≤ 3c2
- χ 순 정렬과 그룹화

각 후보는 {"chi", "c1sq", "c2", "pg", "q"} 키를 가진 딕셔너리입니다.
"""

import logging
from typing import Any, Dict, List

Candidate = Dict[str, Any]


def filter_noether_formula(candidates: List[Candidate]) -> List[Candidate]:
    """
    χ = (c1² + c2)/12 = 1 - q + p_g 를 만족하는 후보만 남깁니다.

    Args:
        candidates (list): 후보 목록

    Returns:
        list: 필터링된 후보 목록
    """
    result = [
        c for c in candidates
        if (c["c1sq"] + c["c2"]) % 12 == 0
        and (c["c1sq"] + c["c2"]) // 12 == c["chi"]
        and c["chi"] == 1 - c["q"] + c["pg"]
    ]
    logging.debug(f"뇌터 공식 필터: {len(candidates)}건 중 {len(result)}건 통과")
    return result


def filter_noether_inequality(candidates: List[Candidate]) -> List[Candidate]:
    """p_g ≤ c1²/2 + 2 (정수 비교로 2p_g ≤ c1² + 4)."""
    result = [c for c in candidates if 2 * c["pg"] <= c["c1sq"] + 4]
    logging.debug(f"뇌터 부등식 필터: {len(candidates)}건 중 {len(result)}건 통과")
    return result


def filter_debarre(candidates: List[Candidate]) -> List[Candidate]:
    """
    비정칙 곡면(q > 0)에 대해 2p_g ≤ c1² 를 요구합니다.

    Args:
        candidates (list): 후보 목록

    Returns:
        list: 필터링된 후보 목록
    """
    result = [c for c in candidates if c["q"] == 0 or 2 * c["pg"] <= c["c1sq"]]
    logging.debug(f"드바르 부등식 필터: {len(candidates)}건 중 {len(result)}건 통과")
    return result


def filter_bmy(candidates: List[Candidate]) -> List[Candidate]:
    result = [c for c in candidates if c["c2"] > 0 and c["c1sq"] <= 3 * c["c2"]]
    logging.debug(f"BMY 부등식 필터: {len(candidates)}건 중 {len(result)}건 통과")
    return result


def apply_all_filters(candidates: List[Candidate]) -> List[Candidate]:
    """
    모든 필터를 순서대로 적용합니다.

    Args:
        candidates (list): 후보 목록

    Returns:
        list: 모든 조건을 만족하는 후보 목록
    """
    result = filter_noether_formula(candidates)
    result = filter_noether_inequality(result)
    result = filter_debarre(result)
    result = filter_bmy(result)
    logging.info(f"후보 {len(candidates)}건 중 {len(result)}건이 모든 조건을 만족합니다.")
    return result


def sort_by_chi(candidates: List[Candidate]) -> List[Candidate]:
    """χ 오름차순, 같은 χ 안에서는 q 오름차순으로 정렬합니다."""
    return sorted(candidates, key=lambda c: (c["chi"], c["q"], c["pg"]))


def group_by_chi(candidates: List[Candidate]) -> Dict[int, List[Candidate]]:
    """
    후보를 χ 별로 그룹화합니다.

    Args:
        candidates (list): 후보 목록

    Returns:
        dict: χ 별로 그룹화된 후보 (키: χ, 값: q 순으로 정렬된 후보 목록)
    """
    grouped: Dict[int, List[Candidate]] = {}
    for candidate in sort_by_chi(candidates):
        grouped.setdefault(candidate["chi"], []).append(candidate)
    return grouped
