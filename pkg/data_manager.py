"""
설정 및 데이터 관리 모듈

이 모듈은 설정 파일과 격자 데이터 파일의 로드/저장 기능을 제공합니다.
- 탐색 한도 설정 로드 (data/config.json)
- 그람 행렬 JSON 파일 로드 및 저장
- 계산 결과 JSON 저장
- 골든 파일 로드
"""

import json
import logging
import os
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, ValidationError as PydanticValidationError, field_validator

from lattices import errors

# 데이터 저장 경로 설정
DATA_DIR = "data"
CONFIG_FILE = os.path.join(DATA_DIR, "config.json")
RESULTS_DIR = os.path.join(DATA_DIR, "results")


class Settings(BaseModel):
    """탐색 한도와 정밀도 설정. 라이브러리 함수의 기본값과 같습니다."""

    search_budget: int = Field(10_000_000, gt=0)
    vector_bound_start: int = Field(3, ge=1)
    vector_bound_max: int = Field(15, ge=1)
    group_size_limit: int = Field(10_000, gt=0)
    catalog_max_blocks: int = Field(4, ge=0)
    gauss_sum_precision: int = Field(40, ge=15)
    golden_dir: str = "golden"

    @field_validator("vector_bound_max")
    @classmethod
    def _bound_order(cls, value: int, info) -> int:
        start = info.data.get("vector_bound_start", 1)
        if value < start:
            raise ValueError(f"vector_bound_max({value}) 는 vector_bound_start({start}) 이상이어야 합니다.")
        return value

    def search_options(self) -> Dict[str, int]:
        """classifier.standard_representative / surfaces.primitive_lattice 에 넘길 키워드 인자."""
        return {
            "max_blocks": self.catalog_max_blocks,
            "bound_start": self.vector_bound_start,
            "bound_max": self.vector_bound_max,
            "limit": self.group_size_limit,
            "precision": self.gauss_sum_precision,
        }


def ensure_data_directory(path: str = DATA_DIR):
    """
    데이터 저장을 위한 폴더가 있는지 확인하고, 없으면 생성합니다.
    """
    os.makedirs(path, exist_ok=True)
    logging.debug(f"'{path}' 폴더를 확인하고 준비했습니다.")


def load_config(filename: str = CONFIG_FILE) -> Settings:
    """
    설정 파일을 로드합니다.

    Args:
        filename (str): 설정 파일 경로

    Returns:
        Settings: 설정 정보 (파일이 없거나 잘못되었으면 기본 설정 반환)
    """
    try:
        with open(filename, "r", encoding="utf-8") as f:
            raw = json.load(f)
        settings = Settings(**raw)
        logging.info("설정 파일을 성공적으로 로드했습니다.")
        return settings
    except FileNotFoundError:
        logging.warning(f"설정 파일({filename})을 찾을 수 없습니다. 기본 설정을 사용합니다.")
        return Settings()
    except json.JSONDecodeError:
        logging.error(f"설정 파일({filename})의 형식이 잘못되었습니다. 기본 설정을 사용합니다.")
        return Settings()
    except (PydanticValidationError, TypeError) as e:
        logging.error(f"설정 값이 올바르지 않습니다 - {e}. 기본 설정을 사용합니다.")
        return Settings()


def load_gram(filename: str) -> List[List[int]]:
    """
    {"gram": [[...], ...]} 형식의 JSON 파일에서 그람 행렬을 읽습니다.

    Args:
        filename (str): 그람 파일 경로

    Returns:
        list: 정수 그람 행렬

    Raises:
        ParseError: 파일이 없거나 형식이 잘못된 경우
    """
    try:
        with open(filename, "r", encoding="utf-8") as f:
            payload = json.load(f)
    except FileNotFoundError:
        raise errors.ParseError(f"그람 파일({filename})을 찾을 수 없습니다.")
    except json.JSONDecodeError as e:
        raise errors.ParseError(f"그람 파일({filename})의 JSON 형식이 잘못되었습니다: {e}")

    gram = payload.get("gram") if isinstance(payload, dict) else None
    if not isinstance(gram, list) or not all(isinstance(row, list) for row in gram):
        raise errors.ParseError(f"그람 파일({filename})에 'gram' 행렬이 없습니다.")
    if not all(isinstance(x, int) and not isinstance(x, bool) for row in gram for x in row):
        raise errors.ParseError(f"그람 파일({filename})의 성분은 모두 정수여야 합니다.")
    logging.debug(f"'{filename}' 파일에서 {len(gram)}x{len(gram)} 그람 행렬을 로드했습니다.")
    return gram


def save_result(record: Dict[str, Any], filename: str) -> bool:
    """
    계산 결과를 JSON 파일로 저장합니다.

    Args:
        record (dict): 저장할 결과
        filename (str): 저장할 파일 경로

    Returns:
        bool: 저장 성공 여부
    """
    try:
        directory = os.path.dirname(filename)
        if directory:
            ensure_data_directory(directory)
        with open(filename, "w", encoding="utf-8") as f:
            json.dump(record, f, ensure_ascii=False, indent=2)
        logging.info(f"결과가 '{filename}' 파일에 성공적으로 저장되었습니다.")
        return True
    except (IOError, TypeError) as e:
        logging.error(f"'{filename}' 파일에 결과를 저장하는 중 오류 발생: {e}")
        return False


def load_golden(name: str, golden_dir: str = "golden") -> Optional[str]:
    """
    골든 표 파일 (golden/<name>.txt) 의 내용을 읽습니다.

    Returns:
        str: 파일 내용 (없으면 None)
    """
    path = os.path.join(golden_dir, f"{name}.txt")
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except FileNotFoundError:
        logging.warning(f"골든 파일({path})을 찾을 수 없습니다.")
        return None
