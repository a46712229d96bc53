# -*- coding: utf-8 -*-
"""
곡면 격자 계산을 위한 통합 실행 스크립트.

이 스크립트는 다음 작업을 수행합니다:
1. surface classify: 곡면 불변량으로부터 교차 격자와 원시 격자 P_X 를 결정합니다.
2. lattice info / complement / standard: 그람 파일 또는 분해 문자열의 종을 계산합니다.
3. examples reproduce: 예제 표를 텍스트로 다시 만듭니다.
4. oracle isometry / shortvec: 작은 격자의 동형 사상과 짧은 벡터를 찾습니다.

JSON 과 표는 표준 출력으로, 로그는 표준 에러로 나갑니다.
종료 코드: 0 성공, 2 입력 오류, 3 정리 적용 불가, 4 탐색 한도 초과.
"""

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence, Union

import data_manager
import reports
import surfaces
from lattices import classifier, errors, oracle
from lattices.lattice_core import (
    Parity,
    find_characteristic,
    is_characteristic,
    is_definite,
    is_unimodular,
    make_lattice,
    norm,
    orthogonal_complement,
    parity,
    parse_decomposition,
    signature,
    standard,
)

Payload = Union[str, Dict[str, Any], List[Dict[str, Any]]]


# --- 인자 변환 ---
def parse_bool(text: str) -> bool:
    value = str(text).strip().lower()
    if value in ("true", "1", "yes"):
        return True
    if value in ("false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"true 또는 false 이어야 합니다: {text}")


def parse_vector(text: str) -> List[int]:
    """
    "1,-2,0" 형식의 좌표를 정수 목록으로 변환합니다.

    Raises:
        ParseError: 정수가 아닌 좌표가 있는 경우
    """
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise errors.ParseError(f"벡터는 쉼표로 구분한 정수여야 합니다: '{text}'")


# --- 명령 처리 ---
def lattice_record(lattice, mod_z: bool = False) -> Dict[str, Any]:
    """그람 격자의 불변량과 종을 JSON 레코드로 만듭니다."""
    genus = classifier.genus_of(lattice)
    record: Dict[str, Any] = {
        "rank": lattice.rank,
        "determinant": lattice.determinant,
        "signature": list(signature(lattice)),
        "parity": parity(lattice).value,
        "unimodular": is_unimodular(lattice),
        "genus": genus.to_json(mod_z=mod_z),
        "class_number_one": classifier.class_number_one(genus).to_json(),
    }
    if record["unimodular"] and not is_definite(lattice):
        record["unimodular_class"] = str(classifier.classify_unimodular_indefinite(signature(lattice), parity(lattice)))
    if record["unimodular"] and parity(lattice) == Parity.ODD:
        record["characteristic"] = list(find_characteristic(lattice))
    return record


def run_surface_classify(args, settings: data_manager.Settings) -> Payload:
    if args.surface_class:
        invariants = surfaces.minimal_invariants_for_class(args.surface_class, args.genus)
    elif None in (args.b1, args.c1sq, args.c2):
        raise errors.ValidationError("--b1, --c1sq, --c2 를 모두 지정하거나 --class 를 사용해야 합니다.")
    else:
        invariants = [surfaces.derive_invariants(args.b1, args.c1sq, args.c2)]

    results = []
    for inv in invariants:
        logging.info(f"곡면 (b1, c1², c2) = ({inv.b1}, {inv.c1sq}, {inv.c2}) 의 원시 격자를 계산합니다.")
        result = surfaces.primitive_lattice(
            inv,
            even=args.parity == Parity.EVEN.value,
            hsq=args.h_sq,
            h_characteristic=args.h_characteristic,
            canonically_polarized=args.canonically_polarized,
            **settings.search_options(),
        )
        results.append(result.to_json(mod_z=args.mod_z))
    return results[0] if len(results) == 1 else results


def run_lattice_info(args, settings: data_manager.Settings) -> Payload:
    lattice = make_lattice(data_manager.load_gram(args.gram))
    return lattice_record(lattice, mod_z=args.mod_z)


def run_lattice_complement(args, settings: data_manager.Settings) -> Payload:
    lattice = make_lattice(data_manager.load_gram(args.gram))
    vector = parse_vector(args.vector)
    complement, basis = orthogonal_complement(lattice, vector)
    record = lattice_record(complement, mod_z=args.mod_z)
    record.update({
        "vector": vector,
        "norm": norm(lattice, vector),
        "characteristic": is_characteristic(lattice, vector),
        "basis": [list(b) for b in basis],
        "gram": complement.rows(),
    })
    return record


def run_lattice_standard(args, settings: data_manager.Settings) -> Payload:
    expr = parse_decomposition(args.expr)
    lattice = standard(expr)
    record = lattice_record(lattice, mod_z=args.mod_z)
    record.update({"decomposition": str(expr), "gram": lattice.rows()})
    return record


def run_examples_reproduce(args, settings: data_manager.Settings) -> Payload:
    text = reports.reproduce(args.table, settings, c1sq=args.c1sq)
    if args.check:
        expected = data_manager.load_golden(args.table, settings.golden_dir)
        if expected == text:
            logging.info(f"'{args.table}' 표가 골든 파일과 같습니다.")
        elif expected is not None:
            logging.warning(f"'{args.table}' 표가 골든 파일({settings.golden_dir})과 다릅니다.")
    return text


def run_oracle_isometry(args, settings: data_manager.Settings) -> Payload:
    first = make_lattice(data_manager.load_gram(args.gram))
    second = make_lattice(data_manager.load_gram(args.gram2))
    witness = oracle.isometry_small(first, second, budget=settings.search_budget)
    return {
        "isometric": witness is not None,
        "witness": [list(row) for row in witness.matrix] if witness is not None else None,
    }


def run_oracle_shortvec(args, settings: data_manager.Settings) -> Payload:
    lattice = make_lattice(data_manager.load_gram(args.gram))
    vectors = oracle.short_vectors(lattice, args.bound)
    return {
        "bound": args.bound,
        "count": len(vectors),
        "vectors": [{"vector": list(v), "norm": value} for v, value in vectors],
    }


# --- 파서 ---
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=data_manager.CONFIG_FILE, help="설정 파일 경로")
    common.add_argument("--verbose", action="store_true", help="디버그 로그 출력")
    common.add_argument("--mod-z", action="store_true", help="이차 형식 값을 mod 1 로 표시")
    common.add_argument("--output", help="JSON 결과를 저장할 파일 경로")

    parser = argparse.ArgumentParser(description="곡면의 교차 격자와 원시 격자 계산기")
    commands = parser.add_subparsers(dest="command", required=True)

    surface = commands.add_parser("surface", help="곡면 불변량").add_subparsers(dest="action", required=True)
    classify = surface.add_parser("classify", parents=[common], help="원시 격자 P_X 결정")
    classify.add_argument("--b1", type=int)
    classify.add_argument("--c1sq", type=int)
    classify.add_argument("--c2", type=int)
    classify.add_argument("--class", dest="surface_class", help="엔리케스 분류 이름 (예: K3, Enriques)")
    classify.add_argument("--genus", type=int, help="선직 곡면의 종수 g")
    classify.add_argument("--h-sq", type=int, required=True)
    classify.add_argument("--h-characteristic", type=parse_bool, required=True)
    classify.add_argument("--parity", choices=[p.value for p in Parity], required=True)
    classify.add_argument("--canonically-polarized", action="store_true")
    classify.set_defaults(handler=run_surface_classify)

    lattice = commands.add_parser("lattice", help="격자 계산").add_subparsers(dest="action", required=True)
    info = lattice.add_parser("info", parents=[common], help="그람 파일의 종")
    info.add_argument("--gram", required=True)
    info.set_defaults(handler=run_lattice_info)
    complement = lattice.add_parser("complement", parents=[common], help="원시 벡터의 직교 여공간")
    complement.add_argument("--gram", required=True)
    complement.add_argument("--vector", required=True)
    complement.set_defaults(handler=run_lattice_complement)
    std = lattice.add_parser("standard", parents=[common], help="분해 문자열의 표준 그람")
    std.add_argument("--expr", required=True)
    std.set_defaults(handler=run_lattice_standard)

    examples = commands.add_parser("examples", help="예제 표").add_subparsers(dest="action", required=True)
    reproduce = examples.add_parser("reproduce", parents=[common], help="예제 표 출력")
    reproduce.add_argument("--table", choices=reports.TABLES, required=True)
    reproduce.add_argument("--c1sq", type=int)
    reproduce.add_argument("--check", action="store_true", help="golden_dir 의 골든 파일과 비교")
    reproduce.set_defaults(handler=run_examples_reproduce)

    oracle_parser = commands.add_parser("oracle", help="작은 격자 검사").add_subparsers(dest="action", required=True)
    isometry = oracle_parser.add_parser("isometry", parents=[common], help="두 그람 사이의 동형 사상")
    isometry.add_argument("--gram", required=True)
    isometry.add_argument("--gram2", required=True)
    isometry.set_defaults(handler=run_oracle_isometry)
    shortvec = oracle_parser.add_parser("shortvec", parents=[common], help="짧은 벡터 열거")
    shortvec.add_argument("--gram", required=True)
    shortvec.add_argument("--bound", type=int, required=True)
    shortvec.set_defaults(handler=run_oracle_shortvec)
    return parser


def write_payload(payload: Payload):
    if isinstance(payload, str):
        sys.stdout.write(payload)
    else:
        sys.stdout.write(json.dumps(payload, ensure_ascii=False, indent=2) + "\n")


# --- 메인 실행 로직 ---
def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    메인 실행 함수

    Returns:
        int: 종료 코드
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    # 로깅 설정
    logging.basicConfig(level=logging.INFO, format='%(asctime)s [%(levelname)s]: %(message)s')
    logging.getLogger().setLevel(logging.DEBUG if args.verbose else logging.INFO)

    logging.info("=" * 60)
    logging.info(f"'{args.command} {args.action}' 명령을 시작합니다.")
    logging.info("=" * 60)

    settings = data_manager.load_config(args.config)
    try:
        payload = args.handler(args, settings)
    except errors.LatticeError as e:
        logging.error(f"{type(e).__name__} - {e}")
        write_payload({"error": type(e).__name__, "message": str(e), "exit_code": e.exit_code})
        return e.exit_code

    write_payload(payload)
    if args.output and not isinstance(payload, str):
        data_manager.save_result(payload, args.output)
    logging.info("모든 작업이 완료되었습니다.")
    return 0


if __name__ == "__main__":
    sys.exit(main())
