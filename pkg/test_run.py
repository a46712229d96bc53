"""
명령줄 실행 검증
표준 출력의 JSON/표, 종료 코드, --output 저장을 확인합니다.
"""
import json
from pathlib import Path

import pytest

import run

GOLDEN_DIR = Path(__file__).resolve().parent / "golden"


@pytest.fixture
def config(tmp_path):
    path = tmp_path / "config.json"
    path.write_text("{}", encoding="utf-8")
    return str(path)


@pytest.fixture
def gram_file(tmp_path):
    def write(name, gram):
        path = tmp_path / name
        path.write_text(json.dumps({"gram": gram}), encoding="utf-8")
        return str(path)

    return write


def _run(capsys, argv):
    code = run.main(argv)
    return code, capsys.readouterr().out


def test_surface_classify_kunev(capsys, config):
    code, out = _run(capsys, [
        "surface", "classify", "--b1", "0", "--c1sq", "1", "--c2", "23",
        "--h-sq", "1", "--h-characteristic", "true", "--parity", "odd", "--config", config,
    ])
    assert code == 0
    record = json.loads(out)
    assert record["named"] == "U^2 + E8(-1)^2"
    assert record["intersection"] == "<-1>^18 + <1>^3"
    assert record["route"] == "indefinite-theorem"
    assert record["class_number_one"] is True


def test_surface_classify_by_class(capsys, config):
    code, out = _run(capsys, [
        "surface", "classify", "--class", "K3",
        "--h-sq", "2", "--h-characteristic", "false", "--parity", "even", "--config", config,
    ])
    assert code == 0
    assert json.loads(out)["named"] == "<-2> + U^2 + E8(-1)^2"


def test_surface_classify_missing_invariants(capsys, config):
    code, out = _run(capsys, [
        "surface", "classify", "--b1", "0",
        "--h-sq", "1", "--h-characteristic", "true", "--parity", "odd", "--config", config,
    ])
    assert code == 2
    assert json.loads(out)["error"] == "ValidationError"


@pytest.mark.parametrize(
    "triple, error",
    [(("0", "0", "0"), "NegativePg"), (("0", "12", "0"), "NonPositiveB2"), (("1", "1", "11"), "OddB1")],
)
def test_surface_classify_validation_errors(capsys, config, triple, error):
    b1, c1sq, c2 = triple
    code, out = _run(capsys, [
        "surface", "classify", "--b1", b1, "--c1sq", c1sq, "--c2", c2,
        "--h-sq", "1", "--h-characteristic", "false", "--parity", "odd", "--config", config,
    ])
    assert code == 2
    record = json.loads(out)
    assert record["error"] == error
    assert record["exit_code"] == 2


def test_surface_classify_guard(capsys, config):
    code, out = _run(capsys, [
        "surface", "classify", "--b1", "0", "--c1sq", "18", "--c2", "6",
        "--h-sq", "2", "--h-characteristic", "false", "--parity", "odd", "--config", config,
    ])
    assert code == 3
    assert json.loads(out)["error"] == "ExoticBallQuotient"


def test_surface_classify_odd_complement_guard(capsys, config):
    code, out = _run(capsys, [
        "surface", "classify", "--b1", "2", "--c1sq", "10", "--c2", "2",
        "--h-sq", "1", "--h-characteristic", "false", "--parity", "odd", "--config", config,
    ])
    assert code == 3
    record = json.loads(out)
    assert record["error"] == "OddComplementRankGuard"
    assert "named" not in record


def test_surface_classify_budget(capsys, tmp_path):
    path = tmp_path / "tight.json"
    path.write_text(json.dumps({"vector_bound_start": 1, "vector_bound_max": 1}), encoding="utf-8")
    code, out = _run(capsys, [
        "surface", "classify", "--b1", "0", "--c1sq", "1", "--c2", "35",
        "--h-sq", "1", "--h-characteristic", "true", "--parity", "odd", "--config", str(path),
    ])
    assert code == 4
    assert json.loads(out)["error"] == "NoAmbientVectorFound"


def test_argument_error_returns_two(capsys):
    assert run.main(["surface", "classify", "--parity", "odd"]) == 2
    capsys.readouterr()


def test_lattice_info_and_complement(capsys, config, gram_file):
    path = gram_file("odd.json", [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    code, out = _run(capsys, ["lattice", "info", "--gram", path, "--config", config])
    assert code == 0
    record = json.loads(out)
    assert record["unimodular"] is True
    assert record["parity"] == "odd"
    assert record["characteristic"] == [1, 1, 1]
    assert "unimodular_class" not in record

    code, out = _run(capsys, ["lattice", "complement", "--gram", path, "--vector", "1,1,1", "--config", config])
    assert code == 0
    record = json.loads(out)
    assert record["norm"] == 3
    assert record["characteristic"] is True
    assert record["parity"] == "even"
    assert abs(record["determinant"]) == 3


def test_lattice_complement_bad_vector(capsys, config, gram_file):
    path = gram_file("u.json", [[0, 1], [1, 0]])
    code, out = _run(capsys, ["lattice", "complement", "--gram", path, "--vector", "1,x", "--config", config])
    assert code == 2
    assert json.loads(out)["error"] == "ParseError"


def test_lattice_standard_round_trip(capsys, config, gram_file):
    code, out = _run(capsys, ["lattice", "standard", "--expr", "E8(-1)^2 + U^3", "--config", config])
    assert code == 0
    record = json.loads(out)
    assert record["decomposition"] == "U^3 + E8(-1)^2"
    assert record["unimodular_class"] == "U^3 + E8(-1)^2"

    path = gram_file("k3.json", record["gram"])
    code, out = _run(capsys, ["lattice", "info", "--gram", path, "--config", config])
    assert json.loads(out)["signature"] == [3, 19]


def test_oracle_commands(capsys, config, gram_file):
    a2 = gram_file("a2.json", [[2, -1], [-1, 2]])
    other = gram_file("other.json", [[2, 1], [1, 2]])
    code, out = _run(capsys, ["oracle", "shortvec", "--gram", a2, "--bound", "2", "--config", config])
    assert code == 0
    assert json.loads(out)["count"] == 3

    code, out = _run(capsys, ["oracle", "isometry", "--gram", a2, "--gram2", other, "--config", config])
    record = json.loads(out)
    assert record["isometric"] is True
    assert len(record["witness"]) == 2


def test_examples_reproduce_matches_golden(capsys, config):
    code, out = _run(capsys, ["examples", "reproduce", "--table", "ex1", "--config", config])
    assert code == 0
    assert out == (GOLDEN_DIR / "ex1.txt").read_text(encoding="utf-8")


def test_examples_reproduce_check_against_golden_dir(capsys, caplog, tmp_path):
    golden_dir = tmp_path / "golden"
    golden_dir.mkdir()
    (golden_dir / "ex1.txt").write_text("다른 표\n", encoding="utf-8")
    (golden_dir / "table1.txt").write_text((GOLDEN_DIR / "table1.txt").read_text(encoding="utf-8"), encoding="utf-8")
    config = tmp_path / "check.json"
    config.write_text(json.dumps({"golden_dir": str(golden_dir)}), encoding="utf-8")

    code, out = _run(capsys, ["examples", "reproduce", "--table", "ex1", "--check", "--config", str(config)])
    assert code == 0
    assert out == (GOLDEN_DIR / "ex1.txt").read_text(encoding="utf-8")
    assert any(r.levelname == "WARNING" and "골든 파일" in r.getMessage() for r in caplog.records)

    caplog.clear()
    code, _ = _run(capsys, ["examples", "reproduce", "--table", "table1", "--check", "--config", str(config)])
    assert code == 0
    assert not any(r.levelname == "WARNING" for r in caplog.records)


def test_examples_candidates_requires_c1sq(capsys, config):
    code, out = _run(capsys, ["examples", "reproduce", "--table", "candidates", "--config", config])
    assert code == 2


def test_output_file(capsys, config, tmp_path):
    target = tmp_path / "results" / "e8.json"
    code, out = _run(capsys, ["lattice", "standard", "--expr", "E8", "--config", config, "--output", str(target)])
    assert code == 0
    assert json.loads(target.read_text(encoding="utf-8")) == json.loads(out)
