import io
import json
import pathlib
from contextlib import redirect_stdout

import pytest

from effectkit.cli import main

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def run_cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


def test_check_all_fixture_files():
    for path in sorted(FIXTURES.glob("*.ea")):
        code, out = run_cli("check", str(path), "--samples", "40",
                            "--window", "3")
        assert code == 0, (path.name, out)


def test_rdp_hs4_violation():
    code, out = run_cli("rdp", str(FIXTURES / "HS4.ea"))
    assert code == 1
    assert "refuted" in out


def test_rdp_lex3():
    code, out = run_cli("rdp", str(FIXTURES / "LEX3.ea"), "--window", "2",
                        "--samples", "40")
    assert code == 0


def test_represent_lex1():
    code, out = run_cli("represent", str(FIXTURES / "LEX1.ea"),
                        "--samples", "40", "--window", "3")
    assert code == 0
    assert "tail: rank 1" in out


def test_represent_lex21_exit_1():
    code, out = run_cli("represent", str(FIXTURES / "LEX21.ea"),
                        "--samples", "40", "--window", "3")
    assert code == 1
    assert "2*c = (2/1, 1/1)" in out


def test_subdirect_b4():
    code, out = run_cli("subdirect", str(FIXTURES / "B4.ea"))
    assert code == 0
    assert "2 proper prime ideals" in out


def test_states_b4():
    code, out = run_cli("states", str(FIXTURES / "B4.ea"))
    assert code == 0  # non-uniqueness is a finding, not a violation
    assert "unique-state: refuted" in out
    assert "extremes s(a) in [0/1, 1/1]" in out


def test_states_lex21():
    code, out = run_cli("states", str(FIXTURES / "LEX21.ea"),
                        "--samples", "40", "--window", "3")
    assert code == 0
    assert "1/2" in out


def test_decompose_finite_head():
    code, out = run_cli("decompose", str(FIXTURES / "B4.ea"),
                        "--head", "Z^2:1,1")
    assert code == 0


def test_decompose_lex3():
    code, out = run_cli("decompose", str(FIXTURES / "LEX3.ea"),
                        "--samples", "40", "--window", "3")
    assert code == 0


def test_classify_k61():
    code, out = run_cli("classify", str(FIXTURES / "K61.ea"),
                        "--samples", "60", "--window", "2", "--seed", "5")
    assert code == 0
    assert "antilattice: witnessed" in out
    assert "lattice: refuted" in out


def test_classify_c4():
    code, out = run_cli("classify", str(FIXTURES / "C4.ea"))
    assert code == 0


def test_json_report_parses():
    code, out = run_cli("ideals", str(FIXTURES / "LEX21.ea"), "--json",
                        "--samples", "40", "--window", "3")
    payload = json.loads(out)
    assert payload["command"] == "ideals"
    assert payload["exit_code"] == code
    names = {item["name"] for item in payload["items"]}
    assert any("retractive" in n for n in names)


def test_determinism():
    args = ("classify", str(FIXTURES / "K61.ea"), "--samples", "60",
            "--window", "2", "--seed", "9", "--json")
    code1, out1 = run_cli(*args)
    code2, out2 = run_cli(*args)
    assert code1 == code2
    assert out1 == out2


def test_missing_file_is_error(capsys):
    with pytest.raises(FileNotFoundError):
        run_cli("check", str(FIXTURES / "NOPE.ea"))
