"""Command line exit codes, output and golden-file stability."""

import json
from pathlib import Path

import pytest

from sdchains.cli import main
from sdchains.session import fixture_session

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="module")
def session_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "session.json"
    path.write_text(json.dumps(fixture_session()))
    return path


@pytest.fixture(scope="module")
def q3_file(session_file):
    out = session_file.parent / "q3.json"
    assert main(["present", str(session_file), "F3chain", "--out", str(out)]) == 0
    return out


@pytest.fixture(scope="module")
def q2_file(session_file):
    out = session_file.parent / "q2.json"
    assert main(["present", str(session_file), "F2chain", "--out", str(out)]) == 0
    return out


def stable(report):
    report = dict(report)
    report.pop("timing")
    return report


def run_json(capsys, argv):
    code = main(argv + ["--json"])
    return code, json.loads(capsys.readouterr().out)


def test_validate_fixture_file(session_file, capsys):
    code, report = run_json(capsys, ["validate", str(session_file)])
    assert code == 0 and report["exit_code"] == 0
    assert {r["arguments"]["name"] for r in report["results"] if r["operation"] == "algebra"} == {"F1", "F2", "F3"}


@pytest.mark.parametrize("name", ["validate", "semidual_k2"])
def test_golden_reports(name, session_file, capsys):
    argv = {"validate": ["validate", str(session_file)], "semidual_k2": ["semidual", str(session_file), "k2"]}[name]
    _, report = run_json(capsys, argv)
    expected = json.loads((GOLDEN / f"{name}.json").read_text())
    assert stable(report) == expected


def test_validate_empty_file(tmp_path, capsys):
    f = tmp_path / "empty.json"
    f.write_text("")
    code, report = run_json(capsys, ["validate", str(f)])
    assert code == 0 and report["results"] == []


def test_validate_reports_non_associative_table(tmp_path, capsys):
    from test_session import non_associative

    f = tmp_path / "bad.json"
    f.write_text(json.dumps(non_associative()))
    code, report = run_json(capsys, ["validate", str(f)])
    assert code == 1
    assert "NotAssociative" in report["results"][0]["failures"][0]["condition"]


def test_semidual_pass_and_fail(session_file, capsys):
    assert main(["semidual", str(session_file), "D2"]) == 0
    assert "PASS" in capsys.readouterr().out
    code, report = run_json(capsys, ["semidual", str(session_file), "k2"])
    assert code == 1 and report["results"][0]["failures"][0]["witness"]["dim_Hom"] == 1


def test_chain_suitable(session_file):
    assert main(["chain", str(session_file), "F3chain", "--suitable"]) == 0


def test_input_errors(session_file, tmp_path, capsys):
    assert main(["semidual", str(session_file), "nope"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("[")
    assert main(["validate", str(bad)]) == 2
    assert main(["validate", str(tmp_path / "missing.json")]) == 2
    assert "error:" in capsys.readouterr().err


def test_present_writes_q_document(q3_file):
    doc = json.loads(q3_file.read_text())
    assert doc["Q"]["dim"] == 36 and doc["blocks"]["{1,2}"] == 9


def test_length_one_pipeline(q2_file, capsys):
    assert main(["verify-theorem", str(q2_file)]) == 0
    assert main(["converse", str(q2_file)]) == 0
    assert main(["tensor-lemmas", str(q2_file)]) == 0


def test_tensor_lemmas_single_pair(q3_file, capsys):
    code, report = run_json(capsys, ["tensor-lemmas", str(q3_file), "--lam", "1", "--gam", "{2}"])
    assert code == 0 and len(report["results"]) == 1
    assert report["results"][0]["arguments"] == {"lam": [1], "gam": [2]}


def test_tampered_q_document_fails(q2_file, tmp_path):
    doc = json.loads(q2_file.read_text())
    doc["Q"]["mult"][-1][-1] = (doc["Q"]["mult"][-1][-1] + 1) % doc["p"] or 2
    bad = tmp_path / "tampered.json"
    bad.write_text(json.dumps(doc))
    assert main(["verify-theorem", str(bad)]) == 1


def test_out_writes_report(session_file, tmp_path):
    out = tmp_path / "report.json"
    main(["semidual", str(session_file), "D2", "--out", str(out)])
    assert json.loads(out.read_text())["command"] == "semidual"
