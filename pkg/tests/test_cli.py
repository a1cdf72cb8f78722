import json

import pytest

from flagbethe.cli import main


def read_report(path):
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]


def test_list(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert "theorem-3.4-xi-intertwining" in out and "appendix-A.1-diagram" in out
    assert len([line for line in out.splitlines() if line.strip()]) >= 15


def test_unknown_check_is_usage_error(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["run", "--check", "no-such-check", "--N", "2", "--n", "2", "--report", str(tmp_path / "r.jsonl")])
    assert exc.value.code == 2


def test_missing_report_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["run", "--check", "commutativity", "--N", "2", "--n", "2"])
    assert exc.value.code == 2


def test_commutativity_run(tmp_path):
    rep = tmp_path / "r.jsonl"
    code = main(["run", "--check", "commutativity", "--N", "2", "--n", "2", "--jmax", "3", "--report", str(rep), "--quiet"])
    assert code == 0
    rows = read_report(rep)
    assert rows and all(r["status"] == "pass" for r in rows)
    assert {"check", "anchor", "parameters", "status", "evidence", "witnesses", "timing"} <= set(rows[0])


def test_graded_character_exit_codes(tmp_path):
    rep = tmp_path / "r.jsonl"
    assert main(["run", "--check", "graded-character", "--N", "2", "--n", "2", "--report", str(rep), "--quiet"]) == 0
    assert main(["run", "--check", "graded-character", "--N", "2", "--n", "3", "--report", str(rep), "--quiet"]) == 1
    failed = [r for r in read_report(rep) if r["status"] == "fail"]
    assert failed and all(r["witnesses"] for r in failed)


def test_config_file_and_override(tmp_path):
    rep = tmp_path / "r.jsonl"
    cfg = tmp_path / "c.ini"
    cfg.write_text(f"check = commutativity\nN = 2\nn = 2\nlambda = 1,1\njmax = 2\nreport = {rep}\n")
    assert main(["run", "--config", str(cfg), "--quiet"]) == 0
    rows = read_report(rep)
    assert all(r["parameters"]["lambda"] == [1, 1] for r in rows)
    assert main(["run", "--config", str(cfg), "--lambda", "2,0", "--quiet"]) == 0
    assert all(r["parameters"]["lambda"] == [2, 0] for r in read_report(rep))


def test_deterministic_reports(tmp_path):
    args = ["run", "--check", "lemma-3.2-well-defined", "--N", "2", "--n", "3", "--z-mode", "seed=7", "--quiet", "--report"]
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    main(args + [str(a)])
    main(args + [str(b)])
    strip = lambda rows: [{k: v for k, v in r.items() if k != "timing"} for r in rows]  # noqa: E731
    assert strip(read_report(a)) == strip(read_report(b))
