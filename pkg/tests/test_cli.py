from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from excesskit.cli import leading_terms, load_ideal, main, parse_ideal_text, powers_exponents

DATA = Path(__file__).parent / "data"
TC_TXT = str(DATA / "twisted_cubic.txt")
TC_JSON = str(DATA / "twisted_cubic.json")
TC_MONO = str(DATA / "twisted_cubic_monomialized.txt")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), err


def test_ideal_file_formats_agree():
    a, b = load_ideal(TC_TXT), load_ideal(TC_JSON)
    assert a == b
    # printed in graded lexicographic order, x > y > z > w
    assert a.generator_strings() == ["-y*w + z^2", "-x*w + y*z", "-x*z + y^2"]


@pytest.mark.parametrize("text", [
    "z^2 - y*w\n",
    "vars: x, y\nx^2 + y\n",
    "vars: x, y\nx^2 + q^2\n",
    "vars: x\nvars: y\n",
    '{"vars": ["x"]}',
    '{"vars": ["x", "y"], "generators": [{"terms": [[[1], 1]]}]}',
])
def test_bad_ideal_files(text):
    with pytest.raises(ValueError):
        parse_ideal_text(text)


def test_comments_and_blank_lines():
    ideal = parse_ideal_text("# header\n\nvars: a, b\n a*b  # the only generator\n")
    assert ideal.generator_strings() == ["a*b"]


def test_powers_detection_and_leading_terms():
    assert powers_exponents(parse_ideal_text("vars: w,x,y,z\nx^3\ny^3\n")) == [3, 3]
    assert powers_exponents(parse_ideal_text("vars: w,x,y,z\nx^3\nx*y^2\n")) is None
    assert powers_exponents(load_ideal(TC_TXT)) is None
    vars = load_ideal(TC_TXT).vars
    assert [g.to_string(vars) for g in leading_terms(load_ideal(TC_TXT))] == ["y*w", "x*w", "x*z"]


@pytest.mark.parametrize("powers, degrees, excess", [
    ("3,3", "5,5,5", 44),
    ("2", "3,3,3", 1),
    ("2,2,2", "2,2,2", 0),
])
def test_formula(capsys, powers, degrees, excess):
    code, report, _ = run(capsys, "formula", "--powers", powers, "--degrees", degrees)
    assert code == 0
    assert report["schema"] == "excesskit/1"
    assert report["excess"] == excess
    assert report["excess"] + report["equivalence"] == report["bezout"]
    assert report["bound_kind"] == "exact"


def test_input_errors_exit_2(capsys):
    code, report, err = run(capsys, "formula", "--powers", "6", "--degrees", "5,5")
    assert code == 2 and report is None and "error" in err and "\n" == err[-1] and err.count("\n") == 1
    assert run(capsys, "hup", "--degrees", "3,3,3")[0] == 2
    assert run(capsys, "mixedvol", "--ideal", TC_TXT, "--degrees", "3,3")[0] == 2
    assert run(capsys, "mixedvol", "--ideal", "/nonexistent", "--degrees", "3,3,3")[0] == 2
    assert run(capsys, "hup", "--method", "hit", "--ideal", TC_TXT, "--degrees", "3,3,3")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["formula", "--powers", "a,b", "--degrees", "3"])
    assert info.value.code == 2


def test_mixedvol(capsys, tmp_path):
    code, report, _ = run(capsys, "mixedvol", "--ideal", TC_MONO, "--degrees", "2,2,2")
    assert (code, report["excess"], report["bound_kind"]) == (0, 4, "exact")
    code, report, _ = run(capsys, "--method", "mixedvol", "--ideal", TC_JSON, "--degrees", "3,3,3")
    assert (code, report["excess"], report["bound_kind"]) == (0, 23, "upper")
    unit = tmp_path / "unit.txt"
    unit.write_text("vars: x, y\n1\n")
    code, report, _ = run(capsys, "mixedvol", "--ideal", str(unit), "--degrees", "4")
    assert report["excess"] == 4


def test_hup_report(capsys, tmp_path):
    out = tmp_path / "r.json"
    trace = tmp_path / "trace.tsv"
    code = main(["hup", "--ideal", TC_TXT, "--degrees", "3,3,3", "--seed", "1",
                 "--out", str(out), "--trace", str(trace)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["excess"] == 10 and report["bound_kind"] == "exact"
    assert report["equivalence"] == 17
    assert len(report["solutions"]) == 10
    for s in report["solutions"]:
        assert max(re * re + im * im for re, im in s["point"]) == pytest.approx(1.0)
        assert s["on_variety"] is False
    stats = report["path_statistics"]
    assert sum(stats["path_status"].values()) == stats["tracked_count"] == 23
    lines = trace.read_text().splitlines()
    assert lines and all(len(line.split("\t")) == 4 for line in lines)


def test_reports_are_byte_identical(capsys, monkeypatch):
    monkeypatch.setenv("EXCESSKIT_SEED", "5")
    main(["hup", "--ideal", TC_TXT, "--degrees", "2,2,2"])
    first = capsys.readouterr().out
    main(["hup", "--ideal", TC_TXT, "--degrees", "2,2,2", "--workers", "4"])
    second = capsys.readouterr().out
    assert first == second
    assert json.loads(first)["inputs"]["seed"] == 5
    assert json.loads(first)["excess"] == 0


def test_hit(capsys):
    code, report, _ = run(capsys, "hit", "--ideal", TC_TXT, "--monomials", "z^2,y*z,y^2",
                          "--degrees", "3,3,3", "--max-iters", "1", "--seed", "3")
    assert code == 0
    assert report["bound_kind"] == "lower"
    assert report["excess"] <= 7
    assert report["path_statistics"]["start_count"] == 7
    code, *_ = run(capsys, "hit", "--ideal", TC_TXT, "--monomials", "z^2,y*z", "--degrees", "3,3,3")
    assert code == 2


def test_crosscheck_powers(capsys):
    code, report, _ = run(capsys, "crosscheck", "--powers", "2,2", "--degrees", "3,3,3", "--max-iters", "1")
    assert code == 0 and report["agree"]
    assert {k: v["excess"] for k, v in report["results"].items()} == {
        "formula": 7, "mixedvol": 7, "hup": 7, "hit": 7}


def test_crosscheck_twisted_cubic(capsys):
    code, report, _ = run(capsys, "crosscheck", "--ideal", TC_TXT, "--degrees", "2,2,2", "--max-iters", "2")
    assert code == 0 and report["agree"]
    assert report["results"]["mixedvol"] == {"excess": 4, "bound_kind": "upper"}
    assert report["results"]["hup"]["excess"] == 0
    assert report["excess"] == 0


def test_crosscheck_flags_disagreement(capsys, monkeypatch):
    import excesskit.cli as cli

    monkeypatch.setattr(cli, "excess_by_mixed_volume", lambda ideal, d: 8)
    code, report, _ = run(capsys, "crosscheck", "--powers", "2,2", "--degrees", "3,3,3", "--max-iters", "1")
    assert code == 1 and not report["agree"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "excesskit", "formula", "--powers", "2,2", "--degrees", "3,3,3"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["excess"] == 7
