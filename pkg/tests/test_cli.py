import json
import subprocess
import sys

import pytest

from kaehler_lab import cli
from kaehler_lab.cli import InputError, main, parse_input, render_text, run
from support import FIXTURES, load_fixture


def test_parse_input_accepts_dict_text_and_path():
    doc = load_fixture("sec2_monomial")
    a = parse_input(doc)
    b = parse_input(json.dumps(doc))
    c = parse_input(FIXTURES / "sec2_monomial.json")
    assert a.digest == b.digest == c.digest
    assert a.n == 2 and a.ideal == ["X1^2", "X2^3"] and a.components is None


def test_digest_ignores_descriptions_and_layout():
    doc = load_fixture("sec2_monomial")
    other = dict(doc, description="something else")
    assert parse_input(doc).digest == parse_input(json.dumps(other, indent=7)).digest


@pytest.mark.parametrize(
    "doc, code",
    [
        ({"field": {"Fp": 4}, "n": 2, "ideal": ["X1"]}, "bad-field"),
        ({"field": "R", "n": 2, "ideal": ["X1"]}, "bad-field"),
        ({"n": 0, "ideal": ["X1"]}, "bad-n"),
        ({"n": True, "ideal": ["X1"]}, "bad-n"),
        ({"n": 2}, "bad-input"),
        ({"n": 2, "ideal": ["X1"], "components": []}, "bad-input"),
        ({"n": 2, "ideal": []}, "bad-input"),
        ({"n": 2, "ideal": ["X1"], "colour": 1}, "bad-input"),
        ({"n": 2, "ideal": ["X1 +* X2"]}, "bad-polynomial"),
        ({"n": 2, "ideal": ["X7"]}, "bad-polynomial"),
        ({"n": 2, "components": [{"point": ["1", "2"]}]}, "bad-point"),
        ({"n": 2, "components": [{"point": ["1", "2", "1/0"]}]}, "bad-point"),
        ({"n": 2, "components": [{"pt": ["1", "2", "3"]}]}, "bad-component"),
        ({"n": 2, "components": [{"primary": []}]}, "bad-component"),
    ],
)
def test_parse_errors(doc, code):
    with pytest.raises(InputError) as info:
        parse_input(doc)
    assert info.value.code == code


def test_parse_error_positions():
    text = '{\n  "n": 2,\n  "ideal": ["X1^2", "X2^^3"]\n}'
    with pytest.raises(InputError) as info:
        parse_input(text)
    assert info.value.code == "bad-polynomial"
    assert (info.value.line, info.value.column) == (3, 25)
    with pytest.raises(InputError) as info:
        parse_input('{"n": 2,\n "ideal": [X1]}')
    assert info.value.code == "bad-json" and info.value.line == 2


def test_missing_file():
    with pytest.raises(InputError) as info:
        parse_input(FIXTURES / "does_not_exist.json")
    assert info.value.code == "io"


@pytest.mark.parametrize(
    "command, keys",
    [
        ("hilbert", set()),
        ("kaehler", {"kaehler"}),
        ("noether", {"noether"}),
        ("conductor", {"conductor"}),
        ("classify", {"classification"}),
        ("report", {"kaehler", "noether", "conductor", "classification", "points"}),
    ],
)
def test_run_sections(command, keys):
    report, code = run(command, parse_input(load_fixture("ags_x")))
    assert code == 0
    base = {"input_sha256", "command", "field", "n", "hilbert", "warnings", "consistency_failures"}
    assert set(report) == base | keys
    assert report["hilbert"]["values"] == [1, 4, 5, 5]


def test_report_contents():
    report, _ = run("report", parse_input(load_fixture("twocubics_components")))
    assert report["kaehler"]["hf"][:8] == [0, 0, 0, 0, 1, 3, 6, 8]
    assert report["kaehler"]["ri"] == 7 and report["noether"]["hp"] == 8
    assert report["conductor"]["point_degrees"] == [4, 4, 4, 4]
    assert report["classification"]["is_ci"] is True
    assert len(report["points"]) == 4
    json.dumps(report)


def test_reduced_report_has_genpos():
    report, code = run("report", parse_input(load_fixture("plane_points_fp")))
    assert code == 0 and report["genpos_equivalence"]["three_way"]
    assert report["field"] == {"Fp": 32003}


def test_rationals_are_strings():
    report, _ = run("report", parse_input(load_fixture("single_point")))
    text = json.dumps(report)
    assert '"-3/4"' in text or "-3/4" in text


def test_cross_check_and_exit_codes(monkeypatch):
    doc = parse_input(load_fixture("noether_principal_a"))
    report, code = run("classify", doc, cross_check=True)
    assert code == 0 and report["cross_check"]["failures"] == []
    monkeypatch.setattr(cli, "_cross_checks", lambda X, an, command: ["forced disagreement"])
    report, code = run("classify", doc, cross_check=True)
    assert code == 2 and report["consistency_failures"] == ["forced disagreement"]


def test_run_rejects_unknown_command():
    with pytest.raises(ValueError):
        run("frobnicate", parse_input(load_fixture("single_point")))


def test_threads_do_not_change_output():
    doc = parse_input(load_fixture("ags_y"))
    a, _ = run("report", doc)
    b, _ = run("report", doc, threads=4)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_timings_are_opt_in():
    doc = parse_input(load_fixture("single_point"))
    assert "timings" not in run("hilbert", doc)[0]
    assert "build" in run("hilbert", doc, timings=True)[0]["timings"]


def test_text_rendering():
    report, _ = run("report", parse_input(load_fixture("plane_points_fp")))
    text = render_text(report)
    assert "GF(32003)" in text and "HF_X: 1 3 5 6 6" in text


def test_main_json_and_text(capsys):
    assert main(["hilbert", str(FIXTURES / "sec2_monomial.json")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["hilbert"]["values"] == [1, 3, 5, 6, 6]
    assert main(["kaehler", str(FIXTURES / "sec2_monomial.json"), "--text"]) == 0
    assert "HF(theta_X): 0 0 0 1 1" in capsys.readouterr().out


def test_main_output_is_deterministic(capsys):
    path = str(FIXTURES / "gorenstein_b.json")
    main(["report", path])
    first = capsys.readouterr().out
    main(["report", path, "--threads", "3"])
    assert capsys.readouterr().out == first


def test_main_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2, "ideal": ["X1^2 + X0", "X2"]}')
    assert main(["hilbert", str(bad)]) == 1
    assert "error [not-homogeneous]" in capsys.readouterr().err
    bad.write_text('{"n": 2, "components": [{"point": ["1","0","0"]}, {"point": ["2","0","0"]}]}')
    assert main(["hilbert", str(bad)]) == 1
    assert "error [duplicate-point]" in capsys.readouterr().err
    assert main(["hilbert", str(tmp_path / "missing.json")]) == 1
    assert "error [io]" in capsys.readouterr().err


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "kaehler_lab.cli", "hilbert", str(FIXTURES / "single_point.json"), "--text"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and "HF_X: 1 1" in proc.stdout
