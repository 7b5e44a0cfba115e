import json
from fractions import Fraction as F

import pytest

from cyclevol.cli import fraction_str, main, parse_fraction


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def write_json(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


CURVE_11 = {
    "variety": {"dims": [1, 1]},
    "alpha": {
        "codim": 1,
        "coeffs": [
            {"exponents": [1, 0], "numerator": 1, "denominator": 1},
            {"exponents": [0, 1], "numerator": 1, "denominator": 1},
        ],
    },
}


def test_fraction_codec():
    assert parse_fraction("3/4") == F(3, 4)
    assert parse_fraction(5) == F(5)
    assert parse_fraction({"numerator": 2, "denominator": 6}) == F(1, 3)
    assert fraction_str(F(1, 3)) == "1/3"
    assert fraction_str(F(4, 2)) == "2"
    with pytest.raises(Exception):
        parse_fraction("nope")


def test_constants_command(capsys):
    code, out = run_cli(capsys, "constants", "--n", "4", "--k", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["epsilon"] == "1/4" and doc["tau"] == "1/4"


def test_constants_degenerate_column_exits_3(capsys):
    code, out = run_cli(capsys, "constants", "--n", "5", "--k", "0")
    assert code == 3
    assert "undefined" in json.loads(out)["error"]


def test_volhat_both_formulations(tmp_path, capsys):
    job = write_json(tmp_path / "job.json", CURVE_11)
    code, out = run_cli(capsys, "volhat", "--input", job, "--formulation", "both")
    assert code == 0
    doc = json.loads(out)
    assert doc["sup"]["value"].startswith("2.000000")
    assert doc["xiao"]["value"].startswith("2.000000")
    assert doc["sup"]["argopt"] == ["1/1", "1/1"]


def test_volhat_rational_fields_round_trip_bit_for_bit(tmp_path, capsys):
    job = write_json(tmp_path / "job.json", CURVE_11)
    _, out = run_cli(capsys, "volhat", "--input", job, "--formulation", "sup")
    doc = json.loads(out)
    rationals = [doc["sup"]["value_exact"], doc["sup"]["tolerance"], *doc["sup"]["argopt"]]
    for text in rationals:
        q = F(text.replace("/", "/"))  # parse as a fraction string
        assert f"{q.numerator}/{q.denominator}" == text


def test_volhat_infeasible_exit_code(tmp_path, capsys):
    bad = {
        "variety": {"dims": [1, 1]},
        "alpha": {
            "codim": 1,
            "coeffs": [{"exponents": [1, 0], "numerator": -1, "denominator": 1}],
        },
    }
    job = write_json(tmp_path / "job.json", bad)
    code, out = run_cli(capsys, "volhat", "--input", job)
    assert code == 4
    assert json.loads(out)["sup"]["status"] == "infeasible"


def test_volhat_cache_round_trip(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("CYCLEVOL_CACHE_DIR", str(tmp_path / "cache"))
    job = write_json(tmp_path / "job.json", CURVE_11)
    code1, out1 = run_cli(capsys, "volhat", "--input", job)
    code2, out2 = run_cli(capsys, "volhat", "--input", job)
    assert code1 == code2 == 0
    assert out1 == out2
    cached = list((tmp_path / "cache").glob("*.json"))
    assert len(cached) == 1


def test_bounds_command_and_inapplicable_exit(tmp_path, capsys):
    payload = {
        "variety": {"dims": [3]},
        "alpha": {"codim": 2, "coeffs": [{"exponents": [2], "numerator": 1, "denominator": 1}]},
        "A": {"coords": ["1"]},
        "s": 2,
        "variant": 1,
        "formula": "mc-precise",
    }
    job = write_json(tmp_path / "job.json", payload)
    code, out = run_cli(capsys, "bounds", "--input", job)
    assert code == 0
    doc = json.loads(out)
    assert doc["applicable"] and doc["formula_id"] == "mc.precise.1"
    assert doc["value_decimal"] == "11585.237503"  # rounded outward

    payload["variant"] = 2  # ell - [H^2] = 0 is pseudo-effective: inapplicable
    job = write_json(tmp_path / "job2.json", payload)
    code, out = run_cli(capsys, "bounds", "--input", job)
    assert code == 3
    assert not json.loads(out)["applicable"]


def test_bounds_sweep_is_ordered_and_parallel_safe(tmp_path, capsys):
    payload = {
        "variety": {"dims": [3]},
        "alpha": {"codim": 2, "coeffs": [{"exponents": [2], "numerator": 1, "denominator": 1}]},
        "A": {"coords": ["1"]},
        "variant": 1,
    }
    job = write_json(tmp_path / "job.json", payload)
    code, out = run_cli(capsys, "bounds", "--input", job, "--sweep", "2:5", "--jobs", "3")
    assert code == 0
    rows = json.loads(out)["sweep"]
    assert [row["s"] for row in rows] == [2, 3, 4, 5]
    values = [float(row["report"]["value_decimal"]) for row in rows]
    assert values == sorted(values)


def test_seshadri_command(capsys):
    code, out = run_cli(capsys, "seshadri", "--b", "5", "--dims", "2", "--coords", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["t"] == 3 and doc["lo"] == "1/3" and not doc["collapsed"]


def test_mc_command(capsys):
    code, out = run_cli(capsys, "mc", "--dims", "2", "--coords", "2")
    assert code == 0
    assert json.loads(out) == {"h0": 6, "mc": 5}


def test_wmob_command_and_sweep(capsys):
    code, out = run_cli(capsys, "wmob", "--dims", "3", "--coords", "1", "--k", "1", "--t", "50")
    assert code == 0
    doc = json.loads(out)
    assert doc["upper"] == "1"
    assert float(doc["relative_gap_decimal"]) < 0.03

    code, out = run_cli(
        capsys, "wmob", "--dims", "3", "--coords", "1", "--k", "1", "--sweep", "2:5", "--jobs", "2"
    )
    rows = json.loads(out)["sweep"]
    assert [row["t"] for row in rows] == [2, 3, 4, 5]

    code, out = run_cli(capsys, "wmob", "--dims", "1,1", "--coords", "1,1", "--divisor")
    assert json.loads(out)["wmob"] == "2"


def test_run_job_file(tmp_path, capsys):
    job = write_json(
        tmp_path / "job.json",
        {"command": "constants", "payload": {"n": 3, "k": 1}},
    )
    code, out = run_cli(capsys, "run", "--input", job)
    assert code == 0
    assert json.loads(out)["epsilon"] == "1/2"


def test_run_job_with_output_path(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    job = write_json(
        tmp_path / "job.json",
        {
            "command": "mc",
            "payload": {"variety": {"dims": [2]}, "L": {"coords": [1]}},
            "output_path": str(out_path),
        },
    )
    code, _ = run_cli(capsys, "run", "--input", job)
    assert code == 0
    assert json.loads(out_path.read_text()) == {"h0": 3, "mc": 2}


def test_parse_errors_exit_2(tmp_path, capsys):
    code, _ = run_cli(capsys, "volhat", "--input", str(tmp_path / "missing.json"))
    assert code == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _ = run_cli(capsys, "bounds", "--input", str(bad))
    assert code == 2
    job = write_json(tmp_path / "job.json", {"command": "fly-to-the-moon"})
    code, _ = run_cli(capsys, "run", "--input", str(job))
    assert code == 2


def test_deterministic_output(tmp_path, capsys):
    job = write_json(tmp_path / "job.json", CURVE_11)
    _, out1 = run_cli(capsys, "volhat", "--input", job, "--formulation", "both")
    _, out2 = run_cli(capsys, "volhat", "--input", job, "--formulation", "both")
    assert out1 == out2
