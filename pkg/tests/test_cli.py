import csv
import io
import json

import pytest

from heckebound.cli import (
    EXIT_ALL_FAILED,
    EXIT_CONFIG,
    EXIT_OK,
    ConfigError,
    compute_records,
    main,
    parse_config,
    render_csv,
    render_json,
)

SIEGEL_DOC = {
    "field": {"kind": "rational"},
    "quaternion_ramification": [],
    "m": 1,
    "N": 3,
    "p": 5,
}

SWEEP_DOC = {
    "field": {"kind": "rational"},
    "quaternion_ramification": [],
    "m": 1,
    "N": 3,
    "p_sweep": {"from": 2, "to": 20},
}


def run_cli(tmp_path, doc, *args):
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps(doc))
    out = tmp_path / "out.txt"
    status = main([str(cfg), "--output", str(out), *args])
    return status, out.read_text()


def test_single_record_values(tmp_path):
    status, text = run_cli(tmp_path, SIEGEL_DOC)
    assert status == EXIT_OK
    records = json.loads(text)
    assert len(records) == 1
    rec = records[0]
    assert rec["final_bound"] == "192"
    assert rec["mass"] == "8"
    assert rec["irr_count"] == "24"
    assert rec["dim_bound"] == "1"
    assert rec["C_B"] == "1/24"
    assert rec["zeta_F"] == ["-1/12"]
    assert rec["level_group_order"] == "48"
    assert rec["asymptotic_exponent"] == 3
    assert rec["input"]["p"] == 5
    assert rec["delta_prime"]["at_p"] == [{"prime": 5, "residue_degree": 1}]


def test_sweep_skips_invalid_primes(tmp_path):
    status, text = run_cli(tmp_path, SWEEP_DOC)
    assert status == EXIT_OK
    records = json.loads(text)
    by_p = {r["input"]["p"]: r for r in records}
    assert sorted(by_p) == [2, 3, 5, 7, 11, 13, 17, 19]
    assert by_p[3]["error"]["code"] == "p_divides_level"
    assert by_p[5]["final_bound"] == "192"


def test_output_deterministic(tmp_path):
    _, first = run_cli(tmp_path, SWEEP_DOC)
    _, second = run_cli(tmp_path, SWEEP_DOC)
    assert first == second
    _, csv_first = run_cli(tmp_path, SWEEP_DOC, "--format", "csv")
    _, csv_second = run_cli(tmp_path, SWEEP_DOC, "--format", "csv")
    assert csv_first == csv_second


def test_json_and_csv_payloads_agree(tmp_path):
    _, json_text = run_cli(tmp_path, SWEEP_DOC)
    _, csv_text = run_cli(tmp_path, SWEEP_DOC, "--format", "csv")
    records = {r["input"]["p"]: r for r in json.loads(json_text)}
    rows = list(csv.DictReader(io.StringIO(csv_text)))
    assert len(rows) == len(records)
    for row in rows:
        rec = records[int(row["p"])]
        if "error" in rec:
            assert row["error_code"] == rec["error"]["code"]
            continue
        for key in ("C_B", "level_group_order", "mass", "irr_count",
                    "dim_bound", "final_bound"):
            assert row[key] == rec[key]
        assert row["zeta_F"] == ";".join(rec["zeta_F"])
        assert row["asymptotic_exponent"] == str(rec["asymptotic_exponent"])
        at_p = ";".join(
            f"{v['prime']}^{v['residue_degree']}"
            for v in rec["delta_prime"]["at_p"]
        )
        assert row["delta_prime_at_p"] == at_p


def test_rationals_in_output_are_reduced(tmp_path):
    doc = dict(SWEEP_DOC, m=2)
    _, text = run_cli(tmp_path, doc)
    for rec in json.loads(text):
        if "error" in rec:
            continue
        for token in rec["zeta_F"] + [rec["C_B"]]:
            num, den = map(int, token.split("/"))
            assert den > 0
            from math import gcd

            assert gcd(abs(num), den) == 1


def test_config_errors_name_the_field():
    with pytest.raises(ConfigError, match="field"):
        parse_config({"m": 1, "N": 3, "p": 5})
    with pytest.raises(ConfigError, match="'m'"):
        parse_config({"field": {"kind": "rational"}, "N": 3, "p": 5})
    bad_sweep = {k: v for k, v in SIEGEL_DOC.items() if k != "p"}
    bad_sweep["p_sweep"] = {"from": 5, "to": 3}
    with pytest.raises(ConfigError, match="endpoints"):
        parse_config(bad_sweep)
    bad_sweep["p_sweep"] = {"from": 1, "to": 4}
    with pytest.raises(ConfigError, match="endpoints"):
        parse_config(bad_sweep)
    with pytest.raises(ConfigError, match="exactly one"):
        parse_config({"field": {"kind": "rational"}, "m": 1, "N": 3})
    with pytest.raises(ConfigError, match="kind"):
        parse_config(dict(SIEGEL_DOC, field={"kind": "cubic"}))
    with pytest.raises(ConfigError, match="residue_degree"):
        parse_config(dict(SIEGEL_DOC, quaternion_ramification=[{"prime": 3}]))


def test_exit_code_on_bad_config(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text("{not json")
    assert main([str(cfg)]) == EXIT_CONFIG
    cfg.write_text(json.dumps({"field": {"kind": "rational"}, "m": 1, "N": 3}))
    assert main([str(cfg)]) == EXIT_CONFIG
    assert main(["/nonexistent/config.json"]) == EXIT_CONFIG


def test_exit_code_when_all_records_fail(tmp_path):
    doc = dict(SIEGEL_DOC, p=3)  # p | N
    status, text = run_cli(tmp_path, doc)
    assert status == EXIT_ALL_FAILED
    records = json.loads(text)
    assert records[0]["error"]["code"] == "p_divides_level"


def test_oracle_check_inline(tmp_path):
    status, text = run_cli(tmp_path, SIEGEL_DOC, "--oracle-check")
    assert status == EXIT_OK
    rec = json.loads(text)[0]
    assert rec["oracle"] == {"verified": True}

    big = dict(SIEGEL_DOC, p=11)  # characteristic beyond the table fields
    status, text = run_cli(tmp_path, big, "--oracle-check")
    assert status == EXIT_OK
    rec = json.loads(text)[0]
    assert rec["oracle"]["verified"] is False
    assert "skipped" in rec["oracle"]


def test_quadratic_field_config(tmp_path):
    doc = {
        "field": {"kind": "real_quadratic", "disc": 5},
        "quaternion_ramification": [{"prime": 7, "residue_degree": 2},
                                    {"prime": 13, "residue_degree": 2}],
        "m": 1,
        "N": 3,
        "p": 2,
    }
    status, text = run_cli(tmp_path, doc)
    assert status == EXIT_OK
    rec = json.loads(text)[0]
    assert rec["delta_prime"]["away"] == [
        {"prime": 7, "residue_degree": 2},
        {"prime": 13, "residue_degree": 2},
    ]
    assert int(rec["final_bound"]) == int(rec["mass"]) * int(rec["irr_count"]) * int(
        rec["dim_bound"]
    )


def test_render_helpers_round_trip():
    config = parse_config(SIEGEL_DOC)
    records, status = compute_records(config)
    assert status == EXIT_OK
    assert json.loads(render_json(records)) == records
    rows = list(csv.DictReader(io.StringIO(render_csv(records))))
    assert rows[0]["final_bound"] == "192"
