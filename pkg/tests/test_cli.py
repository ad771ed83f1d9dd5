import contextlib
import io
import json
from pathlib import Path

import pytest

from anticyclo.cli import main, parse_module_spec

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"
ALL_FLAGS = {
    name: True
    for name in ("p_nonsplit", "cm_field", "A_k_nontrivial", "A_kplus_trivial", "no_p_roots_of_unity")
}


def run(argv):
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = main(argv)
    return code, out.getvalue()


def test_module_spec_parser():
    module = parse_module_spec("T^2+3T+9,p^2,T-3", 3)
    assert module.mu_parts == (2,)
    assert module.poly_parts == ((9, 3, 1), (-3, 1))
    assert parse_module_spec("p", 3).mu_parts == (1,)
    with pytest.raises(ValueError):
        parse_module_spec("T^2+junk", 3)
    with pytest.raises(ValueError):
        parse_module_spec("", 3)


def test_growth_command_examples():
    code, out = run(["--no-timestamps", "growth", "--p", "3", "--module", "T-3", "--n-max", "5"])
    assert code == 0
    assert "fitted_lambda=1" in out and "fitted_nu=1" in out
    code, out = run(["--no-timestamps", "growth", "--p", "3", "--module", "p^1", "--n-max", "3"])
    assert code == 0
    assert "fitted_mu=1" in out
    code, _ = run(["growth", "--p", "3", "--module", "T", "--n-max", "4"])
    assert code == 2


def test_inverting_search_command():
    code, out = run(["--no-timestamps", "verify-lemma1", "--p", "3", "--u-max", "1"])
    assert code == 0
    assert "automorphisms=54" in out
    assert "inverting=0" in out


def test_inverting_search_reports_guard_skips():
    code, out = run(["--no-timestamps", "verify-lemma1", "--p", "31", "--u-max", "2"])
    assert code == 0
    assert "skipped" in out


def test_campaign_command_small():
    code, out = run(
        ["--no-timestamps", "--seed", "7", "lemma2-campaign", "--p", "3",
         "--r", "1", "2", "--trials", "15"]
    )
    assert code == 0
    assert "constructed orbit control" in out
    code, _ = run(["lemma2-campaign", "--p", "3", "--r", "7", "--trials", "1"])
    assert code == 2  # r > 6 is a usage error


def test_campaign_with_order_four_exponent():
    code, out = run(
        ["--no-timestamps", "lemma2-campaign", "--p", "5", "--zeta", "t2",
         "--r", "4", "--trials", "5", "--precision", "5"]
    )
    assert code == 0
    assert "d=4,s=1" in out


def test_audit_parity_on_bundled_models():
    for name in ("model_d2.json", "model_d4.json"):
        code, out = run(["--no-timestamps", "audit-parity", str(DATA / name)])
        assert code == 0, name
        assert "consistent" in out


def test_audit_parity_rejects_corrupted_model(tmp_path):
    raw = json.loads((DATA / "model_d2.json").read_text())
    raw["D"][0][0] = (raw["D"][0][0] + 1) % 81
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(raw))
    code, _ = run(["audit-parity", str(bad)])
    assert code == 2


def test_audit_parity_rejects_malformed_file(tmp_path):
    bad = tmp_path / "nonsense.json"
    bad.write_text("{\"p\": 3}")
    code, _ = run(["audit-parity", str(bad)])
    assert code == 2


def test_check_records_exit_codes(tmp_path):
    good = tmp_path / "good.jsonl"
    good.write_text(
        json.dumps({"p": 3, "n": 1, "inv": [9, 3], "flags": ALL_FLAGS, "label": "a"}) + "\n"
    )
    assert run(["check-records", str(good)])[0] == 0

    cyclic = tmp_path / "cyclic.jsonl"
    cyclic.write_text(
        json.dumps({"p": 3, "n": 1, "inv": [27], "flags": ALL_FLAGS, "label": "a"}) + "\n"
    )
    code, out = run(["--no-timestamps", "check-records", str(cyclic)])
    assert code == 1
    assert "contradiction" in out

    broken = tmp_path / "broken.jsonl"
    broken.write_text("{this is not json}\n")
    assert run(["check-records", str(broken)])[0] == 2

    assert run(["check-records", str(tmp_path / "missing.jsonl")])[0] == 2


def test_check_records_bundled_sample():
    code, out = run(["--no-timestamps", "check-records", str(DATA / "records_sample.jsonl")])
    assert code == 0
    assert "lambda=2" in out


def test_reports_are_deterministic():
    argv = ["--no-timestamps", "--seed", "3", "lemma2-campaign", "--p", "3", "--r", "1", "--trials", "10"]
    assert run(argv) == run(argv)
    argv = ["--no-timestamps", "check-records", str(DATA / "records_sample.jsonl")]
    assert run(argv) == run(argv)


def test_machine_format_is_json_lines():
    code, out = run(
        ["--no-timestamps", "--format", "machine", "check-records", str(DATA / "records_sample.jsonl")]
    )
    assert code == 0
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert lines[0]["record"] == "header"
    assert lines[0]["command"] == "check-records"
    assert lines[-1]["record"] == "summary"
    kinds = {line.get("record") for line in lines}
    assert kinds == {"header", "check", "summary"}
    checks = [line for line in lines if line["record"] == "check"]
    assert all("verdict" in c for c in checks)


def test_usage_errors_exit_2():
    assert run(["growth", "--p", "3"])[0] == 2  # missing --module
    assert run(["no-such-command"])[0] == 2
