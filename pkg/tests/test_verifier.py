import json
import os

import pytest

from wresidue import reference
from wresidue.report import (
    REPORT_VERSION,
    STATUS_FLAG,
    STATUS_MATCH,
    STATUS_MISMATCH,
    WAIVER_ENV,
    exit_code,
    load_waivers,
    to_markdown,
    waiver_reason,
)
from wresidue.cli import build_parser, main
from wresidue.verifier import UnknownSuiteError, run, run_suite


def _by_suite(text):
    payload = json.loads(text)
    assert payload["version"] == REPORT_VERSION
    return {s["suite"]: s["records"] for s in payload["suites"]}


def test_full_run_deterministic(cli_runs):
    (code1, text1), (code2, text2) = cli_runs
    assert code1 == code2 == 0
    assert text1 == text2


def test_full_run_statuses(cli_runs):
    (_, text), _ = cli_runs
    suites = _by_suite(text)
    assert set(suites) == set(reference.ALL_SUITES)

    assert all(r["status"] == STATUS_MATCH for r in suites["interior"])
    assert len(suites["interior"]) == 12

    flags = [r for r in suites["traces"] if r["status"] == STATUS_FLAG]
    assert [r["id"] for r in flags] == ["two-letter-leaf-pair"]
    assert all(r["status"] == STATUS_MATCH
               for r in suites["traces"] if r not in flags)

    for name, disputed in (("boundary-d2d2", {"c", "total"}),
                           ("boundary-d1d3", {"b", "c", "total"})):
        records = suites[name]
        bad = {r["id"] for r in records if r["status"] == STATUS_MISMATCH}
        assert bad == disputed
        for r in records:
            if r["status"] == STATUS_MISMATCH:
                assert r["waiver"], (name, r["id"])
                assert r["evidence"], (name, r["id"])


def test_waivered_mismatches_carry_numeric_corroboration(cli_runs):
    (_, text), _ = cli_runs
    suites = _by_suite(text)
    for name in ("boundary-d2d2", "boundary-d1d3"):
        for r in suites[name]:
            if r["status"] != STATUS_MISMATCH:
                continue
            evidence = "\n".join(r["evidence"])
            assert "engine vs recorded" in evidence
            assert "corroboration incomplete" not in r["note"]
            assert "frozen re-derived value: True" in evidence


def test_markdown_rendering(model):
    rep = run_suite("interior", model)
    text = to_markdown([rep])
    assert text.startswith(f"# Verification report ({REPORT_VERSION})")
    assert "## suite: interior" in text
    assert "| record | status | waiver |" in text


def test_unknown_suite_rejected(model):
    with pytest.raises(UnknownSuiteError):
        run_suite("bogus", model)
    with pytest.raises(UnknownSuiteError):
        run(("bogus",))


def test_exit_code_one_without_waivers_and_intermediates(model, tmp_path):
    rep = run_suite("boundary-d2d2", model, waivers=(), emit_dir=str(tmp_path))
    assert {r.record_id for r in rep.unwaivered_mismatches()} == {"c", "total"}
    assert exit_code([rep]) == 1
    written = sorted(os.listdir(tmp_path))
    assert written
    assert all(name.startswith("boundary-d2d2-") for name in written)
    by_id = {r.record_id: r for r in rep.records}
    assert by_id["c"].intermediates in written


def test_corrupt_recorded_table_fails_run(model, monkeypatch):
    orig = reference.expected_d2d2

    def tampered(m):
        table = dict(orig(m))
        table["a-II"] = table["a-II"] * 2
        return table

    monkeypatch.setattr(reference, "expected_d2d2", tampered)
    rep = run_suite("boundary-d2d2", model)
    bad = {r.record_id for r in rep.unwaivered_mismatches()}
    assert "a-II" in bad
    assert exit_code([rep]) == 1


def test_waiver_file_from_environment(tmp_path):
    path = tmp_path / "waivers.json"
    path.write_text(json.dumps(
        [{"suite": "boundary-d2d2", "label": "a-II", "reason": "test entry"}]))
    waivers = load_waivers({WAIVER_ENV: str(path)})
    assert waiver_reason(waivers, "boundary-d2d2", "a-II") == "test entry"
    assert waiver_reason(waivers, "boundary-d2d2", "c")  # builtin survives
    assert not waiver_reason(waivers, "boundary-d2d2", "a-I")


def test_environment_waiver_flows_through_run(model, monkeypatch, tmp_path):
    orig = reference.expected_d2d2

    def tampered(m):
        table = dict(orig(m))
        table["a-II"] = table["a-II"] * 2
        return table

    monkeypatch.setattr(reference, "expected_d2d2", tampered)
    code_bad, _ = run(("boundary-d2d2",), environ={})
    assert code_bad == 1
    path = tmp_path / "waivers.json"
    path.write_text(json.dumps(
        [{"suite": "boundary-d2d2", "label": "a-II", "reason": "test entry"},
         {"suite": "boundary-d2d2", "label": "recorded-sum-identity",
          "reason": "tampered table breaks the internal sum"}]))
    code_ok, text = run(("boundary-d2d2",), environ={WAIVER_ENV: str(path)})
    assert code_ok == 0
    record = {r["id"]: r for r in _by_suite(text)["boundary-d2d2"]}["a-II"]
    assert record["waiver"] == "test entry"


# -- command line ------------------------------------------------------------


def test_cli_json_run(capsys):
    code = main(["--suite", "interior"])
    out = capsys.readouterr().out
    assert code == 0
    payload = json.loads(out)
    assert payload["version"] == REPORT_VERSION
    assert [s["suite"] for s in payload["suites"]] == ["interior"]


def test_cli_md_format(capsys):
    code = main(["--suite", "interior", "--format", "md"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.startswith("# Verification report")


def test_cli_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main(["--suite", "bogus"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["--format", "xml"])
    assert exc.value.code == 2


def test_cli_parser_defaults():
    args = build_parser().parse_args([])
    assert args.suite == "all"
    assert args.fmt == "json"
    assert args.emit_intermediates is None
