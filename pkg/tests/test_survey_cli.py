import csv
import io
import json

import pytest

from weilspec import cli
from weilspec import survey as sv


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def rows_for(q_max, **kw):
    rows, summary = sv.survey(sv.SurveyConfig(q_max=q_max, **kw))
    return rows, summary


def test_exceptional_row_at_q5():
    rows, summary = rows_for(5)
    row = next(r.record for r in rows if (r.record.q, r.record.s_canonical) == (5, 3))
    assert row.num_values == 4 and not row.is_rational
    assert summary.irrational_four_valued == [(5, 3)]
    assert sorted(summary.exceptional_values) == sorted(
        ["(5+1*sqrt(5))/2", "(5-1*sqrt(5))/2", "(0+2*sqrt(5))/2", "(0-2*sqrt(5))/2"]
    )


def test_no_degenerate_row_with_three_values():
    rows, summary = rows_for(16)
    assert summary.ok
    assert not [r for r in rows if r.record.num_values >= 3 and r.record.is_degenerate]


def test_primes_only():
    rows, _ = rows_for(16, include_prime_powers=False)
    assert {r.record.q for r in rows} == {2, 3, 5, 7, 11, 13}


def test_config_validation():
    with pytest.raises(ValueError):
        sv.SurveyConfig(q_max=1)
    with pytest.raises(ValueError):
        sv.SurveyConfig(q_max=5, jobs=0)
    with pytest.raises(ValueError):
        sv.SurveyConfig(q_max=5, format="xml")


def test_csv_is_deterministic_and_parallel_safe():
    a = sv.rows_to_csv(rows_for(32)[0])
    b = sv.rows_to_csv(rows_for(32)[0])
    c = sv.rows_to_csv(rows_for(32, jobs=2)[0])
    assert a == b == c
    parsed = list(csv.DictReader(io.StringIO(a)))
    assert list(parsed[0]) == sv.CSV_COLUMNS
    keys = [(int(r["q"]), int(r["s"])) for r in parsed]
    assert keys == sorted(keys)


def test_lemma_suite_runs_in_survey():
    rows, summary = rows_for(9, lemma_suite=True)
    assert summary.ok
    assert all(r.suite.get("group_algebra") for r in rows)


def test_spectrum_reports():
    text, doc = sv.spectrum_report("5", 3)
    assert doc["num_values"] == 4 and [v["frequency"] for v in doc["values"]] == [1] * 4
    assert sorted(tuple(v["quad"]) for v in doc["values"]) == [(0, -2), (0, 2), (5, -1), (5, 1)]
    _, doc = sv.spectrum_report("2^3", 3)
    assert doc["num_values"] == 3 and doc["is_rational"]
    _, doc = sv.spectrum_report("7", 1)
    assert {v["value"]: v["frequency"] for v in doc["values"]} == {"7": 1, "0": 5}


def test_verify_all():
    assert sv.verify_all("5", 3) == 0
    assert sv.verify_all("9", 5) == 0


def test_cli_spectrum_and_json():
    code, out = run("spectrum", "5", "3")
    assert code == 0 and "cycle type = (2, 2)" in out
    code, out = run("spectrum", "5", "3", "--json")
    assert code == 0 and json.loads(out)["cycle_type"] == [2, 2]


def test_cli_exit_codes():
    assert run("verify", "5", "2")[0] == cli.EXIT_USAGE
    assert run("spectrum", "6", "1")[0] == cli.EXIT_USAGE
    assert run("bogus")[0] == cli.EXIT_USAGE
    assert run("verify", "5", "3")[0] == cli.EXIT_OK


def test_cli_qcount():
    code, out = run("qcount", "7", "5", "--t", "1,1", "--a", "0", "--b", "0")
    assert code == 0
    assert out.startswith("Q^t_(a,b) = 7")
    assert "FAIL" not in out and "k = 2 formula" in out
    code, _ = run("qcount", "7", "5", "--t", "1,0", "--a", "0", "--b", "0")
    assert code == cli.EXIT_USAGE


def test_cli_algebra_check_filter():
    code, out = run("algebra-check", "7", "5", "--lemma", "omega")
    assert code == 0
    names = [line.split()[1] for line in out.splitlines() if line.startswith("PASS")]
    assert names and all(n.startswith("omega") for n in names)
    assert run("algebra-check", "7", "5", "--lemma", "nothing")[0] == cli.EXIT_USAGE


def test_cli_survey_writes_file(tmp_path):
    path = tmp_path / "out.json"
    code, _ = run("survey", "--q-max", "9", "--format", "json", "--out", str(path))
    assert code == 0
    doc = json.loads(path.read_text())
    assert doc["summary"]["irrational_four_valued"] == [[5, 3]]
