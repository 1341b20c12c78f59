from __future__ import annotations

import csv
import io
import json

import pytest

from binomial_collisions.cli import main
from binomial_collisions.cli.commands import parse_bound, parse_range
from binomial_collisions.cli.output import OutputRecord, RecordWriter
from binomial_collisions.config import EXIT_OK, EXIT_USAGE
from binomial_collisions.errors import ConfigurationError


def run(capsys, *argv: str) -> tuple[int, list[dict]]:
    code = main(["--quiet", *argv])
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.splitlines() if line]


# --- output ---------------------------------------------------------------


def test_jsonl_drops_missing_fields() -> None:
    stream = io.StringIO()
    RecordWriter(stream).write(OutputRecord("collision", 16, 2, 10, 3, value="120"))
    assert stream.getvalue() == '{"type": "collision", "n": 16, "k": 2, "m": 10, "l": 3, "value": "120"}\n'


def test_csv_has_a_fixed_header() -> None:
    stream = io.StringIO()
    writer = RecordWriter(stream, "csv")
    writer.write(OutputRecord("near", 6, 3, 7, 2, 1, "21"))
    writer.write(OutputRecord("stat", k=3, value="5", extras={"prime": 7}))
    assert stream.getvalue().splitlines() == [
        "type,n,k,m,l,d,value,extras",
        "near,6,3,7,2,1,21,",
        'stat,,3,,,,5,"{""prime"":7}"',
    ]


def test_unknown_record_type_is_rejected() -> None:
    with pytest.raises(ValueError):
        OutputRecord("bogus")


def test_bounds_and_ranges() -> None:
    assert parse_bound("10^10") == 10**10
    assert parse_bound("12345678901234567890123") == 12345678901234567890123
    assert parse_range("5..30") == (5, 30)
    assert parse_bound("7^0") == 1
    with pytest.raises(ConfigurationError):
        parse_bound("ten")
    with pytest.raises(ConfigurationError):
        parse_bound("10^-5")
    with pytest.raises(ConfigurationError):
        parse_range("30..5")


# --- scan -----------------------------------------------------------------


def test_scan_collisions(capsys) -> None:
    code, records = run(capsys, "scan", "--max-index", "20", "--mode", "collisions", "--format", "jsonl")
    assert code == EXIT_OK
    assert [r["value"] for r in records] == ["120", "210", "3003"]
    assert {r["type"] for r in records} == {"collision"}


def test_trivial_scan(capsys) -> None:
    assert run(capsys, "scan", "--max-index", "1") == (EXIT_OK, [])


def test_scan_near_rows(capsys) -> None:
    code, records = run(capsys, "scan", "--max-index", "60", "--mode", "near", "--near-exponent", "3")
    assert code == EXIT_OK
    d1 = sorted(int(r["value"]) for r in records if r["type"] == "near" and r["d"] == 1)
    assert d1 == [21, 36, 56, 253, 496, 561, 1771, 5985]


@pytest.mark.parametrize(
    "argv",
    [
        ["scan", "--max-index", "20", "--exact", "--precision-bits", "64"],
        ["scan", "--max-index", "20", "--near-exponent", "5"],
        ["scan", "--max-index", "0"],
        ["scan"],
        ["scan", "--max-index", "20", "--precision-bits", "4"],
        [],
    ],
)
def test_scan_usage_errors(capsys, argv: list[str]) -> None:
    assert main(["--quiet", *argv]) == EXIT_USAGE
    assert capsys.readouterr().out == ""


def test_csv_and_file_output(tmp_path, capsys) -> None:
    target = tmp_path / "out.csv"
    assert main(["--quiet", "scan", "--max-index", "20", "--format", "csv", "--output", str(target)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    lines = target.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "type,n,k,m,l,d,value,extras"
    assert lines[1] == "collision,16,2,10,3,,120,"
    assert len(lines) == 4


@pytest.mark.parametrize("fmt", ["jsonl", "csv"])
@pytest.mark.parametrize(
    "argv",
    [
        ["scan", "--max-index", "40", "--mode", "near"],
        ["sieve", "--k", "2", "--l", "3", "--max-value", "10^8"],
        ["akp", "--k", "3", "--prime-range", "5..60"],
    ],
)
def test_reruns_are_byte_identical(tmp_path, capsys, fmt: str, argv: list[str]) -> None:
    outputs = []
    for name in ("first", "second"):
        target = tmp_path / name
        assert main(["--quiet", *argv, "--format", fmt, "--output", str(target)]) == EXIT_OK
        outputs.append(target.read_bytes())
    assert outputs[0] and outputs[0] == outputs[1]


def test_csv_carries_the_extras(capsys) -> None:
    assert main(["--quiet", "akp", "--k", "3", "--p", "7", "--format", "csv"]) == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 1
    extras = json.loads(rows[0]["extras"])
    assert extras["prime"] == 7 and extras["A"] == 5


def test_table_output(capsys) -> None:
    assert main(["--quiet", "scan", "--max-index", "20", "--format", "table"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3
    assert "value=3003" in lines[-1]


# --- sieve ----------------------------------------------------------------


def test_sieve_collisions(capsys) -> None:
    code, records = run(capsys, "sieve", "--k", "2", "--l", "3", "--max-value", "10000000000")
    assert code == EXIT_OK
    stats = [r for r in records if r["type"] == "stat"]
    assert stats and all("prime" in r["extras"] for r in stats)
    assert [r["m"] for r in records if r["type"] == "collision"] == [10, 22, 36]


def test_sieve_power_notation(capsys) -> None:
    code, records = run(capsys, "sieve", "--k", "2", "--l", "5", "--max-value", "10^5")
    assert code == EXIT_OK
    collisions = [r for r in records if r["type"] == "collision"]
    assert [(r["n"], r["m"]) for r in collisions] == [(78, 15), (153, 19)]


def test_sieve_negative_exponent_is_a_usage_error(capsys) -> None:
    assert main(["--quiet", "sieve", "--k", "2", "--l", "3", "--max-value", "10^-5"]) == EXIT_USAGE
    assert capsys.readouterr().out == ""


def test_sieve_all(capsys) -> None:
    code, records = run(capsys, "sieve", "--all", "--max-value", "10^5")
    assert code == EXIT_OK
    stats = [(r["k"], r["l"]) for r in records if r["type"] == "stat"]
    assert len(stats) == 24
    assert stats == sorted(stats, key=lambda pair: (pair[1], pair[0]))
    collisions = [(r["n"], r["k"], r["m"], r["l"]) for r in records if r["type"] == "collision"]
    assert collisions == [(78, 2, 14, 6), (15, 5, 14, 6), (221, 2, 17, 8)]


def test_sieve_all_with_settled_pairs(capsys) -> None:
    code, records = run(capsys, "sieve", "--all", "--include-settled", "--max-value", "10^5", "--jobs", "2")
    assert code == EXIT_OK
    values = sorted(int(r["value"]) for r in records if r["type"] == "collision")
    assert values == [120, 210, 1540, 3003, 3003, 3003, 7140, 11628, 24310]


@pytest.mark.parametrize(
    "argv",
    [
        ["--all", "--k", "2", "--max-value", "10^5"],
        ["--all", "--max-value", "10^5", "--stop-after", "1"],
        ["--include-settled", "--k", "2", "--l", "3", "--max-value", "10^5"],
        ["--k", "2", "--max-value", "10^5"],
    ],
)
def test_sieve_all_usage_errors(capsys, argv: list[str]) -> None:
    assert main(["--quiet", "sieve", *argv]) == EXIT_USAGE


def test_sieve_resume(tmp_path, capsys) -> None:
    path = str(tmp_path / "state.json")
    base = ["sieve", "--k", "2", "--l", "3", "--max-value", "10^10", "--checkpoint", path]
    code, partial = run(capsys, *base, "--stop-after", "2")
    assert code == EXIT_OK
    assert [r for r in partial if r["type"] == "collision"] == []
    assert any(r["type"] == "survivor" for r in partial)
    code, records = run(capsys, *base, "--resume")
    assert code == EXIT_OK
    assert [r["m"] for r in records if r["type"] == "collision"] == [10, 22, 36]


def test_sieve_resume_needs_a_checkpoint(capsys) -> None:
    assert main(["--quiet", "sieve", "--k", "2", "--l", "3", "--max-value", "1000", "--resume"]) == EXIT_USAGE


def test_sieve_resume_with_another_plan(tmp_path, capsys) -> None:
    path = str(tmp_path / "state.json")
    run(capsys, "sieve", "--k", "2", "--l", "3", "--max-value", "10^6", "--checkpoint", path, "--stop-after", "1")
    code = main(["--quiet", "sieve", "--k", "2", "--l", "3", "--max-value", "10^7", "--checkpoint", path, "--resume"])
    assert code == EXIT_USAGE


# --- akp ------------------------------------------------------------------


def test_akp_single_prime(capsys) -> None:
    code, records = run(capsys, "akp", "--k", "3", "--p", "7")
    assert code == EXIT_OK
    (record,) = records
    assert record["value"] == "5"
    assert record["extras"]["density"] == "5/7"
    assert record["extras"]["closed_form"] == 5
    assert record["extras"]["density_limit"] == "2/3"


def test_akp_closed_form_match(capsys) -> None:
    code, records = run(capsys, "akp", "--k", "4", "--p", "7", "--compare-closed-form")
    assert code == EXIT_OK
    assert records[0]["extras"]["A"] == 3
    assert records[0]["extras"]["match"] is True


def test_akp_identity_map(capsys) -> None:
    code, records = run(capsys, "akp", "--k", "1", "--p", "11")
    assert code == EXIT_OK
    assert records[0]["value"] == "11"
    assert "closed_form" not in records[0]["extras"]


def test_akp_prime_range(capsys) -> None:
    code, records = run(capsys, "akp", "--k", "3", "--prime-range", "2..30", "--compare-closed-form")
    assert code == EXIT_OK
    assert [r["extras"]["prime"] for r in records] == [5, 7, 11, 13, 17, 19, 23, 29]
    assert all(r["extras"]["match"] for r in records)


def test_akp_small_prime_is_a_usage_error(capsys) -> None:
    assert main(["--quiet", "akp", "--k", "3", "--p", "3"]) == EXIT_USAGE


# --- families -------------------------------------------------------------


def test_families_list(capsys) -> None:
    code, records = run(capsys, "families", "list")
    assert code == EXIT_OK
    assert [r["extras"]["family"] for r in records] == [1, 2, 3, 4, 5, 6, 7]
    assert [r["extras"]["quality"] for r in records] == ["3", "3", "5", "5", "5", "3", "3"]


def test_families_eval(capsys) -> None:
    code, (record,) = run(capsys, "families", "eval", "--family", "1", "--x", "2")
    assert code == EXIT_OK
    assert (record["n"], record["k"], record["m"], record["l"], record["d"]) == (27, 3, 77, 2, 1)
    assert record["value"] == "2926"
    assert record["extras"]["holds"] is True


def test_families_eval_unknown_family(capsys) -> None:
    assert main(["--quiet", "families", "eval", "--family", "9", "--x", "2"]) == EXIT_USAGE


def test_families_verify(capsys) -> None:
    code, (record,) = run(capsys, "families", "verify", "--family", "1", "--x-max", "100")
    assert code == EXIT_OK
    assert record["extras"]["checked"] == 100
    assert record["extras"]["ok"] is True


def test_families_verify_failure_exits_three(capsys) -> None:
    code, (record,) = run(capsys, "families", "verify", "--family", "1", "--x-max", "20", "--exponent", "5")
    assert code == 3
    assert record["extras"]["inadmissible"][0] == 11


def test_families_fib(capsys) -> None:
    code, records = run(capsys, "families", "fib", "--max-i", "4")
    assert code == EXIT_OK
    assert len(records) == 4
    last = records[-1]
    assert (last["n"], last["k"], last["m"], last["l"]) == (4895, 1869, 4894, 1870)
    assert last["extras"]["exact_equal"] is True


def test_catalog_verify(capsys) -> None:
    code, records = run(capsys, "families", "catalog", "verify")
    assert code == EXIT_OK
    assert len(records) == 29
    assert all(r["type"] == "verify" and r["extras"]["ok"] for r in records)


def test_catalog_export(capsys) -> None:
    code, records = run(capsys, "families", "catalog", "export")
    assert code == EXIT_OK
    kinds = [r["type"] for r in records]
    assert kinds.count("collision") == 9 and kinds.count("near") == 20
    assert records[-1]["value"] == "12864662659597529"
