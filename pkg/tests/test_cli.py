"""End-to-end command line behavior and exit codes."""
import json

import pytest

from intervalmine.cli import DATA_ERROR, USAGE_ERROR, main

from conftest import EXAMPLE_DATA

UTILITY_TEXT = "A\t2\nB\t1\nC\t1\nD\t3\nE\t2\nF\t5\n"


@pytest.fixture
def data_file(tmp_path):
    f = tmp_path / "events.tsv"
    f.write_text(EXAMPLE_DATA)
    return str(f)


@pytest.fixture
def utility_file(tmp_path):
    f = tmp_path / "utilities.tsv"
    f.write_text(UTILITY_TEXT)
    return str(f)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def mine_args(data_file, utility_file, *extra):
    return (
        "mine", "--data", data_file, "--utilities", utility_file,
        "--xi", "22", "-K", "3", "-Z", "2", *extra,
    )


# --- exit codes ---------------------------------------------------------------


def test_missing_required_flag_is_usage_error(capsys, data_file):
    code, _, err = run(capsys, "mine", "--data", data_file, "-K", "3", "-Z", "2")
    assert code == USAGE_ERROR
    assert "--xi" in err


def test_unknown_strategy_is_usage_error(capsys, data_file, utility_file):
    code, _, err = run(
        capsys, *mine_args(data_file, utility_file, "--strategy", "twu")
    )
    assert code == USAGE_ERROR
    assert "twu" in err


def test_multiple_strategies_require_benchmark(capsys, data_file, utility_file):
    code, _, err = run(
        capsys, *mine_args(data_file, utility_file, "--strategy", "ldc,pdc")
    )
    assert code == USAGE_ERROR
    assert "--benchmark" in err


def test_invalid_threshold_is_usage_error(capsys, data_file, utility_file):
    code, _, err = run(
        capsys, "mine", "--data", data_file, "--utilities", utility_file,
        "--xi", "1.5", "--xi-mode", "relative", "-K", "3", "-Z", "2",
    )
    assert code == USAGE_ERROR


def test_missing_data_file_is_data_error(capsys, tmp_path, utility_file):
    code, _, err = run(
        capsys, "mine", "--data", str(tmp_path / "nope.tsv"),
        "--utilities", utility_file, "--xi", "1", "-K", "2", "-Z", "2",
    )
    assert code == DATA_ERROR


def test_malformed_line_is_data_error(capsys, tmp_path, utility_file):
    bad = tmp_path / "bad.tsv"
    bad.write_text("1 A 12 6\n")
    code, _, err = run(
        capsys, "mine", "--data", str(bad), "--utilities", utility_file,
        "--xi", "1", "-K", "2", "-Z", "2",
    )
    assert code == DATA_ERROR
    assert "line 1" in err


def test_missing_utilities_without_default_is_data_error(capsys, data_file, tmp_path):
    code, _, err = run(
        capsys, "mine", "--data", data_file,
        "--utilities", str(tmp_path / "nope.tsv"),
        "--xi", "1", "-K", "2", "-Z", "2",
    )
    assert code == DATA_ERROR


def test_incomplete_utility_table_is_data_error(capsys, data_file, tmp_path):
    partial = tmp_path / "partial.tsv"
    partial.write_text("A\t2\n")
    code, _, err = run(
        capsys, "mine", "--data", data_file, "--utilities", str(partial),
        "--xi", "1", "-K", "2", "-Z", "2",
    )
    assert code == DATA_ERROR
    assert "'B'" in err


# --- mining reports -----------------------------------------------------------


def test_mine_reports_the_boundary_pattern(capsys, data_file, utility_file):
    code, out, _ = run(capsys, *mine_args(data_file, utility_file))
    assert code == 0
    report = json.loads(out)
    assert report["threshold"] == 22.0
    assert report["dataset"]["sequences"] == 4
    assert report["dataset"]["intervals"] == 17
    assert report["dataset"]["total_utility"] == 134.0
    assert {"pattern": [["A"], ["B"]], "umax": 22.0} in report["patterns"]
    assert "pdc" in report["stats"]
    assert "elapsed_ms" not in report["stats"]["pdc"]


def test_reports_are_byte_identical(capsys, data_file, utility_file):
    _, first, _ = run(capsys, *mine_args(data_file, utility_file, "--threads", "4"))
    _, second, _ = run(capsys, *mine_args(data_file, utility_file, "--threads", "4"))
    assert first == second


def test_threads_do_not_change_the_patterns(capsys, data_file, utility_file):
    _, seq, _ = run(capsys, *mine_args(data_file, utility_file))
    _, par, _ = run(capsys, *mine_args(data_file, utility_file, "--threads", "4"))
    assert json.loads(seq)["patterns"] == json.loads(par)["patterns"]


def test_timings_flag_adds_elapsed(capsys, data_file, utility_file):
    code, out, _ = run(capsys, *mine_args(data_file, utility_file, "--timings"))
    assert code == 0
    assert "elapsed_ms" in json.loads(out)["stats"]["pdc"]


def test_table_format(capsys, data_file, utility_file):
    code, out, _ = run(
        capsys, *mine_args(data_file, utility_file, "--format", "table")
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# dataset: 4 sequences, 17 intervals")
    assert "pattern\tumax" in lines
    assert "{A}{B}\t22.0" in lines


def test_output_file(capsys, data_file, utility_file, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(
        capsys, *mine_args(data_file, utility_file, "--output", str(target))
    )
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["threshold"] == 22.0


def test_default_utility_fills_all_labels(capsys, data_file):
    code, out, _ = run(
        capsys, "mine", "--data", data_file, "--default-utility", "1",
        "--xi", "0.25", "--xi-mode", "relative", "-K", "4", "-Z", "5",
        "--strategy", "pdc",
    )
    assert code == 0
    report = json.loads(out)
    # every label now worth 1: total utility is the summed coverage
    assert report["config"]["default_utility"] == 1.0
    assert report["patterns"]
    assert report["threshold"] == pytest.approx(0.25 * report["dataset"]["total_utility"])


def test_default_utility_with_absent_table_path(capsys, data_file, tmp_path):
    code, out, _ = run(
        capsys, "mine", "--data", data_file,
        "--utilities", str(tmp_path / "absent.tsv"), "--default-utility", "1",
        "--xi", "1", "-K", "2", "-Z", "2",
    )
    assert code == 0


def test_benchmark_compares_strategies(capsys, data_file, utility_file):
    code, out, _ = run(
        capsys,
        *mine_args(data_file, utility_file, "--strategy", "none,ldc,pdc",
                   "--benchmark"),
    )
    assert code == 0
    report = json.loads(out)
    assert set(report["stats"]) == {"none", "ldc", "pdc"}
    gen = {k: v["candidates_generated"] for k, v in report["stats"].items()}
    assert gen["pdc"] <= gen["ldc"] <= gen["none"]


def test_relative_threshold_report(capsys, data_file, utility_file):
    code, out, _ = run(
        capsys, "mine", "--data", data_file, "--utilities", utility_file,
        "--xi", "0.25", "--xi-mode", "relative", "-K", "4", "-Z", "5",
        "--strategy", "pdc",
    )
    assert code == 0
    report = json.loads(out)
    assert report["threshold"] == 33.5
    assert report["config"]["K"] == 4
    assert report["config"]["Z"] == 5


# --- gen and check --------------------------------------------------------------


def test_gen_writes_parseable_files(capsys, tmp_path):
    data = tmp_path / "gen.tsv"
    utils = tmp_path / "gen-utilities.tsv"
    code, out, _ = run(
        capsys, "gen", "--seed", "7", "--output", str(data),
        "--utilities-out", str(utils),
    )
    assert code == 0
    from intervalmine.io import parse_dataset, parse_utilities

    d = parse_dataset(str(data))
    t = parse_utilities(str(utils))
    assert len(d) > 0
    for label in d.labels():
        assert label in t


def test_gen_is_deterministic(capsys):
    code1, out1, _ = run(capsys, "gen", "--seed", "11")
    code2, out2, _ = run(capsys, "gen", "--seed", "11")
    assert code1 == code2 == 0
    assert out1 == out2


def test_gen_rejects_bad_params(capsys):
    code, _, err = run(capsys, "gen", "--sequences", "0")
    assert code == USAGE_ERROR


def test_check_small_run(capsys):
    code, out, _ = run(capsys, "check", "--seed", "3", "--instances", "4")
    assert code == 0
    assert "agree with brute force" in out
