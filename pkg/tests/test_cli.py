import json
import subprocess
import sys

import pytest

from catverify.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_passing_suite_exits_zero(capsys):
    code, out, _ = run(capsys, "--suite", "localization")
    report = json.loads(out)
    assert code == 0 and report["pass"]
    assert {"anchor", "params", "verdict", "counts", "witness", "notes", "suite"} <= set(report["records"][0])


def test_failing_suite_exits_one_with_witness(capsys):
    code, out, _ = run(capsys, "--suite", "filtration", "--format", "text")
    assert code == 1
    assert "witness:" in out and out.rstrip().endswith("overall: FAIL")


def test_unknown_suite_exits_two(capsys):
    code, _, err = run(capsys, "--suite", "nonsense")
    assert code == 2 and "unknown suite" in err


@pytest.mark.parametrize("flag", ["--max-n", "--max-dim", "--chain-bound", "--jobs"])
def test_nonpositive_bounds_exit_two(capsys, flag):
    assert run(capsys, "--suite", "localization", flag, "0")[0] == 2


def test_guard_refuses_huge_bounds(capsys):
    code, _, err = run(capsys, "--suite", "span-segal", "--max-set-size", "9")
    assert code == 2 and "bound guard" in err


def test_empty_range_is_noted(capsys):
    code, out, _ = run(capsys, "--suite", "morita-cospan", "--max-set-size", "0", "--format", "text")
    assert code == 0 and "note: empty range: max-set-size 0" in out


def test_reports_are_byte_stable_across_runs_and_jobs(capsys):
    args = ("--suite", "fibrations", "--seed", "4")
    first = run(capsys, *args)[1]
    second = run(capsys, *args)[1]
    parallel = run(capsys, *args, "--jobs", "3")[1]
    assert first == second == parallel
    assert '"time"' not in first


def test_timings_are_opt_in(capsys):
    out = run(capsys, "--suite", "localization", "--timings")[1]
    assert "time" in json.loads(out)["records"][0]


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.txt"
    code, out, _ = run(capsys, "--suite", "tw-appendix", "--format", "text", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().rstrip().endswith("overall: PASS")


def test_entry_point_runs_as_a_module():
    proc = subprocess.run([sys.executable, "-m", "catverify.cli", "--suite", "localization",
                           "--format", "text"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("PASS [localization]")
