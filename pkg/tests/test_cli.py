import json
import subprocess
import sys

import pytest

from addcomp import NatSet, generate, parse_spec, read_set_file, write_set_file
from addcomp.cli import main


def test_build_verify_round_trip(tmp_path):
    out = tmp_path / "B.set"
    report_path = tmp_path / "R.json"
    code = main(
        ["build", "powers:2", "--horizon", "65536", "--out", str(out), "--report", str(report_path)]
    )
    assert code == 0
    report = json.loads(report_path.read_text())
    assert report["parameters"]["gamma"] == 6
    assert report["parameters"]["threshold"] == 128
    assert report["coverage"]["ok"] is True
    lo, hi = report["coverage"]["lo"], report["coverage"]["hi"]
    code = main(["verify", "powers:2", str(out), "--range", f"{lo}..{hi}", "--horizon", "65536"])
    assert code == 0


def test_report_schema_keys(tmp_path):
    report_path = tmp_path / "R.json"
    assert main(["build", "powers:2", "--horizon", "4096", "--report", str(report_path)]) == 0
    report = json.loads(report_path.read_text())
    assert list(report) == [
        "tool_version",
        "spec",
        "horizon",
        "parameters",
        "blocks",
        "coverage",
        "density_samples",
    ]
    assert set(report["parameters"]) >= {"n0", "alpha", "r", "p", "gamma", "threshold"}
    assert set(report["coverage"]) == {"lo", "hi", "ok", "missing_count"}
    assert all({"exponent", "base", "size", "degenerate"} <= set(b) for b in report["blocks"])
    assert all({"n", "count", "ratio"} == set(s) for s in report["density_samples"])


def test_build_output_is_disjoint_from_base(tmp_path):
    out = tmp_path / "B.set"
    assert main(["build", "powers:2", "--horizon", "4096", "--out", str(out)]) == 0
    b = read_set_file(out)
    a = generate(parse_spec("powers:2", 4096))
    assert b.with_horizon(4096).isdisjoint(a)


def test_build_ratio_failure_exits_2(capsys):
    assert main(["build", "composites", "--horizon", "100000"]) == 2
    assert "error" in capsys.readouterr().err


def test_build_empty_file_exits_2(tmp_path):
    empty = tmp_path / "empty.set"
    empty.write_text("# nothing\n")
    assert main(["build", f"file:{empty}", "--horizon", "1024"]) == 2


def test_build_bad_spec_exits_2():
    assert main(["build", "powersof:2", "--horizon", "1024"]) == 2


def test_verify_detects_missing(tmp_path, capsys):
    broken = tmp_path / "broken.set"
    write_set_file(broken, NatSet([5], 10))
    assert main(["verify", "powers:2", str(broken), "--range", "100..200", "--horizon", "1024"]) == 1
    assert "missing" in capsys.readouterr().out


def test_verify_lists_at_most_twenty(tmp_path, capsys):
    broken = tmp_path / "broken.set"
    write_set_file(broken, NatSet([5], 10))
    main(["verify", "powers:2", str(broken), "--range", "100..200", "--horizon", "1024"])
    out = capsys.readouterr().out
    assert "more" in out
    listed = out.split(":")[1].split("...")[0].split()
    assert len(listed) == 20


def test_thin_dyadic_mode(tmp_path):
    out = tmp_path / "S.set"
    report_path = tmp_path / "T.json"
    code = main(
        ["thin", "powers:2", "--q", "64", "--horizon", "512",
         "--out", str(out), "--report", str(report_path)]
    )
    assert code == 0
    report = json.loads(report_path.read_text())
    assert report["depth"] == 4
    assert report["gain_cutoff"] == 2
    assert report["degenerate"] is False
    assert report["selected_size"] == len(read_set_file(out))
    assert sum(report["gains"]) == 128  # the window (128, 256] is covered once each


def test_thin_explicit_mode(tmp_path):
    a_file = tmp_path / "A.set"
    b_file = tmp_path / "B.set"
    write_set_file(a_file, NatSet([1, 2, 3, 4, 5, 6, 7, 8], 40))
    write_set_file(b_file, NatSet(list(range(11, 41)), 40))
    code = main(
        ["thin", f"file:{a_file}", "--m", "16", "--n", "20",
         "--x1", "10", "--x2", "40", "--b-file", str(b_file), "--horizon", "40"]
    )
    assert code == 0


def test_thin_explicit_mode_requires_all_flags(capsys):
    assert main(["thin", "powers:2", "--horizon", "512", "--m", "16"]) == 2
    assert "--" in capsys.readouterr().err


def test_thin_precondition_failure_exits_2(tmp_path):
    a_file = tmp_path / "A.set"
    write_set_file(a_file, NatSet([9, 10, 11], 64))
    assert main(["thin", f"file:{a_file}", "--q", "8", "--horizon", "64"]) == 2


def test_density_csv(tmp_path, capsys):
    out = tmp_path / "d.csv"
    assert main(["density", "powers:2", "--horizon", "1024", "--samples", "6",
                 "--format", "csv", "--out", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "n,count,ratio"
    last = lines[-1].split(",")
    assert int(last[0]) == 1024
    assert int(last[1]) == 11  # powers of two up to 1024


def test_density_json_stdout(capsys):
    assert main(["density", "powers:2", "--horizon", "64", "--samples", "4"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["horizon"] == 64
    assert payload["samples"][-1]["n"] == 64


def test_gap_exit_codes(capsys):
    evens_h = 200
    assert main(["gap", "composites", "--range", "10..2000", "--horizon", "2000"]) == 0
    code = main(["gap", "powers:2", "--range", "2..200", "--horizon", str(evens_h)])
    assert code == 1
    assert "missing" in capsys.readouterr().out


def test_oracle_command(tmp_path, capsys):
    report_path = tmp_path / "o.json"
    code = main(
        ["oracle", "powers:2", "--horizon", "32", "--m", "8", "--n", "8",
         "--x1", "4", "--x2", "16", "--report", str(report_path)]
    )
    assert code == 0
    payload = json.loads(report_path.read_text())
    assert payload["optimal_size"] <= payload["greedy_size"]
    assert payload["greedy_matches_optimal"] == (payload["optimal_size"] == payload["greedy_size"])


def test_oracle_too_large_exits_2(tmp_path):
    assert main(["oracle", "powers:2", "--horizon", "256", "--m", "32", "--n", "16",
                 "--x1", "16", "--x2", "64"]) == 2


def test_threads_flag_does_not_change_output(tmp_path):
    r1 = tmp_path / "r1.json"
    r2 = tmp_path / "r2.json"
    assert main(["--threads", "1", "build", "powers:2", "--horizon", "4096", "--report", str(r1)]) == 0
    assert main(["--threads", "7", "build", "powers:2", "--horizon", "4096", "--report", str(r2)]) == 0
    assert r1.read_bytes() == r2.read_bytes()


def test_module_entry_point(tmp_path):
    out = tmp_path / "B.set"
    proc = subprocess.run(
        [sys.executable, "-m", "addcomp", "build", "powers:2", "--horizon", "4096",
         "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "coverage" in proc.stdout
    assert out.exists()
