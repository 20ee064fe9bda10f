"""
Test the command-line interface
Output formats, exit codes and cache administration
"""

import json

import pytest

from realbetti.main import main
from realbetti.schemas import BettiResultPayload


def run(capsys, *argv):
    code = main(["--no-cache", *argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ==========================================
# COMPUTE
# ==========================================

def test_compute_json(capsys):
    code, out, _ = run(capsys, "compute", "--rank", "2", "--degree", "1", "--genus", "2", "--circles", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["coeffs"] == ["1", "4", "7", "7", "4", "1"]
    assert data["degree"] == 5
    assert data["palindromic"] is True
    assert data["params"]["circles"] == 2


def test_compute_json_round_trips_byte_identically(capsys):
    _, out, _ = run(capsys, "compute", "--rank", "3", "--degree", "1", "--genus", "2", "--circles", "1", "--format", "json")
    line = out.strip()
    assert BettiResultPayload.model_validate_json(line).model_dump_json() == line


def test_compute_rank_one_text(capsys):
    code, out, _ = run(capsys, "compute", "--rank", "1", "--degree", "0", "--genus", "4", "--circles", "1")
    assert code == 0
    assert "P(t) = t^4 + 4t^3 + 6t^2 + 4t + 1" in out
    assert "coefficients: 1 4 6 4 1" in out
    assert "palindromic: yes" in out


def test_compute_csv(capsys):
    code, out, _ = run(capsys, "compute", "--rank", "2", "--degree", "1", "--genus", "2", "--circles", "1", "--format", "csv")
    assert code == 0
    assert out.splitlines() == [
        "power,coefficient",
        "0,1",
        "1,3",
        "2,4",
        "3,4",
        "4,3",
        "5,1",
    ]


def test_compute_with_w_and_raw_degree(capsys):
    code, out, _ = run(
        capsys, "compute", "--rank", "2", "--degree", "3", "--genus", "2", "--circles", "3",
        "--w", "1,1,1", "--raw-degree", "--format", "json",
    )
    assert code == 0
    assert json.loads(out)["coeffs"] == ["1", "5", "10", "10", "5", "1"]
    assert json.loads(out)["params"]["w"] == [1, 1, 1]


def test_compute_not_coprime(capsys):
    code, out, err = run(capsys, "compute", "--rank", "2", "--degree", "2", "--genus", "2", "--circles", "1")
    assert code == 2
    assert out == ""
    assert err.startswith("error: NotCoprime:")


def test_compute_invalid_topology(capsys):
    code, _, err = run(capsys, "compute", "--rank", "2", "--degree", "1", "--genus", "2", "--circles", "4")
    assert code == 2
    assert "InvalidTopology" in err


def test_compute_bad_w(capsys):
    code, _, err = run(capsys, "compute", "--rank", "2", "--degree", "1", "--genus", "2", "--circles", "2", "--w", "1,1")
    assert code == 2
    assert err.startswith("error: InvalidInput:")


def test_compute_requires_allow_a0(capsys):
    argv = ["compute", "--rank", "1", "--degree", "0", "--genus", "3", "--circles", "0"]
    assert run(capsys, *argv)[0] == 2
    code, out, _ = run(capsys, *argv, "--allow-a0", "--format", "json")
    assert code == 0
    assert json.loads(out)["coeffs"] == ["1", "3", "3", "1"]


def test_argparse_errors_exit_two():
    with pytest.raises(SystemExit) as excinfo:
        main(["compute", "--rank", "2"])
    assert excinfo.value.code == 2


# ==========================================
# TABLE / VERIFY
# ==========================================

def test_table(capsys):
    code, out, _ = run(capsys, "table", "rank2-g2")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 3
    assert all(line.endswith("OK") for line in lines)
    assert "r=2 d=1 g=2 a=3: 1 5 10 10 5 1" in lines[2]


def test_table_json(capsys):
    code, out, _ = run(capsys, "table", "rank3-g2", "--format", "json")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert [row["matches"] for row in rows] == [True, True, True]


@pytest.mark.slow
def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--order", "60")
    assert code == 0
    assert out.splitlines()[-1].endswith("0 failed (order 60)")


@pytest.mark.slow
def test_verify_perturbed_fails(capsys):
    code, out, _ = run(capsys, "verify", "--order", "20", "--perturb", "--format", "json")
    assert code == 3
    assert json.loads(out)["failed"] == 4


# ==========================================
# STRATA / FORMULA / CACHE
# ==========================================

def test_strata_list(capsys):
    code, out, _ = run(capsys, "strata", "list", "--rank", "2", "--degree", "1", "--genus", "2", "--max-codim", "6")
    assert code == 0
    assert [json.loads(line) for line in out.splitlines()] == [
        {"parts": [[1, 1], [1, 0]], "codim": 2},
        {"parts": [[1, 2], [1, -1]], "codim": 4},
        {"parts": [[1, 3], [1, -2]], "codim": 6},
    ]


def test_strata_list_refined_without_real_points(capsys):
    code, out, _ = run(
        capsys, "strata", "list", "--rank", "2", "--degree", "2", "--genus", "2",
        "--max-codim", "3", "--circles", "0", "--refine",
    )
    assert code == 0
    assert json.loads(out) == {"parts": [[1, 2], [1, 0]], "codim": 3, "refinements": 1}


def test_formula_dump(capsys):
    code, out, _ = run(capsys, "formula", "dump", "Rank2Moduli", "--genus", "2", "--circles", "1", "--order", "7")
    assert code == 0
    assert json.loads(out) == {"order": 7, "coeffs": ["1", "3", "4", "4", "3", "1", "0", "0"]}


def test_formula_dump_text(capsys):
    code, out, _ = run(capsys, "formula", "dump", "ClassicalU", "--rank", "2", "--order", "6", "--format", "text")
    assert code == 0
    assert out.strip() == "1 0 1 0 2 0 2"


def test_formula_dump_missing_parameter(capsys):
    code, _, err = run(capsys, "formula", "dump", "GaugeReal", "--order", "5")
    assert code == 2
    assert "InvalidInput" in err


def test_cache_commands(capsys, tmp_path):
    cache_dir = tmp_path / "cache"
    assert main(["--cache-dir", str(cache_dir), "compute", "--rank", "2", "--degree", "1",
                 "--genus", "2", "--circles", "1", "--format", "json"]) == 0
    capsys.readouterr()

    assert main(["--cache-dir", str(cache_dir), "cache", "stats"]) == 0
    stats = json.loads(capsys.readouterr().out)
    assert stats["files"] > 0

    assert main(["--cache-dir", str(cache_dir), "cache", "clear"]) == 0
    assert json.loads(capsys.readouterr().out) == {"removed": stats["files"]}


def test_no_cache_flag_leaves_cache_dir_untouched(capsys, tmp_path):
    cache_dir = tmp_path / "cache"
    assert main(["--cache-dir", str(cache_dir), "--no-cache", "compute", "--rank", "2", "--degree", "1",
                 "--genus", "2", "--circles", "1", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["coeffs"] == ["1", "3", "4", "4", "3", "1"]
    assert not cache_dir.exists()
