import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from cvinv.cli import main
from cvinv.sweep import SweepSpec, format_csv, read_csv, run_sweep

FIX = Path(__file__).parent / "fixtures"


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


def test_build_two_simple():
    code, out = run("build", FIX / "two_simple.json")
    assert code == 0
    assert json.loads(out) == [[[1, 0], [1, 0]], [[0, 0], [1, 0]]]
    assert out.strip() == "[[[1,0],[1,0]],[[0,0],[1,0]]]"


def test_build_identity():
    code, out = run("build", FIX / "double_at_zero.json")
    assert json.loads(out) == [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]


def test_build_csv():
    code, out = run("--format", "csv", "build", FIX / "mixed.json")
    assert out.splitlines()[0] == "1+0j,0+0j,1+0j"


@pytest.mark.parametrize(
    "name, field",
    [
        ("malformed", "malformed JSON"),
        ("missing_field", "'multiplicities'"),
        ("duplicate", "'nodes'"),
        ("zero_multiplicity", "'multiplicities'"),
    ],
)
def test_input_errors(name, field, capsys):
    code, _ = run("build", FIX / f"{name}.json")
    assert code == 2
    assert field in capsys.readouterr().err


def test_missing_file():
    assert run("build", FIX / "nope.json")[0] == 2


def test_invert_mixed():
    code, out = run("invert", FIX / "mixed.json")
    rows = json.loads(out)
    assert [(r["node"], r["k"], r["row"]) for r in rows] == [(1, 0, 1), (1, 1, 2), (2, 0, 3)]
    assert [[c[0] for c in r["coefficients"]] for r in rows] == [
        [1, 0, -1], [0, 1, -1], [0, 0, 1]
    ]
    assert "norm" not in rows[0]


def test_invert_norms():
    code, out = run("invert", "--norms", FIX / "two_simple.json")
    rows = json.loads(out)
    assert [r["norm"] for r in rows] == [2, 1]
    assert [[c[0] for c in r["coefficients"]] for r in rows] == [[1, -1], [0, 1]]


def test_invert_single_node_csv():
    code, out = run("invert", "--norms", "--format", "csv", FIX / "triple_at_zero.json")
    lines = out.splitlines()
    assert lines[0] == "node,k,row,norm,c0,c1,c2"
    assert lines[1:] == ["1,0,1,1,1+0j,0+0j,0+0j", "1,1,2,1,0+0j,1+0j,0+0j",
                         "1,2,3,0.5,0+0j,0+0j,0.5+0j"]


def test_bound_mixed():
    code, out = run("bound", FIX / "mixed.json")
    rep = json.loads(out)
    assert code == 0
    first = rep["records"][0]
    assert (first["node"], first["k"], first["empirical_norm"], first["bound"]) == (1, 0, 2, 56)


def test_bound_symmetric():
    code, out = run("bound", FIX / "symmetric.json")
    rep = json.loads(out)
    assert code == 0
    assert [(r["empirical_norm"], r["bound"]) for r in rep["records"]] == [(1, 2), (1, 2)]
    assert rep["all_satisfied"] is True


def test_bound_csv():
    code, out = run("bound", "--format", "csv", FIX / "symmetric.json")
    assert out.splitlines()[1] == "1,0,1,1,2,0.5,true"


def test_bound_failure_exit():
    code, out = run("bound", FIX / "wide_separation.json")
    assert code == 1
    assert json.loads(out)["all_satisfied"] is False


def test_bound_violation_exit():
    assert run("bound", FIX / "outside_disk.json")[0] == 3


def test_bound_single_node_is_input_error():
    assert run("bound", FIX / "double_at_zero.json")[0] == 2


def test_verify():
    assert run("verify", FIX / "two_simple.json")[0] == 0
    code, out = run("verify", "--tolerance", "1e-8", FIX / "mixed.json")
    assert code == 0 and json.loads(out)["pass"] is True


def test_verify_near_coincident():
    assert run("verify", FIX / "near_coincident.json")[0] in (1, 4)


def test_verify_singular():
    assert run("verify", FIX / "underflow_pivot.json")[0] == 4


def test_global_flags_either_side():
    a = run("--tolerance", "0", "verify", FIX / "symmetric.json")
    b = run("verify", "--tolerance", "0", FIX / "symmetric.json")
    assert a == b


def test_sweep_acceptance_example():
    code, out = run("sweep", FIX / "sweep_acceptance.json")
    lines = out.splitlines()
    assert code == 0
    assert len(lines) == 101
    assert json.loads(lines[-1]) == {
        "summary": {"trials": 100, "passed": 100, "failed": 0, "skipped": 0}
    }
    assert all(json.loads(ln)["pass"] for ln in lines[:-1])


def test_sweep_seed_override_changes_output():
    a = run("sweep", FIX / "sweep_single.json")[1]
    b = run("sweep", "--seed", "8", FIX / "sweep_single.json")[1]
    assert a != b


def test_sweep_infeasible(capsys):
    code, out = run("sweep", FIX / "sweep_infeasible.json")
    assert code == 0
    assert "skipped" in capsys.readouterr().err
    assert json.loads(out.splitlines()[-1])["summary"]["skipped"] == 4


def test_sweep_bad_spec(capsys):
    assert run("sweep", FIX / "sweep_bad.json")[0] == 2
    assert "trials" in capsys.readouterr().err


def test_sweep_tolerance_failure():
    assert run("sweep", "--tolerance", "1e-40", FIX / "sweep_single.json")[0] == 1


def test_sweep_jobs_do_not_change_output():
    a = run("sweep", FIX / "sweep_acceptance.json")[1]
    b = run("sweep", "--jobs", "4", FIX / "sweep_acceptance.json")[1]
    assert a == b


def test_csv_roundtrip():
    spec = SweepSpec((2, 4), (1, 3), 0.5, 20, 5)
    records = run_sweep(spec)
    text = format_csv(records)
    assert read_csv(text) == records
    assert format_csv(read_csv(text)) == text


def test_csv_roundtrip_with_skips():
    spec = SweepSpec((5, 5), (1, 2), 1.9, 3, 1)
    records = run_sweep(spec)
    assert all(r.status == "skipped" for r in records)
    assert read_csv(format_csv(records)) == records


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "cvinv", "build", str(FIX / "two_simple.json")],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "[[[1,0],[1,0]],[[0,0],[1,0]]]"
