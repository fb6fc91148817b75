import csv
import json

import numpy as np
import pytest

from unimod import experiment
from unimod.cli import main
from unimod.experiment import ExperimentSpec, benchmark_scaling, compare, run_experiment


def _rows(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_fbmm_golomb_n3(tmp_path):
    summary = tmp_path / "s.json"
    run_experiment(ExperimentSpec("fbmm", 3, init="golomb", summary_path=str(summary)))
    data = json.loads(summary.read_text())
    assert set(data) == {"algorithm", "n", "init", "seed", "final_isl", "final_psl",
                         "iterations", "elapsed_ms", "terminated"}
    assert data["final_isl"] <= 1 + 1e-6
    assert data["terminated"] == "converged"


def test_misl_n2_outputs(tmp_path):
    paths = {k: tmp_path / f"{k}.csv" for k in ("trace", "ac", "seq")}
    run_experiment(ExperimentSpec("misl", 2, seed=7, trace_path=str(paths["trace"]),
                                  autocorr_path=str(paths["ac"]), sequence_path=str(paths["seq"])))
    trace = _rows(paths["trace"])
    assert trace[0] == ["iter", "isl", "psl", "elapsed_ms"]
    assert len(trace) - 1 <= 3
    assert float(trace[-1][1]) == pytest.approx(1.0)
    ac = _rows(paths["ac"])
    assert ac[0] == ["lag", "magnitude_db"]
    assert float(ac[1][1]) == pytest.approx(20 * np.log10(2))
    assert float(ac[2][1]) == pytest.approx(0.0, abs=1e-12)
    assert _rows(paths["seq"])[0] == ["index", "real", "imag", "phase_rad"]


def test_normalized_db(tmp_path):
    out = tmp_path / "ac.csv"
    run_experiment(ExperimentSpec("fbmm", 4, init="frank", autocorr_path=str(out), normalize_db=True,
                                  max_iterations=1))
    assert float(_rows(out)[1][1]) == pytest.approx(0.0, abs=1e-12)


def test_monte_carlo_runs(tmp_path):
    trace = tmp_path / "t.csv"
    summary = tmp_path / "s.json"
    results = run_experiment(ExperimentSpec("fbmm", 12, seed=5, runs=3, trace_path=str(trace),
                                            summary_path=str(summary)))
    assert [r.seed for r in results] == [5, 4, 7]
    for r in range(3):
        assert (tmp_path / f"t_run{r:03d}.csv").exists()
    data = json.loads(summary.read_text())
    assert len(data["runs"]) == 3
    assert data["mean_final_isl"] == pytest.approx(np.mean([r["final_isl"] for r in data["runs"]]))


def test_parallel_runs_match_serial():
    spec = ExperimentSpec("misl", 16, seed=3, runs=2, max_iterations=50)
    serial = run_experiment(spec)
    parallel = run_experiment(ExperimentSpec("misl", 16, seed=3, runs=2, max_iterations=50, jobs=2))
    for a, b in zip(serial, parallel):
        np.testing.assert_array_equal(a.sequence, b.sequence)
        np.testing.assert_array_equal(a.trace.isl, b.trace.isl)


def test_deterministic_init_runs_once():
    assert len(run_experiment(ExperimentSpec("fbmm", 9, init="frank", runs=4))) == 1


@pytest.mark.parametrize(
    "kwargs",
    [dict(algorithm="isl-new", n=10), dict(algorithm="fbmm", n=1), dict(algorithm="fbmm", n=10, runs=0),
     dict(algorithm="fbmm", n=10, tolerance=0.0), dict(algorithm="fbmm", n=10, init="frank"),
     dict(algorithm="fbmm", n=10, seed=-1)],
)
def test_invalid_spec(kwargs):
    with pytest.raises(ValueError):
        ExperimentSpec(**kwargs).validate()


def test_compare_csv(tmp_path):
    out = tmp_path / "cmp.csv"
    results = compare(20, 1, out=str(out))
    rows = _rows(out)
    assert rows[0] == ["algorithm", "iter", "isl", "psl", "elapsed_ms"]
    assert {r[0] for r in rows[1:]} == set(experiment.ALGORITHMS)
    starts = [r for r in rows[1:] if r[1] == "0"]
    assert len(starts) == 3
    assert len({r[2] for r in starts}) == 1
    assert all(float(r[4]) == 0 for r in starts)
    assert set(results) == set(experiment.ALGORITHMS)


def test_benchmark_single_length(tmp_path):
    out = tmp_path / "b.csv"
    rows = benchmark_scaling([16], 2, out=str(out))
    assert [r["algorithm"] for r in rows] == list(experiment.ALGORITHMS)
    table = _rows(out)
    assert table[0] == ["algorithm", "N", "avg_sweep_ms", "avg_total_ms", "avg_iterations"]
    assert len(table) == 4
    with pytest.raises(ValueError):
        benchmark_scaling([100, 50], 1)


# -- CLI ------------------------------------------------------------------------


def test_cli_design(tmp_path, capsys):
    trace = tmp_path / "t.csv"
    code = main(["design", "--algo", "fbmm", "--n", "10", "--init", "golomb", "--trace", str(trace)])
    assert code == 0
    assert json.loads(capsys.readouterr().out)["n"] == 10
    assert _rows(trace)[0] == ["iter", "isl", "psl", "elapsed_ms"]


@pytest.mark.parametrize(
    "argv",
    [
        ["design", "--algo", "nope", "--n", "10"],
        ["design", "--algo", "fbmm", "--n", "1"],
        ["design", "--algo", "fbmm", "--n", "5", "--init", "frank"],
        ["design", "--algo", "fbmm", "--n", "8", "--seed", "-3"],
        ["design", "--algo", "fbmm", "--n", "8", "--tol", "0"],
        ["bench", "--lengths", "100,50", "--runs", "1", "--out", "x.csv"],
        ["bench", "--lengths", "a,b", "--out", "x.csv"],
        ["compare", "--n", "1", "--out", "x.csv"],
        [],
    ],
)
def test_cli_invalid_arguments(argv, capsys):
    assert main(argv) == 2


def test_cli_io_failure(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code = main(["design", "--algo", "misl", "--n", "4", "--trace", str(blocker / "t.csv")])
    assert code == 3


def test_cli_bench_and_compare(tmp_path):
    b = tmp_path / "b.csv"
    assert main(["bench", "--lengths", "8,16", "--runs", "1", "--algos", "fbmm,misl", "--out", str(b)]) == 0
    assert len(_rows(b)) == 5
    c = tmp_path / "c.csv"
    assert main(["compare", "--n", "12", "--seed", "4", "--out", str(c)]) == 0
    assert _rows(c)[0][0] == "algorithm"
