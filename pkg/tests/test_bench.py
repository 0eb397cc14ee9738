import io

import numpy as np
import pytest

from exind import bench
from exind.bench import BenchCell, error_summary, run_cell, run_study, table_grid
from exind.errors import InvalidInputError
from exind.sim import MAR, MM, ARCau


def test_error_summary_degenerate():
    assert error_summary([0.5, 0.5, 0.5], 0.5) == (0.0, 0.0)


def test_error_summary_by_hand():
    rmse, abias = error_summary([0.4, 0.6], 0.5)
    assert rmse == pytest.approx(0.1, abs=1e-15)
    assert abias == pytest.approx(0.0, abs=1e-15)


def test_error_summary_ignores_missing():
    assert error_summary([0.4, np.nan, 0.6], 0.5) == error_summary([0.4, 0.6], 0.5)


def test_run_cell_mm_new_n1000():
    res = run_cell(BenchCell(MM(), "new", 20, n=1000, K=100, M=100, master_seed=5))
    assert 0.03 <= res.rmse <= 0.14
    assert res.effective_K == 100


@pytest.mark.parametrize("estimator, tuning", [("new", 10), ("northrop", 10), ("ferro_segers", 0.9)])
def test_self_consistency(estimator, tuning):
    res = run_cell(BenchCell(MAR(), estimator, tuning, n=500, K=10, M=10, master_seed=1))
    e = res.estimates
    assert res.rmse == float(np.sqrt(np.mean((e - res.theta) ** 2)))
    assert res.abias == float(abs(np.mean(e) - res.theta))
    assert res.rmse >= res.abias


def test_prefix_stability():
    short = run_cell(BenchCell(ARCau(), "new", 10, n=300, K=4, M=5, master_seed=8))
    long = run_cell(BenchCell(ARCau(), "new", 10, n=300, K=8, M=5, master_seed=8))
    assert np.array_equal(short.estimates, long.estimates[:4])


def test_common_random_numbers_across_estimators():
    # same master seed -> same simulated series, so FS at one level and the
    # equivalent threshold give identical estimates
    a = run_cell(BenchCell(MAR(), "ferro_segers", 0.9, n=400, K=3, master_seed=2))
    b = run_cell(BenchCell(MAR(), "ferro_segers", 0.9, n=400, K=3, master_seed=2))
    assert np.array_equal(a.estimates, b.estimates)


def test_missing_replicates_dropped():
    # at n=50, q=0.99 leaves a single exceedance in every replicate
    cell = BenchCell(MAR(), "ferro_segers", 0.99, n=50, K=5)
    with pytest.raises(InvalidInputError, match="replicates succeeded"):
        run_cell(cell)
    res = run_study([cell])[0]
    assert res.error and np.isnan(res.rmse)


def test_partial_missing_reported(monkeypatch):
    # with continuous data the exceedance count above an empirical quantile is
    # fixed, so inject failures on odd replicates
    real = bench._estimate_one

    def flaky(cell, series, k):
        if k % 2:
            raise InvalidInputError("injected")
        return real(cell, series, k)

    monkeypatch.setattr(bench, "_estimate_one", flaky)
    res = run_cell(BenchCell(MAR(), "northrop", 10, n=100, K=30, master_seed=4))
    assert res.effective_K == 15
    assert res.rmse == error_summary(res.estimates[::2], res.theta)[0]
    assert len(res.replicate_errors) == 30 - res.effective_K
    assert np.isnan(res.estimates[list(res.replicate_errors)]).all()


@pytest.mark.parametrize(
    "kwargs",
    [dict(estimator="other", tuning=1), dict(estimator="new", tuning=1, K=1), dict(estimator="ferro_segers", tuning=1.5),
     dict(estimator="northrop", tuning=2.5)],
)
def test_cell_validation(kwargs):
    with pytest.raises(InvalidInputError):
        BenchCell(MM(), n=100, **kwargs).validate()


def small_cells():
    return [
        BenchCell(MM(), "new", 10, n=300, K=3, M=4, master_seed=1),
        BenchCell(MAR(), "northrop", 10, n=300, K=3, master_seed=1),
        BenchCell(ARCau(), "ferro_segers", 0.9, n=300, K=3, master_seed=1),
    ]


def test_study_single_cell_equals_run_cell():
    cell = small_cells()[0]
    assert np.array_equal(run_study([cell])[0].estimates, run_cell(cell).estimates)


def test_study_permutation():
    cells = small_cells()
    fwd = run_study(cells)
    rev = run_study(cells[::-1])
    for a, b in zip(fwd, rev[::-1]):
        assert a.cell == b.cell
        assert np.array_equal(a.estimates, b.estimates)


def test_study_parallel_bit_identical():
    cells = small_cells()
    serial = run_study(cells)
    parallel = run_study(cells, workers=2)
    for a, b in zip(serial, parallel):
        assert np.array_equal(a.estimates, b.estimates)
        assert (a.rmse, a.abias) == (b.rmse, b.abias)


def test_study_empty():
    with pytest.raises(InvalidInputError):
        run_study([])


def test_table_grid_shape():
    cells = table_grid(n=1000)
    assert len(cells) == 90
    assert {c.estimator for c in cells} == set(bench.ESTIMATORS)


def test_csv_outputs():
    results = run_study(small_cells())
    buf = io.StringIO()
    bench.write_summary_csv(results, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == ",".join(bench.SUMMARY_COLUMNS)
    assert len(lines) == 4
    first = dict(zip(bench.SUMMARY_COLUMNS, lines[1].split(",")))
    assert first["model"] == "MM" and first["K"] == "3" and float(first["rmse"]) == results[0].rmse
    raw = io.StringIO()
    bench.write_raw_csv(results, raw)
    assert len(raw.getvalue().splitlines()) == 1 + 9


def test_format_table():
    text = bench.format_table(run_study(small_cells()), "abias")
    assert "MM" in text and "northrop (r=10)" in text
