"""Acceptance suite: every criterion prints one PASS/FAIL line (run with
``pytest tests/test_acceptance.py -v -s``).

Criteria 1-3 exercise the default simulation run end to end against the
benchmark bias/MSE tables and the exact theory; 4-8 pin the numerical
identities, ordering guarantees and chart formulas; 9 pins byte-level
reproducibility of the CLI.
"""

import csv
import math
import time

import numpy as np
import pytest

from geomchart.charts import ChartConfig, g_limits, h_limits, limits_known
from geomchart.cli import main
from geomchart.estimators import StudyData, p_b, p_ml, p_mvu, rao_blackwell_eta
from geomchart.geom import GeometricModel, NegBinModel, geom_pmf, nbinom_pmf
from geomchart.moments import m2_p_mvu, mean_p_b, mean_p_ml, var_p_mvu
from geomchart.series import hyp2f1
from geomchart.simulate import DEFAULT_P_GRID, DEFAULT_SIZES, compare_theory, run_table

from oracles import expectation_over_nbinom
from reference_values import REFERENCE_BIAS, REFERENCE_MSE

NAMES = ("p_b", "p_mvu", "p_ml")


def _report(tag: str, ok: bool, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'} {tag}"
    if detail:
        line += f" — {detail}"
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def default_run():
    start = time.perf_counter()
    results = run_table()
    elapsed = time.perf_counter() - start
    return results, elapsed


@pytest.fixture(scope="module")
def default_cli_csv(tmp_path_factory):
    out = tmp_path_factory.mktemp("acceptance") / "default.csv"
    start = time.perf_counter()
    code = main(["simulate", "--out", str(out)])
    elapsed = time.perf_counter() - start
    assert code == 0
    with open(out, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    return rows, elapsed, out.read_bytes()


def _cli_cell(rows, sizes, p, name):
    label = ",".join(map(str, sizes))
    for row in rows:
        if row["sizes"] == label and float(row["p"]) == p and row["estimator"] == name:
            return row
    raise KeyError((sizes, p, name))


def test_criterion_1_bias_table_reproduction(default_run, default_cli_csv):
    results, _ = default_run
    rows, elapsed, _ = default_cli_csv
    worst = 0.0
    checked = 0
    for result in results:
        cfg = result.config
        key = (cfg.group_sizes, cfg.p)
        for name in NAMES:
            stats = result[name]
            cli_row = _cli_cell(rows, cfg.group_sizes, cfg.p, name)
            # the CLI run and the library run are the same numbers
            assert float(cli_row["bias"]) == stats.bias
            assert float(cli_row["se"]) == stats.se_bias
            ratio = abs(stats.bias - REFERENCE_BIAS[key][name]) / (3 * stats.se_bias)
            worst = max(worst, ratio)
            checked += 1
            if name == "p_mvu":
                assert abs(stats.bias) <= 0.01

    anchors = {r.config.group_sizes + (r.config.p,): r for r in results}
    one_one_09 = anchors[(1, 1, 0.9)]
    one_one_05 = anchors[(1, 1, 0.5)]
    anchor_ok = (
        abs(one_one_09["p_b"].bias - (-0.43420)) <= 3 * one_one_09["p_b"].se_bias
        and abs(one_one_05["p_ml"].bias - 0.11759) <= 3 * one_one_05["p_ml"].se_bias
    )
    _report(
        "criterion 1: default run reproduces all benchmark bias entries within 3 SE",
        worst < 1.0 and anchor_ok and checked == 60 and elapsed < 120.0,
        f"60/60 entries, worst tolerance ratio {worst:.2f}, default run {elapsed:.2f}s",
    )


def test_criterion_2_mse_table_reproduction(default_run, default_cli_csv):
    results, _ = default_run
    rows, _, _ = default_cli_csv
    worst = 0.0
    checked = 0
    for result in results:
        cfg = result.config
        key = (cfg.group_sizes, cfg.p)
        for name in NAMES:
            stats = result[name]
            cli_row = _cli_cell(rows, cfg.group_sizes, cfg.p, name)
            assert float(cli_row["mse"]) == stats.mse
            ratio = abs(stats.mse - REFERENCE_MSE[key][name]) / (3 * stats.se_mse)
            worst = max(worst, ratio)
            checked += 1

    anchors = {r.config.group_sizes + (r.config.p,): r for r in results}
    cell = anchors[(1, 1, 0.5)]
    anchor_ok = (
        abs(cell["p_mvu"].mse - 0.09775) <= 3 * cell["p_mvu"].se_mse
        and abs(cell["p_ml"].mse - 0.08140) <= 3 * cell["p_ml"].se_mse
    )
    _report(
        "criterion 2: default run reproduces all benchmark MSE entries within 3 SE",
        worst < 1.0 and anchor_ok and checked == 60,
        f"60/60 entries, worst tolerance ratio {worst:.2f}",
    )


def test_criterion_3_theory_empirics_agreement(default_run):
    results, _ = default_run
    worst = 0.0
    for result in results:
        comparison = compare_theory(result)
        for name in NAMES:
            row = comparison[name]
            worst = max(worst, abs(row.z_bias), abs(row.z_mse))
    _report(
        "criterion 3: every default cell's empirical bias and MSE sit within |z| < 4 of theory",
        worst < 4.0,
        f"worst |z| {worst:.2f} over {len(results) * len(NAMES)} cells x 2 metrics",
    )


def test_criterion_4_exact_expectation_oracle():
    worst = 0.0
    for n_obs in (2, 3):
        for p in (0.2, 0.5, 0.8):
            e_ml = expectation_over_nbinom(lambda t: n_obs / (t + n_obs), n_obs, p)
            e_b = expectation_over_nbinom(lambda t: (n_obs - 1) / (t + n_obs), n_obs, p)
            e_mvu = expectation_over_nbinom(
                lambda t: (n_obs - 1) / (t + n_obs - 1), n_obs, p
            )
            worst = max(
                worst,
                abs(e_ml - mean_p_ml(n_obs, p)),
                abs(e_b - mean_p_b(n_obs, p)),
                abs(e_mvu - p),
            )
    _report(
        "criterion 4: direct expectation sums match the moment formulas and unbiasedness",
        worst <= 1e-8,
        f"worst |gap| {worst:.2e} over N in (2,3) x p in (0.2,0.5,0.8)",
    )


def test_criterion_5_dual_route_identities():
    worst_first = worst_second = worst_var = 0.0
    for n_obs in range(2, 21):
        for k in range(1, 20):
            p = round(0.05 * k, 2)
            z = 1.0 - p
            worst_first = max(
                worst_first,
                abs(p**n_obs * hyp2f1(n_obs, n_obs, n_obs + 1, z)
                    - p * hyp2f1(1, 1, n_obs + 1, z)),
            )
            worst_second = max(
                worst_second,
                abs(p**n_obs * hyp2f1(n_obs - 1, n_obs - 1, n_obs, z)
                    - p * p * hyp2f1(1, 1, n_obs, z)),
            )
            worst_var = max(
                worst_var,
                abs(var_p_mvu(n_obs, p) - (m2_p_mvu(n_obs, p) - p * p)),
            )
    closed_form = abs(var_p_mvu(2, 0.5) - 0.25 * (2 * math.log(2) - 1))
    _report(
        "criterion 5: transformation identities, variance series and closed form agree",
        worst_first <= 1e-10 and worst_second <= 1e-10 and worst_var <= 1e-9
        and closed_form <= 1e-6,
        f"first-moment gap {worst_first:.1e}, second-moment gap {worst_second:.1e}, "
        f"variance-route gap {worst_var:.1e}, closed-form gap {closed_form:.1e}",
    )


def test_criterion_6_strict_ordering_randomized():
    rng = np.random.default_rng(1234509876)
    total = 100_000
    ordered = 0
    degenerate = 0
    for _ in range(total):
        shift = int(rng.integers(0, 2))
        m = int(rng.integers(1, 5))
        sizes = rng.integers(1, 7, size=m)
        if sizes.sum() < 2:
            sizes = np.append(sizes, 1)
        p = float(rng.uniform(0.05, 0.95))
        flat = shift + np.floor(
            np.log(1.0 - rng.random(int(sizes.sum()))) / math.log1p(-p)
        ).astype(int)
        subgroups = []
        start = 0
        for n_k in sizes:
            subgroups.append(flat[start:start + n_k].tolist())
            start += n_k
        data = StudyData.from_counts(subgroups, shift=shift)
        if data.grand_mean > shift:
            assert p_b(data) < p_mvu(data) < p_ml(data)
            ordered += 1
        else:
            assert p_ml(data) == 1.0 and p_mvu(data) == 1.0
            # 1 - 1/N, stated as the correctly-rounded single division
            assert p_b(data) == (data.n_total - 1) / data.n_total
            degenerate += 1
    _report(
        "criterion 6: strict estimator ordering on randomized data, exact degenerate values",
        ordered + degenerate == total and ordered > 0 and degenerate > 0,
        f"{ordered} ordered + {degenerate} degenerate = {total} datasets",
    )


def test_criterion_7_conditional_probability_oracle():
    worst = 0.0
    for shift in (0, 1):
        for n in range(2, 7):
            for t in range(n * shift, n * shift + 31):
                eta = rao_blackwell_eta(n, t, shift)
                ratios = []
                for p in (0.2, 0.5, 0.8):
                    base = GeometricModel(p=p, shift=shift)
                    ratio = (
                        geom_pmf(base, shift)
                        * nbinom_pmf(NegBinModel(n=n - 1, base=base), t - shift)
                        / nbinom_pmf(NegBinModel(n=n, base=base), t)
                    )
                    ratios.append(ratio)
                    worst = max(worst, abs(eta - ratio))
                worst = max(worst, max(ratios) - min(ratios))
    _report(
        "criterion 7: closed-form conditional probability matches the pmf ratio, p-free",
        worst <= 1e-12,
        f"worst |gap| {worst:.1e} over n in 2..6, 31 totals, shifts (0,1), three p values",
    )


def test_criterion_8_chart_formulas():
    worst = 0.0
    for p in (0.1, 0.3, 0.5, 0.7, 0.9):
        for shift in (0, 1):
            model = GeometricModel(p=p, shift=shift)
            for n_k in (1, 2, 5, 12):
                for mult in (3.0, 3.09):
                    for kind in ("h", "g"):
                        config = ChartConfig(kind=kind, basis="known",
                                             known_model=model, multiplier=mult,
                                             clamp_lcl=False)
                        ucl, cl, lcl = limits_known(model, n_k, config)
                        mu = (1 - p) / p + shift
                        if kind == "h":
                            center = mu
                            half = mult * math.sqrt((1 - p) / (n_k * p * p))
                        else:
                            center = n_k * mu
                            half = mult * math.sqrt(n_k * (1 - p) / (p * p))
                        worst = max(worst, abs(cl - center),
                                    abs(ucl - (center + half)),
                                    abs(lcl - (center - half)))

    flat = StudyData.from_counts([[2, 3, 4, 5, 6]], shift=0)
    h = h_limits(flat, ChartConfig(kind="h", basis="ml")).entries[0]
    g = g_limits(flat, ChartConfig(kind="g", basis="ml")).entries[0]
    worked_ok = (
        abs(h.ucl - 10.0) <= 1e-12 and h.cl == 4.0 and h.lcl == 0.0
        and abs(g.ucl - 50.0) <= 1e-12 and g.cl == 20.0 and g.lcl == 0.0
    )

    data = StudyData.from_counts([[1, 0], [2, 0, 1], [3, 1]], shift=0)
    scale = math.sqrt(data.n_total / (data.n_total + 1.0))
    exact_ratio = True
    for make, kind in ((h_limits, "h"), (g_limits, "g")):
        ml = make(data, ChartConfig(kind=kind, basis="ml")).entries
        mvu = make(data, ChartConfig(kind=kind, basis="mvu")).entries
        for e_ml, e_mvu in zip(ml, mvu):
            exact_ratio &= e_mvu.half_width == e_ml.half_width * scale

    _report(
        "criterion 8: known-parameter limits match the formulas; worked examples and "
        "the exact unbiased/ML width ratio hold",
        worst <= 1e-12 and worked_ok and exact_ratio,
        f"worst formula gap {worst:.1e}",
    )


def test_criterion_9_cli_byte_determinism(default_cli_csv, tmp_path):
    _, _, baseline = default_cli_csv
    repeat = tmp_path / "repeat.csv"
    threaded = tmp_path / "threaded.csv"
    assert main(["simulate", "--out", str(repeat)]) == 0
    assert main(["simulate", "--workers", "4", "--out", str(threaded)]) == 0
    same = repeat.read_bytes() == baseline and threaded.read_bytes() == baseline
    _report(
        "criterion 9: repeated seeded runs emit byte-identical CSV for any worker count",
        same,
        f"{len(baseline)} bytes compared across three runs",
    )
