import csv
import math

import numpy as np
import pytest

import rhobench


def test_instance_and_optimum():
    inst = rhobench.make_instance(1, 5, 0)
    x_opt, f_opt = rhobench.optimum(inst)
    assert inst.n == 5
    assert rhobench.evaluate_raw(inst, x_opt) == f_opt
    assert inst(x_opt + 1.0) == pytest.approx(f_opt + 5.0)


def test_views_agree_on_the_optimum():
    inst = rhobench.make_instance(8, 3, 1)
    dp = rhobench.DiscretizedProblem(inst, 0.5)
    assert dp.rho == 0.5
    assert dp.value_continuous(inst.x_opt) == inst.f_opt
    assert dp.value_integer(dp.optimum_indices) == inst.f_opt
    zlb, zub = dp.integer_bounds()
    assert list(zlb) == [-10] * 3
    assert list(zub) == [10] * 3
    assert math.isinf(dp.value_continuous(np.full(3, 6.0)))


def test_counters_and_trajectory():
    dp = rhobench.DiscretizedProblem(rhobench.make_instance(1, 2, 0))
    assert dp.rho is None
    dp.reset(10)
    dp.eval_continuous(np.zeros(2))
    dp.eval_continuous(dp.instance.x_opt)
    assert dp.eval_count == 2
    assert dp.best_delta == 0.0
    assert dp.trajectory[-1] == (2, 0.0)


def test_errors_carry_a_code():
    with pytest.raises(rhobench.RhobenchError) as info:
        rhobench.make_instance(3, 5, 0)
    assert info.value.code == "UnsupportedFunction"
    dp = rhobench.DiscretizedProblem(rhobench.make_instance(1, 2, 0))
    with pytest.raises(rhobench.RhobenchError) as info:
        rhobench.intea_run(dp, 1000, 1)
    assert info.value.code == "NotDiscretized"


def test_optimizers_are_deterministic():
    for run, rho, kwargs in [
        (rhobench.es_run, None, {}),
        (rhobench.intea_run, 1.0, {}),
        (rhobench.ga_run, 2.0, {}),
        (rhobench.cma_run, 0.1, {"alpha": rhobench.default_margin(5)}),
    ]:
        records = []
        for _ in range(2):
            dp = rhobench.DiscretizedProblem(rhobench.make_instance(1, 5, 0), rho)
            records.append(run(dp, 5000, 42, **kwargs))
        a, b = records
        assert a.trajectory == b.trajectory
        assert a.evaluations <= 5000
        assert a.final_delta == a.trajectory[-1][1]


def test_cma_solves_continuous_sphere():
    dp = rhobench.DiscretizedProblem(rhobench.make_instance(1, 5, 0))
    rec = rhobench.cma_run(dp, 10000, 7)
    assert rec.hit_1e8_at is not None
    assert rhobench.hitting_time(rec, rhobench.SOLVED_DELTA) == rec.hit_1e8_at


def test_max_entropy_sample_is_centred():
    draws = np.array(rhobench.max_entropy_sample(2.0, 3, 100000))
    assert abs(draws.mean()) < 0.05
    assert (draws == 0).mean() > 0.2


def test_metric_fixtures():
    targets = rhobench.default_targets()
    assert len(targets) == 51
    assert targets[0] == 100.0 and targets[-1] == 1e-8
    budgets = rhobench.log_budgets(10, 1000)
    assert budgets[0] == 10 and budgets[-1] == 1000

    runs = []
    for seed in range(3):
        dp = rhobench.DiscretizedProblem(rhobench.make_instance(1, 2, 0))
        runs.append(rhobench.cma_run(dp, 3000, seed))
    assert rhobench.success_rate(runs, 1e-8, 3000) == 1.0
    assert rhobench.ert(runs, 1e-8, 3000) <= 3000
    assert rhobench.ecdf(runs, [3000])[-1] == (3000, 1.0)


def test_landscape_grid():
    dp = rhobench.DiscretizedProblem(rhobench.make_instance(8, 2, 0), 1.0)
    xs, values = rhobench.landscape(dp, 11)
    assert xs.shape == (121, 2)
    assert len(values) == 121
    assert xs[0, 0] == -5.0 and xs[1, 0] == -5.0 and xs[1, 1] == -4.0


def test_experiment_round_trip(tmp_path):
    cfg = rhobench.parse_config(
        "{fids: [1], dims: [2], instances: [0], rhos: [None, 1.0], algorithms: [cmaes, intea], runs: 2,"
        " budget_rule: fixed(2000)}"
    )
    cfg.output_dir = tmp_path / "out"
    assert cfg.cells() == 6
    summary = rhobench.run_experiment(cfg)
    assert summary["runs"] == 6
    assert summary["failed"] == 0
    with open(summary["manifest"], newline="") as f:
        rows = list(csv.DictReader(f))
    assert len(rows) == 6
    assert {"final_delta", "hit_1e8_at", "seed"} <= set(rows[0])

    loaded = rhobench.load_results(tmp_path / "out")
    assert [r.trajectory for r in loaded] == [r.trajectory for r in summary["records"]]

    path = rhobench.summarize(tmp_path / "out", "success", [100, 2000])
    with open(path, newline="") as f:
        table = list(csv.DictReader(f))
    assert len(table) == 3 * 2
    with pytest.raises(rhobench.RhobenchError):
        rhobench.summarize(tmp_path / "missing", "ert")
