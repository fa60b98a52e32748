import itertools
import random

import pytest

from src.core.engine import RunResult, SimulationConfig, run
from src.harness.sweep import Cell, RunRecord, SweepSpec, derive_seed, run_sweep, summarize

GRID_K = list(range(2, 99, 2)) + [99]
GRID_RHO = [0.0, 0.01, 0.05, 0.1, 0.5, 1.0]
GRID_R = [0.001, 0.005, 0.01, 0.05, 0.1, 0.5, 1.0]
GRID_EPS = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5]


def make_spec(**overrides) -> SweepSpec:
    base = SimulationConfig.build(num_agents=20, k=19, evidence_rate=1.0, epsilon=0.0,
                                  num_propositions=10, max_steps=3000)
    fields = dict(base=base, k_values=(4,), rho_values=(0.0,), r_values=(0.2,),
                  epsilon_values=(0.0,), runs_per_cell=3, base_seed=1)
    fields.update(overrides)
    return SweepSpec(**fields)


def test_derive_seed_is_stable():
    assert derive_seed(1, 10, 0.0, 0.05, 0.2, 3) == derive_seed(1, 10, 0.0, 0.05, 0.2, 3)
    assert 0 <= derive_seed(1, 10, 0.0, 0.05, 0.2, 3) < 2 ** 64
    assert derive_seed(1, 10, 0.0, 0.05, 0.2, 3) != derive_seed(2, 10, 0.0, 0.05, 0.2, 3)


def test_derive_seed_unique_over_full_grid():
    seeds = {
        derive_seed(2019, k, rho, r, eps, run_index)
        for eps, r, k, rho in itertools.product(GRID_EPS, GRID_R, GRID_K, GRID_RHO)
        for run_index in range(100)
    }
    assert len(seeds) == len(GRID_EPS) * len(GRID_R) * len(GRID_K) * len(GRID_RHO) * 100


@pytest.mark.parametrize("overrides", [
    {"k_values": ()},
    {"rho_values": ()},
    {"r_values": ()},
    {"epsilon_values": ()},
    {"k_values": (4, 4)},
    {"runs_per_cell": 0},
    {"base_seed": -1},
    {"r_values": (1e-7,)},
    {"rho_values": (0.1234561, 0.1234562)},
])
def test_spec_validation(overrides):
    with pytest.raises(ValueError):
        make_spec(**overrides)


def test_invalid_cell_aborts_sweep():
    with pytest.raises(ValueError, match=r"Invalid sweep cell \(eps=0.0 r=0.2 k=3 rho=0.0\)"):
        run_sweep(make_spec(k_values=(4, 3)))


def test_cells_follow_cross_product_order():
    spec = make_spec(k_values=(6, 4), epsilon_values=(0.2, 0.0))
    assert list(spec.cells()) == [
        Cell(0.2, 0.2, 6, 0.0), Cell(0.2, 0.2, 4, 0.0),
        Cell(0.0, 0.2, 6, 0.0), Cell(0.0, 0.2, 4, 0.0),
    ]


def test_cell_config_overrides_base():
    spec = make_spec()
    config = spec.cell_config(Cell(0.1, 0.3, 6, 0.5), 2)
    assert (config.epsilon, config.evidence_rate, config.network.k, config.network.rho) == (0.1, 0.3, 6, 0.5)
    assert config.seed == derive_seed(1, 6, 0.5, 0.3, 0.1, 2)
    assert config.num_propositions == 10


def test_noise_free_cell_learns_world():
    [(summary, records)] = run_sweep(make_spec(runs_per_cell=10))
    assert summary.mean_error == 0.0
    assert summary.fraction_converged == 1.0
    assert summary.runs == len(records) == 10
    assert [rec.run_index for rec in records] == list(range(10))


def test_single_run_percentiles_equal_the_run():
    [(summary, [record])] = run_sweep(make_spec(runs_per_cell=1, epsilon_values=(0.3,)))
    assert summary.p10_error == summary.p90_error == summary.mean_error == record.result.final_average_error
    assert summary.p10_steps == summary.p90_steps == summary.mean_steps == record.result.steps


def test_summary_is_order_independent():
    cell = Cell(0.2, 0.1, 4, 0.0)
    records = [
        RunRecord(cell, i, RunResult(converged=i % 3 != 0, steps=100 + 37 * i,
                                     final_average_error=(i * 0.013) % 0.5))
        for i in range(40)
    ]
    shuffled = records[:]
    random.Random(5).shuffle(shuffled)
    summary = summarize(cell, records)
    assert summarize(cell, shuffled) == summary
    assert summary.p10_error <= summary.p90_error
    assert summary.p10_steps <= summary.p90_steps
    assert 0.0 <= summary.fraction_converged <= 1.0


def test_sweep_is_deterministic():
    spec = make_spec(epsilon_values=(0.0, 0.2), rho_values=(0.0, 0.5))
    assert run_sweep(spec) == run_sweep(spec)


def test_process_pool_matches_inline_execution():
    spec = make_spec(k_values=(4, 19), epsilon_values=(0.1,), runs_per_cell=2)
    assert run_sweep(spec, workers=2) == run_sweep(spec, workers=1)


def test_runs_are_reproducible_in_isolation():
    spec = make_spec(epsilon_values=(0.2,), runs_per_cell=3)
    [(_, records)] = run_sweep(spec)
    assert run(spec.cell_config(Cell(0.2, 0.2, 4, 0.0), 2)) == records[2].result
