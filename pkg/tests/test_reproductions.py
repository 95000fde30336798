"""Figure-style reproductions that take minutes rather than seconds.

Excluded from the default run; enable with `pytest -m slow`.
"""

import numpy as np
import pytest

from thermoga import analysis, experiment


@pytest.mark.slow
def test_sk_effective_temperature_shows_crossover(tmp_path):
    # Tournament size 2, p_c = 0.05, p_m = 0.005: the late-time exponent of
    # T(t) grows past the early one at an intermediate time scale.
    cfg = dict(experiment.preset_configs("fgSSK", desk=True))["sigma2"]
    summary = experiment.run_experiment(cfg, output_dir=tmp_path)
    cross = analysis.detect_crossover(
        analysis.TimeSeries(summary.times[1:], summary.temperature_mean[1:]))
    assert cross is not None
    assert cross.exponent_late > cross.exponent_early


@pytest.mark.slow
def test_sk_fitness_increases(tmp_path):
    cfg = dict(experiment.preset_configs("fgMSK", desk=True))["pm0.001"]
    summary = experiment.run_experiment(cfg, output_dir=tmp_path)
    fitness = summary.series_mean
    assert np.mean(fitness[-100:]) > np.mean(fitness[:100])


@pytest.mark.slow
def test_full_size_chain_campaign(tmp_path):
    # N = 2000 run: all declared files, and the replica-median temperature
    # is nonincreasing once the short heating transient is over.
    cfg = dict(experiment.preset_configs("fg1D", desk=False))["fg1D"]
    summary = experiment.run_experiment(cfg, output_dir=tmp_path)
    experiment.emit_plot_data(summary)
    names = {p.name for p in summary.output_dir.iterdir()}
    assert {"config.ini", "temperature.tsv", "residual.tsv", "fit_report.txt"} <= names
    assert sum(n.startswith("replica_") for n in names) == cfg.replicas
    median = np.median(summary.temperature, axis=0)
    assert np.all(np.diff(median[50:]) <= 0)
