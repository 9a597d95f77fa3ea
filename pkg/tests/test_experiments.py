import json
from fractions import Fraction as F

import pytest

from zigzag.composition import Composition
from zigzag.errors import ConfigMismatchError, ZigzagError
from zigzag.experiments import (
    ExperimentConfig,
    exact_paintbox_law,
    parse_report,
    report_to_csv,
    report_to_json,
    run,
    sequence_member,
)
from zigzag.paintbox import IntervalSystem
from zigzag.rng import make_rng

C = Composition


def test_sequences():
    assert sequence_member("column", 4) == C((1, 1, 1, 1))
    assert sequence_member("row", 4) == C((4,))
    assert sequence_member("zigzag:2", 7) == C((2, 2, 2, 1))
    assert sequence_member("zigzag:2,1", 6) == C((2, 1, 2, 1))
    assert sequence_member("scaled:3,2,4,1", 20) == C((6, 4, 8, 2))
    assert sequence_member("prefix:3,2", 8) == C((3, 2, 1, 1, 1))
    assert sequence_member("random", 9, make_rng(1)).size == 9
    with pytest.raises(ZigzagError):
        sequence_member("random", 9)
    with pytest.raises(ZigzagError):
        sequence_member("spiral:2", 5)
    with pytest.raises(ZigzagError):
        sequence_member("prefix:3,2", 4)


def test_exact_paintbox_laws():
    assert exact_paintbox_law(IntervalSystem.empty(), C((2, 1))) == F(2, 6)
    assert exact_paintbox_law(IntervalSystem.parse("0,1"), C((3,))) == 1
    assert exact_paintbox_law(IntervalSystem.parse("", "0,1"), C((2, 1))) == 0
    assert exact_paintbox_law(IntervalSystem.parse("0,1/2"), C((2,))) is None


def test_config_validation(tmp_path):
    with pytest.raises(ZigzagError):
        ExperimentConfig.from_dict({"experiment": "clt", "bogus": 1})
    with pytest.raises(ZigzagError):
        ExperimentConfig(experiment="nope")
    with pytest.raises(ZigzagError):
        ExperimentConfig(experiment="clt", sizes=[10, 5])
    path = tmp_path / "c.toml"
    path.write_text('experiment = "clt"\nsizes = [100]\nsamples = 200\nseed = 4\n')
    cfg = ExperimentConfig.load(path)
    assert cfg.sizes == [100] and cfg.seed == 4


def test_mismatched_sequence_rejected():
    cfg = ExperimentConfig(experiment="boundary_convergence", sequence="row",
                           target_down="0,1", sizes=[4, 6, 8])
    with pytest.raises(ConfigMismatchError):
        run(cfg)


def test_boundary_convergence_column_exact():
    cfg = ExperimentConfig(experiment="boundary_convergence", sequence="column",
                           target_down="0,1", sizes=[4, 6, 8], panel_max_k=3)
    report = run(cfg)
    assert report.passed
    assert all(r["error"] == 0 for r in report.records if r["quantity"] == "descent_class_probability")


def test_report_round_trip_and_determinism():
    cfg = ExperimentConfig(experiment="lln", target_up="0,1/2", target_down="1/2,1",
                           sizes=[50, 200], samples=5, seed=9)
    a, b = run(cfg), run(cfg)
    assert report_to_json(a) == report_to_json(b)
    assert report_to_csv(a) == report_to_csv(b)
    back = parse_report(report_to_json(a))
    assert back.records == a.records and back.seed == 9
    data = json.loads(report_to_json(a))
    assert data["environment"]["package"]


def test_averaged_uniformity_small():
    cfg = ExperimentConfig(experiment="averaged_uniformity", sequence="random", sizes=[200],
                           samples=4000, k=2, seed=3, ks_tolerance=0.05, corr_tolerance=0.08)
    report = run(cfg)
    assert {r["quantity"] for r in report.records} == {"ks_coord1", "ks_coord2", "corr_coord1_coord2"}
    assert report.passed
