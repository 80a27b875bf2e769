"""End-to-end smoke tests for the _maxcon extension module."""

import json
import math

import pytest

import _maxcon as mx


@pytest.fixture
def line_instance():
    return mx.generate("line2d", n=20, outlier_rate=0.2, seed=7)


def test_generate_and_residual(line_instance):
    ds = line_instance
    assert len(ds) == 20
    ds.validate()
    theta = ds.planted.theta_hat
    outliers = set(ds.planted.outlier_indices)
    assert len(outliers) == 4
    for i, p in enumerate(ds.points):
        r = mx.residual(p, theta)
        assert (r > 0.1) == (i in outliers)


def test_minimax_and_search(line_instance):
    ds = line_instance
    fit = mx.minimax_fit(ds)
    assert fit.gamma > ds.epsilon
    assert len(fit.basis) <= 3
    assert math.isclose(fit.gamma, max(fit.residuals), rel_tol=1e-12)

    result = mx.optimal_search(ds)
    assert result.consensus >= len(ds) - len(ds.planted.outlier_indices)
    assert mx.min_max_residual(ds, result.consensus_indices) <= ds.epsilon + 1e-9

    count, mask = mx.consensus(ds, result.theta)
    assert count >= result.consensus


def test_refinement_and_baselines(line_instance):
    ds = line_instance
    rollout = mx.random_rollout(ds, seed=3)
    refined = mx.local_tree_refinement(ds, rollout.consensus_indices)
    assert set(rollout.consensus_indices) <= set(refined)

    plain = mx.ransac(ds, iterations=300, seed=1)
    lo = mx.lo_ransac(ds, iterations=300, seed=1)
    assert lo.consensus >= plain.consensus >= 4


def test_correspondence_roundtrip(tmp_path):
    pt = mx.linearize_correspondence([1.0, 2.0], [3.0, 4.0])
    assert list(pt.a) == [3, 6, 3, 4, 8, 4, 1, 2]
    assert pt.b == -1.0

    csv = tmp_path / "pts.csv"
    ds = mx.generate("fundamental_linearized", n=12, outlier_rate=0.0, seed=5)
    rows = ["u1,u2,v1,v2"]
    rows += [",".join(format(float(v), ".17g") for v in p.raw) for p in ds.points]
    csv.write_text("\n".join(rows) + "\n")
    loaded = mx.load_correspondences(str(csv), epsilon=0.05)
    assert len(loaded) == 12
    assert mx.min_max_residual(loaded) <= 1e-6


def test_dataset_io_roundtrip(tmp_path, line_instance):
    path = tmp_path / "ds.json"
    mx.save_dataset(line_instance, str(path))
    back = mx.load_dataset(str(path))
    assert len(back) == len(line_instance)
    assert back.epsilon == line_instance.epsilon
    assert list(back.points[3].a) == list(line_instance.points[3].a)

    with pytest.raises(IOError):
        mx.load_dataset(str(tmp_path / "missing.json"))


def test_train_evaluate_checkpoint(tmp_path):
    cfg = mx.TrainConfig()
    cfg.episodes = 3
    cfg.n_points = 8
    cfg.batch_size = 8
    cfg.warmup_transitions = 8
    cfg.replay_capacity = 64
    cfg.seed = 2
    ck = mx.train(cfg)
    assert ck.episode == 3

    path = tmp_path / "agent.ck"
    mx.save_checkpoint(ck, str(path))
    back = mx.load_checkpoint(str(path))
    assert back.episode == 3

    ds = mx.generate("line2d", n=10, outlier_rate=0.2, seed=9)
    result, ret = mx.evaluate_policy(ds, back)
    assert ret <= 0.0
    assert mx.min_max_residual(ds, result.consensus_indices) <= ds.epsilon + 1e-9


def test_cli_entry_point(tmp_path):
    out = tmp_path / "data"
    assert mx.run_cli(["gen", "--model", "line2d", "--n", "12", "--rate", "0.1",
                       "--seed", "3", "--out", str(out)]) == 0
    instance = out / "instance_000.json"
    assert instance.exists()

    record = tmp_path / "result.json"
    assert mx.run_cli(["solve", "--dataset", str(instance), "--method", "oracle",
                       "--fixed-clock", "--out", str(record)]) == 0
    rec = json.loads(record.read_text())
    assert rec["method"] == "oracle"
    assert rec["consensus"] + rec["removals"] == 12

    assert mx.run_cli(["solve", "--dataset", str(instance), "--method", "nope"]) == 2
