"""Smoke test for the python bindings: one pass through each exposed path."""

import math
import os
import tempfile

import spreadlab


def main() -> None:
    params = spreadlab.EnsembleParams(64, 32, 6, 3, seed=1)
    a = spreadlab.sample_biregular(params)
    assert (a.n, a.m, a.s, a.t) == (64, 32, 6, 3)

    dense = a.dense()
    assert dense.shape == (32, 64)
    assert abs(dense).sum() == 64 * 3

    x = dense.T[:, 0] * 0.0
    x[:5] = [1.0, -2.0, 0.5, 0.0, 3.0]
    assert abs(a.apply(x) - dense @ x).max() < 1e-12

    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "a.bireg")
        spreadlab.write_bireg(path, a)
        b = spreadlab.read_bireg(path)
        assert abs(b.dense() - dense).max() == 0.0

    rep = spreadlab.singular_extremes(a, method="dense")
    it = spreadlab.singular_extremes(a, method="iterative")
    assert rep.sigma_max >= rep.sigma_min > 0
    assert abs(rep.sigma_max - it.sigma_max) < 1e-6 * rep.sigma_max

    w = spreadlab.attack(a, max_radius=6)
    assert w.residual <= 1e-8
    assert 0.0 < w.epsilon < 1.0
    err, support = spreadlab.best_k_sparse_error(w.y, w.k)
    assert err <= w.epsilon + 1e-9
    assert len(support) == w.k

    assert abs(spreadlab.distortion(w.y, 1.0, 2.0) - 1.0) > -1.0  # runs and returns a float

    small = spreadlab.sample_biregular(spreadlab.EnsembleParams(8, 4, 6, 3, seed=3))
    cert = spreadlab.verify_unique_expansion(small, gamma=0.25, mu=1.0, mode="exhaustive")
    assert cert.mode == "exhaustive"
    assert cert.counterexample is None

    if cert.mu == 0.0:
        rc = spreadlab.certify_rip(cert, small.t, small.s, 1.0, 0.5)
        assert math.isclose(rc.K, 3.0)
    probe = spreadlab.probe_rip(small, 2.0, 2, mode="exhaustive")
    assert probe.min_ratio <= probe.max_ratio

    eps = spreadlab.rip_to_spread_params(4, 0.3, 1.0, 64)
    assert math.isclose(eps, 0.7 / 2.6)

    print("python smoke: ok")


if __name__ == "__main__":
    main()
