import math

import numpy as np
import pytest

import conicfo as cf


def canonical():
    return cf.make_equality_qp(np.array([[1.0, 1.0]]), np.array([1.0]), np.zeros(2), 1.0)


def test_cone_moreau():
    rng = np.random.default_rng(0)
    K = cf.Cone.product([cf.Cone.nonneg(2), cf.Cone.second_order(3)])
    for _ in range(50):
        v = rng.normal(size=5)
        p, q = K.project(v), K.project_polar(v)
        assert np.allclose(p + q, v, atol=1e-12)
        assert abs(p @ q) < 1e-10


def test_canonical_known_solution():
    inst = canonical()
    k = inst.known
    assert k.f_star == pytest.approx(0.25)
    assert k.delta_star == pytest.approx(0.25)
    assert np.allclose(k.u_star, [0.5, 0.5])
    assert k.x_star[0] == pytest.approx(-0.5)


@pytest.mark.parametrize("method", ["ial", "fial", "aial", "ns", "qp", "np", "apm"])
def test_methods_reach_eps(method):
    inst = canonical()
    eps = 1e-2
    rep = cf.solve(inst, method, eps)
    chk = cf.check_eps_optimal(inst.problem, inst.known, rep.u, eps,
                               one_sided=method in ("aial", "qp", "np", "apm"))
    assert chk["pass"], (method, chk)
    assert rep.counters["proj_U"] > 0


def test_parameter_formulas():
    mu, delta = cf.optimal_params_auglag("gradient", 0.1, 1.0, 0.0, 1.0)
    assert mu == pytest.approx(160.0, rel=1e-12)
    assert delta == pytest.approx(1.0 / 30.0, rel=1e-12)
    mu, delta, n_out = cf.ns_params(10, 1.0, 1.0, 1.0, 0.1)
    assert mu == pytest.approx(2.0 ** 1.5 / 10.0, rel=1e-12)
    assert n_out == 60
    rho, mu_s, warn = cf.penalty_params("N", 0.1, 1.0)
    assert rho == pytest.approx(21.0)
    assert mu_s == pytest.approx(0.05)
    assert not warn


def test_sweep_csv_and_slope(tmp_path):
    inst = cf.gen_equality_qp(6, 1)
    recs = cf.sweep(inst, "ial", [1e-1, 3e-2, 1e-2])
    assert len(recs) == 3
    path = str(tmp_path / "r.csv")
    cf.emit_csv(recs, path)
    back = cf.parse_csv(path)
    assert [r.proj_U for r in back] == [r.proj_U for r in recs]
    assert [r.infeas for r in back] == [r.infeas for r in recs]
    assert abs(cf.fit_slope(back, "proj_U") - 1.0) < 0.25


def test_errors():
    inst = canonical()
    with pytest.raises(cf.ParameterError):
        cf.solve(inst, "newton", 1e-2)
    with pytest.raises(cf.ParameterError):
        cf.penalty(inst.problem, "X", 1.0, 1e-2)
    with pytest.raises(cf.IoError):
        cf.load_problem("/nonexistent_dir/p.json")
    assert math.isinf(cf.SimpleSet.full_space(2).diameter)
