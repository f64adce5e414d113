import math

import numpy as np
import pytest

import eigenmap as em


def test_lists():
    assert "warped.sin" in em.list_examples()
    assert "bochner-laplacian" in em.list_suites()


def test_describe_reports_flags():
    text = em.describe("warped.sin")
    assert "harmonic" in text


def test_warped_eigenvalues():
    t = -1.0
    lam = em.eigenvalues("warped.sin", [0.1, 0.2, 0.3, 0.4, t])
    expected = math.exp(-0.2 * math.sin(t))
    assert lam == pytest.approx([expected, expected, 1.0, 1.0, 0.0], abs=1e-12)


def test_tension_of_square_map():
    tau = em.tension("nonharmonic.square", [1.0, 0.0])
    assert np.allclose(tau, [2.0, 0.0], atol=1e-12)


def test_pullback_metric_is_symmetric():
    a = em.pullback_metric("ball.m2n2.q", [0.1, 0.2, -0.1, 0.05])
    assert a.shape == (4, 4)
    assert np.allclose(a, a.T, atol=1e-14)


def test_delta_lambda_matches_direct_laplacian():
    for p in em.sample_points("warped.twisted", 3, 1):
        r = em.delta_lambda("warped.twisted", p)
        assert r["formula"] == pytest.approx(r["direct"], rel=1e-9, abs=1e-12)
        assert sum(v for _, v in r["blocks"]) == pytest.approx(r["formula"], abs=1e-12)


def test_worked_ratio():
    b = em.ratio_bounds([4.0, 4.0, 1.0, 1.0], 2)
    assert round(b["ratio"], 5) == 1.74078
    assert round(b["refined_bound"], 5) == 1.97906
    assert not b["equality"]
    assert em.wedge_norm([4.0, 1.0], 2) == pytest.approx(2.0)


def test_d_homothety():
    assert em.d_homothety_c(1.0, 2.0) == -1.0
    with pytest.raises(em.GeometryError, match="NonPositiveA"):
        em.d_homothety_c(1.0, 0.0)


def test_run_suite_passes_and_is_deterministic():
    r = em.run_suite("warped.sin", "bochner-laplacian", samples=5, seed=3)
    assert r["exit_code"] == 0
    assert r["summary"]["failed"] == 0
    assert r["summary"]["total"] == len(r["records"])
    a = em.run_suite_csv("warped.sin", "harmonicity", samples=4, seed=2)
    b = em.run_suite_csv("warped.sin", "harmonicity", samples=4, seed=2)
    assert a == b
    assert a.startswith("example,suite,check_id,point,lhs,rhs,abs_err,rel_err,tolerance,pass\n")


def test_tolerance_override_fails_records():
    r = em.run_suite("warped.twisted", "eigen-derivatives", samples=3, tol={"connection_fd": 1e-16})
    assert r["exit_code"] == 1


def test_unknown_ids_raise():
    with pytest.raises(em.GeometryError, match="UnknownExample"):
        em.run_suite("no.such.map", "harmonicity")
    with pytest.raises(em.GeometryError, match="UnknownSuite"):
        em.run_suite("warped.sin", "no-such-suite")
