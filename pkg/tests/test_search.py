import math

import numpy as np
import pytest

from negabound import bounds, search
from negabound import conditions as cond
from negabound.states import PureState, make_bell_like, make_noisy, random_mixed


def test_zero_parameters_give_canonical_pair():
    pair = search.parameterize_pair(np.zeros(search.n_params((2, 2))), (2, 2))
    np.testing.assert_allclose(pair.eta0, [1, 0])
    np.testing.assert_allclose(pair.eta1, [0, 1])
    np.testing.assert_allclose(pair.xi0, [1, 0])
    np.testing.assert_allclose(pair.xi1, [0, 1])


@pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 4)])
def test_parameterization_is_orthonormal(dims):
    rng = np.random.default_rng(1)
    for _ in range(20):
        p = search.parameterize_pair(rng.uniform(-4, 4, search.n_params(dims)), dims)
        assert abs(np.vdot(p.eta0, p.eta1)) < 1e-12 and abs(np.vdot(p.xi0, p.xi1)) < 1e-12
        assert np.linalg.norm(p.eta0) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        search.parameterize_pair(np.zeros(3), dims)


@pytest.mark.parametrize("method", search.SEARCH_METHODS)
def test_objective_agrees_with_certify(method):
    # the fast objective must reproduce the library certificate on the same pair
    rng = np.random.default_rng(5)
    for seed in range(5):
        s = random_mixed((2, 3), 1 + seed, seed)
        obj = search._Objective(s, method, "bisection")
        for _ in range(10):
            x = rng.uniform(-math.pi, math.pi, search.n_params((2, 3)))
            fast = obj.certificate(x)
            ref = bounds.certify(s, method, cond.rank_one(search.parameterize_pair(x, (2, 3))), with_exact=False)
            assert fast.applicable == ref.applicable
            assert fast.lower_bound == pytest.approx(ref.lower_bound, abs=1e-10)
            assert fast.inputs["kappa"] == pytest.approx(ref.inputs["kappa"], abs=1e-12)


def grid_best_first_bound(s, n=12):
    # brute force over real rotations of each side
    best = 0.0
    for a in np.linspace(0, math.pi, n, endpoint=False):
        for b in np.linspace(0, math.pi, n, endpoint=False):
            ea = (np.array([math.cos(a), math.sin(a)]), np.array([-math.sin(a), math.cos(a)]))
            for swap_a in (False, True):
                e0, e1 = ea[::-1] if swap_a else ea
                xb = (np.array([math.cos(b), math.sin(b)]), np.array([-math.sin(b), math.cos(b)]))
                for swap_b in (False, True):
                    x0, x1 = xb[::-1] if swap_b else xb
                    c = bounds.certify(s, "first_qubit", cond.rank_one(cond.RankOnePair(e0, e1, x0, x1)), with_exact=False)
                    best = max(best, c.lower_bound)
    return best


def test_phi_plus_converges_to_half_root_two_minus_one():
    s = PureState((2, 2), np.array([1, 0, 0, 1]) / math.sqrt(2))
    res = search.optimize(s, search.SearchConfig("first_qubit", restarts=4, seed=1))
    target = 0.5 * (math.sqrt(2) - 1)
    assert res.best_certificate.lower_bound == pytest.approx(target, abs=1e-6)
    assert res.best_certificate.lower_bound >= grid_best_first_bound(s) - 1e-9


def test_search_beats_canonical_pair():
    s = make_bell_like(0.3)
    res = search.optimize(s, search.SearchConfig("first_qubit", restarts=3))
    canon = bounds.certify(s, "first_qubit", cond.sigma_minus_pair())
    assert res.best_certificate.lower_bound >= canon.lower_bound - 1e-12
    assert res.trace == sorted(res.trace)
    assert res.best_certificate.lower_bound <= res.best_certificate.exact_negativity


def test_search_is_deterministic():
    s = make_noisy(0.4, 0.85)
    cfg = search.SearchConfig("second_qubit", restarts=3, seed=7, max_iters=60)
    a, b = search.optimize(s, cfg), search.optimize(s, cfg)
    np.testing.assert_array_equal(a.best_params, b.best_params)
    assert a.evaluations == b.evaluations


def test_search_escapes_inapplicable_start():
    # sigma^+ sigma^+ sees nothing on this state, the search must find the right pair
    s = make_noisy(0.2, 0.95)
    assert not bounds.certify(s, "second_qubit", cond.sigma_plus_pair()).applicable
    res = search.optimize(s, search.SearchConfig("second_qubit", restarts=2, seed=0))
    assert res.best_certificate.applicable
    assert 0 < res.best_certificate.lower_bound <= res.best_certificate.exact_negativity + 1e-9


def test_restart_points():
    cfg = search.SearchConfig(restarts=4, seed=3)
    pts = search.restart_points((2, 2), cfg)
    assert len(pts) == 4 and not np.any(pts[0])
    np.testing.assert_array_equal(pts[2], search.restart_points((2, 2), cfg)[2])


def test_config_validation():
    with pytest.raises(ValueError):
        search.SearchConfig("schmidt_known")
    with pytest.raises(ValueError):
        search.SearchConfig(restarts=0)
    with pytest.raises(ValueError):
        search.SearchConfig(step_init=1e-7)


def test_compare_pairs_orders_by_bound():
    rows = search.compare_pairs(
        make_bell_like(0.1), {"sigma": cond.sigma_minus_pair(), "x": cond.x_basis_pair()}, "first_qubit"
    )
    assert rows[0]["certificate"].lower_bound >= rows[1]["certificate"].lower_bound


def test_second_condition_blind_to_balanced_states():
    # reduced states are maximally mixed, so <A^dag A><B^dag B> = 1/4 bounds |<AB>|^2
    res = search.optimize(make_noisy(0.5, 0.9), search.SearchConfig("second_qubit", restarts=3))
    assert not res.best_certificate.applicable
    assert max(res.trace) == pytest.approx(0.81 / 4 - 0.25, abs=1e-9)
