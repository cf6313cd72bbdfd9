import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from negabound import bounds
from negabound import conditions as cond
from negabound.states import (
    BipartiteState,
    make_bell_like,
    make_four_qubit,
    make_max_entangled,
    make_noisy,
    negativity_exact,
    random_mixed,
    random_pure,
)


def test_first_qubit_values():
    assert bounds.bound_first_qubit(0.25).lower_bound == pytest.approx(0.5 * (math.sqrt(2) - 1))
    c = bounds.bound_first_qubit(0.0)
    assert not c.applicable and c.lower_bound == 0.0
    assert not bounds.bound_first_qubit(-0.1).applicable


def test_first_improved_reduces_to_first_at_a_one():
    for k in (0.01, 0.1, 0.25):
        assert bounds.bound_first_improved(k, 1.0).lower_bound == pytest.approx(bounds.bound_first_qubit(k).lower_bound)
        assert bounds.bound_first_improved(k, 0.5).lower_bound >= bounds.bound_first_qubit(k).lower_bound
    with pytest.raises(ValueError):
        bounds.bound_first_improved(0.1, 1.5)


def test_multi_block_sums_positive_terms():
    c = bounds.bound_multi_block([0.25, -0.1, 0.0625])
    expect = bounds.bound_first_qubit(0.25).lower_bound + bounds.bound_first_qubit(0.0625).lower_bound
    assert c.lower_bound == pytest.approx(expect)
    assert not bounds.bound_multi_block([0.0, -1.0]).applicable


def test_second_method_bisection_closed_form_at_x0():
    # at x = 0, y = 1 the root solves sqrt(1+mu) sqrt(mu) + mu = sqrt(kappa)
    for k in (0.01, 0.1, 0.25, 0.7):
        mu = bounds.bound_second_method(k, 0.0, 1.0).lower_bound
        assert math.sqrt(1 + mu) * math.sqrt(mu) + mu == pytest.approx(math.sqrt(k), abs=1e-10)
        assert mu == pytest.approx(k / (1 + 2 * math.sqrt(k)), abs=1e-10)
    assert bounds.bound_second_method(0.25, 0.0, 1.0).lower_bound == pytest.approx(0.125, abs=1e-11)


def test_second_method_quadratic_root():
    for k, x, y in [(0.1, 0.05, 1.0), (0.3, 0.2, 0.5), (0.01, 0.5, 2.0)]:
        c = bounds.bound_second_method_quadratic(k, x, y)
        assert c.applicable
        assert bounds.quadratic_residual(c.lower_bound, k, x, y) == pytest.approx(0.0, abs=1e-12)
    assert not bounds.bound_second_method_quadratic(0.1, 0.0, 1.0).applicable
    with pytest.raises(ValueError):
        bounds.bound_second_method_quadratic(0.1, -0.1, 1.0)


def test_quadratic_is_weaker_than_bisection():
    # the relaxation only overestimates the right-hand side, so its root is smaller
    for k in (0.05, 0.2):
        for x in (0.01, 0.1, 0.4):
            q = bounds.bound_second_method_quadratic(k, x, 1.0).lower_bound
            b = bounds.bound_second_method(k, x, 1.0).lower_bound
            assert q <= b + 1e-12


def test_example_reduction_value_and_counterexample():
    c = bounds.bound_second_method_example(0.25)
    assert c.lower_bound == pytest.approx(math.sqrt(5) - 2, abs=1e-12)
    assert "uncertified" in c.notes
    # weakly entangled state where the closed form overshoots the true negativity
    eps = 1e-3
    psi = np.array([0, 1, 1, 0]) / math.sqrt(2)
    rho = (1 - eps) * np.diag([1.0, 0, 0, 0]) + eps * np.outer(psi, psi)
    s = BipartiteState((2, 2), rho)
    k = cond.kappa_first(s, cond.sigma_minus_pair())
    assert k.mean_AdABdB == 0.0
    assert bounds.bound_second_method_example(k.kappa).lower_bound > negativity_exact(s)
    assert bounds.bound_second_method(k.kappa, 0.0, 1.0).lower_bound <= negativity_exact(s)


def test_second_qubit_flag():
    c = bounds.bound_second_qubit(0.0, 0.3)
    assert not c.applicable
    c = bounds.bound_second_qubit(0.0, 0.3, assume_negative_branch=True)
    assert c.applicable and c.lower_bound == pytest.approx(0.3)
    assert not bounds.bound_second_qubit(-1e-6, 0.3, assume_negative_branch=True).applicable
    assert bounds.bound_second_qubit(0.2, 0.0).lower_bound == pytest.approx(bounds.bound_first_qubit(0.2).lower_bound)


def test_schmidt_known_requires_vanishing_x():
    with pytest.raises(ValueError):
        bounds.bound_schmidt_known(0.5, 0.1)
    assert not bounds.bound_schmidt_known(0.25).applicable
    assert bounds.bound_schmidt_known(1.0).lower_bound == pytest.approx(1.5)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_schmidt_bound_tight_for_max_entangled(n):
    p = make_max_entangled(n)
    cert = bounds.certify(p, "schmidt_known")
    if n % 2 == 0:
        assert cert.lower_bound == pytest.approx((n - 1) / 2, abs=1e-9)
    assert cert.lower_bound <= cert.exact_negativity + 1e-9


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(2, 2), (2, 3), (3, 3), (3, 5), (4, 4)]), st.integers(0, 2**32 - 1))
def test_schmidt_bound_sound_on_random_pure(d, seed):
    p = random_pure(d, seed)
    cert = bounds.certify(p, "schmidt_known")
    assert cert.lower_bound <= negativity_exact(p) + 1e-9


def test_schmidt_operators_have_zero_x():
    p = random_pure((4, 4), 3)
    sd = bounds.schmidt(p)
    for K in range(1, 4):
        r = cond.kappa_first(p, bounds.schmidt_partition_operators(sd, K))
        assert abs(r.mean_AdABdB) < 1e-12
        assert abs(r.mean_AdB) == pytest.approx(sd.coefficients[:K].sum() * sd.coefficients[K:].sum())


def test_certify_bell_examples():
    s = make_bell_like(0.5)
    assert bounds.certify(s, "first_qubit", cond.sigma_minus_pair()).lower_bound == pytest.approx(0.2071, abs=1e-3)
    c = bounds.certify(s, "second_method", cond.sigma_minus_pair(), mode="quadratic")
    assert c.lower_bound == pytest.approx(math.sqrt(5) - 2, abs=1e-12)
    assert c.inputs["mode"] == "example_quadratic"
    c = bounds.certify(s, "second_method", cond.sigma_minus_pair())
    assert c.lower_bound == pytest.approx(0.125, abs=1e-10)
    assert c.exact_negativity == pytest.approx(0.5)


def test_certify_rejects_general_pairs_for_rank_one_methods():
    s = make_noisy(0.5, 1.0)
    gp = cond.general_pair(np.eye(2), np.eye(2))
    for m in ("first_qubit", "first_improved", "second_qubit"):
        with pytest.raises(ValueError, match="rank-one"):
            bounds.certify(s, m, gp)
    with pytest.raises(ValueError):
        bounds.certify(make_noisy(0.5, 0.9), "schmidt_known")


def test_second_method_with_general_operators():
    # y = ||A^dag A|| ||B^dag B|| scales with the operator norms
    s = make_bell_like(0.5)
    gp = cond.general_pair(2 * np.array([[0, 1], [0, 0]]), np.array([[0, 1], [0, 0]]))
    c = bounds.certify(s, "second_method", gp)
    assert c.inputs["y"] == pytest.approx(4.0)
    assert c.lower_bound == pytest.approx(0.125, abs=1e-10)


def test_multi_block_four_qubit():
    p = make_four_qubit(0.3, 0.2, 0.3, 0.2)
    ops = cond.four_qubit_operator_sets()
    c = bounds.certify(p, "multi_block", pairs=[ops["fine1"], ops["fine2"]])
    assert c.lower_bound == pytest.approx(
        bounds.bound_first_qubit(0.09).lower_bound + bounds.bound_first_qubit(0.04).lower_bound
    )
    with pytest.raises(ValueError, match="orthogonal"):
        bounds.certify(p, "multi_block", pairs=[ops["fine1"], ops["fine1"]])


def test_pinching_inequality():
    rng = np.random.default_rng(2)
    for seed in range(20):
        s = random_mixed((4, 4), 1 + seed % 16, seed)
        q = np.linalg.qr(rng.standard_normal((4, 4)))[0]
        blocks = [bounds.ProjectorPair.from_vectors(q.T[:2], q.T[:2]), bounds.ProjectorPair.from_vectors(q.T[2:], q.T[2:])]
        total = 2 * negativity_exact(s) + 1
        assert sum(bounds.pinched_norms(s, blocks)) <= total + 1e-9


def test_projector_pair_validation():
    with pytest.raises(ValueError):
        bounds.ProjectorPair(np.array([[1, 1], [0, 0]]), np.eye(2))


def test_certificate_json_round_trip():
    c = bounds.certify(make_noisy(0.4, 0.9), "first_improved", cond.sigma_minus_pair())
    back = bounds.BoundCertificate.from_json(c.to_json())
    assert back == c
    assert c.slack == pytest.approx(c.exact_negativity - c.lower_bound)


def test_certificate_invariants():
    c = bounds.BoundCertificate("first_qubit", {}, 0.3, False)
    assert c.lower_bound == 0.0
    with pytest.raises(ValueError):
        bounds.BoundCertificate("bogus", {}, 0.1, True)


def test_ceiling_check():
    c = bounds.BoundCertificate("first_qubit", {}, 0.6, True)
    with pytest.raises(bounds.BoundCeilingError):
        bounds.check_ceiling(c, (2, 2))
