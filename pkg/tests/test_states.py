import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from negabound.states import (
    BipartiteState,
    InvalidStateError,
    PureState,
    make_bell_like,
    make_four_qubit,
    make_four_qubit_symmetric,
    make_max_entangled,
    make_noisy,
    negativity_exact,
    negativity_pure,
    product_state,
    random_mixed,
    random_product,
    random_pure,
    reduce_local,
    schmidt,
)


def test_state_validation():
    with pytest.raises(InvalidStateError, match="trace"):
        BipartiteState((2, 2), 2 * np.eye(4) / 4)
    with pytest.raises(InvalidStateError, match="Hermitian"):
        BipartiteState((2, 2), np.eye(4) / 4 + 1e-3 * np.triu(np.ones((4, 4)), 1))
    with pytest.raises(InvalidStateError, match="negative"):
        BipartiteState((2, 2), np.diag([0.6, 0.6, -0.1, -0.1]))
    with pytest.raises(InvalidStateError):
        BipartiteState((2, 2), np.eye(3) / 3)
    with pytest.raises(InvalidStateError, match="norm"):
        PureState((2, 2), [1, 1, 0, 0])


def test_state_is_read_only():
    s = make_noisy(0.3, 0.5)
    with pytest.raises(ValueError):
        s.rho[0, 0] = 1.0


@pytest.mark.parametrize("lam", [0.0, 0.1, 0.25, 0.5, 0.9, 1.0])
def test_bell_like_negativity(lam):
    assert negativity_exact(make_bell_like(lam)) == pytest.approx(np.sqrt(lam * (1 - lam)), abs=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_max_entangled_negativity(n):
    assert negativity_exact(make_max_entangled(n)) == pytest.approx((n - 1) / 2, abs=1e-9)


def test_noisy_negativity_closed_form():
    # eigen-decomposition of the partial transpose gives p sqrt(l0 l1) - (1 - p)/4
    for lam in np.linspace(0, 1, 11):
        for p in np.linspace(0, 1, 11):
            expect = max(0.0, p * np.sqrt(lam * (1 - lam)) - (1 - p) / 4)
            assert negativity_exact(make_noisy(lam, p)) == pytest.approx(expect, abs=1e-12)


def test_noisy_extremes():
    assert negativity_exact(make_noisy(0.5, 0.0)) == 0.0
    np.testing.assert_allclose(make_noisy(0.3, 1.0).rho, make_bell_like(0.3).density().rho)


@settings(max_examples=40, deadline=None)
@given(st.tuples(st.integers(2, 4), st.integers(2, 5)), st.integers(0, 2**32 - 1))
def test_schmidt_reconstructs_and_matches_negativity(d, seed):
    p = random_pure(d, seed)
    sd = schmidt(p)
    np.testing.assert_allclose(sd.reconstruct(), p.amplitudes, atol=1e-12)
    assert sd.weights.sum() == pytest.approx(1.0)
    assert np.all(np.diff(sd.coefficients) <= 1e-12)
    np.testing.assert_allclose(sd.basis_a @ sd.basis_a.conj().T, np.eye(len(sd.coefficients)), atol=1e-12)
    assert negativity_pure(sd) == pytest.approx(negativity_exact(p), abs=1e-10)


def test_schmidt_phase_convention():
    sd = schmidt(random_pure((3, 3), 7))
    for u in sd.basis_a:
        k = np.argmax(np.abs(u))
        assert abs(u[k].imag) < 1e-14 and u[k].real > 0


def test_four_qubit_formula():
    l00, l01, l10, l11 = 0.4, 0.1, 0.4, 0.1
    p = make_four_qubit(l00, l01, l10, l11)
    s = np.sqrt([l00, l01, l10, l11]).sum()
    assert negativity_exact(p) == pytest.approx(0.5 * (s * s - 1), abs=1e-12)
    assert negativity_exact(p) == pytest.approx(1.3, abs=1e-12)
    for lam in np.linspace(0, 0.5, 6):
        expect = 0.5 * (1 + 8 * np.sqrt(lam * (0.5 - lam)))
        assert negativity_exact(make_four_qubit_symmetric(lam)) == pytest.approx(expect, abs=1e-12)
    with pytest.raises(ValueError):
        make_four_qubit(0.5, 0.5, 0.5, 0.0)


def test_product_states_have_zero_negativity():
    for seed in range(20):
        assert negativity_exact(random_product((3, 2), seed)) < 1e-12


def test_random_states_are_seeded():
    a, b = random_mixed((2, 3), 2, 5), random_mixed((2, 3), 2, 5)
    np.testing.assert_array_equal(a.rho, b.rho)
    assert np.linalg.matrix_rank(a.rho, tol=1e-10) == 2


def test_partial_trace_never_increases_negativity():
    # local reduction is LOCC, so negativity is monotone
    for seed in range(30):
        s = random_mixed((4, 4), 1 + seed % 4, seed)
        red = reduce_local(s, [2, 2], [2, 2], [0], [0])
        assert negativity_exact(red) <= negativity_exact(s) + 1e-12


def test_product_state_helper():
    s = product_state(np.diag([1.0, 0.0]), np.eye(3) / 3)
    assert s.dims == (2, 3)
