"""Bipartite states, Schmidt decomposition and the exact negativity oracle."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .tensor import (
    PSD_SLACK,
    TOL_HERM,
    BipartiteIndex,
    _index,
    as_matrix,
    hermiticity_error,
    partial_trace_factors,
    partial_transpose,
    trace_norm,
)

RNG_NAME = "numpy.PCG64"


class InvalidStateError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class BipartiteState:
    """Density matrix with a declared ``(dim_a, dim_b)`` factorization."""

    idx: BipartiteIndex
    rho: np.ndarray

    def __post_init__(self):
        idx = _index(self.idx)
        object.__setattr__(self, "idx", idx)
        try:
            rho = as_matrix(self.rho)
            idx.check(rho)
        except ValueError as exc:
            raise InvalidStateError(str(exc)) from exc
        herm = hermiticity_error(rho)
        if herm > TOL_HERM:
            raise InvalidStateError(f"density matrix not Hermitian (deviation {herm:.3g})")
        rho = 0.5 * (rho + rho.conj().T)
        tr = np.trace(rho).real
        if abs(tr - 1.0) > 1e-9:
            raise InvalidStateError(f"density matrix trace is {tr!r}, expected 1")
        lo = np.linalg.eigvalsh(rho)[0]
        if lo < PSD_SLACK:
            raise InvalidStateError(f"density matrix has negative eigenvalue {lo:.3g}")
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)

    @property
    def dims(self) -> tuple[int, int]:
        return self.idx.dims


@dataclass(frozen=True, eq=False)
class PureState:
    idx: BipartiteIndex
    amplitudes: np.ndarray

    def __post_init__(self):
        idx = _index(self.idx)
        object.__setattr__(self, "idx", idx)
        psi = np.asarray(self.amplitudes, dtype=complex).ravel()
        if psi.size != idx.size:
            raise InvalidStateError(f"expected {idx.size} amplitudes for dims {idx.dims}, got {psi.size}")
        if not np.all(np.isfinite(psi)):
            raise InvalidStateError("amplitudes must be finite")
        nrm = np.linalg.norm(psi)
        if abs(nrm - 1.0) > 1e-10:
            raise InvalidStateError(f"state vector norm is {nrm!r}, expected 1")
        psi.setflags(write=False)
        object.__setattr__(self, "amplitudes", psi)

    @property
    def dims(self) -> tuple[int, int]:
        return self.idx.dims

    def matrix(self) -> np.ndarray:
        """Amplitudes reshaped to ``dim_a x dim_b``."""
        return self.amplitudes.reshape(self.idx.dims)

    def density(self) -> BipartiteState:
        psi = np.asarray(self.amplitudes)
        return BipartiteState(self.idx, np.outer(psi, psi.conj()))


@dataclass(frozen=True, eq=False)
class SchmidtData:
    """``psi = sum_j coefficients[j] * basis_a[j] (x) basis_b[j]``."""

    coefficients: np.ndarray
    basis_a: np.ndarray  # rows are the |u_j>
    basis_b: np.ndarray  # rows are the |v_j>
    weights: np.ndarray = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "weights", np.asarray(self.coefficients) ** 2)

    def reconstruct(self) -> np.ndarray:
        return np.einsum("k,ki,kj->ij", self.coefficients, self.basis_a, self.basis_b).ravel()


def as_density(s) -> BipartiteState:
    if isinstance(s, PureState):
        return s.density()
    if isinstance(s, BipartiteState):
        return s
    raise TypeError(f"expected a BipartiteState or PureState, got {type(s).__name__}")


def negativity_exact(s) -> float:
    """(||rho^T_b||_1 - 1) / 2 from a full eigendecomposition."""
    s = as_density(s)
    tn = trace_norm(partial_transpose(s.rho, s.idx))
    return max(0.0, 0.5 * (tn - 1.0))


def _phase_fix(u: np.ndarray) -> complex:
    k = int(np.argmax(np.abs(u)))
    return np.exp(-1j * np.angle(u[k]))


def schmidt(p: PureState) -> SchmidtData:
    """Schmidt decomposition via SVD of the reshaped amplitudes.

    Each ``basis_a`` vector is rotated so its largest-magnitude component is
    real positive (``basis_b`` takes the conjugate phase). Coefficients tied to
    1e-12 are ordered by the position of the first non-negligible component of
    ``basis_a``.
    """
    u, s, vh = np.linalg.svd(p.matrix())
    r = s.size
    ua = u[:, :r].T.copy()
    vb = vh[:r, :].copy()
    for k in range(r):
        ph = _phase_fix(ua[k])
        ua[k] *= ph
        vb[k] /= ph

    def first_nz(v):
        nz = np.flatnonzero(np.abs(v) > 1e-12)
        return int(nz[0]) if nz.size else v.size

    order = sorted(range(r), key=lambda k: (-round(float(s[k]), 12), first_nz(ua[k])))
    return SchmidtData(s[order].copy(), ua[order], vb[order])


def negativity_pure(sd: SchmidtData) -> float:
    total = float(np.sum(sd.coefficients))
    return 0.5 * (total * total - 1.0)


def _pure(idx, psi) -> PureState:
    psi = np.asarray(psi, dtype=complex)
    return PureState(idx, psi / np.linalg.norm(psi))


def make_bell_like(lambda0: float) -> PureState:
    """sqrt(lambda0)|01> + sqrt(1 - lambda0)|10>."""
    if not 0.0 <= lambda0 <= 1.0:
        raise ValueError(f"lambda0 must lie in [0, 1], got {lambda0}")
    psi = np.zeros(4, dtype=complex)
    psi[1] = np.sqrt(lambda0)
    psi[2] = np.sqrt(1.0 - lambda0)
    return PureState((2, 2), psi)


def make_noisy(lambda0: float, p: float) -> BipartiteState:
    """p |psi><psi| + (1 - p) I / 4 with ``psi = make_bell_like(lambda0)``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    psi = make_bell_like(lambda0).amplitudes
    rho = p * np.outer(psi, psi.conj()) + (1.0 - p) / 4.0 * np.eye(4)
    return BipartiteState((2, 2), rho)


def make_four_qubit(l00: float, l01: float, l10: float, l11: float) -> PureState:
    """sum_jk sqrt(l_jk) |jk>_a |jk>_b on two qubit pairs.

    Subsystem ``a`` holds qubits (1, 2) and ``b`` holds qubits (3, 4); the
    composite index of ``|jk>`` is ``2 j + k`` on each side.
    """
    lam = np.array([l00, l01, l10, l11], dtype=float)
    if np.any(lam < 0) or abs(lam.sum() - 1.0) > 1e-9:
        raise ValueError(f"weights must be nonnegative and sum to 1, got {lam.tolist()}")
    psi = np.zeros(16, dtype=complex)
    for k, w in enumerate(lam):
        psi[4 * k + k] = np.sqrt(w)
    return _pure((4, 4), psi)


def make_four_qubit_symmetric(lambda00: float) -> PureState:
    """Four-qubit state with l10 = l00 and l01 = l11 = 1/2 - l00."""
    if not 0.0 <= lambda00 <= 0.5:
        raise ValueError(f"lambda00 must lie in [0, 1/2], got {lambda00}")
    l11 = 0.5 - lambda00
    return make_four_qubit(lambda00, l11, lambda00, l11)


def make_max_entangled(n: int) -> PureState:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    psi = np.zeros(n * n, dtype=complex)
    psi[:: n + 1] = 1.0 / np.sqrt(n)
    return PureState((n, n), psi)


def product_state(rho_a, rho_b) -> BipartiteState:
    rho_a, rho_b = as_matrix(rho_a), as_matrix(rho_b)
    return BipartiteState((rho_a.shape[0], rho_b.shape[0]), np.kron(rho_a, rho_b))


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def random_pure(idx, seed) -> PureState:
    """Haar-random pure state (normalized complex Gaussian vector)."""
    idx = _index(idx)
    rng = _rng(seed)
    psi = rng.standard_normal(idx.size) + 1j * rng.standard_normal(idx.size)
    return _pure(idx, psi)


def ginibre_density(d: int, rank: int, rng) -> np.ndarray:
    if rank < 1:
        raise ValueError(f"rank must be >= 1, got {rank}")
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_mixed(idx, rank: int, seed) -> BipartiteState:
    """Ginibre-ensemble state G G^dag / tr(G G^dag)."""
    idx = _index(idx)
    return BipartiteState(idx, ginibre_density(idx.size, rank, _rng(seed)))


def random_product(dims, seed, rank_a: int | None = None, rank_b: int | None = None) -> BipartiteState:
    da, db = dims
    rng = _rng(seed)
    ra = ginibre_density(da, rank_a or da, rng)
    rb = ginibre_density(db, rank_b or db, rng)
    return product_state(ra, rb)


def reduce_local(s, factors_a, factors_b, keep_a, keep_b) -> BipartiteState:
    """Trace out local tensor factors on each side.

    ``factors_a`` / ``factors_b`` split each subsystem into factors;
    ``keep_a`` / ``keep_b`` list the factor positions retained.
    """
    s = as_density(s)
    fa, fb = list(factors_a), list(factors_b)
    if int(np.prod(fa)) != s.idx.dim_a or int(np.prod(fb)) != s.idx.dim_b:
        raise ValueError("factor dimensions do not multiply to the subsystem dimensions")
    keep = list(keep_a) + [len(fa) + k for k in keep_b]
    red = partial_trace_factors(s.rho, fa + fb, keep)
    da = int(np.prod([fa[k] for k in keep_a]))
    db = int(np.prod([fb[k] for k in keep_b]))
    return BipartiteState((da, db), red)
