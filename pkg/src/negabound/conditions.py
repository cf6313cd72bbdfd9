"""Local operators and the two entanglement conditions.

The first condition is ``|<A^dag B>|^2 > <A^dag A B^dag B>`` and the second
``|<A B>|^2 > <A^dag A><B^dag B>``; a positive gap ``kappa`` certifies that
the state is entangled.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import as_density
from .tensor import DimensionError, as_matrix, basis_vector, projector

ORTHO_TOL = 1e-9
REPAIR_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class LocalOperator:
    side: str
    matrix: np.ndarray

    def __post_init__(self):
        if self.side not in ("a", "b"):
            raise ValueError(f"side must be 'a' or 'b', got {self.side!r}")
        m = as_matrix(self.matrix)
        if m.shape[0] != m.shape[1]:
            raise DimensionError(f"local operator must be square, got {m.shape}")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def dag(self) -> np.ndarray:
        return self.matrix.conj().T


def _unit(v) -> tuple[np.ndarray, float]:
    v = np.asarray(v, dtype=complex).ravel()
    n = np.linalg.norm(v)
    if n == 0 or not np.isfinite(n):
        raise ValueError("zero or non-finite vector")
    return v, n


def _orthonormal_pair(v0, v1, label: str) -> tuple[np.ndarray, np.ndarray]:
    v0, n0 = _unit(v0)
    v1, n1 = _unit(v1)
    if v0.size != v1.size:
        raise DimensionError(f"{label} vectors have different lengths")
    dev = max(abs(n0 - 1.0), abs(n1 - 1.0), abs(np.vdot(v0, v1)))
    if dev <= ORTHO_TOL:
        return v0, v1
    if dev > REPAIR_TOL:
        raise ValueError(f"{label} vectors are not orthonormal (deviation {dev:.3g})")
    # Gram-Schmidt repair of slightly rounded input
    v0 = v0 / n0
    v1 = v1 - np.vdot(v0, v1) * v0
    return v0, v1 / np.linalg.norm(v1)


@dataclass(frozen=True, eq=False)
class RankOnePair:
    """Vectors defining ``A = |eta0><eta1|`` and ``B = |xi0><xi1|``."""

    eta0: np.ndarray
    eta1: np.ndarray
    xi0: np.ndarray
    xi1: np.ndarray

    def __post_init__(self):
        e0, e1 = _orthonormal_pair(self.eta0, self.eta1, "eta")
        x0, x1 = _orthonormal_pair(self.xi0, self.xi1, "xi")
        for name, v in zip(("eta0", "eta1", "xi0", "xi1"), (e0, e1, x0, x1)):
            v.setflags(write=False)
            object.__setattr__(self, name, v)


@dataclass(frozen=True, eq=False)
class OperatorPair:
    """Operators ``A`` on ``a`` and ``B`` on ``b``.

    When the pair is built from a :class:`RankOnePair`, ``rank_one`` keeps the
    vectors and ``ancilla`` records identity factors the rank-one operators
    were tensored with (``A = |eta0><eta1| (x) I_ancilla[0]``).
    """

    A: LocalOperator
    B: LocalOperator
    rank_one: RankOnePair | None = None
    ancilla: tuple[int, int] = (1, 1)
    name: str = ""

    def __iter__(self):
        return iter((self.A, self.B))

    @property
    def dims(self) -> tuple[int, int]:
        return (self.A.dim, self.B.dim)

    def rank_one_projectors(self):
        """Lifted projectors (P_eta0, P_eta1, P_xi0, P_xi1), or None."""
        r = self.rank_one
        if r is None:
            return None
        ia, ib = (np.eye(k) for k in self.ancilla)
        return (
            np.kron(projector([r.eta0]), ia),
            np.kron(projector([r.eta1]), ia),
            np.kron(projector([r.xi0]), ib),
            np.kron(projector([r.xi1]), ib),
        )


def rank_one(pair: RankOnePair, ancilla: tuple[int, int] = (1, 1), name: str = "") -> OperatorPair:
    a = np.outer(pair.eta0, pair.eta1.conj())
    b = np.outer(pair.xi0, pair.xi1.conj())
    a = np.kron(a, np.eye(ancilla[0]))
    b = np.kron(b, np.eye(ancilla[1]))
    return OperatorPair(LocalOperator("a", a), LocalOperator("b", b), pair, tuple(ancilla), name)


def general_pair(a, b, name: str = "") -> OperatorPair:
    return OperatorPair(LocalOperator("a", a), LocalOperator("b", b), name=name)


def expectation(s, op_a, op_b) -> complex:
    """Tr(rho (A (x) B))."""
    s = as_density(s)
    a = op_a.matrix if isinstance(op_a, LocalOperator) else as_matrix(op_a)
    b = op_b.matrix if isinstance(op_b, LocalOperator) else as_matrix(op_b)
    da, db = s.dims
    if a.shape != (da, da) or b.shape != (db, db):
        raise DimensionError(f"operator shapes {a.shape}, {b.shape} do not match dims {s.dims}")
    r = s.rho.reshape(da, db, da, db)
    return complex(np.einsum("mund,nm,du->", r, a, b))


@dataclass(frozen=True)
class KappaReport:
    condition: str
    kappa: float
    mean_AdB: complex | None = None
    mean_AdABdB: float | None = None
    mean_AB: complex | None = None
    mean_AdA: float | None = None
    mean_BdB: float | None = None
    alpha: float | None = None
    a_diag: float | None = None

    def recompute(self) -> float:
        if self.condition == "first":
            return abs(self.mean_AdB) ** 2 - self.mean_AdABdB
        return abs(self.mean_AB) ** 2 - self.mean_AdA * self.mean_BdB

    def to_dict(self) -> dict:
        out = {"condition": self.condition, "kappa": self.kappa}
        for key in ("mean_AdB", "mean_AB"):
            val = getattr(self, key)
            if val is not None:
                out[key] = [val.real, val.imag]
        for key in ("mean_AdABdB", "mean_AdA", "mean_BdB", "alpha", "a_diag"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        return out


def _check_dims(s, pair: OperatorPair):
    if pair.dims != s.dims:
        raise DimensionError(f"operator dims {pair.dims} do not match state dims {s.dims}")


def kappa_first(s, pair: OperatorPair) -> KappaReport:
    """kappa = |<A^dag B>|^2 - <A^dag A B^dag B>.

    For rank-one pairs also reports
    ``a_diag = <P_eta0 (x) P_xi0> + <P_eta1 (x) P_xi1>``.
    """
    s = as_density(s)
    _check_dims(s, pair)
    A, B = pair.A.matrix, pair.B.matrix
    m_adb = expectation(s, A.conj().T, B)
    m_aabb = expectation(s, A.conj().T @ A, B.conj().T @ B).real
    a_diag = None
    projs = pair.rank_one_projectors()
    if projs is not None:
        pe0, pe1, px0, px1 = projs
        a_diag = expectation(s, pe0, px0).real + expectation(s, pe1, px1).real
    return KappaReport("first", abs(m_adb) ** 2 - m_aabb, mean_AdB=m_adb, mean_AdABdB=m_aabb, a_diag=a_diag)


def kappa_second(s, pair: OperatorPair) -> KappaReport:
    """kappa = |<A B>|^2 - <A^dag A><B^dag B>.

    For rank-one pairs also reports ``alpha = <P_eta1 (x) P_xi1>``, which is
    rho_{00;00} for ``A = B = sigma^+``.
    """
    s = as_density(s)
    _check_dims(s, pair)
    A, B = pair.A.matrix, pair.B.matrix
    da, db = s.dims
    m_ab = expectation(s, A, B)
    m_aa = expectation(s, A.conj().T @ A, np.eye(db)).real
    m_bb = expectation(s, np.eye(da), B.conj().T @ B).real
    alpha = None
    projs = pair.rank_one_projectors()
    if projs is not None:
        _, pe1, _, px1 = projs
        alpha = expectation(s, pe1, px1).real
    return KappaReport("second", abs(m_ab) ** 2 - m_aa * m_bb, mean_AB=m_ab, mean_AdA=m_aa, mean_BdB=m_bb, alpha=alpha)


def kappa(s, pair: OperatorPair, condition: str = "first") -> KappaReport:
    if condition == "first":
        return kappa_first(s, pair)
    if condition == "second":
        return kappa_second(s, pair)
    raise ValueError(f"condition must be 'first' or 'second', got {condition!r}")


def sigma_minus_pair() -> OperatorPair:
    """A = B = |0><1| on two qubits."""
    e0, e1 = basis_vector(2, 0), basis_vector(2, 1)
    return rank_one(RankOnePair(e0, e1, e0, e1), name="sigma_minus")


def sigma_plus_pair() -> OperatorPair:
    """A = B = |1><0| on two qubits."""
    e0, e1 = basis_vector(2, 0), basis_vector(2, 1)
    return rank_one(RankOnePair(e1, e0, e1, e0), name="sigma_plus")


def x_basis_pair() -> OperatorPair:
    """A = |+x><-x|, B = |-x><+x|."""
    plus = np.array([1, 1], dtype=complex) / np.sqrt(2)
    minus = np.array([1, -1], dtype=complex) / np.sqrt(2)
    return rank_one(RankOnePair(plus, minus, minus, plus), name="x_basis")


def four_qubit_operator_sets() -> dict[str, OperatorPair]:
    """Operator choices on the (4, 4) split of four qubits.

    ``coarse``: A = |0><1| (x) I, B = |1><0| (x) I.
    ``fine1``: A = |00><10|, B = |10><00|.
    ``fine2``: A = |01><11|, B = |11><01|.
    """
    e = [basis_vector(2, k) for k in range(2)]
    f = [basis_vector(4, k) for k in range(4)]
    return {
        "coarse": rank_one(RankOnePair(e[0], e[1], e[1], e[0]), ancilla=(2, 2), name="coarse"),
        "fine1": rank_one(RankOnePair(f[0], f[2], f[2], f[0]), name="fine1"),
        "fine2": rank_one(RankOnePair(f[1], f[3], f[3], f[1]), name="fine2"),
    }


def _random_orthonormal_pair(d: int, rng) -> tuple[np.ndarray, np.ndarray]:
    g = rng.standard_normal((d, 2)) + 1j * rng.standard_normal((d, 2))
    q, _ = np.linalg.qr(g)
    return q[:, 0], q[:, 1]


def random_rank_one_pair(dims, rng) -> RankOnePair:
    """Haar-random orthonormal pairs on each side."""
    e0, e1 = _random_orthonormal_pair(dims[0], rng)
    x0, x1 = _random_orthonormal_pair(dims[1], rng)
    return RankOnePair(e0, e1, x0, x1)
