"""Dense linear-algebra kernel for bipartite systems.

Matrices are plain ``numpy`` arrays. A composite basis index is
``m * dim_b + mu`` (subsystem ``a`` is the more significant factor).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TOL_HERM = 1e-9
TOL_EIG = 1e-9
PSD_SLACK = -1e-9


class DimensionError(ValueError):
    """Matrix shape does not match the declared factorization."""


class NotHermitianError(ValueError):
    """Matrix deviates from its adjoint by more than ``TOL_HERM``."""


@dataclass(frozen=True)
class BipartiteIndex:
    dim_a: int
    dim_b: int

    def __post_init__(self):
        if int(self.dim_a) < 2 or int(self.dim_b) < 2:
            raise DimensionError(f"subsystem dimensions must be >= 2, got {self.dims}")

    @property
    def dims(self) -> tuple[int, int]:
        return (self.dim_a, self.dim_b)

    @property
    def size(self) -> int:
        return self.dim_a * self.dim_b

    def check(self, rho: np.ndarray) -> None:
        if rho.ndim != 2 or rho.shape != (self.size, self.size):
            raise DimensionError(f"expected a {self.size}x{self.size} matrix for dims {self.dims}, got {rho.shape}")


def as_matrix(m, finite: bool = True) -> np.ndarray:
    """Return ``m`` as a 2-d complex array, rejecting NaN/Inf entries."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2:
        raise DimensionError(f"expected a 2-d array, got shape {arr.shape}")
    if finite and not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return arr


def _index(idx) -> BipartiteIndex:
    if isinstance(idx, BipartiteIndex):
        return idx
    return BipartiteIndex(*idx)


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def partial_transpose(rho, idx) -> np.ndarray:
    """Transpose the ``b`` factor: entry (m,mu; n,nu) <- (m,nu; n,mu)."""
    idx = _index(idx)
    rho = as_matrix(rho)
    idx.check(rho)
    da, db = idx.dims
    t = rho.reshape(da, db, da, db).transpose(0, 3, 2, 1)
    return t.reshape(idx.size, idx.size)


def partial_trace(rho, idx, keep: str = "a") -> np.ndarray:
    """Reduced matrix on subsystem ``keep`` (``"a"`` or ``"b"``)."""
    idx = _index(idx)
    rho = as_matrix(rho)
    idx.check(rho)
    da, db = idx.dims
    t = rho.reshape(da, db, da, db)
    if keep == "a":
        return np.einsum("imjm->ij", t)
    if keep == "b":
        return np.einsum("mimj->ij", t)
    raise ValueError(f"keep must be 'a' or 'b', got {keep!r}")


def partial_trace_factors(rho, dims, keep) -> np.ndarray:
    """Trace out every tensor factor of ``rho`` whose position is not in ``keep``.

    ``dims`` lists the factor dimensions in significance order; ``keep`` is a
    sequence of factor positions, returned in increasing order.
    """
    rho = as_matrix(rho)
    dims = [int(d) for d in dims]
    n = len(dims)
    total = int(np.prod(dims))
    if rho.shape != (total, total):
        raise DimensionError(f"matrix shape {rho.shape} does not match factors {dims}")
    keep = sorted(set(int(k) for k in keep))
    t = rho.reshape(dims + dims)
    letters = "abcdefghijklmnopqrstuvwxyz"
    row = [letters[i] for i in range(n)]
    col = [letters[i] if i not in keep else letters[n + i].upper() for i in range(n)]
    out = [letters[i] for i in keep] + [letters[n + i].upper() for i in keep]
    spec = "".join(row) + "".join(col) + "->" + "".join(out)
    d = int(np.prod([dims[k] for k in keep])) if keep else 1
    return np.einsum(spec, t).reshape(d, d)


def hermiticity_error(h: np.ndarray) -> float:
    return float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0


def _hermitian(h) -> np.ndarray:
    h = as_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise DimensionError(f"expected a square matrix, got {h.shape}")
    err = hermiticity_error(h)
    if err > TOL_HERM:
        raise NotHermitianError(f"matrix is not Hermitian (max |H - H^dag| = {err:.3g})")
    return 0.5 * (h + h.conj().T)


def hermitian_eigs(h) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues in descending order and the matching eigenvector columns."""
    w, v = np.linalg.eigh(_hermitian(h))
    return w[::-1].copy(), v[:, ::-1].copy()


def hermitian_eigvals(h) -> np.ndarray:
    return np.linalg.eigvalsh(_hermitian(h))[::-1].copy()


def trace_norm(h) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(np.linalg.eigvalsh(_hermitian(h)))))


def operator_norm(m) -> float:
    """Largest singular value."""
    m = as_matrix(m)
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def projector(vectors) -> np.ndarray:
    """Orthogonal projector onto the span of the given orthonormal vectors."""
    vs = [np.asarray(v, dtype=complex).ravel() for v in vectors]
    d = vs[0].size
    p = np.zeros((d, d), dtype=complex)
    for v in vs:
        p += np.outer(v, v.conj())
    return p


def basis_vector(d: int, k: int) -> np.ndarray:
    e = np.zeros(d, dtype=complex)
    e[k] = 1.0
    return e
