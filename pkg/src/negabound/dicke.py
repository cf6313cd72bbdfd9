"""Spin-j coupled to one field mode, H = w S3 + w a^dag a + g (S+ a + S- a^dag).

The total excitation ``S3 + j + a^dag a`` is conserved, so evolution is done
sector by sector. Spin level ``l`` stands for ``|m = -j + l>``; the spin is
subsystem ``a`` and the field (photon number ``n``) is subsystem ``b``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bounds
from . import conditions as cond
from .states import PureState, SchmidtData, negativity_pure, schmidt

DEGENERACY_TOL = 1e-8
OVERLAP_TOL = 1e-8


@dataclass(frozen=True)
class DickeModel:
    j: float
    n_max: int
    omega: float = 1.0
    g: float = 0.2

    def __post_init__(self):
        two_j = 2 * self.j
        if two_j < 0 or abs(two_j - round(two_j)) > 1e-12:
            raise ValueError(f"2j must be a nonnegative integer, got j = {self.j}")
        if self.n_max < 0:
            raise ValueError("n_max must be >= 0")

    @property
    def spin_dim(self) -> int:
        return int(round(2 * self.j)) + 1

    @property
    def field_dim(self) -> int:
        return self.n_max + 1

    def ladder(self, level: int) -> float:
        """<m+1| S+ |m> for m = -j + level."""
        m = -self.j + level
        return float(np.sqrt(self.j * (self.j + 1) - m * (m + 1)))

    def sector_basis(self, L: int) -> list[tuple[int, int]]:
        """(spin level, photon number) pairs with level + n = L inside the cutoff."""
        if L < 0:
            raise ValueError(f"excitation must be >= 0, got {L}")
        return [(l, L - l) for l in range(min(L, self.spin_dim - 1) + 1) if L - l <= self.n_max]


def build_hamiltonian_sector(model: DickeModel, excitation: int) -> np.ndarray:
    """Real symmetric tridiagonal block of H in the given excitation sector."""
    basis = model.sector_basis(excitation)
    if not basis:
        raise ValueError(f"excitation {excitation} has no states within the cutoff")
    k = len(basis)
    h = np.zeros((k, k))
    for i, (l, n) in enumerate(basis):
        h[i, i] = model.omega * (-model.j + l) + model.omega * n
        if i + 1 < k:
            # S+ a: |l, n> -> |l+1, n-1>
            h[i + 1, i] = h[i, i + 1] = model.g * model.ladder(l) * np.sqrt(n)
    return h


def spin_operators(j: float):
    d = int(round(2 * j)) + 1
    m = -j + np.arange(d)
    s3 = np.diag(m)
    sp = np.zeros((d, d))
    for l in range(d - 1):
        sp[l + 1, l] = np.sqrt(j * (j + 1) - m[l] * (m[l] + 1))
    return s3, sp, sp.T.copy()


def full_hamiltonian(model: DickeModel) -> np.ndarray:
    """Hamiltonian on the truncated product space (spin index major)."""
    s3, sp, sm = spin_operators(model.j)
    nf = model.field_dim
    a = np.diag(np.sqrt(np.arange(1, nf)), 1)
    i_s, i_f = np.eye(model.spin_dim), np.eye(nf)
    return (
        model.omega * np.kron(s3, i_f)
        + model.omega * np.kron(i_s, a.T @ a)
        + model.g * (np.kron(sp, a) + np.kron(sm, a.T))
    )


def excitation_operator(model: DickeModel) -> np.ndarray:
    s3, _, _ = spin_operators(model.j)
    n = np.diag(np.arange(model.field_dim, dtype=float))
    return np.kron(s3, np.eye(model.field_dim)) + np.kron(np.eye(model.spin_dim), n)


@dataclass(frozen=True, eq=False)
class SpinFieldState:
    """Amplitudes indexed [spin level, photon number]."""

    amplitudes: np.ndarray

    def __post_init__(self):
        psi = np.asarray(self.amplitudes, dtype=complex)
        if psi.ndim != 2:
            raise ValueError("amplitudes must be a (spin_dim, field_dim) array")
        nrm = np.linalg.norm(psi)
        if abs(nrm - 1.0) > 1e-10:
            raise ValueError(f"state norm is {nrm!r}, expected 1")
        psi.setflags(write=False)
        object.__setattr__(self, "amplitudes", psi)

    @classmethod
    def from_levels(cls, model: DickeModel, coeffs: dict) -> "SpinFieldState":
        """``sum_l coeffs[l] |-j + l>|0>``."""
        psi = np.zeros((model.spin_dim, model.field_dim), dtype=complex)
        for level, c in coeffs.items():
            psi[level, 0] = c
        return cls(psi)

    def pure_state(self) -> PureState:
        return PureState(self.amplitudes.shape, self.amplitudes.ravel())

    def expect(self, op: np.ndarray) -> float:
        v = self.amplitudes.ravel()
        return float(np.vdot(v, op @ v).real)


def _sectors(model: DickeModel):
    for L in range(model.spin_dim - 1 + model.n_max + 1):
        basis = model.sector_basis(L)
        if basis:
            yield L, basis


def evolve(model: DickeModel, initial: SpinFieldState, t: float) -> SpinFieldState:
    """exp(-i H t) applied sector by sector via V exp(-i Lambda t) V^dag."""
    psi0 = initial.amplitudes
    if psi0.shape != (model.spin_dim, model.field_dim):
        raise ValueError(f"state shape {psi0.shape} does not match model {(model.spin_dim, model.field_dim)}")
    out = np.zeros_like(psi0)
    for L, basis in _sectors(model):
        rows, cols = zip(*basis)
        v = psi0[rows, cols]
        if not np.any(v):
            continue
        w, vecs = np.linalg.eigh(build_hamiltonian_sector(model, L))
        out[rows, cols] = vecs @ (np.exp(-1j * w * t) * (vecs.T @ v))
    return SpinFieldState(out / np.linalg.norm(out))


def superposition_model(j: float, l1: int, l2: int, omega: float = 1.0, g: float = 0.2) -> DickeModel:
    """Model whose cutoff equals the largest excitation of (c0|l1> + c1|l2>)|0>."""
    return DickeModel(j, max(l1, l2), omega, g)


def claimed_schmidt_pairs(model: DickeModel, c0: complex, c1: complex, l1: int, l2: int) -> list[tuple[int, int]]:
    """Product vectors |-j + level>|n> predicted to be Schmidt pairs.

    With both components present these are level = l1 + s, n = l2 - l1 - s for
    1 <= s <= l2 - 2 l1 - 1. With one component the whole populated sector is.
    """
    if c1 == 0:
        return model.sector_basis(l1)
    if c0 == 0:
        return model.sector_basis(l2)
    return [(l1 + s, l2 - l1 - s) for s in range(1, l2 - 2 * l1) if l1 + s < model.spin_dim]


def _check_pre(model, c0, c1, l1, l2):
    if abs(abs(c0) ** 2 + abs(c1) ** 2 - 1.0) > 1e-10:
        raise ValueError("|c0|^2 + |c1|^2 must equal 1")
    if c0 != 0 and c1 != 0 and not l2 > 2 * (l1 + 1):
        raise ValueError(f"need l2 > 2 (l1 + 1), got l1 = {l1}, l2 = {l2}")
    used = [l for l, c in ((l1, c0), (l2, c1)) if c != 0]
    if any(l < 0 or l >= model.spin_dim for l in used):
        raise ValueError(f"initial spin levels {used} outside 0..2j")
    if max(used) > model.n_max:
        raise ValueError(f"cutoff n_max = {model.n_max} below the initial excitation {max(used)}")
    if model.field_dim < 2:
        raise ValueError("field cutoff must allow at least one photon")


def schmidt_vector_check(model: DickeModel, c0: complex, c1: complex, l1: int, l2: int, t: float) -> dict:
    """Evolve (c0|-j+l1> + c1|-j+l2>)|0> to time ``t`` and test each claimed Schmidt pair.

    Status per pair: ``confirmed`` when a Schmidt vector pair overlaps the basis
    vectors to within 1e-8, ``indeterminate`` when its coefficient is within
    1e-8 of another one (Schmidt vectors not unique), ``refuted`` otherwise.
    """
    _check_pre(model, c0, c1, l1, l2)
    init = SpinFieldState.from_levels(model, {l: c for l, c in ((l1, c0), (l2, c1)) if c != 0})
    psi = evolve(model, init, t)
    ds, df = psi.amplitudes.shape
    sd = schmidt(PureState((ds, df), psi.amplitudes.ravel()))
    coeffs = sd.coefficients
    results = []
    for level, n in claimed_schmidt_pairs(model, c0, c1, l1, l2):
        ov_a = np.abs(sd.basis_a[:, level]) ** 2
        ov_b = np.abs(sd.basis_b[:, n]) ** 2
        k = int(np.argmax(ov_a * ov_b))
        gaps = np.abs(np.delete(coeffs, k) - coeffs[k])
        if gaps.size and gaps.min() < DEGENERACY_TOL:
            status = "indeterminate"
        elif ov_a[k] >= 1 - OVERLAP_TOL and ov_b[k] >= 1 - OVERLAP_TOL:
            status = "confirmed"
        else:
            status = "refuted"
        results.append(
            {
                "level": level,
                "photons": n,
                "s": level - l1,
                "status": status,
                "coefficient": float(coeffs[k]),
                "amplitude": complex(psi.amplitudes[level, n]),
            }
        )
    return {"t": float(t), "pairs": results, "state": psi}


def _pairs_ok(report) -> list[dict]:
    return [p for p in report["pairs"] if p["status"] != "refuted"]


def dicke_schmidt_bound(model: DickeModel, c0: complex, c1: complex, l1: int, l2: int, t: float, K: int | None = None):
    """Schmidt-known bound built only from the identified Schmidt pairs.

    The phase of each pair is taken from the evolved amplitude so that the
    Schmidt coefficients are real and positive. ``K=None`` picks the best
    split of the coefficient-sorted pairs.
    """
    rep = schmidt_vector_check(model, c0, c1, l1, l2, t)
    pairs = _pairs_ok(rep)
    if len(pairs) < 2:
        raise ValueError(f"only {len(pairs)} Schmidt pairs identified; need at least 2")
    psi = rep["state"]
    ds, df = psi.amplitudes.shape
    pairs.sort(key=lambda p: -abs(p["amplitude"]))
    ua = np.zeros((len(pairs), ds), dtype=complex)
    vb = np.zeros((len(pairs), df), dtype=complex)
    coeffs = np.zeros(len(pairs))
    for i, p in enumerate(pairs):
        amp = p["amplitude"]
        ua[i, p["level"]] = np.exp(1j * np.angle(amp)) if amp != 0 else 1.0
        vb[i, p["photons"]] = 1.0
        coeffs[i] = abs(amp)
    sd = SchmidtData(coeffs, ua, vb)
    state = psi.pure_state()
    if K is None:
        cert, K = bounds.best_schmidt_bound(state, sd=sd)
    else:
        r = cond.kappa_first(state, bounds.schmidt_partition_operators(sd, K))
        cert = bounds.bound_schmidt_known(r.mean_AdB, r.mean_AdABdB)
        cert.inputs["K"] = K
    cert.inputs.update({"t": float(t), "identified_pairs": len(pairs)})
    bounds.check_ceiling(cert, (ds, df))
    cert.exact_negativity = negativity_pure(schmidt(state))
    return cert


def rabi_population(model: DickeModel, times) -> np.ndarray:
    """Population of |-1/2>|1> for j = 1/2 starting there."""
    if model.spin_dim != 2:
        raise ValueError("Rabi demo needs j = 1/2")
    init = np.zeros((2, model.field_dim), dtype=complex)
    init[0, 1] = 1.0
    st = SpinFieldState(init)
    return np.array([abs(evolve(model, st, t).amplitudes[0, 1]) ** 2 for t in times])
