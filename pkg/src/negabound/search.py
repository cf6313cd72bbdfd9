"""Pattern search over rank-one operator pairs to maximize a negativity bound."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import bounds
from . import conditions as cond
from .states import as_density
from .tensor import partial_trace

SEARCH_METHODS = ("first_qubit", "first_improved", "second_method", "second_qubit")


@dataclass(frozen=True)
class SearchConfig:
    method: str = "first_qubit"
    restarts: int = 16
    max_iters: int = 400
    step_init: float = 0.5
    step_min: float = 1e-6
    seed: int = 0
    mode: str = "bisection"

    def __post_init__(self):
        if self.method not in SEARCH_METHODS:
            raise ValueError(f"search supports {SEARCH_METHODS}, got {self.method!r}")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if not self.step_min < self.step_init:
            raise ValueError("step_min must be smaller than step_init")


@dataclass
class SearchResult:
    best_pair: cond.RankOnePair
    best_certificate: bounds.BoundCertificate
    best_params: np.ndarray
    trace: list[float] = field(default_factory=list)
    evaluations: int = 0


def n_params(dims) -> int:
    da, db = dims
    return 2 * (2 * da - 2) + 2 * (2 * db - 2)


def _givens_chain(angles: np.ndarray, d: int) -> np.ndarray:
    """G_{d-2,d-1} ... G_{1,2} G_{0,1}; each rotation takes (theta, phi)."""
    u = np.eye(d, dtype=complex)
    for k in range(d - 1):
        th, ph = angles[2 * k], angles[2 * k + 1]
        c, s = math.cos(th), math.sin(th)
        e = complex(math.cos(ph), math.sin(ph))
        row_k = u[k].copy()
        row_k1 = u[k + 1].copy()
        u[k] = c * row_k - e.conjugate() * s * row_k1
        u[k + 1] = e * s * row_k + c * row_k1
    return u


def _side(params: np.ndarray, d: int) -> tuple[np.ndarray, np.ndarray]:
    m = 2 * (d - 1)
    u = _givens_chain(params[:m], d) @ _givens_chain(params[m : 2 * m], d)
    return u[:, 0].copy(), u[:, 1].copy()


def _vectors(params, dims):
    da, db = dims
    params = np.asarray(params, dtype=float)
    if params.size != n_params(dims):
        raise ValueError(f"expected {n_params(dims)} parameters for dims {dims}, got {params.size}")
    na = 4 * (da - 1)
    e0, e1 = _side(params[:na], da)
    x0, x1 = _side(params[na:], db)
    return e0, e1, x0, x1


def parameterize_pair(params, dims) -> cond.RankOnePair:
    """Map unconstrained reals to orthonormal pairs (eta0, eta1), (xi0, xi1).

    Each side uses two chains of phased Givens rotations U = C1 C2 and takes
    the first two columns of U; all-zero parameters give (|0>, |1>).
    """
    return cond.RankOnePair(*_vectors(params, dims))


class _Objective:
    """Fast rank-one evaluation of the bound used as the search objective."""

    def __init__(self, s, method: str, mode: str):
        s = as_density(s)
        self.state = s
        self.dims = s.dims
        self.rho = s.rho
        self.rho_a = partial_trace(s.rho, s.idx, "a")
        self.rho_b = partial_trace(s.rho, s.idx, "b")
        self.method = method
        self.mode = mode
        self.calls = 0

    def _sandwich(self, bra, ket):
        return complex(np.vdot(bra, self.rho @ ket))

    def certificate(self, params) -> bounds.BoundCertificate:
        self.calls += 1
        e0, e1, x0, x1 = _vectors(params, self.dims)
        m = self.method
        if m == "second_qubit":
            mean_ab = self._sandwich(np.kron(e1, x1), np.kron(e0, x0))
            m_aa = float(np.vdot(e1, self.rho_a @ e1).real)
            m_bb = float(np.vdot(x1, self.rho_b @ x1).real)
            alpha = self._sandwich(np.kron(e1, x1), np.kron(e1, x1)).real
            kap = abs(mean_ab) ** 2 - m_aa * m_bb
            return bounds.bound_second_qubit(kap, min(max(alpha, 0.0), 1.0))
        v11 = np.kron(e1, x1)
        mean_adb = self._sandwich(np.kron(e0, x1), np.kron(e1, x0))
        x = self._sandwich(v11, v11).real
        kap = abs(mean_adb) ** 2 - x
        if m == "first_qubit":
            return bounds.bound_first_qubit(kap)
        if m == "first_improved":
            v00 = np.kron(e0, x0)
            a = self._sandwich(v00, v00).real + x
            return bounds.bound_first_improved(kap, min(max(a, 0.0), 1.0))
        if self.mode == "quadratic" and x > 0:
            return bounds.bound_second_method_quadratic(kap, x, 1.0)
        return bounds.bound_second_method(kap, max(x, 0.0), 1.0)

    def __call__(self, params) -> float:
        cert = self.certificate(params)
        if cert.applicable:
            return cert.lower_bound
        return min(cert.inputs["kappa"], 0.0)


def _pattern_search(f, x0, cfg: SearchConfig):
    x = np.array(x0, dtype=float)
    fx = f(x)
    step = cfg.step_init
    it = 0
    while step >= cfg.step_min and it < cfg.max_iters:
        it += 1
        improved = False
        for i in range(x.size):
            for sign in (1.0, -1.0):
                trial = x.copy()
                trial[i] += sign * step
                ft = f(trial)
                if ft > fx:
                    x, fx = trial, ft
                    improved = True
                    break
        if not improved:
            step *= 0.5
    return x, fx


def restart_points(dims, cfg: SearchConfig) -> list[np.ndarray]:
    """Start points: the canonical pair for restart 0, seeded uniform angles after."""
    n = n_params(dims)
    children = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)
    pts = []
    for k, child in enumerate(children):
        if k == 0:
            pts.append(np.zeros(n))
        else:
            rng = np.random.Generator(np.random.PCG64(child))
            pts.append(rng.uniform(-math.pi, math.pi, n))
    return pts


def optimize(s, cfg: SearchConfig | None = None) -> SearchResult:
    """Maximize ``cfg.method``'s bound over rank-one operator pairs.

    Coordinate pattern search: try +/- step on each parameter, move on the
    first improvement, halve the step when nothing improves. Points where the
    condition fails score kappa itself so the search is pulled toward
    kappa > 0. Ties between restarts go to the lowest restart index.
    """
    cfg = cfg or SearchConfig()
    obj = _Objective(s, cfg.method, cfg.mode)
    best_x, best_f, trace = None, -math.inf, []
    for x0 in restart_points(obj.dims, cfg):
        x, fx = _pattern_search(obj, x0, cfg)
        if fx > best_f:
            best_x, best_f = x, fx
        trace.append(best_f)
    pair = parameterize_pair(best_x, obj.dims)
    cert = bounds.certify(obj.state, cfg.method, cond.rank_one(pair, name="search"), mode=cfg.mode)
    return SearchResult(pair, cert, best_x, trace, obj.calls)


def compare_pairs(s, pairs: dict, method: str = "first_qubit", mode: str = "bisection") -> list[dict]:
    """Condition report and certificate for each named pair, best bound first."""
    rows = []
    for name, pair in pairs.items():
        if method == "second_qubit":
            rep = cond.kappa_second(s, pair)
        else:
            rep = cond.kappa_first(s, pair)
        cert = bounds.certify(s, method, pair, mode=mode)
        rows.append({"name": name, "report": rep, "certificate": cert})
    rows.sort(key=lambda r: (-r["certificate"].lower_bound, -r["report"].kappa))
    return rows
