"""Lower bounds on the negativity built from the entanglement-condition gaps.

Every bound returns a :class:`BoundCertificate`. A non-positive gap never
produces a bound: the certificate is marked not applicable with
``lower_bound = 0``.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import conditions as cond
from .states import BipartiteState, PureState, as_density, negativity_exact, schmidt
from .tensor import (
    DimensionError,
    as_matrix,
    hermiticity_error,
    operator_norm,
    partial_transpose,
    projector,
    trace_norm,
)

METHODS = ("first_qubit", "first_improved", "multi_block", "second_method", "second_qubit", "schmidt_known")
SECOND_METHOD_MODES = ("bisection", "quadratic")

BISECTION_TOL = 1e-12
SCHMIDT_X_TOL = 1e-10


class BoundCeilingError(RuntimeError):
    """A computed bound exceeded the largest negativity the dimensions allow."""


@dataclass
class BoundCertificate:
    method: str
    inputs: dict
    lower_bound: float
    applicable: bool
    notes: str = ""
    exact_negativity: float | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown bound method {self.method!r}")
        if not self.applicable:
            self.lower_bound = 0.0
        self.lower_bound = max(0.0, float(self.lower_bound))

    @property
    def slack(self) -> float | None:
        """Exact negativity minus the bound, when the exact value is known."""
        if self.exact_negativity is None:
            return None
        return self.exact_negativity - self.lower_bound

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "BoundCertificate":
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "BoundCertificate":
        return cls.from_dict(json.loads(text))


def _not_applicable(method, inputs, notes="kappa <= 0: condition not satisfied") -> BoundCertificate:
    return BoundCertificate(method, inputs, 0.0, False, notes)


def bound_first_qubit(kappa: float) -> BoundCertificate:
    """N >= [sqrt(1 + 4 kappa) - 1] / 2."""
    inputs = {"kappa": float(kappa)}
    if not math.isfinite(kappa):
        raise ValueError("kappa must be finite")
    if kappa <= 0:
        return _not_applicable("first_qubit", inputs)
    return BoundCertificate("first_qubit", inputs, 0.5 * (math.sqrt(1.0 + 4.0 * kappa) - 1.0), True)


def bound_first_improved(kappa: float, a: float) -> BoundCertificate:
    """N >= [sqrt(a^2 + 4 kappa) - a] / 2, with ``a`` the diagonal weight of the 2x2 block."""
    if not 0.0 <= a <= 1.0 + 1e-12:
        raise ValueError(f"a must lie in [0, 1], got {a}")
    a = min(float(a), 1.0)
    inputs = {"kappa": float(kappa), "a": a}
    if kappa <= 0:
        return _not_applicable("first_improved", inputs)
    return BoundCertificate("first_improved", inputs, 0.5 * (math.sqrt(a * a + 4.0 * kappa) - a), True)


@dataclass(frozen=True, eq=False)
class ProjectorPair:
    P_a: np.ndarray
    P_b: np.ndarray

    def __post_init__(self):
        for name in ("P_a", "P_b"):
            p = as_matrix(getattr(self, name))
            if hermiticity_error(p) > 1e-9 or np.max(np.abs(p @ p - p)) > 1e-9:
                raise ValueError(f"{name} is not an orthogonal projection")
            object.__setattr__(self, name, p)

    @classmethod
    def from_vectors(cls, vecs_a, vecs_b) -> "ProjectorPair":
        return cls(projector(vecs_a), projector(vecs_b))

    def full(self) -> np.ndarray:
        return np.kron(self.P_a, self.P_b)


def check_orthogonal_blocks(blocks) -> None:
    full = [b.full() for b in blocks]
    for i in range(len(full)):
        for j in range(i + 1, len(full)):
            if np.max(np.abs(full[i] @ full[j])) > 1e-9:
                raise ValueError(f"blocks {i} and {j} are not orthogonal")


def pinched_norms(s, blocks) -> list[float]:
    """Trace norms of ``Pi rho^T_b Pi`` for pairwise orthogonal ``Pi = P_a (x) P_b``."""
    s = as_density(s)
    check_orthogonal_blocks(blocks)
    pt = partial_transpose(s.rho, s.idx)
    out = []
    for b in blocks:
        pi = b.full()
        if pi.shape != pt.shape:
            raise DimensionError(f"block shape {pi.shape} does not match state {pt.shape}")
        out.append(trace_norm(pi @ pt @ pi))
    return out


def bound_multi_block(kappas) -> BoundCertificate:
    """Sum of per-block first bounds; blocks with kappa <= 0 contribute nothing."""
    kappas = [float(k) for k in kappas]
    inputs = {"kappas": kappas}
    total = sum(0.5 * (math.sqrt(1.0 + 4.0 * k) - 1.0) for k in kappas if k > 0)
    if not any(k > 0 for k in kappas):
        return _not_applicable("multi_block", inputs)
    return BoundCertificate("multi_block", inputs, total, True)


def second_method_rhs(mu: float, x: float, y: float) -> float:
    return math.sqrt(1.0 + mu) * math.sqrt(mu * y + x) + mu * math.sqrt(y)


def bound_second_method(kappa: float, x: float, y: float) -> BoundCertificate:
    """Smallest mu >= 0 with sqrt(1+mu) sqrt(mu y + x) + mu sqrt(y) >= sqrt(kappa + x).

    ``x = <A^dag A B^dag B>`` and ``y = ||A^dag A|| ||B^dag B||``. The right-hand
    side is nondecreasing in mu, so the root is bracketed by doubling and then
    bisected to 1e-12.
    """
    if y <= 0:
        raise ValueError(f"y must be positive, got {y}")
    x = max(float(x), 0.0)
    inputs = {"kappa": float(kappa), "x": x, "y": float(y), "mode": "bisection"}
    if kappa <= 0:
        return _not_applicable("second_method", inputs)
    target = math.sqrt(kappa + x)
    hi = 1.0
    while second_method_rhs(hi, x, y) < target:
        hi *= 2.0
    lo = 0.0
    while hi - lo > BISECTION_TOL:
        mid = 0.5 * (lo + hi)
        if second_method_rhs(mid, x, y) >= target:
            hi = mid
        else:
            lo = mid
    return BoundCertificate("second_method", inputs, hi, True)


def bound_second_method_quadratic(kappa: float, x: float, y: float) -> BoundCertificate:
    """Root of the relaxed inequality
    sqrt(kappa + x) <= (1 + mu/2) sqrt(x) (1 + y mu / 2x) + mu sqrt(y).

    Requires ``x > 0``; ``x == 0`` gives a not-applicable certificate.
    """
    if x < 0:
        raise ValueError(f"x must be nonnegative, got {x}")
    if y <= 0:
        raise ValueError(f"y must be positive, got {y}")
    inputs = {"kappa": float(kappa), "x": float(x), "y": float(y), "mode": "quadratic"}
    if x == 0:
        return _not_applicable("second_method", inputs, "relaxed form undefined at x = 0")
    if kappa <= 0:
        return _not_applicable("second_method", inputs)
    sx = math.sqrt(x)
    qa = y / (4.0 * sx)
    qb = sx / 2.0 + y / (2.0 * sx) + math.sqrt(y)
    qc = sx - math.sqrt(kappa + x)
    mu = -2.0 * qc / (qb + math.sqrt(qb * qb - 4.0 * qa * qc))
    return BoundCertificate("second_method", inputs, mu, True)


def quadratic_residual(mu: float, kappa: float, x: float, y: float) -> float:
    sx = math.sqrt(x)
    return (1 + mu / 2) * sx * (1 + y * mu / (2 * x)) + mu * math.sqrt(y) - math.sqrt(kappa + x)


def bound_second_method_example(kappa: float, y: float = 1.0) -> BoundCertificate:
    """Closed form sqrt(4 + 2 sqrt(kappa / y)) - 2 from mu (mu/2 + 2) sqrt(y) >= sqrt(kappa).

    This reduction of the x = 0 case drops a square root on mu compared with
    :func:`bound_second_method` and is not a certified bound in general; it is
    kept to reproduce the two-qubit worked example (sqrt(5) - 2 at kappa = 1/4).
    """
    if y <= 0:
        raise ValueError(f"y must be positive, got {y}")
    inputs = {"kappa": float(kappa), "x": 0.0, "y": float(y), "mode": "example_quadratic"}
    if kappa <= 0:
        return _not_applicable("second_method", inputs)
    mu = math.sqrt(4.0 + 2.0 * math.sqrt(kappa / y)) - 2.0
    return BoundCertificate("second_method", inputs, mu, True, "uncertified worked-example reduction")


def bound_second_qubit(kappa: float, alpha: float, assume_negative_branch: bool = False) -> BoundCertificate:
    """N >= {sqrt[(1 + alpha)^2 + 4 kappa] - 1 + alpha} / 2.

    With ``assume_negative_branch`` a vanishing gap (kappa = 0 up to 1e-12) is
    accepted as well; the bound then reduces to ``alpha``.
    """
    if not -1e-12 <= alpha <= 1.0 + 1e-12:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    alpha = min(max(float(alpha), 0.0), 1.0)
    inputs = {"kappa": float(kappa), "alpha": alpha, "assume_negative_branch": bool(assume_negative_branch)}
    if kappa <= 0:
        if not (assume_negative_branch and kappa >= -1e-12):
            return _not_applicable("second_qubit", inputs)
        kappa = 0.0
    val = 0.5 * (math.sqrt((1.0 + alpha) ** 2 + 4.0 * kappa) - 1.0 + alpha)
    return BoundCertificate("second_qubit", inputs, val, val > 0)


def bound_schmidt_known(mean_AdB: complex, mean_AdABdB: float = 0.0) -> BoundCertificate:
    """N >= (4 |<A^dag B>| - 1) / 2 for Schmidt-partition operators of a pure state."""
    if abs(mean_AdABdB) > SCHMIDT_X_TOL:
        raise ValueError(f"<A^dag A B^dag B> = {mean_AdABdB:.3g} must vanish for this bound")
    z = abs(complex(mean_AdB))
    inputs = {"abs_mean_AdB": z, "mean_AdABdB": float(mean_AdABdB)}
    if z <= 0.25:
        return _not_applicable("schmidt_known", inputs, "|<A^dag B>| <= 1/4")
    return BoundCertificate("schmidt_known", inputs, 0.5 * (4.0 * z - 1.0), True)


def schmidt_partition_operators(sd, K: int, n_terms: int | None = None, order=None) -> cond.OperatorPair:
    """A = |alpha><alpha~|, B = |beta~><beta| from unnormalized Schmidt-vector sums.

    ``alpha`` / ``beta`` sum the first ``K`` of the ``n_terms`` chosen Schmidt
    vectors, ``alpha~`` / ``beta~`` the remaining ones. ``order`` selects which
    Schmidt indices are used (default: the leading ``n_terms``).
    """
    n = len(sd.coefficients) if n_terms is None else int(n_terms)
    idx = list(range(n)) if order is None else list(order)[:n]
    if not 1 <= K < len(idx):
        raise ValueError(f"K must satisfy 1 <= K < {len(idx)}, got {K}")
    first, rest = idx[:K], idx[K:]
    alpha = sd.basis_a[first].sum(axis=0)
    alpha_t = sd.basis_a[rest].sum(axis=0)
    beta = sd.basis_b[first].sum(axis=0)
    beta_t = sd.basis_b[rest].sum(axis=0)
    A = np.outer(alpha, alpha_t.conj())
    B = np.outer(beta_t, beta.conj())
    return cond.general_pair(A, B, name=f"schmidt_K{K}")


def best_schmidt_bound(p: PureState, sd=None, order=None) -> tuple[BoundCertificate, int]:
    """Schmidt-known bound maximized over the split point K."""
    sd = schmidt(p) if sd is None else sd
    n = len(sd.coefficients) if order is None else len(order)
    best, best_k = None, 0
    for K in range(1, n):
        pair = schmidt_partition_operators(sd, K, order=order)
        rep = cond.kappa_first(p, pair)
        cert = bound_schmidt_known(rep.mean_AdB, rep.mean_AdABdB)
        cert.inputs["K"] = K
        if best is None or cert.lower_bound > best.lower_bound:
            best, best_k = cert, K
    if best is None:
        best = _not_applicable("schmidt_known", {"abs_mean_AdB": 0.0, "mean_AdABdB": 0.0}, "Schmidt rank < 2")
    return best, best_k


def max_negativity(dims) -> float:
    return 0.5 * (min(dims) - 1)


def check_ceiling(cert: BoundCertificate, dims) -> BoundCertificate:
    cap = max_negativity(dims)
    if cert.lower_bound > cap + 1e-9:
        raise BoundCeilingError(f"{cert.method} bound {cert.lower_bound} exceeds maximum negativity {cap} for dims {dims}")
    return cert


def _require_rank_one(pair, method):
    if pair.rank_one is None:
        raise ValueError(f"method {method!r} requires a rank-one operator pair")


def block_projectors(pair: cond.OperatorPair) -> ProjectorPair:
    _require_rank_one(pair, "multi_block")
    r = pair.rank_one
    ia, ib = (np.eye(k) for k in pair.ancilla)
    return ProjectorPair(np.kron(projector([r.eta0, r.eta1]), ia), np.kron(projector([r.xi0, r.xi1]), ib))


def certify(
    s,
    method: str,
    pair: cond.OperatorPair | None = None,
    pairs=None,
    mode: str = "bisection",
    assume_negative_branch: bool = False,
    with_exact: bool = True,
) -> BoundCertificate:
    """Evaluate the condition needed by ``method`` on state ``s`` and return its bound.

    ``multi_block`` takes ``pairs`` (rank-one pairs on orthogonal blocks);
    ``schmidt_known`` needs a pure state and builds its own operators.
    ``mode`` selects the second-method solver: ``bisection`` or ``quadratic``
    (at x = 0 the quadratic mode falls back to the worked-example reduction).
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    rho = as_density(s)
    if method == "schmidt_known":
        if isinstance(s, BipartiteState):
            w, v = np.linalg.eigh(s.rho)
            if w[-1] < 1 - 1e-9:
                raise ValueError("schmidt_known requires a pure state")
            s = PureState(s.idx, v[:, -1])
        cert, _ = best_schmidt_bound(s)
    elif method == "multi_block":
        pairs = list(pairs) if pairs is not None else [pair]
        for p in pairs:
            _require_rank_one(p, method)
        check_orthogonal_blocks([block_projectors(p) for p in pairs])
        reports = [cond.kappa_first(rho, p) for p in pairs]
        cert = bound_multi_block([r.kappa for r in reports])
    else:
        if pair is None:
            raise ValueError(f"method {method!r} needs an operator pair")
        if method == "first_qubit":
            _require_rank_one(pair, method)
            cert = bound_first_qubit(cond.kappa_first(rho, pair).kappa)
        elif method == "first_improved":
            _require_rank_one(pair, method)
            rep = cond.kappa_first(rho, pair)
            cert = bound_first_improved(rep.kappa, rep.a_diag)
        elif method == "second_qubit":
            _require_rank_one(pair, method)
            rep = cond.kappa_second(rho, pair)
            cert = bound_second_qubit(rep.kappa, rep.alpha, assume_negative_branch)
        else:
            rep = cond.kappa_first(rho, pair)
            A, B = pair.A.matrix, pair.B.matrix
            y = operator_norm(A.conj().T @ A) * operator_norm(B.conj().T @ B)
            x = rep.mean_AdABdB
            if mode == "bisection":
                cert = bound_second_method(rep.kappa, x, y)
            elif mode == "quadratic":
                if x > 0:
                    cert = bound_second_method_quadratic(rep.kappa, x, y)
                else:
                    cert = bound_second_method_example(rep.kappa, y)
            else:
                raise ValueError(f"unknown second-method mode {mode!r}")
    if pair is not None and pair.name:
        cert.inputs.setdefault("operators", pair.name)
    check_ceiling(cert, rho.dims)
    if with_exact:
        cert.exact_negativity = negativity_exact(rho)
    return cert
