"""Seeded property suites: bound soundness, separability, pinching, Dicke dynamics."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import bounds
from . import conditions as cond
from . import dicke
from .tensor import partial_transpose, trace_norm
from .states import RNG_NAME, negativity_exact, negativity_pure, random_mixed, random_product, random_pure, schmidt

TOL = 1e-9
SUITES = ("soundness", "separability", "pinching", "dicke")


@dataclass
class SuiteResult:
    name: str
    seed: int
    counts: dict = field(default_factory=dict)  # property -> [checked, failed]
    failures: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    def record(self, prop: str, ok: bool, detail=None):
        c = self.counts.setdefault(prop, [0, 0])
        c[0] += 1
        if not ok:
            c[1] += 1
            if len(self.failures) < 20:
                self.failures.append((prop, detail))

    @property
    def passed(self) -> bool:
        return all(f == 0 for _, f in self.counts.values())

    def lines(self) -> list[str]:
        out = []
        for prop, (n, f) in self.counts.items():
            out.append(f"{'PASS' if f == 0 else 'FAIL'} {self.name}/{prop}: {n - f}/{n} ok, {f} violations")
        return out


def _rng(seed, *key):
    return np.random.Generator(np.random.PCG64([seed, *key]))


SOUNDNESS_METHODS = (
    ("first_qubit", {}),
    ("first_improved", {}),
    ("multi_block", {}),
    ("second_method", {"mode": "bisection"}),
    ("second_method/quadratic", {"mode": "quadratic"}),
    ("second_qubit", {}),
)


def soundness(n_states: int = 1000, n_pairs: int = 20, seed: int = 0, dims=(2, 2), n_pure: int | None = None) -> SuiteResult:
    """Every applicable bound must stay below the exact negativity (+1e-9).

    Mixed states cycle through Ginibre ranks 1..d; the Schmidt-known bound is
    checked separately on random pure states of several shapes.
    """
    res = SuiteResult("soundness", seed, info={"rng": RNG_NAME, "dims": list(dims)})
    d = dims[0] * dims[1]
    applicable = {}
    for i in range(n_states):
        s = random_mixed(dims, 1 + i % d, [seed, 0, i])
        exact = negativity_exact(s)
        rng = _rng(seed, 1, i)
        for _ in range(n_pairs):
            pair = cond.rank_one(cond.random_rank_one_pair(dims, rng))
            for label, kw in SOUNDNESS_METHODS:
                method = label.split("/")[0]
                if method == "second_method" and kw["mode"] == "quadratic":
                    rep = cond.kappa_first(s, pair)
                    if rep.mean_AdABdB <= 0:
                        continue
                cert = bounds.certify(s, method, pair, with_exact=False, **kw)
                if cert.applicable:
                    applicable[label] = applicable.get(label, 0) + 1
                    res.record(label, cert.lower_bound <= exact + TOL, (i, cert.lower_bound, exact))
    shapes = [(2, 2), (2, 3), (3, 3), (3, 4), (4, 4)]
    for i in range(n_states if n_pure is None else n_pure):
        p = random_pure(shapes[i % len(shapes)], [seed, 2, i])
        cert, _ = bounds.best_schmidt_bound(p)
        exact = negativity_pure(schmidt(p))
        if cert.applicable:
            applicable["schmidt_known"] = applicable.get("schmidt_known", 0) + 1
        res.record("schmidt_known", cert.lower_bound <= exact + TOL, (i, cert.lower_bound, exact))
    res.info["applicable"] = applicable
    return res


def separability(n_states: int = 500, n_pairs: int = 50, seed: int = 0) -> SuiteResult:
    """Product states never satisfy either condition (kappa <= 1e-10)."""
    res = SuiteResult("separability", seed, info={"rng": RNG_NAME})
    for i in range(n_states):
        rng = _rng(seed, 3, i)
        dims = (int(rng.integers(2, 4)), int(rng.integers(2, 4)))
        s = random_product(dims, rng, rank_a=int(rng.integers(1, dims[0] + 1)), rank_b=int(rng.integers(1, dims[1] + 1)))
        for _ in range(n_pairs):
            pair = cond.rank_one(cond.random_rank_one_pair(dims, rng))
            k1 = cond.kappa_first(s, pair).kappa
            k2 = cond.kappa_second(s, pair).kappa
            res.record("kappa_first", k1 <= 1e-10, (i, k1))
            res.record("kappa_second", k2 <= 1e-10, (i, k2))
    return res


def random_block_family(dims, rng) -> list[bounds.ProjectorPair]:
    """Two orthogonal blocks P1a (x) P1b, P2a (x) P2b from random unitaries."""
    out = []
    splits = []
    for d in dims:
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        q, _ = np.linalg.qr(g)
        k = int(rng.integers(1, d))
        splits.append((q[:, :k], q[:, k:]))
    for j in range(2):
        pa = splits[0][j] @ splits[0][j].conj().T
        pb = splits[1][j] @ splits[1][j].conj().T
        out.append(bounds.ProjectorPair(pa, pb))
    return out


def pinching(n_states: int = 200, seed: int = 0, dims=(4, 4)) -> SuiteResult:
    """Sum of pinched trace norms never exceeds ||rho^T_b||_1."""
    res = SuiteResult("pinching", seed, info={"rng": RNG_NAME})
    d = dims[0] * dims[1]
    for i in range(n_states):
        s = random_mixed(dims, 1 + i % d, [seed, 4, i])
        blocks = random_block_family(dims, _rng(seed, 5, i))
        total = trace_norm(partial_transpose(s.rho, s.idx))
        pinched = sum(bounds.pinched_norms(s, blocks))
        res.record("pinching", pinched <= total + TOL, (i, pinched, total))
    return res


def dicke_suite(seed: int = 0, js=(0.5, 2.0, 4.0), n_times: int = 101, n_schmidt_times: int = 200, g: float = 0.2) -> SuiteResult:
    """Conservation and unitarity along trajectories; Schmidt-pair claim for j=4, l1=0, l2=4."""
    res = SuiteResult("dicke", seed, info={"rng": RNG_NAME})
    t_end = 50.0 / g
    for j in js:
        model = dicke.DickeModel(j, int(round(2 * j)) + 1, 1.0, g)
        rng = _rng(seed, 6, int(2 * j))
        c = rng.standard_normal(model.spin_dim) + 1j * rng.standard_normal(model.spin_dim)
        c /= np.linalg.norm(c)
        init = dicke.SpinFieldState.from_levels(model, dict(enumerate(c)))
        nop = dicke.excitation_operator(model)
        n0 = init.expect(nop)
        for t in np.linspace(0.0, t_end, n_times):
            st = dicke.evolve(model, init, t)
            res.record("conservation", abs(st.expect(nop) - n0) <= 1e-9, (j, t))
            norm = float(np.linalg.norm(st.amplitudes))
            res.record("unitarity", abs(norm - 1.0) <= 1e-9, (j, t, norm))
    model = dicke.superposition_model(4.0, 0, 4, 1.0, g)
    times = np.sort(_rng(seed, 7).uniform(0.0, t_end, n_schmidt_times))
    c0 = c1 = 1 / math.sqrt(2)
    status = {"confirmed": 0, "indeterminate": 0, "refuted": 0}
    for t in times:
        rep = dicke.schmidt_vector_check(model, c0, c1, 0, 4, t)
        st = [p["status"] for p in rep["pairs"]]
        if "refuted" in st:
            status["refuted"] += 1
        elif all(x == "confirmed" for x in st):
            status["confirmed"] += 1
        else:
            status["indeterminate"] += 1
    frac = status["confirmed"] / len(times)
    res.info["schmidt_times"] = status
    res.info["schmidt_confirmed_fraction"] = frac
    res.record("schmidt_claim_refutations", status["refuted"] == 0, status)
    res.record("schmidt_claim_confirmed_fraction>=0.9", frac >= 0.9, frac)
    return res


def run_suite(name: str, seed: int = 0, scale: float = 1.0) -> SuiteResult:
    """Run a named suite; ``scale`` shrinks the sample counts for quick checks."""

    def n(k):
        return max(1, int(round(k * scale)))

    if name == "soundness":
        return soundness(n(1000), n(20), seed)
    if name == "separability":
        return separability(n(500), n(50), seed)
    if name == "pinching":
        return pinching(n(200), seed)
    if name == "dicke":
        return dicke_suite(seed, n_times=n(101), n_schmidt_times=n(200))
    raise ValueError(f"unknown suite {name!r}; expected one of {SUITES}")
