"""JSON state, operator and sweep specifications."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import conditions as cond
from . import states


class SpecError(ValueError):
    pass


STATE_KINDS = (
    "bell_like",
    "noisy",
    "four_qubit",
    "four_qubit_symmetric",
    "max_entangled",
    "raw",
    "random_mixed",
    "random_pure",
)

OPERATOR_PRESETS = {
    "sigma_minus": cond.sigma_minus_pair,
    "sigma_plus": cond.sigma_plus_pair,
    "x_basis": cond.x_basis_pair,
    "four_qubit_coarse": lambda: cond.four_qubit_operator_sets()["coarse"],
    "four_qubit_fine1": lambda: cond.four_qubit_operator_sets()["fine1"],
    "four_qubit_fine2": lambda: cond.four_qubit_operator_sets()["fine2"],
}


def load_json(source) -> dict:
    """Parse a JSON file path, or an inline JSON object string."""
    if isinstance(source, dict):
        return source
    text = str(source)
    if text.lstrip().startswith("{"):
        return json.loads(text)
    try:
        return json.loads(Path(text).read_text(encoding="utf-8"))
    except OSError as exc:
        raise SpecError(f"cannot read {text}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecError(f"{text} is not valid JSON: {exc}") from exc


def _need(spec, key):
    if key not in spec:
        raise SpecError(f"state kind {spec.get('kind')!r} requires field {key!r}")
    return spec[key]


def _complex_array(re, im=None) -> np.ndarray:
    arr = np.asarray(re, dtype=float)
    if im is not None:
        im = np.asarray(im, dtype=float)
        if im.shape != arr.shape:
            raise SpecError("re and im parts have different shapes")
        return arr + 1j * im
    return arr.astype(complex)


def parse_state(spec: dict):
    """Resolve a state specification to a BipartiteState or PureState."""
    spec = load_json(spec)
    kind = spec.get("kind")
    if kind not in STATE_KINDS:
        raise SpecError(f"unknown state kind {kind!r}; expected one of {STATE_KINDS}")
    try:
        if kind == "bell_like":
            return states.make_bell_like(float(_need(spec, "lambda0")))
        if kind == "noisy":
            return states.make_noisy(float(_need(spec, "lambda0")), float(_need(spec, "p")))
        if kind == "four_qubit":
            lam = _need(spec, "lambdas")
            if len(lam) != 4:
                raise SpecError("four_qubit needs 4 weights")
            return states.make_four_qubit(*map(float, lam))
        if kind == "four_qubit_symmetric":
            return states.make_four_qubit_symmetric(float(_need(spec, "lambda00")))
        if kind == "max_entangled":
            return states.make_max_entangled(int(_need(spec, "n")))
        if kind == "random_pure":
            return states.random_pure(tuple(_need(spec, "dims")), int(_need(spec, "seed")))
        if kind == "random_mixed":
            return states.random_mixed(tuple(_need(spec, "dims")), int(_need(spec, "rank")), int(_need(spec, "seed")))
        dims = tuple(int(d) for d in _need(spec, "dims"))
        data = _complex_array(_need(spec, "re"), spec.get("im"))
        if data.ndim == 1:
            return states.PureState(dims, data)
        return states.BipartiteState(dims, data)
    except SpecError:
        raise
    except (ValueError, TypeError) as exc:
        raise SpecError(f"invalid {kind} state: {exc}") from exc


def state_to_spec(s) -> dict:
    """Raw specification reproducing ``s`` exactly."""
    if isinstance(s, states.PureState):
        a = np.asarray(s.amplitudes)
    else:
        a = np.asarray(s.rho)
    return {"kind": "raw", "dims": list(s.dims), "re": a.real.tolist(), "im": a.imag.tolist()}


def _vector(v) -> np.ndarray:
    """List of reals, or list of [re, im] pairs."""
    arr = np.asarray(v, dtype=float)
    if arr.ndim == 2 and arr.shape[1] == 2:
        return arr[:, 0] + 1j * arr[:, 1]
    if arr.ndim == 1:
        return arr.astype(complex)
    raise SpecError(f"cannot read vector {v!r}")


def _matrix(m) -> np.ndarray:
    if isinstance(m, dict):
        return _complex_array(m["re"], m.get("im"))
    return _complex_array(m)


def parse_operators(spec):
    """Resolve an operator specification.

    Returns an OperatorPair, or a list of them for ``{"blocks": [...]}``.
    """
    spec = load_json(spec) if not isinstance(spec, dict) else spec
    try:
        if "blocks" in spec:
            return [parse_operators(b) for b in spec["blocks"]]
        name = spec.get("name", "")
        if "preset" in spec:
            preset = spec["preset"]
            if preset not in OPERATOR_PRESETS:
                raise SpecError(f"unknown operator preset {preset!r}; expected one of {sorted(OPERATOR_PRESETS)}")
            return OPERATOR_PRESETS[preset]()
        if "rank_one" in spec:
            r = spec["rank_one"]
            pair = cond.RankOnePair(*(_vector(r[k]) for k in ("eta0", "eta1", "xi0", "xi1")))
            return cond.rank_one(pair, ancilla=tuple(spec.get("ancilla", (1, 1))), name=name)
        if "A" in spec and "B" in spec:
            return cond.general_pair(_matrix(spec["A"]), _matrix(spec["B"]), name=name)
    except SpecError:
        raise
    except (KeyError, ValueError, TypeError) as exc:
        raise SpecError(f"invalid operator specification: {exc}") from exc
    raise SpecError("operator specification needs one of 'preset', 'rank_one', 'A'/'B' or 'blocks'")


QUANTITY_BASES = ("negativity_exact", "kappa_first", "kappa_second") + (
    "first_qubit",
    "first_improved",
    "multi_block",
    "second_method",
    "second_qubit",
    "schmidt_known",
)


@dataclass
class SweepSpec:
    state: dict
    variable: str
    range: tuple[float, float]
    points: int = 201
    quantities: list[str] = field(default_factory=lambda: ["negativity_exact"])
    operators: dict = field(default_factory=dict)
    mode: str = "bisection"

    def __post_init__(self):
        lo, hi = (float(v) for v in self.range)
        if not lo < hi:
            raise SpecError(f"sweep range needs lo < hi, got {self.range}")
        if int(self.points) < 2:
            raise SpecError("sweep needs at least 2 points")
        self.range = (lo, hi)
        self.points = int(self.points)
        for q in self.quantities:
            if q.split(":", 1)[0] not in QUANTITY_BASES:
                raise SpecError(f"unknown sweep quantity {q!r}")

    @classmethod
    def from_dict(cls, d: dict) -> "SweepSpec":
        d = load_json(d)
        known = {"state", "variable", "range", "points", "quantities", "operators", "mode"}
        extra = set(d) - known
        if extra:
            raise SpecError(f"unknown sweep fields {sorted(extra)}")
        try:
            return cls(**d)
        except TypeError as exc:
            raise SpecError(f"invalid sweep specification: {exc}") from exc

    def grid(self) -> np.ndarray:
        return np.linspace(self.range[0], self.range[1], self.points)
