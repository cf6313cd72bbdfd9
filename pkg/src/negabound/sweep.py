"""Parameter sweeps written as CSV, plus ready-made figure recipes."""
from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.optimize import bisect

from . import bounds
from . import conditions as cond
from .specs import OPERATOR_PRESETS, SpecError, SweepSpec, parse_operators, parse_state
from .states import negativity_exact

SECOND_CONDITION = ("kappa_second", "second_qubit")


def thread_count() -> int:
    env = os.environ.get("NEGABOUND_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise SpecError(f"NEGABOUND_THREADS must be an integer, got {env!r}") from None
    return min(4, os.cpu_count() or 1)


def fmt(v) -> str:
    return "" if v is None else f"{v:.12g}"


class _Evaluator:
    def __init__(self, spec: SweepSpec):
        self.spec = spec
        self.ops = {name: parse_operators(o) for name, o in spec.operators.items()}
        self.plan = [self._resolve(q) for q in spec.quantities]

    def _pair(self, base, name):
        if name is not None:
            if name not in self.ops:
                raise SpecError(f"quantity refers to undeclared operator {name!r}")
            return self.ops[name]
        if "default" in self.ops:
            return self.ops["default"]
        if self.ops:
            return next(iter(self.ops.values()))
        return OPERATOR_PRESETS["sigma_plus" if base in SECOND_CONDITION else "sigma_minus"]()

    def _resolve(self, q):
        base, _, arg = q.partition(":")
        arg = arg or None
        if base in ("negativity_exact", "schmidt_known"):
            return base, None
        if base == "multi_block":
            if arg is None:
                pairs = list(self.ops.values())
            else:
                pairs = [self._pair(base, n) for n in arg.split("+")]
            if not pairs:
                raise SpecError("multi_block needs declared operators")
            return base, pairs
        return base, self._pair(base, arg)

    def row(self, value: float) -> list:
        st = dict(self.spec.state)
        st[self.spec.variable] = float(value)
        s = parse_state(st)
        out = [float(value)]
        for base, ops in self.plan:
            if base == "negativity_exact":
                out.append(negativity_exact(s))
            elif base == "kappa_first":
                out.append(cond.kappa_first(s, ops).kappa)
            elif base == "kappa_second":
                out.append(cond.kappa_second(s, ops).kappa)
            else:
                if base == "multi_block":
                    cert = bounds.certify(s, base, pairs=ops, with_exact=False)
                elif base == "schmidt_known":
                    cert = bounds.certify(s, base, with_exact=False)
                else:
                    cert = bounds.certify(s, base, ops, mode=self.spec.mode, with_exact=False)
                out.append(cert.lower_bound if cert.applicable else None)
        return out


def run_sweep(spec: SweepSpec | dict) -> tuple[list[str], list[list]]:
    """Evaluate every requested quantity on the grid; rows come back in grid order.

    Bound cells are ``None`` where the underlying condition fails.
    """
    if not isinstance(spec, SweepSpec):
        spec = SweepSpec.from_dict(spec)
    ev = _Evaluator(spec)
    header = [spec.variable] + list(spec.quantities)
    grid = spec.grid()
    n = thread_count()
    if n == 1:
        rows = [ev.row(v) for v in grid]
    else:
        with ThreadPoolExecutor(max_workers=n) as pool:
            rows = list(pool.map(ev.row, grid))
    return header, rows


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) for v in r])
    return buf.getvalue()


def write_csv(spec, path) -> str:
    header, rows = run_sweep(spec)
    text = to_csv(header, rows)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return text


def read_csv(path_or_text) -> tuple[list[str], list[list]]:
    text = path_or_text
    if "\n" not in str(path_or_text):
        with open(path_or_text, encoding="utf-8") as fh:
            text = fh.read()
    r = list(csv.reader(io.StringIO(text)))
    return r[0], [[float(c) if c else None for c in row] for row in r[1:]]


def zero_crossings(func, lo: float, hi: float, points: int = 2001, xtol: float = 1e-6) -> list[float]:
    """Sign changes of ``func`` on a grid, refined by bisection to ``xtol``."""
    xs = np.linspace(lo, hi, points)
    fs = np.array([func(x) for x in xs])
    roots = []
    for i in range(points - 1):
        if fs[i] == 0.0:
            roots.append(float(xs[i]))
        elif fs[i] * fs[i + 1] < 0:
            roots.append(float(bisect(func, xs[i], xs[i + 1], xtol=xtol)))
    return roots


def figure_recipes(points: int = 201) -> dict[str, dict]:
    """Sweep specifications for the kappa / negativity / bound figures."""
    first = ["kappa_first", "negativity_exact", "first_qubit"]
    return {
        "fig1_p1": {
            "state": {"kind": "noisy", "p": 1.0},
            "variable": "lambda0",
            "range": [0.0, 1.0],
            "points": points,
            "quantities": first,
            "operators": {"k": {"preset": "sigma_minus"}},
        },
        "fig1_p2_3": {
            "state": {"kind": "noisy", "p": 2.0 / 3.0},
            "variable": "lambda0",
            "range": [0.0, 1.0],
            "points": points,
            "quantities": first,
            "operators": {"k": {"preset": "sigma_minus"}},
        },
        "fig2": {
            "state": {"kind": "bell_like"},
            "variable": "lambda0",
            "range": [0.0, 1.0],
            "points": points,
            "quantities": ["kappa_first:k1", "kappa_first:k2"],
            "operators": {"k1": {"preset": "sigma_minus"}, "k2": {"preset": "x_basis"}},
        },
        "fig3": {
            "state": {"kind": "bell_like"},
            "variable": "lambda0",
            "range": [0.0, 1.0],
            "points": points,
            "quantities": ["negativity_exact", "first_qubit:k1", "first_qubit:k2"],
            "operators": {"k1": {"preset": "sigma_minus"}, "k2": {"preset": "x_basis"}},
        },
        "fig4": {
            "state": {"kind": "four_qubit_symmetric"},
            "variable": "lambda00",
            "range": [0.0, 0.5],
            "points": points,
            "quantities": [
                "negativity_exact",
                "kappa_first:coarse",
                "first_qubit:coarse",
                "kappa_first:fine1",
                "kappa_first:fine2",
                "multi_block:fine1+fine2",
            ],
            "operators": {
                "coarse": {"preset": "four_qubit_coarse"},
                "fine1": {"preset": "four_qubit_fine1"},
                "fine2": {"preset": "four_qubit_fine2"},
            },
        },
    }
