"""Command-line entry point: ``negabound neg|kappa|bound|sweep|search|dicke|verify``.

Exit codes: 0 success (or applicable bound), 2 bound not applicable, 1 error.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import bounds, dicke, search, sweep, verify
from . import conditions as cond
from .specs import OPERATOR_PRESETS, SpecError, SweepSpec, load_json, parse_operators, parse_state
from .states import InvalidStateError, negativity_exact
from .tensor import DimensionError

EXIT_OK, EXIT_ERROR, EXIT_NOT_APPLICABLE = 0, 1, 2


def _default_pair(s, method: str, condition: str = "first"):
    if s.dims != (2, 2):
        raise SpecError(f"no default operators for dims {s.dims}; pass --operators")
    if method == "second_qubit" or condition == "second":
        return OPERATOR_PRESETS["sigma_plus"]()
    return OPERATOR_PRESETS["sigma_minus"]()


def _operators(arg):
    if arg is None:
        return None
    if arg in OPERATOR_PRESETS:
        return OPERATOR_PRESETS[arg]()
    return parse_operators(load_json(arg))


def _emit(text: str, out: str | None):
    print(text)
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text + "\n")


def _cert_text(cert: bounds.BoundCertificate) -> str:
    lines = [
        f"method: {cert.method}",
        f"applicable: {str(cert.applicable).lower()}",
        f"lower_bound: {sweep.fmt(cert.lower_bound)}",
    ]
    if cert.exact_negativity is not None:
        lines.append(f"exact_negativity: {sweep.fmt(cert.exact_negativity)}")
    for k, v in cert.inputs.items():
        lines.append(f"  {k}: {sweep.fmt(v) if isinstance(v, float) else v}")
    if cert.notes:
        lines.append(f"notes: {cert.notes}")
    return "\n".join(lines)


def cmd_neg(args) -> int:
    print(sweep.fmt(negativity_exact(parse_state(args.state))))
    return EXIT_OK


def cmd_kappa(args) -> int:
    s = parse_state(args.state)
    pair = _operators(args.operators) or _default_pair(s, "", args.condition)
    if isinstance(pair, list):
        raise SpecError("kappa takes a single operator pair, not blocks")
    rep = cond.kappa(s, pair, args.condition)
    if args.json:
        print(json.dumps(rep.to_dict()))
    else:
        for k, v in rep.to_dict().items():
            print(f"{k}: {v if isinstance(v, (str, list)) else sweep.fmt(v)}")
    return EXIT_OK


def cmd_bound(args) -> int:
    s = parse_state(args.state)
    if args.auto_search:
        if args.operators:
            raise SpecError("--auto-search and --operators are exclusive")
        cfg = search.SearchConfig(args.method, restarts=args.restarts, seed=args.seed, mode=args.mode)
        cert = search.optimize(s, cfg).best_certificate
        cert.inputs["search_seed"] = args.seed
    elif args.method == "schmidt_known":
        cert = bounds.certify(s, "schmidt_known")
    else:
        ops = _operators(args.operators)
        if args.method == "multi_block":
            pairs = ops if isinstance(ops, list) else [ops or _default_pair(s, args.method)]
            cert = bounds.certify(s, "multi_block", pairs=pairs)
        else:
            if isinstance(ops, list):
                raise SpecError("block operator lists are only valid with --method multi_block")
            pair = ops or _default_pair(s, args.method)
            cert = bounds.certify(
                s, args.method, pair, mode=args.mode, assume_negative_branch=args.assume_negative_branch
            )
    _emit(cert.to_json(indent=2) if args.json else _cert_text(cert), args.out)
    return EXIT_OK if cert.applicable else EXIT_NOT_APPLICABLE


def cmd_sweep(args) -> int:
    if args.figure:
        spec = sweep.figure_recipes(args.points or 201)[args.figure]
    elif args.spec:
        spec = load_json(args.spec)
        if args.points:
            spec = dict(spec, points=args.points)
    else:
        raise SpecError("sweep needs a specification file or --figure")
    spec = SweepSpec.from_dict(spec)
    header, rows = sweep.run_sweep(spec)
    text = sweep.to_csv(header, rows)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise SpecError(f"cannot write {args.out}: {exc}") from exc
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_search(args) -> int:
    s = parse_state(args.state)
    cfg = search.SearchConfig(
        args.method,
        restarts=args.restarts,
        max_iters=args.max_iters,
        step_init=args.step_init,
        step_min=args.step_min,
        seed=args.seed,
        mode=args.mode,
    )
    res = search.optimize(s, cfg)
    cert = res.best_certificate
    summary = {
        "method": cfg.method,
        "seed": cfg.seed,
        "rng": "numpy.PCG64",
        "restarts": cfg.restarts,
        "evaluations": res.evaluations,
        "best_bound": cert.lower_bound,
        "applicable": cert.applicable,
        "exact_negativity": cert.exact_negativity,
        "eta0": _vec(res.best_pair.eta0),
        "eta1": _vec(res.best_pair.eta1),
        "xi0": _vec(res.best_pair.xi0),
        "xi1": _vec(res.best_pair.xi1),
    }
    if s.dims == (2, 2):
        canon = bounds.certify(s, cfg.method, _default_pair(s, cfg.method), mode=cfg.mode, with_exact=False)
        summary["canonical_bound"] = canon.lower_bound
    if args.json:
        _emit(json.dumps(summary, indent=2), args.out)
    else:
        lines = [f"{k}: {sweep.fmt(v) if isinstance(v, float) else v}" for k, v in summary.items() if not k[-1].isdigit()]
        _emit("\n".join(lines), args.out)
    return EXIT_OK if cert.applicable else EXIT_NOT_APPLICABLE


def _vec(v) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(v)]


def cmd_dicke(args) -> int:
    if args.mode == "rabi":
        model = dicke.DickeModel(0.5, 1, args.omega, args.g)
        times = np.linspace(0.0, args.t_end if args.t_end is not None else 10.0 / args.g, args.points)
        pop = dicke.rabi_population(model, times)
        lines = ["t,population,closed_form"]
        lines += [f"{sweep.fmt(t)},{sweep.fmt(p)},{sweep.fmt(np.cos(args.g * t) ** 2)}" for t, p in zip(times, pop)]
        text = "\n".join(lines) + "\n"
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    model = dicke.superposition_model(args.j, args.l1, args.l2, args.omega, args.g)
    c0, c1 = args.c0, args.c1
    if c0 is None and c1 is None:
        c0 = c1 = 1 / np.sqrt(2)
    elif c0 is None:
        c0 = float(np.sqrt(max(0.0, 1 - c1**2)))
    elif c1 is None:
        c1 = float(np.sqrt(max(0.0, 1 - c0**2)))
    if args.mode == "check":
        rep = dicke.schmidt_vector_check(model, c0, c1, args.l1, args.l2, args.t)
        pairs = [{**p, "amplitude": [p["amplitude"].real, p["amplitude"].imag]} for p in rep["pairs"]]
        if args.json:
            _emit(json.dumps({"t": rep["t"], "pairs": pairs}, indent=2), args.out)
        else:
            lines = [f"t: {sweep.fmt(rep['t'])}"]
            for p in pairs:
                lines.append(
                    f"level {p['level']} photons {p['photons']} (s={p['s']}): {p['status']}, coefficient {sweep.fmt(p['coefficient'])}"
                )
            _emit("\n".join(lines), args.out)
        return EXIT_ERROR if any(p["status"] == "refuted" for p in pairs) else EXIT_OK
    cert = dicke.dicke_schmidt_bound(model, c0, c1, args.l1, args.l2, args.t, args.K)
    _emit(cert.to_json(indent=2) if args.json else _cert_text(cert), args.out)
    return EXIT_OK if cert.applicable else EXIT_NOT_APPLICABLE


def cmd_verify(args) -> int:
    names = verify.SUITES if args.suite == "all" else (args.suite,)
    ok = True
    for name in names:
        res = verify.run_suite(name, seed=args.seed, scale=args.scale)
        for line in res.lines():
            print(line)
        for prop, detail in res.failures:
            print(f"  violation {prop}: {detail}")
        ok &= res.passed
    return EXIT_OK if ok else EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="negabound", description="Negativity lower bounds from local-operator conditions.")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("neg", help="exact negativity of a state")
    q.add_argument("state", help="state JSON file or inline JSON object")
    q.set_defaults(func=cmd_neg)

    q = sub.add_parser("kappa", help="evaluate an entanglement condition")
    q.add_argument("state")
    q.add_argument("--operators", help="operator JSON, inline JSON or preset name")
    q.add_argument("--condition", choices=("first", "second"), default="first")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_kappa)

    q = sub.add_parser("bound", help="lower bound certificate")
    q.add_argument("state")
    q.add_argument("--method", required=True, choices=bounds.METHODS)
    q.add_argument("--operators")
    q.add_argument("--auto-search", action="store_true", help="optimize the rank-one pair first")
    q.add_argument("--mode", choices=bounds.SECOND_METHOD_MODES, default="bisection")
    q.add_argument("--assume-negative-branch", action="store_true")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--restarts", type=int, default=16)
    q.add_argument("--json", action="store_true")
    q.add_argument("--out", help="also write the certificate here")
    q.set_defaults(func=cmd_bound)

    q = sub.add_parser("sweep", help="parameter sweep to CSV")
    q.add_argument("spec", nargs="?", help="sweep JSON file or inline JSON object")
    q.add_argument("--figure", choices=sorted(sweep.figure_recipes()), help="use a built-in figure recipe")
    q.add_argument("--points", type=int)
    q.add_argument("--out")
    q.set_defaults(func=cmd_sweep)

    q = sub.add_parser("search", help="optimize a rank-one operator pair")
    q.add_argument("state")
    q.add_argument("--method", choices=search.SEARCH_METHODS, default="first_qubit")
    q.add_argument("--mode", choices=bounds.SECOND_METHOD_MODES, default="bisection")
    q.add_argument("--restarts", type=int, default=16)
    q.add_argument("--max-iters", type=int, default=400)
    q.add_argument("--step-init", type=float, default=0.5)
    q.add_argument("--step-min", type=float, default=1e-6)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--json", action="store_true")
    q.add_argument("--out")
    q.set_defaults(func=cmd_search)

    q = sub.add_parser("dicke", help="spin-field model reports")
    q.add_argument("mode", choices=("rabi", "check", "bound"))
    q.add_argument("--j", type=float, default=4.0)
    q.add_argument("--l1", type=int, default=0)
    q.add_argument("--l2", type=int, default=4)
    q.add_argument("--c0", type=float)
    q.add_argument("--c1", type=float)
    q.add_argument("--t", type=float, default=1.0)
    q.add_argument("--K", type=int)
    q.add_argument("--omega", type=float, default=1.0)
    q.add_argument("--g", type=float, default=0.2)
    q.add_argument("--t-end", type=float)
    q.add_argument("--points", type=int, default=201)
    q.add_argument("--json", action="store_true")
    q.add_argument("--out")
    q.set_defaults(func=cmd_dicke)

    q = sub.add_parser("verify", help="run seeded property suites")
    q.add_argument("--suite", choices=verify.SUITES + ("all",), default="all")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--scale", type=float, default=1.0, help="multiply sample counts (quick runs)")
    q.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SpecError, InvalidStateError, DimensionError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
