"""Command line entry point with deterministic JSON output.

Subcommands: count, minima, chi, verify, ledger (eval | sweep | simulate).
One JSON document per run on stdout; exit codes: 0 success, 1 inequality
violation, 2 usage/config error, 3 budget or undecidability error.

Reals are serialized as decimal strings with 12 significant digits (plus an
exact "p/q" field where one exists) so output is byte-identical across runs
and platforms.  Wall-clock timing is only emitted when LATMIN_TIMING is set,
to keep default output reproducible.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .enumeration import (DEFAULT_BUDGET, effective_sections,
                          strictly_effective_sections)
from .errors import (ConfigError, DimensionMismatch, EnumerationBudgetExceeded,
                     InfeasibleLedger, InvalidNorm, PreconditionViolated,
                     UnboundedBall, Undecidable)
from .inequalities import SuiteConfig, run_suite
from .ledger import (ArithmeticContext, SimulationParams, corollary_e,
                     deg_one_bound, ledger_from_json, simulate_reduction,
                     sum_ci_bound, theorem_b_bound, theorem_c_bound,
                     theorem_chain_check, theorem_d_bound, trivial_bound,
                     verify_constant_chain)
from .minima import euler_characteristic, successive_minima
from .norms import format_rational, load_module


def fmt_real(x: float) -> str:
    return f"{x:.12g}"


def jsonable(obj):
    """Deterministic JSON form: floats as 12-sig strings, Fractions as p/q."""
    if isinstance(obj, float):
        return fmt_real(obj)
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, bool) or isinstance(obj, int) or obj is None:
        return obj
    if isinstance(obj, str):
        return obj
    if dataclasses.is_dataclass(obj):
        return {k: jsonable(v) for k, v in dataclasses.asdict(obj).items()}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return str(obj)


def _emit(subcommand: str, config: dict, report, seed, started: float,
          exit_code: int = 0) -> int:
    body = jsonable(report)
    digest = hashlib.sha256(
        json.dumps(body, sort_keys=True, separators=(",", ":")).encode()
    ).hexdigest()[:16]
    manifest = {
        "tool": "latmin",
        "version": __version__,
        "subcommand": subcommand,
        "config": jsonable(config),
        "seed": seed,
        "result_digest": digest,
    }
    if os.environ.get("LATMIN_TIMING"):
        manifest["duration_s"] = fmt_real(time.monotonic() - started)
    doc = {"report": body, "manifest": manifest}
    print(json.dumps(doc, sort_keys=True, separators=(",", ":")))
    return exit_code


def _emit_error(subcommand: str, exc: Exception, exit_code: int) -> int:
    doc = {
        "error": {"type": type(exc).__name__, "message": str(exc)},
        "manifest": {"tool": "latmin", "version": __version__,
                     "subcommand": subcommand},
    }
    print(json.dumps(doc, sort_keys=True, separators=(",", ":")))
    return exit_code


def _budget(args) -> int:
    if getattr(args, "budget", None):
        return args.budget
    env = os.environ.get("LATMIN_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def cmd_count(args) -> int:
    started = time.monotonic()
    module = load_module(args.module)
    sections = (strictly_effective_sections(module, _budget(args)) if args.strict
                else effective_sections(module, _budget(args)))
    report = {"count": sections.count, "log_count": sections.log_count,
              "threshold_kind": sections.threshold_kind}
    if args.emit_vectors:
        report["vectors"] = [list(v) for v in sections.vectors]
    cfg = {"module": args.module, "strict": args.strict,
           "budget": _budget(args)}
    return _emit("count", cfg, report, None, started)


def cmd_minima(args) -> int:
    started = time.monotonic()
    module = load_module(args.module)
    rep = successive_minima(module, _budget(args))
    report = {
        "lambdas": list(rep.lambdas),
        "mus": list(rep.mus),
        "witnesses": [list(w) for w in rep.witnesses],
        "exact": [{"alpha": a, "key": k, "den": d,
                   "squared": sq} for a, k, d, sq in rep.mu_parts],
    }
    cfg = {"module": args.module, "budget": _budget(args)}
    return _emit("minima", cfg, report, None, started)


def cmd_chi(args) -> int:
    started = time.monotonic()
    module = load_module(args.module)
    chi = euler_characteristic(module, args.samples, args.seed)
    report = {"chi": chi.value, "stderr": chi.stderr, "method": chi.method}
    cfg = {"module": args.module, "samples": args.samples, "seed": args.seed}
    return _emit("chi", cfg, report, args.seed, started)


def cmd_verify(args) -> int:
    started = time.monotonic()
    if args.suite != "counting":
        raise ConfigError(f"unknown suite {args.suite!r}")
    config = SuiteConfig(seed=args.seed, trials=args.trials,
                         rank_max=args.max_rank, budget=_budget(args),
                         samples=args.samples)
    summary = run_suite(config)
    cfg = {"suite": args.suite, "trials": args.trials, "seed": args.seed,
           "max_rank": args.max_rank, "budget": _budget(args),
           "samples": args.samples}
    code = 1 if summary["total_violations"] else 0
    return _emit("verify", cfg, summary, args.seed, started, code)


def _eval_theorem(name: str, cfg: dict):
    if name == "trivial":
        return {"bound": trivial_bound(int(cfg["r_minus"]), int(cfg["deg_LQ"]),
                                       float(cfg["L2"]))}
    if name == "B":
        return {"bound": theorem_b_bound(int(cfg["g"]), int(cfg["d_circ"]),
                                         int(cfg["kappa"]), float(cfg["L2"]))}
    if name == "C":
        return {"bound": theorem_c_bound(int(cfg["d_circ"]), int(cfg["kappa"]),
                                         int(cfg["eps"]), float(cfg["L2"]))}
    if name == "D":
        return {"bound": theorem_d_bound(int(cfg["g"]), int(cfg["kappa"]),
                                         int(cfg["eps"]), float(cfg["omega2"]))}
    if name == "deg1":
        return {"bound": deg_one_bound(int(cfg["g"]), int(cfg["kappa"]),
                                       float(cfg["L2"]))}
    if name == "E":
        ctx = ArithmeticContext(
            g=int(cfg["g"]), kappa=int(cfg["kappa"]), eps=int(cfg["eps"]),
            absD=float(cfg["absD"]), r1=int(cfg["r1"]), r2=int(cfg["r2"]),
            omega2=float(cfg["omega2"]), delta=float(cfg["delta"]),
            gamma=float(cfg["gamma"]))
        return corollary_e(ctx)
    raise ConfigError(f"unknown theorem {name!r}")


def cmd_ledger(args) -> int:
    started = time.monotonic()
    if args.ledger_cmd == "eval":
        with open(args.config) as fh:
            cfg = json.load(fh)
        if args.theorem:
            report = _eval_theorem(args.theorem, cfg)
        else:
            ledger = ledger_from_json(cfg)
            chain = theorem_chain_check(ledger)
            report = {"theorem_chain": chain, "sum_ci": sum_ci_bound(ledger)}
        code = 0
        conf = {"config": args.config, "theorem": args.theorem}
        return _emit("ledger-eval", conf, report, None, started, code)
    if args.ledger_cmd == "sweep":
        reports = verify_constant_chain(args.g_max, args.kappa_max)
        code = 1 if any(not r.holds for r in reports) else 0
        conf = {"g_max": args.g_max, "kappa_max": args.kappa_max}
        return _emit("ledger-sweep", conf, reports, None, started, code)
    if args.ledger_cmd == "simulate":
        params = SimulationParams(mode=args.mode)
        out = []
        violations = 0
        for t in range(args.trials):
            ledger = simulate_reduction(args.seed + t, params)
            chain = theorem_chain_check(ledger)
            sumci = sum_ci_bound(ledger)
            if not (chain.holds and sumci.holds):
                violations += 1
            out.append({"ledger": ledger.to_json(), "theorem_chain": chain,
                        "sum_ci": sumci})
        report = {"trials": args.trials, "violations": violations,
                  "results": out}
        conf = {"seed": args.seed, "mode": args.mode, "trials": args.trials}
        return _emit("ledger-simulate", conf, report, args.seed, started,
                     1 if violations else 0)
    raise ConfigError("unknown ledger subcommand")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="latmin",
                                     description="normed lattice toolkit")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker cap (output is identical at any level)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count effective sections")
    p.add_argument("--module", required=True)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--emit-vectors", action="store_true")
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("minima", help="successive minima")
    p.add_argument("--module", required=True)
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_minima)

    p = sub.add_parser("chi", help="Euler characteristic")
    p.add_argument("--module", required=True)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("verify", help="run the inequality suite")
    p.add_argument("--suite", default="counting")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-rank", type=int, default=3)
    p.add_argument("--budget", type=int)
    p.add_argument("--samples", type=int, default=20_000)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ledger", help="reduction-ledger tools")
    lsub = p.add_subparsers(dest="ledger_cmd", required=True)
    pe = lsub.add_parser("eval")
    pe.add_argument("--config", required=True)
    pe.add_argument("--theorem", choices=["B", "C", "D", "E", "deg1", "trivial"])
    ps = lsub.add_parser("sweep")
    ps.add_argument("--g-max", type=int, default=1000)
    ps.add_argument("--kappa-max", type=int, default=50)
    pm = lsub.add_parser("simulate")
    pm.add_argument("--seed", type=int, default=0)
    pm.add_argument("--mode", required=True)
    pm.add_argument("--trials", type=int, default=10)
    p.set_defaults(func=cmd_ledger)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    name = getattr(args, "command", "?")
    try:
        return args.func(args)
    except EnumerationBudgetExceeded as exc:
        return _emit_error(name, exc, 3)
    except Undecidable as exc:
        return _emit_error(name, exc, 3)
    except (ConfigError, InvalidNorm, UnboundedBall, DimensionMismatch,
            PreconditionViolated, InfeasibleLedger, FileNotFoundError,
            json.JSONDecodeError, KeyError) as exc:
        return _emit_error(name, exc, 2)


if __name__ == "__main__":
    sys.exit(main())
