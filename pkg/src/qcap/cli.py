"""Command line front end.

Subcommands: `capacity` (single channel), `additivity` (two channels and
their product), `regularized` (per-copy capacity of N copies), `trace`
(per-iteration CSV of one product-channel run), `validate` (channel
descriptor checks).  Reports are JSON on stdout or in `--out`, traces
are CSV.  Given identical inputs, flags and seed, every report is
byte-identical.

Exit codes: 0 success, 2 bad input (parse or validation failure),
3 numerical failure, 4 non-convergence under `--strict`.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .channels import Channel, load_channel, tensor, tp_residual, validate
from .entropy import entanglement
from .fixtures import FIXTURE_NAMES, fixture_channel
from .solver import CapacityResult, SolverConfig, initial_ensemble, multi_start, run

MAX_PRODUCT_DIM = 16


class InputError(ValueError):
    """Bad channel file, descriptor or flag combination."""


def _resolve_channel(arg: str) -> Channel:
    # Accept a descriptor path or a built-in name like "gamma2".
    if arg in FIXTURE_NAMES and not Path(arg).exists():
        return fixture_channel(arg)
    if not Path(arg).exists():
        raise InputError(f"no such channel file or built-in name: {arg}")
    try:
        ch = load_channel(arg, allow_non_cp=True)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return ch


def _require_usable(ch: Channel, label: str) -> None:
    # Trace preservation is a hard requirement; a non-PSD Choi operator
    # only draws a warning so that signed maps stay usable end to end.
    resid = tp_residual(ch)
    if resid > 1e-9:
        raise InputError(f"{label}: not trace preserving (residual {resid:.3e})")
    report = validate(ch)
    if not report.cp_ok:
        print(
            f"warning: {label}: not completely positive "
            f"(min Choi eigenvalue {report.choi_min_eigenvalue:.6e}); "
            "proceeding with its signed form",
            file=sys.stderr,
        )


def _config(args, dim: int | None = None) -> SolverConfig:
    return SolverConfig(
        n_states=args.states,
        starts=args.starts,
        seed=args.seed,
        decimal_places=args.places,
        patience=args.patience,
        max_iters=args.max_iters,
    )


def _wire_complex_matrix(M) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(M)]


def _result_fields(res: CapacityResult) -> dict:
    return {
        "capacity_nats": res.capacity,
        "converged": res.converged,
        "iterations": res.iterations_used,
        "start_index": res.start_index,
        "ensemble": {
            "weights": [float(w) for w in res.ensemble.weights],
            "states": [_wire_complex_matrix(S) for S in res.ensemble.states],
        },
    }


def _emit_report(report: dict, out: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _trace_rows(res: CapacityResult) -> str:
    has_ent = res.trace.ent is not None
    lines = ["k,mutual_info_nats" + (",ent_nats" if has_ent else "")]
    for i, v in enumerate(res.trace.mutual_info, start=1):
        row = f"{i},{v:.9g}"
        if has_ent:
            row += f",{res.trace.ent[i - 1]:.9g}"
        lines.append(row)
    return "\n".join(lines) + "\n"


def _strict_exit(args, *results: CapacityResult) -> int:
    if getattr(args, "strict", False) and not all(r.converged for r in results):
        print("error: solver did not converge within --max-iters", file=sys.stderr)
        return 4
    return 0


def cmd_capacity(args) -> int:
    ch = _resolve_channel(args.channel)
    _require_usable(ch, args.channel)
    res = multi_start(ch, _config(args))
    if args.trace:
        Path(args.trace).write_text(_trace_rows(res))
    _emit_report(_result_fields(res), args.out)
    return _strict_exit(args, res)


def cmd_additivity(args) -> int:
    lhs = _resolve_channel(args.lhs)
    rhs = _resolve_channel(args.rhs)
    _require_usable(lhs, args.lhs)
    _require_usable(rhs, args.rhs)
    r1 = multi_start(lhs, SolverConfig(seed=args.seed, decimal_places=args.places,
                                       patience=args.patience, max_iters=args.max_iters))
    r2 = multi_start(rhs, SolverConfig(seed=args.seed, decimal_places=args.places,
                                       patience=args.patience, max_iters=args.max_iters))
    prod = tensor(lhs, rhs)
    dims = (lhs.dim_in, rhs.dim_in)
    rp = multi_start(prod, _config(args), ent_dims=dims)
    report = _result_fields(rp)
    report.update(
        {
            "c1": r1.capacity,
            "c2": r2.capacity,
            "sum": r1.capacity + r2.capacity,
            "c_product": rp.capacity,
            "gap": rp.capacity - (r1.capacity + r2.capacity),
            "product_ensemble_entanglement": entanglement(rp.ensemble, *dims),
        }
    )
    if args.trace:
        Path(args.trace).write_text(_trace_rows(rp))
    _emit_report(report, args.out)
    return _strict_exit(args, r1, r2, rp)


def cmd_regularized(args) -> int:
    ch = _resolve_channel(args.channel)
    _require_usable(ch, args.channel)
    if args.copies < 1:
        raise InputError("--copies must be at least 1")
    if ch.dim_in**args.copies > MAX_PRODUCT_DIM:
        raise InputError(
            f"{args.copies} copies of a dimension-{ch.dim_in} input "
            f"exceed the dimension budget ({MAX_PRODUCT_DIM})"
        )
    if ch.dim_in**args.copies >= 8:
        print("note: this many copies is slow; expect a long solve", file=sys.stderr)
    single = multi_start(ch, SolverConfig(seed=args.seed, decimal_places=args.places,
                                          patience=args.patience, max_iters=args.max_iters))
    prod = ch
    for _ in range(args.copies - 1):
        prod = tensor(prod, ch)
    res = multi_start(prod, _config(args))
    report = _result_fields(res)
    report.update(
        {
            "copies": args.copies,
            "per_copy_capacity_nats": res.capacity / args.copies,
            "single_copy_capacity_nats": single.capacity,
        }
    )
    _emit_report(report, args.out)
    return _strict_exit(args, single, res)


def cmd_trace(args) -> int:
    lhs = _resolve_channel(args.lhs)
    rhs = _resolve_channel(args.rhs)
    _require_usable(lhs, args.lhs)
    _require_usable(rhs, args.rhs)
    prod = tensor(lhs, rhs)
    cfg = _config(args).resolved(prod)
    init = initial_ensemble(prod.dim_in, cfg.n_states, cfg.seed, 0)
    res = run(prod, init, cfg, ent_dims=(lhs.dim_in, rhs.dim_in))
    text = _trace_rows(res)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return _strict_exit(args, res)


def cmd_validate(args) -> int:
    ch = _resolve_channel(args.channel)
    report = validate(ch)
    _emit_report(
        {
            "name": ch.name,
            "tp_residual": report.tp_residual,
            "tp_ok": report.tp_ok,
            "choi_min_eigenvalue": report.choi_min_eigenvalue,
            "cp_ok": report.cp_ok,
            "affine_min_eigenvalue": report.affine_min_eigenvalue,
            "checks_agree": report.checks_agree,
            "passed": report.passed,
        },
        args.out,
    )
    return 0 if report.passed else 2


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--states", type=int, default=None,
                   help="ensemble size (default: input dimension squared)")
    p.add_argument("--starts", type=int, default=None,
                   help="number of restarts (default: 5, or 3 for dimension >= 9)")
    p.add_argument("--seed", type=int, default=0, help="seed for the random starts")
    p.add_argument("--places", type=int, default=6,
                   help="decimal places that must agree for convergence")
    p.add_argument("--patience", type=int, default=10,
                   help="successive agreeing values required for convergence")
    p.add_argument("--max-iters", type=int, default=100000, help="iteration cap per start")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--strict", action="store_true",
                   help="exit with code 4 if any run fails to converge")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcap",
        description="Holevo capacity of finite-dimensional quantum channels",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("capacity", help="capacity of a single channel")
    p.add_argument("--channel", required=True, help="descriptor file or built-in name")
    _add_solver_flags(p)
    p.add_argument("--trace", default=None, help="write a per-iteration CSV here")
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("additivity", help="compare C(A) + C(B) with C(A (x) B)")
    p.add_argument("--lhs", required=True, help="first channel (file or name)")
    p.add_argument("--rhs", required=True, help="second channel (file or name)")
    _add_solver_flags(p)
    p.add_argument("--trace", default=None, help="write the product run's CSV trace here")
    p.set_defaults(func=cmd_additivity)

    p = sub.add_parser("regularized", help="per-copy capacity of N channel copies")
    p.add_argument("--channel", required=True, help="descriptor file or built-in name")
    p.add_argument("--copies", type=int, default=2, help="number of copies (default 2)")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_regularized)

    p = sub.add_parser("trace", help="CSV trace of one product-channel run")
    p.add_argument("--lhs", required=True, help="first channel (file or name)")
    p.add_argument("--rhs", required=True, help="second channel (file or name)")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("validate", help="check a channel descriptor")
    p.add_argument("--channel", required=True, help="descriptor file or built-in name")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except np.linalg.LinAlgError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
