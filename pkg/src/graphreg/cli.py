"""Command-line front end.

Subcommands mirror the library: ``analyze`` classifies a symbol file,
``transform`` drives the operator transforms on seeded random instances,
``toeplitz`` factors a rational symbol and reports the affiliation
verdict, and ``experiment`` runs the counterdensity / Weyl / resolvent
demos.  Every report echoes the full numerical configuration and the
seed, and identical invocations produce byte-identical JSON.

Exit codes: 0 success, 1 input error, 2 verified failure (an axiom or
declaration check that ran and failed), 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__, catalog
from .config import DEFAULT, Config
from .errors import (
    BadParameters,
    DeclarationMismatch,
    GraphregError,
    InconclusiveClassification,
    LambdaInSpectrum,
)
from .expressions import parse_expression
from .experiments import (
    Side,
    build_pair,
    density_defect,
    resolvent_affiliation_check,
    weyl_build,
    weyl_limits_check,
    weyl_relations_check,
)
from .matrix_symbols import matrix_symbol_op, oscillating_column_example
from .symbols import regularity_report, symbol_from_dict
from .toeplitz import affiliation_verdict, toeplitz_aab
from .transforms import (
    aab_forward,
    aab_inverse,
    ab_axioms_check,
    absolute_value,
    bounded_transform,
    from_bounded,
    functional_calculus,
    opnorm,
    polar_decompose,
    random_operator,
)

SCHEMA = 1


def _complexish(value):
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (np.complexfloating,)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.ndarray):
        return [_complexish(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): _complexish(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_complexish(v) for v in value]
    return value


def emit(report: dict, args) -> None:
    text = json.dumps(_complexish(report), indent=2, sort_keys=True) + "\n"
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text)
    if not args.quiet:
        sys.stdout.write(text)


def make_report(args, command: str, results: dict, cfg: Config) -> dict:
    return {
        "schema": SCHEMA,
        "version": __version__,
        "command": command,
        "seed": args.seed,
        "config": cfg.to_dict(),
        "results": results,
    }


def parse_poly(text: str, cfg: Config) -> np.ndarray:
    """Polynomial from either comma-separated coefficients or an
    expression in one variable, e.g. ``1-z``."""
    text = text.strip()
    try:
        if all(c in "0123456789+-.eEj, " for c in text) and "," in text:
            return np.array([complex(tok) for tok in text.split(",")])
        ast = parse_expression(text)
        m = 2 * (cfg.max_poly_degree + 1)
        z = np.exp(2j * np.pi * np.arange(m) / m)
        from .expressions import evaluate

        coeffs = np.fft.fft(evaluate(ast, z) * np.ones(m)) / m
        coeffs = np.where(np.abs(coeffs) < 1e-12, 0.0, coeffs)
        nz = np.nonzero(np.abs(coeffs) > 0)[0]
        if nz.size and nz[-1] > cfg.max_poly_degree:
            raise ValueError("not a polynomial of admissible degree")
        return coeffs[: (nz[-1] + 1) if nz.size else 1]
    except GraphregError as err:
        raise ValueError(f"cannot parse polynomial {text!r}: {err}") from err


# -- subcommands ------------------------------------------------------------------


def cmd_analyze(args, cfg: Config) -> tuple:
    if args.catalog:
        sym = catalog.get(args.catalog)
        source = f"catalog:{args.catalog}"
    else:
        with open(args.symbol, "r", encoding="utf-8") as fh:
            sym = symbol_from_dict(json.load(fh))
        source = args.symbol
    try:
        report = regularity_report(sym, cfg)
    except (DeclarationMismatch, InconclusiveClassification) as err:
        return {"source": source, "error": str(err)}, 2
    out = report.to_dict()
    out["source"] = source
    if report.a_symbol is not None:
        from .symbols import symbol_to_dict

        out["a_symbol"] = symbol_to_dict(report.a_symbol)
        out["b_symbol"] = symbol_to_dict(report.b_symbol)
    return out, 0


def cmd_transform(args, cfg: Config) -> tuple:
    rng = np.random.default_rng(args.seed)
    n = args.n
    t = np.zeros((n, n), dtype=complex) if args.zero else random_operator(n, rng)
    if args.op in ("calc",):
        h = random_operator(n, rng)
        t = h + h.conj().T  # self-adjoint, hence normal
    triple = aab_forward(t, cfg)
    results = {"n": n, "zero": bool(args.zero), "op": args.op}
    scale = max(1.0, opnorm(t))
    ok = True
    if args.op == "aab":
        rep = ab_axioms_check(triple, cfg)
        qp = aab_inverse(triple, cfg)
        results["residuals"] = {
            "bstar_b": rep.residual_bb,
            "b_bstar": rep.residual_bbstar,
            "intertwine": rep.residual_intertwine,
            "roundtrip": opnorm(qp.reconstruct() - t),
        }
        results["axioms_ok"] = rep.ok
        ok = rep.ok and results["residuals"]["roundtrip"] < 1e-9 * scale
    elif args.op == "inverse":
        qp = aab_inverse(triple, cfg)
        t2 = qp.reconstruct()
        again = aab_forward(t2, cfg)
        results["residuals"] = {
            "operator": opnorm(t2 - t),
            "triple_a": opnorm(again.a - triple.a),
            "triple_b": opnorm(again.b - triple.b),
        }
        ok = all(v < 1e-9 * scale for v in results["residuals"].values())
    elif args.op == "bounded":
        bt = bounded_transform(t, cfg)
        back = from_bounded(bt.z, cfg)
        results["residuals"] = {
            "one_minus_zz_vs_a": opnorm(
                np.eye(n) - bt.z.conj().T @ bt.z - triple.a),
            "reconstruction": opnorm(back - t),
        }
        results["norm_z"] = bt.norm
        results["in_Z"] = bt.in_z
        results["in_Zd"] = bt.in_zd
        ok = (bt.in_z and bt.norm <= 1 + 1e-12
              and results["residuals"]["one_minus_zz_vs_a"] < 1e-9
              and results["residuals"]["reconstruction"] < 1e-8 * scale ** 2)
    elif args.op == "abs":
        at = absolute_value(triple, cfg)
        w = np.linalg.eigvalsh(0.5 * (at.b + at.b.conj().T))
        results["axioms_ok"] = ab_axioms_check(at, cfg).ok
        results["b_psd_min_eig"] = float(w.min())
        ok = results["axioms_ok"] and results["b_psd_min_eig"] > -1e-10
    elif args.op == "polar":
        v, absval = polar_decompose(t, cfg)
        results["residuals"] = {
            "factorization": opnorm(t - v @ absval),
            "abs_recovery": opnorm(absval - v.conj().T @ t),
        }
        ok = all(r < 1e-9 * scale for r in results["residuals"].values())
    elif args.op == "calc":
        f = parse_expression(args.f)
        beta = complex(args.beta)
        out = functional_calculus(triple, f, beta,
                                  np.random.default_rng(args.seed), cfg)
        results["f"] = args.f
        results["beta"] = beta
        results["residual_vs_a"] = opnorm(out - triple.a)
        ok = results["residual_vs_a"] < 1e-8
    return results, 0 if ok else 2


def cmd_toeplitz(args, cfg: Config) -> tuple:
    p = parse_poly(args.p, cfg)
    q = parse_poly(args.q, cfg)
    rep = affiliation_verdict(p, q, cfg)
    residuals = {}
    for n in sorted({args.N // 4, args.N // 2, args.N}):
        if n >= 8:
            tri = toeplitz_aab(p, q, n, cfg)
            residuals[str(n)] = tri.interior_residuals()
    out = rep.to_dict()
    out["p"] = [_c for _c in p]
    out["q"] = [_c for _c in q]
    out["r"] = [_c for _c in rep.data.r]
    out["residuals"] = residuals
    return out, 0


def cmd_experiment(args, cfg: Config) -> tuple:
    which = args.which
    if which == "counterdensity":
        ks = [int(k) for k in args.K.split(",")]
        rows = []
        for k in ks:
            pair = build_pair(k)
            rows.append({
                "K": k,
                "left": density_defect(pair, Side.LEFT, cfg),
                "star": density_defect(pair, Side.STAR, cfg),
            })
        control = {
            "K": ks[0],
            "star_identity_r": density_defect(
                build_pair(ks[0], identity_r=True), Side.STAR, cfg),
        }
        return {"sweep": rows, "control": control,
                "note": "trends at truncation are heuristic evidence; "
                        "density itself is an asymptotic statement"}, 0
    if which == "weyl":
        w = weyl_build(args.alpha, args.beta, args.M, args.L)
        rel = weyl_relations_check(w)
        w2 = weyl_build(args.alpha, args.beta, 2 * args.M, args.L)
        rel2 = weyl_relations_check(w2)
        floor = 8 * w.dt
        eps_seq = [floor * 4, floor * 2, floor]
        rows = weyl_limits_check(w, args.lam, eps_seq, cfg)
        return {
            "relations": {
                "M": args.M,
                "rel1_x": rel.rel1_x,
                "rel1_x_chain": rel.rel1_x_chain,
                "rel1_y_raw": rel.rel1_y,
                "rel1_y_damped": rel.rel1_y_damped,
                "rel2": rel.rel2,
                "rel2_star": rel.rel2_star,
                "sigma_quarter": rel.sigma_at(args.M // 4),
            },
            "relations_refined": {
                "M": 2 * args.M,
                "rel2": rel2.rel2,
                "rel2_star": rel2.rel2_star,
                "rel1_y_damped": rel2.rel1_y_damped,
            },
            "limits": [
                {"eps": r.eps, "cells": r.cells, "norm": r.norm_w,
                 "x_value": r.x_value, "x_error": r.x_error,
                 "y_abs": r.y_value, "yx_abs": r.yx_values}
                for r in rows
            ],
        }, 0
    if which == "resolvent":
        rng = np.random.default_rng(args.seed)
        if args.grid:
            from .algebras import constant_matrix, grid_model

            a, _, ma = grid_model(3)
            t = constant_matrix(a, np.array([[0, 0], [1, 0]], complex))
            rep = resolvent_affiliation_check(t, complex(args.lam_c), a, ma, cfg)
        else:
            from .algebras import matrix_algebra

            alg = matrix_algebra(args.n)
            t = random_operator(args.n, rng) + 3 * np.eye(args.n)
            rep = resolvent_affiliation_check(t, complex(args.lam_c), alg, None, cfg)
        return rep.to_dict(), 0
    if which == "matrix-symbols":
        t, pattern = oscillating_column_example()
        return matrix_symbol_op(t, pattern, cfg).to_dict(), 0
    raise ValueError(f"unknown experiment {which!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="graphreg",
        description="Numerical laboratory for graph-regular operators on "
                    "Hilbert C*-modules")
    ap.add_argument("--config", help="JSON file overriding numerical settings")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", help="write the report to this path")
    ap.add_argument("--quiet", action="store_true")
    # the same flags are accepted after the subcommand; SUPPRESS keeps the
    # subparser from clobbering values parsed by the main parser
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--json", default=argparse.SUPPRESS)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="cmd", required=True)

    a = sub.add_parser("analyze", help="classify a piecewise symbol",
                       parents=[common])
    g = a.add_mutually_exclusive_group(required=True)
    g.add_argument("symbol", nargs="?", help="symbol JSON file")
    g.add_argument("--catalog", choices=catalog.names())

    t = sub.add_parser("transform", help="run operator transforms",
                       parents=[common])
    t.add_argument("--op", required=True,
                   choices=["aab", "inverse", "bounded", "abs", "polar", "calc"])
    t.add_argument("--n", type=int, default=4)
    t.add_argument("--zero", action="store_true", help="use the zero operator")
    t.add_argument("--f", default="1/(1+abs(w)^2)",
                   help="function for --op calc")
    t.add_argument("--beta", default="0", help="constant part for --op calc")

    tp = sub.add_parser("toeplitz", help="rational-symbol Toeplitz analysis",
                        parents=[common])
    tp.add_argument("p", help="numerator polynomial, e.g. '1' or '1,0,2'")
    tp.add_argument("q", help="denominator polynomial, e.g. '1-z'")
    tp.add_argument("--N", type=int, default=256)

    e = sub.add_parser("experiment", help="run a numerical experiment",
                       parents=[common])
    e.add_argument("--which", required=True,
                   choices=["counterdensity", "weyl", "resolvent",
                            "matrix-symbols"])
    e.add_argument("--K", default="8,16,32")
    e.add_argument("--alpha", type=float, default=1.0)
    e.add_argument("--beta", type=float, default=-1.0)
    e.add_argument("--M", type=int, default=512)
    e.add_argument("--L", type=float, default=20.0)
    e.add_argument("--lam", type=float, default=0.0)
    e.add_argument("--lam-c", default="1j",
                   help="resolvent point for --which resolvent")
    e.add_argument("--n", type=int, default=3)
    e.add_argument("--grid", action="store_true",
                   help="use the 2x2 grid-model operator")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = Config.load(args.config) if args.config else DEFAULT
    except (OSError, ValueError, json.JSONDecodeError) as err:
        print(f"config error: {err}", file=sys.stderr)
        return 1
    handlers = {"analyze": cmd_analyze, "transform": cmd_transform,
                "toeplitz": cmd_toeplitz, "experiment": cmd_experiment}
    try:
        results, code = handlers[args.cmd](args, cfg)
    except (OSError, ValueError, json.JSONDecodeError,
            BadParameters, LambdaInSpectrum) as err:
        # bad inputs and violated preconditions, not failed verifications
        print(f"input error: {err}", file=sys.stderr)
        return 1
    except GraphregError as err:
        print(f"verified failure: {err}", file=sys.stderr)
        return 2
    except Exception as err:  # pragma: no cover - defensive
        print(f"internal error: {err}", file=sys.stderr)
        return 3
    emit(make_report(args, args.cmd, results, cfg), args)
    return code


if __name__ == "__main__":
    sys.exit(main())
