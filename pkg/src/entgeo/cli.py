"""Command-line front-end: analyze states, sweep families, compare tensor
products, check fixed-point witnesses.

Exit codes: 0 success, 2 expression/file parse error, 3 numerical
validation failure, 4 size cap exceeded.  All output is deterministic for
a fixed invocation; floats are serialized with their shortest round-trip
representation.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import comgeo, invsep, matcore, qstate
from .matcore import DimSplit

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NUMERIC = 3
EXIT_CAP = 4


class ExprError(ValueError):
    """Bad state/model expression or input file."""


class CapError(ValueError):
    """Instance exceeds a documented size cap."""


# ---------------------------------------------------------------------------
# Expression parsing


def parse_state_expr(text: str):
    """Parse a state expression to a DensityMatrix or a (BilinearState, models) pair.

    Grammar: "bell:phi+|phi-|psi+|psi-", "werner:P", "random:AxB:seed=N"
    (pure), "random:AxB:rank=R:seed=N" (mixed), "file:PATH", "prbox".
    """
    parts = text.split(":")
    head = parts[0]
    if head == "bell":
        if len(parts) != 2 or parts[1] not in qstate.BELL_KINDS:
            raise ExprError(
                f"bad bell expression {text!r}: expected bell:KIND with KIND in "
                f"{'/'.join(qstate.BELL_KINDS)}"
            )
        return qstate.bell_state(parts[1])
    if head == "werner":
        if len(parts) != 2:
            raise ExprError(f"bad werner expression {text!r}: expected werner:P")
        try:
            p = float(parts[1])
        except ValueError:
            raise ExprError(
                f"bad werner parameter {parts[1]!r} at position {len(head) + 1}"
            ) from None
        try:
            return qstate.werner_state(p)
        except ValueError as exc:
            raise ExprError(str(exc)) from None
    if head == "random":
        return _parse_random(text, parts)
    if head == "file":
        path = text[len("file:"):]
        if not path:
            raise ExprError("empty path in file: expression")
        try:
            with open(path) as fh:
                obj = json.load(fh)
        except OSError as exc:
            raise ExprError(f"cannot read state file {path!r}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ExprError(f"invalid JSON in {path!r}: {exc}") from None
        state = qstate.state_from_json(obj)
        if isinstance(state, qstate.PureState):
            state = qstate.density_from_pure(state)
        return state
    if head == "prbox":
        gbit = comgeo.gbit_model()
        return (comgeo.pr_box(), gbit, gbit)
    raise ExprError(f"unknown state expression {text!r}")


def _parse_random(text: str, parts: list[str]):
    if len(parts) < 3:
        raise ExprError(f"bad random expression {text!r}: expected random:AxB:seed=N")
    dims = parts[1].split("x")
    try:
        split = DimSplit(int(dims[0]), int(dims[1]))
    except (IndexError, ValueError):
        raise ExprError(
            f"bad dimension spec {parts[1]!r} at position {len(parts[0]) + 1}"
        ) from None
    opts = {}
    for chunk in parts[2:]:
        if "=" not in chunk:
            raise ExprError(f"bad option {chunk!r} in {text!r}")
        key, val = chunk.split("=", 1)
        try:
            opts[key] = int(val)
        except ValueError:
            raise ExprError(f"bad integer {val!r} for option {key!r}") from None
    unknown = set(opts) - {"seed", "rank"}
    if unknown:
        raise ExprError(f"unknown options {sorted(unknown)} in {text!r}")
    seed = opts.get("seed", 0)
    if "rank" in opts:
        return qstate.random_mixed(split, opts["rank"], seed)
    return qstate.density_from_pure(qstate.random_pure(split, seed))


def parse_model_expr(text: str) -> comgeo.ComModel:
    """Parse a model expression: "classical:n" or "gbit"."""
    parts = text.split(":")
    if parts[0] == "classical":
        if len(parts) != 2:
            raise ExprError(f"bad model expression {text!r}: expected classical:n")
        try:
            n = int(parts[1])
        except ValueError:
            raise ExprError(f"bad integer {parts[1]!r} in {text!r}") from None
        try:
            return comgeo.classical_model(n)
        except ValueError as exc:
            raise ExprError(str(exc)) from None
    if text == "gbit":
        return comgeo.gbit_model()
    raise ExprError(f"unknown model expression {text!r}")


# ---------------------------------------------------------------------------
# Commands


def _measure_values(rho: qstate.DensityMatrix, f_kind: str, norm_kind: str) -> dict:
    out = {
        "sm_frobenius": invsep.g_measure(
            rho, invsep.MeasureConfig("identity", "frobenius")
        ),
        "sm_trace": invsep.g_measure(rho, invsep.MeasureConfig("identity", "trace")),
    }
    key = f"{f_kind}_{norm_kind}"
    if key not in ("identity_frobenius", "identity_trace"):
        out[key] = invsep.g_measure(rho, invsep.MeasureConfig(f_kind, norm_kind))
    return out


def _quantum_report(rho, expr: str, tol: float, f_kind: str, norm_kind: str) -> dict:
    ma, mb = qstate.marginals(rho)
    pi_dist = matcore.norm(qstate.pi_map(rho).mat - rho.mat, "frobenius")
    singleton = invsep.StatePolytope((rho,), rho.split)
    return {
        "input": expr,
        "dim_a": rho.split.dim_a,
        "dim_b": rho.split.dim_b,
        "marginal_purity_a": qstate.purity(ma),
        "marginal_purity_b": qstate.purity(mb),
        "pi_distance": pi_dist,
        "measures": _measure_values(rho, f_kind, norm_kind),
        "ppt_min_eig": invsep.ppt_min_eigenvalue(rho),
        "verdicts": {
            "product": invsep.is_product(rho, tol),
            "css_singleton": invsep.is_css(singleton, max(tol, invsep.CSS_TOL)),
            "ppt": invsep.ppt_verdict(rho),
        },
    }


def _gpt_report(phi, a, b, expr: str, tol: float) -> dict:
    h = comgeo.max_tensor_constraints(a, b)
    in_max = comgeo.max_tensor_membership(phi, h, tol)
    report = {
        "input": expr,
        "max_tensor_member": in_max,
    }
    if not in_max:
        return report
    oa, ob = comgeo.gpt_marginals(phi, a, b)
    omin = comgeo.min_tensor(a, b)
    dist, _ = comgeo.hull_distance(phi.vector(), omin.vertices)
    separable = dist <= tol
    report.update(
        {
            "marginal_a": list(oa),
            "marginal_b": list(ob),
            "min_tensor_distance": dist,
            "verdicts": {"gpt_membership": "separable" if separable else "entangled"},
        }
    )
    if not separable:
        hvec, c, gap = comgeo.separating_hyperplane(phi.vector(), omin)
        report["infeasibility_certificate"] = {
            "hyperplane": list(hvec),
            "offset": c,
            "gap": gap,
        }
    return report


def cmd_analyze(args) -> int:
    parsed = parse_state_expr(args.expr)
    if isinstance(parsed, tuple):
        report = _gpt_report(*parsed, args.expr, args.tol)
    else:
        report = _quantum_report(parsed, args.expr, args.tol, args.f_kind, args.norm)
    print(json.dumps(report, indent=2))
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.family != "werner":
        raise ExprError(f"unknown sweep family {args.family!r}")
    if not (0.0 <= args.start <= args.stop <= 1.0) or args.steps < 2:
        raise ExprError(
            f"bad grid start={args.start} stop={args.stop} steps={args.steps}: "
            "need 0 <= start <= stop <= 1 and steps >= 2"
        )
    grid = np.linspace(args.start, args.stop, args.steps)
    lines = ["p,sm_frobenius,sm_trace,ppt_min_eig,verdict"]
    for p in grid:
        rho = qstate.werner_state(float(p))
        sm_f = invsep.g_measure(rho, invsep.MeasureConfig("identity", "frobenius"))
        sm_t = invsep.g_measure(rho, invsep.MeasureConfig("identity", "trace"))
        lines.append(
            f"{float(p)!r},{sm_f!r},{sm_t!r},"
            f"{invsep.ppt_min_eigenvalue(rho)!r},{invsep.ppt_verdict(rho)}"
        )
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_tensor(args) -> int:
    a = parse_model_expr(args.model_a)
    b = parse_model_expr(args.model_b)
    summary = {"model_a": args.model_a, "model_b": args.model_b, "which": args.which}
    omin = comgeo.min_tensor(a, b) if args.which in ("min", "both") else None
    if omin is not None:
        summary["min_vertices"] = len(omin.vertices)
    if args.which in ("max", "both"):
        h = comgeo.max_tensor_constraints(a, b)
        if h.ambient_dim > args.dim_cap:
            raise CapError(
                f"maximal tensor enumeration needs ambient dim <= {args.dim_cap}, "
                f"got {h.ambient_dim}"
            )
        omax = comgeo.enumerate_max_vertices(h, args.dim_cap)
        summary["max_vertices"] = len(omax.vertices)
        if omin is not None:
            summary["equal"] = comgeo.polytope_equal(omin, omax, args.tol)
            outside = [
                list(v)
                for v in omax.vertices
                if not comgeo.hull_membership(v, omin, args.tol)
            ]
            summary["max_vertices_outside_min"] = outside
    print(json.dumps(summary, indent=2))
    return EXIT_OK


def cmd_css_check(args) -> int:
    try:
        with open(args.polytope_file) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ExprError(f"cannot read {args.polytope_file!r}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ExprError(f"invalid JSON in {args.polytope_file!r}: {exc}") from None
    c = invsep.state_polytope_from_json(obj)
    image = invsep.lambda_tau(c)
    cf, imf = c.flat(), image.flat()
    residuals = [comgeo.hull_distance(v, cf)[0] for v in imf]
    residuals += [comgeo.hull_distance(v, imf)[0] for v in cf]
    worst = max(residuals)
    print(json.dumps({"css": worst <= args.tol, "distance_summary": worst}, indent=2))
    return EXIT_OK


# ---------------------------------------------------------------------------
# Entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="entgeo", description="geometric entanglement toolkit"
    )
    ap.add_argument("--seed", type=int, default=0, help="default RNG seed")
    ap.add_argument("--tol", type=float, default=1e-9, help="decision tolerance")
    ap.add_argument(
        "--format", choices=("json", "csv"), default="json", help="output format"
    )
    ap.add_argument(
        "--f-kind",
        choices=("identity", "abs", "square"),
        default="identity",
        help="entrywise/matrix function applied before the norm",
    )
    ap.add_argument(
        "--norm",
        choices=("frobenius", "trace", "max_abs"),
        default="frobenius",
        help="norm used by the measure",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report for one state")
    p.add_argument("expr", help="state expression, e.g. bell:phi+ or werner:0.35")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("sweep", help="parameter sweep over a state family (CSV)")
    p.add_argument("family", help="family name (werner)")
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--stop", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=101)
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("tensor", help="compare minimal/maximal tensor products")
    p.add_argument("model_a", help="model expression, e.g. classical:2 or gbit")
    p.add_argument("model_b")
    p.add_argument("--which", choices=("min", "max", "both"), default="both")
    p.add_argument("--dim-cap", type=int, default=10)
    p.set_defaults(fn=cmd_tensor)

    p = sub.add_parser("css-check", help="fixed-point check of a state polytope file")
    p.add_argument("polytope_file")
    p.set_defaults(fn=cmd_css_check)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ExprError as exc:
        print(f"entgeo: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapError as exc:
        print(f"entgeo: size cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, KeyError) as exc:
        print(f"entgeo: validation error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
