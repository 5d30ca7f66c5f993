"""``pfj`` command line: ``pfj check`` and ``pfj compute``.

Exit codes: 0 pass, 1 check failure, 2 config/usage error,
3 numerical-singularity abort.
"""
import argparse
import json
from itertools import product
import math
import sys

import numpy as np

from . import checks, config, kernels
from .ensemble import moment_matrix
from .errors import ResolventSingular, Singular, SingularComplementMoment

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SINGULAR = 0, 1, 2, 3
JANOSSY_MAX_ROWS = 100_000


def _float(x):
    x = float(x)
    if not math.isfinite(x):
        return "null"
    s = f"{x:.17g}"
    return s if any(c in s for c in ".en") else s + ".0"


def number(z):
    """Real scalars as floats; complex ones as ``{"re": .., "im": ..}``."""
    z = complex(z)
    if abs(z.imag) <= 1e-12 * max(1.0, abs(z.real)):
        return float(z.real)
    return {"re": float(z.real), "im": float(z.imag)}


def dumps(obj, indent=0):
    """JSON text with every float written to 17 significant digits."""
    pad, inner = "  " * indent, "  " * (indent + 1)
    if obj is None or isinstance(obj, bool):
        return {None: "null", True: "true", False: "false"}[obj]
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return dumps(number(obj), indent)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{dumps(str(k))}: {dumps(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
            return "[" + ", ".join(dumps(v, indent + 1) for v in seq) + "]"
        return "[\n" + ",\n".join(inner + dumps(v, indent + 1) for v in seq) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _matrix(A):
    return [[number(v) for v in row] for row in np.asarray(A)]


def _interval(cfg, override):
    if override is not None:
        base = [int(t) for t in override.split(",") if t.strip()]
    else:
        base = cfg.interval if cfg.interval is not None else []
    if any(not 0 <= i < cfg.base_size for i in base):
        raise config.ConfigError(f"interval indices must lie in [0, {cfg.base_size})")
    return base, cfg.lift(base)


def compute_outputs(cfg, outputs, interval=None):
    """Requested quantities as a JSON-ready dict (deterministic)."""
    spec = cfg.spec
    mom = moment_matrix(spec)
    K = kernels.correlation_kernel(spec, mom)
    base_I, I = _interval(cfg, interval)
    out = {"config": cfg.name, "family": cfg.family, "n": spec.n, "m": spec.m}
    if "partition" in outputs:
        out["partition"] = {"Z": number(mom.Z), "pf_M": number(mom.pf_M), "M": _matrix(mom.M)}
    if "rho" in outputs:
        rows = []
        total = 0j
        for x in range(spec.m):
            r = kernels.correlation_function(K, [x])
            total += r * spec.lam[x]
            rows.append({"point": x, "coord": float(spec.space.coords[x]),
                         "weight": float(spec.lam[x]), "rho1": number(r)})
        out["rho"] = {"rho1": rows, "sum_rho1_lambda": number(total)}
    if "kernel" in outputs:
        try:
            L = kernels.janossy_kernel_direct(spec, kernels.interval_matrices(spec, I))
            route = "direct"
        except SingularComplementMoment:
            L = kernels.janossy_kernel_resolvent(K, I)
            route = "resolvent"
        entries = [{"x": x, "y": y, "L": _matrix(L.block(x, y))} for x in I for y in I]
        out["kernel"] = {"interval": base_I, "points": I, "route": route, "entries": entries}
    if "janossy" in outputs:
        g = kernels.gap_probability(K, I)
        try:
            L = kernels.janossy_kernel_resolvent(K, I)
            route = "resolvent"

            def jan(pts):
                return kernels.janossy_density(L, g, pts)
        except ResolventSingular:
            route = "pfaffian-minor"

            def jan(pts):
                return kernels.janossy_density_from_correlation(K, I, pts)
        tables = {"0": number(g)}
        for k in range(1, min(2 * spec.n, len(I) + 1) + 1):
            if len(I) ** k > JANOSSY_MAX_ROWS:
                break
            tables[str(k)] = [{"points": list(pts), "value": number(jan(pts))}
                              for pts in product(I, repeat=k)]
        out["janossy"] = {"interval": base_I, "points": I, "route": route, "const": number(g),
                          "tables": tables}
    if "gap" in outputs:
        out["gap"] = {"interval": base_I, "points": I,
                      "value": kernels.gap_probability(K, I),
                      "fredholm_pfaffian": number(kernels.fredholm_pfaffian(K, I))}
    return out


def cmd_check(args):
    cfg = config.load(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    results = checks.run_checks(cfg, tol=args.tol)
    passed = all(r.ok for r in results)
    report = {"config": cfg.name, "seed": cfg.seed, "passed": passed,
              "checks": [r.as_dict() for r in results]}
    sys.stdout.write(dumps(report) + "\n")
    return EXIT_OK if passed else EXIT_FAIL


def cmd_compute(args):
    cfg = config.load(args.config)
    outputs = [args.output] if args.output else cfg.outputs
    result = compute_outputs(cfg, outputs, args.interval)
    with open(args.out, "w") as fh:
        fh.write(dumps(result) + "\n")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pfj", description="Janossy densities of finite pfaffian ensembles")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run the verification suite on a config")
    p.add_argument("--config", required=True,
                   help="config file or bundled name (%s)" % ", ".join(config.bundled_names()))
    p.add_argument("--tol", type=float, default=None, help="override every tolerance")
    p.add_argument("--seed", type=int, default=None, help="seed for random instances")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("compute", help="write requested quantities as JSON")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--output", choices=config.OUTPUTS, default=None)
    p.add_argument("--interval", default=None,
                   help="comma-separated indices (base indices for doubled families)")
    p.set_defaults(func=cmd_compute)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (config.ConfigError, IndexError, OSError) as exc:
        print(f"pfj: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Singular as exc:
        print(f"pfj: numerical singularity: {exc}", file=sys.stderr)
        return EXIT_SINGULAR


if __name__ == "__main__":
    sys.exit(main())
