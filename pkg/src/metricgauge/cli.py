"""Command-line harness.

Every command reads JSON files and writes one JSON report (stdout or
``--output``).  Exit codes: 0 pass, 1 verification failure, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import math
import statistics
import sys
import time
from pathlib import Path

import numpy as np

from .errors import GeometricAlgebraError
from .frames import Frame, reciprocal, tetrad_bases, tetrad_components
from .gauge import factor_gauge
from .golden import DeformedAlgebra, relative_residual, verify_golden
from .metric import MetricExtensor, direct_clifford, direct_product
from .multivector import MAX_DIM, MIN_DIM, PRODUCTS, Multivector
from .orthometric import OrthoMetric, eta_composite
from .sampling import random_metric, random_multivector, trial_rng

CONVENTIONS = """\
conventions:
  A multivector file is {"n": n, "coeffs": [c_0, ..., c_(2^n - 1)]}.  The
  coefficient at index m multiplies the blade b_i1 ^ ... ^ b_ik whose indices
  are the set bits of m in increasing order; bit 0 is b1.  So for n = 3 the
  order is 1, b1, b2, b12, b3, b13, b23, b123.
  A metric or extensor file is {"n": n, "matrix": [[...], ...]} row-major;
  column j is the image of b_(j+1).  A metric may add "signature": [p, q],
  which is checked on load.  An eta file is either a matrix file or just
  {"signature": [p, q]}, meaning diag(+1 x p, -1 x q).
  Coordinate frames are {"n": n, "vectors": [[...], ...]}, one row per
  basis vector.  Tetrad tables are printed with rows = tetrad index and
  columns = coordinate index.
  Randomness: PCG64 seeded by SeedSequence([seed, trial]).
"""


class InputError(Exception):
    def __init__(self, source: str, field: str | None, message: str):
        where = source if field is None else f"{source}: field '{field}'"
        super().__init__(f"{where}: {message}")


# --- JSON ------------------------------------------------------------------


def _encode(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + _encode(v, indent, level + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, np.ndarray):
        return _encode(obj.tolist(), indent, level)
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return format(x, ".17g") if math.isfinite(x) else "null"
    return json.dumps(obj)


def dumps(obj, indent: int = 2) -> str:
    """JSON text with every float written to 17 significant digits."""
    return _encode(obj, indent, 0) + "\n"


def _load(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(path, None, f"cannot read file ({exc.strerror})") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(path, None, f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise InputError(path, None, "top-level value must be an object")
    return obj


def _dim(obj: dict, path: str) -> int:
    n = obj.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or not MIN_DIM <= n <= MAX_DIM:
        raise InputError(path, "n", f"must be an integer in [{MIN_DIM}, {MAX_DIM}], got {n!r}")
    return n


def _square(obj: dict, path: str, key: str, n: int) -> np.ndarray:
    rows = obj.get(key)
    if not isinstance(rows, list) or len(rows) != n:
        raise InputError(path, key, f"must be a list of {n} rows")
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise InputError(path, f"{key}[{i}]", f"must be a list of {n} numbers")
        for j, v in enumerate(row):
            if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
                raise InputError(path, f"{key}[{i}][{j}]", f"must be a finite number, got {v!r}")
    return np.array(rows, dtype=float)


def _pair(obj: dict, path: str, key: str, n: int) -> tuple[int, int]:
    sig = obj.get(key)
    if (
        not isinstance(sig, list)
        or len(sig) != 2
        or not all(isinstance(v, int) and not isinstance(v, bool) and v >= 0 for v in sig)
        or sum(sig) != n
    ):
        raise InputError(path, key, f"must be [p, q] with non-negative integers summing to {n}, got {sig!r}")
    return sig[0], sig[1]


def load_metric(path: str) -> MetricExtensor:
    obj = _load(path)
    n = _dim(obj, path)
    m = _square(obj, path, "matrix", n)
    try:
        g = MetricExtensor(m)
    except GeometricAlgebraError as exc:
        raise InputError(path, "matrix", str(exc)) from None
    if "signature" in obj and _pair(obj, path, "signature", n) != g.signature:
        raise InputError(path, "signature", f"declared {obj['signature']} but eigenvalues give {list(g.signature)}")
    return g


def load_eta(path: str | None, signature: list[int] | None, n: int) -> OrthoMetric:
    if path is not None:
        obj = _load(path)
        n_file = _dim(obj, path) if "n" in obj or "matrix" in obj else n
        if n_file != n:
            raise InputError(path, "n", f"eta is {n_file}-dimensional but the metric is {n}-dimensional")
        if "matrix" not in obj:
            p, _ = _pair(obj, path, "signature", n)
            return eta_composite(p, n)
        try:
            return OrthoMetric(_square(obj, path, "matrix", n))
        except GeometricAlgebraError as exc:
            raise InputError(path, "matrix", str(exc)) from None
    if signature is not None:
        p, q = signature
        if p < 0 or q < 0 or p + q != n:
            raise InputError("--eta-signature", None, f"must be two non-negative integers summing to {n}")
        return eta_composite(p, n)
    return None


def load_multivector(path: str, n: int | None = None) -> Multivector:
    obj = _load(path)
    dim = _dim(obj, path)
    coeffs = obj.get("coeffs")
    if not isinstance(coeffs, list) or len(coeffs) != 1 << dim:
        got = len(coeffs) if isinstance(coeffs, list) else type(coeffs).__name__
        raise InputError(path, "coeffs", f"must be a list of {1 << dim} numbers for n={dim}, got {got}")
    for i, v in enumerate(coeffs):
        if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
            raise InputError(path, f"coeffs[{i}]", f"must be a finite number, got {v!r}")
    if n is not None and dim != n:
        raise InputError(path, "n", f"multivector is {dim}-dimensional but the metric is {n}-dimensional")
    return Multivector(coeffs)


def load_frame(path: str, n: int) -> Frame:
    obj = _load(path)
    if _dim(obj, path) != n:
        raise InputError(path, "n", f"frame must be {n}-dimensional")
    vecs = _square(obj, path, "vectors", n)
    try:
        return reciprocal(vecs.T)
    except GeometricAlgebraError as exc:
        raise InputError(path, "vectors", str(exc)) from None


# --- commands --------------------------------------------------------------


def cmd_signature(args) -> tuple[dict, bool]:
    g = load_metric(args.metric)
    lam = g.eig.eigenvalues
    return {
        "command": "signature",
        "n": g.n,
        "signature": list(g.signature),
        "eigenvalues": lam,
        "eigenvectors": g.eig.eigenvectors.T,
        "degeneracy_margin": float(np.min(np.abs(lam))),
    }, True


def cmd_factor(args) -> tuple[dict, bool]:
    g = load_metric(args.metric)
    eta = load_eta(args.eta, args.eta_signature, g.n) or eta_composite(g.signature[0], g.n)
    try:
        f = factor_gauge(g, eta, sigma=args.sigma)
    except (GeometricAlgebraError, ValueError) as exc:
        raise InputError(args.metric, None, str(exc)) from None
    report = {"command": "factor", **f.to_json()}
    ok = f.residual <= args.tol * max(1.0, float(np.max(np.abs(g.matrix))))
    report["pass"] = ok
    return report, ok


def cmd_product(args) -> tuple[dict, bool]:
    g = load_metric(args.metric)
    x = load_multivector(args.x, g.n)
    y = load_multivector(args.y, g.n)
    target = g.inverse_metric if args.inverse else g
    report: dict = {"command": "product", "op": args.op, "route": args.route, "inverse": args.inverse}
    if args.route in ("direct", "both"):
        report["direct"] = direct_product(args.op, target, x, y).coeffs
    if args.route in ("golden", "both"):
        da = g.deformation
        out = da.inverse_product(args.op, x, y) if args.inverse else da.product(args.op, x, y)
        report["golden"] = out.coeffs
    ok = True
    if args.route == "both":
        diff = float(np.max(np.abs(np.asarray(report["direct"]) - np.asarray(report["golden"]))))
        report["diff"] = diff
        report["relative_diff"] = relative_residual(report["direct"], report["golden"])
        ok = report["relative_diff"] <= args.tol
        report["pass"] = ok
    first = np.asarray(report.get("direct", report.get("golden")))
    if not np.any(first[1:]):
        report["value"] = float(first[0])
    return report, ok


def cmd_tetrad(args) -> tuple[dict, bool]:
    g = load_metric(args.metric)
    eta = load_eta(args.eta, args.eta_signature, g.n) or eta_composite(g.signature[0], g.n)
    try:
        f = factor_gauge(g, eta)
    except GeometricAlgebraError as exc:
        raise InputError(args.metric, None, str(exc)) from None
    coord = load_frame(args.coord, g.n) if args.coord else Frame.standard(g.n)
    tf = tetrad_bases(f.h, eta)
    tc = tetrad_components(tf, coord, g)
    residuals = {"tetrad_lower": tf.residual_lower, "tetrad_upper": tf.residual_upper, **tc.residuals()}
    ok = all(r <= args.tol for r in residuals.values())
    return {
        "command": "tetrad",
        "index_convention": "rows = tetrad index alpha, columns = coordinate index i (0-based)",
        "n": g.n,
        "signature": list(g.signature),
        "h": f.h.matrix,
        "tetrad_vectors": tf.frame.vectors.T,
        "tetrad_reciprocal": tf.frame.reciprocal.T,
        "eps_lower_up": tc.eps_lower_up,
        "eps_lower_down": tc.eps_lower_down,
        "eps_upper_up": tc.eps_upper_up,
        "eps_upper_down": tc.eps_upper_down,
        "g_tetrad_lower": tc.g_tetrad_lower,
        "eta_lower": tc.eta_lower,
        "residuals": residuals,
        "pass": ok,
    }, ok


def cmd_verify(args) -> tuple[dict, bool]:
    g = load_metric(args.metric)
    eta = load_eta(args.eta, args.eta_signature, g.n)
    try:
        report = verify_golden(g, args.trials, args.seed, tol=args.tol, eta=eta, workers=args.workers)
    except GeometricAlgebraError as exc:
        raise InputError(args.metric, None, str(exc)) from None
    return {"command": "verify", **report.to_json()}, report.passed


def _median_time(fn, repeats: int) -> float:
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def cmd_bench(args) -> tuple[dict, bool]:
    rows = []
    for n in range(args.n_min, args.n_max + 1):
        rng = trial_rng(args.seed, n)
        g = random_metric(n, rng)
        x, y = random_multivector(n, rng), random_multivector(n, rng)
        setup = _median_time(lambda: DeformedAlgebra.for_metric(MetricExtensor(g.matrix)).hinv_ext, 1)
        da = DeformedAlgebra.for_metric(g)
        da.product("clifford", x, y)
        t_direct = _median_time(lambda: direct_clifford(g, x, y), args.repeats)
        t_golden = _median_time(lambda: da.product("clifford", x, y), args.repeats)
        rows.append(
            {
                "n": n,
                "direct_s": t_direct,
                "golden_s": t_golden,
                "golden_setup_s": setup,
                "speedup": t_direct / t_golden if t_golden > 0 else None,
            }
        )
    return {"command": "bench", "repeats": args.repeats, "seed": args.seed, "rows": rows}, True


# --- entry point -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="metricgauge",
        description="Metric Clifford algebras computed as gauge deformations of the Euclidean one.",
        epilog=CONVENTIONS,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--output", "-o", help="write the JSON report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_, epilog=CONVENTIONS, formatter_class=argparse.RawDescriptionHelpFormatter)
        p.add_argument("--metric", required=name != "bench", help="metric JSON file")
        return p

    def add_eta(p: argparse.ArgumentParser) -> None:
        grp = p.add_mutually_exclusive_group()
        grp.add_argument("--eta", help="eta JSON file (matrix or signature)")
        grp.add_argument("--eta-signature", type=int, nargs=2, metavar=("P", "Q"))

    add("signature", "eigenvalues and signature of a metric")

    p = add("factor", "gauge factorization g = h^T eta h")
    add_eta(p)
    p.add_argument("--sigma", type=float, nargs="+", help="optional +-1 entries for d_sigma")
    p.add_argument("--tol", type=float, default=1e-9)

    p = add("product", "one g-product by the direct route, the gauge route, or both")
    p.add_argument("--op", choices=PRODUCTS, default="clifford")
    p.add_argument("--x", required=True, help="left multivector JSON file")
    p.add_argument("--y", required=True, help="right multivector JSON file")
    p.add_argument("--route", choices=("direct", "golden", "both"), default="both")
    p.add_argument("--inverse", action="store_true", help="use the inverse metric g^-1")
    p.add_argument("--tol", type=float, default=1e-9)

    p = add("tetrad", "tetrad bases and component tables")
    add_eta(p)
    p.add_argument("--coord", help="coordinate frame JSON file (default: standard basis)")
    p.add_argument("--tol", type=float, default=1e-9)

    p = add("verify", "check every gauge-transport identity on random inputs")
    add_eta(p)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--workers", type=int, default=1)

    p = add("bench", "timing of direct versus gauge-route Clifford products")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    return parser


COMMANDS = {
    "signature": cmd_signature,
    "factor": cmd_factor,
    "product": cmd_product,
    "tetrad": cmd_tetrad,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


def _validate(args) -> None:
    if getattr(args, "tol", 1.0) <= 0:
        raise InputError("--tol", None, "must be positive")
    if getattr(args, "trials", 1) < 1:
        raise InputError("--trials", None, "must be >= 1")
    if getattr(args, "workers", 1) < 1:
        raise InputError("--workers", None, "must be >= 1")
    if args.command == "bench":
        if not MIN_DIM <= args.n_min <= args.n_max <= MAX_DIM:
            raise InputError("--n-min/--n-max", None, f"need {MIN_DIM} <= n-min <= n-max <= {MAX_DIM}")
        if args.repeats < 1:
            raise InputError("--repeats", None, "must be >= 1")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _validate(args)
        report, ok = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = dumps(report)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
