"""Command-line front end.

Exit codes: 0 ok, 2 a checked invariant was violated, 3 input not closed,
4 zero total area, 5 degenerate null sum, 64 usage or input error.
Data goes to stdout (or the file given by --out), diagnostics to stderr.
LORPOLY_TOLERANCE_SCALE multiplies every tolerance.
"""
from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import __version__, io, kernels, poisson, polyhedron, quantum
from .errors import DegenerateNullSum, LorpolyError, NotClosed, ZeroTotalArea

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_NOT_CLOSED = 3
EXIT_ZERO_AREA = 4
EXIT_DEGENERATE = 5
EXIT_USAGE = 64

RNG_NAME = "numpy.PCG64"
CLOSE_TOL = 1e-10
MIN_CASIMIR_CUTOFF = 8
FIT_CUTOFF = 256


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def tolerance_scale() -> float:
    raw = os.environ.get("LORPOLY_TOLERANCE_SCALE", "1.0")
    try:
        val = float(raw)
    except ValueError:
        raise UsageError(f"LORPOLY_TOLERANCE_SCALE={raw!r} is not a number") from None
    if not (math.isfinite(val) and val > 0):
        raise UsageError("LORPOLY_TOLERANCE_SCALE must be a positive finite number")
    return val


def _emit(args, payload: dict) -> None:
    path = getattr(args, "report", None)
    if path:
        io.write_json(path, payload)
    else:
        sys.stdout.write(io.dumps(payload))


def _echo(args) -> dict:
    d = {k: v for k, v in vars(args).items() if k != "func"}
    return {"command": args.command, "arguments": d, "lorpoly_version": __version__}


def face_table(c: polyhedron.Configuration) -> list[dict]:
    vec = c.vectors()
    areas = c.areas()
    u, t = c.u, c.t
    with np.errstate(divide="ignore", invalid="ignore"):
        lam = np.log(np.abs(u) / np.abs(t))
    return [{"J": vec[i], "area": areas[i], "lambda": lam[i]} for i in range(c.n)]


# ------------------------------------------------------------- subcommands

def cmd_algebra_check(args) -> int:
    scale = tolerance_scale()
    if args.scope in ("quantum", "all") and args.cutoff < 4:
        raise UsageError("--cutoff must be >= 4 when quantum relations are checked")
    out = _echo(args)
    ok = True
    if args.scope in ("classical", "all"):
        tol = 0.0
        results = poisson.verify_table(poisson.full_table())
        gl = poisson.gln_table_deviations(args.faces)
        entries = [{"lhs": e.lhs, "rhs": e.rhs, "group": e.group,
                    "expected": " + ".join(f"({c})*{n}" for c, n in e.expected) or "0",
                    "deviation": dev} for e, dev in results]
        classical_ok = all(r["deviation"] <= tol for r in entries) and all(v <= tol for v in gl.values())
        out["classical"] = {"tolerance": tol, "ok": classical_ok, "entries": entries,
                            "gl_N": {"n_faces": args.faces, "deviations": gl}}
        ok &= classical_ok
        if args.csv:
            io.write_csv(args.csv, ["lhs", "rhs", "group", "expected", "deviation"],
                         [[r["lhs"], r["rhs"], r["group"], r["expected"], r["deviation"]] for r in entries])
    if args.scope in ("quantum", "all"):
        tol = quantum.INTERIOR_TOL * scale
        cut = quantum.FockCutoff(args.cutoff)
        su = quantum.commutator_check(cut)
        gl = quantum.gl_n_quantum_check(args.faces, cut)
        out["quantum"] = {"su11": su.as_dict(tol), "gl_N": gl.as_dict(tol)}
        ok &= su.ok(tol) and gl.ok(tol)
    out["ok"] = ok
    _emit(args, out)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_quantum_check(args) -> int:
    args.scope = "quantum"
    args.csv = None
    return cmd_algebra_check(args)


def cmd_sample(args) -> int:
    scale = tolerance_scale()
    if args.n < 2:
        raise UsageError("-n must be >= 2")
    if not math.isfinite(args.area) or args.area == 0:
        raise UsageError("--area must be finite and non-zero")
    c = polyhedron.sample_polyhedron(args.n, args.area, args.seed)
    vec, res = polyhedron.closure_residual(c)
    tol = polyhedron.CLOSURE_TOL * scale
    report = {
        "command": "sample", "n": args.n, "area": args.area, "seed": args.seed,
        "rng": RNG_NAME, "numpy_version": np.__version__,
        "tolerances": {"closure": tol},
        "closure_residual": {"value": res, "summed_vector": vec.as_array(),
                             "certifies": "sum u_i t_i = 0 = Re sum conj(u_i) t_i"},
        "total_area": {"value": c.total_area(), "certifies": "area preserved by GL_N"},
        "faces": face_table(c),
    }
    text = io.dumps(io.config_to_dict(c, report))
    if args.out:
        io.atomic_write_text(args.out, text)
    else:
        sys.stdout.write(text)
    closed = res < tol * c.scale and abs(c.total_area() - args.area) < tol * c.scale
    return EXIT_OK if closed else EXIT_VIOLATION


def cmd_decompose(args) -> int:
    scale = tolerance_scale()
    c = io.read_config(args.input)
    g = polyhedron.decompose(c)
    rebuilt = polyhedron.gl_apply(g, polyhedron.squashed(c.n, c.total_area()))
    err = polyhedron.max_pair_distance(rebuilt, c)
    tol = polyhedron.CLOSURE_TOL * scale * max(1.0, math.sqrt(c.scale))
    out = _echo(args)
    out.update({
        "tolerances": {"reconstruction": tol},
        "total_area": c.total_area(),
        "M": g.m, "M_tilde": g.mtilde, "condition_number": g.cond,
        "reconstruction_residual": {"value": err, "certifies": "gl_apply(M, squashed) = input"},
    })
    if args.csv:
        io.write_csv(args.csv, ["i", "j", "M_ij"], io.matrix_rows(g.m))
    _emit(args, out)
    return EXIT_OK if err < tol else EXIT_VIOLATION


def cmd_close(args) -> int:
    scale = tolerance_scale()
    c = io.read_config(args.input)
    tau, lam, closed = polyhedron.close_configuration(c)
    _, res = polyhedron.closure_residual(closed)
    tol = CLOSE_TOL * scale
    out = _echo(args)
    out.update({
        "tolerances": {"closure": tol},
        "tau": tau,
        "lambda": {"a": lam.a, "b": lam.b, "det": lam.det},
        "closure_residual": {"value": res, "relative": res / closed.scale,
                             "certifies": "closed configuration"},
        "closed": io.config_to_dict(closed),
    })
    if args.out:
        io.write_config(args.out, closed)
    _emit(args, out)
    return EXIT_OK if res < tol * closed.scale else EXIT_VIOLATION


def cmd_quantum_casimir(args) -> int:
    if args.cutoff < MIN_CASIMIR_CUTOFF:
        raise UsageError(f"--cutoff must be >= {MIN_CASIMIR_CUTOFF}")
    if not math.isfinite(args.s):
        raise UsageError("-s must be finite")
    two_m = 2.0 * args.m
    if abs(two_m - round(two_m)) > 1e-12:
        raise UsageError("-m must be a half-integer")
    cut = quantum.FockCutoff(args.cutoff)
    v = quantum.casimir_eigenvector(args.s, args.m, cut)
    rows = list(io.coefficient_rows(v.coeffs))
    out = _echo(args)
    out.update({"normalization": v.normalization, "oscillators_swapped": v.swapped,
                "backend": kernels.BACKEND,
                "recursion_residual": {
                    "value": float(np.max(np.abs(quantum.eigen_residual(v)[:-1]), initial=0.0)),
                    "certifies": "E_cas alpha = s alpha below the last slot"}})
    if args.cutoff >= FIT_CUTOFF:
        slope, rate = quantum.asymptotic_check(v)
        out["fit"] = {"slope": slope, "phase_rate": rate,
                      "expected": {"slope": -0.5, "phase_rate": args.s}}
    if args.out:
        io.write_csv(args.out, ["n", "re", "im"], rows)
        _emit(args, out)
    else:
        sys.stdout.write(io.csv_text(["n", "re", "im"], rows))
        if args.report:
            io.write_json(args.report, out)
    return EXIT_OK


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lorpoly", description="Lorentzian polyhedra: spinor algebra, GL_N action, quantization.")
    p.add_argument("--version", action="version", version=f"lorpoly {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("algebra-check", help="verify bracket and commutator tables")
    s.add_argument("--scope", choices=["classical", "quantum", "all"], default="classical")
    s.add_argument("--cutoff", type=int, default=6, help="oscillator cutoff n_max (quantum scope)")
    s.add_argument("--faces", type=int, default=2, help="number of faces for the gl_N checks")
    s.add_argument("--report", help="write the JSON report here instead of stdout")
    s.add_argument("--csv", help="also export the classical table as CSV")
    s.set_defaults(func=cmd_algebra_check)

    s = sub.add_parser("sample", help="random closed configuration")
    s.add_argument("-n", type=int, required=True, help="number of faces")
    s.add_argument("-a", "--area", type=float, required=True, help="total area")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--out", help="output configuration file (default stdout)")
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("decompose", help="GL_N element mapping the squashed configuration to the input")
    s.add_argument("input")
    s.add_argument("--report")
    s.add_argument("--csv", help="export M row-major as CSV")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("close", help="rescale and boost a configuration until it closes")
    s.add_argument("input")
    s.add_argument("-o", "--out", help="write the closed configuration here")
    s.add_argument("--report")
    s.set_defaults(func=cmd_close)

    s = sub.add_parser("quantum-casimir", help="squeezing-operator eigenvector coefficients")
    s.add_argument("-s", type=float, required=True, help="eigenvalue of the squeezing operator")
    s.add_argument("-m", type=float, required=True, help="J3 eigenvalue (half-integer)")
    s.add_argument("--cutoff", type=int, required=True)
    s.add_argument("-o", "--out", help="CSV output (default stdout)")
    s.add_argument("--report")
    s.set_defaults(func=cmd_quantum_casimir)

    s = sub.add_parser("quantum-check", help="truncated Fock-space commutator suite")
    s.add_argument("--cutoff", type=int, default=6)
    s.add_argument("--faces", type=int, default=2)
    s.add_argument("--report")
    s.set_defaults(func=cmd_quantum_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotClosed as exc:
        print(f"lorpoly: not closed: {exc}", file=sys.stderr)
        return EXIT_NOT_CLOSED
    except ZeroTotalArea as exc:
        print(f"lorpoly: zero total area: {exc}", file=sys.stderr)
        return EXIT_ZERO_AREA
    except DegenerateNullSum as exc:
        print(f"lorpoly: degenerate null sum: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (UsageError, io.ConfigError) as exc:
        print(f"lorpoly: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LorpolyError as exc:
        print(f"lorpoly: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
