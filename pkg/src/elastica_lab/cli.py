"""Command-line front end.

Subcommands:
    simulate     integrate the fourth-order arclength dynamics, write a CSV trace
    hamiltonian  integrate the constrained Hamiltonian flow, write a CSV trace
    reconstruct  scalar reduction + conservation-law reconstruction, CSV trace
    reduce       curvature/torsion scalar reduction only, CSV scalar trace
    closed       length-constrained scalar run with its quadrature residual
    invariants   audit a stored trace, write a JSON residual report
    compare      sup-norm position discrepancy between two traces

Exit codes: 0 success, 1 invariant violation, 2 input error, 3 numeric failure.

Config is JSON, either a raw jet
    {"x0": [..], "xdot0": [..], "xddot0": [..], "xdddot0": [..]}
(auto-projected onto the arclength submanifold, with a warning if it was off)
or frame data
    {"kappa0": r, "kappa_dot0": r, "tau0": r, "x0": [..],
     "frame": "standard" | [[T],[N],[B]]}.

Curve traces are CSV with header
    s,x1,x2,x3,xd1,xd2,xd3,xdd1,xdd2,xdd3,xddd1,xddd2,xddd3,kappa,tau
and floats at 17 significant digits (lossless round trip).
"""

import argparse
import json
import sys

import numpy as np

from . import diagnostics, hamiltonian, lagrangian, ode, reconstruct, scalar
from .closed import angular_momentum_j, constrained_scalar_rhs, foltinek_invariant
from .frenet import KAPPA_MIN, jet_from_frame
from .geometry import STANDARD_FRAME, CurveTrace, FrenetFrame, JetState, vec3

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_NUMERIC = 3

TRACE_HEADER = (
    "s,x1,x2,x3,xd1,xd2,xd3,xdd1,xdd2,xdd3,xddd1,xddd2,xddd3,kappa,tau"
)


class InputError(Exception):
    pass


def _fmt(v):
    return f"{v:.17g}"


def load_config(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise InputError("config must be a JSON object")
    return cfg


def initial_jet(cfg):
    """Build the initial arclength jet from a config dict."""
    try:
        if "kappa0" in cfg:
            kappa0 = float(cfg["kappa0"])
            kappa_dot0 = float(cfg.get("kappa_dot0", 0.0))
            tau0 = float(cfg.get("tau0", 0.0))
            x0 = vec3(cfg.get("x0", [0.0, 0.0, 0.0]))
            frame = cfg.get("frame", "standard")
            if frame == "standard":
                T, N, B = STANDARD_FRAME
            else:
                T, N, B = (vec3(row) for row in frame)
            if kappa0 <= KAPPA_MIN:
                return JetState(0.0, x0, T, np.zeros(3), np.zeros(3)), False
            f = FrenetFrame(T=T, N=N, B=B, kappa=kappa0, tau=tau0)
            return jet_from_frame(x0, f, kappa_dot0), False
        jet = JetState(
            0.0,
            vec3(cfg["x0"]),
            vec3(cfg["xdot0"]),
            vec3(cfg["xddot0"]),
            vec3(cfg["xdddot0"]),
        )
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"bad config: {exc}") from exc
    projected = False
    if not jet.is_arclength():
        jet = lagrangian.project_arclength(jet)
        projected = True
    return jet, projected


def _grid(step, length):
    if step <= 0.0 or length <= 0.0:
        raise InputError("step and length must be positive")
    count = int(round(length / step))
    if count < 1 or abs(count * step - length) > 1e-9 * max(1.0, length):
        raise InputError("length must be an integer multiple of step")
    return count


def write_trace(trace, path):
    kappa, _, tau = diagnostics.curvature_arrays(trace)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(TRACE_HEADER + "\n")
        for i, s in enumerate(trace.samples):
            row = [s.t, *s.x, *s.xdot, *s.xddot, *s.xdddot, kappa[i], tau[i]]
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def read_trace(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            header = fh.readline().strip()
            if header != TRACE_HEADER:
                raise InputError(f"unexpected trace header in {path}")
            rows = []
            for line in fh:
                line = line.strip()
                if line:
                    rows.append([float(tok) for tok in line.split(",")])
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read trace {path}: {exc}") from exc
    if not rows:
        raise InputError(f"empty trace {path}")
    if any(len(r) != 15 for r in rows):
        raise InputError(f"malformed row in {path}")
    data = np.array(rows)
    if len(rows) == 1:
        step = 1.0
    else:
        step = data[1, 0] - data[0, 0]
        if step <= 0.0:
            raise InputError(f"non-increasing parameter column in {path}")
    samples = [JetState(r[0], r[1:4], r[4:7], r[7:10], r[10:13]) for r in data]
    try:
        return CurveTrace(step=step, samples=samples, metadata={"source": path})
    except ValueError as exc:
        raise InputError(f"bad trace grid in {path}: {exc}") from exc


def _write_scalar_csv(path, header, columns):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(header + "\n")
        for row in zip(*columns):
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def cmd_simulate(args):
    cfg = load_config(args.config)
    jet, projected = initial_jet(cfg)
    if projected:
        print("warning: initial jet was off the arclength submanifold; projected", file=sys.stderr)
    count = _grid(args.step, args.length)
    try:
        trace = lagrangian.integrate_elastica(jet, args.step, count, method=args.method)
    except (ode.IntegrationError, ValueError) as exc:
        print(f"integration failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    write_trace(trace, args.out)
    print(f"wrote {len(trace)} samples to {args.out}")
    return EXIT_OK


def cmd_hamiltonian(args):
    cfg = load_config(args.config)
    jet, projected = initial_jet(cfg)
    if projected:
        print("warning: initial jet was off the arclength submanifold; projected", file=sys.stderr)
    count = _grid(args.step, args.length)
    ps0 = hamiltonian.legendre(jet)
    try:
        phase_trace = hamiltonian.integrate_flow(
            ps0, args.step, count, method=args.method, project=args.project == "on"
        )
        jets = [hamiltonian.arclength_jet_from_phase(ps) for ps in phase_trace.samples]
    except (ode.IntegrationError, hamiltonian.NotInRangeError, ValueError) as exc:
        print(f"integration failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    trace = CurveTrace(step=args.step, samples=jets, metadata=phase_trace.metadata)
    write_trace(trace, args.out)
    print(f"wrote {len(trace)} samples to {args.out}")
    return EXIT_OK


def cmd_reconstruct(args):
    cfg = load_config(args.config)
    jet, projected = initial_jet(cfg)
    if projected:
        print("warning: initial jet was off the arclength submanifold; projected", file=sys.stderr)
    count = _grid(args.step, args.length)
    try:
        trace, branch = reconstruct.reduce_and_reconstruct(jet, args.step, count)
    except (ode.IntegrationError, reconstruct.BranchError, ValueError) as exc:
        print(f"reconstruction failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    write_trace(trace, args.out)
    print(f"wrote {len(trace)} samples to {args.out} (branch: {branch.value})")
    return EXIT_OK


def cmd_reduce(args):
    cfg = load_config(args.config)
    jet, projected = initial_jet(cfg)
    if projected:
        print("warning: initial jet was off the arclength submanifold; projected", file=sys.stderr)
    count = _grid(args.step, args.length)
    cs = lagrangian.conserved_momenta(jet)
    c, _ = scalar.constants_from_momenta(cs)
    kappa0 = float(np.linalg.norm(jet.xddot))
    if kappa0 <= KAPPA_MIN:
        print("straight line: nothing to reduce", file=sys.stderr)
        return EXIT_INPUT
    kappa_dot0 = float(np.dot(jet.xddot, jet.xdddot)) / kappa0
    try:
        s, kappa, kappa_dot = scalar.integrate_scalar(
            kappa0, kappa_dot0, c, args.step, count
        )
    except (ode.IntegrationError, scalar.SingularTorsionError) as exc:
        print(f"scalar integration failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    tau = np.where(
        np.abs(kappa) > KAPPA_MIN, c / np.maximum(np.abs(kappa), KAPPA_MIN) ** 2, 0.0
    )
    _write_scalar_csv(args.out, "s,kappa,kappa_dot,tau", (s, kappa, kappa_dot, tau))
    print(f"wrote {len(s)} samples to {args.out}")
    return EXIT_OK


def cmd_closed(args):
    cfg = load_config(args.config)
    try:
        kappa0 = float(cfg["kappa0"])
        kappa_dot0 = float(cfg.get("kappa_dot0", 0.0))
        tau0 = float(cfg.get("tau0", 0.0))
        lam = float(cfg.get("lambda", 0.0))
    except (KeyError, TypeError, ValueError) as exc:
        print(f"bad config: {exc}", file=sys.stderr)
        return EXIT_INPUT
    count = _grid(args.step, args.length)
    j = angular_momentum_j(kappa0, tau0)
    c2 = (
        4.0 * kappa_dot0**2
        + (lam - kappa0**2) ** 2
        + (j**2 / (4.0 * kappa0**2) if j != 0.0 else 0.0)
    )
    c_norm = float(np.sqrt(c2))

    def rhs(t, y):
        return np.array(constrained_scalar_rhs(y[0], y[1], lam, j))

    try:
        s, ys = ode.integrate(rhs, np.array([kappa0, kappa_dot0]), args.step, count)
    except ode.IntegrationError as exc:
        print(f"constrained scalar integration failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    kappa, kappa_dot = ys[:, 0], ys[:, 1]
    tau = np.where(np.abs(kappa) > KAPPA_MIN, -j / (4.0 * np.maximum(np.abs(kappa), KAPPA_MIN) ** 2), 0.0)
    residual = np.array(
        [
            foltinek_invariant(k, kd, t, lam, c_norm, j)
            for k, kd, t in zip(kappa, kappa_dot, tau)
        ]
    )
    _write_scalar_csv(
        args.out,
        "s,kappa,kappa_dot,foltinek_residual",
        (s, kappa, kappa_dot, residual),
    )
    print(
        f"wrote {len(s)} samples to {args.out}; max |foltinek residual| = "
        f"{np.max(np.abs(residual)):.3e}"
    )
    return EXIT_OK


def cmd_invariants(args):
    try:
        trace = read_trace(args.trace)
    except InputError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    report, ok = diagnostics.invariant_report(trace)
    with open(args.report, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote report to {args.report}: {'ok' if ok else 'VIOLATIONS ' + str(report['violations'])}")
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_compare(args):
    try:
        trace_a = read_trace(args.trace_a)
        trace_b = read_trace(args.trace_b)
        sup = diagnostics.position_discrepancy(trace_a, trace_b)
    except (InputError, ValueError) as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    print(f"sup position discrepancy: {_fmt(sup)}")
    return EXIT_OK if sup <= args.tol else EXIT_VIOLATION


def build_parser():
    parser = argparse.ArgumentParser(
        prog="elastica-lab",
        description="Curvature-squared elastic curves as a dynamical system.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_run(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="JSON initial-data file")
        p.add_argument("--out", required=True, help="output CSV path")
        p.add_argument("--step", type=float, default=1e-3)
        p.add_argument("--length", type=float, default=10.0)
        p.add_argument("--method", choices=("rk4", "rk45"), default="rk4")
        p.add_argument("--project", choices=("on", "off"), default="off")
        p.set_defaults(func=func)
        return p

    add_run("simulate", cmd_simulate, "integrate the fourth-order arclength dynamics")
    add_run("hamiltonian", cmd_hamiltonian, "integrate the constrained Hamiltonian flow")
    add_run("reconstruct", cmd_reconstruct, "scalar reduction + reconstruction")
    add_run("reduce", cmd_reduce, "curvature/torsion scalar reduction only")
    add_run("closed", cmd_closed, "length-constrained scalar run + quadrature residual")

    p = sub.add_parser("invariants", help="audit a stored trace")
    p.add_argument("--trace", required=True)
    p.add_argument("--report", required=True, help="output JSON path")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("compare", help="sup-norm position discrepancy of two traces")
    p.add_argument("trace_a")
    p.add_argument("trace_b")
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
