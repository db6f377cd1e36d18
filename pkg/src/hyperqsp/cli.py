"""Command-line interface: gen | eval | synth | modes | fit.

Protocols are stored as versioned JSON; sweeps and fit tables as CSV whose
first line is ``# `` followed by a JSON metadata object. Floats are written
as shortest round-trip decimals, so identical inputs give identical bytes.

Exit codes: 0 success, 1 a requested check failed, 2 input or domain error,
3 infeasible synthesis, 4 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from pathlib import Path

import numpy as np

from . import __version__, config
from .algebra import BOOST, CIRCULAR, CONVENTIONS, HYPERBOLIC, SU11_TO_SU2, PhaseList, Signal, eval_protocol, substitute_picture
from .approx import FitDomain, fit_target, is_monotone_non_increasing
from .errors import DomainError, HyperQSPError, InfeasibleError, InvariantError
from .modes import (AUTO, commutator_defect, composite_mode_map, low_gain_effective, staged_amplitude_exact,
                    uniform_stages)
from .polyring import EVEN, ODD, ParityPoly, eval_poly, parity_of, protocol_to_pair
from .protocols import BOUND_KINDS, CHEBYSHEV_LOWER, SECANT, SIMPLE, bound, gen_constant, gen_monotone_amplify, gen_trivial
from .synthesis import synthesize

SCHEMA_VERSION = 1
KINDS = ("explicit", "trivial", "monotone", "constant")
CHECK_TOL = 1e-9
EXIT_CHECK_FAILED = 1

_ANGLE = re.compile(r"^\s*([+-]?)\s*(\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?\s*$")

FIT_TARGETS = {
    "exp": np.exp,
    "cosh": np.cosh,
    "sinh": np.sinh,
    "sqrt": np.sqrt,
    "log": np.log,
    "inv": lambda x: 1.0 / x,
}


def parse_angle(text: str) -> float:
    """Decimal radians, or a multiple of pi such as 'pi/3', '-2pi/3', '0.5*pi'."""
    m = _ANGLE.match(text)
    if m:
        sign, mult, den = m.groups()
        val = (float(mult) if mult not in ("", ".") else 1.0) * math.pi
        if den:
            val /= float(den)
        return -val if sign == "-" else val
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}") from None


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


def _angle_list(text: str) -> list[float]:
    return [parse_angle(t) for t in text.split(",") if t.strip()]


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _num(v: float) -> str:
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return ""
    return repr(float(v))


# protocol files

def build_protocol(kind: str, params: dict) -> PhaseList:
    if kind == "trivial":
        return gen_trivial(int(params["n"]))
    if kind == "monotone":
        return gen_monotone_amplify(int(params["level"]))
    if kind == "constant":
        return gen_constant(int(params["n"]), float(params["phi"]))
    if kind == "explicit":
        return PhaseList(tuple(params["phases"]), params.get("convention", BOOST))
    raise DomainError(f"unknown protocol kind {kind!r}; expected one of {KINDS}")


def protocol_document(name: str, kind: str, params: dict, signal_kind: str) -> dict:
    if signal_kind not in (CIRCULAR, HYPERBOLIC):
        raise DomainError(f"unknown signal kind {signal_kind!r}")
    pl = build_protocol(kind, params)
    return {
        "schema_version": SCHEMA_VERSION,
        "name": name,
        "kind": kind,
        "params": params,
        "signal_kind": signal_kind,
        "convention": pl.convention,
        "n_boosts": pl.n_boosts,
        "phases": list(pl.phases),
    }


def load_protocol(path: str) -> tuple[dict, PhaseList]:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError(f"cannot read protocol file {path}: {exc}") from None
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise DomainError(f"unsupported protocol schema version {doc.get('schema_version')!r}")
    try:
        kind, params = doc["kind"], doc["params"]
    except KeyError as exc:
        raise DomainError(f"protocol file missing field {exc}") from None
    if doc.get("signal_kind", HYPERBOLIC) not in (CIRCULAR, HYPERBOLIC):
        raise DomainError(f"unknown signal kind {doc.get('signal_kind')!r}")
    pl = build_protocol(kind, params)
    stored = doc.get("phases")
    if stored is not None:
        if len(stored) != len(pl) or any(abs(a - b) > 1e-12 for a, b in zip(stored, pl.phases)):
            raise DomainError("stored phases disagree with the protocol parameters")
    return doc, pl


# subcommands

def cmd_gen(args) -> int:
    if args.kind == "trivial":
        _need(args, "n")
        params = {"n": args.n}
    elif args.kind == "monotone":
        _need(args, "level")
        params = {"level": args.level}
    elif args.kind == "constant":
        _need(args, "n")
        _need(args, "phi")
        params = {"n": args.n, "phi": args.phi}
    else:
        _need(args, "phases")
        params = {"phases": args.phases, "convention": args.convention}
    name = args.name or f"{args.kind}"
    _emit(_dumps(protocol_document(name, args.kind, params, args.signal_kind)), args.out)
    return 0


def _need(args, field: str) -> None:
    if getattr(args, field) is None:
        raise DomainError(f"--{field} is required for kind {args.kind!r}")


def _grid(args, signal_kind: str) -> np.ndarray:
    if args.x:
        xs = np.asarray(sorted(set(args.x)), dtype=float)
    elif args.grid:
        parts = args.grid.split(":")
        if len(parts) != 3:
            raise DomainError("--grid expects XMIN:XMAX:STEPS")
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
        if not lo < hi:
            raise DomainError(f"grid needs x_min < x_max, got {lo} and {hi}")
        if steps < 2:
            raise DomainError("grid needs at least 2 steps")
        xs = np.linspace(lo, hi, steps)
    else:
        raise DomainError("give --grid XMIN:XMAX:STEPS or at least one --x")
    if signal_kind == HYPERBOLIC:
        if xs[0] < 1.0 or xs[-1] > config.x_max():
            raise DomainError(f"hyperbolic grid must lie in [1, {config.x_max()!r}]")
    elif xs[0] < -1.0 or xs[-1] > 1.0:
        raise DomainError("circular grid must lie in [-1, 1]")
    return xs


def _bound_kinds(text: str | None) -> list[str]:
    if not text:
        return []
    kinds = list(BOUND_KINDS) if text == "all" else [k.strip() for k in text.split(",") if k.strip()]
    for k in kinds:
        if k not in BOUND_KINDS:
            raise DomainError(f"unknown bound {k!r}; expected {','.join(BOUND_KINDS)} or all")
    return kinds


def _bound_value(kind: str, n: int, phi: float, x: float) -> float:
    crit = 1.0 / math.cos(phi)
    if kind in (SECANT, SIMPLE) and x > crit:
        return math.nan
    if kind == CHEBYSHEV_LOWER and x < crit:
        return math.nan
    return bound(kind, n, phi, x)


def _bound_holds(kind: str, value: float, p_abs2: float) -> bool:
    if math.isnan(value) or math.isinf(value):
        return True
    slack = CHECK_TOL * max(1.0, abs(value))
    if kind == SECANT:
        return p_abs2 <= value + slack
    if kind == SIMPLE:
        return math.sqrt(p_abs2) <= value + slack
    return p_abs2 >= value - slack


def cmd_eval(args) -> int:
    doc, pl = load_protocol(args.protocol)
    signal_kind = doc.get("signal_kind", HYPERBOLIC)
    xs = _grid(args, signal_kind)
    kinds = _bound_kinds(args.bounds)
    if kinds:
        if doc["kind"] != "constant" or signal_kind != HYPERBOLIC:
            raise DomainError("bounds are defined for hyperbolic constant-phase protocols only")
        n, phi = int(doc["params"]["n"]), float(doc["params"]["phi"])
    dps = None
    if args.precision == "extended":
        beta = math.acosh(float(np.max(np.abs(xs)))) if signal_kind == HYPERBOLIC else 0.0
        dps = config.auto_dps(max(pl.n_boosts, 1), max(beta, 1.0))
    rows, failures = [], []
    for x in xs:
        m = eval_protocol(pl, Signal.at(float(x), signal_kind), dps=dps)
        p = complex(m.a11)
        p_abs2 = p.real * p.real + p.imag * p.imag
        row = [float(x), p.real, p.imag, p_abs2]
        for k in kinds:
            b = _bound_value(k, n, phi, float(x))
            if not _bound_holds(k, b, p_abs2):
                failures.append((k, float(x)))
            row.append(b)
        rows.append(row)
    meta = {
        "tool": "hyperqsp",
        "version": __version__,
        "protocol": {k: doc[k] for k in ("name", "kind", "params", "signal_kind") if k in doc},
        "grid": args.grid if not args.x else {"points": [float(v) for v in xs]},
        "precision": args.precision,
        "bounds": kinds,
        "checks_passed": not failures,
    }
    columns = ["x", "re_p", "im_p", "abs_p2"] + kinds
    if args.format == "json":
        text = _dumps({"metadata": meta, "columns": columns, "rows": rows})
    else:
        lines = ["# " + json.dumps(meta, sort_keys=True), ",".join(columns)]
        lines += [",".join(_num(v) for v in r) for r in rows]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    if args.figure:
        from .plotting import plot_sweep

        data = np.asarray(rows, dtype=float)
        bounds = {k: data[:, 4 + i] for i, k in enumerate(kinds)}
        if SIMPLE in bounds:
            bounds[SIMPLE] = bounds[SIMPLE] ** 2
        plot_sweep(data[:, 0], data[:, 3], bounds, args.figure, title=doc.get("name", ""))
    if failures:
        k, x = failures[0]
        print(f"check failed: {k} bound violated at x={x!r} ({len(failures)} points)", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return 0


def cmd_synth(args) -> int:
    coeffs = np.asarray(args.coeffs, dtype=float)
    if args.parity:
        deg = len(np.trim_zeros(coeffs, "b")) - 1
        if parity_of(max(deg, 0)) != args.parity:
            raise DomainError(f"target of degree {deg} cannot have {args.parity} parity")
    phases = synthesize(coeffs, picture="su11")
    tp = protocol_to_pair(phases)
    xs = np.cos(np.linspace(0.0, math.pi, args.grid))
    achieved = np.asarray(eval_poly(tp.p, xs), dtype=complex).real
    target = ParityPoly(coeffs, parity_of(len(np.trim_zeros(coeffs, "b")) - 1))
    deviation = float(np.max(np.abs(achieved - np.asarray(eval_poly(target, xs)).real)))
    out = phases if args.picture == "su11" else substitute_picture(phases, SU11_TO_SU2)
    params = {"phases": list(out.phases), "convention": out.convention}
    doc = protocol_document(args.name or "synthesized", "explicit", params,
                            HYPERBOLIC if args.picture == "su11" else CIRCULAR)
    doc["target"] = {"chebyshev_coeffs": [float(c) for c in coeffs]}
    report = {"n_boosts": out.n_boosts, "picture": args.picture, "verification_points": args.grid,
              "max_deviation": deviation}
    doc["verification"] = report
    if args.out:
        _emit(_dumps(doc), args.out)
        sys.stdout.write(_dumps(report))
    else:
        _emit(_dumps(doc), None)
    if deviation > args.tol:
        print(f"check failed: achieved Re P deviates by {deviation!r}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return 0


def _map_json(b) -> dict:
    u, v = b.as_complex()
    return {"u": [u.real, u.imag], "v": [v.real, v.imag], "commutator_defect": commutator_defect(b)}


def cmd_modes(args) -> int:
    dps = None if args.precision == "double" else AUTO
    report = {"beta": args.beta, "precision": args.precision}
    ok = True
    if args.protocol:
        doc, pl = load_protocol(args.protocol)
        report["protocol"] = doc.get("name")
        if args.precision == "extended":
            dps = config.auto_dps(max(pl.n_boosts, 1), max(args.beta, 1.0))
        report.update(_map_json(composite_mode_map(pl, args.beta, dps=dps)))
        if args.controlled is not None:
            report["controlled"] = {
                "beta0": args.beta,
                "beta1": args.controlled,
                "branch1": _map_json(composite_mode_map(pl, args.controlled, dps=dps)),
            }
    elif not args.low_gain:
        raise DomainError("give a protocol file, --low-gain, or both")
    if args.low_gain:
        import warnings

        from .modes import LowGainRegimeWarning

        with warnings.catch_warnings():
            warnings.simplefilter("ignore", LowGainRegimeWarning)
            eff = low_gain_effective(args.beta, args.theta, args.phi, args.stages)
        exact = staged_amplitude_exact(uniform_stages(args.beta, args.theta, args.phi, args.stages))
        v = complex(exact.v)
        defect = abs(v - eff.value)
        limit = 10.0 * math.sinh(args.beta) ** 2
        within = defect <= limit
        ok = ok and (within or not eff.in_regime)
        report["low_gain"] = {
            "theta": args.theta, "stages": args.stages, "phi": args.phi,
            "effective": [eff.value.real, eff.value.imag], "exact_v": [v.real, v.imag],
            "defect": defect, "bound": limit, "within_bound": within, "in_regime": eff.in_regime,
        }
    _emit(_dumps(report), args.out)
    if not ok:
        print("check failed: low-gain formula outside 10 sinh^2(beta) of the exact staging", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return 0


def cmd_fit(args) -> int:
    dom = FitDomain.for_degree(args.degree, args.x_max)
    x, _ = dom.nodes_weights()
    if args.coeffs is not None:
        target = np.polynomial.chebyshev.chebval(x, np.asarray(args.coeffs, dtype=float))
        label = "chebyshev series"
    else:
        target = FIT_TARGETS[args.target](x)
        label = args.target
    start = 0 if args.parity == EVEN else 1
    degrees = list(range(start, args.degree + 1, 2))
    if not degrees:
        raise DomainError(f"no {args.parity} degrees up to {args.degree}")
    results = [fit_target(target, d, args.parity, dom) for d in degrees]
    l2 = [r.residual_l2 for r in results]
    sup = [r.residual_sup for r in results]
    last = results[-1]
    meta = {
        "tool": "hyperqsp",
        "version": __version__,
        "target": label,
        "parity": args.parity,
        "interval": [1.0, args.x_max],
        "quadrature_order": dom.quadrature_order,
        "monotone_l2": is_monotone_non_increasing(l2),
        "fit_chebyshev_coeffs": [float(c) for c in np.real(last.poly.to_complex())],
        "representation_error": last.representation_error,
    }
    lines = ["# " + json.dumps(meta, sort_keys=True), "degree,l2_residual,sup_residual"]
    lines += [f"{d},{_num(a)},{_num(b)}" for d, a, b in zip(degrees, l2, sup)]
    _emit("\n".join(lines) + "\n", args.out)
    if args.figure:
        from .plotting import plot_residuals

        plot_residuals(degrees, l2, sup, args.figure, title=f"{label} on [1, {args.x_max:g}]")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hyperqsp", description="SU(1,1) signal processing protocols")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a protocol file")
    g.add_argument("kind", choices=KINDS)
    g.add_argument("--n", type=int, help="number of boosts (trivial, constant)")
    g.add_argument("--level", type=int, help="recursion level (monotone)")
    g.add_argument("--phi", type=parse_angle, help="phase, e.g. pi/3 (constant)")
    g.add_argument("--phases", type=_angle_list, help="comma-separated phases (explicit)")
    g.add_argument("--convention", choices=CONVENTIONS, default=BOOST)
    g.add_argument("--signal-kind", choices=(HYPERBOLIC, CIRCULAR), default=HYPERBOLIC)
    g.add_argument("--name")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("eval", help="evaluate a protocol on a grid")
    e.add_argument("protocol")
    e.add_argument("--grid", help="XMIN:XMAX:STEPS")
    e.add_argument("--x", type=float, action="append", help="single evaluation point (repeatable)")
    e.add_argument("--bounds", help="comma list of secant,simple,chebyshev_lower, or all")
    e.add_argument("--precision", choices=("double", "extended"), default="double")
    e.add_argument("--format", choices=("csv", "json"), default="csv")
    e.add_argument("--out")
    e.add_argument("--figure", help="also save a plot of |P|^2 to this path")
    e.set_defaults(func=cmd_eval)

    s = sub.add_parser("synth", help="phases for a target polynomial")
    s.add_argument("--coeffs", type=_float_list, required=True, help="Chebyshev-T coefficients, lowest first")
    s.add_argument("--parity", choices=(EVEN, ODD))
    s.add_argument("--picture", choices=("su2", "su11"), default="su11")
    s.add_argument("--grid", type=int, default=1001, help="verification points on [-1, 1]")
    s.add_argument("--tol", type=float, default=1e-6)
    s.add_argument("--name")
    s.add_argument("--out")
    s.set_defaults(func=cmd_synth)

    m = sub.add_parser("modes", help="two-mode maps of a protocol")
    m.add_argument("protocol", nargs="?")
    m.add_argument("--beta", type=float, required=True)
    m.add_argument("--precision", choices=("auto", "double", "extended"), default="auto")
    m.add_argument("--controlled", type=float, metavar="BETA1", help="second branch gain")
    m.add_argument("--low-gain", action="store_true", help="compare the low-gain formula with exact staging")
    m.add_argument("--theta", type=parse_angle, default=0.3)
    m.add_argument("--stages", type=int, default=5)
    m.add_argument("--phi", type=parse_angle, default=0.0)
    m.add_argument("--out")
    m.set_defaults(func=cmd_modes)

    f = sub.add_parser("fit", help="least-squares parity fits on [1, X]")
    grp = f.add_mutually_exclusive_group(required=True)
    grp.add_argument("--target", choices=sorted(FIT_TARGETS))
    grp.add_argument("--coeffs", type=_float_list, help="Chebyshev-T coefficients of a polynomial target")
    f.add_argument("--degree", type=int, required=True)
    f.add_argument("--parity", choices=(EVEN, ODD), default=EVEN)
    f.add_argument("--x-max", type=float, default=2.0)
    f.add_argument("--out")
    f.add_argument("--figure", help="also save a residual-vs-degree plot to this path")
    f.set_defaults(func=cmd_fit)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except HyperQSPError as exc:
        if isinstance(exc, DomainError):
            code = 2
        elif isinstance(exc, InfeasibleError):
            code = 3
        elif isinstance(exc, InvariantError):
            code = 4
        else:
            code = exc.exit_code
        print(f"error: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    raise SystemExit(main())
