"""Command-line front end.

Exit status is 0 when everything checked passes, 1 when a verification
fails and 2 for usage, parse and parameter errors.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from .diffalg import DiffPoly, Generator, commutator
from .expr import ExpressionSyntaxError, parse
from .geometry import FrenetField, InvalidField, frame_derivation, lie_bracket, tangency_check, torsion_variation, variation_coefficients
from .golden import HIERARCHY, canonical_listing
from .hierarchy import generate_hierarchy, is_symmetry
from .reporting import dumps, write_csv

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ helpers


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _expr(text: str, flag: str, generator: Generator | None = None) -> DiffPoly:
    try:
        return parse(text, generator)
    except ExpressionSyntaxError as exc:
        caret = " " * exc.offset + "^"
        raise UsageError(f"cannot parse {flag}: {exc}\n  {text}\n  {caret}") from None


def _field(text: str, flag: str = "--field") -> FrenetField:
    parts = text.split(";")
    if len(parts) != 3:
        raise UsageError(f"{flag} expects three components 'f;g;h', got {len(parts)}")
    return FrenetField(*(_expr(p, f"{flag} component {i + 1}", Generator.TAU) for i, p in enumerate(parts)))


def _symbolic_curvature(text: str | None):
    """``None`` keeps ``G`` symbolic, otherwise a rational value."""
    if text is None or text.strip() == "G":
        return None
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--curvature must be 'G' or a rational number, got {text!r}") from None


def _numeric_curvature(text: str | None) -> float:
    if text is None:
        return 0.0
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"simulations need a numeric --curvature, got {text!r}") from None


def _specialize(p: DiffPoly, G) -> DiffPoly:
    return p if G is None else p.substitute_G(G)


def _specialize_field(V: FrenetField, G) -> FrenetField:
    return V if G is None else FrenetField(*(c.substitute_G(G) for c in V.components()))


def _positive(kind):
    def conv(text):
        try:
            value = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid value {text!r}") from None
        if not value > 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text}")
        return value

    return conv


# ------------------------------------------------------------------ parse


def cmd_parse(args) -> int:
    rows = []
    for text in args.expressions:
        p = _expr(text, "expression", Generator(args.generator) if args.generator else None)
        canonical = p.format()
        rows.append({"input": text, "canonical": canonical, "stable": parse(canonical).format() == canonical})
    if args.format == "json":
        _emit(dumps(rows), args.out)
    else:
        _emit("".join(r["canonical"] + "\n" for r in rows), args.out)
    return EXIT_OK if all(r["stable"] for r in rows) else EXIT_FAIL


# ------------------------------------------------------------------ hierarchy


def _field_label(row: dict) -> str:
    f, g, h = row["field"].split(";")
    if g == "0" and h == "0":
        return "T" if f == "1" else f"({f})T"
    return "N" if g == "1" else f"({g})N"


def _xi_label(n: int) -> str:
    return "T" if n == 0 else ("k" if n == 1 else f"k{n - 1}") + " xi"


def hierarchy_table(rows: list[dict]) -> str:
    lines = [f"V_{r['n']} = {_field_label(r)}" + ("" if r["n"] == 0 else f" = {_xi_label(r['n'])}") for r in rows]
    lines.append("")
    lines += [f"V_{r['n']}(t) = {r['tau_flow']}" for r in rows]
    lines.append("")
    lines += [f"V_{r['n']}(k) = {r['k_flow']}" for r in rows]
    return "\n".join(lines) + "\n"


def cmd_hierarchy(args) -> int:
    if args.levels < 1:
        raise UsageError("--levels must be at least 1")
    G = _symbolic_curvature(args.curvature)
    rows = []
    for lvl in generate_hierarchy(args.levels):
        rows.append(
            {
                "n": lvl.n,
                "field": _specialize_field(lvl.field, G).format(),
                "tau_flow": _specialize(lvl.tau_flow, G).format(),
                "k_flow": _specialize(lvl.k_flow, G).format(),
            }
        )
    status = EXIT_OK
    mismatches = []
    if args.check:
        if args.levels > len(HIERARCHY):
            raise UsageError(f"--check covers at most {len(HIERARCHY)} levels")
        golden = canonical_listing(args.levels, G)
        for ours, ref in zip(rows, golden):
            for key in ("field", "tau_flow", "k_flow"):
                if ours[key].encode() != ref[key].encode():
                    mismatches.append({"n": ours["n"], "key": key, "engine": ours[key], "golden": ref[key]})
        status = EXIT_FAIL if mismatches else EXIT_OK
    if args.format == "json":
        payload = rows if not args.check else {"levels": rows, "check": "fail" if mismatches else "pass", "mismatches": mismatches}
        _emit(dumps(payload), args.out)
    elif args.format == "csv":
        header = ["n", "field", "tau_flow", "k_flow"]
        if args.out:
            write_csv(args.out, header, [[r[k] for k in header] for r in rows])
        else:
            import csv

            w = csv.writer(sys.stdout, lineterminator="\n")
            w.writerow(header)
            w.writerows([[r[k] for k in header] for r in rows])
    else:
        text = hierarchy_table(rows)
        if args.check:
            text += "\ncheck: " + ("pass" if not mismatches else "fail") + "\n"
            for m in mismatches:
                text += f"  V_{m['n']} {m['key']}: engine {m['engine']!r} != golden {m['golden']!r}\n"
        _emit(text, args.out)
    return status


# ------------------------------------------------------------------ symmetry / bracket / variation


def cmd_symmetry(args) -> int:
    flow = _expr(args.flow, "--flow")
    cand = _expr(args.candidate, "--candidate", flow.generator)
    ok, residual = is_symmetry(flow, cand)
    result = {"flow": flow.format(), "candidate": cand.format(), "residual": residual.format(),
              "status": "pass" if ok else "fail"}
    if args.format == "json":
        _emit(dumps(result), args.out)
    else:
        _emit(f"{result['status']}\nresidual: {result['residual']}\n", args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_bracket(args) -> int:
    if not args.field or len(args.field) != 2:
        raise UsageError("bracket needs exactly two --field arguments")
    V1, V2 = (_field(f) for f in args.field)
    try:
        B = lie_bracket(V1, V2)
        lhs = torsion_variation(B)
        rhs = torsion_variation(V1), torsion_variation(V2)
    except InvalidField as exc:
        raise UsageError(str(exc)) from None
    residual = lhs - commutator(*rhs)
    G = _symbolic_curvature(args.curvature)
    result = {
        "V1": V1.to_json(),
        "V2": V2.to_json(),
        "bracket": _specialize_field(B, G).to_json(),
        "evolution": B.is_evolution(),
        "torsion_residual": _specialize(residual, G).format(),
        "status": "pass" if residual.is_zero() and B.is_evolution() else "fail",
    }
    if args.format == "json":
        _emit(dumps(result), args.out)
    else:
        _emit(f"[V1,V2] = {_specialize_field(B, G).format()}\nevolution field: {result['evolution']}\n"
              f"bracket/commutator residual: {result['torsion_residual']}\n{result['status']}\n", args.out)
    return EXIT_OK if result["status"] == "pass" else EXIT_FAIL


def cmd_variation(args) -> int:
    if not args.field or len(args.field) != 1:
        raise UsageError("variation needs exactly one --field argument")
    V = _field(args.field[0])
    G = _symbolic_curvature(args.curvature)
    sp = lambda p: _specialize(p, G).format()  # noqa: E731
    data = variation_coefficients(V)
    tan = tangency_check(V)
    result = {
        "field": V.to_json(),
        "coefficients": {k: sp(getattr(data, k)) for k in ("rho", "phi", "psi", "alpha")},
        "tangent": tan.ok,
        "pseudo_null_residual": sp(tan.pseudo_null_residual),
        "arclength_residual": sp(tan.arclength_residual),
        "evolution": V.is_evolution(),
    }
    if tan.ok:
        result["torsion_variation"] = sp(torsion_variation(V))
    if V.is_evolution():
        result["frame_matrix"] = [[sp(x) for x in row] for row in frame_derivation(V)]
    if args.format == "json":
        _emit(dumps(result), args.out)
    else:
        lines = [f"{k} = {v}" for k, v in result["coefficients"].items()]
        lines.append(f"tangent: {tan.ok}")
        if "torsion_variation" in result:
            lines.append(f"V(t) = {result['torsion_variation']}")
        if "frame_matrix" in result:
            for name, row in zip("TNB", result["frame_matrix"]):
                lines.append(f"D_V {name} = ({row[0]})T + ({row[1]})N + ({row[2]})B")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# ------------------------------------------------------------------ simulate


def _grid(args, text: str):
    from .numerics import SampledField
    from .numerics.profiles import ProfileError, compile_profile

    try:
        fn = compile_profile(text)
    except ProfileError as exc:
        raise UsageError(str(exc)) from None
    length = args.grid_n * args.ds if args.ds else 2 * math.pi
    return SampledField.from_function(fn, 0.0, length, args.grid_n)


def _time_steps(args, step: float) -> tuple[float, int]:
    from .numerics.solvers import STABILITY_FACTOR

    if args.dt is None:
        nsteps = math.ceil(args.t_end / (0.5 * STABILITY_FACTOR * step**2))
        nsteps += -nsteps % args.snapshots
        return args.t_end / nsteps, nsteps
    nsteps = int(round(args.t_end / args.dt))
    if nsteps < 1 or abs(nsteps * args.dt - args.t_end) > 1e-9 * args.t_end:
        raise UsageError("--t-end must be a whole number of --dt steps")
    if args.dt > STABILITY_FACTOR * step**2 * (1 + 1e-12):
        raise UsageError(f"--dt {args.dt} violates the stability bound {STABILITY_FACTOR}*ds^2 = {STABILITY_FACTOR * step**2:.6g}")
    return args.dt, nsteps


def _prepare(out: Path) -> Path:
    out.mkdir(parents=True, exist_ok=True)
    return out


def _save_every(nsteps: int, snapshots: int) -> int:
    target = max(1, nsteps // snapshots)
    while nsteps % target:
        target -= 1
    return target


def _write_snapshots(out: Path, stem: str, run) -> list[str]:
    from .numerics import write_field_csv

    names = []
    for i, f in enumerate(run.fields):
        name = f"{stem}_{i:04d}.csv"
        write_field_csv(out / name, f)
        names.append(name)
    return names


def _simulate_burgers(args, out: Path) -> dict:
    from .numerics import solve_burgers

    tau0 = _grid(args, args.tau0 or "sin")
    dt, nsteps = _time_steps(args, tau0.step)
    _prepare(out)
    run = solve_burgers(tau0, args.t_end, dt, _save_every(nsteps, args.snapshots), order=args.order)
    files = _write_snapshots(out, "tau", run)
    (out / "run.json").write_text(dumps(run.to_json()))
    return {"equation": "burgers", "snapshots": files, "dt": dt, "ds": tau0.step,
            "final_max_abs": float(np.max(np.abs(run.final().values)))}


def _simulate_heat(args, out: Path) -> dict:
    from .numerics import NonPositiveSample, hopf_cole, solve_burgers, solve_heat

    G = _numeric_curvature(args.curvature)
    k0 = _grid(args, args.k0 or "2+cos")
    dt, nsteps = _time_steps(args, k0.step)
    _prepare(out)
    every = _save_every(nsteps, args.snapshots)
    d = args.d or 0.0
    heat = solve_heat(k0, G, args.t_end, dt, every, d=d, order=args.order)
    files = _write_snapshots(out, "k", heat)
    (out / "run.json").write_text(dumps(heat.to_json()))
    report = {"equation": "heat", "G": G, "d": d, "snapshots": files, "dt": dt, "ds": k0.step}
    try:
        burgers = solve_burgers(hopf_cole(k0), args.t_end, dt, every, order=args.order)
        errors = [
            float(np.max(np.abs(hopf_cole(k).values - tau.values))) if np.all(k.values > 0) else None
            for k, tau in zip(heat.fields, burgers.fields)
        ]
        # d and G only rescale k, so the Hopf-Cole image still solves Burgers
        report["hopf_cole"] = {"times": heat.times, "max_error": errors}
    except NonPositiveSample as exc:
        report["hopf_cole"] = {"skipped": str(exc)}
    (out / "hopf_cole_check.json").write_text(dumps(report["hopf_cole"]))
    return report


def _simulate_filament(args, out: Path) -> dict:
    from .numerics import AmbientMetric, FrameState, evolve_filament, reconstruct_curve, write_field_csv
    from .numerics.frames import max_gram_residual

    G = _numeric_curvature(args.curvature)
    tau0 = _grid(args, args.tau0 or "sin")
    dt, nsteps = _time_steps(args, tau0.step)
    _prepare(out)
    every = _save_every(nsteps, args.snapshots)
    run = evolve_filament(tau0, G, args.t_end, dt, save_every=1, reconstruct=False, order=args.order)
    metric = AmbientMetric(G)

    def curve(i):
        return reconstruct_curve(run.fields[i], metric, FrameState.from_array(run.anchors[i]), tol=1e-8)

    files, gram = [], 0.0
    for j, i in enumerate(range(0, nsteps + 1, every)):
        c = curve(i)
        gram = max(gram, max_gram_residual(c.data, metric))
        write_csv(out / f"curve_{j:04d}.csv", c.header(), c.rows())
        write_field_csv(out / f"tau_{j:04d}.csv", run.fields[i])
        files.append(f"curve_{j:04d}.csv")
    last = curve(nsteps)
    lags = sorted({min(10, nsteps), 1}, reverse=True)
    quotient = {}
    for lag in lags:
        prev = curve(nsteps - lag)
        err = np.max(np.abs((last.gamma - prev.gamma) / (lag * dt) - prev.N))
        quotient[format(lag * dt, ".6g")] = float(err)
    consistency = {
        "difference_quotient_error": quotient,
        "anchor_gram_drift": run.meta["anchor_gram_drift"],
        "curve_gram_residual": gram,
        "G": G,
    }
    (out / "consistency.json").write_text(dumps(consistency))
    return {"equation": "filament", "snapshots": files, "dt": dt, "ds": tau0.step, "consistency": consistency}


def _simulate_gauge(args, out: Path) -> dict:
    from .numerics import (
        EvolutionRun,
        burgers_gauge_check,
        gauge_transform,
        heat_gauge_check,
        solve_viscous_burgers,
        write_field_csv,
    )

    if not args.b > 0:
        raise UsageError("--b must be positive")
    u0 = _grid(args, args.tau0 or "sin")
    dt, nsteps = _time_steps(args, u0.step)
    _prepare(out)
    if nsteps < 2:
        raise UsageError("the gauge check needs at least two time steps")
    run = solve_viscous_burgers(u0, args.t_end, dt, save_every=1, order=args.order)
    tail = EvolutionRun(dt, dt * np.arange(3), run.fields[-3:])
    burgers = burgers_gauge_check(tail, args.a, args.b)

    write_field_csv(out / "u_final.csv", run.final())
    write_field_csv(out / "tau_final.csv", gauge_transform(run.final(), args.a, args.b))
    G = _numeric_curvature(args.curvature)
    k0 = _grid(args, args.k0 or "2+cos")
    heat = heat_gauge_check(k0, G, 0.7 if args.d is None else args.d, args.t_end, dt)
    report = {"burgers": burgers, "heat": heat}
    (out / "gauge_check.json").write_text(dumps(report))
    return {"equation": "gauge", "dt": dt, "ds": u0.step, **report}


def cmd_simulate(args) -> int:
    from .numerics import NumericsError

    out = Path(args.out or f"{args.equation}_out")
    if args.t_end <= 0:
        raise UsageError("--t-end must be positive")
    handler = {"burgers": _simulate_burgers, "heat": _simulate_heat, "filament": _simulate_filament,
               "gauge": _simulate_gauge}[args.equation]
    try:
        summary = handler(args, out)
    except NumericsError as exc:
        raise UsageError(str(exc)) from None
    summary["output"] = str(out)
    (out / "summary.json").write_text(dumps(summary))
    if args.format == "json":
        sys.stdout.write(dumps(summary))
    else:
        sys.stdout.write(f"{args.equation}: wrote {out}\n")
    return EXIT_OK


# ------------------------------------------------------------------ verify


def cmd_verify(args) -> int:
    from .verify import VerifyConfig, run_verify_all

    report = run_verify_all(args.filter, VerifyConfig(seed=args.seed, workers=args.workers))
    _emit(dumps(report.to_json()) if args.format == "json" else report.table(), args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pseudonull", description="Pseudo-null curve flows: symbolic and numeric checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("table", "json"), default="table"):
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("--out", help="write output to this path instead of stdout")

    sp = sub.add_parser("parse", help="print expressions in canonical form")
    sp.add_argument("expressions", nargs="+")
    sp.add_argument("--generator", choices=["t", "k"])
    common(sp)
    sp.set_defaults(func=cmd_parse)

    sp = sub.add_parser("hierarchy", help="list the geometric hierarchy")
    sp.add_argument("--levels", type=int, default=5)
    sp.add_argument("--curvature", help="'G' (default) or a rational value substituted for G")
    sp.add_argument("--check", action="store_true", help="compare with the built-in transcription")
    common(sp, ("table", "json", "csv"))
    sp.set_defaults(func=cmd_hierarchy)

    sp = sub.add_parser("symmetry", help="test whether a candidate commutes with a flow")
    sp.add_argument("--flow", required=True)
    sp.add_argument("--candidate", required=True)
    common(sp)
    sp.set_defaults(func=cmd_symmetry)

    for name, helptext, fn in (
        ("bracket", "Lie bracket of two evolution fields", cmd_bracket),
        ("variation", "variation coefficients of a field", cmd_variation),
    ):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("--field", action="append", help="field 'f;g;h' in the frame T, N, B")
        sp.add_argument("--curvature")
        common(sp)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("simulate", help="run a numerical experiment and write CSV/JSON artifacts")
    sp.add_argument("equation", choices=["burgers", "heat", "filament", "gauge"])
    sp.add_argument("--tau0", help="initial torsion (or u0 for gauge), e.g. 'sin'")
    sp.add_argument("--k0", help="initial pseudo-curvature, e.g. '2+cos'")
    sp.add_argument("--grid-n", type=_positive(int), default=256)
    sp.add_argument("--ds", type=_positive(float), help="grid step (default: N points on [0, 2pi))")
    sp.add_argument("--dt", type=_positive(float))
    sp.add_argument("--t-end", type=_positive(float), default=0.5)
    sp.add_argument("--curvature", help="numeric ambient curvature G (default 0)")
    sp.add_argument("--snapshots", type=_positive(int), default=5)
    sp.add_argument("--order", type=int, choices=[2, 4], default=4)
    sp.add_argument("--d", type=float, help="heat equation constant (default 0, or 0.7 for gauge)")
    sp.add_argument("--a", type=float, default=1.0, help="gauge parameter a")
    sp.add_argument("--b", type=float, default=4.0, help="gauge parameter b")
    common(sp)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("verify", help="run the verification suite")
    sp.add_argument("--filter", choices=["symbolic", "numeric"])
    sp.add_argument("--seed", type=int, default=20240601)
    sp.add_argument("--workers", type=_positive(int), default=1)
    common(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"pseudonull {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
