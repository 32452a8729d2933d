"""Command-line front end.

Exit codes: 0 success or consistent, 1 inconsistent or not universal, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import scenario as scenario_io
from .classify import classify, find_witness
from .errors import NotUniversalError, TcriskError
from .extensions import entropic_consistency_demo, extend, semigroup_residual
from .measure import Filtration, Partition, fmt_vec
from .pasting import is_filtration_consistent
from .risk import conditional_rho, reduce_to_vertices, rho
from .simplex import project, render_svg, to_csv

REPORT_SCHEMA = "tcrisk/report-1"
EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _blocks(space, pi: Partition) -> str:
    return "|".join(space.describe(b) for b in pi.blocks)


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        payload = {"schema": REPORT_SCHEMA, "command": args.command, **payload}
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print("\n".join(lines))


def _check_limits(args, sc) -> None:
    n, k = sc.space.n, len(sc.generators)
    lim_n, lim_k = sc.options["max_outcomes"], sc.options["max_generators"]
    if n <= lim_n and k <= lim_k:
        return
    if not args.allow_large:
        raise scenario_io.ScenarioError(
            "limit",
            f"{n} outcomes / {k} generators exceed limits {lim_n} / {lim_k}; pass --allow-large to override",
        )
    # worst case rectangle size: marginal vertices times per-block conditional vertices
    cost = k * k ** min(n, k)
    print(f"warning: limits overridden; up to ~{cost:.3g} rectangle vertices per partition", file=sys.stderr)


def cmd_eval(args, sc) -> int:
    rm = sc.risk_measure
    x = sc.position(args.position)
    if args.level is None:
        val = rho(rm, x)
        _emit(args, {"position": args.position, "rho": str(val)}, [str(val)])
        return EXIT_OK
    if not args.filtration:
        raise scenario_io.ScenarioError("usage", "--level requires --filtration")
    f = sc.filtration(args.filtration)
    if not 0 <= args.level < len(f):
        raise scenario_io.ScenarioError("usage", f"level {args.level} out of range 0..{len(f) - 1}")
    pi = f[args.level]
    vals = conditional_rho(rm, x, pi)
    rows = [(b, vals[b[0]]) for b in pi.blocks]
    _emit(
        args,
        {
            "position": args.position,
            "filtration": args.filtration,
            "level": args.level,
            "blocks": [{"block": [sc.space.outcomes[i] for i in b], "rho": str(v)} for b, v in rows],
        },
        [f"{sc.space.describe(b)}: {v}" for b, v in rows],
    )
    return EXIT_OK


def cmd_check(args, sc) -> int:
    rm = sc.risk_measure
    f = sc.filtration(args.filtration)
    reports = is_filtration_consistent(rm, f)
    lines = []
    for t, r in enumerate(reports):
        lines.append(f"level {t} {_blocks(sc.space, r.partition)}: {'PASS' if r.consistent else 'FAIL'}")
        for q, cert in r.failures:
            lines.append(f"  vertex {fmt_vec(q.p)} separator {fmt_vec(cert.separator.x)} gap {cert.gap}")
    ok = all(r.consistent for r in reports)
    lines.append("consistent" if ok else "inconsistent")
    _emit(args, {"filtration": args.filtration, "consistent": ok, "levels": [r.to_dict() for r in reports]}, lines)
    return EXIT_OK if ok else EXIT_FAIL


def _witness_lines(space, w) -> list[str]:
    lines = [
        f"witness a={space.describe(w.a)} b={space.describe(w.b)}",
        f"  failing partition {_blocks(space, w.failing_partition)}",
        f"  failing vertex {fmt_vec(w.failing_vertex.p)} separator {fmt_vec(w.certificate.separator.x)}"
        f" gap {w.certificate.gap}",
    ]
    if w.chain:
        lines.append(f"  chain ({w.chain.side} side, a={space.describe(w.chain.a)}, b={space.describe(w.chain.b)}):")
        for k, (z, role) in enumerate(zip(w.chain.z, w.chain.roles)):
            lines.append(f"    z{k + 1} = {fmt_vec(z.p)}  [{role}]")
    return lines


def cmd_classify(args, sc) -> int:
    c = classify(sc.risk_measure)
    lines = [str(c)]
    if c.witness:
        lines += _witness_lines(sc.space, c.witness)
    _emit(args, {"classification": c.to_dict()}, lines)
    return EXIT_OK if c.universal else EXIT_FAIL


def cmd_witness(args, sc) -> int:
    c = classify(sc.risk_measure)
    if c.universal:
        _emit(args, {"witness": None, "classification": c.to_dict()}, [f"no witness: {c} is time-consistent for every filtration"])
        return EXIT_OK
    w = c.witness or find_witness(reduce_to_vertices(sc.risk_measure))
    _emit(args, {"witness": w.to_dict()}, _witness_lines(sc.space, w))
    return EXIT_FAIL


def cmd_extend(args, sc) -> int:
    f = sc.filtration(args.filtration)
    try:
        d = extend(sc.risk_measure, f)
    except NotUniversalError as exc:
        lines = ["refused: risk measure is not time-consistent for every filtration"]
        lines += _witness_lines(sc.space, exc.witness)
        _emit(args, {"refused": True, "witness": exc.witness.to_dict()}, lines)
        return EXIT_FAIL
    names = [args.position] if args.position else sorted(sc.positions)
    lines = [f"class {d.cls}"]
    out = []
    for name in names:
        x = sc.position(name)
        table = d.table(x)
        worst = max(
            (semigroup_residual(d, x, s, t) for s in range(len(f)) for t in range(s, len(f))), default=0
        )
        lines.append(f"position {name}:")
        for t, (pi, v) in enumerate(zip(f.levels, table)):
            cells = "  ".join(f"{sc.space.describe(b)}={v[b[0]]}" for b in pi.blocks)
            lines.append(f"  level {t}: {cells}")
        lines.append(f"  max semigroup residual {worst}")
        out.append(
            {
                "position": name,
                "levels": [
                    [{"block": [sc.space.outcomes[i] for i in b], "value": str(v[b[0]])} for b in pi.blocks]
                    for pi, v in zip(f.levels, table)
                ],
                "max_semigroup_residual": str(worst),
            }
        )
    _emit(args, {"class": d.cls.to_dict(), "positions": out}, lines)
    return EXIT_OK


def cmd_simplex(args, sc) -> int:
    a, b = sc.outcome_set(args.a), sc.outcome_set(args.b)
    scene = project(sc.risk_measure, a, b)
    Path(args.out).write_bytes(render_svg(scene))
    written = [args.out]
    if args.csv:
        Path(args.csv).write_text(to_csv(scene), encoding="utf-8")
        written.append(args.csv)
    _emit(args, {"written": written, "points": len(scene.points)}, [f"wrote {p}" for p in written])
    return EXIT_OK


def cmd_entropic(args, sc) -> int:
    if not (args.gamma > 0 and math.isfinite(args.gamma)):
        raise scenario_io.ScenarioError("usage", "--gamma must be a positive number")
    if args.filtration:
        f = sc.filtration(args.filtration)
    elif sc.filtrations:
        f = sc.filtrations[sorted(sc.filtrations)[0]]
    else:
        n = sc.space.n
        f = Filtration((Partition.trivial(n), Partition.discrete(n)))
    names = [args.position] if args.position else sorted(sc.positions)
    p0 = sc.space.reference()
    lines, out = [], []
    for name in names:
        rep = entropic_consistency_demo(f, args.gamma, p0, sc.position(name))
        lines.append(
            f"position {name}: semigroup residual ~{rep.residual:.3e}, "
            f"|rho(2x) - 2 rho(x)| ~{rep.homogeneity_gap:.6g} (approx)"
        )
        out.append({"position": name, **rep.to_dict()})
    _emit(args, {"approx": True, "positions": out}, lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tcrisk", description="Time consistency of coherent risk measures on finite spaces.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("scenario", help="scenario JSON file")
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--allow-large", action="store_true", help="exceed the scenario's size limits")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate rho or a conditional rho_t")
    p.add_argument("--position", required=True)
    p.add_argument("--filtration")
    p.add_argument("--level", type=int)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check", parents=[common], help="pasting check at every level of a filtration")
    p.add_argument("--filtration", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", parents=[common], help="universal class or counterexample")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("witness", parents=[common], help="failing simple filtration with certificate")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("extend", parents=[common], help="dynamic extension table and residuals")
    p.add_argument("--filtration", required=True)
    p.add_argument("--position")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("simplex", parents=[common], help="barycentric SVG/CSV export")
    p.add_argument("--a", required=True, help="comma-separated outcome labels")
    p.add_argument("--b", required=True, help="comma-separated outcome labels")
    p.add_argument("--out", required=True, help="SVG output path")
    p.add_argument("--csv", help="optional CSV output path")
    p.set_defaults(func=cmd_simplex)

    p = sub.add_parser("entropic", parents=[common], help="entropic contrast report (floating point)")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--filtration")
    p.add_argument("--position")
    p.set_defaults(func=cmd_entropic)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        sc = scenario_io.load(args.scenario)
        _check_limits(args, sc)
        return args.func(args, sc)
    except TcriskError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
