"""Command-line front end: gen, iterate, verify, plot.

Exit codes (stable contract): 0 success/converged, 1 verification failure,
2 not converged, 3 degenerate input, 4 overflow, 5 unsupported dimension.

Simplices travel as JSON documents with fields ``dimension``, ``vertices``
and optional ``name``; floats are written with 17 significant digits so a
write/read cycle is bit-exact.  Trajectories export as CSV with the fixed
column order k, r, R, ratio, incenter coords, circumcenter coords,
|O_k - O_{k+2}| (blank for the last two rows).
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .figures import SvgCanvas
from .geometry import (
    DegenerateSimplexError,
    GeometryError,
    OverflowGuardError,
    Simplex,
    circumsphere,
    insphere,
    is_degenerate,
    regular_simplex,
)
from .iteration import IterationConfig, iterate, subsequence_limits
from .oracles import (
    SampleConfig,
    mc_ball_in_simplex,
    random_simplex,
)
from .roots import (
    check_containment,
    check_gram_identity,
    check_incenter_interior,
    check_root_circumsphere,
    radius_chain,
    root,
)

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_NOT_CONVERGED = 2
EXIT_DEGENERATE = 3
EXIT_OVERFLOW = 4
EXIT_BAD_DIMENSION = 5


def _f(x: float) -> str:
    return f"{float(x):.17g}"


def simplex_document(s: Simplex, name: str | None = None) -> str:
    rows = ",\n    ".join(
        "[" + ", ".join(_f(x) for x in row) + "]" for row in s.vertices
    )
    name_field = f',\n  "name": {json.dumps(name)}' if name else ""
    return (
        "{\n"
        f'  "dimension": {s.dimension},\n'
        f'  "vertices": [\n    {rows}\n  ]{name_field}\n'
        "}\n"
    )


def parse_document(text: str) -> tuple[Simplex, str | None]:
    doc = json.loads(text)
    dim = int(doc["dimension"])
    vertices = np.asarray(doc["vertices"], dtype=float)
    if vertices.shape != (dim + 1, dim):
        raise GeometryError(
            f"vertex array shape {vertices.shape} inconsistent with dimension {dim}"
        )
    return Simplex(vertices), doc.get("name")


NAMED = {
    "equilateral": lambda: Simplex(
        [[1.0, 0.0],
         [-0.5, math.sqrt(3.0) / 2.0],
         [-0.5, -math.sqrt(3.0) / 2.0]]
    ),
    "right-3-4-5": lambda: Simplex([[0.0, 0.0], [4.0, 0.0], [0.0, 3.0]]),
}


def named_simplex(name: str) -> Simplex:
    if name in NAMED:
        return NAMED[name]()
    if name.startswith("regular-"):
        return regular_simplex(int(name.split("-", 1)[1]))
    raise GeometryError(
        f"unknown name {name!r}; expected equilateral, right-3-4-5 or regular-N"
    )


def _read_input(path: str | None) -> tuple[Simplex, str | None]:
    if path is None or path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    if not text.strip().startswith("{"):
        # Convenience: accept a catalog name in place of a file.
        return named_simplex(text.strip()), text.strip()
    return parse_document(text)


def cmd_gen(args) -> int:
    if args.named:
        s = named_simplex(args.named)
        name = args.named
    else:
        if args.dim is None:
            raise GeometryError("either --named or --dim is required")
        s = random_simplex(args.dim, args.seed, args.quality)
        name = f"random-dim{args.dim}-seed{args.seed}"
    sys.stdout.write(simplex_document(s, name))
    return EXIT_OK


def _trajectory_rows(records) -> list[list[str]]:
    centers = np.array([rec.circumcenter for rec in records])
    rows = []
    for idx, rec in enumerate(records):
        gap2 = ""
        if idx + 2 < len(records):
            gap2 = _f(np.linalg.norm(centers[idx] - centers[idx + 2]))
        rows.append(
            [str(rec.k), _f(rec.inradius), _f(rec.circumradius), _f(rec.ratio)]
            + [_f(x) for x in rec.incenter]
            + [_f(x) for x in rec.circumcenter]
            + [gap2]
        )
    return rows


def _write_trajectory(records, report, fmt: str, out) -> None:
    n = records[0].simplex.dimension
    header = (
        ["k", "r", "R", "ratio"]
        + [f"I{i + 1}" for i in range(n)]
        + [f"O{i + 1}" for i in range(n)]
        + ["O_gap2"]
    )
    rows = _trajectory_rows(records)
    if fmt == "csv":
        out.write(",".join(header) + "\n")
        for row in rows:
            out.write(",".join(row) + "\n")
    else:
        payload = {
            "trajectory": [dict(zip(header, row)) for row in rows],
            "report": None if report is None else _report_dict(report),
        }
        out.write(json.dumps(payload, indent=2) + "\n")


def _report_dict(report) -> dict:
    return {
        "even_limit": [_f(x) for x in report.even_limit],
        "odd_limit": [_f(x) for x in report.odd_limit],
        "gap": _f(report.gap),
        "even_converged": report.even_converged,
        "odd_converged": report.odd_converged,
        "steps_used": report.steps_used,
        "rho_estimate": _f(report.rho_estimate),
    }


def cmd_iterate(args) -> int:
    s, _ = _read_input(args.input)
    if is_degenerate(s):
        print("error: input simplex is degenerate", file=sys.stderr)
        return EXIT_DEGENERATE
    cfg = IterationConfig(
        max_steps=args.steps,
        cauchy_tolerance=args.tol,
        recenter=not args.no_recenter,
    )
    try:
        records = iterate(s, cfg)
    except OverflowGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    overflowed = len(records) < cfg.max_steps
    report = None
    if len(records) >= 4:
        report = subsequence_limits(records, cfg)
    _write_trajectory(records, report, args.format, sys.stdout)
    sys.stdout.flush()
    if report is not None and args.format == "csv":
        for key, value in _report_dict(report).items():
            print(f"{key}: {value}", file=sys.stderr)
    if overflowed:
        print("warning: overflow guard stopped the iteration", file=sys.stderr)
        return EXIT_OVERFLOW
    if report is None or not (report.even_converged and report.odd_converged):
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def cmd_verify(args) -> int:
    tol = args.tolerance
    if args.input is not None:
        cases = [(None, _read_input(args.input)[0])]
    elif args.random is not None:
        if args.dim is None:
            raise GeometryError("--random requires --dim")
        cases = [
            (args.seed + i, random_simplex(args.dim, args.seed + i))
            for i in range(args.random)
        ]
    else:
        raise GeometryError("either --input or --random is required")

    worst_rel: dict[str, float] = {}
    worst_abs: dict[str, float] = {}
    failed: list[tuple[str, object]] = []

    def note(check: str, residual: float, seed, scale: float = 1.0) -> None:
        worst_rel[check] = max(worst_rel.get(check, 0.0), residual)
        worst_abs[check] = max(worst_abs.get(check, 0.0), residual * scale)
        if residual > tol:
            failed.append((check, seed))

    for idx, (seed, s) in enumerate(cases):
        rr = root(s)
        big_r = rr.source_circumsphere.radius
        root_r = big_r**2 / rr.source_insphere.radius
        note("root_circumsphere", check_root_circumsphere(rr), seed, root_r)
        note("gram_identity", check_gram_identity(rr, s), seed, big_r**2)
        margins = check_containment(rr, s)
        note("containment_margin", max(0.0, -float(margins.min()) / big_r), seed, big_r)
        note("incenter_interior", 0.0 if check_incenter_interior(rr) else 1.0, seed)
        r1, big_r1, r2, big_r2 = radius_chain(s)
        note("container_inequality", max(0.0, (big_r1 - r2) / big_r1), seed, big_r1)
        note("ratio_monotone", max(0.0, r1 / big_r1 - r2 / big_r2), seed)
        note(
            "radius_recurrence",
            abs(big_r2 * r1 - big_r1**2) / big_r1**2,
            seed,
            big_r1**2,
        )
        frac = mc_ball_in_simplex(
            rr.source_circumsphere,
            rr.root,
            SampleConfig(sample_count=args.mc_samples, seed=seed or idx),
        )
        note("mc_containment", 1.0 - frac, seed)

    for check in sorted(worst_rel):
        print(
            f"{check}: max residual {worst_rel[check]:.3e} relative, "
            f"{worst_abs[check]:.3e} absolute"
        )
    if failed:
        for check, seed in failed[:10]:
            print(f"FAIL {check} (seed {seed})", file=sys.stderr)
        return EXIT_VERIFY_FAIL
    print(f"all checks within tolerance {tol:g} over {len(cases)} case(s)")
    return EXIT_OK


def _plot_root(s: Simplex, canvas: SvgCanvas) -> None:
    rr = root(s)
    inc, circ = rr.source_insphere, rr.source_circumsphere
    canvas.polygon(s.vertices, stroke="black", stroke_width=1.5)
    canvas.circle(inc.center, inc.radius, stroke="#1f77b4")
    canvas.circle(circ.center, circ.radius, stroke="#2ca02c", dash="4 3")
    canvas.polygon(rr.root.vertices, stroke="#d62728", stroke_width=1.5)
    canvas.circle(inc.center, circ.radius**2 / inc.radius, stroke="#d62728", dash="4 3")
    for b in rr.contact_simplex:
        canvas.dot(b, color="#1f77b4")
    canvas.dot(inc.center, color="black")


def _plot_containment(s: Simplex, canvas: SvgCanvas) -> None:
    rr = root(s)
    circ = rr.source_circumsphere
    canvas.polygon(s.vertices, stroke="black", dash="4 3")
    canvas.circle(circ.center, circ.radius, stroke="#2ca02c", stroke_width=1.5)
    canvas.polygon(rr.root.vertices, stroke="#d62728", stroke_width=1.5)
    canvas.dot(circ.center, color="#2ca02c")


def _plot_centers(s: Simplex, steps: int, canvas: SvgCanvas) -> None:
    records = iterate(s, IterationConfig(max_steps=max(steps, 2)))
    for rec in records[: min(4, len(records))]:
        canvas.polygon(
            rec.simplex.vertices + rec.offset, stroke="#bbbbbb", stroke_width=0.8
        )
    odd = [rec.circumcenter for rec in records if rec.k % 2 == 1]
    even = [rec.circumcenter for rec in records if rec.k % 2 == 0]
    if len(odd) > 1:
        canvas.polyline(odd, stroke="#1f77b4", dash="2 2")
    if len(even) > 1:
        canvas.polyline(even, stroke="#d62728", dash="2 2")
    for p in odd:
        canvas.dot(p, color="#1f77b4")
    for p in even:
        canvas.dot(p, color="#d62728")


def cmd_plot(args) -> int:
    s, _ = _read_input(args.input)
    if s.dimension != 2:
        print("error: plotting requires dimension 2", file=sys.stderr)
        return EXIT_BAD_DIMENSION
    if is_degenerate(s):
        print("error: input simplex is degenerate", file=sys.stderr)
        return EXIT_DEGENERATE
    canvas = SvgCanvas()
    if args.show == "root":
        _plot_root(s, canvas)
    elif args.show == "containment":
        _plot_containment(s, canvas)
    else:
        _plot_centers(s, args.steps, canvas)
    svg = canvas.render()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simplexroot",
        description="Root-of-a-simplex toolkit: generate, iterate, verify, plot.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="emit a simplex document")
    p.add_argument("--dim", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quality", type=float, default=0.05)
    p.add_argument("--named", choices=None, help="equilateral | right-3-4-5 | regular-N")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("iterate", help="iterate the root transformation")
    p.add_argument("--input", help="simplex document path, or - for stdin")
    p.add_argument("--steps", type=int, default=40)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--no-recenter", action="store_true")
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("verify", help="run all property checkers")
    p.add_argument("--input")
    p.add_argument("--random", type=int, metavar="COUNT")
    p.add_argument("--dim", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mc-samples", type=int, default=100_000)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("plot", help="emit an SVG figure (n = 2 only)")
    p.add_argument("--input")
    p.add_argument("--steps", type=int, default=12)
    p.add_argument("--show", choices=["root", "containment", "centers"], default="root")
    p.add_argument("--output")
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DegenerateSimplexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except OverflowGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except (GeometryError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAIL


if __name__ == "__main__":
    sys.exit(main())
