"""Command-line entry point: solve, reduce, oracle, gen, render, bench."""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from . import formats
from .geometry import GeometryError, dualize
from .graph import GraphError
from .oracle import OracleCapExceeded, oracle_solve
from .solver import SolverConfig, solve


class CliError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text() if path != "-" else sys.stdin.read()
    except OSError as exc:
        raise CliError(f"io: {exc.strerror}: {path}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def load_instance(path: str):
    """Read a cpg or obs file; returns (instance, dual result or None)."""
    text = _read(path)
    kind = formats.sniff(text)
    if kind == "obs":
        dual = dualize(formats.parse_obs(text))
        return dual.instance, dual
    if kind == "cpg":
        return formats.parse_cpg(text), None
    raise CliError(f"format: unrecognised header {kind!r} in {path}")


def _threshold(value: str):
    if value in ("exact", "inf"):
        return value
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("threshold must be 'exact', 'inf' or an integer") from None
    if n < 1:
        raise argparse.ArgumentTypeError("threshold override must be at least 1")
    return n


def cmd_solve(args) -> int:
    inst, _ = load_instance(args.file)
    trace = open(args.trace, "w") if args.trace else None
    try:
        sol = solve(inst, SolverConfig(threshold=args.threshold, jobs=args.jobs, trace=trace))
    finally:
        if trace:
            trace.close()
    if args.certificates:
        from .pruning import dump_certificates
        Path(args.certificates).write_text(dump_certificates([c for _, c in sol.certificates]))
    _write(args.output, sol.format())
    return 0


def cmd_oracle(args) -> int:
    inst, _ = load_instance(args.file)
    _write(args.output, oracle_solve(inst).format())
    return 0


def cmd_reduce(args) -> int:
    geo = formats.parse_obs(_read(args.file))
    _write(args.output, formats.serialize_cpg(dualize(geo).instance))
    return 0


def cmd_gen(args) -> int:
    from . import generators as gen

    if args.kind == "grid":
        inst = gen.grid(args.rows, args.cols, args.colors, args.seed, k=args.k,
                        diagonals=args.diagonals)
        text = formats.serialize_cpg(inst)
    elif args.kind == "star":
        text = formats.serialize_cpg(gen.star(args.m, k=args.k))
    elif args.kind == "scene":
        text = formats.serialize_obs(gen.scene(args.polygons, args.seed, k=args.k))
    else:
        text = formats.serialize_obs(gen.rings(args.q, k=args.k))
    _write(args.output, text)
    return 0


def cmd_render(args) -> int:
    from .render import render_arrangement, render_instance

    inst, dual = load_instance(args.file)
    path = None
    if args.path:
        verdict, path, _ = formats.parse_solution(_read(args.path))
        if path is not None and any(not 0 <= v < inst.n for v in path):
            raise CliError("format: solution mentions vertices outside the instance")
    if dual is None:
        svg = render_instance(inst, path)
    else:
        points = None
        if path:
            geo = formats.parse_obs(_read(args.file))
            arr = dual.arrangement
            points = [geo.s]
            for v in path:
                f = dual.face_of_vertex[v]
                points.append(arr.faces[f].sample if f is not None else geo.t)
            points.append(geo.t)
        svg = render_arrangement(dual.arrangement, points,
                                 [inst.graph.colors[f] for f in range(len(dual.arrangement.faces))])
    _write(args.output, svg)
    return 0


def cmd_bench(args) -> int:
    root = Path(args.corpus)
    if not root.is_dir():
        raise CliError(f"io: not a directory: {root}")
    files = sorted(p for p in root.iterdir() if p.suffix in (".cpg", ".obs"))
    rows = [("instance", "verdict", "rounds", "family_sizes", "wall_s")]
    for f in files:
        inst, _ = load_instance(str(f))
        start = time.perf_counter()
        sol = solve(inst, SolverConfig(threshold=args.threshold, jobs=args.jobs))
        wall = time.perf_counter() - start
        sizes = ",".join(str(r["kept"] if r["kept"] is not None else r["extended"]) for r in sol.rounds)
        rows.append((f.name, sol.verdict, str(len(sol.rounds)), sizes or "-", f"{wall:.4f}"))
    _write(args.output, "".join("\t".join(r) + "\n" for r in rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="colorpath",
                                     description="Few-color paths in colored planar graphs.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide an instance (cpg or obs)")
    p.add_argument("file")
    p.add_argument("--threshold", type=_threshold, default="exact")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--trace", help="write per-round JSON telemetry here")
    p.add_argument("--certificates", help="write the pruning certificate dump here")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="decide an instance by exhaustive search")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("reduce", help="turn an obstacle scene into a cpg graph")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("kind", choices=["grid", "scene", "star", "rings"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--rows", type=int, default=5)
    p.add_argument("--cols", type=int, default=5)
    p.add_argument("--colors", type=int, default=8)
    p.add_argument("--diagonals", action="store_true")
    p.add_argument("--polygons", type=int, default=5)
    p.add_argument("--m", type=int, default=25)
    p.add_argument("--q", type=int, default=3)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("render", help="draw an instance as SVG")
    p.add_argument("file")
    p.add_argument("-p", "--path", help="solution file to highlight")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("bench", help="solve every .cpg/.obs file in a directory")
    p.add_argument("corpus")
    p.add_argument("--threshold", type=_threshold, default="exact")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)
    return parser


_DEFAULT_K = {"grid": 3, "scene": 2, "star": 1, "rings": None}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "gen" and args.k is None:
        args.k = _DEFAULT_K[args.kind]
    try:
        return args.func(args)
    except CliError as exc:
        msg = str(exc)
    except formats.FormatError as exc:
        msg = f"format: {exc}"
    except GeometryError as exc:
        msg = f"geometry: {exc}"
    except GraphError as exc:
        msg = f"invalid: {exc}"
    except OracleCapExceeded as exc:
        msg = f"cap: {exc}"
    except ValueError as exc:
        msg = f"value: {exc}"
    print("error: " + msg.replace("\n", " "), file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
