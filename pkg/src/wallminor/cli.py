"""Command-line front end.

Exit codes: 0 success, 1 validation failure, 2 separation claims failure,
3 verification failure, 4 I/O or format error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import corpus
from .drawing import (
    format_drawing,
    format_graph,
    load_drawing,
    load_graph,
    shift_draw,
)
from .embedder import (
    compute_scale_params,
    embed,
    format_embedding,
    read_embedding,
    scale_layout,
)
from .errors import (
    ClaimsError,
    ContractError,
    EmbeddingError,
    FormatError,
    RenderError,
    ValidationError,
)
from .svg import DEFAULT_CAP, render_drawing, render_embedding, render_wall
from .verifier import verify_embedding
from .router import route_segment
from .wall import WallDims, WallVertex

EXIT_OK, EXIT_INVALID, EXIT_CLAIMS, EXIT_VERIFY, EXIT_IO = 0, 1, 2, 3, 4


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_draw(args) -> int:
    g = load_graph(args.graph)
    _write(args.output, format_drawing(shift_draw(g)))
    return EXIT_OK


def cmd_embed(args) -> int:
    start = time.perf_counter()
    g = load_graph(args.graph)
    if args.drawing and args.draw:
        raise ValidationError("give either a drawing file or --draw, not both")
    if args.drawing:
        d = load_drawing(args.drawing, g)
    elif args.draw or g.n <= 2:
        d = shift_draw(g) if g.n > 2 else None
    else:
        raise ValidationError("a drawing file or --draw is required")
    result = embed(g, d, sigma_override=args.sigma_override)
    _write(args.output, format_embedding(result))
    status = EXIT_OK
    if args.verify != "off":
        report = verify_embedding(g, result.dims, result, args.verify)
        for v in report.violations:
            print(v, file=sys.stderr)
        print(report.verdict, file=sys.stderr if args.output in (None, "-") else sys.stdout)
        if not report.ok:
            status = EXIT_VERIFY
    if args.svg:
        layout = None
        if result.params is not None:
            layout = scale_layout(d, result.params, g.edge_keys())
        Path(args.svg).write_text(render_embedding(result, layout, cap=args.cap))
    if args.stats:
        stats = dict(result.stats)
        stats["elapsed_seconds"] = round(time.perf_counter() - start, 3)
        print(json.dumps(stats, indent=2, sort_keys=True), file=sys.stderr)
    return status


def cmd_verify(args) -> int:
    g = load_graph(args.graph)
    result, problems = read_embedding(args.embedding)
    report = verify_embedding(g, result.dims, result, args.mode, problems)
    for v in report.violations:
        print(v, file=sys.stderr)
    print(report.verdict)
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_render(args) -> int:
    if args.wall:
        svg = render_wall(WallDims(*args.wall), cap=args.cap)
    elif args.embedding:
        result, problems = read_embedding(args.embedding)
        if problems:
            raise FormatError("; ".join(problems))
        layout = None
        if args.graph and args.drawing:
            g = load_graph(args.graph)
            d = load_drawing(args.drawing, g)
            params = compute_scale_params(d.bound, args.sigma_override)
            layout = scale_layout(d, params, g.edge_keys())
        svg = render_embedding(result, layout, cap=args.cap)
    elif args.drawing:
        if not args.graph:
            raise ValidationError("rendering a drawing needs --graph")
        g = load_graph(args.graph)
        svg = render_drawing(g, load_drawing(args.drawing, g))
    else:
        raise ValidationError("render needs --wall, --embedding or --drawing")
    _write(args.output, svg)
    return EXIT_OK


def cmd_route(args) -> int:
    dims = WallDims(*args.dims)
    path = route_segment(dims, WallVertex(*args.start), WallVertex(*args.end))
    print(f"{path.start.row} {path.start.col} {path.moves}")
    if args.vertices:
        for v in path.vertex_list():
            print(v.row, v.col)
    return EXIT_OK


def cmd_generate(args) -> int:
    if args.name == "random":
        g = corpus.random_planar_cubic(args.n, seed=args.seed)
    else:
        g = corpus.named(args.name)
    _write(args.output, format_graph(g))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wallminor", description="Embed degree-3 planar graphs as topological minors of walls."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("draw", help="straight-line grid drawing from the graph's rotation system")
    p.add_argument("graph")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_draw)

    p = sub.add_parser("embed", help="embed a graph into a wall")
    p.add_argument("graph")
    p.add_argument("drawing", nargs="?")
    p.add_argument("--draw", action="store_true", help="compute the drawing from the rotation system")
    p.add_argument("--sigma-override", type=int, metavar="SIGMA", help="smaller even scale factor, multiple of 4N")
    p.add_argument("--verify", choices=("strict", "literal", "off"), default="strict")
    p.add_argument("--svg", metavar="PATH")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest wall side to render")
    p.add_argument("--stats", action="store_true", help="print statistics as JSON on stderr")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("verify", help="check an embedding file against a graph")
    p.add_argument("graph")
    p.add_argument("embedding")
    p.add_argument("--mode", choices=("strict", "literal"), default="strict")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="write an SVG figure")
    p.add_argument("--wall", type=int, nargs=2, metavar=("ROWS", "COLS"))
    p.add_argument("--embedding")
    p.add_argument("--drawing")
    p.add_argument("--graph")
    p.add_argument("--sigma-override", type=int, metavar="SIGMA")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("route", help="debug: route one segment through a wall")
    p.add_argument("--dims", type=int, nargs=2, metavar=("ROWS", "COLS"), required=True)
    p.add_argument("--start", type=int, nargs=2, metavar=("ROW", "COL"), required=True)
    p.add_argument("--end", type=int, nargs=2, metavar=("ROW", "COL"), required=True)
    p.add_argument("--vertices", action="store_true", help="also list every vertex")
    p.set_defaults(func=cmd_route)

    p = sub.add_parser("generate", help="write a graph file")
    p.add_argument("name", choices=(*corpus.NAMED, "random"))
    p.add_argument("--n", type=int, default=8, help="vertex count for random graphs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ClaimsError as exc:
        print(f"error: separation claims failed\n{exc.report}", file=sys.stderr)
        return EXIT_CLAIMS
    except (ValidationError, EmbeddingError, ContractError, RenderError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
