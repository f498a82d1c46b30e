"""Command-line front end: trace, cover, graph, verify, probe."""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path as FsPath

from . import synth
from .arcs import build_arc_graph
from .cover import CoverCapError, brute_force_cover, complexity_probe, forward_cover, saturated_cover
from .paths import Adjacency, PathFormatError, path_from_json, path_to_json
from .pbm import PbmError, load_pbm
from .predicates import PredicateError, PredicateSpec, list_predicates
from .svg import render_cover_svg, render_trace_svg
from .trace import OddVerticesError, TraceError, find_junctions, trace_image
from .verify import run_verification

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_BAD_INPUT = 2
EXIT_CPP_CAP = 3


def _atomic_write(path: FsPath, data: str | bytes) -> None:
    mode = "wb" if isinstance(data, bytes) else "w"
    fd, tmp = tempfile.mkstemp(dir=str(path.parent), prefix=path.name + ".")
    try:
        with os.fdopen(fd, mode) as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def _parse_params(items) -> dict:
    params = {}
    for item in items or ():
        if "=" not in item:
            raise PredicateError(f"--param wants k=v, got {item!r}")
        key, _, value = item.partition("=")
        try:
            params[key.strip()] = int(value)
        except ValueError:
            raise PredicateError(f"parameter {key!r} must be an integer, got {value!r}") from None
    return params


def _spec_from_args(args) -> PredicateSpec:
    if not args.predicate:
        raise PredicateError("a predicate is required (--predicate NAME)")
    return PredicateSpec(args.predicate, _parse_params(args.param))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="satcover",
                                     description="saturated subpath covers of digital paths")
    parser.add_argument("--list-predicates", action="store_true",
                        help="list registered predicates and exit")
    sub = parser.add_subparsers(dest="command")

    p_trace = sub.add_parser("trace", help="binary image (PBM) to one path JSON per component")
    p_trace.add_argument("image", help="PBM file (P1 or P4)")
    p_trace.add_argument("--adjacency", choices=("4", "8"), default="8")
    p_trace.add_argument("--out-dir", default=None, help="output directory (default: alongside input)")
    p_trace.add_argument("--emit-graph", action="store_true", help="also write curve-graph JSON")
    p_trace.add_argument("--jobs", type=int, default=1,
                         help="trace components in a process pool of this size")
    p_trace.add_argument("--svg", default=None, help="render image, junctions and paths to SVG")

    p_cover = sub.add_parser("cover", help="saturated cover of a path JSON")
    p_cover.add_argument("path", help="path JSON file")
    p_cover.add_argument("--predicate", required=True)
    p_cover.add_argument("--param", action="append", metavar="K=V")
    p_cover.add_argument("--forward", action="store_true", help="use the forward-only sweep")
    p_cover.add_argument("--oracle", action="store_true",
                         help="cross-check against the brute-force cover; nonzero exit on mismatch")
    p_cover.add_argument("--svg", default=None, help="render path, segments and arc diagram")
    p_cover.add_argument("-o", "--output", default=None, help="write cover JSON here (default stdout)")

    p_graph = sub.add_parser("graph", help="circular-arc graph of a cover")
    p_graph.add_argument("path", help="path JSON file")
    p_graph.add_argument("--predicate", required=True)
    p_graph.add_argument("--param", action="append", metavar="K=V")
    p_graph.add_argument("--forward", action="store_true")
    p_graph.add_argument("--dot", default=None, help="also write Graphviz DOT here")
    p_graph.add_argument("-o", "--output", default=None)

    p_verify = sub.add_parser("verify", help="run the randomized invariant suite")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--count", type=int, default=120, help="number of random paths")
    p_verify.add_argument("--max-points", type=int, default=120)
    p_verify.add_argument("--trials", type=int, default=10_000, help="conservativity trials")

    p_probe = sub.add_parser("probe", help="predicate-call counts across path sizes")
    p_probe.add_argument("--predicate", required=True)
    p_probe.add_argument("--param", action="append", metavar="K=V")
    p_probe.add_argument("--sizes", default="1000,10000,100000",
                         help="comma-separated point counts")
    p_probe.add_argument("--shape", choices=("circle", "line", "walk"), default="circle")
    p_probe.add_argument("--adjacency", choices=("4", "8", "index"), default="8")
    p_probe.add_argument("--closed", action="store_true",
                         help="generate closed walks (circles are always closed)")
    p_probe.add_argument("--seed", type=int, default=0)
    p_probe.add_argument("-o", "--output", default=None)
    return parser


def _cmd_trace(args) -> int:
    src = FsPath(args.image)
    try:
        img = load_pbm(src.read_bytes())
    except OSError as exc:
        print(f"error: cannot read {src}: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except PbmError as exc:
        print(f"error: malformed PBM: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    adjacency = Adjacency.from_code(args.adjacency)
    try:
        traces = trace_image(img, adjacency, jobs=max(1, args.jobs))
    except OddVerticesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CPP_CAP
    except TraceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    out_dir = FsPath(args.out_dir) if args.out_dir else src.parent
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = src.stem
    for i, tr in enumerate(traces):
        target = out_dir / f"{stem}_c{i}.json"
        _atomic_write(target, path_to_json(tr.path) + "\n")
        print(target)
        if args.emit_graph and tr.graph is not None:
            gtarget = out_dir / f"{stem}_c{i}.graph.json"
            _atomic_write(gtarget, _dump(tr.graph.to_json_dict()))
            print(gtarget)
    if args.svg:
        junction_pixels = set()
        for j in find_junctions(img, adjacency):
            junction_pixels |= j.pixels
        svg = render_trace_svg(img, junction_pixels, [tr.path for tr in traces])
        _atomic_write(FsPath(args.svg), svg)
    return EXIT_OK


def _load_path(file: str):
    return path_from_json(FsPath(file).read_text())


def _cmd_cover(args) -> int:
    path = _load_path(args.path)
    spec = _spec_from_args(args)
    cover = forward_cover(path, spec) if args.forward else saturated_cover(path, spec)
    if args.oracle:
        try:
            oracle = brute_force_cover(path, spec)
        except CoverCapError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_BAD_INPUT
        if oracle.segments != cover.segments:
            print(f"oracle mismatch: sweep {list(cover.segments)} vs brute force "
                  f"{list(oracle.segments)}", file=sys.stderr)
            return EXIT_FAIL
    doc = _dump(cover.to_json_dict())
    if args.output:
        _atomic_write(FsPath(args.output), doc)
    else:
        sys.stdout.write(doc)
    if args.svg:
        _atomic_write(FsPath(args.svg), render_cover_svg(path, cover))
    return EXIT_OK


def _cmd_graph(args) -> int:
    path = _load_path(args.path)
    spec = _spec_from_args(args)
    cover = forward_cover(path, spec) if args.forward else saturated_cover(path, spec)
    graph = build_arc_graph(cover)
    doc = _dump(graph.to_json_dict())
    if args.output:
        _atomic_write(FsPath(args.output), doc)
    else:
        sys.stdout.write(doc)
    if args.dot:
        _atomic_write(FsPath(args.dot), graph.to_dot())
    return EXIT_OK


def _cmd_verify(args) -> int:
    results = run_verification(seed=args.seed, count=args.count,
                               max_points=args.max_points,
                               conservativity_trials=args.trials)
    ok = True
    for res in results:
        print(res.line())
        ok = ok and res.ok
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_probe(args) -> int:
    spec = _spec_from_args(args)
    sizes = [int(s) for s in args.sizes.split(",") if s]
    adjacency = Adjacency.from_code(args.adjacency)
    try:
        factory = synth.shape_factory(args.shape, adjacency, seed=args.seed,
                                      closed=args.closed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    rows = complexity_probe(spec, sizes, factory)
    print(f"{'n':>10} {'calls':>12} {'calls/n':>10}")
    for row in rows:
        print(f"{row.n_points:>10} {row.predicate_calls:>12} {row.ratio:>10.3f}")
    if args.output:
        doc = _dump([{"n": r.n_points, "calls": r.predicate_calls, "ratio": r.ratio}
                     for r in rows])
        _atomic_write(FsPath(args.output), doc)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.list_predicates:
        for info in list_predicates():
            params = ", ".join(info.params) if info.params else "-"
            flag = "" if info.conservative else "  [non-conservative]"
            print(f"{info.name:<16} params: {params:<8} {info.doc}{flag}")
        return EXIT_OK
    if not args.command:
        parser.print_help()
        return EXIT_BAD_INPUT
    try:
        if args.command == "trace":
            return _cmd_trace(args)
        if args.command == "cover":
            return _cmd_cover(args)
        if args.command == "graph":
            return _cmd_graph(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "probe":
            return _cmd_probe(args)
    except (PathFormatError, PredicateError, PbmError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
