"""Command-line front end.

    geochroma gen -n 27 --seed 1 --out pts.json
    geochroma build thm32 -k 4 --out dec.json
    geochroma color dec.json --mode exact
    geochroma verify dec.json
    geochroma stats dec.json
    geochroma render dec.json --out dec.svg --color 0
    geochroma experiment all

Exit codes: 0 success, 1 validation failure, 2 usage error.  Every command
honors --seed and produces byte-identical outputs for identical inputs; a
run manifest (command, parameters, seed, version, timing, output digests) is
written next to each --out file.  GEOCHROMA_THREADS caps parallelism (the
toolkit runs single-threaded, which respects any cap).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

from . import __version__
from .exactgeom import (
    GeometryError,
    convex_configuration,
    generate_general_position,
    load_config,
    save_config,
)
from .constructions import (
    ConstructionError,
    load_decomposition,
    save_decomposition,
    thm3_construction,
    thm4_construction,
    thm5_construction,
    thm32_construction,
    trivial_edge_decomposition,
    validate_decomposition,
)
from .chroma import conflict_graph, exact_chromatic_index, greedy_color, verify_coloring
from .render import render_svg
from .experiments import SUITES, run_all, run_suites

USAGE_ERROR = 2
VALIDATION_ERROR = 1


class CliError(Exception):
    def __init__(self, message, code=USAGE_ERROR):
        super().__init__(message)
        self.code = code


def _threads_cap() -> int:
    raw = os.environ.get("GEOCHROMA_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise CliError(f"GEOCHROMA_THREADS must be an integer, got {raw!r}")


def _write_manifest(out_path: str, command: str, params: dict, seed, t0: float):
    digest = hashlib.sha256(open(out_path, "rb").read()).hexdigest()
    manifest = {
        "command": command,
        "parameters": params,
        "seed": seed,
        "version": __version__,
        "elapsed_s": round(time.time() - t0, 3),
        "outputs": {os.path.basename(out_path): digest},
    }
    with open(out_path + ".manifest.json", "w") as fh:
        json.dump(manifest, fh, sort_keys=True, indent=1)
        fh.write("\n")


def cmd_gen(args) -> int:
    t0 = time.time()
    if args.mode == "convex":
        if args.seed_given:
            pass  # seed accepted but irrelevant in convex mode
        config = convex_configuration(args.n)
    else:
        config = generate_general_position(args.n, bound=args.bound, seed=args.seed)
    if args.out:
        save_config(config, args.out)
        _write_manifest(args.out, "gen", {"n": args.n, "mode": args.mode,
                                          "bound": args.bound}, args.seed, t0)
        print(f"wrote {args.out} ({config.mode}, n={config.n})")
    else:
        from .exactgeom import config_to_dict

        print(json.dumps(config_to_dict(config), sort_keys=True))
    return 0


def _build_config(args, need_mode):
    if args.config:
        cfg = load_config(args.config)
        if need_mode is not None and cfg.mode != need_mode:
            raise CliError(f"{args.construction} needs a {need_mode} configuration")
        return cfg
    mode = need_mode or args.mode
    if args.n is None:
        raise CliError("provide -n or --config")
    if mode == "convex":
        return convex_configuration(args.n)
    return generate_general_position(args.n, seed=args.seed)


def cmd_build(args) -> int:
    t0 = time.time()
    coloring = None
    name = args.construction
    if name == "edges":
        cfg = _build_config(args, None)  # any configuration mode works
        decomp = trivial_edge_decomposition(cfg)
    elif name == "thm4":
        if args.n is None:
            raise CliError("thm4 needs -n (multiple of 3)")
        decomp = thm4_construction(args.n).decomposition
    elif name == "thm3":
        from .constructions import largest_thm3_q

        cfg = load_config(args.config) if args.config else None
        q = args.q
        if q is None:
            if cfg is None and args.n is None:
                raise CliError("thm3 needs -q, or -n/--config to derive it")
            q = largest_thm3_q(cfg.n if cfg is not None else args.n)
        if cfg is None and args.n is not None and args.n >= 7 * q + 6:
            cfg = generate_general_position(args.n, seed=args.seed)
        decomp = thm3_construction(q, config=cfg, seed=args.seed).decomposition
    elif name == "thm5":
        cfg = _build_config(args, "coordinates")
        res = thm5_construction(cfg, threshold=args.threshold)
        decomp, coloring = res.decomposition, res.coloring
    elif name == "thm32":
        if args.k is None:
            raise CliError("thm32 needs -k (even, >= 4)")
        decomp, coloring = thm32_construction(args.k)
    else:  # pragma: no cover - argparse restricts choices
        raise CliError(f"unknown construction {name}")
    out = args.out or f"{name}.json"
    save_decomposition(decomp, out, coloring=coloring)
    _write_manifest(out, f"build {name}",
                    {k: getattr(args, k) for k in ("n", "q", "k", "threshold")},
                    args.seed, t0)
    stats = decomp.metadata
    extra = f", colors={coloring.palette}" if coloring else ""
    print(f"wrote {out} (parts={len(decomp.parts)}{extra})")
    for key in ("distinguished_k4", "distinguished_triangles", "colors",
                "non_triangle_edge_fraction"):
        if key in stats:
            print(f"  {key}: {stats[key]}")
    return 0


def cmd_color(args) -> int:
    t0 = time.time()
    decomp, _ = load_decomposition(args.file)
    g = conflict_graph(decomp)
    if args.mode == "greedy":
        coloring = greedy_color(g)
        print(f"greedy palette: {coloring.palette}")
    else:
        res = exact_chromatic_index(g, budget=args.budget)
        coloring = res.coloring
        flag = "exact" if res.optimal else "bounds-only"
        print(f"chromatic index: [{res.lower}, {res.upper}] ({flag})")
    bad = verify_coloring(decomp, coloring)
    if bad:
        print(f"coloring invalid: {len(bad)} violating pairs", file=sys.stderr)
        return VALIDATION_ERROR
    out = args.out or args.file
    save_decomposition(decomp, out, coloring=coloring)
    _write_manifest(out, f"color {args.mode}", {"budget": args.budget}, None, t0)
    print(f"wrote {out}")
    return 0


def cmd_verify(args) -> int:
    decomp, coloring = load_decomposition(args.file)
    rep = validate_decomposition(decomp)
    print(f"exact cover: {'ok' if rep['valid'] else 'FAILED'} "
          f"(uncovered={len(rep['uncovered'])}, repeated={len(rep['repeated'])})")
    ok = rep["valid"]
    if coloring is not None:
        bad = verify_coloring(decomp, coloring)
        print(f"coloring: {'ok' if not bad else 'FAILED'} "
              f"({len(bad)} violating pairs, palette {coloring.palette})")
        ok = ok and not bad
    return 0 if ok else VALIDATION_ERROR


def cmd_stats(args) -> int:
    decomp, coloring = load_decomposition(args.file)
    n = decomp.config.n
    sizes = {}
    for p in decomp.parts:
        sizes[len(p.vertices)] = sizes.get(len(p.vertices), 0) + 1
    print(f"n: {n} ({decomp.config.mode})")
    print(f"parts: {len(decomp.parts)}")
    for s in sorted(sizes):
        kind = {2: "singleton edges", 3: "triangles", 4: "K4s"}.get(s, f"size-{s}")
        print(f"  {kind}: {sizes[s]}")
    if coloring is not None:
        print(f"colors: {coloring.palette}")
        bound = n * n / 9
        if coloring.palette > bound:
            c_fit = (coloring.palette - bound) / n**1.5
            print(f"  n^2/9 = {bound:.1f}; palette = n^2/9 + {c_fit:.4f} * n^1.5")
        else:
            print(f"  n^2/9 = {bound:.1f}; palette within n^2/9 (C = 0)")
    for key, val in sorted(decomp.metadata.items()):
        if key != "levels":
            print(f"meta {key}: {val}")
    return 0


def cmd_render(args) -> int:
    t0 = time.time()
    decomp, coloring = load_decomposition(args.file)
    svg = render_svg(
        decomp,
        coloring=coloring,
        color_filter=args.color,
        show_singletons=not args.no_singletons,
    )
    out = args.out or (os.path.splitext(args.file)[0] + ".svg")
    with open(out, "w") as fh:
        fh.write(svg)
    _write_manifest(out, "render", {"color": args.color}, None, t0)
    print(f"wrote {out}")
    return 0


def cmd_experiment(args) -> int:
    _threads_cap()
    if args.suite == "all":
        result = run_all(fail_fast=args.fail_fast)
    else:
        result = run_suites([args.suite], fail_fast=args.fail_fast)
    for rep in result["criteria"]:
        status = "PASS" if rep["pass"] else "FAIL"
        print(f"{status} criterion {rep['criterion']} ({rep['name']}) "
              f"in {rep['elapsed_s']}s")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(result, fh, sort_keys=True, indent=1, default=str)
            fh.write("\n")
        print(f"wrote {args.out}")
    print("overall:", "PASS" if result["pass"] else "FAIL")
    return 0 if result["pass"] else VALIDATION_ERROR


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="geochroma",
        description="decompositions and colorings of complete geometric graphs",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a configuration file")
    g.add_argument("-n", type=int, required=True)
    g.add_argument("--mode", choices=("coordinates", "convex"), default="coordinates")
    g.add_argument("--convex", dest="mode", action="store_const", const="convex")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--bound", type=int, default=1 << 20)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("build", help="build a decomposition")
    b.add_argument("construction", choices=("edges", "thm3", "thm4", "thm5", "thm32"))
    b.add_argument("-n", type=int)
    b.add_argument("-q", type=int)
    b.add_argument("-k", type=int)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--threshold", type=int, default=72)
    b.add_argument("--mode", choices=("coordinates", "convex"), default="convex")
    b.add_argument("--config", help="input configuration file")
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("color", help="color a decomposition file")
    c.add_argument("file")
    c.add_argument("--mode", choices=("greedy", "exact"), default="greedy")
    c.add_argument("--budget", type=int, default=2_000_000)
    c.add_argument("--out")
    c.set_defaults(func=cmd_color)

    v = sub.add_parser("verify", help="validate cover and coloring")
    v.add_argument("file")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("stats", help="print decomposition statistics")
    s.add_argument("file")
    s.set_defaults(func=cmd_stats)

    r = sub.add_parser("render", help="render a decomposition to SVG")
    r.add_argument("file")
    r.add_argument("--out")
    r.add_argument("--color", type=int, help="draw only this color class")
    r.add_argument("--no-singletons", action="store_true")
    r.set_defaults(func=cmd_render)

    e = sub.add_parser("experiment", help="run acceptance suites")
    e.add_argument("suite", choices=sorted(SUITES) + ["all"])
    e.add_argument("--fail-fast", action="store_true")
    e.add_argument("--out")
    e.set_defaults(func=cmd_experiment)
    return ap


def main(argv=None) -> int:
    ap = _parser()
    args = ap.parse_args(argv)
    args.seed_given = "--seed" in (argv or sys.argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (GeometryError, ConstructionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
