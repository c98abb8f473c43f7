"""Command-line front end.

JSON goes to stdout, human diagnostics to stderr.  Exit codes: 0 success or
verified, 1 verification found failures (JSON detail on stdout), 2 usage or
parse error, 3 precondition violation.  Randomised subcommands require an
explicit --seed or derive one and print it; reports carry no timing, so a
rerun with the same seed and any --jobs value is byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .graphs import (
    COMPLETE,
    GraphFormatError,
    InternalCheckError,
    PreconditionError,
    blowup_from_json,
    load_graph,
    parse_graph,
    save_graph,
    write_graph,
)
from .gallai_edmonds import ge_decompose
from .matching import max_matching, max_two_matching
from .mono import has_cm_at_least, largest_mono_cm
from .reduction import params_from_json, reduce_blowup, reduce_complete
from .verify import (
    derive_complement_filter,
    gen_structure_b2,
    gen_structure_c,
    verify_bipartite_structure,
    verify_ge_random,
    verify_mono_cm_guarantee,
    verify_pulleyblank_random,
    verify_three_colour_structure,
)

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3


def _read_graph(path: str):
    if path == "-":
        return parse_graph(sys.stdin.read())
    return load_graph(path)


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def _load_json_arg(value: str) -> dict:
    text = value
    if not value.lstrip().startswith("{"):
        with open(value, encoding="utf-8") as fh:
            text = fh.read()
    return json.loads(text)


def _seed_or_derive(seed: int | None) -> int:
    if seed is not None:
        return seed
    derived = int.from_bytes(os.urandom(4), "big")
    print(f"derived seed {derived}", file=sys.stderr)
    return derived


def _cmd_matching(args) -> int:
    g = _read_graph(args.file)
    m = max_matching(g.n, g.simple_edges())
    _emit({"size": m.size, "edges": sorted(list(e) for e in m.edges)})
    return EXIT_OK


def _cmd_two_matching(args) -> int:
    g = _read_graph(args.file)
    t = max_two_matching(g.n, g.simple_edges())
    _emit(
        {
            "order": t.order,
            "edges": sorted(list(e) for e in t.edges),
            "odd_cycles": [list(c) for c in t.odd_cycles],
        }
    )
    return EXIT_OK


def _cmd_ge(args) -> int:
    g = _read_graph(args.file)
    ge = ge_decompose(g.n, g.simple_edges())
    _emit(
        {
            "A": sorted(ge.A),
            "C": sorted(ge.C),
            "D": sorted(ge.D),
            "d_components": [sorted(c) for c in ge.d_components],
        }
    )
    return EXIT_OK


def _cmd_cm(args) -> int:
    g = _read_graph(args.file)
    mode = {"m": "matching", "2m": "two_matching"}[args.mode]
    report = largest_mono_cm(g)
    out = report.to_json_dict()
    if args.thresholds:
        thresholds = [int(x) for x in args.thresholds.split(",")]
        k0 = args.k0 if args.k0 is not None else g.k
        met, witness = has_cm_at_least(g, thresholds, k0, mode)
        out["thresholds"] = thresholds
        out["k0"] = k0
        out["mode"] = mode
        out["met"] = met
        out["witness"] = witness.to_json_dict() if witness else None
    _emit(out)
    return EXIT_OK


def _cmd_reduce(args) -> int:
    g = _read_graph(args.file)
    params = params_from_json(_load_json_arg(args.params))
    if args.ground == "complete":
        report = reduce_complete(g, params)
    else:
        ground = blowup_from_json(_load_json_arg(args.ground))
        report = reduce_blowup(g, ground, params)
    if args.out:
        save_graph(report.g_prime, args.out)
    _emit(report.to_json_dict())
    return EXIT_OK


def _cmd_generate(args) -> int:
    if args.structure == "structure-c":
        seed = _seed_or_derive(args.seed)
        w = args.w if args.w is not None else 2 * args.m + 1 - args.z
        g = gen_structure_c(args.m, args.z, w, seed=seed)
    else:
        seed = _seed_or_derive(args.seed)
        g = gen_structure_b2(args.m, args.z, seed=seed)
    text = write_graph(g)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_verify(args) -> int:
    jobs = args.jobs
    if args.what == "lemma51":
        seed = None if args.sample is None else _seed_or_derive(args.seed)
        report = verify_three_colour_structure(args.m, sample=args.sample, seed=seed, jobs=jobs)
    elif args.what == "lemma52":
        seed = None if args.sample is None else _seed_or_derive(args.seed)
        report = verify_bipartite_structure(args.m, sample=args.sample, seed=seed, jobs=jobs)
    elif args.what == "corollary-cm":
        seed = None if args.sample is None else _seed_or_derive(args.seed)
        report = verify_mono_cm_guarantee(args.m, sample=args.sample, seed=seed, jobs=jobs)
    elif args.what == "ge":
        report = verify_ge_random(args.trials, _seed_or_derive(args.seed), args.n, jobs=jobs)
    elif args.what == "pulleyblank":
        report = verify_pulleyblank_random(args.trials, _seed_or_derive(args.seed), args.n, jobs=jobs)
    elif args.what == "claim41":
        g = _read_graph(args.file)
        params = params_from_json(_load_json_arg(args.params))
        if args.ground == "complete":
            ground = COMPLETE
        else:
            ground = blowup_from_json(_load_json_arg(args.ground))
        report = derive_complement_filter(g, ground, params)
    else:  # pragma: no cover
        raise AssertionError(args.what)
    _emit(report)
    if report.get("failures"):
        return EXIT_FAILURES
    if args.what == "claim41" and not report.get("bound_holds", True):
        return EXIT_FAILURES
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conmatch",
        description="Connected matchings in edge-coloured graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("matching", help="maximum matching of a graph file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_matching)

    p = sub.add_parser("two-matching", help="maximum-order 2-matching")
    p.add_argument("file")
    p.set_defaults(func=_cmd_two_matching)

    p = sub.add_parser("ge", help="Gallai-Edmonds decomposition")
    p.add_argument("file")
    p.set_defaults(func=_cmd_ge)

    p = sub.add_parser("cm", help="monochromatic connected-matching report")
    p.add_argument("file")
    p.add_argument("--mode", choices=("m", "2m"), default="m")
    p.add_argument("--thresholds", help="comma-separated per-colour vertex counts")
    p.add_argument("--k0", type=int)
    p.set_defaults(func=_cmd_cm)

    p = sub.add_parser("reduce", help="reduce to a complete colouring")
    p.add_argument("file")
    p.add_argument("--ground", required=True, help='"complete" or a blow-up spec JSON (path or inline)')
    p.add_argument("--params", required=True, help="params JSON (path or inline)")
    p.add_argument("--out", help="write the output graph here")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("generate", help="extremal colouring generators")
    gsub = p.add_subparsers(dest="structure", required=True)
    for name in ("structure-c", "structure-b2"):
        gp = gsub.add_parser(name)
        gp.add_argument("--m", type=int, required=True)
        gp.add_argument("--z", type=int, required=True)
        if name == "structure-c":
            gp.add_argument("--w", type=int)
        gp.add_argument("--seed", type=int)
        gp.add_argument("--out")
        gp.set_defaults(func=_cmd_generate)

    p = sub.add_parser("verify", help="exhaustive and sampled verifiers")
    vsub = p.add_subparsers(dest="what", required=True)
    for name in ("lemma51", "lemma52", "corollary-cm"):
        vp = vsub.add_parser(name)
        vp.add_argument("--m", type=int, required=True)
        vp.add_argument("--sample", type=int)
        vp.add_argument("--seed", type=int)
        vp.add_argument("--jobs", type=int, default=1)
        vp.set_defaults(func=_cmd_verify)
    for name in ("ge", "pulleyblank"):
        vp = vsub.add_parser(name)
        vp.add_argument("--trials", type=int, required=True)
        vp.add_argument("--seed", type=int)
        vp.add_argument("--n", type=int, default=10 if name == "ge" else 12)
        vp.add_argument("--jobs", type=int, default=1)
        vp.set_defaults(func=_cmd_verify)
    vp = vsub.add_parser("claim41")
    vp.add_argument("file")
    vp.add_argument("--params", required=True)
    vp.add_argument("--ground", default="complete")
    vp.add_argument("--jobs", type=int, default=1)
    vp.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GraphFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        detail = {"error": {"kind": "precondition", "message": str(exc)}}
        if exc.witness is not None and hasattr(exc.witness, "to_json_dict"):
            detail["error"]["witness"] = exc.witness.to_json_dict()
        _emit(detail)
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except InternalCheckError as exc:
        _emit({"error": {"kind": "internal", "message": str(exc)}})
        print(f"internal check failed: {exc}", file=sys.stderr)
        return EXIT_FAILURES
    except json.JSONDecodeError as exc:
        print(f"bad JSON: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
