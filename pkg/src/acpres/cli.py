"""Command-line interface.

Exit codes: 0 success/found, 1 internal error, 2 parse or input error,
3 inconclusive coset enumeration, 4 search exhausted, 5 budget exceeded.
Presentation arguments are literal text when they start with '<',
otherwise they name a file to read.
"""

import argparse
import json
import sys
from pathlib import Path

from . import families, heegaard, words
from .coset import EnumerationLimits, Finished, enumerate_cosets
from .errors import AcpresError, ParseError
from .invariants import (
    abs_det,
    basis_bitstrings,
    exponent_matrix,
    mod2_row_space,
)
from .presentation import (
    Rotate,
    Transcript,
    apply_move,
    evolve_names,
    format_presentation,
    format_transcript,
    normalize,
    parse_move,
    parse_presentation,
    parse_transcript,
    replay,
)
from .search import SearchConfig, goal_rank, search_trivialization

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_PARSE = 2
EXIT_INCONCLUSIVE = 3
EXIT_EXHAUSTED = 4
EXIT_BUDGET = 5


def _read_presentation(arg):
    text = arg if arg.lstrip().startswith("<") else Path(arg).read_text()
    return parse_presentation(text)


def _emit(args, text_lines, payload):
    if getattr(args, "format", "text") == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _presentation_payload(P, names):
    return {
        "n_generators": P.n_generators,
        "generators": list(names),
        "relators": [list(r) for r in P.relators],
        "balanced": P.balanced,
        "text": format_presentation(P, names),
    }


def cmd_parse(args):
    P, names = _read_presentation(args.presentation)
    _emit(args, [format_presentation(P, names)], _presentation_payload(P, names))
    return EXIT_OK


def cmd_normalize(args):
    P, _ = _read_presentation(args.presentation)
    canon = normalize(P).as_presentation()
    names = words.default_names(canon.n_generators)
    _emit(args, [format_presentation(canon, names)], _presentation_payload(canon, names))
    return EXIT_OK


def cmd_invariants(args):
    P, _ = _read_presentation(args.presentation)
    M = exponent_matrix(P)
    det = abs_det(M) if M.is_square else None
    space = mod2_row_space(M)
    lines = [
        f"abs_det: {det if det is not None else 'n/a'}",
        f"mod2_rank: {space.rank}",
    ]
    lines.extend(basis_bitstrings(space))
    _emit(
        args,
        lines,
        {"abs_det": det, "mod2_rank": space.rank, "mod2_basis": basis_bitstrings(space)},
    )
    return EXIT_OK


def cmd_apply(args):
    P, names = _read_presentation(args.presentation)
    for line in args.move:
        m = parse_move(line)
        P = apply_move(P, m)
        names = evolve_names(names, m)
    _emit(args, [format_presentation(P, names)], _presentation_payload(P, names))
    return EXIT_OK


def cmd_verify(args):
    text = Path(args.transcript).read_text()
    t, names = parse_transcript(text)
    P = t.initial
    for m, P in zip(t.moves, replay(t, strict=args.strict)):
        names = evolve_names(names, m)
    canon = normalize(P).as_presentation()
    lines = [format_presentation(P, names)]
    _emit(
        args,
        lines,
        {
            "final": format_presentation(P, names),
            "canonical": format_presentation(canon, words.default_names(canon.n_generators)),
            "moves": len(t.moves),
        },
    )
    return EXIT_OK


def cmd_tc(args):
    P, _ = _read_presentation(args.presentation)
    outcome = enumerate_cosets(
        P, EnumerationLimits(max_cosets=args.max_cosets, max_steps=args.max_steps)
    )
    if isinstance(outcome, Finished):
        _emit(args, [f"order={outcome.order}"], {"outcome": "finished", "order": outcome.order})
        return EXIT_OK
    _emit(
        args,
        [f"inconclusive live={outcome.live_cosets}"],
        {"outcome": "limit_exceeded", "live": outcome.live_cosets},
    )
    return EXIT_INCONCLUSIVE


def cmd_search(args):
    P, names = _read_presentation(args.presentation)
    cfg = SearchConfig(
        move_set=args.moves,
        strategy=args.strategy,
        max_depth=args.max_depth,
        max_total_length=args.max_length,
        max_generators=args.max_gens,
        node_budget=args.budget,
        goal=args.goal,
    )
    result = search_trivialization(P, cfg)
    payload = {
        "outcome": result.outcome,
        "nodes_expanded": result.nodes_expanded,
        "dedup_hits": result.dedup_hits,
    }
    if result.outcome == "found":
        t = result.transcript
        if args.emit:
            Path(args.emit).write_text(format_transcript(t, names))
        final = t.initial
        final_names = list(names)
        for m, final in zip(t.moves, replay(t)):
            final_names = evolve_names(final_names, m)
        payload["moves"] = len(t.moves)
        payload["final"] = format_presentation(final, final_names)
        _emit(
            args,
            [
                f"found moves={len(t.moves)} nodes={result.nodes_expanded}",
                format_presentation(final, final_names),
            ],
            payload,
        )
        return EXIT_OK
    if result.outcome == "exhausted":
        payload["states"] = result.frontier_stats["states"]
        _emit(args, [f"exhausted states={result.frontier_stats['states']}"], payload)
        return EXIT_EXHAUSTED
    _emit(args, [f"budget exceeded nodes={result.nodes_expanded}"], payload)
    return EXIT_BUDGET


def cmd_heegaard(args):
    text = Path(args.diagram).read_text() if not args.diagram.lstrip().startswith(
        "component"
    ) else args.diagram
    d = heegaard.parse_diagram(text)
    P = (
        heegaard.presentation_of_alpha(d)
        if args.side == "alpha"
        else heegaard.presentation_of_beta(d)
    )
    names = words.default_names(P.n_generators)
    _emit(args, [format_presentation(P, names)], _presentation_payload(P, names))
    return EXIT_OK


def cmd_gen(args):
    P = families.from_spec(args.family)
    names = words.default_names(P.n_generators)
    _emit(args, [format_presentation(P, names)], _presentation_payload(P, names))
    return EXIT_OK


def cmd_repl(args):
    P, names = _read_presentation(args.presentation)
    if not P.balanced:
        print("error: initial presentation is not balanced", file=sys.stderr)
        return EXIT_PARSE
    initial = P
    moves = []
    print(format_presentation(P, names))
    for line in sys.stdin:
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line in ("quit", "exit"):
            break
        if line == "show":
            print(format_presentation(P, names))
            continue
        try:
            m = parse_move(line)
            P2 = apply_move(P, m)
        except AcpresError as e:
            print(f"error: {type(e).__name__}: {e}")
            continue
        P = P2
        names = evolve_names(names, m)
        moves.append(m)
        M = exponent_matrix(P)
        det = abs_det(M) if M.is_square else None
        print(format_presentation(P, names))
        print(f"abs_det: {det if det is not None else 'n/a'}")
        print(f"mod2_rank: {mod2_row_space(M).rank}")
    t = Transcript(initial, tuple(moves))
    text = format_transcript(t)
    if args.emit:
        Path(args.emit).write_text(text)
    else:
        print("# transcript")
        print(text, end="")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="acpres",
        description="Andrews-Curtis moves, invariants, coset enumeration and "
        "trivialization search for balanced presentations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("--format", choices=["text", "json"], default="text")
        return p

    p = add("parse", cmd_parse, help="parse and echo a presentation")
    p.add_argument("presentation")
    p = add("normalize", cmd_normalize, help="print the canonical form")
    p.add_argument("presentation")
    p = add("invariants", cmd_invariants, help="abelianization invariants")
    p.add_argument("presentation")
    p = add("apply", cmd_apply, help="apply move lines to a presentation")
    p.add_argument("presentation")
    p.add_argument("move", nargs="+", help="move lines like 'compose 1 2'")
    p = add("verify", cmd_verify, help="replay a transcript file")
    p.add_argument("transcript")
    p.add_argument("--strict", action="store_true", help="reject derived rotate moves")
    p = add("tc", cmd_tc, help="coset enumeration over the trivial subgroup")
    p.add_argument("presentation")
    p.add_argument("--max-cosets", type=int, default=100_000)
    p.add_argument("--max-steps", type=int, default=10_000_000)
    p = add("search", cmd_search, help="search for a trivializing transcript")
    p.add_argument("presentation")
    p.add_argument("--moves", choices=["sac", "eac"], default="eac")
    p.add_argument("--strategy", choices=["bfs", "iddfs", "greedy"], default="greedy")
    p.add_argument("--max-depth", type=int, default=16)
    p.add_argument("--max-length", type=int, default=20)
    p.add_argument("--max-gens", type=int, default=4)
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--goal", default="trivial", help="'trivial' or 'rank:<k>'")
    p.add_argument("--deterministic", action="store_true", help="single-threaded, reproducible (the default mode)")
    p.add_argument("--emit", help="write the found transcript to this file")
    p = add("heegaard", cmd_heegaard, help="extract a presentation from a diagram")
    p.add_argument("diagram", help="diagram file (or literal text)")
    p.add_argument("--side", choices=["alpha", "beta"], default="alpha")
    p = add("gen", cmd_gen, help="generate a named family presentation")
    p.add_argument("--family", required=True, help="trivial:<n> | paperZ | ak:<n>")
    p = add("repl", cmd_repl, help="interactive move application, recording a transcript")
    p.add_argument("presentation")
    p.add_argument("--emit", help="write the session transcript to this file")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_PARSE if e.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (AcpresError, FileNotFoundError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_PARSE
    except Exception as e:  # pragma: no cover - defensive
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
