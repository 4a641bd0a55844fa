"""Batch command-line interface.

Subcommands: grundy (sequence tables), classify (P/N over a range),
verify (OEIS regression), period (eventual-period detection),
verify-strategy (exhaustive adversary checks), play (terminal play
against the engine), serve (HTTP service).

Exit codes: 0 success, 2 usage error, 3 verification failure,
4 data error, 5 environment error.
"""

from __future__ import annotations

import argparse
import json
import socket
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import graphs, grids, oeis, piles
from .engine import NodeBudgetExceeded, Outcome, Solver, detect_period
from .games import ParamError, TooLargeError, get_adapter

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFY = 3
EXIT_DATA = 4
EXIT_ENV = 5


class CliError(Exception):
    def __init__(self, message: str, exit_code: int):
        super().__init__(message)
        self.exit_code = exit_code


def _usage(message: str) -> CliError:
    return CliError(message, EXIT_USAGE)


# ---------------------------------------------------------------------------
# Sequence-producing games (grundy / period / verify)


def _ras_sequence(n_max: int) -> list[int]:
    return grids.ras_grundy_2xn(n_max).values[1:]


def _path_sequence(n_max: int) -> list[int]:
    return graphs.path_grundy(n_max)[1:]


SEQUENCE_GAMES = {
    "remove-a-square-2xn": _ras_sequence,
    "path-remove-an-edge": _path_sequence,
}


def cmd_grundy(args) -> int:
    if args.game not in SEQUENCE_GAMES:
        raise _usage(f"unknown sequence game {args.game!r}")
    if args.n_max < 1:
        raise _usage("--n-max must be >= 1")
    values = SEQUENCE_GAMES[args.game](args.n_max)
    if args.format == "csv":
        print("n,g")
        for n, g in enumerate(values, start=1):
            print(f"{n},{g}")
    elif args.format == "json":
        print(json.dumps({"game": args.game, "g": values}))
    else:
        # twelve columns per row, mirroring the reference table layout
        for start in range(0, len(values), 12):
            print(" ".join(str(g) for g in values[start : start + 12]))
    return EXIT_OK


def cmd_period(args) -> int:
    if args.game not in SEQUENCE_GAMES:
        raise _usage(f"unknown sequence game {args.game!r}")
    if args.n_max < 1:
        raise _usage("--n-max must be >= 1")
    values = SEQUENCE_GAMES[args.game](args.n_max)
    report = detect_period(
        values, max_preperiod=args.max_preperiod, min_confirm=args.min_confirm
    )
    if not report.confirmed:
        print(f"{args.game}: no period found within n <= {args.n_max}")
        return EXIT_VERIFY
    first_periodic_n = report.preperiod + 1  # values are indexed from n = 1
    print(
        f"{args.game}: period {report.period}, periodic from n = "
        f"{first_periodic_n}, confirmed through n = {args.n_max}"
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# OEIS verification


def _cycle_n_terms(n_max: int) -> list[int]:
    # Enumerated through the path reduction so the degenerate size 2
    # (whose "cycle" does not exist, but whose path P_0 is a P-position)
    # lines up with the reference sequence's first term.
    return [n for n in range(2, n_max + 1) if graphs.a215721_member(n - 2)]


def _path_p_terms(n_max: int) -> list[int]:
    g = graphs.path_grundy(n_max)
    return [n for n in range(n_max + 1) if g[n] == 0]


def _sfp_terms(which: str):
    def compute(n_max: int) -> list[int]:
        p_list, n_list = piles.sfp_classify_range(n_max)
        return p_list if which == "p" else n_list

    return compute


VERIFY_GAMES = {
    # game -> (sequence id, offset, computed_start, default n_max, compute)
    "remove-a-square-2xn": ("A286332", 0, 1, 199, _ras_sequence),
    "path-remove-an-edge": ("A002187", -1, 1, 151, _path_sequence),
    "sfp-p": ("A285304", 0, 1, 320, _sfp_terms("p")),
    "sfp-n": ("A285847", 0, 1, 320, _sfp_terms("n")),
    "cycle-n": ("A274161", 0, 1, 60, _cycle_n_terms),
    "path-p": ("A215721", 0, 1, 820, _path_p_terms),
}


def cmd_verify(args) -> int:
    if args.game not in VERIFY_GAMES:
        raise _usage(f"no OEIS mapping for game {args.game!r}")
    expected_id, offset, computed_start, default_n_max, compute = VERIFY_GAMES[args.game]
    sequence_id = args.oeis or expected_id
    if sequence_id != expected_id:
        raise _usage(f"game {args.game!r} maps to {expected_id}, not {sequence_id}")
    n_max = args.n_max or default_n_max
    snapshot_dir = Path(args.snapshot_dir) if args.snapshot_dir else None
    try:
        if args.fetch:
            oeis.fetch_remote(
                sequence_id,
                enabled=True,
                url_template=args.url_template,
                snapshot_dir=snapshot_dir,
            )
        reference = oeis.load_snapshot(sequence_id, snapshot_dir)
    except oeis.OeisError as exc:
        raise CliError(str(exc), EXIT_DATA)
    computed = compute(n_max)
    try:
        report = oeis.compare(computed, reference, offset=offset, computed_start=computed_start)
    except oeis.OeisError as exc:
        raise CliError(str(exc), EXIT_DATA)
    print(report.summary())
    return EXIT_OK if report.passed else EXIT_VERIFY


# ---------------------------------------------------------------------------
# Range classification


def _parse_range(text: str) -> tuple[int, int]:
    try:
        lo_text, hi_text = text.split("..")
        lo, hi = int(lo_text), int(hi_text)
    except ValueError:
        raise _usage(f"range must look like 'A..B', got {text!r}")
    if hi < lo:
        raise _usage(f"empty range {text!r}")
    return lo, hi


#: game -> (closed form or None, oracle, oracle bound, needs --m, minimum value)
def _classify_spec(game: str):
    table = {
        "chocolate": (
            lambda n, m: piles.chocolate_outcome_closed(n, m),
            lambda n, m, solver: solver.outcome(piles.ChocolatePosition(m, n)),
            100_000,
            True,
            0,
        ),
        "demon": (
            lambda n, m: piles.demon_outcome_closed(n),
            lambda n, m, solver: solver.outcome(piles.DemonPosition(n)),
            1_000_000,
            False,
            0,
        ),
        "sfp": (
            None,
            lambda n, m, solver: solver.outcome(piles.SfpPosition(n)),
            100_000,
            False,
            1,
        ),
        "nofactor": (
            lambda n, m: piles.nofactor_outcome_closed(n),
            lambda n, m, solver: piles.nofactor_outcome(n, solver),
            12,
            False,
            0,
        ),
        "diamond": (
            lambda n, m: grids.diamond_outcome_closed("diamond", n),
            lambda n, m, solver: solver.outcome(grids.diamond_config(n)),
            4,
            False,
            0,
        ),
        "cross": (
            lambda n, m: grids.diamond_outcome_closed("cross", m, n),
            lambda n, m, solver: solver.outcome(grids.cross_config(m, n)),
            8,
            True,
            1,
        ),
        "rect": (
            lambda n, m: grids.diamond_outcome_closed("rect", m, n),
            lambda n, m, solver: solver.outcome(grids.rect_config(m, n)),
            8,
            True,
            1,
        ),
        "complete": (
            lambda n, m: graphs.rae_outcome_closed("complete", n),
            lambda n, m, solver: graphs.rae_solve_general(
                graphs.complete_graph(n), solver
            )[0],
            14,
            False,
            1,
        ),
        "star": (
            lambda n, m: graphs.rae_outcome_closed("star", n),
            lambda n, m, solver: graphs.rae_solve_general(
                graphs.star_graph(n), solver, max_vertices=64
            )[0],
            64,
            False,
            1,
        ),
        "path": (
            lambda n, m: graphs.rae_outcome_closed("path", n),
            lambda n, m, solver: graphs.rae_solve_general(
                graphs.path_graph(n), solver, max_vertices=60
            )[0],
            60,
            False,
            0,
        ),
        "cycle": (
            lambda n, m: graphs.rae_outcome_closed("cycle", n),
            lambda n, m, solver: graphs.rae_solve_general(
                graphs.cycle_graph(n), solver, max_vertices=60
            )[0],
            60,
            False,
            3,
        ),
    }
    if game not in table:
        raise _usage(f"unknown classify game {game!r}")
    return table[game]


def _classify_chunk(game: str, m, lo: int, hi: int, mode: str) -> list[str]:
    closed, oracle, bound, needs_m, minimum = _classify_spec(game)
    solver = Solver()
    labels = []
    for n in range(lo, hi + 1):
        if mode == "closed":
            labels.append(closed(n, m).value)
        else:
            labels.append(oracle(n, m, solver).value)
    return labels


def cmd_classify(args) -> int:
    closed, oracle, bound, needs_m, minimum = _classify_spec(args.game)
    lo, hi = _parse_range(args.range)
    if lo < minimum:
        raise _usage(f"{args.game} values start at {minimum}")
    if needs_m and args.m is None:
        raise _usage(f"--m is required for {args.game}")
    m = args.m
    if args.check and closed is None:
        raise _usage(f"{args.game} has no closed form to check against")
    use_oracle = args.oracle or closed is None
    if (use_oracle or args.check) and hi > bound:
        raise _usage(
            f"{args.game} oracle is bounded at {bound}; use the closed form"
        )
    modes = ["oracle" if use_oracle else "closed"]
    if args.check:
        modes = ["closed", "oracle"]
    results = {}
    for mode in modes:
        if args.jobs > 1:
            chunk = max(1, (hi - lo + 1) // args.jobs)
            spans = [
                (start, min(start + chunk - 1, hi))
                for start in range(lo, hi + 1, chunk)
            ]
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                parts = pool.map(
                    _classify_chunk,
                    *zip(*[(args.game, m, a, b, mode) for a, b in spans]),
                )
            labels = [label for part in parts for label in part]
        else:
            labels = _classify_chunk(args.game, m, lo, hi, mode)
        results[mode] = labels
    if args.check:
        for n, (a, b) in enumerate(zip(results["closed"], results["oracle"]), start=lo):
            if a != b:
                print(
                    f"MISMATCH at n={n}: closed form says {a}, oracle says {b}",
                    file=sys.stderr,
                )
                return EXIT_VERIFY
    labels = results[modes[-1]]
    values = list(range(lo, hi + 1))
    if args.format == "csv":
        print("n,outcome")
        for n, label in zip(values, labels):
            print(f"{n},{label}")
    elif args.format == "json":
        print(
            json.dumps(
                {
                    "game": args.game,
                    "m": m,
                    "results": [
                        {"n": n, "outcome": label} for n, label in zip(values, labels)
                    ],
                }
            )
        )
    else:
        print(",".join(labels))
        print("P: " + ",".join(str(n) for n, l in zip(values, labels) if l == "P"))
        print("N: " + ",".join(str(n) for n, l in zip(values, labels) if l == "N"))
    return EXIT_OK


# ---------------------------------------------------------------------------
# Strategy verification


def cmd_verify_strategy(args) -> int:
    if args.target == "diamond-strategy":
        bound = args.bound or 3
        for c in range(1, bound + 1):
            trace = grids.verify_diamond_strategy(c)
            if trace is not None:
                print(f"c={c}: counterexample line of play: {trace}")
                return EXIT_VERIFY
            print(f"c={c}: second player wins every line of play")
        return EXIT_OK
    if args.target == "mirror-strategy":
        if args.points_file:
            tokens = grids.parse_points(Path(args.points_file).read_text())
            config = grids.TokenConfig(tokens)
            try:
                grids.check_mirror_preconditions(config)
            except grids.StrategyError as exc:
                raise _usage(f"precondition violated: {exc}")
            trace = grids.verify_mirror_strategy(config)
            if trace is not None:
                print(f"counterexample line of play: {trace}")
                return EXIT_VERIFY
            print("mirroring wins every line of play")
            return EXIT_OK
        bound = args.bound or 12
        configs = grids.symmetric_axis_free_configs(max_tokens=bound)
        for config in configs:
            trace = grids.verify_mirror_strategy(config)
            if trace is not None:
                print(f"counterexample on {sorted(config.tokens)}: {trace}")
                return EXIT_VERIFY
        print(
            f"mirroring wins on all {len(configs)} doubly-symmetric "
            f"axis-free configurations with <= {bound} tokens"
        )
        return EXIT_OK
    if args.target == "nofactor-second-wins":
        bound = args.bound or 12
        solver = Solver()
        if piles.nofactor_outcome(1, solver) is not Outcome.N:
            print("n=1 should be a first-player win")
            return EXIT_VERIFY
        for n in range(2, bound + 1):
            if piles.nofactor_outcome(n, solver) is not Outcome.P:
                print(f"n={n}: expected a second-player win")
                return EXIT_VERIFY
        print(f"second player wins for all 2 <= n <= {bound} (and loses n=1)")
        return EXIT_OK
    raise _usage(f"unknown target {args.target!r}")


# ---------------------------------------------------------------------------
# Terminal play


def _play_params(args) -> dict:
    if args.game == "chocolate":
        return {"m": args.m or 2, "stones": args.stones if args.stones is not None else 10}
    if args.game == "demon":
        return {"coins": args.coins if args.coins is not None else 10}
    if args.game in ("sfp", "nofactor"):
        return {"n": args.n if args.n is not None else (30 if args.game == "sfp" else 6)}
    if args.game == "diamond":
        shape = args.shape or "diamond"
        params = {"shape": shape}
        if shape == "diamond":
            params["c"] = args.c if args.c is not None else 2
        elif shape in ("cross", "rect"):
            params["m"] = args.m or 2
            params["n"] = args.n or 2
        elif shape == "custom":
            if not args.points_file:
                raise _usage("custom shapes need --points-file")
            params["tokens"] = [
                list(p) for p in grids.parse_points(Path(args.points_file).read_text())
            ]
        return params
    if args.game == "remove-a-square":
        shape = args.shape or "rect"
        params = {"shape": shape}
        if shape == "rect":
            params["m"] = args.m or 2
            params["n"] = args.n or 4
        else:
            if not args.points_file:
                raise _usage("custom shapes need --points-file")
            params["cells"] = [
                list(p) for p in grids.parse_points(Path(args.points_file).read_text())
            ]
        return params
    if args.game == "remove-an-edge":
        family = args.family or "path"
        params = {"family": family}
        if family == "custom":
            if not args.graph_file:
                raise _usage("custom graphs need --graph-file")
            graph = graphs.parse_graph(Path(args.graph_file).read_text())
            params["n"] = graph.n
            params["edges"] = [list(e) for e in sorted(graph.edges)]
        else:
            params["n"] = args.n if args.n is not None else (6 if family != "cycle" else 7)
        return params
    raise _usage(f"unknown game {args.game!r}")


def cmd_play(args) -> int:
    try:
        adapter = get_adapter(args.game)
        position = adapter.create(_play_params(args))
    except (ParamError, TooLargeError) as exc:
        raise _usage(str(exc))
    solver = Solver()
    mover = "engine" if args.engine_first else "human"
    print(f"playing {adapter.name}; whoever makes the last move wins")
    last_mover = None
    while not position.is_terminal():
        print()
        print(adapter.render_text(position))
        legal = list(position.successors())
        if mover == "engine":
            move = solver.best_move(position)
            print(f"engine: {adapter.format_move(move)}")
            position = dict(legal)[move]
            last_mover = "engine"
            mover = "human"
            continue
        shown = ", ".join(adapter.format_move(m) for m, _ in legal[:24])
        if len(legal) > 24:
            shown += f", ... ({len(legal)} moves)"
        print(f"your moves: {shown}")
        try:
            text = input(f"{adapter.move_help} > ")
        except EOFError:
            print("\naborted.")
            return EXIT_OK
        try:
            move = adapter.parse_move_text(text)
        except (ValueError, IndexError):
            print("could not parse that; try again")
            continue
        table = dict(legal)
        if move not in table:
            print("illegal move; try again")
            continue
        position = table[move]
        last_mover = "human"
        mover = "engine"
    print()
    if last_mover is None:
        winner = "engine" if mover == "human" else "human"
        print("no moves were possible from the start")
    else:
        winner = last_mover
    if winner == "human":
        print("you made the last move -- you win!")
    else:
        print("the engine made the last move -- it wins.")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Service


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    ui_dir = Path(args.ui_dir) if args.ui_dir else Path("frontend/dist")
    app = create_app(
        static_dir=ui_dir if ui_dir.is_dir() else None,
        ttl=args.ttl,
        journal_path=Path(args.journal) if args.journal else None,
    )
    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        sock.bind((args.host, args.port))
    except OSError as exc:
        sock.close()
        raise CliError(f"cannot bind {args.host}:{args.port}: {exc}", EXIT_ENV)
    host, port = sock.getsockname()[:2]
    print(f"serving on http://{host}:{port}", flush=True)
    server = uvicorn.Server(uvicorn.Config(app, log_level="warning"))
    try:
        server.run(sockets=[sock])
    except KeyboardInterrupt:
        pass
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="impartial",
        description="workbench for seven impartial combinatorial games",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("grundy", help="print a Grundy-value sequence")
    p.add_argument("--game", required=True, choices=sorted(SEQUENCE_GAMES))
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--format", choices=["table", "csv", "json"], default="table")
    p.set_defaults(func=cmd_grundy)

    p = sub.add_parser("period", help="detect eventual periodicity")
    p.add_argument("--game", required=True, choices=sorted(SEQUENCE_GAMES))
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--max-preperiod", type=int, default=None)
    p.add_argument("--min-confirm", type=int, default=2)
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("verify", help="compare a computed sequence to its OEIS snapshot")
    p.add_argument("--game", required=True, choices=sorted(VERIFY_GAMES))
    p.add_argument("--oeis", default=None, help="expected sequence id (sanity check)")
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--snapshot-dir", default=None)
    p.add_argument("--fetch", action="store_true", help="refresh the snapshot first")
    p.add_argument("--url-template", default=oeis.DEFAULT_URL_TEMPLATE)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="label a range of positions P or N")
    p.add_argument("--game", required=True)
    p.add_argument("--range", required=True, help="inclusive range, e.g. 0..30")
    p.add_argument("--m", type=int, default=None, help="modulus / first dimension")
    p.add_argument("--oracle", action="store_true", help="force brute-force search")
    p.add_argument("--check", action="store_true", help="closed form vs oracle")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=["table", "csv", "json"], default="table")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify-strategy", help="exhaustive strategy verification")
    p.add_argument(
        "--target",
        required=True,
        choices=["diamond-strategy", "mirror-strategy", "nofactor-second-wins"],
    )
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--points-file", default=None)
    p.set_defaults(func=cmd_verify_strategy)

    p = sub.add_parser("play", help="play against the engine in the terminal")
    p.add_argument("--game", required=True)
    p.add_argument("--engine-first", action="store_true")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--c", type=int, default=None)
    p.add_argument("--coins", type=int, default=None)
    p.add_argument("--stones", type=int, default=None)
    p.add_argument("--shape", default=None)
    p.add_argument("--family", default=None)
    p.add_argument("--points-file", default=None)
    p.add_argument("--graph-file", default=None)
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("serve", help="run the HTTP play service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--ui-dir", default=None)
    p.add_argument("--journal", default=None)
    p.add_argument("--ttl", type=float, default=3600.0)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except NodeBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
