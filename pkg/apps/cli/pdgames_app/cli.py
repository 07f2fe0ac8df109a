"""Command line for solving, synthesizing, simulating and verifying pushdown games."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from pdgames_arena import (
    GameSpec,
    InteractiveAbort,
    InteractiveAgent,
    RandomAgent,
    ScriptedAgent,
    StrategyAgent,
    StrategyPDA,
    format_game,
    format_strategy,
    load_game,
    load_strategy,
    normalize_game,
    simulate,
)
from pdgames_arena.agents import Agent
from pdgames_core import AppConfig, ResultDocument, load_config
from pdgames_core.logging_setup import configure_logging
from pdgames_machine import Condition, FormatDescriptor, Player, check_format, dpda_to_stdpda
from pdgames_reduction import SearchCaps, SolveResult, solve, trace_graph
from pdgames_synthesis import STRATEGY_FORMATS, solve_for_format
from pdgames_verification import compose_product, finite_arena_oracle, validate_strategy, write_fixtures

from .dot import export_dot

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_UNKNOWN = 10
EXIT_COUNTEREXAMPLE = 11


def _print_json(data: object) -> None:
    print(json.dumps(data, indent=2, sort_keys=True, default=str, ensure_ascii=False))


def _load(args: argparse.Namespace) -> GameSpec:
    game = load_game(args.game)
    condition = getattr(args, "condition", None)
    if condition:
        game = replace(game, condition=Condition(condition))
    return game


def _caps(args: argparse.Namespace, cfg: AppConfig) -> SearchCaps:
    return SearchCaps(
        max_classes=args.max_classes or cfg.search.max_classes,
        max_prefix=args.max_prefix or cfg.search.max_prefix,
        max_period=args.max_period or cfg.search.max_period,
        max_nodes=args.max_nodes or cfg.search.max_nodes,
    )


def _solve(args: argparse.Namespace, game: GameSpec, fmt: str = "general") -> tuple[SolveResult, StrategyPDA | None]:
    cfg = load_config()
    return solve_for_format(game, fmt, _caps(args, cfg), prune=not args.no_prune)


def _document(game: GameSpec, result: SolveResult, strategy_file: Path | None) -> ResultDocument:
    summary: dict = {}
    if result.witness is not None:
        witness = result.witness
        summary = witness.candidate.summary(witness.game.machine.states)
        summary["player"] = witness.player.value
    return ResultDocument(
        status=result.status.value,
        winner=result.winner.value if result.winner else None,
        caps=result.caps.to_dict(),
        candidate_summary=summary,
        strategy_file=str(strategy_file) if strategy_file else None,
        timings={"solve_s": result.statistics.get("elapsed_s", 0.0)},
        statistics=result.statistics,
        message=result.message or f"solved {game.name}",
    )


def _write_outputs(out: str | None, game: GameSpec, fmt: str, result: SolveResult, strategy: StrategyPDA | None):
    strategy_file = None
    if out and strategy is not None:
        directory = Path(out).expanduser().resolve()
        directory.mkdir(parents=True, exist_ok=True)
        strategy_file = directory / f"{game.name}-{fmt}.strategy"
        strategy_file.write_text(format_strategy(strategy), encoding="utf-8")
    doc = _document(game, result, strategy_file)
    if out:
        doc.write(Path(out).expanduser().resolve() / f"{game.name}.result.json")
    return doc


def cmd_check_format(args: argparse.Namespace) -> int:
    game = _load(args)
    fmt = FormatDescriptor.of(*args.flags, visibly=game.fmt.visibly) if args.flags else game.fmt
    verdict = check_format(game.machine, fmt)
    _print_json({"game": game.name, "format": list(fmt.flags), "ok": verdict.ok, "violations": list(verdict.violations)})
    return EXIT_OK if verdict.ok else EXIT_FALSE


def cmd_normalize(args: argparse.Namespace) -> int:
    norm = normalize_game(_load(args))
    encoded = replace(norm.game, fmt=FormatDescriptor(deterministic=True), name=f"{norm.source.name}-normal")
    text = format_game(encoded)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    game = _load(args)
    result, strategy = _solve(args, game, args.format_strategy)
    doc = _write_outputs(args.out, game, args.format_strategy, result, strategy)
    _print_json(doc.to_dict())
    return EXIT_OK if result.winner is not None else EXIT_UNKNOWN


def cmd_synthesize(args: argparse.Namespace) -> int:
    game = _load(args)
    result, strategy = _solve(args, game, args.format)
    if strategy is None:
        print(result.message, file=sys.stderr)
        return EXIT_UNKNOWN
    if args.out:
        _print_json(_write_outputs(args.out, game, args.format, result, strategy).to_dict())
    else:
        sys.stdout.write(format_strategy(strategy))
    return EXIT_OK


def _strategy_for(args: argparse.Namespace, game: GameSpec) -> StrategyPDA | None:
    if args.strategy:
        return load_strategy(args.strategy)
    result, strategy = _solve(args, game)
    if strategy is None:
        print(result.message, file=sys.stderr)
    return strategy


def _adversary(text: str, seed: int) -> Agent:
    kind, _, arg = text.partition(":")
    if kind == "random":
        return RandomAgent(int(arg) if arg else seed)
    if kind == "scripted":
        return ScriptedAgent([a for a in arg.split(",") if a])
    if kind == "interactive":
        return InteractiveAgent(out=sys.stderr)
    raise ValueError(f"unknown adversary {text!r}; use scripted:a,b, random:SEED or interactive")


def cmd_simulate(args: argparse.Namespace) -> int:
    game = _load(args)
    cfg = load_config()
    adversary = _adversary(args.adversary, args.seed if args.seed is not None else cfg.simulation.seed)
    strategy = _strategy_for(args, game)
    if strategy is None:
        return EXIT_UNKNOWN
    try:
        record = simulate(
            game,
            StrategyAgent(strategy),
            adversary,
            max_steps=args.depth or cfg.simulation.max_steps,
            max_height=args.height or cfg.simulation.max_height,
            protagonist_player=strategy.player,
        )
    except InteractiveAbort as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        return EXIT_OK
    payload = record.to_dict()
    payload["protagonist"] = strategy.player.value
    _print_json(payload)
    lost = record.winner is not None and record.winner is not strategy.player
    return EXIT_COUNTEREXAMPLE if lost else EXIT_OK


def cmd_play(args: argparse.Namespace) -> int:
    game = _load(args)
    cfg = load_config()
    human = Player.from_index(args.as_player)
    console = InteractiveAgent(out=sys.stdout)
    if args.strategy:
        strategy: StrategyPDA | None = load_strategy(args.strategy)
    else:
        result, strategy = _solve(args, game)
        if result.winner is None:
            print(result.message)
            return EXIT_UNKNOWN
    if strategy is not None and strategy.player is human:
        print(f"you hold the winning side ({human.value}); the opponent moves at random")
        seed = args.seed if args.seed is not None else cfg.simulation.seed
        protagonist: Agent = console
        adversary: Agent = RandomAgent(seed)
        side = human
    elif strategy is not None:
        print(f"you play {human.value} against a winning strategy for {strategy.player.value}")
        protagonist, adversary, side = StrategyAgent(strategy), console, strategy.player
    else:
        return EXIT_UNKNOWN
    try:
        record = simulate(
            game,
            protagonist,
            adversary,
            max_steps=cfg.simulation.max_steps,
            max_height=cfg.simulation.max_height,
            protagonist_player=side,
        )
    except InteractiveAbort as exc:
        print(f"aborted: {exc}")
        return EXIT_OK
    print(f"final configuration {record.final}")
    if record.winner is not None:
        print(f"winner: {record.winner.value} ({record.status.value})")
    else:
        print("no verdict: " + ", ".join(record.notes))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    game = _load(args)
    cfg = load_config()
    if args.mode == "oracle":
        oracle = finite_arena_oracle(game, args.height_cap)
        result = solve(game, _caps(args, cfg), prune=not args.no_prune)
        payload = {
            "oracle": oracle.value,
            "solver": result.status.value,
            "agree": result.winner is oracle,
        }
        _print_json(payload)
        if result.winner is None:
            return EXIT_UNKNOWN
        return EXIT_OK if result.winner is oracle else EXIT_COUNTEREXAMPLE

    strategy = _strategy_for(args, game)
    if strategy is None:
        return EXIT_UNKNOWN
    report = validate_strategy(
        strategy,
        game,
        depth=args.depth or cfg.validation.depth,
        height=args.height or cfg.validation.height,
    )
    payload = report.to_dict()
    if args.product:
        product = compose_product(strategy, game)
        outcome = solve(product.game, _caps(args, cfg), prune=not args.no_prune)
        payload["product"] = {
            "status": outcome.status.value,
            "strategy_wins": outcome.winner is Player.P0 if outcome.winner else None,
            "desync": list(product.desync),
        }
    _print_json(payload)
    return EXIT_OK if report.clean else EXIT_COUNTEREXAMPLE


def cmd_convert_stair(args: argparse.Namespace) -> int:
    game = _load(args)
    if game.condition is Condition.STAIR:
        raise ValueError(f"{game.name} already has a stair-parity condition")
    machine, col = dpda_to_stdpda(game.machine, game.col)
    owner = {q: game.owner[q.rsplit("@", 1)[0]] for q in machine.states}
    converted = GameSpec(
        machine,
        owner,
        col,
        condition=Condition.STAIR,
        name=f"{game.name}-stair",
        fmt=FormatDescriptor(deterministic=True),
    )
    sys.stdout.write(format_game(converted))
    return EXIT_OK


def cmd_export_dot(args: argparse.Namespace) -> int:
    game = _load(args)
    if args.strategy:
        text = export_dot(load_strategy(args.strategy))
    elif args.trace:
        result, _ = _solve(args, game)
        if result.witness is None:
            print(result.message, file=sys.stderr)
            return EXIT_UNKNOWN
        text = export_dot(trace_graph(result.witness.candidate, result.witness.automaton))
    else:
        text = export_dot(game, args.height_cap)
    sys.stdout.write(text)
    return EXIT_OK


FIXTURE_NOTES = """\
reference outcomes:
  fig1        Player 0 wins; one-counter strategy, no blind one within small caps
  lwin        visibly and oneCounter strategies both exist;
              only visibly+oneCounter ends UnknownAtCap
  divergence  Player 1 wins under parity, Player 0 under stair parity
export-dot draws reachable configurations only: fig1 at --height-cap 3 has 13 nodes
"""


def cmd_fixtures(args: argparse.Namespace) -> int:
    _print_json([str(p) for p in write_fixtures(args.directory)])
    return EXIT_OK


def _search_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--max-classes", type=int, default=None)
    parent.add_argument("--max-prefix", type=int, default=None)
    parent.add_argument("--max-period", type=int, default=None)
    parent.add_argument("--max-nodes", type=int, default=None)
    parent.add_argument("--no-prune", action="store_true", help="Disable pruning of partial candidates")
    parent.add_argument("--condition", choices=[c.value for c in Condition], default=None)
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pdgames", description="Pushdown parity and stair-parity games")
    sub = parser.add_subparsers(dest="command", required=True)
    search = _search_options()

    check_cmd = sub.add_parser("check-format", help="Check a game against format predicates")
    check_cmd.add_argument("game")
    check_cmd.add_argument("--format", dest="flags", nargs="*", default=None, help="Flags to check instead of the declared ones")
    check_cmd.set_defaults(func=cmd_check_format)

    norm_cmd = sub.add_parser("normalize", help="Print the normal form of a game")
    norm_cmd.add_argument("game")
    norm_cmd.add_argument("--out", default=None)
    norm_cmd.set_defaults(func=cmd_normalize)

    solve_cmd = sub.add_parser("solve", parents=[search], help="Decide the winner")
    solve_cmd.add_argument("game")
    solve_cmd.add_argument("--format-strategy", choices=STRATEGY_FORMATS, default="general")
    solve_cmd.add_argument("--out", default=None, help="Directory for the result document and strategy file")
    solve_cmd.set_defaults(func=cmd_solve)

    synth_cmd = sub.add_parser("synthesize", parents=[search], help="Print a winning pushdown strategy")
    synth_cmd.add_argument("game")
    synth_cmd.add_argument("--format", choices=STRATEGY_FORMATS, default="general")
    synth_cmd.add_argument("--out", default=None)
    synth_cmd.set_defaults(func=cmd_synthesize)

    sim_cmd = sub.add_parser("simulate", parents=[search], help="Play a strategy against an adversary")
    sim_cmd.add_argument("game")
    sim_cmd.add_argument("--strategy", default=None, help="Strategy file; synthesized when omitted")
    sim_cmd.add_argument("--adversary", default="random", help="scripted:a,b,c | random[:SEED] | interactive")
    sim_cmd.add_argument("--depth", type=int, default=None)
    sim_cmd.add_argument("--height", type=int, default=None)
    sim_cmd.add_argument("--seed", type=int, default=None)
    sim_cmd.set_defaults(func=cmd_simulate)

    play_cmd = sub.add_parser("play", parents=[search], help="Play interactively against a synthesized strategy")
    play_cmd.add_argument("game")
    play_cmd.add_argument("--as", dest="as_player", choices=["0", "1"], default="1")
    play_cmd.add_argument("--strategy", default=None)
    play_cmd.add_argument("--seed", type=int, default=None)
    play_cmd.set_defaults(func=cmd_play)

    verify_cmd = sub.add_parser("verify", parents=[search], help="Cross-check with the finite-arena oracle or validate a strategy")
    verify_cmd.add_argument("game")
    verify_cmd.add_argument("--mode", choices=["oracle", "validate"], default="oracle")
    verify_cmd.add_argument("--height-cap", type=int, default=3)
    verify_cmd.add_argument("--strategy", default=None)
    verify_cmd.add_argument("--depth", type=int, default=None)
    verify_cmd.add_argument("--height", type=int, default=None)
    verify_cmd.add_argument("--product", action="store_true", help="Also solve the strategy-game composition")
    verify_cmd.set_defaults(func=cmd_verify)

    convert_cmd = sub.add_parser("convert", help="Convert between acceptance conditions")
    convert_sub = convert_cmd.add_subparsers(dest="convert_cmd", required=True)
    stair_cmd = convert_sub.add_parser("stair", help="Parity DPDA game to an equivalent stair-parity game")
    stair_cmd.add_argument("game")
    stair_cmd.set_defaults(func=cmd_convert_stair)

    dot_cmd = sub.add_parser("export-dot", parents=[search], help="Graphviz export")
    dot_cmd.add_argument("game")
    dot_cmd.add_argument("--height-cap", type=int, default=3)
    dot_cmd.add_argument("--strategy", default=None)
    dot_cmd.add_argument("--trace", action="store_true", help="Trace graph of the solved witness")
    dot_cmd.set_defaults(func=cmd_export_dot)

    fix_cmd = sub.add_parser(
        "fixtures",
        help="Write the reference games to a directory",
        epilog=FIXTURE_NOTES,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    fix_cmd.add_argument("directory")
    fix_cmd.set_defaults(func=cmd_fixtures)

    return parser


def main(argv: list[str] | None = None) -> int:
    configure_logging(keep_files=load_config().diagnostics.keep_log_files, console=False)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return int(args.func(args))
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
