"""Extraction by strategy format, and format-constrained solving."""

from __future__ import annotations


from pdgames_arena import GameSpec, StrategyPDA, game_facing_machine
from pdgames_core import get_logger
from pdgames_machine import FormatDescriptor, FormatVerdict, VisiblyAlphabet, check_format
from pdgames_reduction import SearchCaps, SolveResult, Witness, solve

from .general import extract_general
from .one_counter import extract_one_counter
from .realtime import extract_realtime
from .visibly import extract_visibly

logger = get_logger("synthesis")

STRATEGY_FORMATS = ("general", "realtime", "visibly", "oneCounter", "blind", "visibly+oneCounter")


def format_descriptor(fmt: str, visibly: VisiblyAlphabet | None = None) -> FormatDescriptor:
    """The predicate a strategy of format ``fmt`` has to pass (on its game-facing machine)."""
    if fmt not in STRATEGY_FORMATS:
        raise ValueError(f"unknown strategy format {fmt!r}; expected one of {', '.join(STRATEGY_FORMATS)}")
    if "visibly" in fmt and visibly is None:
        raise ValueError(f"{fmt} strategies need a game with a visibly partition")
    flags = ["deterministic"]
    if fmt == "realtime":
        flags.append("realtime")
    if "visibly" in fmt:
        flags.append("visibly")
    if "oneCounter" in fmt:
        flags.append("oneCounter")
    if fmt == "blind":
        flags.append("blind")
    return FormatDescriptor.of(*flags, visibly=visibly)


def check_strategy_format(strategy: StrategyPDA, fmt: FormatDescriptor) -> FormatVerdict:
    return check_format(game_facing_machine(strategy), fmt)


def _is_realtime(game: GameSpec) -> bool:
    return check_format(game.machine, FormatDescriptor(realtime=True)).ok


def _merged(witness: Witness, name: str | None = None) -> StrategyPDA:
    return extract_realtime(
        witness.candidate,
        witness.oriented,
        player=witness.player,
        name=name,
        realtime=_is_realtime(witness.oriented.source),
    )


def _general(witness: Witness) -> StrategyPDA:
    oriented = witness.oriented
    if oriented.normalization.translation.mode == "identity":
        return extract_general(
            witness.candidate,
            witness.game,
            player=witness.player,
            name=f"{oriented.source.name}-general",
        )
    # the strategy has to answer moves of the original game, not its expansion
    return _merged(witness, name=f"{oriented.source.name}-general")


def _visibly(witness: Witness) -> StrategyPDA:
    valph = witness.oriented.source.fmt.visibly
    if valph is None:
        raise ValueError("visibly strategies need a game with a visibly partition")
    return extract_visibly(_general(witness), valph)


def extract_variants(witness: Witness, fmt: str) -> list[StrategyPDA]:
    """Strategies of the requested shape built from ``witness``; the first passing one is used."""
    if fmt == "general":
        return [_general(witness)]
    if fmt == "realtime":
        return [_merged(witness)]
    if fmt == "visibly":
        return [_visibly(witness)]
    if fmt in ("oneCounter", "blind"):
        return [extract_one_counter(witness.candidate, witness.oriented, player=witness.player)]
    if fmt == "visibly+oneCounter":
        out = []
        for build in (
            lambda: extract_one_counter(witness.candidate, witness.oriented, player=witness.player),
            lambda: _visibly(witness),
        ):
            try:
                out.append(build())
            except ValueError:
                continue
        return out
    raise ValueError(f"unknown strategy format {fmt!r}")


def extract_for_format(witness: Witness, fmt: str = "general") -> StrategyPDA:
    """Extract a strategy of format ``fmt``; ValueError if this witness admits none."""
    descriptor = format_descriptor(fmt, witness.oriented.source.fmt.visibly)
    problems: list[str] = []
    for strategy in extract_variants(witness, fmt):
        verdict = check_strategy_format(strategy, descriptor)
        if verdict.ok:
            return strategy
        problems.extend(verdict.violations)
    raise ValueError(f"witness yields no {fmt} strategy: " + ("; ".join(problems[:3]) or "no extraction applies"))


def solve_for_format(
    game: GameSpec,
    fmt: str = "general",
    caps: SearchCaps | None = None,
    *,
    prune: bool = True,
) -> tuple[SolveResult, StrategyPDA | None]:
    """Solve, accepting only Player 0 witnesses that yield a strategy of format ``fmt``.

    Player 1 witnesses are not constrained; their strategy is returned in general format.
    """
    format_descriptor(fmt, game.fmt.visibly)
    accepted: list[tuple[Witness, StrategyPDA]] = []

    def accept(witness: Witness) -> bool:
        try:
            accepted.append((witness, extract_for_format(witness, fmt)))
        except ValueError as exc:
            logger.debug("witness rejected for %s: %s", fmt, exc)
            return False
        return True

    result = solve(game, caps, accept=accept, prune=prune)
    if result.witness is None:
        if fmt != "general":
            result = SolveResult(
                result.status,
                None,
                result.caps,
                result.statistics,
                f"no {fmt} strategy for Player 0 within the caps; " + result.message,
            )
        return result, None
    for witness, strategy in accepted:
        if witness is result.witness:
            return result, strategy
    return result, extract_for_format(result.witness, "general")
