"""Legal moves and game transformations."""

from __future__ import annotations

from dataclasses import dataclass, replace

from pdgames_machine import Configuration, Normalization, Player, normalize, successors

from .models import GameSpec


def legal_moves(game: GameSpec, config: Configuration) -> list[tuple[str, Configuration]]:
    return successors(game.machine, config)


def swap_roles(game: GameSpec) -> GameSpec:
    """The dual game: owners exchanged, every priority shifted by one."""
    return replace(
        game,
        owner={q: p.opponent for q, p in game.owner.items()},
        col=game.col.shifted(1),
        name=f"{game.name}~swapped",
    )


@dataclass(frozen=True)
class GameNormalization:
    game: GameSpec
    normalization: Normalization
    source: GameSpec


def normalize_game(game: GameSpec) -> GameNormalization:
    norm = normalize(game.machine, game.col)
    owner = {
        q: game.owner[norm.origin[q]] if q in norm.origin else Player.P0
        for q in norm.machine.states
    }
    encoded = replace(game, machine=norm.machine, owner=owner, col=norm.col)
    return GameNormalization(encoded, norm, game)


def replay(game: GameSpec, letters: list[str] | tuple[str, ...]) -> list[Configuration]:
    """Configurations reached by re-applying ``letters`` from the initial configuration."""
    config = game.initial
    out = [config]
    for letter in letters:
        nxt = [c for a, c in legal_moves(game, config) if a == letter]
        if not nxt:
            raise ValueError(f"letter {letter or '~'} is not legal in {config}")
        config = nxt[0]
        out.append(config)
    return out
