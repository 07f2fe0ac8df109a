"""Reference games shipped with the project."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from pdgames_arena import GameSpec, parse_game

FIG1 = """\
# Blind one-counter game: Player 1 builds a^n b^m c, Player 0 must tell m = n from m < n.
game fig1
condition parity
format deterministic realtime oneCounter blind
input a b c d
stack A
states q0 q1 q2 q3 q4
init q0
owner q0=1 q1=1 q2=0 q3=0 q4=1
color q0=2 q1=2 q2=0 q3=0 q4=1

q0 a * -> q0 push A
q0 b A -> q1 pop
q1 b A -> q1 pop
q1 c * -> q2 skip
q2 a * -> q3 skip
q2 b * -> q4 skip
q3 c * -> q4 push A
q4 c * -> q3 push A
q3 d A -> q3 skip
q4 d A -> q4 skip
"""

LWIN = """\
# Visibly one-counter game: Player 1 plays c^n a (n >= 2), Player 0 answers r^(n-2) a r r.
# Internals cannot see the counter, so Player 1 tests it for zero with a final return.
game lwin
condition parity
format deterministic realtime visibly oneCounter
visibly calls=c returns=r internals=a
input a c r
stack A
states u0 u1 u2 v w w1 w2 z bad
init u0
owner u0=1 u1=1 u2=1 v=0 w=0 w1=0 w2=1 z=0 bad=0
color u0=2 u1=2 u2=0 v=2 w=2 w1=2 w2=2 z=0 bad=1

u0 c * -> u1 push A
u1 c * -> u2 push A
u2 c * -> u2 push A
u2 a * -> v skip
v r A -> v pop
v r _ -> bad skip
v a * -> w skip
w r A -> w1 pop
w r _ -> bad skip
w1 r A -> w2 pop
w1 r _ -> bad skip
w2 a * -> z skip
w2 r A -> bad pop
w2 r _ -> z skip
z a * -> z skip
bad a * -> bad skip
"""

DIVERGENCE = """\
# Priority 1 recurs only above the Steps positions: Player 1 wins under parity,
# Player 0 under stair parity. Leaving to s2 loses under both.
game divergence
condition stair
format deterministic realtime oneCounter
input a b c
stack A
states s0 s1 s2
init s0
owner s0=0 s1=1 s2=0
color s0=2 s1=1 s2=1

s0 a * -> s1 push A
s0 c * -> s2 skip
s1 b A -> s0 pop
s2 c * -> s2 skip
"""

FIXTURE_TEXTS = {"fig1": FIG1, "lwin": LWIN, "divergence": DIVERGENCE}


@dataclass(frozen=True)
class FixtureSet:
    fig1: GameSpec
    lwin: GameSpec
    divergence: GameSpec

    def items(self) -> list[tuple[str, GameSpec]]:
        return [("fig1", self.fig1), ("lwin", self.lwin), ("divergence", self.divergence)]


def fixtures() -> FixtureSet:
    return FixtureSet(**{name: parse_game(text) for name, text in FIXTURE_TEXTS.items()})


def write_fixtures(directory: Path | str) -> list[Path]:
    """Write ``<name>.game`` files; returns the written paths."""
    target = Path(directory)
    target.mkdir(parents=True, exist_ok=True)
    out = []
    for name, text in FIXTURE_TEXTS.items():
        path = target / f"{name}.game"
        path.write_text(text, encoding="utf-8")
        out.append(path)
    return out
