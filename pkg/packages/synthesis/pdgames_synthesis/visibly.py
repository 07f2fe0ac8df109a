"""Input-driven strategies for visibly pushdown games.

The class of the current stack top moves into the finite control. Calls push
the pair (new class, previous class), so a return restores the previous class
from the symbol it pops and never has to look further down.
"""

from __future__ import annotations


from pdgames_arena import StrategyPDA, StrategyRule
from pdgames_core import get_logger
from pdgames_machine import BOTTOM, Action, FormatDescriptor, VisiblyAlphabet

logger = get_logger("synthesis")


def component(symbol: str) -> str:
    return "p0" if symbol == BOTTOM else symbol


def pair_symbol(new: str, previous: str) -> str:
    return f"{component(new)}/{component(previous)}"


def visibly_state(state: str, symbol: str) -> str:
    return f"{state}|{component(symbol)}"


def extract_visibly(strategy: StrategyPDA, valph: VisiblyAlphabet, *, name: str | None = None) -> StrategyPDA:
    """Rewrite a class-on-top strategy so calls and internals never read the stack."""
    calls: list[StrategyRule] = []
    internals: list[StrategyRule] = []
    returns: list[StrategyRule] = []
    for rule in strategy.rules:
        kind = valph.classify(rule.played)
        action = rule.as_rule().action
        if kind == "call" and action is Action.PUSH and len(rule.word) == 2:
            calls.append(rule)
        elif kind == "internal" and action is Action.SKIP:
            internals.append(rule)
        elif kind == "return" and action is Action.POP:
            returns.append(rule)
        elif kind == "return" and action is Action.SKIP and rule.top == BOTTOM:
            returns.append(rule)
        else:
            raise ValueError(f"strategy is not input-driven: {rule.as_rule()} plays {rule.played or '~'} ({kind})")

    pairs = sorted({pair_symbol(r.word[0], r.top) for r in calls})
    tops = pairs + [BOTTOM]
    rules: list[StrategyRule] = []
    for rule in calls:
        source = visibly_state(rule.state, rule.top)
        pushed = pair_symbol(rule.word[0], rule.top)
        target = visibly_state(rule.target, rule.word[0])
        rules.extend(StrategyRule(source, rule.letter, t, target, (pushed, t), rule.output) for t in tops)
    for rule in internals:
        source = visibly_state(rule.state, rule.top)
        target = visibly_state(rule.target, rule.top)
        rules.extend(StrategyRule(source, rule.letter, t, target, (t,), rule.output) for t in tops)
    for rule in returns:
        source = visibly_state(rule.state, rule.top)
        if rule.top == BOTTOM:
            rules.append(StrategyRule(source, rule.letter, BOTTOM, visibly_state(rule.target, BOTTOM), (BOTTOM,), rule.output))
            continue
        mine = component(rule.top) + "/"
        for pair in pairs:
            if pair.startswith(mine):
                previous = pair[len(mine):]
                target = f"{rule.target}|{previous}"
                rules.append(StrategyRule(source, rule.letter, pair, target, (), rule.output))

    states = {r.state for r in rules} | {r.target for r in rules}
    initial = visibly_state(strategy.initial_state, BOTTOM)
    result = StrategyPDA(
        name=name or f"{strategy.name}-visibly",
        player=strategy.player,
        states=frozenset(states | {initial}),
        input_alphabet=strategy.input_alphabet,
        output_alphabet=strategy.output_alphabet,
        stack_alphabet=frozenset(pairs),
        initial_state=initial,
        rules=tuple(rules),
        fmt=FormatDescriptor(deterministic=True, realtime=True, visibly=valph),
    )
    logger.info("visibly strategy with %d rules", len(result.rules), extra={"event": "strategy_extracted"})
    return result
