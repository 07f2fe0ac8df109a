"""One-step relation of pushdown machines."""

from __future__ import annotations

from .models import Configuration, PushdownMachine, Rule


def apply_rule(rule: Rule, config: Configuration) -> Configuration:
    if rule.state != config.state or rule.top != config.top:
        raise ValueError(f"{rule} is not enabled in {config}")
    return Configuration(rule.target, rule.word + config.stack[1:])


def enabled_rules(machine: PushdownMachine, config: Configuration) -> tuple[Rule, ...]:
    return machine.rules_at(config.state, config.top)


def step(machine: PushdownMachine, config: Configuration, letter: str) -> list[Configuration]:
    return [apply_rule(r, config) for r in enabled_rules(machine, config) if r.letter == letter]


def successors(machine: PushdownMachine, config: Configuration) -> list[tuple[str, Configuration]]:
    """All ``(letter, configuration)`` pairs reachable in one step, sorted."""
    return sorted((r.letter, apply_rule(r, config)) for r in enabled_rules(machine, config))
