"""Machine transformations: normalization to 1-limited rules, the
product construction from an injective-relation deterministic system to a
2n-head automaton, and the lift from a communicating FA system to a
Watson-Crick system over a single upper symbol.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .classify import classify_system
from .model import (
    MultiheadAutomaton,
    MultiheadRule,
    PCFASystem,
    PCWKSystem,
    WKAutomaton,
    WKRule,
    rho_is_injective,
)


class ConstructionError(ValueError):
    """A transformation precondition does not hold for the given machine."""


@dataclass
class NormalizationReport:
    m: int  # padding constant: max total read length over all rules
    rules_before: int
    rules_after: int
    fresh_states: int
    identity: bool = False


def _padding_constant(s: PCWKSystem) -> int:
    sizes = [r.size() for comp in s.components for r in comp.rules]
    return max(sizes, default=0)


def normalize_one_limited(s: PCWKSystem) -> tuple[PCWKSystem, NormalizationReport]:
    """Rewrite every rule into single-symbol steps so each rule reads at
    most one symbol in total.

    A rule with global label j reading k upper and k' lower symbols becomes
    m+1 rules threaded through m fresh states named from j: first the k'
    lower-symbol steps, then the k upper-symbol steps, then lambda/lambda
    padding ending at the original target.  Lower reads come first; reading
    the upper symbol first would put identical first steps on rules that a
    state distinguishes only by their lower symbol, destroying the
    syntactic determinism the transformation is meant to preserve.  For the
    same reason a rule declared twice in one component reuses the chain of
    its first occurrence instead of spawning a second, conflicting one.
    Systems already within the bound are returned unchanged.
    """
    m = _padding_constant(s)
    before = sum(len(comp.rules) for comp in s.components)
    if m <= 1:
        return s, NormalizationReport(m=m, rules_before=before, rules_after=before, fresh_states=0, identity=True)

    taken = set()
    for comp in s.components:
        taken |= comp.states
    sep = "__"
    while _collides(taken, sep):
        sep += "_"

    new_components = []
    label = 0
    fresh_total = 0
    after = 0
    for comp in s.components:
        rules: list[WKRule] = []
        states = set(comp.states)
        chains: dict[WKRule, list[str]] = {}
        for rule in comp.rules:
            fresh = chains.get(rule)
            if fresh is None:
                label += 1
                fresh = [f"r{sep}{label}{sep}{t}" for t in range(1, m + 1)]
                chains[rule] = fresh
                fresh_total += m
                states.update(fresh)
            chain = [rule.src] + fresh + [rule.dst]
            steps: list[tuple[tuple, tuple]] = []
            for sym in rule.lower:
                steps.append(((), (sym,)))
            for sym in rule.upper:
                steps.append(((sym,), ()))
            while len(steps) < m + 1:
                steps.append(((), ()))
            for t, (u, l) in enumerate(steps):
                rules.append(WKRule(chain[t], u, l, chain[t + 1]))
            after += m + 1
        new_components.append(
            WKAutomaton(
                alphabet=comp.alphabet,
                rho=comp.rho,
                states=frozenset(states),
                start=comp.start,
                finals=comp.finals,
                rules=tuple(rules),
            )
        )
    out = PCWKSystem(alphabet=s.alphabet, rho=s.rho, components=tuple(new_components), queries=dict(s.queries))
    return out, NormalizationReport(m=m, rules_before=before, rules_after=after, fresh_states=fresh_total)


def _collides(taken: set[str], sep: str) -> bool:
    prefix = f"r{sep}"
    return any(name.startswith(prefix) for name in taken)


def flatten_state_tuple(states: tuple[str, ...]) -> str:
    return ".".join(states)


def product_multihead(s: PCWKSystem) -> MultiheadAutomaton:
    """Build the 2n-head automaton equivalent to an injective-relation
    deterministic system with 1-limited rules.

    Heads 2i-1 and 2i track component i's upper and lower strand, both
    scanning the one input word; a lower read of symbol y becomes a read of
    y's unique pre-image under the relation.  Query configurations turn
    into a single all-lambda rule that performs the communication step on
    the state tuple.  Only reachable product states are emitted.
    """
    if not rho_is_injective(s.rho):
        raise ConstructionError("product construction requires an injective complementarity relation")
    for ci, comp in enumerate(s.components, start=1):
        for r in comp.rules:
            if r.size() > 1:
                raise ConstructionError(
                    f"component {ci} rule {r.src}({'/'.join([' '.join(r.upper), ' '.join(r.lower)])}) "
                    "reads more than one symbol; normalize to 1-limited first"
                )
    inv = {b: a for (a, b) in s.rho}
    n = s.degree
    by_src = [
        {} for _ in range(n)
    ]
    for i, comp in enumerate(s.components):
        for rule in comp.rules:
            by_src[i].setdefault(rule.src, []).append(rule)

    start = tuple(comp.start for comp in s.components)
    frontier = [start]
    seen = {start}
    rules: list[MultiheadRule] = []
    while frontier:
        current = frontier.pop()
        succ_tuples = []
        if any(st in s.queries for st in current):
            resolved = list(current)
            changed = False
            for i, st in enumerate(current):
                if st in s.queries:
                    target = current[s.queries[st] - 1]
                    if target not in s.queries:
                        resolved[i] = target
                        changed = True
            if changed:
                dst = tuple(resolved)
                rules.append(MultiheadRule(flatten_state_tuple(current), (None,) * (2 * n), flatten_state_tuple(dst)))
                succ_tuples.append(dst)
        else:
            options = [by_src[i].get(current[i], []) for i in range(n)]
            if all(options):
                succ_tuples_and_reads = _product_rules(options, inv)
                for reads, dst in succ_tuples_and_reads:
                    rules.append(MultiheadRule(flatten_state_tuple(current), reads, flatten_state_tuple(dst)))
                    succ_tuples.append(dst)
        for dst in succ_tuples:
            if dst not in seen:
                seen.add(dst)
                frontier.append(dst)

    finals = frozenset(
        flatten_state_tuple(t)
        for t in seen
        if all(st in comp.finals for st, comp in zip(t, s.components))
    )
    report = classify_system(s)
    return MultiheadAutomaton(
        heads=2 * n,
        alphabet=s.alphabet,
        states=frozenset(flatten_state_tuple(t) for t in seen),
        start=flatten_state_tuple(start),
        finals=finals,
        rules=tuple(rules),
        deterministic_intent=report.dpcwks,
    )


def _product_rules(options, inv):
    out = []
    for combo in itertools.product(*options):
        reads: list = []
        ok = True
        for rule in combo:
            upper_read = rule.upper[0] if rule.upper else None
            if rule.lower:
                y = rule.lower[0]
                if y not in inv:
                    ok = False  # no pre-image: unfireable on any valid strand
                    break
                lower_read = inv[y]
            else:
                lower_read = None
            reads.append(upper_read)
            reads.append(lower_read)
        if ok:
            out.append((tuple(reads), tuple(rule.dst for rule in combo)))
    return out


def lift_pcfa(s: PCFASystem, upper_symbol: str) -> PCWKSystem:
    """Turn a single-strand communicating FA system into a Watson-Crick
    system whose upper strand is a run of one fresh symbol.

    Every lambda rule becomes a (lambda/lambda) rule and every read of y
    becomes (upper_symbol/y); the relation pairs the fresh symbol with
    every original alphabet symbol.
    """
    if upper_symbol in s.alphabet:
        raise ConstructionError(f"upper symbol {upper_symbol!r} already in the alphabet")
    alphabet = (upper_symbol,) + tuple(s.alphabet)
    rho = tuple((upper_symbol, y) for y in s.alphabet)
    components = []
    for comp in s.components:
        rules = []
        for r in comp.rules:
            if r.read is None:
                rules.append(WKRule(r.src, (), (), r.dst))
            else:
                rules.append(WKRule(r.src, (upper_symbol,), (r.read,), r.dst))
        components.append(
            WKAutomaton(
                alphabet=alphabet,
                rho=rho,
                states=comp.states,
                start=comp.start,
                finals=comp.finals,
                rules=tuple(rules),
            )
        )
    return PCWKSystem(alphabet=alphabet, rho=rho, components=tuple(components), queries=dict(s.queries))
