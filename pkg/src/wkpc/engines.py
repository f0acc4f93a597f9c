"""Execution engines for all four machine kinds.

The lower strand of a WK run is existentially quantified; the engines
realize it as a lazily committed prefix shared by every component of a
system.  A read past the committed prefix branches the search over every
complement the relation allows at that position, which keeps the search
exact without enumerating whole strands up front.
"""

from __future__ import annotations

import itertools
import os
import weakref
from dataclasses import dataclass
from typing import Iterator, Optional

from .model import (
    FAComponent,
    MultiheadAutomaton,
    MultiheadRule,
    PCFASystem,
    PCWKSystem,
    WKAutomaton,
    Word,
    wrap_wk,
)

DEFAULT_NODE_LIMIT = 5_000_000

ACCEPTED = "accepted"
EXHAUSTED = "exhausted"
COMPONENT_STUCK = "component-stuck"
CYCLE_WITHOUT_PROGRESS = "cycle-without-progress"
RESOURCE_LIMIT = "resource-limit"


class ResourceLimitError(Exception):
    """Raised when a search would need more nodes than the configured ceiling."""


def node_limit_or_default(node_limit: Optional[int]) -> int:
    if node_limit is not None:
        return node_limit
    return int(os.environ.get("WKPC_NODE_LIMIT", DEFAULT_NODE_LIMIT))


@dataclass(frozen=True)
class PCConfiguration:
    """Synchronous-system configuration plus the committed lower prefix."""

    states: tuple[str, ...]
    upper_pos: tuple[int, ...]
    lower_pos: tuple[int, ...]
    committed: Word


@dataclass
class RunResult:
    accepted: bool
    witness_lower: Optional[Word] = None
    reason: str = EXHAUSTED
    trace: Optional[list[PCConfiguration]] = None
    visited: int = 0

    def __bool__(self) -> bool:
        return self.accepted


def initial_configuration(s: PCWKSystem) -> PCConfiguration:
    n = s.degree
    return PCConfiguration(
        states=tuple(c.start for c in s.components),
        upper_pos=(0,) * n,
        lower_pos=(0,) * n,
        committed=(),
    )


def _communication_successor(s: PCWKSystem, c: PCConfiguration) -> Optional[PCConfiguration]:
    """Resolve query states; None means the step makes no progress."""
    queries = s.queries
    new_states = list(c.states)
    changed = False
    for i, st in enumerate(c.states):
        if st in queries:
            target = c.states[queries[st] - 1]
            if target not in queries:
                new_states[i] = target
                changed = True
    if not changed:
        return None
    return PCConfiguration(tuple(new_states), c.upper_pos, c.lower_pos, c.committed)


def _wk_index(comp: WKAutomaton) -> dict[str, list]:
    by_src: dict[str, list] = {}
    for rule in comp.rules:
        by_src.setdefault(rule.src, []).append(rule)
    return by_src


# Rule indexes keyed by machine identity so repeated runs on one machine
# (enumeration, equivalence checking) skip the rebuild.  Entries are
# revalidated against a weak reference, so a recycled id cannot leak a
# stale index.
_index_cache: dict = {}


def _cached_prep(machine, build):
    key = id(machine)
    entry = _index_cache.get(key)
    if entry is not None and entry[0]() is machine:
        return entry[1]
    prep = build(machine)
    try:
        ref = weakref.ref(machine)
    except TypeError:
        ref = lambda: machine
    _index_cache[key] = (ref, prep)
    return prep


def _pcwk_prep(s: PCWKSystem):
    return [_wk_index(comp) for comp in s.components], frozenset(s.rho)


def _component_moves(
    rules_from_state: list,
    upos: int,
    lpos: int,
    upper: Word,
    committed: Word,
    lower: Optional[Word],
    rho_set: frozenset[tuple[str, str]],
):
    """Applicable rules of one component, each with its lower-strand extension.

    Yields (rule, extension) where extension lists (position, symbol) claims
    beyond the committed prefix.  With a fixed lower strand the extension is
    forced to match it.
    """
    total = len(upper)
    for rule in rules_from_state:
        k = len(rule.upper)
        if upper[upos : upos + k] != rule.upper:
            continue
        if lpos + len(rule.lower) > total:
            continue
        ext: list[tuple[int, str]] = []
        ok = True
        for off, sym in enumerate(rule.lower):
            p = lpos + off
            if p < len(committed):
                if committed[p] != sym:
                    ok = False
                    break
            else:
                if lower is not None and lower[p] != sym:
                    ok = False
                    break
                if (upper[p], sym) not in rho_set:
                    ok = False
                    break
                ext.append((p, sym))
        if ok:
            yield rule, ext


def pcwk_step(
    s: PCWKSystem,
    c: PCConfiguration,
    upper: Word,
    lower: Optional[Word] = None,
    _index: Optional[list[dict[str, list]]] = None,
    _rho_set: Optional[frozenset] = None,
) -> list[PCConfiguration]:
    """All successor configurations of c on the given upper word.

    Communication (some component in a query state) yields at most one
    successor with no head movement; otherwise every combination of one
    applicable rule per component yields a successor, provided the
    combination's claims on fresh lower-strand positions agree.  An empty
    result is a dead branch.
    """
    if any(st in s.queries for st in c.states):
        succ = _communication_successor(s, c)
        return [] if succ is None else [succ]

    index = _index if _index is not None else [_wk_index(comp) for comp in s.components]
    rho_set = _rho_set if _rho_set is not None else frozenset(s.rho)
    per_component = []
    for i in range(s.degree):
        moves = list(
            _component_moves(
                index[i].get(c.states[i], ()),
                c.upper_pos[i],
                c.lower_pos[i],
                upper,
                c.committed,
                lower,
                rho_set,
            )
        )
        if not moves:
            return []
        per_component.append(moves)

    out = []
    base = len(c.committed)
    for combo in itertools.product(*per_component):
        claims: dict[int, str] = {}
        ok = True
        for _, ext in combo:
            for p, sym in ext:
                if claims.setdefault(p, sym) != sym:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        committed = c.committed + tuple(claims[p] for p in range(base, base + len(claims)))
        states = tuple(rule.dst for rule, _ in combo)
        upper_pos = tuple(c.upper_pos[i] + len(combo[i][0].upper) for i in range(len(combo)))
        lower_pos = tuple(c.lower_pos[i] + len(combo[i][0].lower) for i in range(len(combo)))
        out.append(PCConfiguration(states, upper_pos, lower_pos, committed))
    return out


def _is_accepting(s: PCWKSystem, c: PCConfiguration, total: int) -> bool:
    return (
        all(p == total for p in c.upper_pos)
        and all(p == total for p in c.lower_pos)
        and all(st in comp.finals for st, comp in zip(c.states, s.components))
    )


def pcwk_accepts(
    s: PCWKSystem,
    upper: Word,
    lower: Optional[Word] = None,
    node_limit: Optional[int] = None,
    want_trace: bool = False,
) -> RunResult:
    """Search every run of the system on the upper word.

    With ``lower`` given, the whole strand is fixed in advance; otherwise
    the committed-prefix search decides the existential lower strand.  The
    witness strand is returned on acceptance.
    """
    limit = node_limit_or_default(node_limit)
    total = len(upper)
    index, rho_set = _cached_prep(s, _pcwk_prep)
    if lower is not None:
        if len(lower) != total or any((u, l) not in rho_set for u, l in zip(upper, lower)):
            return RunResult(False, reason=EXHAUSTED)

    root = initial_configuration(s)
    stack = [root]
    visited = {root}
    parent: dict[PCConfiguration, Optional[PCConfiguration]] = {root: None} if want_trace else {}
    saw_no_progress = False
    root_dead = False

    while stack:
        c = stack.pop()
        if _is_accepting(s, c, total):
            witness = c.committed if lower is None else lower
            trace = _rebuild_trace(parent, c) if want_trace else None
            return RunResult(True, witness_lower=witness, reason=ACCEPTED, trace=trace, visited=len(visited))
        succs = pcwk_step(s, c, upper, lower, _index=index, _rho_set=rho_set)
        if not succs:
            if any(st in s.queries for st in c.states):
                saw_no_progress = True
            elif c == root:
                root_dead = True
            continue
        for nxt in succs:
            if nxt not in visited:
                if len(visited) >= limit:
                    return RunResult(False, reason=RESOURCE_LIMIT, visited=len(visited))
                visited.add(nxt)
                if want_trace:
                    parent[nxt] = c
                stack.append(nxt)

    if root_dead:
        reason = COMPONENT_STUCK
    elif saw_no_progress:
        reason = CYCLE_WITHOUT_PROGRESS
    else:
        reason = EXHAUSTED
    return RunResult(False, reason=reason, visited=len(visited))


def _rebuild_trace(parent, last) -> list[PCConfiguration]:
    out = [last]
    while parent[out[-1]] is not None:
        out.append(parent[out[-1]])
    out.reverse()
    return out


def wk_accepts(m: WKAutomaton, upper: Word, node_limit: Optional[int] = None, want_trace: bool = False) -> RunResult:
    """Membership for a single WK automaton (degree-1 system)."""
    return pcwk_accepts(_cached_prep(m, wrap_wk), upper, node_limit=node_limit, want_trace=want_trace)


def wk_accepts_fixed(m: WKAutomaton, upper: Word, lower: Word, node_limit: Optional[int] = None) -> RunResult:
    """Membership with both strands fixed; a malformed pair is a plain reject."""
    return pcwk_accepts(_cached_prep(m, wrap_wk), upper, lower=lower, node_limit=node_limit)


def reachable_fixed_strand(
    s: PCWKSystem, upper: Word, lower: Word, node_limit: Optional[int] = None
) -> Iterator[tuple[PCConfiguration, list[PCConfiguration]]]:
    """Every reachable configuration on a fixed double strand with its successors.

    Used by the bounded weak-determinism check; raises on the node ceiling.
    """
    limit = node_limit_or_default(node_limit)
    index, rho_set = _cached_prep(s, _pcwk_prep)
    if len(lower) != len(upper) or any((u, l) not in rho_set for u, l in zip(upper, lower)):
        return
    root = initial_configuration(s)
    stack = [root]
    visited = {root}
    while stack:
        c = stack.pop()
        succs = pcwk_step(s, c, upper, lower, _index=index, _rho_set=rho_set)
        yield c, succs
        for nxt in succs:
            if nxt not in visited:
                if len(visited) >= limit:
                    raise ResourceLimitError(f"configuration ceiling {limit} exceeded")
                visited.add(nxt)
                stack.append(nxt)


def component_move_counts(
    s: PCWKSystem, c: PCConfiguration, upper: Word, lower: Word
) -> tuple[int, ...]:
    """How many distinct rules each component could fire from c on a fixed
    double strand; all zeros for a communication configuration (no head
    moves).  A rule declared twice is one choice, not two, matching how the
    determinism classifier treats duplicates."""
    if any(st in s.queries for st in c.states):
        return (0,) * s.degree
    index, rho_set = _cached_prep(s, _pcwk_prep)
    return tuple(
        len(
            {
                (rule.upper, rule.lower, rule.dst)
                for rule, _ in _component_moves(
                    index[i].get(c.states[i], ()),
                    c.upper_pos[i],
                    c.lower_pos[i],
                    upper,
                    c.committed,
                    lower,
                    rho_set,
                )
            }
        )
        for i in range(s.degree)
    )


# --- single-strand parallel communicating FA systems -------------------------


@dataclass(frozen=True)
class PCFAConfiguration:
    states: tuple[str, ...]
    pos: tuple[int, ...]


def _fa_index(comp: FAComponent) -> dict[str, list[FARule]]:
    by_src: dict[str, list[FARule]] = {}
    for rule in comp.rules:
        by_src.setdefault(rule.src, []).append(rule)
    return by_src


def _fa_moves(rules_from_state, pos: int, w: Word):
    for rule in rules_from_state:
        if rule.read is None:
            yield rule, 0
        elif pos < len(w) and w[pos] == rule.read:
            yield rule, 1


def pcfa_step(
    s: PCFASystem,
    c: PCFAConfiguration,
    w: Word,
    _index: Optional[list[dict[str, list[FARule]]]] = None,
) -> list[PCFAConfiguration]:
    if any(st in s.queries for st in c.states):
        new_states = list(c.states)
        changed = False
        for i, st in enumerate(c.states):
            if st in s.queries:
                target = c.states[s.queries[st] - 1]
                if target not in s.queries:
                    new_states[i] = target
                    changed = True
        return [PCFAConfiguration(tuple(new_states), c.pos)] if changed else []

    index = _index if _index is not None else [_fa_index(comp) for comp in s.components]
    per_component = []
    for i in range(len(s.components)):
        moves = list(_fa_moves(index[i].get(c.states[i], ()), c.pos[i], w))
        if not moves:
            return []
        per_component.append(moves)
    return [
        PCFAConfiguration(
            tuple(rule.dst for rule, _ in combo),
            tuple(c.pos[i] + combo[i][1] for i in range(len(combo))),
        )
        for combo in itertools.product(*per_component)
    ]


def pcfa_accepts(s: PCFASystem, w: Word, node_limit: Optional[int] = None) -> RunResult:
    """Synchronous run of a parallel communicating FA system on one word."""
    limit = node_limit_or_default(node_limit)
    total = len(w)
    index = _cached_prep(s, lambda sys: [_fa_index(comp) for comp in sys.components])
    root = PCFAConfiguration(tuple(c.start for c in s.components), (0,) * len(s.components))
    stack = [root]
    visited = {root}
    saw_no_progress = False
    root_dead = False
    while stack:
        c = stack.pop()
        if all(p == total for p in c.pos) and all(
            st in comp.finals for st, comp in zip(c.states, s.components)
        ):
            return RunResult(True, reason=ACCEPTED, visited=len(visited))
        succs = pcfa_step(s, c, w, _index=index)
        if not succs:
            if any(st in s.queries for st in c.states):
                saw_no_progress = True
            elif c == root:
                root_dead = True
            continue
        for nxt in succs:
            if nxt not in visited:
                if len(visited) >= limit:
                    return RunResult(False, reason=RESOURCE_LIMIT, visited=len(visited))
                visited.add(nxt)
                stack.append(nxt)
    if root_dead:
        reason = COMPONENT_STUCK
    elif saw_no_progress:
        reason = CYCLE_WITHOUT_PROGRESS
    else:
        reason = EXHAUSTED
    return RunResult(False, reason=reason, visited=len(visited))


# --- multihead automata ------------------------------------------------------


def multihead_accepts(m: MultiheadAutomaton, w: Word, node_limit: Optional[int] = None) -> RunResult:
    """Simulate k one-way heads on one word; nondeterministic tables are
    searched exhaustively with a visited set."""
    limit = node_limit_or_default(node_limit)
    total = len(w)

    def build(machine: MultiheadAutomaton) -> dict[str, list[MultiheadRule]]:
        idx: dict[str, list[MultiheadRule]] = {}
        for rule in machine.rules:
            idx.setdefault(rule.src, []).append(rule)
        return idx

    by_src = _cached_prep(m, build)
    root = (m.start, (0,) * m.heads)
    stack = [root]
    visited = {root}
    while stack:
        state, pos = stack.pop()
        if state in m.finals and all(p == total for p in pos):
            return RunResult(True, reason=ACCEPTED, visited=len(visited))
        for rule in by_src.get(state, ()):
            ok = True
            new_pos = list(pos)
            for h, sym in enumerate(rule.reads):
                if sym is None:
                    continue
                if pos[h] >= total or w[pos[h]] != sym:
                    ok = False
                    break
                new_pos[h] += 1
            if not ok:
                continue
            nxt = (rule.dst, tuple(new_pos))
            if nxt not in visited:
                if len(visited) >= limit:
                    return RunResult(False, reason=RESOURCE_LIMIT, visited=len(visited))
                visited.add(nxt)
                stack.append(nxt)
    return RunResult(False, reason=EXHAUSTED, visited=len(visited))
