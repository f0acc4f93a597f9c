"""Brute-force ground truth: strand enumeration, bounded language
enumeration, bounded equivalence, and direct semantic membership tests
for the characterized languages.

Everything here is independent of the committed-prefix search in the
engines, so it can cross-validate it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Union

from .engines import (
    RESOURCE_LIMIT,
    ResourceLimitError,
    multihead_accepts,
    pcfa_accepts,
    pcwk_accepts,
    wk_accepts,
)
from .model import (
    MultiheadAutomaton,
    PCFASystem,
    PCWKSystem,
    Rho,
    WKAutomaton,
    Word,
    rho_complements,
)

Machine = Union[WKAutomaton, PCWKSystem, PCFASystem, MultiheadAutomaton]


@dataclass
class EquivalenceReport:
    equal: bool
    bound: int
    counterexample: Optional[Word] = None
    counts_a: Optional[list[int]] = None  # accepted words per length 0..bound
    counts_b: Optional[list[int]] = None


def complement_strands(rho: Rho, upper: Word, alphabet: Optional[tuple[str, ...]] = None) -> Iterator[Word]:
    """All lower strands compatible with upper under rho, lexicographic in
    the alphabet's declared order (plain sort when no alphabet is given)."""
    if alphabet is not None:
        rank = {sym: i for i, sym in enumerate(alphabet)}
        key = rank.get
    else:
        key = None
    choices = []
    for a in upper:
        comps = sorted(rho_complements(rho, a), key=key)
        if not comps:
            return
        choices.append(comps)
    for combo in itertools.product(*choices):
        yield combo


def acceptor(machine: Machine, node_limit: Optional[int] = None) -> Callable[[Word], bool]:
    """Membership predicate for any machine kind; raises ResourceLimitError
    when a run hits the node ceiling."""

    def check(result) -> bool:
        if result.reason == RESOURCE_LIMIT:
            raise ResourceLimitError("node ceiling hit during enumeration")
        return result.accepted

    if isinstance(machine, WKAutomaton):
        return lambda w: check(wk_accepts(machine, w, node_limit=node_limit))
    if isinstance(machine, PCWKSystem):
        return lambda w: check(pcwk_accepts(machine, w, node_limit=node_limit))
    if isinstance(machine, PCFASystem):
        return lambda w: check(pcfa_accepts(machine, w, node_limit=node_limit))
    if isinstance(machine, MultiheadAutomaton):
        return lambda w: check(multihead_accepts(machine, w, node_limit=node_limit))
    raise TypeError(f"no engine for {type(machine).__name__}")


def words_of_length(alphabet: tuple[str, ...], n: int) -> Iterator[Word]:
    return itertools.product(alphabet, repeat=n)


def enumerate_accepted(
    machine: Machine,
    alphabet: tuple[str, ...],
    max_len: int,
    node_limit: Optional[int] = None,
) -> Iterator[Word]:
    """Every accepted word over the alphabet with length <= max_len,
    length-then-lex ordered; streamed, not materialized."""
    accepts = acceptor(machine, node_limit=node_limit)
    for n in range(max_len + 1):
        for w in words_of_length(alphabet, n):
            if accepts(w):
                yield w


def equivalent_up_to(
    a: Machine,
    b: Machine,
    alphabet: tuple[str, ...],
    max_len: int,
    node_limit: Optional[int] = None,
) -> EquivalenceReport:
    """Compare accepted languages word by word up to max_len; the first
    disagreement in length-then-lex order is the counterexample."""
    accepts_a = acceptor(a, node_limit=node_limit)
    accepts_b = acceptor(b, node_limit=node_limit)
    counts_a = [0] * (max_len + 1)
    counts_b = [0] * (max_len + 1)
    counterexample = None
    for n in range(max_len + 1):
        for w in words_of_length(alphabet, n):
            ra = accepts_a(w)
            rb = accepts_b(w)
            counts_a[n] += ra
            counts_b[n] += rb
            if ra != rb and counterexample is None:
                counterexample = w
    return EquivalenceReport(
        equal=counterexample is None,
        bound=max_len,
        counterexample=counterexample,
        counts_a=counts_a,
        counts_b=counts_b,
    )


def make_fixed_checker(s: PCWKSystem) -> Callable[[Word, Word], bool]:
    """Independent fixed-strand membership check for a system.

    Implements the synchronous/communication semantics directly on plain
    tuples with both strands given, sharing no code with the
    committed-prefix engine; used to cross-validate it.
    """
    n = len(s.components)
    index = []
    for comp in s.components:
        by_src: dict[str, list] = {}
        for r in comp.rules:
            by_src.setdefault(r.src, []).append((r.upper, len(r.upper), r.lower, len(r.lower), r.dst))
        index.append(by_src)
    starts = tuple(c.start for c in s.components)
    finals = [c.finals for c in s.components]
    queries = dict(s.queries)
    rho_set = set(s.rho)

    def run(upper: Word, lower: Word) -> bool:
        total = len(upper)
        if len(lower) != total:
            return False
        for u, l in zip(upper, lower):
            if (u, l) not in rho_set:
                return False
        root = (starts, (0,) * n, (0,) * n)
        stack = [root]
        seen = {root}
        while stack:
            states, up, lp = stack.pop()
            if (
                all(p == total for p in up)
                and all(p == total for p in lp)
                and all(st in f for st, f in zip(states, finals))
            ):
                return True
            if any(st in queries for st in states):
                new_states = list(states)
                changed = False
                for i, st in enumerate(states):
                    if st in queries:
                        got = states[queries[st] - 1]
                        if got not in queries:
                            new_states[i] = got
                            changed = True
                if changed:
                    nxt = (tuple(new_states), up, lp)
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
                continue
            moves = []
            dead = False
            for i in range(n):
                mine = []
                for uw, ul, lw, ll, dst in index[i].get(states[i], ()):
                    if upper[up[i] : up[i] + ul] == uw and lower[lp[i] : lp[i] + ll] == lw:
                        mine.append((dst, up[i] + ul, lp[i] + ll))
                if not mine:
                    dead = True
                    break
                moves.append(mine)
            if dead:
                continue
            for combo in itertools.product(*moves):
                nxt = (
                    tuple(m[0] for m in combo),
                    tuple(m[1] for m in combo),
                    tuple(m[2] for m in combo),
                )
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return False

    return run


def semantic_example2_member(w: Word) -> bool:
    """Direct membership test for the block language: w splits into blocks
    ``# w_i * x_i`` over {a, b} and two blocks share the w part but differ
    in the x part.  Unparseable words are non-members."""
    if not w:
        return False
    if w[0] != "#":
        return False
    blocks = []
    i = 0
    n = len(w)
    while i < n:
        if w[i] != "#":
            return False
        i += 1
        wpart = []
        while i < n and w[i] in ("a", "b"):
            wpart.append(w[i])
            i += 1
        if i >= n or w[i] != "*":
            return False
        i += 1
        xpart = []
        while i < n and w[i] in ("a", "b"):
            xpart.append(w[i])
            i += 1
        blocks.append((tuple(wpart), tuple(xpart)))
    for (w1, x1), (w2, x2) in itertools.combinations(blocks, 2):
        if w1 == w2 and x1 != x2:
            return True
    return False


def semantic_square_member(w: Word) -> bool:
    """True iff w = a^(n*n+1) for some even n > 1."""
    if any(sym != "a" for sym in w):
        return False
    k = len(w)
    n = 2
    while n * n + 1 <= k:
        if n * n + 1 == k:
            return True
        n += 2
    return False
