"""Subclass and determinism classification for machines and systems.

The determinism check on transition tables is strictly syntactic: two
distinct rules from one state conflict when their upper words are prefix
comparable and their lower words are prefix comparable.  Duplicate
identical rules are treated as non-conflicting (same successor).  The
weak-determinism notion quantifies over all computations, so it is only
checked up to an input-length bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .engines import reachable_fixed_strand
from .model import (
    MultiheadAutomaton,
    MultiheadRule,
    PCWKSystem,
    WKAutomaton,
    WKRule,
    Word,
    rho_complements,
    rho_is_injective,
)

HOLDS_UP_TO_BOUND = "holds-up-to-bound"
VIOLATED = "violated"


def prefix_comparable(u: Word, v: Word) -> bool:
    """True iff u is a prefix of v or v is a prefix of u."""
    n = min(len(u), len(v))
    return u[:n] == v[:n]


@dataclass
class WKClassReport:
    stateless: bool
    all_final: bool
    simple: bool
    one_limited: bool
    dwk: bool
    sdwk: bool
    dwk_witness: Optional[tuple[WKRule, WKRule]] = None


@dataclass
class WeakDeterminismReport:
    status: str  # HOLDS_UP_TO_BOUND or VIOLATED
    bound: int
    witness: Optional[tuple] = None  # (upper, lower, configuration) when violated


@dataclass
class SystemClassReport:
    per_component: list[WKClassReport] = field(default_factory=list)
    dpcwks: bool = False
    sdpcwks: bool = False
    wdpcwks_bounded: Optional[WeakDeterminismReport] = None


def _dwk_conflict(m: WKAutomaton) -> Optional[tuple[WKRule, WKRule]]:
    """First pair of conflicting rules in declaration order, if any."""
    for i, r1 in enumerate(m.rules):
        for r2 in m.rules[i + 1 :]:
            if r1.src != r2.src or r1 == r2:
                continue
            if prefix_comparable(r1.upper, r2.upper) and prefix_comparable(r1.lower, r2.lower):
                return (r1, r2)
    return None


def classify_wk(m: WKAutomaton) -> WKClassReport:
    witness = _dwk_conflict(m)
    dwk = witness is None
    return WKClassReport(
        stateless=(len(m.states) == 1 and m.states == m.finals),
        all_final=(m.states == m.finals),
        simple=all(not r.upper or not r.lower for r in m.rules),
        one_limited=all(r.size() <= 1 for r in m.rules),
        dwk=dwk,
        sdwk=dwk and rho_is_injective(m.rho),
        dwk_witness=witness,
    )


def classify_system(s: PCWKSystem) -> SystemClassReport:
    per = [classify_wk(c) for c in s.components]
    dpcwks = all(r.dwk for r in per)
    return SystemClassReport(
        per_component=per,
        dpcwks=dpcwks,
        sdpcwks=dpcwks and rho_is_injective(s.rho),
    )


def _words_upto(alphabet, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def _strands(rho, upper: Word):
    choices = [sorted(rho_complements(rho, a)) for a in upper]
    if any(not c for c in choices):
        return
    yield from itertools.product(*choices)


def bounded_weak_determinism(
    s: PCWKSystem, max_len: int, node_limit: Optional[int] = None
) -> WeakDeterminismReport:
    """Check that every reachable configuration of every run on every
    double strand of upper length <= max_len has at most one successor.

    Exhaustive over compatible lower strands; a resource ceiling overflow
    propagates as ResourceLimitError.
    """
    for upper in _words_upto(s.alphabet, max_len):
        for lower in _strands(s.rho, upper):
            for cfg, succs in reachable_fixed_strand(s, upper, lower, node_limit=node_limit):
                if len(succs) > 1:
                    return WeakDeterminismReport(VIOLATED, max_len, witness=(upper, lower, cfg))
    return WeakDeterminismReport(HOLDS_UP_TO_BOUND, max_len)


def _heads_compatible(r1: MultiheadRule, r2: MultiheadRule) -> bool:
    return all(a is None or b is None or a == b for a, b in zip(r1.reads, r2.reads))


def multihead_is_deterministic(
    m: MultiheadAutomaton,
) -> tuple[bool, Optional[tuple[MultiheadRule, MultiheadRule]]]:
    """False iff two distinct rules from one state are simultaneously
    satisfiable (per head: equal symbols, or at least one lambda)."""
    for i, r1 in enumerate(m.rules):
        for r2 in m.rules[i + 1 :]:
            if r1.src != r2.src or r1 == r2:
                continue
            if _heads_compatible(r1, r2):
                return False, (r1, r2)
    return True, None
