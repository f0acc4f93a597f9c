"""Machine data types, the complementarity relation, and structural validation.

Symbols are atomic text tokens (multi-character tokens such as ``v_m1`` are
legal), words are tuples of tokens, and the empty tuple is the empty word.
A ``None`` read is the lambda marker for single-head rules; it is never a
member of an alphabet.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

# A word is a tuple of symbol tokens; () is the empty word.
Word = tuple[str, ...]

# Complementarity relation: ordered pairs (upper symbol, lower symbol).
Rho = tuple[tuple[str, str], ...]

TOKEN_CHARS = set("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_#*$+.-")


def is_token(s: str) -> bool:
    return bool(s) and all(ch in TOKEN_CHARS for ch in s)


@dataclass(frozen=True)
class WKRule:
    """Transition of a Watson-Crick automaton: src (upper/lower) -> dst."""

    src: str
    upper: Word
    lower: Word
    dst: str

    def size(self) -> int:
        return len(self.upper) + len(self.lower)


@dataclass(frozen=True)
class WKAutomaton:
    alphabet: tuple[str, ...]
    rho: Rho
    states: frozenset[str]
    start: str
    finals: frozenset[str]
    rules: tuple[WKRule, ...]


@dataclass(frozen=True)
class MultiheadRule:
    """Transition of a k-head automaton; reads[i] is a symbol or None (lambda)."""

    src: str
    reads: tuple[Optional[str], ...]
    dst: str


@dataclass(frozen=True)
class MultiheadAutomaton:
    heads: int
    alphabet: tuple[str, ...]
    states: frozenset[str]
    start: str
    finals: frozenset[str]
    rules: tuple[MultiheadRule, ...]
    deterministic_intent: bool = True


@dataclass(frozen=True)
class FARule:
    src: str
    read: Optional[str]  # None = lambda
    dst: str


@dataclass(frozen=True)
class FAComponent:
    states: frozenset[str]
    start: str
    finals: frozenset[str]
    rules: tuple[FARule, ...]


@dataclass(frozen=True)
class PCFASystem:
    """Parallel communicating finite-automata system over a single strand."""

    alphabet: tuple[str, ...]
    components: tuple[FAComponent, ...]
    queries: Mapping[str, int] = field(default_factory=dict)  # query state -> 1-based target


@dataclass(frozen=True)
class PCWKSystem:
    """Parallel communicating Watson-Crick automata system.

    All components share the system alphabet and complementarity relation;
    a single-component system with no queries is an ordinary WK automaton.
    """

    alphabet: tuple[str, ...]
    rho: Rho
    components: tuple[WKAutomaton, ...]
    queries: Mapping[str, int] = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return len(self.components)


def wrap_wk(m: WKAutomaton) -> PCWKSystem:
    """View a single WK automaton as a degree-1 system with no queries."""
    return PCWKSystem(alphabet=m.alphabet, rho=m.rho, components=(m,), queries={})


def rho_complements(rho: Rho, s: str) -> set[str]:
    """All lower symbols paired with upper symbol s; empty set if none."""
    return {b for (a, b) in rho if a == s}


def rho_upper_preimages(rho: Rho, s: str) -> set[str]:
    return {a for (a, b) in rho if b == s}


def rho_is_injective(rho: Rho) -> bool:
    """True iff every upper symbol has at most one complement and every
    lower symbol at most one pre-image."""
    pairs = set(rho)
    uppers = [a for (a, _) in pairs]
    lowers = [b for (_, b) in pairs]
    return len(set(uppers)) == len(uppers) and len(set(lowers)) == len(lowers)


def _validate_alphabet(alphabet: tuple[str, ...], out: list[str]) -> None:
    if not alphabet:
        out.append("alphabet: must be nonempty")
    seen = set()
    for tok in alphabet:
        if not is_token(tok):
            out.append(f"alphabet: bad symbol token {tok!r}")
        if tok in seen:
            out.append(f"alphabet: duplicate symbol {tok!r}")
        seen.add(tok)


def _validate_rho(rho: Rho, alphabet: tuple[str, ...], out: list[str]) -> None:
    sigma = set(alphabet)
    for (a, b) in rho:
        if a not in sigma:
            out.append(f"rho: upper symbol {a!r} not in alphabet")
        if b not in sigma:
            out.append(f"rho: lower symbol {b!r} not in alphabet")


def _validate_word(w: Word, sigma: set[str], where: str, out: list[str]) -> None:
    for tok in w:
        if tok not in sigma:
            out.append(f"{where}: symbol {tok!r} not in alphabet")


def _validate_wk(m: WKAutomaton, out: list[str], prefix: str = "") -> None:
    _validate_alphabet(m.alphabet, out)
    _validate_rho(m.rho, m.alphabet, out)
    sigma = set(m.alphabet)
    if m.start not in m.states:
        out.append(f"{prefix}start: {m.start!r} not a declared state")
    for f in m.finals:
        if f not in m.states:
            out.append(f"{prefix}finals: {f!r} not a declared state")
    for i, r in enumerate(m.rules):
        if r.src not in m.states:
            out.append(f"{prefix}rule {i}: source {r.src!r} not a declared state")
        if r.dst not in m.states:
            out.append(f"{prefix}rule {i}: target {r.dst!r} not a declared state")
        _validate_word(r.upper, sigma, f"{prefix}rule {i} upper", out)
        _validate_word(r.lower, sigma, f"{prefix}rule {i} lower", out)


def validate(machine) -> list[str]:
    """Structural violations of the given machine or system; [] when clean.

    Violations are data, not exceptions: each entry names the field and the
    rule broken.
    """
    out: list[str] = []
    if isinstance(machine, WKAutomaton):
        _validate_wk(machine, out)
    elif isinstance(machine, MultiheadAutomaton):
        _validate_alphabet(machine.alphabet, out)
        sigma = set(machine.alphabet)
        if machine.heads < 1:
            out.append("heads: must be >= 1")
        if machine.start not in machine.states:
            out.append(f"start: {machine.start!r} not a declared state")
        for f in machine.finals:
            if f not in machine.states:
                out.append(f"finals: {f!r} not a declared state")
        for i, r in enumerate(machine.rules):
            if len(r.reads) != machine.heads:
                out.append(f"rule {i}: reads length {len(r.reads)} != head count {machine.heads}")
            if r.src not in machine.states:
                out.append(f"rule {i}: source {r.src!r} not a declared state")
            if r.dst not in machine.states:
                out.append(f"rule {i}: target {r.dst!r} not a declared state")
            for h, sym in enumerate(r.reads):
                if sym is not None and sym not in sigma:
                    out.append(f"rule {i} head {h + 1}: symbol {sym!r} not in alphabet")
    elif isinstance(machine, PCFASystem):
        _validate_alphabet(machine.alphabet, out)
        sigma = set(machine.alphabet)
        if not machine.components:
            out.append("components: must have at least one component")
        all_states: set[str] = set()
        for ci, comp in enumerate(machine.components, start=1):
            p = f"component {ci} "
            all_states |= comp.states
            if comp.start not in comp.states:
                out.append(f"{p}start: {comp.start!r} not a declared state")
            for f in comp.finals:
                if f not in comp.states:
                    out.append(f"{p}finals: {f!r} not a declared state")
            for i, r in enumerate(comp.rules):
                if r.src not in comp.states:
                    out.append(f"{p}rule {i}: source {r.src!r} not a declared state")
                if r.dst not in comp.states:
                    out.append(f"{p}rule {i}: target {r.dst!r} not a declared state")
                if r.read is not None and r.read not in sigma:
                    out.append(f"{p}rule {i}: symbol {r.read!r} not in alphabet")
        _validate_queries(machine.queries, len(machine.components), all_states, out)
    elif isinstance(machine, PCWKSystem):
        _validate_alphabet(machine.alphabet, out)
        if not machine.components:
            out.append("components: must have at least one component")
        _validate_rho(machine.rho, machine.alphabet, out)
        all_states = set()
        for ci, comp in enumerate(machine.components, start=1):
            p = f"component {ci} "
            all_states |= comp.states
            if comp.alphabet != machine.alphabet:
                out.append(f"{p}alphabet: differs from the system alphabet")
            if comp.rho != machine.rho:
                out.append(f"{p}rho: differs from the system relation")
            _validate_wk(comp, out, prefix=p)
        _validate_queries(machine.queries, len(machine.components), all_states, out)
    else:
        out.append(f"unknown machine type {type(machine).__name__}")
    return out


def _validate_queries(queries: Mapping[str, int], n: int, all_states: set[str], out: list[str]) -> None:
    for q, target in queries.items():
        if not (1 <= target <= n):
            out.append(f"query {q!r}: target {target} outside 1..{n}")
        if q not in all_states:
            out.append(f"query {q!r}: not a state of any component")
