"""Line-based machine definition format: parser and canonical serializer.

The comment character is ``;`` because ``#`` is an alphabet symbol in
several shipped machines.  ``eps`` denotes the empty word in strand
positions and ``_`` a lambda read on a multihead head; neither may be
used as an alphabet symbol.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .model import (
    FAComponent,
    FARule,
    MultiheadAutomaton,
    MultiheadRule,
    PCFASystem,
    PCWKSystem,
    WKAutomaton,
    WKRule,
    Word,
    is_token,
    validate,
)

KINDS = ("wk", "pcwk", "mhdfa", "pcfa")

Payload = Union[WKAutomaton, PCWKSystem, MultiheadAutomaton, PCFASystem]


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


@dataclass
class MachineDocument:
    kind: str
    name: str
    payload: Payload


def expand_word(text: str) -> Word:
    """Whitespace-separated tokens; ``tok^N`` repeats tok N times."""
    out: list[str] = []
    for piece in text.split():
        if "^" in piece:
            tok, _, count = piece.partition("^")
            if not count.isdigit() or int(count) < 1:
                raise ParseError(f"bad repetition {piece!r}: count must be a positive integer")
            out.extend([tok] * int(count))
        else:
            out.append(piece)
    return tuple(out)


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(";", 1)[0].strip()
        if line:
            yield lineno, line.split()


class _Parser:
    def __init__(self, text: str):
        self.items = list(_lines(text))
        self.pos = 0

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else None

    def next(self):
        item = self.peek()
        if item is None:
            raise ParseError("unexpected end of input")
        self.pos += 1
        return item

    def expect(self, directive: str):
        item = self.peek()
        if item is None or item[1][0] != directive:
            lineno = item[0] if item else None
            found = item[1][0] if item else "end of input"
            raise ParseError(f"expected {directive!r}, found {found!r}", lineno)
        return self.next()


def _check_tokens(toks, lineno, what):
    for t in toks:
        if not is_token(t):
            raise ParseError(f"bad {what} token {t!r}", lineno)
        if t in ("eps", "_"):
            raise ParseError(f"{t!r} is reserved and cannot be a {what}", lineno)


def _word(toks: list[str], lineno: int) -> Word:
    if toks == ["eps"]:
        return ()
    _check_tokens(toks, lineno, "symbol")
    return tuple(toks)


def _parse_wk_trans(fields, lineno) -> WKRule:
    # trans <state> <upper>|eps / <lower>|eps -> <state>
    try:
        slash = fields.index("/")
        arrow = fields.index("->")
    except ValueError:
        raise ParseError("wk transition needs '/' and '->'", lineno)
    if arrow != len(fields) - 2 or slash < 2 or arrow < slash:
        raise ParseError("malformed wk transition", lineno)
    src = fields[1]
    upper = _word(fields[2:slash], lineno)
    lower = _word(fields[slash + 1 : arrow], lineno)
    dst = fields[-1]
    if not upper and fields[2:slash] != ["eps"]:
        raise ParseError("empty upper word must be written 'eps'", lineno)
    if not lower and fields[slash + 1 : arrow] != ["eps"]:
        raise ParseError("empty lower word must be written 'eps'", lineno)
    return WKRule(src, upper, lower, dst)


def _parse_block(parser: _Parser, kind: str):
    """states/start/final/trans block shared by every machine body."""
    lineno, fields = parser.expect("states")
    _check_tokens(fields[1:], lineno, "state")
    states = frozenset(fields[1:])
    if not states:
        raise ParseError("states line needs at least one state", lineno)
    lineno, fields = parser.expect("start")
    if len(fields) != 2:
        raise ParseError("start line needs exactly one state", lineno)
    start = fields[1]
    lineno, fields = parser.expect("final")
    finals = frozenset(fields[1:])
    rules = []
    while True:
        item = parser.peek()
        if item is None or item[1][0] != "trans":
            break
        lineno, fields = parser.next()
        if kind in ("wk", "pcwk"):
            rules.append(_parse_wk_trans(fields, lineno))
        elif kind == "mhdfa":
            # trans <state> [ <tok>|_ ... ] -> <state>
            try:
                lb = fields.index("[")
                rb = fields.index("]")
                arrow = fields.index("->")
            except ValueError:
                raise ParseError("mhdfa transition needs '[', ']' and '->'", lineno)
            if lb != 2 or rb < lb or arrow != len(fields) - 2:
                raise ParseError("malformed mhdfa transition", lineno)
            reads = tuple(None if t == "_" else t for t in fields[lb + 1 : rb])
            rules.append(MultiheadRule(fields[1], reads, fields[-1]))
        else:  # pcfa
            try:
                arrow = fields.index("->")
            except ValueError:
                raise ParseError("pcfa transition needs '->'", lineno)
            if arrow != 3 or len(fields) != 5:
                raise ParseError("malformed pcfa transition", lineno)
            read = None if fields[2] == "eps" else fields[2]
            rules.append(FARule(fields[1], read, fields[-1]))
    return states, start, finals, tuple(rules)


def parse_machine(text: str) -> MachineDocument:
    """Parse one machine document; raises ParseError with a line number on
    lexical, grammar, or semantic problems."""
    parser = _Parser(text)
    lineno, fields = parser.expect("machine")
    if len(fields) != 4 or fields[2] != ":":
        raise ParseError("machine line must read 'machine <name> : <kind>'", lineno)
    name, kind = fields[1], fields[3]
    if kind not in KINDS:
        raise ParseError(f"unknown machine kind {kind!r}", lineno)
    if not is_token(name):
        raise ParseError(f"bad machine name {name!r}", lineno)

    lineno, fields = parser.expect("alphabet")
    _check_tokens(fields[1:], lineno, "symbol")
    alphabet = tuple(fields[1:])

    rho: tuple = ()
    if kind in ("wk", "pcwk"):
        lineno, fields = parser.expect("rho")
        if (len(fields) - 1) % 2 != 0:
            raise ParseError("rho line needs an even number of tokens", lineno)
        pairs = fields[1:]
        rho = tuple((pairs[i], pairs[i + 1]) for i in range(0, len(pairs), 2))

    heads = None
    if kind == "mhdfa":
        lineno, fields = parser.expect("heads")
        if len(fields) != 2 or not fields[1].isdigit():
            raise ParseError("heads line needs one positive integer", lineno)
        heads = int(fields[1])

    queries: dict[str, int] = {}
    if kind in ("pcwk", "pcfa"):
        while True:
            item = parser.peek()
            if item is None or item[1][0] != "query":
                break
            lineno, fields = parser.next()
            if len(fields) != 4 or fields[2] != "->" or not fields[3].isdigit():
                raise ParseError("query line must read 'query <state> -> <component>'", lineno)
            if fields[1] in queries:
                raise ParseError(f"duplicate query state {fields[1]!r}", lineno)
            queries[fields[1]] = int(fields[3])

    if kind == "wk":
        states, start, finals, rules = _parse_block(parser, kind)
        payload: Payload = WKAutomaton(alphabet, rho, states, start, finals, rules)
    elif kind == "mhdfa":
        states, start, finals, rules = _parse_block(parser, kind)
        payload = MultiheadAutomaton(heads, alphabet, states, start, finals, rules)
    else:
        components = []
        expected = 1
        while parser.peek() is not None:
            lineno, fields = parser.expect("component")
            if len(fields) != 2 or not fields[1].isdigit():
                raise ParseError("component line needs one integer", lineno)
            if int(fields[1]) != expected:
                raise ParseError(
                    f"component {fields[1]} out of order; expected {expected}", lineno
                )
            expected += 1
            states, start, finals, rules = _parse_block(parser, kind)
            if kind == "pcwk":
                components.append(WKAutomaton(alphabet, rho, states, start, finals, rules))
            else:
                components.append(FAComponent(states, start, finals, rules))
        if not components:
            raise ParseError("system needs at least one component block")
        if kind == "pcwk":
            payload = PCWKSystem(alphabet, rho, tuple(components), queries)
        else:
            payload = PCFASystem(alphabet, tuple(components), queries)

    item = parser.peek()
    if item is not None:
        raise ParseError(f"unexpected directive {item[1][0]!r}", item[0])

    problems = validate(payload)
    if problems:
        raise ParseError("invalid machine: " + "; ".join(problems))
    return MachineDocument(kind=kind, name=name, payload=payload)


def _fmt_word(w: Word) -> str:
    return " ".join(w) if w else "eps"


def _body_lines(states, start, finals, rules, kind) -> list[str]:
    out = ["states " + " ".join(sorted(states)), f"start {start}"]
    out.append(("final " + " ".join(sorted(finals))).rstrip())
    for r in rules:
        if kind in ("wk", "pcwk"):
            out.append(f"trans {r.src} {_fmt_word(r.upper)} / {_fmt_word(r.lower)} -> {r.dst}")
        elif kind == "mhdfa":
            reads = " ".join("_" if t is None else t for t in r.reads)
            out.append(f"trans {r.src} [ {reads} ] -> {r.dst}")
        else:
            out.append(f"trans {r.src} {r.read if r.read is not None else 'eps'} -> {r.dst}")
    return out


def serialize_machine(doc: MachineDocument) -> str:
    """Canonical text form: fixed directive order, sorted state and final
    sets, rules in declaration order.  parse(serialize(d)) == d.payload."""
    p = doc.payload
    out = [f"machine {doc.name} : {doc.kind}", "alphabet " + " ".join(p.alphabet)]
    if doc.kind in ("wk", "pcwk"):
        out.append("rho " + " ".join(f"{a} {b}" for a, b in p.rho))
    if doc.kind == "mhdfa":
        out.append(f"heads {p.heads}")
    if doc.kind in ("pcwk", "pcfa"):
        for q, target in p.queries.items():
            out.append(f"query {q} -> {target}")
    if doc.kind in ("wk", "mhdfa"):
        out.extend(_body_lines(p.states, p.start, p.finals, p.rules, doc.kind))
    else:
        for i, comp in enumerate(p.components, start=1):
            out.append(f"component {i}")
            out.extend(_body_lines(comp.states, comp.start, comp.finals, comp.rules, doc.kind))
    return "\n".join(out) + "\n"


def load_machine(path) -> MachineDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_machine(fh.read())


def dump_machine(doc: MachineDocument, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_machine(doc))
