"""Command-line front end.

Exit codes: 0 accept / success, 1 reject / report says no, 2 usage or
input error, 3 resource ceiling hit.
"""

from __future__ import annotations

import argparse
import sys

from . import fixtures
from .classify import classify_system, classify_wk, multihead_is_deterministic
from .constructions import (
    ConstructionError,
    lift_pcfa,
    normalize_one_limited,
    product_multihead,
)
from .engines import (
    RESOURCE_LIMIT,
    ResourceLimitError,
    multihead_accepts,
    pcfa_accepts,
    pcwk_accepts,
)
from .model import (
    MultiheadAutomaton,
    PCFASystem,
    PCWKSystem,
    WKAutomaton,
    Word,
    wrap_wk,
)
from .oracle import enumerate_accepted, equivalent_up_to
from .textio import (
    MachineDocument,
    ParseError,
    dump_machine,
    expand_word,
    load_machine,
    serialize_machine,
)

EXIT_OK = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _load(path) -> MachineDocument:
    try:
        return load_machine(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}")
    except ParseError as exc:
        raise CliError(f"{path}: {exc}")


def _fmt(w: Word) -> str:
    return " ".join(w) if w else "eps"


def _write_doc(doc: MachineDocument, out_path) -> None:
    if out_path is None:
        sys.stdout.write(serialize_machine(doc))
    else:
        dump_machine(doc, out_path)


def cmd_run(args) -> int:
    doc = _load(args.machine)
    upper = expand_word(args.input)
    m = doc.payload
    try:
        if isinstance(m, MultiheadAutomaton):
            if args.lower is not None:
                raise CliError("--lower only applies to wk and pcwk machines")
            result = multihead_accepts(m, upper, node_limit=args.limit)
        elif isinstance(m, PCFASystem):
            if args.lower is not None:
                raise CliError("--lower only applies to wk and pcwk machines")
            result = pcfa_accepts(m, upper, node_limit=args.limit)
        else:
            system = wrap_wk(m) if isinstance(m, WKAutomaton) else m
            lower = expand_word(args.lower) if args.lower is not None else None
            result = pcwk_accepts(
                system, upper, lower=lower, node_limit=args.limit, want_trace=args.trace
            )
    except ParseError as exc:
        raise CliError(str(exc))
    if args.trace and result.trace:
        for cfg in result.trace:
            print(
                f"states={','.join(cfg.states)}"
                f" upper={','.join(map(str, cfg.upper_pos))}"
                f" lower={','.join(map(str, cfg.lower_pos))}"
                f" committed={_fmt(cfg.committed)}"
            )
    if result.accepted:
        print("ACCEPT")
        if result.witness_lower is not None:
            print(f"witness-lower: {_fmt(result.witness_lower)}")
        return EXIT_OK
    print(f"REJECT ({result.reason})")
    return EXIT_RESOURCE if result.reason == RESOURCE_LIMIT else EXIT_NO


def _print_wk_report(report, indent="") -> None:
    for name in ("stateless", "all_final", "simple", "one_limited", "dwk", "sdwk"):
        print(f"{indent}{name.replace('_', '-')}: {getattr(report, name)}")
    if report.dwk_witness is not None:
        r1, r2 = report.dwk_witness
        print(
            f"{indent}dwk-witness: {r1.src} ({_fmt(r1.upper)} / {_fmt(r1.lower)}) -> {r1.dst}"
            f"  vs  ({_fmt(r2.upper)} / {_fmt(r2.lower)}) -> {r2.dst}"
        )


def cmd_classify(args) -> int:
    doc = _load(args.machine)
    m = doc.payload
    if isinstance(m, WKAutomaton):
        _print_wk_report(classify_wk(m))
    elif isinstance(m, PCWKSystem):
        report = classify_system(m)
        for i, comp in enumerate(report.per_component, start=1):
            print(f"component {i}:")
            _print_wk_report(comp, indent="  ")
        print(f"dpcwks: {report.dpcwks}")
        print(f"sdpcwks: {report.sdpcwks}")
    elif isinstance(m, MultiheadAutomaton):
        det, witness = multihead_is_deterministic(m)
        print(f"deterministic: {det}")
        if witness is not None:
            r1, r2 = witness
            print(f"conflict: {r1} vs {r2}")
    else:
        raise CliError("classify supports wk, pcwk, and mhdfa machines")
    return EXIT_OK


def cmd_normalize(args) -> int:
    doc = _load(args.machine)
    m = doc.payload
    if isinstance(m, WKAutomaton):
        out, report = normalize_one_limited(wrap_wk(m))
        payload = out.components[0]
        kind = "wk"
    elif isinstance(m, PCWKSystem):
        out, report = normalize_one_limited(m)
        payload = out
        kind = "pcwk"
    else:
        raise CliError("normalize supports wk and pcwk machines")
    print(
        f"m={report.m} rules-before={report.rules_before} "
        f"rules-after={report.rules_after} fresh-states={report.fresh_states}"
        + (" (already 1-limited)" if report.identity else ""),
        file=sys.stderr,
    )
    _write_doc(MachineDocument(kind, doc.name + "_1lim", payload), args.output)
    return EXIT_OK


def cmd_to_multihead(args) -> int:
    doc = _load(args.machine)
    m = doc.payload
    if isinstance(m, WKAutomaton):
        m = wrap_wk(m)
    if not isinstance(m, PCWKSystem):
        raise CliError("to-multihead supports wk and pcwk machines")
    try:
        out = product_multihead(m)
    except ConstructionError as exc:
        raise CliError(str(exc))
    _write_doc(MachineDocument("mhdfa", doc.name + "_mh", out), args.output)
    return EXIT_OK


def cmd_lift(args) -> int:
    doc = _load(args.machine)
    m = doc.payload
    if not isinstance(m, PCFASystem):
        raise CliError("lift supports pcfa machines")
    try:
        out = lift_pcfa(m, args.upper_symbol)
    except ConstructionError as exc:
        raise CliError(str(exc))
    _write_doc(MachineDocument("pcwk", doc.name + "_wk", out), args.output)
    return EXIT_OK


def _enum_alphabet(args, machine) -> tuple[str, ...]:
    if args.alphabet is not None:
        return tuple(expand_word(args.alphabet))
    return tuple(machine.alphabet)


def cmd_enum(args) -> int:
    doc = _load(args.machine)
    try:
        for w in enumerate_accepted(
            doc.payload, _enum_alphabet(args, doc.payload), args.max_len, node_limit=args.limit
        ):
            print(_fmt(w))
    except ResourceLimitError as exc:
        raise CliError(str(exc), code=EXIT_RESOURCE)
    return EXIT_OK


def cmd_equiv(args) -> int:
    doc_a = _load(args.machine_a)
    doc_b = _load(args.machine_b)
    alphabet = (
        tuple(expand_word(args.alphabet))
        if args.alphabet is not None
        else tuple(doc_a.payload.alphabet)
    )
    try:
        report = equivalent_up_to(
            doc_a.payload, doc_b.payload, alphabet, args.max_len, node_limit=args.limit
        )
    except ResourceLimitError as exc:
        raise CliError(str(exc), code=EXIT_RESOURCE)
    if report.equal:
        print(f"equivalent up to length {report.bound}")
        return EXIT_OK
    print(f"counterexample: {_fmt(report.counterexample)}")
    return EXIT_NO


def cmd_fixture(args) -> int:
    if args.name not in fixtures.FIXTURES:
        raise CliError(
            f"unknown fixture {args.name!r}; choose from {', '.join(sorted(fixtures.FIXTURES))}"
        )
    _write_doc(fixtures.document(args.name), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wkpc",
        description="Watson-Crick automata and communicating automata systems",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        return p

    p = add("run", cmd_run, help="run a machine on an input word")
    p.add_argument("machine")
    p.add_argument("--input", required=True, help="input word, e.g. 'a^5' or 'b b c c #'")
    p.add_argument("--lower", help="fix the lower strand instead of searching for one")
    p.add_argument("--trace", action="store_true", help="print the accepting run")
    p.add_argument("--limit", type=int, help="search node ceiling")

    p = add("classify", cmd_classify, help="report subclass and determinism properties")
    p.add_argument("machine")

    p = add("normalize", cmd_normalize, help="rewrite rules into 1-limited form")
    p.add_argument("machine")
    p.add_argument("-o", "--output", help="write the result here instead of stdout")

    p = add("to-multihead", cmd_to_multihead, help="product construction to a 2n-head automaton")
    p.add_argument("machine")
    p.add_argument("-o", "--output")

    p = add("lift", cmd_lift, help="lift a pcfa system to a Watson-Crick system")
    p.add_argument("machine")
    p.add_argument("--upper-symbol", required=True)
    p.add_argument("-o", "--output")

    p = add("enum", cmd_enum, help="enumerate accepted words up to a length bound")
    p.add_argument("machine")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--alphabet", help="space-separated symbols; default: machine alphabet")
    p.add_argument("--limit", type=int)

    p = add("equiv", cmd_equiv, help="compare two machines up to a length bound")
    p.add_argument("machine_a")
    p.add_argument("machine_b")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--alphabet")
    p.add_argument("--limit", type=int)

    p = add("fixture", cmd_fixture, help="emit one of the shipped machines")
    p.add_argument("name")
    p.add_argument("-o", "--output")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
