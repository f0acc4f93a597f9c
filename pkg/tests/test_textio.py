"""Machine file format: grammar, diagnostics, round-trips, fuzzing."""

import random

import pytest

from wkpc import (
    FAComponent,
    FARule,
    MachineDocument,
    MultiheadAutomaton,
    MultiheadRule,
    ParseError,
    PCFASystem,
    PCWKSystem,
    WKAutomaton,
    WKRule,
    expand_word,
    parse_machine,
    serialize_machine,
)

WK_TEXT = """\
; identity-copy machine
machine copy : wk
alphabet a b
rho a a b b
states q r
start q
final q
trans q a / a -> r
trans r b / b -> q
"""


def test_parse_wk():
    doc = parse_machine(WK_TEXT)
    assert doc.kind == "wk" and doc.name == "copy"
    m = doc.payload
    assert m.alphabet == ("a", "b")
    assert m.rho == (("a", "a"), ("b", "b"))
    assert m.rules == (
        WKRule("q", ("a",), ("a",), "r"),
        WKRule("r", ("b",), ("b",), "q"),
    )


def test_parse_eps_and_words():
    text = WK_TEXT + "trans q a b / eps -> q\ntrans q eps / a a -> r\n"
    m = parse_machine(text).payload
    assert m.rules[2] == WKRule("q", ("a", "b"), (), "q")
    assert m.rules[3] == WKRule("q", (), ("a", "a"), "r")


def test_parse_mhdfa():
    text = """\
machine three : mhdfa
alphabet b c #
heads 3
states q0 q1
start q0
final q1
trans q0 [ b _ c ] -> q1
trans q1 [ _ _ _ ] -> q1
"""
    m = parse_machine(text).payload
    assert isinstance(m, MultiheadAutomaton)
    assert m.heads == 3
    assert m.rules[0] == MultiheadRule("q0", ("b", None, "c"), "q1")
    assert m.rules[1] == MultiheadRule("q1", (None, None, None), "q1")


def test_parse_pcfa_with_queries():
    text = """\
machine duo : pcfa
alphabet a
query K1 -> 1
component 1
states s f
start s
final f
trans s a -> f
component 2
states s K1 f
start s
final f
trans s eps -> K1
"""
    m = parse_machine(text).payload
    assert isinstance(m, PCFASystem)
    assert dict(m.queries) == {"K1": 1}
    assert m.components[0].rules == (FARule("s", "a", "f"),)
    assert m.components[1].rules == (FARule("s", None, "K1"),)


def test_parse_errors_carry_line_numbers():
    cases = [
        ("machine x : nope\nalphabet a\n", "unknown machine kind", 1),
        ("machine x : wk\nalphabet a\nrho a\n", "even number", 3),
        (WK_TEXT + "trans q a a -> r\n", "needs '/'", 10),
        (WK_TEXT.replace("start q", "start q extra"), "exactly one state", 6),
        (WK_TEXT + "bogus directive\n", "unexpected directive", 10),
        ("machine x : wk\nalphabet a eps\n", "reserved", 2),
        ("machine x : wk\nalphabet a\nrho a a\nstates q\nstart q\nfinal\ntrans q / eps -> q\n", "eps", 7),
    ]
    for text, fragment, line in cases:
        with pytest.raises(ParseError) as err:
            parse_machine(text)
        assert fragment in str(err.value), text
        assert err.value.line == line, text


def test_parse_rejects_semantic_problems():
    bad = WK_TEXT.replace("final q", "final ghost")
    with pytest.raises(ParseError, match="ghost"):
        parse_machine(bad)


def test_parse_component_order_enforced():
    text = """\
machine duo : pcfa
alphabet a
component 2
states s
start s
final s
"""
    with pytest.raises(ParseError, match="out of order"):
        parse_machine(text)


def test_empty_final_line_roundtrip():
    text = WK_TEXT.replace("final q", "final")
    m = parse_machine(text).payload
    assert m.finals == frozenset()
    again = parse_machine(serialize_machine(MachineDocument("wk", "copy", m)))
    assert again.payload == m


def test_comments_and_blank_lines_ignored():
    noisy = "\n; leading comment\n\n" + WK_TEXT.replace(
        "trans q a / a -> r", "trans q a / a -> r ; explains itself"
    )
    assert parse_machine(noisy).payload == parse_machine(WK_TEXT).payload


def test_expand_word():
    assert expand_word("a b c") == ("a", "b", "c")
    assert expand_word("a^3 b") == ("a", "a", "a", "b")
    assert expand_word("") == ()
    assert expand_word("v_m1^2") == ("v_m1", "v_m1")
    with pytest.raises(ParseError):
        expand_word("a^0")
    with pytest.raises(ParseError):
        expand_word("a^x")


def test_roundtrip_all_fixture_documents():
    from wkpc.fixtures import FIXTURES, document

    for name in FIXTURES:
        doc = document(name)
        text = serialize_machine(doc)
        back = parse_machine(text)
        assert back.payload == doc.payload, name
        assert serialize_machine(back) == text, name


# --- randomized round-trip ---------------------------------------------------


def random_wk(rng: random.Random) -> WKAutomaton:
    alphabet = tuple(rng.sample(["a", "b", "c", "#", "v_1", "x.y"], rng.randint(1, 4)))
    pairs = sorted(
        {
            (rng.choice(alphabet), rng.choice(alphabet))
            for _ in range(rng.randint(1, 5))
        }
    )
    states = tuple(f"s{i}" for i in range(rng.randint(1, 5)))
    word = lambda: tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 2)))
    rules = tuple(
        WKRule(rng.choice(states), word(), word(), rng.choice(states))
        for _ in range(rng.randint(0, 6))
    )
    finals = frozenset(rng.sample(states, rng.randint(0, len(states))))
    return WKAutomaton(alphabet, tuple(pairs), frozenset(states), states[0], finals, rules)


def random_machine(rng: random.Random) -> MachineDocument:
    kind = rng.choice(["wk", "pcwk", "mhdfa", "pcfa"])
    if kind == "wk":
        return MachineDocument("wk", "fuzz", random_wk(rng))
    if kind == "mhdfa":
        heads = rng.randint(1, 3)
        alphabet = ("a", "b")
        states = tuple(f"s{i}" for i in range(rng.randint(1, 4)))
        rules = tuple(
            MultiheadRule(
                rng.choice(states),
                tuple(rng.choice([None, "a", "b"]) for _ in range(heads)),
                rng.choice(states),
            )
            for _ in range(rng.randint(0, 5))
        )
        finals = frozenset(rng.sample(states, rng.randint(0, len(states))))
        return MachineDocument(
            "mhdfa",
            "fuzz",
            MultiheadAutomaton(heads, alphabet, frozenset(states), states[0], finals, rules),
        )
    if kind == "pcfa":
        alphabet = ("a", "b")
        n = rng.randint(1, 3)
        comps = []
        queries = {}
        for i in range(n):
            states = tuple(f"c{i}s{j}" for j in range(rng.randint(1, 4)))
            rules = tuple(
                FARule(rng.choice(states), rng.choice([None, "a", "b"]), rng.choice(states))
                for _ in range(rng.randint(0, 4))
            )
            finals = frozenset(rng.sample(states, rng.randint(0, len(states))))
            comps.append(FAComponent(frozenset(states), states[0], finals, rules))
            if rng.random() < 0.5:
                queries[states[-1]] = rng.randint(1, n)
        return MachineDocument("pcfa", "fuzz", PCFASystem(alphabet, tuple(comps), queries))
    base = random_wk(rng)
    n = rng.randint(1, 3)
    comps = tuple(
        WKAutomaton(
            base.alphabet,
            base.rho,
            base.states,
            base.start,
            base.finals,
            base.rules,
        )
        for _ in range(n)
    )
    queries = {}
    if rng.random() < 0.5:
        queries[sorted(base.states)[0]] = rng.randint(1, n)
    return MachineDocument("pcwk", "fuzz", PCWKSystem(base.alphabet, base.rho, comps, queries))


def test_thousand_random_machines_roundtrip():
    rng = random.Random(20240817)
    for i in range(1000):
        doc = random_machine(rng)
        text = serialize_machine(doc)
        back = parse_machine(text)
        assert back.payload == doc.payload, f"machine {i}"
        assert serialize_machine(back) == text, f"machine {i}"
