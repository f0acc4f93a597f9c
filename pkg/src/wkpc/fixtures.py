"""Shipped machines used by the test suite and the ``fixture`` CLI command.

Each builder returns a fresh machine value; ``document(name)`` wraps one in
a serializable document.  The checked-in files under ``data/`` are the
canonical serializations of these builders and a golden test keeps them in
sync.
"""

from __future__ import annotations

from importlib import resources

from .model import (
    FAComponent,
    FARule,
    MultiheadAutomaton,
    MultiheadRule,
    PCFASystem,
    PCWKSystem,
    WKAutomaton,
    WKRule,
)
from .textio import MachineDocument

Q = ("q0", "q1", "q2", "q3", "q4", "q5", "q6")
K = ("K1", "K2", "K3")


def build_appendix_m() -> MultiheadAutomaton:
    """Three-head automaton accepting the unary-coded square stream
    b^2 c^2 b^4 c^4 ... b^n c^n # written as nested doubling runs; its
    language restricted to well-formed inputs is {(b^2 c^2)(b^4 c^4)...#}
    style words such as bbcc# and b^4 c^4 b^4 c^4 #."""
    rules = []

    def t(src, r1, r2, r3, dst):
        rules.append(MultiheadRule(src, (r1, r2, r3), dst))

    t("q0", "b", None, None, "q0")
    for x in ("b", "c"):
        t("q0", "c", None, x, "q1")
    for x in ("b", "c"):
        t("q1", None, "b", x, "q2")
    for x in ("b", "c"):
        t("q2", None, None, x, "q3")
    for x in ("b", "c"):
        t("q3", "c", "b", x, "q3")
    for x in ("b", "c"):
        t("q3", "b", "c", x, "q4")
    t("q3", "#", "c", "#", "q5")
    for x in ("b", "c"):
        t("q4", "b", "c", x, "q4")
    for x in ("b", "c"):
        t("q4", "c", None, x, "q1")
    t("q5", None, "c", None, "q5")
    t("q5", None, "#", None, "q6")
    return MultiheadAutomaton(
        heads=3,
        alphabet=("b", "c", "#"),
        states=frozenset(Q),
        start="q0",
        finals=frozenset({"q6"}),
        rules=tuple(rules),
    )


# Per-state head reads of the three-head automaton, in declaration order:
# (state, head-1 read, head-2 read, head-3 reads, successor).  Shared by the
# communicating-system builders, whose protocol states are these tuples
# flattened with "_" and lambda spelled "eps".
_STEP_TABLE = (
    ("q0", "b", None, ("eps",), "q0"),
    ("q0", "c", None, ("b", "c"), "q1"),
    ("q1", None, "b", ("b", "c"), "q2"),
    ("q2", None, None, ("b", "c"), "q3"),
    ("q3", "c", "b", ("b", "c"), "q3"),
    ("q3", "b", "c", ("b", "c"), "q4"),
    ("q3", "#", "c", ("#",), "q5"),
    ("q4", "b", "c", ("b", "c"), "q4"),
    ("q4", "c", None, ("b", "c"), "q1"),
    ("q5", None, "c", ("eps",), "q5"),
    ("q5", None, "#", ("eps",), "q6"),
)


def _s(x):
    return "eps" if x is None else x


def _pair_states():
    return [f"{q}_{_s(r1)}" for q, r1, _, _, _ in _STEP_TABLE]


def _triple_states():
    return [f"{q}_{_s(r1)}_{_s(r2)}" for q, r1, r2, _, _ in _STEP_TABLE]


def build_appendix_a_prime() -> PCFASystem:
    """Degree-3 communicating FA system simulating the three-head automaton:
    component i drives head i, and a seven-step query protocol broadcasts
    each simulated transition through components 2 and 3."""
    pairs = _pair_states()
    triples = _triple_states()

    r1 = []
    for (q, h1, _, _, _), pair in zip(_STEP_TABLE, pairs):
        r1.append(FARule(q, h1, pair))
    for pair in pairs:
        r1.append(FARule(pair, None, "s2"))
    r1.append(FARule("s2", None, "s3"))
    r1.append(FARule("s3", None, "K3"))
    c1 = FAComponent(
        states=frozenset(Q) | frozenset(K) | frozenset(pairs) | {"s2", "s3"},
        start="q0",
        finals=frozenset({"q6"}),
        rules=tuple(r1),
    )

    r2 = [FARule(q, None, "K1") for q in Q]
    for (q, h1, h2, _, _), pair, triple in zip(_STEP_TABLE, pairs, triples):
        r2.append(FARule(pair, h2, triple))
    for triple in triples:
        r2.append(FARule(triple, None, "s3"))
    r2.append(FARule("s3", None, "K3"))
    c2 = FAComponent(
        states=frozenset(Q) | frozenset(K) | frozenset(pairs) | frozenset(triples) | {"s3"},
        start="q0",
        finals=frozenset({"q6"}),
        rules=tuple(r2),
    )

    r3 = [FARule(q, None, "p1") for q in Q]
    r3.append(FARule("p1", None, "K2"))
    quads = []
    for (q, h1, h2, h3_reads, dst), triple in zip(_STEP_TABLE, _triple_states()):
        for h3 in h3_reads:
            quad = f"{triple}_{h3}"
            quads.append(quad)
            r3.append(FARule(triple, None if h3 == "eps" else h3, quad))
            r3.append(FARule(quad, None, dst))
    c3 = FAComponent(
        states=frozenset(Q) | frozenset(K) | frozenset(triples) | frozenset(quads) | {"p1"},
        start="q0",
        finals=frozenset({"q6"}),
        rules=tuple(r3),
    )

    return PCFASystem(
        alphabet=("b", "c", "#"),
        components=(c1, c2, c3),
        queries={"K1": 1, "K2": 2, "K3": 3},
    )


def build_example1() -> PCWKSystem:
    """Degree-3 Watson-Crick system accepting {a^(n*n+1) : n even, n > 1}:
    the upper strand is a run of the single symbol a and the lower strand
    carries a three-track square-verification pattern over {b, c, #}.

    Transcribed directly; it must coincide rule for rule with lifting the
    degree-3 communicating FA system over upper symbol a, and a golden test
    checks exactly that."""
    pairs = _pair_states()
    triples = _triple_states()
    rho = (("a", "b"), ("a", "c"), ("a", "#"))
    alphabet = ("a", "b", "c", "#")

    def wkr(src, read, dst):
        if read is None:
            return WKRule(src, (), (), dst)
        return WKRule(src, ("a",), (read,), dst)

    r1 = []
    for (q, h1, _, _, _), pair in zip(_STEP_TABLE, pairs):
        r1.append(wkr(q, h1, pair))
    for pair in pairs:
        r1.append(wkr(pair, None, "s2"))
    r1.append(wkr("s2", None, "s3"))
    r1.append(wkr("s3", None, "K3"))
    c1 = WKAutomaton(
        alphabet,
        rho,
        frozenset(Q) | frozenset(K) | frozenset(pairs) | {"s2", "s3"},
        "q0",
        frozenset({"q6"}),
        tuple(r1),
    )

    r2 = [wkr(q, None, "K1") for q in Q]
    for (q, h1, h2, _, _), pair, triple in zip(_STEP_TABLE, pairs, triples):
        r2.append(wkr(pair, h2, triple))
    for triple in triples:
        r2.append(wkr(triple, None, "s3"))
    r2.append(wkr("s3", None, "K3"))
    c2 = WKAutomaton(
        alphabet,
        rho,
        frozenset(Q) | frozenset(K) | frozenset(pairs) | frozenset(triples) | {"s3"},
        "q0",
        frozenset({"q6"}),
        tuple(r2),
    )

    r3 = [wkr(q, None, "p1") for q in Q]
    r3.append(wkr("p1", None, "K2"))
    quads = []
    for (q, h1, h2, h3_reads, dst), triple in zip(_STEP_TABLE, triples):
        for h3 in h3_reads:
            quad = f"{triple}_{h3}"
            quads.append(quad)
            r3.append(wkr(triple, None if h3 == "eps" else h3, quad))
            r3.append(wkr(quad, None, dst))
    c3 = WKAutomaton(
        alphabet,
        rho,
        frozenset(Q) | frozenset(K) | frozenset(triples) | frozenset(quads) | {"p1"},
        "q0",
        frozenset({"q6"}),
        tuple(r3),
    )

    return PCWKSystem(
        alphabet=alphabet,
        rho=rho,
        components=(c1, c2, c3),
        queries={"K1": 1, "K2": 2, "K3": 3},
    )


def build_example2() -> WKAutomaton:
    """Deterministic WK automaton for the block-repetition language: words
    over {a, b, #, *} that split into blocks ``# w * x`` with w, x over
    {a, b} such that two blocks share the w part but differ in the x part.

    The lower strand guesses the certificate: v_m1 below the opening # of
    the earlier block, v_m2 below the opening # of the later block (and
    every # after it), and v_m1 again below the very last character, which
    lets a state notice that the lower head has run off the end.  The _w/_x
    suffix on a state records whether the upper head is inside a w part or
    an x part, so only well-formed block words can reach a final state."""
    A = ("a", "b")

    def r(src, upper, lower, dst):
        return WKRule(src, () if upper is None else (upper,), () if lower is None else (lower,), dst)

    rules = [
        r("q0_s", "#", "#", "q0_w"),
        r("q0_s", "#", "v_m1", "p1"),
        r("q0_w", "a", "a", "q0_w"),
        r("q0_w", "b", "b", "q0_w"),
        r("q0_w", "*", "*", "q0_x"),
        r("q0_x", "a", "a", "q0_x"),
        r("q0_x", "b", "b", "q0_x"),
        r("q0_x", "#", "#", "q0_w"),
        r("q0_x", "#", "v_m1", "p1"),
        # lower head alone runs ahead to the later block's marked #
        r("p1", None, "a", "p1"),
        r("p1", None, "b", "p1"),
        r("p1", None, "*", "p1"),
        r("p1", None, "#", "p1"),
        r("p1", None, "v_m2", "p2"),
        # compare the two w parts symbol by symbol
        r("p2", "a", "a", "p2"),
        r("p2", "b", "b", "p2"),
        r("p2", "*", "*", "p3"),
        r("p2", "*", "v_m1", "e_star"),
        # compare the two x parts until a difference shows
        r("p3", "a", "a", "p3"),
        r("p3", "b", "b", "p3"),
        r("p3", "a", "b", "p4_x"),
        r("p3", "b", "a", "p4_x"),
        r("p3", "#", "a", "p4_w"),
        r("p3", "#", "b", "p4_w"),
        r("p3", "a", "v_m2", "p4_x"),
        r("p3", "b", "v_m2", "p4_x"),
        r("p3", "a", "v_m1", "e_a"),
        r("p3", "b", "v_m1", "e_b"),
        r("p3", "#", "v_m1", "p_done_w"),
    ]
    # difference established: both heads drain the rest of the word
    for tail in ("a", "b", "*", "#", "v_m2"):
        rules.append(r("p4_w", "a", tail, "p4_w"))
        rules.append(r("p4_w", "b", tail, "p4_w"))
        rules.append(r("p4_w", "*", tail, "p4_x"))
    rules.append(r("p4_w", "a", "v_m1", "p_done_w"))
    rules.append(r("p4_w", "b", "v_m1", "p_done_w"))
    rules.append(r("p4_w", "*", "v_m1", "p_done_x"))
    for tail in ("a", "b", "*", "#", "v_m2"):
        rules.append(r("p4_x", "a", tail, "p4_x"))
        rules.append(r("p4_x", "b", tail, "p4_x"))
        rules.append(r("p4_x", "#", tail, "p4_w"))
    rules.append(r("p4_x", "a", "v_m1", "p_done_x"))
    rules.append(r("p4_x", "b", "v_m1", "p_done_x"))
    rules.append(r("p4_x", "#", "v_m1", "p_done_w"))
    # the later block ended at the final character with its x part masked:
    # e_star saw x empty there, e_a/e_b saw the earlier x continue with a/b
    rules.append(r("e_star", "a", None, "p_done_x"))
    rules.append(r("e_star", "b", None, "p_done_x"))
    for sigma, e in (("a", "e_a"), ("b", "e_b")):
        rules.append(r(e, "a", None, "p_done_x"))
        rules.append(r(e, "b", None, "p_done_x"))
        rules.append(r(e, "#", None, f"g_{sigma}_#_w"))
    # g states replay the rest of the word on the upper head and remember
    # the last character; final only when it is a letter different from the
    # earlier x part's last letter sigma
    for sigma in A:
        for tau in ("a", "b", "#"):
            src = f"g_{sigma}_{tau}_w"
            rules.append(r(src, "a", None, f"g_{sigma}_a_w"))
            rules.append(r(src, "b", None, f"g_{sigma}_b_w"))
            rules.append(r(src, "*", None, f"g_{sigma}_*_x"))
        for tau in ("a", "b", "*"):
            src = f"g_{sigma}_{tau}_x"
            rules.append(r(src, "a", None, f"g_{sigma}_a_x"))
            rules.append(r(src, "b", None, f"g_{sigma}_b_x"))
            rules.append(r(src, "#", None, f"g_{sigma}_#_w"))
    rules.append(r("p_done_w", "a", None, "p_done_w"))
    rules.append(r("p_done_w", "b", None, "p_done_w"))
    rules.append(r("p_done_w", "*", None, "p_done_x"))
    rules.append(r("p_done_x", "a", None, "p_done_x"))
    rules.append(r("p_done_x", "b", None, "p_done_x"))
    rules.append(r("p_done_x", "#", None, "p_done_w"))

    states = {rule.src for rule in rules} | {rule.dst for rule in rules}
    return WKAutomaton(
        alphabet=("a", "b", "v_m1", "v_m2", "#", "*"),
        rho=(
            ("a", "a"),
            ("b", "b"),
            ("*", "*"),
            ("#", "#"),
            ("#", "v_m1"),
            ("#", "v_m2"),
            ("a", "v_m1"),
            ("b", "v_m1"),
            ("*", "v_m1"),
        ),
        states=frozenset(states),
        start="q0_s",
        finals=frozenset({"p_done_x", "g_a_b_x", "g_b_a_x"}),
        rules=tuple(rules),
    )


def build_balanced_pair() -> PCWKSystem:
    """Hand-built degree-2 system with an injective (identity) relation
    accepting {a^n b^n $ : n >= 0}; both components are syntactically
    deterministic with 1-limited rules.

    Component 1 does the real work through encoded intermediate states
    e1..e9, one per control rule; component 2 queries component 1 every
    other step and replays the read that the received encoded state names,
    so the two components stay head-synchronous and genuinely exercise
    communication.
    """
    control = (
        ("q0", "a", None, "q0"),
        ("q0", "b", None, "t1"),
        ("q0", "$", None, "u0"),
        ("t1", None, "a", "q1"),
        ("q1", "b", None, "t1"),
        ("q1", "$", None, "u1"),
        ("u0", None, "$", "f"),
        ("u1", None, "b", "u1"),
        ("u1", None, "$", "f"),
    )
    r1 = []
    r2 = [WKRule(q, (), (), "K1") for q in ("q0", "t1", "q1", "u0", "u1")]
    for k, (src, up, low, dst) in enumerate(control, start=1):
        e = f"e{k}"
        uw = () if up is None else (up,)
        lw = () if low is None else (low,)
        r1.append(WKRule(src, uw, lw, e))
        r1.append(WKRule(e, (), (), dst))
        r2.append(WKRule(e, uw, lw, "K1"))

    alphabet = ("a", "b", "$")
    rho = (("a", "a"), ("b", "b"), ("$", "$"))
    control_states = {"q0", "t1", "q1", "u0", "u1", "f"}
    encoded = {f"e{k}" for k in range(1, 10)}
    c1 = WKAutomaton(
        alphabet,
        rho,
        frozenset(control_states | encoded),
        "q0",
        frozenset({"f"}),
        tuple(r1),
    )
    c2 = WKAutomaton(
        alphabet,
        rho,
        frozenset(control_states | encoded | {"K1"}),
        "q0",
        frozenset({"f"}),
        tuple(r2),
    )
    return PCWKSystem(alphabet=alphabet, rho=rho, components=(c1, c2), queries={"K1": 1})


FIXTURES = {
    "example1": ("pcwk", build_example1),
    "example2": ("wk", build_example2),
    "appendix-m": ("mhdfa", build_appendix_m),
    "appendix-aprime": ("pcfa", build_appendix_a_prime),
    "balanced-pair": ("pcwk", build_balanced_pair),
}

DATA_FILES = {
    "example1": "example1.pcwk",
    "example2": "example2.wk",
    "appendix-m": "appendix_m.mhdfa",
    "appendix-aprime": "appendix_aprime.pcfa",
    "balanced-pair": "balanced_pair.pcwk",
}


def document(name: str) -> MachineDocument:
    kind, builder = FIXTURES[name]
    return MachineDocument(kind=kind, name=name.replace("-", "_"), payload=builder())


def data_text(name: str) -> str:
    """Checked-in canonical serialization of the named fixture."""
    return (
        resources.files("wkpc").joinpath("data", DATA_FILES[name]).read_text(encoding="utf-8")
    )
