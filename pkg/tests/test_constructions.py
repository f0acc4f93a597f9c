import itertools

import pytest

from wkpc import (
    ConstructionError,
    FAComponent,
    FARule,
    PCFASystem,
    PCWKSystem,
    WKAutomaton,
    WKRule,
    equivalent_up_to,
    lift_pcfa,
    multihead_is_deterministic,
    normalize_one_limited,
    pcfa_accepts,
    pcwk_accepts,
    product_multihead,
    validate,
)


def system_of(rules, states, alphabet=("a", "b", "c"), rho=(("a", "a"), ("b", "b"), ("c", "c")), finals=("p",)):
    comp = WKAutomaton(
        alphabet=alphabet,
        rho=rho,
        states=frozenset(states),
        start="q",
        finals=frozenset(finals),
        rules=tuple(rules),
    )
    return PCWKSystem(alphabet=alphabet, rho=rho, components=(comp,), queries={})


# --- normalization -----------------------------------------------------------


def test_normalize_splits_into_single_symbol_steps():
    s = system_of(
        [WKRule("q", ("a", "b"), ("c",), "p"), WKRule("q", ("a",), (), "p")],
        states=("q", "p"),
    )
    out, report = normalize_one_limited(s)
    assert report.m == 3
    assert report.rules_before == 2
    assert report.rules_after == 2 * (3 + 1)
    assert report.fresh_states == 2 * 3
    assert not report.identity
    comp = out.components[0]
    # lower-symbol steps come first, then upper, then lambda/lambda padding
    assert comp.rules[0:4] == (
        WKRule("q", (), ("c",), "r__1__1"),
        WKRule("r__1__1", ("a",), (), "r__1__2"),
        WKRule("r__1__2", ("b",), (), "r__1__3"),
        WKRule("r__1__3", (), (), "p"),
    )
    assert comp.rules[4:8] == (
        WKRule("q", ("a",), (), "r__2__1"),
        WKRule("r__2__1", (), (), "r__2__2"),
        WKRule("r__2__2", (), (), "r__2__3"),
        WKRule("r__2__3", (), (), "p"),
    )
    assert validate(out) == []
    assert all(r.size() <= 1 for c in out.components for r in c.rules)


def test_normalize_identity_when_already_one_limited():
    s = system_of([WKRule("q", ("a",), (), "p")], states=("q", "p"))
    out, report = normalize_one_limited(s)
    assert out is s
    assert report.identity
    assert report.m == 1


def test_normalize_grows_separator_on_collision():
    s = system_of(
        [WKRule("q", ("a", "b"), (), "r__1__1"), WKRule("r__1__1", (), (), "p")],
        states=("q", "p", "r__1__1"),
    )
    out, _ = normalize_one_limited(s)
    assert validate(out) == []
    fresh = {st for st in out.components[0].states} - set(s.components[0].states)
    assert fresh and all(st.startswith("r___") for st in fresh)


def test_normalize_labels_are_global_across_components():
    comp = lambda: WKAutomaton(
        alphabet=("a",),
        rho=(("a", "a"),),
        states=frozenset({"q", "p"}),
        start="q",
        finals=frozenset({"p"}),
        rules=(WKRule("q", ("a", "a"), (), "p"),),
    )
    s = PCWKSystem(("a",), (("a", "a"),), (comp(), comp()), {})
    out, _ = normalize_one_limited(s)
    first = {r.dst for r in out.components[0].rules}
    second = {r.dst for r in out.components[1].rules}
    assert "r__1__1" in first and "r__2__1" in second


def test_normalize_preserves_language():
    s = system_of(
        [
            WKRule("q", ("a", "a"), ("a",), "q"),
            WKRule("q", (), ("a",), "p"),
        ],
        states=("q", "p"),
        alphabet=("a",),
        rho=(("a", "a"),),
    )
    out, _ = normalize_one_limited(s)
    report = equivalent_up_to(s, out, ("a",), 9)
    assert report.equal, report.counterexample


# --- product construction ----------------------------------------------------


def degree_one_identity():
    return system_of(
        [
            WKRule("q", ("a",), (), "m"),
            WKRule("m", (), ("a",), "q"),
            WKRule("q", ("b",), (), "w"),
            WKRule("w", (), ("b",), "p"),
        ],
        states=("q", "m", "w", "p"),
        alphabet=("a", "b"),
        rho=(("a", "a"), ("b", "b")),
    )


def test_product_two_heads_for_degree_one():
    s = degree_one_identity()
    mh = product_multihead(s)
    assert mh.heads == 2
    ok, _ = multihead_is_deterministic(mh)
    assert ok
    report = equivalent_up_to(s, mh, ("a", "b"), 8)
    assert report.equal, report.counterexample


def test_product_refuses_non_injective_rho():
    s = system_of(
        [WKRule("q", ("a",), (), "p")],
        states=("q", "p"),
        rho=(("a", "a"), ("b", "a"), ("c", "c")),
    )
    with pytest.raises(ConstructionError, match="injective"):
        product_multihead(s)


def test_product_refuses_multi_symbol_rules():
    s = system_of([WKRule("q", ("a", "b"), (), "p")], states=("q", "p"))
    with pytest.raises(ConstructionError, match="1-limited"):
        product_multihead(s)


def test_product_drops_rules_without_preimage():
    # c never appears as a lower complement, so a (λ/c) read cannot fire
    s = system_of(
        [WKRule("q", (), ("c",), "p"), WKRule("q", ("a",), (), "p")],
        states=("q", "p"),
        rho=(("a", "a"), ("b", "b")),
        alphabet=("a", "b", "c"),
    )
    mh = product_multihead(s)
    assert len(mh.rules) == 1
    assert mh.rules[0].reads == ("a", None)


def test_product_resolves_queries_with_lambda_rules():
    mk = lambda rules, states: WKAutomaton(
        ("a",), (("a", "a"),), frozenset(states), "s", frozenset({"f"}), tuple(rules)
    )
    c1 = mk([WKRule("s", ("a",), (), "t"), WKRule("t", (), ("a",), "f")], {"s", "t", "f"})
    c2 = mk([WKRule("s", ("a",), (), "u"), WKRule("u", (), ("a",), "K1")], {"s", "u", "K1", "f"})
    s = PCWKSystem(("a",), (("a", "a"),), (c1, c2), {"K1": 1})
    assert bool(pcwk_accepts(s, ("a",)))  # the asset is not vacuous
    mh = product_multihead(s)
    lam = [r for r in mh.rules if all(x is None for x in r.reads)]
    assert len(lam) == 1
    assert lam[0].src == "f.K1" and lam[0].dst == "f.f"
    report = equivalent_up_to(s, mh, ("a",), 6)
    assert report.equal, report.counterexample


# --- lift --------------------------------------------------------------------


def small_pcfa():
    comp = FAComponent(
        frozenset({"s", "t", "f"}),
        "s",
        frozenset({"f"}),
        (FARule("s", "x", "t"), FARule("t", None, "f"), FARule("f", "y", "f")),
    )
    return PCFASystem(("x", "y"), (comp,), {})


def test_lift_shapes():
    s = small_pcfa()
    out = lift_pcfa(s, "a")
    assert out.alphabet == ("a", "x", "y")
    assert out.rho == (("a", "x"), ("a", "y"))
    comp = out.components[0]
    assert comp.rules[0] == WKRule("s", ("a",), ("x",), "t")
    assert comp.rules[1] == WKRule("t", (), (), "f")
    assert validate(out) == []


def test_lift_refuses_clashing_symbol():
    with pytest.raises(ConstructionError, match="already"):
        lift_pcfa(small_pcfa(), "x")


def test_lift_language_law():
    """Lifted system accepts a^m iff the original accepts some word of
    length m."""
    s = small_pcfa()
    out = lift_pcfa(s, "a")
    lengths_accepted = {
        m
        for m in range(8)
        if any(pcfa_accepts(s, w) for w in itertools.product(s.alphabet, repeat=m))
    }
    for m in range(8):
        got = bool(pcwk_accepts(out, ("a",) * m))
        assert got == (m in lengths_accepted), m
