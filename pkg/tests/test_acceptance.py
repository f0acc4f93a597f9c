"""Acceptance gate: one test (and one printed pass/fail line) per criterion.

Run with ``pytest -v`` to see the per-criterion verdicts as test results,
or add ``-s`` to see the printed summary lines with their timings.
"""

import itertools
import random
import time

from wkpc import (
    classify_system,
    classify_wk,
    complement_strands,
    component_move_counts,
    enumerate_accepted,
    equivalent_up_to,
    lift_pcfa,
    multihead_accepts,
    multihead_is_deterministic,
    normalize_one_limited,
    pcwk_accepts,
    product_multihead,
    reachable_fixed_strand,
    serialize_machine,
    wk_accepts,
    wrap_wk,
)
from wkpc.cli import main as cli_main
from wkpc.fixtures import (
    FIXTURES,
    build_appendix_a_prime,
    build_appendix_m,
    build_balanced_pair,
    build_example1,
    build_example2,
    document,
)
from wkpc.oracle import make_fixed_checker, semantic_example2_member
from wkpc.textio import MachineDocument, dump_machine, parse_machine

from test_textio import random_machine


def _report(num: int, ok: bool, detail: str = "") -> None:
    line = f"criterion {num:02d}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f" - {detail}"
    print(line)
    assert ok, line


def test_criterion_01_uniletter_system_membership():
    s = build_example1()
    t0 = time.monotonic()
    five = pcwk_accepts(s, ("a",) * 5)
    t_five = time.monotonic() - t0
    t0 = time.monotonic()
    seventeen = pcwk_accepts(s, ("a",) * 17)
    t_seventeen = time.monotonic() - t0
    rejected = all(not pcwk_accepts(s, ("a",) * k) for k in range(17) if k != 5)
    ok = (
        five.accepted
        and five.witness_lower == tuple("bbcc#")
        and t_five < 1.0
        and seventeen.accepted
        and seventeen.witness_lower == tuple("bbbbccccbbbbcccc#")
        and t_seventeen < 120.0
        and rejected
    )
    _report(1, ok, f"a^5 in {t_five:.3f}s, a^17 in {t_seventeen:.1f}s")


def test_criterion_02_three_head_machine_and_its_simulation_agree():
    t0 = time.monotonic()
    m = build_appendix_m()
    ap = build_appendix_a_prime()
    expected = {tuple("bbcc#")}
    got_m = set(enumerate_accepted(m, ("b", "c", "#"), 12))
    got_ap = set(enumerate_accepted(ap, ("b", "c", "#"), 12))
    t1 = time.monotonic()
    long_word = tuple("bbbbccccbbbbcccc#")
    direct = multihead_accepts(m, long_word)
    t_direct = time.monotonic() - t1
    total = time.monotonic() - t0
    ok = (
        got_m == expected
        and got_ap == expected
        and direct.accepted
        and t_direct < 1.0
        and total < 60.0
    )
    _report(2, ok, f"both enumerations = {{bbcc#}}, total {total:.1f}s")


def test_criterion_03_lift_reproduces_uniletter_system_byte_for_byte():
    lifted = lift_pcfa(build_appendix_a_prime(), "a")
    got = serialize_machine(MachineDocument("pcwk", "example1", lifted))
    want = serialize_machine(document("example1"))
    _report(3, got == want, "serializations byte-identical")


def test_criterion_04_normalization_keeps_language_and_determinism():
    t0 = time.monotonic()
    s = build_example1()
    out, _ = normalize_one_limited(s)
    sizes_ok = all(r.size() <= 1 for c in out.components for r in c.rules)
    report = classify_system(out)
    eq = equivalent_up_to(s, out, ("a",), 10)
    total = time.monotonic() - t0
    ok = (
        sizes_ok
        and all(c.one_limited for c in report.per_component)
        and report.dpcwks
        and eq.equal
        and total < 60.0
    )
    _report(4, ok, f"equivalent up to 10 over {{a}}, {total:.1f}s")


def test_criterion_05_product_automaton_is_deterministic_and_equivalent():
    t0 = time.monotonic()
    s = build_balanced_pair()
    mh = product_multihead(s)
    det, witness = multihead_is_deterministic(mh)
    eq = equivalent_up_to(s, mh, ("a", "b", "$"), 8)
    total = time.monotonic() - t0
    ok = det and mh.deterministic_intent and eq.equal and total < 120.0
    _report(5, ok, f"{mh.heads} heads, equivalent up to 8, {total:.1f}s")


def test_criterion_06_classification_facts():
    ex1 = classify_system(build_example1())
    ex2 = classify_wk(build_example2())
    bal = classify_system(build_balanced_pair())
    det_m, _ = multihead_is_deterministic(build_appendix_m())
    facts = [
        all(c.dwk for c in ex1.per_component),
        ex1.dpcwks,
        not ex1.sdpcwks,
        ex2.dwk,
        not ex2.sdwk,
        bal.dpcwks,
        bal.sdpcwks,
        all(c.one_limited for c in bal.per_component),
        det_m,
    ]
    _report(6, all(facts), f"{sum(facts)}/{len(facts)} facts hold")


def test_criterion_07_block_language_machine_matches_semantic_oracle():
    t0 = time.monotonic()
    m = build_example2()
    alphabet = ("#", "*", "a", "b")
    words = 0
    mismatch = None
    for n in range(11):
        for w in itertools.product(alphabet, repeat=n):
            words += 1
            if bool(wk_accepts(m, w)) != semantic_example2_member(w):
                mismatch = w
                break
        if mismatch:
            break
    total = time.monotonic() - t0
    ok = mismatch is None and total < 600.0
    _report(7, ok, f"{words} words checked, {total:.1f}s, mismatch={mismatch}")


def _deterministic_systems():
    return [
        ("example1", build_example1()),
        ("example2", wrap_wk(build_example2())),
        ("balanced-pair", build_balanced_pair()),
    ]


def test_criterion_08_no_component_ever_has_a_choice():
    t0 = time.monotonic()
    violations = []
    configs = 0
    for name, s in _deterministic_systems():
        for n in range(7):
            for upper in itertools.product(s.alphabet, repeat=n):
                for lower in complement_strands(s.rho, upper, s.alphabet):
                    for cfg, _ in reachable_fixed_strand(s, upper, lower):
                        configs += 1
                        if max(component_move_counts(s, cfg, upper, lower)) > 1:
                            violations.append((name, upper, lower, cfg))
    total = time.monotonic() - t0
    _report(8, not violations, f"{configs} configurations checked, {total:.1f}s")


def test_criterion_09_search_engine_agrees_with_naive_strand_enumeration():
    t0 = time.monotonic()
    mismatches = []
    words = 0
    for name, s in _deterministic_systems():
        check = make_fixed_checker(s)
        for n in range(9):
            for upper in itertools.product(s.alphabet, repeat=n):
                words += 1
                lazy = bool(pcwk_accepts(s, upper))
                naive = any(
                    check(upper, lower)
                    for lower in complement_strands(s.rho, upper, s.alphabet)
                )
                if lazy != naive:
                    mismatches.append((name, upper))
    total = time.monotonic() - t0
    _report(9, not mismatches, f"{words} upper strands, {total:.1f}s")


def test_criterion_10_serialization_and_cli_round_trips(tmp_path, capsys):
    fixtures_ok = all(
        parse_machine(serialize_machine(document(name))).payload == document(name).payload
        for name in FIXTURES
    )
    rng = random.Random(987654321)
    fuzz_ok = True
    for _ in range(1000):
        doc = random_machine(rng)
        text = serialize_machine(doc)
        back = parse_machine(text)
        if back.payload != doc.payload or serialize_machine(back) != text:
            fuzz_ok = False
            break

    path = tmp_path / "example1.pcwk"
    dump_machine(document("example1"), path)
    codes = (
        cli_main(["run", str(path), "--input", "a^5"]),
        cli_main(["run", str(path), "--input", "a^4"]),
        cli_main(["run", str(tmp_path / "missing.pcwk"), "--input", "a"]),
        cli_main(["run", str(path), "--input", "a^17", "--limit", "10"]),
    )
    capsys.readouterr()
    cli_ok = codes == (0, 1, 2, 3)
    _report(
        10,
        fixtures_ok and fuzz_ok and cli_ok,
        f"fixtures + 1000 generated machines round-trip, exit codes {codes}",
    )
