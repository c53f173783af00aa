"""Empirical and support models: marginals, no-signalling, support
extraction, and the one-hot / parity generators.

Core claims:
    - marginalization is the exact fiber sum and is transitive
    - the PR box with uniform halves is no-signalling; point-mass mismatch
      across an overlap is reported as one violation for that pair
    - the Hardy support has exactly 13 sections; PR has 2 per context
    - one-hot supports have one section per context member; parity supports
      hold the stated parity
    - every bundled support model is consistent on all overlaps
"""

import random
from fractions import Fraction

import pytest

from contextuality import (
    Section,
    SignallingError,
    build_scenario,
    check_no_signalling,
    empirical_model,
    enumerate_sections,
    ks_support,
    marginalize,
    parity_support,
    support_model,
    support_of,
    support_violations,
)

import helpers
from helpers import section

HARDY_TABLES = {  # signalling-free fixture whose support is the Hardy table
    ("a", "b"): {"0,0": "1/10", "0,1": "1/10", "1,0": "1/10", "1,1": "7/10"},
    ("a", "b'"): {"0,1": "1/5", "1,0": "3/5", "1,1": "1/5"},
    ("a'", "b"): {"0,1": "3/5", "1,0": "1/5", "1,1": "1/5"},
    ("a'", "b'"): {"0,0": "1/5", "0,1": "2/5", "1,0": "2/5"},
}


def bell_scenario():
    return build_scenario(
        ["a", "a'", "b", "b'"],
        "01",
        [("a", "b"), ("a", "b'"), ("a'", "b"), ("a'", "b'")],
    )


def hardy_distribution():
    scen = bell_scenario()
    tables = []
    for ctx in scen.contexts:
        raw = HARDY_TABLES[ctx.members]
        tables.append({section(ctx.members, k): Fraction(v) for k, v in raw.items()})
    return empirical_model(scen, tables)


def test_marginalize_uniform_and_point_mass():
    scen = bell_scenario()
    pairs = enumerate_sections(scen, ("a", "b"))
    uniform = {s: Fraction(1, 4) for s in pairs}
    assert marginalize(uniform, ("a",)) == {
        section(("a",), "0"): Fraction(1, 2),
        section(("a",), "1"): Fraction(1, 2),
    }
    point = {s: Fraction(1 if s.values == ("0", "1") else 0) for s in pairs}
    marginal = marginalize(point, ("b",))
    assert marginal[section(("b",), "1")] == 1
    assert marginal[section(("b",), "0")] == 0


def test_marginalize_pr_row_by_hand_sum():
    # (1/2, 0, 0, 1/2) on (a, b) restricted to a: cells 00+01 and 10+11.
    scen = bell_scenario()
    pairs = enumerate_sections(scen, ("a", "b"))
    row = dict(zip(pairs, [Fraction(1, 2), Fraction(0), Fraction(0), Fraction(1, 2)]))
    assert marginalize(row, ("a",)) == {
        section(("a",), "0"): Fraction(1, 2),
        section(("a",), "1"): Fraction(1, 2),
    }


def test_marginalize_requires_subset():
    scen = bell_scenario()
    table = {s: Fraction(1, 4) for s in enumerate_sections(scen, ("a", "b"))}
    with pytest.raises(ValueError, match="not a subset"):
        marginalize(table, ("a'",))


def test_marginalization_transitive():
    rng = random.Random(110)
    for _ in range(200):
        scen = helpers.random_scenario(rng)
        full = scen.measurements
        weights = [rng.randint(0, 5) for _ in range(len(scen.outcomes) ** len(full))]
        total = sum(weights) or 1
        if sum(weights) == 0:
            weights[0] = total
        table = {
            s: Fraction(w, total)
            for s, w in zip(enumerate_sections(scen, full), weights)
        }
        mid = tuple(rng.sample(full, rng.randint(0, len(full))))
        small = tuple(rng.sample(mid, rng.randint(0, len(mid)))) if mid else ()
        via = marginalize(marginalize(table, mid), small)
        assert via == marginalize(table, small)
        # the marginal's support is the set of restrictions of the support
        from contextuality import restrict_section

        reduced = marginalize(table, mid)
        expected = {restrict_section(s, mid) for s, p in table.items() if p}
        assert {s for s, p in reduced.items() if p} == expected


def test_empirical_model_validation():
    scen = bell_scenario()
    half = {section(("a", "b"), "0,0"): Fraction(1, 2)}
    with pytest.raises(ValueError, match="sum to 1/2"):
        empirical_model(scen, [half] * 4)
    bad_key = {Section(("a",), ("0",)): Fraction(1)}
    with pytest.raises(ValueError, match="not a section"):
        empirical_model(scen, [bad_key] * 4)


def test_pr_box_is_no_signalling(corpus):
    model = corpus["prbox"].empirical
    assert check_no_signalling(model) == []


def test_point_mass_mismatch_gives_one_violation():
    scen = build_scenario(["a", "b", "b'"], "01", [("a", "b"), ("a", "b'")])
    tables = [
        {section(("a", "b"), "0,0"): Fraction(1)},
        {section(("a", "b'"), "1,0"): Fraction(1)},
    ]
    model = empirical_model(scen, tables)
    violations = check_no_signalling(model)
    assert len(violations) == 1
    violation = violations[0]
    assert (violation.first, violation.second) == (0, 1)
    assert violation.section == section(("a",), "0")
    assert (violation.first_marginal, violation.second_marginal) == (1, 0)
    with pytest.raises(SignallingError):
        support_of(model)


def test_single_context_never_signals():
    scen = build_scenario("AB", "01", [("A", "B")])
    table = {s: Fraction(1, 4) for s in enumerate_sections(scen, ("A", "B"))}
    assert check_no_signalling(empirical_model(scen, [table])) == []


def test_hardy_support_has_13_sections(corpus):
    derived = support_of(hardy_distribution())
    assert sum(len(s) for s in derived.supports) == 13
    assert derived.supports == corpus["hardy"].support_model().supports


def test_pr_support_two_sections_per_context(corpus):
    derived = corpus["prbox"].support_model()
    assert [len(s) for s in derived.supports] == [2, 2, 2, 2]
    assert sum(len(s) for s in derived.supports) == 8


def test_deterministic_model_gives_singleton_supports():
    from contextuality import restrict_section

    scen = build_scenario("AB", "01", [("A",), ("B",), ("A", "B")])
    g = Section(("A", "B"), ("1", "0"))
    tables = []
    for ctx in scen.contexts:
        tables.append(
            {s: Fraction(1 if s == restrict_section(g, ctx.members) else 0)
             for s in enumerate_sections(scen, ctx.members)}
        )
    model = empirical_model(scen, tables)
    derived = support_of(model)
    assert all(len(s) == 1 for s in derived.supports)


def test_ks_support_shapes(corpus):
    triangle = ks_support(corpus["triangle"].scenario)
    for index in range(3):
        got = {s.outcome_string() for s in triangle.supports[index]}
        assert got == {"0,1", "1,0"}
    assert triangle.supports == corpus["triangle"].support_model().supports

    ks18 = ks_support(corpus["ks18"].scenario)
    for index in range(9):
        got = {s.outcome_string() for s in ks18.supports[index]}
        assert got == {"1,0,0,0", "0,1,0,0", "0,0,1,0", "0,0,0,1"}
    assert ks18.supports == corpus["ks18"].support_model().supports

    single = build_scenario("A", "01", [("A",)])
    assert ks_support(single).supports == (frozenset({Section(("A",), ("1",))}),)


def test_ks_support_sizes_match_context_sizes():
    rng = random.Random(111)
    for _ in range(100):
        scen = helpers.random_scenario(rng, antichain=True)
        model = ks_support(scen)
        for ctx in scen.contexts:
            support = model.supports[ctx.index]
            assert len(support) == len(ctx.members)
            assert all(s.values.count("1") == 1 for s in support)


def test_ks_support_requires_binary_outcomes():
    scen = build_scenario("AB", ["x", "y", "z"], [("A", "B")])
    with pytest.raises(ValueError, match='"0" and "1"'):
        ks_support(scen)
    with pytest.raises(ValueError, match='"0" and "1"'):
        parity_support(scen, [0])


def test_parity_support_small_cases():
    two = build_scenario("AB", "01", [("A", "B")])
    even = parity_support(two, [0])
    assert {s.outcome_string() for s in even.supports[0]} == {"0,0", "1,1"}
    one = build_scenario("A", "01", [("A",)])
    odd = parity_support(one, [1])
    assert {s.outcome_string() for s in odd.supports[0]} == {"1"}


def test_peres_mermin_is_rows_odd_columns_even(corpus):
    scen = corpus["peres-mermin"].scenario
    generated = parity_support(scen, [1, 1, 1, 0, 0, 0])
    assert generated.supports == corpus["peres-mermin"].support_model().supports
    assert all(len(s) == 4 for s in generated.supports)


def test_ghz_support_is_a_parity_table(corpus):
    scen = corpus["ghz"].scenario
    generated = parity_support(scen, [0, 1, 1, 1])
    assert generated.supports == corpus["ghz"].support_model().supports


def test_corpus_supports_are_overlap_consistent(corpus_supports):
    for name, model in corpus_supports.items():
        assert support_violations(model) == [], name


def test_support_of_satisfies_restriction_consistency():
    rng = random.Random(112)
    for _ in range(100):
        scen = helpers.random_scenario(rng)
        model = helpers.random_image_support(rng, scen)
        assert support_violations(model) == []


def test_inconsistent_supports_are_reported():
    scen = build_scenario("ABC", "01", [("A", "B"), ("B", "C")])
    model = support_model(
        scen,
        [
            {section(("A", "B"), "0,0")},
            {section(("B", "C"), "1,0")},
        ],
    )
    violations = support_violations(model)
    assert violations
    assert {v.present_in for v in violations} == {0, 1}


def test_support_must_be_nonempty():
    scen = build_scenario("AB", "01", [("A", "B")])
    with pytest.raises(ValueError, match="nonempty"):
        support_model(scen, [set()])
