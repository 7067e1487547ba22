import time

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from signless_ktrees.counterexample import (
    analytic_supremum,
    equality_case,
    hand_witness,
    search_max_violation,
    violation,
    violation_factored,
)
from signless_ktrees.errors import ParameterError

unit = st.floats(min_value=1e-9, max_value=1.0, allow_nan=False)


def test_hand_witness():
    start = time.perf_counter()
    w = hand_witness()
    assert abs(w.violation - 0.8) < 1e-12
    assert abs(violation([0.9], [0.1]) - 0.8) < 1e-12
    assert time.perf_counter() - start < 1.0


def test_equality_case_contradicts_clause():
    case = equality_case(0.5)
    assert case["equality"] and not case["all_entries_one"]
    assert case["contradicts_equality_clause"]
    assert violation([1.0, 1.0], [1.0, 1.0]) == 0.0


@settings(max_examples=300)
@given(st.lists(st.tuples(unit, unit), min_size=1, max_size=6))
def test_factored_identity(pairs):
    a = [p[0] for p in pairs]
    b = [p[1] for p in pairs]
    assert abs(violation(a, b) - violation_factored(a, b)) < 1e-12


@settings(max_examples=300)
@given(st.lists(st.tuples(unit, unit), min_size=1, max_size=6))
def test_positive_needs_some_b_below_a(pairs):
    a = [p[0] for p in pairs]
    b = [p[1] for p in pairs]
    if violation(a, b) > 0:
        assert any(y < x for x, y in pairs)
    assert violation(a, b) < analytic_supremum(len(pairs))


def test_domain_errors():
    for a, b in (([0.0], [0.5]), ([1.2], [0.5]), ([0.5], [0.5, 0.5]), ([], []), ([float("nan")], [0.5])):
        with pytest.raises(ParameterError):
            violation(a, b)


def test_search():
    one = search_max_violation(1, 10_000, seed=42)
    assert one.violation >= 0.8
    three = search_max_violation(3, 10_000, seed=42)
    assert abs(three.violation - 3 * one.violation) < 1e-12
    assert all(0 < x <= 1 for x in three.a + three.b)
    assert search_max_violation(1, 10_000, seed=42) == one
    # a single unlucky draw still reports at least the hand witness
    assert search_max_violation(2, 1, seed=0).violation >= 1.6 - 1e-12
    with pytest.raises(ParameterError):
        search_max_violation(0, 10)
