from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hcprim.labels import (
    ActionDescriptor,
    ClassicalFactor,
    DLabel,
    LabelError,
    a_value,
    apply_auto,
    bipartitions,
    check_entry,
    conjugate,
    d_labels,
    dim_hyperoctahedral,
    dim_sym,
    entry_from_json,
    entry_to_json,
    enumerate_labels,
    flip,
    from_exponential,
    graph_on,
    iter_label_tuples,
    partitions,
    to_exponential,
)


@pytest.mark.parametrize("n", range(1, 9))
def test_symmetric_group_dimensions(n: int) -> None:
    ps = partitions(n)
    assert sum(dim_sym(p) ** 2 for p in ps) == math.factorial(n)
    assert all(conjugate(conjugate(p)) == p for p in ps)
    assert all(dim_sym(conjugate(p)) == dim_sym(p) for p in ps)


@pytest.mark.parametrize("n", range(1, 6))
def test_hyperoctahedral_dimensions(n: int) -> None:
    bps = bipartitions(n)
    assert sum(dim_hyperoctahedral(bp) ** 2 for bp in bps) == 2**n * math.factorial(n)


@pytest.mark.parametrize("n", range(2, 7))
def test_type_d_labels_sum_of_squares(n: int) -> None:
    # a degenerate pair splits into two characters of half the dimension
    total = 0
    for lab in d_labels(n):
        d = dim_hyperoctahedral((lab.left, lab.right))
        total += (d // 2) ** 2 if lab.degenerate else d**2
    assert total == 2 ** (n - 1) * math.factorial(n)


@pytest.mark.parametrize("n", range(2, 7))
def test_a_value_range_type_d(n: int) -> None:
    values = [a_value(lab, "D") for lab in d_labels(n)]
    assert min(values) == 0
    assert max(values) == n * (n - 1)


def test_toggled_is_involution_and_fixes_nondegenerate() -> None:
    for lab in d_labels(4):
        assert lab.toggled().toggled() == lab
        assert (lab.toggled() == lab) == (not lab.degenerate)
    with pytest.raises(LabelError):
        DLabel((1,), (2,), True)


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=9))
def test_exponential_round_trip(n: int) -> None:
    for p in partitions(n):
        assert from_exponential(to_exponential(p)) == p


@pytest.mark.parametrize(
    "factor",
    [
        ClassicalFactor("GL", 3),
        ClassicalFactor("GU", 2, 2),
        ClassicalFactor("Sp", 4),
        ClassicalFactor("SO", 5),
        ClassicalFactor("SO+", 8),
        ClassicalFactor("SO-", 6),
    ],
)
def test_json_round_trip(factor: ClassicalFactor) -> None:
    for entry in enumerate_labels(factor):
        assert entry_from_json(factor, entry_to_json(entry)) == entry
        check_entry(factor, entry)


def test_check_entry_rejects_foreign_labels() -> None:
    with pytest.raises(LabelError):
        check_entry(ClassicalFactor("GL", 3), (2, 1, 1))
    with pytest.raises(LabelError):
        ClassicalFactor("XX", 2)


def test_action_composition_matches_sequential_application() -> None:
    factors = [ClassicalFactor("SO+", 4), ClassicalFactor("SO+", 4), ClassicalFactor("GL", 1)]
    actions = [
        ActionDescriptor.identity(3),
        flip(3, 0, 1),
        graph_on(3, [0]),
        graph_on(3, [0, 1]),
        ActionDescriptor((1, 0, 2), ("g", "id", "id")),
    ]
    for label in iter_label_tuples(factors):
        for s in actions:
            for t in actions:
                direct = apply_auto(apply_auto(label, s, factors), t, factors)
                assert apply_auto(label, s.then(t), factors) == direct


def test_action_validation() -> None:
    with pytest.raises(LabelError):
        ActionDescriptor((0, 0), ("id", "id"))
    with pytest.raises(LabelError):
        ActionDescriptor((0, 1), ("id", "x"))
    factors = [ClassicalFactor("GL", 1), ClassicalFactor("GL", 2)]
    with pytest.raises(LabelError):
        apply_auto(((1,), (2,)), flip(2, 0, 1), factors)
