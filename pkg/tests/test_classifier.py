from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hcprim.centralizers import (
    ClassDataError,
    class_from_json,
    component_group,
    enumerate_classes,
    factor_orbits,
    validate_class,
)
from hcprim.classifier import (
    CASES,
    DAGGER,
    EXCEPTIONAL_ROWS,
    IMPRIMITIVE,
    PRIMITIVE,
    Verdict,
    classify,
    classify_exceptional_table,
    enumerate_series,
    label_from_json,
    label_orbits,
    nu2,
    su_choose_lt_length,
    su_primitive,
)
from hcprim.labels import apply_auto, iter_label_tuples
from hcprim.suites import e6e7_suite, graph_automorphism_check


def lin(c: int) -> list:
    return [[c], [1]]


FIXTURES = {
    "su-2adic": {
        "family": "GU", "n": 6, "q": 3, "alpha": [1],
        "factors": [
            {"poly": [[1, 0], [1, 0]], "mult": 2},
            {"poly": [[2, 0], [1, 0]], "mult": 2},
            {"poly": [[1, 1], [1, 0]], "mult": 1},
            {"poly": [[2, 2], [1, 0]], "mult": 1},
        ],
    },
    "spin-odd-quadratic": {
        "family": "CSp", "m": 4, "q": 3, "alpha": [1],
        "factors": [
            {"poly": lin(1), "mult": 2},
            {"poly": lin(2), "mult": 2},
            {"poly": [[2], [1], [1]], "mult": 1},
            {"poly": [[2], [2], [1]], "mult": 1},
        ],
    },
    "spin-odd-linear": {
        "family": "CSp", "m": 3, "q": 5, "alpha": [1],
        "factors": [
            {"poly": lin(1), "mult": 2},
            {"poly": lin(2), "mult": 1},
            {"poly": lin(3), "mult": 1},
            {"poly": lin(4), "mult": 2},
        ],
    },
    "spin-even-c2": {
        "family": "CSO+", "m": 6, "q": 3, "alpha": [2],
        "factors": [
            {"poly": lin(1), "mult": 2},
            {"poly": lin(2), "mult": 2},
            {"poly": [[2], [1], [1]], "mult": 2},
            {"poly": [[2], [2], [1]], "mult": 2},
        ],
    },
    "spin-even-c4": {
        "family": "CSO+", "m": 5, "q": 5, "alpha": [1],
        "factors": [
            {"poly": lin(1), "mult": 4, "block_sign": "+"},
            {"poly": lin(2), "mult": 1},
            {"poly": lin(3), "mult": 1},
            {"poly": lin(4), "mult": 4, "block_sign": "+"},
        ],
    },
    "spin-even-klein": {
        "family": "CSO+", "m": 6, "q": 5, "alpha": [1],
        "factors": [
            {"poly": lin(1), "mult": 4, "block_sign": "+"},
            {"poly": lin(2), "mult": 2},
            {"poly": lin(3), "mult": 2},
            {"poly": lin(4), "mult": 4, "block_sign": "+"},
        ],
    },
    "square-roots-only": {
        "family": "CSO+", "m": 4, "q": 3, "alpha": [1],
        "factors": [
            {"poly": lin(1), "mult": 4, "block_sign": "+"},
            {"poly": lin(2), "mult": 4, "block_sign": "+"},
        ],
    },
}

# (fixture, label, expected case)
LABELLED = [
    ("su-2adic", [[2], [1, 1], [1]], "su-2adic-nonpositive"),
    ("spin-odd-quadratic", [[[1], []], [[], [1]], [1]], "spin-odd-stabilizer-trivial"),
    ("spin-odd-linear", [[[1], []], [1], [[], [1]]], "spin-odd-stabilizer-trivial"),
    ("spin-even-c2", [[2], [2], [1, 1]], "spin-even-c2-stabilizer-trivial"),
    ("spin-even-c2", [[1, 1], [2], [1, 1]], "spin-even-c2-stabilizer-trivial"),
    ("spin-even-c2", [[2], [2], [2]], "spin-even-c2-stabilizer-nontrivial"),
    ("spin-even-c4", [{"pair": [[], [1, 1]]}, [1], {"pair": [[], [2]]}], "spin-even-c4-moved"),
    ("spin-even-c4", [{"pair": [[], [2]]}, [1], {"pair": [[], [2]]}], "spin-even-c4-fixed"),
]

# verdict cases per orbit size over the whole series of each fixture
SERIES = {
    "su-2adic": {("su-2adic-positive", 1): 2, ("su-2adic-nonpositive", 2): 1},
    "spin-odd-quadratic": {("spin-odd-stabilizer-nontrivial", 1): 2, ("spin-odd-stabilizer-trivial", 2): 1},
    "spin-odd-linear": {("spin-odd-stabilizer-nontrivial", 1): 2, ("spin-odd-stabilizer-trivial", 2): 1},
    "spin-even-c2": {("spin-even-c2-stabilizer-nontrivial", 1): 4, ("spin-even-c2-stabilizer-trivial", 2): 2},
    "spin-even-c4": {("spin-even-c4-moved", 4): 3, ("spin-even-c4-moved", 2): 1, ("spin-even-c4-fixed", 1): 2},
    "spin-even-klein": {
        ("spin-even-klein-fixed", 1): 4,
        ("spin-even-klein-fixed", 2): 4,
        ("spin-even-klein-moved", 2): 2,
        ("spin-even-klein-moved", 4): 4,
    },
    "square-roots-only": {
        ("spin-even-all-self-dual", 1): 2,
        ("spin-even-all-self-dual", 2): 3,
        ("spin-even-all-self-dual", 4): 2,
    },
}

# small families that together with the fixtures realize every classical case
SCAN = [
    ("GL", 5, 4), ("GU", 5, 2), ("GU", 3, 3), ("SO", 3, 5), ("CSp", 5, 4), ("CSO+", 3, 4),
    ("CSO-", 3, 4), ("CSO+", 3, 6), ("CSO-", 2, 4), ("CSp", 4, 2),
]


def fixture(name: str):
    return class_from_json(FIXTURES[name])


@pytest.mark.parametrize("name,label,case", LABELLED)
def test_rare_case_fixtures(name: str, label: list, case: str) -> None:
    data = fixture(name)
    verdict = classify(data, label_from_json(data, label))
    assert verdict.case == case
    assert verdict.outcome == CASES[case]


@pytest.mark.parametrize("name", sorted(SERIES))
def test_fixture_series(name: str) -> None:
    got = Counter((e.verdict.case, e.orbit_size) for e in enumerate_series(fixture(name)))
    assert dict(got) == SERIES[name]


def test_minus_type_c2_shape_is_rejected() -> None:
    obj = dict(FIXTURES["spin-even-c2"], family="CSO-")
    with pytest.raises(ClassDataError) as info:
        validate_class(class_from_json(obj))
    assert info.value.rule == "global sign"


def test_every_classical_case_is_realized() -> None:
    seen: set[str] = set()
    for family, q, dim in SCAN:
        for data in enumerate_classes(family, q, dim):
            seen.update(e.verdict.case for e in enumerate_series(data))
    for name in FIXTURES:
        seen.update(e.verdict.case for e in enumerate_series(fixture(name)))
    classical = {c for c in CASES if not c.startswith("exceptional")}
    assert classical == seen


def test_every_exceptional_case_is_realized() -> None:
    from hcprim.classifier import _iter_exceptional_labels

    seen = set()
    for row in EXCEPTIONAL_ROWS:
        for lab in _iter_exceptional_labels(row.components):
            seen.add(classify_exceptional_table(row, lab).case)
    assert seen == {c for c in CASES if c.startswith("exceptional")}


@pytest.mark.parametrize("family,q,dim", SCAN)
def test_orbit_stabilizer_and_witness_bounds(family: str, q: int, dim: int) -> None:
    for data in enumerate_classes(family, q, dim):
        for e in enumerate_series(data):
            v = e.verdict
            assert v.A_order % v.A_lambda_order == 0
            assert e.orbit_size * v.A_lambda_order == v.A_order
            if v.outcome == IMPRIMITIVE:
                assert v.witness and v.witness["orbit"]
                if "A_L_order" in v.witness:
                    assert v.A_order % v.witness["A_L_order"] == 0


def _random_pairs(family: str, q: int, dim: int, count: int, seed: int):
    rng = random.Random(seed)
    classes = [d for d in enumerate_classes(family, q, dim) if component_group(d).order > 1]
    for _ in range(count):
        data = rng.choice(classes)
        info = component_group(data)
        labels = list(iter_label_tuples(info.factors))
        yield data, info, rng.choice(labels), rng.choice(info.elements())[1]


@pytest.mark.parametrize("family,q,dim", [("GL", 5, 4), ("GU", 5, 2), ("CSp", 5, 4), ("CSO+", 3, 6), ("SO", 3, 5)])
def test_verdict_is_invariant_under_component_group(family: str, q: int, dim: int) -> None:
    for data, info, lab, act in _random_pairs(family, q, dim, 200, seed=dim * q):
        img = apply_auto(lab, act, info.factors)
        a, b = classify(data, lab), classify(data, img)
        assert (a.outcome, a.case, a.A_lambda_order) == (b.outcome, b.case, b.A_lambda_order)


def test_label_orbits_partition_all_labels() -> None:
    info = component_group(fixture("spin-even-klein"))
    orbits = label_orbits(info)
    flat = [lab for orb in orbits for lab in orb]
    assert len(flat) == len(set(flat)) == len(list(iter_label_tuples(info.factors)))


def _nu2_bits(num: int, den: int) -> int:
    return ((num & -num).bit_length()) - ((den & -den).bit_length())


@settings(max_examples=300, deadline=None)
@given(
    two_e=st.integers(min_value=1, max_value=64).map(lambda x: 2 * x),
    a_lam=st.integers(min_value=1, max_value=64),
    a=st.integers(min_value=1, max_value=64),
)
def test_su_two_adic_rule_recomputed(two_e: int, a_lam: int, a: int) -> None:
    assert su_primitive(two_e, a_lam, a) == (_nu2_bits(two_e * a_lam, a) > 0)
    assert nu2(Fraction(two_e * a_lam, a)) == _nu2_bits(two_e * a_lam, a)


def test_su_lt_length_choice() -> None:
    assert su_choose_lt_length([6, 4, 12]) == 6
    assert su_choose_lt_length([8, 4]) == 4
    assert su_choose_lt_length([10, 2]) == 2


def test_su_fixture_two_adic_recompute() -> None:
    data = fixture("su-2adic")
    lt = [o.length for o in factor_orbits(data) if o.kind == "lt"]
    assert lt == [2]
    two_e = lt[0]
    for e in enumerate_series(data):
        v = e.verdict
        if v.case.startswith("su-2adic"):
            primitive = _nu2_bits(two_e * v.A_lambda_order, v.A_order) > 0
            assert primitive == (v.outcome == PRIMITIVE)


def test_verdict_requires_consistent_witness() -> None:
    with pytest.raises(AssertionError):
        Verdict(PRIMITIVE, "sp-non-self-dual", None, 1, 1)
    with pytest.raises(AssertionError):
        Verdict(IMPRIMITIVE, "sp-non-self-dual", None, 1, 1)


def test_label_errors_use_label_rule() -> None:
    data = fixture("spin-even-c4")
    with pytest.raises(ClassDataError) as info:
        label_from_json(data, [[1]])
    assert info.value.rule == "label"
    with pytest.raises(ClassDataError) as info:
        classify(data, ((1,), (1,), (1,)))
    assert info.value.rule == "label"


def test_exceptional_data_and_dagger_flips() -> None:
    report = e6e7_suite()
    assert report["consistency"]["ok"]
    flips = report["dagger_flips"]
    assert flips and all(f["ok"] for f in flips)
    assert any(f["moved"] for f in flips) and any(f["fixed"] for f in flips)
    assert all(row.case != DAGGER or row.generator() is not None for row in EXCEPTIONAL_ROWS)


def test_triality_table_recomputed_from_characters() -> None:
    assert graph_automorphism_check()["ok"]
