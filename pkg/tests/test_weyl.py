from __future__ import annotations

from collections import Counter

import pytest
import sympy as sp

from hcprim.labels import DLabel, bipartitions, d_labels, dim_hyperoctahedral, partitions
from hcprim.oracle.coxeter import brute_parabolic_induction, cross_check
from hcprim.suites import a_value_check, generic_degree_identity, specialization_check
from hcprim.weyl import (
    THREE_CONSTITUENT_ROWS,
    WeylError,
    X,
    Y,
    a_value_from_degree,
    expected_two_constituent,
    generic_degree,
    induce,
    induction_cases,
    parabolic_labels,
    parabolics,
    poincare_defect,
    verify_induction_classification,
)

# two-parameter generic degrees for B3 exactly as printed (one entry fails the degree identity)
PRINTED_B3 = {
    ((3,), ()): "1",
    ((2, 1), ()): "X**2*(X**2*Y+1)*(X+1)/(X+Y)",
    ((1, 1, 1), ()): "X**6*(X*Y+1)*(X**2*Y+1)/((X+Y)*(X**2+Y))",
    ((2,), (1,)): "X*Y*(X*Y+1)*(X**2+X+1)/(X+Y)",
    ((1, 1), (1,)): "X**3*Y*(X**2*Y+1)*(X**2+X+1)/(X**2+Y)",
    ((1,), (2,)): "X*Y**2*(X**2*Y+1)*(X**2+X+1)/(X**2+Y)",
    ((1,), (1, 1)): "X**3*Y*(X*Y+1)*(X**2+X+1)/(X+Y)",
    ((), (3,)): "Y**3*(X*Y+1)*(X**2*Y+1)/((X+Y)*(X**2+Y))",
    ((), (2, 1)): "X**2*Y**3*(X**2*Y+1)*(X+1)/(X+Y)",
    ((), (1, 1, 1)): "X**6*Y**3",
}


@pytest.mark.parametrize("label", sorted(PRINTED_B3))
def test_b3_generic_degrees_match_printed_table(label) -> None:
    want = sp.sympify(PRINTED_B3[label], locals={"X": X, "Y": Y})
    assert sp.simplify(generic_degree("B3", label).expr - want) == 0


def test_b3_table_covers_every_bipartition() -> None:
    assert set(PRINTED_B3) == set(bipartitions(3))


def test_b2_generic_degrees_printed_values() -> None:
    assert generic_degree("B2", ((2,), ())).expr == 1
    assert generic_degree("B2", ((), (1, 1))).expr == X**2 * Y**2
    mid = generic_degree("B2", ((1,), (1,)))
    assert mid.equals(X * Y * (X + 1) * (Y + 1) / (X + Y))


def test_degree_identity_defects() -> None:
    report = generic_degree_identity()
    assert report["B2_defect"] == "0"
    assert report["B3_corrected_defect"] == "0"
    assert report["B3_defect"] != "0"
    assert report["ok"]


@pytest.mark.parametrize("kind", ["A3", "A5", "B4", "B5", "D4", "D5"])
def test_equal_parameter_degree_identities(kind: str) -> None:
    assert poincare_defect(kind) == 0


def test_printed_b3_degrees_specialize_to_integers_at_equal_parameters() -> None:
    for lab in bipartitions(3):
        v = generic_degree("B3", lab).evaluate(3, 3)
        assert v.denominator == 1 and v > 0


def test_generic_degree_rejects_unknown_input() -> None:
    with pytest.raises(WeylError):
        generic_degree("E8", ((1,), ()))
    with pytest.raises(WeylError):
        generic_degree("D4", ((1,), ()))
    with pytest.raises(WeylError):
        generic_degree("A3", (2, 1))


@pytest.mark.parametrize("ctype,n", [("A", 3), ("A", 4), ("B", 2), ("B", 3), ("D", 4)])
def test_induction_matches_brute_force(ctype: str, n: int) -> None:
    assert cross_check(ctype, n)["ok"]


@pytest.mark.parametrize("ctype,n", [("A", 4), ("B", 3), ("D", 4)])
def test_induction_degrees_add_up(ctype: str, n: int) -> None:
    from hcprim.weyl import label_degree, rho_degree

    for par in parabolics(ctype, n):
        for rho in parabolic_labels(par):
            ind = induce(par, rho)
            total = sum(m * label_degree(ctype, lab) for lab, m in ind.items())
            assert total * par.order == par.ambient_order * rho_degree(par, rho)


def test_small_induction_is_brute_force_exact() -> None:
    par = parabolics("B", 2)[0]
    rho = next(iter(parabolic_labels(par)))
    assert Counter(induce(par, rho)) == brute_parabolic_induction(par, rho)


@pytest.mark.parametrize("ctype,bound,ranks", [("A", 6, None), ("B", 3, None), ("D", 5, (4, 5))])
def test_two_constituent_classification(ctype: str, bound: int, ranks) -> None:
    report = verify_induction_classification(ctype, bound, ranks)
    assert report["ok"], report


def test_type_d_odd_rank_family_present() -> None:
    fams = expected_two_constituent("D", 5)
    assert {f[0] for f in fams} == {"iii"}
    assert expected_two_constituent("D", 4) == set()


@pytest.mark.parametrize("key,count", [(("B", 2), 4), (("B", 3), 4), (("D", 4), 6)])
def test_three_constituent_counts(key, count: int) -> None:
    ctype, n = key
    assert len(THREE_CONSTITUENT_ROWS[key]) == count
    assert len(induction_cases(ctype, n, 3)) == count


def test_a_values_of_pairs_differ() -> None:
    report = a_value_check()
    assert report["pairs"] > 0 and report["ok"]


def test_specializations_never_collapse() -> None:
    report = specialization_check()
    assert report["checked"] == 360 and report["ok"], report["failures"]


def test_a_value_from_degree_of_type_a() -> None:
    # trivial character has a = 0, sign character has a = n(n-1)/2
    for n in range(2, 6):
        assert a_value_from_degree(generic_degree(f"A{n - 1}", (n,)).expr) == 0
        assert a_value_from_degree(generic_degree(f"A{n - 1}", (1,) * n).expr) == n * (n - 1) // 2


def test_d4_degrees_are_polynomials() -> None:
    for lab in d_labels(4):
        assert generic_degree("D4", lab).is_polynomial()
    assert sum(1 for _ in partitions(4)) == 5
    assert dim_hyperoctahedral(((1,), (1,))) == 2
    assert DLabel((1,), (1,)).degenerate
