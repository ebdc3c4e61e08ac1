from __future__ import annotations

import pytest

from hcprim.centralizers import characteristic_polynomial, matrix_group_order
from hcprim.gf import field_of_order
from hcprim.oracle.coxeter import labelled_table, weyl_group
from hcprim.oracle.dixon import PermGroup, dixon_character_table
from hcprim.oracle.matrix import (
    build_matrix_group,
    cached_report,
    check_closure,
    element_class_data,
    kind_order,
    semisimple_elements,
)
from hcprim.oracle.sweeps import brute_charpoly, has_non_self_dual_factor, negation_sweep, sp_sweep


@pytest.mark.parametrize(
    "gens,degree,order,classes",
    [
        ([(1, 2, 3, 4, 0)], 5, 5, 5),  # cyclic group, irrational values
        ([(1, 2, 0, 3), (0, 2, 3, 1)], 4, 12, 4),  # alternating group A4
        ([(1, 0, 2, 3, 4), (1, 2, 3, 4, 0)], 5, 120, 7),  # S5
    ],
)
def test_dixon_tables_satisfy_orthogonality(gens, degree: int, order: int, classes: int) -> None:
    G = PermGroup(gens, degree)
    assert G.order == order
    T = dixon_character_table(G)
    assert len(T.values) == classes
    assert T.orthogonality_ok()


@pytest.mark.parametrize("ctype,n,order", [("A", 4, 24), ("B", 3, 48), ("D", 4, 192)])
def test_weyl_group_orders_and_labelled_tables(ctype: str, n: int, order: int) -> None:
    assert weyl_group(ctype, n).order == order
    LT = labelled_table(ctype, n)
    assert LT.table.is_rational()
    assert len(set(LT.labels)) == len(LT.labels)


@pytest.mark.parametrize(
    "kind,n,q",
    [("GL", 2, 3), ("SL", 2, 5), ("GU", 2, 2), ("Sp", 4, 2), ("CSp", 2, 5), ("SO", 3, 3), ("SO+", 4, 3), ("CO-", 2, 5)],
)
def test_enumerated_group_orders(kind: str, n: int, q: int) -> None:
    G = build_matrix_group(kind, n, q)
    assert G.order == kind_order(kind, n, q)
    assert check_closure(G, samples=50)


def test_classical_order_formula_values() -> None:
    assert matrix_group_order("GL", 2, 3) == 48
    assert matrix_group_order("SL", 2, 3) == 24
    assert matrix_group_order("Sp", 4, 3) == 51840
    assert matrix_group_order("SO+", 4, 3) == 576
    assert matrix_group_order("SO-", 4, 3) == 720
    assert matrix_group_order("GU", 2, 2) == 18


@pytest.mark.parametrize("kind,n,q", [("GL", 3, 2), ("CSp", 2, 5), ("CO+", 4, 3)])
def test_brute_charpoly_matches_class_data(kind: str, n: int, q: int) -> None:
    G = build_matrix_group(kind, n, q)
    for s in semisimple_elements(G)[:200]:
        data = element_class_data(G, s)
        assert brute_charpoly(G.F, G.V.rows(s)) == characteristic_polynomial(data)


def test_non_self_dual_factor_detection() -> None:
    F = field_of_order(5)
    # X^2 + 1 = (X - 2)(X - 3) and 2 * 3 = 1, so each factor is the dual of the other
    assert has_non_self_dual_factor(F, (2, 1)) is True
    assert has_non_self_dual_factor(F, (1, 0, 1)) is True
    assert has_non_self_dual_factor(F, (4, 0, 1)) is False  # (X - 1)(X + 1)
    assert has_non_self_dual_factor(F, (4, 1)) is False


@pytest.mark.parametrize("kind,ambient,q", [("CSp", "CSp", 3), ("CSO+", "CO+", 5), ("CSO-", "CO-", 5)])
def test_small_negation_sweeps(kind: str, ambient: str, q: int) -> None:
    report = negation_sweep(kind, ambient, n=2, q=q)
    assert report["rows"] and report["ok"]


@pytest.mark.parametrize("n,q", [(3, 3), (3, 5)])
def test_small_symplectic_target_sweeps(n: int, q: int) -> None:
    report = sp_sweep(n, q)
    assert report["rows"] and report["ok"]


def test_cached_report_round_trip(tmp_path) -> None:
    calls = []

    def build() -> dict:
        calls.append(1)
        return {"ok": True, "rows": [1, 2]}

    assert cached_report("x", build, tmp_path) == {"ok": True, "rows": [1, 2]}
    assert cached_report("x", build, tmp_path) == {"ok": True, "rows": [1, 2]}
    assert len(calls) == 1
    cached_report("x", build, tmp_path, refresh=True)
    assert len(calls) == 2
