from __future__ import annotations

import itertools

import pytest

from hcprim.centralizers import (
    CONNECTED_ONLY,
    FULL,
    NONE,
    ClassDataError,
    centralizer_shape,
    class_count,
    class_from_json,
    class_to_json,
    component_group,
    conjugate_to_negative,
    enumerate_classes,
    levi_containment,
    make_class,
    matrix_group_order,
    predicted_centralizer_order,
    scaling_stabilizer,
    validate_class,
)
from hcprim.oracle.matrix import build_matrix_group, det, element_class_data, quadratic_form
from hcprim.oracle.sweeps import centralizer_sweep


def rule_of(data) -> str:
    with pytest.raises(ClassDataError) as info:
        validate_class(data)
    return info.value.rule


@pytest.mark.parametrize(
    "data,rule",
    [
        (make_class("XX", 3, [((1, 1), 1)]), "family"),
        (make_class("GL", 6, [((1, 1), 1)]), "field"),
        (make_class("CSp", 3, [((2, 1), 2)], alpha=0), "multiplier"),
        (make_class("GL", 3, [((2, 1), 1)], alpha=2), "multiplier"),
        (make_class("GL", 3, [((0, 1), 1)]), "F[X]^0"),
        (make_class("GL", 3, [((2, 0, 1), 1)]), "irreducible"),
        (make_class("CSp", 3, [((1, 1), 1)]), "dimension"),
        (make_class("CSp", 5, [((3, 1), 2)]), "star-closure"),
        (make_class("CSp", 3, [((2, 1), 1), ((1, 1), 1)]), "Type I: k even"),
        (make_class("SO", 3, [((2, 1), 2), ((1, 1), 1)]), "determinant"),
        (make_class("CSO+", 3, [((2, 1), 2)]), "block sign"),
        (make_class("CSO+", 3, [((2, 1), 2, "-")]), "global sign"),
        (make_class("CSO+", 3, [((1, 0, 1), 1, "+")]), "Type III: sign (-1)^k"),
        (make_class("GU", 3, [((4, 1), 1)]), "dagger-closure"),
        (make_class("SO", 3, [((2, 1), 1)], target="SL"), "target"),
        (make_class("GL", 3, [((2, 1), 1)], target="EvenCharSp"), "target"),
        (make_class("CSp", 3, [((2, 1), 2)], target="EvenCharSp"), "q-parity"),
    ],
)
def test_validation_rules(data, rule: str) -> None:
    assert rule_of(data) == rule


def test_error_message_carries_rule() -> None:
    err = ClassDataError("bad", "schema")
    assert str(err) == "[schema] bad" and err.rule == "schema"


@pytest.mark.parametrize("family,q,dim", [("GL", 3, 3), ("GU", 2, 3), ("CSp", 3, 4), ("CSO+", 3, 4), ("CSO-", 5, 4), ("SO", 3, 5)])
def test_enumerated_classes_round_trip_through_json(family: str, q: int, dim: int) -> None:
    classes = enumerate_classes(family, q, dim)
    assert classes
    for data in classes:
        again = class_from_json(class_to_json(data))
        assert class_to_json(again) == class_to_json(data)
        validate_class(again)


@pytest.mark.parametrize("kind,n,q", [("GL", 2, 3), ("SL", 2, 3), ("GU", 2, 2), ("SO+", 4, 3), ("SO-", 4, 3), ("SO", 3, 3)])
def test_centralizer_orders_and_class_counts_match_brute_force(kind: str, n: int, q: int) -> None:
    report = centralizer_sweep(kind, n, q)
    assert report["order"] == matrix_group_order(kind, n, q)
    assert report["ok"], [r for r in report["rows"] if not r["ok"]]


def test_class_count_splits_only_without_type_i() -> None:
    split = make_class("CSO+", 3, [((1, 0, 1), 2)])
    assert class_count(split, "SO+") == 2 and class_count(split, "CSO+") == 2
    whole = make_class("CSO+", 3, [((2, 1), 2, "+"), ((1, 1), 2, "+")])
    assert class_count(whole, "SO+") == 1
    with pytest.raises(ClassDataError):
        class_count(whole, "Sp")


def test_predicted_order_needs_multiplier_one_for_isometry_groups() -> None:
    data = make_class("CSp", 5, [((1, 1), 1), ((2, 1), 1)], alpha=2)
    validate_class(data)
    with pytest.raises(ClassDataError):
        predicted_centralizer_order(data, "Sp")
    assert predicted_centralizer_order(data, "CSp") > 0


def test_scaling_stabilizer_of_gl_data() -> None:
    # the four linear factors over F_5 are permuted transitively by scalars
    data = make_class("GL", 5, [((c, 1), 1) for c in range(1, 5)])
    gen, order = scaling_stabilizer(data)
    assert order == 4
    assert component_group(data).structure == "C4"
    assert levi_containment(data) == CONNECTED_ONLY
    single = make_class("GL", 5, [((2, 1), 3)])
    assert levi_containment(single) == NONE
    assert levi_containment(make_class("GL", 5, [((2, 1), 1), ((3, 1), 2)])) == FULL


def test_shape_of_symplectic_class() -> None:
    data = make_class("CSp", 3, [((1, 1), 2), ((2, 1), 2)])
    shape = centralizer_shape(data)
    assert sorted(str(f) for f in shape.factors) == ["Sp_2(q)", "Sp_2(q)"]
    assert conjugate_to_negative(data).value
    assert component_group(data).structure == "C2"


def _mat_mul(F, a, b):
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = 0
            for k in range(n):
                acc = F.add(acc, F.mul(a[i][k], b[k][j]))
            row.append(acc)
        out.append(row)
    return out


def _apply(F, m, v):
    return [_sum(F, (F.mul(m[i][j], v[j]) for j in range(len(v)))) for i in range(len(m))]


def _sum(F, xs):
    acc = 0
    for x in xs:
        acc = F.add(acc, x)
    return acc


def _direct_sum(a, b):
    n, m = len(a), len(b)
    return [list(r) + [0] * m for r in a] + [[0] * n + list(r) for r in b]


def test_type_ii_minus_block_pairs_with_outside_block() -> None:
    """A Type II block of minus type only admits multiplier-1 conjugators of
    determinant -1; pairing it with a second such block yields ``s ~ -s``
    inside the special conformal group."""
    G = build_matrix_group("CO-", 4, 3)
    F, V = G.F, G.V
    m1 = F.neg(1)
    s4 = None
    for g, lam in zip(G.elements, G.multipliers):
        if lam != 2 or not G.is_semisimple(g):
            continue
        data = element_class_data(G, g)
        fs = [(f.poly, f.mult, f.block_sign) for f in data.factors]
        if fs == [((1, 0, 1), 2, "-")]:
            s4 = g
            break
    assert s4 is not None
    neg = V.neg(s4)
    conj = [
        (h, d)
        for h, lam, d in zip(G.elements, G.multipliers, G.dets)
        if lam == 1 and V.mul(h, s4) == V.mul(neg, h)
    ]
    assert conj
    assert {d for _, d in conj} == {m1}

    # second block: the hyperbolic plane Q(x, y) = xy with diag(1, 2)
    h4 = V.rows(conj[0][0])
    s_rows = _direct_sum(V.rows(s4), [[1, 0], [0, 2]])
    h_rows = _direct_sum(h4, [[0, 1], [1, 0]])
    Q4 = quadratic_form(F, 4, "-")

    def Q6(v):
        return F.add(Q4(v[:4]), F.mul(v[4], v[5]))

    for v in itertools.product(range(3), repeat=6):
        v = list(v)
        assert Q6(_apply(F, h_rows, v)) == Q6(v)
        assert Q6(_apply(F, s_rows, v)) == F.mul(2, Q6(v))
    minus_s = [[F.neg(x) for x in r] for r in s_rows]
    assert _mat_mul(F, h_rows, s_rows) == _mat_mul(F, minus_s, h_rows)
    assert det(F, h_rows) == 1

    data = make_class("CSO-", 3, [((1, 0, 1), 2, "-"), ((2, 1), 1), ((1, 1), 1)], alpha=2)
    result = conjugate_to_negative(data)
    assert result.value
    kinds = {b.kind: b.placements for b in result.blocks}
    assert kinds["II"] == frozenset({1})
