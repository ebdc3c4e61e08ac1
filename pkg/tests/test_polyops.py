from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hcprim.gf import Polynomial, field_of_order, irreducible_polys, quadratic_extension
from hcprim.polyops import (
    FactorType,
    Mode,
    PolyError,
    check_f0,
    classify_type,
    classify_type_by_roots,
    classify_type_raw,
    dagger_raw,
    negate_raw,
    orbit_under_scaling,
    orbits_raw,
    scale_raw,
    self_dual_degree_rule_holds,
    star_alpha_raw,
    star_raw,
    transform,
)


def f0_poly(q: int):
    """Strategy for monic polynomials with nonzero constant term over F_q."""
    return st.tuples(
        st.integers(min_value=1, max_value=q - 1),
        st.lists(st.integers(min_value=0, max_value=q - 1), min_size=0, max_size=5),
    ).map(lambda t: (t[0], *t[1], 1))


@settings(max_examples=300, deadline=None)
@given(data=st.data(), q=st.sampled_from((3, 4, 5, 7, 9)))
def test_involutions(data, q: int) -> None:
    F = field_of_order(q)
    mu = data.draw(f0_poly(q))
    a = data.draw(st.integers(min_value=1, max_value=q - 1))
    assert star_raw(F, star_raw(F, mu)) == mu
    assert negate_raw(F, negate_raw(F, mu)) == mu
    assert star_alpha_raw(F, star_alpha_raw(F, mu, a), a) == mu
    assert scale_raw(F, scale_raw(F, mu, a), F.inv(a)) == mu


@settings(max_examples=200, deadline=None)
@given(data=st.data(), q=st.sampled_from((2, 3, 4)))
def test_dagger_is_an_involution(data, q: int) -> None:
    E = quadratic_extension(field_of_order(q))
    mu = data.draw(f0_poly(E.order))
    assert dagger_raw(E, dagger_raw(E, mu)) == mu


def test_dagger_needs_quadratic_tower() -> None:
    with pytest.raises(PolyError):
        dagger_raw(field_of_order(5), (1, 1))


def test_transform_rejects_bad_input() -> None:
    F = field_of_order(5)
    mu = Polynomial(F, (2, 1))
    with pytest.raises(PolyError):
        transform(mu, Mode.SCALE, 0)
    with pytest.raises(PolyError):
        transform(mu, "star_alpha")
    with pytest.raises(PolyError):
        transform(Polynomial(F, (0, 1)), Mode.STAR)
    with pytest.raises(PolyError):
        check_f0(F, (1, 2, 1))  # (X+1)^2 is not separable
    assert transform(mu, "negate").coeffs == (3, 1)
    assert transform(mu, "star").coeffs == (3, 1)


@pytest.mark.parametrize("q", (2, 3, 4, 5))
def test_classify_type_agrees_with_roots(q: int) -> None:
    F = field_of_order(q)
    for d in range(1, 5):
        for mu in irreducible_polys(F, d):
            if mu[0] == 0:
                continue
            for a in range(1, q):
                t = classify_type_raw(F, mu, a)
                assert t == classify_type_by_roots(F, mu, a)
                assert self_dual_degree_rule_holds(F, mu, a)


def test_types_ii_and_iii_absent_in_characteristic_two() -> None:
    F = field_of_order(2)
    tags = {classify_type_raw(F, mu, 1).tag for d in range(1, 7) for mu in irreducible_polys(F, d) if mu[0]}
    assert "II" not in tags and "III" not in tags
    assert {"I", "IV", "V"} <= tags


def test_small_type_examples() -> None:
    F = field_of_order(3)
    assert classify_type(Polynomial(F, (2, 1)), 1) == FactorType("I", 1)
    assert classify_type(Polynomial(F, (1, 0, 1)), 2) == FactorType("II", 2)
    assert classify_type(Polynomial(F, (1, 0, 1)), 1) == FactorType("III", 2, 1)
    with pytest.raises(PolyError):
        classify_type(Polynomial(F, (1, 1)), 0)
    with pytest.raises(PolyError):
        classify_type(Polynomial(F, (1, 0, 1)), 1, q=5)
    with pytest.raises(PolyError):
        classify_type(Polynomial(F, (2, 0, 1)), 1)  # X^2 - 1 is reducible


def test_orbits_partition_and_tags() -> None:
    F = field_of_order(5)
    lin = [(c, 1) for c in range(1, 5)]
    orbs = orbits_raw(F, lin, 2)
    assert [o.length for o in orbs] == [4]
    orbs = orbits_raw(F, lin, 4)
    assert sorted(o.length for o in orbs) == [2, 2]
    with pytest.raises(PolyError):
        orbits_raw(F, [(1, 1)], 2)
    polys = [Polynomial(F, p) for p in lin]
    assert orbit_under_scaling(polys, 4) == orbs
    assert orbit_under_scaling([], 2) == []


def test_unitary_orbit_kinds() -> None:
    q = 3
    E = quadratic_extension(field_of_order(q))
    lin = [(c, 1) for c in range(1, E.order)]
    orbs = orbits_raw(E, lin, 1, unitary=True)
    # X - z is dagger-fixed exactly when z^(q+1) = 1
    assert sum(o.kind == "u" for o in orbs) == q + 1
    for o in orbs:
        f = o.members[0]
        assert (dagger_raw(E, f) == f) == (o.kind == "u")
        assert E.pow(E.neg(f[0]), q + 1) == 1 or o.kind == "ls"
