from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hcprim.gf import (
    FieldError,
    Polynomial,
    factor_raw,
    field_of_order,
    irreducible_polys,
    p_add,
    p_divmod,
    p_gcd,
    p_mul,
    poly_factor,
    prime_factors,
    quadratic_extension,
    roots_raw,
)

ORDERS = (2, 3, 4, 5, 7, 8, 9, 16, 25, 27)


def mobius(n: int) -> int:
    ps = prime_factors(n)
    for p in ps:
        if n % (p * p) == 0:
            return 0
    return (-1) ** len(ps)


def necklace_count(q: int, d: int) -> int:
    return sum(mobius(d // k) * q**k for k in range(1, d + 1) if d % k == 0) // d


@pytest.mark.parametrize("q", ORDERS)
def test_field_axioms_exhaustive(q: int) -> None:
    F = field_of_order(q)
    assert F.order == q
    for a in range(q):
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
            assert F.pow(a, q - 1) == 1
    g = F.generator()
    assert F.element_order(g) == q - 1


@pytest.mark.parametrize("q", ORDERS)
def test_distributivity_sampled(q: int) -> None:
    F = field_of_order(q)
    rng = random.Random(q)
    for _ in range(300):
        a, b, c = (rng.randrange(q) for _ in range(3))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)


@pytest.mark.parametrize("q,d", [(2, 1), (2, 4), (2, 6), (3, 3), (4, 2), (5, 2), (5, 3), (9, 2)])
def test_irreducible_counts_match_necklace_formula(q: int, d: int) -> None:
    F = field_of_order(q)
    assert sum(1 for _ in irreducible_polys(F, d)) == necklace_count(q, d)


def test_quadratic_extension_contains_base() -> None:
    F = field_of_order(3)
    E = quadratic_extension(F)
    assert E.order == 9
    assert E.contains(F)
    images = {E.embed(F, a) for a in range(3)}
    assert all(E.frobenius(x) == x for x in images)


def test_field_bound_and_bad_orders() -> None:
    with pytest.raises(FieldError):
        field_of_order(6)
    with pytest.raises(FieldError):
        field_of_order(2**21)


@settings(max_examples=200, deadline=None)
@given(
    q=st.sampled_from((2, 3, 4, 5, 7, 9)),
    coeffs=st.lists(st.integers(min_value=0, max_value=10**6), min_size=1, max_size=7),
)
def test_factorization_reconstructs(q: int, coeffs: list[int]) -> None:
    F = field_of_order(q)
    f = tuple(c % q for c in coeffs) + (1,)
    prod: tuple = (1,)
    for g, m in factor_raw(F, f):
        assert g[-1] == 1
        for _ in range(m):
            prod = p_mul(F, prod, g)
    assert prod == f


@settings(max_examples=100, deadline=None)
@given(
    q=st.sampled_from((2, 3, 5, 7)),
    a=st.lists(st.integers(min_value=0, max_value=6), min_size=2, max_size=5),
    b=st.lists(st.integers(min_value=0, max_value=6), min_size=2, max_size=5),
)
def test_division_with_remainder(q: int, a: list[int], b: list[int]) -> None:
    F = field_of_order(q)
    f = tuple(x % q for x in a) + (1,)
    g = tuple(x % q for x in b) + (1,)
    quo, rem = p_divmod(F, f, g)
    back = p_mul(F, quo, g)
    assert p_add(F, back, rem) == f
    assert len(rem) < len(g) or rem == (0,) or not any(rem)
    h = p_gcd(F, f, g)
    assert p_divmod(F, f, h)[1] in ((), (0,))


def test_roots_of_split_polynomial() -> None:
    F = field_of_order(7)
    f = (0, 1)
    for r in (1, 3, 5):
        f = p_mul(F, f, (F.neg(r), 1))
    assert sorted(roots_raw(F, f)) == [0, 1, 3, 5]


def test_polynomial_wrapper_factor_is_sorted_and_deterministic() -> None:
    F = field_of_order(5)
    f = Polynomial(F, (1, 0, 0, 0, 1))  # X^4 + 1
    a = poly_factor(f)
    assert a == poly_factor(f)
    prod = Polynomial(F, (1,))
    for g, m in a:
        for _ in range(m):
            prod = prod * g
    assert prod == f
