"""Root-set involutions on monic separable polynomials and the factor types.

For ``mu`` of degree ``d`` with root multiset ``Z``:

* ``scale(mu, a)`` has roots ``a*Z``,
* ``negate(mu)`` has roots ``-Z``,
* ``star(mu)`` has roots ``1/Z``,
* ``star_alpha(mu, a)`` has roots ``a/Z``,
* ``dagger(mu)`` has roots ``Z^(-q)`` (coefficients in ``F_{q^2}``).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from hcprim.gf import (
    Field,
    FieldError,
    Poly,
    Polynomial,
    extension,
    factor_raw,
    p_deg,
    p_deriv,
    p_gcd,
    poly_is_irreducible_raw,
)


class PolyError(ValueError):
    """Input outside the domain of a polynomial operation."""


class Mode(str, Enum):
    SCALE = "scale"
    NEGATE = "negate"
    STAR = "star"
    STAR_ALPHA = "star_alpha"
    DAGGER = "dagger"


def _alpha(a: object) -> int:
    return a.value if hasattr(a, "value") else int(a)  # type: ignore[attr-defined]


def check_f0(F: Field, mu: Poly) -> None:
    """Membership in ``F[X]^0``: monic, separable, nonzero constant term."""
    if len(mu) < 2:
        raise PolyError("constant polynomial")
    if mu[-1] != 1:
        raise PolyError("polynomial is not monic")
    if mu[0] == 0:
        raise PolyError("zero constant term")
    if p_deg(p_gcd(F, mu, p_deriv(F, mu))) > 0:
        raise PolyError("polynomial is not separable")


# ---------------------------------------------------------------------------
# raw transforms on coefficient tuples (no validation)


def scale_raw(F: Field, mu: Poly, a: int) -> Poly:
    d = len(mu) - 1
    return tuple(F.mul(c, F.pow(a, d - i)) for i, c in enumerate(mu))


def negate_raw(F: Field, mu: Poly) -> Poly:
    d = len(mu) - 1
    return tuple(c if (d - i) % 2 == 0 else F.neg(c) for i, c in enumerate(mu))


def star_raw(F: Field, mu: Poly) -> Poly:
    inv = F.inv(mu[0])
    return tuple(F.mul(c, inv) for c in reversed(mu))


def star_alpha_raw(F: Field, mu: Poly, a: int) -> Poly:
    return scale_raw(F, star_raw(F, mu), a)


def dagger_raw(F: Field, mu: Poly) -> Poly:
    if F.base is None or F.degree != 2:
        raise PolyError("dagger needs coefficients in a quadratic tower F_{q^2}")
    q = F.base.order
    return tuple(F.pow(c, q) for c in star_raw(F, mu))


def transform(mu: Polynomial, mode: Mode | str, alpha: object = None) -> Polynomial:
    """Apply one of the root-set operations to ``mu`` in ``F[X]^0``."""
    mode = Mode(mode)
    F = mu.field
    check_f0(F, mu.coeffs)
    if mode in (Mode.SCALE, Mode.STAR_ALPHA):
        if alpha is None:
            raise PolyError(f"{mode.value} needs a multiplier")
        a = _alpha(alpha)
        if a == 0:
            raise PolyError("multiplier must be nonzero")
        fn = scale_raw if mode is Mode.SCALE else star_alpha_raw
        return Polynomial(F, fn(F, mu.coeffs, a))
    if mode is Mode.NEGATE:
        return Polynomial(F, negate_raw(F, mu.coeffs))
    if mode is Mode.STAR:
        return Polynomial(F, star_raw(F, mu.coeffs))
    return Polynomial(F, dagger_raw(F, mu.coeffs))


# ---------------------------------------------------------------------------
# factor types


@dataclass(frozen=True)
class FactorType:
    """Type of an irreducible factor relative to a multiplier.

    ``tag`` is one of I..V (conformal setting) or u/ls/lt (unitary orbits).
    ``e`` is half the degree for Types III/IV, otherwise 0.
    """

    tag: str
    degree: int
    e: int = 0


def classify_type_raw(F: Field, mu: Poly, a: int) -> FactorType:
    d = len(mu) - 1
    if star_alpha_raw(F, mu, a) != mu:
        return FactorType("V", d)
    if d == 1:
        return FactorType("I", 1)
    if d == 2 and mu[1] == 0:
        if mu[0] == F.neg(a):
            return FactorType("II", 2)
        if mu[0] == a:
            return FactorType("III", 2, 1)
    return FactorType("IV", d, d // 2)


def classify_type(mu: Polynomial, alpha: object, q: int | None = None) -> FactorType:
    """Type I..V of an irreducible ``mu`` over ``F_q`` relative to ``alpha``."""
    F = mu.field
    if q is not None and q != F.order:
        raise PolyError(f"polynomial lives over a field of order {F.order}, not {q}")
    a = _alpha(alpha)
    if not 0 < a < F.order:
        raise PolyError("multiplier must be a nonzero element of the base field")
    if mu.degree < 1 or not mu.is_monic or not poly_is_irreducible_raw(F, mu.coeffs):
        raise PolyError("classify_type expects a monic irreducible polynomial")
    if mu.coeffs[0] == 0:
        raise PolyError("X is not in F[X]^0")
    return classify_type_raw(F, mu.coeffs, a)


def classify_type_by_roots(F: Field, mu: Poly, a: int) -> FactorType:
    """Independent classification from the roots of ``mu`` in its splitting field."""
    d = len(mu) - 1
    E = extension(F, d) if d > 1 else F
    roots = [r for r, _ in _roots_with_mult(E, mu)]
    assert len(roots) == d
    q = F.order
    ea = E.embed(F, a)
    rs = set(roots)
    if {E.div(ea, z) for z in roots} != rs:
        return FactorType("V", d)
    z = roots[0]
    z2 = E.mul(z, z)
    if d == 1 and z2 == ea:
        return FactorType("I", 1)
    if d == 2 and z2 == ea:
        return FactorType("II", 2)
    if d == 2 and z2 == E.neg(ea):
        return FactorType("III", 2, 1)
    if d % 2:
        raise AssertionError("self-dual factor of odd degree without square-root root")
    e = d // 2
    # root relation zeta^{q^e} = alpha / zeta
    for r in roots:
        if E.pow(r, q**e) != E.div(ea, r):
            raise AssertionError("Type IV root relation fails")
    return FactorType("IV", d, e)


def _roots_with_mult(E: Field, mu: Poly) -> list[tuple[int, int]]:
    out = []
    for g, m in factor_raw(E, tuple(mu)):
        if len(g) != 2:
            raise FieldError("polynomial does not split in the given field")
        out.append((E.neg(g[0]), m))
    return out


# ---------------------------------------------------------------------------
# orbits


@dataclass(frozen=True)
class Orbit:
    members: tuple[Poly, ...]  # mu, mu^g, mu^{g^2}, ...
    kind: str = ""  # "", or u/ls/lt in the unitary setting

    @property
    def length(self) -> int:
        return len(self.members)


def orbits_raw(F: Field, factors: Iterable[Poly], g: int, unitary: bool = False) -> list[Orbit]:
    fs = set(tuple(f) for f in factors)
    for f in fs:
        if scale_raw(F, f, g) not in fs:
            raise PolyError("factor set is not closed under scaling")
        if unitary and dagger_raw(F, f) not in fs:
            raise PolyError("factor set is not closed under dagger")
    seen: set[Poly] = set()
    out = []
    for f in sorted(fs):
        if f in seen:
            continue
        orb = [f]
        h = scale_raw(F, f, g)
        while h != f:
            orb.append(h)
            h = scale_raw(F, h, g)
        seen.update(orb)
        kind = ""
        if unitary:
            fd = dagger_raw(F, f)
            if fd == f:
                kind = "u"
            elif fd in orb:
                kind = "lt"
            else:
                kind = "ls"
        out.append(Orbit(tuple(orb), kind))
    return out


def orbit_under_scaling(
    factors: Iterable[Polynomial], generator: object, unitary: bool = False
) -> list[Orbit]:
    """Partition ``factors`` into orbits of ``mu -> mu^generator``.

    In the unitary setting each orbit is also tagged u, ls or lt.  Orbits are
    listed by their smallest member.
    """
    factors = list(factors)
    if not factors:
        return []
    F = factors[0].field
    return orbits_raw(F, (f.coeffs for f in factors), _alpha(generator), unitary)


def self_dual_degree_rule_holds(F: Field, mu: Poly, a: int) -> bool:
    """Self-dual factors without square-root roots have even degree and c_0 = a^{d/2}."""
    t = classify_type_raw(F, mu, a)
    if t.tag in ("I", "II", "V"):
        return True
    d = len(mu) - 1
    return d % 2 == 0 and mu[0] == F.pow(a, d // 2)


def polys_over(F: Field, coeff_lists: Sequence[Sequence[int]]) -> list[Polynomial]:
    return [Polynomial(F, tuple(c)) for c in coeff_lists]
