"""Semisimple class data, centralizer shapes, component groups and the
negation and Levi-containment tests.

A class is given by the characteristic polynomial of a semisimple element
``s`` of one of the groups below, factored as ``prod mu^k_mu``:

* ``GL``: ``GL_n(q)`` (the lift of a class of ``PGL_n(q)``),
* ``GU``: ``GU_n(q)`` with polynomials over ``F_{q^2}``,
* ``CSp``: the conformal symplectic group ``CSp_{2m}(q)``,
* ``CSO+`` / ``CSO-``: the special conformal orthogonal groups in dimension
  ``2m`` of plus and minus type,
* ``SO``: the odd-dimensional ``SO_{2m+1}(q)`` (dual of ``Sp_{2m}(q)``).

For the orthogonal families, the type (``+`` or ``-``) of the quadratic space
``V_mu(s)`` is extra data carried by each factor as ``block_sign``.  It is
free for factors of Type I and II and forced for the others.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from itertools import product
from typing import Iterable, Sequence

from hcprim.gf import (
    Field,
    FieldError,
    Poly,
    field_of_order,
    p_mul,
    poly_is_irreducible_raw,
    quadratic_extension,
)
from hcprim.labels import ActionDescriptor, ClassicalFactor
from hcprim.polyops import (
    FactorType,
    classify_type_raw,
    dagger_raw,
    negate_raw,
    orbits_raw,
    scale_raw,
    star_alpha_raw,
)

FAMILIES = ("GL", "GU", "CSp", "CSO+", "CSO-", "SO")

TARGET_FAMILIES = {
    "SL": ("GL",),
    "SU": ("GU",),
    "Sp": ("SO",),
    "SpinOdd": ("CSp",),
    "SpinEvenPlus": ("CSO+",),
    "SpinEvenMinus": ("CSO-",),
    "EvenCharSp": ("CSp", "SO"),
    "EvenCharSO+": ("CSO+",),
    "EvenCharSO-": ("CSO-",),
}

ODD_Q_TARGETS = ("Sp", "SpinOdd", "SpinEvenPlus", "SpinEvenMinus")
EVEN_Q_TARGETS = ("EvenCharSp", "EvenCharSO+", "EvenCharSO-")


class ClassDataError(ValueError):
    """Invalid class data.  ``rule`` names the existence condition violated."""

    def __init__(self, message: str, rule: str = "schema"):
        super().__init__(f"[{rule}] {message}")
        self.rule = rule


# ---------------------------------------------------------------------------
# group orders


def classical_order(kind: str, k: int, Q: int) -> int:
    """Order of ``kind_k(Q)`` where ``k`` is the dimension of the natural module."""
    if k < 0:
        raise ValueError("negative dimension")
    if kind == "GL":
        out = Q ** (k * (k - 1) // 2)
        for i in range(1, k + 1):
            out *= Q**i - 1
        return out
    if kind == "GU":
        out = Q ** (k * (k - 1) // 2)
        for i in range(1, k + 1):
            out *= Q**i - (-1) ** i
        return out
    if kind == "Sp":
        if k % 2:
            raise ValueError("Sp needs even dimension")
        n = k // 2
        out = Q ** (n * n)
        for i in range(1, n + 1):
            out *= Q ** (2 * i) - 1
        return out
    if kind == "SO":
        if k % 2 == 0:
            raise ValueError("SO without sign needs odd dimension")
        n = (k - 1) // 2
        out = Q ** (n * n)
        for i in range(1, n + 1):
            out *= Q ** (2 * i) - 1
        return out
    if kind in ("SO+", "SO-"):
        if k % 2:
            raise ValueError(f"{kind} needs even dimension")
        n = k // 2
        if n == 0:
            if kind == "SO-":
                raise ValueError("there is no minus-type space of dimension 0")
            return 1
        eps = 1 if kind == "SO+" else -1
        out = Q ** (n * (n - 1)) * (Q**n - eps)
        for i in range(1, n):
            out *= Q ** (2 * i) - 1
        return out
    raise ValueError(f"unknown classical kind {kind!r}")


def matrix_group_order(kind: str, n: int, q: int) -> int:
    """Order of the finite group ``kind`` acting on an ``n``-dimensional space."""
    if kind == "GL":
        return classical_order("GL", n, q)
    if kind == "SL":
        return classical_order("GL", n, q) // (q - 1)
    if kind == "GU":
        return classical_order("GU", n, q)
    if kind == "SU":
        return classical_order("GU", n, q) // (q + 1)
    if kind == "Sp":
        return classical_order("Sp", n, q)
    if kind == "CSp":
        return (q - 1) * classical_order("Sp", n, q)
    if kind in ("SO+", "SO-"):
        return classical_order(kind, n, q)
    if kind in ("CSO+", "CSO-"):
        return (q - 1) * classical_order("SO" + kind[-1], n, q)
    if kind == "SO":
        return classical_order("SO", n, q)
    raise ValueError(f"unknown group kind {kind!r}")


# ---------------------------------------------------------------------------
# class data


@dataclass(frozen=True)
class ClassFactor:
    """``poly`` occurring with multiplicity ``mult`` in the characteristic polynomial."""

    poly: Poly
    mult: int
    block_sign: str | None = None


@dataclass(frozen=True)
class SemisimpleClassData:
    family: str
    q: int
    factors: tuple[ClassFactor, ...]
    alpha: int = 1
    target: str | None = None
    class_tag: int | None = None
    rank: int | None = None  # n for GL/GU, m otherwise; optional check

    @property
    def field(self) -> Field:
        F = field_of_order(self.q)
        return quadratic_extension(F) if self.family == "GU" else F

    @property
    def dimension(self) -> int:
        return sum((len(f.poly) - 1) * f.mult for f in self.factors)

    @property
    def m(self) -> int:
        d = self.dimension
        return d if self.family in ("GL", "GU") else d // 2

    @property
    def ambient_sign(self) -> str | None:
        return self.family[-1] if self.family in ("CSO+", "CSO-") else None

    def with_factors(self, factors: Iterable[ClassFactor]) -> SemisimpleClassData:
        return replace(self, factors=tuple(factors))


@dataclass(frozen=True)
class ValidatedClass:
    """Class data after validation, with the derived per-factor information."""

    data: SemisimpleClassData
    F: Field
    types: tuple[FactorType, ...]
    signs: tuple[str | None, ...]  # resolved block signs (orthogonal families)
    index: dict = field(compare=False, hash=False, repr=False)  # poly -> factor index

    @property
    def family(self) -> str:
        return self.data.family

    @property
    def q(self) -> int:
        return self.data.q

    @property
    def alpha(self) -> int:
        return self.data.alpha

    @property
    def factors(self) -> tuple[ClassFactor, ...]:
        return self.data.factors

    @property
    def m(self) -> int:
        return self.data.m

    def polys(self) -> list[Poly]:
        return [f.poly for f in self.factors]

    def mult_of(self, mu: Poly) -> int:
        i = self.index.get(mu)
        return 0 if i is None else self.factors[i].mult

    def partner(self, i: int) -> int | None:
        """Index of ``mu^{*alpha}`` (``mu^dagger`` for GU)."""
        mu = self.factors[i].poly
        if self.family == "GL":
            return i
        if self.family == "GU":
            return self.index.get(dagger_raw(self.F, mu))
        return self.index.get(star_alpha_raw(self.F, mu, self.alpha))

    def negative(self, i: int) -> int | None:
        """Index of ``mu'`` (roots negated), if it is a factor."""
        return self.index.get(negate_raw(self.F, self.factors[i].poly))

    def self_dual(self, i: int) -> bool:
        return self.partner(i) == i

    @property
    def square_root_polynomial_divides(self) -> bool:
        """Does ``X^2 - alpha`` divide the minimal polynomial?  (q odd)"""
        F = self.F
        if F.p == 2:
            return False
        tags = [t.tag for t in self.types]
        if "II" in tags:
            return True
        roots = [F.neg(f.poly[0]) for f, t in zip(self.factors, self.types) if t.tag == "I"]
        return len(roots) == 2


def _sorted_factors(fs: Iterable[ClassFactor]) -> tuple[ClassFactor, ...]:
    return tuple(sorted(fs, key=lambda f: (len(f.poly), f.poly)))


def make_class(
    family: str,
    q: int,
    factors: Iterable[tuple[Sequence[int], int] | tuple[Sequence[int], int, str | None] | ClassFactor],
    alpha: int = 1,
    target: str | None = None,
    class_tag: int | None = None,
) -> SemisimpleClassData:
    """Convenience constructor from ``(coeffs, mult[, sign])`` tuples."""
    out = []
    for f in factors:
        if isinstance(f, ClassFactor):
            out.append(f)
        else:
            sign = f[2] if len(f) > 2 else None  # type: ignore[misc]
            out.append(ClassFactor(tuple(f[0]), int(f[1]), sign))
    return SemisimpleClassData(family, q, _sorted_factors(out), alpha, target, class_tag)


def _forced_sign(tag: str, mult: int) -> str | None:
    if tag in ("III", "IV"):
        return "+" if mult % 2 == 0 else "-"
    if tag == "V":
        return "+"
    return None


def validate_class(data: SemisimpleClassData) -> ValidatedClass:
    """Check the class data and annotate every factor with its type.

    Raises :class:`ClassDataError` naming the violated condition.
    """
    fam = data.family
    if fam not in FAMILIES:
        raise ClassDataError(f"unknown family {fam!r}", "family")
    try:
        Fq = field_of_order(data.q)
    except FieldError as exc:
        raise ClassDataError(str(exc), "field") from exc
    F = data.field
    q = data.q
    if data.target is not None:
        if data.target not in TARGET_FAMILIES:
            raise ClassDataError(f"unknown target {data.target!r}", "target")
        if fam not in TARGET_FAMILIES[data.target]:
            raise ClassDataError(f"target {data.target} is not covered by family {fam}", "target")
        if data.target in ODD_Q_TARGETS and q % 2 == 0:
            raise ClassDataError(f"target {data.target} needs q odd", "q-parity")
        if data.target in EVEN_Q_TARGETS and q % 2:
            raise ClassDataError(f"target {data.target} needs q even", "q-parity")
    a = data.alpha
    if not isinstance(a, int) or not 0 < a < Fq.order:
        raise ClassDataError("multiplier must be a nonzero element of F_q", "multiplier")
    if fam in ("GL", "GU", "SO") and a != 1:
        raise ClassDataError(f"family {fam} carries no multiplier; alpha must be 1", "multiplier")
    if not data.factors:
        raise ClassDataError("empty factor list", "schema")
    index: dict[Poly, int] = {}
    for i, f in enumerate(data.factors):
        mu = tuple(f.poly)
        if f.mult < 1:
            raise ClassDataError(f"multiplicity of {list(mu)} must be positive", "schema")
        if len(mu) < 2 or mu[-1] != 1 or mu[0] == 0 or any(not 0 <= c < F.order for c in mu):
            raise ClassDataError(f"{list(mu)} is not a monic polynomial with nonzero constant term", "F[X]^0")
        if not poly_is_irreducible_raw(F, mu):
            raise ClassDataError(f"{list(mu)} is not irreducible over F_{F.order}", "irreducible")
        if mu in index:
            raise ClassDataError(f"factor {list(mu)} listed twice", "schema")
        index[mu] = i
    if data.factors != _sorted_factors(data.factors):
        raise ClassDataError("factors must be listed in canonical order (use make_class)", "schema")
    dim = data.dimension
    if fam in ("CSp", "CSO+", "CSO-") and dim % 2:
        raise ClassDataError("conformal families need even dimension", "dimension")
    if fam == "SO" and dim % 2 == 0:
        raise ClassDataError("the odd orthogonal family needs odd dimension", "dimension")
    if data.rank is not None and data.rank != data.m:
        raise ClassDataError(f"rank {data.rank} does not match dimension {dim}", "dimension")

    # duality closure
    types: list[FactorType] = []
    signs: list[str | None] = []
    for i, f in enumerate(data.factors):
        mu = f.poly
        if fam == "GL":
            types.append(FactorType("", len(mu) - 1))
            continue
        if fam == "GU":
            md = dagger_raw(F, mu)
            if md not in index or data.factors[index[md]].mult != f.mult:
                raise ClassDataError(f"{list(mu)} and its dagger image must occur equally often", "dagger-closure")
            types.append(FactorType("u" if md == mu else "l", len(mu) - 1))
            continue
        ms = star_alpha_raw(F, mu, a)
        if ms not in index or data.factors[index[ms]].mult != f.mult:
            raise ClassDataError(
                f"{list(mu)} and {list(ms)} must occur with equal multiplicity", "star-closure"
            )
        types.append(classify_type_raw(F, mu, a))

    if fam in ("CSp", "CSO+", "CSO-", "SO"):
        for i, (f, t) in enumerate(zip(data.factors, types)):
            if t.tag in ("I", "II") and fam != "SO" and f.mult % 2:
                raise ClassDataError(
                    f"square roots of the multiplier must have even multiplicity ({list(f.poly)})",
                    f"Type {t.tag}: k even",
                )
            if fam == "SO" and t.tag == "I":
                is_one = f.poly == (F.neg(1), 1)
                if is_one and f.mult % 2 == 0 and F.p != 2:
                    raise ClassDataError("eigenvalue 1 must have odd multiplicity in SO_{2m+1}", "determinant")
                if not is_one and f.mult % 2:
                    raise ClassDataError("eigenvalue -1 must have even multiplicity in SO_{2m+1}", "determinant")

    orth = fam in ("CSO+", "CSO-", "SO")
    for f, t in zip(data.factors, types):
        if not orth:
            if f.block_sign is not None:
                raise ClassDataError("block signs only apply to orthogonal families", "schema")
            signs.append(None)
            continue
        if fam == "SO" and t.tag == "I" and f.poly == (F.neg(1), 1):
            if f.block_sign is not None:
                raise ClassDataError("the odd-dimensional eigenvalue 1 block carries no sign", "schema")
            signs.append(None)
            continue
        forced = _forced_sign(t.tag, f.mult)
        given = f.block_sign
        if given is not None and given not in ("+", "-"):
            raise ClassDataError(f"block sign must be '+' or '-', got {given!r}", "schema")
        if forced is None:
            if given is None:
                raise ClassDataError(f"Type {t.tag} factor {list(f.poly)} needs a block sign", "block sign")
            signs.append(given)
        else:
            if given is not None and given != forced:
                rule = {"V": "Type V: plus type only"}.get(t.tag, f"Type {t.tag}: sign (-1)^k")
                raise ClassDataError(
                    f"factor {list(f.poly)} of Type {t.tag} and multiplicity {f.mult} has block sign {forced}",
                    rule,
                )
            signs.append(forced)
    if fam in ("CSO+", "CSO-"):
        # one sign per Type V pair, per Type I/II/III/IV factor
        total = 1
        seen: set[int] = set()
        for i, (t, s) in enumerate(zip(types, signs)):
            if i in seen:
                continue
            if t.tag == "V":
                seen.add(index[star_alpha_raw(F, data.factors[i].poly, a)])
            seen.add(i)
            total *= 1 if s == "+" else -1
        want = 1 if fam == "CSO+" else -1
        if total != want:
            rule = "Type V: none for the minus type" if all(t.tag == "V" for t in types) else "global sign"
            raise ClassDataError(
                f"product of block signs is {'+' if total == 1 else '-'}, ambient type is {fam[-1]}", rule
            )
    if data.class_tag not in (None, 1, 2):
        raise ClassDataError("class_tag must be 1 or 2", "schema")
    return ValidatedClass(data, F, tuple(types), tuple(signs), index)


def _v(x: SemisimpleClassData | ValidatedClass) -> ValidatedClass:
    return x if isinstance(x, ValidatedClass) else validate_class(x)


# ---------------------------------------------------------------------------
# centralizer shapes


@dataclass(frozen=True)
class CentralizerShape:
    factors: tuple[ClassicalFactor, ...]

    def order(self, q: int) -> int:
        out = 1
        for f in self.factors:
            out *= f.order(q)
        return out

    def __str__(self) -> str:
        return " x ".join(str(f) for f in self.factors) or "1"


def _conformal_factor(v: ValidatedClass, i: int) -> ClassicalFactor | None:
    """Factor of ``C^o(s)`` attached to ``mu_i`` (None for the second member of a pair)."""
    f = v.factors[i]
    t = v.types[i]
    d = len(f.poly) - 1
    k = f.mult
    fam = v.family
    sp = fam == "CSp"
    if t.tag == "I":
        if fam == "SO" and f.poly == (v.F.neg(1), 1):
            return ClassicalFactor("SO", k, 1, (i,))
        return ClassicalFactor("Sp" if sp else "SO" + v.signs[i], k, 1, (i,))  # type: ignore[operator]
    if t.tag == "II":
        return ClassicalFactor("Sp" if sp else "SO" + v.signs[i], k, 2, (i,))  # type: ignore[operator]
    if t.tag == "III":
        return ClassicalFactor("GU", k, 1, (i,))
    if t.tag == "IV":
        return ClassicalFactor("GU", k, t.e, (i,))
    j = v.partner(i)
    assert j is not None
    if j < i:
        return None
    return ClassicalFactor("GL", k, d, (i, j))


def centralizer_shape(data: SemisimpleClassData | ValidatedClass) -> CentralizerShape:
    """Classical factors of the connected centralizer ``C^o(s)^F``.

    For the conformal families these are the factors of the centralizer in
    the derived group; the central torus is accounted for separately.
    """
    v = _v(data)
    out: list[ClassicalFactor] = []
    if v.family == "GL":
        for i, f in enumerate(v.factors):
            out.append(ClassicalFactor("GL", f.mult, len(f.poly) - 1, (i,)))
    elif v.family == "GU":
        for i, f in enumerate(v.factors):
            j = v.partner(i)
            assert j is not None
            d = len(f.poly) - 1
            if j == i:
                out.append(ClassicalFactor("GU", f.mult, d, (i,)))
            elif i < j:
                out.append(ClassicalFactor("GL", f.mult, 2 * d, (i, j)))
    else:
        for i in range(len(v.factors)):
            c = _conformal_factor(v, i)
            if c is not None:
                out.append(c)
    # record negation partners for display
    if v.family in ("CSp", "CSO+", "CSO-") and v.F.p != 2:
        where = {}
        for idx, c in enumerate(out):
            for o in c.origin:
                where[o] = idx
        pair_id = 0
        done = set()
        for idx, c in enumerate(out):
            j = v.negative(c.origin[0])
            if j is None or idx in done:
                continue
            jdx = where[j]
            if jdx != idx and jdx not in done:
                out[idx] = replace(c, pair=pair_id)
                out[jdx] = replace(out[jdx], pair=pair_id)
                done.update((idx, jdx))
                pair_id += 1
    return CentralizerShape(tuple(out))


def shape_factor_index(shape: CentralizerShape) -> dict[int, int]:
    """Map from data factor index to shape factor index."""
    out = {}
    for idx, c in enumerate(shape.factors):
        for o in c.origin:
            out[o] = idx
    return out


# ---------------------------------------------------------------------------
# scaling symmetries (GL and GU families)


def _preserves(v: ValidatedClass, g: int) -> bool:
    F = v.F
    for f in v.factors:
        if v.mult_of(scale_raw(F, f.poly, g)) != f.mult:
            return False
    return True


def _scalars(v: ValidatedClass) -> list[int]:
    F = v.F
    if v.family == "GL":
        return [x for x in range(1, F.order)]
    q = v.q
    return [x for x in range(1, F.order) if F.pow(x, q + 1) == 1]


def _cyclic_generator(F: Field, elems: list[int]) -> int:
    best = 1
    for x in elems:
        if F.element_order(x) > F.element_order(best):
            best = x
    if F.element_order(best) != len(elems):
        raise AssertionError("stabilizer is not cyclic")
    return best


def scaling_stabilizer(data: SemisimpleClassData | ValidatedClass, setwise: bool = False) -> tuple[int, int]:
    """``(generator, order)`` of the scalars ``g`` with ``g.s ~ s``.

    With ``setwise=True`` only the set of factors has to be preserved (the
    group generated by ``beta`` in the special linear case).
    """
    v = _v(data)
    if v.family not in ("GL", "GU"):
        raise ClassDataError("scaling symmetries are defined for GL and GU data", "family")
    F = v.F
    polys = set(v.polys())
    elems = []
    for g in _scalars(v):
        if setwise:
            if all(scale_raw(F, mu, g) in polys for mu in polys):
                elems.append(g)
        elif _preserves(v, g):
            elems.append(g)
    gen = _cyclic_generator(F, elems)
    return gen, len(elems)


def _scaling_action(v: ValidatedClass, shape: CentralizerShape, g: int, name: str) -> ActionDescriptor:
    F = v.F
    where = shape_factor_index(shape)
    n = len(shape.factors)
    perm = list(range(n))
    for idx, c in enumerate(shape.factors):
        img = v.index[scale_raw(F, v.factors[c.origin[0]].poly, g)]
        perm[idx] = where[img]
    return ActionDescriptor(tuple(perm), ("id",) * n, name)


def factor_orbits(data: SemisimpleClassData | ValidatedClass) -> list:
    """Orbits of the component group on the factors (GL/GU families)."""
    v = _v(data)
    g, _ = scaling_stabilizer(v)
    return orbits_raw(v.F, v.polys(), g, unitary=v.family == "GU")


# ---------------------------------------------------------------------------
# exceptional elements, negation, component groups


def _orthogonal_conformal(v: ValidatedClass) -> bool:
    return v.family in ("CSO+", "CSO-")


def is_exceptional(data: SemisimpleClassData | ValidatedClass) -> bool:
    """The exceptional elements of ``CSO_{2m}`` (full centralizer in a split Levi
    although every factor is self-dual)."""
    v = _v(data)
    if not _orthogonal_conformal(v):
        raise ClassDataError("exceptional elements are defined for CSO data only", "family")
    if v.m < 2:
        return False
    if not all(v.self_dual(i) for i in range(len(v.factors))):
        return False
    found = any(
        t.tag == "I" and f.mult == 2 and s == "+" for f, t, s in zip(v.factors, v.types, v.signs)
    )
    if not found:
        return False
    if v.q % 2 and v.square_root_polynomial_divides:
        return False
    return True


def degenerate_plus_blocks(data: SemisimpleClassData | ValidatedClass) -> list[int]:
    """Factors of Type I or II with multiplicity 2 on a plus-type block (CSO only).

    A non-empty list means the connected centralizer lies in a proper split
    Levi subgroup stabilizing two isotropic halves of that block.
    """
    v = _v(data)
    if not _orthogonal_conformal(v) or v.m < 2:
        return []
    return [
        i
        for i, (f, t, s) in enumerate(zip(v.factors, v.types, v.signs))
        if t.tag in ("I", "II") and f.mult == 2 and s == "+"
    ]


@dataclass(frozen=True)
class NegationBlock:
    """One orthogonal summand for the ``s ~ -s`` analysis.

    ``placements`` lists the achievable positions of a multiplier-1
    conjugating element restricted to the block: ``0`` inside the special
    group, ``1`` outside it.
    """

    kind: str
    members: tuple[int, ...]
    placements: frozenset[int]


@dataclass(frozen=True)
class NegationResult:
    value: bool
    blocks: tuple[NegationBlock, ...] = ()
    parities: frozenset[int] = frozenset()  # achievable overall placements
    reason: str = ""


def negation_blocks(v: ValidatedClass) -> list[NegationBlock] | None:
    """Split ``V`` into blocks permuted by negation and star; None if some
    multiplicity is not preserved by negation."""
    for i, f in enumerate(v.factors):
        j = v.negative(i)
        if j is None or v.factors[j].mult != f.mult:
            return None
    blocks = []
    done: set[int] = set()
    for i, f in enumerate(v.factors):
        if i in done:
            continue
        j = v.negative(i)
        si = v.partner(i)
        sj = v.partner(j)  # type: ignore[arg-type]
        members = tuple(sorted({i, j, si, sj}))  # type: ignore[arg-type]
        done.update(members)
        t = v.types[i].tag
        d = len(f.poly) - 1
        if t == "I":
            if j == i:  # cannot happen for q odd
                raise AssertionError("Type I factor equal to its negative")
            ok = v.signs[i] == v.signs[j] if _orthogonal_conformal(v) else True
            blocks.append(NegationBlock("I", members, frozenset({0, 1}) if ok else frozenset()))
        elif t == "II":
            # the conjugator is semilinear over F_q(sqrt(alpha)); it has
            # determinant -1 exactly when the block is of minus type
            out = _orthogonal_conformal(v) and v.signs[i] == "-"
            blocks.append(NegationBlock("II", members, frozenset({1 if out else 0})))
        elif t == "III":
            blocks.append(NegationBlock("III", members, frozenset({f.mult % 2})))
        elif t == "IV":
            kind = "IV" if j != i else "IV-self"
            if j == i:
                blocks.append(NegationBlock(kind, members, frozenset({f.mult % 2})))
            else:
                blocks.append(NegationBlock(kind, members, frozenset({0})))
        else:
            if j == si:
                blocks.append(NegationBlock("V", members, frozenset({(d * f.mult) % 2})))
            elif j == i:
                blocks.append(NegationBlock("V-self", members, frozenset({0})))
            else:
                blocks.append(NegationBlock("V-double", members, frozenset({0})))
    return blocks


def conjugate_to_negative(data: SemisimpleClassData | ValidatedClass) -> NegationResult:
    """Is ``s`` conjugate to ``-s`` in the conformal group (q odd)?

    CSp: exactly when negation preserves all multiplicities.  CSO: in
    addition every block must admit a multiplier-1 conjugator, and the
    number of blocks where it lies outside the special group must be even.
    """
    v = _v(data)
    if v.family not in ("CSp", "CSO+", "CSO-"):
        raise ClassDataError("negation conjugacy is decided for conformal families", "family")
    if v.q % 2 == 0:
        raise ClassDataError("s and -s coincide for q even", "q-parity")
    blocks = negation_blocks(v)
    if blocks is None:
        return NegationResult(False, reason="k_mu != k_mu' for some mu")
    if v.family == "CSp":
        return NegationResult(True, tuple(blocks), frozenset({0}), "k_mu = k_mu' for all mu")
    parities = {0}
    for b in blocks:
        parities = {(p + x) % 2 for p in parities for x in b.placements}
    parities_f = frozenset(parities)
    if not all(b.placements for b in blocks):
        bad = [b.kind for b in blocks if not b.placements]
        return NegationResult(False, tuple(blocks), frozenset(), f"no conjugator on block(s) {bad}")
    if 0 not in parities_f:
        return NegationResult(False, tuple(blocks), parities_f, "every conjugator lies outside CSO")
    return NegationResult(True, tuple(blocks), parities_f, "conjugator inside CSO")


@dataclass(frozen=True)
class ComponentGroupInfo:
    """The group ``A^F`` acting on the labels of ``C^o(s)^F``.

    ``structure`` is ``trivial``, ``C<n>`` or ``C2xC2``.  For cyclic groups
    ``generators`` holds one generator; for ``C2xC2`` it holds ``a`` then
    ``b``.  ``names`` gives the generator names.
    """

    order: int
    structure: str
    generators: tuple[ActionDescriptor, ...]
    names: tuple[str, ...]
    factors: tuple[ClassicalFactor, ...]

    def elements(self) -> list[tuple[str, ActionDescriptor]]:
        n = len(self.factors)
        one = ActionDescriptor.identity(n)
        if self.structure == "trivial":
            return [("1", one)]
        if self.structure == "C2xC2":
            a, b = self.generators
            return [("1", one), ("a", a), ("b", b), ("ab", a.then(b))]
        g = self.generators[0]
        name = self.names[0]
        out = [("1", one)]
        cur = one
        for i in range(1, self.order):
            cur = cur.then(g)
            out.append((name if i == 1 else f"{name}^{i}", cur))
        return out


def _action(n: int, moves: dict[int, tuple[int, str]], name: str) -> ActionDescriptor:
    perm = list(range(n))
    flags = ["id"] * n
    for i, (j, fl) in moves.items():
        perm[i] = j
        flags[i] = fl
    return ActionDescriptor(tuple(perm), tuple(flags), name)


def _conformal_generators(v: ValidatedClass, shape: CentralizerShape, m_odd: bool) -> tuple[dict, dict]:
    """Moves of ``a`` (negation) and ``b`` (sign swap) on shape factors."""
    where = shape_factor_index(shape)
    a: dict[int, tuple[int, str]] = {}
    b: dict[int, tuple[int, str]] = {}
    for i, t in enumerate(v.types):
        x = where[i]
        j = v.negative(i)
        y = where[j] if j is not None else None
        tag = t.tag
        if tag == "I":
            b[x] = (x, "g")
            if y is None:
                continue
            if m_odd and _orthogonal_conformal(v):
                # (L1, L2) -> (L2, L1'): the lower factor picks up the graph flip
                a[x] = (y, "g" if x < y else "id")
            else:
                a[x] = (y, "id")
        elif tag == "II":
            b[x] = (x, "g")
        elif y is not None and y != x:
            a[x] = (y, "id")
    return a, b


def component_group(data: SemisimpleClassData | ValidatedClass) -> ComponentGroupInfo:
    """Structure of ``A^F`` and the action of its generators on shape factors."""
    v = _v(data)
    shape = centralizer_shape(v)
    n = len(shape.factors)
    fs = shape.factors
    triv = ComponentGroupInfo(1, "trivial", (), (), fs)
    fam = v.family
    if fam in ("GL", "GU"):
        g, order = scaling_stabilizer(v)
        if order == 1:
            return triv
        return ComponentGroupInfo(order, f"C{order}", (_scaling_action(v, shape, g, "a"),), ("a",), fs)
    if fam == "SO":
        if v.q % 2 == 0:
            return triv
        minus_one = (1, 1)
        j = v.index.get(minus_one)
        if j is None:
            return triv
        x = shape_factor_index(shape)[j]
        return ComponentGroupInfo(2, "C2", (_action(n, {x: (x, "g")}, "b"),), ("b",), fs)
    if v.q % 2 == 0:
        return triv
    neg = conjugate_to_negative(v)
    m_odd = v.m % 2 == 1
    amoves, bmoves = _conformal_generators(v, shape, m_odd)
    if fam == "CSp":
        if not neg.value:
            return triv
        return ComponentGroupInfo(2, "C2", (_action(n, amoves, "a"),), ("a",), fs)
    divides = v.square_root_polynomial_divides
    if neg.value:
        if m_odd:
            return ComponentGroupInfo(4, "C4", (_action(n, amoves, "a"),), ("a",), fs)
        if divides:
            return ComponentGroupInfo(
                4, "C2xC2", (_action(n, amoves, "a"), _action(n, bmoves, "b")), ("a", "b"), fs
            )
        return ComponentGroupInfo(2, "C2", (_action(n, amoves, "a"),), ("a",), fs)
    if divides:
        return ComponentGroupInfo(2, "C2", (_action(n, bmoves, "b"),), ("b",), fs)
    return triv


def centralizer_component_order(data: SemisimpleClassData | ValidatedClass) -> int:
    """``|C_G(s) : C^o_G(s)|`` for the plain centralizer in the family's group."""
    v = _v(data)
    if v.family in ("GL", "GU", "CSp") or v.q % 2 == 0:
        return 1
    if v.family == "SO":
        return 2 if (1, 1) in v.index else 1
    return 2 if v.square_root_polynomial_divides else 1


# ---------------------------------------------------------------------------
# Levi containment


NONE = "NONE"
CONNECTED_ONLY = "CONNECTED_ONLY"
FULL = "FULL"


def levi_containment(data: SemisimpleClassData | ValidatedClass) -> str:
    """Whether the centralizer lies in a proper split Levi subgroup.

    ``FULL``: the full centralizer does (for GU/GL the centralizer extended
    by the component group).  ``CONNECTED_ONLY``: only the connected
    centralizer does.  ``NONE``: neither.
    """
    v = _v(data)
    fam = v.family
    if fam == "GL":
        orbits = factor_orbits(v)
        if len(v.factors) == 1:
            return NONE
        if len(orbits) > 1:
            return FULL
        return CONNECTED_ONLY
    if fam == "GU":
        orbits = factor_orbits(v)
        if any(o.kind == "ls" for o in orbits):
            return FULL
        if any(o.kind == "lt" for o in orbits):
            return CONNECTED_ONLY
        return NONE
    non_dual = any(not v.self_dual(i) for i in range(len(v.factors)))
    if fam in ("CSp", "SO"):
        return FULL if non_dual else NONE
    if non_dual or is_exceptional(v):
        return FULL
    if degenerate_plus_blocks(v):
        return CONNECTED_ONLY
    return NONE


# ---------------------------------------------------------------------------
# orders for the oracle


COMPATIBLE_KINDS = {
    "GL": ("GL", "SL"),
    "GU": ("GU", "SU"),
    "CSp": ("CSp", "Sp"),
    "CSO+": ("CSO+", "SO+"),
    "CSO-": ("CSO-", "SO-"),
    "SO": ("SO",),
}


def predicted_centralizer_order(data: SemisimpleClassData | ValidatedClass, kind: str) -> int:
    """``|C_H(s)|`` for ``s`` in the finite matrix group ``H`` of the given kind."""
    v = _v(data)
    if kind not in COMPATIBLE_KINDS[v.family]:
        raise ClassDataError(f"group kind {kind} does not match family {v.family}", "family")
    q = v.q
    shape = centralizer_shape(v).order(q)
    if kind == "SL":
        return shape // (q - 1)
    if kind == "SU":
        return shape // (q + 1)
    if kind in ("GL", "GU", "SO"):
        return shape * centralizer_component_order(v)
    if kind in ("Sp", "SO+", "SO-"):
        if v.alpha != 1:
            raise ClassDataError("isometry groups need multiplier 1", "multiplier")
        return shape * centralizer_component_order(v)
    return (q - 1) * shape * centralizer_component_order(v)


def class_count(data: SemisimpleClassData | ValidatedClass, kind: str) -> int:
    """Number of conjugacy classes of the matrix group ``kind`` carrying this data.

    In the special (conformal) orthogonal groups in odd characteristic the
    orthogonal class splits in two unless some factor is of Type I, whose
    eigenspace supplies a reflection in the centralizer.
    """
    v = _v(data)
    if kind not in COMPATIBLE_KINDS[v.family]:
        raise ClassDataError(f"group kind {kind} does not match family {v.family}", "family")
    if kind in ("SO+", "SO-", "CSO+", "CSO-") and v.q % 2 and all(t.tag != "I" for t in v.types):
        return 2
    return 1


def ambient_order(data: SemisimpleClassData | ValidatedClass) -> int:
    v = _v(data)
    fam = v.family
    n = v.data.dimension
    kind = {"GL": "GL", "GU": "GU", "CSp": "CSp", "CSO+": "CSO+", "CSO-": "CSO-", "SO": "SO"}[fam]
    return matrix_group_order(kind, n, v.q)


# ---------------------------------------------------------------------------
# enumeration


def enumerate_classes(family: str, q: int, dim: int, alpha: int | None = None) -> list[SemisimpleClassData]:
    """All valid class data of the family in the given dimension.

    For orthogonal families every admissible choice of free block signs is
    listed.  ``alpha`` restricts the multiplier (default: all, or 1 where the
    family has none).
    """
    from hcprim.gf import irreducible_polys

    Fq = field_of_order(q)
    F = quadratic_extension(Fq) if family == "GU" else Fq
    alphas = [alpha] if alpha is not None else ([1] if family in ("GL", "GU", "SO") else list(range(1, q)))
    out: list[SemisimpleClassData] = []
    for a in alphas:
        # units: tuples of polynomials that must share a multiplicity
        units: list[tuple[Poly, ...]] = []
        seen: set[Poly] = set()
        for d in range(1, dim + 1):
            for mu in irreducible_polys(F, d):
                if mu[0] == 0 or mu in seen:
                    continue
                if family == "GL":
                    partner = mu
                elif family == "GU":
                    partner = dagger_raw(F, mu)
                else:
                    partner = star_alpha_raw(F, mu, a)
                unit = tuple(sorted({mu, partner}))
                seen.update(unit)
                units.append(unit)
        sizes = [sum(len(mu) - 1 for mu in u) for u in units]

        def rec(idx: int, left: int, chosen: list[tuple[tuple[Poly, ...], int]]) -> None:
            if left == 0:
                _emit(chosen)
                return
            for j in range(idx, len(units)):
                k = 1
                while sizes[j] * k <= left:
                    chosen.append((units[j], k))
                    rec(j + 1, left - sizes[j] * k, chosen)
                    chosen.pop()
                    k += 1

        def _emit(chosen: list[tuple[tuple[Poly, ...], int]]) -> None:
            base = [ClassFactor(mu, k) for unit, k in chosen for mu in unit]
            data = SemisimpleClassData(family, q, _sorted_factors(base), a)
            for signed in _sign_choices(data, F):
                try:
                    validate_class(signed)
                except ClassDataError:
                    continue
                out.append(signed)

        rec(0, dim, [])
    return out


def _sign_choices(data: SemisimpleClassData, F: Field) -> Iterable[SemisimpleClassData]:
    if data.family not in ("CSO+", "CSO-", "SO"):
        yield data
        return
    a = data.alpha
    free = []
    for i, f in enumerate(data.factors):
        t = classify_type_raw(F, f.poly, a)
        if t.tag in ("I", "II") and not (data.family == "SO" and f.poly == (F.neg(1), 1)):
            free.append(i)
    for choice in product("+-", repeat=len(free)):
        fs = list(data.factors)
        for i, s in zip(free, choice):
            fs[i] = replace(fs[i], block_sign=s)
        yield data.with_factors(fs)


def characteristic_polynomial(data: SemisimpleClassData) -> Poly:
    F = data.field
    out: Poly = (1,)
    for f in data.factors:
        for _ in range(f.mult):
            out = p_mul(F, out, f.poly)
    return out


# ---------------------------------------------------------------------------
# JSON


def _coeff_to_json(F: Field, c: int) -> list[int]:
    return list(F.digits(c))


def _coeff_from_json(F: Field, obj: object) -> int:
    if isinstance(obj, int):
        if not 0 <= obj < F.order:
            raise ClassDataError(f"coefficient {obj} is not in F_{F.order}", "schema")
        return obj
    if isinstance(obj, list) and all(isinstance(x, int) for x in obj):
        if len(obj) > F.degree or any(not 0 <= x < (F.base.order if F.base else F.p) for x in obj):
            raise ClassDataError(f"coefficient digits {obj} out of range", "schema")
        return F.from_digits(obj)
    raise ClassDataError(f"bad coefficient {obj!r}", "schema")


def poly_to_json(F: Field, mu: Poly) -> list[list[int]]:
    return [_coeff_to_json(F, c) for c in mu]


def poly_from_json(F: Field, obj: object) -> Poly:
    if not isinstance(obj, list) or not obj:
        raise ClassDataError("a polynomial is a non-empty array of coefficients", "schema")
    return tuple(_coeff_from_json(F, c) for c in obj)


def class_to_json(data: SemisimpleClassData) -> dict:
    F = data.field
    Fq = field_of_order(data.q)
    out: dict = {"family": data.family}
    if data.target is not None:
        out["target"] = data.target
    out["n" if data.family in ("GL", "GU") else "m"] = data.m
    out["q"] = data.q
    out["alpha"] = _coeff_to_json(Fq, data.alpha)
    fs = []
    for f in data.factors:
        rec: dict = {"poly": poly_to_json(F, f.poly), "mult": f.mult}
        if f.block_sign is not None:
            rec["block_sign"] = f.block_sign
        fs.append(rec)
    out["factors"] = fs
    if data.class_tag is not None:
        out["class_tag"] = data.class_tag
    return out


def class_from_json(obj: dict) -> SemisimpleClassData:
    """Parse (without validating) the class-data JSON object."""
    if not isinstance(obj, dict):
        raise ClassDataError("class data must be a JSON object", "schema")
    try:
        family = obj["family"]
        q = int(obj["q"])
        raw_factors = obj["factors"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ClassDataError(f"missing or malformed field: {exc}", "schema") from exc
    if family not in FAMILIES:
        raise ClassDataError(f"unknown family {family!r}", "family")
    try:
        Fq = field_of_order(q)
    except FieldError as exc:
        raise ClassDataError(str(exc), "field") from exc
    F = quadratic_extension(Fq) if family == "GU" else Fq
    alpha = _coeff_from_json(Fq, obj.get("alpha", 1))
    if alpha == 0:
        raise ClassDataError("multiplier must be nonzero", "multiplier")
    if not isinstance(raw_factors, list):
        raise ClassDataError("factors must be an array", "schema")
    fs = []
    for rec in raw_factors:
        if not isinstance(rec, dict) or "poly" not in rec or "mult" not in rec:
            raise ClassDataError("each factor needs 'poly' and 'mult'", "schema")
        fs.append(ClassFactor(poly_from_json(F, rec["poly"]), int(rec["mult"]), rec.get("block_sign")))
    rank = obj.get("n", obj.get("m"))
    return SemisimpleClassData(
        family, q, _sorted_factors(fs), alpha, obj.get("target"), obj.get("class_tag"),
        int(rank) if rank is not None else None,
    )


def class_dumps(data: SemisimpleClassData) -> str:
    return json.dumps(class_to_json(data), sort_keys=True)


__all__ = [
    "class_count",
    "CONNECTED_ONLY",
    "FULL",
    "NONE",
    "CentralizerShape",
    "ClassDataError",
    "ClassFactor",
    "ComponentGroupInfo",
    "NegationResult",
    "SemisimpleClassData",
    "ValidatedClass",
    "centralizer_shape",
    "class_from_json",
    "class_to_json",
    "classical_order",
    "component_group",
    "conjugate_to_negative",
    "enumerate_classes",
    "is_exceptional",
    "levi_containment",
    "make_class",
    "predicted_centralizer_order",
    "validate_class",
]
