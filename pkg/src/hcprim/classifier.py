"""Harish-Chandra primitivity decisions from class data and unipotent labels.

``classify(data, label)`` takes validated semisimple class data on the dual
side (a lift to ``GL``, ``GU``, a conformal group, or ``SO_{2m+1}``) and a
unipotent label of the connected centralizer, one entry per factor of
``centralizer_shape(data)``, and decides whether the characters of the
matching Lusztig series orbit are Harish-Chandra primitive.

``classify_exceptional_table`` does the same for the listed semisimple
class types of adjoint ``E6``, ``2E6`` and ``E7`` using the cyclotomic
order polynomials of the relevant central tori.
"""
from __future__ import annotations

import json
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from hcprim.centralizers import (
    ClassDataError,
    ComponentGroupInfo,
    SemisimpleClassData,
    ValidatedClass,
    centralizer_shape,
    component_group,
    conjugate_to_negative,
    degenerate_plus_blocks,
    factor_orbits,
    is_exceptional,
    poly_to_json,
    scaling_stabilizer,
    shape_factor_index,
    validate_class,
)
from hcprim.labels import (
    ClassicalFactor,
    DLabel,
    LabelError,
    apply_auto,
    bipartitions,
    check_entry,
    d_labels,
    entry_from_json,
    entry_to_json,
    iter_label_tuples,
    make_partition,
    partitions,
)
from hcprim.polyops import orbits_raw

PRIMITIVE = "PRIMITIVE"
IMPRIMITIVE = "IMPRIMITIVE"

# every case tag with the outcome it forces
CASES: dict[str, str] = {
    "sl-transitive-equal": PRIMITIVE,
    "sl-not-transitive": IMPRIMITIVE,
    "sl-unequal-multiplicities": IMPRIMITIVE,
    "sl-unequal-labels": IMPRIMITIVE,
    "su-isotropic-orbit": IMPRIMITIVE,
    "su-all-unitary": PRIMITIVE,
    "su-2adic-positive": PRIMITIVE,
    "su-2adic-nonpositive": IMPRIMITIVE,
    "sp-all-self-dual": PRIMITIVE,
    "sp-non-self-dual": IMPRIMITIVE,
    "spin-odd-all-self-dual": PRIMITIVE,
    "spin-odd-generic-pair": IMPRIMITIVE,
    "spin-odd-not-negation-conjugate": IMPRIMITIVE,
    "spin-odd-stabilizer-trivial": IMPRIMITIVE,
    "spin-odd-stabilizer-nontrivial": PRIMITIVE,
    "spin-even-all-self-dual": PRIMITIVE,
    "spin-even-generic-pair": IMPRIMITIVE,
    "spin-even-not-negation-conjugate": IMPRIMITIVE,
    "spin-even-critical-exceptional": IMPRIMITIVE,
    "spin-even-critical-degenerate-symbol": IMPRIMITIVE,
    "spin-even-critical-primitive": PRIMITIVE,
    "spin-even-c2-stabilizer-trivial": IMPRIMITIVE,
    "spin-even-c2-stabilizer-nontrivial": PRIMITIVE,
    "spin-even-negation-all-self-dual": PRIMITIVE,
    "spin-even-c4-moved": IMPRIMITIVE,
    "spin-even-c4-fixed": PRIMITIVE,
    "spin-even-klein-moved": IMPRIMITIVE,
    "spin-even-klein-fixed": PRIMITIVE,
    "even-char-all-self-dual": PRIMITIVE,
    "even-char-non-self-dual": IMPRIMITIVE,
    "even-char-exceptional": IMPRIMITIVE,
    "exceptional-star": PRIMITIVE,
    "exceptional-check": IMPRIMITIVE,
    "exceptional-dagger-fixed": PRIMITIVE,
    "exceptional-dagger-moved": IMPRIMITIVE,
}

DEFAULT_TARGETS = {
    ("GL", False): "SL",
    ("GU", False): "SU",
    ("SO", False): "Sp",
    ("CSp", False): "SpinOdd",
    ("CSO+", False): "SpinEvenPlus",
    ("CSO-", False): "SpinEvenMinus",
    ("GL", True): "SL",
    ("GU", True): "SU",
    ("SO", True): "EvenCharSp",
    ("CSp", True): "EvenCharSp",
    ("CSO+", True): "EvenCharSO+",
    ("CSO-", True): "EvenCharSO-",
}


@dataclass(frozen=True)
class Verdict:
    """Outcome of a primitivity decision.

    ``witness`` is present exactly for imprimitive outcomes and describes the
    split Levi subgroup ``L*`` through the polynomial orbit defining it.
    """

    outcome: str
    case: str
    witness: dict | None
    A_order: int
    A_lambda_order: int

    def __post_init__(self) -> None:
        if CASES.get(self.case) != self.outcome:
            raise AssertionError(f"case {self.case!r} does not force {self.outcome}")
        if (self.witness is not None) != (self.outcome == IMPRIMITIVE):
            raise AssertionError("witness must be present exactly for imprimitive verdicts")

    @property
    def primitive(self) -> bool:
        return self.outcome == PRIMITIVE

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome,
            "case": self.case,
            "witness": self.witness,
            "A_order": self.A_order,
            "A_lambda_order": self.A_lambda_order,
        }


def _verdict(case: str, A: int, A_lam: int, witness: dict | None = None) -> Verdict:
    return Verdict(CASES[case], case, witness if CASES[case] == IMPRIMITIVE else None, A, A_lam)


# ---------------------------------------------------------------------------
# stabilizers


@dataclass(frozen=True)
class Stabilizer:
    """``A_lambda`` as the list of named elements of ``A`` fixing the label."""

    order: int
    fixing: tuple[str, ...]
    group_order: int

    def fixes(self, name: str) -> bool:
        return name in self.fixing


def stabilizer_of_label(info: ComponentGroupInfo, label: Sequence[object]) -> Stabilizer:
    label = tuple(label)
    fixing = []
    for name, act in info.elements():
        try:
            img = apply_auto(label, act, info.factors)
        except LabelError as exc:
            raise ClassDataError(str(exc), "label") from exc
        if img == label:
            fixing.append(name)
    if info.order % len(fixing):
        raise AssertionError("stabilizer order does not divide the group order")
    return Stabilizer(len(fixing), tuple(fixing), info.order)


def _orbit_of_factor(v: ValidatedClass, info: ComponentGroupInfo, stab: Stabilizer, i: int) -> list[int]:
    """Data factors in the orbit of factor ``i`` under ``A_lambda``."""
    where = shape_factor_index(centralizer_shape(v))
    idx = {where[i]}
    for name, act in info.elements():
        if name in stab.fixing:
            idx.add(act.perm[where[i]])
    out = sorted(o for x in idx for o in info.factors[x].origin)
    return out


def _witness(v: ValidatedClass, members: Iterable[int], levi: str, **extra: object) -> dict:
    F = v.F
    w: dict = {"levi": levi, "orbit": [poly_to_json(F, v.factors[i].poly) for i in sorted(set(members))]}
    w.update(extra)
    return w


# ---------------------------------------------------------------------------
# label handling


def check_label(v: ValidatedClass, label: Sequence[object]) -> tuple:
    factors = centralizer_shape(v).factors
    label = tuple(label)
    if len(label) != len(factors):
        raise ClassDataError(
            f"label has {len(label)} entries but the centralizer has {len(factors)} factors", "label"
        )
    for f, e in zip(factors, label):
        try:
            check_entry(f, e)
        except LabelError as exc:
            raise ClassDataError(str(exc), "label") from exc
    return label


def label_from_json(data: SemisimpleClassData | ValidatedClass, obj: object) -> tuple:
    v = data if isinstance(data, ValidatedClass) else validate_class(data)
    factors = centralizer_shape(v).factors
    if not isinstance(obj, list) or len(obj) != len(factors):
        raise ClassDataError("label must be an array with one entry per centralizer factor", "label")
    try:
        return tuple(entry_from_json(f, e) for f, e in zip(factors, obj))
    except (LabelError, TypeError, ValueError, KeyError) as exc:
        raise ClassDataError(f"malformed label entry: {exc}", "label") from exc


def label_to_json(label: Sequence[object]) -> list:
    return [entry_to_json(e) for e in label]


def resolve_target(v: ValidatedClass) -> str:
    target = v.data.target
    if target is None:
        return DEFAULT_TARGETS[(v.family, v.q % 2 == 0)]
    return target


# ---------------------------------------------------------------------------
# the decision procedures


def classify(data: SemisimpleClassData | ValidatedClass, label: Sequence[object]) -> Verdict:
    v = data if isinstance(data, ValidatedClass) else validate_class(data)
    label = check_label(v, label)
    target = resolve_target(v)
    if target == "SL":
        return _classify_sl(v, label)
    if target == "SU":
        return _classify_su(v, label)
    if target == "Sp":
        return _classify_sp(v, label)
    if target == "SpinOdd":
        return _classify_spin_odd(v, label)
    if target in ("SpinEvenPlus", "SpinEvenMinus"):
        return _classify_spin_even(v, label)
    if target in ("EvenCharSp", "EvenCharSO+", "EvenCharSO-"):
        return _classify_even_char(v, label)
    raise ClassDataError(f"unsupported target {target!r}", "target")


def _classify_sl(v: ValidatedClass, label: tuple) -> Verdict:
    info = component_group(v)
    stab = stabilizer_of_label(info, label)
    A, A_lam = info.order, stab.order
    beta, _ = scaling_stabilizer(v, setwise=True)
    orbits = orbits_raw(v.F, v.polys(), beta)
    if len(orbits) > 1:
        members = [v.index[mu] for mu in orbits[0].members]
        return _verdict("sl-not-transitive", A, A_lam, _witness(v, members, "GL blocks over <beta>-orbits"))
    if len({f.mult for f in v.factors}) > 1:
        members = _orbit_of_factor(v, info, stab, 0)
        return _verdict("sl-unequal-multiplicities", A, A_lam, _witness(v, members, "GL blocks over A-orbits"))
    if len(set(label)) > 1:
        members = _orbit_of_factor(v, info, stab, 0)
        return _verdict("sl-unequal-labels", A, A_lam, _witness(v, members, "GL blocks over A_lambda-orbits"))
    return _verdict("sl-transitive-equal", A, A_lam)


def nu2(x: Fraction) -> int:
    """2-adic valuation of a nonzero rational."""
    if x == 0:
        raise ValueError("valuation of zero")
    out = 0
    num, den = x.numerator, x.denominator
    while num % 2 == 0:
        num //= 2
        out += 1
    while den % 2 == 0:
        den //= 2
        out -= 1
    return out


def su_choose_lt_length(lengths: Iterable[int]) -> int:
    """The lt-orbit length ``2e`` of minimal 2-adic valuation (smallest on ties)."""
    lengths = sorted(lengths)
    if not lengths:
        raise ValueError("no lt orbits")
    return min(lengths, key=lambda L: (nu2(Fraction(L)), L))


def su_primitive(two_e: int, A_lam: int, A: int) -> bool:
    return nu2(Fraction(two_e * A_lam, A)) > 0


def _classify_su(v: ValidatedClass, label: tuple) -> Verdict:
    info = component_group(v)
    stab = stabilizer_of_label(info, label)
    A, A_lam = info.order, stab.order
    orbits = factor_orbits(v)
    ls = [o for o in orbits if o.kind == "ls"]
    if ls:
        members = [v.index[mu] for mu in ls[0].members]
        return _verdict("su-isotropic-orbit", A, A_lam, _witness(v, members, "stabilizer of an isotropic pair"))
    lt = [o for o in orbits if o.kind == "lt"]
    if not lt:
        return _verdict("su-all-unitary", A, A_lam)
    two_e = su_choose_lt_length(o.length for o in lt)
    if su_primitive(two_e, A_lam, A):
        return _verdict("su-2adic-positive", A, A_lam)
    orb = next(o for o in lt if o.length == two_e)
    members = _orbit_of_factor(v, info, stab, v.index[orb.members[0]])
    return _verdict(
        "su-2adic-nonpositive", A, A_lam,
        _witness(v, members, "stabilizer of an isotropic pair", two_e=two_e, A_L_order=A_lam),
    )


def _non_self_dual(v: ValidatedClass) -> list[int]:
    return [i for i in range(len(v.factors)) if not v.self_dual(i)]


def _pair_members(v: ValidatedClass, i: int) -> list[int]:
    j = v.partner(i)
    return [i] if j is None else [i, j]


def _classify_sp(v: ValidatedClass, label: tuple) -> Verdict:
    info = component_group(v)
    stab = stabilizer_of_label(info, label)
    bad = _non_self_dual(v)
    if bad:
        return _verdict(
            "sp-non-self-dual", info.order, stab.order,
            _witness(v, _pair_members(v, bad[0]), "stabilizer of an isotropic pair"),
        )
    return _verdict("sp-all-self-dual", info.order, stab.order)


def _generic_pairs(v: ValidatedClass) -> list[int]:
    """Factors with ``mu != mu^{*alpha} != mu'``."""
    out = []
    for i in range(len(v.factors)):
        j = v.partner(i)
        if j != i and j != v.negative(i):
            out.append(i)
    return out


def _classify_spin_odd(v: ValidatedClass, label: tuple) -> Verdict:
    info = component_group(v)
    stab = stabilizer_of_label(info, label)
    A, A_lam = info.order, stab.order
    bad = _non_self_dual(v)
    if not bad:
        return _verdict("spin-odd-all-self-dual", A, A_lam)
    generic = _generic_pairs(v)
    if generic:
        w = _witness(v, _pair_members(v, generic[0]), "stabilizer of an isotropic pair", A_L_order=A)
        return _verdict("spin-odd-generic-pair", A, A_lam, w)
    neg = conjugate_to_negative(v)
    w = _witness(v, _pair_members(v, bad[0]), "stabilizer of an isotropic pair")
    if not neg.value:
        w["A_L_order"] = A
        return _verdict("spin-odd-not-negation-conjugate", A, A_lam, w)
    if A != 2:
        raise AssertionError("component group of order 2 expected")
    if A_lam == 1:
        w["A_L_order"] = 1
        return _verdict("spin-odd-stabilizer-trivial", A, A_lam, w)
    return _verdict("spin-odd-stabilizer-nontrivial", A, A_lam)


def _square_roots(v: ValidatedClass) -> list[int]:
    F = v.F
    return sorted(x for x in range(1, F.order) if F.mul(x, x) == v.alpha)


def degenerate_symbol_condition(v: ValidatedClass, label: tuple) -> bool:
    """``X - zeta`` with multiplicity 2 and ``X + zeta`` with multiplicity
    ``4k' > 0``, both on plus-type blocks, and the label entry on the
    ``X + zeta`` block degenerate."""
    F = v.F
    where = shape_factor_index(centralizer_shape(v))
    for z in _square_roots(v):
        nu = v.index.get((F.neg(z), 1))
        nu2_ = v.index.get((z, 1))  # X + zeta
        if nu is None or nu2_ is None:
            continue
        k, k2 = v.factors[nu].mult, v.factors[nu2_].mult
        if k != 2 or k2 % 4 or k2 == 0:
            continue
        if v.signs[nu] != "+" or v.signs[nu2_] != "+":
            continue
        entry = label[where[nu2_]]
        if isinstance(entry, DLabel) and entry.degenerate:
            return True
    return False


def _classify_spin_even(v: ValidatedClass, label: tuple) -> Verdict:
    info = component_group(v)
    stab = stabilizer_of_label(info, label)
    A, A_lam = info.order, stab.order
    bad = _non_self_dual(v)
    crit = degenerate_plus_blocks(v)
    if not bad and not crit:
        return _verdict("spin-even-all-self-dual", A, A_lam)
    generic = _generic_pairs(v)
    if generic:
        w = _witness(v, _pair_members(v, generic[0]), "stabilizer of an isotropic pair", A_L_order=A)
        return _verdict("spin-even-generic-pair", A, A_lam, w)
    neg = conjugate_to_negative(v)
    if not neg.value:
        if bad:
            w = _witness(v, _pair_members(v, bad[0]), "stabilizer of an isotropic pair", A_L_order=A)
            return _verdict("spin-even-not-negation-conjugate", A, A_lam, w)
        levi = "stabilizer of isotropic halves of a plus-type block"
        if is_exceptional(v):
            return _verdict("spin-even-critical-exceptional", A, A_lam, _witness(v, crit[:1], levi, A_L_order=A))
        if degenerate_symbol_condition(v, label):
            return _verdict(
                "spin-even-critical-degenerate-symbol", A, A_lam, _witness(v, crit[:1], levi, A_L_order=1)
            )
        return _verdict("spin-even-critical-primitive", A, A_lam)
    if not v.square_root_polynomial_divides:
        if A != 2:
            raise AssertionError("component group of order 2 expected")
        if A_lam == 1:
            w = _witness(v, _pair_members(v, bad[0]) if bad else crit[:1], "stabilizer of an isotropic pair",
                         A_L_order=1)
            return _verdict("spin-even-c2-stabilizer-trivial", A, A_lam, w)
        return _verdict("spin-even-c2-stabilizer-nontrivial", A, A_lam)
    if not bad:
        return _verdict("spin-even-negation-all-self-dual", A, A_lam)
    w = _witness(v, _pair_members(v, bad[0]), "stabilizer of an isotropic pair", A_L_order=2)
    if info.structure == "C4":
        if not stab.fixes("a"):
            return _verdict("spin-even-c4-moved", A, A_lam, w)
        return _verdict("spin-even-c4-fixed", A, A_lam)
    if info.structure != "C2xC2":
        raise AssertionError(f"unexpected component group {info.structure}")
    if not stab.fixes("a") and not stab.fixes("ab"):
        return _verdict("spin-even-klein-moved", A, A_lam, w)
    return _verdict("spin-even-klein-fixed", A, A_lam)


def _classify_even_char(v: ValidatedClass, label: tuple) -> Verdict:
    info = component_group(v)
    stab = stabilizer_of_label(info, label)
    bad = _non_self_dual(v)
    if bad:
        w = _witness(v, _pair_members(v, bad[0]), "stabilizer of an isotropic pair")
        return _verdict("even-char-non-self-dual", info.order, stab.order, w)
    if v.family in ("CSO+", "CSO-") and is_exceptional(v):
        w = _witness(v, degenerate_plus_blocks(v)[:1], "stabilizer of isotropic halves of a plus-type block")
        return _verdict("even-char-exceptional", info.order, stab.order, w)
    return _verdict("even-char-all-self-dual", info.order, stab.order)


# ---------------------------------------------------------------------------
# whole series


@dataclass(frozen=True)
class SeriesEntry:
    representative: tuple
    orbit_size: int
    verdict: Verdict


def label_orbits(info: ComponentGroupInfo) -> list[list[tuple]]:
    """Orbits of ``A`` on all label tuples, in enumeration order."""
    acts = [a for _, a in info.elements()]
    seen: set[tuple] = set()
    out = []
    for lab in iter_label_tuples(info.factors):
        if lab in seen:
            continue
        orb = sorted({apply_auto(lab, a, info.factors) for a in acts}, key=repr)
        seen.update(orb)
        rep = lab
        out.append([rep] + [x for x in orb if x != rep])
    return out


def _classify_orbit(args: tuple) -> SeriesEntry:
    data, orbit = args
    first = classify(data, orbit[0])
    key = _verdict_key(first)
    for lab in orbit[1:]:
        if _verdict_key(classify(data, lab)) != key:
            raise AssertionError(f"verdict is not constant on the orbit of {orbit[0]!r}")
    return SeriesEntry(orbit[0], len(orbit), first)


def _verdict_key(v: Verdict) -> tuple:
    # the witness may name a different member of the same orbit
    return (v.outcome, v.case, v.A_order, v.A_lambda_order)


def enumerate_series(data: SemisimpleClassData, jobs: int = 1) -> list[SeriesEntry]:
    """One verdict per ``A``-orbit of unipotent labels of ``C^o(s)^F``."""
    v = validate_class(data)
    info = component_group(v)
    work = [(v.data, orbit) for orbit in label_orbits(info)]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(_classify_orbit, work))
    return [_classify_orbit(w) for w in work]


# ---------------------------------------------------------------------------
# exceptional groups


STAR, DAGGER, CHECK = "STAR", "DAGGER", "CHECK"
EXCEPTIONAL_RANK = {"E6": 6, "2E6": 6, "E7": 7}

# triality s0 -> s1 -> s3 -> s0 on the principal-series labels of D4;
# recomputed from the Weyl group character table in the test suite
_TRIALITY_PAIRS = (
    ("11", "11", False, "11", "11", True),
    ("11", "11", True, "", "211", False),
    ("", "211", False, "11", "11", False),
    ("2", "2", False, "2", "2", True),
    ("2", "2", True, "", "31", False),
    ("", "31", False, "2", "2", False),
)


def _dl(left: str, right: str, prime: bool) -> DLabel:
    return DLabel(tuple(int(c) for c in left), tuple(int(c) for c in right), prime)


TRIALITY: dict[DLabel, DLabel] = {lab: lab for lab in d_labels(4)}
TRIALITY.update({_dl(*p[:3]): _dl(*p[3:]) for p in _TRIALITY_PAIRS})

# principal-series labels of 3D4(q): characters of the relative Weyl group G2
G2_LABELS = ("phi1,0", "phi1,6", "phi1,3'", "phi1,3''", "phi2,1", "phi2,2")


@dataclass(frozen=True)
class Component:
    """A simple component of ``[C^o, C^o]^F`` such as ``A_2(-q)`` or ``D_4(q)``."""

    kind: str  # "A", "D4", "2D4" or "3D4"
    rank: int
    field: str  # "q", "-q", "q^2", ...

    def labels(self) -> list:
        if self.kind == "A":
            return list(partitions(self.rank + 1))
        if self.kind == "D4":
            return list(d_labels(4))
        if self.kind == "2D4":
            return list(bipartitions(3))
        if self.kind == "3D4":
            return list(G2_LABELS)
        raise ValueError(f"unknown component kind {self.kind!r}")

    def __str__(self) -> str:
        base = {"A": f"A{self.rank}", "D4": "D4", "2D4": "2D4", "3D4": "3D4"}[self.kind]
        return f"{base}({self.field})"


_COMPONENT_RE = re.compile(r"(2D4|3D4|D4|A(\d+))\(([^)]*)\)(?:\^(\d+))?")


def parse_components(text: str) -> tuple[Component, ...]:
    """``"A1(q)A1(q^2)^2"`` -> three components."""
    out: list[Component] = []
    pos = 0
    for m in _COMPONENT_RE.finditer(text):
        if m.start() != pos:
            raise ValueError(f"cannot parse component list {text!r}")
        pos = m.end()
        head = m.group(1)
        kind = "A" if head.startswith("A") else head
        rank = int(m.group(2)) if kind == "A" else 4
        out += [Component(kind, rank, m.group(3))] * int(m.group(4) or 1)
    if pos != len(text):
        raise ValueError(f"cannot parse component list {text!r}")
    return tuple(out)


def dynkin_rank(text: str) -> int:
    """Semisimple rank of a Dynkin type such as ``"D4A1^2"``."""
    total = 0
    pos = 0
    for m in re.finditer(r"([ADE])(\d+)(?:\^(\d+))?", text):
        if m.start() != pos:
            raise ValueError(f"cannot parse Dynkin type {text!r}")
        pos = m.end()
        total += int(m.group(2)) * int(m.group(3) or 1)
    if pos != len(text) or not text:
        raise ValueError(f"cannot parse Dynkin type {text!r}")
    return total


@dataclass(frozen=True)
class ExceptionalAction:
    """Generator of ``A^F`` on the components: a permutation plus a flag per
    component (``g`` graph automorphism of order 2, ``t`` triality)."""

    perm: tuple[int, ...]
    flags: tuple[str, ...]
    text: str

    def apply(self, label: tuple, comps: Sequence[Component]) -> tuple:
        out: list[object] = [None] * len(label)
        for i, e in enumerate(label):
            j = self.perm[i]
            if comps[i] != comps[j]:
                raise ValueError(f"action maps {comps[i]} to {comps[j]}")
            flag = self.flags[i]
            if flag == "g":
                e = e.toggled()  # type: ignore[attr-defined]
            elif flag == "t":
                e = TRIALITY[e]  # type: ignore[index]
            out[j] = e
        return tuple(out)


def parse_action(text: str, comps: Sequence[Component]) -> ExceptionalAction:
    """Cycle lengths on consecutive components, e.g. ``(1,2)``, ``(g,2)``, ``3``.

    ``g`` and ``t`` mark a fixed ``D4`` component on which the generator acts
    as the graph automorphism of order 2 or 3.
    """
    parts = text.strip("()").split(",")
    perm: list[int] = []
    flags: list[str] = []
    pos = 0
    for p in parts:
        p = p.strip()
        if p in ("g", "t"):
            if pos >= len(comps) or comps[pos].kind != "D4":
                raise ValueError(f"graph action {p!r} needs a D4 component")
            perm.append(pos)
            flags.append(p)
            pos += 1
            continue
        n = int(p)
        perm += [pos + (i + 1) % n for i in range(n)]
        flags += ["id"] * n
        pos += n
    if pos != len(comps):
        raise ValueError(f"action {text!r} covers {pos} of {len(comps)} components")
    return ExceptionalAction(tuple(perm), tuple(flags), text)


def phi1_divides(poly: dict[int, int]) -> bool:
    return poly.get(1, 0) > 0


def poly_str(poly: dict[int, int] | None) -> str:
    if poly is None:
        return "?"
    if not poly:
        return "1"
    return "".join(f"Phi{i}" + (f"^{e}" if e > 1 else "") for i, e in sorted(poly.items()))


@dataclass(frozen=True)
class ExceptionalClassRow:
    """One semisimple class type of an adjoint exceptional group.

    ``z_poly`` and ``zc_poly`` are the order polynomials of ``Z(C)^o`` and
    ``Z(C^o)^o`` as ``{cyclotomic index: exponent}``; ``zc_poly`` is None
    when it is not available.  ``condition`` ``(n, r)`` means ``q = r mod n``.
    """

    group: str
    number: int
    label: tuple[int, int, int]
    dynkin: str
    components: tuple[Component, ...]
    a_order: int
    zz_order: int
    z_poly: dict = field(hash=False)
    zc_poly: dict | None = field(hash=False)
    condition: tuple[int, int]
    case: str
    action: str | None = None
    source: str = "built-in"

    @property
    def name(self) -> str:
        return f"{self.group} [{','.join(map(str, self.label))}]"

    def generator(self) -> ExceptionalAction | None:
        return parse_action(self.action, self.components) if self.action else None

    def exists_for(self, q: int) -> bool:
        n, r = self.condition
        return q % n == r % n

    def admissible_cases(self) -> set[str]:
        """Cases compatible with the stored data.

        ``CHECK`` iff ``Phi1`` divides ``Z(C)^o``.  Otherwise the case hinges
        on ``Z(C^o)^o``: with trivial ``A^F`` the full group of ``F``-points
        lies in ``C^o``, so Phi1-divisibility there means ``CHECK``, else it
        means ``DAGGER``.  Without ``Z(C^o)^o`` data only full semisimple
        rank pins it down (the torus is then trivial).
        """
        if phi1_divides(self.z_poly):
            return {CHECK}
        zc = self.zc_poly
        if zc is None and dynkin_rank(self.dynkin) == EXCEPTIONAL_RANK[self.group]:
            zc = {}
        in_levi = CHECK if self.a_order == 1 else DAGGER
        if zc is None:
            return {STAR, in_levi}
        return {in_levi} if phi1_divides(zc) else {STAR}

    def consistency_errors(self) -> list[str]:
        errs = []
        if self.case not in self.admissible_cases():
            errs.append(f"{self.name}: stored case {self.case} not in {sorted(self.admissible_cases())}")
        if self.case == DAGGER:
            if self.action is None:
                errs.append(f"{self.name}: DAGGER row without an action")
            if self.a_order == 1:
                errs.append(f"{self.name}: DAGGER row with trivial component group")
        if self.action is not None:
            try:
                gen = self.generator()
            except ValueError as exc:
                errs.append(f"{self.name}: {exc}")
            else:
                if gen is not None and _action_order(gen, self.components) > self.a_order:
                    errs.append(f"{self.name}: action order exceeds |A^F| = {self.a_order}")
        return errs

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "number": self.number,
            "label": list(self.label),
            "dynkin": self.dynkin,
            "components": "".join(str(c) for c in self.components),
            "A_order": self.a_order,
            "ZZ_order": self.zz_order,
            "Z0": {str(k): v for k, v in sorted(self.z_poly.items())},
            "Z0_C0": None if self.zc_poly is None else {str(k): v for k, v in sorted(self.zc_poly.items())},
            "condition": list(self.condition),
            "case": self.case,
            "action": self.action,
            "source": self.source,
        }


def _action_order(gen: ExceptionalAction, comps: Sequence[Component]) -> int:
    """Order of the generator on label tuples (1 if it acts trivially)."""
    labels = list(_iter_exceptional_labels(comps))
    order = 1
    for lab in labels:
        cur = gen.apply(lab, comps)
        k = 1
        while cur != lab:
            cur = gen.apply(cur, comps)
            k += 1
        order = max(order, k)
    return order


def _iter_exceptional_labels(comps: Sequence[Component]) -> Iterable[tuple]:
    from itertools import product

    return product(*(c.labels() for c in comps))


# Rows of the E6 table: number, label, Dynkin type, components (with e for
# epsilon), |C/C^o|, |Z/Z^o|, Z^o, condition (n, r) meaning q = r*epsilon mod n,
# case for E6, case for 2E6, action on components for the DAGGER case.
_E6_ROWS = (
    (1, (3, 2, 1), "A2^3", "A2(eq)^3", 3, 3, {}, (3, 1), STAR, STAR, None),
    (2, (3, 2, 2), "A2^3", "A2(q^2)A2(-eq)", 1, 3, {}, (3, -1), STAR, STAR, None),
    (3, (3, 2, 3), "A2^3", "A2(eq^3)", 3, 3, {}, (3, 1), STAR, STAR, None),
    (4, (13, 2, 1), "A1^4", "A1(q)^4", 3, 6, {}, (6, 1), DAGGER, STAR, "(1,3)"),
    (5, (13, 2, 2), "A1^4", "A1(q)A1(q^3)", 3, 6, {}, (6, 1), STAR, STAR, None),
    (6, (13, 2, 3), "A1^4", "A1(q)^2A1(q^2)", 1, 6, {}, (6, -1), CHECK, CHECK, None),
    (7, (14, 2, 1), "D4", "D4(q)", 3, 3, {}, (3, 1), DAGGER, STAR, "t"),
    (8, (14, 2, 2), "D4", "3D4(q)", 3, 3, {}, (3, 1), STAR, STAR, None),
    (9, (14, 2, 3), "D4", "2D4(q)", 1, 3, {}, (3, -1), CHECK, CHECK, None),
    (10, (16, 2, 1), "A1^3", "A1(q)^3", 3, 3, {1: 1}, (3, 1), CHECK, CHECK, None),
    (11, (16, 2, 2), "A1^3", "A1(q)^3", 3, 3, {2: 1}, (3, 1), DAGGER, STAR, "3"),
    (12, (16, 2, 3), "A1^3", "A1(q)A1(q^2)", 1, 3, {1: 1}, (3, -1), CHECK, CHECK, None),
    (13, (16, 2, 4), "A1^3", "A1(q)A1(q^2)", 1, 3, {2: 1}, (3, -1), CHECK, CHECK, None),
    (14, (16, 2, 5), "A1^3", "A1(q^3)", 3, 3, {2: 1}, (3, 1), STAR, STAR, None),
    (15, (16, 2, 6), "A1^3", "A1(q^3)", 3, 3, {1: 1}, (3, 1), CHECK, CHECK, None),
)

# Rows of the E7 table: every listed row is a DAGGER row with |A^F| = 2.
_E7_ROWS = (
    (1, (12, 2, 1), "A2^3", "A2(q)^3", "(1,2)", 6, {}, (6, 1)),
    (2, (17, 2, 1), "D4A1^2", "D4(q)A1(q)^2", "(g,2)", 4, {}, (4, 1)),
    (3, (25, 4, 4), "A3A1^2", "A3(-q)A1(q)^2", "(1,2)", 2, {2: 1}, (2, 1)),
    (4, (27, 3, 3), "A1^5", "A1(q)A1(q^2)^2", "(1,2)", 4, {2: 1}, (4, 1)),
    (5, (27, 3, 4), "A1^5", "A1(q)A1(q^2)^2", "(1,1,1)", 4, {2: 1}, (4, -1)),
    (6, (27, 3, 9), "A1^5", "A1(q)^5", "(1,2,2)", 4, {2: 1}, (4, 1)),
    (7, (27, 3, 10), "A1^5", "A1(q)A1(q^2)^2", "(1,2)", 4, {2: 1}, (4, -1)),
    (8, (30, 2, 6), "A2A1^2", "A2(-q)A1(q)^2", "(1,2)", 2, {2: 1}, (2, 1)),
    (9, (33, 4, 2), "A2^2", "A2(q)^2", "2", 2, {3: 1}, (2, 1)),
    (10, (34, 3, 6), "D4", "D4(q)", "g", 2, {2: 1}, (2, 1)),
    (11, (36, 3, 13), "A1^4", "A1(q^2)A1(q)^2", "(1,2)", 2, {4: 1}, (2, 1)),
    (12, (36, 3, 20), "A1^4", "A1(q^2)^2", "2", 2, {2: 2}, (2, 1)),
    (13, (36, 3, 23), "A1^4", "A1(q)^4", "(2,2)", 2, {2: 2}, (2, 1)),
    (14, (36, 3, 24), "A1^4", "A1(q^2)^2", "(1,1)", 2, {2: 2}, (2, 1)),
    (15, (38, 3, 6), "A1^3", "A1(q)^3", "(1,2)", 2, {2: 2}, (2, 1)),
    (16, (41, 5, 6), "A1^2", "A1(q)^2", "2", 2, {2: 1, 4: 1}, (2, 1)),
    (17, (41, 5, 17), "A1^2", "A1(q)^2", "2", 2, {2: 1, 6: 1}, (2, 1)),
    (18, (41, 5, 18), "A1^2", "A1(q)^2", "2", 2, {2: 1, 4: 1}, (2, 1)),
    (19, (41, 5, 20), "A1^2", "A1(q)^2", "2", 2, {2: 3}, (2, 1)),
)


def _e6_rows(group: str) -> list[ExceptionalClassRow]:
    eps = 1 if group == "E6" else -1
    sub = {"eq": "q" if eps == 1 else "-q", "-eq": "-q" if eps == 1 else "q", "eq^3": "q^3" if eps == 1 else "-q^3"}
    out = []
    for no, lab, dyn, comps, a, zz, z, (n, r), c1, c2, act in _E6_ROWS:
        text = re.sub(r"\((-?eq(?:\^3)?)\)", lambda m: f"({sub[m.group(1)]})", comps)
        case = c1 if eps == 1 else c2
        out.append(
            ExceptionalClassRow(
                group, no, lab, dyn, parse_components(text), a, zz, dict(z), None,
                (n, (r * eps) % n), case, act if case == DAGGER else None,
            )
        )
    return out


def _e7_rows() -> list[ExceptionalClassRow]:
    return [
        ExceptionalClassRow(
            "E7", no, lab, dyn, parse_components(comps), 2, zz, dict(z), None, (n, r % n), DAGGER, act
        )
        for no, lab, dyn, comps, act, zz, z, (n, r) in _E7_ROWS
    ]


EXCEPTIONAL_ROWS: tuple[ExceptionalClassRow, ...] = tuple(_e6_rows("E6") + _e6_rows("2E6") + _e7_rows())


def exceptional_row(group: str, key: int | Sequence[int]) -> ExceptionalClassRow:
    """Look up a built-in row by number or by class-type label."""
    for row in EXCEPTIONAL_ROWS:
        if row.group != group:
            continue
        if (isinstance(key, int) and row.number == key) or (not isinstance(key, int) and tuple(key) == row.label):
            return row
    raise ClassDataError(f"no built-in {group} row {key!r}; supply an external record", "exceptional-row")


def exceptional_row_from_json(obj: dict) -> ExceptionalClassRow:
    """Parse an external record.  Both order polynomials are required."""
    try:
        group = obj["group"]
        if group not in EXCEPTIONAL_RANK:
            raise ClassDataError(f"unknown exceptional group {group!r}", "exceptional-record")

        def poly(x: object) -> dict[int, int]:
            if not isinstance(x, dict):
                raise ClassDataError("order polynomials are objects {index: exponent}", "exceptional-record")
            return {int(k): int(e) for k, e in x.items() if int(e)}

        row = ExceptionalClassRow(
            group,
            int(obj.get("number", 0)),
            tuple(int(x) for x in obj["label"]),  # type: ignore[arg-type]
            obj["dynkin"],
            parse_components(obj["components"]),
            int(obj["A_order"]),
            int(obj.get("ZZ_order", 1)),
            poly(obj["Z0"]),
            poly(obj["Z0_C0"]),
            tuple(int(x) for x in obj.get("condition", (1, 0))),  # type: ignore[arg-type]
            obj["case"],
            obj.get("action"),
            "external",
        )
    except ClassDataError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ClassDataError(f"malformed exceptional record: {exc}", "exceptional-record") from exc
    if len(row.label) != 3:
        raise ClassDataError("class-type labels are triples", "exceptional-record")
    if row.case not in (STAR, DAGGER, CHECK):
        raise ClassDataError(f"unknown case {row.case!r}", "exceptional-record")
    errs = row.consistency_errors()
    if errs:
        raise ClassDataError("; ".join(errs), "phi1-consistency")
    return row


def exceptional_label_from_json(row: ExceptionalClassRow, obj: object) -> tuple:
    if not isinstance(obj, list) or len(obj) != len(row.components):
        raise ClassDataError("label needs one entry per component", "label")
    out: list[object] = []
    for c, e in zip(row.components, obj):
        try:
            if c.kind == "A":
                out.append(make_partition(e))  # type: ignore[arg-type]
            elif c.kind == "D4":
                out.append(entry_from_json(ClassicalFactor("SO+", 8), e))
            elif c.kind == "2D4":
                out.append(entry_from_json(ClassicalFactor("Sp", 6), e))
            else:
                out.append(str(e))
        except (LabelError, TypeError, ValueError, KeyError) as exc:
            raise ClassDataError(f"malformed label entry: {exc}", "label") from exc
    return tuple(out)


def exceptional_label_to_json(label: Sequence[object]) -> list:
    return [e if isinstance(e, str) else entry_to_json(e) for e in label]


def exceptional_stabilizer(row: ExceptionalClassRow, label: Sequence[object]) -> int:
    """``|A_lambda|`` for the cyclic group generated by the row's action."""
    label = tuple(label)
    gen = row.generator()
    if gen is None:
        return row.a_order
    order = 0
    cur = label
    fixed = 0
    while True:
        order += 1
        if cur == label:
            fixed += 1
        cur = gen.apply(cur, row.components)
        if order == row.a_order:
            break
    if cur != label:
        raise AssertionError("the action does not have order dividing |A^F|")
    return fixed


def classify_exceptional_table(row: ExceptionalClassRow, label: Sequence[object] | None = None) -> Verdict:
    errs = row.consistency_errors()
    if errs:
        raise ClassDataError("; ".join(errs), "phi1-consistency")
    A = row.a_order
    if label is not None:
        label = tuple(label)
        if len(label) != len(row.components):
            raise ClassDataError("label needs one entry per component", "label")
        for c, e in zip(row.components, label):
            if e not in c.labels():
                raise ClassDataError(f"{e!r} is not a principal-series label of {c}", "label")
    if row.case == STAR:
        return _verdict("exceptional-star", A, A if label is None else exceptional_stabilizer(row, label))
    witness = {"levi": "split Levi centralizing a split torus", "row": row.name}
    if row.case == CHECK:
        return _verdict(
            "exceptional-check", A, A if label is None else exceptional_stabilizer(row, label),
            dict(witness, torus="Z(C)^o"),
        )
    if label is None:
        raise ClassDataError(f"{row.name} is a DAGGER row; a label is required", "label")
    A_lam = exceptional_stabilizer(row, label)
    if A_lam == 1:
        return _verdict("exceptional-dagger-moved", A, A_lam, dict(witness, torus="Z(C^o)^o", A_L_order=1))
    return _verdict("exceptional-dagger-fixed", A, A_lam)


def exceptional_data_report() -> dict:
    """Consistency of every built-in row; used by the ``e6e7-data`` suite."""
    rows = []
    for row in EXCEPTIONAL_ROWS:
        adm = sorted(row.admissible_cases())
        rows.append(
            {
                "row": row.name,
                "stored": row.case,
                "admissible": adm,
                "determined": len(adm) == 1,
                "errors": row.consistency_errors(),
            }
        )
    return {"rows": rows, "ok": all(not r["errors"] for r in rows)}


def verdict_dumps(v: Verdict) -> str:
    return json.dumps(v.to_json(), sort_keys=True)


__all__ = [
    "CASES",
    "CHECK",
    "DAGGER",
    "EXCEPTIONAL_ROWS",
    "IMPRIMITIVE",
    "PRIMITIVE",
    "STAR",
    "TRIALITY",
    "ExceptionalClassRow",
    "SeriesEntry",
    "Stabilizer",
    "Verdict",
    "classify",
    "classify_exceptional_table",
    "enumerate_series",
    "exceptional_data_report",
    "exceptional_label_from_json",
    "exceptional_label_to_json",
    "exceptional_row",
    "exceptional_row_from_json",
    "label_from_json",
    "label_orbits",
    "label_to_json",
    "stabilizer_of_label",
    "verdict_dumps",
]
