"""Weyl groups of types A, B, D as permutation groups, labelled Dixon tables,
and brute-force induction from parabolic subgroups.

A signed permutation of ``n`` letters acts on ``2n`` points: point ``i`` is
``+i`` and point ``i + n`` is ``-i``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from hcprim.labels import bipartitions, d_labels, partitions
from hcprim.oracle.cyclo import Cyclo
from hcprim.oracle.dixon import (
    CharacterTable,
    OracleError,
    Perm,
    PermGroup,
    brute_induce,
    dixon_character_table,
    pmul,
)
from hcprim.weyl import CoxeterSpec, chi_b, chi_d, chi_sym, induce, parabolic_labels, parabolics


def _swap(deg: int, *pairs: tuple[int, int]) -> Perm:
    p = list(range(deg))
    for a, b in pairs:
        p[a], p[b] = b, a
    return tuple(p)


def simple_reflections(ctype: str, n: int) -> list[Perm]:
    """``[s0, s1, ..., s_{n-1}]`` where ``s_i`` swaps letters ``i-1`` and ``i``.

    ``s0`` is the sign change of letter 0 (type B), the map
    ``e0 <-> -e1`` (type D), and absent for type A.
    """
    if ctype == "A":
        return [_swap(n, (i - 1, i)) for i in range(1, n)]
    deg = 2 * n
    gens = []
    if ctype == "B":
        gens.append(_swap(deg, (0, n)))
    elif ctype == "D":
        gens.append(_swap(deg, (0, n + 1), (1, n)))
    else:
        raise OracleError(f"unsupported type {ctype}")
    gens += [_swap(deg, (i - 1, i), (i - 1 + n, i + n)) for i in range(1, n)]
    return gens


def _conj(g: Perm, c: Perm) -> Perm:
    # c is an involution
    return pmul(pmul(c, g), c)


def parabolic_generators(par: CoxeterSpec) -> list[Perm]:
    n = par.rank
    refl = simple_reflections(par.ctype, n)
    if par.ctype == "A":
        gens = []
        start = 0
        for k in par.parts:
            gens += [refl[i - 1] for i in range(start + 1, start + k)]
            start += k
        return gens
    gens = []
    if par.a:
        gens += refl[: par.a]
    start = par.a
    for k in par.parts:
        gens += [refl[i] for i in range(start + 1, start + k)]
        start += k
    if par.twin:
        c0 = _swap(2 * n, (0, n))
        gens = [_conj(g, c0) for g in gens]
    return gens


def identity(ctype: str, n: int) -> Perm:
    return tuple(range(n if ctype == "A" else 2 * n))


@lru_cache(maxsize=None)
def weyl_group(ctype: str, n: int) -> PermGroup:
    gens = simple_reflections(ctype, n)
    deg = n if ctype == "A" else 2 * n
    return PermGroup(gens or [tuple(range(deg))], deg)


def subgroup(par: CoxeterSpec) -> PermGroup:
    gens = parabolic_generators(par)
    deg = par.rank if par.ctype == "A" else 2 * par.rank
    return PermGroup(gens or [tuple(range(deg))], deg)


# ---------------------------------------------------------------------------
# cycle types


def cycle_type(g: Perm) -> tuple[int, ...]:
    seen = [False] * len(g)
    out = []
    for i in range(len(g)):
        if not seen[i]:
            L = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = g[j]
                L += 1
            out.append(L)
    return tuple(sorted(out, reverse=True))


def signed_cycle_type(g: Perm, letters: range) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """``(positive, negative)`` cycle lengths of ``g`` restricted to ``letters``.

    ``g`` must stabilize the set of letters (up to sign).
    """
    n = len(g) // 2
    seen = set()
    pos, neg = [], []
    for i in letters:
        if i in seen:
            continue
        L = 0
        sign = 1
        j = i
        while True:
            seen.add(j)
            img = g[j]
            if img >= n:
                sign = -sign
                img -= n
            L += 1
            j = img
            if j == i:
                break
        (pos if sign == 1 else neg).append(L)
    return tuple(sorted(pos, reverse=True)), tuple(sorted(neg, reverse=True))


def split_sign(g: Perm, letters: range) -> int:
    """``+1`` iff ``g`` restricted to ``letters`` is conjugate to an honest
    permutation by an even number of sign changes.

    Requires every cycle to be positive.  Walking each cycle, a sign change is
    needed on every letter reached through an odd number of negative arrows.
    """
    n = len(g) // 2
    flips = 0
    seen = set()
    for i in letters:
        if i in seen:
            continue
        parity = 0
        j = i
        while j not in seen:
            seen.add(j)
            flips += parity
            img = g[j]
            if img >= n:
                parity ^= 1
                img -= n
            j = img
        if parity:
            raise OracleError("negative cycle has no split sign")
    return -1 if flips % 2 else 1


def _block_cycle_type(g: Perm, letters: range) -> tuple[int, ...]:
    seen = set()
    out = []
    for i in letters:
        if i in seen:
            continue
        L = 0
        j = i
        while j not in seen:
            seen.add(j)
            j = g[j]
            L += 1
        out.append(L)
    return tuple(sorted(out, reverse=True))


def label_value(ctype: str, lab: object, g: Perm, letters: range) -> int:
    """Value of the combinatorially labelled character on ``g`` (on ``letters``)."""
    if ctype == "A":
        return chi_sym(tuple(lab), _block_cycle_type(g, letters))  # type: ignore[arg-type]
    pos, neg = signed_cycle_type(g, letters)
    if ctype == "B":
        return chi_b(lab, pos, neg)  # type: ignore[arg-type]
    s = 0
    if not neg and all(x % 2 == 0 for x in pos) and lab.degenerate:  # type: ignore[union-attr]
        s = split_sign(g, letters)
    v = chi_d(lab, pos, neg, s)  # type: ignore[arg-type]
    if v.denominator != 1:
        raise OracleError("non-integral character value")
    return int(v)


def all_labels(ctype: str, n: int) -> list:
    if ctype == "A":
        return list(partitions(n))
    if ctype == "B":
        return list(bipartitions(n))
    return list(d_labels(n))


# ---------------------------------------------------------------------------
# labelled tables


@dataclass
class LabelledTable:
    ctype: str
    rank: int
    table: CharacterTable
    labels: list  # labels[i] names table.values[i]


@lru_cache(maxsize=None)
def labelled_table(ctype: str, n: int) -> LabelledTable:
    """Dixon table of the Weyl group with rows matched to combinatorial labels."""
    G = weyl_group(ctype, n)
    T = dixon_character_table(G)
    if not T.is_rational():
        raise OracleError("Weyl group character table should be rational")
    letters = range(n)
    rows = {tuple(r): i for i, r in enumerate(T.int_values())}
    labels: list = [None] * len(rows)
    labs = all_labels(ctype, n)
    if len(labs) != len(rows):
        raise OracleError(f"{len(labs)} labels but {len(rows)} characters")
    for lab in labs:
        vec = tuple(label_value(ctype, lab, g, letters) for g in T.class_reps)
        if vec not in rows:
            raise OracleError(f"label {lab} matches no Dixon character")
        labels[rows[vec]] = lab
    return LabelledTable(ctype, n, T, labels)


def rho_values(par: CoxeterSpec, rho: tuple, H: PermGroup) -> list[int]:
    """Values of the parabolic label ``rho`` on the class representatives of ``H``."""
    n = par.rank
    c0 = _swap(2 * n, (0, n)) if par.twin else None
    lead, pis = rho
    out = []
    for cls in H.classes():
        h = H.elements[cls[0]]
        if c0 is not None:
            h = _conj(h, c0)
        v = 1
        start = 0
        if par.ctype != "A" and par.a:
            v *= label_value(par.ctype, lead, h, range(par.a))
            start = par.a
        for k, pi in zip(par.parts, pis):
            v *= label_value("A", pi, _as_unsigned(h, n) if par.ctype != "A" else h, range(start, start + k))
            start += k
        out.append(v)
    return out


def _as_unsigned(h: Perm, n: int) -> Perm:
    return tuple(x % n for x in h[:n])


def brute_parabolic_induction(par: CoxeterSpec, rho: tuple) -> Counter:
    """Decompose ``Ind_{W0}^W rho`` via the labelled Dixon table of ``W``."""
    LT = labelled_table(par.ctype, par.rank)
    H = subgroup(par)
    if H.order != par.order:
        raise OracleError(f"parabolic {par} has order {H.order}, expected {par.order}")
    vals = rho_values(par, rho, H)
    e = LT.table.exponent
    norm = sum(len(c) * v * v for c, v in zip(H.classes(), vals))
    if norm != H.order:
        raise OracleError(f"label {rho} is not irreducible on {par}")
    mults = brute_induce(LT.table, H, [Cyclo(e, [v]) for v in vals])
    return +Counter({LT.labels[i]: m for i, m in enumerate(mults)})


def cross_check(ctype: str, n: int) -> dict:
    """Compare combinatorial induction with brute force for every ``(W0, rho)``."""
    checked = 0
    mismatches = []
    for par in parabolics(ctype, n):
        for rho in parabolic_labels(par):
            want = brute_parabolic_induction(par, rho)
            got = induce(par, rho)
            checked += 1
            if +Counter(got) != want:
                mismatches.append((str(par), repr(rho)))
    return {"type": ctype, "rank": n, "checked": checked, "mismatches": mismatches, "ok": not mismatches}


def irr_count(ctype: str, n: int) -> int:
    return len(labelled_table(ctype, n).labels)


def restriction_multiplicity(par: CoxeterSpec, rho: tuple, psi: object) -> int:
    """``<Res psi, rho>_{W0}`` computed directly on the subgroup."""
    H = subgroup(par)
    vals = rho_values(par, rho, H)
    letters = range(par.rank)
    total = 0
    for cls, v in zip(H.classes(), vals):
        h = H.elements[cls[0]]
        total += len(cls) * v * label_value(par.ctype, psi, h, letters)
    if total % H.order:
        raise OracleError("restriction pairing is not integral")
    return total // H.order



# ---------------------------------------------------------------------------
# diagram automorphisms


def diagram_automorphism_on_labels(ctype: str, n: int, gen_images: Sequence[int]) -> dict:
    """Permutation of the labels of ``W`` induced by a diagram automorphism.

    ``gen_images[i]`` is the index of the simple reflection that ``s_i`` is
    sent to.  The automorphism is extended to ``W`` along words found by
    breadth-first search, and a label ``L`` is sent to the label of the
    character ``chi_L o tau^{-1}``.
    """
    gens = simple_reflections(ctype, n)
    if sorted(gen_images) != list(range(len(gens))):
        raise OracleError("generator images do not form a permutation")
    deg = len(gens[0])
    one = tuple(range(deg))
    tau = {one: one}
    queue = [one]
    while queue:
        nxt = []
        for g in queue:
            for i, s in enumerate(gens):
                h = pmul(g, s)
                if h not in tau:
                    tau[h] = pmul(tau[g], gens[gen_images[i]])
                    nxt.append(h)
        queue = nxt
    # a diagram automorphism preserves the Coxeter relations, so tau is a
    # well defined automorphism; check it on products anyway
    for g in list(tau)[:50]:
        for h in list(tau)[:50]:
            if tau[pmul(g, h)] != pmul(tau[g], tau[h]):
                raise OracleError("generator images do not define an automorphism")
    inv = {v: k for k, v in tau.items()}
    LT = labelled_table(ctype, n)
    T = LT.table
    G = weyl_group(ctype, n)
    rows = {tuple(r): i for i, r in enumerate(T.int_values())}
    pull = [G.class_of(inv[rep]) for rep in T.class_reps]
    out = {}
    for i, lab in enumerate(LT.labels):
        vals = T.int_values()[i]
        img = tuple(vals[c] for c in pull)
        out[lab] = LT.labels[rows[img]]
    return out


def d4_triality_on_labels() -> dict:
    """Triality ``s0 -> s1 -> s3 -> s0`` of ``W(D4)`` (``s2`` is the branch node)."""
    return diagram_automorphism_on_labels("D", 4, [1, 3, 2, 0])
