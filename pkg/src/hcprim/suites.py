"""Named verification suites shared by the ``verify`` command and the tests.

Every suite returns a JSON-ready report with a top-level ``"ok"`` flag and
enough detail to locate a failure.
"""
from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path
from typing import Callable

from hcprim.gf import Field, Poly, field_of_order, irreducible_polys, quadratic_extension
from hcprim.labels import (
    ClassicalFactor,
    apply_auto,
    bipartitions,
    d_labels,
    entry_from_json,
    entry_to_json,
    enumerate_labels,
    graph_on,
    partitions,
)
from hcprim.polyops import (
    classify_type_by_roots,
    classify_type_raw,
    dagger_raw,
    negate_raw,
    self_dual_degree_rule_holds,
    star_alpha_raw,
)
from hcprim.weyl import (
    THREE_CONSTITUENT_ROWS,
    X,
    Y,
    a_value_from_degree,
    expected_two_constituent,
    generic_degree,
    generic_degree_a,
    generic_degree_d,
    lowest_term,
    poincare_defect,
    verify_induction_classification,
)

SUITES = ("polyops", "weyl-lemma", "centralizer-oracle", "negation-oracle", "e6e7-data", "labels")


# ---------------------------------------------------------------------------
# polyops


def random_f0_poly(F: Field, rng: random.Random, max_degree: int = 6) -> Poly:
    """A random monic polynomial with nonzero constant term."""
    d = rng.randint(1, max_degree)
    c0 = rng.randrange(1, F.order)
    return (c0,) + tuple(rng.randrange(F.order) for _ in range(d - 1)) + (1,)


def involution_check(samples: int = 10_000, seed: int = 0, fields: tuple[int, ...] = (2, 3, 4, 5, 7, 8, 9)) -> dict:
    """``(mu^{*a})^{*a} = mu``, ``(mu')' = mu`` and ``(mu^dag)^dag = mu`` on random inputs."""
    rng = random.Random(seed)
    failures: list[dict] = []
    counts = {"star_alpha": 0, "negate": 0, "dagger": 0}
    per_op = samples
    for _ in range(per_op):
        q = rng.choice(fields)
        F = field_of_order(q)
        E = quadratic_extension(F)
        mu = random_f0_poly(F, rng)
        a = rng.randrange(1, q)
        if star_alpha_raw(F, star_alpha_raw(F, mu, a), a) != mu:
            failures.append({"op": "star_alpha", "q": q, "mu": list(mu), "alpha": a})
        counts["star_alpha"] += 1
        if negate_raw(F, negate_raw(F, mu)) != mu:
            failures.append({"op": "negate", "q": q, "mu": list(mu)})
        counts["negate"] += 1
        nu = random_f0_poly(E, rng)
        if dagger_raw(E, dagger_raw(E, nu)) != nu:
            failures.append({"op": "dagger", "q": q, "mu": list(nu)})
        counts["dagger"] += 1
    return {"samples": counts, "failures": failures[:20], "ok": not failures}


def factor_type_check(qs: tuple[int, ...] = (2, 3, 5), max_degree: int = 4) -> dict:
    """Coefficient-rule factor types against root analysis in the splitting field."""
    checked = 0
    failures: list[dict] = []
    seen_tags: dict[int, set[str]] = {q: set() for q in qs}
    for q in qs:
        F = field_of_order(q)
        for a in range(1, q):
            for d in range(1, max_degree + 1):
                for mu in irreducible_polys(F, d):
                    if mu[0] == 0:
                        continue
                    got = classify_type_raw(F, mu, a)
                    want = classify_type_by_roots(F, mu, a)
                    checked += 1
                    seen_tags[q].add(got.tag)
                    if got != want or not self_dual_degree_rule_holds(F, mu, a):
                        failures.append({"q": q, "alpha": a, "mu": list(mu), "rule": got.tag, "roots": want.tag})
    absent = not ({"II", "III"} & seen_tags.get(2, set()))
    return {
        "checked": checked,
        "tags": {str(q): sorted(t) for q, t in seen_tags.items()},
        "types_II_III_absent_for_q2": absent,
        "failures": failures[:20],
        "ok": not failures and absent,
    }


def polyops_suite(samples: int = 10_000, seed: int = 0) -> dict:
    inv = involution_check(samples, seed)
    types = factor_type_check()
    return {"involutions": inv, "factor_types": types, "ok": inv["ok"] and types["ok"]}


# ---------------------------------------------------------------------------
# Weyl group induction and generic degrees

# (type, rank bound, explicit ranks) for the exhaustive induction check
INDUCTION_RANGES: tuple[tuple[str, int, tuple[int, ...] | None], ...] = (
    ("A", 8, None),
    ("B", 4, None),
    ("D", 6, (4, 5, 6)),
)

# groups with |W| <= 2000 cross-checked against the Dixon character tables
DIXON_RANGES: tuple[tuple[str, int], ...] = (
    ("A", 2), ("A", 3), ("A", 4), ("A", 5), ("A", 6),
    ("B", 2), ("B", 3), ("B", 4),
    ("D", 4), ("D", 5),
)


def _two_constituent_degree(ctype: str, lab: object):
    return generic_degree_a(lab) if ctype == "A" else generic_degree_d(lab)  # type: ignore[arg-type]


def a_value_check() -> dict:
    """The two constituents of every listed 2-constituent induction have distinct a-values."""
    rows = []
    for ctype, bound, ranks in INDUCTION_RANGES:
        if ctype == "B":
            continue
        for n in ranks or range(1, bound + 1):
            for fam in sorted(expected_two_constituent(ctype, n), key=repr):
                p1, p2 = fam[2]
                a1 = a_value_from_degree(_two_constituent_degree(ctype, p1))
                a2 = a_value_from_degree(_two_constituent_degree(ctype, p2))
                rows.append({"type": ctype, "n": n, "family": fam[0], "a": [a1, a2], "ok": a1 != a2})
    return {"pairs": len(rows), "failures": [r for r in rows if not r["ok"]], "ok": all(r["ok"] for r in rows)}


def _valuation(x: Fraction, p: int) -> int:
    num, den = x.numerator, x.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def specialization_check(qs: tuple[int, ...] = (2, 3, 4, 5), max_power: int = 3) -> dict:
    """The three generic degrees of every 3-constituent induction never all agree
    at ``X = q^k`` (and ``Y = q^l``); in ``D4`` two of them are monic polynomials
    with different lowest powers."""
    failures: list[dict] = []
    checked = 0
    for (ctype, n), rows in sorted(THREE_CONSTITUENT_ROWS.items()):
        kind = f"{ctype}{n}"
        for row in rows:
            exprs = [generic_degree(kind, lab).expr for lab in row]
            for q in qs:
                for k in range(1, max_power + 1):
                    for ell in range(1, max_power + 1) if ctype == "B" else (None,):
                        subs = {X: q**k} if ell is None else {X: q**k, Y: q**ell}
                        vals = {e.subs(subs) for e in exprs}
                        checked += 1
                        if len(vals) == 1:
                            failures.append({"type": kind, "row": repr(row), "q": q, "k": k, "l": ell})
            if ctype == "D":
                terms = [lowest_term(e) for e in exprs]
                monic = [t for t in terms if t is not None and t[1] == 1]
                if len({t[0] for t in monic}) < 2:
                    failures.append({"type": kind, "row": repr(row), "reason": "no two monic terms of different order"})
    return {"checked": checked, "failures": failures, "ok": not failures}


def generic_degree_identity() -> dict:
    """``sum chi(1) D_chi = P_W`` for the stored two-parameter tables.

    The printed ``B3`` entry for ``(1, 1^2)`` fails this identity; the report
    records the defect and whether the corrected entry restores it.
    """
    b2 = poincare_defect("B2")
    b3 = poincare_defect("B3")
    b3c = poincare_defect("B3", corrected=True)
    return {
        "B2_defect": str(b2),
        "B3_defect": str(b3),
        "B3_corrected_defect": str(b3c),
        "ok": b2 == 0 and b3c == 0,
    }


def weyl_suite(with_dixon: bool = True) -> dict:
    from hcprim.oracle.coxeter import cross_check

    induction = [verify_induction_classification(c, b, r) for c, b, r in INDUCTION_RANGES]
    dixon = [cross_check(c, n) for c, n in DIXON_RANGES] if with_dixon else []
    a_vals = a_value_check()
    specialized = specialization_check()
    ident = generic_degree_identity()
    three = {
        f"{c}{n}": sum(1 for _ in rows) for (c, n), rows in sorted(THREE_CONSTITUENT_ROWS.items())
    }
    ok = (
        all(r["ok"] for r in induction)
        and all(r["ok"] for r in dixon)
        and a_vals["ok"]
        and specialized["ok"]
        and ident["ok"]
    )
    return {
        "induction": _stringify_keys(induction),
        "dixon": dixon,
        "three_constituent_rows": three,
        "a_values": a_vals,
        "specializations": specialized,
        "degree_identity": ident,
        "ok": ok,
    }


def _stringify_keys(obj: object) -> object:
    if isinstance(obj, dict):
        return {str(k): _stringify_keys(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_stringify_keys(v) for v in obj]
    return obj


# ---------------------------------------------------------------------------
# labels


def label_count_check(max_rank: int = 5) -> dict:
    """Label sets have the sizes of the irreducible characters of the relative
    Weyl groups, and entries survive a JSON round trip."""
    failures: list[dict] = []
    checked = 0
    for k in range(0, 2 * max_rank + 2):
        for kind in ("GL", "GU", "Sp", "SO+", "SO-", "SO"):
            if kind in ("Sp", "SO+", "SO-") and k % 2:
                continue
            if kind == "SO" and k % 2 == 0:
                continue
            if kind in ("GL", "GU") and k > max_rank:
                continue
            f = ClassicalFactor(kind, k)
            labs = enumerate_labels(f)
            if kind in ("GL", "GU"):
                want = len(partitions(k))
            elif kind in ("Sp", "SO"):
                want = len(bipartitions(f.rank))
            elif kind == "SO+":
                want = len(d_labels(k // 2))
            else:
                want = len(bipartitions(max(k // 2 - 1, 0)))
            checked += 1
            if len(labs) != want or len(set(labs)) != len(labs):
                failures.append({"factor": str(f), "labels": len(labs), "expected": want})
            for lab in labs:
                if entry_from_json(f, entry_to_json(lab)) != lab:
                    failures.append({"factor": str(f), "label": repr(lab), "reason": "json round trip"})
    return {"checked": checked, "failures": failures, "ok": not failures}


def weyl_irr_check() -> dict:
    """Label counts of types B and D against Dixon character tables."""
    from hcprim.oracle.coxeter import irr_count

    rows = []
    for ctype, n in (("B", 2), ("B", 3), ("B", 4), ("D", 4), ("D", 5)):
        want = irr_count(ctype, n)
        got = len(bipartitions(n)) if ctype == "B" else len(d_labels(n))
        rows.append({"type": f"{ctype}{n}", "labels": got, "irr": want, "ok": got == want})
    return {"rows": rows, "ok": all(r["ok"] for r in rows)}


def graph_automorphism_check() -> dict:
    """The graph automorphism of ``D_n`` swaps exactly the two members of each
    degenerate pair, recomputed from the character table for ``D4``; the
    triality table used for ``D4`` components is recomputed as well."""
    from hcprim.classifier import TRIALITY
    from hcprim.oracle.coxeter import d4_triality_on_labels, diagram_automorphism_on_labels

    failures: list[str] = []
    f = ClassicalFactor("SO+", 8)
    g = graph_on(1, [0])
    for lab in d_labels(4):
        img = apply_auto((lab,), g, [f])[0]
        if apply_auto((img,), g, [f])[0] != lab:
            failures.append(f"graph action is not an involution on {lab!r}")
        if (img != lab) != lab.degenerate:
            failures.append(f"graph action moves {lab!r} but the label is not degenerate")
    brute = diagram_automorphism_on_labels("D", 4, [1, 0, 2, 3])
    for lab in d_labels(4):
        if brute[lab] != apply_auto((lab,), g, [f])[0]:
            failures.append(f"graph action on {lab!r} disagrees with the character table")
    tri = d4_triality_on_labels()
    for lab in d_labels(4):
        if tri[lab] != TRIALITY.get(lab, lab):
            failures.append(f"triality image of {lab!r} disagrees with the character table")
    return {"failures": failures, "ok": not failures}


def labels_suite() -> dict:
    counts = label_count_check()
    irr = weyl_irr_check()
    auto = graph_automorphism_check()
    return {"counts": counts, "weyl_irr": irr, "automorphisms": auto, "ok": counts["ok"] and irr["ok"] and auto["ok"]}


# ---------------------------------------------------------------------------
# E6 / E7 data


def e6e7_suite() -> dict:
    from hcprim.classifier import (
        DAGGER,
        EXCEPTIONAL_ROWS,
        IMPRIMITIVE,
        classify_exceptional_table,
        exceptional_data_report,
    )
    from hcprim.classifier import _iter_exceptional_labels as iter_labels

    report = exceptional_data_report()
    flips: list[dict] = []
    for row in EXCEPTIONAL_ROWS:
        if row.case != DAGGER:
            continue
        gen = row.generator()
        assert gen is not None
        moved = fixed = 0
        bad = 0
        for lab in iter_labels(row.components):
            v = classify_exceptional_table(row, lab)
            is_moved = gen.apply(lab, row.components) != lab
            moved += is_moved
            fixed += not is_moved
            if (v.outcome == IMPRIMITIVE) != is_moved:
                bad += 1
        flips.append({"row": row.name, "moved": moved, "fixed": fixed, "mismatches": bad, "ok": bad == 0})
    ok = report["ok"] and all(f["ok"] for f in flips)
    return {"consistency": report, "dagger_flips": flips, "ok": ok}


# ---------------------------------------------------------------------------
# oracle-backed suites


def centralizer_suite(cache_dir: Path | None = None, refresh: bool = False) -> dict:
    from hcprim.oracle.sweeps import centralizer_oracle_report

    return centralizer_oracle_report(cache_dir, refresh)


def negation_suite(cache_dir: Path | None = None, refresh: bool = False) -> dict:
    from hcprim.oracle.sweeps import negation_oracle_report

    return negation_oracle_report(cache_dir, refresh)


def run_suite(name: str, cache_dir: Path | None = None, refresh: bool = False) -> dict:
    runners: dict[str, Callable[[], dict]] = {
        "polyops": polyops_suite,
        "weyl-lemma": weyl_suite,
        "centralizer-oracle": lambda: centralizer_suite(cache_dir, refresh),
        "negation-oracle": lambda: negation_suite(cache_dir, refresh),
        "e6e7-data": e6e7_suite,
        "labels": labels_suite,
    }
    if name not in runners:
        raise KeyError(name)
    return runners[name]()


__all__ = [
    "SUITES",
    "a_value_check",
    "e6e7_suite",
    "factor_type_check",
    "generic_degree_identity",
    "graph_automorphism_check",
    "involution_check",
    "label_count_check",
    "labels_suite",
    "polyops_suite",
    "run_suite",
    "specialization_check",
    "weyl_suite",
]
