"""Whole-group oracle sweeps comparing predictions with exhaustive search.

Each sweep returns a JSON-ready report ``{"rows": [...], "ok": bool, ...}``
and can be cached on disk through :func:`hcprim.oracle.matrix.cached_report`.
"""
from __future__ import annotations

from itertools import permutations
from pathlib import Path
from typing import Sequence

from hcprim.centralizers import (
    class_count,
    class_to_json,
    conjugate_to_negative,
    predicted_centralizer_order,
    validate_class,
)
from hcprim.classifier import IMPRIMITIVE, enumerate_series
from hcprim.gf import Field, Poly, factor_raw, p_add, p_mul, p_sub, p_trim
from hcprim.oracle.matrix import (
    brute_negation_conjugacy,
    build_matrix_group,
    cached_report,
    semisimple_classes,
)
from hcprim.polyops import star_raw

CENTRALIZER_GROUPS: tuple[tuple[str, int, int], ...] = (
    ("GU", 3, 2),
    ("GU", 2, 3),
    ("SL", 2, 3),
    ("Sp", 4, 3),
    ("CSp", 4, 3),
    ("SO+", 4, 3),
    ("SO-", 4, 3),
    ("CSO+", 4, 3),
    ("CSO-", 4, 3),
)

# (group whose classes are swept, group searched for conjugators)
NEGATION_GROUPS: tuple[tuple[str, str], ...] = (("CSp", "CSp"), ("CSO+", "CO+"), ("CSO-", "CO-"))


def _factors_json(data) -> list:
    return [[list(f.poly), f.mult, f.block_sign] for f in data.factors]


def centralizer_sweep(kind: str, n: int, q: int) -> dict:
    """For every semisimple class: brute centralizer order against the
    predicted one, and the number of classes sharing the data against
    :func:`class_count`."""
    G = build_matrix_group(kind, n, q)
    rows = []
    records = semisimple_classes(G)
    for rec in records:
        v = validate_class(rec.data)
        pred = predicted_centralizer_order(v, kind)
        classes, rem = divmod(rec.count * rec.centralizer_order, G.order)
        want_classes = class_count(v, kind)
        rows.append(
            {
                "factors": _factors_json(rec.data),
                "alpha": rec.data.alpha,
                "brute": rec.centralizer_order,
                "predicted": pred,
                "classes": classes,
                "predicted_classes": want_classes,
                "ok": pred == rec.centralizer_order and rem == 0 and classes == want_classes,
            }
        )
    return {
        "group": f"{kind}_{n}({q})",
        "order": G.order,
        "semisimple_elements": sum(r.count for r in records),
        "rows": rows,
        "ok": all(r["ok"] for r in rows),
    }


def negation_sweep(kind: str, ambient: str, n: int = 4, q: int = 3) -> dict:
    """``s ~ -s`` prediction against exhaustive search for every semisimple
    class of ``kind``.  For orthogonal groups the conjugators are searched in
    the full conformal group and their placement relative to the special
    subgroup is compared as well."""
    G = build_matrix_group(kind, n, q)
    A = G if ambient == kind else build_matrix_group(ambient, n, q)
    orthogonal = kind != "CSp"
    rows = []
    for rec in semisimple_classes(G):
        pred = conjugate_to_negative(validate_class(rec.data))
        brute = brute_negation_conjugacy(A, rec.representative)
        ok = pred.value == brute.found
        if orthogonal:
            ok = ok and pred.parities == brute.placements
        rows.append(
            {
                "factors": _factors_json(rec.data),
                "alpha": rec.data.alpha,
                "predicted": pred.value,
                "brute": brute.found,
                "predicted_placements": sorted(pred.parities),
                "brute_placements": sorted(brute.placements),
                "ok": ok,
            }
        )
    return {"group": f"{kind}_{n}({q})", "ambient": f"{ambient}_{n}({q})", "rows": rows, "ok": all(r["ok"] for r in rows)}


def brute_charpoly(F: Field, rows: Sequence[Sequence[int]]) -> Poly:
    """``det(X - s)`` by the Leibniz expansion over ``F[X]``."""
    n = len(rows)
    entry = [[p_sub(F, (0, 1) if i == j else (0,), (rows[i][j],)) for j in range(n)] for i in range(n)]
    total: Poly = (0,)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term: Poly = (1,)
        for i, j in enumerate(perm):
            term = p_mul(F, term, entry[i][j])
        if inv % 2:
            term = p_sub(F, (0,), term)
        total = p_add(F, total, term)
    return p_trim(total)


def has_non_self_dual_factor(F: Field, charpoly: Poly) -> bool:
    """Whether some irreducible factor ``mu`` of ``charpoly`` differs from ``mu*``."""
    return any(star_raw(F, mu) != mu for mu, _ in factor_raw(F, charpoly))


def sp_sweep(n: int = 5, q: int = 3) -> dict:
    """Classify every Lusztig series indexed by a class of ``SO_n(q)`` for the
    symplectic target and compare with the factor test on brute-force
    characteristic polynomials."""
    G = build_matrix_group("SO", n, q)
    rows = []
    for rec in semisimple_classes(G):
        chi = brute_charpoly(G.F, G.V.rows(rec.representative))
        expect_imprimitive = has_non_self_dual_factor(G.F, chi)
        verdicts = sorted({e.verdict.outcome for e in enumerate_series(rec.data)})
        ok = verdicts == [IMPRIMITIVE if expect_imprimitive else "PRIMITIVE"]
        rows.append(
            {
                "class": class_to_json(rec.data),
                "charpoly": list(chi),
                "non_self_dual": expect_imprimitive,
                "outcomes": verdicts,
                "ok": ok,
            }
        )
    return {"group": f"SO_{n}({q})", "rows": rows, "ok": all(r["ok"] for r in rows)}


def centralizer_oracle_report(cache_dir: Path | None = None, refresh: bool = False) -> dict:
    reports = [
        cached_report(f"centralizer-{k}-{n}-{q}", lambda k=k, n=n, q=q: centralizer_sweep(k, n, q), cache_dir, refresh)
        for k, n, q in CENTRALIZER_GROUPS
    ]
    return {"groups": reports, "ok": all(r["ok"] for r in reports)}


def negation_oracle_report(cache_dir: Path | None = None, refresh: bool = False) -> dict:
    reports = [
        cached_report(f"negation-{k}-{a}", lambda k=k, a=a: negation_sweep(k, a), cache_dir, refresh)
        for k, a in NEGATION_GROUPS
    ]
    return {"groups": reports, "ok": all(r["ok"] for r in reports)}


def sp_sweep_report(cache_dir: Path | None = None, refresh: bool = False) -> dict:
    return cached_report("sp-sweep-SO-5-3", sp_sweep, cache_dir, refresh)


__all__ = [
    "CENTRALIZER_GROUPS",
    "NEGATION_GROUPS",
    "brute_charpoly",
    "centralizer_oracle_report",
    "centralizer_sweep",
    "has_non_self_dual_factor",
    "negation_oracle_report",
    "negation_sweep",
    "sp_sweep",
    "sp_sweep_report",
]
