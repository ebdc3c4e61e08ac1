"""Command line interface.

Verbs::

    hcprim classify     --input case.json        one verdict per record
    hcprim enumerate    --input bounds.json      all classes and series within bounds
    hcprim verify       --suite NAME[,NAME...]   named invariant suites
    hcprim oracle-sweep [--suite centralizer,negation,sp]

Exit status is 0 on success, 1 when a suite reports a failure and 2 when the
input is rejected; rejections name the violated rule.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable, Sequence

from hcprim.centralizers import (
    ClassDataError,
    class_from_json,
    class_to_json,
    enumerate_classes,
    factor_orbits,
    validate_class,
)
from hcprim.classifier import (
    IMPRIMITIVE,
    PRIMITIVE,
    Verdict,
    classify,
    classify_exceptional_table,
    enumerate_series,
    exceptional_label_from_json,
    exceptional_row,
    exceptional_row_from_json,
    label_from_json,
    label_to_json,
)
from hcprim.gf import FieldError
from hcprim.labels import LabelError
from hcprim.polyops import PolyError
from hcprim.suites import SUITES, run_suite

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID = 2

# enumeration cap: |F|^dim summed over the requested (q, dim) pairs, where F is
# the field of the polynomial coefficients (F_{q^2} for GU)
ENUMERATE_CAP = 50_000

# family aliases: target group name -> (family of the class data, dimension from m or n)
_ALIASES: dict[str, tuple[str, Callable[[int], int]]] = {
    "SL": ("GL", lambda n: n),
    "SU": ("GU", lambda n: n),
    "Sp": ("SO", lambda m: 2 * m + 1),
    "SpinOdd": ("CSp", lambda m: 2 * m),
    "SpinEvenPlus": ("CSO+", lambda m: 2 * m),
    "SpinEvenMinus": ("CSO-", lambda m: 2 * m),
    "GL": ("GL", lambda n: n),
    "GU": ("GU", lambda n: n),
    "SO": ("SO", lambda m: 2 * m + 1),
    "CSp": ("CSp", lambda m: 2 * m),
    "CSO+": ("CSO+", lambda m: 2 * m),
    "CSO-": ("CSO-", lambda m: 2 * m),
}

ORACLE_SWEEPS = ("centralizer", "negation", "sp")


class InputError(ClassDataError):
    pass


# ---------------------------------------------------------------------------
# input


def _read_json(path: str | None) -> object:
    try:
        text = sys.stdin.read() if path in (None, "-") else Path(path).read_text()  # type: ignore[arg-type]
    except OSError as exc:
        raise InputError(f"cannot read input: {exc}", "input") from exc
    try:
        return json.loads(text)
    except ValueError as exc:
        raise InputError(f"input is not valid JSON: {exc}", "json") from exc


def _records(obj: object) -> tuple[list[dict], bool]:
    if isinstance(obj, list):
        if not all(isinstance(r, dict) for r in obj):
            raise InputError("every record must be a JSON object", "schema")
        return list(obj), True
    if isinstance(obj, dict):
        return [obj], False
    raise InputError("input must be an object or an array of objects", "schema")


# ---------------------------------------------------------------------------
# classify


def classify_record(rec: dict) -> Verdict:
    """Classify one ``{"class": ..., "label": ...}`` or
    ``{"exceptional": ..., "label": ...}`` record."""
    if "class" in rec:
        data = class_from_json(rec["class"])
        v = validate_class(data)
        if "label" not in rec:
            raise InputError("a label is required", "label")
        return classify(v, label_from_json(v, rec["label"]))
    if "exceptional" in rec:
        ex = rec["exceptional"]
        if not isinstance(ex, dict) or "group" not in ex:
            raise InputError("exceptional records need a group", "exceptional-record")
        try:
            if "Z0" in ex or "Z0_C0" in ex or "dynkin" in ex:
                row = exceptional_row_from_json(ex)
            elif "row" in ex:
                row = exceptional_row(ex["group"], int(ex["row"]))
            elif "label" in ex:
                row = exceptional_row(ex["group"], tuple(int(x) for x in ex["label"]))
            else:
                raise InputError("give a row number, a class-type label or a full record", "exceptional-record")
        except ClassDataError:
            raise
        except (TypeError, ValueError) as exc:
            raise InputError(f"malformed exceptional lookup: {exc}", "exceptional-record") from exc
        label = rec.get("label")
        lab = None if label is None else exceptional_label_from_json(row, label)
        return classify_exceptional_table(row, lab)
    raise InputError("record needs a 'class' or an 'exceptional' entry", "schema")


def run_classify(args: argparse.Namespace) -> tuple[int, object]:
    recs, many = _records(_read_json(args.input))
    out = [classify_record(r).to_json() for r in recs]
    return EXIT_OK, out if many else out[0]


# ---------------------------------------------------------------------------
# enumerate


def _int_list(obj: object, name: str) -> list[int]:
    if isinstance(obj, bool):
        raise InputError(f"{name} must be an integer or a list", "bounds")
    if isinstance(obj, int):
        return [obj]
    if isinstance(obj, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in obj):
        return list(obj)
    raise InputError(f"{name} must be an integer or a list", "bounds")


def _range(obj: object, name: str) -> list[int]:
    """An integer, or ``[lo, hi]`` inclusive (empty when ``lo > hi``)."""
    vals = _int_list(obj, name)
    if isinstance(obj, list):
        if len(vals) != 2:
            raise InputError(f"{name} range is [lo, hi]", "bounds")
        return list(range(vals[0], vals[1] + 1))
    return vals


def enumerate_config(obj: object) -> dict:
    """Normalize an enumeration request to ``{family, qs, dims, alpha}``."""
    if not isinstance(obj, dict):
        raise InputError("enumeration config must be an object", "schema")
    fam = obj.get("family")
    if fam not in _ALIASES:
        raise InputError(f"unknown family {fam!r}", "family")
    family, dim_of = _ALIASES[fam]
    qs = _int_list(obj.get("q"), "q")
    if "dim" in obj:
        dims = _range(obj["dim"], "dim")
    elif "m" in obj or "n" in obj:
        dims = [dim_of(r) for r in _range(obj.get("m", obj.get("n")), "rank")]
    else:
        raise InputError("give dim, m or n", "bounds")
    alpha = obj.get("alpha")
    if alpha is not None and (not isinstance(alpha, int) or isinstance(alpha, bool)):
        raise InputError("alpha must be an integer", "multiplier")
    for q in qs:
        if q < 2:
            raise InputError(f"q = {q} is not a prime power", "field")
        if alpha is not None and not 0 < alpha < q:
            raise InputError(f"alpha = {alpha} is not a nonzero element of F_{q}", "multiplier")
    if alpha not in (None, 1) and family in ("GL", "GU", "SO"):
        raise InputError(f"family {family} has multiplier 1", "multiplier")
    dims = [d for d in dims if d >= 1]
    cost = sum((q * q if family == "GU" else q) ** d for q in qs for d in dims)
    if cost > ENUMERATE_CAP:
        raise InputError(f"bounds too large: cost {cost} exceeds the cap {ENUMERATE_CAP}", "bounds")
    return {"family": family, "q": qs, "dim": dims, "alpha": alpha}


def _series_summary(entries: list) -> dict:
    counts = {PRIMITIVE: 0, IMPRIMITIVE: 0}
    for e in entries:
        counts[e.verdict.outcome] += 1
    return counts


def enumerate_report(cfg: dict, jobs: int = 1) -> dict:
    classes = []
    for q in cfg["q"]:
        for dim in cfg["dim"]:
            try:
                found = enumerate_classes(cfg["family"], q, dim, cfg["alpha"])
            except FieldError as exc:
                raise InputError(str(exc), "field") from exc
            for data in found:
                entries = enumerate_series(data, jobs=jobs)
                rec: dict = {
                    "class": class_to_json(data),
                    "series": [
                        {
                            "label": label_to_json(e.representative),
                            "orbit_size": e.orbit_size,
                            "verdict": e.verdict.to_json(),
                        }
                        for e in entries
                    ],
                    "summary": _series_summary(entries),
                    "label_independent": len({e.verdict.outcome for e in entries}) <= 1,
                }
                if data.family == "GU":
                    rec["orbit_types"] = sorted({o.kind for o in factor_orbits(data)})
                classes.append(rec)
    return {"config": cfg, "count": len(classes), "classes": classes}


def run_enumerate(args: argparse.Namespace) -> tuple[int, object]:
    cfg = enumerate_config(_read_json(args.input))
    return EXIT_OK, enumerate_report(cfg, jobs=args.jobs)


# ---------------------------------------------------------------------------
# verify and oracle-sweep


def _suite_names(text: str | None, allowed: Sequence[str]) -> list[str]:
    if text in (None, "all"):
        return list(allowed)
    names = [s.strip() for s in text.split(",") if s.strip()]  # type: ignore[union-attr]
    for s in names:
        if s not in allowed:
            raise InputError(f"unknown suite {s!r}; choose from {', '.join(allowed)}", "suite")
    return names


def run_verify(args: argparse.Namespace) -> tuple[int, object]:
    names = _suite_names(args.suite, SUITES)
    reports = {n: run_suite(n, args.cache_dir) for n in names}
    ok = all(r["ok"] for r in reports.values())
    return (EXIT_OK if ok else EXIT_FAILURE), {"suites": reports, "ok": ok}


def _sweep(name: str, cache_dir: Path | None) -> dict:
    from hcprim.oracle.sweeps import centralizer_oracle_report, negation_oracle_report, sp_sweep_report

    fn = {"centralizer": centralizer_oracle_report, "negation": negation_oracle_report, "sp": sp_sweep_report}[name]
    return fn(cache_dir, refresh=True)


def run_oracle_sweep(args: argparse.Namespace) -> tuple[int, object]:
    names = _suite_names(args.suite, ORACLE_SWEEPS)
    if args.jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_sweep, names, [args.cache_dir] * len(names)))
    else:
        results = [_sweep(n, args.cache_dir) for n in names]
    reports = dict(zip(names, results))
    ok = all(r["ok"] for r in reports.values())
    return (EXIT_OK if ok else EXIT_FAILURE), {"sweeps": reports, "ok": ok}


# ---------------------------------------------------------------------------
# output


def _table(rows: list[list[object]], header: list[str]) -> str:
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _factors_str(cls: dict) -> str:
    parts = []
    for f in cls["factors"]:
        sign = f.get("block_sign", "")
        parts.append(f"{json.dumps(f['poly'], separators=(',', ':'))}^{f['mult']}{sign}")
    return " ".join(parts)


def render_table(verb: str, report: object) -> str:
    if verb == "classify":
        items = report if isinstance(report, list) else [report]
        return _table(
            [[i, v["outcome"], v["case"], v["A_order"], v["A_lambda_order"]] for i, v in enumerate(items)],
            ["#", "outcome", "case", "|A|", "|A_lambda|"],
        )
    if verb == "enumerate":
        rows = []
        for i, c in enumerate(report["classes"]):  # type: ignore[index]
            for s in c["series"]:
                v = s["verdict"]
                rows.append(
                    [i, _factors_str(c["class"]), json.dumps(s["label"], separators=(",", ":")), s["orbit_size"], v["outcome"], v["case"]]
                )
        return _table(rows, ["class", "factors", "label", "orbit", "outcome", "case"])
    key = "suites" if verb == "verify" else "sweeps"
    return _table(
        [[name, "ok" if r["ok"] else "FAILED"] for name, r in report[key].items()],  # type: ignore[index]
        ["suite", "status"],
    )


def _emit(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)  # type: ignore[arg-type]


def dumps(report: object) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# entry point


VERBS: dict[str, Callable[[argparse.Namespace], tuple[int, object]]] = {
    "classify": run_classify,
    "enumerate": run_enumerate,
    "verify": run_verify,
    "oracle-sweep": run_oracle_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="input JSON file ('-' for stdin)")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--suite", help="comma-separated suite names, or 'all'")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--cache-dir", type=Path, help="directory for cached oracle reports")
    parser = argparse.ArgumentParser(prog="hcprim", description="Harish-Chandra primitivity of irreducible characters.")
    sub = parser.add_subparsers(dest="verb", required=True)
    sub.add_parser("classify", parents=[common], help="classify class data and a unipotent label")
    sub.add_parser("enumerate", parents=[common], help="enumerate classes and series within bounds")
    sub.add_parser("verify", parents=[common], help=f"run suites: {', '.join(SUITES)}")
    sub.add_parser("oracle-sweep", parents=[common], help=f"recompute oracle sweeps: {', '.join(ORACLE_SWEEPS)}")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    if args.verb in ("classify", "enumerate") and args.input is None:
        parser.error(f"{args.verb} needs --input")
    try:
        code, report = VERBS[args.verb](args)
    except ClassDataError as exc:
        print(f"hcprim: input rejected: {exc}", file=sys.stderr)
        _emit(dumps({"error": str(exc), "rule": exc.rule}), args.output)
        return EXIT_INVALID
    except (LabelError, PolyError, FieldError) as exc:
        print(f"hcprim: input rejected: [schema] {exc}", file=sys.stderr)
        _emit(dumps({"error": str(exc), "rule": "schema"}), args.output)
        return EXIT_INVALID
    text = render_table(args.verb, report) if args.format == "table" else dumps(report)
    _emit(text, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())


__all__ = ["ENUMERATE_CAP", "build_parser", "classify_record", "enumerate_config", "enumerate_report", "main"]
