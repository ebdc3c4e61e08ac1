from __future__ import annotations

import json
import shutil
import subprocess
import sys

import pytest

from hcprim import cli
from hcprim.centralizers import class_from_json, validate_class
from hcprim.classifier import classify, label_from_json

SP_CLASS = {
    "family": "SO", "m": 2, "q": 3, "alpha": [1],
    "factors": [{"poly": [[2], [1]], "mult": 1}, {"poly": [[2], [1], [1]], "mult": 1}, {"poly": [[2], [2], [1]], "mult": 1}],
}


def run(capsys, argv: list[str]) -> tuple[int, str, str]:
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name: str, obj: object) -> str:
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def test_classify_single_record(tmp_path, capsys) -> None:
    # centralizer SO_1(q) x GL_1(q^2); X^2 + X + 2 is not self-dual
    path = write(tmp_path, "in.json", {"class": SP_CLASS, "label": [[[], []], [1]]})
    code, out, _ = run(capsys, ["classify", "--input", path])
    report = json.loads(out)
    assert code == cli.EXIT_OK
    assert set(report) == {"outcome", "case", "witness", "A_order", "A_lambda_order"}
    assert report["case"] == "sp-non-self-dual"
    assert report["witness"]["orbit"] == [[[2], [1], [1]], [[2], [2], [1]]]


def test_classify_matches_library(tmp_path, capsys) -> None:
    obj = {
        "family": "CSO+", "m": 5, "q": 5, "alpha": [1],
        "factors": [
            {"poly": [[1], [1]], "mult": 4, "block_sign": "+"},
            {"poly": [[2], [1]], "mult": 1},
            {"poly": [[3], [1]], "mult": 1},
            {"poly": [[4], [1]], "mult": 4, "block_sign": "+"},
        ],
    }
    label = [{"pair": [[], [1, 1]]}, [1], {"pair": [[], [2]]}]
    path = write(tmp_path, "in.json", [{"class": obj, "label": label}])
    code, out, _ = run(capsys, ["classify", "--input", path])
    data = class_from_json(obj)
    want = classify(data, label_from_json(data, label)).to_json()
    assert code == 0 and json.loads(out) == [want]
    assert want["case"] == "spin-even-c4-moved"


@pytest.mark.parametrize(
    "record,rule",
    [
        ({"class": dict(SP_CLASS, alpha=[0]), "label": []}, "multiplier"),
        ({"class": SP_CLASS, "label": [[1]]}, "label"),
        ({"exceptional": {"group": "E7", "label": [99, 1, 1]}}, "exceptional-row"),
        ({"nothing": 1}, "schema"),
    ],
)
def test_invalid_input_exits_two(tmp_path, capsys, record: dict, rule: str) -> None:
    path = write(tmp_path, "bad.json", record)
    code, out, err = run(capsys, ["classify", "--input", path])
    assert code == cli.EXIT_INVALID
    assert json.loads(out)["rule"] == rule
    assert err.startswith("hcprim: input rejected:")


def test_malformed_json_exits_two(tmp_path, capsys) -> None:
    p = tmp_path / "x.json"
    p.write_text("{not json")
    code, out, _ = run(capsys, ["classify", "--input", str(p)])
    assert code == 2 and json.loads(out)["rule"] == "json"


def test_exceptional_lookups(tmp_path, capsys) -> None:
    path = write(tmp_path, "e.json", {"exceptional": {"group": "E6", "row": 7}, "label": [{"pair": [[1], [1, 1, 1]]}]})
    code, out, _ = run(capsys, ["classify", "--input", path])
    rep = json.loads(out)
    assert code == 0 and rep["case"] == "exceptional-dagger-fixed"
    path = write(tmp_path, "e2.json", {"exceptional": {"group": "E7", "label": [33, 4, 2]}, "label": [[3], [2, 1]]})
    code, out, _ = run(capsys, ["classify", "--input", path])
    assert code == 0 and json.loads(out)["case"] == "exceptional-dagger-moved"


def test_enumerate_round_trip(tmp_path, capsys) -> None:
    path = write(tmp_path, "cfg.json", {"family": "Sp", "m": 2, "q": 3})
    code, out, _ = run(capsys, ["enumerate", "--input", path])
    assert code == 0
    report = json.loads(out)
    assert report["count"] == len(report["classes"]) > 0
    for rec in report["classes"]:
        data = class_from_json(rec["class"])
        validate_class(data)
        for entry in rec["series"]:
            again = classify(data, label_from_json(data, entry["label"])).to_json()
            assert again == entry["verdict"]


def test_enumerate_unitary_orbit_types(tmp_path, capsys) -> None:
    path = write(tmp_path, "cfg.json", {"family": "SU", "n": 3, "q": 2})
    code, out, _ = run(capsys, ["enumerate", "--input", path])
    report = json.loads(out)
    assert code == 0 and report["count"] == 12
    assert all(rec["orbit_types"] == ["u"] for rec in report["classes"])


def test_enumerate_empty_range(tmp_path, capsys) -> None:
    path = write(tmp_path, "cfg.json", {"family": "GL", "n": [3, 2], "q": 3})
    code, out, _ = run(capsys, ["enumerate", "--input", path])
    assert code == 0 and json.loads(out)["count"] == 0


@pytest.mark.parametrize(
    "cfg,rule",
    [
        ({"family": "GL", "n": 30, "q": 7}, "bounds"),
        ({"family": "XX", "n": 2, "q": 3}, "family"),
        ({"family": "GL", "n": 2, "q": 3, "alpha": 2}, "multiplier"),
        ({"family": "CSp", "m": 2, "q": 3, "alpha": 3}, "multiplier"),
        ({"family": "GL", "q": 3}, "bounds"),
        ({"family": "GL", "n": 2, "q": 6}, "field"),
    ],
)
def test_enumerate_rejects_bad_config(tmp_path, capsys, cfg: dict, rule: str) -> None:
    path = write(tmp_path, "cfg.json", cfg)
    code, out, _ = run(capsys, ["enumerate", "--input", path])
    assert code == 2 and json.loads(out)["rule"] == rule


def test_table_format(tmp_path, capsys) -> None:
    path = write(tmp_path, "cfg.json", {"family": "Sp", "m": 2, "q": 3})
    code, out, _ = run(capsys, ["enumerate", "--input", path, "--format", "table"])
    lines = out.splitlines()
    assert code == 0 and len(lines) > 2 and set(lines[1]) <= {"-", " "}


def test_verify_exit_codes(capsys, monkeypatch) -> None:
    code, out, _ = run(capsys, ["verify", "--suite", "labels,e6e7-data"])
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(capsys, ["verify", "--suite", "nope"])
    assert code == 2 and json.loads(out)["rule"] == "suite"
    monkeypatch.setattr(cli, "run_suite", lambda name, cache_dir=None: {"ok": False})
    code, out, _ = run(capsys, ["verify", "--suite", "labels"])
    assert code == cli.EXIT_FAILURE and json.loads(out)["ok"] is False


def test_output_file(tmp_path, capsys) -> None:
    out_path = tmp_path / "out.json"
    code, out, _ = run(capsys, ["verify", "--suite", "labels", "--output", str(out_path)])
    assert code == 0 and out == ""
    assert json.loads(out_path.read_text())["ok"]


def test_byte_stable_output_via_console_script(tmp_path) -> None:
    path = write(tmp_path, "cfg.json", {"family": "CSp", "m": 2, "q": 3})
    exe = shutil.which("hcprim")
    cmd = [exe] if exe else [sys.executable, "-m", "hcprim.cli"]
    runs = [subprocess.run(cmd + ["enumerate", "--input", path], capture_output=True, check=True).stdout for _ in range(2)]
    assert runs[0] == runs[1]
    assert runs[0].endswith(b"\n")


def test_stdin_input(capsys, monkeypatch) -> None:
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps({"family": "GL", "n": 1, "q": 3})))
    code, out, _ = run(capsys, ["enumerate", "--input", "-"])
    assert code == 0 and json.loads(out)["count"] == 2
