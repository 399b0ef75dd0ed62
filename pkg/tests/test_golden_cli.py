import json
import shutil

import pytest

from mcg_workbench import golden
from mcg_workbench.cli import main
from mcg_workbench.permgrp import PermRep


def test_degrees_and_names(golden_data):
    degrees = {name: rep.degree for name, rep in golden_data.tables.items()}
    assert degrees == {"phi2_minus": 6, "phi2_alpha": 6, "phi2_plus": 10, "phi3_minus": 28, "phi3_plus": 36}
    assert golden_data.tables["phi3_plus"].names == ("T0", "T1", "T2", "T3", "T4", "T5", "T6")
    assert golden_data.alpha.degree == 6


def test_points_are_one_based_in_files(golden_data):
    doc = json.loads((golden.data_dir() / "phi2_minus.json").read_text())
    assert {g["name"]: g["cycles"] for g in doc["generators"]}["T1"] == "(1 2)"
    assert golden_data.tables["phi2_minus"]["T1"].images[:2] == (1, 0)


def _tampered_copy(tmp_path, keep_sums):
    target = tmp_path / "data"
    shutil.copytree(golden.data_dir(), target)
    path = target / "phi3_minus.json"
    doc = json.loads(path.read_text())
    for gen in doc["generators"]:
        if gen["name"] == "T5":
            gen["cycles"] = gen["cycles"].replace("(2 4)", "(2 7)")
    path.write_text(json.dumps(doc, indent=2) + "\n")
    if not keep_sums:
        (target / "SHA256SUMS").unlink()
    return target


def test_checksum_catches_tampering(tmp_path):
    target = _tampered_copy(tmp_path, keep_sums=True)
    with pytest.raises(golden.ChecksumMismatch):
        golden.load("phi3_minus", target)


def test_tampered_table_fails_its_relator_audit(tmp_path, capsys):
    target = _tampered_copy(tmp_path, keep_sums=False)
    code = main(["--format", "json", "--data-dir", str(target), "verify-all", "--tier", "quick"])
    report = json.loads(capsys.readouterr().out)
    assert code == 1
    check = next(c for c in report["checks"] if c["name"] == "golden/phi3_minus/relators")
    assert not check["passed"]
    assert check["artifacts"]["failed_relators"]
    assert "T5" in check["detail"]


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_cli_presentation_and_abelianize(capsys):
    code, out = run(capsys, "presentation", "--genus", "2", "--closed")
    assert code == 0 and out.out.startswith("gens: T0 T1 T2 T3 T4")
    assert "T1^2 (T0 T3)^-4" in out.out
    code, out = run(capsys, "--format", "json", "abelianize", "--genus", "2")
    assert json.loads(out.out) == {"invariants": [10]}


def test_cli_enumerate_with_presentation_file(tmp_path, capsys):
    pres = tmp_path / "s3.txt"
    pres.write_text("gens: x y\nx^2\ny^2\nx y x = y x y  # braid\n")
    code, out = run(capsys, "--format", "json", "enumerate", "--pres", str(pres), "--rep")
    doc = json.loads(out.out)
    assert code == 0 and doc["index"] == 6 and doc["rep"]["degree"] == 6
    assert "seconds" not in doc["stats"]


def test_cli_enumerate_overflow(capsys):
    code, out = run(capsys, "enumerate", "--genus", "2", "--relator", "T1^2", "--max-cosets", "50")
    assert code == 1 and "failed" in out.out


def test_cli_low_index_long_guard_and_resume(tmp_path, capsys):
    code, out = run(capsys, "low-index", "--genus", "3", "--max-index", "36")
    assert code == 2 and "--long" in out.err
    ckpt = tmp_path / "c.json"
    code, _ = run(capsys, "low-index", "--genus", "2", "--max-index", "10", "--checkpoint", str(ckpt), "--max-nodes", "200")
    assert code == 0 and ckpt.exists()
    code, out = run(capsys, "low-index", "--genus", "2", "--max-index", "10", "--checkpoint", str(ckpt))
    assert code == 2 and "--resume" in out.err
    code, out = run(capsys, "--format", "json", "low-index", "--genus", "2", "--max-index", "10",
                    "--checkpoint", str(ckpt), "--resume")
    doc = json.loads(out.out)
    assert doc["complete"] and [r["index"] for r in doc["records"]] == [1, 2, 5, 6, 6, 10, 10]


def test_cli_phi_verify_against(capsys):
    path = golden.data_dir() / "phi3_plus.json"
    code, out = run(capsys, "phi", "--genus", "3", "--type", "+", "--verify-against", str(path), "--restrict")
    assert code == 0 and "yes, via" in out.out and "[10, 10, 10, 6]" in out.out
    code, out = run(capsys, "phi", "--genus", "2", "--type", "-", "--verify-against",
                    str(golden.data_dir() / "phi2_alpha.json"))
    assert code == 1


def test_cli_phi_json_is_deterministic(capsys):
    _, first = run(capsys, "--format", "json", "phi", "--genus", "3", "--type", "-")
    _, second = run(capsys, "phi", "--genus", "3", "--type", "-", "--format", "json", "--workers", "4")
    assert first.out == second.out
    rep = PermRep.from_json_dict(json.loads(first.out)["rep"])
    assert rep.degree == 28 and rep.metadata["labeling"] == "sorted-b"


def test_cli_orders(capsys):
    code, out = run(capsys, "orders", "--genus", "4", "--ledger", "--relations")
    assert code == 0 and "|O-|/2" in out.out and "197406720" in out.out
    code, out = run(capsys, "--format", "json", "orders", "--genus", "3", "--relations")
    assert json.loads(out.out)["relations"]["holds"]


def test_cli_bench(capsys):
    code, out = run(capsys, "--format", "json", "bench", "--genus", "2", "--max-index", "6")
    assert code == 0 and json.loads(out.out)["identical"]


def test_cli_verify_all_quick_text(capsys, tmp_path):
    out_file = tmp_path / "r.json"
    code, _ = run(capsys, "verify-all", "--format", "json", "--out", str(out_file))
    doc = json.loads(out_file.read_text())
    # the printed closed-surface relation fails for the genus-3 tables
    assert sorted(doc["failures"]) == ["golden/phi3_minus/closed", "golden/phi3_plus/closed"]
    assert code == 1
    names = [c["name"] for c in doc["checks"]]
    assert names == sorted(names)


def test_cli_bad_usage(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["orders"])
    assert exc.value.code == 2
    code, out = run(capsys, "enumerate")
    assert code == 2 and "--pres" in out.err
