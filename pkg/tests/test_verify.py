import json
import subprocess
import sys

import pytest

from fusionkit import cli, pcgroup, verify
from fusionkit.perm import PermGroup


def strip_timing(reports):
    out = []
    for r in reports:
        d = r.to_dict()
        d.pop("elapsed_ms")
        out.append(d)
    return json.dumps(out, sort_keys=True)


@pytest.mark.parametrize("kind", pcgroup.SYLOW_KINDS)
def test_lemma33_reports(kind):
    r = verify.check_lemma33(kind)
    assert r.status == "pass", r.details
    assert r.details["center_order"] == (4 if kind == "L34" else 2)
    assert r.details["thompson_order"] == 64
    assert r.details["max_elementary_abelians"] == [["t1", "t2", "a1", "a2"], ["t1", "t2", "b1", "b2"]]
    assert r.details["relations"] == verify.INPUT_DATA
    assert r.details["inner_only_fuses_center"] is False
    assert r.details["automizer_pattern_fuses_center"] is True


def test_lemma33_orders():
    assert verify.check_lemma33("L34_f").details["order"] == 128
    assert verify.check_lemma33("L34_fu").details["order"] == 256


def test_lemma33_corrupted_fails():
    r = verify.check_lemma33("L34_f", corrupt=True)
    assert r.status == "fail"
    assert "Z(T1) as stated" in r.details["failed"]


def test_order3_automorphism_cycles_center():
    t0 = pcgroup.builtin_sylow("L34")
    rho = verify.order3_center_automorphism(t0)
    pcgroup.check_automorphism(t0, rho)
    t1, t2 = t0.word("t1"), t0.word("t2")
    assert rho[t1] == t2 and rho[t2] == t0.mul(t1, t2)
    assert all(rho[rho[rho[x]]] == x for x in range(t0.order))


@pytest.mark.parametrize("base,cgx", [("a6", 720), ("l32", 336)])
def test_wreath(base, cgx):
    r = verify.check_wreath_model(base)
    assert r.status == "pass", r.details
    d = json.dumps(r.details)
    assert str(cgx) in d
    bad = verify.check_wreath_model(base, corrupt=True)
    assert bad.status == "fail"


@pytest.mark.parametrize("name", ["s4", "d8", "a6", "l32"])
def test_fusion_checks(name):
    r = verify.check_fusion_axioms(name)
    assert r.status == "pass", r.details
    assert r.details["oracle_discrepancies"] == 0
    assert r.details["local_subsystem_discrepancies"] == 0


def test_fusion_two_group_o2_is_s():
    r = verify.check_fusion_axioms("d8")
    assert r.details["O2(F)_order"] == r.details["sylow_order"] == 8


def test_fusion_from_file(tmp_path):
    path = tmp_path / "s3.json"
    path.write_text(json.dumps({"degree": 3, "generators": [[2, 1, 3], [2, 3, 1]], "name": "S3"}))
    r = verify.check_fusion_axioms(str(path))
    assert r.check_id == "check_fusion_axioms:s3" and r.status == "pass"


def test_fusion_missing_file_is_error():
    r = verify.check_fusion_axioms("/nonexistent/group.json")
    assert r.status == "error"


def test_fusion_corrupted_fails():
    assert verify.check_fusion_axioms("s4", corrupt=True).status == "fail"


def test_registry_ids():
    ids = [cid for cid, _ in verify.registry()]
    assert len(ids) == len(set(ids)) == 13
    assert "check_lemma33:L34_f" in ids and ids[-1] == "negative_controls"


def test_determinism_fast_checks():
    only = ["check_lemma33:L34_u", "check_fusion_axioms:s4", "check_wreath_model:l32"]
    a = verify.run_checks(0, only)
    b = verify.run_checks(0, only)
    # declaration order, not request order
    assert [r.check_id for r in a] == ["check_lemma33:L34_u", "check_wreath_model:l32", "check_fusion_axioms:s4"]
    assert strip_timing(a) == strip_timing(b)


def test_exit_codes():
    mk = verify.CheckReport
    assert verify.exit_code([mk("a", "pass")]) == 0
    assert verify.exit_code([mk("a", "pass"), mk("b", "fail")]) == 1
    assert verify.exit_code([mk("a", "fail"), mk("b", "error")]) == 2


# ---- CLI ----------------------------------------------------------------------------

def test_cli_only_single_entry(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = cli.main(["run-all", "--only", "check_lemma33:L34_f", "--out", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    assert len(data) == 1 and data[0]["check_id"] == "check_lemma33:L34_f"
    assert set(data[0]) == {"check_id", "status", "details", "elapsed_ms", "seed"}


def test_cli_unwritable(tmp_path):
    code = cli.main(["run-all", "--only", "check_lemma33:L34_f", "--out", str(tmp_path / "no" / "dir" / "r.json")])
    assert code == 2
    code = verify.run_all(only=["check_lemma33:L34"], output=str(tmp_path / "no" / "r.json"))
    assert code == 2


def test_cli_unknown_only():
    assert cli.main(["run-all", "--only", "nope"]) == 2


def test_cli_list(capsys):
    assert cli.main(["run-all", "--list"]) == 0
    assert "negative_controls" in capsys.readouterr().out


def test_cli_check_corrupted_exit_1(capsys):
    assert cli.main(["check", "--lemma", "3.3", "--kind", "L34_u", "--corrupted"]) == 1
    data = json.loads(capsys.readouterr().out)
    assert data[0]["status"] == "fail"


def test_cli_fusion_and_wreath(capsys):
    assert cli.main(["fusion", "--group", "d8"]) == 0
    assert cli.main(["wreath", "--base", "l32"]) == 0


def test_cli_fusion_bad_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.main(["fusion", "--group", str(bad)]) == 2


def test_console_module_entry():
    proc = subprocess.run([sys.executable, "-m", "fusionkit.cli", "run-all", "--list"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "check_lemma31" in proc.stdout


def test_builtin_group_files_match():
    for name in verify.BUILTIN_GROUPS:
        g = verify.load_perm_group(name)
        assert isinstance(g, PermGroup) and g.order in (24, 8, 360, 168)
