import io
import json
import subprocess
import sys

import pytest

from charmorph.checks import CheckReport
from charmorph.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_example1_char_and_hom():
    code, out, _ = run("check", "--fixture", "example1", "--a", "1", "--b", "1", "--checks", "char,hom")
    assert code == 1
    lines = out.splitlines()
    assert lines[0].startswith("char: pass")
    assert any(line.startswith("hom: fail") for line in lines)


def test_diag_hom_all_pass():
    code, out, _ = run("check", "--fixture", "diag_hom", "--d", "3", "--dim", "3",
                       "--checks", "hom,char,minchar,nc")
    assert code == 0
    assert out.count(": pass") == 4


def test_lemma_n12_reports_zero_ratio_quadruples():
    code, out, _ = run("lemma", "--n", "12")
    assert code == 1
    assert "110 counterexamples" in out


def test_lemma_nondegenerate_holds():
    code, out, _ = run("lemma", "--n", "12", "--nondegenerate")
    assert code == 0
    assert "0 counterexamples" in out


def test_lemma_n2():
    assert run("lemma", "--n", "2")[0] == 0


def test_jsonl_roundtrip():
    code, out, _ = run("check", "--fixture", "example2", "--output", "jsonl", "--checks", "hom,char,minchar,nc")
    assert code == 1
    reports = [CheckReport.from_dict(json.loads(line)) for line in out.splitlines()]
    assert [(r.check_name, r.verdict) for r in reports] == [
        ("hom", "fail"), ("char", "pass"), ("minchar", "fail"), ("nc", "fail")]


def test_classify_and_roots():
    code, out, _ = run("check", "--fixture", "example1", "--field", "cyclotomic 3", "--checks", "roots",
                       "--n", "3", "--classify")
    assert code == 1
    assert "roots: fail" in out
    assert "irreducibility: Reducible" in out


def test_input_document(tmp_path):
    doc = tmp_path / "phi.txt"
    code, text, _ = run("fixtures", "--name", "example2")
    assert code == 0
    doc.write_text(text)
    code, out, _ = run("check", "--input", str(doc), "--checks", "char", "--classify")
    assert code == 0
    assert "Irreducible (GeneratedDimension)" in out
    code, out, _ = run("check", "--input", str(doc), "--checks", "nc", "--nc-mode", "naive")
    assert code == 1


def test_search_jsonl():
    code, out, _ = run("search", "--field", "gf 3", "--d", "2", "--dim", "1", "--output", "jsonl")
    assert code == 0
    lines = [json.loads(line) for line in out.splitlines()]
    assert lines[-1]["summary"]["results"] == 2
    assert all(rec["is_hom"] for rec in lines[:-1])


@pytest.mark.parametrize("argv", [
    ("check", "--fixture", "diag_hom", "--field", "gf 3", "--d", "3", "--checks", "nc"),
    ("check", "--fixture", "example1", "--a", "1", "--b", "-1"),
    ("check", "--fixture", "example1", "--checks", "roots"),
    ("check", "--fixture", "example1", "--checks", "roots", "--n", "2"),
    ("check", "--fixture", "example1", "--checks", "roots", "--n", "3"),
    ("check", "--fixture", "example1", "--checks", "bogus"),
    ("check", "--fixture", "example1", "--checks", ","),
    ("check", "--input", "/nonexistent/file"),
    ("search", "--field", "gf 3", "--d", "2", "--dim", "3"),
    ("search", "--field", "rational", "--d", "2", "--dim", "1"),
    ("lemma", "--n", "5", "--field", "rational"),
    ("check", "--fixture", "example1", "--field", "gf 4"),
    ("frobnicate",),
])
def test_errors_exit_2(argv):
    code, out, err = run(*argv)
    assert code == 2
    assert out == ""


def test_parse_error_reports_line(tmp_path):
    doc = tmp_path / "bad.txt"
    doc.write_text("field rational\nd 1\ndim 1\nmatrix 1\nz+1\n")
    code, _, err = run("check", "--input", str(doc))
    assert code == 2
    assert "line 5" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "charmorph", "check", "--fixture", "diag_hom", "--d", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
