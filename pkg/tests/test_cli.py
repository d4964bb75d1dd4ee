import io
import json
import subprocess
import sys

import pytest

from operadcalc.cli import run
from operadcalc.quotient import Presentation

ASS = "[generators]\nm : 2\n[relations]\nm(m(1,2),3) - m(1,m(2,3))\n"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def ass_file(tmp_path):
    p = tmp_path / "ass.pres"
    p.write_text(ASS)
    return str(p)


def test_free_dim():
    code, out, _ = call("free-dim", "--signature", "m:2", "--order", "5")
    assert code == 0
    assert out == "1\t1\n2\t2\n3\t12\n4\t120\n5\t1680\n"


def test_gs_check_from_literals():
    code, out, _ = call("gs-check", "--generators", "0,0,1", "--relations", "0,0,0,1", "--order", "8")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "NegativeAt(3)" and doc["first_negative"] == 3
    assert all(isinstance(c, str) for c in doc["criterion"])


def test_gs_check_with_presentation(ass_file):
    code, out, _ = call("gs-check", "--input", ass_file, "--order", "6", "--max-degree", "6")
    doc = json.loads(out)
    assert doc["euler_defect"] == ["0", "0", "0", "0", "1", "3", "6"]
    assert doc["euler_defect_nonnegative"] is True


def test_quotient_dim_line(ass_file):
    code, out, _ = call("quotient-dim", "--input", ass_file, "--arity", "3")
    assert code == 0 and out == "3\t12\t6\t6\n"


def test_reduce_prints_canonical_text(ass_file):
    code, out, _ = call("reduce", "--input", ass_file, "--element", "m(m(3,1),2) - m(3,m(1,2))")
    assert code == 0 and out == "0\n"
    _, out, _ = call("reduce", "--input", ass_file, "--element", "m(m(2,1),3)")
    assert out == "m(2,m(1,3))\n"


def test_closure_and_root():
    _, out, _ = call("closure", "--signature", "m:2", "--element", "m(1,2)", "--max-degree", "4")
    assert out == "1\t1\n2\t1\n3\t2\n4\t5\n"
    _, out, _ = call("gs-root", "--generators", "0,0,2", "--relations", "0", "--interval", "0,1")
    root = json.loads(out)["root"]
    assert root == {"lo": "127/256", "hi": "129/256", "derivative_nonzero": True}


def test_series_command():
    _, out, _ = call("series", "0,1,1,1,1,1", "--op", "reversion", "--order", "5", "--format", "json")
    assert json.loads(out)["series"] == ["0", "1", "-1", "1", "-1", "1"]


def test_input_errors_exit_2(ass_file, tmp_path):
    code, _, err = call("reduce", "--input", ass_file, "--element", "m(1,q(2,3))")
    assert code == 2 and "position 4" in err
    bad = tmp_path / "bad.pres"
    bad.write_text("[generators]\nm : 2\n[relations]\nm(1,1)\n")
    code, _, err = call("free-dim", "--input", str(bad))
    assert code == 2 and "line 4" in err
    code, _, _ = call("free-dim", "--input", str(tmp_path / "missing.pres"))
    assert code == 2
    code, _, _ = call("gs-check", "--generators", "0,0,x", "--relations", "0")
    assert code == 2


def test_budget_exit_3(ass_file):
    code, _, err = call("quotient-dim", "--input", ass_file, "--order", "6", "--budget", "100")
    assert code == 3 and "budget" in err


def test_kurosh_round_trip_and_verify(tmp_path):
    prefix = str(tmp_path / "w")
    code, out, _ = call("kurosh-weak", "--signature", "m:2", "--elements", "2", "--emit", prefix)
    assert code == 0 and json.loads(out)["verdict"] == "NonNegativeUpToOrder"
    text = (tmp_path / "w.pres").read_text()
    assert Presentation.from_text(text).to_text() == text
    code, out, _ = call("burnside-verify", "--input", prefix + ".pres", "--certificate", prefix + ".json", "--max-degree", "4")
    assert code == 0 and json.loads(out)["passed"] is True


def test_failed_verification_exits_1(tmp_path):
    prefix = str(tmp_path / "s")
    call("kurosh-strong", "--signature", "a:2,b:2", "--emit", prefix)
    # swap in a presentation without relations: clause c must fail
    (tmp_path / "s.pres").write_text("[generators]\na : 2\nb : 2\n[relations]\n")
    code, out, _ = call("burnside-verify", "--input", prefix + ".pres", "--certificate", prefix + ".json", "--max-degree", "3")
    assert code == 1 and json.loads(out)["passed"] is False


def test_output_is_deterministic(tmp_path):
    runs = []
    for name in ("a", "b"):
        prefix = str(tmp_path / name)
        call("kurosh-strong", "--signature", "a:2,b:2", "--emit", prefix)
        runs.append(((tmp_path / f"{name}.pres").read_bytes(), (tmp_path / f"{name}.json").read_bytes()))
    assert runs[0] == runs[1]
    first = call("gs-check", "--generators", "0,0,2", "--relations", "0,0,0,1")
    assert first == call("gs-check", "--generators", "0,0,2", "--relations", "0,0,0,1")


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "operadcalc", "free-dim", "--signature", "m:2", "--order", "3"],
        capture_output=True, text=True, check=True,
    )
    assert res.stdout == "1\t1\n2\t2\n3\t12\n"
