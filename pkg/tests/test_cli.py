import json
import subprocess
import sys


from fredkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


def test_classify_amplified_pair(capsys):
    code, out, _ = run(capsys, "classify", "inf(bshift) (+) inf(shift)")
    assert code == 0
    assert out == "not semi-Fredholm; α=∞, β=∞"


def test_meet_spectrum(capsys):
    assert run(capsys, "meet-spectrum", "--kind=b", "shift", "bshift")[1] == "unit circle"


def test_spectrum_json(capsys):
    code, out, _ = run(capsys, "--json", "spectrum", "--kind", "ab", "shift")
    data = json.loads(out)
    assert code == 0 and data["description"] == "unit circle"


def test_invariants(capsys):
    code, out, _ = run(capsys, "invariants", "--powers", "2", "bshift^2 (+) jordan(2)")
    assert code == 0
    assert "index: 2" in out
    assert out.splitlines()[-1].split() == ["2", "6", "2"]


def test_normal_form_exit_codes(capsys):
    assert run(capsys, "normal-form", "bshift (+) shift")[0] == 0
    code, _, err = run(capsys, "normal-form", "inf(bshift) (+) inf(shift)")
    assert code == 1 and "not semi-Fredholm" in err


def test_complete(capsys):
    code, out, _ = run(capsys, "complete", "--kind", "b", "shift", "bshift")
    assert code == 0 and out.startswith("possible; C = {1 -> 1}")
    code, out, _ = run(capsys, "complete", "--kind", "b", "shift", "shift")
    assert code == 0 and out.startswith("impossible")


def test_parse_and_usage_errors(capsys):
    assert run(capsys, "classify", "jordan(0)")[0] == 2
    assert run(capsys, "classify", "shift (+)")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "spectrum", "--kind", "zz", "shift")[0] == 2


def test_verify_is_deterministic(capsys):
    a = json.loads(run(capsys, "--json", "verify", "--suite", "browder_classes", "--cases", "50", "--seed", "42")[1])
    b = json.loads(run(capsys, "--json", "verify", "--suite", "browder_classes", "--cases", "50", "--seed", "42")[1])
    assert a["passed"]
    assert a["suites"][0]["checked"] == b["suites"][0]["checked"] == 50


def test_run_program(tmp_path, capsys):
    prog = tmp_path / "demo.fk"
    prog.write_text("let A = shift\nlet B = adj(A)\nclassify B\nmeet-spectrum --kind b A B\n")
    code, out, _ = run(capsys, "run", str(prog))
    assert code == 0
    assert out.splitlines()[-1] == "unit circle"


def test_out_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "--json", "--out", str(target), "classify", "shift")
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["signature"]["beta"] == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "fredkit", "classify", "bilateral"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("invertible")
