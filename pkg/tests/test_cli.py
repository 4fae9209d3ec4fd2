import json
import subprocess
import sys

import pytest

from wakimoto.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_act_vacuum(capsys):
    code, out, _ = run(capsys, "act", "f:-1")
    assert code == 0
    assert [json.loads(line) for line in out.splitlines()] == [{"c": "1", "a": [-1], "b": []}]


def test_act_words(capsys):
    _, out, _ = run(capsys, "act", "e:1,f:-1", "--lambda", "3", "--kappa", "2")
    assert json.loads(out) == {"c": "5", "a": [], "b": []}
    _, out, _ = run(capsys, "act", "L:0", "--lambda", "2")
    assert json.loads(out) == {"c": "1", "a": [], "b": []}
    _, out, _ = run(capsys, "act", "e:0", "--start", '[{"c":"1","a":[-1],"b":[]}]', "--b-level", "kappa")
    assert json.loads(out) == {"c": "1", "a": [], "b": [1]}


def test_act_zero_vector_prints_nothing(capsys):
    code, out, _ = run(capsys, "act", "a*:3")
    assert code == 0 and out == ""


def test_act_d_and_json_format(capsys):
    _, out, _ = run(capsys, "act", "d,a:-2", "--format", "json", "--lambda", "0")
    assert json.loads(out) == [{"a": [-2], "b": [], "c": "-2"}]


@pytest.mark.parametrize("argv", [
    ["act", "q:1"],
    ["act", "e:x"],
    ["act", "e:1", "--start", "{bad"],
    ["act", "e:1", "--lambda", "pi"],
    ["verify", "nope"],
    ["verify", "phi", "--kappa", "0"],
    ["verify", "kz", "--window", "2"],
    ["kz", "--window", "2"],
    ["beta", "--kappa", "0"],
    ["singular", "--kappa", "0"],
    ["verify", "affine", "--m", "-1"],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(argv))
    assert exc.value.code == 2


def test_beta_table(capsys):
    code, out, _ = run(capsys, "beta", "--max-n", "8", "--m", "2", "--kappa", "3/2")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 1 + 66
    assert lines[1].split() == ["(1)", "1"]
    _, out, _ = run(capsys, "beta", "--max-n", "3", "--format", "json")
    assert len(json.loads(out)["rows"]) == 6
    _, out, _ = run(capsys, "beta", "--max-n", "2", "--format", "latex", "--m", "1", "--kappa", "2")
    assert "\\frac{1}{2}" in out and out.startswith("\\begin{tabular}")


def test_singular_json(capsys):
    code, out, _ = run(capsys, "singular", "--solve", "--degree", "3", "--m", "2", "--kappa", "3/2")
    doc = json.loads(out)
    assert code == 0 and doc["dimension"] == 1 and doc["dimension_one"]
    assert doc["tensor"]["terms"][0] == {"c": "1", "a": [], "b": [], "j": 0, "z": 0}
    code, out, _ = run(capsys, "singular", "--formula", "--degree", "2")
    assert code == 0 and json.loads(out)["mode"] == "formula"


def test_verify_exit_codes(capsys):
    assert run(capsys, "verify", "heisenberg", "--range", "2", "--samples", "5", "--oracle-pairs", "10")[0] == 0
    assert run(capsys, "verify", "affine", "--kappa", "0", "--range", "2", "--samples", "4")[0] == 0
    assert run(capsys, "verify", "affine", "--b-level", "3", "--range", "1", "--samples", "3")[0] == 1
    # Tier-1 failure: the claimed central charge does not hold
    code, out, _ = run(capsys, "verify", "virasoro", "--mu", "0", "--range", "3", "--samples", "20", "--seed", "7")
    assert code == 1 and out.splitlines()[-1] == "FAIL virasoro"
    # with the measured value the same run is green
    assert run(capsys, "verify", "virasoro", "--mu", "0", "--range", "2", "--samples", "5", "--central-charge", "1")[0] == 0


def test_affine_kappa_zero_reports_skip(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "affine", "--kappa", "0", "--range", "1", "--samples", "3", "--report", str(path))
    assert code == 0
    assert "SKIP affine:psi (kappa=0)" in out
    assert json.loads(path.read_text())["skipped"] == [{"check": "psi", "reason": "kappa=0"}]


def test_reports_are_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        run(capsys, "verify", "phi", "--seed", "3", "--range", "1", "--window", "2", "--samples", "3", "--report", str(path))
    assert a.read_bytes() == b.read_bytes()
    _, out, _ = run(capsys, "verify", "phi", "--seed", "3", "--range", "1", "--window", "2", "--samples", "3", "--format", "json")
    assert out.encode() == a.read_bytes()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wakimoto", "act", "f:-1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == '{"c":"1","a":[-1],"b":[]}\n'
