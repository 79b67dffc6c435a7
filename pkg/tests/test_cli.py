import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from multikit.cli import main
from multikit.conformance import conformance_report
from multikit.core import validate
from multikit.polynomials import parse_poly, poly_prod
from multikit.structures import builtin, parse_structure

GOLDEN = Path(__file__).parent / "golden"
REGEN = os.environ.get("MULTIKIT_REGEN_GOLDEN") == "1"

CASES = {
    "validate_x2": ["validate", "builtin:x2"],
    "char_h5": ["char", "builtin:h5"],
    "morphism_h3_l9": ["morphism", "builtin:h3", "builtin:l9", "0:0,1:1,2:2"],
    "poly_mul_h3": ["poly", "mul", "builtin:h3", "X+1", "X+2"],
    "poly_div_h3": ["poly", "div", "builtin:h3", "X^2+2", "X+1", "--all"],
    "poly_roots_q2": ["poly", "roots", "builtin:q2", "X^2+-1"],
    "irred_h3": ["irred", "builtin:h3", "X^2+2*X+2"],
    "quotient_h3": ["quotient", "builtin:h3", "X^2+2"],
    "extend_h3": ["extend", "builtin:h3", "X^2+2"],
    "closure_h3": ["closure", "builtin:h3", "--max-degree", "2", "--max-steps", "1"],
    "conformance": ["conformance"],
}


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, argv):
    code, out, err = run(capsys, argv + ["--format", "json"])
    return code, json.loads(out)


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_json(capsys, name):
    code, out, _ = run(capsys, CASES[name] + ["--format", "json"])
    path = GOLDEN / f"{name}.json"
    if REGEN:
        path.write_text(out)
    assert out == path.read_text()
    assert code in (0, 1)


def test_exit_codes(capsys):
    assert run(capsys, ["validate", "builtin:h3"])[0] == 0
    assert run(capsys, ["morphism", "builtin:krasner", "builtin:q2", "0:0,1:1"])[0] == 1
    assert run(capsys, ["iso", "builtin:h3", "builtin:l9"])[0] == 1
    assert run(capsys, ["iso", "builtin:h2", "builtin:krasner"])[0] == 0
    assert run(capsys, ["irred", "builtin:h3", "X^2+2*X+2"])[0] == 1
    assert run(capsys, ["quotient", "builtin:h3", "X^2+2*X+2"])[0] == 1
    assert run(capsys, ["conformance", "--claim", "hp-inclusion-morphism"])[0] == 1
    assert run(capsys, ["conformance", "--claim", "h3-quotient"])[0] == 0


def test_usage_errors(capsys, tmp_path):
    code, _, err = run(capsys, ["validate", "builtin:nope"])
    assert code == 2 and "error" in err
    assert run(capsys, ["validate", str(tmp_path / "missing.msr")])[0] == 2
    assert run(capsys, ["poly", "eval", "builtin:h3", "X^^2", "1"])[0] == 2
    assert run(capsys, ["poly", "eval", "builtin:h3", "X", "7"])[0] == 2
    assert run(capsys, ["morphism", "builtin:h3", "builtin:l9", "0:0,1:zz,2:2"])[0] == 2
    assert run(capsys, ["conformance", "--claim", "nope"])[0] == 2
    bad = tmp_path / "bad.msr"
    bad.write_text("name x\nelements 0 1\n")
    assert run(capsys, ["validate", str(bad)])[0] == 2


def test_json_agrees_with_library(capsys):
    _, got = run_json(capsys, ["validate", "builtin:x2"])
    assert got == validate(builtin("x2")).to_dict()
    H3 = builtin("h3")
    _, got = run_json(capsys, ["poly", "mul", "builtin:h3", "X+1", "X+2"])
    assert got["coefficients"] == poly_prod(H3, parse_poly("X+1", H3), parse_poly("X+2", H3)).render(H3)
    _, got = run_json(capsys, ["conformance"])
    assert got == conformance_report().to_dict()


def test_quotient_out_and_reload(capsys, tmp_path):
    out = tmp_path / "q.msr"
    code, _, _ = run(capsys, ["quotient", "builtin:h3", "X^2+2", "--out", str(out)])
    assert code == 0
    S = parse_structure(out.read_text())
    assert S.size == 9
    code, text, _ = run(capsys, ["char", str(out)])
    assert code == 0 and text.startswith("char")


def test_closure_out(capsys, tmp_path):
    code, _, _ = run(capsys, ["closure", "builtin:h3", "--out", str(tmp_path)])
    assert code == 0
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["levels"] == ["step0.msr", "step1.msr"]


def test_saturated_mode_reports_failure(capsys):
    code, _, err = run(capsys, ["quotient", "builtin:h3", "X^2+2", "--mode", "saturated"])
    assert code == 1 and "saturated" in err


def test_division_samples(capsys):
    code, text, _ = run(capsys, ["poly", "div", "builtin:h3", "X", "--samples", "50", "--seed", "3"])
    assert code == 0 and text.strip() == "50/50 divisions verified"


def test_text_output(capsys):
    code, text, _ = run(capsys, ["table", "builtin:krasner"])
    assert code == 0 and "{0,1}" in text
    code, text, _ = run(capsys, ["ideals", "builtin:krasner"])
    assert text.splitlines()[0].startswith("{0}")


def test_console_script_entry():
    r = subprocess.run([sys.executable, "-m", "multikit.cli", "char", "builtin:krasner"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "char K = 2"
