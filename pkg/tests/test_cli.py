import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from lojasiewicz import __version__
from lojasiewicz.cli import run

GOLDEN_DIR = Path(__file__).parent / "golden"

# one documented invocation per subcommand; REGEN_GOLDEN=1 rewrites the files
GOLDEN = {
    "parse": ["parse", "--vars", "x,y", "--poly", "(x+y)^2", "--poly", "x*y - 3/4"],
    "roots": ["roots", "--poly", "x^3-2*x", "--width", "1/1024"],
    "thom": ["thom", "--poly", "x^2-2", "--poly", "(x-1)^2"],
    "signcond1d": ["signcond1d", "--poly", "x", "--poly", "x^2-1"],
    "cad2d": ["cad2d", "--poly", "y-x^2"],
    "cad2d_circle": ["cad2d", "--poly", "x^2+y^2-2"],
    "growth_check": ["growth-check", "--poly", "y-x^2", "--p", "2"],
    "dist_finite": ["dist", "--points", "[[0,0],[1,0]]", "--x", "[\"1/2\",0]"],
    "dist_line": ["dist", "--formula", '{"arity":1,"node":{"op":"atom","poly":"x^2-2","rel":"eq0"}}',
                  "--x", "[0]"],
    "residual_psi": ["residual", "--vars", "x", "--g", "x", "--h", "x-1", "--x", "[3]"],
    "residual_binary": ["residual", "--kind", "binary", "--vars", "x", "--g", "x-2", "--x", "[3]"],
    "residual_sdp": ["residual", "--kind", "sdp", "--matrix", "[[0,1],[1,0]]"],
    "bounds": ["bounds", "--d", "2", "--n", "1"],
    "estimate_loja": ["estimate-loja", "--example-paper", "--d", "2", "--n", "2"],
    "estimate_loja_cloud": ["estimate-loja", "--example-paper", "--d", "2", "--n", "2",
                            "--mode", "cloud", "--count", "4000"],
    "estimate_errorbound": ["estimate-errorbound", "--vars", "x", "--h", "x^3", "--points", "[[0]]",
                            "--count", "5000", "--seed", "3"],
    "newton_slope": ["newton-slope", "--poly", "y^2-eps^3"],
    "sos_rate": ["sos-rate", "--c", "1", "--f-norm", "1", "--deg", "1", "--n", "1", "--rho", "1",
                 "--t", "1024"],
}


def call(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def strip_version(text):
    obj = json.loads(text)
    obj.pop("version", None)
    return obj


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden(name):
    code, out, err = call(GOLDEN[name])
    assert code == 0, err
    path = GOLDEN_DIR / f"{name}.json"
    if os.environ.get("REGEN_GOLDEN"):
        GOLDEN_DIR.mkdir(exist_ok=True)
        path.write_text(out)
    assert strip_version(out) == strip_version(path.read_text())
    # byte-identical on a second run
    assert call(GOLDEN[name])[1] == out


class TestDocumentedExamples:
    def test_bounds_big_integer(self):
        code, out, _ = call(["bounds", "--d", "2", "--n", "1"])
        assert code == 0
        assert '"loja_bound": 18446744073709551616' in out
        assert json.loads(out)["version"] == __version__

    def test_signcond_seven_cells(self):
        cells = json.loads(call(["signcond1d", "--poly", "x", "--poly", "x^2-1"])[1])["cells"]
        assert [c["signs"] for c in cells] == ["(-,+)", "(-,0)", "(-,-)", "(0,-)", "(+,-)", "(+,0)", "(+,+)"]

    def test_extremal_family_estimate(self):
        obj = json.loads(call(["estimate-loja", "--example-paper", "--d", "2", "--n", "2"])[1])
        assert obj["exponent"] == pytest.approx(4.0, rel=0.05)
        assert obj["expected"] == 4

    def test_bounds_table(self):
        code, out, _ = call(["bounds", "--d", "2", "--n", "1", "--table"])
        assert code == 0 and out.startswith("loja_bound") and "18446744073709551616" in out


class TestSpecRoundTrip:
    @pytest.mark.parametrize("name", ["estimate_errorbound", "cad2d", "dist_line", "residual_sdp", "bounds"])
    def test_dump_and_reload(self, name, tmp_path):
        argv = GOLDEN[name]
        code, spec_text, _ = call(argv + ["--dump-spec"])
        assert code == 0
        spec_file = tmp_path / "spec.json"
        spec_file.write_text(spec_text)
        direct = call(argv)[1]
        reloaded = call([argv[0], "--problem", str(spec_file)])[1]
        assert direct == reloaded

    def test_seed_override(self, tmp_path):
        argv = GOLDEN["estimate_errorbound"]
        spec_file = tmp_path / "spec.json"
        spec_file.write_text(call(argv + ["--dump-spec"])[1])
        a = json.loads(call(["estimate-errorbound", "--problem", str(spec_file), "--seed", "4"])[1])
        b = json.loads(call(argv[:-1] + ["4"])[1])
        assert a == b and a["seed"] == 4


class TestArtifacts:
    def test_out_and_csv(self, tmp_path):
        out, csv = tmp_path / "r.json", tmp_path / "c.csv"
        code, stdout, _ = call(GOLDEN["estimate_loja"] + ["--out", str(out), "--csv", str(csv)])
        assert code == 0 and stdout == ""
        assert json.loads(out.read_text())["mode"] == "curve"
        assert csv.read_text().startswith("t,log_f,log_g\n")

    def test_envelope_csv(self, tmp_path):
        csv = tmp_path / "e.csv"
        call(GOLDEN["estimate_errorbound"] + ["--csv", str(csv)])
        assert csv.read_text().startswith("eps,phi,count\n")


class TestErrors:
    @pytest.mark.parametrize("argv, fragment", [
        (["parse", "--poly", "x+"], "/polynomials/0"),
        (["cad2d", "--poly", "y-x^2", "--poly", "z"], "/polynomials/1"),
        (["dist", "--points", "[[0,0],[1]]", "--x", "[0,0]"], "/points"),
        (["dist", "--formula", '{"arity":1,"node":{"op":"atom","poly":"x","rel":"gt"}}', "--x", "[0]"],
         "/formula/node/rel"),
        (["bounds", "--d", "two", "--n", "1"], "invalid int"),
        (["roots", "--poly", "0"], "zero polynomial"),
        (["growth-check", "--poly", "y-x"], "/params/p"),
        (["residual", "--kind", "sdp", "--matrix", "[[0,1],[2,0]]"], "symmetric"),
    ])
    def test_input_errors_exit_1(self, argv, fragment):
        code, out, err = call(argv)
        assert code == 1 and out == ""
        assert fragment in err

    def test_bounds_domain_error(self):
        code, _, err = call(["estimate-loja", "--example-paper", "--d", "0", "--n", "2"])
        assert code == 1 and "/example_paper/d" in err

    def test_numeric_failure_exit_2(self):
        code, _, err = call(["estimate-errorbound", "--vars", "x", "--h", "x", "--points", "[[0]]",
                             "--count", "4", "--bins", "8"])
        assert code == 2 and "numeric failure" in err

    def test_unknown_subcommand(self):
        assert call(["frobnicate"])[0] == 1

    def test_malformed_problem_file(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"task": "cad2d", "polynomials": ["y", 3]}')
        code, _, err = call(["cad2d", "--problem", str(bad)])
        assert code == 1 and "/polynomials/1" in err
        bad.write_text('{"task": "cad2d", "extra": 1}')
        assert "/extra" in call(["cad2d", "--problem", str(bad)])[2]
        bad.write_text("{not json")
        assert call(["cad2d", "--problem", str(bad)])[0] == 1

    def test_problem_for_other_task(self, tmp_path):
        f = tmp_path / "p.json"
        f.write_text(json.dumps({"task": "bounds", "params": {"d": 2, "n": 1}}))
        code, _, err = call(["cad2d", "--problem", str(f)])
        assert code == 1 and "/task" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lojasiewicz", "bounds", "--d", "2", "--n", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "18446744073709551616" in proc.stdout
