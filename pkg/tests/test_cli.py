import io
import json
import math
import subprocess
import sys

import pytest

from bbd.cli import run


def call(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err, stdin=io.StringIO(stdin))
    return code, out.getvalue(), err.getvalue()


class TestCompute:
    def test_gaussian_example(self):
        code, out, _ = call("compute", "--alpha", "2", "-p", "gaussian:mu=0,sigma=1", "-q", "gaussian:mu=1,sigma=1")
        assert code == 0
        rec = json.loads(out)
        assert rec["rho"] == pytest.approx(0.8824969, abs=1e-7)
        assert rec["bbd"] == pytest.approx(0.0873525, abs=1e-7)
        assert rec["method"] == "closed_form"
        assert '"rho":0.8824969' in out

    def test_files_and_discrete_measures(self, tmp_path):
        p, q = tmp_path / "p.json", tmp_path / "q.csv"
        p.write_text(json.dumps({"probs": [0.5, 0.5]}))
        q.write_text("0.9\n0.1\n")
        code, out, _ = call("compute", "-p", str(p), "-q", str(q), "--alpha", "inf")
        rec = json.loads(out)
        assert code == 0 and rec["method"] == "sum"
        assert rec["kld"] == pytest.approx(0.5108256, abs=1e-7)
        assert rec["bbd"] == pytest.approx(rec["hellinger_sq"])

    def test_measure_subset_and_csv(self):
        code, out, _ = call("compute", "-p", "poisson:lambda=1", "-q", "poisson:lambda=4",
                            "--measures", "rho,bbd", "--format", "csv")
        header, row = out.strip().splitlines()
        assert code == 0
        assert header.endswith("rho,bbd")
        assert float(row.split(",")[-2]) == pytest.approx(math.exp(-0.5), rel=1e-15)

    def test_cross_family_numeric(self):
        code, out, _ = call("compute", "-p", "poisson:lambda=2", "-q", "binomial:n=10,p=0.2", "--measures", "rho")
        assert code == 0 and json.loads(out)["method"] == "sum"

    @pytest.mark.parametrize(
        "argv",
        [
            ("compute", "-p", "gaussian:mu=0", "-q", "gaussian:mu=0,sigma=1"),
            ("compute", "-p", "gaussian:mu=0,sigma=1", "-q", "gaussian:mu=0,sigma=1", "--alpha", "0.5"),
            ("compute", "-p", "missing.json", "-q", "gaussian:mu=0,sigma=1"),
            ("compute", "--nope"),
            ("table", "--rho-steps", "1"),
            ("verify", "--suite", "nonexistent"),
            ("verify", "--tol", "bogus=1"),
            ("bounds", "--rho", "0.5", "--from-bbd", "0.2", "--alpha", "2"),
        ],
    )
    def test_input_errors_exit_1(self, argv):
        code, out, err = call(*argv)
        assert code == 1
        assert out == ""
        assert err.startswith("bbd: error:") and err.count("\n") == 1


class TestBounds:
    def test_from_rho(self):
        code, out, _ = call("bounds", "--rho", "0.6")
        rec = json.loads(out)
        assert code == 0 and rec["lower"] == pytest.approx(0.1) and rec["upper"] == pytest.approx(0.3)

    def test_pair_reports_pe(self):
        code, out, _ = call("bounds", "-p", "binomial:n=4,p=0.3", "-q", "binomial:n=4,p=0.6", "--prior", "0.3")
        rec = json.loads(out)
        assert code == 0 and rec["lower"] <= rec["pe"] <= rec["upper"]

    @pytest.mark.parametrize("alpha", ["2", "-1", "1.5", "10"])
    def test_roundtrip_through_stdin(self, alpha):
        _, out, _ = call("compute", "--alpha", alpha, "-p", "gaussian:mu=0,sigma=1", "-q", "gaussian:mu=1,sigma=2")
        code, back, _ = call("bounds", "--from-bbd", "-", stdin=out)
        assert code == 0
        assert json.loads(back)["rho"] == pytest.approx(json.loads(out)["rho"], abs=1e-10)


class TestOtherCommands:
    def test_multi(self):
        code, out, _ = call("multi", "poisson:lambda=1", "poisson:lambda=4", "--weights", "0.5,0.5")
        rec = json.loads(out)
        assert code == 0 and rec["rho_beta"] == pytest.approx(math.exp(-0.5), abs=1e-12)

    def test_curvature(self):
        code, out, _ = call("curvature", "--family", "poisson", "--theta", "2", "--alpha", "2")
        assert code == 0 and json.loads(out)["rel_error"] < 1e-3
        code, out, _ = call("curvature", "--family", "binomial", "--theta", "0.4", "--fixed", "n=20")
        assert code == 0
        code, out, _ = call("curvature", "--family", "gaussian", "--theta", "0,2")
        assert code == 0 and json.loads(out)["fd_curvature"][1][1] == pytest.approx(0.0901685, abs=1e-6)

    def test_table_example(self):
        code, out, _ = call("table", "--alphas", "2,-1,inf", "--rho-steps", "3")
        assert code == 0
        rows = [list(map(float, r.split(","))) for r in out.strip().splitlines()[1:]]
        assert [r[0] for r in rows] == [0.0, 0.5, 1.0]
        assert rows[1][2:] == pytest.approx([0.4150375, 0.5849625, 0.5], abs=1e-7)

    def test_table_json(self):
        code, out, _ = call("table", "--rho-steps", "5", "--format", "json")
        assert code == 0 and len(json.loads(out)["rho"]) == 5


class TestVerify:
    def test_all_suites_pass(self):
        code, out, _ = call("verify", "--suite", "all", "--trials", "1000", "--seed", "42")
        rec = json.loads(out)
        assert code == 0 and rec["passed"]
        assert len(rec["suites"]) == 11

    def test_violation_exits_2(self):
        code, out, _ = call("verify", "--suite", "closed-forms", "--trials", "3", "--tol", "closed_form=1e-30")
        assert code == 2 and not json.loads(out)["passed"]

    def test_deterministic_and_parallel_agnostic(self, monkeypatch):
        argv = ("verify", "--suite", "bounded", "--suite", "jsd", "--suite", "multiway", "--trials", "200", "--seed", "7")
        monkeypatch.setenv("BBD_NO_PARALLEL", "0")
        first = call(*argv)
        monkeypatch.setenv("BBD_NO_PARALLEL", "1")
        second = call(*argv)
        assert first == second


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bbd", "bounds", "--rho", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["upper"] == 0.5
