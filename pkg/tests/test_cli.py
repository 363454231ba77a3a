import csv
import io
import json
import math
import subprocess
import sys
from importlib import resources

import numpy as np
import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from homkernel import cli

SQ = math.sqrt(2 * math.pi)


def _schemas():
    res = []
    root = resources.files("homkernel") / "schemas"
    for name in ("config", "apply", "verify", "bounds"):
        doc = json.loads((root / f"{name}.schema.json").read_text())
        res.append((doc["$id"], Resource.from_contents(doc)))
    return Registry().with_resources(res), {k.split("/")[-1].split(".")[0]: v.contents
                                            for k, v in res}


REGISTRY, SCHEMAS = _schemas()


def validate(doc, name):
    Draft202012Validator(SCHEMAS[name], registry=REGISTRY).validate(doc)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def read_csv(text):
    first, rest = text.split("\r\n", 1) if text.startswith("#") else ("", text)
    cfg = json.loads(first[2:]) if first else None
    rows = list(csv.reader(io.StringIO(rest)))
    return cfg, rows[0], rows[1:]


# ---------------------------------------------------------------- apply

def test_apply_k1_mode_one(capsys):
    code, out, _ = run(capsys, "apply", "k1", "--family", "trigpoly", "--coeffs", "k=1:1",
                       "--n", "2048")
    assert code == 0
    cfg, header, rows = read_csv(out)
    assert header == ["alpha", "re", "im"]
    assert cfg["grid"]["N"] == 2048 and cfg["families"]["phi"] == "trigpoly:k=1:1"
    a, re, im = np.array(rows, dtype=float).T
    np.testing.assert_allclose(re + 1j * im, -2j * np.exp(1j * a) / SQ, atol=1e-8)


def test_apply_calK_radial_null(capsys):
    code, out, _ = run(capsys, "apply", "calK", "--radial", "exp", "--angular", "const",
                       "--r", "1", "--alpha-grid", "64")
    assert code == 0
    _, header, rows = read_csv(out)
    vals = np.array(rows, dtype=float)
    assert len(rows) == 64
    assert np.all(vals[:, header.index("re")] == 0) and np.all(vals[:, header.index("im")] == 0)


def test_apply_est1_sharpness_json(capsys):
    code, out, _ = run(capsys, "apply", "k-est1", "--f1", "indicator:0,1", "--f2", "power:0.5",
                       "--x", "1,4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    validate(doc, "apply")
    row = dict(zip(doc["columns"], doc["rows"][0]))
    assert row["re"] == pytest.approx(1.0, rel=1e-10) and row["im"] == 0


@pytest.mark.parametrize("op,extra", [
    ("hilbert-circle", ["--family", "trigpoly", "--coeffs", "k=2:1", "--alpha-grid", "8"]),
    ("j", ["--family", "holder-cusp", "--gamma", "0.5", "--alpha-grid", "8"]),
    ("k2", ["--radial", "indicator:0,1", "--angular", "trigpoly:k=1:1", "--alpha-grid", "8"]),
    ("hilbert-line", ["--family", "cauchy", "--x", "1,0", "--x", "2,0"]),
    ("k-stepanov", ["--f1", "gaussian:0.3,1", "--f2", "gaussian:-0.4,0.8", "--x", "1,1"]),
    ("k-radon", ["--f1", "gaussian:0.3,1", "--f2", "gaussian:-0.4,0.8", "--x", "1,1"]),
])
def test_apply_ops_json_validate(capsys, op, extra):
    code, out, _ = run(capsys, "apply", op, "--format", "json", *extra)
    assert code == 0
    validate(json.loads(out), "apply")


def test_apply_output_file(capsys, tmp_path):
    path = tmp_path / "k1.csv"
    code, out, _ = run(capsys, "apply", "k1", "--family", "cos", "--n", "64", "-o", str(path))
    assert code == 0 and out == ""
    cfg, _, rows = read_csv(path.read_bytes().decode())
    assert cfg["output"] == str(path) and len(rows) == 64


def test_apply_is_reproducible(capsys):
    argv = ("apply", "k1", "--family", "holder-cusp", "--gamma", "0.5", "--n", "128")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


@pytest.mark.parametrize("argv", [
    ("apply", "k1", "--family", "nosuch"),
    ("apply", "k1", "--family", "trigpoly", "--coeffs", "k=1"),
    ("apply", "k1", "--family", "cos", "--n", "9"),
    ("apply", "calK", "--radial", "exp", "--angular", "const", "--r", "0"),
    ("apply", "k-est1", "--f1", "indicator:0,1", "--f2", "power:0.5", "--x", "0,4"),
    ("apply", "hilbert-line", "--family", "cos", "--x", "1,1"),
    ("bounds", "k1-holder", "--family", "trigpoly", "--coeffs", "k=1:1", "--gamma", "0.5"),
    ("verify", "nope"),
])
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == cli.EXIT_USAGE
    assert "error" in err and out == ""


def test_numerical_domain_error_exit_3(capsys):
    code, _, err = run(capsys, "apply", "k-est1", "--f1", "power:0.5", "--f2", "gaussian",
                       "--x", "1,1")
    assert code == cli.EXIT_DOMAIN and "numerical" in err


# ---------------------------------------------------------------- verify

def test_verify_spectral(capsys):
    code, out, _ = run(capsys, "verify", "spectral", "--kmax", "16", "--n", "2048")
    assert code == 0
    doc = json.loads(out)
    validate(doc, "verify")
    assert doc["all_passed"] and doc["config"]["grid"]["K_max"] == 16


def test_verify_homogeneity_deterministic(capsys):
    argv = ("verify", "homogeneity", "--cases", "1000", "--seed", "7")
    code, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert code == 0 and a == b
    names = [s["name"] for s in json.loads(a)["suites"]]
    assert len(names) == 2


# ---------------------------------------------------------------- bounds

def test_bounds_riesz_table(capsys):
    code, out, _ = run(capsys, "bounds", "riesz-table", "--p", "1.25,2,4")
    assert code == 0
    _, header, rows = read_csv(out)
    ctx = [json.loads(r[header.index("context")]) for r in rows]
    assert [c["p"] for c in ctx] == [1.25, 2.0, 4.0]
    assert ctx[1]["C_p"] == 1.0
    assert ctx[2]["C_p"] == pytest.approx(1 / math.tan(math.pi / 8))


@pytest.mark.parametrize("argv", [
    ("bounds", "j", "--family", "holder-cusp", "--gamma", "0.5"),
    ("bounds", "est3", "--p", "2", "--f", "gaussian,gaussian", "--points", "grid3"),
    ("bounds", "k2", "--radial", "indicator:0,1", "--angular", "trigpoly:k=1:1"),
    ("bounds", "k1-holder", "--family", "cos", "--gamma", "0.5", "--hilbert-norm", "1"),
    ("bounds", "sharpness", "--p", "2", "--x2", "1,4,16"),
])
def test_bounds_pass(capsys, argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    validate(doc, "bounds")
    assert all(r["verdict"] == "pass" for r in doc["reports"])


def test_bounds_failure_exit_1(capsys):
    # eight odd sine modes break the pointwise K2 bound at alpha = 0
    coeffs = ",".join(f"k={s * k}:{s * -0.5 * SQ}j" for k in range(1, 16, 2) for s in (1, -1))
    code, out, _ = run(capsys, "bounds", "k2", "--radial", "indicator:0,1",
                       "--angular", f"trigpoly:{coeffs}", "--alpha-grid", "64")
    _, header, rows = read_csv(out)
    assert code == cli.EXIT_FAIL and rows[0][header.index("verdict")] == "fail"


# ---------------------------------------------------------------- entry points

def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "homkernel", "bounds", "riesz-table",
                           "--p", "2"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "riesz" in proc.stdout


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["--version"])
    assert exc.value.code == 0
