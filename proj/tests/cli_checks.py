"""Scripted checks of the qdeform command line: exit codes, determinism, schema."""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

CLI, SCHEMA, DATA = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
failures = []


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def expect(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


schema = json.loads(SCHEMA.read_text())
validator = jsonschema.Draft202012Validator(schema)

with tempfile.TemporaryDirectory() as tmp:
    tmp = pathlib.Path(tmp)

    r = run("eval", "bracket", "--x", "2", "--p", "0.8", "--q", "1.2", "--alpha", "1", "--gamma", "1", "--l", "1")
    expect(r.returncode == 0 and r.stdout.strip() == "2.45", "eval bracket prints 2.45")
    r = run("eval", "twopoint", "--h", "0", "--z1", "1", "--z2", "0.3", "--p", "0.8", "--q", "1.1")
    expect(r.returncode == 0 and r.stdout.strip() == "1", "eval twopoint at h = 0 prints 1")

    out = tmp / "check.json"
    r = run("check", "--suite", "gchj", "--dim", "8", "--p", "0.8", "--q", "1.2", "--tol", "1e-10", "--out", str(out))
    expect(r.returncode == 0, "passing check exits 0")
    doc = json.loads(out.read_text())
    validator.validate(doc)
    expect(doc["records"][0]["verdict"] == "pass", "gchj record passes")

    r = run("check", "--suite", "gchj", "--dim", "8", "--p", "0.8", "--q", "1.2", "--tol", "1e-300", "--out", str(out))
    expect(r.returncode == 1, "gated failure exits 1")
    validator.validate(json.loads(out.read_text()))

    r = run("check", "--suite", "gchj", "--p", "-1")
    expect(r.returncode == 2, "invalid parameters exit 2")
    r = run("check", "--suite", "nope")
    expect(r.returncode == 2, "unknown suite exits 2")
    r = run("check")
    expect(r.returncode == 2, "missing --suite exits 2")

    r = run("check", "--suite", "hp-eq36", "--p", "0.8", "--q", "1.2", "--out", str(out))
    expect(r.returncode == 0 and "documented-discrepancy 1" in r.stdout, "documentation suite exits 0")

    bad_spec = tmp / "bad.json"
    bad_spec.write_text('{"suites": ["gd"], "axes": {"x": [1]}}')
    target = tmp / "never.json"
    r = run("sweep", str(bad_spec), "--out", str(target))
    expect(r.returncode == 2 and not target.exists(), "bad sweep spec exits 2 and writes nothing")

    a, b = tmp / "a.json", tmp / "b.json"
    for path in (a, b):
        r = run("sweep", str(DATA / "sweep_small.json"), "--no-timestamp", "--out", str(path))
        expect(r.returncode == 0, "small sweep exits 0")
    expect(a.read_bytes() == b.read_bytes(), "repeated sweeps are byte-identical")
    doc = json.loads(a.read_text())
    validator.validate(doc)
    expect(len(doc["records"]) == 50 and doc["summary"]["pass"] == 50, "5x5 sweep has 50 passing records")

    csv = tmp / "a.csv"
    r = run("sweep", str(DATA / "sweep_small.json"), "--format", "csv", "--out", str(csv))
    lines = csv.read_text().splitlines()
    expect(lines[0] == "suite,p,q,alpha,gamma,l,nu0,dim,residual,verdict,note" and len(lines) == 51,
           "csv has header and 50 rows")

    mixed = tmp / "mixed.json"
    r = run("sweep", str(DATA / "sweep_mixed.json"), "--no-timestamp", "--out", str(mixed))
    doc = json.loads(mixed.read_text())
    validator.validate(doc)
    verdicts = {rec["verdict"] for rec in doc["records"]}
    expect("rejected: BaseNotContractive" in verdicts, "non-contractive correlator points are rejected")
    expect(r.returncode == doc["summary"]["exit_code"], "exit code matches summary")

    r = run("ope", "bracket", "--n", "0", "--m", "0", "--h", "2", "--p", "0.5")
    expect(r.returncode == 0 and json.loads(r.stdout)["expected"] == [0, 0], "ope bracket n = m = 0 gives 0")
    r = run("ope", "antisym", "--window=-3..3", "--p", "0.5")
    rows = json.loads(r.stdout)["rows"]
    expect(any(row["n"] - row["m"] == 1 and abs(row["value"] - 0.5) < 1e-15 for row in rows),
           "antisymmetry scan reports 0.5 at n - m = 1")
    r = run("corr", "--h", "0.5", "--p", "0.8", "--q", "1.1")
    expect(r.returncode == 0 and json.loads(r.stdout)["omega_scan"]["best_omega"] == -1, "corr omega scan")

sys.exit(1 if failures else 0)
