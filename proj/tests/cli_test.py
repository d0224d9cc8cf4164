#!/usr/bin/env python3
"""End-to-end checks of the otf command line: exit codes, text output and
JSON records validated against the shipped schema."""

import json
import subprocess
import sys

try:
    import jsonschema
except ImportError:  # validation is skipped, everything else still runs
    jsonschema = None

EXE, SCHEMA = sys.argv[1], sys.argv[2]
failures = []


def run(*args):
    p = subprocess.run([EXE, *args], capture_output=True, text=True, timeout=600)
    return p.returncode, p.stdout, p.stderr


def expect(cond, what):
    if not cond:
        failures.append(what)
        print("FAIL:", what)


with open(SCHEMA) as f:
    schema = json.load(f)
validator = jsonschema.Draft202012Validator(schema) if jsonschema else None


def run_json(*args, rc=0):
    code, out, err = run("--format", "json", *args)
    expect(code == rc, f"{args}: exit {code}, expected {rc} ({err.strip()})")
    try:
        doc = json.loads(out)
    except json.JSONDecodeError:
        failures.append(f"{args}: output is not JSON")
        return None
    if validator:
        for e in validator.iter_errors(doc):
            failures.append(f"{args}: schema: {e.message} at {list(e.absolute_path)}")
    return doc


code, out, _ = run("compute", "10", "5")
expect(code == 0, "compute 10 5 exits 0")
expect("R_{10,5} = 4.8308" in out, "compute 10 5 prints 4.8308...")
expect("exponents: 2 3 5 6 10" in out, "compute 10 5 exponents")

code, out, _ = run("--exact", "compute", "14", "7")
expect(code == 0, "compute 14 7 --exact exits 0")
expect("R^7 - 28R^6 + 380R^5 - 3260R^4 + 19080R^3 - 75960R^2 + 189360R - 226800" in out.replace(" * ", ""),
       "compute 14 7 --exact prints the septic: " + out)

code, _, err = run("compute", "3", "5")
expect(code == 2, f"compute 3 5 exits 2 (got {code})")
expect(err.strip() != "", "compute 3 5 reports on stderr")

code, _, _ = run("compute", "x", "5")
expect(code == 2, "bad integer is a usage error")

code, out, _ = run("table", "--m", "10", "--n", "11")
expect(code == 0 and "--" in out, "table with m < n prints --")

code, out, _ = run("--format", "csv", "table", "--m", "20", "--n", "5")
expect(code == 0, "table 20 5 exits 0")
lines = out.strip().splitlines()
expect(lines[0] == "m,5", f"csv header {lines[0]!r}")
expect(abs(float(lines[1].split(",")[1]) - 12.5512) <= 5e-4, f"table 20 5 value {lines[1]!r}")

code, out, _ = run("bounds", "20", "5")
expect(code == 0 and "11.0107" in out and "12.6117" in out, "bounds 20 5")
code, _, _ = run("bounds", "10", "4")
expect(code == 2, "bounds for even n is a domain error")

for m, n in [("5", "3"), ("9", "3"), ("12", "5")]:
    code, out, _ = run("check", m, n)
    expect(code == 0 and "agree" in out, f"check {m} {n} agrees")

code, _, _ = run("oracle", "20", "5")
expect(code == 2, "oracle above the cap is refused with exit 2")

doc = run_json("compute", "10", "5")
if doc:
    expect(doc["command"] == "compute", "json command field")
    expect(doc["result"]["exponents"] == [2, 3, 5, 6, 10], "json exponents")
    expect(abs(float(doc["result"]["r_value"]) - 4.8308) <= 5e-4, "json r_value")
    expect(doc["r_decimal"].startswith("4.8308"), "json decimal")

doc = run_json("--exact", "compute", "16", "6")
if doc:
    expect(doc["result"]["derivation"] == "even_reduced", "even order is reduced")

run_json("oracle", "9", "3")
run_json("check", "12", "5")
run_json("bounds", "16", "9")
doc = run_json("table", "--m", "5:15:5", "--n", "5,7,11")
if doc:
    expect(doc["cells"][0] == ["1.0000", "--", "--"], f"table cells row 0 {doc['cells'][0]}")
run_json("--exact", "table", "--m", "10", "--n", "3,5")
run_json("--jobs", "2", "table", "--m", "10,20", "--n", "5")
doc = run_json("demo", "10", "5", "--steps", "20", "--trials", "5", "--farkas-trials", "50")
if doc:
    expect(doc["order"]["pass"] and doc["pass"], "demo checks pass")

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
