"""End-to-end checks of the cubapprox executable.

usage: test_cli.py CUBAPPROX SCHEMA CATALOG_DIR
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

EXE, SCHEMA, CATALOG = sys.argv[1], Path(sys.argv[2]), Path(sys.argv[3])
VALIDATOR = jsonschema.Draft202012Validator(json.loads(SCHEMA.read_text()))
FERMAT = "x0^3 + x1^3 + x2^3 + x3^3"
DESIGNED = "x0*(x3^2 + 2*x0*x2 + x0*x3 + x1*x2 + 3*x1*x3) + x2^3 + x1^2*x2 + x3*({})"
failures = []


def check(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


def run(*args):
    return subprocess.run([EXE, *args], capture_output=True, text=True)


def report(*args):
    r = run(*args)
    check(r.returncode == 0, f"exit 0: {' '.join(args)}  {r.stderr.strip()}")
    doc = json.loads(r.stdout)
    errors = sorted(VALIDATOR.iter_errors(doc), key=str)
    check(not errors, f"schema: {' '.join(args)}  {errors[:1]}")
    return doc


# classify: the line example
doc = report("classify", "--form", FERMAT, "--point", "1:-1:0:0")
c = doc["classification"]
check(c["case"] == "OnRationalLine" and c["alpha"] == "1", "Fermat [1:-1:0:0] is OnRationalLine with alpha 1")
check(any(x["kind"] == "line" and x["curve"] == "s; -s; t; -t" for x in c["certificates"]), "line certificate s; -s; t; -t")
check(doc["spec"]["height_bound"] == "1000" and doc["spec"]["seed"] == "0" and doc["spec"]["attempts"] == "64"
      and doc["spec"]["search_bound"] == "100", "defaults embedded in the report")
doc = report("construct", "--form", FERMAT, "--point", "1:-1:0:0")
check([(k["kind"], k["alpha"], k["certifies"]) for k in doc["constructions"]] == [("line", "1", True)], "construct: line")

# place parsing
doc = report("classify", "--form", DESIGNED.format("x1^2 - 2*x2^2"), "--point", "0:0:0:1", "--place", "p=5")
check(doc["spec"]["place"] == "p=5" and doc["classification"]["case"] == "IsolatedInSection", "p=5 parses to the 5-adic place")

# error paths
r = run("classify", "--form", "x0^", "--point", "1:0")
check(r.returncode != 0 and "ParseError" in r.stderr and "column" in r.stderr, "malformed polynomial: parse error, nonzero exit")
with tempfile.TemporaryDirectory() as tmp:
    bad = Path(tmp) / "bad.txt"
    bad.write_text(f"# comment\nform={FERMAT}\npoint=1:-1:0:0\nheight_bound=ten\n")
    r = run("estimate", str(bad))
    check(r.returncode == 2 and "line 4, column 14" in r.stderr, "problem file error carries line and column")
    bad.write_text("form=x0^3 + x1^3 + x2^ + x3^3\n")
    r = run("classify", str(bad))
    check(r.returncode == 2 and "line 1, column 24" in r.stderr, "polynomial error column is relative to the line")
r = run("classify", "--form", FERMAT, "--point", "1:1:0:0")
check(r.returncode == 1 and "PointNotOnX" in r.stderr, "hypothesis violations surface verbatim")
r = run("classify", "--form", FERMAT, "--point", "1:-1:0:0", "--place", "p=6")
check(r.returncode == 2 and "not prime" in r.stderr, "composite p is rejected")

# smoke: B = 1
doc = report("estimate", "--form", FERMAT, "--point", "1:-1:0:0", "--height-bound", "1")
check(doc["estimate"]["height_bound"] == 1 and doc["estimate"]["points"] > 0, "B = 1 completes")

# line-only filter: the plane x0 + x1 = 0 meets the Fermat surface in one rational line
with tempfile.TemporaryDirectory() as tmp:
    doc = report("estimate", "--form", FERMAT, "--point", "1:-1:1:-1", "--filter", "x0 + x1", "--height-bound", "150",
                 "--out", tmp)
    rows = doc["estimate"]["rows"]
    check(all(x["alpha_hat"] >= 0.99 for x in rows) and abs(doc["estimate"]["extrapolated"] - 1) < 0.05,
          "line-only stream: alpha_hat converges to 1")
    env = [line.split("\t") for line in (Path(tmp) / "envelope.tsv").read_text().splitlines() if not line.startswith("#")]
    check(len(env) == len(rows) and all(abs(float(a) - r["alpha_hat"]) < 1e-12 for (_, a), r in zip(env, rows)),
          "envelope.tsv mirrors the rows")
    csv = (Path(tmp) / "points.csv").read_text().splitlines()
    check(csv[0] == "coords,height,dist,delta" and len(csv) - 1 == doc["estimate"]["points"] - 1,
          "points.csv has one line per point but P")
    first = csv[1].split(",")
    x = [int(v) for v in first[0].split(":")]
    check(x[0] + x[1] == 0 and int(first[1]) == max(abs(v) for v in x), "points.csv coordinates and height")

# NoApproximants is data, not failure
tangent_only = ["--form", DESIGNED.format("x1^2 + x2^2"), "--point", "0:0:0:1", "--filter", "x0", "--height-bound", "40",
                "--epsilons", "1/4,1/8", "--liouville-bounds", "10,20"]
doc = report("report", *tangent_only)
check(doc["estimate"]["status"] == "NoApproximants" and doc["verdict"]["kind"] == "Tension", "NoApproximants: exit 0, structured")

# determinism: byte-identical outputs, independent of the thread count
small = [str(CATALOG / "surface_reducible_section.txt"), "--height-bound", "120", "--liouville-bounds", "25,50"]
with tempfile.TemporaryDirectory() as a, tempfile.TemporaryDirectory() as b:
    ra = run("report", *small, "--out", a, "--threads", "1")
    rb = run("report", *small, "--out", b, "--threads", "3")
    same = all((Path(a) / f).read_bytes() == (Path(b) / f).read_bytes() for f in ("report.json", "points.csv", "envelope.tsv"))
    check(ra.returncode == 0 and ra.stdout == rb.stdout and same, "two runs give byte-identical reports")

# flags override file keys
doc = report("classify", str(CATALOG / "surface_real_tangents.txt"), "--place", "p=7")
check(doc["spec"]["place"] == "p=7" and doc["classification"]["alpha"] == "3/2", "flags override the problem file")

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
