"""End-to-end checks of the weyl binary: outputs, exit codes, config, CSV."""

import json
import os
import subprocess
import sys
import tempfile

BIN = sys.argv[1]
failures = []


def run(*args, env=None):
    p = subprocess.run([BIN, *args], capture_output=True, text=True, env=env)
    return p.returncode, p.stdout, p.stderr


def record(*args):
    code, out, err = run(*args)
    if code != 0:
        raise AssertionError(f"{args}: exit {code}: {err}")
    return json.loads(out)


def check(name, ok):
    print(("ok   " if ok else "FAIL ") + name)
    if not ok:
        failures.append(name)


r = record("eval", "--d", "3", "--x", "0.1,0.2,0.3", "--n", "1000")
check("eval record shape", r["schema"] == 1 and r["subcommand"] == "eval" and "abs" in r["outputs"]
      and set(r["outputs"]["value"]) == {"re", "im", "abs"} and r["config"]["n"] == "1000")

r = record("repcount", "--d", "3", "--k", "0", "--n", "12")
check("taxicab count", r["outputs"]["total"] == 284 and r["outputs"]["nondiagonal"] == 8)

r = record("dims", "--d", "2", "--alpha", "0.6")
check("dims at 0.6", abs(r["outputs"]["s"] - 1.7) < 1e-12 and abs(r["outputs"]["u"] - 1.75) < 1e-12)

r = record("qcount", "--k", "0", "--m", "0", "--n", "40")
check("quadratic system diagonal", r["outputs"]["total"] == 3160)

r = record("eps0", "--c", "0.5", "--C", str(8 ** 0.5), "--alpha1", "1", "--alpha2", "2")
check("epsilon0", abs(r["outputs"]["epsilon0"] - 0.0625) < 1e-12)

r = record("disc", "--x", "0.5", "--n", "10")
check("alternating discrepancy", abs(r["outputs"]["value"] - 5) < 1e-12)

r = record("cexA", "--nmax", "1000")
check("counterexample bound", abs(r["outputs"]["bound"] - 0.365540) < 1e-3)

r = record("dimest", "--schedule", "middle-thirds", "--levels", "6")
check("middle thirds estimate", abs(r["outputs"]["estimate"] - 0.6309297535714574) < 1e-9)

code, _, err = run("nonsense")
check("unknown subcommand exits 1", code == 1 and "usage" in err)
code, _, _ = run()
check("no subcommand exits 1", code == 1)
code, _, _ = run("eval", "--x", "1.5", "--n", "10")
check("validation error exits 2", code == 2)
code, _, _ = run("eval", "--x", "0.1", "--unknown-flag", "1")
check("bad flag exits 2", code == 2)
code, _, _ = run("repcount", "--d", "3", "--k", "0", "--n", "100000", "--budget", "1000")
check("budget error exits 3", code == 3)
env = dict(os.environ, WEYL_LAB_BUDGET="1000")
code, _, _ = run("moment4", "--d", "3", "--n", "200", env=env)
check("budget from the environment exits 3", code == 3)

with tempfile.TemporaryDirectory() as tmp:
    cfg = os.path.join(tmp, "run.cfg")
    with open(cfg, "w") as f:
        f.write("# taxicab\nd = 3\nk = 0\nn = 20\n")
    r = record("repcount", "--config", cfg, "--n", "12")
    check("flags override the config file", r["outputs"]["total"] == 284 and r["config"]["n"] == "12")
    r = record("repcount", "--config", cfg)
    check("config file supplies values", r["config"]["n"] == "20" and r["config"]["d"] == "3")

    out = os.path.join(tmp, "rec.json")
    csv = os.path.join(tmp, "rows.csv")
    code, stdout, _ = run("mass", "--levels", "6", "--t", "0.6", "--out", out, "--csv", csv)
    with open(out) as f:
        rec = json.load(f)
    with open(csv) as f:
        lines = f.read().splitlines()
    check("--out and --csv", code == 0 and stdout == "" and lines[0] == "r,max_mass,ratio"
          and len(lines) == 6 and rec["outputs"]["max_ratio"] <= 4)
    check("csv reals round-trip", float(lines[1].split(",")[0]) == 3.0 ** -2)

a = record("frac", "--d", "3", "--n", "512", "--grid", "2000", "--seed", "4", "--weights", "random")
b = record("frac", "--d", "3", "--n", "512", "--grid", "2000", "--seed", "4", "--weights", "random",
           "--threads", "1")
check("seeded runs reproduce", a["outputs"] == b["outputs"])

code, out, _ = run("panel", "--only", "dims")
check("panel subset passes", code == 0 and json.loads(out)["outputs"]["all_pass"] is True)
code, out, _ = run("panel", "--only", "dims", "--corrupt", "dims")
check("corrupted panel exits nonzero", code != 0 and json.loads(out)["outputs"]["all_pass"] is False)

for sub, args in {
    "batch": ["--d", "3", "--n", "100", "--grid", "16"],
    "flat": ["--xi", "0.3", "--n", "64"],
    "moment2": ["--d", "3", "--n", "100", "--start", "0.2", "--length", "0.1"],
    "moment4": ["--d", "3", "--n", "40", "--start", "0.2", "--length", "0.1"],
    "momentq": ["--n", "20", "--length", "0.5", "--length2", "0.5"],
    "variance": ["--n", "64", "--samples", "16"],
    "powerpairs": ["--d", "3", "--k", "7", "--n", "10"],
    "profile": ["--d", "3", "--n", "50", "--count", "20"],
    "cf": ["--x", "0.4142135623730950"],
    "osc": ["--x", "0.01", "--n", "100"],
    "vaughan": ["--d", "2", "--x", "0.3333334", "--n", "1000"],
    "baker": ["--x", "0.5,0.25", "--q", "4", "--n", "100"],
    "arcs": ["--d", "2", "--n", "400", "--grid", "50"],
    "koksma": ["--x", "0.1,0.3,0.7", "--n", "1000"],
    "pattern": ["--n", "256", "--start", "0.2", "--length", "0.05"],
    "cantor": ["--depth", "1"],
    "ladder": ["--d", "3", "--ns", "64,128", "--grid", "256"],
}.items():
    code, out, err = run(sub, *args)
    ok = code == 0
    if ok:
        rec = json.loads(out)
        ok = rec["subcommand"] == sub and isinstance(rec["outputs"], dict) and rec["outputs"]
    check(f"{sub} runs", ok)

print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
