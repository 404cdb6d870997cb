#!/usr/bin/env python3
"""CLI checks: golden files, exit codes, determinism, JSON schema."""
import argparse
import json
import os
import subprocess
import sys
import tempfile

import jsonschema


def run(cli, args, env=None):
    p = subprocess.run([cli] + args, capture_output=True, text=True, env=env)
    return p.returncode, p.stdout, p.stderr


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cli", required=True)
    ap.add_argument("--schema", required=True)
    ap.add_argument("--golden", required=True)
    ap.add_argument("--update", action="store_true")
    a = ap.parse_args()

    failures = []

    def check(name, cond, detail=""):
        print(("ok   " if cond else "FAIL ") + name)
        if not cond:
            failures.append(name + (": " + detail if detail else ""))

    # golden files
    for fname, args in [("tables_0_4.txt", ["tables", "--ell", "0", "--to", "4"]),
                        ("tables_0_4.json", ["tables", "--ell", "0", "--to", "4", "--json"])]:
        code, out, _ = run(a.cli, args)
        path = os.path.join(a.golden, fname)
        if a.update:
            with open(path, "w") as f:
                f.write(out)
        with open(path) as f:
            check("golden " + fname, code == 0 and out == f.read())

    with open(a.schema) as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)

    tmp = tempfile.mkdtemp()
    f1 = os.path.join(tmp, "one.txt")
    f2 = os.path.join(tmp, "two.txt")
    with open(f1, "w") as f:
        f.write("# regular surface\na + b x\n  + x^3 - 1/2 a b^2 x^2\n")
    with open(f2, "w") as f:
        f.write("a + b x + q\n")

    cases = [
        (["tables", "--ell", "6"], 0),
        (["normalize", "--order", "6", "--expr", "a + b x + x^3"], 0),
        (["normalize", "--order", "7", "--method", "geometric", "--expr", "a + b x + a x^2 b^2 + b^3 x^2"], 0),
        (["normalize", "--expr", "a + b^2 x^2"], 1),
        (["normalize", "--expr", "a + q"], 2),
        (["normalize", "--order", "99", "--expr", "a + b x"], 2),
        (["normalize", "--input", f1, f2], 2),
        (["normalize", "--input", f1], 0),
        (["normalize-singular", "--expr", "a + b^2 x^2 + x^5 + a b^2 x"], 0),
        (["normalize-singular", "--expr", "a + b x"], 1),
        (["type", "--expr", "a + b^3 + x^4 + b x^2"], 0),
        (["type", "--expr", "a + b^3"], 1),
        (["ode2surf", "--order", "6", "--expr", "y p^2 + x"], 0),
        (["surf2ode", "--order", "7", "--expr", "a + b x + b^2 x^4"], 0),
        (["check-normal", "--expr", "a + b x + b^2 x^2"], 0),
        (["check-normal", "--grading", "singular:4", "--expr", "a + b^2 x^2 + a x"], 0),
        (["check-ode-normal", "--expr", "x p^2"], 0),
        (["autos", "--expr", "a + b^2 x + b^4 x^2"], 0),
        (["autos", "--expr", "a + b^2 x^3"], 0),
        (["autos", "--normalize", "--expr", "a + b x + b^3 x^3"], 0),
    ]
    for args, want in cases:
        label = " ".join(args).replace(tmp + "/", "")
        code, out, err = run(a.cli, args + ["--json"])
        check("exit %d: %s" % (want, label), code == want, "got %d, stderr %s" % (code, err.strip()))
        try:
            doc = json.loads(out)
            errs = sorted(validator.iter_errors(doc), key=lambda e: e.path)
            check("schema: " + label, not errs, errs[0].message if errs else "")
        except json.JSONDecodeError as e:
            check("json: " + label, False, str(e))
        code2, out2, _ = run(a.cli, args + ["--json"])
        check("deterministic: " + label, code2 == code and out2 == out)

    # spot checks on content
    _, out, _ = run(a.cli, ["normalize", "--order", "6", "--expr", "a + b x + x^3"])
    check("normalize example text", "normalized: a + b x\n" in out and "Y = y - x^3" in out)
    _, out, _ = run(a.cli, ["check-ode-normal", "--expr", "x p^2", "--json"])
    doc = json.loads(out)
    check("check-ode-normal example", doc["normal"] is False and doc["offending"] == [[1, 2]])
    _, out, _ = run(a.cli, ["tables", "--ell", "2", "--json"])
    check("tables ell 2", json.loads(out)["rows"][0]["kernelDim"] == 2)
    env = dict(os.environ, PARACR_MAX_ORDER="40")
    code, _, _ = run(a.cli, ["normalize", "--order", "30", "--expr", "a + b x"], env)
    check("PARACR_MAX_ORDER raises the guard", code == 0)

    if failures:
        print("\n%d failure(s):" % len(failures))
        for f in failures:
            print("  " + f)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
