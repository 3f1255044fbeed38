"""Runs the m12 binary on a set of commands, validates every JSON document against
the committed schema and checks exit codes and the search cache."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema

BIN, SCHEMA = sys.argv[1], sys.argv[2]

with open(SCHEMA) as fh:
    schema = json.load(fh)

CASES = [
    # (schema definition, argv, expected exit code)
    ("covers", ["covers"], 0),
    ("specialize", ["specialize", "B", "5"], 0),
    ("specialize", ["specialize", "C2", "125/4", "--format", "deg"], 0),
    ("search", ["search", "3,2,11", "--S", "2,3,11", "--H", "1e4"], 0),
    ("validate", ["validate", "-11/64", "3,2,11", "--S", "2,3,11"], 0),
    ("validate", ["validate", "7/64", "3,2,11", "--S", "2,3,11"], 0),
    ("classify", ["classify", "125/4", "5"], 0),
    ("analyze", ["analyze", "C2", "125/4", "--primes", "300"], 0),
    ("analyze", ["analyze", "E", "319/54", "--primes", "0"], 0),
    ("stats", ["stats", "B", "-5/2", "--count", "600"], 0),
    ("stats", ["stats", "fixture", "B_5", "--count", "200"], 0),
    ("lift", ["lift", "C2", "125/4"], 0),
    ("verify", ["verify", "D"], 0),
    ("verify", ["verify", "Bt"], 0),
    ("hilbert", ["hilbert", "2", "3", "2"], 0),
    ("hilbert", ["hilbert", "-1", "-1", "oo"], 0),
    ("obstruct", ["obstruct", "B", "--tau", "-3"], 0),
    ("obstruct", ["obstruct", "E"], 0),
    ("report", ["report"], 0),
    ("error", ["analyze", "D2", "0/1"], 2),
    ("error", ["analyze", "Z", "5"], 2),
    ("error", ["specialize", "B", "1/0"], 2),
    ("error", ["hilbert", "2", "3", "6"], 2),
    ("error", ["no-such-command"], 2),
    ("error", ["analyze", "B", "4294967311", "--primes", "0"], 4),
]

failures = 0


def run(argv, env):
    return subprocess.run([BIN, "--indent", "-1", *argv], capture_output=True, text=True, env=env)


with tempfile.TemporaryDirectory() as cache:
    env = dict(os.environ, M12_CACHE_DIR=cache)
    for name, argv, code in CASES:
        proc = run(argv, env)
        label = " ".join(argv)
        try:
            doc = json.loads(proc.stdout)
            sub = dict(schema)
            sub["$ref"] = "#/$defs/" + name
            jsonschema.validate(doc, sub)
            if proc.returncode != code:
                raise AssertionError(f"exit {proc.returncode}, expected {code}")
            print(f"ok    {label}")
        except Exception as exc:  # noqa: BLE001
            failures += 1
            print(f"FAIL  {label}: {exc}\n{proc.stdout[:400]}{proc.stderr[:400]}")

    # A second run reads the cache and must print the same bytes.
    search = ["search", "3,2,11", "--S", "2,3,11", "--H", "1e5"]
    first, second = run(search, env), run(search, env)
    if first.stdout != second.stdout or "loaded" not in second.stderr:
        failures += 1
        print("FAIL  cached search rerun differs or did not use the cache")
    else:
        print("ok    cached search rerun is byte-identical")

    # A corrupt cache file is rebuilt with a warning.
    [cached] = [f for f in os.listdir(cache) if f.endswith("_100000.txt")]
    with open(os.path.join(cache, cached), "a") as fh:
        fh.write("5/7  1 1 1 1 1 1  3,2,11  2,3,11\n")
    third = run(search, env)
    if third.stdout != first.stdout or "corrupt" not in third.stderr:
        failures += 1
        print("FAIL  corrupt cache was not rebuilt")
    else:
        print("ok    corrupt cache rebuilt with a warning")

print(f"{failures} failure(s)")
sys.exit(1 if failures else 0)
