"""Rewrite the golden outputs from a built stabkit binary.

    python tests/golden/regenerate.py build/tools/stabkit
"""
import json
import pathlib
import subprocess
import sys

here = pathlib.Path(__file__).parent
binary = sys.argv[1]
for case in json.loads((here / "manifest.json").read_text()):
    run = subprocess.run([binary, *case["args"]], capture_output=True, text=True)
    if run.returncode != case["exit"]:
        sys.exit(f"{case['name']}: exit {run.returncode}, expected {case['exit']}\n{run.stderr}")
    (here / f"{case['name']}.out").write_text(run.stdout)
