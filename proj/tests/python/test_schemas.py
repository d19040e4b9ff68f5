import json
import pathlib
import subprocess

import jsonschema
import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]
GOLDEN = ROOT / "tests" / "golden"
SCHEMAS = ROOT / "docs" / "schema" / "v1"
CASES = json.loads((GOLDEN / "manifest.json").read_text())


def schema_for(command):
    return json.loads((SCHEMAS / f"{command}.schema.json").read_text())


def test_every_subcommand_has_a_schema():
    names = {p.name.removesuffix(".schema.json") for p in SCHEMAS.glob("*.schema.json")}
    assert names == {"stability", "pip", "stabcheck", "gangfour", "theorem1", "goldberg", "constants",
                     "decide", "search", "realize", "tf", "simulate", "polezero", "mobius"}
    for name in names:
        jsonschema.Draft202012Validator.check_schema(schema_for(name))


@pytest.mark.parametrize("case", [c for c in CASES if "--csv" not in c["args"]], ids=lambda c: c["name"])
def test_golden_output_matches_schema(case):
    doc = json.loads((GOLDEN / f"{case['name']}.out").read_text())
    jsonschema.validate(doc, schema_for(case["args"][0]))


@pytest.mark.parametrize("case", CASES, ids=lambda c: c["name"])
def test_binary_reproduces_golden(cli_binary, case):
    run = subprocess.run([cli_binary, *case["args"]], capture_output=True, text=True)
    assert run.returncode == case["exit"]
    assert run.stdout == (GOLDEN / f"{case['name']}.out").read_text()


def test_realize_tf_round_trip(cli_binary):
    f = {"num": [0.5, -1.25, 2.0], "den": [0.3, 0.1, -0.7, 1.0]}
    ss = subprocess.run([cli_binary, "realize", json.dumps(f)], capture_output=True, text=True, check=True)
    jsonschema.validate(json.loads(ss.stdout), schema_for("realize"))
    back = subprocess.run([cli_binary, "tf", ss.stdout], capture_output=True, text=True, check=True)
    g = json.loads(back.stdout)
    for key in ("num", "den"):
        assert g[key] == pytest.approx(f[key], rel=1e-12, abs=1e-12)
