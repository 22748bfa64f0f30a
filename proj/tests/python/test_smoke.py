import json
import math

import pytest

import ceqaoa


def toy():
    return ceqaoa.load_instance({"n": 2, "m": 1, "energy": [0, 1], "penalty": "none"})


def test_kernel_and_bounds():
    diag, off = ceqaoa.single_block_kernel(4, math.pi / 4)
    assert diag == pytest.approx(0.25)
    assert off == pytest.approx(0.25)
    assert ceqaoa.averaged_block_kernel(4) == pytest.approx((5 / 8, 1 / 8))
    assert ceqaoa.success_lower_bound(1, 0.5, math.pi) == pytest.approx(0.8)
    assert ceqaoa.depth_for_target(0.1, 0.5, math.pi / 2) == 4
    assert ceqaoa.fejer_kernel(5, 0.0) == 6.0
    assert ceqaoa.cmin(math.pi, 0.1, 2) == pytest.approx(0.5)


def test_filter_and_oracle_agree():
    inst = ceqaoa.load_instance({"n": 2, "m": 2, "energy": [3, 1, 4, 1], "penalty": "none"})
    env = [0.1, 0.2, 0.3, 0.4]
    pm = ceqaoa.phase_gap(inst, 0.7)
    law = ceqaoa.filtered_distribution(env, pm, 3)
    oracle = ceqaoa.dirichlet_filter_oracle(env, inst, 0.7, 3)
    assert law == pytest.approx(oracle, abs=1e-12)
    assert sum(law) == pytest.approx(1.0)


def test_simulate_and_envelope():
    inst = toy()
    probs = ceqaoa.simulate(inst, [0.3], [0.8])
    assert sum(probs) == pytest.approx(1.0)
    assert ceqaoa.mixer_envelope(inst, [1.0, 0.0], [0.0]) == [1.0, 0.0]


def test_errors_map_to_python():
    with pytest.raises(ceqaoa.PreconditionError):
        ceqaoa.success_lower_bound(1, 0.0, 1.0)
    with pytest.raises(ValueError):
        ceqaoa.load_instance({"n": 2, "m": 1, "energy": [0, 0.5]})
    with pytest.raises(ceqaoa.CapExceededError):
        ceqaoa.load_instance({"n": 2, "m": 3, "energy": [0] * 8}, cap=4)


def test_certify(tmp_path):
    path = tmp_path / "toy.json"
    path.write_text(json.dumps({"n": 2, "m": 1, "energy": [0, 1], "penalty": "none"}))
    cert, code = ceqaoa.certify(path, math.pi, 1)
    assert code == 0
    assert cert["status"] == "certified"
    assert cert["q0_exact"] >= cert["q0_bound"]
    cert, code = ceqaoa.certify(path, 2 * math.pi, 1)
    assert code == 3
    assert cert["status"] == "uncertifiable"


SCHEMAS = __import__("pathlib").Path(__file__).resolve().parents[2] / "schemas"


def schema(name):
    return json.loads((SCHEMAS / name).read_text())


def test_reports_match_schemas(tmp_path):
    jsonschema = pytest.importorskip("jsonschema")
    doc = {"n": 3, "m": 3, "generator": {"type": "assignment", "cost": [[4, 1, 3], [2, 0, 5], [3, 2, 2]]}}
    jsonschema.validate(doc, schema("instance.schema.json"))
    inst = tmp_path / "inst.json"
    inst.write_text(json.dumps(doc))
    toy = tmp_path / "toy.json"
    toy_doc = {"n": 2, "m": 3, "energy": [0, 3, 5, 2, 7, 4, 6, 1], "penalty": "none"}
    jsonschema.validate(toy_doc, schema("instance.schema.json"))
    toy.write_text(json.dumps(toy_doc))

    text, code = ceqaoa.run("certify", instance_path=str(inst), gamma=0.31, p=3, betas=[0.7], scope="feasible")
    assert code == 0
    jsonschema.validate(json.loads(text), schema("certificate.schema.json"))
    text, code = ceqaoa.run("certify", instance_path=str(toy), gamma=2 * math.pi, p=1)
    assert code == 3
    jsonschema.validate(json.loads(text), schema("certificate.schema.json"))

    text, code = ceqaoa.run("feasibility", instance_path=str(inst), p=1, budget=20, seed=2)
    assert code == 0
    jsonschema.validate(json.loads(text), schema("feasibility_report.schema.json"))

    text, code = ceqaoa.run("rl", instance_path=str(toy), gamma=0.4, half_width=1.5, p=3, samples=50, seed=3)
    assert code == 0
    report = json.loads(text)
    jsonschema.validate(report, schema("rl_report.schema.json"))
    assert report["seed"] == 3


def test_run_rejects_unknown_options():
    with pytest.raises(ceqaoa.PreconditionError):
        ceqaoa.run("plan", c_beta=0.5, delta=1.0, colour="red")
