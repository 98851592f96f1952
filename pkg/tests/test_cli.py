import json

import pytest

from twistcoh.cli import load_config, main
from twistcoh.verify import TOGGLES, VerifyConfig, run_verify


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, "--json", *argv)
    return code, json.loads(out)


def test_verify_smoke(capsys):
    code, out = run(capsys, "verify", "--n-max", "2")
    assert code == 0
    assert out.strip().endswith("overall: PASS")
    assert all(name in out for name in TOGGLES)


def test_verify_json_schema(capsys):
    code, doc = run_json(capsys, "verify", "--n-max", "3")
    assert code == 0
    assert doc["schema"] == "twistcoh.verify/1"
    assert doc["status"] == "PASS"
    assert [c["name"] for c in doc["checks"]] == list(TOGGLES)
    assert doc["metadata"]["config"]["seed"] == 0


def test_flags_after_subcommand(capsys):
    code, doc = run(capsys, "verify", "--n-max", "2", "--json", "--seed", "5")
    assert code == 0 and json.loads(doc)["metadata"]["config"]["seed"] == 5


def test_verify_perturbed_oracle_fails_with_location(capsys):
    code, doc = run_json(capsys, "verify", "--n-max", "4", "--perturb-oracle", "--only", "snf")
    assert code == 1
    snf = doc["checks"][0]
    assert snf["name"] == "snf" and snf["status"] == "FAIL"
    first = snf["details"]["failures"][0]
    assert first.startswith("n=") and "degree" in first and "prime t+" in first


def test_verify_perturbed_matrix_fails(capsys):
    code, out = run(capsys, "verify", "--n-max", "3", "--perturb-matrix", "--only", "snf")
    assert code == 1
    assert "FAIL" in out and "degree" in out


def test_verify_deterministic():
    cfg = VerifyConfig(n_max=4, seed=3)
    a = [(c["name"], c["status"], c["details"]) for c in run_verify(cfg).to_json()["checks"]]
    b = [(c["name"], c["status"], c["details"]) for c in run_verify(VerifyConfig(n_max=4, seed=3)).to_json()["checks"]]
    assert a == b


def test_verify_workers_agree():
    one = run_verify(VerifyConfig(n_max=4, enabled={k: k == "snf" for k in TOGGLES}))
    two = run_verify(VerifyConfig(n_max=4, workers=2, enabled={k: k == "snf" for k in TOGGLES}))
    assert one.checks[0].details["table"] == two.checks[0].details["table"]
    assert one.passed and two.passed


def test_each_enabled_check_appears_once():
    cfg = VerifyConfig(n_max=3, perturb_oracle=True)
    rep = run_verify(cfg)
    names = [c.name for c in rep.checks]
    assert len(names) == len(set(names))
    assert "ratio" not in names and rep.metadata["effective_checks"] == names


def test_check_exception_becomes_fail(monkeypatch):
    import twistcoh.verify as v

    def boom(cfg):
        raise RuntimeError("kaboom")

    monkeypatch.setattr(v, "check_arith", boom)
    rep = run_verify(VerifyConfig(n_max=2, enabled={k: k == "arith" for k in TOGGLES}))
    assert not rep.passed
    assert "kaboom" in rep.checks[0].details["error"]


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# smoke\nn_max = 2\ncheck_euler = false\nseed = 4\n")
    assert load_config(cfg)["n_max"] == "2"
    code, doc = run_json(capsys, "--config", str(cfg), "verify")
    assert code == 0
    assert doc["metadata"]["config"]["n_max"] == 2 and doc["metadata"]["config"]["seed"] == 4
    assert "euler" not in [c["name"] for c in doc["checks"]]
    # flags override the file
    code, doc = run_json(capsys, "--config", str(cfg), "verify", "--n-max", "3", "--seed", "1")
    assert doc["metadata"]["config"]["n_max"] == 3 and doc["metadata"]["config"]["seed"] == 1


def test_bad_config_and_bounds(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("n_maxx = 2\n")
    assert main(["--config", str(cfg), "verify"]) == 2
    assert main(["verify", "--n-max", "11"]) == 2
    assert main(["verify", "--n-max", "3", "--m-max", "4"]) == 2
    assert main(["verify", "--only", "nonsense"]) == 2
    with pytest.raises(SystemExit):
        main(["frobnicate"])


def test_complex_json(capsys):
    code, doc = run_json(capsys, "complex", "--family", "B", "--n", "2")
    assert code == 0 and doc["schema"] == "twistcoh.complex/1"
    assert doc["bases"]["1"] == ["10", "01"]
    assert doc["matrices"]["0"] == [["1 + q"], ["1 + t"]]
    assert doc["matrices"]["1"] == [["-1 - t - q*t - q*t^2", "1 + q + q*t + q^2*t"]]


def test_complex_mod_phi_text(capsys):
    code, out = run(capsys, "complex", "--n", "2", "--mod-phi", "2")
    assert code == 0 and "K2[t]" in out


def test_cohomology_json(capsys):
    code, doc = run_json(capsys, "cohomology", "--family", "B", "--n", "6", "--mod-phi", "3")
    assert code == 0
    top = doc["degrees"][6]
    assert set(top) == {"degree", "free_rank", "invariant_factors", "primary", "unexplained_degree"}
    assert top["primary"] == [["t+1", 1], ["t+z^1", 1], ["t+z^2", 1]]
    assert doc["degrees"][3]["primary"] == [["t+1", 1], ["t+z^2", 1]]
    assert all(d["unexplained_degree"] == 0 for d in doc["degrees"])


def test_cohomology_type_a(capsys):
    code, out = run(capsys, "cohomology", "--family", "A", "--n", "2")
    assert code == 0 and "H^2: free rank 0; torsion (1 + q + q^2)" in out


def test_cohomology_needs_mod_phi(capsys):
    assert main(["cohomology", "--n", "3"]) == 2


def test_oracle_outputs(capsys):
    code, doc = run_json(capsys, "oracle", "--n", "3")
    assert doc["degrees"] == {"2": ["{2}_0"], "3": ["{1}_2", "{3}_0", "{3}_1"]}
    code, doc = run_json(capsys, "oracle", "--n", "6", "--mod-phi", "3")
    assert doc["degrees"]["6"] == [["t+1", 1], ["t+z^1", 1], ["t+z^2", 1]]
    code, doc = run_json(capsys, "oracle", "--n", "2", "--ratio")
    assert doc["degrees"] == {"1": ["1 + t"], "2": ["-1 + t^2"]}


def test_poincare(capsys):
    code, doc = run_json(capsys, "poincare", "--n", "3", "--cosets")
    assert code == 0 and doc["matches_closed_form"] and len(doc["cosets"]) == 8


def test_euler(tmp_path, capsys):
    g = tmp_path / "tri.txt"
    g.write_text("rank 3\n1 2 3\n2 3 3\n1 3 3\n")
    code, doc = run_json(capsys, "euler", "--graph", str(g))
    assert code == 0 and doc["graphs"][0]["euler"] == 1
    code, doc = run_json(capsys, "euler", "--affine", "B", "--n", "5")
    assert doc["graphs"][0]["euler"] == -1
    code, doc = run_json(capsys, "euler", "--random", "3", "--seed", "2")
    assert len(doc["graphs"]) == 3
    assert main(["euler", "--affine", "A"]) == 2


def test_tym(capsys):
    code, doc = run_json(capsys, "tym", "--n", "4", "--check")
    assert code == 0 and doc["status"] == "PASS" and all(doc["checks"].values())
    code, doc = run_json(capsys, "tym", "--n", "3", "--tables")
    groups = [t["group"] for t in doc["tables"]]
    assert groups == ["Br_4", "A~_2", "A~_2"]


def test_ideals(capsys):
    code, doc = run_json(capsys, "ideals", "--n", "6")
    assert code == 0 and doc["status"] == "PASS" and len(doc["reports"]) == 4
    code, doc = run_json(capsys, "ideals", "--n", "6", "--lemma", "2")
    assert [r["name"] for r in doc["reports"]] == ["ideal lemma (product decomposition)"]
    code, out = run(capsys, "ideals", "--n", "1", "--lemma", "1")
    assert code == 0 and "no applicable" in out
