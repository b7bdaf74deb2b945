import json
import subprocess
import sys

import jsonschema
import pytest
from importlib import resources

from covergraph.cli import RunConfig, export, main, parse_graph, run_property_suite, run_table_theorem7
from covergraph.certify import certificate_from_json, certify_theorem12, validate
from covergraph.errors import FormatError
from covergraph.graph import build_cycle, girth
from covergraph.orientations import hasse_from_orientation, is_cover_exact


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_graph_specs(tmp_path):
    assert parse_graph("C5") == build_cycle(5)
    assert parse_graph("K_4").size == 6
    assert parse_graph("M1(C5)").order == 11
    assert parse_graph("cycle:6").size == 6
    assert parse_graph("petersen").size == 15
    with pytest.raises(FormatError):
        parse_graph("nonsense")


def test_cover_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "cover", "decide", "K3")
    assert code == 0 and "NOT_COVER" in out
    code, out, _ = run(capsys, "cover", "dmin", "K4", "--format", "json")
    assert code == 0 and json.loads(out)["result"]["d_min"] == 3
    poset = tmp_path / "poset.json"
    code, out, _ = run(capsys, "cover", "poset", "C4", "-o", str(poset))
    assert code == 0 and len(json.loads(poset.read_text())["covers"]) == 4


def test_exit_codes(capsys):
    code, _, err = run(capsys, "cover", "decide", "M2(C5)")
    assert code == 2 and "capacity" in err
    code, out, _ = run(capsys, "cover", "decide", "M2(C5)", "--bound-edges", "30")
    assert code == 0 and "NOT_COVER" in out
    code, _, err = run(capsys, "cover", "decide", "no-such-graph")
    assert code == 3 and "input error" in err
    code, _, _ = run(capsys, "certify", "cor15", "1", "1", "1", "1")
    assert code == 3
    with pytest.raises(SystemExit):
        main(["cover", "decide", "C5", "--workers", "0"])


def test_json_is_byte_identical_across_workers(capsys):
    outs = set()
    for workers in ("1", "2", "3"):
        code, out, _ = run(capsys, "cover", "decide", "petersen", "--format", "json", "--workers", workers, "--seed", "5")
        assert code == 0
        outs.add(out)
    assert len(outs) == 1
    assert json.loads(outs.pop())["config"]["seed"] == 5


def test_certify_and_validate_files(capsys, tmp_path):
    cert = tmp_path / "c.json"
    code, out, _ = run(capsys, "certify", "thm12", "1", "2", "1", "2", "-o", str(cert))
    assert code == 0 and "validated" in out
    code, out, _ = run(capsys, "certify", "validate", str(cert))
    assert code == 0 and out.startswith("valid NOT_COVER")
    graph = tmp_path / "g.json"
    run(capsys, "construct", "myc", "--m", "1", "--base", "C5", "-o", str(graph))
    code, out, _ = run(capsys, "certify", "validate", str(cert), str(graph))
    assert code == 3 and "different graph" in out
    obj = json.loads(cert.read_text())
    obj["step"]["map"][0][1] = obj["step"]["map"][1][1]
    cert.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "certify", "validate", str(cert))
    assert code == 3 and "INVALID at root.step" in out


def test_certify_commands(capsys):
    for argv, expect in ((("certify", "thm7", "1", "4"), "COVER via ChiGirthRule"),
                         (("certify", "thm8", "K4", "1"), "NOT_COVER via SupergraphOfNonCover"),
                         (("certify", "thm13", "C4", "C5", "1", "1"), "COVER via HomIntoCover"),
                         (("certify", "cor15", "1", "2", "1", "2"), "= 4 = min(4, 4)")):
        code, out, _ = run(capsys, *argv)
        assert code == 0 and expect in out, argv


def test_hom_commands(capsys, tmp_path):
    m = tmp_path / "map.json"
    code, out, _ = run(capsys, "hom", "find", "C5", "K3", "-o", str(m))
    assert code == 0
    code, out, _ = run(capsys, "hom", "verify", "C5", "K3", str(m))
    assert code == 0 and "valid" in out
    pairs = json.loads(m.read_text())
    pairs[1][1] = pairs[0][1]
    m.write_text(json.dumps(pairs))
    code, out, _ = run(capsys, "hom", "verify", "C5", "K3", str(m))
    assert code == 3 and "not preserved" in out
    code, out, _ = run(capsys, "hom", "find", "K3", "C5")
    assert "no homomorphism" in out
    code, out, _ = run(capsys, "hom", "lemma11", "3", "3", "2", "1")
    assert code == 0 and out.count("verified") == 3


def test_chic_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "chic", "C5")
    assert "5/2" in out
    code, out, _ = run(capsys, "chic", "C5", "--method", "imbalance", "--format", "json")
    assert json.loads(out)["result"]["chi_c"] == "5/2"
    w = tmp_path / "w.json"
    code, out, _ = run(capsys, "chic", "M1(C5)", "--method", "bounds", "-o", str(w))
    assert json.loads(w.read_text())["exact"] == "4"


def test_table(capsys, tmp_path):
    t = run_table_theorem7(2, 6, cert_dir=tmp_path)
    verdicts = {(c["m"], c["n"]): c["verdict"] for c in t["cells"]}
    assert verdicts[(2, 5)] == "SKIPPED"
    for (m, n), v in verdicts.items():
        if (m, n) != (2, 5):
            assert v == ("COVER" if n % 2 == 0 else "NOT_COVER")
            assert validate(certificate_from_json((tmp_path / f"thm7_m{m}_n{n}.json").read_text())).ok
    assert t["contradictions"] == []
    t = run_table_theorem7(2, 6, bound_edges=30, workers=3)
    assert all(c["verdict"] != "SKIPPED" for c in t["cells"])
    assert run_table_theorem7(1, 3)["cells"][0]["verdict"] == "NOT_COVER"
    assert run_table_theorem7(1, 4, min_n=4)["cells"][0]["verdict"] == "COVER"
    code, out, _ = run(capsys, "table", "thm7", "--max-m", "1", "--max-n", "4")
    assert code == 0 and out.startswith("# seed=0")


def test_property_suite_and_fault_injection(capsys):
    report = run_property_suite(3, [4, 5, 6], samples=120)
    assert all(p["violations"] == 0 for p in report["properties"].values())
    faulty = run_property_suite(3, [4, 5, 6], samples=120, girth_fn=lambda G: girth(G) + 1)
    a = faulty["properties"]["a_chi_below_girth"]
    assert a["violations"] > 0 and a["counterexample"] is not None
    assert run_property_suite(0, [])["properties"] == {}
    code, out, _ = run(capsys, "props", "--sizes", "")
    assert code == 0
    code, out, _ = run(capsys, "props", "--sizes", "4,5", "--samples", "40", "--inject-fault", "girth")
    assert code == 1 and "FAIL a_chi_below_girth" in out


def test_props_json_is_reproducible(capsys):
    outs = {run(capsys, "props", "--sizes", "5,6", "--samples", "60", "--seed", "9", "--format", "json")[1] for _ in range(2)}
    assert len(outs) == 1


def test_export(capsys, tmp_path):
    C5 = build_cycle(5)
    dot = export(C5, "dot")
    assert dot.count(";") == 10 and export(C5, "dot") == dot
    P = hasse_from_orientation(is_cover_exact(build_cycle(4)).orientation)
    assert len(json.loads(export(P, "json"))["covers"]) == 4
    assert export(P, "dot").count("->") == 4
    schema = json.loads(resources.files("covergraph").joinpath("certificate.schema.json").read_text())
    jsonschema.validate(json.loads(export(certify_theorem12(1, 2, 1, 2), "json")), schema)
    with pytest.raises(FormatError):
        export(certify_theorem12(1, 1, 1, 1), "dot")
    code, out, _ = run(capsys, "export", "C5", "--format", "dot")
    assert code == 0 and out.count("--") == 5
    code, out, _ = run(capsys, "export", "C4", "--poset")
    assert len(json.loads(out)["covers"]) == 4
    f = tmp_path / "p.json"
    run(capsys, "export", "C4", "--poset", "-o", str(f))
    code, out, _ = run(capsys, "export", str(f), "--format", "dot")
    assert out.count("->") == 4


def test_run_config_validation():
    with pytest.raises(Exception):
        RunConfig("x", bound_edges=0)
    assert "workers" not in RunConfig("x", workers=4).echo()


def test_console_script_help():
    out = subprocess.run([sys.executable, "-m", "covergraph.cli", "--help"], capture_output=True, text=True)
    assert out.returncode == 0
    for flag in ("--bound-edges", "--workers", "--seed", "--format", "--rerun-exhaustion"):
        assert flag in out.stdout


def test_module_entry_point():
    import subprocess
    import sys

    out = subprocess.run([sys.executable, "-m", "covergraph", "--version"], capture_output=True, text=True, check=True)
    assert out.stdout.startswith("covergraph 0.1.0")
