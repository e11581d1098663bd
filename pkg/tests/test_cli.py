import json
import subprocess
import sys

from qalink import diagram as dg
from qalink import montesinos as mt
from qalink import qa
from qalink.cli import dumps, main
from qalink.polynomials import jones
from qalink.taitgraph import determinant


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_tangle_eval(capsys):
    code, out, _ = run(capsys, "tangle", "eval", "[3,4]", "--format", "table")
    assert code == 0 and out.strip() == "13/4"
    assert run_json(capsys, "tangle", "eval", "[0,1,10,1,6]")[1] == {"fraction": "76/83"}


def test_det_matches_library(capsys):
    assert run_json(capsys, "det", "n(-1+3)") == (0, {"det": 2})
    code, d = run_json(capsys, "det", "n(-1+(2/3+2/3))", "--method", "enumerate")
    assert d["det"] == determinant(dg.compile_link("n(-1+(2/3+2/3))"))


def test_poly_matches_library(capsys):
    code, d = run_json(capsys, "poly", "n(3)", "--kind", "jones")
    assert code == 0
    assert d["poly"] == jones(dg.compile_link("n(3)")).to_string("s")
    code, d = run_json(capsys, "poly", "n(3)", "--kind", "lambda")
    assert code == 0 and "z" in d["poly"]


def test_montesinos_classify(capsys):
    assert run_json(capsys, "montesinos", "classify", "-1;2,3,3") == \
        (0, {"qa": False, "clause": "eps=-1, no witness pair"})


def test_montesinos_build_with_certificate(capsys, tmp_path):
    code, d = run_json(capsys, "montesinos", "build", "-1;5/4,2,2", "--certificate")
    assert code == 0
    assert d["det"] == mt.determinant_closed_form(mt.parse_montesinos("-1;5/4,2,2"))
    path = tmp_path / "cert.json"
    path.write_text(json.dumps(d["certificate"]))
    code, v = run_json(capsys, "qa", "verify", str(path))
    assert code == 0 and v["accepted"]


def test_certify_and_verify_round_trip(capsys, tmp_path):
    code, d = run_json(capsys, "qa", "certify", "n(-1/2+(2/3+2/3))")
    assert code == 0 and d["verdict"] == "Certified"
    text = qa.certificate_to_json(qa.certificate_from_json(dumps(d["certificate"])))
    # the canonical certificate JSON re-serializes byte-exactly
    assert qa.certificate_to_json(qa.certificate_from_json(text)) == text
    assert json.loads(text) == d["certificate"]
    d["certificate"]["det"] += 1
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(d["certificate"]))
    code, v = run_json(capsys, "qa", "verify", str(path))
    assert code == 1 and not v["accepted"]


def test_refusal_exit_codes(capsys):
    code, d = run_json(capsys, "qa", "certify", "n(0)")
    assert code == 1 and d["error"] == "precondition"
    code, d = run_json(capsys, "family", "generate", "--T", "1/3+1/3", "--params", "1/2")
    assert code == 1 and d["error"] == "det_inequality"
    code, d = run_json(capsys, "montesinos", "build", "-1;2,3,3")
    assert code == 1 and d["error"] == "not_buildable"


def test_usage_exit_codes(capsys):
    assert run(capsys, "tangle", "eval", "1/0")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "det", "n(3)", "--method", "bogus")[0] == 2


def test_family_generate(capsys):
    code, d = run_json(capsys, "family", "generate", "--T", "2/3+2/3", "--params", "1/3,2/5")
    assert code == 0 and d["verdict"] == "Certified"
    assert all(v for k, v in d["checks"].items() if isinstance(v, bool))


def test_sweep_sorted_and_parallel(capsys, tmp_path):
    manifest = [{"variant": "sum", "T": "3/4+2/3", "params": ["1/2"]},
                {"variant": "sum", "T": "2/3+2/3", "params": ["1/3"]}]
    path = tmp_path / "m.json"
    path.write_text(json.dumps(manifest))
    _, one = run_json(capsys, "family", "sweep", str(path))
    _, two = run_json(capsys, "family", "sweep", str(path), "--jobs", "2")
    assert one == two
    assert [r["key"] for r in one] == sorted(r["key"] for r in one)


def test_conjecture_report(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps([{"expr": "n(3)"}]))
    code, rows = run_json(capsys, "conjecture", "report", str(path))
    assert code == 0
    row = rows[0]
    assert (row["crossings"], row["det"], row["c_le_det"], row["torus_exempt"]) == (3, 3, True, True)
    empty = tmp_path / "e.json"
    empty.write_text("[]")
    code, out, _ = run(capsys, "conjecture", "report", str(empty), "--format", "table")
    assert code == 0


def test_corpus_seeded(capsys):
    _, a = run_json(capsys, "family", "corpus", "--count", "4", "--seed", "5")
    _, b = run_json(capsys, "family", "corpus", "--count", "4", "--seed", "5")
    assert a == b and len(a) == 4


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "qalink", "det", "n(3)"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout) == {"det": 3}


def test_conjecture_ratio(capsys):
    code, d = run_json(capsys, "conjecture", "ratio", "--count", "5", "--seed", "2")
    assert code == 0 and d["contradictions"] == []
    assert len(d["rows"]) == 5
