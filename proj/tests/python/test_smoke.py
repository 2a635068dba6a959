import math
import os
import pathlib
import subprocess

import numpy as np
import pytest

import tdkit

DATA = pathlib.Path(os.environ.get("TDKIT_DATA_DIR", pathlib.Path(__file__).resolve().parents[2] / "data"))


def test_clean_comment():
    assert tdkit.clean_comment("// TODO: Fix this") == "todo: fix this"


def test_extract_source_groups_line_comments():
    src = "class A {\n  void m() {\n    // one\n    // two\n    run();\n  }\n}\n"
    fns = tdkit.extract_source("r", "A.java", src)
    assert len(fns) == 1
    assert len(fns[0]["comments"]) == 1
    assert fns[0]["comments"][0]["raw"] == "// one\n// two"


def test_entropy_and_errors():
    assert tdkit.entropy([0.5, 0.5]) == pytest.approx(math.log(2), abs=1e-15)
    assert tdkit.entropy([1.0, 0.0]) == 0.0
    with pytest.raises(tdkit.TdkitError):
        tdkit.entropy([0.7, 0.7])


def test_kappa_and_bands():
    k = tdkit.cohen_kappa([[20, 5], [10, 15]])
    assert k["kappa"] == pytest.approx(0.4, abs=1e-9)
    assert tdkit.landis_koch_band(0.3700) == "Fair"
    assert tdkit.landis_koch_band(0.4529) == "Moderate"


def test_fusion_helpers():
    out = tdkit.str_concat(["a", "b"], ["c", "d", "e"], 4)
    assert out == ["a", "b", "[SEP]", "c"]
    emb = tdkit.embed_tokens("int x = 1 ;", 8, 3)
    assert emb.shape == (5, 8)
    assert np.allclose(np.linalg.norm(emb, axis=1), 1.0)
    rng = np.random.default_rng(0)
    G, H = rng.normal(size=(3, 8)), rng.normal(size=(5, 8))
    A, fused, pooled = tdkit.code_att(G, H)
    assert A.shape == (3, 5) and fused.shape == (3, 8) and pooled.shape == (8,)
    assert np.allclose(A.sum(axis=1), 1.0, atol=1e-12)
    scores = G @ H.T
    ref = np.exp(scores - scores.max(axis=1, keepdims=True))
    ref /= ref.sum(axis=1, keepdims=True)
    assert np.allclose(A, ref, atol=1e-12)
    assert np.allclose(fused, ref @ H, atol=1e-12)


def test_vote_and_metrics():
    votes = [("2", "DESIGN"), ("10", "DESIGN"), ("20", "DEFECT"), ("full", "DEFECT")]
    assert tdkit.majority_vote(votes) == "DEFECT"
    assert tdkit.example_f1(["DESIGN", "TEST"], ["DESIGN"]) == pytest.approx(2 / 3)
    rep = tdkit.evaluate(["DESIGN", "NON_SATD"], ["DESIGN", "NON_SATD"], "detection")
    assert rep["f1"] == pytest.approx(1.0)


def test_pipeline_from_python(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        "[paths]\n"
        f"corpus = {DATA / 'mini-corpus'}\n"
        f"output = {tmp_path / 'out'}\n"
        f"finals = {DATA / 'mini-finals.jsonl'}\n"
        "[sampling]\nn = 10\n"
    )
    summary = tdkit.run_pipeline(cfg)
    assert (tmp_path / "out" / "report.json").exists()
    assert summary


@pytest.mark.skipif("TDKIT_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_missing_input_names_path(tmp_path):
    missing = tmp_path / "nope.jsonl"
    r = subprocess.run([os.environ["TDKIT_CLI"], "stats", "--comments", str(missing)], capture_output=True, text=True)
    assert r.returncode != 0
    assert str(missing) in r.stderr + r.stdout
