from __future__ import annotations

import json
import shutil
from pathlib import Path

import pytest

from ultrasumm import _io
from ultrasumm.cli import main, parse_args, sweep_norms
from ultrasumm.corpus_io import bundled_corpus, load_corpus, preprocess
from ultrasumm.vsm import loads

DATA = Path(__file__).parent / "data"
GOLDEN = json.loads((DATA / "golden_cortex_fix1.json").read_text())


def run(*argv) -> int:
    return main([str(a) for a in argv] + ["--no-plots"])


@pytest.fixture
def small_corpus(tmp_path):
    """Two Spanish fixture documents copied to a scratch directory."""
    root = tmp_path / "corpus"
    root.mkdir()
    for src in sorted(bundled_corpus("es").iterdir())[:2]:
        shutil.copy(src, root / src.name)
    return root


# -- configuration -------------------------------------------------------------------

def test_precedence(tmp_path, monkeypatch):
    cfg = tmp_path / "c.toml"
    cfg.write_text('lang = "fr"\nseed = 5\n[mantel]\nperms = 49\nnorms = ["raw", "fix:2"]\n', encoding="utf-8")
    args = parse_args(["mantel", "--config", str(cfg)])
    assert (args.lang, args.seed, args.perms, args.norms) == ("fr", 5, 49, "raw,fix:2")
    args = parse_args(["mantel", "--config", str(cfg), "--perms", "9", "--lang", "es"])
    assert (args.lang, args.perms) == ("es", 9)
    assert parse_args(["mantel"]).perms == 999
    assert parse_args(["summarize"]).concat_cluster is True
    assert parse_args(["summarize", "--no-concat-cluster"]).concat_cluster is False


def test_seed_env_fallback(tmp_path, monkeypatch, small_corpus):
    out = tmp_path / "o"
    monkeypatch.setenv("ULTRASUMM_SEED", "17")
    assert run("mantel", "--corpus", small_corpus, "--lang", "es", "--out", out, "--perms", 9) == 0
    assert json.loads((out / "mantel.json").read_text())["seed"] == 17
    assert run("mantel", "--corpus", small_corpus, "--lang", "es", "--out", out, "--perms", 9, "--seed", 3) == 0
    assert json.loads((out / "mantel.json").read_text())["seed"] == 3
    monkeypatch.delenv("ULTRASUMM_SEED")
    assert run("mantel", "--corpus", small_corpus, "--lang", "es", "--out", out, "--perms", 9) == 0
    assert json.loads((out / "mantel.json").read_text())["seed"] == 0


def test_bad_config(tmp_path, capsys):
    cfg = tmp_path / "c.toml"
    cfg.write_text("colour = 1\n", encoding="utf-8")
    assert main(["stats", "--config", str(cfg)]) == 2
    assert "unknown config key" in capsys.readouterr().err
    assert main(["summarize", "--norm", "fix:0", "--out", str(tmp_path)]) == 2
    assert main(["summarize", "--budget", "pages:3", "--out", str(tmp_path)]) == 2


def test_empty_corpus(tmp_path, capsys):
    empty = tmp_path / "empty"
    empty.mkdir()
    assert run("preprocess", "--corpus", empty, "--out", tmp_path / "o") == 2
    assert "no documents" in capsys.readouterr().err
    assert run("stats", "--corpus", tmp_path / "missing", "--out", tmp_path / "o") == 2


# -- preprocess -------------------------------------------------------------------------

def test_preprocess_tables_and_dumps(tmp_path):
    out = tmp_path / "o"
    assert run("preprocess", "--lang", "en", "--out", out, "--norms", "raw,fix:1", "--dump") == 0
    rows = {r["strategy"]: r for r in _io.read_table(out / "density.csv")}
    assert list(_io.read_table(out / "density.csv")[0]) == ["strategy", "mean_P", "mean_N", "rho", "delta", "volume"]
    assert float(rows["raw"]["volume"]) == 1.0
    assert float(rows["fix:1"]["volume"]) < 1.0
    # recompute volumes from the dumps
    vols = []
    for raw in load_corpus(bundled_corpus("en"), "en"):
        m_raw = loads((out / "matrices" / f"{raw.id}.raw.mtx").read_text())
        m_fix = loads((out / "matrices" / f"{raw.id}.fix1.mtx").read_text())
        vols.append(m_fix.P * m_fix.N / (m_raw.P * m_raw.N))
    assert float(rows["fix:1"]["volume"]) == pytest.approx(sum(vols) / len(vols), abs=1e-6)


def test_preprocess_single_document(tmp_path):
    root = tmp_path / "one"
    root.mkdir()
    src = sorted(bundled_corpus("fr").iterdir())[0]
    shutil.copy(src, root / src.name)
    assert run("preprocess", "--corpus", root, "--lang", "fr", "--out", tmp_path / "o", "--norms", "raw") == 0
    row = _io.read_table(tmp_path / "o" / "density.csv")[0]
    P = preprocess(load_corpus(root, "fr")[0]).P
    assert float(row["mean_P"]) == P


# -- summarize ---------------------------------------------------------------------------

@pytest.mark.parametrize("lang", ["en", "es", "fr"])
def test_summarize_golden(tmp_path, lang):
    out = tmp_path / "o"
    assert run("summarize", "--lang", lang, "--out", out, "--norm", "fix:1", "--summarizer", "cortex") == 0
    for doc_id, expected in GOLDEN[lang].items():
        record = json.loads((out / "summaries" / f"{doc_id}.cortex.fix1.json").read_text())
        assert record["selected"] == expected["selected"]
        assert record["budget"] == expected["budget"]
    timing = _io.read_table(out / "timing.csv")
    assert len(timing) == len(GOLDEN[lang])
    for row in timing:
        parts = [float(row[k]) for k in ("t_filter", "t_normalize", "t_vectorize", "t_summarize")]
        assert sum(parts) == pytest.approx(float(row["tau"]), abs=1e-5)
        assert float(row["tau"]) <= float(row["total"]) + 1e-5


def test_summarize_percent_100(tmp_path, small_corpus):
    out = tmp_path / "o"
    assert run("summarize", "--corpus", small_corpus, "--lang", "es", "--out", out, "--budget", "percent:100") == 0
    for raw in load_corpus(small_corpus, "es"):
        text = (out / "summaries" / f"{raw.id}.cortex.fix1.txt").read_text().rstrip("\n")
        assert text == " ".join(preprocess(raw).surfaces)


def test_summarize_deterministic_and_parallel(tmp_path, small_corpus):
    outs = []
    for k, workers in enumerate((1, 1, 2)):
        out = tmp_path / f"o{k}"
        assert run("summarize", "--corpus", small_corpus, "--lang", "es", "--out", out, "--workers", workers) == 0
        outs.append({p.name: p.read_bytes() for p in sorted((out / "summaries").iterdir())})
    assert outs[0] == outs[1] == outs[2]


def test_failure_isolated(tmp_path, small_corpus, capsys):
    (small_corpus / "blank.txt").write_text("   \n", encoding="utf-8")
    out = tmp_path / "o"
    assert run("summarize", "--corpus", small_corpus, "--lang", "es", "--out", out) == 1
    failures = _io.read_table(out / "failures.csv")
    assert [f["doc_id"] for f in failures] == ["blank"]
    assert len(_io.read_table(out / "timing.csv")) == 2


# -- sweep ---------------------------------------------------------------------------------

def test_sweep_rows_and_means(tmp_path, small_corpus):
    out = tmp_path / "o"
    assert run("sweep", "--corpus", small_corpus, "--lang", "es", "--out", out) == 0
    rows = _io.read_table(out / "sweep.csv")
    means = _io.read_table(out / "sweep_means.csv")
    assert len(sweep_norms(14)) == 17
    for kind in ("cortex", "enertex", "artex"):
        mine = [m for m in means if m["summarizer"] == kind]
        assert [m["norm"] for m in mine] == sweep_norms(14)
        assert sum(m["norm"].startswith("fix:") for m in mine) == 14
    assert len(rows) == 2 * 17 * 3
    for m in means:
        group = [float(r["mean"]) for r in rows if (r["summarizer"], r["norm"]) == (m["summarizer"], m["norm"])]
        assert float(m["mean"]) == pytest.approx(sum(group) / len(group), abs=1e-6)


# -- mantel -------------------------------------------------------------------------------

def test_mantel_grid(tmp_path, small_corpus):
    args = ("mantel", "--corpus", small_corpus, "--lang", "es", "--perms", 99, "--seed", 4)
    assert run(*args, "--out", tmp_path / "a") == 0
    assert run(*args, "--out", tmp_path / "b") == 0
    a = json.loads((tmp_path / "a" / "mantel.json").read_text())
    b = json.loads((tmp_path / "b" / "mantel.json").read_text())
    assert a == b
    grid = a["mean_r"]
    k = len(a["strategies"])
    assert a["strategies"] == ["fix:1", "stem", "lemma", "raw"]
    for i in range(k):
        assert grid[i][i] == 1.0
        for j in range(k):
            assert grid[i][j] == grid[j][i]
    assert all(r["p_value"] <= 0.01 for r in a["documents"] if "r" in r)


def test_mantel_skips_degenerate(tmp_path):
    root = tmp_path / "c"
    root.mkdir()
    # every sentence identical: the gram matrix is constant off the diagonal
    (root / "flat.txt").write_text("Cats chase mice. " * 6, encoding="utf-8")
    out = tmp_path / "o"
    assert run("mantel", "--corpus", root, "--lang", "en", "--out", out, "--perms", 9) == 0
    records = json.loads((out / "mantel.json").read_text())["documents"]
    assert records and all("skipped" in r for r in records)


# -- stats and evaluate -------------------------------------------------------------------

def test_stats(tmp_path):
    out = tmp_path / "o"
    assert run("stats", "--lang", "en", "--out", out) == 0
    header = [l for l in (out / "letters.tsv").read_text().splitlines() if l.startswith("#")]
    assert any("language: en" in l for l in header) and any("filter:" in l for l in header)
    letters = _io.read_table(out / "letters.tsv", "\t")
    docs = [preprocess(d) for d in load_corpus(bundled_corpus("en"), "en")]
    types = {t for d in docs for s in d.sentences for t in s.tokens}
    assert sum(int(r["types"]) for r in letters) == len(types)
    curve = _io.read_table(out / "lengths.tsv", "\t")
    assert max(float(r["normalized"]) for r in curve) == 1.0

    assert run("stats", "--lang", "en", "--out", out, "--norm", "fix:1") == 0
    assert [r["length"] for r in _io.read_table(out / "lengths.tsv", "\t")] == ["1"]


def test_evaluate(tmp_path, small_corpus):
    out = tmp_path / "o"
    assert run("summarize", "--corpus", small_corpus, "--lang", "es", "--out", out, "--summarizer", "artex") == 0
    assert run("evaluate", "--corpus", small_corpus, "--lang", "es", "--out", out) == 0
    rows = _io.read_table(out / "evaluation.csv")
    assert [(r["summarizer"], r["norm"]) for r in rows] == [("artex", "fix1")] * 2
    for r in rows:
        assert 0 < float(r["mean"]) <= 1
    assert run("evaluate", "--corpus", small_corpus, "--lang", "es", "--out", out, "--summaries", tmp_path / "nope") == 2


def test_plots_written(tmp_path, small_corpus):
    out = tmp_path / "o"
    assert main(["preprocess", "--corpus", str(small_corpus), "--lang", "es", "--out", str(out)]) == 0
    assert (out / "density.png").stat().st_size > 0
