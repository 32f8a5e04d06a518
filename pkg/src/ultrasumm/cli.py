"""Command-line interface: ``ultrasumm <command> [options]``.

Commands
    preprocess   matrix statistics (and optional dumps) per normalization
    summarize    summaries, per-document score records and stage timings
    sweep        FRESA of Fix(1..n) against raw, stem and lemma
    mantel       Mantel correlation grid between normalizations
    stats        initial-letter ranking and word-length distribution
    evaluate     FRESA of existing summary files against their sources

Settings come from flags, then from a TOML file given with ``--config``
(top-level keys or a table named after the command), then from defaults.
The seed falls back to the ``ULTRASUMM_SEED`` environment variable.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from . import _io
from .analyze import DegenerateMatrixError, letter_ranking, mantel_test, word_length_distribution
from .corpus_io import (
    IngestionError,
    RawDocument,
    SkippedFile,
    StopList,
    bundled_corpus,
    default_abbreviations,
    default_stoplist,
    load_corpus,
    load_stoplist,
    preprocess,
)
from .evaluate import evaluate_text
from .normalize import (
    ConfigurationError,
    LemmaDict,
    NormalizationStrategy,
    default_lemma_dict,
    load_lemma_dict,
    parse_strategy,
)
from .pipeline import default_budget, run_document, sweep_document
from .summarize import Budget, SummarizerKind
from .vsm import density, gram, vectorize, volume, write_dump

logger = logging.getLogger("ultrasumm")

SEED_ENV = "ULTRASUMM_SEED"
DEFAULT_SEED = 0
COMMANDS = ("preprocess", "summarize", "sweep", "mantel", "stats", "evaluate")

DEFAULTS = {
    "corpus": None,
    "lang": "en",
    "out": "ultrasumm-out",
    "norm": "fix:1",
    "norms": None,
    "summarizer": "cortex",
    "summarizers": "cortex,enertex,artex",
    "budget": None,
    "perms": 999,
    "seed": None,
    "workers": 1,
    "concat_cluster": True,
    "plots": True,
    "dump": False,
    "max_n": 14,
    "stoplist": None,
    "lemmas": None,
    "summaries": None,
}

NORMS_BY_COMMAND = {
    "preprocess": "raw,stem,lemma,fix:1,fix:2,fix:3,fix:4,fix:5",
    "mantel": "fix:1,stem,lemma,raw",
}


class CliError(Exception):
    """A fatal problem with the run as a whole (bad config, no corpus)."""


# -- configuration ---------------------------------------------------------------

@dataclass(frozen=True)
class Settings:
    """Resolved language resources shared by every document of a run."""

    language: str
    stoplist_path: str | None
    lemmas_path: str | None

    def stoplist(self) -> StopList:
        return _stoplist(self.language, self.stoplist_path)

    def abbreviations(self) -> frozenset[str]:
        return default_abbreviations(self.language)

    def lemma_dict(self) -> LemmaDict:
        return _lemmas(self.language, self.lemmas_path)

    def strategy(self, label: str) -> NormalizationStrategy:
        if label.strip().lower() == "lemma":
            return parse_strategy(label, lemma_dictionary=self.lemma_dict())
        return parse_strategy(label)


@lru_cache(maxsize=None)
def _stoplist(language: str, path: str | None) -> StopList:
    return load_stoplist(path, language) if path else default_stoplist(language)


@lru_cache(maxsize=None)
def _lemmas(language: str, path: str | None) -> LemmaDict:
    return load_lemma_dict(path, language) if path else default_lemma_dict(language)


def _load_config(path: str | None, command: str) -> dict:
    if not path:
        return {}
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise CliError(f"cannot read config {path}: {exc}") from exc
    merged = {k: v for k, v in data.items() if not isinstance(v, dict)}
    merged.update(data.get(command, {}))
    cleaned = {}
    for key, value in merged.items():
        key = key.replace("-", "_")
        if key not in DEFAULTS:
            raise CliError(f"unknown config key {key!r} in {path}")
        if isinstance(value, list):
            value = ",".join(str(v) for v in value)
        cleaned[key] = value
    return cleaned


def _resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return int(seed)
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise CliError(f"{SEED_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_SEED


def _split(value: str | Sequence[str]) -> list[str]:
    if isinstance(value, str):
        return [v.strip() for v in value.split(",") if v.strip()]
    return list(value)


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML file with default settings")
    common.add_argument("--corpus", help="corpus directory (default: bundled fixture for --lang)")
    common.add_argument("--lang", choices=("en", "es", "fr"), help="corpus language")
    common.add_argument("--out", help="output directory")
    common.add_argument("--seed", type=int, help=f"random seed (fallback: ${SEED_ENV}, then {DEFAULT_SEED})")
    common.add_argument("--workers", type=int, help="documents processed in parallel")
    common.add_argument(
        "--concat-cluster",
        action=argparse.BooleanOptionalAction,
        help="merge each sub-directory of the corpus into one document (default: on)",
    )
    common.add_argument("--plots", action=argparse.BooleanOptionalAction, help="write PNG figures (default: on)")
    common.add_argument("--stoplist", help="stop-word file replacing the bundled list")
    common.add_argument("--lemmas", help="lemma dictionary (surface<TAB>lemma) replacing the bundled one")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(
        prog="ultrasumm",
        description="Extractive summarization and diagnostics for word normalizations, including Fix_n truncation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", parents=[common], help="density and volume per normalization")
    p.add_argument("--norms", help="comma-separated normalizations")
    p.add_argument("--dump", action=argparse.BooleanOptionalAction, help="write matrix dumps")

    p = sub.add_parser("summarize", parents=[common], help="summarize every document")
    p.add_argument("--norm", help="raw | stem | lemma | fix:<n>")
    p.add_argument("--summarizer", choices=[k.value for k in SummarizerKind])
    p.add_argument("--budget", help="words:<k> | sentences:<k> | percent:<p>")

    p = sub.add_parser("sweep", parents=[common], help="FRESA for Fix(1..n) and baselines")
    p.add_argument("--summarizers", help="comma-separated summarizers")
    p.add_argument("--budget", help="words:<k> | sentences:<k> | percent:<p>")
    p.add_argument("--max-n", type=int, help="largest Fix length (default 14)")

    p = sub.add_parser("mantel", parents=[common], help="Mantel test grid")
    p.add_argument("--norms", help="comma-separated normalizations")
    p.add_argument("--perms", type=int, help="permutations per test (default 999)")

    p = sub.add_parser("stats", parents=[common], help="letter ranking and word lengths")
    p.add_argument("--norm", help="normalization applied before measuring word lengths (default raw)")

    p = sub.add_parser("evaluate", parents=[common], help="FRESA of summary files")
    p.add_argument("--summaries", help="directory of <id>.<summarizer>.<norm>.txt files")
    return parser


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    from_file = _load_config(args.config, args.command)
    merged = dict(DEFAULTS)
    if args.command == "stats":
        merged["norm"] = "raw"
    merged["norms"] = NORMS_BY_COMMAND.get(args.command)
    merged.update(from_file)
    for key, value in vars(args).items():
        if value is not None:
            merged[key] = value
    return argparse.Namespace(**merged)


# -- shared helpers -------------------------------------------------------------

def _settings(args) -> Settings:
    return Settings(args.lang, args.stoplist, args.lemmas)


def _corpus(args, skipped: list[SkippedFile] | None = None) -> list[RawDocument]:
    path = Path(args.corpus) if args.corpus else bundled_corpus(args.lang)
    docs = load_corpus(path, args.lang, concat_cluster=args.concat_cluster, skipped=skipped)
    if not docs:
        raise CliError(f"no documents found in {path}")
    return docs


def _parallel(fn: Callable, tasks: Sequence[tuple], workers: int) -> list:
    """Run ``fn(*task)`` for each task, in order, in worker processes if asked."""
    if workers <= 1 or len(tasks) <= 1:
        return [fn(*t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, *t) for t in tasks]
        return [f.result() for f in futures]


def _guard(fn: Callable, *task):
    """Run one document task; return (result, None) or (None, error message)."""
    try:
        return fn(*task), None
    except Exception as exc:  # isolate per-document failures
        return None, f"{type(exc).__name__}: {exc}"


def _record_failures(out: Path, failures: list[dict]) -> int:
    if not failures:
        return 0
    _io.write_table(out / "failures.csv", failures, ["doc_id", "stage", "error"])
    for f in failures:
        logger.error("%s failed during %s: %s", f["doc_id"], f["stage"], f["error"])
    return 1


def _figure(args, draw: Callable, *a) -> None:
    if not args.plots:
        return
    from . import plotting

    getattr(plotting, draw)(*a)


def _mean(values: Iterable[float]) -> float:
    values = list(values)
    return float(np.mean(values)) if values else float("nan")


# -- preprocess ---------------------------------------------------------------------

def _preprocess_task(raw: RawDocument, settings: Settings, norms: Sequence[str], dump_dir: str | None):
    doc = preprocess(raw, settings.stoplist(), settings.abbreviations())
    base = vectorize(doc, NormalizationStrategy.raw())
    rows = []
    for label in norms:
        strategy = settings.strategy(label)
        m = vectorize(doc, strategy)
        stats = density(m, base) if m.N else None
        rows.append(
            {
                "doc_id": raw.id,
                "strategy": strategy.label,
                "P": m.P,
                "N": m.N,
                "rho": m.P * m.N,
                "nonzeros": m.nonzeros,
                "delta": stats.density if stats else 0.0,
                "volume": volume(m, base) if base.N else float("nan"),
            }
        )
        if dump_dir:
            write_dump(m, Path(dump_dir) / f"{raw.id}.{strategy.slug}.mtx")
    return rows


def cmd_preprocess(args) -> int:
    out = Path(args.out)
    settings = _settings(args)
    norms = _split(args.norms)
    for label in norms:
        settings.strategy(label)
    docs = _corpus(args)
    dump_dir = str(out / "matrices") if args.dump else None
    results = _parallel(_guard, [(_preprocess_task, d, settings, norms, dump_dir) for d in docs], args.workers)

    per_doc, failures = [], []
    for raw, (rows, err) in zip(docs, results):
        if err:
            failures.append({"doc_id": raw.id, "stage": "preprocess", "error": err})
        else:
            per_doc.extend(rows)
    summary = []
    for label in norms:
        rows = [r for r in per_doc if r["strategy"] == settings.strategy(label).label]
        if not rows:
            continue
        summary.append(
            {
                "strategy": rows[0]["strategy"],
                "mean_P": _mean(r["P"] for r in rows),
                "mean_N": _mean(r["N"] for r in rows),
                "rho": _mean(r["rho"] for r in rows),
                "delta": _mean(r["delta"] for r in rows),
                "volume": _mean(r["volume"] for r in rows),
            }
        )
    cols = ["doc_id", "strategy", "P", "N", "rho", "nonzeros", "delta", "volume"]
    _io.write_table(out / "density_docs.csv", per_doc, cols)
    _io.write_table(out / "density.csv", summary, ["strategy", "mean_P", "mean_N", "rho", "delta", "volume"])
    _figure(args, "plot_density", summary, out / "density.png")
    print(f"{len(docs)} documents, {len(norms)} normalizations -> {out / 'density.csv'}")
    return _record_failures(out, failures)


# -- summarize ----------------------------------------------------------------------

def _summarize_task(raw: RawDocument, settings: Settings, norm: str, kind: str, budget: str | None):
    strategy = settings.strategy(norm)
    run = run_document(
        raw,
        strategy,
        kind,
        Budget.parse(budget) if budget else default_budget(raw),
        settings.stoplist(),
        settings.abbreviations(),
    )
    return run


def cmd_summarize(args) -> int:
    out = Path(args.out)
    settings = _settings(args)
    strategy = settings.strategy(args.norm)
    kind = SummarizerKind(args.summarizer)
    if args.budget:
        Budget.parse(args.budget)
    docs = _corpus(args)
    tasks = [(_summarize_task, d, settings, args.norm, kind.value, args.budget) for d in docs]
    results = _parallel(_guard, tasks, args.workers)

    timings, failures = [], []
    for raw, (run, err) in zip(docs, results):
        if err:
            failures.append({"doc_id": raw.id, "stage": "summarize", "error": err})
            continue
        stem = f"{raw.id}.{kind.value}.{strategy.slug}"
        _io.atomic_write_text(out / "summaries" / f"{stem}.txt", run.text + "\n")
        record = {
            "doc_id": raw.id,
            "summarizer": kind.value,
            "norm": strategy.label,
            "budget": str(run.summary.budget),
            "whole_document": run.summary.whole_document,
            "P": run.matrix.P,
            "N": run.matrix.N,
            "selected": list(run.summary.selected),
            "scores": [round(s, 12) for s in run.summary.scores],
        }
        _io.write_json(out / "summaries" / f"{stem}.json", record)
        if run.summary.whole_document:
            logger.warning("%s: budget %s covers the whole document", raw.id, run.summary.budget)
        timings.append({"summarizer": kind.value, "norm": strategy.label, **run.timing.as_row()})

    cols = ["doc_id", "summarizer", "norm", "t_filter", "t_normalize", "t_vectorize", "t_summarize", "tau", "total"]
    _io.write_table(out / "timing.csv", timings, cols)
    print(f"{len(timings)} summaries ({kind.value}, {strategy.label}) -> {out / 'summaries'}")
    return _record_failures(out, failures)


# -- sweep --------------------------------------------------------------------------

def _sweep_task(raw: RawDocument, settings: Settings, norms: Sequence[str], kinds: Sequence[str], budget: str | None):
    strategies = [settings.strategy(n) for n in norms]
    rows = sweep_document(
        raw,
        strategies,
        kinds,
        Budget.parse(budget) if budget else None,
        settings.stoplist(),
        settings.abbreviations(),
    )
    return [r.as_row() for r in rows]


def sweep_norms(max_n: int) -> list[str]:
    return ["raw", "stem", "lemma"] + [f"fix:{n}" for n in range(1, max_n + 1)]


def cmd_sweep(args) -> int:
    out = Path(args.out)
    settings = _settings(args)
    kinds = [SummarizerKind(k).value for k in _split(args.summarizers)]
    norms = sweep_norms(int(args.max_n))
    if args.budget:
        Budget.parse(args.budget)
    docs = _corpus(args)
    tasks = [(_sweep_task, d, settings, norms, kinds, args.budget) for d in docs]
    results = _parallel(_guard, tasks, args.workers)

    rows, failures = [], []
    for raw, (doc_rows, err) in zip(docs, results):
        if err:
            failures.append({"doc_id": raw.id, "stage": "sweep", "error": err})
        else:
            rows.extend(doc_rows)
    metrics = ["fresa1", "fresa2", "fresaSU4", "mean"]
    means = []
    for kind in kinds:
        for norm in norms:
            group = [r for r in rows if r["summarizer"] == kind and r["norm"] == norm]
            if group:
                n = norm.split(":")[1] if norm.startswith("fix:") else ""
                means.append(
                    {"summarizer": kind, "norm": norm, "n": n, "docs": len(group)}
                    | {m: _mean(r[m] for r in group) for m in metrics}
                )
    _io.write_table(out / "sweep.csv", rows, ["doc_id", "summarizer", "norm"] + metrics)
    _io.write_table(out / "sweep_means.csv", means, ["summarizer", "norm", "n", "docs"] + metrics)
    curve = {k: {r["norm"]: r["mean"] for r in means if r["summarizer"] == k} for k in kinds}
    _figure(args, "plot_sweep", curve, out / "sweep.png")
    print(f"{len(rows)} rows over {len(docs)} documents -> {out / 'sweep.csv'}")
    return _record_failures(out, failures)


# -- mantel -------------------------------------------------------------------------

def _mantel_task(raw: RawDocument, settings: Settings, norms: Sequence[str], perms: int, seed: int):
    doc = preprocess(raw, settings.stoplist(), settings.abbreviations())
    grams = {n: gram(vectorize(doc, settings.strategy(n))) for n in norms}
    records = []
    for i, a in enumerate(norms):
        for b in norms[i + 1 :]:
            rec = {"doc_id": raw.id, "strategies": [a, b], "permutations": perms, "seed": seed}
            try:
                res = mantel_test(grams[a], grams[b], perms, seed)
            except (DegenerateMatrixError, ValueError) as exc:
                rec["skipped"] = str(exc)
            else:
                rec.update(r=res.r_observed, p_value=res.p_value, greater_or_equal=res.greater_or_equal_count)
            records.append(rec)
    return records


def cmd_mantel(args) -> int:
    out = Path(args.out)
    settings = _settings(args)
    norms = [settings.strategy(n).label for n in _split(args.norms)]
    seed = _resolve_seed(args.seed)
    docs = _corpus(args)
    tasks = [(_mantel_task, d, settings, norms, int(args.perms), seed) for d in docs]
    results = _parallel(_guard, tasks, args.workers)

    records, failures = [], []
    for raw, (recs, err) in zip(docs, results):
        if err:
            failures.append({"doc_id": raw.id, "stage": "mantel", "error": err})
        else:
            records.extend(recs)
    k = len(norms)
    grid = np.eye(k)
    pgrid = np.zeros((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            ok = [r for r in records if r["strategies"] == [norms[i], norms[j]] and "r" in r]
            grid[i, j] = grid[j, i] = _mean(r["r"] for r in ok)
            pgrid[i, j] = pgrid[j, i] = _mean(r["p_value"] for r in ok)
    table = [{"strategy": norms[i], **{norms[j]: grid[i, j] for j in range(k)}} for i in range(k)]
    _io.write_table(out / "mantel_grid.csv", table, ["strategy"] + norms)
    _io.write_json(
        out / "mantel.json",
        {"seed": seed, "permutations": int(args.perms), "strategies": norms, "documents": records,
         "mean_r": grid.tolist(), "mean_p": pgrid.tolist()},
    )
    _figure(args, "plot_mantel_grid", norms, grid, out / "mantel.png")
    skipped = sum("skipped" in r for r in records)
    print(f"{len(records)} tests ({skipped} skipped) over {len(docs)} documents -> {out / 'mantel.json'}")
    return _record_failures(out, failures)


# -- stats --------------------------------------------------------------------------

def cmd_stats(args) -> int:
    out = Path(args.out)
    settings = _settings(args)
    strategy = settings.strategy(args.norm)
    docs = [preprocess(d, settings.stoplist(), settings.abbreviations()) for d in _corpus(args)]
    ranking = letter_ranking(docs)
    lengths = word_length_distribution(docs, strategy)
    corpus = args.corpus or f"bundled:{args.lang}"
    header = [
        f"corpus: {corpus}",
        f"language: {args.lang}",
        "filter: lowercase, punctuation/symbols/digits removed, stop words removed, words with f<2 removed",
    ]
    letters = [{"rank": i + 1, "letter": l, "types": c} for i, (l, c) in enumerate(ranking.ranked)]
    _io.write_table(out / "letters.tsv", letters, ["rank", "letter", "types"], "\t", header + [f"types: {ranking.total}"])
    curve = lengths.curve
    rows = [{"length": k, "count": v, "normalized": curve[k]} for k, v in lengths.histogram.items()]
    _io.write_table(
        out / "lengths.tsv",
        rows,
        ["length", "count", "normalized"],
        "\t",
        header + [f"normalization: {strategy.label}", f"mean: {lengths.mean:.4f}", f"mode: {lengths.mode}"],
    )
    _figure(args, "plot_letter_ranking", {args.lang: ranking}, out / "letters.png")
    _figure(args, "plot_length_curves", {f"{args.lang} {strategy.label}": lengths}, out / "lengths.png")
    print(f"{ranking.total} types, mean length {lengths.mean:.2f}, mode {lengths.mode} -> {out}")
    return 0


# -- evaluate -----------------------------------------------------------------------

def _evaluate_task(raw: RawDocument, settings: Settings, files: Sequence[str]):
    rows = []
    for name in files:
        path = Path(name)
        _, summarizer, norm = path.name[: -len(".txt")].rsplit(".", 2)
        report = evaluate_text(
            raw.text, path.read_text(encoding="utf-8"), raw.language, settings.stoplist(), settings.abbreviations()
        )
        rows.append({"doc_id": raw.id, "summarizer": summarizer, "norm": norm, **report.as_row()})
    return rows


def cmd_evaluate(args) -> int:
    out = Path(args.out)
    settings = _settings(args)
    summaries = Path(args.summaries) if args.summaries else out / "summaries"
    if not summaries.is_dir():
        raise CliError(f"summary directory not found: {summaries}")
    docs = _corpus(args)
    by_doc: dict[str, list[str]] = {d.id: [] for d in docs}
    for path in sorted(summaries.glob("*.txt")):
        parts = path.name[: -len(".txt")].rsplit(".", 2)
        if len(parts) == 3 and parts[0] in by_doc:
            by_doc[parts[0]].append(str(path))
    tasks = [(_evaluate_task, d, settings, by_doc[d.id]) for d in docs if by_doc[d.id]]
    if not tasks:
        raise CliError(f"no summary files matching the corpus in {summaries}")
    results = _parallel(_guard, tasks, args.workers)

    rows, failures = [], []
    for task, (doc_rows, err) in zip(tasks, results):
        if err:
            failures.append({"doc_id": task[1].id, "stage": "evaluate", "error": err})
        else:
            rows.extend(doc_rows)
    cols = ["doc_id", "summarizer", "norm", "fresa1", "fresa2", "fresaSU4", "mean"]
    _io.write_table(out / "evaluation.csv", rows, cols)
    pairs = sorted({(r["summarizer"], r["norm"]) for r in rows})
    means = [
        {"summarizer": s, "norm": n, "mean": _mean(r["mean"] for r in rows if (r["summarizer"], r["norm"]) == (s, n))}
        for s, n in pairs
    ]
    _figure(args, "plot_fresa_bars", means, out / "evaluation.png")
    print(f"{len(rows)} summaries evaluated -> {out / 'evaluation.csv'}")
    return _record_failures(out, failures)


HANDLERS = {
    "preprocess": cmd_preprocess,
    "summarize": cmd_summarize,
    "sweep": cmd_sweep,
    "mantel": cmd_mantel,
    "stats": cmd_stats,
    "evaluate": cmd_evaluate,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = parse_args(argv)
    except CliError as exc:
        print(f"ultrasumm: error: {exc}", file=sys.stderr)
        return 2
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return HANDLERS[args.command](args)
    except (CliError, IngestionError, ConfigurationError, ValueError) as exc:
        print(f"ultrasumm: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
