"""Command line entry point.

Subcommands cover the acquisition pipelines (``ana``, ``acabit``, ``match``,
``promethee``) and the validation service (``serve``). Batch results are
JSON Lines, byte-identical across runs on the same inputs; progress goes to
standard error only. Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path

import click

from .acabit import extract_acabit
from .ana import AnaConfig, run_ana
from .corpus import SymbolSet, load_lexicon, load_raw_corpus, load_tagged
from .engine import PrometheeEngine, load_engine
from .errors import ConfigError, DataError, TermToolsError
from .flexeq import CostConfig, load_term_list, recognize_terms
from .promethee import PrometheeConfig, load_seed_pairs
from .valstore import Store


def _load_config(path) -> dict:
    if path is None:
        return {}
    try:
        config = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise DataError(f"cannot read config: {exc}", path=path)
    except json.JSONDecodeError as exc:
        raise DataError(f"invalid JSON: {exc}", path=path)
    if not isinstance(config, dict):
        raise DataError("config must be a JSON object", path=path)
    return config


def _merge(flag, config: dict, key: str, default):
    """Explicit flag beats config file beats built-in default."""
    if flag is not None:
        return flag
    if key in config:
        return config[key]
    return default


def _fraction(value, name: str) -> Fraction:
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{name} must be a rational number, got {value!r}")


def _write_jsonl(records, out: str) -> None:
    text = "".join(
        json.dumps(r, ensure_ascii=False, sort_keys=True) + "\n"
        for r in records)
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _log(message: str) -> None:
    print(message, file=sys.stderr)


_shared = [
    click.option("--config", "config_path", default=None,
                 help="JSON config file; flags override its keys."),
    click.option("--format", "fmt", type=click.Choice(["jsonl"]),
                 default="jsonl", show_default=True, help="Output format."),
    click.option("--out", default="-", show_default=True,
                 help="Output file, '-' for standard output."),
]


def shared_options(fn):
    for option in reversed(_shared):
        fn = option(fn)
    return fn


def cost_options(fn):
    for option in reversed([
        click.option("--k", default=None, help="Strictness: accept weighted "
                     "distance up to 1/k.  [default: 5]"),
        click.option("--q", default=None,
                     help="Insertion/deletion cost.  [default: 1]"),
        click.option("--p", default=None,
                     help="Substitution cost.  [default: 2]"),
    ]):
        fn = option(fn)
    return fn


def _costs(k, q, p, config) -> CostConfig:
    return CostConfig(q=_fraction(_merge(q, config, "q", 1), "q"),
                      p=_fraction(_merge(p, config, "p", 2), "p"),
                      k=_fraction(_merge(k, config, "k", 5), "k"))


@click.group()
def cli():
    """Terminology processing toolkit."""


@cli.command()
@click.option("--terms", required=True, help="Reference terms, one per line.")
@click.option("--corpus", required=True, help="Directory of .txt documents.")
@click.option("--stopwords", required=True, help="Functional word list.")
@click.option("--hyphen", is_flag=True, default=False,
              help="Treat '-' as a word character.")
@cost_options
@shared_options
def match(terms, corpus, stopwords, hyphen, k, q, p, config_path, fmt, out):
    """Recognize term occurrences under variation."""
    config = _load_config(config_path)
    costs = _costs(k, q, p, config)
    symbols = SymbolSet(hyphen=hyphen or bool(config.get("hyphen", False)))
    refs = load_term_list(terms, symbols)
    functional = load_lexicon(stopwords)
    docs = load_raw_corpus(corpus, symbols)
    records = []
    for doc in docs:
        for occ in recognize_terms(doc, refs, costs, functional):
            records.append({
                "term": occ.term.surface, "doc": occ.doc_id,
                "start": occ.start, "end": occ.end,
                "surface": occ.surface, "distance": float(occ.distance)})
    _write_jsonl(records, out)
    _log(f"match: {len(records)} occurrences in {len(docs)} documents")


@cli.command()
@click.option("--corpus", required=True, help="Directory of .txt documents.")
@click.option("--bootstrap", required=True, help="Bootstrap terms, one per line.")
@click.option("--schemes", required=True, help="Lexical scheme word list.")
@click.option("--stopwords", required=True, help="Functional word list.")
@click.option("--window", default=None, type=int,
              help="Context tokens on each side.  [default: 5]")
@click.option("--min-support", default=None, type=int,
              help="Occurrences needed to qualify.  [default: 3]")
@click.option("--gap", default=None, type=int,
              help="Tokens allowed between co-occurring terms.  [default: 2]")
@click.option("--max-iter", default=None, type=int,
              help="Iteration cap.  [default: 20]")
@click.option("--include-seeds", is_flag=True, default=False,
              help="Keep bootstrap seeds in the ranked output.")
@cost_options
@shared_options
def ana(corpus, bootstrap, schemes, stopwords, window, min_support, gap,
        max_iter, include_seeds, k, q, p, config_path, fmt, out):
    """Acquire terms from raw text by bootstrap iteration."""
    config = _load_config(config_path)
    costs = _costs(k, q, p, config)
    cfg = AnaConfig(
        window=int(_merge(window, config, "window", 5)),
        min_support=int(_merge(min_support, config, "min_support", 3)),
        max_gap=int(_merge(gap, config, "gap", 2)),
        max_iter=int(_merge(max_iter, config, "max_iter", 20)),
        include_seeds=include_seeds or bool(config.get("include_seeds", False)))
    seeds = load_term_list(bootstrap)
    candidates = run_ana(load_raw_corpus(corpus), seeds,
                         load_lexicon(schemes), load_lexicon(stopwords),
                         cfg, costs)
    records = [{
        "surface": c.term.surface, "pattern": c.pattern, "support": c.support,
        "rank": c.rank,
        "provenance": [{"doc": d, "start": s, "end": e}
                       for d, s, e in c.provenance],
    } for c in candidates]
    _write_jsonl(records, out)
    _log(f"ana: {len(records)} candidate terms")


@cli.command()
@click.option("--corpus", required=True, help="Tagged corpus (TSV).")
@click.option("--stopwords", required=True, help="Functional word list.")
@click.option("--measure", type=click.Choice(["llr"]), default="llr",
              show_default=True, help="Association measure.")
@shared_options
def acabit(corpus, stopwords, measure, config_path, fmt, out):
    """Extract ranked term pairs from a tagged corpus."""
    _load_config(config_path)
    pairs = extract_acabit(load_tagged(corpus), load_lexicon(stopwords))
    records = [{
        "lemma1": p.lemma1, "lemma2": p.lemma2, "pattern": p.pattern,
        "score": p.score, "freq": p.freq,
        "variants": [{"surface": o.surface, "variant": o.variant,
                      "doc": o.doc_id, "start": o.start, "end": o.end}
                     for o in p.occurrences],
    } for p in pairs]
    _write_jsonl(records, out)
    _log(f"acabit: {len(records)} candidate pairs")


@cli.command()
@click.option("--corpus", required=True, help="Tagged corpus (TSV).")
@click.option("--seeds", required=True, help="Seed pairs: term1<TAB>term2.")
@click.option("--relation", required=True, help="Relation label, e.g. hypernym.")
@click.option("--sim-threshold", default=None,
              help="Clustering similarity threshold.  [default: 1/2]")
@click.option("--window", default=None, type=int,
              help="Literal items kept around the slots.  [default: 5]")
@click.option("--store", "store_dir", required=True,
              help="Validation store directory.")
@click.option("--config", "config_path", default=None,
              help="JSON config file; flags override its keys.")
def promethee(corpus, seeds, relation, sim_threshold, window, store_dir,
              config_path):
    """Run one pattern-acquisition turn into the validation store."""
    config = _load_config(config_path)
    cfg = PrometheeConfig(
        sim_threshold=_fraction(
            _merge(sim_threshold, config, "sim_threshold", "1/2"),
            "sim-threshold"),
        window=int(_merge(window, config, "window", 5)))
    engine = PrometheeEngine(load_tagged(corpus),
                             load_seed_pairs(seeds, relation), cfg)
    store = Store(store_dir)
    summary = store.run_iteration(engine)
    sys.stdout.write(json.dumps(summary, sort_keys=True) + "\n")
    _log(f"promethee: iteration {summary['iteration']}, "
         f"{summary['new_candidates']} new candidates")


@cli.command()
@click.option("--store", "store_dir", required=True,
              help="Validation store directory.")
@click.option("--port", default=8000, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--engine", "engine_kind", type=click.Choice(["ana", "promethee"]),
              default=None, help="Acquisition engine behind /api/iterate.")
@click.option("--config", "config_path", default=None,
              help="Engine config file (JSON).")
@click.option("--ui-dir", default=None,
              help="Directory of console assets to serve at /.")
def serve(store_dir, port, host, engine_kind, config_path, ui_dir):
    """Serve the validation API (and console, if assets are given)."""
    import uvicorn

    from .service import create_app

    engine = None
    if engine_kind is not None:
        if config_path is None:
            raise ConfigError("--engine requires --config")
        engine = load_engine(engine_kind, config_path)
    app = create_app(Store(store_dir), engine, ui_dir)
    _log(f"serving validation API on {host}:{port}")
    uvicorn.run(app, host=host, port=port, log_level="warning")


def main(argv=None) -> int:
    """Dispatch; returns the process exit code instead of raising."""
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        exc.show(file=sys.stderr)
        return 1
    except click.ClickException as exc:
        exc.show(file=sys.stderr)
        return 1
    except (TermToolsError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())
