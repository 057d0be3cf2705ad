"""Acquisition engines that drive one store iteration at a time.

An engine turns the store's accepted items into seeds, runs one pass of its
pipeline, and returns candidates carrying enough payload for the review
console to show provenance without touching the corpus again.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from . import ana as ana_mod
from . import promethee as pro
from .corpus import load_lexicon, load_raw_corpus, load_tagged
from .errors import ConfigError, DataError
from .flexeq import CostConfig, Term, load_term_list
from .valstore import ACCEPTED, Candidate, Store


def pattern_to_payload(pattern: pro.Pattern, corpus) -> dict:
    docs = {d.id: d for d in corpus}
    return {
        "display": pattern.render(),
        "relation": pattern.relation,
        "items": [{"kind": kind, "lemma": lemma,
                   "slot": 1 if idx == pattern.slot1
                   else 2 if idx == pattern.slot2 else 0}
                  for idx, (kind, lemma) in enumerate(pattern.items)],
        "support": [{"doc": doc_id, "sentence": si,
                     "text": docs[doc_id].sentence_text(si)}
                    for doc_id, si in pattern.support],
    }


def pattern_from_payload(payload: dict, status: str) -> pro.Pattern:
    items = tuple((i["kind"], i["lemma"]) for i in payload["items"])
    slots = {i["slot"]: idx for idx, i in enumerate(payload["items"])}
    return pro.Pattern(items=items, slot1=slots[1], slot2=slots[2],
                       relation=payload["relation"], status=status)


class PrometheeEngine:
    """One relation-pattern bootstrapping turn per iteration."""

    name = "promethee"

    def __init__(self, corpus, seeds, cfg: pro.PrometheeConfig | None = None):
        if not seeds:
            raise ConfigError("promethee engine needs seed pairs")
        self.corpus = corpus
        self.seeds = seeds
        self.cfg = cfg or pro.PrometheeConfig()

    def turn(self, store: Store) -> list[Candidate]:
        accepted_pairs = [
            pro.SeedPair(i.payload["term1"], i.payload["term2"],
                         i.payload["relation"])
            for i in store.items(kind="pair", status=ACCEPTED)]
        validated = [pattern_from_payload(i.payload, "validated")
                     for i in store.items(kind="pattern", status=ACCEPTED)]
        patterns, raw_pairs = pro.run_promethee(
            self.corpus, self.seeds, self.cfg,
            accepted_pairs=accepted_pairs, validated_patterns=validated)

        candidates = [
            Candidate(
                kind="pattern",
                identity={"relation": p.relation,
                          "items": [[k, l] for k, l in p.items],
                          "slots": [p.slot1, p.slot2]},
                payload=pattern_to_payload(p, self.corpus),
                score=float(len(p.support)),
            ) for p in patterns]

        docs = {d.id: d for d in self.corpus}
        merged: dict[tuple, dict] = {}
        for pair in raw_pairs:
            key = (pair.relation, pair.term1, pair.term2)
            sentence = docs[pair.doc_id].sentences[pair.sent_index]
            source = {
                "doc": pair.doc_id,
                "sentence": pair.sent_index,
                "tokens": [t.form for t in sentence],
                "span1": list(pair.span1),
                "span2": list(pair.span2),
                "pattern": pair.pattern,
            }
            entry = merged.setdefault(key, {
                "term1": pair.term1, "term2": pair.term2,
                "relation": pair.relation, "sources": []})
            if source not in entry["sources"]:
                entry["sources"].append(source)
        for key in merged:
            entry = merged[key]
            candidates.append(Candidate(
                kind="pair",
                identity={"relation": key[0], "term1": key[1], "term2": key[2]},
                payload=entry,
                score=float(len(entry["sources"])),
            ))
        return candidates


class AnaEngine:
    """One raw-text acquisition pass per iteration."""

    name = "ana"

    def __init__(self, corpus, seeds, schemes, functional,
                 cfg: ana_mod.AnaConfig | None = None,
                 costs: CostConfig | None = None):
        if not seeds:
            raise ConfigError("ana engine needs bootstrap terms")
        self.corpus = corpus
        self.seeds = seeds
        self.schemes = schemes
        self.functional = functional
        self.cfg = cfg or ana_mod.AnaConfig()
        self.costs = costs or CostConfig()

    def turn(self, store: Store) -> list[Candidate]:
        terms = list(self.seeds)
        terms += [Term.from_text(i.payload["surface"])
                  for i in store.items(kind="term", status=ACCEPTED)]
        boot = ana_mod.Bootstrap(terms, self.costs, self.functional)
        windows = ana_mod.collect_contexts(self.corpus, boot, self.cfg,
                                           self.costs, self.functional)
        docs = {d.id: d for d in self.corpus}
        candidates = []
        for cand in ana_mod.infer_once(windows, boot, self.schemes, self.cfg,
                                       self.costs, self.functional):
            if not boot.add(cand.term):
                continue
            provenance = []
            for doc_id, start, end in cand.provenance:
                doc = docs[doc_id]
                s_start, s_end = doc.sentence_of(start)
                provenance.append({
                    "doc": doc_id, "start": start, "end": end,
                    "tokens": [t.surface for t in doc.tokens[s_start:s_end]],
                    "span": [start - s_start, end - s_start],
                })
            candidates.append(Candidate(
                kind="term",
                identity={"surface": cand.term.surface},
                payload={"surface": cand.term.surface, "pattern": cand.pattern,
                         "support": cand.support, "provenance": provenance},
                score=float(cand.support),
            ))
        return candidates


def load_engine(kind: str, config_path) -> "PrometheeEngine | AnaEngine":
    """Build an engine from a JSON config file; paths resolve next to it."""
    config_path = Path(config_path)
    try:
        config = json.loads(config_path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise DataError(f"cannot read engine config: {exc}", path=config_path)
    except json.JSONDecodeError as exc:
        raise DataError(f"invalid JSON: {exc}", path=config_path)
    base = config_path.parent

    def path_of(key):
        if key not in config:
            raise ConfigError(f"engine config is missing {key!r}")
        return base / config[key]

    if kind == "promethee":
        corpus = load_tagged(path_of("corpus"))
        relation = config.get("relation", "related")
        seeds = pro.load_seed_pairs(path_of("seeds"), relation)
        cfg = pro.PrometheeConfig(
            sim_threshold=Fraction(str(config.get("sim_threshold", "1/2"))),
            window=int(config.get("window", 5)))
        return PrometheeEngine(corpus, seeds, cfg)
    if kind == "ana":
        corpus = load_raw_corpus(path_of("corpus"))
        seeds = load_term_list(path_of("bootstrap"))
        schemes = load_lexicon(path_of("schemes"))
        functional = load_lexicon(path_of("stopwords"))
        cfg = ana_mod.AnaConfig(
            window=int(config.get("window", 5)),
            min_support=int(config.get("min_support", 3)),
            max_gap=int(config.get("gap", 2)),
            max_iter=int(config.get("max_iter", 20)))
        costs = CostConfig(q=Fraction(str(config.get("q", 1))),
                           p=Fraction(str(config.get("p", 2))),
                           k=Fraction(str(config.get("k", 5))))
        return AnaEngine(corpus, seeds, schemes, functional, cfg, costs)
    raise ConfigError(f"unknown engine kind {kind!r}")
