"""Incremental term acquisition from raw text.

Starting from a bootstrap of known terms, each pass recognizes bootstrap
occurrences, collects their sentence-bounded context windows, and infers new
candidates from three context patterns: two known terms arranged together,
a known term behind a lexical-scheme word, and a bare modifier directly in
front of a known term. Accepted candidates feed the next pass until nothing
new appears.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .corpus import Document, Lexicon, PUNCT, Token
from .errors import ConfigError
from .flexeq import (CostConfig, DEFAULT_COSTS, Term, TermOccurrence,
                     flex_equal_strings, flex_equal_terms, recognize_terms)

ARRANGEMENT = "arrangement"
SCHEME = "scheme"
ADJUNCT = "adjunct"


@dataclass
class AnaConfig:
    window: int = 5        # context tokens kept on each side of an occurrence
    min_support: int = 3   # occurrences needed before a class becomes a candidate
    max_gap: int = 2       # tokens allowed between two co-occurring terms
    max_iter: int = 20
    include_seeds: bool = False

    def __post_init__(self):
        if self.window < 1:
            raise ConfigError("window must be >= 1")
        if self.min_support < 2:
            raise ConfigError("min-support must be >= 2")
        if self.max_gap < 0:
            raise ConfigError("gap must be >= 0")
        if self.max_iter < 1:
            raise ConfigError("max-iter must be >= 1")


@dataclass
class ContextWindow:
    doc: Document
    occurrence: TermOccurrence
    left_start: int
    right_end: int

    @property
    def left(self) -> list[Token]:
        return self.doc.tokens[self.left_start:self.occurrence.start]

    @property
    def right(self) -> list[Token]:
        return self.doc.tokens[self.occurrence.end:self.right_end]


@dataclass
class AnaCandidate:
    term: Term
    pattern: str
    support: int
    provenance: list[tuple[str, int, int]]
    freq: int = 0
    rank: int = 0


class Bootstrap:
    """Evolving set of known terms; insertion dedupes by flexible equality."""

    def __init__(self, terms, costs: CostConfig, functional: Lexicon):
        self.costs = costs
        self.functional = functional
        self.terms: list[Term] = []
        self.generation = 0
        for t in terms:
            self.add(t)

    def add(self, term: Term) -> bool:
        if self.contains(term):
            return False
        self.terms.append(term)
        return True

    def contains(self, term: Term) -> bool:
        return any(flex_equal_terms(term, t, self.costs, self.functional)
                   for t in self.terms)

    def __len__(self):
        return len(self.terms)


def collect_contexts(corpus: list[Document], boot: Bootstrap, cfg: AnaConfig,
                     costs: CostConfig, functional: Lexicon) -> list[ContextWindow]:
    """One sentence-bounded window per recognized bootstrap occurrence."""
    if not boot.terms:
        raise ConfigError("bootstrap is empty")
    windows = []
    for doc in corpus:
        for occ in recognize_terms(doc, boot.terms, costs, functional):
            s_start, s_end = doc.sentence_of(occ.start)
            windows.append(ContextWindow(
                doc=doc,
                occurrence=occ,
                left_start=max(s_start, occ.start - cfg.window),
                right_end=min(s_end, occ.end + cfg.window),
            ))
    return windows


def _word(token: Token) -> str:
    return token.surface.casefold()


def _flex_class_merge(items, key_words, costs, functional):
    """Group items into classes whose key word sequences are flexible-equal.

    Functional words must match exactly (case-folded); other words rank-wise
    by flexible equality. Returns classes in first-seen order.
    """
    classes: list[dict] = []
    for item in items:
        words = key_words(item)
        placed = False
        for cls in classes:
            rep = cls["words"]
            if len(rep) != len(words):
                continue
            ok = True
            for a, b in zip(rep, words):
                a_fun = a in functional
                b_fun = b in functional
                if a_fun != b_fun:
                    ok = False
                    break
                if a_fun:
                    if a.casefold() != b.casefold():
                        ok = False
                        break
                elif not flex_equal_strings(a, b, costs):
                    ok = False
                    break
            if ok:
                cls["items"].append(item)
                placed = True
                break
        if not placed:
            classes.append({"words": words, "items": [item]})
    return classes


def _modal_surface(surfaces) -> str:
    counts: dict[str, int] = {}
    for s in surfaces:
        counts[s] = counts.get(s, 0) + 1
    best = max(counts.values())
    for s in surfaces:
        if counts[s] == best:
            return s
    raise AssertionError("unreachable")


def _class_candidates(classes, pattern, min_support):
    out = []
    for cls in classes:
        if len(cls["items"]) < min_support:
            continue
        surface = _modal_surface([it["surface"] for it in cls["items"]]).upper()
        out.append(AnaCandidate(
            term=Term.from_text(surface),
            pattern=pattern,
            support=len(cls["items"]),
            provenance=[(it["doc"], it["start"], it["end"])
                        for it in cls["items"]],
        ))
    return out


def _occurrences_by_doc(windows):
    by_doc: dict[str, list[TermOccurrence]] = {}
    for w in windows:
        by_doc.setdefault(w.doc.id, [])
        if w.occurrence not in by_doc[w.doc.id]:
            by_doc[w.doc.id].append(w.occurrence)
    return by_doc


def infer_arrangements(windows: list[ContextWindow], boot: Bootstrap,
                       cfg: AnaConfig, costs: CostConfig, functional: Lexicon,
                       schemes: Lexicon) -> list[AnaCandidate]:
    """Candidates from two bootstrap terms arranged inside one window.

    The gap between the two terms may hold only functional words that are
    not scheme words (scheme contexts belong to the scheme pattern), plus
    punctuation, and is capped at ``max_gap`` tokens.
    """
    by_doc = _occurrences_by_doc(windows)
    seen: dict[tuple[str, int, int], dict] = {}
    for w in windows:
        occ = w.occurrence
        for other in by_doc[w.doc.id]:
            if other is occ or other.start < w.left_start or other.end > w.right_end:
                continue
            first, second = (occ, other) if occ.start < other.start else (other, occ)
            if first.end > second.start:
                continue
            gap = w.doc.tokens[first.end:second.start]
            if len(gap) > cfg.max_gap:
                continue
            if any(t.kind != PUNCT and (
                    t.surface not in functional or t.surface in schemes)
                    for t in gap):
                continue
            span = (w.doc.id, first.start, second.end)
            if span in seen:
                continue
            tokens = w.doc.tokens[span[1]:span[2]]
            seen[span] = {
                "doc": span[0], "start": span[1], "end": span[2],
                "surface": " ".join(t.surface for t in tokens),
                "words": tuple(t.surface for t in tokens if t.kind != PUNCT),
            }
    classes = _flex_class_merge(list(seen.values()),
                                lambda it: it["words"], costs, functional)
    return _class_candidates(classes, ARRANGEMENT, cfg.min_support)


def infer_scheme_candidates(windows: list[ContextWindow], boot: Bootstrap,
                            schemes: Lexicon, cfg: AnaConfig, costs: CostConfig,
                            functional: Lexicon) -> list[AnaCandidate]:
    """Candidates from a word next to a scheme word next to a known term.

    Both directions count: ``w scheme TERM`` and ``TERM scheme w``. The word
    w itself must not be functional, a scheme word, or a bootstrap term.
    """
    if not len(schemes):
        raise ConfigError("scheme lexicon is empty")
    events: dict[tuple[str, int], dict] = {}
    for w in windows:
        occ = w.occurrence
        tokens = w.doc.tokens
        for idx in range(w.left_start, w.right_end):
            t = tokens[idx]
            if t.kind == PUNCT or t.surface not in schemes:
                continue
            if idx < occ.start:
                wi = idx - 1
            elif idx >= occ.end:
                wi = idx + 1
            else:
                continue
            if wi < w.left_start or wi >= w.right_end:
                continue
            cand = tokens[wi]
            if cand.kind == PUNCT:
                continue
            if cand.surface in functional or cand.surface in schemes:
                continue
            if boot.contains(Term.from_text(cand.surface)):
                continue
            key = (w.doc.id, wi)
            if key not in events:
                events[key] = {
                    "doc": w.doc.id, "start": wi, "end": wi + 1,
                    "surface": cand.surface, "words": (cand.surface,),
                }
    classes = _flex_class_merge(list(events.values()),
                                lambda it: it["words"], costs, functional)
    return _class_candidates(classes, SCHEME, cfg.min_support)


def infer_adjunct_candidates(windows: list[ContextWindow], boot: Bootstrap,
                             schemes: Lexicon, cfg: AnaConfig, costs: CostConfig,
                             functional: Lexicon) -> list[AnaCandidate]:
    """Candidates from a bare modifier directly before a known term.

    Windows containing a scheme word or a second bootstrap occurrence are
    excluded; the modifier must be a non-functional word.
    """
    by_doc = _occurrences_by_doc(windows)
    events: dict[tuple[str, int, int], dict] = {}
    for w in windows:
        occ = w.occurrence
        tokens = w.doc.tokens
        window_tokens = tokens[w.left_start:w.right_end]
        if any(t.kind != PUNCT and t.surface in schemes for t in window_tokens):
            continue
        if any(o is not occ and o.start < w.right_end and o.end > w.left_start
               for o in by_doc[w.doc.id]):
            continue
        wi = occ.start - 1
        if wi < w.left_start:
            continue
        cand = tokens[wi]
        if cand.kind == PUNCT or cand.surface in functional:
            continue
        key = (w.doc.id, wi, occ.end)
        if key not in events:
            events[key] = {
                "doc": w.doc.id, "start": wi, "end": occ.end,
                "surface": cand.surface + " " + occ.surface,
                "words": (cand.surface,),
            }
    classes = _flex_class_merge(list(events.values()),
                                lambda it: it["words"], costs, functional)
    return _class_candidates(classes, ADJUNCT, cfg.min_support)


def infer_once(windows, boot, schemes, cfg, costs, functional):
    """All three inference patterns over one batch of windows."""
    out = []
    out.extend(infer_arrangements(windows, boot, cfg, costs, functional, schemes))
    out.extend(infer_scheme_candidates(windows, boot, schemes, cfg, costs,
                                       functional))
    out.extend(infer_adjunct_candidates(windows, boot, schemes, cfg, costs,
                                        functional))
    return out


class AnaRun:
    """Drives the acquisition loop to its fixpoint and ranks the findings."""

    def __init__(self, corpus: list[Document], bootstrap_terms, schemes: Lexicon,
                 functional: Lexicon, cfg: AnaConfig | None = None,
                 costs: CostConfig = DEFAULT_COSTS):
        self.corpus = corpus
        self.schemes = schemes
        self.functional = functional
        self.cfg = cfg or AnaConfig()
        self.costs = costs
        self.seeds = list(bootstrap_terms)
        self.iterations = 0

    def run(self) -> list[AnaCandidate]:
        boot = Bootstrap(self.seeds, self.costs, self.functional)
        if not boot.terms:
            raise ConfigError("bootstrap is empty")
        found: list[AnaCandidate] = []
        for iteration in range(1, self.cfg.max_iter + 1):
            self.iterations = iteration
            windows = collect_contexts(self.corpus, boot, self.cfg, self.costs,
                                       self.functional)
            added = False
            for cand in infer_once(windows, boot, self.schemes, self.cfg,
                                   self.costs, self.functional):
                if boot.add(cand.term):
                    found.append(cand)
                    added = True
            if not added:
                break
        if self.cfg.include_seeds:
            found = [AnaCandidate(t, "seed", 0, []) for t in self.seeds] + found
        for cand in found:
            cand.freq = self._corpus_frequency(cand.term)
        found.sort(key=lambda c: (-c.freq, c.term.surface))
        for rank, cand in enumerate(found, start=1):
            cand.rank = rank
        return found

    def _corpus_frequency(self, term: Term) -> int:
        return sum(len(recognize_terms(doc, [term], self.costs, self.functional))
                   for doc in self.corpus)


def run_ana(corpus, bootstrap_terms, schemes, functional,
            cfg: AnaConfig | None = None,
            costs: CostConfig = DEFAULT_COSTS) -> list[AnaCandidate]:
    """Run the full acquisition loop; returns the ranked candidate list."""
    return AnaRun(corpus, bootstrap_terms, schemes, functional, cfg, costs).run()
