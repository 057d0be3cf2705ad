"""Flexible equality of strings and terms.

Strings are compared by a weighted minimum editing distance (insertions and
deletions cost q, substitutions cost p) normalized by the summed lengths of
the two strings, giving a value in [0, 1]. Two strings are flexible-equal
when that value stays within 1/k. Terms lift the relation word by word over
their restrictions, i.e. their words minus functional words.

All distances are exact rationals so threshold comparisons never hit
floating-point ties.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .corpus import (DEFAULT_SYMBOLS, PUNCT, Document, Lexicon, SymbolSet,
                     _read_utf8, tokenize)
from .errors import ConfigError, DataError


class IncomparableTermsError(ValueError):
    """Terms whose restrictions differ in length have no defined distance."""


@dataclass(frozen=True)
class CostConfig:
    """Edit costs and strictness: q insert/delete, p substitute, threshold 1/k."""

    q: Fraction = Fraction(1)
    p: Fraction = Fraction(2)
    k: Fraction = Fraction(5)

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "k", Fraction(self.k))
        if self.q <= 0 or self.p <= 0:
            raise ConfigError("edit costs q and p must be positive")
        if self.k < 1:
            raise ConfigError("strictness k must be >= 1")

    @property
    def threshold(self) -> Fraction:
        return 1 / self.k


DEFAULT_COSTS = CostConfig()


def edit_distance(w: str, x: str, cfg: CostConfig = DEFAULT_COSTS) -> Fraction:
    """Minimum total cost of edits turning w into x.

    Quadratic time, one DP row of memory.
    """
    q, p = cfg.q, cfg.p
    prev = [q * j for j in range(len(x) + 1)]
    for i, a in enumerate(w, start=1):
        cur = [q * i]
        for j, b in enumerate(x, start=1):
            best = prev[j - 1] + (0 if a == b else p)
            up = prev[j] + q
            if up < best:
                best = up
            left = cur[j - 1] + q
            if left < best:
                best = left
            cur.append(best)
        prev = cur
    return prev[-1]


def weighted_distance(w: str, x: str, cfg: CostConfig = DEFAULT_COSTS) -> Fraction:
    """Edit distance divided by the summed lengths of the two strings."""
    if not w and not x:
        raise ValueError("weighted distance is undefined for two empty strings")
    return edit_distance(w, x, cfg) / (len(w) + len(x))


def flex_equal_strings(w: str, x: str, cfg: CostConfig = DEFAULT_COSTS) -> bool:
    """True when the case-folded weighted distance stays within 1/k."""
    return weighted_distance(w.casefold(), x.casefold(), cfg) <= cfg.threshold


@dataclass(frozen=True)
class Term:
    """An ordered list of words with its surface form."""

    surface: str
    words: tuple[str, ...]

    @classmethod
    def from_text(cls, text: str, symbols: SymbolSet = DEFAULT_SYMBOLS) -> "Term":
        words = tuple(t.surface for t in tokenize(text, symbols)
                      if t.kind != PUNCT)
        return cls(text.strip(), words)

    @classmethod
    def from_tokens(cls, tokens) -> "Term":
        return cls(" ".join(t.surface for t in tokens),
                   tuple(t.surface for t in tokens if t.kind != PUNCT))


def restriction(term: Term, functional: Lexicon) -> tuple[str, ...]:
    """The term's words minus functional words, order preserved."""
    return tuple(w for w in term.words if w not in functional)


def flex_equal_terms(x: Term, y: Term, cfg: CostConfig,
                     functional: Lexicon) -> bool:
    """Rank-wise flexible equality of the two restrictions."""
    rx = restriction(x, functional)
    ry = restriction(y, functional)
    if not rx or len(rx) != len(ry):
        return False
    return all(flex_equal_strings(a, b, cfg) for a, b in zip(rx, ry))


def term_distance(x: Term, y: Term, cfg: CostConfig,
                  functional: Lexicon) -> Fraction:
    """Mean weighted distance over the ranks of the two restrictions."""
    rx = restriction(x, functional)
    ry = restriction(y, functional)
    if not rx or len(rx) != len(ry):
        raise IncomparableTermsError(
            f"restrictions of length {len(rx)} and {len(ry)} are not comparable")
    total = sum((weighted_distance(a.casefold(), b.casefold(), cfg)
                 for a, b in zip(rx, ry)), Fraction(0))
    return total / len(rx)


@dataclass(frozen=True)
class TermOccurrence:
    term: Term
    doc_id: str
    start: int
    end: int
    surface: str
    distance: Fraction


# Extra words a match window may carry beyond the reference word count;
# all of them have to be functional for the restriction lengths to agree.
WINDOW_SLACK = 3


def recognize_terms(doc: Document, refs: list[Term], cfg: CostConfig,
                    functional: Lexicon) -> list[TermOccurrence]:
    """Occurrences of the reference terms in one document.

    Every in-sentence token window whose first and last tokens are
    non-functional words is compared against each reference; flexible-equal
    windows become candidate matches scored by term distance. Among matches
    the longest wins, then the leftmost, and the chosen spans never overlap.
    """
    if not refs:
        raise ConfigError("term recognition needs at least one reference term")
    ref_restrictions = [restriction(r, functional) for r in refs]
    max_words = max(len(r.words) for r in refs) + WINDOW_SLACK

    def is_content(token) -> bool:
        return token.kind != PUNCT and token.surface not in functional

    candidates = []
    tokens = doc.tokens
    for s_start, s_end in doc.sentence_bounds:
        for i in range(s_start, s_end):
            if not is_content(tokens[i]):
                continue
            words = []
            for j in range(i, min(i + max_words * 2, s_end)):
                if tokens[j].kind != PUNCT:
                    words.append(tokens[j].surface)
                if len(words) > max_words:
                    break
                if not is_content(tokens[j]):
                    continue
                window_words = tuple(words)
                window_restriction = tuple(
                    w for w in window_words if w not in functional)
                if not window_restriction:
                    continue
                for ridx, rr in enumerate(ref_restrictions):
                    if len(rr) != len(window_restriction):
                        continue
                    if not all(flex_equal_strings(a, b, cfg)
                               for a, b in zip(window_restriction, rr)):
                        continue
                    dist = sum(
                        (weighted_distance(a.casefold(), b.casefold(), cfg)
                         for a, b in zip(window_restriction, rr)),
                        Fraction(0)) / len(rr)
                    candidates.append((i, j + 1, ridx, dist))

    candidates.sort(key=lambda c: (-(c[1] - c[0]), c[0], c[3], c[2]))
    taken: list[tuple[int, int]] = []
    chosen = []
    for start, end, ridx, dist in candidates:
        if any(start < b and a < end for a, b in taken):
            continue
        taken.append((start, end))
        chosen.append(TermOccurrence(
            term=refs[ridx],
            doc_id=doc.id,
            start=start,
            end=end,
            surface=" ".join(t.surface for t in tokens[start:end]),
            distance=dist,
        ))
    chosen.sort(key=lambda o: o.start)
    return chosen


def load_term_list(path, symbols: SymbolSet = DEFAULT_SYMBOLS) -> list[Term]:
    """Read reference terms, one per line, ``#`` comments allowed."""
    terms = []
    seen = set()
    for line in _read_utf8(path).splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        term = Term.from_text(line, symbols)
        if not term.words:
            raise DataError(f"term without any word: {line!r}", path=path)
        if term.words not in seen:
            seen.add(term.words)
            terms.append(term)
    return terms
