"""Extraction of noun-headed term pairs from tagged corpora.

Local grammars match four base shapes (noun-adjective, noun-noun,
noun-preposition-noun, noun-a-infinitive) plus adjective insertion and
adjective coordination. Occurrences are grouped into oriented lemma pairs,
scored with a log-likelihood ratio over their contingency table, and ranked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .corpus import Lexicon, TaggedDocument, TaggedToken
from .errors import ConfigError

N_ADJ = "N_ADJ"
N_N = "N_N"
N_PREP_DET_N = "N_PREP_DET_N"
N_A_VINF = "N_A_VINF"

BASE = "base"
GRAPHIC = "graphic"
PREP_VARIATION = "prep_variation"
OPTIONAL_PREP_DET = "optional_prep_det"
INSERTION = "insertion"
COORDINATION = "coordination"

INFINITIVE_PREP = "à"


@dataclass
class PairOccurrence:
    doc_id: str
    start: int
    end: int
    pattern: str
    variant: str
    surface: str
    lemma1: str
    lemma2: str
    inserted_modifier: str | None = None
    prep_lemma: str | None = None


@dataclass
class ContingencyTable:
    a: int  # pair co-occurrences
    b: int  # lemma1 with another second word
    c: int  # lemma2 with another first word
    d: int  # neither

    def __post_init__(self):
        if min(self.a, self.b, self.c, self.d) < 0:
            raise ConfigError("contingency cells must be non-negative")

    @property
    def total(self) -> int:
        return self.a + self.b + self.c + self.d


@dataclass
class CandidatePair:
    lemma1: str
    lemma2: str
    pattern: str
    occurrences: list[PairOccurrence] = field(default_factory=list)
    freq: int = 0
    score: float = 0.0


def normalize_occurrence(occ: PairOccurrence) -> tuple[str, str]:
    """Grouping key: the case-folded lemma pair."""
    return occ.lemma1.casefold(), occ.lemma2.casefold()


def _is_functional(token: TaggedToken, functional: Lexicon) -> bool:
    return token.lemma in functional or token.form in functional


def _graphic_or_base(*tokens: TaggedToken) -> str:
    for t in tokens:
        if t.form.casefold() != t.lemma.casefold():
            return GRAPHIC
    return BASE


def match_base_patterns(sentence: list[TaggedToken], functional: Lexicon,
                        doc_id: str = "", offset: int = 0) -> list[PairOccurrence]:
    """All pattern matches in one sentence, left to right.

    At each noun the longest shape wins, so an inserted adjective never also
    produces a bare noun-adjective pair. After a match, scanning resumes at
    the match's last content word, letting a trailing noun head a new pair.
    """
    occs: list[PairOccurrence] = []
    n = len(sentence)
    i = 0

    def surface(a: int, b: int) -> str:
        return " ".join(t.form for t in sentence[a:b])

    def emit(a, b, pattern, variant, first, second, **extra):
        occs.append(PairOccurrence(
            doc_id=doc_id, start=offset + a, end=offset + b,
            pattern=pattern, variant=variant, surface=surface(a, b),
            lemma1=first.lemma, lemma2=second.lemma, **extra))

    while i < n:
        tok = sentence[i]
        if tok.pos != "N" or _is_functional(tok, functional):
            i += 1
            continue

        nxt = sentence[i + 1] if i + 1 < n else None

        if nxt is not None and nxt.pos == "ADJ" and not _is_functional(nxt, functional):
            # coordination: N ADJ CONJ ADJ yields two pairs
            if (i + 3 < n and sentence[i + 2].pos == "CONJ"
                    and sentence[i + 3].pos == "ADJ"
                    and not _is_functional(sentence[i + 3], functional)):
                emit(i, i + 2, N_ADJ, _graphic_or_base(tok, nxt), tok, nxt)
                emit(i, i + 4, N_ADJ, COORDINATION, tok, sentence[i + 3])
                i += 3
                continue
            # insertion: N ADJ PREP (DET)? N normalizes to the outer pair
            j = i + 2
            if j < n and sentence[j].pos == "PREP":
                k = j + 1
                if k < n and sentence[k].pos == "DET":
                    k += 1
                if k < n and sentence[k].pos == "N" \
                        and not _is_functional(sentence[k], functional):
                    emit(i, k + 1, N_PREP_DET_N, INSERTION, tok, sentence[k],
                         inserted_modifier=nxt.lemma,
                         prep_lemma=sentence[j].lemma.casefold())
                    i = k
                    continue
            emit(i, i + 2, N_ADJ, _graphic_or_base(tok, nxt), tok, nxt)
            i += 1
            continue

        if nxt is not None and nxt.pos == "PREP":
            if (i + 2 < n and sentence[i + 2].pos == "VINF"
                    and nxt.lemma.casefold() == INFINITIVE_PREP
                    and not _is_functional(sentence[i + 2], functional)):
                emit(i, i + 3, N_A_VINF,
                     _graphic_or_base(tok, sentence[i + 2]), tok, sentence[i + 2])
                i += 2
                continue
            j = i + 2
            det = False
            if j < n and sentence[j].pos == "DET":
                det = True
                j += 1
            if j < n and sentence[j].pos == "N" \
                    and not _is_functional(sentence[j], functional):
                variant = OPTIONAL_PREP_DET if det \
                    else _graphic_or_base(tok, sentence[j])
                emit(i, j + 1, N_PREP_DET_N, variant, tok, sentence[j],
                     prep_lemma=nxt.lemma.casefold())
                i = j
                continue
            i += 1
            continue

        if nxt is not None and nxt.pos == "N" and not _is_functional(nxt, functional):
            emit(i, i + 2, N_N, _graphic_or_base(tok, nxt), tok, nxt)
            i += 1
            continue

        i += 1
    return occs


def score_pair(table: ContingencyTable) -> float:
    """Log-likelihood ratio of the table; 0 exactly under independence."""
    if table.a < 1:
        raise ValueError("a pair without co-occurrence evidence cannot be scored")
    n = table.total
    a, b, c, d = table.a, table.b, table.c, table.d
    g = 0.0
    for observed, row, col in ((a, a + b, a + c), (b, a + b, b + d),
                               (c, c + d, a + c), (d, c + d, b + d)):
        if observed == 0:
            continue
        g += 2.0 * observed * math.log(observed / (row * col / n))
    return max(g, 0.0)


def _relabel_prep_variants(pair: CandidatePair) -> None:
    """Mark occurrences whose preposition differs from the pair's modal one."""
    preps = [o.prep_lemma for o in pair.occurrences if o.prep_lemma]
    if len(set(preps)) < 2:
        return
    counts: dict[str, int] = {}
    for p in preps:
        counts[p] = counts.get(p, 0) + 1
    modal = min(counts, key=lambda p: (-counts[p], p))
    for occ in pair.occurrences:
        if occ.prep_lemma and occ.prep_lemma != modal \
                and occ.variant in (BASE, GRAPHIC):
            occ.variant = PREP_VARIATION


def extract_acabit(corpus: list[TaggedDocument],
                   functional: Lexicon) -> list[CandidatePair]:
    """Match, group by lemma pair, score and rank over a tagged corpus."""
    occurrences: list[PairOccurrence] = []
    for doc in corpus:
        for si, sentence in enumerate(doc.sentences):
            occurrences.extend(match_base_patterns(
                sentence, functional, doc.id, doc.sentence_offset(si)))

    pairs: dict[tuple[str, str], CandidatePair] = {}
    left: dict[str, int] = {}
    right: dict[str, int] = {}
    for occ in occurrences:
        key = normalize_occurrence(occ)
        left[key[0]] = left.get(key[0], 0) + 1
        right[key[1]] = right.get(key[1], 0) + 1
        if key not in pairs:
            pairs[key] = CandidatePair(key[0], key[1], occ.pattern)
        pairs[key].occurrences.append(occ)

    total = len(occurrences)
    ranked = []
    for key, pair in pairs.items():
        pair.freq = len(pair.occurrences)
        patterns = [o.pattern for o in pair.occurrences]
        pair.pattern = min(set(patterns),
                           key=lambda p: (-patterns.count(p), patterns.index(p)))
        _relabel_prep_variants(pair)
        a = pair.freq
        b = left[key[0]] - a
        c = right[key[1]] - a
        d = total - a - b - c
        pair.score = score_pair(ContingencyTable(a, b, c, d))
        ranked.append(pair)
    ranked.sort(key=lambda p: (-p.score, -p.freq, p.lemma1, p.lemma2))
    return ranked
