"""Acquisition and application of lexico-syntactic relation patterns.

Sentences containing a related term pair are abstracted into expressions
over three item kinds: literal lemmas, noun phrases, and noun-phrase lists.
Expressions that resemble each other are generalized to their longest common
subsequence, which becomes a candidate pattern once it keeps both argument
slots and at least one literal. Validated patterns are then matched back
over the corpus to harvest new candidate pairs; a list bound to a slot fans
out to one pair per member.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chunker import detect_noun_phrases, np_lemma_text, np_lemmas
from .corpus import TaggedDocument, TaggedToken, _read_utf8
from .errors import ConfigError, DataError

LIT = "LIT"
NP = "NP"
LIST = "LIST"

SLOT_NONE = 0
SLOT_FIRST = 1
SLOT_SECOND = 2


@dataclass
class PrometheeConfig:
    sim_threshold: Fraction = Fraction(1, 2)
    window: int = 5          # literal items kept outside the argument slots
    min_support: int = 2

    def __post_init__(self):
        self.sim_threshold = Fraction(self.sim_threshold)
        if not 0 <= self.sim_threshold <= 1:
            raise ConfigError("similarity threshold must lie in [0, 1]")
        if self.window < 0:
            raise ConfigError("window must be >= 0")
        if self.min_support < 2:
            raise ConfigError("pattern support must be >= 2")


@dataclass(frozen=True)
class SeedPair:
    term1: str
    term2: str
    relation: str

    def __post_init__(self):
        if self.term1.casefold() == self.term2.casefold():
            raise ConfigError(f"seed pair with identical terms: {self.term1!r}")


@dataclass(frozen=True)
class ExprItem:
    kind: str
    lemma: str = ""                 # literal items
    text: str = ""                  # canonical phrase rendering
    members: tuple[str, ...] = ()   # list items: member phrase renderings
    start: int = -1                 # token span within the sentence
    end: int = -1

    def key(self) -> tuple[str, str]:
        return (self.kind, self.lemma)


@dataclass(frozen=True)
class LexSynExpression:
    items: tuple[ExprItem, ...]
    slot1: int
    slot2: int
    doc_id: str
    sent_index: int
    forms: tuple[str, ...]

    def identity(self):
        return (self.doc_id, self.sent_index,
                tuple(i.key() for i in self.items), self.slot1, self.slot2)

    def render(self) -> str:
        return " ".join(i.lemma if i.kind == LIT else i.kind for i in self.items)


@dataclass
class Pattern:
    items: tuple[tuple[str, str], ...]   # (kind, lemma) per item
    slot1: int
    slot2: int
    relation: str
    support: tuple[tuple[str, int], ...] = ()
    status: str = "candidate"

    def render(self) -> str:
        return " ".join(lemma if kind == LIT else kind
                        for kind, lemma in self.items)

    def identity(self):
        return (self.relation, self.items, self.slot1, self.slot2)


@dataclass(frozen=True)
class ExtractedPair:
    term1: str
    term2: str
    relation: str
    pattern: str
    doc_id: str
    sent_index: int
    span1: tuple[int, int]
    span2: tuple[int, int]
    status: str = "candidate"


def load_seed_pairs(path, relation: str) -> list[SeedPair]:
    """Seed file: one ``term1<TAB>term2`` pair per line, ``#`` comments."""
    seeds = []
    for lineno, line in enumerate(_read_utf8(path).splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.rstrip("\n").split("\t")
        if len(fields) != 2:
            raise DataError(f"expected 2 tab-separated fields, got {len(fields)}",
                            path=path, line=lineno)
        seeds.append(SeedPair(fields[0].strip(), fields[1].strip(), relation))
    return seeds


def _term_words(term: str) -> tuple[str, ...]:
    return tuple(term.casefold().split())


def _contains_contiguous(haystack: list[str], needle: tuple[str, ...]) -> bool:
    if not needle or len(needle) > len(haystack):
        return False
    return any(tuple(haystack[i:i + len(needle)]) == needle
               for i in range(len(haystack) - len(needle) + 1))


def build_items(sentence: list[TaggedToken]) -> tuple[ExprItem, ...]:
    """Abstract one sentence into the expression item alphabet.

    Noun phrases collapse to NP items, detected enumerations to LIST items,
    punctuation disappears, everything else becomes a literal lemma.
    """
    nps, lists = detect_noun_phrases(sentence)
    in_list = {}
    for lst in lists:
        in_list[lst.start] = lst
    list_spans = [(l.start, l.end) for l in lists]
    np_by_start = {np.start: np for np in nps
                   if not any(a <= np.start < b for a, b in list_spans)}

    items = []
    i = 0
    while i < len(sentence):
        if i in in_list:
            lst = in_list[i]
            items.append(ExprItem(
                kind=LIST,
                members=tuple(np_lemma_text(sentence, m) for m in lst.members),
                start=lst.start, end=lst.end))
            i = lst.end
        elif i in np_by_start:
            np = np_by_start[i]
            items.append(ExprItem(kind=NP, text=np_lemma_text(sentence, np),
                                  start=np.start, end=np.end))
            i = np.end
        else:
            token = sentence[i]
            if token.pos != "PUNC":
                items.append(ExprItem(kind=LIT, lemma=token.lemma.casefold(),
                                      start=i, end=i + 1))
            i += 1
    return tuple(items)


def _item_holds_term(sentence, item: ExprItem, words: tuple[str, ...]) -> bool:
    if item.kind == LIT:
        return False
    lemmas = [t.lemma.casefold() for t in sentence[item.start:item.end]]
    return _contains_contiguous(lemmas, words)


def find_seed_sentences(corpus: list[TaggedDocument],
                        seeds: list[SeedPair]) -> list[tuple[str, int, list[TaggedToken], SeedPair]]:
    """Every (doc, sentence, seed) whose noun phrases hold both seed terms."""
    if not seeds:
        raise ConfigError("no seed pairs given")
    hits = []
    for doc in corpus:
        for si, sentence in enumerate(doc.sentences):
            nps, _ = detect_noun_phrases(sentence)
            if not nps:
                continue
            lemma_lists = [np_lemmas(sentence, np) for np in nps]
            for seed in seeds:
                w1 = _term_words(seed.term1)
                w2 = _term_words(seed.term2)
                if any(_contains_contiguous(ls, w1) for ls in lemma_lists) and \
                        any(_contains_contiguous(ls, w2) for ls in lemma_lists):
                    hits.append((doc.id, si, sentence, seed))
    return hits


def build_expression(sentence: list[TaggedToken], pair: SeedPair,
                     window: int = 5, doc_id: str = "",
                     sent_index: int = 0) -> LexSynExpression:
    """Abstract a sentence around one seed pair, marking the argument slots."""
    items = build_items(sentence)
    slot1 = slot2 = None
    for idx, item in enumerate(items):
        if slot1 is None and _item_holds_term(sentence, item, _term_words(pair.term1)):
            slot1 = idx
        if slot2 is None and _item_holds_term(sentence, item, _term_words(pair.term2)):
            slot2 = idx
    if slot1 is None or slot2 is None or slot1 == slot2:
        raise ValueError(
            f"sentence does not hold both terms of {pair.term1!r}/{pair.term2!r} "
            "in distinct phrases")

    first, second = min(slot1, slot2), max(slot1, slot2)
    lits_before = [i for i in range(first) if items[i].kind == LIT]
    cut_start = 0 if len(lits_before) <= window else lits_before[-window]
    lits_after = [i for i in range(second + 1, len(items))
                  if items[i].kind == LIT]
    cut_end = len(items) if len(lits_after) <= window \
        else lits_after[window - 1] + 1
    items = items[cut_start:cut_end]
    return LexSynExpression(
        items=items,
        slot1=slot1 - cut_start,
        slot2=slot2 - cut_start,
        doc_id=doc_id,
        sent_index=sent_index,
        forms=tuple(t.form for t in sentence),
    )


def _lcs_table(a, b):
    la, lb = len(a), len(b)
    table = [[0] * (lb + 1) for _ in range(la + 1)]
    for i in range(la - 1, -1, -1):
        for j in range(lb - 1, -1, -1):
            if a[i] == b[j]:
                table[i][j] = 1 + table[i + 1][j + 1]
            else:
                table[i][j] = max(table[i + 1][j], table[i][j + 1])
    return table


def _lcs_backtrack(a, b):
    table = _lcs_table(a, b)
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            out.append(a[i])
            i += 1
            j += 1
        elif table[i + 1][j] >= table[i][j + 1]:
            i += 1
        else:
            j += 1
    return out


def expression_similarity(e1: LexSynExpression, e2: LexSynExpression) -> Fraction:
    """Normalized common-subsequence length: 2*LCS / (|e1| + |e2|)."""
    a = [i.key() for i in e1.items]
    b = [i.key() for i in e2.items]
    if not a and not b:
        return Fraction(0)
    return Fraction(2 * _lcs_table(a, b)[0][0], len(a) + len(b))


def _slot_keys(e: LexSynExpression):
    keys = []
    for idx, item in enumerate(e.items):
        role = SLOT_FIRST if idx == e.slot1 else \
            SLOT_SECOND if idx == e.slot2 else SLOT_NONE
        keys.append((item.kind, item.lemma, role))
    return keys


def generalize(cluster: list[LexSynExpression],
               min_support: int = 2) -> Pattern | None:
    """Fold the cluster down to its common subsequence pattern, if viable.

    Slot-marked items only align with items carrying the same slot role, so
    a surviving pattern necessarily binds both arguments consistently.
    """
    if len(cluster) < min_support:
        return None
    common = _slot_keys(cluster[0])
    for expr in cluster[1:]:
        common = _lcs_backtrack(common, _slot_keys(expr))
        if not common:
            return None
    roles = [role for _, _, role in common]
    if SLOT_FIRST not in roles or SLOT_SECOND not in roles:
        return None
    if not any(kind == LIT for kind, _, _ in common):
        return None
    return Pattern(
        items=tuple((kind, lemma) for kind, lemma, _ in common),
        slot1=roles.index(SLOT_FIRST),
        slot2=roles.index(SLOT_SECOND),
        relation="",
        support=tuple((e.doc_id, e.sent_index) for e in cluster),
    )


def _single_link_clusters(expressions, threshold: Fraction):
    """Connected components of the similarity graph, in first-seen order."""
    n = len(expressions)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(i + 1, n):
            if expression_similarity(expressions[i], expressions[j]) >= threshold:
                parent[find(j)] = find(i)

    groups: dict[int, list] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(expressions[i])
    return [groups[r] for r in sorted(groups, key=lambda r: min(
        i for i in range(n) if find(i) == r))]


def _pattern_item_matches(pattern_item, is_slot, item: ExprItem) -> bool:
    kind, lemma = pattern_item
    if kind == LIT:
        return item.kind == LIT and item.lemma == lemma
    if kind == NP:
        return item.kind == NP or (is_slot and item.kind == LIST)
    return item.kind == LIST


def _find_embeddings(items, pattern: Pattern):
    """Non-overlapping embeddings of the pattern, tightest span first."""
    m = len(pattern.items)
    slots = {pattern.slot1, pattern.slot2}
    found = []
    search_from = 0
    while True:
        best = None
        for start in range(search_from, len(items)):
            if not _pattern_item_matches(pattern.items[0], 0 in slots,
                                         items[start]):
                continue
            emb = [start]
            pos = start + 1
            ok = True
            for pi in range(1, m):
                while pos < len(items) and not _pattern_item_matches(
                        pattern.items[pi], pi in slots, items[pos]):
                    pos += 1
                if pos == len(items):
                    ok = False
                    break
                emb.append(pos)
                pos += 1
            if not ok:
                continue
            span = emb[-1] - emb[0]
            if best is None or span < best[0]:
                best = (span, emb)
        if best is None:
            return found
        found.append(best[1])
        search_from = best[1][-1] + 1


def apply_patterns(corpus: list[TaggedDocument],
                   patterns: list[Pattern]) -> list[ExtractedPair]:
    """Harvest candidate pairs by matching validated patterns over the corpus."""
    for p in patterns:
        if p.status != "validated":
            raise ConfigError(f"pattern {p.render()!r} is not validated")
    pairs = []
    for doc in corpus:
        for si, sentence in enumerate(doc.sentences):
            items = build_items(sentence)
            for pattern in patterns:
                for emb in _find_embeddings(items, pattern):
                    item1 = items[emb[pattern.slot1]]
                    item2 = items[emb[pattern.slot2]]
                    for t1 in (item1.members if item1.kind == LIST
                               else (item1.text,)):
                        for t2 in (item2.members if item2.kind == LIST
                                   else (item2.text,)):
                            if t1 == t2:
                                continue
                            pairs.append(ExtractedPair(
                                term1=t1, term2=t2,
                                relation=pattern.relation,
                                pattern=pattern.render(),
                                doc_id=doc.id, sent_index=si,
                                span1=(item1.start, item1.end),
                                span2=(item2.start, item2.end)))
    return pairs


def run_promethee(corpus: list[TaggedDocument], seeds: list[SeedPair],
                  cfg: PrometheeConfig | None = None,
                  accepted_pairs: list[SeedPair] = (),
                  validated_patterns: list[Pattern] = ()
                  ) -> tuple[list[Pattern], list[ExtractedPair]]:
    """One loop turn: propose patterns from seeds, harvest pairs from patterns.

    Candidates are returned, never auto-accepted; the caller owns validation.
    """
    cfg = cfg or PrometheeConfig()
    if not seeds:
        raise ConfigError("no seed pairs given")
    relation = seeds[0].relation
    all_seeds = list(seeds)
    for extra in accepted_pairs:
        if all((extra.term1, extra.term2) != (s.term1, s.term2)
               for s in all_seeds):
            all_seeds.append(extra)

    expressions = []
    seen = set()
    for doc_id, si, sentence, seed in find_seed_sentences(corpus, all_seeds):
        try:
            expr = build_expression(sentence, seed, cfg.window, doc_id, si)
        except ValueError:
            continue
        if expr.identity() not in seen:
            seen.add(expr.identity())
            expressions.append(expr)

    patterns = []
    pattern_ids = set()
    for cluster in _single_link_clusters(expressions, cfg.sim_threshold):
        pattern = generalize(cluster, cfg.min_support)
        if pattern is None:
            continue
        pattern.relation = relation
        if pattern.identity() not in pattern_ids:
            pattern_ids.add(pattern.identity())
            patterns.append(pattern)

    extracted = apply_patterns(corpus, list(validated_patterns))
    return patterns, extracted
