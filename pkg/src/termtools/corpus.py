"""Corpus ingestion: tokenization, sentence boundaries, lexicons, tagged text.

Raw text is segmented against a configurable symbol set (letters including
accented forms, digits, optionally the hyphen); everything else is either
whitespace or punctuation. Tagged corpora arrive pre-tokenized as TSV with
an abstract 10-tag part-of-speech set; mapping from a real tagger's tagset
is the caller's job.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import DataError

WORD = "word"
NUMBER = "number"
PUNCT = "punctuation"

POS_TAGS = ("N", "ADJ", "PREP", "DET", "V", "VINF", "ADV", "CONJ", "PUNC", "OTHER")

_TERMINATORS = ".!?"


@dataclass(frozen=True)
class SymbolSet:
    """Characters allowed inside a word token."""

    hyphen: bool = False
    extra: str = ""

    def contains(self, ch: str) -> bool:
        if ch.isalpha() or ch.isdigit():
            return True
        if self.hyphen and ch == "-":
            return True
        return ch != "" and ch in self.extra


DEFAULT_SYMBOLS = SymbolSet()


@dataclass(frozen=True)
class Token:
    surface: str
    offset: int
    kind: str


@dataclass
class Document:
    id: str
    tokens: list[Token]
    sentence_bounds: list[tuple[int, int]]

    def sentences(self) -> list[list[Token]]:
        return [self.tokens[a:b] for a, b in self.sentence_bounds]

    def sentence_of(self, token_index: int) -> tuple[int, int]:
        """Bounds of the sentence containing the given token index."""
        for a, b in self.sentence_bounds:
            if a <= token_index < b:
                return a, b
        raise IndexError(f"token index {token_index} outside all sentences")


def tokenize(text: str, symbols: SymbolSet = DEFAULT_SYMBOLS) -> list[Token]:
    """Split text into word/number/punctuation tokens with source offsets.

    Maximal runs of symbol-set characters form one token; each remaining
    non-space character becomes a punctuation token.
    """
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if symbols.contains(ch):
            j = i + 1
            while j < n and symbols.contains(text[j]):
                j += 1
            surface = text[i:j]
            kind = NUMBER if surface.isdigit() else WORD
            tokens.append(Token(surface, i, kind))
            i = j
        elif ch.isspace():
            i += 1
        else:
            tokens.append(Token(ch, i, PUNCT))
            i += 1
    return tokens


def sentence_spans(text: str) -> list[tuple[int, int]]:
    """Character spans of sentences.

    A run of ``.!?`` followed by whitespace and a capital letter ends a
    sentence; a blank line always does. Spans with no visible content are
    dropped.
    """
    spans = []
    n = len(text)
    start = 0
    i = 0
    while i < n:
        ch = text[i]
        if ch in _TERMINATORS:
            j = i + 1
            while j < n and text[j] in _TERMINATORS:
                j += 1
            k = j
            while k < n and text[k].isspace():
                k += 1
            if k > j and k < n and text[k].isupper():
                spans.append((start, j))
                start = k
                i = k
                continue
            i = j
        elif ch == "\n":
            j = i + 1
            blank = False
            while j < n and text[j].isspace():
                if text[j] == "\n":
                    blank = True
                j += 1
            if blank:
                spans.append((start, i))
                start = j
                i = j
                continue
            i += 1
        else:
            i += 1
    if start < n:
        spans.append((start, n))
    return [(a, b) for a, b in spans if text[a:b].strip()]


def document_from_text(doc_id: str, text: str,
                       symbols: SymbolSet = DEFAULT_SYMBOLS) -> Document:
    """Tokenize raw text into a Document with sentence bounds over tokens."""
    tokens = tokenize(text, symbols)
    bounds = []
    ti = 0
    for _, b in sentence_spans(text):
        start = ti
        while ti < len(tokens) and tokens[ti].offset < b:
            ti += 1
        if ti > start:
            bounds.append((start, ti))
    if ti < len(tokens):
        bounds.append((ti, len(tokens)))
    return Document(doc_id, tokens, bounds)


def load_raw_corpus(directory, symbols: SymbolSet = DEFAULT_SYMBOLS) -> list[Document]:
    """Load a directory of UTF-8 ``.txt`` files, one document per file."""
    root = Path(directory)
    if not root.is_dir():
        raise DataError(f"corpus directory not found: {root}", path=root)
    docs = []
    for path in sorted(root.glob("*.txt")):
        docs.append(document_from_text(path.stem, _read_utf8(path), symbols))
    return docs


def _read_utf8(path) -> str:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise DataError(f"cannot read file: {exc}", path=path) from exc
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise DataError(f"invalid UTF-8 at byte {exc.start}", path=path) from exc


@dataclass
class Lexicon:
    """Named case-insensitive word list."""

    name: str
    entries: set[str]

    def __contains__(self, word: str) -> bool:
        return word.casefold() in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def from_words(cls, name: str, words) -> "Lexicon":
        return cls(name, {w.casefold() for w in words})


def load_lexicon(path) -> Lexicon:
    """Read a lexicon file: one entry per line, ``#`` starts a comment."""
    entries = set()
    for line in _read_utf8(path).splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        entries.add(line.casefold())
    return Lexicon(Path(path).stem, entries)


def write_lexicon(lexicon: Lexicon, path) -> None:
    Path(path).write_text(
        "".join(e + "\n" for e in sorted(lexicon.entries)), encoding="utf-8")


@dataclass(frozen=True)
class TaggedToken:
    form: str
    pos: str
    lemma: str


@dataclass
class TaggedDocument:
    id: str
    sentences: list[list[TaggedToken]]

    def sentence_offset(self, index: int) -> int:
        """Document-level token offset of the given sentence."""
        return sum(len(s) for s in self.sentences[:index])

    def sentence_text(self, index: int) -> str:
        return " ".join(t.form for t in self.sentences[index])


def load_tagged(path) -> list[TaggedDocument]:
    """Parse a tagged corpus file.

    Format: one ``form<TAB>pos<TAB>lemma`` line per token, blank line ends a
    sentence, a ``##DOC <id>`` line starts a new document. Tags must already
    belong to the abstract tagset.
    """
    docs: list[TaggedDocument] = []
    current_doc = TaggedDocument(Path(path).stem, [])
    sentence: list[TaggedToken] = []

    def flush_sentence():
        if sentence:
            current_doc.sentences.append(list(sentence))
            sentence.clear()

    def flush_doc():
        flush_sentence()
        if current_doc.sentences:
            docs.append(current_doc)

    for lineno, line in enumerate(_read_utf8(path).splitlines(), start=1):
        if line.startswith("##DOC"):
            flush_doc()
            doc_id = line[len("##DOC"):].strip() or f"doc{len(docs) + 1}"
            current_doc = TaggedDocument(doc_id, [])
            continue
        if not line.strip():
            flush_sentence()
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise DataError(
                f"expected 3 tab-separated fields, got {len(fields)}",
                path=path, line=lineno)
        form, pos, lemma = (f.strip() for f in fields)
        if pos not in POS_TAGS:
            raise DataError(f"unknown part-of-speech tag {pos!r}",
                            path=path, line=lineno)
        if not lemma:
            raise DataError("empty lemma", path=path, line=lineno)
        sentence.append(TaggedToken(form, pos, lemma))
    flush_doc()
    return docs
