"""Noun phrase and NP-list detection over tagged sentences.

Local grammar: ``(DET)? ADJ* N (ADJ | PREP (DET)? N)*`` matched maximally,
left to right. An all-uppercase word of length >= 2 counts as an acronym
noun phrase. A chain ``NP (, NP)* (CONJ NP)?`` of at least two phrases is
marked as a list spanning its members.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import TaggedToken


@dataclass(frozen=True)
class NounPhrase:
    start: int
    end: int
    head_lemma: str
    text: str


@dataclass(frozen=True)
class NPList:
    start: int
    end: int
    members: tuple[NounPhrase, ...]


def _match_np(sentence: list[TaggedToken], i: int) -> int | None:
    """End index of the maximal grammar match starting at i, else None."""
    n = len(sentence)
    j = i
    if j < n and sentence[j].pos == "DET":
        j += 1
    while j < n and sentence[j].pos == "ADJ":
        j += 1
    if j >= n or sentence[j].pos != "N":
        return None
    j += 1
    while j < n:
        if sentence[j].pos == "ADJ":
            j += 1
            continue
        if sentence[j].pos == "PREP":
            k = j + 1
            if k < n and sentence[k].pos == "DET":
                k += 1
            if k < n and sentence[k].pos == "N":
                j = k + 1
                continue
        break
    return j


def _is_acronym(token: TaggedToken) -> bool:
    return len(token.form) >= 2 and token.form.isalpha() and token.form.isupper()


def _head_lemma(sentence, start, end) -> str:
    for t in sentence[start:end]:
        if t.pos == "N":
            return t.lemma
    return sentence[start].lemma


def detect_noun_phrases(
        sentence: list[TaggedToken]) -> tuple[list[NounPhrase], list[NPList]]:
    """Noun phrases plus list markers for one tagged sentence."""
    nps: list[NounPhrase] = []
    i = 0
    n = len(sentence)
    while i < n:
        end = _match_np(sentence, i)
        if end is None and _is_acronym(sentence[i]):
            end = i + 1
        if end is not None:
            text = " ".join(t.form for t in sentence[i:end])
            nps.append(NounPhrase(i, end, _head_lemma(sentence, i, end), text))
            i = end
        else:
            i += 1

    lists: list[NPList] = []
    k = 0
    while k < len(nps):
        members = [nps[k]]
        j = k
        while j + 1 < len(nps):
            sep_start, sep_end = nps[j].end, nps[j + 1].start
            if sep_end - sep_start != 1:
                break
            sep = sentence[sep_start]
            if sep.pos == "PUNC" and sep.form == ",":
                members.append(nps[j + 1])
                j += 1
                continue
            if sep.pos == "CONJ":
                members.append(nps[j + 1])
                j += 1
            break
        if len(members) >= 2:
            lists.append(NPList(members[0].start, members[-1].end, tuple(members)))
        k = j + 1
    return nps, lists


def np_lemma_text(sentence: list[TaggedToken], np: NounPhrase) -> str:
    """Canonical rendering of a noun phrase: lemmas minus determiners."""
    return " ".join(
        t.lemma.casefold() for t in sentence[np.start:np.end] if t.pos != "DET")


def np_lemmas(sentence: list[TaggedToken], np: NounPhrase) -> list[str]:
    return [t.lemma.casefold() for t in sentence[np.start:np.end]]
