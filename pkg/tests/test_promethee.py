import random
from fractions import Fraction

import pytest

from oracles import lcs_length
from termtools.corpus import load_tagged
from termtools.errors import ConfigError
from termtools.promethee import (ExprItem, LexSynExpression, LIST, LIT, NP,
                                 Pattern, PrometheeConfig, SeedPair,
                                 apply_patterns, build_expression,
                                 expression_similarity, find_seed_sentences,
                                 generalize, load_seed_pairs, run_promethee)


@pytest.fixture(scope="module")
def corpus(fixtures):
    return load_tagged(fixtures / "medical.tsv")


@pytest.fixture(scope="module")
def seeds(fixtures):
    return load_seed_pairs(fixtures / "seeds_medical.tsv", "hypernym")


def lit(lemma):
    return ExprItem(kind=LIT, lemma=lemma)


def np(text="x"):
    return ExprItem(kind=NP, text=text)


def lst(*members):
    return ExprItem(kind=LIST, members=members)


def expr(items, slot1, slot2, doc="d", si=0):
    return LexSynExpression(tuple(items), slot1, slot2, doc, si, ())


class TestFindSeedSentences:
    def test_medical_sentence_found(self, corpus, seeds):
        hits = find_seed_sentences(corpus, [seeds[0]])
        assert [(h[0], h[1]) for h in hits] == [("med", 0)]

    def test_absent_seed(self, corpus):
        hits = find_seed_sentences(
            corpus, [SeedPair("plasma", "vulnerable area", "hypernym")])
        assert hits == []

    def test_one_term_is_not_enough(self, corpus):
        hits = find_seed_sentences(
            corpus, [SeedPair("neocortex", "plasma", "hypernym")])
        assert hits == []

    def test_second_seed_hits_both_sentences(self, corpus, seeds):
        hits = find_seed_sentences(corpus, [seeds[1]])
        assert [(h[0], h[1]) for h in hits] == [("med", 0), ("med", 1)]

    def test_no_seeds_rejected(self, corpus):
        with pytest.raises(ConfigError):
            find_seed_sentences(corpus, [])


class TestBuildExpression:
    def test_medical_expression_items(self, corpus, seeds):
        sentence = corpus[0].sentences[0]
        e = build_expression(sentence, seeds[0], doc_id="med", sent_index=0)
        assert e.render() == "NP be find in the selectively NP such as LIST"
        assert e.slot2 == 6
        assert e.slot1 == 9
        assert e.items[e.slot1].kind == LIST
        assert e.items[e.slot2].text == "vulnerable area"

    def test_analogue_expression_items(self, corpus, seeds):
        sentence = corpus[0].sentences[1]
        e = build_expression(sentence, seeds[1], doc_id="med", sent_index=1)
        assert e.render() == "NP such as LIST degenerate"
        assert e.slot2 == 0
        assert e.slot1 == 3

    def test_missing_terms_rejected(self, corpus):
        sentence = corpus[0].sentences[0]
        with pytest.raises(ValueError):
            build_expression(sentence, SeedPair("plasma", "serum", "hypernym"))

    def test_narrow_window_trims_leading_context(self, corpus, seeds):
        sentence = corpus[0].sentences[0]
        e = build_expression(sentence, seeds[0], window=2)
        assert e.render() == "the selectively NP such as LIST"
        assert e.items[e.slot1].kind == LIST


class TestSimilarity:
    def test_identity(self):
        e = expr([np(), lit("such"), lit("as"), lst("a", "b")], 3, 0)
        assert expression_similarity(e, e) == 1

    def test_short_against_extended(self):
        e1 = expr([np(), lit("such"), lit("as"), lst("a", "b")], 3, 0)
        e2 = expr([np(), lit("find"), lit("in"), np(), lit("such"), lit("as"),
                   lst("a", "b")], 6, 3)
        lcs = lcs_length([i.key() for i in e1.items],
                         [i.key() for i in e2.items])
        assert lcs == 4
        assert expression_similarity(e1, e2) == Fraction(2 * lcs, 4 + 7)

    def test_disjoint_items(self):
        e1 = expr([lit("alpha"), lit("beta")], 0, 1)
        e2 = expr([lit("gamma"), lit("delta")], 0, 1)
        assert expression_similarity(e1, e2) == 0

    def test_matches_oracle_on_random_sequences(self):
        rng = random.Random(21)
        kinds = [lit("a"), lit("b"), lit("c"), np(), lst("m")]
        for _ in range(200):
            i1 = [rng.choice(kinds) for _ in range(rng.randrange(1, 8))]
            i2 = [rng.choice(kinds) for _ in range(rng.randrange(1, 8))]
            e1, e2 = expr(i1, 0, 0), expr(i2, 0, 0)
            expected = Fraction(
                2 * lcs_length([i.key() for i in i1], [i.key() for i in i2]),
                len(i1) + len(i2))
            assert expression_similarity(e1, e2) == expected
            assert expression_similarity(e2, e1) == expected


class TestGeneralize:
    def test_fixture_cluster_yields_such_as_pattern(self, corpus, seeds):
        e1 = build_expression(corpus[0].sentences[0], seeds[0], doc_id="med")
        e2 = build_expression(corpus[0].sentences[1], seeds[1], doc_id="med",
                              sent_index=1)
        pattern = generalize([e1, e2])
        assert pattern is not None
        assert pattern.render() == "NP such as LIST"
        assert pattern.items[pattern.slot2][0] == NP
        assert pattern.items[pattern.slot1][0] == LIST

    def test_identical_expressions_generalize_to_themselves(self):
        e = expr([np(), lit("such"), lit("as"), lst("a", "b")], 3, 0)
        pattern = generalize([e, e])
        assert pattern.render() == "NP such as LIST"

    def test_no_shared_literal_gives_none(self):
        e1 = expr([np(), lit("alpha"), lst("a")], 2, 0)
        e2 = expr([np(), lit("beta"), lst("a")], 2, 0)
        assert generalize([e1, e2]) is None

    def test_lost_slot_gives_none(self):
        e1 = expr([np(), lit("such"), lst("a")], 2, 0)
        e2 = expr([lst("a"), lit("such"), np()], 0, 2)
        assert generalize([e1, e2]) is None

    def test_singleton_cluster_gives_none(self):
        e = expr([np(), lit("such"), lst("a")], 2, 0)
        assert generalize([e]) is None


class TestApplyPatterns:
    def make_pattern(self, status="validated"):
        return Pattern(items=((NP, ""), (LIT, "such"), (LIT, "as"), (LIST, "")),
                       slot1=3, slot2=0, relation="hypernym", status=status)

    def test_medical_sentence_fans_out_to_four_pairs(self, corpus):
        pairs = apply_patterns([corpus[0]], [self.make_pattern()])
        from_first = [(p.term1, p.term2) for p in pairs if p.sent_index == 0]
        assert from_first == [
            ("neocortex", "vulnerable area"), ("striatum", "vulnerable area"),
            ("hippocampus", "vulnerable area"), ("thalamus", "vulnerable area")]

    def test_slot_binds_nearest_phrase(self, corpus):
        pairs = apply_patterns([corpus[0]], [self.make_pattern()])
        assert all(p.term2 == "vulnerable area" for p in pairs)

    def test_corpus_without_trigger_words(self, corpus, tmp_path):
        path = tmp_path / "c.tsv"
        path.write_text("wood\tN\twood\nbeech\tN\tbeech\n", encoding="utf-8")
        assert apply_patterns(load_tagged(path), [self.make_pattern()]) == []

    def test_unvalidated_pattern_rejected(self, corpus):
        with pytest.raises(ConfigError):
            apply_patterns([corpus[0]], [self.make_pattern(status="candidate")])


class TestRunPromethee:
    def test_first_turn_proposes_pattern_and_no_pairs(self, corpus, seeds):
        patterns, pairs = run_promethee(corpus, seeds)
        assert [p.render() for p in patterns] == ["NP such as LIST"]
        assert patterns[0].status == "candidate"
        assert patterns[0].relation == "hypernym"
        assert len(patterns[0].support) == 2
        assert pairs == []

    def test_second_turn_extracts_six_raw_pairs(self, corpus, seeds):
        patterns, _ = run_promethee(corpus, seeds)
        validated = patterns[0]
        validated.status = "validated"
        _, pairs = run_promethee(corpus, seeds, validated_patterns=[validated])
        assert len(pairs) == 6
        assert {(p.term1, p.term2) for p in pairs} == {
            ("neocortex", "vulnerable area"), ("striatum", "vulnerable area"),
            ("hippocampus", "vulnerable area"), ("thalamus", "vulnerable area")}

    def test_pattern_matches_its_own_support(self, corpus, seeds):
        patterns, _ = run_promethee(corpus, seeds)
        pattern = patterns[0]
        pattern.status = "validated"
        _, pairs = run_promethee(corpus, seeds, validated_patterns=[pattern])
        sources = {(p.doc_id, p.sent_index) for p in pairs}
        assert set(pattern.support) <= sources

    def test_no_seeds_rejected(self, corpus):
        with pytest.raises(ConfigError):
            run_promethee(corpus, [])

    def test_accepted_pairs_extend_seed_set(self, corpus, seeds):
        extra = SeedPair("hippocampus", "vulnerable area", "hypernym")
        patterns, _ = run_promethee(corpus, seeds[:1], accepted_pairs=[extra])
        assert [p.render() for p in patterns] == ["NP such as LIST"]

    def test_deterministic(self, corpus, seeds):
        p1, _ = run_promethee(corpus, seeds)
        p2, _ = run_promethee(corpus, seeds)
        assert [(p.items, p.slot1, p.slot2, p.support) for p in p1] == \
            [(p.items, p.slot1, p.slot2, p.support) for p in p2]


class TestSeedLoading:
    def test_load(self, fixtures):
        seeds = load_seed_pairs(fixtures / "seeds_medical.tsv", "hypernym")
        assert [(s.term1, s.term2) for s in seeds] == [
            ("neocortex", "vulnerable area"), ("striatum", "vulnerable area")]

    def test_arity_error(self, tmp_path):
        path = tmp_path / "s.tsv"
        path.write_text("one\ttwo\tthree\n", encoding="utf-8")
        from termtools.errors import DataError
        with pytest.raises(DataError):
            load_seed_pairs(path, "r")

    def test_identical_terms_rejected(self, tmp_path):
        path = tmp_path / "s.tsv"
        path.write_text("same\tsame\n", encoding="utf-8")
        with pytest.raises(ConfigError):
            load_seed_pairs(path, "r")
