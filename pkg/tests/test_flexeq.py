import random
from fractions import Fraction

import pytest

from oracles import naive_edit_distance
from termtools.corpus import Lexicon, document_from_text
from termtools.errors import ConfigError
from termtools.flexeq import (CostConfig, IncomparableTermsError, Term,
                              edit_distance, flex_equal_strings,
                              flex_equal_terms, recognize_terms, restriction,
                              term_distance, weighted_distance)

FUNCTIONAL = Lexicon.from_words(
    "functional", ["a", "any", "for", "in", "is", "may", "of", "or", "the",
                   "this", "to"])
COSTS = CostConfig()


def rand_string(rng, max_len=8, alphabet="abcd"):
    return "".join(rng.choice(alphabet) for _ in range(rng.randrange(max_len + 1)))


class TestEditDistance:
    def test_identity(self):
        assert edit_distance("hammer", "hammer") == 0

    def test_single_deletion(self):
        expected = naive_edit_distance("hammer", "hamer")
        assert expected == 1
        assert edit_distance("hammer", "hamer") == expected

    def test_empty_string_costs_length(self):
        assert edit_distance("abc", "") == 3
        assert edit_distance("", "abc") == 3

    def test_matches_oracle_on_random_pairs(self):
        rng = random.Random(7)
        for _ in range(300):
            w, x = rand_string(rng), rand_string(rng)
            assert edit_distance(w, x) == naive_edit_distance(w, x)

    def test_custom_costs_against_oracle(self):
        rng = random.Random(8)
        cfg = CostConfig(q=Fraction(1, 2), p=Fraction(3, 4))
        for _ in range(100):
            w, x = rand_string(rng, 6), rand_string(rng, 6)
            assert edit_distance(w, x, cfg) == naive_edit_distance(
                w, x, cfg.q, cfg.p)

    def test_symmetry_and_triangle(self):
        rng = random.Random(9)
        for _ in range(300):
            a, b, c = (rand_string(rng, 6) for _ in range(3))
            assert edit_distance(a, b) == edit_distance(b, a)
            assert edit_distance(a, c) <= edit_distance(a, b) + edit_distance(b, c)


class TestWeightedDistance:
    def test_single_letter_drop(self):
        assert weighted_distance("hammer", "hamer") == Fraction(1, 11)

    def test_zero_iff_equal(self):
        assert weighted_distance("x", "x") == 0
        rng = random.Random(10)
        for _ in range(200):
            w, x = rand_string(rng), rand_string(rng)
            if not w and not x:
                continue
            wd = weighted_distance(w, x)
            assert 0 <= wd <= 1
            assert (wd == 0) == (w == x)
            assert wd == weighted_distance(x, w)

    def test_completely_different(self):
        assert weighted_distance("ab", "cd") == 1

    def test_both_empty_rejected(self):
        with pytest.raises(ValueError):
            weighted_distance("", "")


class TestFlexEqualStrings:
    def test_variant_within_fifth(self):
        assert flex_equal_strings("hammer", "hamer", CostConfig(k=5))

    def test_reflexive(self):
        rng = random.Random(11)
        for _ in range(100):
            w = rand_string(rng)
            if w:
                assert flex_equal_strings(w, w)

    def test_rejects_beyond_threshold(self):
        assert not flex_equal_strings("ab", "cd", CostConfig(k=2))

    def test_case_folded(self):
        assert flex_equal_strings("WOOD", "wood", CostConfig(k=100))

    def test_raising_k_shrinks_relation(self):
        rng = random.Random(12)
        for _ in range(200):
            w, x = rand_string(rng), rand_string(rng)
            if not w and not x:
                continue
            if flex_equal_strings(w, x, CostConfig(k=8)):
                assert flex_equal_strings(w, x, CostConfig(k=4))


class TestRestriction:
    def test_functional_words_removed(self):
        term = Term.from_text("colour of a hammer")
        assert restriction(term, FUNCTIONAL) == ("colour", "hammer")

    def test_variant_side(self):
        term = Term.from_text("colour of any hamer")
        assert restriction(term, FUNCTIONAL) == ("colour", "hamer")

    def test_all_functional(self):
        assert restriction(Term.from_text("of the"), FUNCTIONAL) == ()

    def test_subsequence_and_stability(self):
        term = Term.from_text("the colour of a hammer")
        r = restriction(term, FUNCTIONAL)
        it = iter(term.words)
        assert all(w in it for w in r)
        grown = Lexicon.from_words("f", FUNCTIONAL.entries | {"zzzz"})
        assert restriction(term, grown) == r


class TestFlexEqualTerms:
    def test_worked_example(self):
        x = Term.from_text("colour of a hammer")
        y = Term.from_text("colour of any hamer")
        assert flex_equal_terms(x, y, CostConfig(k=5), FUNCTIONAL)

    def test_reflexive_symmetric(self):
        x = Term.from_text("colour of a hammer")
        y = Term.from_text("colour of any hamer")
        cfg = CostConfig(k=5)
        assert flex_equal_terms(x, x, cfg, FUNCTIONAL)
        assert flex_equal_terms(y, x, cfg, FUNCTIONAL) == \
            flex_equal_terms(x, y, cfg, FUNCTIONAL)

    def test_length_mismatch_is_false(self):
        x = Term.from_text("colour of a hammer")
        y = Term.from_text("hammer")
        assert not flex_equal_terms(x, y, COSTS, FUNCTIONAL)

    def test_empty_restrictions_are_false(self):
        x = Term.from_text("of the")
        assert not flex_equal_terms(x, x, COSTS, FUNCTIONAL)


class TestTermDistance:
    def test_worked_example_value(self):
        x = Term.from_text("colour of a hammer")
        y = Term.from_text("colour of any hamer")
        assert term_distance(x, y, COSTS, FUNCTIONAL) == Fraction(1, 22)

    def test_identity(self):
        x = Term.from_text("colour of a hammer")
        assert term_distance(x, x, COSTS, FUNCTIONAL) == 0

    def test_single_rank_complete_difference(self):
        assert term_distance(Term.from_text("ab"), Term.from_text("cd"),
                             COSTS, FUNCTIONAL) == 1

    def test_incomparable(self):
        with pytest.raises(IncomparableTermsError):
            term_distance(Term.from_text("colour of a hammer"),
                          Term.from_text("hammer"), COSTS, FUNCTIONAL)

    def test_bounded_by_threshold_when_flex_equal(self):
        rng = random.Random(13)
        cfg = CostConfig(k=4)
        for _ in range(200):
            x = Term.from_text(" ".join(
                rand_string(rng, 6, "abcde") or "a" for _ in range(2)))
            y = Term.from_text(" ".join(
                rand_string(rng, 6, "abcde") or "a" for _ in range(2)))
            if flex_equal_terms(x, y, cfg, FUNCTIONAL):
                assert term_distance(x, y, cfg, FUNCTIONAL) <= cfg.threshold


class TestRecognizeTerms:
    def test_variant_occurrence(self):
        doc = document_from_text("d1", "Rust dims colour of any hamer quickly")
        refs = [Term.from_text("colour of a hammer")]
        occs = recognize_terms(doc, refs, CostConfig(k=5), FUNCTIONAL)
        assert len(occs) == 1
        assert occs[0].surface == "colour of any hamer"
        assert occs[0].distance == Fraction(1, 22)

    def test_no_shared_words(self):
        doc = document_from_text("d1", "nothing relevant here")
        refs = [Term.from_text("colour of a hammer")]
        assert recognize_terms(doc, refs, COSTS, FUNCTIONAL) == []

    def test_exact_surface_distance_zero(self):
        doc = document_from_text("d1", "The colour of a hammer shines")
        refs = [Term.from_text("colour of a hammer")]
        occs = recognize_terms(doc, refs, CostConfig(k=5), FUNCTIONAL)
        assert len(occs) == 1
        assert occs[0].distance == 0

    def test_empty_refs_rejected(self):
        doc = document_from_text("d1", "anything")
        with pytest.raises(ConfigError):
            recognize_terms(doc, [], COSTS, FUNCTIONAL)

    def test_longest_match_wins_over_contained_singles(self):
        doc = document_from_text("d1", "the DIESEL ENGINE is loud")
        refs = [Term.from_text("DIESEL"), Term.from_text("ENGINE"),
                Term.from_text("DIESEL ENGINE")]
        occs = recognize_terms(doc, refs, CostConfig(k=5), FUNCTIONAL)
        assert [o.surface for o in occs] == ["DIESEL ENGINE"]

    def test_spans_disjoint_and_sorted(self):
        rng = random.Random(14)
        vocab = ["wood", "beech", "of", "the", "timber", "woods", "a"]
        for _ in range(50):
            text = " ".join(rng.choice(vocab) for _ in range(rng.randrange(1, 25)))
            doc = document_from_text("d", text)
            refs = [Term.from_text("wood"), Term.from_text("beech timber")]
            occs = recognize_terms(doc, refs, CostConfig(k=5), FUNCTIONAL)
            for a, b in zip(occs, occs[1:]):
                assert a.end <= b.start

    def test_matches_do_not_start_or_end_on_functional_words(self):
        doc = document_from_text("d1", "this DIESEL is fine")
        refs = [Term.from_text("DIESEL")]
        occs = recognize_terms(doc, refs, CostConfig(k=5), FUNCTIONAL)
        assert [o.surface for o in occs] == ["DIESEL"]
