"""Words, orderings, subword search, and overlap detection."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kbgb import (
    Alphabet,
    AlphabetMismatch,
    MatchKind,
    MonomialOrder,
    Word,
    concat,
    find_matches,
    find_subword_occurrences,
)

from oracles import exhaustive_matches, match_set

AB = Alphabet("ab")
SHORTLEX = MonomialOrder.shortlex(AB)


def w(text, alpha=AB):
    return alpha.parse_word(text)


words_ab = st.builds(lambda ls: Word(AB, ls), st.lists(st.integers(0, 1), max_size=6))
nonempty_ab = st.builds(lambda ls: Word(AB, ls), st.lists(st.integers(0, 1), min_size=1, max_size=5))


class TestAlphabet:
    def test_distinct_nonempty(self):
        with pytest.raises(ValueError):
            Alphabet([])
        with pytest.raises(ValueError):
            Alphabet(["a", "a"])
        with pytest.raises(ValueError):
            Alphabet(["a", ""])
        with pytest.raises(ValueError):
            Alphabet(["a b"])

    def test_multichar_names(self):
        alpha = Alphabet(["x1", "x2"])
        word = alpha.parse_word("x1.x2.x1")
        assert word.display() == "x1.x2.x1"
        with pytest.raises(ValueError):
            alpha.parse_word("x1x2")

    def test_parse_word_forms(self):
        assert w("b.a") == AB.word("b", "a")
        assert w("ba") == AB.word("b", "a")
        assert w("1") == Word(AB)


class TestConcat:
    def test_examples(self):
        assert concat(w("ab"), w("ba")) == w("abba")
        assert concat(w("a"), w("1")) == w("a")
        assert concat(w("ba"), w("b")) == w("bab")

    def test_alphabet_mismatch(self):
        other = Alphabet("ab")
        assert concat(w("a"), other.parse_word("b")) == w("ab")  # equal alphabets are fine
        with pytest.raises(AlphabetMismatch):
            concat(w("a"), Alphabet("abc").parse_word("b"))


class TestCompare:
    def test_examples(self):
        assert SHORTLEX.compare(w("abb"), w("bba")) == -1
        assert SHORTLEX.compare(w("ba"), w("ba")) == 0
        assert SHORTLEX.compare(w("aaa"), w("ba")) == 1

    def test_reversed_precedence(self):
        rev = MonomialOrder.shortlex(AB, precedence=("b", "a"))
        assert rev.compare(w("ab"), w("ba")) == 1

    def test_wtlex_agrees_with_shortlex_on_unit_weights(self):
        wt = MonomialOrder.weighted_shortlex(AB, {"a": 1, "b": 1})
        sample = [w("a"), w("b"), w("ab"), w("ba"), w("bba"), w("aab"), w("1")]
        assert sorted(sample, key=wt.key) == sorted(sample, key=SHORTLEX.key)

    def test_wtlex_weight_dominates(self):
        wt = MonomialOrder.weighted_shortlex(AB, {"a": 3, "b": 1})
        assert wt.compare(w("a"), w("bb")) == 1  # weight 3 beats weight 2

    def test_invalid_orders(self):
        with pytest.raises(ValueError):
            MonomialOrder.shortlex(AB, precedence=("a",))
        with pytest.raises(ValueError):
            MonomialOrder.weighted_shortlex(AB, {"a": 0, "b": 1})
        with pytest.raises(AlphabetMismatch):
            SHORTLEX.compare(w("a"), Alphabet("abc").parse_word("a"))

    @given(words_ab, words_ab)
    def test_total(self, w1, w2):
        cmp = SHORTLEX.compare(w1, w2)
        assert cmp in (-1, 0, 1)
        assert (cmp == 0) == (w1 == w2)
        assert SHORTLEX.compare(w2, w1) == -cmp

    @given(words_ab, words_ab, words_ab, words_ab)
    @settings(max_examples=200)
    def test_admissible(self, w1, w2, left, right):
        if SHORTLEX.greater(w1, w2):
            assert SHORTLEX.greater(left * w1 * right, left * w2 * right)

    @given(st.lists(words_ab, max_size=12))
    def test_sort_stable_under_resort(self, sample):
        once = SHORTLEX.sort(sample)
        assert SHORTLEX.sort(once) == once

    @given(words_ab, words_ab, words_ab, words_ab)
    @settings(max_examples=150)
    def test_wtlex_admissible(self, w1, w2, left, right):
        wt = MonomialOrder.weighted_shortlex(AB, {"a": 2, "b": 1})
        if wt.greater(w1, w2):
            assert wt.greater(left * w1 * right, left * w2 * right)


class TestSubwordOccurrences:
    def test_examples(self):
        occ = find_subword_occurrences(w("abab"), w("ab"))
        assert occ == [(w("1"), w("ab")), (w("ab"), w("1"))]
        occ = find_subword_occurrences(w("aaa"), w("aa"))
        assert occ == [(w("1"), w("a")), (w("a"), w("1"))]
        assert find_subword_occurrences(w("bbb"), w("ab")) == []

    def test_rejects_empty_factor(self):
        with pytest.raises(ValueError):
            find_subword_occurrences(w("ab"), w("1"))

    @given(words_ab, nonempty_ab)
    def test_reconstruction(self, word, factor):
        for u, v in find_subword_occurrences(word, factor):
            assert concat(u, concat(factor, v)) == word


class TestFindMatches:
    def test_containment_example(self):
        matches = find_matches(w("abba"), w("bb"))
        assert len(matches) == 1
        m = matches[0]
        assert m.kind is MatchKind.CONTAINMENT_12
        assert (m.u2, m.v2) == (w("a"), w("a"))
        assert m.superposition == w("abba")

    def test_self_overlap_example(self):
        matches = find_matches(w("aba"), w("aba"))
        kinds = [(m.kind, m.superposition) for m in matches]
        assert kinds == [
            (MatchKind.SUFFIX_PREFIX, w("ababa")),
            (MatchKind.PREFIX_SUFFIX, w("ababa")),
        ]
        sp = matches[0]
        assert (sp.v1, sp.u2) == (w("ba"), w("ab"))

    def test_no_self_overlap(self):
        assert find_matches(w("ba"), w("ba")) == []

    def test_identity_containment_is_opt_in(self):
        assert find_matches(w("ab"), w("ab")) == []
        matches = find_matches(w("ab"), w("ab"), include_identity=True)
        assert [m.kind for m in matches] == [MatchKind.CONTAINMENT_12]
        assert matches[0].witness_lengths() == (0, 0, 0, 0)

    def test_superposition_equations(self):
        rng = random.Random(7)
        for _ in range(300):
            l1 = Word(AB, [rng.randrange(2) for _ in range(rng.randint(1, 4))])
            l2 = Word(AB, [rng.randrange(2) for _ in range(rng.randint(1, 4))])
            for m in find_matches(l1, l2):
                if m.kind is MatchKind.CONTAINMENT_12:
                    assert m.u2 * l2 * m.v2 == l1 == m.superposition
                elif m.kind is MatchKind.CONTAINMENT_21:
                    assert m.u1 * l1 * m.v1 == l2 == m.superposition
                elif m.kind is MatchKind.SUFFIX_PREFIX:
                    assert l1 * m.v1 == m.u2 * l2 == m.superposition
                    assert 1 <= len(l1) - len(m.u2) < min(len(l1), len(l2)) + 1
                else:
                    assert m.u1 * l1 == l2 * m.v2 == m.superposition

    @given(nonempty_ab, nonempty_ab)
    @settings(max_examples=250, deadline=None)
    def test_matches_exhaustive_oracle(self, l1, l2):
        assert match_set(find_matches(l1, l2)) == exhaustive_matches(l1, l2)

    @given(nonempty_ab, nonempty_ab)
    @settings(max_examples=150, deadline=None)
    def test_suffix_prefix_mirrors(self, l1, l2):
        # l1.v1 = u2.l2 read with the arguments swapped is u1.l2 = l1.v2
        # with u1 = u2 and v2 = v1
        forward = {
            (m.v1.letters, m.u2.letters)
            for m in find_matches(l1, l2)
            if m.kind is MatchKind.SUFFIX_PREFIX
        }
        mirrored = {
            (m.v2.letters, m.u1.letters)
            for m in find_matches(l2, l1)
            if m.kind is MatchKind.PREFIX_SUFFIX
        }
        assert forward == mirrored
