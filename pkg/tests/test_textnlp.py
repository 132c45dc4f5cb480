"""Tokenizer, sentence splitter, tagger, chunker, and syllable tests."""

import string

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tweetstylo.textnlp import (
    annotate,
    count_syllables,
    load_lexicons,
    tokenize,
)
from tweetstylo.textnlp.lexicons import verify_data
from tweetstylo.textnlp.sentences import split_sentences


@pytest.fixture(scope="module")
def lex():
    return load_lexicons()


class TestTokenize:
    def test_hashtag_and_punct_kinds(self):
        toks = tokenize("Wake up! #truth")
        assert [t.surface for t in toks] == ["Wake", "up", "!", "#truth"]
        assert [t.kind for t in toks] == ["word", "word", "punctuation", "hashtag"]
        assert toks[3].lower == "truth"

    def test_empty(self):
        assert tokenize("") == []

    def test_url_is_single_token(self):
        toks = tokenize("see https://x.co/a")
        assert [t.kind for t in toks] == ["word", "url"]
        assert toks[1].surface == "https://x.co/a"

    def test_mention_number_contraction(self):
        toks = tokenize("@who owns 3,200 tweets, don't ask")
        kinds = {t.surface: t.kind for t in toks}
        assert kinds["@who"] == "mention"
        assert kinds["3,200"] == "number"
        assert kinds["don't"] == "word"
        assert toks[0].lower == "who"

    def test_surfaces_are_substrings_at_offsets(self):
        text = "They're “hiding” it... #wakeup @you 99%"
        for t in tokenize(text):
            assert text[t.start : t.end] == t.surface

    @given(st.text(max_size=200))
    def test_nonwhitespace_reconstruction(self, text):
        toks = tokenize(text)
        rebuilt = "".join(t.surface for t in toks)
        assert [c for c in rebuilt if not c.isspace()] == [
            c for c in text if not c.isspace()
        ]

    @given(st.text(max_size=200))
    def test_deterministic(self, text):
        a = tokenize(text)
        b = tokenize(text)
        assert [(t.surface, t.kind, t.start) for t in a] == [
            (t.surface, t.kind, t.start) for t in b
        ]


class TestSentences:
    def split(self, text, lex):
        toks = tokenize(text)
        return split_sentences(toks, text, lex.abbreviations)

    def test_two_sentences(self, lex):
        assert len(self.split("I know. They lie!", lex)) == 2

    def test_abbreviation_not_boundary(self, lex):
        assert len(self.split("e.g. this works", lex)) == 1

    def test_fragment_is_sentence(self, lex):
        assert len(self.split("no punctuation", lex)) == 1

    def test_dr_abbreviation(self, lex):
        assert len(self.split("Dr. Smith spoke. We listened.", lex)) == 2

    def test_newline_boundary(self, lex):
        assert len(self.split("first line\nsecond line", lex)) == 2

    def test_trailing_closers_absorbed(self, lex):
        spans = self.split('He said "go." Then left.', lex)
        assert len(spans) == 2

    def test_spans_partition_tokens(self, lex):
        text = "One. Two! Three? And... a tail"
        toks = tokenize(text)
        spans = split_sentences(toks, text, lex.abbreviations)
        covered = [i for a, b in spans for i in range(a, b)]
        assert covered == list(range(len(toks)))


class TestPosTag:
    def tags(self, text, lex):
        ann = annotate(text, lex)
        return [t.pos for t in ann.tokens]

    def test_det_noun_verb(self, lex):
        assert self.tags("The cat sleeps", lex) == ["DET", "NOUN", "VERB"]

    def test_reflexive_pronoun(self, lex):
        assert self.tags("himself", lex) == ["PRON"]

    def test_capitalized_mid_sentence_propn(self, lex):
        assert self.tags("Brussels hides this", lex) == ["PROPN", "VERB", "PRON"]

    def test_kind_driven_tags(self, lex):
        ann = annotate("see https://x.co/a @you #truth 42 !", lex)
        by_surface = {t.surface: t.pos for t in ann.tokens}
        assert by_surface["https://x.co/a"] == "X"
        assert by_surface["@you"] == "PROPN"
        assert by_surface["#truth"] == "NOUN"
        assert by_surface["42"] == "NUM"
        assert by_surface["!"] == "PUNCT"

    def test_suffix_fallbacks(self, lex):
        assert self.tags("zorgly zorging zorgous zorg", lex) == [
            "ADV",
            "VERB",
            "ADJ",
            "NOUN",
        ]

    def test_every_word_tagged(self, lex):
        ann = annotate("Wake up! They lie to us. #sheep @gov 42...", lex)
        assert all(t.pos for t in ann.tokens)
        puncts = [t for t in ann.tokens if t.kind == "punctuation"]
        assert all(t.pos == "PUNCT" for t in puncts)
        assert sum(t.pos == "PUNCT" for t in ann.tokens) == len(puncts)


class TestEntitiesChunks:
    def test_three_token_entity(self, lex):
        ann = annotate("New World Order controls", lex)
        assert len(ann.entities) == 1
        a, b = ann.entities[0]
        assert b - a == 3

    def test_no_propn_no_entities(self, lex):
        ann = annotate("they hide it", lex)
        assert ann.entities == []

    def test_mention_and_propn_entities(self, lex):
        ann = annotate("@who and NATO", lex)
        assert len(ann.entities) == 2

    def test_chunk_det_adj_noun(self, lex):
        ann = annotate("the hidden truth", lex)
        assert len(ann.noun_chunks) == 1
        a, b = ann.noun_chunks[0]
        assert b - a == 3

    def test_no_nominal_no_chunk(self, lex):
        ann = annotate("run quickly", lex)
        assert ann.noun_chunks == []

    def test_two_chunks(self, lex):
        ann = annotate("big pharma and deep state", lex)
        assert len(ann.noun_chunks) == 2

    def test_layers_do_not_self_overlap(self, lex):
        ann = annotate("NATO and Big Pharma hide the deep state truth. @cia knows.", lex)
        for layer in (ann.entities, ann.noun_chunks):
            seen = set()
            for a, b in layer:
                span = set(range(a, b))
                assert not span & seen
                seen |= span


class TestSyllables:
    @pytest.mark.parametrize(
        "word,expected",
        [
            ("cat", 1),
            ("table", 2),
            ("a", 1),
            ("the", 1),
            ("people", 2),
            ("whale", 1),
            ("conspiracy", 4),
            ("readability", 5),
            ("go", 1),
        ],
    )
    def test_known_words(self, word, expected):
        assert count_syllables(word) == expected

    @given(st.text(alphabet=string.ascii_letters, max_size=20))
    def test_at_least_one(self, word):
        assert count_syllables(word) >= 1


class TestLexiconData:
    def test_checksums_clean(self):
        assert verify_data() == []

    def test_counts_and_order(self, lex):
        assert len(lex.idioms) == 44
        assert lex.emotions == (
            "anger",
            "fear",
            "joy",
            "sadness",
            "disgust",
            "surprise",
            "anticipation",
            "trust",
        )
        assert lex.idioms[0] == "Behind closed doors"
        assert lex.idioms[43] == "We need to uncover their secrets"

    def test_emotion_words_single_membership(self, lex):
        assert lex.emotion_of["delighted"] == "joy"
        assert lex.emotion_of["hate"] == "anger"
        assert lex.emotion_of["disgusting"] == "disgust"
        assert lex.emotion_of["filth"] == "disgust"

    def test_annotation_determinism(self, lex):
        text = "Trust no one! They're hiding it. #wakeup @you\nNATO knows e.g. this."
        a = annotate(text, lex)
        b = annotate(text, lex)
        assert [(t.surface, t.kind, t.pos, t.sent_index) for t in a.tokens] == [
            (t.surface, t.kind, t.pos, t.sent_index) for t in b.tokens
        ]
        assert a.sentences == b.sentences
        assert a.entities == b.entities
        assert a.noun_chunks == b.noun_chunks
