"""Lexicon + suffix POS tagger.

Word tokens resolve through: closed-class lexicon, then a
capitalization rule (title-case words that do not open the sentence
become PROPN), then the open-class frequency lexicon, then suffix
rules. Non-word kinds map directly (mentions act as proper nouns).
"""

from .lexicons import Lexicons
from .tokenizer import HASHTAG, MENTION, NUMBER, OTHER, PUNCTUATION, URL, WORD, Token

_KIND_TAGS = {
    PUNCTUATION: "PUNCT",
    NUMBER: "NUM",
    URL: "X",
    MENTION: "PROPN",
    OTHER: "SYM",
}


def _suffix_tag(lower: str) -> str:
    if lower.endswith("ly"):
        return "ADV"
    if lower.endswith(("ing", "ed")):
        return "VERB"
    if lower.endswith(("ous", "ful", "ive")):
        return "ADJ"
    return "NOUN"


def _word_tag(lower: str, lex: Lexicons) -> str:
    tag = lex.closed_class.get(lower)
    if tag is not None:
        return tag
    tag = lex.freq.get(lower)
    if tag is not None:
        return tag
    return _suffix_tag(lower)


def pos_tag(tokens: list[Token], sentences: list[tuple[int, int]], lex: Lexicons) -> list[Token]:
    for a, b in sentences:
        initial = next((i for i in range(a, b) if tokens[i].kind == WORD), -1)
        for i in range(a, b):
            tok = tokens[i]
            direct = _KIND_TAGS.get(tok.kind)
            if direct is not None:
                tok.pos = direct
                continue
            if tok.kind == HASHTAG:
                tok.pos = _word_tag(tok.lower, lex)
                continue
            if tok.lower in lex.closed_class:
                tok.pos = lex.closed_class[tok.lower]
            elif tok.surface.istitle() and i != initial:
                tok.pos = "PROPN"
            else:
                tag = lex.freq.get(tok.lower)
                tok.pos = tag if tag is not None else _suffix_tag(tok.lower)
        # Title-case run extension: a title-case sentence opener followed
        # by a PROPN joins the name ("New World Order ..." -> 3 PROPN).
        if (
            initial >= 0
            and tokens[initial].surface.istitle()
            and tokens[initial].lower not in lex.closed_class
            and initial + 1 < b
            and tokens[initial + 1].kind == WORD
            and tokens[initial + 1].pos == "PROPN"
        ):
            tokens[initial].pos = "PROPN"
    return tokens
