"""Rule-table tweet tokenizer.

Splits raw text into typed tokens (word, punctuation, number, hashtag,
mention, url, other) while preserving character offsets. Every
non-whitespace character of the input lands in exactly one token.
"""

import re
from dataclasses import dataclass

WORD = "word"
PUNCTUATION = "punctuation"
NUMBER = "number"
HASHTAG = "hashtag"
MENTION = "mention"
URL = "url"
OTHER = "other"

KINDS = frozenset({WORD, PUNCTUATION, NUMBER, HASHTAG, MENTION, URL, OTHER})

# Kinds that behave as words for counting purposes (content-bearing).
WORDLIKE = frozenset({WORD, HASHTAG, MENTION})

_MASTER = re.compile(
    r"""
    (?P<url>https?://\S+|www\.\S+)
  | (?P<mention>@[A-Za-z0-9_]+)
  | (?P<hashtag>\#[A-Za-z0-9_]+)
  | (?P<acronym>(?:[A-Za-z]\.){2,})
  | (?P<number>\d+(?:[.,:]\d+)*%?)
  | (?P<word>[A-Za-z]+(?:['’-][A-Za-z]+)*)
  | (?P<ellipsis>\.{3}|…)
  | (?P<punct>[.,!?;:"'()\[\]{}<>/\\&*+=|~`^_%$#@‘’“”«»–—-])
  | (?P<other>\S)
    """,
    re.VERBOSE,
)

_GROUP_KIND = {
    "url": URL,
    "mention": MENTION,
    "hashtag": HASHTAG,
    "acronym": WORD,
    "number": NUMBER,
    "word": WORD,
    "ellipsis": PUNCTUATION,
    "punct": PUNCTUATION,
    "other": OTHER,
}


@dataclass
class Token:
    surface: str
    lower: str
    kind: str
    start: int
    pos: str = ""
    sent_index: int = -1
    tok_index: int = -1

    @property
    def end(self) -> int:
        return self.start + len(self.surface)

    @property
    def word_form(self) -> str:
        """Bare word content: hashtag/mention markers stripped."""
        if self.kind in (HASHTAG, MENTION):
            return self.surface[1:]
        return self.surface


def _lower(surface: str, kind: str) -> str:
    if kind in (HASHTAG, MENTION):
        surface = surface[1:]
    return surface.lower().replace("’", "'")


def tokenize(text: str) -> list[Token]:
    tokens = []
    for i, m in enumerate(_MASTER.finditer(text)):
        kind = _GROUP_KIND[m.lastgroup]
        surface = m.group()
        tokens.append(
            Token(
                surface=surface,
                lower=_lower(surface, kind),
                kind=kind,
                start=m.start(),
                tok_index=i,
            )
        )
    return tokens
