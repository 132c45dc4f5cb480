"""Sentence boundary detection over the token stream."""

from .tokenizer import PUNCTUATION, WORD, Token

TERMINATORS = frozenset({".", "!", "?", "…", "..."})
# Punctuation allowed to trail a terminator inside the same sentence.
CLOSERS = frozenset({'"', "'", ")", "]", "}", "”", "’", "»"})


def split_sentences(tokens: list[Token], text: str, abbreviations: frozenset) -> list[tuple[int, int]]:
    """Return half-open (start, end) token spans, one per sentence.

    Boundaries fall after terminator punctuation (with trailing closers
    absorbed) and after tokens followed by a newline in the raw text. A
    period following a known abbreviation does not terminate. A final
    unterminated fragment is its own sentence.
    """
    spans = []
    n = len(tokens)
    start = 0
    i = 0
    while i < n:
        tok = tokens[i]
        boundary_at = -1
        if tok.kind == PUNCTUATION and tok.surface in TERMINATORS:
            is_abbrev_period = (
                tok.surface == "."
                and i > 0
                and tokens[i - 1].kind == WORD
                and tokens[i - 1].lower in abbreviations
            )
            if not is_abbrev_period:
                j = i
                while (
                    j + 1 < n
                    and tokens[j + 1].kind == PUNCTUATION
                    and tokens[j + 1].surface in TERMINATORS | CLOSERS
                ):
                    j += 1
                boundary_at = j
        if boundary_at < 0 and i + 1 < n and "\n" in text[tok.end : tokens[i + 1].start]:
            boundary_at = i
        if boundary_at >= 0:
            spans.append((start, boundary_at + 1))
            start = boundary_at + 1
            i = boundary_at + 1
        else:
            i += 1
    if start < n:
        spans.append((start, n))
    for si, (a, b) in enumerate(spans):
        for t in tokens[a:b]:
            t.sent_index = si
    return spans
