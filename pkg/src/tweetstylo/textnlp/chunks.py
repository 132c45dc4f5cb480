"""Entity spans (PROPN runs, mentions) and noun chunks (DET? ADJ* N+)."""

from .tokenizer import MENTION, Token

_NOMINAL = ("NOUN", "PROPN")


def detect_entities(tokens: list[Token], sentences: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Maximal PROPN runs within a sentence; mention tokens stand alone."""
    spans = []
    for a, b in sentences:
        i = a
        while i < b:
            if tokens[i].pos != "PROPN":
                i += 1
                continue
            if tokens[i].kind == MENTION:
                spans.append((i, i + 1))
                i += 1
                continue
            j = i
            while j + 1 < b and tokens[j + 1].pos == "PROPN" and tokens[j + 1].kind != MENTION:
                j += 1
            spans.append((i, j + 1))
            i = j + 1
    return spans


def chunk_nouns(tokens: list[Token], sentences: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Longest non-overlapping DET? ADJ* (NOUN|PROPN)+ matches, left to right."""
    spans = []
    for a, b in sentences:
        i = a
        while i < b:
            j = i
            if j < b and tokens[j].pos == "DET":
                j += 1
            while j < b and tokens[j].pos == "ADJ":
                j += 1
            head_start = j
            while j < b and tokens[j].pos in _NOMINAL:
                j += 1
            if j > head_start:
                spans.append((i, j))
                i = j
            else:
                i += 1
    return spans
