"""One-stop annotation: tokenize, split, tag, detect entities and chunks."""

from dataclasses import dataclass, field

from .chunks import chunk_nouns, detect_entities
from .lexicons import Lexicons, load_lexicons
from .sentences import split_sentences
from .tagger import pos_tag
from .tokenizer import Token, tokenize


@dataclass
class Annotation:
    text: str
    tokens: list[Token] = field(default_factory=list)
    sentences: list[tuple[int, int]] = field(default_factory=list)
    entities: list[tuple[int, int]] = field(default_factory=list)
    noun_chunks: list[tuple[int, int]] = field(default_factory=list)


def annotate(text: str, lex: Lexicons = None) -> Annotation:
    if lex is None:
        lex = load_lexicons()
    tokens = tokenize(text)
    sentences = split_sentences(tokens, text, lex.abbreviations)
    pos_tag(tokens, sentences, lex)
    entities = detect_entities(tokens, sentences)
    chunks = chunk_nouns(tokens, sentences)
    return Annotation(
        text=text,
        tokens=tokens,
        sentences=sentences,
        entities=entities,
        noun_chunks=chunks,
    )
