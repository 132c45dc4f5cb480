"""Deterministic rule/lexicon text annotator: tokens, sentences, POS, entities, chunks."""

from .annotate import Annotation, annotate
from .chunks import chunk_nouns, detect_entities
from .lexicons import Lexicons, load_lexicons
from .sentences import split_sentences
from .syllables import count_syllables
from .tagger import pos_tag
from .tokenizer import Token, tokenize

__all__ = [
    "Annotation",
    "Lexicons",
    "Token",
    "annotate",
    "chunk_nouns",
    "count_syllables",
    "detect_entities",
    "load_lexicons",
    "pos_tag",
    "split_sentences",
    "tokenize",
]
