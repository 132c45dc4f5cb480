"""Frozen feature schema: 124 base features x 7 statistics = 868 columns.

Base order: 8 emotions, 44 idioms (as idiom_01..idiom_44 in list order),
72 linguistic features. User columns are feature-major: all 7 statistics
of a base feature are adjacent, named "stat(feature)".
"""

import hashlib

from .lingfeat import GROUPS, LINGUISTIC_FEATURES
from .textnlp.lexicons import Lexicons, load_lexicons

STATS = ("mean", "median", "std", "min", "max", "q1", "q3")

N_EMOTIONS = 8
N_IDIOMS = 44
N_LINGUISTIC = 72
N_BASE = N_EMOTIONS + N_IDIOMS + N_LINGUISTIC
N_USER_COLUMNS = N_BASE * len(STATS)


def idiom_feature_names() -> list:
    return [f"idiom_{i:02d}" for i in range(1, N_IDIOMS + 1)]


def base_features(lex: Lexicons = None) -> list:
    if lex is None:
        lex = load_lexicons()
    return list(lex.emotions) + idiom_feature_names() + list(LINGUISTIC_FEATURES)


def base_feature_groups(lex: Lexicons = None) -> list:
    """(name, group) for each of the 124 base features."""
    if lex is None:
        lex = load_lexicons()
    rows = [(e, "emotion") for e in lex.emotions]
    rows += [(n, "idiom") for n in idiom_feature_names()]
    for group, names in GROUPS:
        rows += [(n, group) for n in names]
    return rows


def user_columns(lex: Lexicons = None) -> list:
    return [f"{stat}({feature})" for feature in base_features(lex) for stat in STATS]


def idiom_text_of(lex: Lexicons = None) -> dict:
    """idiom_NN -> verbatim idiom sentence."""
    if lex is None:
        lex = load_lexicons()
    return dict(zip(idiom_feature_names(), lex.idioms))


def schema_hash(lex: Lexicons = None) -> str:
    blob = "\n".join(user_columns(lex)).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


def render_schema(lex: Lexicons = None) -> str:
    """Human/machine-readable schema listing for the CLI schema command."""
    if lex is None:
        lex = load_lexicons()
    lines = [f"schema_hash\t{schema_hash(lex)}"]
    lines.append(f"base_features\t{N_BASE}")
    lines.append(f"user_columns\t{N_USER_COLUMNS}")
    for name, group in base_feature_groups(lex):
        lines.append(f"feature\t{name}\t{group}")
    idiom_texts = idiom_text_of(lex)
    for name, text in idiom_texts.items():
        lines.append(f"idiom_text\t{name}\t{text}")
    return "\n".join(lines) + "\n"
