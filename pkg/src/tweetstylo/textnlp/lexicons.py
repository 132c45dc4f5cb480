"""Bundled lexicon loading.

All lexicons ship as versioned UTF-8 data files (`term<TAB>tag` per line)
with a sha256 checksum manifest. They are read once per process and
exposed through an immutable Lexicons bundle.
"""

import hashlib
import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

DATA_DIR = Path(__file__).resolve().parents[1] / "data"

# When a word is listed under several open-class tags, the first tag in
# this order wins. Closed-class entries always outrank these.
_TAG_PRIORITY = ("PROPN", "VERB", "NOUN", "ADJ", "ADV")

# Irregular verb forms folded into the frequency lexicon at load time.
# Explicit entries always win (e.g. "hidden" stays ADJ).
_IRREGULAR_VERB_FORMS = """went gone saw seen knew known told took taken got gotten came thought
found gave given kept felt brought began begun broke broken spoke spoken wrote written hid stood
understood met ran sang sung sank sunk drank drunk drove driven ate eaten fell fallen flew flown
forgot forgotten froze frozen grew grown heard held lay lain led lent lost made meant paid rode
ridden rang rung rose risen sat sold sent shook shaken shot showed shown slept spent stole stolen
stuck swore sworn taught tore torn threw thrown woke woken wore worn""".split()


def _read_pairs(path: Path) -> list:
    rows = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.rstrip("\n")
            if not line:
                continue
            a, b = line.split("\t")
            rows.append((a, b))
    return rows


def _expand_verb(w: str) -> list:
    forms = []
    if w.endswith(("s", "x", "z", "ch", "sh")):
        forms.append(w + "es")
    elif len(w) > 1 and w.endswith("y") and w[-2] not in "aeiou":
        forms.append(w[:-1] + "ies")
    else:
        forms.append(w + "s")
    if w.endswith("e") and not w.endswith("ee"):
        forms.append(w + "d")
        forms.append(w[:-1] + "ing")
    elif len(w) > 1 and w.endswith("y") and w[-2] not in "aeiou":
        forms.append(w[:-1] + "ied")
        forms.append(w + "ing")
    else:
        forms.append(w + "ed")
        forms.append(w + "ing")
    return forms


def _expand_noun(w: str) -> list:
    if w.endswith(("s", "x", "z", "ch", "sh")):
        return [w + "es"]
    if len(w) > 1 and w.endswith("y") and w[-2] not in "aeiou":
        return [w[:-1] + "ies"]
    return [w + "s"]


@dataclass(frozen=True)
class Lexicons:
    stopwords: frozenset
    closed_class: dict
    freq: dict
    semclasses: dict
    abbreviations: frozenset
    emotion_of: dict
    emotions: tuple
    idioms: tuple
    synonym_partners: dict
    antonym_partners: dict
    easy_words: frozenset

    def semclass(self, name: str) -> frozenset:
        return self.semclasses.get(name, frozenset())


def _build_freq(rows: list) -> dict:
    by_word = {}
    for w, tag in rows:
        by_word.setdefault(w, set()).add(tag)
    explicit = {}
    for w, tags in by_word.items():
        explicit[w] = next(t for t in _TAG_PRIORITY if t in tags)
    table = dict(explicit)
    for w, tag in explicit.items():
        derived = []
        if tag == "VERB":
            derived = _expand_verb(w)
        elif tag == "NOUN":
            derived = _expand_noun(w)
        for form in derived:
            if form not in explicit:
                prev = table.get(form)
                if prev is None or _TAG_PRIORITY.index(tag) < _TAG_PRIORITY.index(prev):
                    table[form] = tag
    for form in _IRREGULAR_VERB_FORMS:
        table.setdefault(form, "VERB")
    return table


def _build_partners(rows: list) -> dict:
    partners = {}
    for a, b in rows:
        partners.setdefault(a, set()).add(b)
        partners.setdefault(b, set()).add(a)
    return {w: frozenset(s) for w, s in partners.items()}


@lru_cache(maxsize=1)
def load_lexicons() -> Lexicons:
    stop = frozenset(w for w, _ in _read_pairs(DATA_DIR / "stopwords.tsv"))
    closed = dict(_read_pairs(DATA_DIR / "closed_class.tsv"))
    freq = _build_freq(_read_pairs(DATA_DIR / "freq_lexicon.tsv"))
    sem = {}
    for w, cls in _read_pairs(DATA_DIR / "semantic_classes.tsv"):
        sem.setdefault(cls, set()).add(w)
    sem = {cls: frozenset(ws) for cls, ws in sem.items()}
    abbrev = frozenset(w for w, _ in _read_pairs(DATA_DIR / "abbreviations.tsv"))
    emotion_of = dict(_read_pairs(DATA_DIR / "emotion_lexicon.tsv"))
    emotions = tuple((DATA_DIR / "emotions.txt").read_text(encoding="utf-8").split())
    idioms = tuple(
        line for line in (DATA_DIR / "idioms.txt").read_text(encoding="utf-8").splitlines() if line
    )
    syn = _build_partners(_read_pairs(DATA_DIR / "synonym_pairs.tsv"))
    ant = _build_partners(_read_pairs(DATA_DIR / "antonym_pairs.tsv"))
    easy = frozenset(w for w, _ in _read_pairs(DATA_DIR / "easy_words.tsv"))
    return Lexicons(
        stopwords=stop,
        closed_class=closed,
        freq=freq,
        semclasses=sem,
        abbreviations=abbrev,
        emotion_of=emotion_of,
        emotions=emotions,
        idioms=idioms,
        synonym_partners=syn,
        antonym_partners=ant,
        easy_words=easy,
    )


def verify_data() -> list:
    """Recompute data-file checksums against the manifest; return mismatches."""
    with open(DATA_DIR / "manifest.json", encoding="utf-8") as f:
        manifest = json.load(f)
    problems = []
    for name, expected in sorted(manifest["files"].items()):
        path = DATA_DIR / name
        if not path.exists():
            problems.append(f"{name}: missing")
            continue
        actual = hashlib.sha256(path.read_bytes()).hexdigest()
        if actual != expected:
            problems.append(f"{name}: checksum mismatch")
    return problems
