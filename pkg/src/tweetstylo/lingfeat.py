"""The 72 per-tweet linguistic style features.

Five groups: lexical (22), syntactical (20), semantic (16), structural
(5), subject-specific (9). avg_word_length is deliberately present in
both the lexical and structural groups and carries the same value in
each. All empty-denominator cases resolve to 0 so vectors stay finite.
"""

import math

from .textnlp.annotate import Annotation
from .textnlp.lexicons import Lexicons, load_lexicons
from .textnlp.syllables import count_syllables
from .textnlp.tokenizer import WORDLIKE

LEXICAL = (
    "num_words",
    "num_unique_words",
    "num_chars",
    "num_unique_chars",
    "avg_word_length",
    "num_stop_words",
    "num_punct",
    "num_digits",
    "num_upper_case_words",
    "num_lower_case_words",
    "num_title_case_words",
    "num_proper_nouns",
    "num_nouns",
    "num_verbs",
    "num_adjectives",
    "num_adverbs",
    "num_pronouns",
    "num_named_entities",
    "num_noun_chunks",
    "num_exclamation_marks",
    "num_question_marks",
    "num_spaces",
)

SYNTACTICAL = (
    "nominal_forms",
    "voc_rich",
    "num_sentences",
    "avg_num_words_per_sentence",
    "num_noun_phrases",
    "num_verb_phrases",
    "num_adj_phrases",
    "num_adv_phrases",
    "num_prep_phrases",
    "num_coord_conj",
    "num_subord_conj",
    "num_coord_clauses",
    "num_subord_clauses",
    "punctuation_freq",
    "num_capitalized_sentences",
    "num_caps_word_freq",
    "num_participial",
    "num_present_tense",
    "num_complementation",
    "num_relative_clause",
)

SEMANTIC = (
    "num_personal_pronouns",
    "num_impersonal_pronouns",
    "num_possessive_pronouns",
    "num_reflexive_pronouns",
    "num_reciprocal_pronouns",
    "num_quantifiers",
    "num_determiners",
    "num_prepositions",
    "num_aux_verbs",
    "num_modal_verbs",
    "num_negations",
    "num_synonym",
    "num_antonymy",
    "1st_person_pronouns",
    "2nd_person_pronouns",
    "num_passive_verbs",
)

STRUCTURAL = (
    "avg_sentence_length",
    "avg_word_length",
    "avg_noun_phrases_per_sentence",
    "avg_verbs_per_sentence",
    "proper_noun_ratio",
)

SUBJECT_SPECIFIC = (
    "flesch_reading_ease",
    "smog_index",
    "flesch_kincaid_grade",
    "coleman_liau_index",
    "automated_readability_index",
    "dale_chall_readability_score",
    "difficult_words",
    "linsear_write_formula",
    "gunning_fog",
)

GROUPS = (
    ("lexical", LEXICAL),
    ("syntactical", SYNTACTICAL),
    ("semantic", SEMANTIC),
    ("structural", STRUCTURAL),
    ("subject_specific", SUBJECT_SPECIFIC),
)

LINGUISTIC_FEATURES = LEXICAL + SYNTACTICAL + SEMANTIC + STRUCTURAL + SUBJECT_SPECIFIC

_BE_FORMS = frozenset({"be", "am", "is", "are", "was", "were", "been", "being"})
_RECIPROCAL_BIGRAMS = (("each", "other"), ("one", "another"))
_COMPLEMENTIZERS = frozenset({"that", "whether", "if"})
_VERBAL = ("VERB", "AUX")
_NOMINAL = ("NOUN", "PROPN")


def _ratio(num: float, den: float) -> float:
    return num / den if den else 0.0


def _runs(flags: list) -> int:
    count = 0
    prev = False
    for f in flags:
        if f and not prev:
            count += 1
        prev = f
    return count


def _easy_match(word: str, easy: frozenset) -> bool:
    if word in easy:
        return True
    if word.endswith("'s") and word[:-2] in easy:
        return True
    for suffix, repl in (
        ("ies", "y"),
        ("es", ""),
        ("s", ""),
        ("ing", ""),
        ("ing", "e"),
        ("ed", ""),
        ("ed", "e"),
    ):
        if word.endswith(suffix) and word[: len(word) - len(suffix)] + repl in easy:
            return True
    return False


def _is_participle(token, participles: frozenset) -> bool:
    if token.pos == "VERB" and token.lower.endswith(("ed", "en")):
        return True
    return token.lower in participles


def readability_indices(words: list, num_sentences: int, easy: frozenset) -> dict:
    """Nine standard readability formulas over bare word forms.

    Degenerate input (no words or no sentences) yields all zeros.
    """
    W = len(words)
    S = num_sentences
    out = dict.fromkeys(SUBJECT_SPECIFIC, 0.0)
    if W == 0 or S == 0:
        return out
    syllables = [count_syllables(w) for w in words]
    total_syll = sum(syllables)
    letters = sum(1 for w in words for c in w if c.isalnum())
    poly = sum(1 for s in syllables if s >= 3)
    wps = W / S
    spw = total_syll / W

    out["flesch_reading_ease"] = 206.835 - 1.015 * wps - 84.6 * spw
    out["flesch_kincaid_grade"] = 0.39 * wps + 11.8 * spw - 15.59
    out["smog_index"] = 1.0430 * math.sqrt(poly * 30.0 / S) + 3.1291
    out["coleman_liau_index"] = (
        0.0588 * (100.0 * letters / W) - 0.296 * (100.0 * S / W) - 15.8
    )
    out["automated_readability_index"] = 4.71 * (letters / W) + 0.5 * wps - 21.43

    lowers = [w.lower() for w in words]
    dale_difficult = sum(1 for w in lowers if not _easy_match(w, easy))
    pct_difficult = 100.0 * dale_difficult / W
    dale = 0.1579 * pct_difficult + 0.0496 * wps
    if pct_difficult > 5.0:
        dale += 3.6365
    out["dale_chall_readability_score"] = dale

    out["difficult_words"] = float(
        sum(
            1
            for w, s in zip(lowers, syllables)
            if s >= 3 and not _easy_match(w, easy)
        )
    )

    points = sum(1 if s <= 2 else 3 for s in syllables)
    r = points / S
    out["linsear_write_formula"] = r / 2.0 if r > 20 else r / 2.0 - 1.0

    out["gunning_fog"] = 0.4 * (wps + 100.0 * poly / W)
    return out


def extract_linguistic(ann: Annotation, lex: Lexicons = None) -> list:
    """Compute all 72 features; returns floats in LINGUISTIC_FEATURES order."""
    if lex is None:
        lex = load_lexicons()
    v = {}
    text = ann.text
    tokens = ann.tokens
    words = [t for t in tokens if t.kind in WORDLIKE]
    forms = [t.word_form for t in words]
    lowers = [t.lower for t in words]

    # lexical
    v["num_words"] = len(words)
    v["num_unique_words"] = len(set(lowers))
    v["num_chars"] = sum(1 for c in text if not c.isspace())
    v["num_unique_chars"] = len(set(text))
    v["avg_word_length"] = _ratio(sum(len(f) for f in forms), len(words))
    v["num_stop_words"] = sum(1 for w in lowers if w in lex.stopwords)
    v["num_punct"] = sum(1 for t in tokens if t.kind == "punctuation")
    v["num_digits"] = sum(1 for c in text if c.isdigit())
    v["num_upper_case_words"] = sum(1 for f in forms if len(f) >= 2 and f.isupper())
    v["num_lower_case_words"] = sum(1 for f in forms if f.islower())
    v["num_title_case_words"] = sum(1 for f in forms if f.istitle())
    v["num_proper_nouns"] = sum(1 for t in tokens if t.pos == "PROPN")
    v["num_nouns"] = sum(1 for t in tokens if t.pos == "NOUN")
    v["num_verbs"] = sum(1 for t in tokens if t.pos == "VERB")
    v["num_adjectives"] = sum(1 for t in tokens if t.pos == "ADJ")
    v["num_adverbs"] = sum(1 for t in tokens if t.pos == "ADV")
    v["num_pronouns"] = sum(1 for t in tokens if t.pos == "PRON")
    v["num_named_entities"] = len(ann.entities)
    v["num_noun_chunks"] = len(ann.noun_chunks)
    v["num_exclamation_marks"] = text.count("!")
    v["num_question_marks"] = text.count("?")
    v["num_spaces"] = sum(1 for c in text if c.isspace())

    # syntactical
    S = len(ann.sentences)
    v["nominal_forms"] = v["num_nouns"] + v["num_proper_nouns"]
    v["voc_rich"] = _ratio(v["num_unique_words"], v["num_words"])
    v["num_sentences"] = S
    v["avg_num_words_per_sentence"] = _ratio(v["num_words"], S)
    v["num_noun_phrases"] = len(ann.noun_chunks)
    v["num_verb_phrases"] = _runs([t.pos in _VERBAL for t in tokens])
    in_chunk = {i for a, b in ann.noun_chunks for i in range(a, b)}
    v["num_adj_phrases"] = _runs(
        [t.pos == "ADJ" and i not in in_chunk for i, t in enumerate(tokens)]
    )
    v["num_adv_phrases"] = _runs([t.pos == "ADV" for t in tokens])
    prep_phrases = 0
    coord_clauses = 0
    subord_clauses = 0
    relative_clauses = 0
    complementation = 0
    relatives = lex.semclass("relative")
    for a, b in ann.sentences:
        for i in range(a, b):
            tok = tokens[i]
            later = tokens[i + 1 : b]
            if tok.pos == "ADP" and any(t.pos in _NOMINAL or t.pos == "PRON" for t in later):
                prep_phrases += 1
            if tok.pos == "CCONJ":
                before = tokens[a:i]
                if any(t.pos in _VERBAL for t in before) and any(
                    t.pos in _VERBAL for t in later
                ):
                    coord_clauses += 1
            if tok.pos == "SCONJ" and any(t.pos in _VERBAL for t in later):
                subord_clauses += 1
            if tok.lower in relatives and any(t.pos in _VERBAL for t in later):
                relative_clauses += 1
            if tok.lower in _COMPLEMENTIZERS and i > a and tokens[i - 1].pos == "VERB":
                complementation += 1
    v["num_prep_phrases"] = prep_phrases
    v["num_coord_conj"] = sum(1 for t in tokens if t.pos == "CCONJ")
    v["num_subord_conj"] = sum(1 for t in tokens if t.pos == "SCONJ")
    v["num_coord_clauses"] = coord_clauses
    v["num_subord_clauses"] = subord_clauses
    v["punctuation_freq"] = _ratio(v["num_punct"], v["num_words"])
    capitalized = 0
    for a, b in ann.sentences:
        first = next((tokens[i] for i in range(a, b) if tokens[i].kind in WORDLIKE), None)
        if first is not None and first.word_form[:1].isupper():
            capitalized += 1
    v["num_capitalized_sentences"] = capitalized
    v["num_caps_word_freq"] = _ratio(v["num_upper_case_words"], v["num_words"])
    v["num_participial"] = sum(
        1 for t in tokens if t.pos == "VERB" and t.lower.endswith(("ing", "ed"))
    )
    v["num_present_tense"] = sum(
        1 for t in tokens if t.pos == "VERB" and not t.lower.endswith("ed")
    )
    v["num_complementation"] = complementation
    v["num_relative_clause"] = relative_clauses

    # semantic
    for feature, cls in (
        ("num_personal_pronouns", "personal"),
        ("num_impersonal_pronouns", "impersonal"),
        ("num_possessive_pronouns", "possessive"),
        ("num_reflexive_pronouns", "reflexive"),
        ("num_quantifiers", "quantifier"),
        ("num_modal_verbs", "modal"),
        ("num_negations", "negation"),
        ("1st_person_pronouns", "first_person"),
        ("2nd_person_pronouns", "second_person"),
    ):
        members = lex.semclass(cls)
        v[feature] = sum(1 for w in lowers if w in members)
    reciprocal = 0
    for i in range(len(words) - 1):
        if (lowers[i], lowers[i + 1]) in _RECIPROCAL_BIGRAMS:
            reciprocal += 1
    v["num_reciprocal_pronouns"] = reciprocal
    v["num_determiners"] = sum(1 for t in tokens if t.pos == "DET")
    v["num_prepositions"] = sum(1 for t in tokens if t.pos == "ADP")
    v["num_aux_verbs"] = sum(1 for t in tokens if t.pos == "AUX")
    present = set(lowers)
    for feature, partners in (
        ("num_synonym", lex.synonym_partners),
        ("num_antonymy", lex.antonym_partners),
    ):
        pairs = 0
        for w in present:
            mates = partners.get(w)
            if mates:
                pairs += len(mates & present)
        v[feature] = pairs // 2
    participles = lex.semclass("participle")
    passive = 0
    for a, b in ann.sentences:
        for i in range(a, b):
            if tokens[i].pos == "AUX" and tokens[i].lower in _BE_FORMS:
                window = tokens[i + 1 : min(i + 3, b)]
                if any(_is_participle(t, participles) for t in window):
                    passive += 1
    v["num_passive_verbs"] = passive

    # structural
    v["avg_sentence_length"] = _ratio(v["num_chars"], S)
    v["avg_noun_phrases_per_sentence"] = _ratio(v["num_noun_chunks"], S)
    v["avg_verbs_per_sentence"] = _ratio(v["num_verbs"], S)
    v["proper_noun_ratio"] = _ratio(v["num_proper_nouns"], v["num_words"])

    # subject-specific
    v.update(readability_indices(forms, S, lex.easy_words))

    return [float(v[name]) for name in LINGUISTIC_FEATURES]


def linguistic_schema() -> list:
    """(name, group) rows for all 72 columns, in output order."""
    rows = []
    for group, names in GROUPS:
        for name in names:
            rows.append((name, group))
    return rows
