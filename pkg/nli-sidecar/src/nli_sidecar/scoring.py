"""Entailment scorers behind one interface.

Both scorers take a premise and a list of hypothesis sentences and return
one score per hypothesis: the entailment probability renormalized over
{entailment, contradiction}, neutral excluded. The transformer scorer
wraps any MNLI-style sequence-classification model; the offline scorer is
a deterministic lexical fallback so the service (and its contract tests)
work on machines without model weights.
"""

import re
import warnings

CONVENTION = "entailment/(entailment+contradiction)"

_WORD = re.compile(r"[a-z0-9']+")

_STOPWORDS = frozenset(
    """a an the this that these those there here is are was were be been being
    am do does did done has have had i you he she it we they me him her us
    them my your his its our their to of in on at by for from with about as
    and or but not no nor so if then than very really just text expresses""".split()
)

# compact evocation lexicon: enough to bridge plain statements to the
# eight basic-emotion labels without any model weights
_EMOTION_WORDS = {
    "anger": ("anger", "angry", "furious", "rage", "outraged", "mad",
              "irritated", "annoyed", "hate", "hostile", "resent"),
    "fear": ("fear", "afraid", "scared", "terrified", "frightened", "panic",
             "anxious", "worried", "dread", "horror", "alarmed"),
    "joy": ("joy", "joyful", "happy", "delighted", "glad", "cheerful",
            "pleased", "thrilled", "wonderful", "love", "enjoy", "excited"),
    "sadness": ("sadness", "sad", "unhappy", "miserable", "depressed",
                "grief", "sorrow", "crying", "heartbroken", "gloomy"),
    "disgust": ("disgust", "disgusted", "disgusting", "gross", "revolting",
                "sickening", "repulsive", "vile", "nasty"),
    "surprise": ("surprise", "surprised", "astonished", "amazed", "shocked",
                 "stunned", "unexpected", "sudden"),
    "anticipation": ("anticipation", "anticipate", "expect", "expecting",
                     "await", "eager", "hope", "hoping", "looking", "soon"),
    "trust": ("trust", "trusted", "reliable", "faith", "confident",
              "believe", "honest", "loyal", "dependable"),
}

# Plutchik opposites; evidence for one side counts against the other
_OPPOSITE = {
    "joy": "sadness", "sadness": "joy",
    "anger": "fear", "fear": "anger",
    "trust": "disgust", "disgust": "trust",
    "surprise": "anticipation", "anticipation": "surprise",
}

_EMOTION_OF = {}
for _emo, _words in _EMOTION_WORDS.items():
    for _w in _words:
        _EMOTION_OF.setdefault(_w, set()).add(_emo)


def _content(text: str) -> list:
    return [w for w in _WORD.findall(text.lower()) if w not in _STOPWORDS]


class OfflineLexiconScorer:
    """Deterministic fallback: token overlap plus emotion-word bridging."""

    model_id = "offline-lexicon/1"

    def score_pairs(self, premise: str, hypotheses: list) -> list:
        prem = _content(premise)
        prem_set = set(prem)
        prem_emotions = set()
        for w in prem:
            prem_emotions |= _EMOTION_OF.get(w, set())
        out = []
        for hyp in hypotheses:
            hyp_tokens = _content(hyp)
            hyp_set = set(hyp_tokens)
            union = prem_set | hyp_set
            overlap = len(prem_set & hyp_set) / len(union) if union else 0.0
            hyp_emotions = set()
            for w in hyp_tokens:
                hyp_emotions |= _EMOTION_OF.get(w, set())
            bridge_hits = sum(
                1 for w in prem_set if _EMOTION_OF.get(w, set()) & hyp_emotions
            )
            bridge = min(1.0, bridge_hits / 2.0)
            opposite_hits = sum(
                1
                for w in prem_set
                for emo in _EMOTION_OF.get(w, set())
                if _OPPOSITE.get(emo) in hyp_emotions
            )
            entail = 0.05 + 0.9 * min(1.0, overlap + 0.75 * bridge)
            contra = 0.05 + 0.9 * min(1.0, 0.5 * opposite_hits)
            out.append(entail / (entail + contra))
        return out


class TransformersScorer:
    """MNLI-style sequence-classification model, evaluation mode, CPU ok."""

    def __init__(self, model_ref: str, max_length: int = 256):
        import torch
        from transformers import (
            AutoModelForSequenceClassification,
            AutoTokenizer,
        )

        self._torch = torch
        self.tokenizer = AutoTokenizer.from_pretrained(model_ref)
        self.model = AutoModelForSequenceClassification.from_pretrained(model_ref)
        self.model.eval()
        self.max_length = max_length
        self.model_id = model_ref
        labels = {
            name.lower(): idx
            for idx, name in self.model.config.id2label.items()
        }
        self._entail_idx = next(
            idx for name, idx in labels.items() if "entail" in name
        )
        self._contra_idx = next(
            idx for name, idx in labels.items() if "contra" in name
        )

    def score_pairs(self, premise: str, hypotheses: list) -> list:
        enc = self.tokenizer(
            [premise] * len(hypotheses),
            hypotheses,
            truncation=True,
            max_length=self.max_length,
            padding=True,
            return_tensors="pt",
        )
        with self._torch.no_grad():
            logits = self.model(**enc).logits
        pair = logits[:, [self._entail_idx, self._contra_idx]]
        probs = self._torch.softmax(pair, dim=1)[:, 0]
        return [float(p) for p in probs]


def pick_scorer(model_ref: str = None):
    """Transformer when a loadable model is named, lexical fallback otherwise."""
    if model_ref:
        try:
            return TransformersScorer(model_ref)
        except Exception as exc:
            warnings.warn(
                f"could not load model {model_ref!r} ({exc}); "
                "falling back to the offline lexicon scorer"
            )
    return OfflineLexiconScorer()
