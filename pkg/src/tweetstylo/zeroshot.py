"""Agreement scoring between tweets and emotion/idiom hypotheses.

Two pluggable backends: a deterministic builtin lexicon scorer for
offline runs, and a remote NLI entailment service. Scores are cached
content-addressed so expensive remote runs are resumable and reruns
are byte-stable.
"""

import hashlib
import re
from dataclasses import dataclass, field

from .textnlp.lexicons import Lexicons, load_lexicons

EMOTION_TEMPLATE = "This text expresses {}."

_CONTENT_TOKEN = re.compile(r"[a-z0-9']+")


def content_tokens(text: str) -> list:
    return _CONTENT_TOKEN.findall(text.lower().replace("’", "'"))


def _normalize(text: str) -> str:
    return " ".join(content_tokens(text))


def lexicon_entailment(premise: str, hypothesis: str, stopwords: frozenset) -> float:
    """Jaccard overlap of content tokens plus a substring bonus, capped at 1."""
    prem_tokens = [w for w in content_tokens(premise) if w not in stopwords]
    hyp_tokens = [w for w in content_tokens(hypothesis) if w not in stopwords]
    a, b = set(prem_tokens), set(hyp_tokens)
    union = a | b
    j = len(a & b) / len(union) if union else 0.0
    norm_hyp = _normalize(hypothesis)
    s = 1.0 if norm_hyp and norm_hyp in _normalize(premise) else 0.0
    return min(1.0, j + 0.5 * s)


def emotion_hits_score(premise: str, members: frozenset) -> float:
    hits = sum(1 for w in content_tokens(premise) if w in members)
    return min(1.0, hits / 4.0)


class BuiltinBackend:
    """Offline scorer: emotion lexicon hit-counts, idiom token overlap."""

    id = "builtin-lexicon/1"

    def __init__(self, lex: Lexicons = None):
        self.lex = lex or load_lexicons()
        self._emotion_by_template = {
            EMOTION_TEMPLATE.format(e): e for e in self.lex.emotions
        }
        self._members = {
            e: frozenset(
                w for w, emo in self.lex.emotion_of.items() if emo == e
            )
            for e in self.lex.emotions
        }

    def health_check(self) -> None:
        return None

    def score_batch(self, premise: str, hypotheses: list) -> list:
        out = []
        for hyp in hypotheses:
            emotion = self._emotion_by_template.get(hyp)
            if emotion is not None:
                out.append(emotion_hits_score(premise, self._members[emotion]))
            else:
                out.append(lexicon_entailment(premise, hyp, self.lex.stopwords))
        return out


class RemoteBackend:
    """Client for the HTTP entailment service (POST /v1/entail)."""

    def __init__(self, endpoint: str, batch_size: int = 52, timeout: float = 30.0,
                 attempts: int = 3, backoff: float = 0.5):
        self.endpoint = endpoint.rstrip("/")
        self.batch_size = batch_size
        self.timeout = timeout
        self.attempts = attempts
        self.backoff = backoff
        self.id = endpoint

    def health_check(self) -> None:
        import requests

        r = requests.get(f"{self.endpoint}/healthz", timeout=self.timeout)
        r.raise_for_status()
        try:
            meta = requests.get(f"{self.endpoint}/v1/meta", timeout=self.timeout)
            meta.raise_for_status()
            body = meta.json()
            self.id = f"{body['model_id']};{body['convention']}"
        except Exception:
            self.id = self.endpoint

    def _post(self, premise: str, hypotheses: list) -> list:
        import time

        import requests

        last_error = None
        for attempt in range(self.attempts):
            try:
                r = requests.post(
                    f"{self.endpoint}/v1/entail",
                    json={"premise": premise, "hypotheses": hypotheses},
                    timeout=self.timeout,
                )
                if r.status_code >= 500 or r.status_code == 429:
                    raise RuntimeError(f"server status {r.status_code}")
                r.raise_for_status()
                return [float(s) for s in r.json()["scores"]]
            except Exception as exc:
                last_error = exc
                if attempt + 1 < self.attempts:
                    time.sleep(self.backoff * (2**attempt))
        raise RuntimeError(f"entailment request failed after {self.attempts} attempts: {last_error}")

    def score_batch(self, premise: str, hypotheses: list) -> list:
        scores = []
        for i in range(0, len(hypotheses), self.batch_size):
            scores.extend(self._post(premise, hypotheses[i : i + self.batch_size]))
        return scores


class ScoreCache:
    """Append-only `hash<TAB>score` file; later writes win on reload."""

    def __init__(self, path=None):
        self.path = path
        self.table = {}
        self._fh = None
        if path is not None:
            try:
                with open(path, encoding="utf-8") as f:
                    for line in f:
                        line = line.strip()
                        if not line:
                            continue
                        key, score = line.split("\t")
                        self.table[key] = float(score)
            except FileNotFoundError:
                pass
            self._fh = open(path, "a", encoding="utf-8")

    @staticmethod
    def key(backend_id: str, premise: str, hypothesis: str) -> str:
        blob = "\x00".join((backend_id, premise, hypothesis)).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()

    def get(self, key: str):
        return self.table.get(key)

    def put(self, key: str, score: float) -> None:
        self.table[key] = score
        if self._fh is not None:
            # float repr round-trips exactly, keeping reruns byte-stable
            self._fh.write(f"{key}\t{score!r}\n")
            self._fh.flush()

    def close(self) -> None:
        if self._fh is not None:
            self._fh.close()
            self._fh = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


class CacheMissError(KeyError):
    """Strict-mode scoring hit hypotheses absent from the cache."""


@dataclass
class ScoringStats:
    scored: int = 0
    from_cache: int = 0
    failed: int = 0

    @property
    def failure_rate(self) -> float:
        total = self.scored + self.from_cache + self.failed
        return self.failed / total if total else 0.0


@dataclass
class AgreementVector:
    emotions: list = field(default_factory=list)
    idioms: list = field(default_factory=list)

    def combined(self) -> list:
        return list(self.emotions) + list(self.idioms)


def hypotheses_for(lex: Lexicons) -> list:
    """All 52 hypothesis strings: 8 emotion templates then 44 idioms."""
    return [EMOTION_TEMPLATE.format(e) for e in lex.emotions] + list(lex.idioms)


def score_tweet(
    text: str,
    backend,
    cache: ScoreCache = None,
    lex: Lexicons = None,
    stats: ScoringStats = None,
    strict: bool = False,
) -> AgreementVector:
    """Score one tweet against all 52 hypotheses, cache-first.

    With strict=True no backend call is made; cache misses raise
    CacheMissError (used by the featurize stage after a score stage).
    Empty premises score 0 everywhere by contract.
    """
    if lex is None:
        lex = load_lexicons()
    hyps = hypotheses_for(lex)
    if not text.strip():
        scores = [0.0] * len(hyps)
        return AgreementVector(emotions=scores[:8], idioms=scores[8:])
    scores = [None] * len(hyps)
    missing = []
    if cache is not None:
        for i, hyp in enumerate(hyps):
            hit = cache.get(ScoreCache.key(backend.id, text, hyp))
            if hit is None:
                missing.append(i)
            else:
                scores[i] = hit
                if stats is not None:
                    stats.from_cache += 1
    else:
        missing = list(range(len(hyps)))
    if missing:
        if strict:
            raise CacheMissError(
                f"{len(missing)} hypotheses not cached for tweet {text[:40]!r}"
            )
        try:
            fresh = backend.score_batch(text, [hyps[i] for i in missing])
        except Exception:
            fresh = [None] * len(missing)
        for i, score in zip(missing, fresh):
            if score is None:
                scores[i] = 0.0
                if stats is not None:
                    stats.failed += 1
                continue
            score = min(1.0, max(0.0, float(score)))
            scores[i] = score
            if stats is not None:
                stats.scored += 1
            if cache is not None:
                cache.put(ScoreCache.key(backend.id, text, hyps[i]), score)
    return AgreementVector(emotions=scores[:8], idioms=scores[8:])


def score_emotions(text: str, backend, lex: Lexicons = None) -> list:
    if lex is None:
        lex = load_lexicons()
    if not text.strip():
        return [0.0] * len(lex.emotions)
    hyps = [EMOTION_TEMPLATE.format(e) for e in lex.emotions]
    return [min(1.0, max(0.0, s)) for s in backend.score_batch(text, hyps)]


def score_idioms(text: str, backend, lex: Lexicons = None) -> list:
    if lex is None:
        lex = load_lexicons()
    if not text.strip():
        return [0.0] * len(lex.idioms)
    return [min(1.0, max(0.0, s)) for s in backend.score_batch(text, list(lex.idioms))]


def make_backend(kind: str, endpoint: str = "", batch_size: int = 52,
                 timeout: float = 30.0, lex: Lexicons = None):
    if kind == "builtin":
        return BuiltinBackend(lex)
    if kind == "remote":
        if not endpoint:
            raise ValueError("remote backend requires an endpoint")
        return RemoteBackend(endpoint, batch_size=batch_size, timeout=timeout)
    raise ValueError(f"unknown scorer backend {kind!r}")
