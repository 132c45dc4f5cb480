"""Bundled synthetic corpus: two groups with injected style differences.

One group leans on the idiom phrasebook (verbatim and paraphrased),
second-person pronouns, and heavy exclamation; the other writes bland
first-person updates. The separation is deliberately strong so the
smoke-test classifier has a wide margin, while still passing through
every preprocessing rule (a few retweets and non-English lines are mixed
in for the filters to remove).
"""

import json
from datetime import datetime, timedelta, timezone
from pathlib import Path

from .rng import SplitMix64, derive
from .textnlp.lexicons import load_lexicons

_EPOCH = datetime(2023, 1, 1, tzinfo=timezone.utc)

_CONSPIRACY_OPENERS = (
    "Wake up people",
    "They don't want you to know this",
    "Open your eyes",
    "The truth is right there",
    "Nothing is a coincidence",
    "Do your own research",
    "You are being played",
    "It was planned all along",
)

_CONSPIRACY_CLOSERS = (
    "Follow the money!",
    "Trust no one!!",
    "Question everything!",
    "The elites are lying to us!",
    "Stay angry and stay loud!",
    "Share before they delete this!",
    "We are the resistance!",
)

_CONTROL_TEMPLATES = (
    "I made {noun} for dinner and it turned out lovely",
    "Spent the morning reading about {noun} with my coffee",
    "My {noun} class went really well today",
    "We watched a documentary on {noun} last night",
    "I am planting {noun} in the garden this weekend",
    "Finished a long walk and now enjoying some {noun}",
    "My friend recommended a podcast about {noun}",
    "Grateful for a quiet evening of {noun} and tea",
    "I finally fixed the {noun} in the kitchen",
    "Looking forward to the {noun} festival next month",
)

_CONTROL_NOUNS = (
    "sourdough bread", "jazz piano", "watercolour painting", "trail running",
    "tomatoes", "photography", "pottery", "birdwatching", "chess", "cycling",
    "gardening", "astronomy", "knitting", "baking", "poetry",
)

_SPANISH_FILLERS = (
    "hola amigos espero que todo vaya muy bien hoy",
    "el tiempo esta muy bonito esta semana en la ciudad",
    "gracias a todos por los mensajes tan amables",
)


def _pick(rng: SplitMix64, items):
    return items[rng.randbelow(len(items))]


def _conspiracy_text(rng: SplitMix64, idioms: tuple) -> str:
    parts = [_pick(rng, _CONSPIRACY_OPENERS)]
    roll = rng.randbelow(10)
    if roll < 5:
        # verbatim idiom: the substring indicator fires
        parts.append(_pick(rng, idioms))
    elif roll < 8:
        # paraphrase built from idiom words: token overlap only
        words = _pick(rng, idioms).lower().replace("'", "").split()
        rng.shuffle(words)
        parts.append("so " + " ".join(words[: max(3, len(words) - 1)]))
    parts.append(_pick(rng, _CONSPIRACY_CLOSERS))
    text = "! ".join(parts)
    if rng.randbelow(2):
        text += " #WakeUp"
    if rng.randbelow(3) == 0:
        text += " @sheeple"
    return text


def _control_text(rng: SplitMix64) -> str:
    text = _pick(rng, _CONTROL_TEMPLATES).format(noun=_pick(rng, _CONTROL_NOUNS))
    if rng.randbelow(4) == 0:
        text += ". A good day"
    return text + "."


def _records_for_user(user_id: str, label: str, rng: SplitMix64,
                      idioms: tuple, tweets_per_user: int) -> list:
    records = []
    base = _EPOCH + timedelta(days=rng.randbelow(300))

    def record(i, text, lang="en", is_retweet=False):
        stamp = base + timedelta(hours=i, minutes=rng.randbelow(60))
        return {
            "tweet_id": f"{user_id}-{i:04d}",
            "user_id": user_id,
            "text": text,
            "lang": lang,
            "created_at": stamp.isoformat().replace("+00:00", "Z"),
            "is_retweet": is_retweet,
        }

    for i in range(tweets_per_user):
        if label == "conspiracy":
            text = _conspiracy_text(rng, idioms)
        else:
            text = _control_text(rng)
        records.append(record(i, text))
    # chaff for the preprocessing filters to strip
    records.append(record(tweets_per_user, "RT @someone: look at this", is_retweet=True))
    records.append(record(tweets_per_user + 1, _pick(rng, _SPANISH_FILLERS), lang="es"))
    return records


def generate_corpus(out_dir, seed: int = 0, users_per_group: int = 100,
                    tweets_per_user: int = 20) -> dict:
    """Write conspiracy.jsonl and control.jsonl; returns label -> path."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    idioms = load_lexicons().idioms
    paths = {}
    for label in ("conspiracy", "control"):
        path = out_dir / f"{label}.jsonl"
        lines = []
        for u in range(users_per_group):
            user_id = f"{label[:4]}{u:04d}"
            rng = derive(seed, f"synth:{label}:{u}")
            for rec in _records_for_user(user_id, label, rng, idioms, tweets_per_user):
                lines.append(json.dumps(rec, sort_keys=True))
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        paths[label] = path
    return paths
