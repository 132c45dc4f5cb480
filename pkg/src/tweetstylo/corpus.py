"""Raw tweet ingestion, preprocessing, and class balancing.

Input is UTF-8 line-delimited JSON, one record per line with keys
tweet_id, user_id, text, lang, created_at (RFC 3339), is_retweet.
Preprocessing is order-fixed: retweet removal, English filter,
newest-100 cap, minimum-10 rejection.
"""

import json
import re
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .rng import derive
from .textnlp.lexicons import load_lexicons

CONSPIRACY = "conspiracy"
CONTROL = "control"
LABELS = (CONSPIRACY, CONTROL)

DEFAULT_MIN_TWEETS = 10
DEFAULT_CAP = 100

_HEURISTIC_WORD = re.compile(r"[a-z']+")


class SchemaError(ValueError):
    """Input file deviates from the record schema beyond tolerance."""


@dataclass(frozen=True)
class Tweet:
    tweet_id: str
    user_id: str
    text: str
    lang: str
    created_at: datetime
    is_retweet: bool


@dataclass
class UserTimeline:
    user_id: str
    label: str
    tweets: list[Tweet]


@dataclass
class PreprocessSummary:
    users_in: int = 0
    users_kept: int = 0
    users_rejected: int = 0
    retweets_removed: int = 0
    non_english_removed: int = 0
    truncated_tweets: int = 0
    tweets_kept: int = 0
    per_label_kept: dict = field(default_factory=dict)

    def render(self) -> str:
        lines = [
            "preprocessing summary",
            f"  users in: {self.users_in}",
            f"  users kept: {self.users_kept}",
            f"  users rejected (<{DEFAULT_MIN_TWEETS} tweets): {self.users_rejected}",
            f"  retweets removed: {self.retweets_removed}",
            f"  non-English tweets removed: {self.non_english_removed}",
            f"  tweets dropped by newest-cap: {self.truncated_tweets}",
            f"  tweets kept: {self.tweets_kept}",
        ]
        for label in sorted(self.per_label_kept):
            lines.append(f"  users kept ({label}): {self.per_label_kept[label]}")
        return "\n".join(lines) + "\n"


def _parse_created_at(raw: str) -> datetime:
    s = raw.strip()
    if s.endswith(("Z", "z")):
        s = s[:-1] + "+00:00"
    dt = datetime.fromisoformat(s)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


def _parse_record(obj: dict) -> Tweet:
    tweet_id = obj["tweet_id"]
    user_id = obj["user_id"]
    text = obj["text"]
    if not isinstance(tweet_id, str) or not tweet_id:
        raise ValueError("tweet_id must be a non-empty string")
    if not isinstance(user_id, str) or not user_id:
        raise ValueError("user_id must be a non-empty string")
    if not isinstance(text, str) or not text:
        raise ValueError("text must be a non-empty string")
    created = _parse_created_at(str(obj["created_at"]))
    return Tweet(
        tweet_id=tweet_id,
        user_id=user_id,
        text=text,
        lang=str(obj.get("lang") or ""),
        created_at=created,
        is_retweet=bool(obj.get("is_retweet", False)),
    )


def load_tweets(path, label: str, stats: dict = None) -> list[UserTimeline]:
    """Group records by user, newest first. Raises SchemaError when more
    than 10% of non-empty lines are malformed."""
    if label not in LABELS:
        raise ValueError(f"unknown label {label!r}")
    by_user = {}
    bad_lines = []
    total = 0
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            total += 1
            try:
                tweet = _parse_record(json.loads(line))
            except (ValueError, KeyError, TypeError):
                bad_lines.append(lineno)
                continue
            by_user.setdefault(tweet.user_id, []).append(tweet)
    if total and len(bad_lines) / total > 0.10:
        shown = ", ".join(map(str, bad_lines[:20]))
        raise SchemaError(
            f"{len(bad_lines)}/{total} malformed lines in {path} (lines {shown})"
        )
    if stats is not None:
        stats["total_lines"] = total
        stats["malformed_lines"] = bad_lines
    timelines = []
    for user_id in sorted(by_user):
        tweets = sorted(
            by_user[user_id], key=lambda t: (t.created_at, t.tweet_id), reverse=True
        )
        timelines.append(UserTimeline(user_id=user_id, label=label, tweets=tweets))
    return timelines


def looks_english(text: str, stopwords: frozenset) -> bool:
    words = _HEURISTIC_WORD.findall(text.lower())
    if not words:
        return False
    hits = [w for w in words if w in stopwords]
    return len(set(hits)) >= 2 or len(hits) / len(words) >= 0.08


def _passes_language(tweet: Tweet, stopwords: frozenset) -> bool:
    if tweet.lang:
        return tweet.lang.lower() == "en"
    return looks_english(tweet.text, stopwords)


def _is_retweet(tweet: Tweet) -> bool:
    return tweet.is_retweet or tweet.text.startswith("RT @")


def preprocess_timeline(
    timeline: UserTimeline,
    min_tweets: int = DEFAULT_MIN_TWEETS,
    cap: int = DEFAULT_CAP,
    summary: PreprocessSummary = None,
) -> UserTimeline:
    """Apply the fixed filter order; return None when the user is rejected."""
    stopwords = load_lexicons().stopwords
    kept = [t for t in timeline.tweets if not _is_retweet(t)]
    removed_rt = len(timeline.tweets) - len(kept)
    survivors = [t for t in kept if _passes_language(t, stopwords)]
    removed_lang = len(kept) - len(survivors)
    truncated = max(0, len(survivors) - cap)
    survivors = survivors[:cap]
    if summary is not None:
        summary.retweets_removed += removed_rt
        summary.non_english_removed += removed_lang
        summary.truncated_tweets += truncated
    if len(survivors) < min_tweets:
        return None
    return UserTimeline(user_id=timeline.user_id, label=timeline.label, tweets=survivors)


def preprocess_all(
    timelines: list[UserTimeline],
    min_tweets: int = DEFAULT_MIN_TWEETS,
    cap: int = DEFAULT_CAP,
) -> tuple[list[UserTimeline], PreprocessSummary]:
    summary = PreprocessSummary(users_in=len(timelines))
    kept = []
    for t in timelines:
        out = preprocess_timeline(t, min_tweets=min_tweets, cap=cap, summary=summary)
        if out is None:
            summary.users_rejected += 1
        else:
            kept.append(out)
    summary.users_kept = len(kept)
    summary.tweets_kept = sum(len(t.tweets) for t in kept)
    for t in kept:
        summary.per_label_kept[t.label] = summary.per_label_kept.get(t.label, 0) + 1
    return kept, summary


def balance_dataset(timelines: list[UserTimeline], seed: int) -> list[UserTimeline]:
    """Randomly undersample the majority class to the minority count."""
    groups = {label: [t for t in timelines if t.label == label] for label in LABELS}
    for label, group in groups.items():
        if not group:
            raise ValueError(f"cannot balance: no users with label {label!r}")
    target = min(len(g) for g in groups.values())
    out = []
    for label in LABELS:
        group = groups[label]
        if len(group) == target:
            out.extend(group)
            continue
        rng = derive(seed, f"balance:{label}")
        chosen = sorted(rng.sample_indices(len(group), target))
        out.extend(group[i] for i in chosen)
    return out


def tweet_to_record(tweet: Tweet, label: str = None) -> dict:
    rec = {
        "tweet_id": tweet.tweet_id,
        "user_id": tweet.user_id,
        "text": tweet.text,
        "lang": tweet.lang,
        "created_at": tweet.created_at.isoformat().replace("+00:00", "Z"),
        "is_retweet": tweet.is_retweet,
    }
    if label is not None:
        rec["label"] = label
    return rec


def write_timelines(path, timelines: list[UserTimeline]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for timeline in timelines:
            for tweet in timeline.tweets:
                f.write(json.dumps(tweet_to_record(tweet, timeline.label), sort_keys=True))
                f.write("\n")


def read_timelines(path) -> list[UserTimeline]:
    """Read back a labeled file produced by write_timelines."""
    by_user = {}
    labels = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            tweet = _parse_record(obj)
            by_user.setdefault(tweet.user_id, []).append(tweet)
            labels[tweet.user_id] = obj["label"]
    timelines = []
    for user_id in sorted(by_user):
        tweets = sorted(
            by_user[user_id], key=lambda t: (t.created_at, t.tweet_id), reverse=True
        )
        timelines.append(
            UserTimeline(user_id=user_id, label=labels[user_id], tweets=tweets)
        )
    return timelines
