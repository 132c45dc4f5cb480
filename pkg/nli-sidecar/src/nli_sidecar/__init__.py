from .app import create_app
from .scoring import CONVENTION, OfflineLexiconScorer, pick_scorer

__all__ = ["CONVENTION", "OfflineLexiconScorer", "create_app", "pick_scorer"]
