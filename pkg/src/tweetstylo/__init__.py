"""Stylometric user-profiling pipeline for short social-media texts.

Batch pipeline that turns raw tweet dumps into per-user feature matrices
(emotion/idiom agreement scores plus linguistic style features), trains
native classifiers on them, and explains the trained models.
"""

__version__ = "0.1.0"
