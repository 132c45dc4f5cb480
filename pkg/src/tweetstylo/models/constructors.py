"""Mapping from a ModelSpec to estimator constructor arguments."""

from .base import ModelSpec

# Families whose constructor takes the spec seed.
_SEEDED = frozenset({"random_forest"})


def construct_kwargs(spec: ModelSpec) -> dict:
    kwargs = dict(spec.hyperparameters)
    if spec.family in _SEEDED:
        kwargs["seed"] = spec.seed
    return kwargs


def construct(spec: ModelSpec):
    from .artifact import _estimator_class

    return _estimator_class(spec.family)(**construct_kwargs(spec))
