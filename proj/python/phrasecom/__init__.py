"""Comparative phrase extraction: common and distinct phrases of two documents."""

from ._phrasecom import (
    Error,
    Index,
    InputError,
    LookupError,
    ParameterError,
    commonality,
    config_keys,
    distinction,
    lambda_bound,
    methods,
    prf,
)

__all__ = [
    "Error",
    "Index",
    "InputError",
    "LookupError",
    "ParameterError",
    "commonality",
    "config_keys",
    "distinction",
    "lambda_bound",
    "methods",
    "prf",
]
