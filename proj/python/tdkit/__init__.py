"""Python access to the tdkit core."""

import json as _json

from ._tdkit import (  # noqa: F401
    TdkitError,
    __version__,
    clean_comment,
    code_att,
    cohen_kappa,
    embed_tokens,
    entropy,
    example_f1,
    landis_koch_band,
    majority_vote,
    str_concat,
)
from . import _tdkit


def extract_source(repo, path, content):
    """Functions with grouped comments, as a list of dicts."""
    return _json.loads(_tdkit.extract_source(repo, path, content))


def evaluate(gold, pred, task):
    return _json.loads(_tdkit.evaluate(gold, pred, task))


def run_pipeline(config_path):
    """Runs every stage; returns the run summary."""
    return _json.loads(_tdkit.run_pipeline(str(config_path)))
