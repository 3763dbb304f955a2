"""Exact Clifford algebras, quadratic forms and their invariants."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import run_suite_json as _run_suite_json


def run_suite(name, seed=0, jobs=1):
    """Run a named verification suite and return its report as a dict."""
    return _json.loads(_run_suite_json(name, seed, jobs))
