"""Success certificates and reference simulators for block one-hot QAOA."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import ProblemInstance, PreconditionError, CapExceededError
from ._core import certify as _certify

__version__ = "0.1.0"


def load_instance(doc, cap=4096):
    """Build a ProblemInstance from a dict or a JSON string."""
    if not isinstance(doc, str):
        doc = _json.dumps(doc)
    return ProblemInstance.from_json(doc, cap)


def certify(instance_path, gamma, p, betas=(), epsilon=0.1, scope="all"):
    """Run the certify command; returns (certificate dict, exit code)."""
    text, code = _certify(str(instance_path), gamma, p, list(betas), epsilon, scope)
    return _json.loads(text), code
