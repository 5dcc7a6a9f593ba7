"""Orbital boundary labeling: exact solvers for circular-arc labels tied to
interior features by orbital-radial leaders.

The heavy lifting happens in the compiled extension ``orbitallab._core``;
structured data crosses the boundary as JSON documents in the same schema the
``orbital`` command-line tool uses.  This wrapper decodes them into plain
dictionaries for convenience.
"""

from __future__ import annotations

import json
from typing import Any

from . import _core

__version__ = _core.__version__

__all__ = [
    "solve",
    "validate",
    "oracle",
    "render",
    "generate_random",
    "generate_partition",
    "__version__",
]


def _as_document(instance: Any) -> str:
    """Accept either a JSON string or a decoded dict."""
    if isinstance(instance, str):
        return instance
    return json.dumps(instance)


def _decode_bundle(result: dict) -> dict:
    if result.get("bundle") is not None:
        result["bundle"] = json.loads(result["bundle"])
    return result


def solve(instance, *, lenient: bool = False, tolerance: float = -1.0,
          variant: str = "") -> dict:
    """Solve an instance.

    Returns a dict with ``status`` ("optimal", "infeasible" or
    "unsupported"), ``objective``, ``bundle`` (the decoded labeling bundle,
    or ``None``), ``message`` and ``notes``.
    """
    result = _core.solve(_as_document(instance), lenient=lenient,
                         tolerance=tolerance, variant=variant)
    return _decode_bundle(result)


def validate(document, *, instance=None, lenient: bool = False,
             tolerance: float = -1.0) -> dict:
    """Check a labeling bundle (or a bare labeling plus its instance).

    Returns a dict with ``ok``, ``violations`` (list of ``(code, message)``
    pairs), ``notes`` and ``objective``.
    """
    instance_json = "" if instance is None else _as_document(instance)
    return _core.validate(_as_document(document), instance_json=instance_json,
                          lenient=lenient, tolerance=tolerance)


def oracle(instance, *, grid: int = 0, lenient: bool = False,
           tolerance: float = -1.0, variant: str = "") -> dict:
    """Exhaustive reference solve for small instances (at most 8 features)."""
    result = _core.oracle(_as_document(instance), grid=grid, lenient=lenient,
                          tolerance=tolerance, variant=variant)
    return _decode_bundle(result)


def render(document, *, witness: bool = False, size: float = 0.0,
           lenient: bool = False, tolerance: float = -1.0) -> str:
    """Render an instance or bundle as an SVG string."""
    return _core.render(_as_document(document), witness=witness, size=size,
                        lenient=lenient, tolerance=tolerance)


def generate_random(seed: int, n: int, *, variant: str = "") -> dict:
    """Generate a random instance with ``n`` features; deterministic in ``seed``."""
    return json.loads(_core.generate_random(seed, n, variant=variant))


def generate_partition(xs, *, free_ratio: bool = False) -> dict:
    """Build the equal-split decision gadget for positive integers ``xs``.

    Returns a dict with the decoded ``instance``, the decision ``threshold``
    (optimal total leader length is below it iff ``xs`` splits into two
    halves of equal sum), ``circumference`` and ``sum``.
    """
    result = _core.generate_partition(list(xs), free_ratio=free_ratio)
    result["instance"] = json.loads(result["instance"])
    return result
