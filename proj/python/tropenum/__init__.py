"""Python access to the tropenum library. Every call returns the same JSON
document the command line tool prints, parsed into Python objects."""

import json
from fractions import Fraction

from . import _tropenum
from ._tropenum import DomainError, GenericityError, InvariantError, ParseError, PreconditionError

__all__ = [
    "count", "scatter", "potential", "disks", "render",
    "DomainError", "GenericityError", "InvariantError", "ParseError", "PreconditionError",
]


def _q(q):
    x, y = q
    return (str(Fraction(x)), str(Fraction(y)))


def count(degree, fan="p2", seed=1, jobs=1, convention="max"):
    if convention not in ("min", "max"):
        raise ValueError("convention must be 'min' or 'max'")
    return json.loads(_tropenum.count(fan, str(degree), seed, jobs, convention))


def scatter(k, fan="p2", seed=1):
    return json.loads(_tropenum.scatter(fan, k, seed))


def potential(k, q, fan="p2", seed=1):
    return json.loads(_tropenum.potential(fan, k, _q(q), seed))


def disks(k, q, fan="p2", seed=1):
    return json.loads(_tropenum.disks(fan, k, _q(q), seed))


def render(diagram):
    """SVG text for a diagram document (as returned by scatter)."""
    return _tropenum.render(json.dumps(diagram))
