"""Cantor bouquet model of exp(z) - 1 and plane dynamics of e^z + a.

Sequence descriptors may be passed as dicts or JSON strings; structured
results come back as Python objects.
"""

import json

from . import _core
from ._core import (
    BouquetError,
    BudgetExceeded,
    InvalidInput,
    NoConvergence,
    OverflowGuard,
    ParseError,
    PreconditionViolation,
    escape_region_a,
    f_inv_k,
    f_map,
    itinerary,
    iterate,
)

__all__ = [
    "BouquetError",
    "BudgetExceeded",
    "InvalidInput",
    "NoConvergence",
    "OverflowGuard",
    "ParseError",
    "PreconditionViolation",
    "classify",
    "escape_region_a",
    "f_inv_k",
    "f_map",
    "find_cycle",
    "find_extension",
    "in_x",
    "itinerary",
    "iterate",
    "normalize_seq",
    "render",
    "seq_at",
    "t_min",
    "t_star",
    "verify",
    "witness",
]


def _desc(seq):
    return seq if isinstance(seq, str) else json.dumps(seq)


def normalize_seq(seq):
    return json.loads(_core.normalize_seq(_desc(seq)))


def seq_at(seq, n):
    """Entry s_n as a decimal string, or a symbolic tower such as floor(F^4(3))."""
    return _core.seq_at(_desc(seq), n)


def t_star(seq, shift=0):
    return json.loads(_core.t_star(_desc(seq), shift))


def t_min(seq, tol=1e-9, budget=100000):
    return json.loads(_core.t_min(_desc(seq), tol, budget))


def classify(seq, t, tol=1e-9, budget=100000):
    return json.loads(_core.classify(_desc(seq), t, tol, budget))


def in_x(seq, alpha, t=None, tol=1e-9):
    """'true', 'false' or 'unknown'."""
    return _core.in_x(_desc(seq), list(alpha), t, tol)


def find_extension(seq, alpha, floor=0, tol=1e-9):
    return _core.find_extension(_desc(seq), list(alpha), floor, tol)


def witness(seq, alpha, N, count=3, tol=1e-9):
    return json.loads(_core.witness(_desc(seq), list(alpha), N, count, tol))


def find_cycle(a, period, seed):
    return json.loads(_core.find_cycle(complex(a), period, complex(seed)))


def render(a, viewport, width=200, height=200, max_iter=100, R=50.0, path=None):
    return json.loads(_core.render(complex(a), list(viewport), width, height, max_iter, R, path))


def verify(tol=1e-9, budget=100000, seed=20240601):
    return json.loads(_core.verify(tol, budget, seed))
