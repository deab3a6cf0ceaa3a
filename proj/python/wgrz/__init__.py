"""TQBF encodings into the constant fragment of modal logics between K and wGrz.

Formulas are passed as text in the same syntax the ``wgrz`` command accepts.
Kripke models are returned as JSON documents.
"""

import json

from . import _core
from ._core import (
    BudgetExceeded,
    Error,
    ParseError,
    PreconditionError,
    UnknownWorld,
    alpha,
    encode_alpha,
    encode_star,
    is_constant,
    is_true_qbf,
    modal_size,
    negate_prenex,
    to_prenex,
    verify,
    wgrz_axiom,
)

__all__ = [
    "BudgetExceeded",
    "Error",
    "ParseError",
    "PreconditionError",
    "UnknownWorld",
    "alpha",
    "encode_alpha",
    "encode_star",
    "extended_model",
    "is_constant",
    "is_true_qbf",
    "modal_size",
    "model_check",
    "negate_prenex",
    "quantifier_tree",
    "sat",
    "to_prenex",
    "verify",
    "wgrz_axiom",
]


def sat(formula, engine="tableau", bound=6, budget=10_000_000):
    """K-satisfiability. The witness, if any, is a decoded JSON model."""
    result = _core.sat(formula, engine, bound, budget)
    if result["witness"] is not None:
        result["witness"] = json.loads(result["witness"])
    return result


def quantifier_tree(formula):
    return json.loads(_core.quantifier_tree(formula))


def extended_model(formula):
    return json.loads(_core.extended_model(formula))


def model_check(model, formula):
    """Truth of a modal formula at the root of a JSON model (dict or text)."""
    if not isinstance(model, str):
        model = json.dumps(model)
    return _core.model_check(model, formula)
