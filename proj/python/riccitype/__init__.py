"""Exact verification of Ricci-type commutation identities.

Thin wrapper over the compiled core: structured results are returned as
plain dicts and lists, and every exact rational becomes a Fraction.
"""

import json
from fractions import Fraction

from . import _core
from ._core import (
    DimensionError,
    IndexError,
    InsufficientSamplesError,
    ParameterError,
    ShapeError,
    ValidationError,
    identity_ids,
    kind_coefficients,
    rank_claims,
    suite_names,
)

__version__ = _core.__version__

__all__ = [
    "DimensionError",
    "IndexError",
    "InsufficientSamplesError",
    "ParameterError",
    "ShapeError",
    "ValidationError",
    "audit",
    "draw_weights",
    "exact_rank",
    "generate_instance",
    "identity_ids",
    "kind_coefficients",
    "printed_identity_holds",
    "rank_claim",
    "rank_claims",
    "run_suite",
    "suite_names",
]


def _kinds(kinds):
    if isinstance(kinds, str):
        return kinds
    return ",".join(str(int(k)) for k in kinds)


def _weights(weights):
    if weights is None:
        return None
    return json.dumps([[str(Fraction(x)) for x in row] for row in weights])


def generate_instance(dim=2, degree=2, valence=(1, 1), seed=42, coeff_bound=5):
    """Seeded random connection and field as the JSON document the CLI writes."""
    return json.loads(_core.instance_json(dim, degree, tuple(valence), seed, coeff_bound))


def draw_weights(seed):
    """5x5 weight matrix (rows X..V, columns kinds 0..4) with rows summing to 1."""
    return [[Fraction(x) for x in row] for row in json.loads(_core.weights_json(seed))]


def printed_identity_holds(identity, kinds=(1, 2, 3, 4), weights=None, support=None, dim=2, degree=2,
                           valence=(1, 1), seed=42, coeff_bound=5):
    """Whether the printed right-hand side matches exactly on one seeded instance."""
    return _core.printed_identity_holds(identity, _kinds(kinds), _weights(weights),
                                        None if support is None else list(support), dim, degree,
                                        tuple(valence), seed, coeff_bound)


def audit(identity, kinds=(1, 2, 3, 4), weights=None, support=None, valence=(1, 1), seed=42):
    """Fit the identity's coefficients; printed and fitted values are Fractions."""
    out = json.loads(_core.audit_json(identity, _kinds(kinds), _weights(weights),
                                      None if support is None else list(support), tuple(valence), seed))
    for c in out["coefficients"]:
        c["printed"] = Fraction(c["printed"])
        if "fitted" in c:
            c["fitted"] = Fraction(c["fitted"])
    return out


def run_suite(suite, dim=2, degree=2, seed=42, coeff_bound=5, valence=None, seeds=3, weight_draws=20,
              tuple_draws=10, restricted_draws=2, rank_seeds=5, workers=1):
    """Run a named suite and return its report."""
    return json.loads(_core.run_suite_json(suite, dim, degree, seed, coeff_bound,
                                           None if valence is None else tuple(valence), seeds, weight_draws,
                                           tuple_draws, restricted_draws, rank_seeds, workers))


def rank_claim(claim, dim=2, degree=2, seed=42, seeds=5):
    return json.loads(_core.rank_claim_json(claim, dim, degree, seed, seeds))


def exact_rank(rows):
    """Rank over the rationals; entries may be int, Fraction or "p/q" strings."""
    return _core.exact_rank([[str(Fraction(x)) for x in row] for row in rows])
