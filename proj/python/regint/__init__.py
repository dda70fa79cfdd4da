"""Regularized integrals of automorphic functions on SL2(Z)\\H."""

import json

from ._core import (
    UsageError,
    coset_decompose,
    eisenstein,
    hecke_eigenvalue,
    lambda_F_deriv,
    lambda_laurent,
    lattice_sum,
    pairing,
    regularized_integral,
    suites,
    triple_product,
)
from ._core import verify_json as _verify_json


def verify(suite, seed=20240611, jobs=1):
    """Run an invariant suite and return the parsed report."""
    return json.loads(_verify_json(suite, seed, jobs))


__all__ = [
    "UsageError",
    "coset_decompose",
    "eisenstein",
    "hecke_eigenvalue",
    "lambda_F_deriv",
    "lambda_laurent",
    "lattice_sum",
    "pairing",
    "regularized_integral",
    "suites",
    "triple_product",
    "verify",
]
