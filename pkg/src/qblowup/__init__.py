"""Exact combinatorics and cohomology on iterated blow-ups of P^d(F_q)."""

__version__ = "0.1.0"

from .fields import GF, gf, prime_power
from .subspaces import (
    BudgetExceededError,
    Subspace,
    all_proper_subspaces,
    enumerate_subspaces,
    gaussian_binomial,
    gaussian_multinomial,
)
from .components import (
    all_components,
    component_of,
    coordinate_subspace,
    enumerate_u_tau,
    enumerate_u_tau_sigma,
    index_of,
    is_stable,
    join,
    split_component_neighbors,
    u_tau_sigma_order,
)
from .divisors import (
    Divisor,
    DivisorSpec,
    UnstructuredDivisorError,
    atau_spec,
    build_divisor,
    gamma_divisor,
    ladder_divisors,
    linear_equivalence_witness,
    principal_ratio_divisor,
    restrict_structured,
    restrict_support,
)

__all__ = [
    "GF",
    "gf",
    "prime_power",
    "BudgetExceededError",
    "Subspace",
    "all_proper_subspaces",
    "enumerate_subspaces",
    "gaussian_binomial",
    "gaussian_multinomial",
    "all_components",
    "component_of",
    "coordinate_subspace",
    "enumerate_u_tau",
    "enumerate_u_tau_sigma",
    "index_of",
    "is_stable",
    "join",
    "split_component_neighbors",
    "u_tau_sigma_order",
    "Divisor",
    "DivisorSpec",
    "UnstructuredDivisorError",
    "atau_spec",
    "build_divisor",
    "gamma_divisor",
    "ladder_divisors",
    "linear_equivalence_witness",
    "principal_ratio_divisor",
    "restrict_structured",
    "restrict_support",
]
