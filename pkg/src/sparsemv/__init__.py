"""Exponential-sum mean values over real and p-adic sparse domains.

Library layout:

- :mod:`sparsemv.exact` — exact phases mod 1, unit roots, deterministic
  compensated accumulation.
- :mod:`sparsemv.numberfield` — minimal polynomials, power traces, and the
  trace-expanded phase systems.
- :mod:`sparsemv.padic` — scales N = p**K, the standard additive character,
  valuations, Hensel lifting of sqrt(-1).
- :mod:`sparsemv.domains` — sparse product-cell subdomains of the torus.
- :mod:`sparsemv.meanvalue` — p-adic short mean values, real sparse mean
  values, transference checks, restriction-constant lower bounds.
- :mod:`sparsemv.vinogradov` — exact solution counting for power-sum systems
  with algebraic indeterminates.
- :mod:`sparsemv.counterexample` — norms of the p-adic paraboloid wave
  packet family.
- :mod:`sparsemv.cli` — the ``sparsemv`` command-line front end.
"""

from .counterexample import (
    CounterexampleFamily,
    decoupling_ratio,
    single_norm,
    sum_norm,
    verify_paraboloid_membership,
)
from .domains import (
    LocalizationVector,
    SparseDomain,
    build_domain,
    emit_cell_csv,
    enumerate_cells,
)
from .exact import PhaseFraction, compensated_sum, tree_sum, unit_root
from .meanvalue import (
    CoefficientVector,
    IndexDomain,
    MeanValueReport,
    corollary_ratio_experiment,
    estimate_restriction_constant,
    modulate_coefficients,
    padic_short_mv,
    real_sparse_mv,
    sample_coefficients,
    transfer_check,
)
from .numberfield import (
    MinimalPolynomial,
    PhaseSystem,
    epsilon_table,
    evaluate_phase,
    expand_trace_phase,
    field_multiply,
    moment_curve,
    parabola_system,
    trace_power,
)
from .padic import (
    HenselRoot,
    ScaleSpec,
    chi_p,
    hensel_sqrt_minus_one,
    is_prime,
    valuation,
)
from .quadrature import QuadratureConfig
from .vinogradov import count_solutions, count_solutions_brute, fit_growth

__version__ = "0.1.0"

__all__ = [
    "CoefficientVector",
    "CounterexampleFamily",
    "HenselRoot",
    "IndexDomain",
    "LocalizationVector",
    "MeanValueReport",
    "MinimalPolynomial",
    "PhaseFraction",
    "PhaseSystem",
    "QuadratureConfig",
    "ScaleSpec",
    "SparseDomain",
    "build_domain",
    "chi_p",
    "compensated_sum",
    "corollary_ratio_experiment",
    "count_solutions",
    "count_solutions_brute",
    "decoupling_ratio",
    "emit_cell_csv",
    "enumerate_cells",
    "epsilon_table",
    "estimate_restriction_constant",
    "evaluate_phase",
    "expand_trace_phase",
    "field_multiply",
    "fit_growth",
    "hensel_sqrt_minus_one",
    "is_prime",
    "modulate_coefficients",
    "moment_curve",
    "padic_short_mv",
    "parabola_system",
    "real_sparse_mv",
    "sample_coefficients",
    "single_norm",
    "sum_norm",
    "trace_power",
    "transfer_check",
    "tree_sum",
    "unit_root",
    "valuation",
    "verify_paraboloid_membership",
]
