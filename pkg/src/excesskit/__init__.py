"""Excess numbers of homogeneous ideals.

Three independent routes to the same integer: a closed formula for ideals
generated by powers of variables, exact mixed volumes of Newton polytopes,
and homotopy continuation (``run_hup`` for the exact count, ``run_hit_iterations``
for a growing lower bound).
"""
from .algorithms import (
    ExcessRunReport,
    NonGenericRun,
    bsystem,
    build_hit,
    build_hup,
    draw_gamma,
    run_hit_iterations,
    run_hup,
    solve_bsystem,
    solve_monomial_bsystem,
)
from .formula import (
    ExcessResult,
    complete_homogeneous,
    correction_term,
    elementary_symmetric,
    excess_powers,
    excess_principal,
    simplex_integral_check,
)
from .polynomial import (
    IdealSpec,
    PolynomialSyntaxError,
    PolynomialSystem,
    SparsePolynomial,
    UnknownVariableError,
    VariableSet,
    evaluate,
    jacobian,
    monomialize,
    parse_polynomial,
    random_form,
)
from .polytope import (
    LatticePolytope,
    convex_hull,
    excess_by_mixed_volume,
    minkowski_sum,
    mixed_volume,
    multilinear_volume_coefficient,
    newton_polytope_of_bsystem,
    simplex,
    slice_simplex,
    volume,
)
from .tracker import (
    AffinePatch,
    HomotopySystem,
    Solution,
    SolutionSet,
    Status,
    TrackerConfig,
    dedupe,
    membership_test,
    newton_refine,
    projective_distance,
    track_path,
)

__version__ = "0.1.0"
