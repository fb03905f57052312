"""Services built on the solvers: oracles, applications, benchmarks, output."""

from .bench import FIGURES, BenchSettings, FigureTable, run_figure
from .integral_equations import (
    FredholmSpec,
    build_integral_system,
    preset,
    solve_fredholm,
    solve_generalized,
)
from .oracles import (
    KnownFactorization,
    coeff_dense_oracle,
    daleckii_krein_oracle,
    known_problem,
    kron_lu_oracle,
    sylvester_eigen_oracle,
)
from .results import ResultStore
from .verify import SUITES, run_suite

__all__ = [
    "FIGURES",
    "SUITES",
    "BenchSettings",
    "FigureTable",
    "FredholmSpec",
    "KnownFactorization",
    "ResultStore",
    "build_integral_system",
    "coeff_dense_oracle",
    "daleckii_krein_oracle",
    "known_problem",
    "kron_lu_oracle",
    "preset",
    "run_figure",
    "run_suite",
    "solve_fredholm",
    "solve_generalized",
    "sylvester_eigen_oracle",
]
