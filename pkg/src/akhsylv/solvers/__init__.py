"""Akhiezer Sylvester solvers: Method 1 (sign), Method 2 (inverse), Fréchet."""

from .base import BaseSylvesterSolver, LowRankPair, SylvesterProblem
from .compression import compress
from .data import AkhiezerData, inverse_data, operator_interval, sign_data
from .frechet import frechet
from .inverse import InverseSolver, solve_inverse_dense, solve_inverse_lowrank
from .matfun import akhiezer_matfun
from .report import ConvergenceReport, IterationRecord
from .sign import SignSolver, solve_sign_dense, solve_sign_lowrank
from .stopping import iterations_for_tolerance

__all__ = [
    "AkhiezerData",
    "BaseSylvesterSolver",
    "ConvergenceReport",
    "InverseSolver",
    "IterationRecord",
    "LowRankPair",
    "SignSolver",
    "SylvesterProblem",
    "akhiezer_matfun",
    "compress",
    "frechet",
    "inverse_data",
    "iterations_for_tolerance",
    "operator_interval",
    "sign_data",
    "solve_inverse_dense",
    "solve_inverse_lowrank",
    "solve_sign_dense",
    "solve_sign_lowrank",
]
