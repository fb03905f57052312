"""akhsylv: inverse-free Akhiezer-series solvers for Sylvester equations.

Solves XA − BX = C when the spectra of A and B lie in known disjoint real
intervals, using only matrix products. Method 1 expands the sign function of
the block matrix [[A, 0], [C, B]]; Method 2 expands 1/x on the spectrum of
the Sylvester operator. Both have dense and low-rank variants.
"""

__version__ = "0.1.0"

from .cli import main  # noqa: E402

__all__ = ["__version__", "main"]
