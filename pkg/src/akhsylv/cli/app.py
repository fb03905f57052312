"""Command-line entry point for akhsylv.

This module builds the argparse parser, validates the flags into request
models and maps failures onto exit codes:

    0  success
    1  usage error or failed ``verify`` suite
    2  accuracy error (quadrature cap, GMRES stagnation, ν ≥ 0, ...)
    3  domain, geometry or dimension error
    4  I/O error or malformed matrix file

Command results go to stdout as CSV; logs go to stderr.
"""

from __future__ import annotations

import argparse
import re
import sys
from collections.abc import Sequence
from typing import NoReturn, TextIO

from pydantic import ValidationError

from akhsylv import __version__
from akhsylv.cli.commands import COMMANDS
from akhsylv.exceptions import AkhsylvError, UsageError
from akhsylv.services.bench import FIGURES
from akhsylv.services.integral_equations import PRESETS
from akhsylv.services.verify import SUITES
from akhsylv.utils.logger import get_logger

__all__ = ["build_parser", "join_negative_values", "main"]

logger = get_logger(__name__)

IO_EXIT_CODE = 4

# "-1.8,-0.5" or "-1,-0.5;0.5,1": argparse would read these as flags
_NEGATIVE_VALUE = re.compile(r"-\.?\d")


class _ArgumentParser(argparse.ArgumentParser):
    """Parser that raises instead of exiting, so usage errors exit with 1."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _solver_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol", type=float, help="target accuracy (1e-12)")
    parser.add_argument(
        "--max-iterations", type=int, help="fixed iteration count (overrides --tol)"
    )
    parser.add_argument(
        "--rank-tol", type=float, help="relative compression cutoff (1e-14)"
    )
    parser.add_argument(
        "--no-weighting",
        action="store_true",
        help="compress J, K with the plain tolerance",
    )


def build_parser() -> argparse.ArgumentParser:
    """Parser with one subcommand per entry of :data:`COMMANDS`."""
    parser = _ArgumentParser(
        prog="akhsylv",
        description="Inverse-free Akhiezer-series solvers for XA - BX = C.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    rates = sub.add_parser(
        "rates",
        help="rate base, saddle point and predicted iterations",
        description="CSV columns: method, z_star, rho, rho_inv, tolerance, n, "
        "iterations.",
    )
    rates.add_argument("--domain", required=True, help='intervals "lo,hi;lo,hi"')
    rates.add_argument("--method", choices=("sign", "inverse"))

    coeffs = sub.add_parser(
        "coeffs",
        help="series coefficients on a cut domain",
        description="CSV columns: j, alpha, abs_alpha, envelope.",
    )
    coeffs.add_argument("--domain", required=True)
    coeffs.add_argument("--count", type=int)
    coeffs.add_argument("--function", choices=("sign", "inverse", "exp"))
    coeffs.add_argument("--source", choices=("circles", "pv"))
    coeffs.add_argument("--nodes", type=int, help="contour or quadrature nodes")

    solve = sub.add_parser(
        "solve",
        help="solve XA - BX = C from matrix-text files",
        description="Writes P.x (dense) or P.w/P.z (factored) and the report "
        "CSV: iter, bound, rank_jk, rank_wz, stored_entries, seconds.",
    )
    solve.add_argument("--method", required=True, choices=("sign", "inverse"))
    solve.add_argument("--a", required=True)
    solve.add_argument("--b", required=True)
    solve.add_argument("--c")
    solve.add_argument("--u")
    solve.add_argument("--v")
    solve.add_argument("--dom-a", required=True, help='spectral hint "lo,hi"')
    solve.add_argument("--dom-b", required=True, help='spectral hint "lo,hi"')
    solve.add_argument("--out-prefix", required=True)
    solve.add_argument("--log", help="report CSV path (default: stdout)")
    _solver_flags(solve)

    bench = sub.add_parser(
        "bench",
        help="regenerate the data of one benchmark figure",
        description="Writes <out>/<figure>.csv, or CSV to stdout without --out.",
    )
    bench.add_argument("--figure", required=True, choices=sorted(FIGURES))
    bench.add_argument("--n", type=int)
    bench.add_argument("--m", type=int)
    bench.add_argument("--rank", type=int)
    bench.add_argument("--seed", type=int)
    bench.add_argument("--domain")
    bench.add_argument("--count", type=int)
    bench.add_argument("--tol", type=float)
    bench.add_argument("--out")

    fredholm = sub.add_parser(
        "fredholm",
        help="collocate and solve a preset integral equation",
        description="CSV columns: preset, n, iterations, gmres_iterations, "
        "rank, residual.",
    )
    fredholm.add_argument("--preset", required=True, choices=sorted(PRESETS))
    fredholm.add_argument("--n", type=int)
    fredholm.add_argument("--delta", type=float)
    fredholm.add_argument("--out-prefix")
    fredholm.add_argument("--log")
    _solver_flags(fredholm)

    frechet = sub.add_parser(
        "frechet",
        help="Fréchet derivative L_f(A, E) of sign or exp",
        description="Writes P.x or P.w/P.z and the report CSV.",
    )
    frechet.add_argument("--a", required=True)
    frechet.add_argument("--e")
    frechet.add_argument("--u")
    frechet.add_argument("--v")
    frechet.add_argument("--domain", required=True)
    frechet.add_argument("--function", choices=("sign", "exp"))
    frechet.add_argument("--out-prefix", required=True)
    frechet.add_argument("--log")
    _solver_flags(frechet)

    grid = sub.add_parser(
        "grid-g",
        help="sample exp(re g) on a rectangle",
        description="CSV columns: re, im, exp_g.",
    )
    grid.add_argument("--domain", required=True)
    grid.add_argument("--window", required=True, help='"re_min,re_max,im_min,im_max"')
    grid.add_argument("--resolution", help='"n_re,n_im" (101,101)')

    verify = sub.add_parser(
        "verify",
        help="run the acceptance suites",
        description="CSV columns: suite, check, value, threshold, status.",
    )
    verify.add_argument("--suite", choices=sorted(SUITES))
    verify.add_argument("--seed", type=int)
    return parser


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def join_negative_values(argv: Sequence[str]) -> list[str]:
    """Rewrite ``--flag -1,2`` as ``--flag=-1,2`` so negative values parse."""
    joined: list[str] = []
    tokens = list(argv)
    i = 0
    while i < len(tokens):
        token = tokens[i]
        if (
            token.startswith("--")
            and token != "--"
            and "=" not in token
            and i + 1 < len(tokens)
            and _NEGATIVE_VALUE.match(tokens[i + 1])
        ):
            joined.append(f"{token}={tokens[i + 1]}")
            i += 2
            continue
        joined.append(token)
        i += 1
    return joined


def _fields(args: argparse.Namespace) -> dict[str, object]:
    """Flags the user set; unset ones fall back to the model defaults."""
    return {
        key: value
        for key, value in vars(args).items()
        if key != "command" and value is not None and value is not False
    }


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    """Run one command and return its exit code."""
    out = out or sys.stdout
    try:
        if argv is None:
            argv = sys.argv[1:]
        args = build_parser().parse_args(join_negative_values(argv))
        request_type, handler = COMMANDS[args.command]
        request = request_type.model_validate(_fields(args))
        return handler(request, out)
    except UsageError as exc:
        logger.warning("Usage error: %s", exc)
        return exc.exit_code
    except ValidationError as exc:
        logger.warning(
            "Invalid arguments: %s", exc, extra={"errors": exc.error_count()}
        )
        return UsageError.exit_code
    except AkhsylvError as exc:
        logger.warning("Command failed: %s", exc, exc_info=True)
        return exc.exit_code
    except OSError as exc:
        logger.warning("I/O failure: %s", exc, exc_info=True)
        return IO_EXIT_CODE
    except Exception:
        logger.exception("Unexpected failure")
        return 1


if __name__ == "__main__":
    sys.exit(main())
