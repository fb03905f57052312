"""Cut domains and the potential theory that drives every convergence rate.

A :class:`CutDomain` is a sorted union of disjoint real intervals Σ. The
Green's function with pole at infinity 𝔤 has derivative

    𝔤′(s) = P(s) / √R(s),    R(s) = ∏ (s − β_j)(s − γ_j),

where P is the monic polynomial of degree (#intervals − 1) whose integrals
over every gap vanish. With two intervals P(s) = s − z*, and z* is the
saddle point in the gap. ``re 𝔤`` is evaluated by integrating 𝔤′ along a
straight segment from the nearest endpoint. Substituting s = e + (z − e)u²
removes the square-root singularity at the endpoint.
"""

from __future__ import annotations

import math
import re
from collections.abc import Iterable, Sequence
from functools import lru_cache

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from akhsylv.core.linalg import integrate
from akhsylv.exceptions import (
    AccuracyError,
    DomainError,
    SingularDomainError,
    UnsupportedDomainError,
)
from akhsylv.utils.logger import get_logger

__all__ = [
    "Interval",
    "CutDomain",
    "RateInfo",
    "parse_domain",
    "gap_saddle",
    "gap_saddle_golden",
    "green_real",
    "sign_rate",
    "inverse_rate",
    "inverse_rho",
    "nu",
    "effective_rate",
    "g_grid",
]

logger = get_logger(__name__)

QUAD_RTOL = 1e-12
SADDLE_RESIDUAL_RTOL = 1e-10
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------


class Interval(BaseModel):
    """Closed real interval [lo, hi] with lo < hi."""

    model_config = ConfigDict(frozen=True)

    lo: float
    hi: float

    @model_validator(mode="after")
    def _ordered(self) -> "Interval":
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("interval endpoints must be finite")
        if not self.lo < self.hi:
            raise ValueError(f"interval needs lo < hi, got [{self.lo}, {self.hi}]")
        return self

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def half(self) -> float:
        return 0.5 * (self.hi - self.lo)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def __str__(self) -> str:
        return f"{self.lo!r},{self.hi!r}"


class CutDomain(BaseModel):
    """Union of disjoint intervals, stored left to right."""

    model_config = ConfigDict(frozen=True)

    intervals: tuple[Interval, ...]

    @model_validator(mode="after")
    def _disjoint(self) -> "CutDomain":
        if not self.intervals:
            raise ValueError("a cut domain needs at least one interval")
        for left, right in zip(self.intervals, self.intervals[1:], strict=False):
            if not left.hi < right.lo:
                raise ValueError(
                    f"intervals [{left}] and [{right}] overlap or are out of order"
                )
        return self

    @classmethod
    def of(cls, *intervals: Interval | tuple[float, float]) -> "CutDomain":
        """Build a domain from intervals in any order."""
        items = [
            iv if isinstance(iv, Interval) else Interval(lo=iv[0], hi=iv[1])
            for iv in intervals
        ]
        try:
            return cls(intervals=tuple(sorted(items, key=lambda iv: iv.lo)))
        except ValueError as exc:
            raise DomainError(str(exc)) from exc

    @property
    def endpoints(self) -> np.ndarray:
        return np.array([v for iv in self.intervals for v in (iv.lo, iv.hi)])

    @property
    def gaps(self) -> list[tuple[float, float]]:
        return [
            (left.hi, right.lo)
            for left, right in zip(self.intervals, self.intervals[1:], strict=False)
        ]

    def contains(self, x: float) -> bool:
        return any(iv.contains(x) for iv in self.intervals)

    def distance(self, z: complex) -> float:
        """Euclidean distance from ``z`` to Σ."""
        z = complex(z)
        return min(
            abs(complex(min(max(z.real, iv.lo), iv.hi), 0.0) - z)
            for iv in self.intervals
        )

    def is_balanced(self, rtol: float = 1e-14) -> bool:
        """Two intervals with γ1 + β2 = β1 + γ2 (equal lengths)."""
        if len(self.intervals) != 2:
            return False
        (b1, g1), (b2, g2) = [(iv.lo, iv.hi) for iv in self.intervals]
        return abs((g1 + b2) - (b1 + g2)) <= rtol * max(abs(b1), abs(g2), 1.0)

    def shifted(self, delta: float) -> "CutDomain":
        return CutDomain(
            intervals=tuple(
                Interval(lo=iv.lo + delta, hi=iv.hi + delta) for iv in self.intervals
            )
        )

    def __str__(self) -> str:
        return ";".join(str(iv) for iv in self.intervals)


class RateInfo(BaseModel):
    """Rate data of a cut domain."""

    model_config = ConfigDict(frozen=True)

    z_star: float | None = None
    rho: float
    rho_inv_signed: float | None = None


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_NUMBER = re.compile(r"\s*[-+]?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?\s*")


def parse_domain(text: str) -> CutDomain:
    """Parse "lo,hi;lo,hi" into a :class:`CutDomain`.

    Errors name the character position of the offending piece.
    """
    intervals: list[Interval] = []
    position = 0
    for piece in text.split(";"):
        parts = piece.split(",")
        if len(parts) != 2:
            raise DomainError(
                f"expected 'lo,hi' at position {position}, got {piece!r}"
            )
        values = []
        offset = position
        for part in parts:
            if not _NUMBER.fullmatch(part):
                raise DomainError(f"invalid number {part!r} at position {offset}")
            values.append(float(part))
            offset += len(part) + 1
        try:
            intervals.append(Interval(lo=values[0], hi=values[1]))
        except ValueError as exc:
            raise DomainError(f"bad interval at position {position}: {exc}") from exc
        position += len(piece) + 1
    try:
        return CutDomain(intervals=tuple(intervals))
    except ValueError as exc:
        raise DomainError(f"{text!r}: {exc}") from exc


# ---------------------------------------------------------------------------
# Green's function
# ---------------------------------------------------------------------------


def _gap_moment(domain: CutDomain, gap: int, power: int) -> float:
    """∫ over gap ``gap`` of s**power / √|R(s)| (cosine substitution)."""
    lo, hi = domain.gaps[gap]
    mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
    others = np.delete(domain.endpoints, [2 * gap + 1, 2 * gap + 2])

    def integrand(theta: np.ndarray) -> np.ndarray:
        s = mid + half * np.cos(theta)
        rest = np.prod(np.sqrt(np.abs(s[:, None] - others[None, :])), axis=1)
        return s**power / rest

    return float(integrate(integrand, 0.0, math.pi, rtol=QUAD_RTOL))


@lru_cache(maxsize=128)
def _green_polynomial(domain: CutDomain) -> np.ndarray:
    """Coefficients (highest degree first) of the monic numerator P."""
    genus = len(domain.intervals) - 1
    if genus == 0:
        return np.array([1.0])
    system = np.array(
        [[_gap_moment(domain, j, i) for i in range(genus)] for j in range(genus)]
    )
    rhs = -np.array([_gap_moment(domain, j, genus) for j in range(genus)])
    lower = np.linalg.solve(system, rhs)
    coeffs = np.concatenate(([1.0], lower[::-1]))
    coeffs.setflags(write=False)
    return coeffs


def _segment_integral(
    domain: CutDomain, start: int, z: complex, *, real_axis: bool
) -> complex:
    """∫ P/√R from endpoint ``start`` to ``z`` along a straight segment.

    On the real axis the square roots are taken of absolute values and the
    result is signed by direction; off the axis principal branches are used.
    """
    coeffs = _green_polynomial(domain)
    ends = domain.endpoints
    e = ends[start]
    others = np.delete(ends, start)
    d = complex(z) - e
    if real_axis:
        d = d.real
        factor = 2.0 * math.copysign(math.sqrt(abs(d)), d)

        def integrand(u: np.ndarray) -> np.ndarray:
            s = e + d * u * u
            rest = np.prod(np.sqrt(np.abs(s[:, None] - others[None, :])), axis=1)
            return np.polyval(coeffs, s) / rest

    else:
        factor = 2.0 * np.sqrt(d)

        def integrand(u: np.ndarray) -> np.ndarray:
            s = e + d * u * u
            rest = np.prod(np.sqrt(s[:, None] - others[None, :]), axis=1)
            return np.polyval(coeffs, s) / rest

    return factor * integrate(integrand, 0.0, 1.0, rtol=QUAD_RTOL)


def _real_start(domain: CutDomain, x: float) -> int:
    ends = domain.endpoints
    if x < ends[0]:
        return 0
    if x > ends[-1]:
        return ends.size - 1
    gap = int(np.searchsorted(ends, x)) - 1  # ends[gap] < x < ends[gap + 1]
    return gap if x - ends[gap] <= ends[gap + 1] - x else gap + 1


def green_real(
    domain: CutDomain, z: complex | float, *, closed_form: bool = True
) -> float:
    """re 𝔤(z): zero on Σ, positive off Σ, ~log|z| at infinity.

    Args:
    ----
        domain: The cut domain Σ.
        z: Evaluation point; any complex value.
        closed_form: Use the Joukowski formula on single intervals.

    Returns:
    -------
        The nonnegative real part of the Green's function.

    """
    z = complex(z)
    if z.imag < 0.0:
        z = z.conjugate()
    if z.imag == 0.0 and domain.contains(z.real):
        return 0.0

    if closed_form and len(domain.intervals) == 1:
        iv = domain.intervals[0]
        t = (z - iv.mid) / iv.half
        value = math.log(abs(t + np.sqrt(t - 1.0) * np.sqrt(t + 1.0)))
        return max(value, 0.0)

    if z.imag == 0.0:
        start = _real_start(domain, z.real)
        return abs(_segment_integral(domain, start, z, real_axis=True).real)
    start = int(np.argmin(np.abs(domain.endpoints - z)))
    return max(_segment_integral(domain, start, z, real_axis=False).real, 0.0)


def gap_saddle(domain: CutDomain) -> float:
    """Saddle point z* of 𝔤 in the gap of a two-interval domain.

    Computed as the ratio of gap integrals of s/√|R| and 1/√|R|, then
    verified by integrating (s − z*)/√|R| across the gap with endpoint
    substitutions.
    """
    if len(domain.intervals) != 2:
        raise UnsupportedDomainError(
            f"gap_saddle needs exactly two intervals, got {len(domain.intervals)}"
        )
    i0 = _gap_moment(domain, 0, 0)
    i1 = _gap_moment(domain, 0, 1)
    z_star = i1 / i0

    lo, hi = domain.gaps[0]
    mid = 0.5 * (lo + hi)
    left = _segment_integral(domain, 1, mid, real_axis=True).real
    right = _segment_integral(domain, 2, mid, real_axis=True).real
    # i0·(hi − lo) bounds ∫|s − z*|/√|R| over the gap and never vanishes
    residual = abs(left - right) / (i0 * (hi - lo))
    if not lo < z_star < hi or residual > SADDLE_RESIDUAL_RTOL:
        raise AccuracyError(
            f"gap saddle {z_star!r} failed verification (residual {residual:.3e})"
        )
    return z_star


def gap_saddle_golden(domain: CutDomain, *, tol: float = 1e-12) -> float:
    """Maximize re 𝔤 over the gap by golden-section search."""
    if len(domain.intervals) != 2:
        raise UnsupportedDomainError("golden-section saddle needs two intervals")
    a, b = domain.gaps[0]
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = green_real(domain, c), green_real(domain, d)
    while b - a > tol * max(1.0, abs(a) + abs(b)):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = green_real(domain, c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = green_real(domain, d)
    return 0.5 * (a + b)


# ---------------------------------------------------------------------------
# Rates
# ---------------------------------------------------------------------------


def sign_rate(domain: CutDomain) -> RateInfo:
    """Rate ρ = exp(re 𝔤(z*)) of sign-function series on two intervals."""
    z_star = gap_saddle(domain)
    rho = math.exp(green_real(domain, z_star))
    logger.debug("Computed sign rate", extra={"rho": rho})
    return RateInfo(z_star=z_star, rho=rho)


def inverse_rate(interval: Interval) -> float:
    """Signed Chebyshev ratio −α/c + √(α/c − 1)√(α/c + 1) of 1/x."""
    if interval.contains(0.0):
        raise SingularDomainError(f"0 lies in the spectral interval [{interval}]")
    t = interval.mid / interval.half
    return -t + math.copysign(math.sqrt(t * t - 1.0), t)


def inverse_rho(domain: CutDomain) -> float:
    """Rate ρ = exp(re 𝔤(0)) of 1/x series on Σ."""
    if domain.contains(0.0):
        raise SingularDomainError(f"0 lies in the spectral domain {domain}")
    if len(domain.intervals) == 1:
        return 1.0 / abs(inverse_rate(domain.intervals[0]))
    return math.exp(green_real(domain, 0.0))


def nu(
    domain: CutDomain, eigenvalues: Iterable[complex], z_ref: complex
) -> float:
    """ν(z_ref) = max_λ re 𝔤(λ) − re 𝔤(z_ref); negative means convergence."""
    worst = max((green_real(domain, lam) for lam in eigenvalues), default=0.0)
    return worst - green_real(domain, z_ref)


def effective_rate(nu_value: float) -> float:
    """Geometric convergence base e^{-ν} for spectra off Σ."""
    return math.exp(-nu_value)


def g_grid(
    domain: CutDomain,
    window: Sequence[float],
    resolution: Sequence[int],
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Sample e^{re 𝔤} on a uniform grid.

    Args:
    ----
        domain: The cut domain.
        window: ``(re_min, re_max, im_min, im_max)``.
        resolution: ``(n_re, n_im)`` grid points per axis.

    Returns:
    -------
        ``(re_axis, im_axis, values)`` with ``values[i, j]`` at
        ``re_axis[j] + 1j * im_axis[i]``.

    """
    re_min, re_max, im_min, im_max = window
    n_re, n_im = resolution
    if n_re < 1 or n_im < 1:
        raise ValueError("grid resolution must be positive")
    re_axis = np.linspace(re_min, re_max, n_re)
    im_axis = np.linspace(im_min, im_max, n_im)
    values = np.empty((n_im, n_re))
    for i, y in enumerate(im_axis):
        for j, x in enumerate(re_axis):
            values[i, j] = math.exp(green_real(domain, complex(x, y)))
    return re_axis, im_axis, values
