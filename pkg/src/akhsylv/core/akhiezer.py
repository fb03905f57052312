"""Akhiezer data: weights, recurrences and series coefficients on a cut domain.

Orthonormal polynomials p_k for a normalized weight w on Σ satisfy

    x p_k(x) = b_{k-1} p_{k-1}(x) + a_k p_k(x) + b_k p_{k+1}(x),  p_0 = 1.

The same recurrence evaluated at a matrix drives every solver. This module
produces the (a_k, b_k) table in three ways: the closed-form Chebyshev
table, the closed-form symmetric two-interval table, and the discretized
Stieltjes procedure. It also produces the coefficients α_j = ⟨f, p_j⟩ of
sign, 1/x and general analytic f. Those are computed with contour quadrature
against weighted Cauchy transforms.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from akhsylv.core.cutdomain import (
    CutDomain,
    Interval,
    inverse_rate,
    inverse_rho,
    sign_rate,
)
from akhsylv.core.linalg import gauss_legendre
from akhsylv.exceptions import (
    AccuracyError,
    ConditioningError,
    DomainError,
    GeometryError,
    SingularDomainError,
    UnsupportedDomainError,
)
from akhsylv.utils.logger import get_logger

__all__ = [
    "WeightSpec",
    "SigmaQuadrature",
    "RecurrenceTable",
    "CoefficientStream",
    "weight_eval",
    "sigma_quadrature",
    "chebyshev_recurrence",
    "symmetric_akhiezer_recurrence",
    "stieltjes_recurrence",
    "akhiezer_recurrence",
    "recurrence_for",
    "poly_eval",
    "poly_values",
    "poly_matrices",
    "cauchy_transform",
    "cauchy_transforms",
    "sign_coeffs_circles",
    "sign_coeffs_pv",
    "inverse_coeffs_chebyshev",
    "inverse_coeffs_general",
    "inverse_scalars",
    "general_f_coeffs",
    "contour_circles",
]

logger = get_logger(__name__)

ENVELOPE_FLOOR = 1e-16
# coefficients below ROUNDING_FLOOR·ε_mach·max|α| are rounding noise
ROUNDING_FLOOR = 100.0
CAUCHY_TOL = 1e-13
CONTOUR_TOL = 1e-11
NORMALIZATION_NODES = 512
STIELTJES_NODE_FACTOR = 8
CAUCHY_DOUBLINGS = 4
GUARD_SPACINGS = 4

WeightKind = Literal["chebyshev", "akhiezer", "general"]


# ---------------------------------------------------------------------------
# Weights and quadrature on Σ
# ---------------------------------------------------------------------------


class WeightSpec(BaseModel):
    """Weight function on a cut domain.

    ``chebyshev`` is 1/√((x−lo)(hi−x)) on one interval. ``akhiezer`` is
    √(x−γ1)/(√(γ2−x)√(x−β1)√(x−β2)) on two intervals, with real roots
    of absolute values. ``general`` uses per-interval endpoint exponents
    (c_j, d_j) ∈ {−1, +1}, i.e. |x−β_j|^{c_j/2} |γ_j−x|^{d_j/2}.
    All kinds are normalized to unit mass.
    """

    model_config = ConfigDict(frozen=True)

    domain: CutDomain
    kind: WeightKind
    exponents: tuple[tuple[int, int], ...] | None = None

    @model_validator(mode="after")
    def _check_kind(self) -> "WeightSpec":
        count = len(self.domain.intervals)
        if self.kind == "chebyshev" and count != 1:
            raise ValueError("the Chebyshev weight lives on a single interval")
        if self.kind == "akhiezer" and count != 2:
            raise ValueError("the Akhiezer weight needs exactly two intervals")
        if self.kind == "general":
            if self.exponents is None or len(self.exponents) != count:
                raise ValueError("general weights need one (c, d) pair per interval")
            if any(e not in (-1, 1) for pair in self.exponents for e in pair):
                raise ValueError("endpoint exponents must be -1 or +1")
        return self

    @classmethod
    def for_domain(cls, domain: CutDomain) -> "WeightSpec":
        """Chebyshev weight on one interval, Akhiezer weight on two."""
        if len(domain.intervals) == 1:
            return cls(domain=domain, kind="chebyshev")
        if len(domain.intervals) == 2:
            return cls(domain=domain, kind="akhiezer")
        raise UnsupportedDomainError(
            "default weights exist for one or two intervals; pass a general weight"
        )

    def endpoint_exponents(self) -> np.ndarray:
        """Exponent s_e of |x − e|^{s_e/2} for every endpoint, left to right."""
        if self.kind == "chebyshev":
            return np.array([-1, -1])
        if self.kind == "akhiezer":
            return np.array([-1, 1, -1, -1])
        return np.array([e for pair in self.exponents for e in pair])

    def factors(self, index: int) -> tuple[int, int, np.ndarray, np.ndarray]:
        """Own exponents (c, d) and foreign endpoints/exponents of interval ``index``.

        The akhiezer weight couples the intervals; the other kinds do not.
        """
        exps = self.endpoint_exponents()
        c, d = int(exps[2 * index]), int(exps[2 * index + 1])
        if self.kind != "akhiezer":
            return c, d, np.empty(0), np.empty(0)
        keep = [i for i in range(exps.size) if i not in (2 * index, 2 * index + 1)]
        return c, d, self.domain.endpoints[keep], exps[keep]


@dataclass(frozen=True)
class SigmaQuadrature:
    """Nodes on Σ and weights absorbing w, with Σ ω_i = 1."""

    nodes: np.ndarray
    weights: np.ndarray

    @property
    def size(self) -> int:
        return self.nodes.size


def _raw_rule(spec: WeightSpec, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Unnormalized rule: x = mid + half·cos θ, Gauss-Legendre in θ."""
    y, wy = gauss_legendre(n)
    theta = 0.5 * math.pi * (y + 1.0)
    dtheta = 0.5 * math.pi * wy
    half_theta = 0.5 * theta
    xs, ws = [], []
    for index, iv in enumerate(spec.domain.intervals):
        c, d, others, other_exps = spec.factors(index)
        x = iv.mid + iv.half * np.cos(theta)
        jac = (
            2.0
            * iv.half
            * (2.0 * iv.half) ** (0.5 * (c + d))
            * np.cos(half_theta) ** (c + 1)
            * np.sin(half_theta) ** (d + 1)
        )
        if others.size:
            jac = jac * np.prod(
                np.abs(x[:, None] - others[None, :]) ** (0.5 * other_exps[None, :]),
                axis=1,
            )
        xs.append(x)
        ws.append(dtheta * jac)
    return np.concatenate(xs), np.concatenate(ws)


@lru_cache(maxsize=32)
def _normalization(spec: WeightSpec) -> float:
    _, coarse = _raw_rule(spec, NORMALIZATION_NODES // 2)
    _, fine = _raw_rule(spec, NORMALIZATION_NODES)
    total = float(fine.sum())
    if abs(total - coarse.sum()) > 1e-10 * total:
        raise AccuracyError("weight normalization did not converge")
    return total


@lru_cache(maxsize=64)
def sigma_quadrature(spec: WeightSpec, nodes_per_interval: int) -> SigmaQuadrature:
    """Quadrature on Σ with the weight absorbed into the weights.

    The cosine substitution cancels the inverse-square-root endpoint factors,
    so Gauss-Legendre in θ sees analytic integrands.

    Args:
    ----
        spec: The weight.
        nodes_per_interval: Gauss-Legendre nodes per interval, at least 4.

    Returns:
    -------
        A :class:`SigmaQuadrature` normalized so that Σ ω_i = 1.

    """
    if nodes_per_interval < 4:
        raise ValueError("sigma_quadrature needs at least 4 nodes per interval")
    nodes, weights = _raw_rule(spec, nodes_per_interval)
    weights = weights / weights.sum()
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return SigmaQuadrature(nodes=nodes, weights=weights)


def weight_eval(spec: WeightSpec, x: float) -> float:
    """Normalized weight w(x) at an interior point of Σ."""
    intervals = spec.domain.intervals
    index = next(
        (i for i, iv in enumerate(intervals) if iv.lo < x < iv.hi),
        None,
    )
    if index is None:
        raise DomainError(f"x = {x!r} is not in the interior of {spec.domain}")
    iv = intervals[index]
    c, d, others, other_exps = spec.factors(index)
    raw = (x - iv.lo) ** (0.5 * c) * (iv.hi - x) ** (0.5 * d)
    if others.size:
        raw *= float(np.prod(np.abs(x - others) ** (0.5 * other_exps)))
    return raw / _normalization(spec)


# ---------------------------------------------------------------------------
# Recurrence tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RecurrenceTable:
    """Jacobi coefficients (a_k, b_k), k < count, of orthonormal polynomials."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self) -> None:
        if self.a.shape != self.b.shape:
            raise ValueError("a and b must have the same length")
        if np.any(self.b <= 0.0):
            raise ConditioningError("recurrence coefficients b_k must be positive")
        self.a.setflags(write=False)
        self.b.setflags(write=False)

    @property
    def count(self) -> int:
        return self.a.size

    def truncated(self, count: int) -> "RecurrenceTable":
        if count > self.count:
            raise IndexError(f"table holds {self.count} pairs, asked for {count}")
        return RecurrenceTable(self.a[:count].copy(), self.b[:count].copy())

    def affine(self, scale: float, shift: float) -> "RecurrenceTable":
        """Table of the domain mapped by x ↦ scale·x + shift."""
        return RecurrenceTable(scale * self.a + shift, abs(scale) * self.b)

    def to_rows(self) -> list[tuple[int, float, float]]:
        return [(k, float(a), float(b)) for k, (a, b) in enumerate(zip(self.a, self.b))]


def chebyshev_recurrence(interval: Interval, count: int) -> RecurrenceTable:
    """Orthonormal Chebyshev table on [α−c, α+c].

    a_k = α, b_0 = c/√2 and b_k = c/2.
    """
    a = np.full(count, interval.mid)
    b = np.full(count, 0.5 * interval.half)
    if count:
        b[0] = interval.half / math.sqrt(2.0)
    return RecurrenceTable(a, b)


def symmetric_akhiezer_recurrence(
    beta: float, shift: float, scale: float, count: int
) -> RecurrenceTable:
    """Closed-form table on shift + scale·([−1,−β] ∪ [β,1])."""
    if not 0.0 < beta < 1.0:
        raise DomainError(f"beta must lie in (0, 1), got {beta}")
    if scale <= 0.0:
        raise DomainError(f"scale must be positive, got {scale}")
    signs = np.where(np.arange(count) % 2 == 0, 1.0, -1.0)
    a = scale * beta * signs + shift
    b = np.full(count, scale * math.sqrt(1.0 - beta * beta) / 2.0)
    if count:
        b[0] = scale * math.sqrt((1.0 - beta * beta) / 2.0)
    return RecurrenceTable(a, b)


def stieltjes_recurrence(
    spec: WeightSpec, quad: SigmaQuadrature, count: int
) -> RecurrenceTable:
    """First ``count`` Jacobi pairs by the discretized Stieltjes procedure."""
    per_interval = quad.size // len(spec.domain.intervals)
    if per_interval < 2 * count + 2:
        logger.warning(
            "Stieltjes quadrature may not resolve the requested degree",
            extra={"nodes": per_interval, "iterations": count},
        )
    x, w = quad.nodes, quad.weights
    a = np.empty(count)
    b = np.empty(count)
    p_prev = np.zeros_like(x)
    p = np.ones_like(x)
    b_prev = 0.0
    for k in range(count):
        wp = w * p
        a[k] = np.dot(wp, x * p)
        q = (x - a[k]) * p - b_prev * p_prev
        norm_sq = np.dot(w, q * q)
        if not norm_sq > 0.0 or not np.isfinite(norm_sq):
            raise ConditioningError(
                f"Stieltjes lost positivity at k={k}; increase the node count"
            )
        b[k] = math.sqrt(norm_sq)
        p_prev, p, b_prev = p, q / b[k], b[k]
    return RecurrenceTable(a, b)


def akhiezer_recurrence(domain: CutDomain, count: int) -> RecurrenceTable:
    """Akhiezer table on two intervals: closed form when balanced, else Stieltjes."""
    if domain.is_balanced():
        (b1, _), (b2, g2) = [(iv.lo, iv.hi) for iv in domain.intervals]
        shift, scale = 0.5 * (b1 + g2), 0.5 * (g2 - b1)
        return symmetric_akhiezer_recurrence((b2 - shift) / scale, shift, scale, count)
    spec = WeightSpec(domain=domain, kind="akhiezer")
    quad = sigma_quadrature(spec, STIELTJES_NODE_FACTOR * (count + 1))
    return stieltjes_recurrence(spec, quad, count)


def recurrence_for(spec: WeightSpec, count: int) -> RecurrenceTable:
    """Recurrence table of any weight, using closed forms when available."""
    if spec.kind == "chebyshev":
        return chebyshev_recurrence(spec.domain.intervals[0], count)
    if spec.kind == "akhiezer":
        return akhiezer_recurrence(spec.domain, count)
    quad = sigma_quadrature(spec, STIELTJES_NODE_FACTOR * (count + 1))
    return stieltjes_recurrence(spec, quad, count)


# ---------------------------------------------------------------------------
# Polynomial evaluation
# ---------------------------------------------------------------------------


def poly_values(table: RecurrenceTable, count: int, x: np.ndarray) -> np.ndarray:
    """Rows p_0(x), ..., p_{count-1}(x) for an array of points."""
    if count > table.count:
        raise IndexError(f"table holds {table.count} pairs, asked for {count}")
    x = np.asarray(x)
    out = np.empty((count,) + x.shape, dtype=np.result_type(x, np.float64))
    if count == 0:
        return out
    out[0] = 1.0
    if count > 1:
        out[1] = (x - table.a[0]) / table.b[0]
    for k in range(2, count):
        out[k] = (
            (x - table.a[k - 1]) * out[k - 1] - table.b[k - 2] * out[k - 2]
        ) / table.b[k - 1]
    return out


def poly_eval(table: RecurrenceTable, k: int, x: float | complex) -> float | complex:
    """p_k(x) by the forward recurrence."""
    if not 0 <= k < table.count:
        raise IndexError(f"degree {k} outside table of {table.count} pairs")
    return poly_values(table, k + 1, np.asarray(x))[k][()]


def poly_matrices(table: RecurrenceTable, matrix: np.ndarray) -> Iterator[np.ndarray]:
    """Yield p_0(M), p_1(M), ... keeping only a three-term window."""
    size = matrix.shape[0]
    prev = None
    cur = np.eye(size)
    for k in range(table.count):
        yield cur
        if k + 1 == table.count:
            return
        nxt = matrix @ cur - table.a[k] * cur
        if prev is not None:
            nxt -= table.b[k - 1] * prev
        prev, cur = cur, nxt / table.b[k]


# ---------------------------------------------------------------------------
# Cauchy transforms
# ---------------------------------------------------------------------------


def _node_spacing(domain: CutDomain, per_interval: int) -> float:
    return max(iv.half for iv in domain.intervals) * math.pi / per_interval


def cauchy_transforms(
    spec: WeightSpec,
    table: RecurrenceTable,
    count: int,
    points: np.ndarray,
    *,
    base_nodes: int | None = None,
) -> np.ndarray:
    """(1/2πi) ∫ p_j(x) w(x) / (x − z) dx for j < count at every z in ``points``.

    Nodes per interval start at max(8(count+1), 64) and double until
    successive results agree to 1e-13 or the doubling cap is hit.
    """
    points = np.atleast_1d(np.asarray(points, dtype=np.complex128))
    n = base_nodes or max(STIELTJES_NODE_FACTOR * (count + 1), 64)
    cap = n * 2**CAUCHY_DOUBLINGS
    gap = min((spec.domain.distance(z) for z in points), default=math.inf)
    if gap < GUARD_SPACINGS * _node_spacing(spec.domain, cap):
        raise AccuracyError(
            f"Cauchy transform point within {gap:.3e} of Σ is inside the guard band"
        )

    def evaluate(per_interval: int) -> np.ndarray:
        quad = sigma_quadrature(spec, per_interval)
        basis = poly_values(table, count, quad.nodes) * quad.weights
        kernel = 1.0 / (quad.nodes[:, None] - points[None, :])
        return basis @ kernel / (2j * math.pi)

    previous = evaluate(n)
    while n < cap:
        n *= 2
        current = evaluate(n)
        change = float(np.max(np.abs(current - previous), initial=0.0))
        if change < CAUCHY_TOL:
            logger.debug("Cauchy transforms converged", extra={"nodes": n})
            return current
        previous = current
    raise AccuracyError(
        f"Cauchy transforms reached {n} nodes with change {change:.3e} > {CAUCHY_TOL}"
    )


def cauchy_transform(
    spec: WeightSpec, table: RecurrenceTable, k: int, z: complex
) -> complex:
    """(1/2πi) ∫ p_k(x) w(x) / (x − z) dx."""
    return complex(cauchy_transforms(spec, table, k + 1, np.array([z]))[k, 0])


# ---------------------------------------------------------------------------
# Coefficient streams
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoefficientStream:
    """Series coefficients α_j with their decay envelope c·ρ^{-j}.

    ``extend`` computes longer prefixes on demand; closed-form streams use it
    to behave as unbounded sequences.
    """

    alpha: np.ndarray
    rho: float | None
    c_envelope: float = 5.0
    kind: str = "series"
    extend: Callable[[int], np.ndarray] | None = field(
        default=None, repr=False, compare=False
    )

    def __len__(self) -> int:
        return self.alpha.size

    def take(self, count: int) -> np.ndarray:
        """First ``count`` coefficients."""
        if count <= self.alpha.size:
            return self.alpha[:count]
        if self.extend is None:
            raise IndexError(f"stream holds {self.alpha.size} coefficients")
        return self.extend(count)

    def envelope(self, count: int | None = None) -> np.ndarray:
        count = self.alpha.size if count is None else count
        if self.rho is None:
            return np.full(count, np.inf)
        return self.c_envelope * self.rho ** -np.arange(count, dtype=np.float64)

    def rounding_floor(self) -> float:
        """Magnitude below which α_j carries no digits: 100·ε_mach·max|α|."""
        if self.alpha.size == 0:
            return 0.0
        scale = float(np.max(np.abs(self.alpha)))
        return ROUNDING_FLOOR * float(np.finfo(np.float64).eps) * scale

    def envelope_violations(self, floor: float = ENVELOPE_FLOOR) -> np.ndarray:
        """Indices j with |α_j| above the envelope before saturation.

        Only indices whose envelope is at least ``floor`` and at least the
        rounding floor count, and α_j at rounding level is never flagged.
        """
        env = self.envelope()
        noise = self.rounding_floor()
        active = env >= max(floor, noise)
        magnitude = np.abs(self.alpha)
        return np.flatnonzero(active & (magnitude > env) & (magnitude > noise))

    def checked(self) -> "CoefficientStream":
        violations = self.envelope_violations()
        if violations.size:
            logger.warning(
                "Coefficients exceed the decay envelope",
                extra={"errors": violations.size, "rho": self.rho},
            )
        return self

    def to_rows(self) -> list[tuple[int, float, float]]:
        env = self.envelope()
        return [
            (j, float(abs(a)), float(e))
            for j, (a, e) in enumerate(zip(self.alpha, env, strict=True))
        ]


def _realify(values: np.ndarray, what: str) -> np.ndarray:
    imag = float(np.max(np.abs(values.imag), initial=0.0))
    scale = max(float(np.max(np.abs(values.real), initial=0.0)), 1.0)
    if imag > 1e-10 * scale:
        logger.warning(f"{what} has a large imaginary residue", extra={"errors": imag})
    return np.ascontiguousarray(values.real)


def _project(
    spec: WeightSpec, table: RecurrenceTable, count: int, f_at_nodes
) -> np.ndarray:
    """α_j = Σ ω_i p_j(x_i) F(x_i) with F evaluated on the Σ-quadrature nodes."""
    quad = sigma_quadrature(spec, STIELTJES_NODE_FACTOR * (count + 1))
    basis = poly_values(table, count, quad.nodes) * quad.weights
    return basis @ f_at_nodes(quad.nodes)


def contour_circles(
    domain: CutDomain, radius_factor: float = 1.0
) -> list[tuple[float, float]]:
    """Circle (center, radius) around every interval.

    The radius is radius_factor × (half-length + clearance), where clearance
    is min(adjacent gap / 4, half-length).
    """
    intervals = domain.intervals
    circles = []
    for index, iv in enumerate(intervals):
        gaps = []
        if index > 0:
            gaps.append(iv.lo - intervals[index - 1].hi)
        if index + 1 < len(intervals):
            gaps.append(intervals[index + 1].lo - iv.hi)
        clearance = min([g / 4.0 for g in gaps] + [iv.half])
        circles.append((iv.mid, radius_factor * (iv.half + clearance)))
    for index, (center, radius) in enumerate(circles):
        for other, iv in enumerate(intervals):
            reach = min(abs(center - iv.lo), abs(center - iv.hi))
            if other != index and reach <= radius:
                raise GeometryError(
                    f"circle around interval {index} intersects interval {other}"
                )
        if index + 1 < len(circles):
            nxt_center, nxt_radius = circles[index + 1]
            if center + radius >= nxt_center - nxt_radius:
                raise GeometryError(f"circles {index} and {index + 1} overlap")
    return circles


def _circle_rule(
    center: float, radius: float, m: int
) -> tuple[np.ndarray, np.ndarray]:
    theta = 2.0 * math.pi * (np.arange(m) + 0.5) / m
    unit = np.exp(1j * theta)
    return center + radius * unit, (2.0 * math.pi / m) * 1j * radius * unit


def _contour_coefficients(
    f: Callable[[np.ndarray, int], np.ndarray],
    spec: WeightSpec,
    table: RecurrenceTable,
    count: int,
    m: int,
    radius_factor: float,
) -> np.ndarray:
    """α_j ≈ −Σ_k f(z_k) w_k C[p_j w](z_k) over trapezoid rules on circles.

    The finite sums are reordered: the trapezoid Cauchy integral of f is
    formed at each Σ node first, then projected onto p_j.
    """
    circles = contour_circles(spec.domain, radius_factor)
    rules = [_circle_rule(c, r, m) for c, r in circles]
    samples = [f(z, index) for index, (z, _) in enumerate(rules)]

    def cauchy_of_f(x: np.ndarray) -> np.ndarray:
        total = np.zeros(x.shape, dtype=np.complex128)
        for (z, w), fz in zip(rules, samples):
            total += ((fz * w)[None, :] / (z[None, :] - x[:, None])).sum(axis=1)
        return total / (2j * math.pi)

    return _project(spec, table, count, cauchy_of_f)


def _adaptive_contour(
    f: Callable[[np.ndarray, int], np.ndarray],
    spec: WeightSpec,
    table: RecurrenceTable,
    count: int,
    m: int,
    radius_factor: float,
    adaptive: bool,
    cap: int,
) -> np.ndarray:
    current = _contour_coefficients(f, spec, table, count, m, radius_factor)
    if not adaptive:
        return current
    while True:
        if 2 * m > cap:
            raise AccuracyError(
                f"contour coefficients did not settle below {CONTOUR_TOL} "
                f"with {m} nodes per circle"
            )
        m *= 2
        finer = _contour_coefficients(f, spec, table, count, m, radius_factor)
        change = float(np.max(np.abs(finer - current), initial=0.0))
        current = finer
        if change <= CONTOUR_TOL:
            logger.debug("Contour coefficients settled", extra={"nodes": m})
            return current


def _sign_values(domain: CutDomain, positive: int) -> np.ndarray:
    count = len(domain.intervals)
    positive = positive % count
    return np.where(np.arange(count) == positive, 1.0, -1.0)


def sign_coeffs_circles(
    spec: WeightSpec,
    table: RecurrenceTable,
    count: int,
    m: int = 200,
    radius_factor: float = 1.0,
    *,
    positive: int = -1,
    adaptive: bool = True,
    cap: int = 3200,
) -> CoefficientStream:
    """Coefficients of sign (+1 on interval ``positive``, −1 elsewhere).

    Args:
    ----
        spec: Weight on a two-interval domain.
        table: Recurrence table of ``spec`` with at least ``count`` pairs.
        count: Number of coefficients.
        m: Trapezoid nodes per circle (starting value when adaptive).
        radius_factor: Circle radius multiplier.
        positive: Index of the interval where sign is +1 (default: rightmost).
        adaptive: Double ``m`` until coefficients agree to 1e-11.
        cap: Largest ``m`` tried.

    Returns:
    -------
        A real :class:`CoefficientStream` with ρ from :func:`sign_rate`.

    """
    values = _sign_values(spec.domain, positive)
    alpha = _adaptive_contour(
        lambda z, index: np.full(z.shape, values[index], dtype=np.complex128),
        spec,
        table,
        count,
        m,
        radius_factor,
        adaptive,
        cap,
    )
    rho = sign_rate(spec.domain).rho
    return CoefficientStream(_realify(alpha, "sign stream"), rho, kind="sign").checked()


def general_f_coeffs(
    f: Callable[[np.ndarray], np.ndarray],
    spec: WeightSpec,
    table: RecurrenceTable,
    count: int,
    m: int = 200,
    radius_factor: float = 1.0,
    *,
    rho: float | None = None,
    adaptive: bool = True,
    cap: int = 3200,
) -> CoefficientStream:
    """Coefficients of an analytic ``f`` sampled on circles around Σ."""
    alpha = _adaptive_contour(
        lambda z, _index: np.asarray(f(z), dtype=np.complex128),
        spec,
        table,
        count,
        m,
        radius_factor,
        adaptive,
        cap,
    )
    return CoefficientStream(_realify(alpha, "f stream"), rho, kind="general").checked()


def sign_coeffs_pv(
    spec: WeightSpec,
    table: RecurrenceTable,
    count: int,
    m: int = 200,
    *,
    positive: int = -1,
) -> CoefficientStream:
    """Sign coefficients from the principal-value integral along the imaginary axis.

    z = tan(πy/2) maps Gauss-Legendre nodes y ∈ (−1, 1) onto the axis, and
    α_j ≈ iπ Σ_ℓ (z_ℓ² + 1) w_ℓ C[p_j w](−i z_ℓ).
    Needs 0 inside the gap.
    """
    domain = spec.domain
    if len(domain.intervals) != 2:
        raise UnsupportedDomainError("principal-value coefficients need two intervals")
    lo, hi = domain.gaps[0]
    if not lo < 0.0 < hi:
        raise GeometryError(f"0 must lie strictly inside the gap of {domain}")
    y, wy = gauss_legendre(m)
    z = np.tan(0.5 * math.pi * y)
    scale = (z * z + 1.0) * wy

    def cauchy_of_sign(x: np.ndarray) -> np.ndarray:
        return 0.5 * (scale[None, :] / (x[:, None] + 1j * z[None, :])).sum(axis=1)

    alpha = _project(spec, table, count, cauchy_of_sign)
    if _sign_values(domain, positive)[1] < 0:
        alpha = -alpha
    rho = sign_rate(domain).rho
    return CoefficientStream(_realify(alpha, "pv stream"), rho, kind="sign").checked()


def inverse_coeffs_chebyshev(interval: Interval, count: int = 0) -> CoefficientStream:
    """Closed-form coefficients of 1/x in the orthonormal Chebyshev basis.

    With S_0 = 1/(√(α−c)√(α+c)) and S_k = S_0·r^k (r from
    :func:`inverse_rate`), α_0 = S_0 and α_k = √2·S_k. The stream extends
    itself to any length.
    """
    ratio = inverse_rate(interval)
    product = (interval.mid - interval.half) * (interval.mid + interval.half)
    s0 = math.copysign(1.0 / math.sqrt(product), interval.mid)

    def coefficients(n: int) -> np.ndarray:
        alpha = math.sqrt(2.0) * s0 * ratio ** np.arange(n, dtype=np.float64)
        if n:
            alpha[0] = s0
        return alpha

    return CoefficientStream(
        coefficients(count), 1.0 / abs(ratio), kind="inverse", extend=coefficients
    )


def inverse_scalars(interval: Interval, count: int) -> np.ndarray:
    """Raw scalars S_k = S_0·r^k of the classical Chebyshev form."""
    stream = inverse_coeffs_chebyshev(interval, count)
    scalars = stream.alpha / math.sqrt(2.0)
    if count:
        scalars[0] = stream.alpha[0]
    return scalars


def inverse_coeffs_general(
    spec: WeightSpec, table: RecurrenceTable, count: int
) -> CoefficientStream:
    """α_j = 2πi·C[p_j w](0) for 0 ∉ Σ."""
    if spec.domain.contains(0.0):
        raise SingularDomainError(f"0 lies in {spec.domain}")
    values = 2j * math.pi * cauchy_transforms(spec, table, count, np.array([0.0]))[:, 0]
    rho = inverse_rho(spec.domain)
    return CoefficientStream(
        _realify(values, "inverse stream"), rho, kind="inverse"
    ).checked()
