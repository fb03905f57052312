"""Recurrence tables and coefficient streams prepared for the solvers."""

from __future__ import annotations

from dataclasses import dataclass

from akhsylv.config import SolverConfig
from akhsylv.core.akhiezer import (
    CoefficientStream,
    RecurrenceTable,
    WeightSpec,
    akhiezer_recurrence,
    chebyshev_recurrence,
    inverse_coeffs_chebyshev,
    inverse_coeffs_general,
    sign_coeffs_circles,
)
from akhsylv.core.cutdomain import CutDomain, Interval, inverse_rho, sign_rate
from akhsylv.exceptions import DomainError, GeometryError, SingularDomainError
from akhsylv.utils.logger import get_logger

__all__ = [
    "AkhiezerData",
    "sign_domain",
    "operator_interval",
    "sign_data",
    "inverse_data",
    "inverse_domain_rho",
]

logger = get_logger(__name__)


@dataclass(frozen=True)
class AkhiezerData:
    """Everything a solve needs from Σ.

    ``z_ref`` is the point whose Green's function level bounds the rate:
    the gap saddle for sign series and 0 for 1/x series.
    """

    domain: CutDomain
    table: RecurrenceTable
    coeffs: CoefficientStream
    rho: float
    z_ref: float


def sign_domain(domain_A: Interval, domain_B: Interval) -> tuple[CutDomain, int]:
    """Σ = domain_B ∪ domain_A and the index of the interval holding σ(A)."""
    try:
        domain = CutDomain.of(domain_A, domain_B)
    except DomainError as exc:
        raise GeometryError(
            f"spectral intervals [{domain_A}] and [{domain_B}] are not disjoint"
        ) from exc
    positive = 0 if domain.intervals[0] == domain_A else 1
    return domain, positive


def operator_interval(domain_A: Interval, domain_B: Interval) -> Interval:
    """Interval [A.lo − B.hi, A.hi − B.lo] holding σ(A) − σ(B)."""
    return Interval(lo=domain_A.lo - domain_B.hi, hi=domain_A.hi - domain_B.lo)


def sign_data(
    domain_A: Interval, domain_B: Interval, count: int, config: SolverConfig
) -> AkhiezerData:
    """Akhiezer table and sign coefficients with sign = +1 on σ(A)."""
    domain, positive = sign_domain(domain_A, domain_B)
    rate = sign_rate(domain)
    table = akhiezer_recurrence(domain, count)
    coeffs = sign_coeffs_circles(
        WeightSpec.for_domain(domain),
        table,
        count,
        config.contour_nodes,
        config.radius_factor,
        positive=positive,
        adaptive=config.adaptive_contour,
        cap=config.contour_nodes_cap,
    )
    logger.info(
        "Prepared sign data",
        extra={"method": "sign", "rho": rate.rho, "iterations": count},
    )
    return AkhiezerData(domain, table, coeffs, rate.rho, rate.z_star)


def _as_domain(domain: Interval | CutDomain) -> CutDomain:
    if isinstance(domain, Interval):
        domain = CutDomain.of(domain)
    if domain.contains(0.0):
        raise SingularDomainError(f"0 lies in the operator domain {domain}")
    return domain


def inverse_domain_rho(domain: Interval | CutDomain) -> float:
    """Rate base of 1/x series on ``domain``."""
    return inverse_rho(_as_domain(domain))


def inverse_data(domain: Interval | CutDomain, count: int) -> AkhiezerData:
    """Data for 1/x on the operator domain.

    One interval uses the Chebyshev table with its closed-form stream; two
    intervals use the Akhiezer table with Cauchy-transform coefficients.
    """
    domain = _as_domain(domain)
    if len(domain.intervals) == 1:
        interval = domain.intervals[0]
        table = chebyshev_recurrence(interval, count)
        coeffs = inverse_coeffs_chebyshev(interval, count)
    else:
        spec = WeightSpec.for_domain(domain)
        table = akhiezer_recurrence(domain, count)
        coeffs = inverse_coeffs_general(spec, table, count)
    logger.info(
        "Prepared inverse data",
        extra={"method": "inverse", "rho": coeffs.rho, "iterations": count},
    )
    return AkhiezerData(domain, table, coeffs, coeffs.rho, 0.0)
