"""Numeric evaluators for the analytic bounds: the isoperimetric Hopf
estimate, degree bounds, rational approximation of twist angles, and
the short-geodesic tube trichotomy.

All universal constants default to 1; outputs are in normalized units
and users calibrate constants themselves.  This is the only module
where floating point is acceptable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .errors import (
    InvalidParams,
    NonPositiveHopfSize,
    NonPositiveInput,
    NonPositiveVolume,
    NotCoprime,
    ZeroDenominator,
)


def gromov_hopf_bound(iso: float, vol: float, area: float, L: float) -> float:
    """iso * vol * area^-2 * L^4, the norm bound for Hopf invariants of
    L-Lipschitz maps."""
    for name, v in (("iso", iso), ("vol", vol), ("area", area), ("L", L)):
        if v <= 0:
            raise NonPositiveInput(f"{name} must be positive, got {v}")
    return iso * vol * area ** -2 * L ** 4


def milnor_thurston_degree_bound(N: int, V: float, C: float = 1.0) -> float:
    """C * N / V: degree bound from simplex count N and target volume V."""
    if V <= 0:
        raise NonPositiveVolume(f"volume must be positive, got {V}")
    if N < 0:
        raise NonPositiveInput(f"simplex count must be nonnegative, got {N}")
    return C * N / V


def degree_bound_from_hopf_sizes(L: float, hs_domain: float, hs_target: float) -> float:
    """L^4 * hs_domain / hs_target: degree bound through Hopf sizes."""
    if hs_target <= 0:
        raise NonPositiveHopfSize(f"target Hopf size must be positive, got {hs_target}")
    return L ** 4 * hs_domain / hs_target


def spanning_genus_lower_bound(epsilon: float, c: float = 1.0) -> float:
    """c * epsilon^-1/2: area and genus bound for surfaces spanning the
    core of a deep tube."""
    if epsilon <= 0:
        raise NonPositiveInput(f"epsilon must be positive, got {epsilon}")
    return c * epsilon ** -0.5


def dehn_core_linking(m: int, n: int) -> Fraction:
    """Linking number m/n of the core with its meridian disk boundary
    after (m, n) surgery."""
    if n == 0:
        raise ZeroDenominator("surgery slope has zero denominator")
    if math.gcd(m, n) != 1:
        raise NotCoprime(f"({m}, {n}) is not a coprime pair")
    return Fraction(m, n)


def best_rational_approx(x: float, q_max: int) -> Tuple[int, int, float]:
    """(p, q, |x - p/q|) minimizing the error over denominators <= q_max.

    Continued-fraction scan: the optimum is the last convergent that
    fits or the deepest semiconvergent of the next step; both are
    compared exactly, ties going to the smaller denominator.
    """
    if q_max < 1:
        raise InvalidParams(f"q_max must be >= 1, got {q_max}")
    target = Fraction(x)
    # convergents p/q via the standard recurrence
    pm1, qm1 = 1, 0
    a0 = math.floor(target)
    p0, q0 = a0, 1
    rem = target - a0
    while rem:
        a = math.floor(1 / rem)
        rem = 1 / rem - a
        p1, q1 = a * p0 + pm1, a * q0 + qm1
        if q1 > q_max:
            best_p, best_q = p0, q0
            t = (q_max - qm1) // q0
            if t >= 1:
                ps, qs = t * p0 + pm1, t * q0 + qm1
                if abs(target - Fraction(ps, qs)) < abs(target - Fraction(best_p, best_q)):
                    best_p, best_q = ps, qs
            g = math.gcd(best_p, best_q)
            best_p, best_q = best_p // g, best_q // g
            return best_p, best_q, float(abs(target - Fraction(best_p, best_q)))
        pm1, qm1, p0, q0 = p0, q0, p1, q1
    g = math.gcd(p0, q0) or 1
    return p0 // g, q0 // g, float(abs(target - Fraction(p0 // g, q0 // g)))


@dataclass(frozen=True)
class TubeParams:
    """Inputs of the tube trichotomy: core length epsilon, twist angle
    theta (radians), optional homology order q of the core, normalization
    constants c and C, an optional override for the disk angle delta
    (default rule pi/N_w), and the rational-approximation cutoff."""

    epsilon: float
    theta: float
    q: Optional[int] = None
    c: float = 1.0
    C: float = 1.0
    delta: Optional[float] = None
    q_max: int = 1000

    def validate(self) -> None:
        if self.epsilon <= 0:
            raise InvalidParams(f"epsilon must be positive, got {self.epsilon}")
        if self.q is not None and self.q < 1:
            raise InvalidParams(f"q must be >= 1 when given, got {self.q}")
        if self.q_max < 1:
            raise InvalidParams(f"q_max must be >= 1, got {self.q_max}")
        if self.c <= 0 or self.C <= 0:
            raise InvalidParams("constants c and C must be positive")
        if self.delta is not None and self.delta <= 0:
            raise InvalidParams(f"delta must be positive, got {self.delta}")


@dataclass(frozen=True)
class TubeReport:
    R_lower: float
    R_upper: float
    best_approx: Tuple[int, int, float]
    volume_threshold: float
    order_threshold: float
    hopf_threshold: float
    hopf_size_lower: float
    tube_count_bound: float
    linking_per_pair: float
    n_w: int
    branch: str

    def to_json_dict(self) -> dict:
        return {
            "R_lower": self.R_lower,
            "R_upper": self.R_upper,
            "best_approx": list(self.best_approx),
            "volume_threshold": self.volume_threshold,
            "order_threshold": self.order_threshold,
            "hopf_threshold": self.hopf_threshold,
            "hopf_size_lower": self.hopf_size_lower,
            "tube_count_bound": self.tube_count_bound,
            "linking_per_pair": self.linking_per_pair,
            "n_w": self.n_w,
            "branch": self.branch,
        }


def tube_report(params: TubeParams) -> TubeReport:
    """Evaluate the trichotomy for a tube around a short geodesic.

    The twist obstruction uses the distance from theta/2pi to the
    nearest fraction with the core's own order q as denominator; that
    is the quantity constrained by homology, and it feeds the Hopf-size
    lower bound and the per-pair linking.  The unconstrained best
    rational approximation (denominator up to q_max) is reported
    separately, and the tube count uses its denominator rounded up to a
    multiple of q.

    Branch selection mirrors the elimination order of the case
    analysis: a large or absent order certifies torsion_order, then a
    large twist obstruction certifies hopf_size, and volume is the
    residual alternative.
    """
    params.validate()
    eps, c, C = params.epsilon, params.c, params.C
    r_lower = c * eps ** -0.5
    r_upper = C * eps ** (-7.0 / 12.0)
    angle = params.theta / (2 * math.pi)
    best = best_rational_approx(angle, params.q_max)
    volume_threshold = c * eps ** (-1.0 / 6.0)
    order_threshold = c * eps ** (-1.0 / 6.0)
    hopf_threshold = c * eps ** -0.25

    q_eff = params.q if params.q is not None else 1
    error_q = abs(angle - round(q_eff * angle) / q_eff)
    hopf_size_lower = c * error_q * r_lower ** 2

    n_w = q_eff * -(-best[1] // q_eff)
    delta = params.delta if params.delta is not None else math.pi / n_w
    tube_count_bound = r_lower * delta ** -2 / n_w
    linking_per_pair = error_q * n_w ** 2

    if params.q is None or params.q >= order_threshold:
        branch = "torsion_order"
    elif hopf_size_lower >= hopf_threshold:
        branch = "hopf_size"
    else:
        branch = "volume"
    return TubeReport(
        R_lower=r_lower,
        R_upper=r_upper,
        best_approx=best,
        volume_threshold=volume_threshold,
        order_threshold=order_threshold,
        hopf_threshold=hopf_threshold,
        hopf_size_lower=hopf_size_lower,
        tube_count_bound=tube_count_bound,
        linking_per_pair=linking_per_pair,
        n_w=n_w,
        branch=branch,
    )
