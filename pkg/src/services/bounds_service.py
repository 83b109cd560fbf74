import logging
import math
from typing import Sequence

import numpy as np
from scipy.optimize import bisect, minimize_scalar

from src.errors import DomainError
from src.schemas import AgnosticEstimates, CorollaryBound, EpsilonBound

logger = logging.getLogger(__name__)

E_TWO_THIRDS = math.exp(2.0 / 3.0)
ALPHA_GRID_STEP = 1e-3
EPSILON_XTOL = 1e-4
COROLLARY_MEMORY = 576
TABLE_P = (2, 4, 8)
TABLE_M = (256, 1024, 2048, 65536, 262144, 1048576)


def _check_probability(name: str, value: float) -> None:
    if not 0 < value < 1:
        raise DomainError(f"{name} must lie in (0, 1), got {value}")


def _check_alpha_range(p: int, capacity: int, alpha: float) -> None:
    alpha_min = 4 * p / capacity
    if not alpha_min <= alpha < 1:
        raise DomainError(f"alpha must lie in [4p/M, 1) = [{alpha_min:.6g}, 1), got {alpha}")


def _log_delta(p: int, capacity: int, eps: float, alpha):
    """Natural log of the unclamped reliability bound; alpha may be an array."""
    alpha = np.asarray(alpha, dtype=np.float64)
    half = p / 2.0
    log_factor = half * math.log(p) - p / 3.0 - half * math.log(capacity)
    balance = half * np.log(alpha) - p * np.log1p(-alpha)
    spread = (
        p * math.log(2.0) - half * np.log(alpha) - p * math.log(eps) - math.log(2.0**half - 1.0)
    )
    return log_factor + np.logaddexp(balance, spread)


class BoundsService:
    @staticmethod
    def tail_bound(p: int, c: float, t: float) -> float:
        """P(|X - E X| >= T) <= (pC / (e^(2/3) T^2))^(p/2), clamped to 1."""
        if t <= 0:
            raise DomainError(f"T must be positive, got {t}")
        if p < 2:
            raise DomainError(f"p must be at least 2, got {p}")
        if c < p:
            raise DomainError(f"C = max(p, variance) cannot be below p (C={c}, p={p})")
        log_bound = (p / 2.0) * (math.log(p * c) - 2.0 / 3.0 - 2.0 * math.log(t))
        return min(1.0, math.exp(min(log_bound, 0.0)))

    @staticmethod
    def delta_given_alpha(p: int, capacity: int, eps: float, alpha: float) -> float:
        if p < 2:
            raise DomainError(f"p must be at least 2, got {p}")
        _check_probability("eps", eps)
        _check_alpha_range(p, capacity, alpha)
        return float(min(1.0, math.exp(min(float(_log_delta(p, capacity, eps, alpha)), 0.0))))

    @staticmethod
    def delta_simplified(p: int, capacity: int, eps: float) -> float:
        """The alpha = 1/2 form, valid for M >= 8p."""
        if capacity < 8 * p:
            raise DomainError(f"the simplified bound needs M >= 8p (M={capacity}, p={p})")
        _check_probability("eps", eps)
        half = p / 2.0
        factor = p**half / (math.exp(p / 3.0) * capacity**half)
        value = factor * (2.0**half + 8.0**half / (eps**p * (2.0**half - 1.0)))
        return min(1.0, value)

    @staticmethod
    def optimal_alpha(p: int, capacity: int, eps: float) -> tuple[float, float]:
        """
        Minimize the reliability bound over alpha in [4p/M, 1): a grid of
        step 1e-3 followed by golden-section refinement around the best cell.
        Returns (alpha, unclamped log bound).
        """
        alpha_min = 4 * p / capacity
        if alpha_min >= 1:
            raise DomainError(f"no admissible alpha for M={capacity}, p={p}")
        grid = np.arange(alpha_min, 1.0, ALPHA_GRID_STEP)
        values = _log_delta(p, capacity, eps, grid)
        best = int(np.argmin(values))
        alpha, value = float(grid[best]), float(values[best])
        if 0 < best < len(grid) - 1:
            try:
                result = minimize_scalar(
                    lambda a: float(_log_delta(p, capacity, eps, a)),
                    bracket=(grid[best - 1], grid[best], grid[best + 1]),
                    method="golden",
                )
            except ValueError:
                # flat neighbourhood; the grid point stands
                return alpha, value
            if result.fun < value and alpha_min <= result.x < 1:
                alpha, value = float(result.x), float(result.fun)
        return alpha, value

    @staticmethod
    def epsilon_for(p: int, capacity: int, delta: float) -> EpsilonBound:
        """
        Smallest precision eps whose alpha-optimized reliability bound is at
        most delta, by bisection to 1e-4. An infeasible cell comes back with
        eps=None.
        """
        if capacity < 8 * p:
            raise DomainError(f"epsilon_for needs M >= 8p (M={capacity}, p={p})")
        _check_probability("delta", delta)
        target = math.log(delta)

        def excess(eps: float) -> float:
            return BoundsService.optimal_alpha(p, capacity, eps)[1] - target

        low, high = 1e-6, 1.0 - 1e-9
        if excess(high) > 0:
            logger.debug("No guarantee for p=%d M=%d delta=%g", p, capacity, delta)
            return EpsilonBound(p=p, capacity=capacity, delta=delta)
        if excess(low) <= 0:
            eps = low
        else:
            eps = bisect(excess, low, high, xtol=EPSILON_XTOL)
            # step to the feasible side of the bracket
            while excess(eps) > 0 and eps < high:
                eps = min(eps + EPSILON_XTOL / 2, high)
        alpha = BoundsService.optimal_alpha(p, capacity, eps)[0]
        return EpsilonBound(p=p, capacity=capacity, delta=delta, eps=eps, alpha=alpha)

    @staticmethod
    def bounds_table(
        ps: Sequence[int] = TABLE_P, capacities: Sequence[int] = TABLE_M, delta: float = 0.05
    ) -> list[list[EpsilonBound]]:
        """Rows indexed by M, columns by p."""
        _check_probability("delta", delta)
        return [[BoundsService._table_cell(p, capacity, delta) for p in ps] for capacity in capacities]

    @staticmethod
    def _table_cell(p: int, capacity: int, delta: float) -> EpsilonBound:
        # below 8p the bound has no admissible form; the cell stays empty
        if capacity < 8 * p:
            logger.debug("No table cell for p=%d M=%d", p, capacity)
            return EpsilonBound(p=p, capacity=capacity, delta=delta)
        return BoundsService.epsilon_for(p, capacity, delta)

    @staticmethod
    def corollary_reliability(eps: float) -> CorollaryBound:
        """
        Reliability at p=2 and M = 576/eps^2. The closed form from the proof
        grows for large eps; delta is capped at its eps -> 0 limit, which
        bounds it for every eps.
        """
        _check_probability("eps", eps)
        scale = 2.0 / (E_TWO_THIRDS * COROLLARY_MEMORY)
        expression = scale * ((1.0 - eps) + 4.0 / (1.0 - eps))
        return CorollaryBound(
            eps=eps,
            capacity=COROLLARY_MEMORY / eps**2,
            proof_expression=expression,
            delta=min(expression, 5.0 * scale),
        )

    @staticmethod
    def iceberg_memory(m: int, r: int, eps: float) -> int:
        """Buffer size M ~ 20m/(eps^2 r) for precision eps 19 times out of 20."""
        if r <= 0:
            raise DomainError(f"r must be positive, got {r}")
        if r > m:
            raise DomainError(f"r cannot exceed m (r={r}, m={m})")
        if eps <= 0:
            raise DomainError(f"eps must be positive, got {eps}")
        memory = math.ceil(round(20.0 * m / (eps**2 * r), 6))
        if memory > m:
            logger.warning("Iceberg buffer M=%d exceeds the %d distinct items; sampling cannot help here", memory, m)
        return memory

    @staticmethod
    def iceberg_chebyshev(m: int, r: int, m_prime: int, eps: float) -> float:
        """Chebyshev bound on a relative iceberg error of eps when m' of m items are sampled."""
        if not 0 < r <= m:
            raise DomainError(f"need 0 < r <= m (r={r}, m={m})")
        if not 0 < m_prime <= m:
            raise DomainError(f"need 0 < m' <= m (m'={m_prime}, m={m})")
        if m < 2:
            raise DomainError(f"need m >= 2, got {m}")
        if eps <= 0:
            raise DomainError(f"eps must be positive, got {eps}")
        return min(1.0, (m - r) * (m - m_prime) / (eps**2 * m_prime * r * (m - 1)))

    @staticmethod
    def iceberg_sample_size(m: int, r: int) -> int:
        """Sample size m' that holds about 200 interesting items."""
        if not 0 < r <= m:
            raise DomainError(f"need 0 < r <= m (r={r}, m={m})")
        return math.ceil(200 * m / r)

    @staticmethod
    def level_overflow_bound(p: int, m: float, capacity: int, width: int) -> float:
        """Probability that more than M keys still qualify at level L."""
        expected = m / 2.0**width
        if capacity <= expected:
            return 1.0
        return BoundsService.tail_bound(p, max(expected, p), capacity - expected)

    @staticmethod
    def agnostic_estimates(cells: float, eta: float) -> AgnosticEstimates:
        """
        View-size estimates for eta draws over V equally likely cells:
        the literal unoccupied-cells expression eta(1-1/V)^eta and the
        classical expected occupancy V(1-(1-1/V)^eta).
        """
        if cells < 1:
            raise DomainError(f"V must be at least 1, got {cells}")
        if eta < 0:
            raise DomainError(f"eta must be nonnegative, got {eta}")
        if eta == 0:
            empty = 1.0
        elif cells == 1:
            empty = 0.0
        else:
            empty = math.exp(eta * math.log1p(-1.0 / cells))
        return AgnosticEstimates(
            literal_unoccupied=eta * empty,
            standard_expected_distinct=cells * (1.0 - empty),
        )

    @staticmethod
    def agnostic_lower_gram(m: float, cells: float, sigma_size: int) -> float:
        """(n-1)-gram count estimate m(1 - (m/V)^|Sigma|)."""
        if not 0 <= m <= cells:
            raise DomainError(f"need 0 <= m <= V (m={m}, V={cells})")
        if sigma_size < 1:
            raise DomainError(f"alphabet size must be positive, got {sigma_size}")
        return m * (1.0 - (m / cells) ** sigma_size)

