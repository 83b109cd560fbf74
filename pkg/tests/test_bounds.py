import itertools
import logging
import math

import pytest

from src.errors import DomainError
from src.services import BoundsService
from src.services.bounds_service import E_TWO_THIRDS

TABLE = {
    (2, 256): 86.4, (2, 1024): 36.8, (2, 2048): 24.7, (2, 65536): 3.8, (2, 262144): 1.8, (2, 1048576): 0.9,
    (4, 256): 34.9, (4, 1024): 16.1, (4, 2048): 11.1, (4, 65536): 1.8, (4, 262144): 0.9, (4, 1048576): 0.5,
    (8, 256): 30.0, (8, 1024): 14.1, (8, 2048): 9.7, (8, 65536): 1.6, (8, 262144): 0.8, (8, 1048576): 0.4,
}
CAPACITIES = [256, 1024, 2048, 4096, 65536, 262144, 1048576]
EPSILONS = [0.01, 0.05, 0.1, 0.3, 0.5, 0.9]


class TestTailBound:
    """Concentration bound for p-wise independent sums"""

    def test_pairwise_form(self):
        """p = 2 reduces to 2C / (e^(2/3) T^2)"""
        assert BoundsService.tail_bound(2, 7, 40) == pytest.approx(14 / (E_TWO_THIRDS * 1600))

    def test_worked_value(self):
        """p = 2, C = 2, T = 10 gives about 0.02054"""
        assert BoundsService.tail_bound(2, 2, 10) == pytest.approx(0.02054, abs=1e-5)

    def test_monotone(self):
        """Decreasing in T towards 0, increasing in C"""
        values = [BoundsService.tail_bound(4, 4, t) for t in (5, 10, 100, 1000, 1e6)]
        assert values == sorted(values, reverse=True)
        assert values[-1] < 1e-12
        assert BoundsService.tail_bound(2, 3, 20) < BoundsService.tail_bound(2, 6, 20)

    def test_clamped(self):
        """Small T clamps to 1"""
        assert BoundsService.tail_bound(2, 100, 0.5) == 1.0

    def test_nonpositive_t(self):
        """T must be positive"""
        with pytest.raises(DomainError):
            BoundsService.tail_bound(2, 2, 0)

    def test_c_below_p(self):
        """C = max(p, variance) is never below p"""
        with pytest.raises(DomainError):
            BoundsService.tail_bound(4, 3, 10)


class TestReliability:
    """Reliability bound delta(p, M, eps, alpha)"""

    @pytest.mark.parametrize("p", [2, 4, 8])
    def test_half_alpha_equals_simplified(self, p):
        """alpha = 1/2 matches the simplified form to 12 significant digits"""
        for capacity in CAPACITIES:
            for eps in EPSILONS:
                general = BoundsService.delta_given_alpha(p, capacity, eps, 0.5)
                simplified = BoundsService.delta_simplified(p, capacity, eps)
                assert general == pytest.approx(simplified, rel=1e-12)

    def test_worked_value(self):
        """p = 2, M = 2048, eps = 0.286, alpha = 1/2 gives about 0.05"""
        assert BoundsService.delta_given_alpha(2, 2048, 0.286, 0.5) == pytest.approx(0.05, abs=5e-4)

    def test_decreasing_in_memory(self):
        """More memory, smaller failure probability"""
        values = [BoundsService.delta_given_alpha(2, capacity, 0.1, 0.5) for capacity in CAPACITIES]
        assert all(later <= earlier for earlier, later in zip(values, values[1:]))
        assert values[-1] < values[2]

    @pytest.mark.parametrize("alpha", [0.01, 1.0, 1.5])
    def test_alpha_out_of_range(self, alpha):
        """alpha must lie in [4p/M, 1)"""
        with pytest.raises(DomainError):
            BoundsService.delta_given_alpha(2, 256, 0.1, alpha)

    def test_simplified_needs_memory(self):
        """The simplified form needs M >= 8p"""
        with pytest.raises(DomainError):
            BoundsService.delta_simplified(4, 16, 0.1)


class TestEpsilonFor:
    """Inverting the reliability bound"""

    @pytest.mark.parametrize("cell, percent", TABLE.items(), ids=[f"p{p}-M{m}" for p, m in TABLE])
    def test_reproduces_table(self, cell, percent):
        """Each cell of the delta = 0.05 table within half a percentage point"""
        p, capacity = cell
        bound = BoundsService.epsilon_for(p, capacity, 0.05)
        assert bound.feasible
        assert 100 * bound.eps == pytest.approx(percent, abs=0.5)

    def test_round_trip(self):
        """The returned eps meets delta at the optimizing alpha"""
        for p, capacity in [(2, 2048), (4, 1024), (8, 256)]:
            bound = BoundsService.epsilon_for(p, capacity, 0.05)
            assert BoundsService.delta_given_alpha(p, capacity, bound.eps, bound.alpha) <= 0.05

    def test_monotone_in_memory_and_degree(self):
        """Non-increasing in M, and p = 4 beats p = 2"""
        for p in (2, 4):
            values = [BoundsService.epsilon_for(p, capacity, 0.05).eps for capacity in (256, 1024, 2048, 65536)]
            assert values == sorted(values, reverse=True)
        for capacity in (256, 2048, 65536):
            assert BoundsService.epsilon_for(4, capacity, 0.05).eps <= BoundsService.epsilon_for(2, capacity, 0.05).eps

    def test_looser_reliability_smaller_error(self):
        """delta = 0.5 gives a strictly smaller eps than delta = 0.05"""
        assert BoundsService.epsilon_for(2, 256, 0.5).eps < BoundsService.epsilon_for(2, 256, 0.05).eps

    def test_infeasible(self):
        """Too little memory has no guarantee below eps = 1"""
        bound = BoundsService.epsilon_for(2, 16, 0.05)
        assert not bound.feasible
        assert bound.as_percent() == "—"

    def test_needs_memory(self):
        """M < 8p is outside the domain"""
        with pytest.raises(DomainError):
            BoundsService.epsilon_for(2, 8, 0.05)

    def test_table_layout(self):
        """Rows by M, columns by p"""
        rows = BoundsService.bounds_table((2, 4), (256, 2048), 0.05)
        assert [[(cell.p, cell.capacity) for cell in row] for row in rows] == [[(2, 256), (4, 256)], [(2, 2048), (4, 2048)]]
        assert all(cell.as_percent().endswith("%") for row in rows for cell in row)

    def test_table_small_memory_cell(self):
        """A cell with M < 8p is left empty while its neighbours are filled"""
        rows = BoundsService.bounds_table((2, 8), (32, 2048), 0.05)
        assert not rows[0][1].feasible
        assert rows[0][1].as_percent() == "—"
        assert rows[1][0].feasible and rows[1][1].feasible

    def test_table_bad_delta(self):
        """delta outside (0, 1) still fails the whole table"""
        with pytest.raises(DomainError):
            BoundsService.bounds_table((2,), (256,), 1.5)


class TestCorollary:
    """Reliability at M = 576 / eps^2"""

    @pytest.mark.parametrize("eps", [0.01, 0.05, 0.1, 0.2, 0.5])
    def test_at_most_nine_thousandths(self, eps):
        """Failure probability stays at or below 0.009"""
        assert BoundsService.corollary_reliability(eps).delta <= 0.009

    def test_small_eps_limit(self):
        """eps -> 0 approaches 10 / (e^(2/3) 576)"""
        limit = 10 / (E_TWO_THIRDS * 576)
        assert limit == pytest.approx(0.00891, abs=1e-5)
        assert BoundsService.corollary_reliability(1e-9).delta == pytest.approx(limit, abs=1e-4)

    def test_proof_expression(self):
        """The closed form at eps = 0.1"""
        bound = BoundsService.corollary_reliability(0.1)
        expected = 2 / (E_TWO_THIRDS * 576) * (0.9 + 4 / 0.9)
        assert bound.proof_expression == pytest.approx(expected)
        assert bound.capacity == pytest.approx(57_600)

    def test_beats_five_sixths(self):
        """Every eps in (0, 0.5] fails less than one time in six"""
        assert all(BoundsService.corollary_reliability(k / 100).proof_expression < 1 / 6 for k in range(1, 51))

    @pytest.mark.parametrize("eps", [0.0, 1.0, 1.2])
    def test_domain(self, eps):
        """eps must lie in (0, 1)"""
        with pytest.raises(DomainError):
            BoundsService.corollary_reliability(eps)


class TestIcebergSizing:
    """Memory and sample sizes for iceberg queries"""

    def test_all_items_interesting(self):
        """m = r and eps = 1 needs 20 units"""
        assert BoundsService.iceberg_memory(500, 500, 1.0) == 20

    def test_rare_items(self, caplog):
        """m = 10^6, r = 10^3, eps = 0.1 needs 2 * 10^6, more than m itself"""
        with caplog.at_level(logging.WARNING, logger="src.services.bounds_service"):
            assert BoundsService.iceberg_memory(10**6, 10**3, 0.1) == 2 * 10**6
        assert "exceeds the 1000000 distinct items" in caplog.text

    def test_memory_within_m_is_quiet(self, caplog):
        """No warning when the buffer is smaller than m"""
        with caplog.at_level(logging.WARNING, logger="src.services.bounds_service"):
            assert BoundsService.iceberg_memory(500, 500, 1.0) == 20
        assert caplog.text == ""

    def test_halving_eps_quadruples(self):
        """M scales as 1 / eps^2"""
        assert BoundsService.iceberg_memory(1000, 10, 0.5) == 4 * BoundsService.iceberg_memory(1000, 10, 1.0)

    def test_zero_r(self):
        """r = 0 is outside the domain"""
        with pytest.raises(DomainError):
            BoundsService.iceberg_memory(100, 0, 0.1)

    def test_sample_size(self):
        """m' = 200 m / r"""
        assert BoundsService.iceberg_sample_size(10_000, 100) == 20_000

    def test_chebyshev_full_sample(self):
        """Sampling every item leaves no error"""
        assert BoundsService.iceberg_chebyshev(1000, 10, 1000, 0.1) == 0.0
        assert 0 < BoundsService.iceberg_chebyshev(1000, 100, 500, 0.5) < 1


class TestLevelOverflow:
    """Probability the buffer still overflows at level L"""

    def test_hopeless_when_memory_below_mean(self):
        """M at or below m / 2^L always overflows"""
        assert BoundsService.level_overflow_bound(2, 2**30, 100, 19) == 1.0

    def test_shrinks_with_memory(self):
        """Larger M lowers the bound"""
        small = BoundsService.level_overflow_bound(2, 10**8, 256, 19)
        large = BoundsService.level_overflow_bound(2, 10**8, 4096, 19)
        assert large < small <= 1


class TestAgnosticEstimates:
    """View-size formulas from the number of cells V and draws eta"""

    def test_single_cell(self):
        """V = 1: no unoccupied cells, one occupied"""
        result = BoundsService.agnostic_estimates(1, 5)
        assert result.literal_unoccupied == 0
        assert result.standard_expected_distinct == 1

    def test_no_draws(self):
        """eta = 0 gives zero for both"""
        result = BoundsService.agnostic_estimates(10, 0)
        assert result.literal_unoccupied == 0
        assert result.standard_expected_distinct == 0

    def test_standard_matches_enumeration(self):
        """V = 4, eta = 2: the mean distinct count over all 16 placements is 1.75"""
        placements = list(itertools.product(range(4), repeat=2))
        mean = sum(len(set(placement)) for placement in placements) / len(placements)
        assert BoundsService.agnostic_estimates(4, 2).standard_expected_distinct == pytest.approx(mean)
        assert mean == 1.75

    def test_literal_formula(self):
        """eta (1 - 1/V)^eta"""
        assert BoundsService.agnostic_estimates(4, 2).literal_unoccupied == pytest.approx(2 * (3 / 4) ** 2)

    def test_lower_gram(self):
        """Zero at m = 0 and at saturation, m/2 for m = V/2 and one symbol"""
        assert BoundsService.agnostic_lower_gram(0, 100, 3) == 0
        assert BoundsService.agnostic_lower_gram(100, 100, 3) == 0
        assert BoundsService.agnostic_lower_gram(50, 100, 1) == pytest.approx(25)

    def test_domain(self):
        """V below 1 or negative eta is refused"""
        with pytest.raises(DomainError):
            BoundsService.agnostic_estimates(0.5, 3)
        with pytest.raises(DomainError):
            BoundsService.agnostic_estimates(4, -1)
        assert math.isfinite(BoundsService.agnostic_estimates(2**40, 10**6).standard_expected_distinct)
