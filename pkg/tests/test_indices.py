"""게임 이론 지표 테스트"""

import itertools
from math import factorial

import numpy as np
import pytest

from harsanyi.indices import (
    shapley_from_dividends,
    shapley_interaction_index,
    shapley_permutation_oracle,
    shapley_taylor_index,
)
from harsanyi.lattice import harsanyi_transform
from harsanyi.models import LatticeError, ValueProfile, VariableSet
from harsanyi.values import game_profile, make_additive_game, make_interaction_game


def _brute_force_interaction(values: np.ndarray, n: int, T: int) -> float:
    """이산 미분 정의식으로 계산한 Shapley 상호작용 지표"""
    t = bin(T).count("1")
    rest = [i for i in range(n) if not T >> i & 1]
    members = [i for i in range(n) if T >> i & 1]
    total = 0.0
    for size in range(len(rest) + 1):
        weight = factorial(n - size - t) * factorial(size) / factorial(n - t + 1)
        for chosen in itertools.combinations(rest, size):
            S = sum(1 << i for i in chosen)
            derivative = 0.0
            for k in range(t + 1):
                for L in itertools.combinations(members, k):
                    derivative += (-1) ** (t - k) * values[S | sum(1 << i for i in L)]
            total += weight * derivative
    return total


class TestShapleyValue:
    """Shapley 값"""

    def test_two_player_game(self):
        profile = ValueProfile(2, [0.0, 1.0, 2.0, 4.0])
        expected = [1.5, 2.5]
        shapley = shapley_from_dividends(harsanyi_transform(profile))
        np.testing.assert_allclose(shapley.values, expected)
        np.testing.assert_allclose(shapley_permutation_oracle(profile).values, expected)

    def test_additive_game_gives_weights(self):
        weights = np.array([0.5, -1.0, 2.0, 3.0])
        table = harsanyi_transform(game_profile(make_additive_game(weights), 4))
        np.testing.assert_allclose(shapley_from_dividends(table).values, weights, atol=1e-12)

    def test_additive_game_large_n(self):
        weights = np.linspace(-1.0, 1.0, 20)
        table = harsanyi_transform(game_profile(make_additive_game(weights), 20))
        np.testing.assert_allclose(shapley_from_dividends(table).values, weights, atol=1e-9)

    def test_interaction_game_splits_evenly(self):
        T = VariableSet.from_indices([0, 1], 3)
        table = harsanyi_transform(game_profile(make_interaction_game(T, 6.0, 3), 3))
        shapley = shapley_from_dividends(table)
        np.testing.assert_allclose(shapley.values, [3.0, 3.0, 0.0], atol=1e-12)

    @pytest.mark.parametrize("n", [1, 3, 5, 7])
    def test_dividends_match_permutation_oracle(self, n):
        profile = ValueProfile(n, np.random.default_rng(n).normal(size=1 << n))
        fast = shapley_from_dividends(harsanyi_transform(profile))
        oracle = shapley_permutation_oracle(profile)
        np.testing.assert_allclose(fast.values, oracle.values, atol=1e-9)

    def test_efficiency(self):
        profile = ValueProfile(4, np.random.default_rng(0).normal(size=16))
        phi = shapley_from_dividends(harsanyi_transform(profile))
        assert phi.total() == pytest.approx(profile.full_value - profile.empty_value)
        assert phi.empty_effect == profile.empty_value

    def test_single_variable(self):
        phi = shapley_permutation_oracle(ValueProfile(1, [2.0, 5.0]))
        assert phi.values.tolist() == [3.0]

    def test_constant_game(self):
        phi = shapley_permutation_oracle(ValueProfile(3, np.full(8, 4.0)))
        assert np.all(phi.values == 0.0)

    def test_oracle_size_limit(self):
        with pytest.raises(LatticeError):
            shapley_permutation_oracle(ValueProfile(11, np.zeros(1 << 11)))


class TestShapleyInteraction:
    """Shapley 상호작용 지표"""

    def test_pure_interaction(self):
        T = VariableSet.from_indices([0, 2], 3)
        table = harsanyi_transform(game_profile(make_interaction_game(T, 5.0, 3), 3))
        assert shapley_interaction_index(table, T) == pytest.approx(5.0)

    def test_additive_game_has_no_pair_interaction(self):
        table = harsanyi_transform(game_profile(make_additive_game(np.arange(1.0, 5.0)), 4))
        for pair in itertools.combinations(range(4), 2):
            T = VariableSet.from_indices(pair, 4)
            assert shapley_interaction_index(table, T) == pytest.approx(0.0, abs=1e-12)

    def test_matches_discrete_derivative_definition(self):
        n = 5
        values = np.random.default_rng(11).normal(size=1 << n)
        table = harsanyi_transform(ValueProfile(n, values))
        for T in (0b00001, 0b00110, 0b10101, 0b11111):
            expected = _brute_force_interaction(values, n, T)
            assert shapley_interaction_index(table, T) == pytest.approx(expected, abs=1e-9)

    def test_singleton_equals_shapley_value(self):
        table = harsanyi_transform(ValueProfile(3, np.random.default_rng(2).normal(size=8)))
        phi = shapley_from_dividends(table)
        for i in range(3):
            assert shapley_interaction_index(table, 1 << i) == pytest.approx(phi[i])

    def test_empty_set_rejected(self):
        table = harsanyi_transform(ValueProfile(2, [0.0, 1.0, 2.0, 4.0]))
        with pytest.raises(LatticeError):
            shapley_interaction_index(table, 0)


class TestShapleyTaylor:
    """Shapley-Taylor 지표"""

    def test_branches(self):
        table = harsanyi_transform(ValueProfile(3, np.random.default_rng(5).normal(size=8)))
        assert shapley_taylor_index(table, 0b111, 2) == 0.0
        assert shapley_taylor_index(table, 0b001, 2) == table[0b001]
        assert shapley_taylor_index(table, 0b000, 2) == table[0]

    def test_top_order_sums_to_value(self):
        n, k = 4, 2
        profile = ValueProfile(n, np.random.default_rng(6).normal(size=1 << n))
        table = harsanyi_transform(profile)
        total = sum(shapley_taylor_index(table, m, k) for m in range(1 << n))
        assert total == pytest.approx(profile.full_value)

    def test_order_one_is_shapley(self):
        table = harsanyi_transform(ValueProfile(3, np.random.default_rng(7).normal(size=8)))
        phi = shapley_from_dividends(table)
        for i in range(3):
            assert shapley_taylor_index(table, 1 << i, 1) == pytest.approx(phi[i])

    @pytest.mark.parametrize("k", [0, 4])
    def test_order_out_of_range(self, k):
        table = harsanyi_transform(ValueProfile(3, np.zeros(8)))
        with pytest.raises(LatticeError):
            shapley_taylor_index(table, 1, k)
