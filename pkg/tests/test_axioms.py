"""공리 검증 모음 테스트"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harsanyi.axioms import (
    AxiomCheck,
    check_anonymity,
    check_dummy,
    check_efficiency,
    check_interaction_distribution,
    check_inversion,
    check_lambda_monotonicity,
    check_linearity,
    check_recursive,
    check_shapley_consistency,
    check_symmetry,
    check_taylor_efficiency,
    run_axiom_suite,
)
from harsanyi.constants import TOLERANCE
from harsanyi.models import ValueProfile, VariableSet

EXPECTED_CHECKS = [
    "efficiency",
    "inversion",
    "linearity",
    "dummy",
    "dummy_additive",
    "symmetry",
    "anonymity",
    "recursive",
    "interaction_distribution",
    "shapley_consistency",
    "shapley_efficiency",
    "shapley_taylor_efficiency",
    "lambda_monotonicity",
]

profiles = st.integers(min_value=1, max_value=8).flatmap(
    lambda n: st.builds(
        lambda seed: ValueProfile(n, np.random.default_rng(seed).uniform(-5, 5, size=1 << n)),
        st.integers(0, 2**32 - 1),
    )
)


class TestSuite:
    """전체 점검"""

    def test_all_checks_pass(self):
        checks = run_axiom_suite(max_n=6, trials=12, seed=0)
        assert [c.name for c in checks] == EXPECTED_CHECKS
        failed = [c.to_dict() for c in checks if not c.passed]
        assert failed == []
        assert all(c.cases > 0 for c in checks)

    def test_small_max_n_skips_multi_variable_checks(self):
        checks = {c.name: c for c in run_axiom_suite(max_n=1, trials=3)}
        assert checks["dummy"].cases == 0
        assert checks["efficiency"].cases == 3
        assert all(c.passed for c in checks.values())

    @pytest.mark.slow
    def test_full_suite(self):
        checks = run_axiom_suite(max_n=10, trials=20, seed=1)
        assert all(c.passed for c in checks)

    def test_check_result(self):
        check = AxiomCheck("x", cases=2, max_error=2 * TOLERANCE)
        assert not check.passed
        assert check.to_dict()["passed"] is False


class TestProperties:
    """무작위 게임 성질"""

    @given(profile=profiles)
    @settings(max_examples=40, deadline=None)
    def test_efficiency_and_inversion(self, profile):
        assert check_efficiency(profile) <= TOLERANCE
        assert check_inversion(profile) <= TOLERANCE

    @given(profile=profiles, a=st.floats(-3, 3), b=st.floats(-3, 3))
    @settings(max_examples=30, deadline=None)
    def test_linearity(self, profile, a, b):
        other = ValueProfile(profile.n, profile.values[::-1].copy())
        assert check_linearity(profile, other, a, b) <= TOLERANCE

    @given(profile=profiles, data=st.data())
    @settings(max_examples=30, deadline=None)
    def test_dummy(self, profile, data):
        i = data.draw(st.integers(0, profile.n))
        assert check_dummy(profile, i, data.draw(st.floats(-2, 2))) <= TOLERANCE

    @given(profile=profiles, data=st.data())
    @settings(max_examples=30, deadline=None)
    def test_anonymity(self, profile, data):
        permutation = data.draw(st.permutations(list(range(profile.n))))
        assert check_anonymity(profile, permutation) <= TOLERANCE

    @given(profile=profiles, data=st.data())
    @settings(max_examples=30, deadline=None)
    def test_symmetry_and_recursion(self, profile, data):
        if profile.n < 2:
            return
        pair = st.lists(st.integers(0, profile.n - 1), min_size=2, max_size=2, unique=True)
        i, j = data.draw(pair)
        assert check_symmetry(profile, i, j) <= TOLERANCE
        assert check_recursive(profile, i) <= TOLERANCE

    @given(n=st.integers(1, 8), data=st.data())
    @settings(max_examples=30, deadline=None)
    def test_interaction_distribution(self, n, data):
        bits = data.draw(st.integers(1, (1 << n) - 1))
        assert check_interaction_distribution(VariableSet(bits, n), 5.0) <= TOLERANCE

    @given(profile=profiles, low=st.floats(0.01, 0.5), high=st.floats(0.5, 0.99))
    @settings(max_examples=30, deadline=None)
    def test_lambda_monotonicity(self, profile, low, high):
        assert check_lambda_monotonicity(profile, low, high) == 0.0

    def test_shapley_checks(self):
        profile = ValueProfile(5, np.random.default_rng(3).normal(size=32))
        assert check_shapley_consistency(profile) <= TOLERANCE
        for k in range(1, 6):
            assert check_taylor_efficiency(profile, k) <= TOLERANCE
