"""개념 품질 지표 테스트"""

import numpy as np
import pytest

from harsanyi.analytics import (
    AnalyticsError,
    build_dictionary,
    cross_model_transfer,
    discrimination_stats,
    effect_histogram,
    explanation_curve,
    explanation_ratio,
    mean_order_sensitivity,
    multi_variable_strength,
    order_sensitivity,
    random_transfer_baseline,
    salient_size_summary,
    transfer_curve,
)
from harsanyi.constants import (
    DEFAULT_DICTIONARY_KS,
    DEFAULT_SALIENT_LAMBDA,
    DICTIONARY_LAMBDA,
    GAMMA_LAMBDAS,
)
from harsanyi.data import load_tabular
from harsanyi.lattice import harsanyi_transform, normalized_strength_curve, salient_set
from harsanyi.mlp import train_mlp
from harsanyi.models import ConceptStats, InteractionTable, SalientSet
from harsanyi.values import game_profile, make_additive_game

from .conftest import extract_category


def _omega(effects: dict, n: int = 3) -> SalientSet:
    return SalientSet(n=n, effects=effects, threshold_ratio=0.05)


def _table(effects, n: int = 2) -> InteractionTable:
    return InteractionTable(n, np.asarray(effects, dtype=np.float64))


class TestDictionary:
    """개념 사전"""

    def test_identical_sets(self):
        omegas = [_omega({m: 1.0 for m in range(1, 6)})] * 4
        dictionary = build_dictionary(omegas, 5)
        assert dictionary.entries == [1, 2, 3, 4, 5]
        assert all(f == 1.0 for f in dictionary.frequency.values())
        assert dictionary.shortfall == 0

    def test_disjoint_sets(self):
        omegas = [_omega({1: 1.0, 2: 1.0, 3: 1.0}), _omega({4: 1.0, 5: 1.0, 6: 1.0})]
        dictionary = build_dictionary(omegas, 6)
        assert sorted(dictionary.entries) == [1, 2, 3, 4, 5, 6]
        assert set(dictionary.frequency.values()) == {0.5}

    def test_ranking_breaks_ties_by_mask(self):
        omegas = [_omega({5: 1.0, 3: 1.0}), _omega({5: 1.0, 2: 1.0})]
        assert build_dictionary(omegas, 2).entries == [5, 2]

    def test_shortfall_is_not_padded(self):
        dictionary = build_dictionary([_omega({1: 1.0})], 3)
        assert dictionary.entries == [1]
        assert dictionary.shortfall == 2

    def test_errors(self):
        with pytest.raises(AnalyticsError):
            build_dictionary([], 1)
        with pytest.raises(AnalyticsError):
            build_dictionary([_omega({1: 1.0})], 0)


class TestExplanationRatio:
    """설명 비율 ρ"""

    def test_full_and_zero_coverage(self):
        omegas = [_omega({1: 1.0, 2: 1.0}), _omega({2: 1.0})]
        assert explanation_ratio(build_dictionary(omegas, 2), omegas) == 1.0
        other = build_dictionary([_omega({7: 1.0})], 1)
        assert explanation_ratio(other, omegas) == 0.0

    def test_partial_coverage(self):
        omega = _omega({1: 4.0, 2: 3.0, 3: 2.0, 4: 1.0})
        dictionary = build_dictionary([omega, _omega({1: 1.0, 2: 1.0, 3: 1.0})], 3)
        assert explanation_ratio(dictionary, [omega]) == pytest.approx(0.75)

    def test_empty_sets_excluded(self):
        omegas = [_omega({1: 1.0}), _omega({})]
        assert explanation_ratio(build_dictionary(omegas, 1), omegas) == 1.0
        with pytest.raises(AnalyticsError):
            explanation_ratio(build_dictionary(omegas, 1), [_omega({})])

    def test_curve_is_monotone(self):
        rng = np.random.default_rng(0)
        tables = [_table(rng.normal(size=32), n=5) for _ in range(20)]
        omegas = [salient_set(t, 0.3) for t in tables]
        curve = explanation_curve(omegas, [10, 1, 5, 31])
        assert curve.ks == [1, 5, 10, 31]
        assert all(a <= b for a, b in zip(curve.rho, curve.rho[1:]))
        assert curve.rho[-1] == pytest.approx(1.0)
        assert curve.to_dict()["m"] == 20


class TestTransfer:
    """전이율 γ"""

    def test_basic_ratios(self):
        a = _omega({1: 1.0, 2: 1.0, 3: 1.0, 4: 1.0})
        assert cross_model_transfer(a, a) == 1.0
        assert cross_model_transfer(a, _omega({5: 1.0})) == 0.0
        assert cross_model_transfer(a, _omega({1: 1.0, 2: 1.0, 7: 1.0})) == 0.5

    def test_empty_first_set(self):
        with pytest.raises(AnalyticsError):
            cross_model_transfer(_omega({}), _omega({1: 1.0}))

    def test_identical_models_transfer_fully(self):
        rng = np.random.default_rng(1)
        tables = [_table(rng.normal(size=16), n=4) for _ in range(5)]
        curve = transfer_curve(tables, tables, [0.05, 0.1, 0.3])
        assert curve.gamma == [1.0, 1.0, 1.0]
        assert curve.excluded == [0, 0, 0]

    def test_all_empty_gives_none(self):
        zeros = [_table([1.0, 0.0, 0.0, 0.0])] * 2
        curve = transfer_curve(zeros, zeros, [0.1])
        assert curve.gamma == [None]
        assert curve.excluded == [2]

    def test_pair_count_mismatch(self):
        with pytest.raises(AnalyticsError):
            transfer_curve([_table([0.0, 1.0, 0.0, 0.0])], [], [0.1])


class TestRandomBaseline:
    """무작위 전이율 기준선"""

    def test_all_concepts(self):
        baseline = random_transfer_baseline(3, 7, n=3, trials=50)
        assert baseline.mean == 1.0
        assert baseline.expected == 1.0

    def test_empty_second_set(self):
        assert random_transfer_baseline(3, 0, n=3).mean == 0.0

    def test_matches_expectation(self):
        baseline = random_transfer_baseline(20, 20, n=9, trials=2000, seed=3)
        assert baseline.expected == pytest.approx(20 / 511)
        assert abs(baseline.mean - baseline.expected) <= 3 * baseline.stderr + 1e-12
        assert baseline.mean < 0.05

    def test_size_out_of_range(self):
        with pytest.raises(AnalyticsError):
            random_transfer_baseline(8, 1, n=3)


class TestDiscrimination:
    """판별력 α, β"""

    def test_formulas(self):
        stats = ConceptStats(mask=1, m_plus=8, m_minus=2, m=20)
        assert stats.alpha == 0.5
        assert stats.beta == 0.8

    def test_always_positive_concept(self):
        tables = [_table([0.0, 1.0, 0.0, 0.0])] * 4
        report = discrimination_stats(tables, 0.05)
        assert report.stats[1].alpha == 1.0
        assert report.stats[1].beta == 1.0
        assert report.beta_bar == 1.0
        top = report.buckets[-1]
        assert top["count"] == 1 and top["mean_beta"] == 1.0
        assert report.buckets[0]["mean_beta"] is None

    def test_mixed_signs(self):
        tables = [_table([0.0, 1.0, 0.0, 0.0]), _table([0.0, -1.0, 0.0, 0.0])]
        report = discrimination_stats(tables, 0.05)
        assert report.stats[1].beta == 0.5
        assert report.to_dict()["concepts"][0]["mask"] == 1

    def test_no_salient_concepts(self):
        with pytest.raises(AnalyticsError):
            discrimination_stats([_table([1.0, 0.0, 0.0, 0.0])], 0.05)


class TestMultiVariableStrength:
    """다변수 강도 κ"""

    def test_singletons_only(self):
        assert multi_variable_strength([_omega({1: 1.0, 2: -2.0})]) == 0.0

    def test_mass_ratio(self):
        assert multi_variable_strength([_omega({1: 2.0, 2: -1.0, 3: 1.0})]) == pytest.approx(0.25)

    def test_additive_game(self):
        table = harsanyi_transform(game_profile(make_additive_game(np.array([1.0, -2.0, 0.5])), 3))
        assert multi_variable_strength([salient_set(table, 0.05)]) == pytest.approx(0.0, abs=1e-9)

    def test_all_excluded(self):
        with pytest.raises(AnalyticsError):
            multi_variable_strength([_omega({})])


class TestEffectHistogram:
    """개념별 효과 분포"""

    def test_never_salient(self):
        histogram = effect_histogram(3, [_table([0.0, 1.0, 0.0, 0.0])], 0.05)
        assert histogram.is_empty
        assert histogram.mean is None

    def test_constant_effect(self):
        histogram = effect_histogram(1, [_table([0.0, 2.0, 0.0, 0.0])] * 3, 0.05)
        assert histogram.counts == [3]
        assert histogram.edges == [2.0, 2.0]

    def test_sign_consistency_matches_beta(self):
        rng = np.random.default_rng(4)
        tables = [_table(rng.normal(size=8), n=3) for _ in range(30)]
        report = discrimination_stats(tables, 0.2)
        for mask, stats in report.stats.items():
            histogram = effect_histogram(mask, tables, 0.2, bins=5)
            assert histogram.sign_consistency == pytest.approx(stats.beta)
            assert sum(histogram.counts) == stats.m_plus + stats.m_minus


class TestSalientSizeSummary:
    """현저 집합 크기 요약"""

    def test_summary(self):
        omegas = [_omega({1: 1.0}), _omega({1: 1.0, 2: 1.0, 3: 1.0}), _omega({})]
        summary = salient_size_summary(omegas)
        assert summary["candidates"] == 7
        assert summary["mean_size"] == pytest.approx(4 / 3)
        assert summary["min_size"] == 0 and summary["max_size"] == 3
        assert summary["empty"] == 1


class TestOrderSensitivity:
    """차수별 민감도"""

    def test_identical(self):
        table = _table([0.0, 1.0, 2.0, 3.0])
        assert order_sensitivity(table, table, 1) == 0.0

    def test_shifted_order(self):
        clean = _table([0.0, 1.0, 2.0, 3.0])
        shifted = _table([0.0, 2.0, 3.0, 3.0])
        assert order_sensitivity(clean, shifted, 1) == pytest.approx(2 / 3)

    def test_zero_mass(self):
        table = _table([0.0, 1.0, 2.0, 0.0])
        with pytest.raises(AnalyticsError):
            order_sensitivity(table, table, 2)

    def test_mean_excludes_zero_mass_pairs(self):
        a = _table([0.0, 1.0, 2.0, 0.0])
        b = _table([0.0, 1.0, 1.0, 4.0])
        result = mean_order_sensitivity([(a, a), (b, b)])
        assert result.orders == [1, 2]
        assert result.means == [0.0, 0.0]
        assert result.excluded == [0, 1]


@pytest.mark.slow
class TestWifiConceptQuality:
    """기본 설정 MLP-5의 wifi room 4 개념 품질"""

    def test_dictionary_explains_most_concepts(self, wifi_room4):
        tables = wifi_room4[0].tables
        for lam in (DICTIONARY_LAMBDA, DEFAULT_SALIENT_LAMBDA):
            curve = explanation_curve(
                [salient_set(t, lam) for t in tables], DEFAULT_DICTIONARY_KS
            )
            assert np.all(np.diff(curve.rho) >= 0)
            if lam == DICTIONARY_LAMBDA:
                assert curve.ks[-1] == 100
                assert curve.rho[-1] >= 0.5

    def test_transfer_grows_with_lambda(self, wifi_room4):
        pairs = wifi_room4[0].paired_tables(wifi_room4[1])
        curve = transfer_curve([a for a, _ in pairs], [b for _, b in pairs], GAMMA_LAMBDAS)
        gamma = np.array(curve.gamma, dtype=np.float64)
        steps = np.diff(gamma)
        assert np.all(steps >= 0)
        # 비엄격 증가는 한 번까지
        assert np.sum(steps == 0) <= 1
        assert gamma[-1] > gamma[0]

    def test_discriminative_and_interactive(self, wifi_room4):
        tables = wifi_room4[0].tables
        assert discrimination_stats(tables, DEFAULT_SALIENT_LAMBDA).beta_bar > 0.8
        omegas = [salient_set(t, DEFAULT_SALIENT_LAMBDA) for t in tables]
        assert multi_variable_strength(omegas) > 0.05

    def test_sparse_on_real_wifi(self, real_wifi_path, default_hp):
        ds = load_tabular(real_wifi_path, "wifi", seed=0).normalize()
        model = train_mlp(ds, "mlp5", default_hp, seed=0).model
        tables = extract_category(model, ds, "all").tables
        summary = salient_size_summary([salient_set(t, DEFAULT_SALIENT_LAMBDA) for t in tables])
        assert summary["mean_fraction"] < 0.4
        curve = normalized_strength_curve(tables)
        first_below = int(np.flatnonzero(curve < 0.05)[0]) + 1
        assert first_below <= 0.5 * len(curve)
