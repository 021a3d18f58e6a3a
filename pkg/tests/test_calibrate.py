import numpy as np
import pytest
from scipy.stats import spearmanr

from attrmetric import (
    EvalConfig,
    combined_score,
    distance,
    evaluate_meaningfulness,
    fit_invert,
    gamma_score,
    gen_noise,
    interpolation_curve,
    pipeline_split,
    structured_meaningful_set,
    validate_attribute_matrix,
)
from attrmetric.calibrate import InterpolationCurve
from attrmetric.core import concat_columns
from attrmetric.errors import OutOfRange


def make_curve(grid, iso):
    return InterpolationCurve(
        distance_kind="cvx",
        grid=tuple(grid),
        mean_delta=tuple(iso),
        isotonic_delta=tuple(iso),
        trials=1,
        seed=0,
    )


class TestGenNoise:
    def test_deterministic(self):
        a = gen_noise(4, 2, seed=1)
        b = gen_noise(4, 2, seed=1)
        assert np.array_equal(a.entries, b.entries)

    def test_balanced(self):
        m = gen_noise(100, 100, seed=3)
        frac = (m.entries == 1).mean()
        assert 0.45 <= frac <= 0.55

    def test_empty_marker(self):
        empty = gen_noise(5, 0, seed=0)
        assert empty.n_attrs == 0
        other = gen_noise(5, 3, seed=1)
        merged = concat_columns(other, empty)
        assert np.array_equal(merged.entries, other.entries)

    def test_validates(self):
        validate_attribute_matrix(gen_noise(7, 4, seed=2).entries)


class TestInterpolationCurve:
    @pytest.fixture(scope="class")
    @staticmethod
    def split():
        s = structured_meaningful_set(200, 32, seed=9)
        return pipeline_split(s, EvalConfig(seed=21))

    def test_m0_is_exact_distance(self, split):
        for kind in ("cvx", "jp"):
            c = interpolation_curve(split, grid=(0, 2, 4), trials=2, kind=kind, seed=5)
            direct = distance(kind, split.s1, split.s2).value
            assert c.mean_delta[0] == pytest.approx(direct, abs=1e-9)

    def test_monotone_growth(self, split):
        c = interpolation_curve(
            split, grid=(0, 2, 4, 8, 16, 32, 64), trials=3, kind="cvx", seed=5
        )
        rank = spearmanr(c.grid, c.mean_delta).statistic
        assert rank >= 0.9
        assert all(
            b >= a for a, b in zip(c.isotonic_delta, c.isotonic_delta[1:])
        )

    def test_large_m_near_noise_asymptote(self, split):
        c = interpolation_curve(
            split, grid=(0, 16, 64, 128), trials=3, kind="cvx", seed=5
        )
        big = split.s2.n_attrs + 128
        pure = distance("cvx", split.s1, gen_noise(split.s1.n_images, big, 17)).value
        assert abs(c.mean_delta[-1] - pure) / pure <= 0.10

    def test_grid_validation(self, split):
        with pytest.raises(ValueError):
            interpolation_curve(split, grid=(1, 2), trials=1)
        with pytest.raises(ValueError):
            interpolation_curve(split, grid=(0, 3, 2), trials=1)
        with pytest.raises(ValueError):
            interpolation_curve(split, grid=(0, 2), trials=0)


class TestFitInvert:
    def test_interpolation(self):
        c = make_curve([0, 10, 20], [1.0, 2.0, 3.0])
        assert fit_invert(c, 2.5) == (15.0, False)

    def test_clamp_low(self):
        c = make_curve([0, 10, 20], [1.0, 2.0, 3.0])
        assert fit_invert(c, 0.5) == (0.0, False)

    def test_clamp_high_saturates(self):
        c = make_curve([0, 10, 20], [1.0, 2.0, 3.0])
        assert fit_invert(c, 3.5) == (20.0, True)

    def test_monotone_in_delta(self):
        c = make_curve([0, 5, 10, 20], [1.0, 1.0, 4.0, 9.0])
        lo = -1.0
        for delta in np.linspace(0.0, 10.0, 101):
            g, _ = fit_invert(c, float(delta))
            assert g >= lo
            lo = g


class TestScores:
    def test_gamma_examples(self):
        assert gamma_score(0, 32) == 100.0
        assert gamma_score(32, 32) == 50.0
        assert gamma_score(96, 32) == 25.0

    def test_gamma_monotone_in_g(self):
        vals = [gamma_score(g, 32) for g in range(0, 200, 5)]
        assert all(b <= a for a, b in zip(vals, vals[1:]))

    def test_gamma_range_errors(self):
        with pytest.raises(OutOfRange):
            gamma_score(-1, 32)
        with pytest.raises(OutOfRange):
            gamma_score(5, 0)

    def test_combined(self):
        assert combined_score(81, 61) == 71.0
        assert combined_score(100, 100) == 100.0
        with pytest.raises(OutOfRange):
            combined_score(101, 50)
        with pytest.raises(OutOfRange):
            combined_score(50, -0.1)


class TestEvaluate:
    @pytest.fixture(scope="class")
    @staticmethod
    def setup():
        s = structured_meaningful_set(200, 32, seed=13)
        cfg = EvalConfig(seed=99, trials=2, grid=(0, 1, 2, 4, 8, 16, 32, 64, 128))
        return s, cfg

    def test_identity_scores_100(self, setup):
        s, cfg = setup
        d = pipeline_split(s, cfg).s2
        rep = evaluate_meaningfulness(s, d, cfg)
        assert rep.gamma_cvx == 100.0
        assert rep.gamma_jp == 100.0
        assert rep.gamma_tilde == 100.0

    def test_tilde_is_exact_mean(self, setup):
        s, cfg = setup
        d = gen_noise(200, 16, seed=4)
        rep = evaluate_meaningfulness(s, d, cfg)
        assert rep.gamma_tilde == (rep.gamma_cvx + rep.gamma_jp) / 2

    def test_noise_scores_low(self, setup):
        s, cfg = setup
        d = gen_noise(200, 16, seed=4)
        rep = evaluate_meaningfulness(s, d, cfg)
        assert rep.gamma_tilde <= 15.0

    def test_deterministic(self, setup):
        s, cfg = setup
        d = gen_noise(200, 16, seed=4)
        a = evaluate_meaningfulness(s, d, cfg)
        b = evaluate_meaningfulness(s, d, cfg)
        assert a.results["cvx"].curve.mean_delta == b.results["cvx"].curve.mean_delta
        assert a.gamma_tilde == b.gamma_tilde

    def test_full_delta_optional(self, setup):
        s, cfg = setup
        from dataclasses import replace

        d = gen_noise(200, 8, seed=6)
        rep = evaluate_meaningfulness(s, d, replace(cfg, include_full_delta=True))
        assert set(rep.delta_full) == {"cvx", "jp"}
        assert rep.delta_full["cvx"] == pytest.approx(distance("cvx", s, d).value)
