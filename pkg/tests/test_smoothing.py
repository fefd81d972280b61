import numpy as np
import pytest

import oracles
from tutorprof.score_model import ScoreSeries
from tutorprof.smoothing import _smooth_loop, _smooth_numpy, smooth, window_width


def random_series(seed, n=None, fps=None):
    rng = np.random.default_rng(seed)
    n = n or int(rng.integers(1, 60))
    fps = fps or float(rng.integers(1, 13))
    raw = rng.random((n, 6)) + 1e-9
    return ScoreSeries("v", fps, raw / raw.sum(axis=1, keepdims=True))


class TestWindowWidth:
    @pytest.mark.parametrize(
        "fps,seconds,expected",
        [
            (1, 1.0, 1),
            (2, 1.0, 3),  # even widths are forced odd
            (3, 1.0, 3),
            (5, 1.0, 5),
            (30, 1.0, 31),
            (3, 2.0, 7),
            (0.5, 1.0, 1),
        ],
    )
    def test_widths(self, fps, seconds, expected):
        assert window_width(fps, seconds) == expected

    def test_non_positive_window_rejected(self):
        with pytest.raises(ValueError, match="window_seconds"):
            window_width(3, 0.0)
        with pytest.raises(ValueError, match="window_seconds"):
            smooth(random_series(1), window_seconds=-1.0)


class TestSmooth:
    def test_constant_series_unchanged(self):
        scores = np.tile(np.array([0.5, 0.1, 0.1, 0.1, 0.1, 0.1]), (12, 1))
        series = ScoreSeries("v", 4.0, scores)
        assert np.allclose(smooth(series).scores, scores, atol=1e-15)

    def test_three_frame_spike_truncated_window(self):
        # fps 3 gives w=3; f channel [0,1,0] smooths to [1/2, 1/3, 1/2]
        scores = np.zeros((3, 6))
        scores[:, 0] = [1.0, 0.0, 1.0]
        scores[:, 1] = [0.0, 1.0, 0.0]
        out = smooth(ScoreSeries("v", 3.0, scores)).scores
        assert out[:, 1] == pytest.approx([0.5, 1 / 3, 0.5])
        assert out[:, 0] == pytest.approx([0.5, 2 / 3, 0.5])

    def test_window_of_one_is_identity(self):
        series = random_series(7, fps=1.0)
        assert smooth(series) == series

    def test_matches_naive_reference(self):
        for seed in range(30):
            series = random_series(seed)
            w = window_width(series.fps)
            got = smooth(series).scores
            want = oracles.naive_smooth(series.scores, w)
            assert np.abs(got - want).max() < 1e-12

    def test_length_and_simplex_preserved(self):
        for seed in (3, 17, 91):
            series = random_series(seed)
            out = smooth(series)
            assert len(out) == len(series)
            assert np.abs(out.scores.sum(axis=1) - 1.0).max() < 1e-6

    def test_isolated_spike_capped_at_half(self):
        # one-frame spike in an otherwise-zero channel, any w >= 3
        for fps in (2, 3, 5, 10):
            n = 15
            scores = np.zeros((n, 6))
            scores[:, 0] = 1.0
            scores[7, 0], scores[7, 5] = 0.0, 1.0
            out = smooth(ScoreSeries("v", float(fps), scores))
            assert out.scores[:, 5].max() <= 0.5 + 1e-12

    def test_series_shorter_than_window(self):
        series = random_series(23, n=2, fps=30.0)
        got = smooth(series).scores
        want = oracles.naive_smooth(series.scores, window_width(30.0))
        assert np.abs(got - want).max() < 1e-12


class TestImplementationPaths:
    def test_loop_and_numpy_paths_agree(self):
        for seed in range(10):
            series = random_series(seed + 100)
            w = window_width(series.fps)
            a = _smooth_loop(series.scores, w)
            b = _smooth_numpy(series.scores, w)
            assert np.abs(a - b).max() < 1e-12
