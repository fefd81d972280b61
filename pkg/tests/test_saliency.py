import numpy as np
import pytest

import oracles
from tutorprof.saliency import (
    _select_numpy,
    read_pgm_stream,
    select_salient,
    write_pgm_stream,
)


def test_identical_frames_keep_only_first():
    frames = np.full((5, 4, 4), 128, dtype=np.uint8)
    assert select_salient(frames, tau=0.02) == [0]


def test_alternating_black_white_keeps_everything():
    frames = np.stack([np.full((3, 3), 255 * (i % 2), dtype=np.uint8) for i in range(6)])
    assert select_salient(frames, tau=0.5) == [0, 1, 2, 3, 4, 5]


def test_threshold_is_strict():
    # normalized difference exactly tau must NOT select
    frames = np.zeros((2, 2, 2), dtype=np.float64)
    frames[1] += 255.0 * 0.5
    assert select_salient(frames, tau=0.5) == [0]
    assert select_salient(frames, tau=0.499) == [0, 1]


def test_matches_brute_force_rescan_near_threshold():
    rng = np.random.default_rng(40)
    tau = 0.04
    frames = rng.integers(0, 30, size=(20, 8, 8)).astype(np.uint8)
    assert select_salient(frames, tau=tau) == oracles.brute_select_salient(frames, tau)


def test_tau_zero_selects_every_changed_frame():
    rng = np.random.default_rng(41)
    frames = rng.integers(0, 256, size=(10, 4, 4)).astype(np.uint8)
    got = select_salient(frames, tau=0.0)
    # consecutive distinct random frames all differ from their reference
    assert got == list(range(10))


def test_tau_one_selects_only_first():
    rng = np.random.default_rng(42)
    frames = rng.integers(0, 256, size=(10, 4, 4)).astype(np.uint8)
    assert select_salient(frames, tau=1.0) == [0]


def test_tau_out_of_range():
    frames = np.zeros((2, 2, 2), dtype=np.uint8)
    with pytest.raises(ValueError, match="tau"):
        select_salient(frames, tau=1.5)


def test_empty_input_rejected():
    with pytest.raises(ValueError, match="no frames"):
        select_salient(np.zeros((0, 4, 4), dtype=np.uint8))
    with pytest.raises(ValueError, match="no frames"):
        select_salient([])


def test_dimension_mismatch_rejected():
    frames = [np.zeros((4, 4), dtype=np.uint8), np.zeros((4, 5), dtype=np.uint8)]
    with pytest.raises(ValueError, match="frame 1"):
        select_salient(frames)


def test_list_of_2d_frames_accepted():
    frames = [np.zeros((3, 3), dtype=np.uint8), np.full((3, 3), 255, dtype=np.uint8)]
    assert select_salient(frames, tau=0.5) == [0, 1]


def test_numpy_fallback_agrees_with_default_path():
    rng = np.random.default_rng(43)
    frames = rng.integers(0, 256, size=(30, 6, 7)).astype(np.uint8)
    got = select_salient(frames, tau=0.1)
    assert got == list(_select_numpy(frames.astype(np.float64), 0.1))


class TestPgmStream:
    def test_round_trip(self):
        rng = np.random.default_rng(44)
        frames = rng.integers(0, 256, size=(4, 5, 6)).astype(np.uint8)
        again = read_pgm_stream(write_pgm_stream(frames))
        assert np.array_equal(frames, again)

    def test_comments_skipped(self):
        frame = np.arange(6, dtype=np.uint8).reshape(2, 3)
        data = b"P5\n# a comment\n3 2\n255\n" + frame.tobytes()
        assert np.array_equal(read_pgm_stream(data)[0], frame)

    def test_wrong_magic(self):
        with pytest.raises(ValueError, match="P5"):
            read_pgm_stream(b"P2\n2 2\n255\n....")

    def test_truncated_pixels(self):
        with pytest.raises(ValueError, match="truncated"):
            read_pgm_stream(b"P5\n4 4\n255\nxx")

    def test_mismatched_frames(self):
        a = b"P5\n2 2\n255\n" + bytes(4)
        b = b"P5\n3 2\n255\n" + bytes(6)
        with pytest.raises(ValueError, match="frame 1"):
            read_pgm_stream(a + b)

    def test_empty_stream(self):
        with pytest.raises(ValueError, match="no frames"):
            read_pgm_stream(b"")
