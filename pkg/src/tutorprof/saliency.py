"""Salient-frame selection by neighbour difference.

A frame is kept when its mean absolute intensity difference to the most
recently kept frame exceeds a threshold, so near-static stretches of a
screen recording collapse to a single representative frame. Frame 0 is
always kept. Inputs are grayscale; convert colour frames to luma first.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import accel


def _select_loop(frames: np.ndarray, tau: float) -> np.ndarray:
    """Scan kernel: frames is (n, h, w) float64, returns kept indices."""
    n = frames.shape[0]
    npix = frames.shape[1] * frames.shape[2]
    kept = np.empty(n, np.int64)
    kept[0] = 0
    count = 1
    ref = 0
    for i in range(1, n):
        acc = 0.0
        for y in range(frames.shape[1]):
            for x in range(frames.shape[2]):
                acc += abs(frames[i, y, x] - frames[ref, y, x])
        if acc / npix / 255.0 > tau:
            kept[count] = i
            count += 1
            ref = i
    return kept[:count]


_select_loop_jit = accel.jit(_select_loop)


def _select_numpy(frames: np.ndarray, tau: float) -> np.ndarray:
    n = frames.shape[0]
    kept = [0]
    ref = frames[0]
    for i in range(1, n):
        if np.abs(frames[i] - ref).mean() / 255.0 > tau:
            kept.append(i)
            ref = frames[i]
    return np.asarray(kept, dtype=np.int64)


def select_salient(
    frames: np.ndarray | Sequence[np.ndarray], tau: float = 0.02
) -> list[int]:
    """Indices of frames distinct enough from the last kept frame.

    ``tau`` is the normalized mean-intensity-change threshold in [0, 1];
    the default keeps frames differing by more than 2%. Differencing is
    against the last *selected* frame, not the immediate predecessor.
    """
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"tau must be within [0, 1], got {tau}")
    if isinstance(frames, np.ndarray) and frames.ndim == 3:
        stack = frames
    else:
        if len(frames) == 0:
            raise ValueError("no frames given")
        first_shape = np.asarray(frames[0]).shape
        for i, fr in enumerate(frames):
            if np.asarray(fr).shape != first_shape:
                raise ValueError(
                    f"frame {i} has shape {np.asarray(fr).shape}, "
                    f"expected {first_shape}"
                )
        stack = np.stack([np.asarray(fr) for fr in frames])
    if stack.shape[0] == 0:
        raise ValueError("no frames given")
    if stack.ndim != 3:
        raise ValueError(f"frames must be 2-D grayscale, got shape {stack.shape}")
    stack = stack.astype(np.float64, copy=False)
    if accel.NUMBA_ENABLED:
        idx = _select_loop_jit(stack, float(tau))
    else:
        idx = _select_numpy(stack, float(tau))
    return [int(i) for i in idx]


def read_pgm_stream(data: bytes) -> np.ndarray:
    """Decode a concatenation of binary PGM (P5) images into (n, h, w).

    All images must share one geometry and use maxval <= 255. Comments
    (``#`` to end of line) in headers are skipped.
    """
    frames: list[np.ndarray] = []
    pos = 0
    size = len(data)

    def next_token(p: int) -> tuple[bytes, int]:
        while p < size:
            ch = data[p : p + 1]
            if ch == b"#":
                while p < size and data[p : p + 1] not in (b"\n", b"\r"):
                    p += 1
            elif ch.isspace():
                p += 1
            else:
                break
        start = p
        while p < size and not data[p : p + 1].isspace():
            p += 1
        return data[start:p], p

    while pos < size:
        magic, pos = next_token(pos)
        if magic == b"":
            break
        if magic != b"P5":
            raise ValueError(f"expected P5 magic, got {magic!r}")
        fields = []
        for _ in range(3):
            tok, pos = next_token(pos)
            if not tok.isdigit():
                raise ValueError(f"bad PGM header token {tok!r}")
            fields.append(int(tok))
        width, height, maxval = fields
        if width <= 0 or height <= 0:
            raise ValueError(f"bad PGM dimensions {width}x{height}")
        if maxval > 255:
            raise ValueError(f"maxval {maxval} unsupported (must be <= 255)")
        pos += 1  # single whitespace byte separates header from pixels
        end = pos + width * height
        if end > size:
            raise ValueError("truncated PGM pixel data")
        pixels = np.frombuffer(data[pos:end], dtype=np.uint8).reshape(height, width)
        if frames and pixels.shape != frames[0].shape:
            raise ValueError(
                f"frame {len(frames)} has shape {pixels.shape}, "
                f"expected {frames[0].shape}"
            )
        frames.append(pixels)
        pos = end
    if not frames:
        raise ValueError("no frames in PGM stream")
    return np.stack(frames)


def write_pgm_stream(frames: np.ndarray) -> bytes:
    """Encode (n, h, w) uint8 frames as concatenated binary PGMs."""
    frames = np.asarray(frames, dtype=np.uint8)
    if frames.ndim != 3:
        raise ValueError(f"expected (n, h, w) frames, got shape {frames.shape}")
    parts = []
    for frame in frames:
        h, w = frame.shape
        parts.append(b"P5\n%d %d\n255\n" % (w, h))
        parts.append(frame.tobytes())
    return b"".join(parts)
