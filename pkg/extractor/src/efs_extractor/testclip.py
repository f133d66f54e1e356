"""Generator for the bundled test clip: solid-color one-second scenes."""

from __future__ import annotations

import cv2
import numpy as np

# ten visually distinct BGR colors, one scene each
PALETTE = [
    (40, 40, 200),
    (40, 200, 40),
    (200, 40, 40),
    (40, 200, 200),
    (200, 40, 200),
    (200, 200, 40),
    (230, 230, 230),
    (30, 30, 30),
    (20, 120, 220),
    (220, 120, 20),
]


def make_test_clip(
    path: str,
    seconds: int = 10,
    native_fps: int = 10,
    size: tuple[int, int] = (64, 48),
) -> str:
    """Write an MJPEG clip of `seconds` one-second solid-color scenes."""
    w, h = size
    writer = cv2.VideoWriter(
        str(path), cv2.VideoWriter_fourcc(*"MJPG"), float(native_fps), (w, h)
    )
    if not writer.isOpened():
        raise RuntimeError(f"cannot open video writer for {path}")
    try:
        for scene in range(seconds):
            color = PALETTE[scene % len(PALETTE)]
            frame = np.full((h, w, 3), color, dtype=np.uint8)
            for _ in range(native_fps):
                writer.write(frame)
    finally:
        writer.release()
    return str(path)
