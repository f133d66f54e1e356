"""Video decoding and fixed-rate frame sampling via OpenCV."""

from __future__ import annotations

import math
from dataclasses import dataclass

import cv2
import numpy as np

from .errors import EmptyVideo, UndecodableVideo


@dataclass(frozen=True)
class VideoInfo:
    path: str
    native_fps: float
    total_frames: int

    @property
    def duration_s(self) -> float:
        return self.total_frames / self.native_fps


def probe(path: str) -> VideoInfo:
    cap = cv2.VideoCapture(path)
    try:
        if not cap.isOpened():
            raise UndecodableVideo(f"cannot open {path}")
        native_fps = float(cap.get(cv2.CAP_PROP_FPS))
        total = int(cap.get(cv2.CAP_PROP_FRAME_COUNT))
        if native_fps <= 0:
            raise UndecodableVideo(f"{path}: decoder reports fps={native_fps}")
        if total <= 0:
            # some containers omit the count; count by decoding
            total = 0
            while True:
                ok, _ = cap.read()
                if not ok:
                    break
                total += 1
        if total <= 0:
            raise EmptyVideo(f"{path}: no decodable frames")
    finally:
        cap.release()
    return VideoInfo(path=path, native_fps=native_fps, total_frames=total)


def sample_frames(info: VideoInfo, fps: float) -> tuple[list[np.ndarray], list[float]]:
    """Decode N = floor(duration * fps) frames at bin-center timestamps.

    Frame i is taken at t = (i + 0.5) / fps seconds, mapped to the nearest
    source frame at or before that time.  Decoding is strictly sequential so
    results do not depend on codec seek behavior.
    """
    if fps <= 0:
        raise ValueError(f"fps must be positive, got {fps}")
    n = math.floor(info.duration_s * fps)
    if n < 1:
        raise EmptyVideo(
            f"{info.path}: duration {info.duration_s:.3f}s yields 0 frames at {fps} fps"
        )

    timestamps = [(i + 0.5) / fps for i in range(n)]
    targets = [
        min(int(t * info.native_fps), info.total_frames - 1) for t in timestamps
    ]

    frames: list[np.ndarray] = []
    cap = cv2.VideoCapture(info.path)
    try:
        if not cap.isOpened():
            raise UndecodableVideo(f"cannot reopen {info.path}")
        cursor = 0
        current = None
        for want in targets:
            while cursor <= want:
                ok, frame = cap.read()
                if not ok:
                    raise UndecodableVideo(
                        f"{info.path}: decode failed at frame {cursor} of "
                        f"{info.total_frames}"
                    )
                current = frame
                cursor += 1
            frames.append(current.copy())
    finally:
        cap.release()
    return frames, timestamps
