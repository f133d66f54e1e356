"""Extraction job: video + query -> .efss signal file on disk."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .backends import BUILTIN_EMBED, BUILTIN_ITM, make_embedder, make_scorer
from .video import probe, sample_frames
from .writer import write_signal_file

EXTRACTOR_VERSION = "0.1.0"


@dataclass(frozen=True)
class ExtractionJob:
    video: str
    query: str
    out: str
    fps: float = 1.0
    device: str = "cpu"
    embed_model: str = BUILTIN_EMBED
    itm_model: str = BUILTIN_ITM
    batch_size: int = 32

    def __post_init__(self):
        if not self.fps > 0:
            raise ValueError(f"fps must be positive, got {self.fps}")
        if not self.video or not self.out:
            raise ValueError("video and out paths must be non-empty")


def extract_signals(job: ExtractionJob) -> dict:
    """Run one extraction job and write the signal file atomically.

    Returns a small summary dict (frame count, dim, output path).
    """
    info = probe(job.video)
    frames, timestamps = sample_frames(info, job.fps)

    embedder = make_embedder(job.embed_model, device=job.device, batch_size=job.batch_size)
    scorer = make_scorer(job.itm_model, device=job.device, batch_size=job.batch_size)

    embeddings = np.asarray(embedder.embed(frames), dtype=np.float64)
    embeddings /= np.linalg.norm(embeddings, axis=1, keepdims=True)
    relevance = np.asarray(scorer.score(frames, job.query), dtype=np.float64)

    metadata = {
        "query": job.query,
        "source": job.video,
        "fps": job.fps,
        "embed_model": embedder.name,
        "itm_model": scorer.name,
        "score_kind": scorer.score_kind,
        "native_fps": info.native_fps,
        "native_frames": info.total_frames,
        "extractor": f"efs-extractor/{EXTRACTOR_VERSION}",
    }
    write_signal_file(job.out, embeddings, relevance, job.fps, metadata)
    return {
        "out": job.out,
        "frame_count": len(frames),
        "dim": int(embeddings.shape[1]),
        "first_timestamp_s": timestamps[0],
        "last_timestamp_s": timestamps[-1],
    }
