"""Video-to-signals extractor.

Samples a video at a fixed rate, computes per-frame visual embeddings and
query-relevance scores through pluggable backends, and writes the binary
.efss signal format consumed by the selection engine.
"""

from .errors import EmptyVideo, ExtractorError, ModelLoadFailure, UndecodableVideo
from .extract import EXTRACTOR_VERSION as __version__
from .extract import ExtractionJob, extract_signals

__all__ = [
    "EmptyVideo",
    "ExtractionJob",
    "ExtractorError",
    "ModelLoadFailure",
    "UndecodableVideo",
    "extract_signals",
]
