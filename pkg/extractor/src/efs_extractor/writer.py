"""Writer for the binary .efss signal format.

Independent implementation of the published wire format (see the core
package's README): little-endian header (magic "EFSS", version, N, d, fps,
flags, metadata length), canonical-JSON metadata, float32 embeddings
(row-major), float32 relevance.  Written atomically: temp file in the target
directory, then rename.
"""

from __future__ import annotations

import json
import os
import struct
import tempfile
from pathlib import Path

import numpy as np

MAGIC = b"EFSS"
VERSION = 1
FLAG_PRENORMALIZED = 1

_HEADER = struct.Struct("<4sIIIfII")


def write_signal_file(
    path,
    embeddings: np.ndarray,
    relevance: np.ndarray,
    fps: float,
    metadata: dict,
) -> None:
    emb = np.ascontiguousarray(embeddings, dtype=np.float32)
    rel = np.ascontiguousarray(relevance, dtype=np.float32)
    n, d = emb.shape
    if rel.shape != (n,):
        raise ValueError(f"relevance shape {rel.shape} does not match {n} frames")

    blob = json.dumps(metadata, sort_keys=True, separators=(",", ":")).encode("utf-8")
    header = _HEADER.pack(MAGIC, VERSION, n, d, float(fps), FLAG_PRENORMALIZED, len(blob))

    target = Path(path)
    fd, tmp_name = tempfile.mkstemp(dir=target.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(header)
            fh.write(blob)
            fh.write(emb.tobytes())
            fh.write(rel.tobytes())
        os.replace(tmp_name, target)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
