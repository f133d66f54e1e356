"""Binary signal-file format: header, float32 payloads, canonical JSON metadata.

Layout (all integers little-endian):

    offset  size      field
    0       4         magic "EFSS"
    4       4         format version (u32, currently 1)
    8       4         N frames (u32)
    12      4         d embedding dim (u32)
    16      4         fps (f32)
    20      4         flags (u32; bit 0 = embeddings pre-normalized)
    24      4         metadata length in bytes (u32)
    28      meta_len  UTF-8 JSON object (query, source, extractor ids, ...)
    ...     4*N*d     embeddings, float32, row-major
    ...     4*N       relevance, float32

Metadata is serialized canonically (sorted keys, compact separators) so a
write -> read -> write cycle is byte-identical.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

from .errors import BadMagic, MalformedMetadata, TruncatedPayload, UnsupportedVersion
from .signals import SignalSet, validate_signals

MAGIC = b"EFSS"
VERSION = 1
FLAG_PRENORMALIZED = 1

_HEADER = struct.Struct("<4sIIIfII")


def write_signals(signals: SignalSet, path) -> None:
    """Serialize a SignalSet to the binary format."""
    meta = dict(signals.metadata)
    meta["query"] = signals.query
    meta["source"] = signals.source
    meta_blob = json.dumps(meta, sort_keys=True, separators=(",", ":")).encode("utf-8")

    n, d = signals.embeddings.shape
    header = _HEADER.pack(
        MAGIC, VERSION, n, d, signals.fps, FLAG_PRENORMALIZED, len(meta_blob)
    )
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(meta_blob)
        fh.write(np.ascontiguousarray(signals.embeddings, dtype=np.float32).tobytes())
        fh.write(np.ascontiguousarray(signals.relevance, dtype=np.float32).tobytes())


def read_signals(path) -> SignalSet:
    """Parse and validate a binary signal file.

    Raises:
        BadMagic / UnsupportedVersion / TruncatedPayload / MalformedMetadata
        plus everything validate_signals raises.
    """
    data = Path(path).read_bytes()
    if len(data) < 4:
        raise TruncatedPayload(f"file is {len(data)} bytes, too short for magic")
    if data[:4] != MAGIC:
        raise BadMagic(f"expected {MAGIC!r}, found {data[:4]!r}")
    if len(data) < _HEADER.size:
        raise TruncatedPayload(
            f"file is {len(data)} bytes, header needs {_HEADER.size}"
        )
    _, version, n, d, fps, flags, meta_len = _HEADER.unpack_from(data)
    if version != VERSION:
        raise UnsupportedVersion(f"version {version} not supported (expected {VERSION})")

    expected = _HEADER.size + meta_len + 4 * n * d + 4 * n
    if len(data) < expected:
        raise TruncatedPayload(f"file is {len(data)} bytes, header declares {expected}")
    if len(data) > expected:
        raise TruncatedPayload(
            f"file is {len(data)} bytes, {len(data) - expected} trailing bytes"
        )

    off = _HEADER.size
    try:
        meta = json.loads(data[off : off + meta_len].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise MalformedMetadata(str(exc)) from exc
    if not isinstance(meta, dict):
        raise MalformedMetadata(f"metadata must be a JSON object, got {type(meta).__name__}")
    off += meta_len

    emb = np.frombuffer(data, dtype="<f4", count=n * d, offset=off)
    emb = emb.reshape(n, d).astype(np.float64)
    off += 4 * n * d
    rel = np.frombuffer(data, dtype="<f4", count=n, offset=off).astype(np.float64)

    return validate_signals(
        emb,
        rel,
        fps=float(fps),
        query=str(meta.get("query", "")),
        source=str(meta.get("source", "")),
        metadata=meta,
    )


def describe_header(path) -> dict:
    """Parse just the header and metadata of a signal file (for `inspect`)."""
    with open(path, "rb") as fh:
        raw = fh.read(_HEADER.size)
        if len(raw) < 4:
            raise TruncatedPayload(f"file is {len(raw)} bytes, too short for magic")
        if raw[:4] != MAGIC:
            raise BadMagic(f"expected {MAGIC!r}, found {raw[:4]!r}")
        if len(raw) < _HEADER.size:
            raise TruncatedPayload(
                f"file is {len(raw)} bytes, header needs {_HEADER.size}"
            )
        _, version, n, d, fps, flags, meta_len = _HEADER.unpack(raw)
        if version != VERSION:
            raise UnsupportedVersion(
                f"version {version} not supported (expected {VERSION})"
            )
        blob = fh.read(meta_len)
    if len(blob) < meta_len:
        raise TruncatedPayload(f"metadata truncated: {len(blob)} of {meta_len} bytes")
    try:
        meta = json.loads(blob.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise MalformedMetadata(str(exc)) from exc
    return {
        "version": version,
        "frame_count": n,
        "dim": d,
        "fps": fps,
        "flags": flags,
        "prenormalized": bool(flags & FLAG_PRENORMALIZED),
        "metadata": meta,
    }
