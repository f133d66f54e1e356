"""Embedding and relevance-score backends.

Two families:

* Built-in deterministic backends (``pixel-v1`` embeddings,
  ``query-proj-v1`` relevance) that need no ML dependencies or downloaded
  weights.  They exist so the pipeline, the file format, and downstream
  consumers can be exercised hermetically; their scores rank frames
  consistently but carry no real semantics.
* Hub-backed backends: any other identifier is treated as a model id for the
  installed deep-learning stack (self-supervised ViT embeddings, image-text
  matching head).  Loading problems surface as ModelLoadFailure.
"""

from __future__ import annotations

import hashlib

import cv2
import numpy as np

from .errors import ModelLoadFailure

PIXEL_GRID = 16  # 16*16*3 = 768-dim pixel embedding

BUILTIN_EMBED = "pixel-v1"
BUILTIN_ITM = "query-proj-v1"


# ---------------------------------------------------------------------------
# built-in deterministic backends
# ---------------------------------------------------------------------------


def _pixel_features(frames: list[np.ndarray]) -> np.ndarray:
    """Downscaled RGB pixel grid per frame, float64, not normalized."""
    rows = []
    for frame in frames:
        small = cv2.resize(
            frame, (PIXEL_GRID, PIXEL_GRID), interpolation=cv2.INTER_AREA
        )
        rgb = cv2.cvtColor(small, cv2.COLOR_BGR2RGB)
        rows.append(rgb.astype(np.float64).ravel() / 255.0)
    return np.array(rows)


class PixelEmbedder:
    """Deterministic pixel-statistics embedding (768-dim, unit rows)."""

    name = BUILTIN_EMBED
    dim = PIXEL_GRID * PIXEL_GRID * 3

    def embed(self, frames: list[np.ndarray]) -> np.ndarray:
        feats = _pixel_features(frames)
        norms = np.linalg.norm(feats, axis=1)
        # an all-black frame has no direction; give it a canonical one
        dead = norms < 1e-9
        if np.any(dead):
            feats[dead, 0] = 1.0
            norms = np.linalg.norm(feats, axis=1)
        return feats / norms[:, None]


class QueryProjectionScorer:
    """Deterministic query-dependent ranking signal, not a semantic model.

    The query text is hashed into a fixed pseudo-random unit direction in
    pixel-feature space; each frame's score is the dot product of its pixel
    features with that direction.  Identical inputs always produce identical
    scores.
    """

    name = BUILTIN_ITM
    score_kind = "projection"

    def score(self, frames: list[np.ndarray], query: str) -> np.ndarray:
        digest = hashlib.sha256(query.encode("utf-8")).digest()
        seed = int.from_bytes(digest[:8], "little")
        rng = np.random.default_rng(seed)
        direction = rng.normal(size=PIXEL_GRID * PIXEL_GRID * 3)
        direction /= np.linalg.norm(direction)
        return _pixel_features(frames) @ direction


# ---------------------------------------------------------------------------
# hub-backed backends
# ---------------------------------------------------------------------------


class HubEmbedder:
    """Vision-transformer embeddings from a pretrained checkpoint."""

    def __init__(self, model_id: str, device: str = "cpu", batch_size: int = 32):
        self.name = model_id
        self.device = device
        self.batch_size = batch_size
        try:
            import torch
            from transformers import AutoImageProcessor, AutoModel

            self._torch = torch
            self._processor = AutoImageProcessor.from_pretrained(model_id)
            self._model = AutoModel.from_pretrained(model_id).to(device).eval()
        except Exception as exc:
            raise ModelLoadFailure(f"cannot load embedding model {model_id!r}: {exc}") from exc
        self.dim = int(self._model.config.hidden_size)

    def embed(self, frames: list[np.ndarray]) -> np.ndarray:
        torch = self._torch
        out = []
        with torch.no_grad():
            for lo in range(0, len(frames), self.batch_size):
                batch = [
                    cv2.cvtColor(f, cv2.COLOR_BGR2RGB)
                    for f in frames[lo : lo + self.batch_size]
                ]
                inputs = self._processor(images=batch, return_tensors="pt").to(self.device)
                hidden = self._model(**inputs).last_hidden_state
                pooled = hidden[:, 0]  # CLS token
                out.append(pooled.cpu().double().numpy())
        emb = np.concatenate(out, axis=0)
        return emb / np.linalg.norm(emb, axis=1, keepdims=True)


class HubItmScorer:
    """Image-text matching scores from a pretrained retrieval head."""

    score_kind = "itm-logit"

    def __init__(self, model_id: str, device: str = "cpu", batch_size: int = 32):
        self.name = model_id
        self.device = device
        self.batch_size = batch_size
        try:
            import torch
            from transformers import AutoProcessor, Blip2ForImageTextRetrieval

            self._torch = torch
            self._processor = AutoProcessor.from_pretrained(model_id)
            self._model = (
                Blip2ForImageTextRetrieval.from_pretrained(model_id).to(device).eval()
            )
        except Exception as exc:
            raise ModelLoadFailure(f"cannot load ITM model {model_id!r}: {exc}") from exc

    def score(self, frames: list[np.ndarray], query: str) -> np.ndarray:
        torch = self._torch
        out = []
        with torch.no_grad():
            for lo in range(0, len(frames), self.batch_size):
                batch = [
                    cv2.cvtColor(f, cv2.COLOR_BGR2RGB)
                    for f in frames[lo : lo + self.batch_size]
                ]
                inputs = self._processor(
                    images=batch, text=[query] * len(batch), return_tensors="pt",
                    padding=True,
                ).to(self.device)
                logits = self._model(**inputs, use_image_text_matching_head=True).logits_per_image
                # softmax pair (no-match, match): keep the match logit
                out.append(logits[:, 1].cpu().double().numpy())
        return np.concatenate(out, axis=0)


def make_embedder(model_id: str, device: str = "cpu", batch_size: int = 32):
    if model_id == BUILTIN_EMBED:
        return PixelEmbedder()
    return HubEmbedder(model_id, device=device, batch_size=batch_size)


def make_scorer(model_id: str, device: str = "cpu", batch_size: int = 32):
    if model_id == BUILTIN_ITM:
        return QueryProjectionScorer()
    return HubItmScorer(model_id, device=device, batch_size=batch_size)
