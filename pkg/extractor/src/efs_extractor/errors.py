"""Extractor error types."""


class ExtractorError(Exception):
    """Base class for extraction failures."""


class UndecodableVideo(ExtractorError):
    """The video file cannot be opened or its timing cannot be determined."""


class EmptyVideo(ExtractorError):
    """The video yields zero candidate frames at the requested sampling rate."""


class ModelLoadFailure(ExtractorError):
    """A model backend could not be constructed (missing deps, weights, ...)."""
