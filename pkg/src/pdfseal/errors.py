"""Exception types shared across the package."""

from __future__ import annotations


class PdfSealError(Exception):
    """Base class for all pdfseal errors."""


class MalformedPdf(PdfSealError):
    """The input bytes cannot be parsed as a usable PDF."""


class UnsupportedFilter(PdfSealError):
    """A stream uses a decode filter other than FlateDecode."""


class WriteError(PdfSealError):
    """The document graph violates an invariant required for writing."""


class PageIndexOutOfRange(PdfSealError, IndexError):
    """A page index past the end of the page list was requested."""


class NotADictionary(PdfSealError, TypeError):
    """Canonical serialization was asked to encode a non-dictionary."""


class EmptyLeafSet(PdfSealError, ValueError):
    """A Merkle tree cannot be built from zero chunks."""


class HashesNotFound(PdfSealError):
    """A required hash key is absent; the document is unprotected."""


class InvalidTarget(PdfSealError, ValueError):
    """A tamper operation addressed a page or element that does not exist."""


class IoError(PdfSealError, OSError):
    """A file operation was refused, e.g. output would overwrite the input."""
