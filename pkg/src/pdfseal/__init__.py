"""Tamper detection for PDF documents via embedded page and document hashes.

Protection computes, per page, a SHA-256 hash of the canonically serialized
page object plus a SHA3-256 Merkle tree over 256-byte content-stream chunks,
stores the values inside the PDF itself, and a later assessment recomputes
and compares them, localizing any alteration to the page and chunk level.
"""

__version__ = "0.1.0"

from .assess import AssessmentReport, PageFinding, Verdict, assess, assess_file
from .canonical import (
    PAGE_EXCLUSIONS,
    ROOT_EXCLUSIONS,
    canonical_serialize,
    serialize_info,
    serialize_root,
)
from .errors import (
    EmptyLeafSet,
    HashesNotFound,
    InvalidTarget,
    IoError,
    MalformedPdf,
    NotADictionary,
    PageIndexOutOfRange,
    PdfSealError,
    UnsupportedFilter,
    WriteError,
)
from .hashing import (
    MerkleTree,
    PageHashes,
    RootHashes,
    chunk_content,
    compute_page_hashes,
    compute_root_hashes,
    merkle_build,
    sha256_hex,
    sha3_256_hex,
)
from .pdf import PageView, PdfDocument, PdfName, PdfRef, PdfStream, page_view, parse, write
from .protect import ProtectOutcome, protect, protect_file
from .tamperlab import TamperKind, TamperSpec, apply_tamper, apply_tamper_bytes, emit_corpus, make_baseline

__all__ = [
    "AssessmentReport",
    "EmptyLeafSet",
    "HashesNotFound",
    "InvalidTarget",
    "IoError",
    "MalformedPdf",
    "MerkleTree",
    "NotADictionary",
    "PAGE_EXCLUSIONS",
    "PageFinding",
    "PageHashes",
    "PageIndexOutOfRange",
    "PageView",
    "PdfDocument",
    "PdfName",
    "PdfRef",
    "PdfSealError",
    "PdfStream",
    "ProtectOutcome",
    "ROOT_EXCLUSIONS",
    "RootHashes",
    "TamperKind",
    "TamperSpec",
    "UnsupportedFilter",
    "Verdict",
    "WriteError",
    "apply_tamper",
    "apply_tamper_bytes",
    "assess",
    "assess_file",
    "canonical_serialize",
    "chunk_content",
    "compute_page_hashes",
    "compute_root_hashes",
    "emit_corpus",
    "make_baseline",
    "merkle_build",
    "page_view",
    "parse",
    "protect",
    "protect_file",
    "serialize_info",
    "serialize_root",
    "sha256_hex",
    "sha3_256_hex",
    "write",
]
