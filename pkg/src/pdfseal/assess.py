"""Verify a protected document: extract, strip, recompute, compare, localize."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, List, Optional

from .errors import HashesNotFound
from .hashing import PageHashes, RootHashes, compute_page_hashes, compute_root_hashes
from .pdf import PdfDocument, page_view, parse
from .protect import strip_hash_keys

MSG_CLEAN = "Hashes are equal, no tampering detected"
MSG_TAMPERED = "Hashes are not equal, alterations detected:"
MSG_ROOT = "Root Hashes are not equal, root object has been altered"
MSG_INFO = "Info Hashes are not equal, metadata has changed"
MSG_PAGE_OBJECT = "Object Hashes are not equal for page: {page}"
MSG_PAGE_ROOT = "Root Hashes are not equal for page: {page}"
MSG_CHUNK = "Changes detected in the {chunk} th 256 bytes of the content stream"
MSG_NO_HASHES = "No hash values found in PDF"
MSG_ASSESS_ERROR = "There was an error assessing the PDF: {reason}"

_HEX64 = re.compile(r"^[0-9a-f]{64}$")


class Verdict(str, Enum):
    CLEAN = "clean"
    TAMPERED = "tampered"
    UNPROTECTED = "unprotected"


@dataclass
class PageFinding:
    """Mismatch evidence for one page (1-based page number)."""

    page_number: int
    object_mismatch: bool = False
    content_mismatch: bool = False
    altered_chunks: List[int] = field(default_factory=list)
    leaf_count_changed: bool = False

    def has_findings(self) -> bool:
        return (
            self.object_mismatch
            or self.content_mismatch
            or bool(self.altered_chunks)
            or self.leaf_count_changed
        )

    def as_dict(self) -> dict:
        return {
            "page": self.page_number,
            "object_mismatch": self.object_mismatch,
            "content_mismatch": self.content_mismatch,
            "altered_chunks": list(self.altered_chunks),
            "leaf_count_changed": self.leaf_count_changed,
        }


@dataclass
class AssessmentReport:
    """Structured verdict plus the human-readable message lines."""

    verdict: Verdict
    root_mismatch: bool = False
    info_mismatch: bool = False
    page_findings: List[PageFinding] = field(default_factory=list)
    messages: List[str] = field(default_factory=list)
    # Raw material for verbose output; not part of the JSON schema.
    stored_root_hashes: Optional[RootHashes] = None
    computed_root_hashes: Optional[RootHashes] = None
    stored_page_hashes: Optional[List[PageHashes]] = None
    computed_page_hashes: Optional[List[PageHashes]] = None

    @property
    def tampered(self) -> bool:
        return self.verdict is Verdict.TAMPERED

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "root_mismatch": self.root_mismatch,
            "info_mismatch": self.info_mismatch,
            "pages": [finding.as_dict() for finding in self.page_findings],
            "messages": list(self.messages),
        }


def _stored_hex(value: Any) -> Optional[str]:
    """Decode a stored hash value; anything malformed counts as absent."""
    if not isinstance(value, bytes):
        return None
    try:
        text = value.decode("ascii")
    except UnicodeDecodeError:
        return None
    return text if _HEX64.match(text) else None


def extract_stored(doc: PdfDocument) -> tuple[RootHashes, List[PageHashes]]:
    """Read the five stored hash key families.

    A missing or malformed key anywhere makes the whole document count as
    unprotected: absence of the protection layer is itself the finding.
    """
    catalog = doc.catalog()
    root = _stored_hex(catalog.get("hashroot"))
    info = _stored_hex(catalog.get("hashinfo"))
    if root is None or info is None:
        raise HashesNotFound(MSG_NO_HASHES)
    pages: List[PageHashes] = []
    for index in range(doc.page_count):
        page = doc.page_dict(index)
        object_hash = _stored_hex(page.get("hashobject"))
        page_root = _stored_hex(page.get("hashroot"))
        raw_leaves = page.get("hashleaves")
        leaves: List[str] = []
        if isinstance(raw_leaves, list):
            for item in raw_leaves:
                leaf = _stored_hex(doc.resolve(item))
                if leaf is None:
                    leaves = []
                    break
                leaves.append(leaf)
        if object_hash is None or page_root is None or not leaves:
            raise HashesNotFound(MSG_NO_HASHES)
        pages.append(PageHashes(object=object_hash, root=page_root, leaves=leaves))
    return RootHashes(root=root, info=info), pages


def strip_keys(doc: PdfDocument) -> PdfDocument:
    """Copy of the document with all five hash key families removed."""
    stripped = doc.copy()
    strip_hash_keys(stripped)
    return stripped


def localize(stored: List[str], computed: List[str]) -> List[int]:
    """Chunk indices that differ, including every index past the common length."""
    common = min(len(stored), len(computed))
    changed = [i for i in range(common) if stored[i] != computed[i]]
    changed.extend(range(common, max(len(stored), len(computed))))
    return changed


def assess(doc: PdfDocument) -> AssessmentReport:
    """Compare stored hashes against freshly computed ones.

    The document-level hash is recomputed over the *stored* page hash
    records, so a page-content edit surfaces as a page finding without
    automatically dragging in a catalog-level finding.
    """
    try:
        stored_root, stored_pages = extract_stored(doc)
    except HashesNotFound as exc:
        return AssessmentReport(
            verdict=Verdict.UNPROTECTED,
            messages=[MSG_ASSESS_ERROR.format(reason=exc)],
        )

    stripped = strip_keys(doc)
    computed_pages = [
        compute_page_hashes(stripped, page_view(stripped, index))
        for index in range(stripped.page_count)
    ]
    computed_root = compute_root_hashes(stripped, stored_pages)

    root_mismatch = stored_root.root != computed_root.root
    info_mismatch = stored_root.info != computed_root.info
    findings: List[PageFinding] = []
    for index, (stored, computed) in enumerate(zip(stored_pages, computed_pages)):
        finding = PageFinding(
            page_number=index + 1,
            object_mismatch=stored.object != computed.object,
            content_mismatch=stored.root != computed.root,
            altered_chunks=localize(stored.leaves, computed.leaves),
            leaf_count_changed=len(stored.leaves) != len(computed.leaves),
        )
        if finding.has_findings():
            findings.append(finding)

    messages: List[str] = []
    if not root_mismatch and not info_mismatch and not findings:
        verdict = Verdict.CLEAN
        messages.append(MSG_CLEAN)
    else:
        verdict = Verdict.TAMPERED
        messages.append(MSG_TAMPERED)
        if root_mismatch:
            messages.append(MSG_ROOT)
        if info_mismatch:
            messages.append(MSG_INFO)
        for finding in findings:
            if finding.object_mismatch:
                messages.append(MSG_PAGE_OBJECT.format(page=finding.page_number))
            if finding.content_mismatch:
                messages.append(MSG_PAGE_ROOT.format(page=finding.page_number))
            for chunk in finding.altered_chunks:
                messages.append(MSG_CHUNK.format(chunk=chunk))

    return AssessmentReport(
        verdict=verdict,
        root_mismatch=root_mismatch,
        info_mismatch=info_mismatch,
        page_findings=findings,
        messages=messages,
        stored_root_hashes=stored_root,
        computed_root_hashes=computed_root,
        stored_page_hashes=stored_pages,
        computed_page_hashes=computed_pages,
    )


def assess_file(path: str | Path) -> AssessmentReport:
    """Parse the file's final incremental state and assess it.

    An attacker's incremental append is judged against the post-append
    object values, so replace-style updates show up as mismatches.
    """
    return assess(parse(Path(path).read_bytes()))


__all__ = [
    "AssessmentReport",
    "PageFinding",
    "Verdict",
    "assess",
    "assess_file",
    "extract_stored",
    "localize",
    "strip_keys",
    "MSG_CLEAN",
    "MSG_TAMPERED",
    "MSG_ROOT",
    "MSG_INFO",
    "MSG_PAGE_OBJECT",
    "MSG_PAGE_ROOT",
    "MSG_CHUNK",
    "MSG_NO_HASHES",
    "MSG_ASSESS_ERROR",
]
