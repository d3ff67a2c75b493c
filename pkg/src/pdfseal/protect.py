"""Embed the computed hash values into a copy of the document.

Each page receives /hashobject, /hashroot and /hashleaves; the catalog
receives /hashroot and /hashinfo.  Page hashes are computed and stored
first because the document-level hash covers the per-page records.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from .errors import IoError
from .hashing import PageHashes, RootHashes, compute_page_hashes, compute_root_hashes
from .pdf import PdfDocument, PdfName, page_view, parse, write

PAGE_HASH_KEYS = ("hashobject", "hashroot", "hashleaves")
ROOT_HASH_KEYS = ("hashroot", "hashinfo")

PROTECTED_SUFFIX = "_hash.pdf"


@dataclass
class ProtectOutcome:
    """What a protection run produced."""

    input_path: Optional[Path]
    output_path: Optional[Path]
    pages_protected: int
    page_hashes: List[PageHashes]
    root_hashes: RootHashes = field(repr=False)


def strip_hash_keys(doc: PdfDocument) -> None:
    """Remove all five hash key families in place (catalog and every page)."""
    catalog = doc.catalog()
    for key in ROOT_HASH_KEYS:
        catalog.pop(key, None)
    for index in range(doc.page_count):
        page = doc.page_dict(index)
        for key in PAGE_HASH_KEYS:
            page.pop(key, None)


def protect(doc: PdfDocument) -> tuple[PdfDocument, ProtectOutcome]:
    """Return a protected copy of the document; the input is untouched.

    Pre-existing hash keys are stripped first, so protecting an already
    protected document replaces the old values.
    """
    work = doc.copy()
    strip_hash_keys(work)
    page_hashes: List[PageHashes] = []
    for index in range(work.page_count):
        view = page_view(work, index)
        hashes = compute_page_hashes(work, view)
        page_hashes.append(hashes)
        page = view.dict
        page[PdfName("hashobject")] = hashes.object.encode("ascii")
        page[PdfName("hashroot")] = hashes.root.encode("ascii")
        page[PdfName("hashleaves")] = [leaf.encode("ascii") for leaf in hashes.leaves]
    root_hashes = compute_root_hashes(work, page_hashes)
    catalog = work.catalog()
    catalog[PdfName("hashroot")] = root_hashes.root.encode("ascii")
    catalog[PdfName("hashinfo")] = root_hashes.info.encode("ascii")
    outcome = ProtectOutcome(
        input_path=None,
        output_path=None,
        pages_protected=work.page_count,
        page_hashes=page_hashes,
        root_hashes=root_hashes,
    )
    return work, outcome


def default_output_path(in_path: Path) -> Path:
    return in_path.with_name(in_path.stem + PROTECTED_SUFFIX)


def protect_file(in_path: str | Path, out_path: str | Path | None = None) -> ProtectOutcome:
    """Protect a PDF file, writing the result next to it as ``<stem>_hash.pdf``.

    The input file is never overwritten: the hashes cannot live in the
    original bytes without altering them, so protection always produces a
    new file.
    """
    source = Path(in_path)
    target = Path(out_path) if out_path is not None else default_output_path(source)
    if target.resolve() == source.resolve():
        raise IoError(f"refusing to overwrite the input file: {source}")
    doc = parse(source.read_bytes())
    protected, outcome = protect(doc)
    target.write_bytes(write(protected))
    outcome.input_path = source
    outcome.output_path = target
    return outcome
