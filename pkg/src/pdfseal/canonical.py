"""Deterministic byte encoding of PDF objects for hashing.

Editors disagree about dictionary key order, object numbering and number
formatting, so hash preimages are built from a fixed grammar instead of the
file bytes:

* null -> ``null``, booleans -> ``true`` / ``false``
* integers -> decimal ASCII; reals -> shortest decimal, no trailing zeros,
  ``0`` for zero (``612.0`` collapses to ``612``)
* strings -> ``(`` raw bytes with ``\\``, ``(`` and ``)`` escaped ``)``
* names -> ``/`` + name bytes
* arrays -> ``[`` elements joined by one space ``]``
* dictionaries -> ``<<`` ``/Key value`` entries sorted by key bytes,
  joined by one space ``>>``
* streams -> dictionary encoding + ``stream`` + SHA-256 hex of the decoded
  payload (a digest, so preimages stay small)
* references -> encoding of the resolved target; a reference already on the
  current resolution path encodes as ``ref:cycle``; dangling -> ``null``

Exclusion sets remove volatile or separately-covered keys from the top
level of the object being serialized.
"""

from __future__ import annotations

import hashlib
from typing import Any, FrozenSet, Iterable

from .errors import NotADictionary
from .pdf import PdfDocument, PdfName, PdfObject, PdfRef, PdfStream, format_number

ExclusionSet = FrozenSet[str]

#: Keys omitted from a page dictionary before hashing.  The stored hash keys
#: must not feed their own preimage; Parent would drag in the whole tree;
#: Contents is covered chunk-by-chunk by the page's Merkle tree; the rest are
#: editor-managed bookkeeping that legitimate viewers rewrite.
PAGE_EXCLUSIONS: ExclusionSet = frozenset({
    "hashobject", "hashroot", "hashleaves",
    "Parent", "Annots", "B", "StructParents", "Tabs", "Group",
    "LastModified", "PieceInfo", "Metadata", "Contents",
})

#: Keys omitted from the catalog.  Pages is omitted because the page tree
#: feeds the document hash only through the explicit per-page hash records,
#: which keeps catalog-level findings independent of page-content findings.
ROOT_EXCLUSIONS: ExclusionSet = frozenset({
    "hashroot", "hashinfo",
    "Metadata", "StructTreeRoot", "Outlines", "OpenAction",
    "AcroForm", "Names", "Pages",
})

NO_INFO_SENTINEL = b"noinfo::"


def canonical_serialize(
    doc: PdfDocument,
    obj: PdfObject,
    exclude: Iterable[str] = frozenset(),
) -> bytes:
    """Encode a dictionary (or reference to one) as deterministic bytes.

    ``exclude`` drops keys at the top level only.
    """
    path: set[PdfRef] = set()
    target = obj
    if isinstance(obj, PdfRef):
        path.add(obj)
        target = doc.resolve(obj)
    if not isinstance(target, dict) or isinstance(target, PdfStream):
        raise NotADictionary(
            f"canonical serialization needs a dictionary, got {type(target).__name__}"
        )
    excluded = frozenset(exclude)
    trimmed = {k: v for k, v in target.items() if k not in excluded}
    return _encode(doc, trimmed, path)


def serialize_info(doc: PdfDocument) -> bytes:
    """Canonical bytes of the Info dictionary; a fixed sentinel when absent."""
    info = doc.info()
    if info is None:
        return NO_INFO_SENTINEL
    return canonical_serialize(doc, info)


def serialize_root(doc: PdfDocument, page_hashes: Iterable[Any]) -> bytes:
    """Catalog canonical bytes followed by one record per page hash triple.

    Each record is ``page:<object hex>:<root hex>:<leaf hexes joined by ,>``
    so altering any stored page hash changes the document-level preimage.
    The caller chooses whether the triples are freshly computed or the
    stored ones read back from the file.
    """
    out = bytearray(canonical_serialize(doc, doc.catalog(), ROOT_EXCLUSIONS))
    for entry in page_hashes:
        record = ":".join((entry.object, entry.root, ",".join(entry.leaves)))
        out += b"page:" + record.encode("ascii")
    return bytes(out)


def _encode(doc: PdfDocument, obj: PdfObject, path: set[PdfRef]) -> bytes:
    if obj is None:
        return b"null"
    if isinstance(obj, bool):
        return b"true" if obj else b"false"
    if isinstance(obj, (int, float)):
        return format_number(obj).encode("ascii")
    if isinstance(obj, PdfName):
        return b"/" + str(obj).encode("latin-1")
    if isinstance(obj, bytes):
        escaped = obj.replace(b"\\", b"\\\\").replace(b"(", b"\\(").replace(b")", b"\\)")
        return b"(" + escaped + b")"
    if isinstance(obj, PdfRef):
        if obj in path:
            return b"ref:cycle"
        path.add(obj)
        try:
            return _encode(doc, doc.resolve(obj), path)
        finally:
            path.discard(obj)
    if isinstance(obj, list):
        return b"[" + b" ".join(_encode(doc, item, path) for item in obj) + b"]"
    if isinstance(obj, PdfStream):
        digest = hashlib.sha256(obj.decoded()).hexdigest()
        return _encode_dict(doc, obj.dict, path) + b"stream" + digest.encode("ascii")
    if isinstance(obj, dict):
        return _encode_dict(doc, obj, path)
    raise NotADictionary(f"cannot encode object of type {type(obj).__name__}")


def _encode_dict(doc: PdfDocument, entries: dict[str, Any], path: set[PdfRef]) -> bytes:
    parts = []
    for key in sorted(entries, key=lambda k: k.encode("latin-1")):
        parts.append(
            b"/" + key.encode("latin-1") + b" " + _encode(doc, entries[key], path)
        )
    return b"<<" + b" ".join(parts) + b">>"
