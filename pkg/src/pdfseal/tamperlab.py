"""Synthetic test corpus: deterministic baseline PDFs plus programmatic
tampering that mimics what a document editor or attacker would do.

Hash values naturally differ from any externally authored fixtures; verdicts
and localization behavior are what the corpus exercises.
"""

from __future__ import annotations

import re
import zlib
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, List

from .errors import InvalidTarget
from .pdf import PdfDocument, PdfName, PdfRef, PdfStream, parse, write
from .protect import protect, strip_hash_keys

MEDIA_BOX = [0, 0, 612, 792]


class TamperKind(str, Enum):
    TEXT_ADD = "text_add"
    TEXT_UPDATE = "text_update"
    TEXT_DELETE = "text_delete"
    IMAGE_ADD = "image_add"
    IMAGE_REPLACE = "image_replace"
    IMAGE_DELETE = "image_delete"
    META_ADD = "meta_add"
    META_UPDATE = "meta_update"
    INCREMENTAL_CONTENT_SWAP = "incremental_content_swap"
    STRIP_HASHES = "strip_hashes"


_PAGE_KINDS = {
    TamperKind.TEXT_ADD,
    TamperKind.TEXT_UPDATE,
    TamperKind.TEXT_DELETE,
    TamperKind.IMAGE_ADD,
    TamperKind.IMAGE_REPLACE,
    TamperKind.IMAGE_DELETE,
    TamperKind.INCREMENTAL_CONTENT_SWAP,
}


@dataclass
class TamperSpec:
    """One mutation: what to do, where, and with which parameters."""

    kind: TamperKind
    target_pages: List[int] = field(default_factory=list)  # 1-based
    payload: dict = field(default_factory=dict)


# -- Baseline generation -------------------------------------------------


def _paragraph_ops(page_number: int, paragraphs: int) -> bytes:
    lines = [b"BT /F1 11 Tf 72 720 Td 14 TL"]
    for para in range(1, paragraphs + 1):
        for line in (1, 2):
            text = (
                f"Page {page_number}, paragraph {para}, line {line}: "
                "the quick brown fox jumps over the lazy dog."
            )
            lines.append(f"({text}) Tj T*".encode("ascii"))
    lines.append(b"ET")
    return b"\n".join(lines)


def _image_payload(page_number: int) -> bytes:
    return bytes((page_number * 31 + k * 7) % 256 for k in range(64))


def _make_stream(payload: bytes, extra: dict[str, Any], compress: bool) -> PdfStream:
    entries: dict[str, Any] = dict(extra)
    if compress:
        raw = zlib.compress(payload)
        entries["Filter"] = PdfName("FlateDecode")
    else:
        raw = payload
    entries["Length"] = len(raw)
    return PdfStream(dict=entries, raw=raw)


def make_baseline(
    pages: int,
    paragraphs_per_page: int,
    *,
    compress: bool = False,
    include_info: bool = True,
    title: str = "Baseline Document",
) -> PdfDocument:
    """Deterministic multi-page document: text paragraphs plus one image
    XObject per page.  ``paragraphs_per_page`` tunes the content length so
    chunk tests can force any leaf count."""
    if pages < 0:
        raise InvalidTarget("page count must be >= 0")
    objects: dict[tuple[int, int], Any] = {}
    page_refs: List[PdfRef] = []

    catalog_ref = PdfRef(1)
    pages_ref = PdfRef(2)
    font_ref = PdfRef(3)
    objects[catalog_ref.key()] = {
        "Type": PdfName("Catalog"),
        "Pages": pages_ref,
    }
    objects[font_ref.key()] = {
        "Type": PdfName("Font"),
        "Subtype": PdfName("Type1"),
        "BaseFont": PdfName("Helvetica"),
    }

    kids: List[PdfRef] = []
    next_num = 4
    for index in range(pages):
        page_number = index + 1
        page_ref = PdfRef(next_num)
        contents_ref = PdfRef(next_num + 1)
        image_ref = PdfRef(next_num + 2)
        next_num += 3
        image_name = f"Im{page_number}"
        ops = _paragraph_ops(page_number, paragraphs_per_page)
        ops += f"\nq 96 0 0 96 72 72 cm /{image_name} Do Q\n".encode("ascii")
        objects[contents_ref.key()] = _make_stream(ops, {}, compress)
        objects[image_ref.key()] = _make_stream(
            _image_payload(page_number),
            {
                "Type": PdfName("XObject"),
                "Subtype": PdfName("Image"),
                "Width": 8,
                "Height": 8,
                "ColorSpace": PdfName("DeviceGray"),
                "BitsPerComponent": 8,
            },
            compress,
        )
        objects[page_ref.key()] = {
            "Type": PdfName("Page"),
            "Parent": pages_ref,
            "MediaBox": list(MEDIA_BOX),
            "Resources": {
                "Font": {"F1": font_ref},
                "XObject": {image_name: image_ref},
            },
            "Contents": contents_ref,
        }
        kids.append(page_ref)
        page_refs.append(page_ref)

    objects[pages_ref.key()] = {
        "Type": PdfName("Pages"),
        "Kids": kids,
        "Count": pages,
    }

    trailer: dict[str, Any] = {"Root": catalog_ref}
    info_ref = None
    if include_info:
        info_ref = PdfRef(next_num)
        objects[info_ref.key()] = {
            "Title": title.encode("ascii"),
            "Author": b"Corpus Generator",
            "Producer": b"pdfseal",
            "CreationDate": b"D:20240101000000Z",
        }
        trailer["Info"] = info_ref

    return PdfDocument(
        version=(1, 4),
        objects=objects,
        trailer=trailer,
        root_ref=catalog_ref,
        info_ref=info_ref,
        page_refs=page_refs,
    )


# -- Tampering ------------------------------------------------------------


def apply_tamper(doc: PdfDocument, spec: TamperSpec) -> PdfDocument:
    """Return a mutated copy of the document; the input is untouched."""
    if spec.kind is TamperKind.INCREMENTAL_CONTENT_SWAP:
        base = doc.source_bytes if doc.source_bytes is not None else write(doc)
        return parse(apply_tamper_bytes(base, spec))

    work = doc.copy()
    targets = _validate_targets(work, spec)
    if spec.kind is TamperKind.TEXT_ADD:
        text = spec.payload.get("text", "An extra line of text.")
        for page in targets:
            _append_text(work, page, text)
    elif spec.kind is TamperKind.TEXT_UPDATE:
        for page in targets:
            _rewrite_content(work, page, spec.payload)
    elif spec.kind is TamperKind.TEXT_DELETE:
        count = int(spec.payload.get("count", 64))
        for page in targets:
            _truncate_content(work, page, count)
    elif spec.kind is TamperKind.IMAGE_ADD:
        data = spec.payload.get("image_data", _image_payload(0) * 2)
        for page in targets:
            _add_image(work, page, data)
    elif spec.kind is TamperKind.IMAGE_REPLACE:
        for page in targets:
            _replace_image(work, page, spec.payload.get("image_data"))
    elif spec.kind is TamperKind.IMAGE_DELETE:
        for page in targets:
            _delete_image(work, page)
    elif spec.kind is TamperKind.META_ADD:
        _meta_add(work, spec.payload)
    elif spec.kind is TamperKind.META_UPDATE:
        _meta_update(work, spec.payload)
    elif spec.kind is TamperKind.STRIP_HASHES:
        strip_hash_keys(work)
    else:  # pragma: no cover - enum is exhaustive
        raise InvalidTarget(f"unknown tamper kind {spec.kind}")
    return work


def apply_tamper_bytes(data: bytes, spec: TamperSpec) -> bytes:
    """Bytes-to-bytes form; incremental tampering appends to the original."""
    if spec.kind is TamperKind.INCREMENTAL_CONTENT_SWAP:
        return _incremental_content_swap(data, spec)
    return write(apply_tamper(parse(data), spec))


def _validate_targets(doc: PdfDocument, spec: TamperSpec) -> List[int]:
    if spec.kind not in _PAGE_KINDS:
        return []
    if not spec.target_pages:
        raise InvalidTarget(f"{spec.kind.value} needs at least one target page")
    for page in spec.target_pages:
        if not 1 <= page <= doc.page_count:
            raise InvalidTarget(
                f"page {page} outside document with {doc.page_count} pages"
            )
    return list(spec.target_pages)


def _content_stream(doc: PdfDocument, page_number: int) -> PdfStream:
    page = doc.page_dict(page_number - 1)
    contents = doc.resolve(page.get("Contents"))
    if isinstance(contents, list) and contents:
        contents = doc.resolve(contents[0])
    if not isinstance(contents, PdfStream):
        raise InvalidTarget(f"page {page_number} has no content stream to edit")
    return contents


def _set_payload(stream: PdfStream, payload: bytes) -> None:
    if "FlateDecode" in stream.filters():
        stream.raw = zlib.compress(payload)
    else:
        stream.raw = payload
    stream.dict["Length"] = len(stream.raw)


def _escape_text(text: str) -> str:
    return text.replace("\\", r"\\").replace("(", r"\(").replace(")", r"\)")


def _append_text(doc: PdfDocument, page_number: int, text: str) -> None:
    stream = _content_stream(doc, page_number)
    ops = f"\nBT /F1 11 Tf 72 36 Td ({_escape_text(text)}) Tj ET\n".encode("ascii")
    _set_payload(stream, stream.decoded() + ops)


def _rewrite_content(doc: PdfDocument, page_number: int, payload: dict) -> None:
    stream = _content_stream(doc, page_number)
    content = stream.decoded()
    data = payload.get("data", b"TAMPERED TEXT.")
    if isinstance(data, str):
        data = data.encode("ascii")
    offset = int(payload.get("offset", 24))
    if offset < 0 or offset + len(data) > len(content):
        raise InvalidTarget(
            f"rewrite of {len(data)} bytes at {offset} exceeds content "
            f"({len(content)} bytes)"
        )
    if content[offset:offset + len(data)] == data:
        raise InvalidTarget("replacement bytes equal the existing bytes")
    _set_payload(stream, content[:offset] + data + content[offset + len(data):])


def _truncate_content(doc: PdfDocument, page_number: int, count: int) -> None:
    stream = _content_stream(doc, page_number)
    content = stream.decoded()
    if not 0 < count <= len(content):
        raise InvalidTarget(
            f"cannot delete {count} bytes from {len(content)}-byte content"
        )
    _set_payload(stream, content[:-count])


def _xobjects(doc: PdfDocument, page_number: int, create: bool = False) -> dict:
    page = doc.page_dict(page_number - 1)
    resources = doc.resolve(page.get("Resources"))
    if not isinstance(resources, dict):
        if not create:
            raise InvalidTarget(f"page {page_number} has no Resources")
        resources = {}
        page[PdfName("Resources")] = resources
    xobjects = doc.resolve(resources.get("XObject"))
    if not isinstance(xobjects, dict):
        if not create:
            raise InvalidTarget(f"page {page_number} has no XObject resources")
        xobjects = {}
        resources[PdfName("XObject")] = xobjects
    return xobjects


def _find_image(doc: PdfDocument, xobjects: dict) -> tuple[str, PdfStream]:
    for name, value in xobjects.items():
        stream = doc.resolve(value)
        if isinstance(stream, PdfStream) and stream.dict.get("Subtype") == "Image":
            return name, stream
    raise InvalidTarget("no image XObject on the target page")


def _add_image(doc: PdfDocument, page_number: int, data: bytes) -> None:
    xobjects = _xobjects(doc, page_number, create=True)
    name = f"ImT{page_number}"
    while name in xobjects:
        name += "x"
    image = _make_stream(
        data,
        {
            "Type": PdfName("XObject"),
            "Subtype": PdfName("Image"),
            "Width": 8,
            "Height": 16,
            "ColorSpace": PdfName("DeviceGray"),
            "BitsPerComponent": 8,
        },
        compress=False,
    )
    xobjects[PdfName(name)] = doc.add_object(image)
    stream = _content_stream(doc, page_number)
    paint = f"q 48 0 0 96 432 600 cm /{name} Do Q\n".encode("ascii")
    _set_payload(stream, paint + stream.decoded())


def _replace_image(doc: PdfDocument, page_number: int, data: bytes | None) -> None:
    xobjects = _xobjects(doc, page_number)
    _, image = _find_image(doc, xobjects)
    if data is None:
        data = bytes(255 - b for b in image.decoded())
    _set_payload(image, data)


def _delete_image(doc: PdfDocument, page_number: int) -> None:
    xobjects = _xobjects(doc, page_number)
    name, _ = _find_image(doc, xobjects)
    del xobjects[name]


def _info_dict(doc: PdfDocument, create: bool = False) -> dict:
    info = doc.info()
    if info is None:
        if not create:
            raise InvalidTarget("document has no Info dictionary")
        info = {}
        ref = doc.add_object(info)
        doc.info_ref = ref
        doc.trailer["Info"] = ref
    return info


def _meta_add(doc: PdfDocument, payload: dict) -> None:
    key = payload.get("key", "Reviewer")
    value = payload.get("value", "integrity bot")
    info = _info_dict(doc, create=True)
    if key in info:
        raise InvalidTarget(f"metadata key {key} already present; update it instead")
    info[PdfName(key)] = value.encode("ascii") if isinstance(value, str) else value


def _meta_update(doc: PdfDocument, payload: dict) -> None:
    updates = payload.get("updates", {"Title": "An updated title"})
    info = _info_dict(doc)
    for key, value in updates.items():
        if key not in info:
            raise InvalidTarget(f"metadata key {key} not present")
        info[PdfName(key)] = value.encode("ascii") if isinstance(value, str) else value


# -- Incremental update layer ---------------------------------------------


def _previous_startxref(data: bytes) -> int:
    idx = data.rfind(b"startxref")
    if idx == -1:
        raise InvalidTarget("base bytes carry no startxref marker")
    match = re.match(rb"startxref\s+(\d+)", data[idx:])
    if match is None:
        raise InvalidTarget("base bytes carry an unreadable startxref offset")
    return int(match.group(1))


def _incremental_content_swap(data: bytes, spec: TamperSpec) -> bytes:
    """Append a well-formed update section redefining target Contents objects.

    The original bytes are preserved verbatim as a prefix; parsers that honor
    incremental updates will see the replacement streams as the final state.
    """
    doc = parse(data)
    targets = _validate_targets(doc, spec)
    replacements: dict[PdfRef, bytes] = {}
    for page_number in targets:
        page = doc.page_dict(page_number - 1)
        contents_ref = page.get("Contents")
        if not isinstance(contents_ref, PdfRef):
            raise InvalidTarget(
                f"page {page_number} Contents is not an indirect stream"
            )
        ops = spec.payload.get(
            "ops",
            f"BT /F1 24 Tf 72 396 Td (Replaced by a later revision, page "
            f"{page_number}) Tj ET\n",
        )
        replacements[contents_ref] = ops.encode("ascii") if isinstance(ops, str) else ops

    out = bytearray(data)
    if not out.endswith(b"\n"):
        out += b"\n"
    offsets: dict[PdfRef, int] = {}
    for ref, ops in sorted(replacements.items(), key=lambda item: item[0].num):
        offsets[ref] = len(out)
        out += f"{ref.num} {ref.gen} obj\n<</Length {len(ops)}>>\nstream\n".encode("ascii")
        out += ops
        out += b"\nendstream\nendobj\n"

    xref_offset = len(out)
    out += b"xref\n0 1\n0000000000 65535 f\r\n"
    ordered = sorted(offsets.items(), key=lambda item: item[0].num)
    index = 0
    while index < len(ordered):
        run = [ordered[index]]
        while (
            index + len(run) < len(ordered)
            and ordered[index + len(run)][0].num == run[-1][0].num + 1
        ):
            run.append(ordered[index + len(run)])
        out += f"{run[0][0].num} {len(run)}\n".encode("ascii")
        for ref, offset in run:
            out += f"{offset:010d} {ref.gen:05d} n\r\n".encode("ascii")
        index += len(run)

    size = doc.trailer.get("Size")
    if not isinstance(size, int):
        size = doc.max_object_number() + 1
    root = doc.root_ref
    trailer = f"trailer\n<</Size {size} /Root {root.num} {root.gen} R"
    if doc.info_ref is not None:
        trailer += f" /Info {doc.info_ref.num} {doc.info_ref.gen} R"
    trailer += f" /Prev {_previous_startxref(data)}>>\n"
    out += trailer.encode("ascii")
    out += f"startxref\n{xref_offset}\n%%EOF\n".encode("ascii")
    return bytes(out)


# -- Corpus emission --------------------------------------------------------


DEFAULT_CASES = {
    "text_add.pdf": TamperSpec(TamperKind.TEXT_ADD, [2]),
    "text_update.pdf": TamperSpec(TamperKind.TEXT_UPDATE, [2]),
    "text_delete.pdf": TamperSpec(TamperKind.TEXT_DELETE, [2]),
    "image_add.pdf": TamperSpec(TamperKind.IMAGE_ADD, [2, 3]),
    "image_replace.pdf": TamperSpec(TamperKind.IMAGE_REPLACE, [2]),
    "image_delete.pdf": TamperSpec(TamperKind.IMAGE_DELETE, [2]),
    "meta_add.pdf": TamperSpec(TamperKind.META_ADD),
    "meta_update.pdf": TamperSpec(TamperKind.META_UPDATE),
    "incremental_swap.pdf": TamperSpec(TamperKind.INCREMENTAL_CONTENT_SWAP, [1]),
    "stripped.pdf": TamperSpec(TamperKind.STRIP_HASHES),
}


def emit_corpus(directory: str | Path) -> List[Path]:
    """Write the baseline, its protected copy, and one file per tamper kind."""
    out_dir = Path(directory)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: List[Path] = []

    baseline = make_baseline(3, 4)
    baseline_path = out_dir / "baseline.pdf"
    baseline_path.write_bytes(write(baseline))
    written.append(baseline_path)

    protected, _ = protect(baseline)
    protected_bytes = write(protected)
    protected_path = out_dir / "baseline_hash.pdf"
    protected_path.write_bytes(protected_bytes)
    written.append(protected_path)

    for name, spec in DEFAULT_CASES.items():
        path = out_dir / name
        path.write_bytes(apply_tamper_bytes(protected_bytes, spec))
        written.append(path)
    return written
