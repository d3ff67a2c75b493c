"""Document-level view of a parsed PDF: object map, catalog, pages."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..errors import PageIndexOutOfRange
from .objects import PdfObject, PdfRef, PdfStream, copy_object


@dataclass
class PdfDocument:
    """The final visible state of a PDF after all incremental updates.

    ``objects`` holds the last definition of each object number.  The
    document is treated as immutable after parsing; mutation happens on a
    private copy obtained via :meth:`copy`.
    """

    version: tuple[int, int]
    objects: dict[tuple[int, int], PdfObject]
    trailer: dict[str, Any]
    root_ref: PdfRef
    info_ref: PdfRef | None
    page_refs: list[PdfRef]
    source_bytes: bytes | None = field(default=None, repr=False)

    def get(self, num: int, gen: int = 0) -> PdfObject:
        return self.objects.get((num, gen))

    def resolve(self, obj: PdfObject) -> PdfObject:
        """Follow a reference one level; dangling references resolve to null."""
        if isinstance(obj, PdfRef):
            return self.objects.get(obj.key())
        return obj

    def catalog(self) -> dict[str, Any]:
        cat = self.resolve(self.root_ref)
        if not isinstance(cat, dict):
            raise KeyError("document catalog is missing")
        return cat

    def info(self) -> dict[str, Any] | None:
        if self.info_ref is None:
            return None
        obj = self.resolve(self.info_ref)
        return obj if isinstance(obj, dict) else None

    @property
    def page_count(self) -> int:
        return len(self.page_refs)

    def page_dict(self, index: int) -> dict[str, Any]:
        if not 0 <= index < len(self.page_refs):
            raise PageIndexOutOfRange(
                f"page index {index} out of range (document has "
                f"{len(self.page_refs)} pages)"
            )
        page = self.resolve(self.page_refs[index])
        if not isinstance(page, dict):
            raise PageIndexOutOfRange(f"page {index} does not resolve to a dictionary")
        return page

    def max_object_number(self) -> int:
        return max((num for num, _ in self.objects), default=0)

    def add_object(self, obj: PdfObject) -> PdfRef:
        """Register a new object under the next free number (on mutable copies)."""
        ref = PdfRef(self.max_object_number() + 1, 0)
        self.objects[ref.key()] = obj
        return ref

    def copy(self) -> PdfDocument:
        """Deep copy of all containers; byte payloads are shared."""
        memo: dict[int, Any] = {}
        return PdfDocument(
            version=self.version,
            objects={key: copy_object(obj, memo) for key, obj in self.objects.items()},
            trailer=copy_object(self.trailer, memo),
            root_ref=self.root_ref,
            info_ref=self.info_ref,
            page_refs=list(self.page_refs),
            source_bytes=self.source_bytes,
        )


@dataclass
class PageView:
    """One page with its decoded content stream and resolved attributes."""

    page_ref: PdfRef
    dict: dict[str, Any]
    content: bytes
    resources: dict[str, Any] | None = None
    media_box: list[float] | None = None
    crop_box: list[float] | None = None
    rotation: int | None = None
    annotations: list[Any] | None = None


def page_view(doc: PdfDocument, index: int) -> PageView:
    """Build the page view: decoded content plus inherited attributes.

    The Contents entry may be absent (empty content), a single stream, or an
    array of streams whose decoded bytes are joined with a single 0x0A.
    """
    page = doc.page_dict(index)
    content = _decode_contents(doc, page.get("Contents"))
    resources = _inherited(doc, page, "Resources")
    media_box = _inherited(doc, page, "MediaBox")
    crop_box = _inherited(doc, page, "CropBox")
    rotate = _inherited(doc, page, "Rotate")
    annots = doc.resolve(page.get("Annots"))
    return PageView(
        page_ref=doc.page_refs[index],
        dict=page,
        content=content,
        resources=resources if isinstance(resources, dict) else None,
        media_box=_number_list(doc, media_box),
        crop_box=_number_list(doc, crop_box),
        rotation=int(rotate) if isinstance(rotate, (int, float)) and not isinstance(rotate, bool) else None,
        annotations=annots if isinstance(annots, list) else None,
    )


def _decode_contents(doc: PdfDocument, entry: PdfObject) -> bytes:
    target = doc.resolve(entry)
    if target is None:
        return b""
    if isinstance(target, PdfStream):
        return target.decoded()
    if isinstance(target, list):
        parts = []
        for item in target:
            stream = doc.resolve(item)
            if isinstance(stream, PdfStream):
                parts.append(stream.decoded())
        return b"\n".join(parts)
    return b""


def _inherited(doc: PdfDocument, page: dict[str, Any], key: str) -> PdfObject:
    """Walk the Parent chain until the attribute is found (cycle-guarded)."""
    node: PdfObject = page
    seen: set[int] = set()
    while isinstance(node, dict):
        if id(node) in seen:
            break
        seen.add(id(node))
        if key in node:
            return doc.resolve(node[key])
        node = doc.resolve(node.get("Parent"))
    return None


def _number_list(doc: PdfDocument, value: PdfObject) -> list[float] | None:
    if not isinstance(value, list):
        return None
    numbers = []
    for item in value:
        item = doc.resolve(item)
        if isinstance(item, bool) or not isinstance(item, (int, float)):
            return None
        numbers.append(float(item))
    return numbers
