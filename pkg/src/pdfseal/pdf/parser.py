"""PDF parser: header, xref chains (tables and streams), object graph.

The parser reads the file back-to-front the way viewers do: locate
``startxref``, walk every cross-reference section through its Prev links,
then materialize the last definition of each object number.  Objects stored
inside object streams are unpacked transparently.
"""

from __future__ import annotations

import re
from typing import Any

from ..errors import MalformedPdf
from .document import PdfDocument
from .objects import PdfName, PdfObject, PdfRef, PdfStream

WHITESPACE = b"\x00\t\n\x0c\r "
DELIMITERS = b"()<>[]{}/%"

_HEADER_RE = re.compile(rb"^%PDF-(\d+)\.(\d+)")
_NUMBER_RE = re.compile(rb"[+-]?(?:\d+\.\d*|\.\d+|\d+)")

# Internal xref entry kinds.
_FREE = 0
_AT_OFFSET = 1
_IN_OBJSTM = 2


def _is_regular(byte: int) -> bool:
    return byte not in WHITESPACE and byte not in DELIMITERS


class _Scanner:
    """Recursive-descent tokenizer over a byte buffer."""

    def __init__(self, data: bytes, pos: int = 0):
        self.data = data
        self.pos = pos

    def _byte(self) -> int:
        try:
            b = self.data[self.pos]
        except IndexError:
            raise MalformedPdf(f"unexpected end of data at offset {self.pos}") from None
        self.pos += 1
        return b

    def skip_ws(self) -> None:
        data = self.data
        while self.pos < len(data):
            b = data[self.pos]
            if b in WHITESPACE:
                self.pos += 1
            elif b == 0x25:  # '%' comment runs to end of line
                eol = min(
                    x for x in (data.find(b"\n", self.pos), data.find(b"\r", self.pos), len(data))
                    if x != -1
                )
                self.pos = eol
            else:
                return

    def peek(self, count: int = 1) -> bytes:
        return self.data[self.pos:self.pos + count]

    def expect_keyword(self, word: bytes) -> None:
        self.skip_ws()
        if not self.data.startswith(word, self.pos):
            raise MalformedPdf(f"expected {word!r} at offset {self.pos}")
        self.pos += len(word)

    def try_keyword(self, word: bytes) -> bool:
        self.skip_ws()
        end = self.pos + len(word)
        if self.data.startswith(word, self.pos) and (
            end >= len(self.data) or not _is_regular(self.data[end])
        ):
            self.pos = end
            return True
        return False

    def read_integer(self) -> int:
        self.skip_ws()
        match = _NUMBER_RE.match(self.data, self.pos)
        if match is None or b"." in match.group(0):
            raise MalformedPdf(f"expected integer at offset {self.pos}")
        self.pos = match.end()
        return int(match.group(0))

    def parse_object(self) -> PdfObject:
        self.skip_ws()
        head = self.peek(2)
        if not head:
            raise MalformedPdf(f"unexpected end of data at offset {self.pos}")
        c = head[0]
        if c == 0x2F:  # '/'
            return self._parse_name()
        if c == 0x28:  # '('
            return self._parse_literal_string()
        if c == 0x3C:  # '<' or '<<'
            if head == b"<<":
                return self._parse_dictionary()
            return self._parse_hex_string()
        if c == 0x5B:  # '['
            return self._parse_array()
        if c in b"+-.0123456789":
            return self._parse_number_or_ref()
        if self.try_keyword(b"true"):
            return True
        if self.try_keyword(b"false"):
            return False
        if self.try_keyword(b"null"):
            return None
        raise MalformedPdf(f"unexpected byte {bytes([c])!r} at offset {self.pos}")

    def _parse_name(self) -> PdfName:
        self.pos += 1  # '/'
        out = bytearray()
        data = self.data
        while self.pos < len(data) and _is_regular(data[self.pos]):
            b = data[self.pos]
            self.pos += 1
            if b == 0x23 and self.pos + 1 < len(data):  # '#xx'
                pair = data[self.pos:self.pos + 2]
                try:
                    out.append(int(pair, 16))
                    self.pos += 2
                    continue
                except ValueError:
                    pass
            out.append(b)
        return PdfName(out.decode("latin-1"))

    def _parse_literal_string(self) -> bytes:
        self.pos += 1  # '('
        out = bytearray()
        depth = 1
        while True:
            b = self._byte()
            if b == 0x5C:  # backslash escape
                e = self._byte()
                if e == 0x6E:
                    out.append(0x0A)
                elif e == 0x72:
                    out.append(0x0D)
                elif e == 0x74:
                    out.append(0x09)
                elif e == 0x62:
                    out.append(0x08)
                elif e == 0x66:
                    out.append(0x0C)
                elif e in (0x28, 0x29, 0x5C):
                    out.append(e)
                elif 0x30 <= e <= 0x37:  # up to three octal digits
                    value = e - 0x30
                    for _ in range(2):
                        nxt = self.peek()
                        if nxt and 0x30 <= nxt[0] <= 0x37:
                            value = value * 8 + (self._byte() - 0x30)
                        else:
                            break
                    out.append(value & 0xFF)
                elif e == 0x0D:  # line continuation
                    if self.peek() == b"\n":
                        self.pos += 1
                elif e == 0x0A:
                    pass
                else:
                    out.append(e)
            elif b == 0x28:
                depth += 1
                out.append(b)
            elif b == 0x29:
                depth -= 1
                if depth == 0:
                    return bytes(out)
                out.append(b)
            elif b == 0x0D:  # CR and CRLF normalize to LF inside strings
                if self.peek() == b"\n":
                    self.pos += 1
                out.append(0x0A)
            else:
                out.append(b)

    def _parse_hex_string(self) -> bytes:
        self.pos += 1  # '<'
        digits = bytearray()
        while True:
            b = self._byte()
            if b == 0x3E:  # '>'
                break
            if b in WHITESPACE:
                continue
            digits.append(b)
        if len(digits) % 2:
            digits.append(0x30)
        try:
            return bytes.fromhex(digits.decode("ascii"))
        except (ValueError, UnicodeDecodeError) as exc:
            raise MalformedPdf(f"bad hex string near offset {self.pos}: {exc}") from exc

    def _parse_array(self) -> list:
        self.pos += 1  # '['
        items: list[PdfObject] = []
        while True:
            self.skip_ws()
            if self.peek() == b"]":
                self.pos += 1
                return items
            if not self.peek():
                raise MalformedPdf("unterminated array")
            items.append(self.parse_object())

    def _parse_dictionary(self) -> dict[str, Any]:
        self.pos += 2  # '<<'
        result: dict[str, Any] = {}
        while True:
            self.skip_ws()
            if self.peek(2) == b">>":
                self.pos += 2
                return result
            if self.peek() != b"/":
                raise MalformedPdf(f"expected name key at offset {self.pos}")
            key = self._parse_name()
            result[str(key)] = self.parse_object()

    def _parse_number_or_ref(self) -> PdfObject:
        match = _NUMBER_RE.match(self.data, self.pos)
        if match is None:
            raise MalformedPdf(f"malformed number at offset {self.pos}")
        token = match.group(0)
        self.pos = match.end()
        if b"." in token:
            return float(token)
        value = int(token)
        # Lookahead for "gen R" to recognize an indirect reference.
        if value >= 1 and not token.startswith((b"+", b"-")):
            save = self.pos
            self.skip_ws()
            gen_match = _NUMBER_RE.match(self.data, self.pos)
            if gen_match and b"." not in gen_match.group(0) and not gen_match.group(0).startswith((b"+", b"-")):
                self.pos = gen_match.end()
                if self.try_keyword(b"R"):
                    return PdfRef(value, int(gen_match.group(0)))
            self.pos = save
        return value


class _DocumentLoader:
    def __init__(self, data: bytes):
        self.data = data
        self.entries: dict[int, tuple] = {}
        self.trailers: list[dict[str, Any]] = []
        self._cache: dict[int, PdfObject] = {}
        self._loading: set[int] = set()
        self._objstm_cache: dict[int, dict[int, PdfObject]] = {}

    def load(self) -> PdfDocument:
        version = self._read_header()
        self._walk_xref_chain(self._find_startxref())
        trailer = self._merge_trailers()
        if "Encrypt" in trailer:
            raise MalformedPdf("encrypted PDFs are not supported")
        objects = self._materialize()
        root_ref = trailer.get("Root")
        if not isinstance(root_ref, PdfRef):
            raise MalformedPdf("trailer has no Root reference")
        catalog = objects.get(root_ref.key())
        if not isinstance(catalog, dict):
            raise MalformedPdf("Root does not resolve to the catalog dictionary")
        info_ref = trailer.get("Info")
        if not isinstance(info_ref, PdfRef):
            info_ref = None
        doc = PdfDocument(
            version=version,
            objects=objects,
            trailer=trailer,
            root_ref=root_ref,
            info_ref=info_ref,
            page_refs=[],
            source_bytes=self.data,
        )
        doc.page_refs = _flatten_page_tree(doc, catalog.get("Pages"))
        return doc

    def _read_header(self) -> tuple[int, int]:
        if not self.data.startswith(b"%PDF-"):
            raise MalformedPdf("missing %PDF header")
        match = _HEADER_RE.match(self.data)
        if match is None:
            return (1, 4)
        return (int(match.group(1)), int(match.group(2)))

    def _find_startxref(self) -> int:
        idx = self.data.rfind(b"startxref")
        if idx == -1:
            raise MalformedPdf("startxref marker not found")
        scanner = _Scanner(self.data, idx + len(b"startxref"))
        try:
            offset = scanner.read_integer()
        except MalformedPdf:
            raise MalformedPdf("unresolvable startxref offset") from None
        if not 0 <= offset < len(self.data):
            raise MalformedPdf(f"startxref offset {offset} outside file")
        return offset

    def _walk_xref_chain(self, offset: int) -> None:
        seen: set[int] = set()
        next_offset: int | None = offset
        while next_offset is not None:
            if next_offset in seen:
                raise MalformedPdf("cyclic Prev chain in cross-reference sections")
            seen.add(next_offset)
            scanner = _Scanner(self.data, next_offset)
            if scanner.try_keyword(b"xref"):
                trailer = self._read_xref_table(scanner)
            else:
                trailer = self._read_xref_stream(_Scanner(self.data, next_offset))
            self.trailers.append(trailer)
            prev = trailer.get("Prev")
            next_offset = int(prev) if isinstance(prev, (int, float)) else None

    def _read_xref_table(self, scanner: _Scanner) -> dict[str, Any]:
        while True:
            if scanner.try_keyword(b"trailer"):
                trailer = scanner.parse_object()
                if not isinstance(trailer, dict):
                    raise MalformedPdf("trailer is not a dictionary")
                return trailer
            start = scanner.read_integer()
            count = scanner.read_integer()
            for i in range(count):
                value = scanner.read_integer()
                gen = scanner.read_integer()
                scanner.skip_ws()
                kind = scanner.peek()
                scanner.pos += 1
                if kind == b"n":
                    self.entries.setdefault(start + i, (_AT_OFFSET, gen, value))
                elif kind == b"f":
                    self.entries.setdefault(start + i, (_FREE,))
                else:
                    raise MalformedPdf(f"bad xref entry type {kind!r} at offset {scanner.pos}")

    def _read_xref_stream(self, scanner: _Scanner) -> dict[str, Any]:
        num = scanner.read_integer()
        scanner.read_integer()
        scanner.expect_keyword(b"obj")
        obj = self._finish_indirect(scanner, num)
        if not isinstance(obj, PdfStream) or obj.dict.get("Type") != "XRef":
            raise MalformedPdf("startxref does not point at an xref table or stream")
        data = obj.decoded()
        widths = obj.dict.get("W")
        size = obj.dict.get("Size")
        if not (isinstance(widths, list) and len(widths) == 3 and isinstance(size, int)):
            raise MalformedPdf("xref stream missing W or Size")
        w1, w2, w3 = (int(w) for w in widths)
        index = obj.dict.get("Index")
        if isinstance(index, list) and len(index) % 2 == 0:
            spans = [(int(index[i]), int(index[i + 1])) for i in range(0, len(index), 2)]
        else:
            spans = [(0, size)]
        row_width = w1 + w2 + w3
        pos = 0
        for first, count in spans:
            for i in range(count):
                if pos + row_width > len(data):
                    raise MalformedPdf("xref stream data shorter than its Index")
                f1 = int.from_bytes(data[pos:pos + w1], "big") if w1 else 1
                f2 = int.from_bytes(data[pos + w1:pos + w1 + w2], "big")
                f3 = int.from_bytes(data[pos + w1 + w2:pos + row_width], "big")
                pos += row_width
                number = first + i
                if f1 == 0:
                    self.entries.setdefault(number, (_FREE,))
                elif f1 == 1:
                    self.entries.setdefault(number, (_AT_OFFSET, f3, f2))
                elif f1 == 2:
                    self.entries.setdefault(number, (_IN_OBJSTM, f2, f3))
        return obj.dict

    def _merge_trailers(self) -> dict[str, Any]:
        merged: dict[str, Any] = {}
        for trailer in self.trailers:  # newest first
            for key, value in trailer.items():
                merged.setdefault(key, value)
        return merged

    def _materialize(self) -> dict[tuple[int, int], PdfObject]:
        objects: dict[tuple[int, int], PdfObject] = {}
        for num, entry in sorted(self.entries.items()):
            if entry[0] == _FREE or num == 0:
                continue
            obj = self._load(num)
            if obj is None:
                continue
            if isinstance(obj, PdfStream) and obj.dict.get("Type") in ("ObjStm", "XRef"):
                continue  # structural containers, already unpacked
            gen = entry[1] if entry[0] == _AT_OFFSET else 0
            objects[(num, gen)] = obj
        return objects

    def _load(self, num: int) -> PdfObject:
        if num in self._cache:
            return self._cache[num]
        if num in self._loading:
            raise MalformedPdf(f"object {num} participates in a load cycle")
        entry = self.entries.get(num)
        if entry is None or entry[0] == _FREE:
            return None
        self._loading.add(num)
        try:
            if entry[0] == _AT_OFFSET:
                obj = self._parse_indirect_at(entry[2], num)
            else:
                obj = self._load_from_objstm(entry[1], num)
        finally:
            self._loading.discard(num)
        self._cache[num] = obj
        return obj

    def _parse_indirect_at(self, offset: int, expected: int) -> PdfObject:
        if not 0 <= offset < len(self.data):
            raise MalformedPdf(f"xref offset {offset} for object {expected} outside file")
        scanner = _Scanner(self.data, offset)
        num = scanner.read_integer()
        scanner.read_integer()
        scanner.expect_keyword(b"obj")
        if num != expected:
            raise MalformedPdf(
                f"xref offset for object {expected} points at object {num}"
            )
        return self._finish_indirect(scanner, num)

    def _finish_indirect(self, scanner: _Scanner, num: int) -> PdfObject:
        body = scanner.parse_object()
        scanner.skip_ws()
        if not scanner.try_keyword(b"stream"):
            return body
        if not isinstance(body, dict):
            raise MalformedPdf(f"stream keyword after non-dictionary in object {num}")
        # The stream keyword is followed by CRLF or LF, then Length raw bytes.
        if scanner.peek() == b"\r":
            scanner.pos += 1
        if scanner.peek() == b"\n":
            scanner.pos += 1
        start = scanner.pos
        length = body.get("Length")
        if isinstance(length, PdfRef):
            length = self._load(length.num)
        raw: bytes | None = None
        if isinstance(length, int) and start + length <= len(self.data):
            probe = _Scanner(self.data, start + length)
            if probe.try_keyword(b"endstream"):
                raw = self.data[start:start + length]
                scanner.pos = probe.pos
        if raw is None:
            end = self.data.find(b"endstream", start)
            if end == -1:
                raise MalformedPdf(f"object {num}: stream without endstream")
            raw = self.data[start:end]
            if raw.endswith(b"\r\n"):
                raw = raw[:-2]
            elif raw.endswith((b"\n", b"\r")):
                raw = raw[:-1]
            scanner.pos = end + len(b"endstream")
        body["Length"] = len(raw)
        return PdfStream(dict=body, raw=raw)

    def _load_from_objstm(self, container_num: int, num: int) -> PdfObject:
        extracted = self._objstm_cache.get(container_num)
        if extracted is None:
            container = self._load(container_num)
            if not isinstance(container, PdfStream) or container.dict.get("Type") != "ObjStm":
                raise MalformedPdf(f"object {num} claims to live in non-ObjStm {container_num}")
            payload = container.decoded()
            count = container.dict.get("N")
            first = container.dict.get("First")
            if not (isinstance(count, int) and isinstance(first, int)):
                raise MalformedPdf(f"object stream {container_num} missing N or First")
            header = _Scanner(payload)
            pairs = [(header.read_integer(), header.read_integer()) for _ in range(count)]
            extracted = {}
            for obj_num, rel_offset in pairs:
                body = _Scanner(payload, first + rel_offset)
                extracted[obj_num] = body.parse_object()
            self._objstm_cache[container_num] = extracted
        if num not in extracted:
            raise MalformedPdf(f"object {num} not found in object stream {container_num}")
        return extracted[num]


def _flatten_page_tree(doc: PdfDocument, pages_entry: PdfObject) -> list[PdfRef]:
    result: list[PdfRef] = []
    visited: set[PdfRef] = set()

    def visit(item: PdfObject) -> None:
        ref: PdfRef | None = None
        if isinstance(item, PdfRef):
            if item in visited:
                return
            visited.add(item)
            ref = item
            item = doc.resolve(item)
        if not isinstance(item, dict):
            return
        node_type = item.get("Type")
        kids = doc.resolve(item.get("Kids"))
        if isinstance(kids, list) and node_type != "Page":
            for kid in kids:
                visit(kid)
        elif ref is not None and (node_type == "Page" or (node_type is None and "Kids" not in item)):
            result.append(ref)

    visit(pages_entry)
    return result


def parse(data: bytes) -> PdfDocument:
    """Parse PDF bytes into the final-state object graph.

    Raises MalformedPdf for a missing header, unresolvable startxref,
    cyclic Prev chains, truncated objects, or encrypted files.
    """
    if not data:
        raise MalformedPdf("empty input")
    return _DocumentLoader(data).load()
