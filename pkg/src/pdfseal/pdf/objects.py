"""Primitive PDF object types.

PDF values map onto plain Python values wherever possible: null is ``None``,
booleans are ``bool``, integers ``int``, reals ``float``, strings ``bytes``
(literal and hex strings are not distinguished after parsing), arrays are
``list`` and dictionaries ``dict`` keyed by ``str``.  Names, indirect
references and streams get their own small classes below.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field
from typing import Any, Union

from ..errors import UnsupportedFilter


class PdfName(str):
    """A PDF name; the leading slash is not part of the value.

    Name bytes are held as latin-1 text so that every byte maps to exactly
    one code point and lexicographic order equals byte order.
    """

    __slots__ = ()

    def __repr__(self) -> str:
        return f"PdfName({str.__repr__(self)})"


@dataclass(frozen=True)
class PdfRef:
    """An indirect reference ``num gen R``."""

    num: int
    gen: int = 0

    def __post_init__(self) -> None:
        if self.num < 1:
            raise ValueError(f"object number must be >= 1, got {self.num}")
        if self.gen < 0:
            raise ValueError(f"generation must be >= 0, got {self.gen}")

    def key(self) -> tuple[int, int]:
        return (self.num, self.gen)


@dataclass
class PdfStream:
    """A stream object: its dictionary plus the raw (still encoded) payload."""

    dict: dict[str, Any] = field(default_factory=dict)
    raw: bytes = b""

    def filters(self) -> list[str]:
        """Return the filter chain as a list of names (empty if unfiltered)."""
        spec = self.dict.get("Filter")
        if spec is None:
            return []
        if isinstance(spec, PdfName):
            return [str(spec)]
        if isinstance(spec, list):
            return [str(f) for f in spec if isinstance(f, PdfName)]
        raise UnsupportedFilter(f"unusable /Filter entry: {spec!r}")

    def decode_parms(self) -> list[dict[str, Any] | None]:
        parms = self.dict.get("DecodeParms", self.dict.get("DP"))
        if parms is None:
            return [None] * len(self.filters())
        if isinstance(parms, dict):
            return [parms]
        if isinstance(parms, list):
            return [p if isinstance(p, dict) else None for p in parms]
        return [None] * len(self.filters())

    def decoded(self) -> bytes:
        """Apply the filter chain to the raw payload.

        Only FlateDecode (with optional PNG predictors) is supported; any
        other filter raises UnsupportedFilter so callers never hash
        editor-dependent compressed bytes by accident.
        """
        data = self.raw
        filters = self.filters()
        parms = self.decode_parms()
        parms += [None] * (len(filters) - len(parms))
        for name, parm in zip(filters, parms):
            if name not in ("FlateDecode", "Fl"):
                raise UnsupportedFilter(f"unsupported stream filter /{name}")
            try:
                data = zlib.decompress(data)
            except zlib.error as exc:
                raise UnsupportedFilter(f"FlateDecode failed: {exc}") from exc
            if parm:
                data = _unpredict(data, parm)
        return data


def _unpredict(data: bytes, parm: dict[str, Any]) -> bytes:
    predictor = parm.get("Predictor", 1)
    if not isinstance(predictor, int) or predictor == 1:
        return data
    if predictor < 10:
        raise UnsupportedFilter(f"unsupported predictor {predictor}")
    colors = parm.get("Colors", 1)
    bpc = parm.get("BitsPerComponent", 8)
    columns = parm.get("Columns", 1)
    stride = (colors * bpc + 7) // 8 * columns
    return _png_unfilter(data, stride)


def _png_unfilter(data: bytes, stride: int) -> bytes:
    # Each row is prefixed with a PNG filter-type byte (RFC 2083 §6).
    out = bytearray()
    prev = bytearray(stride)
    pos = 0
    while pos < len(data):
        ftype = data[pos]
        row = bytearray(data[pos + 1:pos + 1 + stride])
        pos += 1 + stride
        if ftype == 0:
            pass
        elif ftype == 1:
            for i in range(1, len(row)):
                row[i] = (row[i] + row[i - 1]) & 0xFF
        elif ftype == 2:
            for i in range(len(row)):
                row[i] = (row[i] + prev[i]) & 0xFF
        elif ftype == 3:
            for i in range(len(row)):
                left = row[i - 1] if i > 0 else 0
                row[i] = (row[i] + (left + prev[i]) // 2) & 0xFF
        elif ftype == 4:
            for i in range(len(row)):
                a = row[i - 1] if i > 0 else 0
                b = prev[i]
                c = prev[i - 1] if i > 0 else 0
                p = a + b - c
                pa, pb, pc = abs(p - a), abs(p - b), abs(p - c)
                if pa <= pb and pa <= pc:
                    pred = a
                elif pb <= pc:
                    pred = b
                else:
                    pred = c
                row[i] = (row[i] + pred) & 0xFF
        else:
            raise UnsupportedFilter(f"unknown PNG filter type {ftype}")
        out.extend(row)
        prev = row
    return bytes(out)


PdfObject = Union[
    None, bool, int, float, bytes,
    PdfName, list, dict, PdfStream, PdfRef,
]


def copy_object(obj: PdfObject, _memo: dict[int, Any] | None = None) -> PdfObject:
    """Structural copy of a PDF value; scalars and references are shared."""
    if _memo is None:
        _memo = {}
    if isinstance(obj, dict):
        known = _memo.get(id(obj))
        if known is not None:
            return known
        clone: dict[str, Any] = {}
        _memo[id(obj)] = clone
        for k, v in obj.items():
            clone[k] = copy_object(v, _memo)
        return clone
    if isinstance(obj, list):
        known = _memo.get(id(obj))
        if known is not None:
            return known
        items: list[Any] = []
        _memo[id(obj)] = items
        items.extend(copy_object(v, _memo) for v in obj)
        return items
    if isinstance(obj, PdfStream):
        known = _memo.get(id(obj))
        if known is not None:
            return known
        clone_stream = PdfStream(dict={}, raw=obj.raw)
        _memo[id(obj)] = clone_stream
        clone_stream.dict = copy_object(obj.dict, _memo)
        return clone_stream
    return obj


def format_number(value: int | float) -> str:
    """Shortest decimal rendering: no trailing zeros, no exponent, 0 for zero.

    Integral reals collapse to the integer form so that ``612`` and ``612.0``
    stored by different editors serialize identically.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, int):
        return str(value)
    if value == 0:
        return "0"
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    text = repr(value)
    if "e" in text or "E" in text:
        text = format(value, ".17f").rstrip("0").rstrip(".")
    return text
