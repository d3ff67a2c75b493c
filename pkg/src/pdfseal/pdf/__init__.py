"""Low-level PDF object model: parse, inspect, mutate, write."""

from .document import PageView, PdfDocument, page_view
from .objects import PdfName, PdfObject, PdfRef, PdfStream, copy_object, format_number
from .parser import parse
from .writer import write

__all__ = [
    "PageView",
    "PdfDocument",
    "PdfName",
    "PdfObject",
    "PdfRef",
    "PdfStream",
    "copy_object",
    "format_number",
    "page_view",
    "parse",
    "write",
]
