"""HTTP service wrapping the core package.

Documents travel base64-encoded inside JSON bodies so the API stays plain
pydantic request/response models.
"""

from __future__ import annotations

import base64
import binascii
from typing import List

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .assess import assess
from .errors import MalformedPdf, PdfSealError, UnsupportedFilter
from .pdf import parse, write
from .protect import PROTECTED_SUFFIX, protect


class HealthResponse(BaseModel):
    status: str
    version: str


class PageHashesModel(BaseModel):
    object: str
    root: str
    leaves: List[str]


class RootHashesModel(BaseModel):
    root: str
    info: str


class ProtectRequest(BaseModel):
    pdf_base64: str = Field(description="The PDF to protect, base64 encoded")
    filename: str = Field(default="document.pdf")


class ProtectResponse(BaseModel):
    filename: str
    pages_protected: int
    page_hashes: List[PageHashesModel]
    root_hashes: RootHashesModel
    pdf_base64: str = Field(description="The protected PDF, base64 encoded")


class AssessRequest(BaseModel):
    pdf_base64: str = Field(description="The PDF to assess, base64 encoded")


class PageFindingModel(BaseModel):
    page: int
    object_mismatch: bool
    content_mismatch: bool
    altered_chunks: List[int]
    leaf_count_changed: bool


class AssessResponse(BaseModel):
    verdict: str
    root_mismatch: bool
    info_mismatch: bool
    pages: List[PageFindingModel]
    messages: List[str]


app = FastAPI(
    title="pdfseal",
    version=__version__,
    description=(
        "Embeds per-page and document-level hash values into PDF documents "
        "and verifies them later, localizing alterations to the page and "
        "256-byte chunk."
    ),
)


def _decode_pdf(encoded: str) -> bytes:
    try:
        data = base64.b64decode(encoded, validate=True)
    except (binascii.Error, ValueError) as exc:
        raise HTTPException(status_code=400, detail=f"invalid base64 payload: {exc}")
    if not data:
        raise HTTPException(status_code=400, detail="empty document")
    return data


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/protect", response_model=ProtectResponse)
def protect_endpoint(request: ProtectRequest) -> ProtectResponse:
    data = _decode_pdf(request.pdf_base64)
    try:
        doc = parse(data)
        protected, outcome = protect(doc)
        output = write(protected)
    except MalformedPdf as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    except UnsupportedFilter as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    except PdfSealError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    stem = request.filename.rsplit(".", 1)[0] if "." in request.filename else request.filename
    return ProtectResponse(
        filename=stem + PROTECTED_SUFFIX,
        pages_protected=outcome.pages_protected,
        page_hashes=[PageHashesModel(**ph.as_dict()) for ph in outcome.page_hashes],
        root_hashes=RootHashesModel(**outcome.root_hashes.as_dict()),
        pdf_base64=base64.b64encode(output).decode("ascii"),
    )


@app.post("/assess", response_model=AssessResponse)
def assess_endpoint(request: AssessRequest) -> AssessResponse:
    data = _decode_pdf(request.pdf_base64)
    try:
        report = assess(parse(data))
    except MalformedPdf as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    except PdfSealError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return AssessResponse(**report.as_dict())
