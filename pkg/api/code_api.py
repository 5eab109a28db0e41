"""Code construction, encoding and cost endpoints."""
from functools import lru_cache
from typing import Dict, Optional, Tuple

from fastapi import APIRouter, HTTPException

from config import settings
from models.code import (
    CodeDescriptor,
    CodeRequest,
    EncodeRequest,
    EncodeResponse,
    VerifyRequest,
    VerifyResponse,
)
from models.report import CostReport
from services.bch_code import BchCode, bch_build, describe, failing_root
from services.codec import bytes_from_hex, poly_from_bytes, poly_to_bits
from services.crt_encoder import Backend, CrtPlan, crt_setup, encode_bytes
from services.errors import BchError
from services.gf2poly import Gf2Poly
from services.report import analyze

router = APIRouter(prefix="/api", tags=["codes"])


@lru_cache(maxsize=32)
def _build(t: int, delta: int, prim_poly: Optional[str]) -> Tuple[BchCode, CrtPlan]:
    code = bch_build(t, delta, Gf2Poly.parse(prim_poly) if prim_poly else None)
    return code, crt_setup(code)


def _code_for(request: CodeRequest) -> Tuple[BchCode, CrtPlan]:
    try:
        return _build(request.t, request.delta, request.prim_poly)
    except BchError as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/codes")
def build_code(request: CodeRequest) -> CodeDescriptor:
    """Build a BCH code and return its descriptor."""
    code, _ = _code_for(request)
    return describe(code)


@router.post("/encode")
def encode(request: EncodeRequest) -> EncodeResponse:
    """Systematically encode one message."""
    code, plan = _code_for(request)
    backend = request.backend or settings.default_backend
    try:
        codeword = encode_bytes(code, bytes_from_hex(request.message_hex), Backend(backend), plan)
    except BchError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except ValueError:
        raise HTTPException(status_code=400, detail=f"unknown backend {backend!r}")
    return EncodeResponse(codeword_hex=codeword.hex(), backend=Backend(backend).value)


@router.post("/verify")
def verify(request: VerifyRequest) -> VerifyResponse:
    """Check the root property of a codeword."""
    code, _ = _code_for(request)
    try:
        word = poly_from_bytes(bytes_from_hex(request.codeword_hex), code.n)
    except BchError as e:
        raise HTTPException(status_code=400, detail=str(e))
    root = failing_root(code, poly_to_bits(word, code.n))
    return VerifyResponse(valid=root is None, failing_root=root)


@router.post("/cost")
def cost(request: CodeRequest) -> CostReport:
    """XOR-gate and fanout ledger for the CRT datapath."""
    code, _ = _code_for(request)
    return analyze(code)


@router.get("/health")
async def health_check() -> Dict[str, str]:
    """Health check endpoint."""
    return {"service": "bch-crt-api", "status": "ok"}
