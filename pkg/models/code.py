"""Code descriptor model for serializing built codes."""
from typing import List, Optional

from pydantic import BaseModel, Field


class CodeDescriptor(BaseModel):
    """Serializable description of a narrow-sense binary BCH code.

    Polynomials are hex strings of the coefficient bits (bit i is x^i).
    """
    t: int
    N: int
    K: int
    delta: int
    prim_poly: str
    g: str
    factors: List[str] = Field(default_factory=list)


class CodeRequest(BaseModel):
    """Parameters identifying a code to build."""
    t: int = Field(ge=2, le=16)
    delta: int = Field(ge=2)
    prim_poly: Optional[str] = None


class EncodeRequest(CodeRequest):
    """Message to encode, as hex of ceil(K/8) bytes (MSB-first)."""
    message_hex: str
    backend: Optional[str] = None


class EncodeResponse(BaseModel):
    codeword_hex: str
    backend: str


class VerifyRequest(CodeRequest):
    """Codeword to check, as hex of ceil(N/8) bytes (MSB-first)."""
    codeword_hex: str


class VerifyResponse(BaseModel):
    valid: bool
    failing_root: Optional[int] = None
