"""Conversions between bit vectors, byte payloads, hex strings and polynomials.

Bit vectors are numpy uint8 arrays ordered MSB-first: element 0 is the coefficient
of the highest power (m_{K-1} for a message, c_{N-1} for a codeword). Byte payloads
hold the same value big-endian in exactly ceil(nbits/8) bytes, zero-padded on the
left inside the top byte.
"""
from typing import Sequence, Union

import numpy as np

from services.errors import LengthMismatchError
from services.gf2poly import Gf2Poly

BitVector = np.ndarray
BitsLike = Union[Sequence[int], np.ndarray]


def byte_length(nbits: int) -> int:
    return (nbits + 7) // 8


def as_bits(bits: BitsLike, length: int, what: str = "bit vector") -> BitVector:
    arr = np.asarray(bits, dtype=np.uint8)
    if arr.ndim != 1 or arr.size != length:
        raise LengthMismatchError(f"{what} must have exactly {length} bits, got {arr.size}")
    if np.any(arr > 1):
        raise LengthMismatchError(f"{what} contains values other than 0 and 1")
    return arr


def bits_to_poly(bits: BitsLike) -> Gf2Poly:
    arr = np.asarray(bits, dtype=np.uint8)
    pad = (-arr.size) % 8
    packed = np.packbits(np.concatenate([np.zeros(pad, dtype=np.uint8), arr]))
    return Gf2Poly(int.from_bytes(packed.tobytes(), "big"))


def poly_to_bits(poly: Gf2Poly, length: int) -> BitVector:
    if poly.bits.bit_length() > length:
        raise LengthMismatchError(f"polynomial of degree {poly.degree} does not fit in {length} bits")
    nbytes = byte_length(length)
    raw = np.frombuffer(poly.bits.to_bytes(nbytes, "big"), dtype=np.uint8)
    return np.unpackbits(raw)[nbytes * 8 - length:]


def poly_from_bytes(data: bytes, nbits: int) -> Gf2Poly:
    expected = byte_length(nbits)
    if len(data) != expected:
        raise LengthMismatchError(f"payload must be exactly {expected} bytes for {nbits} bits, got {len(data)}")
    value = int.from_bytes(data, "big")
    if value.bit_length() > nbits:
        raise LengthMismatchError(f"payload has nonzero padding bits above bit {nbits - 1}")
    return Gf2Poly(value)


def poly_to_bytes(poly: Gf2Poly, nbits: int) -> bytes:
    if poly.bits.bit_length() > nbits:
        raise LengthMismatchError(f"polynomial of degree {poly.degree} does not fit in {nbits} bits")
    return poly.bits.to_bytes(byte_length(nbits), "big")


def bytes_from_hex(text: str) -> bytes:
    cleaned = text.strip().replace(" ", "").replace("\n", "")
    if cleaned.lower().startswith("0x"):
        cleaned = cleaned[2:]
    try:
        return bytes.fromhex(cleaned)
    except ValueError as e:
        raise LengthMismatchError(f"invalid hex payload: {e}") from e
