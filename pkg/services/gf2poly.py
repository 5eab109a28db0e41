"""Polynomial arithmetic over GF(2).

A polynomial is stored as a Python int used as a packed bit sequence, little-endian
by exponent: bit i is the coefficient of x^i. Addition is XOR, multiplication is
carry-less, division is MSB-first shift-and-subtract.
"""
import logging
import re
from typing import Iterable, List, Optional, Tuple

from services.errors import NotCoprimeError, PolynomialError

logger = logging.getLogger(__name__)

_TERM = re.compile(r"^(?:(1)|x(?:\^(\d+))?)$")


class Gf2Poly:
    """Immutable polynomial over GF(2).

    The zero polynomial has ``degree`` None; every other value is monic.
    """

    __slots__ = ("_bits",)

    def __init__(self, bits: int = 0):
        if bits < 0:
            raise PolynomialError(f"coefficient bits must be non-negative, got {bits}")
        self._bits = bits

    @classmethod
    def from_exponents(cls, exponents: Iterable[int]) -> "Gf2Poly":
        bits = 0
        for e in exponents:
            if e < 0:
                raise PolynomialError(f"negative exponent {e}")
            bits ^= 1 << e
        return cls(bits)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> "Gf2Poly":
        """Build from coefficients listed by increasing exponent."""
        bits = 0
        for i, c in enumerate(coeffs):
            if c & 1:
                bits |= 1 << i
        return cls(bits)

    @classmethod
    def monomial(cls, e: int) -> "Gf2Poly":
        return cls(1 << e)

    @classmethod
    def parse(cls, text: str) -> "Gf2Poly":
        """Parse exponent-list notation ("x^4+x+1") or hex ("0x13")."""
        cleaned = text.strip().replace(" ", "")
        if not cleaned:
            raise PolynomialError("empty polynomial text")
        if cleaned.lower().startswith("0x"):
            try:
                return cls(int(cleaned, 16))
            except ValueError as e:
                raise PolynomialError(f"invalid hex polynomial {text!r}") from e
        if cleaned == "0":
            return cls(0)
        exponents = []
        for term in cleaned.split("+"):
            match = _TERM.match(term)
            if not match:
                raise PolynomialError(f"invalid term {term!r} in {text!r}")
            if match.group(1):
                exponents.append(0)
            else:
                exponents.append(int(match.group(2)) if match.group(2) else 1)
        return cls.from_exponents(exponents)

    @property
    def bits(self) -> int:
        return self._bits

    @property
    def degree(self) -> Optional[int]:
        """Degree, or None for the zero polynomial."""
        return self._bits.bit_length() - 1 if self._bits else None

    @property
    def is_zero(self) -> bool:
        return self._bits == 0

    def exponents(self) -> List[int]:
        """Exponents of the nonzero terms, highest first."""
        bits = self._bits
        out = []
        while bits:
            top = bits.bit_length() - 1
            out.append(top)
            bits ^= 1 << top
        return out

    def coeff(self, i: int) -> int:
        return (self._bits >> i) & 1

    def to_exponent_string(self) -> str:
        if not self._bits:
            return "0"
        terms = []
        for e in self.exponents():
            if e == 0:
                terms.append("1")
            elif e == 1:
                terms.append("x")
            else:
                terms.append(f"x^{e}")
        return "+".join(terms)

    def to_hex(self) -> str:
        return hex(self._bits)

    def __add__(self, other: "Gf2Poly") -> "Gf2Poly":
        return poly_add(self, other)

    __sub__ = __add__

    def __mul__(self, other: "Gf2Poly") -> "Gf2Poly":
        return poly_mul(self, other)

    def __divmod__(self, other: "Gf2Poly") -> Tuple["Gf2Poly", "Gf2Poly"]:
        return poly_divmod(self, other)

    def __floordiv__(self, other: "Gf2Poly") -> "Gf2Poly":
        return poly_divmod(self, other)[0]

    def __mod__(self, other: "Gf2Poly") -> "Gf2Poly":
        return poly_divmod(self, other)[1]

    def __lshift__(self, k: int) -> "Gf2Poly":
        return Gf2Poly(self._bits << k)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Gf2Poly):
            return NotImplemented
        return self._bits == other._bits

    def __hash__(self) -> int:
        return hash(("Gf2Poly", self._bits))

    def __bool__(self) -> bool:
        return self._bits != 0

    def __str__(self) -> str:
        return self.to_exponent_string()

    def __repr__(self) -> str:
        return f"Gf2Poly({self.to_exponent_string()})"


ZERO = Gf2Poly(0)
ONE = Gf2Poly(1)


def _clmul(a: int, b: int) -> int:
    if a.bit_count() > b.bit_count():
        a, b = b, a
    result = 0
    while a:
        low = a & -a
        result ^= b << (low.bit_length() - 1)
        a ^= low
    return result


def _divmod_bits(a: int, b: int) -> Tuple[int, int]:
    db = b.bit_length()
    q = 0
    r = a
    while r.bit_length() >= db:
        shift = r.bit_length() - db
        q |= 1 << shift
        r ^= b << shift
    return q, r


def poly_add(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    return Gf2Poly(a.bits ^ b.bits)


def poly_mul(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    """Carry-less product."""
    return Gf2Poly(_clmul(a.bits, b.bits))


def poly_divmod(a: Gf2Poly, b: Gf2Poly) -> Tuple[Gf2Poly, Gf2Poly]:
    """Schoolbook division: returns (q, r) with a = q*b + r and deg r < deg b."""
    if b.is_zero:
        raise PolynomialError("division by the zero polynomial")
    q, r = _divmod_bits(a.bits, b.bits)
    return Gf2Poly(q), Gf2Poly(r)


def poly_ext_gcd(a: Gf2Poly, b: Gf2Poly) -> Tuple[Gf2Poly, Gf2Poly, Gf2Poly]:
    """Extended Euclid: returns (d, s, t) with s*a + t*b = d = gcd(a, b)."""
    if a.is_zero and b.is_zero:
        raise PolynomialError("gcd of two zero polynomials is undefined")
    old_r, r = a.bits, b.bits
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q, rem = _divmod_bits(old_r, r)
        old_r, r = r, rem
        old_s, s = s, old_s ^ _clmul(q, s)
        old_t, t = t, old_t ^ _clmul(q, t)
    return Gf2Poly(old_r), Gf2Poly(old_s), Gf2Poly(old_t)


def poly_gcd(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    return poly_ext_gcd(a, b)[0]


def poly_mod_inverse(a: Gf2Poly, m: Gf2Poly) -> Gf2Poly:
    """Inverse of a modulo m, of degree < deg m."""
    if m.is_zero or m.degree < 1:
        raise PolynomialError(f"modulus must have degree >= 1, got {m}")
    d, s, _ = poly_ext_gcd(a % m, m)
    if d != ONE:
        raise NotCoprimeError(f"{a} is not invertible modulo {m}: common factor {d}", common_factor=d)
    return s % m


def poly_pow_mod(a: Gf2Poly, e: int, m: Gf2Poly) -> Gf2Poly:
    """a^e mod m by square-and-multiply."""
    if e < 0:
        raise PolynomialError("negative exponent")
    result = ONE % m
    base = a % m
    while e:
        if e & 1:
            result = (result * base) % m
        base = (base * base) % m
        e >>= 1
    return result


def nz(a: Gf2Poly) -> int:
    """Number of nonzero coefficients."""
    return a.bits.bit_count()


def product(polys: Iterable[Gf2Poly]) -> Gf2Poly:
    result = ONE
    for p in polys:
        result = result * p
    return result


class Gf2Reducer:
    """Table-driven remainder modulo a fixed polynomial, one byte per step.

    Same result as ``poly_divmod(f, modulus)[1]``; the table holds
    Rem_h(b * x^deg(h)) for every byte b.
    """

    CHUNK = 8

    def __init__(self, modulus: Gf2Poly):
        if modulus.is_zero or modulus.degree < 1:
            raise PolynomialError(f"reducer modulus must have degree >= 1, got {modulus}")
        self.modulus = modulus
        self._deg = modulus.degree
        self._mask = (1 << self._deg) - 1
        self._table = [
            _divmod_bits(b << self._deg, modulus.bits)[1] for b in range(1 << self.CHUNK)
        ]

    def remainder(self, f: Gf2Poly) -> Gf2Poly:
        bits = f.bits
        if bits.bit_length() <= self._deg:
            return f
        chunk = self.CHUNK
        top = bits.bit_length()
        # Align so the leading chunk is full; leading zeros are harmless.
        start = ((top + chunk - 1) // chunk) * chunk
        r = 0
        for shift in range(start - chunk, -1, -chunk):
            r = (r << chunk) | ((bits >> shift) & 0xFF)
            r = (r & self._mask) ^ self._table[r >> self._deg]
        return Gf2Poly(r)
