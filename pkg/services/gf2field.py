"""GF(2^t) arithmetic, cyclotomic cosets and minimal polynomials.

Elements are held in polynomial basis (bit i is the coefficient of alpha^i) with
log/antilog tables for O(1) multiplication.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from config import settings
from services.errors import FieldError
from services.gf2poly import Gf2Poly, nz, poly_pow_mod

logger = logging.getLogger(__name__)

MIN_T = 2
MAX_T = 16

# Default primitive polynomials, versioned with the package. Overridable via
# settings.prim_poly_overrides or the --prim-poly flag.
DEFAULT_PRIMITIVE_POLYS: Dict[int, str] = {
    2: "x^2+x+1",
    3: "x^3+x+1",
    4: "x^4+x+1",
    5: "x^5+x^2+1",
    6: "x^6+x+1",
    7: "x^7+x^3+1",
    8: "x^8+x^4+x^3+x^2+1",
    9: "x^9+x^4+1",
    10: "x^10+x^3+1",
    11: "x^11+x^2+1",
    12: "x^12+x^6+x^4+x+1",
    13: "x^13+x^4+x^3+x+1",
    14: "x^14+x^10+x^6+x+1",
    15: "x^15+x+1",
    16: "x^16+x^12+x^3+x+1",
}


def default_primitive_poly(t: int) -> Gf2Poly:
    text = settings.prim_poly_overrides.get(t) or DEFAULT_PRIMITIVE_POLYS.get(t)
    if text is None:
        raise FieldError(f"no default primitive polynomial for t={t}")
    return Gf2Poly.parse(text)


@dataclass(frozen=True)
class Gf2mElement:
    """Field element in polynomial basis."""

    bits: int

    @property
    def is_zero(self) -> bool:
        return self.bits == 0


@dataclass(frozen=True)
class CyclotomicCoset:
    """Orbit {j, 2j, 4j, ...} mod 2^t - 1, listed from its smallest member."""

    representative: int
    members: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, j: int) -> bool:
        return j in self.members


class Gf2mField:
    """GF(2^t) defined by a primitive polynomial."""

    def __init__(self, t: int, prim_poly: Optional[Gf2Poly] = None):
        if not MIN_T <= t <= MAX_T:
            raise FieldError(f"extension degree t must be in [{MIN_T}, {MAX_T}], got {t}")
        if prim_poly is None:
            prim_poly = default_primitive_poly(t)
        if prim_poly.degree != t:
            raise FieldError(f"primitive polynomial {prim_poly} has degree {prim_poly.degree}, expected {t}")

        self.t = t
        self.prim_poly = prim_poly
        self.order = (1 << t) - 1
        self.antilog: List[int] = [0] * self.order
        self.log: List[int] = [-1] * (1 << t)

        p = prim_poly.bits
        top = 1 << t
        e = 1
        for k in range(self.order):
            if k > 0 and e == 1:
                raise FieldError(
                    f"{prim_poly} is not primitive: root has multiplicative order {k}, expected {self.order}",
                    order=k,
                )
            if e == 0 or self.log[e] != -1:
                # x is not invertible or cycles without passing through 1
                raise FieldError(
                    f"{prim_poly} is not primitive: root has no multiplicative order {self.order}",
                    order=None,
                )
            self.antilog[k] = e
            self.log[e] = k
            e <<= 1
            if e & top:
                e ^= p
        if e != 1:
            raise FieldError(f"{prim_poly} is not primitive", order=None)
        logger.debug("Built GF(2^%d) with primitive polynomial %s", t, prim_poly)

    def __repr__(self) -> str:
        return f"Gf2mField(t={self.t}, prim_poly={self.prim_poly})"

    @property
    def size(self) -> int:
        return self.order + 1

    def element(self, bits: int) -> Gf2mElement:
        if not 0 <= bits <= self.order:
            raise FieldError(f"{bits:#x} is not a reduced element of GF(2^{self.t})")
        return Gf2mElement(bits)

    @property
    def zero(self) -> Gf2mElement:
        return Gf2mElement(0)

    @property
    def one(self) -> Gf2mElement:
        return Gf2mElement(1)

    @property
    def alpha(self) -> Gf2mElement:
        return Gf2mElement(self.antilog[1 % self.order])

    def alpha_pow(self, k: int) -> Gf2mElement:
        return Gf2mElement(self.antilog[k % self.order])

    def log_of(self, a: Gf2mElement) -> int:
        if a.is_zero:
            raise FieldError("logarithm of zero is undefined")
        return self.log[a.bits]

    def add(self, a: Gf2mElement, b: Gf2mElement) -> Gf2mElement:
        return Gf2mElement(a.bits ^ b.bits)

    def mul(self, a: Gf2mElement, b: Gf2mElement) -> Gf2mElement:
        return Gf2mElement(self._mul(a.bits, b.bits))

    def inverse(self, a: Gf2mElement) -> Gf2mElement:
        if a.is_zero:
            raise FieldError("zero has no multiplicative inverse")
        return Gf2mElement(self.antilog[(-self.log[a.bits]) % self.order])

    def pow(self, a: Gf2mElement, e: int) -> Gf2mElement:
        if a.is_zero:
            return self.one if e == 0 else self.zero
        return Gf2mElement(self.antilog[(self.log[a.bits] * e) % self.order])

    def _mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.antilog[(self.log[a] + self.log[b]) % self.order]

    def evaluate(self, poly: Gf2Poly, x: Gf2mElement) -> Gf2mElement:
        """Horner evaluation of a GF(2) polynomial at a field element."""
        acc = 0
        bits = poly.bits
        for i in range(bits.bit_length() - 1, -1, -1):
            acc = self._mul(acc, x.bits) ^ ((bits >> i) & 1)
        return Gf2mElement(acc)

    def evaluate_at_power(self, poly: Gf2Poly, j: int) -> Gf2mElement:
        """poly(alpha^j), summing alpha^(i*j) over the nonzero terms."""
        acc = 0
        order = self.order
        antilog = self.antilog
        for i in poly.exponents():
            acc ^= antilog[(i * j) % order]
        return Gf2mElement(acc)


def elem_mul(f: Gf2mField, a: Gf2mElement, b: Gf2mElement) -> Gf2mElement:
    return f.mul(a, b)


def field_new(t: int, prim_poly: Optional[Gf2Poly] = None) -> Gf2mField:
    return Gf2mField(t, prim_poly)


def coset_of(t: int, j: int) -> CyclotomicCoset:
    n = (1 << t) - 1
    if not 0 <= j < n:
        raise FieldError(f"exponent {j} outside [0, {n - 1}]")
    orbit = [j]
    k = (2 * j) % n
    while k != j:
        orbit.append(k)
        k = (2 * k) % n
    rep = min(orbit)
    members = [rep]
    k = (2 * rep) % n
    while k != rep:
        members.append(k)
        k = (2 * k) % n
    return CyclotomicCoset(representative=rep, members=tuple(members))


def cyclotomic_cosets(t: int, exponents: Iterable[int]) -> List[CyclotomicCoset]:
    """Disjoint cosets covering ``exponents``, sorted by representative."""
    seen = set()
    cosets = []
    for j in sorted(set(exponents)):
        if j in seen:
            continue
        coset = coset_of(t, j)
        seen.update(coset.members)
        cosets.append(coset)
    cosets.sort(key=lambda c: c.representative)
    return cosets


def minimal_polynomial(f: Gf2mField, j: int) -> Gf2Poly:
    """Product of (x - alpha^s) over the coset of j, projected onto GF(2)."""
    coset = coset_of(f.t, j)
    # coefficients in GF(2^t), lowest degree first
    coeffs = [1]
    for s in coset.members:
        root = f.antilog[s]
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] ^= c
            nxt[i] ^= f._mul(c, root)
        coeffs = nxt
    if any(c not in (0, 1) for c in coeffs):
        raise FieldError(f"minimal polynomial of alpha^{j} has coefficients outside GF(2); field tables are inconsistent")
    return Gf2Poly.from_coeffs(coeffs)


def _prime_factors(n: int) -> List[int]:
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    return factors


def is_primitive(p: Gf2Poly) -> bool:
    """True iff x has multiplicative order exactly 2^deg(p) - 1 modulo p."""
    t = p.degree
    if t is None or t < 1 or not p.coeff(0):
        return False
    order = (1 << t) - 1
    x = Gf2Poly.monomial(1)
    one = Gf2Poly(1)
    if poly_pow_mod(x, order, p) != one:
        return False
    return all(poly_pow_mod(x, order // q, p) != one for q in _prime_factors(order))


def primitive_polynomials(t: int, limit: Optional[int] = None) -> Iterator[Gf2Poly]:
    """Primitive polynomials of degree t in increasing integer order."""
    if not MIN_T <= t <= MAX_T:
        raise FieldError(f"extension degree t must be in [{MIN_T}, {MAX_T}], got {t}")
    found = 0
    for bits in range((1 << t) | 1, 1 << (t + 1), 2):
        if limit is not None and found >= limit:
            return
        candidate = Gf2Poly(bits)
        # even weight means x+1 divides it
        if nz(candidate) % 2 == 0:
            continue
        if is_primitive(candidate):
            found += 1
            yield candidate
