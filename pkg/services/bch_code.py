"""Narrow-sense binary BCH codes and generic cyclic codes with coprime factors."""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from config import settings
from models.code import CodeDescriptor
from services.codec import BitsLike, as_bits, bits_to_poly
from services.errors import CodeParameterError, NotCoprimeError
from services.gf2field import CyclotomicCoset, Gf2mField, cyclotomic_cosets, minimal_polynomial
from services.gf2poly import ONE, Gf2Poly, poly_divmod, poly_gcd, product

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CyclicCode:
    """Binary cyclic code of length n generated by g = product of coprime factors."""

    n: int
    factors: Tuple[Gf2Poly, ...]
    g: Gf2Poly

    @property
    def k(self) -> int:
        return self.n - self.g.degree

    @property
    def r(self) -> int:
        return len(self.factors)

    @property
    def t(self) -> int:
        """Largest factor degree; bounds the division-stage fanout."""
        return max(w.degree for w in self.factors)

    def is_codeword(self, c: BitsLike) -> bool:
        """Divisibility check Rem_g(c(x)) = 0."""
        poly = bits_to_poly(as_bits(c, self.n, "codeword"))
        return poly_divmod(poly, self.g)[1].is_zero

    def __repr__(self) -> str:
        return f"{type(self).__name__}[{self.n},{self.k}] r={self.r} g={self.g.to_hex()}"


@dataclass(frozen=True, eq=False)
class BchCode(CyclicCode):
    """Narrow-sense BCH code of designed distance delta over GF(2^t)."""

    field: Gf2mField = None
    delta: int = 0
    cosets: Tuple[CyclotomicCoset, ...] = ()

    @property
    def t(self) -> int:
        return self.field.t

    @property
    def prim_poly(self) -> Gf2Poly:
        return self.field.prim_poly


def _check_pairwise_coprime(factors: Sequence[Gf2Poly]) -> None:
    for a, b in combinations(factors, 2):
        d = poly_gcd(a, b)
        if d != ONE:
            raise NotCoprimeError(f"factors {a} and {b} share {d}", common_factor=d)


def bch_build(t: int, delta: int, prim_poly: Optional[Gf2Poly] = None) -> BchCode:
    """Build the narrow-sense BCH code with zeros alpha^1 .. alpha^(delta-1)."""
    n = (1 << t) - 1
    field = Gf2mField(t, prim_poly)
    if not 2 <= delta <= n:
        raise CodeParameterError(f"designed distance must be in [2, {n}], got {delta}")

    cosets = cyclotomic_cosets(t, range(1, delta))
    factors = tuple(minimal_polynomial(field, c.representative) for c in cosets)
    # coset {0} is never included, so deg(g) <= N - 1 and K >= 1
    g = product(factors)
    code = BchCode(n=n, factors=factors, g=g, field=field, delta=delta, cosets=tuple(cosets))
    _check_bch_invariants(code)
    logger.info("Built BCH code [%d,%d] delta=%d r=%d deg(g)=%d", code.n, code.k, delta, code.r, g.degree)
    return code


def _check_bch_invariants(code: BchCode) -> None:
    _check_pairwise_coprime(code.factors)
    for j in range(1, code.delta):
        if not code.field.evaluate_at_power(code.g, j).is_zero:
            raise CodeParameterError(f"alpha^{j} is not a root of the generator polynomial")
    if 2 * code.r > code.g.degree:
        raise CodeParameterError(f"r={code.r} exceeds deg(g)/2 for deg(g)={code.g.degree}")
    for coset, w in zip(code.cosets, code.factors):
        if w.degree != len(coset):
            raise CodeParameterError(f"factor {w} degree does not match coset size {len(coset)}")
    logger.debug("Invariants hold for %r", code)


def cyclic_code(n: int, factors: Sequence[Gf2Poly]) -> CyclicCode:
    """Cyclic code of length n whose generator is the product of ``factors``."""
    if not factors:
        raise CodeParameterError("at least one generator factor is required")
    if any(w.degree is None or w.degree < 1 for w in factors):
        raise CodeParameterError("generator factors must have degree >= 1")
    _check_pairwise_coprime(factors)
    g = product(factors)
    if g.degree >= n:
        raise CodeParameterError(f"deg(g)={g.degree} leaves no message bits for n={n}")
    x_n_plus_1 = Gf2Poly.from_exponents([n, 0])
    if not poly_divmod(x_n_plus_1, g)[1].is_zero:
        raise CodeParameterError(f"{g} does not divide x^{n}+1; not a cyclic code of length {n}")
    return CyclicCode(n=n, factors=tuple(factors), g=g)


def failing_root(code: BchCode, c: BitsLike) -> Optional[int]:
    """First j in 1..delta-1 with c(alpha^j) != 0, or None."""
    poly = bits_to_poly(as_bits(c, code.n, "codeword"))
    exponents = poly.exponents()
    antilog = code.field.antilog
    order = code.field.order
    for j in range(1, code.delta):
        acc = 0
        for i in exponents:
            acc ^= antilog[(i * j) % order]
        if acc:
            return j
    return None


def verify_codeword(code: BchCode, c: BitsLike) -> bool:
    return failing_root(code, c) is None


def systematic_basis(code: CyclicCode) -> List[int]:
    """Codewords of the K unit messages, as coefficient bits."""
    shift = code.g.degree
    rows = []
    for i in range(code.k):
        shifted = Gf2Poly.monomial(shift + i)
        rows.append(shifted.bits ^ poly_divmod(shifted, code.g)[1].bits)
    return rows


def minimum_weight(code: CyclicCode, max_k: Optional[int] = None) -> int:
    """Minimum Hamming weight over all nonzero codewords (exhaustive)."""
    limit = settings.max_exhaustive_k if max_k is None else max_k
    if code.k > limit:
        raise CodeParameterError(f"exhaustive enumeration of 2^{code.k} codewords exceeds the K limit {limit}")
    rows = systematic_basis(code)
    best = code.n
    word = 0
    # Gray-code order: one basis row toggles per step
    for i in range(1, 1 << code.k):
        word ^= rows[(i & -i).bit_length() - 1]
        best = min(best, word.bit_count())
    return best


def describe(code: BchCode) -> CodeDescriptor:
    return CodeDescriptor(
        t=code.t,
        N=code.n,
        K=code.k,
        delta=code.delta,
        prim_poly=code.prim_poly.to_hex(),
        g=code.g.to_hex(),
        factors=[w.to_hex() for w in code.factors],
    )


def load_descriptor(desc: CodeDescriptor) -> BchCode:
    """Rebuild a code from its descriptor and check it matches bit-exactly."""
    code = bch_build(desc.t, desc.delta, Gf2Poly.parse(desc.prim_poly))
    rebuilt = describe(code)
    if rebuilt != desc:
        raise CodeParameterError("descriptor does not match the code rebuilt from its parameters")
    return code
