"""CRT-based systematic encoding.

For g = w_1 ... w_r with pairwise-coprime factors, w_i' = g / w_i and
u_i = (w_i')^-1 mod w_i,

    Rem_g(f) = sum_i w_i' * Rem_{w_i}(u_i * f)

with no final reduction: every term already has degree < deg(g).
"""
import asyncio
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence, Tuple

from services.bch_code import CyclicCode
from services.codec import BitVector, BitsLike, as_bits, bits_to_poly, poly_from_bytes, poly_to_bits, poly_to_bytes
from services.errors import CodeParameterError, CrtInvariantError
from services.gf2poly import ONE, ZERO, Gf2Poly, Gf2Reducer, poly_divmod, poly_gcd, poly_mod_inverse, product

logger = logging.getLogger(__name__)


class Backend(str, Enum):
    NAIVE = "naive"
    LFSR_DIRECT = "lfsr_direct"
    CRT = "crt"


@dataclass(frozen=True, eq=False)
class CrtBranch:
    """One CRT branch: divisor w, cofactor w' = g / w, constant u = (w')^-1 mod w."""

    w: Gf2Poly
    w_prime: Gf2Poly
    u: Gf2Poly
    reducer: Gf2Reducer = field(repr=False, default=None)

    def evaluate(self, f: Gf2Poly) -> Gf2Poly:
        """w' * Rem_w(u * f)."""
        return self.w_prime * self.reducer.remainder(self.u * f)


@dataclass(frozen=True, eq=False)
class CrtPlan:
    n: int
    g: Gf2Poly
    branches: Tuple[CrtBranch, ...]

    @property
    def k(self) -> int:
        return self.n - self.g.degree

    @property
    def r(self) -> int:
        return len(self.branches)


def crt_plan_from_factors(n: int, factors: Sequence[Gf2Poly]) -> CrtPlan:
    """Compute and re-verify the CRT constants for pairwise-coprime factors."""
    g = product(factors)
    branches = []
    for i, w in enumerate(factors):
        w_prime, rem = poly_divmod(g, w)
        if not rem.is_zero:
            raise CrtInvariantError(f"factor {w} does not divide g")
        if w.degree == 0:
            raise CrtInvariantError("constant factor in CRT decomposition")
        if poly_gcd(w_prime, w) != ONE:
            # a repeated or shared factor makes w' non-invertible mod w
            raise CrtInvariantError(f"factor {w} is not coprime to the remaining factors")
        u = poly_mod_inverse(w_prime % w, w)
        if u.degree is not None and u.degree >= w.degree:
            raise CrtInvariantError(f"branch {i}: deg(u)={u.degree} >= deg(w)={w.degree}")
        if (u * w_prime) % w != ONE:
            raise CrtInvariantError(f"branch {i}: u * w' is not 1 modulo w")
        if w_prime.degree != g.degree - w.degree:
            raise CrtInvariantError(f"branch {i}: deg(w') inconsistent with deg(g) - deg(w)")
        branches.append(CrtBranch(w=w, w_prime=w_prime, u=u, reducer=Gf2Reducer(w)))
        logger.debug("CRT branch %d: w=%s deg(w')=%d u=%s", i, w, w_prime.degree, u)
    logger.info("CRT plan ready: r=%d deg(g)=%d", len(branches), g.degree)
    return CrtPlan(n=n, g=g, branches=tuple(branches))


def crt_setup(code: CyclicCode) -> CrtPlan:
    if code.r == 1:
        logger.warning("Generator is irreducible (r=1); CRT decomposition degenerates to a single divider")
    return crt_plan_from_factors(code.n, code.factors)


def _check_sum(plan: CrtPlan, total: Gf2Poly) -> Gf2Poly:
    if total.degree is not None and total.degree >= plan.g.degree:
        raise CrtInvariantError(f"CRT sum has degree {total.degree} >= deg(g)={plan.g.degree}")
    return total


def crt_remainder(plan: CrtPlan, f: Gf2Poly) -> Gf2Poly:
    """Rem_g(f) assembled from the per-branch remainders."""
    total = ZERO
    for branch in plan.branches:
        total = total + branch.evaluate(f)
    return _check_sum(plan, total)


async def crt_remainder_concurrent(plan: CrtPlan, f: Gf2Poly) -> Gf2Poly:
    """Same as crt_remainder, with branches evaluated in worker threads."""
    parts = await asyncio.gather(*(asyncio.to_thread(b.evaluate, f) for b in plan.branches))
    total = ZERO
    for part in parts:
        total = total + part
    return _check_sum(plan, total)


def _parity_remainder(code: CyclicCode, shifted: Gf2Poly, backend: Backend, plan: Optional[CrtPlan]) -> Gf2Poly:
    if backend is Backend.NAIVE:
        return poly_divmod(shifted, code.g)[1]
    if backend is Backend.LFSR_DIRECT:
        from services.lfsr_sim import build_div_lfsr, simulate_serial

        divider = build_div_lfsr(code.g)
        _, state = simulate_serial(divider, poly_to_bits(shifted, code.n))
        return Gf2Poly(state)
    if backend is Backend.CRT:
        return crt_remainder(plan or crt_setup(code), shifted)
    raise CodeParameterError(f"unknown backend {backend!r}")


def encode_poly(
    code: CyclicCode,
    m: Gf2Poly,
    backend: Backend = Backend.CRT,
    plan: Optional[CrtPlan] = None,
) -> Gf2Poly:
    """c(x) = m(x) x^(N-K) + Rem_g(m(x) x^(N-K))."""
    if m.bits.bit_length() > code.k:
        raise CodeParameterError(f"message polynomial of degree {m.degree} exceeds K-1={code.k - 1}")
    shifted = m << code.g.degree
    return shifted + _parity_remainder(code, shifted, Backend(backend), plan)


def encode_systematic(
    code: CyclicCode,
    m: BitsLike,
    backend: Backend = Backend.CRT,
    plan: Optional[CrtPlan] = None,
) -> BitVector:
    """Encode a K-bit message (MSB-first) into an N-bit codeword (MSB-first)."""
    message = bits_to_poly(as_bits(m, code.k, "message"))
    return poly_to_bits(encode_poly(code, message, backend, plan), code.n)


def encode_bytes(
    code: CyclicCode,
    payload: bytes,
    backend: Backend = Backend.CRT,
    plan: Optional[CrtPlan] = None,
) -> bytes:
    """Encode a ceil(K/8)-byte message payload into a ceil(N/8)-byte codeword payload."""
    message = poly_from_bytes(payload, code.k)
    return poly_to_bytes(encode_poly(code, message, backend, plan), code.n)
