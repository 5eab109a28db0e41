"""Bit-accurate serial LFSR circuits and the four-stage CRT datapath.

Registers are Python ints; bit i of a divider register holds the coefficient
of x^i of the running remainder. Streams are MSB-first (highest power first).
"""
import asyncio
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from services.bch_code import CyclicCode
from services.codec import BitsLike, as_bits, bits_to_poly
from services.crt_encoder import CrtPlan
from services.errors import PolynomialError
from services.gf2poly import ZERO, Gf2Poly, nz

logger = logging.getLogger(__name__)

TraceSink = Callable[[str], None]


class CircuitKind(str, Enum):
    MULTIPLY = "multiply"
    DIVIDE = "divide"


@dataclass(eq=False)
class LfsrCircuit:
    """Serial multiplication (transversal) or division (Galois) circuit for taps h.

    A multiplier keeps the last deg(h)+1 input bits and outputs the parity of the
    window masked with reversed taps. A divider shifts the next input bit in at
    x^0 and XORs the taps below the leading term whenever x^(deg h - 1) is set.
    """

    kind: CircuitKind
    taps: Gf2Poly
    label: str = ""
    state: int = 0
    xor_count: int = 0
    feedback_fanout: int = 0
    input_fanout: int = 0
    pipelineable: bool = False
    _mask: int = field(default=0, repr=False)
    _tap_mask: int = field(default=0, repr=False)

    @property
    def width(self) -> int:
        """Register length."""
        if self.kind is CircuitKind.DIVIDE:
            return self.taps.degree
        return self.taps.degree + 1

    @property
    def xor_bound(self) -> int:
        return nz(self.taps)

    def reset(self) -> None:
        self.state = 0

    def clock(self, bit: int) -> int:
        """Advance one cycle; returns the output bit."""
        bit &= 1
        if self.kind is CircuitKind.MULTIPLY:
            self.state = ((self.state << 1) | bit) & self._mask
            return (self.state & self._tap_mask).bit_count() & 1
        d = self.taps.degree
        feedback = (self.state >> (d - 1)) & 1
        self.state = ((self.state << 1) | bit) & self._mask
        if feedback:
            self.state ^= self._tap_mask
        return feedback

    def format_state(self) -> str:
        digits = max(1, (self.width + 3) // 4)
        return f"{self.state:0{digits}x}"


def _reverse_bits(value: int, width: int) -> int:
    out = 0
    for i in range(width):
        if (value >> i) & 1:
            out |= 1 << (width - 1 - i)
    return out


def build_mult_lfsr(h: Gf2Poly, label: str = "") -> LfsrCircuit:
    """Transversal multiplier by h; nz(h) - 1 two-input XORs."""
    if h.is_zero:
        raise PolynomialError("cannot build a multiplication circuit for the zero polynomial")
    d = h.degree
    return LfsrCircuit(
        kind=CircuitKind.MULTIPLY,
        taps=h,
        label=label or f"mul[{h.to_hex()}]",
        xor_count=nz(h) - 1,
        input_fanout=nz(h),
        pipelineable=True,
        _mask=(1 << (d + 1)) - 1,
        _tap_mask=_reverse_bits(h.bits, d + 1),
    )


def build_div_lfsr(h: Gf2Poly, label: str = "") -> LfsrCircuit:
    """Galois divider by h; the feedback net drives nz(h) - 1 XORs."""
    if h.is_zero or h.degree < 1:
        raise PolynomialError(f"division circuit needs a divisor of degree >= 1, got {h}")
    d = h.degree
    return LfsrCircuit(
        kind=CircuitKind.DIVIDE,
        taps=h,
        label=label or f"div[{h.to_hex()}]",
        xor_count=nz(h) - 1,
        feedback_fanout=nz(h) - 1,
        input_fanout=1,
        _mask=(1 << d) - 1,
        _tap_mask=h.bits ^ (1 << d),
    )


def simulate_serial(
    c: LfsrCircuit,
    input_bits: Iterable[int],
    trace: Optional[TraceSink] = None,
) -> Tuple[List[int], int]:
    """Reset, clock the stream through, return (output_bits, final_state).

    Multipliers get deg(h) extra zero cycles so the output stream carries every
    product coefficient, MSB-first. A divider's final state is the remainder.
    """
    c.reset()
    bits = [int(b) & 1 for b in input_bits]
    if c.kind is CircuitKind.MULTIPLY:
        bits.extend([0] * c.taps.degree)
    out = []
    for cycle, bit in enumerate(bits):
        o = c.clock(bit)
        out.append(o)
        if trace is not None:
            trace(f"{c.label} {cycle} in={bit & 1} out={o} state={c.format_state()}")
    return out, c.state


def _stream(poly: Gf2Poly, length: int) -> List[int]:
    """poly as an MSB-first stream of ``length`` bits."""
    bits = poly.bits
    return [(bits >> i) & 1 for i in range(length - 1, -1, -1)]


def _from_stream(bits: Sequence[int]) -> Gf2Poly:
    value = 0
    for b in bits:
        value = (value << 1) | (b & 1)
    return Gf2Poly(value)


@dataclass(eq=False)
class SummationTree:
    """Step 4: XOR of r branch outputs arranged as a balanced tree."""

    fan_in: int
    width: int

    @property
    def depth(self) -> int:
        return math.ceil(math.log2(self.fan_in)) if self.fan_in > 1 else 0

    @property
    def xor_count(self) -> int:
        """Serial realization: one bit per input per clock."""
        return self.fan_in - 1

    @property
    def parallel_xor_count(self) -> int:
        """Word-parallel realization over deg(g)-wide outputs."""
        return (self.fan_in - 1) * self.width

    def combine(self, values: Sequence[Gf2Poly]) -> Gf2Poly:
        if len(values) != self.fan_in:
            raise PolynomialError(f"summation tree expects {self.fan_in} inputs, got {len(values)}")
        level = list(values)
        while len(level) > 1:
            nxt = [level[i] + level[i + 1] for i in range(0, len(level) - 1, 2)]
            if len(level) % 2:
                nxt.append(level[-1])
            level = nxt
        return level[0] if level else ZERO


@dataclass(eq=False)
class Datapath:
    plan: CrtPlan
    stage1: List[LfsrCircuit]
    stage2: List[LfsrCircuit]
    stage3: List[LfsrCircuit]
    stage4: SummationTree

    @property
    def r(self) -> int:
        return len(self.stage2)

    @property
    def max_division_fanout(self) -> int:
        return max(c.feedback_fanout for c in self.stage2)


def build_datapath(plan: CrtPlan) -> Datapath:
    stage1 = [build_mult_lfsr(b.u, label=f"s1[{i}]") for i, b in enumerate(plan.branches)]
    stage2 = [build_div_lfsr(b.w, label=f"s2[{i}]") for i, b in enumerate(plan.branches)]
    stage3 = [build_mult_lfsr(b.w_prime, label=f"s3[{i}]") for i, b in enumerate(plan.branches)]
    stage4 = SummationTree(fan_in=plan.r, width=plan.g.degree)
    return Datapath(plan=plan, stage1=stage1, stage2=stage2, stage3=stage3, stage4=stage4)


def build_direct_divider(code: CyclicCode) -> LfsrCircuit:
    """The single divide-by-g architecture the datapath replaces."""
    return build_div_lfsr(code.g, label="div[g]")


def _run_branch(d: Datapath, i: int, f: Gf2Poly, f_len: int, trace: Optional[TraceSink]) -> Gf2Poly:
    # stage 1: u_i * f
    s1 = d.stage1[i]
    product_bits, _ = simulate_serial(s1, _stream(f, f_len), trace)
    # stage 2: Rem_{w_i}
    s2 = d.stage2[i]
    _, remainder = simulate_serial(s2, product_bits, trace)
    # stage 3: w_i' * remainder
    s3 = d.stage3[i]
    out_bits, _ = simulate_serial(s3, _stream(Gf2Poly(remainder), s2.width), trace)
    result = _from_stream(out_bits)
    logger.debug("branch %d: remainder=%x output degree=%s", i, remainder, result.degree)
    return result


def _message_poly(d: Datapath, m: BitsLike) -> Gf2Poly:
    return bits_to_poly(as_bits(m, d.plan.k, "message")) << d.plan.g.degree


def simulate_datapath(d: Datapath, m: BitsLike, trace: Optional[TraceSink] = None) -> Gf2Poly:
    """Rem_g(m(x) x^(N-K)) through the four stages."""
    f = _message_poly(d, m)
    outputs = [_run_branch(d, i, f, d.plan.n, trace) for i in range(d.r)]
    return d.stage4.combine(outputs)


async def simulate_datapath_concurrent(d: Datapath, m: BitsLike) -> Gf2Poly:
    """simulate_datapath with one worker thread per branch; merge order is fixed."""
    f = _message_poly(d, m)
    outputs = await asyncio.gather(
        *(asyncio.to_thread(_run_branch, d, i, f, d.plan.n, None) for i in range(d.r))
    )
    return d.stage4.combine(list(outputs))
