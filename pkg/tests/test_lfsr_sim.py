"""Test serial LFSR circuits and the four-stage datapath."""
import re

import pytest

from services.bch_code import bch_build
from services.codec import bits_to_poly
from services.crt_encoder import crt_setup
from services.errors import LengthMismatchError, PolynomialError
from services.gf2poly import ONE, ZERO, Gf2Poly, nz, poly_divmod
from services.lfsr_sim import (
    CircuitKind,
    SummationTree,
    build_datapath,
    build_direct_divider,
    build_div_lfsr,
    build_mult_lfsr,
    simulate_datapath,
    simulate_datapath_concurrent,
    simulate_serial,
)
from tests.conftest import EXAMPLE1_G

P = Gf2Poly.parse

TRACE_LINE = re.compile(r"^\S+ \d+ in=[01] out=[01] state=[0-9a-f]+$")


def stream(poly, length):
    return [(poly.bits >> i) & 1 for i in range(length - 1, -1, -1)]


def shifted_message(code, bits):
    return bits_to_poly(bits) << code.g.degree


class TestMultiplier:
    """Transversal multiplication circuit."""

    def test_multiply_by_one_is_passthrough(self, rng):
        circuit = build_mult_lfsr(ONE)
        bits = [rng.getrandbits(1) for _ in range(40)]
        out, _ = simulate_serial(circuit, bits)
        assert out == bits
        assert circuit.xor_count == 0

    def test_product_matches_poly_mul(self, rng):
        for _ in range(1000):
            h = Gf2Poly(rng.getrandbits(12) | 1)
            f = Gf2Poly(rng.getrandbits(40))
            out, _ = simulate_serial(build_mult_lfsr(h), stream(f, 40))
            assert bits_to_poly(out) == h * f

    def test_cost_fields(self):
        circuit = build_mult_lfsr(P("x^4+x^3+1"))
        assert circuit.kind is CircuitKind.MULTIPLY
        assert circuit.xor_count == 2
        assert circuit.xor_count <= circuit.xor_bound
        assert circuit.input_fanout == 3
        assert circuit.pipelineable

    def test_zero_taps_rejected(self):
        with pytest.raises(PolynomialError):
            build_mult_lfsr(ZERO)


class TestDivider:
    """Galois division circuit."""

    def test_example1_remainder_of_x10(self):
        divider = build_div_lfsr(EXAMPLE1_G)
        _, state = simulate_serial(divider, stream(Gf2Poly.monomial(10), 11))
        assert Gf2Poly(state) == P("x^8+x^5+x^4+x^2+x+1")

    def test_example1_fanout(self):
        divider = build_div_lfsr(EXAMPLE1_G)
        assert divider.feedback_fanout == 6
        assert divider.xor_count == 6
        assert divider.width == 10

    def test_remainder_matches_divmod(self, rng):
        for _ in range(1000):
            h = Gf2Poly(rng.getrandbits(10) | (1 << 10) | 1)
            f = Gf2Poly(rng.getrandbits(60))
            _, state = simulate_serial(build_div_lfsr(h), stream(f, 60))
            assert Gf2Poly(state) == poly_divmod(f, h)[1]

    def test_leading_zeros_do_not_change_remainder(self):
        divider = build_div_lfsr(P("x^4+x+1"))
        f = P("x^9+x^2")
        _, short = simulate_serial(divider, stream(f, 10))
        _, padded = simulate_serial(divider, stream(f, 30))
        assert short == padded

    def test_reset_between_runs(self):
        divider = build_div_lfsr(P("x^4+x+1"))
        simulate_serial(divider, [1, 1, 1, 1, 1])
        _, state = simulate_serial(divider, [0, 0, 1])
        assert state == 1

    @pytest.mark.parametrize("taps", ["1", "0"])
    def test_degenerate_divisor(self, taps):
        with pytest.raises(PolynomialError):
            build_div_lfsr(P(taps))

    def test_direct_divider(self, example1_code):
        divider = build_direct_divider(example1_code)
        assert divider.taps == EXAMPLE1_G
        assert divider.label == "div[g]"

    def test_trace_lines(self):
        lines = []
        divider = build_div_lfsr(P("x^4+x+1"), label="d")
        simulate_serial(divider, [1, 0, 1, 1, 0, 1], lines.append)
        assert len(lines) == 6
        assert all(TRACE_LINE.match(line) for line in lines)
        assert lines[0] == "d 0 in=1 out=0 state=1"


class TestSummationTree:
    """Step 4 combiner."""

    @pytest.mark.parametrize("fan_in,depth", [(1, 0), (2, 1), (3, 2), (11, 4), (39, 6)])
    def test_depth(self, fan_in, depth):
        assert SummationTree(fan_in=fan_in, width=8).depth == depth

    def test_counts(self):
        tree = SummationTree(fan_in=11, width=121)
        assert tree.xor_count == 10
        assert tree.parallel_xor_count == 1210

    def test_combine_is_xor(self):
        values = [P("x^3"), P("x^3+x"), P("1")]
        assert SummationTree(fan_in=3, width=4).combine(values) == P("x+1")

    def test_combine_arity(self):
        with pytest.raises(PolynomialError):
            SummationTree(fan_in=3, width=4).combine([ONE])


class TestDatapath:
    """Four-stage CRT datapath."""

    def test_stage_shapes(self, example2_plan):
        d = build_datapath(example2_plan)
        assert len(d.stage1) == len(d.stage2) == len(d.stage3) == 11
        assert d.stage4.depth == 4
        assert d.max_division_fanout <= 11
        assert all(c.feedback_fanout == nz(c.taps) - 1 for c in d.stage2)

    def test_matches_direct_division(self, code31, rng):
        plan = crt_setup(code31)
        d = build_datapath(plan)
        divider = build_direct_divider(code31)
        for _ in range(30):
            m = [rng.getrandbits(1) for _ in range(code31.k)]
            f = shifted_message(code31, m)
            expected = poly_divmod(f, code31.g)[1]
            assert simulate_datapath(d, m) == expected
            _, state = simulate_serial(divider, stream(f, code31.n))
            assert Gf2Poly(state) == expected

    @pytest.mark.parametrize("t,delta", [(4, 7), (5, 7), (6, 11)])
    def test_matches_long_division(self, t, delta, rng):
        code = bch_build(t, delta)
        d = build_datapath(crt_setup(code))
        for _ in range(1000):
            m = [rng.getrandbits(1) for _ in range(code.k)]
            assert simulate_datapath(d, m) == poly_divmod(shifted_message(code, m), code.g)[1]

    def test_irreducible_generator_collapses(self, hamming_code, rng):
        d = build_datapath(crt_setup(hamming_code))
        assert d.r == 1
        assert d.stage1[0].xor_count == 0
        assert d.stage3[0].xor_count == 0
        assert d.stage4.xor_count == 0
        m = [rng.getrandbits(1) for _ in range(hamming_code.k)]
        assert simulate_datapath(d, m) == poly_divmod(shifted_message(hamming_code, m), hamming_code.g)[1]

    def test_trace_covers_every_stage(self, example1_plan, example1_code):
        d = build_datapath(example1_plan)
        lines = []
        simulate_datapath(d, [1, 0, 0, 1, 1], lines.append)
        assert all(TRACE_LINE.match(line) for line in lines)
        labels = {line.split()[0] for line in lines}
        assert labels == {f"s{stage}[{i}]" for stage in (1, 2, 3) for i in range(3)}
        s3_cycles = [line for line in lines if line.startswith("s3[0] ")]
        assert len(s3_cycles) == example1_code.g.degree

    def test_wrong_message_length(self, example1_plan):
        with pytest.raises(LengthMismatchError):
            simulate_datapath(build_datapath(example1_plan), [1, 0])

    @pytest.mark.asyncio
    async def test_concurrent_matches_sequential(self, code63, rng):
        d = build_datapath(crt_setup(code63))
        for _ in range(5):
            m = [rng.getrandbits(1) for _ in range(code63.k)]
            assert await simulate_datapath_concurrent(d, m) == simulate_datapath(d, m)
