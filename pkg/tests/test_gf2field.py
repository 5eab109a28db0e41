"""Test GF(2^t) construction, cosets and minimal polynomials."""
import pytest

from services.errors import FieldError
from services.gf2field import (
    DEFAULT_PRIMITIVE_POLYS,
    Gf2mElement,
    Gf2mField,
    coset_of,
    cyclotomic_cosets,
    elem_mul,
    field_new,
    is_primitive,
    minimal_polynomial,
    primitive_polynomials,
)
from services.gf2poly import ONE, Gf2Poly, poly_gcd

P = Gf2Poly.parse


@pytest.fixture(scope="module")
def gf16():
    return field_new(4, P("x^4+x+1"))


class TestFieldConstruction:
    """Tables and primitivity."""

    def test_alpha_has_full_order(self, gf16):
        assert gf16.alpha_pow(15) == gf16.one
        assert all(gf16.alpha_pow(k) != gf16.one for k in range(1, 15))

    def test_log_antilog_bijection(self, gf16):
        for bits in range(1, 16):
            e = Gf2mElement(bits)
            assert gf16.alpha_pow(gf16.log_of(e)) == e

    def test_prim_poly_vanishes_at_alpha(self, gf16):
        assert gf16.evaluate(gf16.prim_poly, gf16.alpha).is_zero

    def test_non_primitive_reports_order(self):
        with pytest.raises(FieldError) as info:
            field_new(4, P("x^4+x^3+x^2+x+1"))
        assert info.value.order == 5

    def test_reducible_polynomial_rejected(self):
        with pytest.raises(FieldError):
            field_new(4, P("x^4+x^2"))

    def test_wrong_degree_rejected(self):
        with pytest.raises(FieldError):
            field_new(4, P("x^5+x^2+1"))

    @pytest.mark.parametrize("t", [1, 17])
    def test_t_out_of_range(self, t):
        with pytest.raises(FieldError):
            field_new(t)

    def test_default_dispatch(self):
        field = field_new(4)
        assert field.prim_poly == P(DEFAULT_PRIMITIVE_POLYS[4])

    @pytest.mark.parametrize("t", sorted(DEFAULT_PRIMITIVE_POLYS))
    def test_default_table_is_primitive(self, t):
        poly = P(DEFAULT_PRIMITIVE_POLYS[t])
        assert poly.degree == t
        assert is_primitive(poly)

    def test_default_override_from_settings(self, monkeypatch):
        from config import settings

        monkeypatch.setitem(settings.prim_poly_overrides, 4, "x^4+x^3+1")
        assert Gf2mField(4).prim_poly == P("x^4+x^3+1")


class TestElementArithmetic:
    """Multiplication through the log tables."""

    def test_identity_and_zero(self, gf16):
        for bits in range(16):
            a = Gf2mElement(bits)
            assert elem_mul(gf16, a, gf16.one) == a
            assert elem_mul(gf16, a, gf16.zero) == gf16.zero

    def test_cyclic_group_law(self, gf16):
        for i in range(15):
            for j in range(15):
                assert elem_mul(gf16, gf16.alpha_pow(i), gf16.alpha_pow(j)) == gf16.alpha_pow(i + j)

    def test_inverse(self, gf16):
        for bits in range(1, 16):
            a = Gf2mElement(bits)
            assert gf16.mul(a, gf16.inverse(a)) == gf16.one

    def test_element_must_be_reduced(self, gf16):
        with pytest.raises(FieldError):
            gf16.element(16)

    def test_evaluate_at_power_matches_horner(self, gf16):
        poly = P("x^14+x^9+x^3+x+1")
        for j in range(15):
            assert gf16.evaluate_at_power(poly, j) == gf16.evaluate(poly, gf16.alpha_pow(j))


class TestCyclotomicCosets:
    """Orbits under doubling."""

    def test_example1_cosets(self):
        cosets = cyclotomic_cosets(4, range(1, 7))
        assert [c.members for c in cosets] == [(1, 2, 4, 8), (3, 6, 12, 9), (5, 10)]
        assert len(cosets) == 3

    def test_prime_t_cosets_have_size_t(self):
        cosets = cyclotomic_cosets(11, range(1, 23))
        assert len(cosets) == 11
        assert all(len(c) == 11 for c in cosets)

    def test_zero_is_fixed(self):
        assert cyclotomic_cosets(4, {0}) == [coset_of(4, 0)]
        assert coset_of(4, 0).members == (0,)

    def test_representative_is_minimum(self):
        coset = coset_of(4, 12)
        assert coset.representative == 3
        assert coset.representative == min(coset.members)

    def test_closed_under_doubling_and_size_divides_t(self):
        for t in (4, 6, 8):
            n = (1 << t) - 1
            for coset in cyclotomic_cosets(t, range(n)):
                assert all((2 * j) % n in coset for j in coset.members)
                assert t % len(coset) == 0

    def test_exponent_out_of_range(self):
        with pytest.raises(FieldError):
            cyclotomic_cosets(4, {15})


class TestMinimalPolynomial:
    """Minimal polynomials over GF(2)."""

    def test_example1_factors(self, gf16):
        assert minimal_polynomial(gf16, 1) == P("x^4+x+1")
        assert minimal_polynomial(gf16, 3) == P("x^4+x^3+x^2+x+1")
        assert minimal_polynomial(gf16, 5) == P("x^2+x+1")

    def test_minimal_polynomial_of_one(self, gf16):
        assert minimal_polynomial(gf16, 0) == P("x+1")

    def test_vanishes_at_every_coset_member(self):
        field = Gf2mField(6)
        for coset in cyclotomic_cosets(6, range(63)):
            m = minimal_polynomial(field, coset.representative)
            assert m.degree == len(coset)
            assert 6 % m.degree == 0
            for j in coset.members:
                assert field.evaluate_at_power(m, j).is_zero

    def test_distinct_cosets_give_coprime_polynomials(self):
        field = Gf2mField(6)
        polys = [minimal_polynomial(field, c.representative) for c in cyclotomic_cosets(6, range(1, 63))]
        for i, a in enumerate(polys):
            for b in polys[i + 1:]:
                assert poly_gcd(a, b) == ONE


class TestPrimitiveEnumeration:
    """Primitive polynomial search."""

    def test_degree_4_has_two(self):
        assert list(primitive_polynomials(4)) == [P("x^4+x+1"), P("x^4+x^3+1")]

    def test_degree_6_count(self):
        # phi(63) / 6
        assert len(list(primitive_polynomials(6))) == 6

    def test_limit(self):
        assert len(list(primitive_polynomials(11, limit=3))) == 3

    def test_irreducible_but_not_primitive(self):
        assert not is_primitive(P("x^4+x^3+x^2+x+1"))
