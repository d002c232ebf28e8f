"""Unit tests for F_q arithmetic tables (tools/base_field.py)."""
import pickle

import numpy as np
import pytest

from tools.base_field import get_base_field, is_prime, subfield_embedding
from tools.errors import DegenerateInputError, ZeroDivisionAlgebraError


class TestIsPrime:

    def test_small_values(self):
        assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


class TestBaseField:
    """Tests for the BaseField tables."""

    def test_prime_field_arithmetic(self, gf3):
        assert gf3.add(2, 2) == 1
        assert gf3.sub(0, 1) == 2
        assert gf3.mul(2, 2) == 1
        assert gf3.neg(1) == 2
        assert gf3.inv(2) == 2

    def test_gf4_uses_x2_plus_x_plus_1(self, gf4):
        assert gf4.modulus == (1, 1, 1)
        # code 2 is x, code 3 is x + 1
        assert gf4.mul(2, 2) == 3
        assert gf4.mul(2, 3) == 1
        assert gf4.inv(2) == 3
        assert gf4.add(2, 3) == 1

    def test_field_axioms_gf9(self):
        field = get_base_field(3, 2)
        codes = range(field.q)
        for a in codes:
            assert field.add(a, field.neg(a)) == 0
            if a:
                assert field.mul(a, field.inv(a)) == 1
                assert field.pow(a, field.q - 1) == 1
            for b in codes:
                assert field.mul(a, b) == field.mul(b, a)
                assert field.sub(field.add(a, b), b) == a

    def test_distributivity_gf8(self):
        field = get_base_field(2, 3)
        for a in range(8):
            for b in range(8):
                for c in range(8):
                    assert field.mul(a, field.add(b, c)) == field.add(field.mul(a, b), field.mul(a, c))

    def test_inverse_of_zero_raises(self, gf4):
        with pytest.raises(ZeroDivisionAlgebraError):
            gf4.inv(0)

    def test_negative_power(self, gf4):
        assert gf4.pow(2, -1) == gf4.inv(2)

    def test_convolve_matches_scalar_products(self, gf4):
        x = np.array([1, 2, 3])
        y = np.array([3, 0, 2])
        expected = [0] * 5
        for i, a in enumerate(x.tolist()):
            for j, b in enumerate(y.tolist()):
                expected[i + j] = gf4.add(expected[i + j], gf4.mul(a, b))
        assert gf4.convolve(x, y).tolist() == expected

    def test_vector_ops(self, gf3):
        x = np.array([0, 1, 2])
        assert gf3.vneg(x).tolist() == [0, 2, 1]
        assert gf3.vscale(2, x).tolist() == [0, 2, 1]
        assert gf3.vadd(x, x).tolist() == [0, 2, 1]


class TestGetBaseField:

    def test_cached(self):
        assert get_base_field(2, 2) is get_base_field(2, 2)

    def test_pickles_to_shared_instance(self, gf4):
        assert pickle.loads(pickle.dumps(gf4)) is gf4

    @pytest.mark.parametrize("p,e", [(4, 1), (1, 1), (2, 0), (2, 11)])
    def test_invalid_parameters(self, p, e):
        with pytest.raises(DegenerateInputError):
            get_base_field(p, e)

    def test_repr(self, gf4):
        assert repr(gf4) == "GF(2^2)"


class TestSubfieldEmbedding:

    def test_gf4_into_gf16_is_a_homomorphism(self, gf4):
        big = get_base_field(2, 4)
        image = subfield_embedding(gf4, big)
        assert image[0] == 0 and image[1] == 1
        assert len(set(image)) == 4
        for a in range(4):
            for b in range(4):
                assert image[gf4.mul(a, b)] == big.mul(image[a], image[b])
                assert image[gf4.add(a, b)] == big.add(image[a], image[b])

    def test_prime_field_is_identity(self, gf2, gf4):
        assert subfield_embedding(gf2, gf4) == (0, 1)

    def test_not_a_subfield(self, gf4):
        with pytest.raises(DegenerateInputError):
            subfield_embedding(gf4, get_base_field(2, 3))
