"""
Unit tests for cyclotomic scalars.
"""

import pytest

from cyclo import (
    ONE,
    ZERO,
    Cyclo,
    euler_phi,
    mobius,
    parse_literal,
    root_exponent,
    root_of_unity,
)
from validation import NotInvertibleError, ParseError


@pytest.mark.unit
class TestArithmetic:
    """Test field operations."""

    def test_fourth_root_squared(self):
        """Test that zeta4 * zeta4 = -1."""
        i = root_of_unity(4, 1)
        assert i * i == -1

    def test_cube_roots_sum(self):
        """Test that zeta3 + zeta3^2 = -1."""
        assert root_of_unity(3, 1) + root_of_unity(3, 2) == -1

    def test_rational_inverse(self):
        """Test that inv(1/2) = 2."""
        assert Cyclo.rational(1, 2).inverse() == 2

    def test_zero_has_no_inverse(self):
        """Test that inverting zero raises."""
        with pytest.raises(NotInvertibleError):
            ZERO.inverse()
        with pytest.raises(NotInvertibleError):
            Cyclo.rational(1, 0)

    def test_mixed_conductors(self):
        """Test that operands over different conductors combine exactly."""
        assert root_of_unity(8, 1) ** 2 == root_of_unity(4, 1)
        assert root_of_unity(3, 1) * root_of_unity(4, 1) == root_of_unity(12, 7)

    def test_negative_power(self):
        """Test powers with negative exponent."""
        z5 = root_of_unity(5, 1)
        assert z5 ** -1 == root_of_unity(5, 4)
        assert z5 ** 5 == ONE

    def test_nonrational_inverse(self):
        """Test the inverse of a non-rational element."""
        x = root_of_unity(5, 1) + 2
        assert x * x.inverse() == ONE
        assert (x / x) == 1

    def test_int_interop(self):
        """Test arithmetic with plain integers."""
        x = root_of_unity(3, 1)
        assert 1 + x == x + 1
        assert 2 * x - x == x
        assert (1 - x) + x == 1


@pytest.mark.unit
class TestRootsAndStructure:
    """Test roots of unity and canonical forms."""

    def test_root_of_unity_reduces_exponent(self):
        """Test that exponents are taken modulo n."""
        assert root_of_unity(4, 5) == root_of_unity(4, 1)
        assert root_of_unity(2, 1) == -1
        assert root_of_unity(1, 7) == ONE

    def test_root_of_unity_rejects_bad_order(self):
        """Test that the root order must be positive."""
        with pytest.raises(ValueError):
            root_of_unity(0, 1)

    def test_root_exponent(self):
        """Test recovery of root exponents."""
        assert root_exponent(root_of_unity(4, 3), 4) == 3
        assert root_exponent(-1, 4) == 2
        assert root_exponent(Cyclo.rational(2), 4) is None

    def test_canonical_conductor(self):
        """Test that canonical() finds the minimal conductor."""
        x = root_of_unity(6, 2)
        canonical = x.canonical()
        assert canonical.conductor == 3
        assert canonical == root_of_unity(3, 1)

    def test_equal_values_hash_equal(self):
        """Test that hashing ignores the conductor."""
        assert hash(root_of_unity(6, 2)) == hash(root_of_unity(3, 1))
        assert hash(root_of_unity(4, 2)) == hash(Cyclo.rational(-1))

    def test_is_rational(self):
        """Test rationality detection."""
        assert Cyclo.rational(3, 4).is_rational()
        assert not root_of_unity(4, 1).is_rational()
        assert (root_of_unity(4, 1) * root_of_unity(4, 1)).is_rational()

    def test_lift(self):
        """Test lifting to a multiple conductor."""
        x = root_of_unity(4, 1).lift(8)
        assert x.conductor == 8
        assert x == root_of_unity(8, 2)
        with pytest.raises(ValueError):
            root_of_unity(4, 1).lift(6)

    def test_number_theory_helpers(self):
        """Test euler_phi and mobius."""
        assert euler_phi(12) == 4
        assert euler_phi(7) == 6
        assert mobius(6) == 1
        assert mobius(4) == 0
        assert mobius(3) == -1


@pytest.mark.unit
class TestLiterals:
    """Test literal formatting and parsing."""

    def test_format(self):
        """Test literal formatting of simple values."""
        assert ZERO.to_literal() == '0'
        assert ONE.to_literal() == '1'
        assert Cyclo.rational(-5, 2).to_literal() == '-5/2'
        assert root_of_unity(4, 1).to_literal() == 'z4^1'
        assert root_of_unity(4, 3).to_literal() == '-z4^1'

    def test_format_mixed_term(self):
        """Test a literal with a rational coefficient and constant term."""
        x = root_of_unity(4, 1) * Cyclo.rational(5, 2) + 1
        assert x.to_literal() == '1 + z4^1 * 5/2'

    def test_parse_written_literals(self):
        """Test that parsing inverts formatting."""
        values = [
            root_of_unity(3, 2),
            root_of_unity(5, 1) * Cyclo.rational(-3, 7) + 2,
            Cyclo.rational(9, 4),
            root_of_unity(12, 5),
        ]
        for value in values:
            assert parse_literal(value.to_literal()) == value

    def test_parse_rejects_malformed(self):
        """Test that malformed literals raise ParseError."""
        with pytest.raises(ParseError):
            parse_literal('z4')
        with pytest.raises(ParseError):
            parse_literal('1/0')
