from fractions import Fraction
import pytest
import sympy
from lib.errors import DomainError, GranularityError, NotDivisibleError, NotInvertibleError
from lib.qcore import (MultiLaurent, ONE, Q, Y, Y_INV, ZSeries, divide_exact, evaluate_at_one, format_laurent,
                       invert_q_series, laurent_arith, pochhammer, q_polynomial, qint, series_arith,
                       series_inverse, series_scale_substitute, substitute_q, to_scalar, truncate_q)
from tests.conftest import q_sym, y_sym


class TestMultiLaurent:
    def test_arithmetic(self):
        assert laurent_arith(1 + Q, 1 - Q, 'mul') == 1 - Q ** 2
        assert laurent_arith(Q, Q, 'add') == 2 * Q
        assert laurent_arith(Q * Y, Q * Y, 'sub').is_zero()
        with pytest.raises(DomainError):
            laurent_arith(Q, Q, 'div')

    def test_negative_powers(self):
        assert (Q * Y) ** -2 == MultiLaurent.monomial(1, -2, -2)
        with pytest.raises(NotInvertibleError):
            (1 + Q) ** -1

    def test_granularity_is_normalized(self):
        assert MultiLaurent.monomial(q=Fraction(2, 2)).g == 1
        half = MultiLaurent.monomial(q=Fraction(1, 2))
        assert half.g == 2
        assert (half * half) == Q
        assert (half * half).g == 1

    def test_incompatible_granularities(self):
        with pytest.raises(GranularityError):
            MultiLaurent.monomial(q=Fraction(1, 2)) + MultiLaurent.monomial(q=Fraction(1, 3))

    def test_granularity_limit(self):
        with pytest.raises(GranularityError):
            MultiLaurent.monomial(q=Fraction(1, 97))

    def test_canonical_text(self):
        assert format_laurent(2 + Q) == "2 + q"
        assert format_laurent(-2 * Q ** 3 * Y_INV) == "-2*q^3*y^-1"
        assert format_laurent(MultiLaurent.zero()) == "0"
        assert format_laurent(MultiLaurent.monomial(Fraction(1, 2), Fraction(3, 2))) == "1/2*q^(3/2)"

    def test_items_sorted(self):
        f = Q ** 2 + Y + 3
        assert [key for key, _ in f.items()] == [(0, 0), (0, 1), (2, 0)]

    def test_matches_sympy(self, to_sympy):
        f = (1 + Q * Y) * (1 + Q * Y_INV) * (1 - Q ** 2)
        expected = (1 + q_sym * y_sym) * (1 + q_sym / y_sym) * (1 - q_sym ** 2)
        assert sympy.simplify(to_sympy(f) - expected) == 0

    def test_specialize_y(self):
        assert Y.specialize_y(1) == -Q
        assert (Y * Y).specialize_y(1, 2) == Q ** 2
        assert (Q * Y_INV).specialize_y(1, 2) == -Q

    def test_to_scalar(self):
        assert to_scalar("3/2") == Fraction(3, 2)
        assert to_scalar(4) == Fraction(4)
        with pytest.raises(DomainError):
            to_scalar("three")
        with pytest.raises(DomainError):
            to_scalar(1.5)


class TestQInteger:
    def test_integer(self):
        assert qint(3) == 1 + Q + Q ** 2
        assert qint(0).is_zero()

    def test_half_integer(self):
        value = qint("3/2")
        assert value.g == 2
        assert value == 1 + MultiLaurent.monomial(q=Fraction(1, 2)) + Q
        assert evaluate_at_one(value) == 3

    @pytest.mark.parametrize("bad", [-1, "1/3"])
    def test_rejected(self, bad):
        with pytest.raises(DomainError):
            qint(bad)


class TestDivision:
    def test_exact(self):
        assert divide_exact(1 - Q ** 3, 1 - Q) == qint(3)
        assert divide_exact((1 + Q * Y) * (Q - Y), Q - Y) == 1 + Q * Y

    def test_remainder(self):
        with pytest.raises(NotDivisibleError):
            divide_exact(1 + Q ** 2, 1 - Q)

    def test_by_zero(self):
        with pytest.raises(NotDivisibleError):
            divide_exact(ONE, MultiLaurent.zero())

    def test_pochhammer_against_sympy(self, to_sympy):
        expected = sympy.expand((1 - q_sym) * (1 - q_sym ** 2) * (1 - q_sym ** 3))
        assert sympy.expand(to_sympy(pochhammer(Q, 3)) - expected) == 0

    def test_invert_q_series(self):
        assert invert_q_series(1 - Q, 5) == q_polynomial([1, 1, 1, 1, 1])
        with pytest.raises(NotInvertibleError):
            invert_q_series(1 + Y - Q, 3)


class TestZSeries:
    def test_inverse_of_one_minus_z(self):
        f = ZSeries([1, -1], 5)
        assert series_inverse(f) == ZSeries.geometric(1, 5)

    def test_inverse_needs_unit(self):
        with pytest.raises(NotInvertibleError):
            series_inverse(ZSeries([0, 1], 3))
        with pytest.raises(NotInvertibleError):
            series_inverse(ZSeries([1 + Q, 1], 3))

    def test_orders_combine_to_minimum(self):
        f = ZSeries.geometric(Q, 4)
        g = ZSeries.geometric(Y, 2)
        assert series_arith(f, g, 'add').order == 2
        assert series_arith(f, g, 'mul').coefficient(1) == Q + Y

    def test_coefficient_beyond_order(self):
        with pytest.raises(DomainError):
            ZSeries.geometric(Q, 2).coefficient(3)

    def test_scale_substitute(self):
        f = ZSeries.geometric(1, 4)
        assert series_scale_substitute(f, 2) == ZSeries.geometric(Q ** 2, 4)
        assert series_scale_substitute(f, 1, -1) == ZSeries.geometric(-Q, 4)

    def test_scale_substitute_half_power(self):
        f = series_scale_substitute(ZSeries.geometric(1, 2), Fraction(1, 2))
        assert f.coefficient(1) == MultiLaurent.monomial(q=Fraction(1, 2))
        assert f.g == 2

    def test_shift(self):
        f = ZSeries.geometric(Q, 2).shift(1)
        assert f.order == 3
        assert f.coefficient(0).is_zero()
        assert f.coefficient(3) == Q ** 2

    def test_text(self):
        assert str(ZSeries([1, 2 + Q], 2)) == "1 + (2 + q)*z + O(z^3)"


class TestSubstitutions:
    @pytest.mark.parametrize("mode,expected", [
        ('q_inverse', MultiLaurent.monomial(1, -2, 1) + 1),
        ('q_power', MultiLaurent.monomial(1, 6, 1) + 1),
        ('q_one', Y + 1),
        ('y_one', Q ** 2 + 1),
        ('y_specialize', 1 - MultiLaurent.monomial(1, 7)),
    ])
    def test_modes(self, mode, expected):
        f = Q ** 2 * Y + 1
        assert substitute_q(f, mode, a=1, b=3) == expected

    def test_series_coefficientwise(self):
        f = ZSeries.geometric(Q * Y, 3)
        assert substitute_q(f, 'y_one') == ZSeries.geometric(Q, 3)

    def test_unknown_mode(self):
        with pytest.raises(DomainError):
            substitute_q(Q, 'q_half')

    def test_truncate(self):
        assert truncate_q(1 + Q + Q ** 5, 5) == 1 + Q
        assert truncate_q(ZSeries.geometric(Q, 3), 2).coefficient(3).is_zero()
