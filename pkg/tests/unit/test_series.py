from fractions import Fraction

import pytest

from markov_dyck.errors import InputError
from markov_dyck.models import CensusRow, MultiplierClass, PeriodicCensus
from markov_dyck.series import (
    PowerSeries,
    laurent_divide,
    series_arith,
    series_exp_log,
    series_inverse,
    series_sqrt,
    zeta_from_census,
)


def ps(*coeffs: int | Fraction, order: int | None = None) -> PowerSeries:
    return PowerSeries.from_coeffs(coeffs, len(coeffs) - 1 if order is None else order)


def full_shift_census(k: int, n_max: int) -> PeriodicCensus:
    rows = [
        CensusRow(n=n, total=k**n, neutral=k**n, negative=0, positive=0)
        for n in range(1, n_max + 1)
    ]
    return PeriodicCensus(graph=f"full {k}", rows=rows)


class TestConstruction:
    def test_pads_and_truncates(self) -> None:
        assert PowerSeries.from_coeffs([1, 2], 3).coeffs == (1, 2, 0, 0)
        assert PowerSeries.from_coeffs([1, 2, 3, 4], 1).coeffs == (1, 2)

    def test_monomial(self) -> None:
        assert PowerSeries.monomial(3, 2, 3) == ps(0, 0, 3, 0)

    def test_monomial_beyond_order_vanishes(self) -> None:
        assert PowerSeries.monomial(3, 5, 3) == PowerSeries.zero(3)

    def test_empty_rejected(self) -> None:
        with pytest.raises(InputError):
            PowerSeries(())

    def test_valuation(self) -> None:
        assert ps(0, 0, 5).valuation() == 2
        assert PowerSeries.zero(3).valuation() is None

    def test_str(self) -> None:
        assert str(ps(1, 0, 2)) == "1 + 2 z^2 + O(z^3)"


class TestArithmetic:
    def test_sum_keeps_smaller_order(self) -> None:
        assert (ps(1, 1, 1, 1) + ps(1, 1)).order == 1

    def test_product(self) -> None:
        assert ps(1, 1, 0) * ps(1, -1, 0) == ps(1, 0, -1)

    def test_scalar_operations(self) -> None:
        assert 2 * ps(1, 3) == ps(2, 6)
        assert 1 - ps(0, 1) == ps(1, -1)
        assert ps(2, 4) / 2 == ps(1, 2)

    def test_inverse_of_one_minus_z(self) -> None:
        assert (1 - ps(0, 1, 0, 0, 0)).inverse() == ps(1, 1, 1, 1, 1)

    def test_inverse_needs_constant_term(self) -> None:
        with pytest.raises(InputError):
            ps(0, 1).inverse()

    def test_negative_power(self) -> None:
        assert ps(1, -1, 0, 0) ** -2 == ps(1, 2, 3, 4)

    def test_division(self) -> None:
        assert ps(1, 0, 0) / ps(1, -1, 0) == ps(1, 1, 1)

    def test_rational_coefficients_stay_exact(self) -> None:
        assert (ps(2, 1, 0)).inverse()[1] == Fraction(-1, 4)

    def test_series_arith_dispatch(self) -> None:
        a, b = ps(1, 2), ps(3, 4)
        assert series_arith(a, b, "add") == ps(4, 6)
        assert series_arith(a, b, "sub") == ps(-2, -2)
        assert series_arith(a, b, "mul") == ps(3, 10)

    def test_series_arith_unknown_op(self) -> None:
        with pytest.raises(InputError):
            series_arith(ps(1), ps(1), "div")  # type: ignore[arg-type]


class TestAnalytic:
    def test_sqrt_catalan(self) -> None:
        s = series_sqrt(1 - ps(0, 4, 0, 0, 0))
        assert s == ps(1, -2, -2, -4, -10)

    def test_sqrt_squares_back(self) -> None:
        a = ps(1, 3, -1, 7, 2, 0, 5)
        assert a.sqrt() * a.sqrt() == a

    def test_sqrt_needs_unit_constant(self) -> None:
        with pytest.raises(InputError):
            ps(4, 1).sqrt()

    def test_log_of_geometric_series(self) -> None:
        log = series_exp_log(series_inverse(1 - ps(0, 1, 0, 0, 0)), "log")
        assert log == ps(0, 1, Fraction(1, 2), Fraction(1, 3), Fraction(1, 4))

    def test_exp_inverts_log(self) -> None:
        a = ps(1, 2, -3, 5, 1, 1)
        assert a.log().exp() == a

    def test_exp_needs_zero_constant(self) -> None:
        with pytest.raises(InputError):
            ps(1, 1).exp()

    def test_unknown_transcendental(self) -> None:
        with pytest.raises(InputError):
            series_exp_log(ps(1), "sin")  # type: ignore[arg-type]

    def test_derivative_and_integral(self) -> None:
        a = ps(1, 2, 3)
        assert a.derivative() == ps(2, 6)
        assert a.integral() == ps(0, 1, 1, 1)


class TestComparison:
    def test_first_mismatch(self) -> None:
        assert ps(1, 2, 3).first_mismatch(ps(1, 2, 4)) == 2
        assert ps(1, 2, 3).first_mismatch(ps(1, 2)) is None

    def test_integer_coefficients(self) -> None:
        assert ps(1, 2).integer_coefficients() == [1, 2]
        with pytest.raises(InputError):
            ps(Fraction(1, 2)).integer_coefficients()

    def test_to_json(self) -> None:
        assert ps(Fraction(1, 2), 3).to_json() == [[1, 2], [3, 1]]


class TestLaurentDivide:
    def test_common_power_cancels(self) -> None:
        q = laurent_divide(ps(0, 0, 1, 0, 0, 0, 0), ps(0, 0, 1, -1, 0, 0, 0))
        assert q.shift == 0
        assert q.as_power_series(4) == ps(1, 1, 1, 1, 1)

    def test_pole_is_not_a_power_series(self) -> None:
        q = laurent_divide(ps(0, 1, 0, 0), ps(0, 0, 1, 0))
        assert q.shift == -1
        assert q.as_power_series(2) is None

    def test_division_by_zero_series(self) -> None:
        with pytest.raises(InputError):
            laurent_divide(ps(1, 0), PowerSeries.zero(1))


class TestZetaFromCensus:
    def test_full_shift(self) -> None:
        zeta = zeta_from_census(full_shift_census(2, 6), 6)
        assert zeta.integer_coefficients() == [1, 2, 4, 8, 16, 32, 64]

    def test_class_restriction(self) -> None:
        zeta = zeta_from_census(full_shift_census(2, 4), 4, MultiplierClass.negative)
        assert zeta == PowerSeries.one(4)

    def test_census_too_short(self) -> None:
        with pytest.raises(InputError):
            zeta_from_census(full_shift_census(2, 3), 5)
