import logging
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from markov_dyck.errors import InputError, VerificationError
from markov_dyck.models import MultiplierClass, PeriodicCensus

logger = logging.getLogger(__name__)

Scalar = int | Fraction


@dataclass(frozen=True)
class PowerSeries:
    """A formal power series c_0 + c_1 z + ... + c_T z^T with exact rational coefficients."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise InputError("A power series needs at least the constant coefficient")

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Scalar], order: int) -> "PowerSeries":
        values = [Fraction(c) for c in coeffs][: order + 1]
        values += [Fraction(0)] * (order + 1 - len(values))
        return cls(tuple(values))

    @classmethod
    def zero(cls, order: int) -> "PowerSeries":
        return cls.from_coeffs([], order)

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls.from_coeffs([1], order)

    @classmethod
    def monomial(cls, coeff: Scalar, degree: int, order: int) -> "PowerSeries":
        return cls.from_coeffs([0] * degree + [coeff], order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def truncate(self, order: int) -> "PowerSeries":
        return PowerSeries.from_coeffs(self.coeffs, min(order, self.order))

    def valuation(self) -> int | None:
        return next((k for k, c in enumerate(self.coeffs) if c != 0), None)

    def shift(self, k: int) -> "PowerSeries":
        """Multiply by z^k, keeping the truncation order."""
        return PowerSeries.from_coeffs([0] * k + list(self.coeffs), self.order)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def integer_coefficients(self) -> list[int]:
        if not self.is_integral():
            raise InputError(f"Series has non-integer coefficients: {self}")
        return [int(c) for c in self.coeffs]

    # --- ring operations ---------------------------------------------------

    def _coerce(self, other: "PowerSeries | Scalar") -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return other
        return PowerSeries.from_coeffs([other], self.order)

    def __add__(self, other: "PowerSeries | Scalar") -> "PowerSeries":
        b = self._coerce(other)
        order = min(self.order, b.order)
        return PowerSeries(tuple(self.coeffs[k] + b.coeffs[k] for k in range(order + 1)))

    __radd__ = __add__

    def __neg__(self) -> "PowerSeries":
        return PowerSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "PowerSeries | Scalar") -> "PowerSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Scalar) -> "PowerSeries":
        return self._coerce(other) - self

    def __mul__(self, other: "PowerSeries | Scalar") -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            factor = Fraction(other)
            return PowerSeries(tuple(c * factor for c in self.coeffs))
        order = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (order + 1)
        for i in range(order + 1):
            if a[i] == 0:
                continue
            for j in range(order + 1 - i):
                if b[j]:
                    out[i + j] += a[i] * b[j]
        return PowerSeries(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "PowerSeries":
        base = self if exponent >= 0 else self.inverse()
        result = PowerSeries.one(self.order)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __truediv__(self, other: "PowerSeries | Scalar") -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return self * other.inverse()
        return self * (Fraction(1) / Fraction(other))

    # --- analytic operations -----------------------------------------------

    def inverse(self) -> "PowerSeries":
        a = self.coeffs
        if a[0] == 0:
            raise InputError("Cannot invert a series with zero constant term")
        inv0 = 1 / a[0]
        b = [inv0]
        for n in range(1, self.order + 1):
            acc = sum((a[k] * b[n - k] for k in range(1, n + 1)), Fraction(0))
            b.append(-inv0 * acc)
        return PowerSeries(tuple(b))

    def sqrt(self) -> "PowerSeries":
        """Square root with constant term +1, by Newton iteration s <- (s + a/s) / 2."""
        if self.coeffs[0] != 1:
            raise InputError(f"Square root needs constant term 1, got {self.coeffs[0]}")
        s = PowerSeries.one(self.order)
        for iteration in range(self.order + 2):
            nxt = (s + self * s.inverse()) * Fraction(1, 2)
            if nxt == s:
                logger.debug("sqrt converged after %d Newton steps", iteration)
                return s
            s = nxt
        raise VerificationError("Newton iteration for the series square root did not settle")

    def derivative(self) -> "PowerSeries":
        if self.order == 0:
            return PowerSeries.zero(0)
        return PowerSeries(tuple(k * self.coeffs[k] for k in range(1, self.order + 1)))

    def integral(self) -> "PowerSeries":
        return PowerSeries(
            (Fraction(0),) + tuple(c / (k + 1) for k, c in enumerate(self.coeffs))
        )

    def log(self) -> "PowerSeries":
        if self.coeffs[0] != 1:
            raise InputError(f"Logarithm needs constant term 1, got {self.coeffs[0]}")
        if self.order == 0:
            return PowerSeries.zero(0)
        return (self.derivative() * self.inverse()).integral()

    def exp(self) -> "PowerSeries":
        if self.coeffs[0] != 0:
            raise InputError(f"Exponential needs constant term 0, got {self.coeffs[0]}")
        a = self.coeffs
        b = [Fraction(1)]
        for n in range(1, self.order + 1):
            acc = sum((k * a[k] * b[n - k] for k in range(1, n + 1)), Fraction(0))
            b.append(acc / n)
        return PowerSeries(tuple(b))

    # --- comparison and display --------------------------------------------

    def first_mismatch(self, other: "PowerSeries") -> int | None:
        order = min(self.order, other.order)
        return next((k for k in range(order + 1) if self.coeffs[k] != other.coeffs[k]), None)

    def to_json(self) -> list[list[int]]:
        return [[c.numerator, c.denominator] for c in self.coeffs]

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            power = "" if k == 0 else (" z" if k == 1 else f" z^{k}")
            terms.append(f"{c}{power}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(z^{self.order + 1})"


@dataclass(frozen=True)
class LaurentSeries:
    """z^shift * series; used where a display divides by a series without a constant term."""

    shift: int
    series: PowerSeries

    def as_power_series(self, order: int) -> PowerSeries | None:
        if self.shift < 0:
            return None
        return self.series.shift(self.shift).truncate(order)


def laurent_divide(num: PowerSeries, den: PowerSeries) -> LaurentSeries:
    """num / den, factoring the lowest powers of z out of both."""
    v_den = den.valuation()
    if v_den is None:
        raise InputError("Division by the zero series")
    v_num = num.valuation()
    if v_num is None:
        return LaurentSeries(0, PowerSeries.zero(num.order))
    order = min(num.order - v_num, den.order - v_den)
    a = PowerSeries.from_coeffs(num.coeffs[v_num:], order)
    b = PowerSeries.from_coeffs(den.coeffs[v_den:], order)
    return LaurentSeries(v_num - v_den, a * b.inverse())


def series_arith(a: PowerSeries, b: PowerSeries, op: Literal["add", "sub", "mul"]) -> PowerSeries:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise InputError(f"Unknown series operation: {op}")


def series_inverse(a: PowerSeries) -> PowerSeries:
    return a.inverse()


def series_sqrt(a: PowerSeries) -> PowerSeries:
    return a.sqrt()


def series_exp_log(a: PowerSeries, which: Literal["exp", "log"]) -> PowerSeries:
    if which == "exp":
        return a.exp()
    if which == "log":
        return a.log()
    raise InputError(f"Unknown transcendental operation: {which}")


def zeta_from_census(
    census: PeriodicCensus, order: int, which: MultiplierClass | None = None
) -> PowerSeries:
    """exp(sum_n p_n z^n / n), optionally restricted to one multiplier class."""
    if census.n_max < order:
        raise InputError(f"Census covers n <= {census.n_max}, need n <= {order}")
    counts = census.counts(which)
    log_series = PowerSeries.from_coeffs(
        [0] + [Fraction(counts[n - 1], n) for n in range(1, order + 1)], order
    )
    return log_series.exp()
