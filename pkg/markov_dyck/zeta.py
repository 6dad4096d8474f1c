import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from markov_dyck.census import DEFAULT_BUDGET, census
from markov_dyck.errors import InputError, VerificationError
from markov_dyck.graphs import build_rotational
from markov_dyck.models import HeightData, MultiplierClass, PeriodicCensus, Reading
from markov_dyck.series import PowerSeries, laurent_divide, zeta_from_census

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExcursionFamily:
    """Generating functions g_0..g_H of first-return excursions below each tree level."""

    data: HeightData
    order: int
    g: tuple[PowerSeries, ...]

    def __getitem__(self, h: int) -> PowerSeries:
        return self.g[h % len(self.g)]

    def product(self) -> PowerSeries:
        result = PowerSeries.one(self.order)
        for g_h in self.g:
            result = result * (1 - g_h)
        return result


def excursion_series(data: HeightData, order: int) -> ExcursionFamily:
    size = data.size
    z2 = PowerSeries.monomial(1, 2, order)
    g = [PowerSeries.zero(order)] * size
    for iteration in range(order + 2):
        nxt = [
            z2 * data.counts[h] * (1 - g[(h + 1) % size]).inverse()
            for h in range(size)
        ]
        if nxt == g:
            logger.debug("excursion series of %s settled after %d rounds", data, iteration)
            return ExcursionFamily(data, order, tuple(g))
        g = nxt
    raise VerificationError(f"Excursion series of {data} did not settle within {order + 2} rounds")


# ---------------------------------------------------------------------------
# Zeta factors
# ---------------------------------------------------------------------------

def zeta_neutral(data: HeightData, order: int, family: ExcursionFamily | None = None
                 ) -> PowerSeries:
    if family is None:
        family = excursion_series(data, order)
    result = PowerSeries.one(order)
    for h in range(data.size):
        result = result * (1 - family[h]) ** (-data.level_size(h))
    return result


def code_gf(data: HeightData, order: int, reading: Reading = Reading.corrected,
            family: ExcursionFamily | None = None) -> PowerSeries:
    """Generating function of the circular code of minimal cycles with psi-sum H+1."""
    if family is None:
        family = excursion_series(data, order)
    if reading == Reading.corrected:
        lead = PowerSeries.monomial(data.pi, data.size, order)
    else:
        lead = PowerSeries.monomial(data.n(data.size) ** data.size, 2 * data.size, order)
    return lead * family.product().inverse()


def zeta_md(data: HeightData, order: int, reading: Reading = Reading.corrected,
            family: ExcursionFamily | None = None) -> PowerSeries:
    """Zeta function of the Markov-Dyck shift; `as_written` uses the z^{2(H+1)} exponent."""
    if family is None:
        family = excursion_series(data, order)
    if reading == Reading.corrected:
        code = code_gf(data, order, Reading.corrected, family)
        return zeta_neutral(data, order, family) * (1 - code) ** -2
    result = (family.product() - PowerSeries.monomial(data.pi, 2 * data.size, order)) ** -2
    for h in range(data.size):
        result = result * (1 - family[h]) ** (2 - data.level_size(h))
    return result


# ---------------------------------------------------------------------------
# The P/Q continued-fraction polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PQPolynomials:
    p0: tuple[PowerSeries, ...]
    p1: tuple[PowerSeries, ...]
    q0: tuple[PowerSeries, ...]
    q1: tuple[PowerSeries, ...]


def pq_polynomials(data: HeightData, order: int) -> PQPolynomials:
    top = data.height
    z2 = PowerSeries.monomial(1, 2, order)
    p0 = [PowerSeries.zero(order)] * data.size
    p1 = list(p0)
    q0 = [PowerSeries.one(order)] * data.size
    q1 = list(q0)
    p0[top] = z2 * data.n(data.size)
    for h in range(top - 1, -1, -1):
        weight = z2 * data.counts[h]
        p0[h] = weight * q0[h + 1]
        p1[h] = weight * q1[h + 1]
        q0[h] = q0[h + 1] - p0[h + 1]
        q1[h] = q1[h + 1] - p1[h + 1]
    return PQPolynomials(tuple(p0), tuple(p1), tuple(q0), tuple(q1))


@dataclass(frozen=True)
class RelationFailure:
    level: int
    order: int


@dataclass
class PQReport:
    data: HeightData
    order: int
    failures: dict[Reading, RelationFailure | None] = field(default_factory=dict)

    def holds(self, reading: Reading = Reading.corrected) -> bool:
        return self.failures.get(reading) is None


def pq_report(data: HeightData, order: int) -> PQReport:
    """Check g_h (Q0 - Q1 x) = P0 - P1 x with x = g_0 (corrected) and x = g_{h+1} (as written)."""
    family = excursion_series(data, order)
    pq = pq_polynomials(data, order)
    report = PQReport(data, order)
    for reading in Reading:
        report.failures[reading] = None
        for h in range(data.size):
            x = family[0] if reading == Reading.corrected else family[h + 1]
            lhs = family[h] * (pq.q0[h] - pq.q1[h] * x)
            rhs = pq.p0[h] - pq.p1[h] * x
            mismatch = lhs.first_mismatch(rhs)
            if mismatch is not None:
                report.failures[reading] = RelationFailure(h, mismatch)
                break
    return report


def pq_recursion_check(data: HeightData, order: int) -> bool:
    return pq_report(data, order).holds(Reading.corrected)


def g0_closed_form(data: HeightData, order: int, reading: Reading = Reading.corrected
                   ) -> PowerSeries:
    """g_0 as the small root of the quadratic obtained from the level-0 Mobius relation."""
    pq = pq_polynomials(data, order)
    p0, p1, q0, q1 = pq.p0[0], pq.p1[0], pq.q0[0], pq.q1[0]
    if reading == Reading.corrected:
        b = p1 + q0
        return (b - (b * b - 4 * p0 * q1).sqrt()) / (2 * q1)
    b = p0 + q0
    return (b - (b * b - 4 * p0 * q1 * q1).sqrt()) / (2 * pq.q1[1 % data.size])


# ---------------------------------------------------------------------------
# Displays with a closed form in z
# ---------------------------------------------------------------------------

def _sqrt_one_minus(n: int, order: int) -> PowerSeries:
    return (1 - PowerSeries.monomial(4 * n, 2, order)).sqrt()


def dyck_zeta_display(n: int, order: int, reading: Reading = Reading.corrected) -> PowerSeries:
    """2(1+s)/(1-2Nz+s)^2 with s = sqrt(1-4Nz^2); `as_written` drops the z of 2Nz."""
    if n < 2:
        raise InputError(f"Dyck data needs N >= 2, got {n}")
    s = _sqrt_one_minus(n, order)
    if reading == Reading.corrected:
        middle = PowerSeries.monomial(2 * n, 1, order)
    else:
        middle = PowerSeries.from_coeffs([2 * n], order)
    return 2 * (1 + s) * ((1 - middle + s) ** -2)


def constant_data_zeta(n: int, height: int, order: int,
                       reading: Reading = Reading.corrected) -> PowerSeries:
    """Zeta of the data (N, ..., N) of height H in closed form."""
    if n < 2 or height < 0:
        raise InputError(f"Constant data needs N >= 2 and H >= 0, got N={n}, H={height}")
    s = _sqrt_one_minus(n, order)
    k = (n ** (height + 1) - 1) // (n - 1)
    base = 2 * n if reading == Reading.corrected else 2**n
    power_term = PowerSeries.monomial(base ** (height + 1), height + 1, order)
    return (Fraction(2) ** k) * (1 + s) ** (2 * height + 2 - k) * (
        ((1 + s) ** (height + 1) - power_term) ** -2
    )


def two_level_factor(n: int, m: int, order: int) -> PowerSeries:
    """F(N, M) = (1 - (N-M) z^2 - sqrt((1 + (N-M) z^2)^2 - 4 N z^2)) / 2."""
    shift = PowerSeries.monomial(n - m, 2, order)
    disc = (1 + shift) ** 2 - PowerSeries.monomial(4 * n, 2, order)
    return (1 - shift - disc.sqrt()) * Fraction(1, 2)


def two_level_zeta(n: int, m: int, order: int, reading: Reading = Reading.corrected
                   ) -> PowerSeries | None:
    """Zeta of the data (N, M) from F; None when the displayed quotient is not a power series."""
    f_nm = two_level_factor(n, m, order)
    f_mn = two_level_factor(m, n, order)
    if reading == Reading.corrected:
        a, b = 1 - f_mn, 1 - f_nm
        return a * b ** (2 - n) * (a * b - PowerSeries.monomial(n * m, 2, order)) ** -2
    ff = f_nm * f_mn
    denominator = f_nm**n * (ff - PowerSeries.monomial(n * m, 2, order))
    return laurent_divide(ff, denominator).as_power_series(order)


def periodic_data_display(base: HeightData, repeats: int, order: int) -> PowerSeries:
    family = excursion_series(base, order)
    lead = PowerSeries.monomial(base.pi**repeats, 2 * base.size, order)
    result = (family.product() ** repeats - lead) ** -2
    for h in range(base.size):
        result = result * (1 - family[h]) ** (2 - base.level_size(h))
    return result


# ---------------------------------------------------------------------------
# Reports against the census oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeriesVerdict:
    name: str
    reading: Reading
    first_mismatch: int | None

    @property
    def matches(self) -> bool:
        return self.first_mismatch is None

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "reading": self.reading.value,
            "matches": self.matches,
            "first_mismatch": self.first_mismatch,
        }


def compare_series(name: str, reading: Reading, shown: PowerSeries | None,
                   oracle: PowerSeries) -> SeriesVerdict:
    if shown is None:
        return SeriesVerdict(name, reading, 0)
    return SeriesVerdict(name, reading, shown.first_mismatch(oracle))


@dataclass
class ZetaReport:
    data: str
    order: int
    closed_form: PowerSeries
    census_series: PowerSeries
    verdicts: list[SeriesVerdict] = field(default_factory=list)

    @property
    def first_mismatch(self) -> int | None:
        return self.closed_form.first_mismatch(self.census_series)

    def corrected_ok(self) -> bool:
        return self.first_mismatch is None and all(
            v.matches for v in self.verdicts if v.reading == Reading.corrected
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "data": self.data,
            "order": self.order,
            "closed_form": self.closed_form.to_json(),
            "census": self.census_series.to_json(),
            "first_mismatch": self.first_mismatch,
            "verdicts": [v.to_dict() for v in self.verdicts],
        }


def _census_for(data: HeightData, order: int, budget: int) -> PeriodicCensus:
    return census(build_rotational(data), order, budget)


def class_factor_verdicts(data: HeightData, order: int, oracle: PeriodicCensus,
                          family: ExcursionFamily | None = None) -> list[SeriesVerdict]:
    if family is None:
        family = excursion_series(data, order)
    code_factor = (1 - code_gf(data, order, Reading.corrected, family)).inverse()
    printed_factor = (1 - code_gf(data, order, Reading.as_written, family)).inverse()
    return [
        compare_series("negative-class factor", Reading.as_written, printed_factor,
                       zeta_from_census(oracle, order, MultiplierClass.negative)),
        compare_series("neutral factor", Reading.corrected,
                       zeta_neutral(data, order, family),
                       zeta_from_census(oracle, order, MultiplierClass.neutral)),
        compare_series("negative-class factor", Reading.corrected, code_factor,
                       zeta_from_census(oracle, order, MultiplierClass.negative)),
        compare_series("positive-class factor", Reading.corrected, code_factor,
                       zeta_from_census(oracle, order, MultiplierClass.positive)),
    ]


def zeta_report(data: HeightData, order: int, budget: int = DEFAULT_BUDGET,
                oracle: PeriodicCensus | None = None) -> ZetaReport:
    """zeta_md against the census, with per-class factors and the as-written variants."""
    if oracle is None:
        oracle = _census_for(data, order, budget)
    truth = zeta_from_census(oracle, order)
    family = excursion_series(data, order)
    closed = zeta_md(data, order, Reading.corrected, family)
    report = ZetaReport(str(data), order, closed, truth)
    report.verdicts.append(compare_series("zeta", Reading.corrected, closed, truth))
    report.verdicts.append(
        compare_series("zeta", Reading.as_written,
                       zeta_md(data, order, Reading.as_written, family), truth)
    )
    report.verdicts += class_factor_verdicts(data, order, oracle, family)
    if data.height == 0:
        n = data.counts[0]
        for reading in Reading:
            report.verdicts.append(
                compare_series("dyck display", reading, dyck_zeta_display(n, order, reading), truth)
            )
    logger.info("zeta of %s to order %d: first mismatch %s", data, order, report.first_mismatch)
    return report


def zeta_periodic_data(base: HeightData, repeats: int, order: int,
                       budget: int = DEFAULT_BUDGET, oracle: PeriodicCensus | None = None
                       ) -> ZetaReport:
    if repeats < 1:
        raise InputError(f"Repetition count must be at least 1, got {repeats}")
    data = base.repeated(repeats)
    family = excursion_series(data, order)
    periodic = all(family[h] == family[h % base.size] for h in range(data.size))
    if oracle is None:
        oracle = _census_for(data, order, budget)
    truth = zeta_from_census(oracle, order)
    closed = zeta_md(data, order, Reading.corrected, family)
    report = ZetaReport(str(data), order, closed, truth)
    report.verdicts.append(SeriesVerdict("g periodicity", Reading.corrected,
                                         None if periodic else 0))
    report.verdicts.append(compare_series("zeta", Reading.corrected, closed, truth))
    report.verdicts.append(
        compare_series("periodic display", Reading.as_written,
                       periodic_data_display(base, repeats, order), truth)
    )
    return report


def two_level_check(n: int, m: int, order: int, budget: int = DEFAULT_BUDGET,
                       oracle: PeriodicCensus | None = None) -> ZetaReport:
    data = HeightData.of(n, m)
    if oracle is None:
        oracle = _census_for(data, order, budget)
    truth = zeta_from_census(oracle, order)
    closed = zeta_md(data, order)
    report = ZetaReport(str(data), order, closed, truth)
    family = excursion_series(data, order)
    report.verdicts.append(
        compare_series("F identifies g_0", Reading.corrected,
                       two_level_factor(m, n, order), family[0])
    )
    report.verdicts.append(
        compare_series("F identifies g_1", Reading.corrected,
                       two_level_factor(n, m, order), family[1])
    )
    for reading in Reading:
        report.verdicts.append(
            compare_series("two-level display", reading, two_level_zeta(n, m, order, reading),
                           truth)
        )
    return report


def constant_data_check(n: int, height: int, order: int) -> list[SeriesVerdict]:
    """Closed-form constant-data zeta against zeta_md; no census needed."""
    data = HeightData(counts=(n,) * (height + 1))
    reference = zeta_md(data, order)
    return [
        compare_series("constant-data display", reading,
                       constant_data_zeta(n, height, order, reading), reference)
        for reading in Reading
    ]


def g0_verdicts(data: HeightData, order: int) -> list[SeriesVerdict]:
    g0 = excursion_series(data, order)[0]
    return [
        compare_series("g0 closed form", reading, g0_closed_form(data, order, reading), g0)
        for reading in Reading
    ]

