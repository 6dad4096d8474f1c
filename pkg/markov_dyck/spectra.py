import itertools
import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Any

import mpmath
import sympy

from markov_dyck.errors import InputError, VerificationError
from markov_dyck.graphs import AdjacencyMatrix, build_companion
from markov_dyck.models import HeightData, Reading

logger = logging.getLogger(__name__)

ROOT_WIDTH = Fraction(1, 10**12)
CHECK_TOLERANCE = 1e-9
WORKING_DPS = 50

_z = sympy.Symbol("z")


# ---------------------------------------------------------------------------
# Exact polynomials and certified reals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntegerPolynomial:
    """Integer coefficients in ascending degree."""

    coeffs: tuple[int, ...]

    @classmethod
    def of(cls, coeffs: Sequence[int]) -> "IntegerPolynomial":
        trimmed = list(coeffs)
        while len(trimmed) > 1 and trimmed[-1] == 0:
            trimmed.pop()
        return cls(tuple(int(c) for c in trimmed))

    @classmethod
    def from_terms(cls, terms: dict[int, int]) -> "IntegerPolynomial":
        degree = max(terms, default=0)
        return cls.of([terms.get(k, 0) for k in range(degree + 1)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def to_sympy(self) -> sympy.Poly:
        return sympy.Poly(list(reversed(self.coeffs)), _z)

    def __neg__(self) -> "IntegerPolynomial":
        return IntegerPolynomial(tuple(-c for c in self.coeffs))

    def even_part(self) -> "IntegerPolynomial":
        """Q with P(z) = Q(z^2); only defined when P has no odd terms."""
        if any(self.coeffs[1::2]):
            raise InputError(f"{self} has odd-degree terms")
        return IntegerPolynomial.of(self.coeffs[0::2])

    def differing_degrees(self, other: "IntegerPolynomial") -> list[int]:
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return [k for k in range(n) if a[k] != b[k]]

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            coef = str(c) if (abs(c) != 1 or k == 0) else ("-" if c < 0 else "")
            terms.append(f"{coef}{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def _fraction(value: Any) -> Fraction:
    rational = sympy.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def _mp(x: Fraction | int) -> mpmath.mpf:
    x = Fraction(x)
    return mpmath.mpf(x.numerator) / x.denominator


def _floor_fraction(x: mpmath.mpf) -> Fraction:
    return Fraction(int(mpmath.floor(mpmath.ldexp(x, 200))), 2**200)


def _ceil_fraction(x: mpmath.mpf) -> Fraction:
    return Fraction(int(mpmath.ceil(mpmath.ldexp(x, 200))), 2**200)


@dataclass(frozen=True)
class CertifiedReal:
    """A real number known to lie in the closed rational interval [lo, hi]."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise InputError(f"Empty enclosure [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, value: Fraction | int) -> "CertifiedReal":
        return cls(Fraction(value), Fraction(value))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.midpoint)

    def contains(self, x: Fraction | int | float) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    def meets(self, other: "CertifiedReal", tolerance: float = 0.0) -> bool:
        slack = Fraction(tolerance)
        return self.lo - slack <= other.hi and other.lo - slack <= self.hi

    def __add__(self, other: "CertifiedReal") -> "CertifiedReal":
        return CertifiedReal(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "CertifiedReal") -> "CertifiedReal":
        return CertifiedReal(self.lo - other.hi, self.hi - other.lo)

    def __mul__(self, factor: Fraction | int) -> "CertifiedReal":
        a, b = self.lo * factor, self.hi * factor
        return CertifiedReal(min(a, b), max(a, b))

    __rmul__ = __mul__

    def log(self) -> "CertifiedReal":
        if self.lo <= 0:
            raise InputError(f"Logarithm of an enclosure reaching {self.lo}")
        with mpmath.workdps(60):
            slack = mpmath.mpf(10) ** -45
            lo = mpmath.log(_mp(self.lo)) - slack
            hi = mpmath.log(_mp(self.hi)) + slack
            return CertifiedReal(_floor_fraction(lo), _ceil_fraction(hi))

    def decimal(self, digits: int = 15) -> list[str]:
        scale = 10**digits
        lo = (self.lo.numerator * scale) // self.lo.denominator
        hi = -((-self.hi.numerator * scale) // self.hi.denominator)
        return [_format_scaled(lo, digits), _format_scaled(hi, digits)]


def _format_scaled(value: int, digits: int) -> str:
    sign = "-" if value < 0 else ""
    whole, frac = divmod(abs(value), 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def certified_log(q: Fraction | int) -> CertifiedReal:
    return CertifiedReal.exact(q).log()


# ---------------------------------------------------------------------------
# Characteristic polynomials and Perron roots
# ---------------------------------------------------------------------------

def char_poly(a: AdjacencyMatrix) -> IntegerPolynomial:
    poly = a.to_sympy().charpoly(_z)
    return IntegerPolynomial.of([int(c) for c in reversed(poly.all_coeffs())])


def perron_root(a: AdjacencyMatrix, width: Fraction = ROOT_WIDTH) -> CertifiedReal:
    if not a.is_irreducible():
        raise InputError(f"Matrix {a.to_lists()} is reducible")
    sums = a.row_sums()
    lo, hi = Fraction(min(sums)), Fraction(max(sums))
    if lo == hi:
        return CertifiedReal.exact(lo)
    poly = char_poly(a).to_sympy()
    steps = 0
    while hi - lo > width:
        mid = (lo + hi) / 2
        if poly.count_roots(sympy.Rational(mid.numerator, mid.denominator),
                            sympy.Rational(hi.numerator, hi.denominator)) > 0:
            lo = mid
        else:
            hi = mid
        steps += 1
    logger.debug("perron root bracketed in %d bisection steps", steps)
    return CertifiedReal(lo, hi)


def companion_matrix(data: HeightData) -> AdjacencyMatrix:
    return build_companion(data)[1]


def entropy(data: HeightData) -> CertifiedReal:
    return perron_root(companion_matrix(data)).log()


def entropy_bounds(data: HeightData) -> tuple[CertifiedReal, CertifiedReal]:
    sums = companion_matrix(data).row_sums()
    return certified_log(min(sums)), certified_log(max(sums))


def fibonacci_entropy() -> CertifiedReal:
    """3 log 2 - log 3, the entropy of the Markov-Dyck shift of the Fibonacci graph."""
    return certified_log(Fraction(8, 3))


# ---------------------------------------------------------------------------
# Solving by radicals
# ---------------------------------------------------------------------------

def _cbrt(x: mpmath.mpf) -> mpmath.mpf:
    return mpmath.sign(x) * mpmath.cbrt(abs(x))


def _clamp_unit(x: mpmath.mpf) -> mpmath.mpf:
    return max(mpmath.mpf(-1), min(mpmath.mpf(1), x))


def cubic_by_radicals(b: Fraction, c: Fraction, d: Fraction) -> list[mpmath.mpf]:
    """Real roots of x^3 + b x^2 + c x + d by Cardano (one real root) or the cosine method."""
    p = c - b * b / 3
    q = 2 * b**3 / 27 - b * c / 3 + d
    disc = (q / 2) ** 2 + (p / 3) ** 3
    with mpmath.workdps(WORKING_DPS):
        shift = _mp(-b / 3)
        if disc > 0:
            s = mpmath.sqrt(_mp(disc))
            roots = [_cbrt(_mp(-q / 2) + s) + _cbrt(_mp(-q / 2) - s)]
        elif p == 0:
            roots = [mpmath.mpf(0)]
        else:
            amplitude = 2 * mpmath.sqrt(_mp(-p / 3))
            phi = mpmath.acos(_clamp_unit(_mp(3 * q / (2 * p)) * mpmath.sqrt(_mp(-3 / p))))
            roots = [amplitude * mpmath.cos((phi - 2 * mpmath.pi * k) / 3) for k in range(3)]
        return [r + shift for r in roots]


@dataclass(frozen=True)
class QuarticRadicals:
    roots: list[mpmath.mpf]
    branch: str
    resolvent_root: mpmath.mpf | None
    depressed: tuple[Fraction, Fraction, Fraction]


def quartic_by_radicals(a3: Fraction, a2: Fraction, a1: Fraction, a0: Fraction) -> QuarticRadicals:
    """Real roots of x^4 + a3 x^3 + a2 x^2 + a1 x + a0 via the depressed quartic and the
    Descartes resolvent U^3 + 2p U^2 + (p^2 - 4r) U - q^2."""
    p = a2 - 3 * a3**2 / 8
    q = a3**3 / 8 - a3 * a2 / 2 + a1
    r = -3 * a3**4 / 256 + a3**2 * a2 / 16 - a3 * a1 / 4 + a0
    with mpmath.workdps(WORKING_DPS):
        shift = _mp(-a3 / 4)
        tiny = mpmath.mpf(10) ** -30
        ys: list[mpmath.mpf] = []
        resolvent_root = None
        if q == 0:
            branch = "biquadratic"
            disc = p * p - 4 * r
            if disc >= 0:
                for w in ((-_mp(p) + mpmath.sqrt(_mp(disc))) / 2,
                          (-_mp(p) - mpmath.sqrt(_mp(disc))) / 2):
                    if w > -tiny:
                        root = mpmath.sqrt(max(w, mpmath.mpf(0)))
                        ys += [root, -root]
        else:
            branch = "q>0" if q > 0 else "q<0"
            resolvent_root = max(cubic_by_radicals(2 * p, p * p - 4 * r, -q * q))
            k = mpmath.sqrt(resolvent_root)
            m = (_mp(p) + resolvent_root - _mp(q) / k) / 2
            n = (_mp(p) + resolvent_root + _mp(q) / k) / 2
            for lin, const in ((k, m), (-k, n)):
                disc_y = lin * lin - 4 * const
                if disc_y > -tiny:
                    s = mpmath.sqrt(max(disc_y, mpmath.mpf(0)))
                    ys += [(-lin + s) / 2, (-lin - s) / 2]
        return QuarticRadicals([y + shift for y in ys], branch, resolvent_root, (p, q, r))


def _distinct(values: list[mpmath.mpf]) -> list[mpmath.mpf]:
    out: list[mpmath.mpf] = []
    for v in sorted(values):
        if not out or abs(v - out[-1]) > mpmath.mpf(10) ** -20:
            out.append(v)
    return out


def _certify(coeffs: Sequence[Fraction], values: list[mpmath.mpf]) -> list[CertifiedReal]:
    """Match formula roots one-to-one with exact isolating intervals of the polynomial."""
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], _z)
    intervals = sorted(
        (CertifiedReal(_fraction(a), _fraction(b))
         for (a, b), _ in poly.intervals(eps=sympy.Rational(1, 10**12))),
        key=lambda c: c.lo,
    )
    found = _distinct(values)
    if len(found) != len(intervals):
        raise VerificationError(
            f"Radical formulas gave {len(found)} real roots, exact isolation found {len(intervals)}"
        )
    for value, interval in zip(found, intervals):
        if abs(float(value) - float(interval.midpoint)) > CHECK_TOLERANCE:
            raise VerificationError(f"Radical root {value} is not in {interval.decimal()}")
    return intervals


def _monic(coeffs: Sequence[Fraction | int], degree: int) -> list[Fraction]:
    values = [Fraction(c) for c in coeffs]
    if len(values) != degree + 1 or values[-1] == 0:
        raise InputError(f"Expected {degree + 1} ascending coefficients of a degree-{degree} "
                         f"polynomial, got {list(coeffs)}")
    return [c / values[-1] for c in values]


def solve_cubic(coeffs: Sequence[Fraction | int]) -> list[CertifiedReal]:
    """Certified real roots of a cubic given by ascending coefficients."""
    d, c, b, _ = _monic(coeffs, 3)
    return _certify([d, c, b, Fraction(1)], cubic_by_radicals(b, c, d))


def solve_quartic(coeffs: Sequence[Fraction | int]) -> list[CertifiedReal]:
    """Certified real roots of a quartic given by ascending coefficients."""
    a0, a1, a2, a3, _ = _monic(coeffs, 4)
    radicals = quartic_by_radicals(a3, a2, a1, a0)
    return _certify([a0, a1, a2, a3, Fraction(1)], radicals.roots)


# ---------------------------------------------------------------------------
# Structured coefficients of the companion characteristic polynomial
# ---------------------------------------------------------------------------

Monomials = list[tuple[int, ...]]

# Monomial lists as printed for heights 5 and 7; duplicates are dropped on evaluation.
PRINTED_GAMMA_1_HEIGHT_5: Monomials = [
    (1, 3), (1, 4), (1, 5), (2, 4), (2, 5), (2, 6), (3, 5), (5, 4), (4, 6),
]
PRINTED_GAMMA_2_HEIGHT_7: Monomials = [
    (1, 3, 5), (1, 3, 6), (1, 5, 7), (1, 4, 6), (1, 4, 7), (1, 5, 7),
    (2, 4, 6), (2, 4, 7), (2, 4, 8), (2, 5, 7), (2, 5, 8), (2, 6, 8),
    (3, 5, 7), (3, 5, 8), (5, 6, 8), (4, 6, 8), (3, 6, 8), (4, 6, 8),
]
PRINTED_GAMMA_4_HEIGHT_7: Monomials = [
    (1, 3), (1, 4), (1, 5), (1, 6), (2, 4), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7),
    (2, 4), (2, 5), (2, 6), (2, 7), (2, 8), (3, 5), (3, 6), (3, 7), (3, 8), (4, 6),
    (4, 7), (4, 8), (5, 7), (5, 8), (6, 8),
]


def evaluate_monomials(data: HeightData, monomials: Monomials) -> int:
    distinct = {frozenset(m) for m in monomials}
    return sum(prod(data.n(h) for h in m) for m in distinct)


def matching_sum(data: HeightData, k: int) -> int:
    """Sum over k pairwise non-adjacent positions of the cycle N_1 ... N_{H+1} of their product."""
    n = data.size
    total = 0
    for chosen in itertools.combinations(range(n), k):
        picked = set(chosen)
        if any((i + 1) % n in picked for i in chosen) and n > 1:
            continue
        total += prod(data.counts[i] for i in chosen)
    return total


@dataclass(frozen=True)
class StructuredCoefficients:
    sigma: int
    pi: int
    matchings: dict[int, int]
    printed: dict[str, int] = field(default_factory=dict)


def structured_coefficients(data: HeightData) -> StructuredCoefficients:
    n = data.size
    matchings = {k: matching_sum(data, k) for k in range(1, n // 2 + 1)} if n >= 3 else {}
    printed: dict[str, int] = {}
    if n == 4:
        printed["gamma0"] = evaluate_monomials(data, [(1, 3), (2, 4)])
    if n == 6:
        printed["gamma0"] = evaluate_monomials(data, [(1, 3, 5), (2, 4, 6)])
        printed["gamma1"] = evaluate_monomials(data, PRINTED_GAMMA_1_HEIGHT_5)
    if n == 8:
        printed["gamma0"] = evaluate_monomials(data, [(1, 3, 5, 7), (2, 4, 6, 8)])
        printed["gamma2"] = evaluate_monomials(data, PRINTED_GAMMA_2_HEIGHT_7)
        printed["gamma4"] = evaluate_monomials(data, PRINTED_GAMMA_4_HEIGHT_7)
    return StructuredCoefficients(data.sigma, data.pi, matchings, printed)


def structured_charpoly(data: HeightData) -> IntegerPolynomial:
    """Det(z - A) assembled from Sigma, Pi and the matching sums of the weighted cycle."""
    n = data.size
    if n == 1:
        return IntegerPolynomial.of([-(data.n(1) + 1), 1])
    if n == 2:
        return IntegerPolynomial.of([-(data.n(1) + 1) * (data.n(2) + 1), 0, 1])
    coeffs = structured_coefficients(data)
    terms = {n: 1}
    for k, m in coeffs.matchings.items():
        terms[n - 2 * k] = terms.get(n - 2 * k, 0) + (-1) ** k * m
    terms[0] = terms.get(0, 0) - data.pi - 1
    return IntegerPolynomial.from_terms(terms)


def printed_charpoly(data: HeightData) -> IntegerPolynomial:
    """The characteristic polynomial exactly as displayed for heights 1, 2, 3, 5 and 7."""
    s, p = data.sigma, data.pi
    printed = structured_coefficients(data).printed
    match data.height:
        case 1:
            return structured_charpoly(data)
        case 2:
            return IntegerPolynomial.from_terms({3: -1, 1: -s, 0: 1 + p})
        case 3:
            return IntegerPolynomial.from_terms({4: 1, 2: -s, 0: -1 + printed["gamma0"] - p})
        case 5:
            return IntegerPolynomial.from_terms(
                {6: 1, 1: printed["gamma1"], 0: -s + p - 1 - printed["gamma0"]}
            )
        case 7:
            return IntegerPolynomial.from_terms(
                {
                    8: 1,
                    6: -s,
                    4: printed["gamma4"],
                    2: -printed["gamma2"],
                    0: printed["gamma0"] + p - 1,
                }
            )
    raise InputError(f"No displayed characteristic polynomial for height {data.height}")


@dataclass(frozen=True)
class DisplayComparison:
    reading: Reading
    polynomial: IntegerPolynomial
    matches: bool
    sign_flipped: bool
    differing_degrees: list[int]


@dataclass(frozen=True)
class CharpolyReport:
    data: HeightData
    exact: IntegerPolynomial
    coefficients: StructuredCoefficients
    comparisons: list[DisplayComparison]


def _compare(reading: Reading, shown: IntegerPolynomial, exact: IntegerPolynomial
             ) -> DisplayComparison:
    flipped = shown.coeffs[-1] == -exact.coeffs[-1]
    normalized = -shown if flipped else shown
    differing = normalized.differing_degrees(exact)
    return DisplayComparison(reading, shown, not differing, flipped, differing)


def structured_charpoly_report(data: HeightData) -> CharpolyReport:
    if data.height not in (1, 2, 3, 5, 7):
        raise InputError(f"No structured display exists for height {data.height}")
    exact = char_poly(companion_matrix(data))
    comparisons = [
        _compare(Reading.as_written, printed_charpoly(data), exact),
        _compare(Reading.corrected, structured_charpoly(data), exact),
    ]
    for c in comparisons:
        if not c.matches:
            logger.warning("height %d %s display differs at degrees %s",
                           data.height, c.reading, c.differing_degrees)
    return CharpolyReport(data, exact, structured_coefficients(data), comparisons)


# ---------------------------------------------------------------------------
# Closed-form Perron roots
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClosedFormValue:
    formula: str
    reading: Reading
    branch: str
    value: float | None
    agrees: bool


def _guarded(compute: Callable[[], mpmath.mpf]) -> float | None:
    """Evaluate a real formula; None when a radicand or arccos argument leaves its domain."""
    with mpmath.workdps(WORKING_DPS):
        try:
            value = compute()
        except (ValueError, ZeroDivisionError):
            return None
        if isinstance(value, mpmath.mpc):
            return None
        return float(value)


def _real_sqrt(x: mpmath.mpf) -> mpmath.mpf:
    if x < 0:
        raise ValueError("negative radicand")
    return mpmath.sqrt(x)


def _real_acos(x: mpmath.mpf) -> mpmath.mpf:
    if abs(x) > 1:
        raise ValueError("arccos argument outside [-1, 1]")
    return mpmath.acos(x)


def _height1_forms(data: HeightData) -> list[tuple[str, Reading, str, Callable[[], Any]]]:
    value = (data.n(1) + 1) * (data.n(2) + 1)
    return [("square root", Reading.as_written, "-", lambda: _real_sqrt(mpmath.mpf(value)))]


def _height2_forms(data: HeightData) -> list[tuple[str, Reading, str, Callable[[], Any]]]:
    s, c = Fraction(data.sigma), Fraction(1 + data.pi)
    disc = c * c - Fraction(4, 27) * s**3
    if disc > 0:
        root = lambda: _real_sqrt(_mp(disc))  # noqa: E731
        return [
            ("cardano", Reading.as_written, "disc>0",
             lambda: _cbrt(_mp(c) + root()) + _cbrt(_mp(c) - root())),
            ("cardano", Reading.corrected, "disc>0",
             lambda: _cbrt((_mp(c) + root()) / 2) + _cbrt((_mp(c) - root()) / 2)),
        ]
    return [
        ("trigonometric", Reading.as_written, "disc<0",
         lambda: mpmath.cos(_real_acos(3 * _mp(c) / (2 * _mp(s) * mpmath.sqrt(_mp(s)))) / 3)),
        ("trigonometric", Reading.corrected, "disc<0",
         lambda: 2 * mpmath.sqrt(_mp(s) / 3) * mpmath.cos(
             _real_acos(3 * _mp(c) / (2 * _mp(s)) * mpmath.sqrt(3 / _mp(s))) / 3)),
    ]


def _height3_forms(data: HeightData) -> list[tuple[str, Reading, str, Callable[[], Any]]]:
    s, p = data.sigma, data.pi
    gamma0 = structured_coefficients(data).printed["gamma0"]
    printed_disc = s * s + p + 1 - gamma0
    corrected_disc = s * s + 4 * (p + 1 - gamma0)
    return [
        ("biquadratic", Reading.as_written, "-",
         lambda: _real_sqrt((s + _real_sqrt(mpmath.mpf(printed_disc))) / 2)),
        ("biquadratic", Reading.corrected, "-",
         lambda: _real_sqrt((s + _real_sqrt(mpmath.mpf(corrected_disc))) / 2)),
    ]


def _height5_forms(data: HeightData) -> list[tuple[str, Reading, str, Callable[[], Any]]]:
    coeffs = structured_coefficients(data)
    s = Fraction(data.sigma)
    constant = coeffs.printed["gamma0"] + data.pi + 1
    forms: list[tuple[str, Reading, str, Callable[[], Any]]] = []
    for reading, middle in ((Reading.as_written, coeffs.printed["gamma1"]),
                            (Reading.corrected, coeffs.matchings[2])):
        p = (3 * Fraction(middle) - s * s) / 3
        q = (-2 * s**3 + 9 * s * middle - 27 * constant) / 27
        disc = q * q + Fraction(4, 27) * p**3
        if disc >= 0:
            def cardano(p: Fraction = p, q: Fraction = q, disc: Fraction = disc) -> Any:
                root = _real_sqrt(_mp(disc))
                t = _cbrt((-_mp(q) + root) / 2) + _cbrt((-_mp(q) - root) / 2)
                return _real_sqrt(_mp(s) / 3 + t)
            forms.append(("cardano", reading, "disc>=0", cardano))
        else:
            factor = (lambda p: mpmath.sqrt(-_mp(p) / 3)) if reading == Reading.as_written \
                else (lambda p: mpmath.sqrt(-3 / _mp(p)))

            def trig(p: Fraction = p, q: Fraction = q,
                     factor: Callable[[Fraction], Any] = factor) -> Any:
                phi = _real_acos(3 * _mp(q) / (2 * _mp(p)) * factor(p))
                t = 2 * mpmath.sqrt(-_mp(p) / 3) * mpmath.cos(phi / 3)
                return _real_sqrt(_mp(s) / 3 + t)
            forms.append(("trigonometric", reading, "disc<0", trig))
    return forms


def _height7_forms(data: HeightData) -> list[tuple[str, Reading, str, Callable[[], Any]]]:
    printed = structured_coefficients(data).printed
    a3 = Fraction(-data.sigma)
    a2 = Fraction(printed["gamma4"])
    a1 = Fraction(-printed["gamma2"])
    a0 = Fraction(printed["gamma0"] + data.pi - 1)
    # printed depressed coefficients, with r's -4 a3^4 and unscaled a0 kept
    p = (8 * a2 - 3 * a3**2) / 8
    q = (a3**3 - 4 * a3 * a2 + 8 * a1) / 8
    r = (-4 * a3**4 - 64 * a3 * a1 + 16 * a3**2 * a2) / 256 + a0
    branch = "q>0" if q > 0 else "q<0"

    def printed_form() -> Any:
        u = max(cubic_by_radicals(2 * p, p * p - 4 * r, -q * q))
        su = _real_sqrt(u)
        if q > 0:
            return _real_sqrt((-su + _real_sqrt(u + _mp(p) - 2 * _mp(q) / su)) / 2)
        return _real_sqrt((su + _real_sqrt(u + _mp(p) + 2 * _mp(q) / su)) / 2)

    quartic = char_poly(companion_matrix(data)).even_part()
    b0, b1, b2, b3, _ = (Fraction(c) for c in quartic.coeffs)
    radicals = quartic_by_radicals(b3, b2, b1, b0)

    def corrected_form() -> Any:
        return _real_sqrt(max(radicals.roots))

    return [
        ("descartes", Reading.as_written, branch, printed_form),
        ("descartes", Reading.corrected, radicals.branch, corrected_form),
    ]


_CLOSED_FORMS = {
    1: _height1_forms,
    2: _height2_forms,
    3: _height3_forms,
    5: _height5_forms,
    7: _height7_forms,
}


def closed_form_entropy(data: HeightData) -> list[ClosedFormValue]:
    """Evaluate the radical and trigonometric Perron-root formulas against the certified root."""
    if data.height not in _CLOSED_FORMS:
        raise InputError(f"No closed-form Perron root for height {data.height}")
    reference = float(perron_root(companion_matrix(data)).midpoint)
    values = []
    for formula, reading, branch, compute in _CLOSED_FORMS[data.height](data):
        value = _guarded(compute)
        agrees = value is not None and abs(value - reference) <= CHECK_TOLERANCE
        values.append(ClosedFormValue(formula, reading, branch, value, agrees))
    return values
