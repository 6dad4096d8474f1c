import logging
from dataclasses import dataclass
from typing import Protocol

from markov_dyck.errors import InputError
from markov_dyck.models import CheckKind, ErrataCase, Reading
from markov_dyck.spectra import closed_form_entropy, structured_charpoly_report
from markov_dyck.zeta import (
    SeriesVerdict,
    constant_data_check,
    g0_verdicts,
    pq_report,
    two_level_check,
    zeta_periodic_data,
    zeta_report,
)

logger = logging.getLogger(__name__)


@dataclass
class Verdict:
    check: str
    subject: str
    reading: Reading
    matches: bool
    detail: str


class DisplayCheck(Protocol):
    def evaluate(self, case: ErrataCase) -> list[Verdict]: ...


def _from_series(case: ErrataCase, verdicts: list[SeriesVerdict]) -> list[Verdict]:
    return [
        Verdict(
            check=case.check.value,
            subject=f"{v.name} {case.data}",
            reading=v.reading,
            matches=v.matches,
            detail=(
                f"agrees to order {case.order}"
                if v.matches
                else f"first differs at z^{v.first_mismatch}"
            ),
        )
        for v in verdicts
    ]


class CharpolyCheck:
    def evaluate(self, case: ErrataCase) -> list[Verdict]:
        report = structured_charpoly_report(case.height_data())
        return [
            Verdict(
                check=case.check.value,
                subject=f"height {report.data.height} {report.data}",
                reading=c.reading,
                matches=c.matches,
                detail=(
                    f"{c.polynomial} vs {report.exact}"
                    + (" (after a global sign change)" if c.sign_flipped else "")
                    + ("" if c.matches else f", differs at degrees {c.differing_degrees}")
                ),
            )
            for c in report.comparisons
        ]


class EntropyFormulaCheck:
    def evaluate(self, case: ErrataCase) -> list[Verdict]:
        return [
            Verdict(
                check=case.check.value,
                subject=f"{v.formula} [{v.branch}] {case.data}",
                reading=v.reading,
                matches=v.agrees,
                detail=(
                    "undefined (leaves its real domain)" if v.value is None else f"{v.value:.12f}"
                ),
            )
            for v in closed_form_entropy(case.height_data())
        ]


class ZetaCheck:
    def evaluate(self, case: ErrataCase) -> list[Verdict]:
        return _from_series(case, zeta_report(case.height_data(), case.order).verdicts)


class PQRelationCheck:
    def evaluate(self, case: ErrataCase) -> list[Verdict]:
        report = pq_report(case.height_data(), case.order)
        verdicts = []
        for reading, failure in report.failures.items():
            detail = (
                f"holds to order {case.order}"
                if failure is None
                else f"fails at level {failure.level}, z^{failure.order}"
            )
            verdicts.append(
                Verdict(case.check.value, f"mobius relation {case.data}", reading,
                        failure is None, detail)
            )
        return verdicts


class G0ClosedFormCheck:
    def evaluate(self, case: ErrataCase) -> list[Verdict]:
        return _from_series(case, g0_verdicts(case.height_data(), case.order))


class TwoLevelCheck:
    def evaluate(self, case: ErrataCase) -> list[Verdict]:
        data = case.height_data()
        if data.size != 2:
            raise InputError(f"Two-level check needs data (N,M), got {data}")
        n, m = data.counts
        return _from_series(case, two_level_check(n, m, case.order).verdicts)


class PeriodicDataCheck:
    def evaluate(self, case: ErrataCase) -> list[Verdict]:
        report = zeta_periodic_data(case.height_data(), case.repeats, case.order)
        return _from_series(case, report.verdicts)


class ConstantDataCheck:
    def evaluate(self, case: ErrataCase) -> list[Verdict]:
        data = case.height_data()
        if not data.is_constant():
            raise InputError(f"Constant-data check needs constant data, got {data}")
        return _from_series(case, constant_data_check(data.counts[0], data.height, case.order))


CHECK_REGISTRY: dict[CheckKind, type[DisplayCheck]] = {
    CheckKind.charpoly: CharpolyCheck,
    CheckKind.entropy_formula: EntropyFormulaCheck,
    CheckKind.zeta: ZetaCheck,
    CheckKind.pq_relation: PQRelationCheck,
    CheckKind.g0_closed_form: G0ClosedFormCheck,
    CheckKind.two_level: TwoLevelCheck,
    CheckKind.periodic_data: PeriodicDataCheck,
    CheckKind.constant_data: ConstantDataCheck,
}


def get_check(kind: str) -> DisplayCheck:
    try:
        return CHECK_REGISTRY[CheckKind(kind)]()
    except ValueError:
        raise InputError(f"Unknown display check: {kind}") from None


def evaluate(case: ErrataCase) -> list[Verdict]:
    verdicts = get_check(case.check).evaluate(case)
    for v in verdicts:
        if not v.matches:
            logger.warning("%s %s (%s): %s", v.check, v.subject, v.reading, v.detail)
    return verdicts
