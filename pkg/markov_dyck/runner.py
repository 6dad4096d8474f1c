import json
import logging
from datetime import UTC, datetime
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field

from markov_dyck.errors import InputError, MarkovDyckError
from markov_dyck.models import ErrataCase, Reading
from markov_dyck.verdicts import Verdict, evaluate

logger = logging.getLogger(__name__)

RESULTS_DIR = Path(__file__).parent / "results"
CASES_DIR = Path(__file__).parent / "cases"


class CaseResult(BaseModel):
    model_config = ConfigDict(extra="forbid")

    case: ErrataCase
    verdicts: list[Verdict] = Field(default_factory=list)
    error: str | None = None

    def mismatches(self, reading: Reading) -> list[Verdict]:
        return [v for v in self.verdicts if v.reading == reading and not v.matches]


def load_cases(path: Path) -> list[ErrataCase]:
    with open(path) as f:
        raw = json.load(f)
    if not isinstance(raw, list):
        raise InputError(f"Expected a JSON array, got {type(raw).__name__}")
    return [ErrataCase(**case) for case in raw]


def run_case(case: ErrataCase) -> CaseResult:
    try:
        return CaseResult(case=case, verdicts=evaluate(case))
    except MarkovDyckError as e:
        logger.error("case %s failed: %s", case.name, e)
        return CaseResult(case=case, error=f"{type(e).__name__}: {e}")


def print_summary(results: list[CaseResult]) -> None:
    verdicts = [v for r in results for v in r.verdicts]
    errors = [r for r in results if r.error]

    print("\n" + "=" * 55)
    print(f"  ERRATA LEDGER  {datetime.now(UTC).strftime('%Y-%m-%d %H:%M:%S')} UTC")
    print("=" * 55)

    for result in results:
        print(f"\n  {result.case.name}  [{result.case.check}] {result.case.data}")
        if result.error:
            print(f"✗ ERROR  {result.error}")
        for v in result.verdicts:
            status = "✓ MATCH   " if v.matches else "✗ MISMATCH"
            print(f"{status}  {v.reading.value:<10}  {v.subject}")
            print(f"         {v.detail}")

    print("\n" + "-" * 55)
    for reading in Reading:
        shown = [v for v in verdicts if v.reading == reading]
        agreed = sum(1 for v in shown if v.matches)
        print(f"  {reading.value:<11} {agreed}/{len(shown)} agree")
    print(f"  Errors:     {len(errors)}")
    print("=" * 55 + "\n")


def save_results(results: list[CaseResult], run_name: str, results_dir: Path = RESULTS_DIR
                 ) -> Path:
    results_dir.mkdir(parents=True, exist_ok=True)
    output_path = results_dir / f"{run_name.replace(' ', '_')}.json"
    output = {
        "run": run_name,
        "results": [r.model_dump(mode="json") for r in results],
    }
    with open(output_path, "w") as f:
        json.dump(output, f, indent=2)
    logger.info("ledger results saved to %s", output_path)
    return output_path


def run_ledger(cases_path: Path, run_name: str, results_dir: Path | None = RESULTS_DIR,
               verbose: bool = True) -> list[CaseResult]:
    cases = load_cases(cases_path)
    if verbose:
        print(f"\nStarting ledger: '{run_name}'  ({len(cases)} cases)")

    results: list[CaseResult] = []
    for i, case in enumerate(cases, 1):
        if verbose:
            print(f"  [{i}/{len(cases)}] {case.name}...")
        results.append(run_case(case))

    if verbose:
        print_summary(results)
    if results_dir is not None:
        save_results(results, run_name, results_dir)
    return results


if __name__ == "__main__":  # pragma: no cover
    logging.basicConfig(level=logging.WARNING)
    run_ledger(cases_path=CASES_DIR / "errata.json", run_name="errata-ledger")
