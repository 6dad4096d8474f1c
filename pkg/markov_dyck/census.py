import asyncio
import logging
import threading
from collections import defaultdict
from collections.abc import Sequence

import sympy

from markov_dyck.errors import BudgetExceeded, InputError
from markov_dyck.graphs import AdjacencyMatrix, DirectedGraph, Vertex
from markov_dyck.models import CensusRow, MultiplierClass, PeriodicCensus
from markov_dyck.semigroup import (
    Letter,
    SemigroupElement,
    Word,
    alphabet,
    letter_element,
    multiply,
    power,
    psi_sum,
    reduce,
)

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 5_000_000

_CLASS_SLOT = {
    MultiplierClass.neutral: 0,
    MultiplierClass.negative: 1,
    MultiplierClass.positive: 2,
}


def _classify_sum(total: int) -> MultiplierClass:
    if total < 0:
        return MultiplierClass.negative
    if total > 0:
        return MultiplierClass.positive
    return MultiplierClass.neutral


def is_periodic_word(word: Word) -> bool:
    """True iff the bi-infinite repetition of `word` is a point of the Markov-Dyck shift."""
    x = reduce(word)
    return not x.is_zero and not multiply(x, x).is_zero


def classify_word(word: Word) -> MultiplierClass:
    return _classify_sum(psi_sum(word))


def verify_power_criterion(word: Word, k_max: int) -> bool:
    if k_max < 2:
        raise InputError(f"Power bound must be at least 2, got {k_max}")
    x = reduce(word)
    all_nonzero = all(not power(x, k).is_zero for k in range(1, k_max + 1))
    return all_nonzero == is_periodic_word(word)


Table = list[list[int]]


class _Visits:
    """Admissible prefixes visited, counted once across every worker of a census."""

    def __init__(self, budget: int) -> None:
        self.budget = budget
        self.count = 0
        self._lock = threading.Lock()

    def add(self, k: int = 1) -> None:
        with self._lock:
            self.count += k
            if self.count > self.budget:
                raise BudgetExceeded(self.budget)


def _enumerate(
    g: DirectedGraph, first_letters: Sequence[Letter], n_max: int, visits: _Visits
) -> Table:
    """Count periodic words of each length 1..n_max that begin with one of `first_letters`."""
    by_start: dict[Vertex, list[tuple[Letter, SemigroupElement]]] = defaultdict(list)
    for letter in alphabet(g):
        by_start[letter.start].append((letter, letter_element(letter)))

    table = [[0, 0, 0] for _ in range(n_max)]
    stack = [(letter_element(letter), 1, letter.psi) for letter in first_letters]
    visits.add(len(stack))
    while stack:
        element, length, total = stack.pop()
        if not multiply(element, element).is_zero:
            table[length - 1][_CLASS_SLOT[_classify_sum(total)]] += 1
        if length == n_max:
            continue
        for letter, single in by_start[element.end]:
            child = multiply(element, single)
            if child.is_zero:
                continue
            visits.add()
            stack.append((child, length + 1, total + letter.psi))
    logger.debug("enumerated %d admissible prefixes of %s so far", visits.count, g.name)
    return table


def _to_census(g: DirectedGraph, table: Table) -> PeriodicCensus:
    rows = [
        CensusRow(
            n=n,
            total=sum(slots),
            neutral=slots[0],
            negative=slots[1],
            positive=slots[2],
        )
        for n, slots in enumerate(table, 1)
    ]
    return PeriodicCensus(graph=g.name, rows=rows)


def _merge(tables: Sequence[Table], n_max: int) -> Table:
    merged = [[0, 0, 0] for _ in range(n_max)]
    for table in tables:
        for n in range(n_max):
            for slot in range(3):
                merged[n][slot] += table[n][slot]
    return merged


def census(g: DirectedGraph, n_max: int, budget: int = DEFAULT_BUDGET) -> PeriodicCensus:
    if n_max < 1:
        raise InputError(f"n_max must be at least 1, got {n_max}")
    table = _enumerate(g, alphabet(g), n_max, _Visits(budget))
    result = _to_census(g, table)
    logger.info("census of %s to n=%d: %s", g.name, n_max, result.counts())
    return result


async def census_async(
    g: DirectedGraph, n_max: int, budget: int = DEFAULT_BUDGET
) -> PeriodicCensus:
    """Same counts as `census`, enumerated in worker threads split by first letter.

    The workers draw on one shared budget, so this raises exactly when `census` does.
    """
    if n_max < 1:
        raise InputError(f"n_max must be at least 1, got {n_max}")
    visits = _Visits(budget)
    tables = await asyncio.gather(
        *(asyncio.to_thread(_enumerate, g, [letter], n_max, visits) for letter in alphabet(g))
    )
    return _to_census(g, _merge(tables, n_max))


def edge_shift_traces(a: AdjacencyMatrix, n_max: int) -> list[int]:
    m = a.to_sympy()
    current = sympy.eye(a.size)
    traces = []
    for _ in range(n_max):
        current = current * m
        traces.append(int(current.trace()))
    return traces


def periodic_words(g: DirectedGraph, n: int) -> list[list[Letter]]:
    """All words of length n whose repetition is a periodic point (small n only)."""
    found: list[list[Letter]] = []
    by_start: dict[Vertex, list[Letter]] = defaultdict(list)
    for letter in alphabet(g):
        by_start[letter.start].append(letter)

    def extend(prefix: list[Letter], element: SemigroupElement) -> None:
        if len(prefix) == n:
            if not multiply(element, element).is_zero:
                found.append(list(prefix))
            return
        for letter in by_start[element.end]:
            child = multiply(element, letter_element(letter))
            if not child.is_zero:
                prefix.append(letter)
                extend(prefix, child)
                prefix.pop()

    for letter in alphabet(g):
        extend([letter], letter_element(letter))
    return found
