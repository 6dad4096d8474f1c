import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, TypeVar

import numpy as np

from markov_dyck.errors import InputError
from markov_dyck.graphs import (
    DirectedGraph,
    Edge,
    EdgeKind,
    build_companion,
    build_rotational,
)
from markov_dyck.models import HeightData, Sign
from markov_dyck.semigroup import Letter, Word, format_word, is_admissible

logger = logging.getLogger(__name__)

DESCENT_BIAS = 0.75

T = TypeVar("T")

WindowX = list[Edge]
DecodedWindow = list[Letter | None]


def phi(edge: Edge) -> int:
    if edge.kind == EdgeKind.descent:
        return 1
    if edge.kind == EdgeKind.ascent:
        return -1
    raise InputError(f"{edge.label} is not an edge of a companion graph")


def psi(letter: Letter) -> int:
    return letter.psi


def satisfies_condition(window: Sequence[T], weight: Callable[[T], int], depth: int) -> bool:
    """Whether the last `depth` symbols of `window` close one level below the end.

    Symbols are weighed backwards from the end of the window. The partial sums over the
    nearest 1, ..., depth-1 of them stay >= 0 and the sum over all `depth` is exactly -1,
    so the deciding symbol is the one `depth` places from the end. Anything earlier in
    the window is ignored.
    """
    if depth < 1:
        raise InputError(f"Depth must be at least 1, got {depth}")
    if len(window) < depth:
        raise InputError(f"Window of length {len(window)} does not reach back {depth} positions")
    total = 0
    for m in range(1, depth + 1):
        total += weight(window[-m])
        if m < depth and total < 0:
            return False
    return total == -1


def return_times(x: Sequence[Edge], k_max: int) -> list[int | None]:
    """I_k = least m with phi-sum of the last m letters equal to k; None past the window."""
    found: dict[int, int] = {}
    total = 0
    for m in range(1, len(x) + 1):
        total += phi(x[-m])
        if 1 <= total <= k_max and total not in found:
            found[total] = m
    return [found.get(k) for k in range(1, k_max + 1)]


def check_path(x: Sequence[Edge]) -> None:
    for i, (a, b) in enumerate(zip(x, x[1:])):
        if a.target != b.source:
            raise InputError(f"{a.label} and {b.label} at position {i} do not form a path")


# ---------------------------------------------------------------------------
# The one-block code and its decoder
# ---------------------------------------------------------------------------

@lru_cache(maxsize=32)
def _graphs(data: HeightData) -> tuple[DirectedGraph, DirectedGraph]:
    return build_rotational(data), build_companion(data)[0]


def omega_letter(data: HeightData, letter: Letter) -> Edge:
    _, companion = _graphs(data)
    edge = letter.edge
    height = len(edge.index)
    if edge.kind not in (EdgeKind.tree, EdgeKind.reentry):
        raise InputError(f"{edge.label} is not an edge of {companion.name[1:]}")
    if letter.sign == Sign.minus:
        return companion.find(EdgeKind.descent, (height, edge.index[-1]))
    return companion.find(EdgeKind.ascent, (height,))


def omega_encode(data: HeightData, y: Word) -> WindowX:
    if not y or not is_admissible(y):
        raise InputError(f"Not an admissible word: {format_word(y)}")
    return [omega_letter(data, letter) for letter in y]


def omega_decode(data: HeightData, x: Sequence[Edge]) -> DecodedWindow:
    """Recover the letters of M D(G(N)) from a companion path, left to right.

    Unmatched descents are kept on a stack; a position is determined once the stack holds
    the tree address the letter needs. The stack before position i is the return-time
    table of x[:i] read off in one pass: it holds at least k entries exactly when
    `return_times(x[:i], k)[k - 1]` is set, and its k-th entry from the top is the
    address symbol of the descent that many letters back.
    """
    check_path(x)
    tree, _ = _graphs(data)
    top = data.size
    stack: list[int] = []
    decoded: DecodedWindow = []
    for edge in x:
        level = edge.index[0]
        if edge.kind == EdgeKind.descent:
            n = edge.index[1]
            need = level - 1
            letter = None
            if len(stack) >= need:
                address = tuple(stack[len(stack) - need:])
                kind = EdgeKind.reentry if level == top else EdgeKind.tree
                letter = Letter.minus(tree.find(kind, address + (n,)))
            decoded.append(letter)
            stack.append(n)
        elif edge.kind == EdgeKind.ascent:
            letter = None
            if len(stack) >= level:
                address = tuple(stack[len(stack) - level:])
                kind = EdgeKind.reentry if level == top else EdgeKind.tree
                letter = Letter.plus(tree.find(kind, address))
            decoded.append(letter)
            if stack:
                stack.pop()
        else:
            raise InputError(f"{edge.label} is not an edge of a companion graph")
    return decoded


# ---------------------------------------------------------------------------
# Height reduction for periodic data
# ---------------------------------------------------------------------------

def reduce_height(base: HeightData, height: int) -> int:
    return (height - 1) % base.size + 1


def theta_map(base: HeightData, repeats: int, x_tilde: Sequence[Edge]) -> WindowX:
    if repeats < 1:
        raise InputError(f"Repetition count must be at least 1, got {repeats}")
    _, companion = _graphs(base)
    out = []
    for edge in x_tilde:
        index = (reduce_height(base, edge.index[0]),) + edge.index[1:]
        out.append(companion.find(edge.kind, index))
    return out


def _lifts_uniquely(lifted: list[Edge], edges: list[Edge]) -> bool:
    return sorted(e.label for e in lifted) == sorted(e.label for e in edges)


def resolving_check(base: HeightData, repeats: int) -> bool:
    """Every edge at an image vertex lifts uniquely, both leaving and entering."""
    big, _ = build_companion(base.repeated(repeats))
    _, small = _graphs(base)
    for vertex in big.vertices:
        below = small.vertices[reduce_height(base, vertex.index[0]) - 1]
        for lifts, edges in (
            (big.out_edges(vertex), small.out_edges(below)),
            (big.in_edges(vertex), small.in_edges(below)),
        ):
            if not _lifts_uniquely(theta_map(base, repeats, lifts), edges):
                logger.info("lift check failed at %s of %s", vertex.label, big.name)
                return False
    return True


# ---------------------------------------------------------------------------
# Random admissible windows and round trips
# ---------------------------------------------------------------------------

def random_admissible_word(data: HeightData, length: int, rng: np.random.Generator,
                           descent_bias: float = DESCENT_BIAS) -> list[Letter]:
    """A reduced admissible word: a walk that mostly descends and retracts only its own steps."""
    tree, _ = _graphs(data)
    vertex = tree.vertices[int(rng.integers(len(tree.vertices)))]
    open_edges: list[Edge] = []
    word: list[Letter] = []
    for _ in range(length):
        if rng.random() < descent_bias:
            choices = tree.out_edges(vertex)
            edge = choices[int(rng.integers(len(choices)))]
            open_edges.append(edge)
            word.append(Letter.minus(edge))
            vertex = edge.target
            continue
        if open_edges:
            edge = open_edges.pop()
        else:
            choices = tree.in_edges(vertex)
            edge = choices[int(rng.integers(len(choices)))]
        word.append(Letter.plus(edge))
        vertex = edge.source
    return word


@dataclass
class RoundTripReport:
    data: str
    windows: int
    interior: int = 0
    determined: int = 0
    disagreements: list[dict[str, Any]] = field(default_factory=list)

    @property
    def determined_fraction(self) -> float:
        return self.determined / self.interior if self.interior else 0.0

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def to_dict(self) -> dict[str, Any]:
        return {
            "data": self.data,
            "windows": self.windows,
            "interior_positions": self.interior,
            "determined_positions": self.determined,
            "determined_fraction": round(self.determined_fraction, 6),
            "disagreements": self.disagreements,
        }


def round_trip_check(data: HeightData, windows: int, length: int, seed: int) -> RoundTripReport:
    if windows < 1 or length < 1:
        raise InputError(f"Need at least one window of length >= 1, got {windows} x {length}")
    rng = np.random.default_rng(seed)
    report = RoundTripReport(str(data), windows)
    for w in range(windows):
        y = random_admissible_word(data, length, rng)
        decoded = omega_decode(data, omega_encode(data, y))
        for i, (original, recovered) in enumerate(zip(y, decoded)):
            if i >= length // 4:
                report.interior += 1
                report.determined += recovered is not None
            if recovered is not None and recovered != original:
                report.disagreements.append(
                    {"window": w, "position": i, "letter": str(original),
                     "decoded": str(recovered)}
                )
    logger.info("round trip over %d windows of %s: %.3f determined", windows, data,
                report.determined_fraction)
    return report
