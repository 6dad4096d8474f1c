from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from markov_dyck.errors import InputError
from markov_dyck.graphs import DirectedGraph, Edge, Vertex
from markov_dyck.models import Sign


@dataclass(frozen=True, order=True)
class Letter:
    edge: Edge
    sign: Sign

    @classmethod
    def minus(cls, edge: Edge) -> "Letter":
        return cls(edge, Sign.minus)

    @classmethod
    def plus(cls, edge: Edge) -> "Letter":
        return cls(edge, Sign.plus)

    @property
    def start(self) -> Vertex:
        return self.edge.source if self.sign == Sign.minus else self.edge.target

    @property
    def end(self) -> Vertex:
        return self.edge.target if self.sign == Sign.minus else self.edge.source

    @property
    def psi(self) -> int:
        return 1 if self.sign == Sign.minus else -1

    def inverse(self) -> "Letter":
        return Letter(self.edge, Sign.plus if self.sign == Sign.minus else Sign.minus)

    def __str__(self) -> str:
        return f"{self.edge.label}{self.sign.value}"


Word = Sequence[Letter]


@dataclass(frozen=True)
class SemigroupElement:
    """Zero (apex is None), or p_k+ ... p_1+ q_1- ... q_l- for paths p, q leaving `apex`."""

    apex: Vertex | None
    up: tuple[Edge, ...] = ()
    down: tuple[Edge, ...] = ()

    @property
    def is_zero(self) -> bool:
        return self.apex is None

    @property
    def start(self) -> Vertex:
        if self.apex is None:
            raise InputError("The zero element has no endpoints")
        return self.up[-1].target if self.up else self.apex

    @property
    def end(self) -> Vertex:
        if self.apex is None:
            raise InputError("The zero element has no endpoints")
        return self.down[-1].target if self.down else self.apex

    @property
    def psi(self) -> int:
        return len(self.down) - len(self.up)

    def spelling(self) -> list[Letter]:
        return [Letter.plus(p) for p in reversed(self.up)] + [Letter.minus(q) for q in self.down]

    def __str__(self) -> str:
        if self.apex is None:
            return "0"
        if not self.up and not self.down:
            return f"1_{self.apex.label}"
        plus = " ".join(str(x) for x in self.spelling()[: len(self.up)])
        minus = " ".join(str(x) for x in self.spelling()[len(self.up):])
        return " · ".join(part for part in (plus, minus) if part)


ZERO = SemigroupElement(None)


def idempotent(v: Vertex) -> SemigroupElement:
    return SemigroupElement(v)


def letter_element(letter: Letter) -> SemigroupElement:
    if letter.sign == Sign.minus:
        return SemigroupElement(letter.edge.source, (), (letter.edge,))
    return SemigroupElement(letter.edge.source, (letter.edge,), ())


def multiply(x: SemigroupElement, y: SemigroupElement) -> SemigroupElement:
    if x.apex is None or y.apex is None:
        return ZERO
    if x.end != y.start:
        return ZERO
    down, up = x.down, y.up
    i, j = len(down), len(up)
    while i and j:
        if down[i - 1] != up[j - 1]:
            return ZERO
        i -= 1
        j -= 1
    if j:
        return SemigroupElement(y.apex, up[:j] + x.up, y.down)
    if i:
        return SemigroupElement(x.apex, x.up, down[:i] + y.down)
    return SemigroupElement(x.apex, x.up, y.down)


def reduce(word: Word) -> SemigroupElement:
    if not word:
        raise InputError("Cannot reduce the empty word")
    result = letter_element(word[0])
    for letter in word[1:]:
        result = multiply(result, letter_element(letter))
        if result.is_zero:
            return ZERO
    return result


def power(x: SemigroupElement, k: int) -> SemigroupElement:
    result = x
    for _ in range(k - 1):
        result = multiply(result, x)
    return result


def is_admissible(word: Word) -> bool:
    return not reduce(word).is_zero


def psi_sum(word: Word) -> int:
    return sum(letter.psi for letter in word)


def time_reverse(word: Word) -> list[Letter]:
    return [letter.inverse() for letter in reversed(word)]


def alphabet(g: DirectedGraph) -> tuple[Letter, ...]:
    return tuple(Letter.minus(e) for e in g.edges) + tuple(Letter.plus(e) for e in g.edges)


def parse_letter(g: DirectedGraph, token: str) -> Letter:
    if len(token) < 2 or token[-1] not in "+-":
        raise InputError(f"Letter must end in '+' or '-': {token!r}")
    return Letter(g.edge(token[:-1]), Sign(token[-1]))


def parse_word(g: DirectedGraph, text: str) -> list[Letter]:
    return [parse_letter(g, token) for token in text.split()]


def format_word(word: Word) -> str:
    return " ".join(str(letter) for letter in word)


def _element_from_letters(tokens: list[Letter]) -> SemigroupElement:
    for a, b in zip(tokens, tokens[1:]):
        if a.end != b.start:
            return ZERO
    ups = [t.edge for t in tokens if t.sign == Sign.plus]
    downs = [t.edge for t in tokens if t.sign == Sign.minus]
    apex = ups[-1].source if ups else downs[0].source
    return SemigroupElement(apex, tuple(reversed(ups)), tuple(downs))


def reduce_by_rewriting(word: Word, rng: np.random.Generator) -> SemigroupElement:
    """Reference reducer: rewrite randomly chosen redexes until none is left.

    Tokens are letters or vertex idempotents; a redex is an adjacent f-g+ pair or an
    idempotent next to any token.
    """
    if not word:
        raise InputError("Cannot reduce the empty word")
    tokens: list[Letter | Vertex] = list(word)
    while True:
        redexes = []
        for i in range(len(tokens) - 1):
            a, b = tokens[i], tokens[i + 1]
            if isinstance(a, Vertex) or isinstance(b, Vertex):
                redexes.append(i)
            elif a.sign == Sign.minus and b.sign == Sign.plus:
                redexes.append(i)
        if not redexes:
            break
        i = redexes[int(rng.integers(len(redexes)))]
        a, b = tokens[i], tokens[i + 1]
        replacement: Letter | Vertex
        if isinstance(a, Vertex) and isinstance(b, Vertex):
            if a != b:
                return ZERO
            replacement = a
        elif isinstance(a, Vertex):
            assert isinstance(b, Letter)
            if a != b.start:
                return ZERO
            replacement = b
        elif isinstance(b, Vertex):
            if a.end != b:
                return ZERO
            replacement = a
        else:
            if a.edge != b.edge:
                return ZERO
            replacement = a.edge.source
        tokens[i : i + 2] = [replacement]
    if len(tokens) == 1 and isinstance(tokens[0], Vertex):
        return idempotent(tokens[0])
    letters = [t for t in tokens if isinstance(t, Letter)]
    return _element_from_letters(letters)
