import numpy as np
import pytest

from markov_dyck.errors import InputError
from markov_dyck.graphs import build_rotational, dyck_graph, fibonacci_graph
from markov_dyck.models import HeightData
from markov_dyck.semigroup import (
    ZERO,
    Letter,
    alphabet,
    format_word,
    idempotent,
    is_admissible,
    multiply,
    parse_word,
    power,
    psi_sum,
    reduce,
    reduce_by_rewriting,
    time_reverse,
)


class TestLetters:
    def test_endpoints(self) -> None:
        g = build_rotational(HeightData.of(1, 2))
        f = g.edge("f(1)")
        assert Letter.minus(f).start == f.source
        assert Letter.minus(f).end == f.target
        assert Letter.plus(f).start == f.target
        assert Letter.plus(f).end == f.source

    def test_psi(self) -> None:
        e = dyck_graph(2).edge("e(1)")
        assert Letter.minus(e).psi == 1
        assert Letter.plus(e).psi == -1

    def test_alphabet_size(self) -> None:
        assert len(alphabet(build_rotational(HeightData.of(1, 2)))) == 6

    def test_parse_and_format(self) -> None:
        g = dyck_graph(2)
        word = parse_word(g, "e(1)- e(2)+")
        assert format_word(word) == "e(1)- e(2)+"

    def test_parse_rejects_unsigned_letter(self) -> None:
        with pytest.raises(InputError):
            parse_word(dyck_graph(2), "e(1)")


class TestReduction:
    def test_matching_pair_cancels_to_idempotent(self) -> None:
        g = dyck_graph(2)
        x = reduce(parse_word(g, "e(1)- e(1)+"))
        assert x == idempotent(g.vertices[0])
        assert str(x) == "1_V(0)"

    def test_mismatched_pair_is_zero(self) -> None:
        g = dyck_graph(2)
        assert reduce(parse_word(g, "e(1)- e(2)+")) == ZERO

    def test_plus_then_minus_is_normal_form(self) -> None:
        g = dyck_graph(2)
        x = reduce(parse_word(g, "e(1)+ e(2)-"))
        assert not x.is_zero
        assert x.spelling() == parse_word(g, "e(1)+ e(2)-")
        assert x.psi == 0

    def test_nested_cancellation(self) -> None:
        g = dyck_graph(2)
        x = reduce(parse_word(g, "e(2)- e(1)- e(1)+ e(2)+ e(1)-"))
        assert x.spelling() == parse_word(g, "e(1)-")

    def test_broken_path_is_zero(self) -> None:
        g = fibonacci_graph()
        assert not is_admissible(parse_word(g, "e12- e12-"))
        assert is_admissible(parse_word(g, "e12- e21-"))

    def test_zero_absorbs(self) -> None:
        g = dyck_graph(2)
        x = reduce(parse_word(g, "e(1)-"))
        assert multiply(ZERO, x) == ZERO
        assert multiply(x, ZERO) == ZERO

    def test_empty_word_rejected(self) -> None:
        with pytest.raises(InputError):
            reduce([])

    def test_zero_has_no_endpoints(self) -> None:
        with pytest.raises(InputError):
            _ = ZERO.start

    def test_power(self) -> None:
        g = dyck_graph(2)
        x = reduce(parse_word(g, "e(1)- e(2)-"))
        assert power(x, 3).spelling() == parse_word(g, "e(1)- e(2)- " * 2 + "e(1)- e(2)-")
        assert power(reduce(parse_word(g, "e(1)+ e(2)-")), 2) == ZERO

    def test_psi_sum_and_time_reverse(self) -> None:
        g = dyck_graph(2)
        word = parse_word(g, "e(1)- e(1)- e(2)+")
        assert psi_sum(word) == 1
        assert time_reverse(word) == parse_word(g, "e(2)- e(1)+ e(1)+")
        assert psi_sum(time_reverse(word)) == -1


class TestRewritingReference:
    @pytest.mark.parametrize("data", [(2,), (1, 2), (1, 1, 2)])
    def test_agrees_with_reduce_on_random_words(self, data: tuple[int, ...]) -> None:
        g = build_rotational(HeightData(counts=data))
        letters = alphabet(g)
        rng = np.random.default_rng(17)
        for _ in range(300):
            length = int(rng.integers(1, 9))
            word = [letters[int(i)] for i in rng.integers(len(letters), size=length)]
            assert reduce_by_rewriting(word, rng) == reduce(word)

    def test_agrees_on_admissible_words(self) -> None:
        g = dyck_graph(2)
        rng = np.random.default_rng(3)
        word = parse_word(g, "e(2)+ e(1)- e(1)- e(1)+ e(2)- e(2)+ e(1)+")
        assert reduce_by_rewriting(word, rng) == reduce(word)
        assert not reduce(word).is_zero

    def test_empty_word_rejected(self) -> None:
        with pytest.raises(InputError):
            reduce_by_rewriting([], np.random.default_rng(0))


def random_path_word(letters: tuple[Letter, ...], length: int,
                     rng: np.random.Generator) -> list[Letter]:
    word = [letters[int(rng.integers(len(letters)))]]
    while len(word) < length:
        nxt = [a for a in letters if a.start == word[-1].end]
        word.append(nxt[int(rng.integers(len(nxt)))])
    return word


class TestAlgebraicLaws:
    @pytest.mark.parametrize("data", [(2,), (1, 2), (2, 3)])
    def test_multiply_is_associative(self, data: tuple[int, ...]) -> None:
        letters = alphabet(build_rotational(HeightData(counts=data)))
        rng = np.random.default_rng(101)
        nonzero = 0
        for _ in range(1000):
            x, y, z = (reduce(random_path_word(letters, int(rng.integers(1, 5)), rng))
                       for _ in range(3))
            left = multiply(multiply(x, y), z)
            assert left == multiply(x, multiply(y, z))
            nonzero += not left.is_zero
        assert nonzero > 0

    @pytest.mark.parametrize("data", [(2,), (1, 2), (1, 1, 2)])
    def test_reduce_is_a_homomorphism(self, data: tuple[int, ...]) -> None:
        letters = alphabet(build_rotational(HeightData(counts=data)))
        rng = np.random.default_rng(5)
        for _ in range(500):
            u = random_path_word(letters, int(rng.integers(1, 6)), rng)
            v = random_path_word(letters, int(rng.integers(1, 6)), rng)
            assert reduce(u + v) == multiply(reduce(u), reduce(v))

    @pytest.mark.parametrize("data", [(2,), (1, 2), (1, 1, 2)])
    def test_time_reverse_is_an_anti_automorphism(self, data: tuple[int, ...]) -> None:
        letters = alphabet(build_rotational(HeightData(counts=data)))
        rng = np.random.default_rng(23)
        for _ in range(500):
            u = random_path_word(letters, int(rng.integers(1, 6)), rng)
            v = random_path_word(letters, int(rng.integers(1, 6)), rng)
            assert time_reverse(u + v) == time_reverse(v) + time_reverse(u)
            assert reduce(time_reverse(u + v)) == multiply(
                reduce(time_reverse(v)), reduce(time_reverse(u))
            )
            assert is_admissible(time_reverse(u + v)) == is_admissible(u + v)
            x = reduce(u + v)
            if not x.is_zero:
                assert reduce(time_reverse(u + v)).spelling() == time_reverse(x.spelling())
            assert time_reverse(time_reverse(u)) == u
