import numpy as np
import pytest

from markov_dyck.conjugacy import (
    check_path,
    omega_decode,
    omega_encode,
    omega_letter,
    phi,
    psi,
    random_admissible_word,
    reduce_height,
    resolving_check,
    return_times,
    round_trip_check,
    satisfies_condition,
    theta_map,
)
from markov_dyck.errors import InputError
from markov_dyck.graphs import DirectedGraph, Edge, build_companion, build_rotational, dyck_graph
from markov_dyck.models import HeightData
from markov_dyck.semigroup import Letter, is_admissible, parse_word

ONE_TWO = HeightData.of(1, 2)


def companion(data: HeightData = ONE_TWO) -> DirectedGraph:
    return build_companion(data)[0]


def window(*labels: str, data: HeightData = ONE_TWO) -> list[Edge]:
    g = companion(data)
    return [g.edge(label) for label in labels]


class TestWeights:
    def test_phi(self) -> None:
        assert phi(companion().edge("c-2(1)")) == 1
        assert phi(companion().edge("c+2")) == -1

    def test_phi_rejects_tree_edges(self) -> None:
        with pytest.raises(InputError):
            phi(build_rotational(ONE_TWO).edge("f(1)"))

    def test_psi(self) -> None:
        g = dyck_graph(2)
        assert psi(Letter.minus(g.edge("e(1)"))) == 1


class TestCondition:
    def test_window_satisfying_condition(self) -> None:
        g = dyck_graph(2)
        letters = parse_word(g, "e(2)+ e(1)+ e(1)-")
        assert satisfies_condition(letters, psi, 3)

    def test_depth_counts_the_deciding_symbol(self) -> None:
        letters = parse_word(dyck_graph(2), "e(1)- e(2)+ e(1)+ e(1)-")
        assert not satisfies_condition(letters, psi, 2)
        assert satisfies_condition(letters, psi, 3)
        assert not satisfies_condition(letters, psi, 4)

    def test_early_negative_sum_fails(self) -> None:
        letters = parse_word(dyck_graph(2), "e(1)+ e(1)+")
        assert not satisfies_condition(letters, psi, 2)

    def test_all_descents_fail(self) -> None:
        letters = parse_word(dyck_graph(2), "e(1)- e(2)- e(1)-")
        assert not satisfies_condition(letters, psi, 3)

    def test_short_window_rejected(self) -> None:
        with pytest.raises(InputError):
            satisfies_condition(parse_word(dyck_graph(2), "e(1)-"), psi, 2)

    def test_depth_must_be_positive(self) -> None:
        with pytest.raises(InputError):
            satisfies_condition(parse_word(dyck_graph(2), "e(1)-"), psi, 0)

    def test_companion_weights(self) -> None:
        assert satisfies_condition(window("c+1", "c-1(1)", "c+2"), phi, 1)


class TestReturnTimes:
    def test_descents_at_the_end(self) -> None:
        assert return_times(window("c+1", "c-1(1)", "c-2(1)"), 3) == [1, 2, None]

    def test_balanced_window_never_returns(self) -> None:
        x = window("c-1(1)", "c-2(1)", "c+2", "c+1")
        assert return_times(x, 2) == [None, None]

    def test_all_ascents_undetermined(self) -> None:
        assert return_times(window("c+2", "c+1", "c+2"), 3) == [None, None, None]


class TestOneBlockCode:
    def test_letters(self) -> None:
        g = build_rotational(ONE_TWO)
        assert omega_letter(ONE_TWO, Letter.minus(g.edge("f(1)"))).label == "c-1(1)"
        assert omega_letter(ONE_TWO, Letter.minus(g.edge("e(1,2)"))).label == "c-2(2)"
        assert omega_letter(ONE_TWO, Letter.plus(g.edge("e(1,2)"))).label == "c+2"
        assert omega_letter(ONE_TWO, Letter.plus(g.edge("f(1)"))).label == "c+1"

    def test_rejects_foreign_letters(self) -> None:
        with pytest.raises(InputError):
            omega_letter(ONE_TWO, Letter.minus(companion().edge("c+1")))

    def test_encode_then_decode(self) -> None:
        y = parse_word(build_rotational(ONE_TWO), "f(1)- e(1,1)- e(1,1)+ f(1)+")
        x = omega_encode(ONE_TWO, y)
        assert [e.label for e in x] == ["c-1(1)", "c-2(1)", "c+2", "c+1"]
        assert omega_decode(ONE_TWO, x) == y

    def test_encode_rejects_inadmissible(self) -> None:
        g = build_rotational(ONE_TWO)
        with pytest.raises(InputError):
            omega_encode(ONE_TWO, parse_word(g, "f(1)- f(1)-"))
        with pytest.raises(InputError):
            omega_encode(ONE_TWO, [])

    def test_ascent_without_history_is_undetermined(self) -> None:
        assert omega_decode(ONE_TWO, window("c+2")) == [None]

    def test_descent_needs_its_address(self) -> None:
        decoded = omega_decode(ONE_TWO, window("c-2(2)", "c+2", "c-2(1)"))
        assert decoded == [None, None, None]

    def test_decode_rejects_broken_path(self) -> None:
        with pytest.raises(InputError):
            omega_decode(ONE_TWO, window("c-1(1)", "c-1(1)"))
        with pytest.raises(InputError):
            check_path(window("c+1", "c+1"))


class TestDecoderStack:
    @pytest.mark.parametrize("counts", [(2,), (1, 2), (1, 1, 2)])
    def test_agrees_with_return_times(self, counts: tuple[int, ...]) -> None:
        data = HeightData(counts=counts)
        rng = np.random.default_rng(11)
        for _ in range(30):
            x = omega_encode(data, random_admissible_word(data, 24, rng))
            decoded = omega_decode(data, x)
            for i, (edge, letter) in enumerate(zip(x, decoded)):
                level = edge.index[0]
                need = level - 1 if phi(edge) == 1 else level
                times = return_times(x[:i], need) if need else []
                assert (letter is not None) == all(t is not None for t in times)
                if letter is not None and need:
                    address = tuple(x[i - times[k]].index[1] for k in reversed(range(need)))
                    assert letter.edge.index[:need] == address


class TestHeightReduction:
    def test_reduce_height(self) -> None:
        assert [reduce_height(ONE_TWO, h) for h in range(1, 5)] == [1, 2, 1, 2]

    def test_theta_map(self) -> None:
        big = window("c-3(1)", "c+4", "c-2(2)", data=ONE_TWO.repeated(2))
        assert [e.label for e in theta_map(ONE_TWO, 2, big)] == ["c-1(1)", "c+2", "c-2(2)"]

    def test_theta_identity_for_one_repeat(self) -> None:
        x = window("c-1(1)", "c-2(1)", "c+2")
        assert theta_map(ONE_TWO, 1, x) == x

    def test_theta_needs_repeats(self) -> None:
        with pytest.raises(InputError):
            theta_map(ONE_TWO, 0, [])

    @pytest.mark.parametrize(
        ("counts", "repeats"), [((1, 2), 2), ((1, 2), 3), ((1, 1, 2), 2), ((2,), 1), ((2,), 3)]
    )
    def test_resolving(self, counts: tuple[int, ...], repeats: int) -> None:
        assert resolving_check(HeightData(counts=counts), repeats)


class TestRoundTrip:
    def test_random_words_are_admissible(self) -> None:
        rng = np.random.default_rng(5)
        for _ in range(20):
            word = random_admissible_word(ONE_TWO, 30, rng)
            assert len(word) == 30
            assert is_admissible(word)

    @pytest.mark.parametrize("counts", [(2,), (1, 2), (1, 1, 2)])
    def test_round_trip(self, counts: tuple[int, ...]) -> None:
        report = round_trip_check(HeightData(counts=counts), 100, 80, seed=1)
        assert report.ok
        assert report.interior == 100 * 60
        assert report.determined_fraction >= 0.9

    @pytest.mark.slow
    @pytest.mark.parametrize("length", [20, 100, 200])
    @pytest.mark.parametrize("counts", [(2,), (1, 2), (1, 1, 2)])
    def test_round_trip_thousand_windows(self, counts: tuple[int, ...], length: int) -> None:
        report = round_trip_check(HeightData(counts=counts), 1000, length, seed=2)
        assert report.ok
        if length >= 100:
            assert report.determined_fraction >= 0.9

    def test_report_dict(self) -> None:
        payload = round_trip_check(ONE_TWO, 5, 20, seed=0).to_dict()
        assert payload["data"] == "(1,2)"
        assert payload["disagreements"] == []

    def test_needs_windows(self) -> None:
        with pytest.raises(InputError):
            round_trip_check(ONE_TWO, 0, 10, seed=0)
