from typing import Any

import pytest
from pydantic import ValidationError

from markov_dyck.errors import InputError
from markov_dyck.models import (
    CensusRow,
    CheckKind,
    ErrataCase,
    HeightData,
    MultiplierClass,
    PeriodicCensus,
)


def make_row(**kwargs: Any) -> CensusRow:
    defaults = dict(n=2, total=12, neutral=4, negative=4, positive=4)
    return CensusRow(**{**defaults, **kwargs})


def make_case(**kwargs: Any) -> ErrataCase:
    defaults = dict(name="case", check="zeta", data="1,2")
    return ErrataCase(**{**defaults, **kwargs})


class TestHeightData:
    def test_derived_quantities(self) -> None:
        data = HeightData.of(1, 2)
        assert data.height == 1
        assert data.size == 2
        assert data.sigma == 3
        assert data.pi == 2

    def test_cyclic_indexing(self) -> None:
        data = HeightData.of(1, 2)
        assert data.n(1) == 1
        assert data.n(2) == 2
        assert data.n(3) == 1

    def test_level_sizes(self) -> None:
        data = HeightData.of(2, 3, 2)
        assert [data.level_size(h) for h in range(3)] == [1, 2, 6]

    def test_str(self) -> None:
        assert str(HeightData.of(1, 1, 2)) == "(1,1,2)"

    def test_parse_accepts_spaces(self) -> None:
        assert HeightData.parse("1, 2") == HeightData.of(1, 2)

    def test_parse_rejects_garbage(self) -> None:
        with pytest.raises(InputError):
            HeightData.parse("1,x")

    def test_last_count_must_exceed_one(self) -> None:
        with pytest.raises(ValidationError):
            HeightData.of(2, 1)

    def test_counts_must_be_positive(self) -> None:
        with pytest.raises(ValidationError):
            HeightData.of(0, 2)

    def test_empty_counts_rejected(self) -> None:
        with pytest.raises(ValidationError):
            HeightData(counts=())

    def test_repeated(self) -> None:
        assert HeightData.of(1, 2).repeated(2) == HeightData.of(1, 2, 1, 2)

    def test_repeated_needs_positive_count(self) -> None:
        with pytest.raises(InputError):
            HeightData.of(1, 2).repeated(0)

    def test_is_constant(self) -> None:
        assert HeightData.of(3, 3).is_constant()
        assert not HeightData.of(1, 3).is_constant()

    def test_hashable(self) -> None:
        assert len({HeightData.of(1, 2), HeightData.of(1, 2)}) == 1


class TestCensusRow:
    def test_valid_row(self) -> None:
        row = make_row()
        assert row.count() == 12
        assert row.count(MultiplierClass.neutral) == 4

    def test_total_must_match_classes(self) -> None:
        with pytest.raises(ValidationError):
            make_row(total=11)

    def test_negative_counts_rejected(self) -> None:
        with pytest.raises(ValidationError):
            make_row(neutral=-1, total=7)

    def test_extra_field_rejected(self) -> None:
        with pytest.raises(ValidationError):
            make_row(extra="nope")


class TestPeriodicCensus:
    def test_counts_by_class(self) -> None:
        census = PeriodicCensus(
            graph="G(2)",
            rows=[make_row(n=1, total=4, neutral=0, negative=2, positive=2), make_row()],
        )
        assert census.n_max == 2
        assert census.counts() == [4, 12]
        assert census.counts(MultiplierClass.positive) == [2, 4]


class TestErrataCase:
    def test_defaults(self) -> None:
        case = make_case()
        assert case.order == 8
        assert case.repeats == 1
        assert case.check == CheckKind.zeta
        assert case.height_data() == HeightData.of(1, 2)

    def test_invalid_data(self) -> None:
        with pytest.raises(ValidationError):
            make_case(data="1,1")

    def test_unknown_check(self) -> None:
        with pytest.raises(ValidationError):
            make_case(check="fuzzy")

    def test_order_bounds(self) -> None:
        with pytest.raises(ValidationError):
            make_case(order=0)
        with pytest.raises(ValidationError):
            make_case(order=25)
