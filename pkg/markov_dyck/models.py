from enum import StrEnum
from math import prod

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from markov_dyck.errors import InputError


class Sign(StrEnum):
    minus = "-"
    plus = "+"


class Reading(StrEnum):
    """Which version of a displayed formula is evaluated."""

    as_written = "as_written"
    corrected = "corrected"


class MultiplierClass(StrEnum):
    neutral = "neutral"
    negative = "negative"
    positive = "positive"


class HeightData(BaseModel):
    """The multiplicities (N_1, ..., N_{H+1}) of a rotationally homogeneous graph."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    counts: tuple[int, ...] = Field(min_length=1)

    @field_validator("counts")
    @classmethod
    def _check_counts(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        if any(n < 1 for n in v):
            raise ValueError(f"every count must be a positive integer, got {v}")
        if v[-1] < 2:
            raise ValueError(f"the last count must be at least 2, got {v[-1]}")
        return v

    @classmethod
    def of(cls, *counts: int) -> "HeightData":
        return cls(counts=counts)

    @classmethod
    def parse(cls, text: str) -> "HeightData":
        try:
            counts = tuple(int(part) for part in text.replace(" ", "").split(","))
            return cls(counts=counts)
        except (ValueError, ValidationError) as e:
            raise InputError(f"Invalid height data {text!r}: {e}") from e

    @property
    def height(self) -> int:
        return len(self.counts) - 1

    @property
    def size(self) -> int:
        return len(self.counts)

    @property
    def sigma(self) -> int:
        return sum(self.counts)

    @property
    def pi(self) -> int:
        return prod(self.counts)

    def n(self, h: int) -> int:
        """N_h with 1-based, cyclic indexing."""
        return self.counts[(h - 1) % self.size]

    def level_size(self, h: int) -> int:
        """Number of tree vertices at height h (the root is height 0)."""
        return prod(self.counts[:h])

    def is_constant(self) -> bool:
        return len(set(self.counts)) == 1

    def repeated(self, times: int) -> "HeightData":
        if times < 1:
            raise InputError(f"Repetition count must be at least 1, got {times}")
        return HeightData(counts=self.counts * times)

    def __str__(self) -> str:
        return "(" + ",".join(str(n) for n in self.counts) + ")"


class CensusRow(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int = Field(ge=1)
    total: int = Field(ge=0)
    neutral: int = Field(ge=0)
    negative: int = Field(ge=0)
    positive: int = Field(ge=0)

    @model_validator(mode="after")
    def _check_split(self) -> "CensusRow":
        if self.total != self.neutral + self.negative + self.positive:
            raise ValueError(
                f"total {self.total} is not the sum of the class counts at n={self.n}"
            )
        return self

    def count(self, which: MultiplierClass | None = None) -> int:
        if which is None:
            return self.total
        return int(getattr(self, which.value))


class PeriodicCensus(BaseModel):
    """Per-period counts of periodic points of a Markov-Dyck shift, split by multiplier class."""

    model_config = ConfigDict(extra="forbid")

    graph: str
    rows: list[CensusRow] = Field(default_factory=list)

    @property
    def n_max(self) -> int:
        return len(self.rows)

    def counts(self, which: MultiplierClass | None = None) -> list[int]:
        return [row.count(which) for row in self.rows]


class CheckKind(StrEnum):
    charpoly = "charpoly"
    entropy_formula = "entropy_formula"
    zeta = "zeta"
    pq_relation = "pq_relation"
    g0_closed_form = "g0_closed_form"
    two_level = "two_level"
    periodic_data = "periodic_data"
    constant_data = "constant_data"


class ErrataCase(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    check: CheckKind
    data: str
    order: int = Field(default=8, ge=1, le=24)
    repeats: int = Field(default=1, ge=1, le=4)
    tags: list[str] = Field(default_factory=list)

    @field_validator("data")
    @classmethod
    def _check_data(cls, v: str) -> str:
        HeightData.parse(v)
        return v

    def height_data(self) -> HeightData:
        return HeightData.parse(self.data)
