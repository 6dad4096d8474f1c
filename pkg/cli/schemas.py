from enum import StrEnum
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, field_validator

from markov_dyck.census import DEFAULT_BUDGET
from markov_dyck.errors import InputError
from markov_dyck.graphs import DirectedGraph, named_graph
from markov_dyck.models import HeightData

LOG_LEVELS = {"DEBUG", "INFO", "WARNING", "ERROR"}


class Command(StrEnum):
    graph = "graph"
    entropy = "entropy"
    zeta = "zeta"
    census = "census"
    conjugacy = "conjugacy"
    sample = "sample"
    errata = "errata"


class OutputFormat(StrEnum):
    json = "json"
    csv = "csv"
    text = "text"
    dot = "dot"


# ---------------------------------------------------------------------------
# Run configuration
# ---------------------------------------------------------------------------

class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    command: Command
    data: str | None = None
    graph: str | None = None
    n: int = Field(default=8, ge=1, le=16)
    order: int = Field(default=8, ge=1, le=24)
    period: int = Field(default=1, ge=1, le=8)
    seed: int = Field(default=0, ge=0)
    steps: int = Field(default=100_000, ge=1, le=10_000_000)
    length: int = Field(default=40, ge=1, le=100_000)
    windows: int = Field(default=200, ge=1, le=100_000)
    budget: int = Field(default=DEFAULT_BUDGET, ge=1)
    format: OutputFormat = OutputFormat.json
    cases: Path | None = None
    output: Path | None = None
    log_level: str = "WARNING"

    @field_validator("data")
    @classmethod
    def _check_data(cls, v: str | None) -> str | None:
        if v is not None:
            HeightData.parse(v)
        return v

    @field_validator("graph")
    @classmethod
    def _check_graph(cls, v: str | None) -> str | None:
        if v is not None:
            named_graph(v)
        return v

    @field_validator("log_level")
    @classmethod
    def _check_log_level(cls, v: str) -> str:
        level = v.upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"log_level must be one of {sorted(LOG_LEVELS)}")
        return level

    def height_data(self) -> HeightData:
        if self.data is not None:
            return HeightData.parse(self.data)
        if self.graph is not None and self.graph.strip().lower() != "fibonacci":
            return HeightData.parse(self.graph.strip().lower().removeprefix("dyck:"))
        raise InputError(f"Command '{self.command}' needs --data")

    def directed_graph(self) -> DirectedGraph:
        if self.graph is not None:
            return named_graph(self.graph)
        if self.data is not None:
            return named_graph(self.data)
        raise InputError(f"Command '{self.command}' needs --graph or --data")
