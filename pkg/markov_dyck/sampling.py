import logging
import math
from collections import Counter
from collections.abc import Hashable, Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from markov_dyck.conjugacy import omega_decode, phi
from markov_dyck.errors import InputError
from markov_dyck.graphs import AdjacencyMatrix, DirectedGraph, Edge, build_companion
from markov_dyck.models import HeightData
from markov_dyck.semigroup import Letter, is_admissible, time_reverse
from markov_dyck.spectra import perron_root

logger = logging.getLogger(__name__)

GENERATOR = "PCG64"
ADMISSIBILITY_CHUNK = 512
MAX_BLOCK = 4


@dataclass(frozen=True)
class ParryChain:
    """Maximal-entropy Markov chain on the edges of a graph with adjacency `matrix`."""

    matrix: AdjacencyMatrix
    perron: float
    right: np.ndarray
    stationary: np.ndarray

    def edge_probability(self, source: int, target: int) -> float:
        """Probability of each single edge from `source` to `target`."""
        return float(self.right[target] / (self.perron * self.right[source]))

    def transition_matrix(self) -> np.ndarray:
        a = np.array(self.matrix.rows, dtype=float)
        return a * self.right[np.newaxis, :] / (self.perron * self.right[:, np.newaxis])


def _perron_vector(a: np.ndarray) -> np.ndarray:
    values, vectors = np.linalg.eig(a)
    k = int(np.argmax(values.real))
    v = np.abs(vectors[:, k].real)
    return v / v.sum()


def parry_chain(a: AdjacencyMatrix) -> ParryChain:
    root = perron_root(a)
    m = np.array(a.rows, dtype=float)
    right = _perron_vector(m)
    left = _perron_vector(m.T)
    stationary = left * right
    return ParryChain(a, float(root.midpoint), right, stationary / stationary.sum())


def parry_entropy_rate(chain: ParryChain) -> float:
    rate = 0.0
    for i, row in enumerate(chain.matrix.rows):
        for j, count in enumerate(row):
            if count:
                p = chain.edge_probability(i, j)
                rate -= chain.stationary[i] * count * p * math.log(p)
    return rate


def stationary_edge_measure(chain: ParryChain, graph: DirectedGraph) -> dict[str, float]:
    position = {v: i for i, v in enumerate(graph.vertices)}
    return {
        e.label: float(chain.stationary[position[e.source]])
        * chain.edge_probability(position[e.source], position[e.target])
        for e in graph.edges
    }


@dataclass
class SampledPath:
    edges: list[Edge]
    seed: int
    generator: str = GENERATOR

    def labels(self) -> list[str]:
        return [e.label for e in self.edges]


def sample_path(chain: ParryChain, graph: DirectedGraph, length: int, seed: int) -> SampledPath:
    if length < 1:
        raise InputError(f"Path length must be at least 1, got {length}")
    if graph.adjacency() != chain.matrix:
        raise InputError(f"Chain was not built from the adjacency matrix of {graph.name}")
    position = {v: i for i, v in enumerate(graph.vertices)}
    choices: list[tuple[list[Edge], np.ndarray]] = []
    for v in graph.vertices:
        out = graph.out_edges(v)
        probs = np.array([chain.edge_probability(position[v], position[e.target]) for e in out])
        choices.append((out, np.cumsum(probs / probs.sum())))

    rng = np.random.Generator(np.random.PCG64(seed))
    state = int(np.searchsorted(np.cumsum(chain.stationary), rng.random(), side="right"))
    state = min(state, len(graph.vertices) - 1)
    path: list[Edge] = []
    for u in rng.random(length):
        out, cumulative = choices[state]
        k = min(int(np.searchsorted(cumulative, u, side="right")), len(out) - 1)
        edge = out[k]
        path.append(edge)
        state = position[edge.target]
    return SampledPath(path, seed)


def edge_frequencies(path: SampledPath) -> dict[str, float]:
    counts = Counter(e.label for e in path.edges)
    return {label: c / len(path.edges) for label, c in sorted(counts.items())}


def block_entropy(symbols: Sequence[Hashable], k: int) -> float:
    """Plug-in entropy of the empirical distribution of k-blocks."""
    if k < 1 or len(symbols) < k:
        raise InputError(f"Cannot form blocks of length {k} from {len(symbols)} symbols")
    blocks = Counter(tuple(symbols[i:i + k]) for i in range(len(symbols) - k + 1))
    total = sum(blocks.values())
    return -sum(c / total * math.log(c / total) for c in blocks.values())


def entropy_estimate(symbols: Sequence[Hashable], k: int) -> float:
    """Conditional block entropy H_{k+1} - H_k, an estimate of the entropy rate."""
    return block_entropy(symbols, k + 1) - block_entropy(symbols, k)


def _determined_runs(decoded: Sequence[Letter | None]) -> list[list[Letter]]:
    runs: list[list[Letter]] = []
    current: list[Letter] = []
    for letter in decoded:
        if letter is None:
            if current:
                runs.append(current)
            current = []
        else:
            current.append(letter)
    if current:
        runs.append(current)
    return runs


@dataclass
class MMEReport:
    data: str
    steps: int
    seed: int
    generator: str
    log_perron: float
    descent_frequency: float
    phi_mean: float
    phi_guard: float
    entropy_estimates: dict[int, float] = field(default_factory=dict)
    decoded_fraction: float = 0.0
    inadmissible_chunks: int = 0
    inadmissible_reversed_chunks: int = 0

    @property
    def ok(self) -> bool:
        return (
            self.phi_mean > self.phi_guard
            and self.inadmissible_chunks == 0
            and self.inadmissible_reversed_chunks == 0
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "data": self.data,
            "steps": self.steps,
            "seed": self.seed,
            "generator": self.generator,
            "log_perron": self.log_perron,
            "descent_frequency": self.descent_frequency,
            "phi_mean": self.phi_mean,
            "phi_guard": self.phi_guard,
            "entropy_estimates": {str(k): v for k, v in self.entropy_estimates.items()},
            "decoded_fraction": self.decoded_fraction,
            "inadmissible_chunks": self.inadmissible_chunks,
            "inadmissible_reversed_chunks": self.inadmissible_reversed_chunks,
            "ok": self.ok,
        }


def mme_checks(data: HeightData, steps: int, seed: int) -> MMEReport:
    """Sample the Parry measure, push it to M D(G(N)) and check the maximal-entropy facts.

    The time reverse of the decoded sample stands for the second measure of maximal entropy.
    """
    graph, a = build_companion(data)
    chain = parry_chain(a)
    path = sample_path(chain, graph, steps, seed)
    weights = [phi(e) for e in path.edges]
    mean = sum(weights) / steps
    descents = sum(1 for w in weights if w > 0) / steps

    labels = path.labels()
    estimates = {
        k: entropy_estimate(labels, k) for k in range(1, MAX_BLOCK + 1) if steps > k + 1
    }

    decoded = omega_decode(data, path.edges)
    bad = bad_reversed = 0
    for run in _determined_runs(decoded):
        for start in range(0, len(run), ADMISSIBILITY_CHUNK):
            chunk = run[start:start + ADMISSIBILITY_CHUNK]
            bad += not is_admissible(chunk)
            bad_reversed += not is_admissible(time_reverse(chunk))

    report = MMEReport(
        data=str(data),
        steps=steps,
        seed=seed,
        generator=path.generator,
        log_perron=math.log(chain.perron),
        descent_frequency=descents,
        phi_mean=mean,
        phi_guard=3 / math.sqrt(steps),
        entropy_estimates=estimates,
        decoded_fraction=sum(1 for x in decoded if x is not None) / steps,
        inadmissible_chunks=bad,
        inadmissible_reversed_chunks=bad_reversed,
    )
    logger.info("mme checks for %s: phi mean %.4f, entropy estimate %.4f vs %.4f",
                data, mean, estimates.get(1, float("nan")), report.log_perron)
    return report
