import logging
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from functools import cached_property
from typing import Any

import networkx as nx
import sympy

from markov_dyck.errors import InputError
from markov_dyck.models import HeightData

logger = logging.getLogger(__name__)


class VertexKind(StrEnum):
    tree = "tree"
    companion = "companion"
    named = "named"


class EdgeKind(StrEnum):
    tree = "tree"
    reentry = "reentry"
    descent = "descent"
    ascent = "ascent"
    named = "named"


def _tuple_label(prefix: str, index: tuple[int, ...]) -> str:
    return f"{prefix}(" + ",".join(str(i) for i in index) + ")"


@dataclass(frozen=True, order=True)
class Vertex:
    kind: VertexKind
    index: tuple[int, ...]

    @property
    def label(self) -> str:
        if self.kind == VertexKind.tree:
            return _tuple_label("V", self.index or (0,))
        if self.kind == VertexKind.companion:
            return str(self.index[0])
        return "V" + "".join(str(i) for i in self.index)

    @property
    def height(self) -> int:
        return len(self.index)

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True, order=True)
class Edge:
    kind: EdgeKind
    index: tuple[int, ...]
    source: Vertex = field(compare=False)
    target: Vertex = field(compare=False)

    @property
    def label(self) -> str:
        match self.kind:
            case EdgeKind.tree:
                return _tuple_label("f", self.index)
            case EdgeKind.reentry:
                return _tuple_label("e", self.index)
            case EdgeKind.descent:
                return f"c-{self.index[0]}({self.index[1]})"
            case EdgeKind.ascent:
                return f"c+{self.index[0]}"
            case _:
                return "e" + "".join(str(i) for i in self.index)

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class AdjacencyMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.rows)
        if n == 0 or any(len(r) != n for r in self.rows):
            raise InputError("Adjacency matrix must be square and non-empty")
        if any(x < 0 for r in self.rows for x in r):
            raise InputError("Adjacency matrix entries must be non-negative")

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> "AdjacencyMatrix":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @property
    def size(self) -> int:
        return len(self.rows)

    def row_sums(self) -> list[int]:
        return [sum(r) for r in self.rows]

    def to_sympy(self) -> sympy.Matrix:
        return sympy.Matrix(self.rows)

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def is_irreducible(self) -> bool:
        g = nx.DiGraph()
        g.add_nodes_from(range(self.size))
        g.add_edges_from(
            (i, j) for i, r in enumerate(self.rows) for j, x in enumerate(r) if x > 0
        )
        if self.size == 1:
            return self.rows[0][0] > 0
        return bool(nx.is_strongly_connected(g))


@dataclass(frozen=True)
class DirectedGraph:
    name: str
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        declared = set(self.vertices)
        for e in self.edges:
            if e.source not in declared or e.target not in declared:
                raise InputError(f"Edge {e.label} has an undeclared endpoint")
        duplicates = [lbl for lbl, c in Counter(e.label for e in self.edges).items() if c > 1]
        if duplicates:
            raise InputError(f"Duplicate edge labels: {duplicates}")

    @cached_property
    def _by_label(self) -> dict[str, Edge]:
        return {e.label: e for e in self.edges}

    @cached_property
    def _by_key(self) -> dict[tuple[EdgeKind, tuple[int, ...]], Edge]:
        return {(e.kind, e.index): e for e in self.edges}

    @cached_property
    def _out(self) -> dict[Vertex, list[Edge]]:
        out: dict[Vertex, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.source].append(e)
        return out

    @cached_property
    def _in(self) -> dict[Vertex, list[Edge]]:
        inc: dict[Vertex, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.target].append(e)
        return inc

    def edge(self, label: str) -> Edge:
        try:
            return self._by_label[label]
        except KeyError:
            raise InputError(f"Unknown edge {label!r} in graph {self.name}") from None

    def find(self, kind: EdgeKind, index: tuple[int, ...]) -> Edge:
        try:
            return self._by_key[(kind, index)]
        except KeyError:
            raise InputError(f"No {kind} edge with index {index} in graph {self.name}") from None

    def out_edges(self, v: Vertex) -> list[Edge]:
        return self._out[v]

    def in_edges(self, v: Vertex) -> list[Edge]:
        return self._in[v]

    def adjacency(self) -> AdjacencyMatrix:
        position = {v: i for i, v in enumerate(self.vertices)}
        rows = [[0] * len(self.vertices) for _ in self.vertices]
        for e in self.edges:
            rows[position[e.source]][position[e.target]] += 1
        return AdjacencyMatrix.of(rows)

    def to_networkx(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph(name=self.name)
        g.add_nodes_from(self.vertices)
        for e in self.edges:
            g.add_edge(e.source, e.target, key=e.label)
        return g

    def is_strongly_connected(self) -> bool:
        return bool(nx.is_strongly_connected(self.to_networkx()))

    def to_dot(self) -> str:
        lines = [f'digraph "{self.name}" {{']
        lines += [f'  "{v.label}";' for v in self.vertices]
        lines += [
            f'  "{e.source.label}" -> "{e.target.label}" [label="{e.label}"];' for e in self.edges
        ]
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "vertices": [{"label": v.label, "kind": v.kind.value, "index": list(v.index)}
                         for v in self.vertices],
            "edges": [
                {
                    "label": e.label,
                    "kind": e.kind.value,
                    "index": list(e.index),
                    "source": e.source.label,
                    "target": e.target.label,
                }
                for e in self.edges
            ],
        }


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def build_rotational(data: HeightData) -> DirectedGraph:
    root = Vertex(VertexKind.tree, ())
    vertices = [root]
    edges: list[Edge] = []
    level = [root]
    for h in range(1, data.height + 1):
        next_level = []
        for parent in level:
            for n in range(1, data.n(h) + 1):
                child = Vertex(VertexKind.tree, parent.index + (n,))
                next_level.append(child)
                edges.append(Edge(EdgeKind.tree, child.index, parent, child))
        vertices += next_level
        level = next_level
    for leaf in level:
        for n in range(1, data.n(data.size) + 1):
            edges.append(Edge(EdgeKind.reentry, leaf.index + (n,), leaf, root))
    graph = DirectedGraph(f"G{data}", tuple(vertices), tuple(edges))
    logger.debug("built %s: %d vertices, %d edges", graph.name, len(vertices), len(edges))
    return graph


def companion_vertex(data: HeightData, height: int) -> Vertex:
    """Companion vertex carrying tree height `height`; the root sits at H+1."""
    return Vertex(VertexKind.companion, (height if height >= 1 else data.size,))


def build_companion(data: HeightData) -> tuple[DirectedGraph, AdjacencyMatrix]:
    size = data.size
    vertices = tuple(Vertex(VertexKind.companion, (h,)) for h in range(1, size + 1))
    edges: list[Edge] = []
    for h in range(1, size + 1):
        below = companion_vertex(data, h - 1)
        here = vertices[h - 1]
        for n in range(1, data.n(h) + 1):
            edges.append(Edge(EdgeKind.descent, (h, n), below, here))
        edges.append(Edge(EdgeKind.ascent, (h,), here, below))
    graph = DirectedGraph(f"C{data}", vertices, tuple(edges))
    return graph, graph.adjacency()


def dyck_graph(n: int) -> DirectedGraph:
    return build_rotational(HeightData.of(n))


def fibonacci_graph() -> DirectedGraph:
    v1 = Vertex(VertexKind.named, (1,))
    v2 = Vertex(VertexKind.named, (2,))
    edges = (
        Edge(EdgeKind.named, (1, 2), v1, v2),
        Edge(EdgeKind.named, (2, 1), v2, v1),
        Edge(EdgeKind.named, (1, 1), v1, v1),
    )
    return DirectedGraph("F", (v1, v2), edges)


def named_graph(spec: str) -> DirectedGraph:
    """Resolve 'fibonacci', 'dyck:N' or comma-separated height data to a graph."""
    text = spec.strip().lower()
    if text == "fibonacci":
        return fibonacci_graph()
    if text.startswith("dyck:"):
        return build_rotational(HeightData.parse(text.removeprefix("dyck:")))
    return build_rotational(HeightData.parse(text))


# ---------------------------------------------------------------------------
# Recognition
# ---------------------------------------------------------------------------

def check_rotational_homogeneity(g: DirectedGraph) -> tuple[bool, HeightData | None]:
    if not g.is_strongly_connected():
        return False, None
    tree_edges = [e for e in g.edges if len(g.in_edges(e.target)) == 1]
    tree = nx.DiGraph()
    tree.add_nodes_from(g.vertices)
    tree.add_edges_from((e.source, e.target) for e in tree_edges)
    if not nx.is_arborescence(tree):
        return False, None
    root = next(v for v in g.vertices if tree.in_degree(v) == 0)
    depth = nx.single_source_shortest_path_length(tree, root)
    leaves = [v for v in g.vertices if tree.out_degree(v) == 0]
    heights = {depth[v] for v in leaves}
    if len(heights) != 1:
        return False, None
    height = heights.pop()

    counts = []
    for h in range(height):
        degrees = {tree.out_degree(v) for v in g.vertices if depth[v] == h}
        if len(degrees) != 1:
            return False, None
        counts.append(degrees.pop())

    tree_set = set(tree_edges)
    returns = [e for e in g.edges if e not in tree_set]
    leaf_set = set(leaves)
    if any(e.source not in leaf_set or e.target != root for e in returns):
        return False, None
    leaf_degrees = {len(g.out_edges(v)) for v in leaves}
    if len(leaf_degrees) != 1:
        return False, None
    leaf_degree = leaf_degrees.pop()
    if leaf_degree < 2:
        return False, None
    counts.append(leaf_degree)
    return True, HeightData(counts=tuple(counts))


def multiplicity_matrix(g: DirectedGraph) -> list[list[int]]:
    """Edge multiplicities counted pair by pair, independent of `adjacency`."""
    return [
        [sum(1 for e in g.out_edges(u) if e.target == v) for v in g.vertices]
        for u in g.vertices
    ]


def alphabet_size(g: DirectedGraph) -> int:
    return 2 * len(g.edges)
