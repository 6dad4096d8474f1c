import pytest

from markov_dyck.errors import InputError
from markov_dyck.graphs import (
    AdjacencyMatrix,
    DirectedGraph,
    Edge,
    EdgeKind,
    Vertex,
    VertexKind,
    alphabet_size,
    build_companion,
    build_rotational,
    check_rotational_homogeneity,
    dyck_graph,
    fibonacci_graph,
    multiplicity_matrix,
    named_graph,
)
from markov_dyck.models import HeightData


class TestRotationalGraph:
    def test_dyck_graph_is_a_bouquet(self) -> None:
        g = dyck_graph(2)
        assert g.name == "G(2)"
        assert [v.label for v in g.vertices] == ["V(0)"]
        assert sorted(e.label for e in g.edges) == ["e(1)", "e(2)"]
        assert g.adjacency().to_lists() == [[2]]

    def test_one_two(self) -> None:
        g = build_rotational(HeightData.of(1, 2))
        assert [v.label for v in g.vertices] == ["V(0)", "V(1)"]
        assert sorted(e.label for e in g.edges) == ["e(1,1)", "e(1,2)", "f(1)"]
        assert g.adjacency().to_lists() == [[0, 1], [2, 0]]

    def test_sizes(self) -> None:
        g = build_rotational(HeightData.of(2, 3, 2))
        assert len(g.vertices) == 1 + 2 + 6
        assert len(g.edges) == 2 + 6 + 12
        assert alphabet_size(g) == 40

    def test_strongly_connected(self) -> None:
        assert build_rotational(HeightData.of(1, 1, 2)).is_strongly_connected()

    def test_multiplicities_agree_with_adjacency(self) -> None:
        g = build_rotational(HeightData.of(2, 3))
        assert multiplicity_matrix(g) == g.adjacency().to_lists()

    def test_edge_lookup(self) -> None:
        g = build_rotational(HeightData.of(1, 2))
        edge = g.edge("f(1)")
        assert edge.source.label == "V(0)"
        assert edge.target.label == "V(1)"
        assert g.find(EdgeKind.reentry, (1, 2)).label == "e(1,2)"

    def test_unknown_edge(self) -> None:
        with pytest.raises(InputError):
            dyck_graph(2).edge("e(3)")
        with pytest.raises(InputError):
            dyck_graph(2).find(EdgeKind.tree, (1,))


class TestCompanionGraph:
    def test_one_two(self) -> None:
        g, a = build_companion(HeightData.of(1, 2))
        assert g.name == "C(1,2)"
        assert a.to_lists() == [[0, 3], [2, 0]]
        assert sorted(e.label for e in g.edges) == ["c+1", "c+2", "c-1(1)", "c-2(1)", "c-2(2)"]

    def test_single_level(self) -> None:
        g, a = build_companion(HeightData.of(3))
        assert a.to_lists() == [[4]]
        assert len(g.edges) == 4

    def test_descent_runs_up_the_levels(self) -> None:
        g, _ = build_companion(HeightData.of(1, 2))
        descent = g.edge("c-1(1)")
        assert descent.source.label == "2"
        assert descent.target.label == "1"
        ascent = g.edge("c+1")
        assert ascent.source.label == "1"
        assert ascent.target.label == "2"


class TestNamedGraphs:
    def test_fibonacci(self) -> None:
        g = fibonacci_graph()
        assert g.adjacency().to_lists() == [[1, 1], [1, 0]]

    def test_named_graph_forms(self) -> None:
        assert named_graph("fibonacci").name == "F"
        assert named_graph("dyck:3").adjacency().to_lists() == [[3]]
        assert named_graph(" 1,2 ").name == "G(1,2)"

    def test_named_graph_rejects_garbage(self) -> None:
        with pytest.raises(InputError):
            named_graph("petersen")


class TestRecognition:
    def test_recovers_height_data(self) -> None:
        assert check_rotational_homogeneity(dyck_graph(2)) == (True, HeightData.of(2))
        data = HeightData.of(1, 1, 2)
        assert check_rotational_homogeneity(build_rotational(data)) == (True, data)

    def test_fibonacci_is_not_rotational(self) -> None:
        assert check_rotational_homogeneity(fibonacci_graph()) == (False, None)

    def test_uneven_tree_rejected(self) -> None:
        root = Vertex(VertexKind.named, (0,))
        a = Vertex(VertexKind.named, (1,))
        b = Vertex(VertexKind.named, (2,))
        edges = (
            Edge(EdgeKind.named, (0, 1), root, a),
            Edge(EdgeKind.named, (1, 2), a, b),
            Edge(EdgeKind.named, (2, 0), b, root),
            Edge(EdgeKind.named, (1, 0), a, root),
        )
        g = DirectedGraph("uneven", (root, a, b), edges)
        assert check_rotational_homogeneity(g) == (False, None)


class TestValidation:
    def test_undeclared_endpoint(self) -> None:
        v = Vertex(VertexKind.named, (1,))
        w = Vertex(VertexKind.named, (2,))
        with pytest.raises(InputError):
            DirectedGraph("bad", (v,), (Edge(EdgeKind.named, (1, 2), v, w),))

    def test_duplicate_labels(self) -> None:
        v = Vertex(VertexKind.named, (1,))
        loop = Edge(EdgeKind.named, (1, 1), v, v)
        with pytest.raises(InputError):
            DirectedGraph("bad", (v,), (loop, loop))

    def test_adjacency_must_be_square(self) -> None:
        with pytest.raises(InputError):
            AdjacencyMatrix.of([[1, 2]])

    def test_adjacency_irreducible(self) -> None:
        assert AdjacencyMatrix.of([[0, 3], [2, 0]]).is_irreducible()
        assert not AdjacencyMatrix.of([[1, 1], [0, 1]]).is_irreducible()
        assert not AdjacencyMatrix.of([[0]]).is_irreducible()


class TestExport:
    def test_dot(self) -> None:
        dot = build_rotational(HeightData.of(1, 2)).to_dot()
        assert dot.startswith('digraph "G(1,2)" {')
        assert '"V(0)" -> "V(1)" [label="f(1)"];' in dot

    def test_json(self) -> None:
        payload = dyck_graph(2).to_json()
        assert payload["name"] == "G(2)"
        assert {e["kind"] for e in payload["edges"]} == {"reentry"}
