"""
Testes do Formato Texto de Grafos
"""

import pytest


class TestFormat:
    """Testes de escrita e leitura"""

    def test_matrix_text(self):
        from src.core.graphs import MatrixGraph
        from src.utils.graph_io import format_graph

        g = MatrixGraph.from_edges(3, [(0, 1)])
        assert format_graph(g) == "3\n#model=matrix\n#directed=0\n010\n100\n000\n"

    def test_list_text(self):
        from src.core.graphs import ListGraph
        from src.utils.graph_io import format_graph

        g = ListGraph.from_rows([[1], [2], [0]])
        assert format_graph(g) == "3 1\n#model=list\n#directed=1\n1\n2\n0\n"

    def test_headers_in_any_position(self):
        from src.core.graphs import ListGraph
        from src.utils.graph_io import parse_graph

        for text in ("#model=list\n#directed=1\n3 1\n1\n2\n0\n", "3 1\n1\n#directed=1\n2\n0\n"):
            g = parse_graph(text)
            assert isinstance(g, ListGraph)
            assert g.nbr.tolist() == [[1], [2], [0]]

    def test_file_reload(self, tmp_path):
        from src.services.instance_service import GadgetSpec, gen_origin_gadget, gen_random_matrix
        from src.utils.graph_io import read_graph, write_graph

        for g in (gen_random_matrix(7, 0.4, directed=True, seed=2), gen_origin_gadget(GadgetSpec("101", 3, seed=1))):
            path = write_graph(g, tmp_path / "nested" / "g.txt")
            loaded = read_graph(path)
            assert loaded == g
            assert loaded.directed == g.directed


class TestParse:
    """Testes de interpretação"""

    def test_infers_list_model(self):
        from src.core.graphs import ListGraph
        from src.utils.graph_io import parse_graph

        g = parse_graph("2 1\n1\n0\n")
        assert isinstance(g, ListGraph)
        assert g.neighbors(0) == (1,)

    def test_infers_matrix_model(self):
        from src.core.graphs import MatrixGraph
        from src.utils.graph_io import parse_graph

        g = parse_graph("\n2\n01\n10\n")
        assert isinstance(g, MatrixGraph)
        assert not g.directed
        assert g.has_edge(0, 1)

    def test_empty_text(self):
        from src.core.errors import PromiseViolation
        from src.utils.graph_io import parse_graph

        with pytest.raises(PromiseViolation):
            parse_graph("#model=matrix\n")

    @pytest.mark.parametrize("text", [
        "3\n010\n100\n",
        "2\n012\n100\n",
        "2\n0x\n10\n",
        "#model=list\n2\n1\n0\n",
        "2 2\n1 0\n0\n",
        "2 1\na\n0\n",
        "#model=tree\n2\n01\n10\n",
        "#directed=2\n2\n01\n10\n",
    ])
    def test_malformed(self, text):
        from src.core.errors import PromiseViolation
        from src.utils.graph_io import parse_graph

        with pytest.raises(PromiseViolation):
            parse_graph(text)
