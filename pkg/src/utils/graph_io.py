"""
Formato Texto de Grafos
Leitura e escrita bit a bit: linha de tamanho (`n` ou `n k`) primeiro, cabeçalhos
`#model=matrix|list` e `#directed=0|1`, depois as linhas da matriz ou da tabela de vizinhos.
Na leitura, cabeçalhos `#` são aceitos em qualquer posição.
"""

from pathlib import Path
from typing import Dict, List

import numpy as np

from src.core.errors import PromiseViolation
from src.core.graphs import Graph, ListGraph, MatrixGraph

MODELS = ("matrix", "list")


def format_graph(g: Graph) -> str:
    """Serializa o grafo no formato texto (termina com quebra de linha)"""
    if isinstance(g, MatrixGraph):
        lines = [str(g.n), "#model=matrix", f"#directed={int(g.directed)}"]
        lines.extend("".join("1" if cell else "0" for cell in row) for row in g.cells)
    else:
        lines = [f"{g.n} {g.k}", "#model=list", f"#directed={int(g.directed)}"]
        lines.extend(" ".join(str(int(v)) for v in row) for row in g.nbr)
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Interpreta o formato texto; o modelo é inferido da linha de tamanho se não houver cabeçalho"""
    headers: Dict[str, str] = {}
    body: List[str] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition("=")
            headers[key.strip()] = value.strip()
        else:
            body.append(line)

    if not body:
        raise PromiseViolation("arquivo de grafo sem linha de tamanho")

    size = body[0].split()
    model = headers.get("model") or ("list" if len(size) == 2 else "matrix")
    if model not in MODELS:
        raise PromiseViolation(f"modelo desconhecido: {model}")
    directed_flag = headers.get("directed")
    if directed_flag not in (None, "0", "1"):
        raise PromiseViolation(f"#directed deve ser 0 ou 1 (recebido {directed_flag})")

    rows = body[1:]
    try:
        if model == "matrix":
            if len(size) != 1:
                raise PromiseViolation(f"linha de tamanho da matriz deve ser `n` (recebido {body[0]!r})")
            n = int(size[0])
            if len(rows) != n or any(len(r) != n or set(r) - {"0", "1"} for r in rows):
                raise PromiseViolation(f"esperadas {n} linhas de {n} caracteres 0/1")
            cells = np.array([[c == "1" for c in r] for r in rows], dtype=bool).reshape(n, n)
            return MatrixGraph(cells, directed=directed_flag == "1")

        if len(size) != 2:
            raise PromiseViolation(f"linha de tamanho da lista deve ser `n k` (recebido {body[0]!r})")
        n, k = int(size[0]), int(size[1])
        table = [[int(v) for v in r.split()] for r in rows]
        if len(table) != n or any(len(r) != k for r in table):
            raise PromiseViolation(f"esperadas {n} linhas com {k} vizinhos")
        return ListGraph(np.array(table, dtype=np.int64).reshape(n, k), directed=directed_flag != "0")
    except ValueError as e:
        if isinstance(e, PromiseViolation):
            raise
        raise PromiseViolation(f"valor inválido no arquivo de grafo: {e}") from e


def read_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def write_graph(g: Graph, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_graph(g), encoding="utf-8")
    return path
