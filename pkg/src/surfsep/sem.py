"""SEM1: the canonical text format for embedded multigraphs.

::

    SEM 1
    n <vertex-count>
    m <edge-count>
    e <edge_id> <u> <v> <+|->
    r <v> <dart> <dart> ...

Lines starting with ``#`` are comments.  The writer emits edges and rotations
in increasing id order; the reader accepts them in any order.
"""
from __future__ import annotations

from pathlib import Path

from .embedding import EmbeddedMultigraph
from .errors import EmbeddingError


def dumps(E: EmbeddedMultigraph) -> str:
    lines = ["SEM 1", f"n {E.n}", f"m {E.m}"]
    for e, (u, v, s) in enumerate(E.edges):
        lines.append(f"e {e} {u} {v} {'+' if s == 1 else '-'}")
    for v, rot in enumerate(E.rotation):
        lines.append(" ".join(["r", str(v), *map(str, rot)]))
    return "\n".join(lines) + "\n"


def loads(text: str) -> EmbeddedMultigraph:
    n = m = None
    edges = {}
    rots = {}
    header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        try:
            if tok[0] == "SEM":
                if tok[1:] != ["1"]:
                    raise EmbeddingError(f"line {lineno}: unsupported version {' '.join(tok[1:])}")
                header = True
            elif tok[0] == "n":
                n = int(tok[1])
            elif tok[0] == "m":
                m = int(tok[1])
            elif tok[0] == "e":
                e, u, v = int(tok[1]), int(tok[2]), int(tok[3])
                if tok[4] not in "+-" or len(tok) != 5:
                    raise EmbeddingError(f"line {lineno}: bad edge sign {tok[4]!r}")
                if e in edges:
                    raise EmbeddingError(f"line {lineno}: edge {e} defined twice")
                edges[e] = (u, v, 1 if tok[4] == "+" else -1)
            elif tok[0] == "r":
                v = int(tok[1])
                if v in rots:
                    raise EmbeddingError(f"line {lineno}: rotation of {v} given twice")
                rots[v] = [int(x) for x in tok[2:]]
            else:
                raise EmbeddingError(f"line {lineno}: unknown record {tok[0]!r}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, EmbeddingError):
                raise
            raise EmbeddingError(f"line {lineno}: cannot parse {raw!r}") from exc
    if not header:
        raise EmbeddingError("missing 'SEM 1' header")
    if n is None or m is None:
        raise EmbeddingError("missing n or m record")
    if sorted(edges) != list(range(m)):
        raise EmbeddingError(f"expected edges 0..{m - 1}")
    if any(not 0 <= v < n for v in rots):
        raise EmbeddingError("rotation given for a vertex out of range")
    return EmbeddedMultigraph(n, [edges[e] for e in range(m)], [rots.get(v, []) for v in range(n)])


def read(path) -> EmbeddedMultigraph:
    return loads(Path(path).read_text())


def write(E: EmbeddedMultigraph, path) -> None:
    Path(path).write_text(dumps(E))
