"""BFS tree, genus edges, dual tree and the face-indexed tree decomposition."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .embedding import EmbeddedMultigraph, FacialWalk, trace_faces
from .errors import InternalError, PreconditionError
from .report import Report


@dataclass(frozen=True)
class BfsTree:
    root: int
    parent: tuple  # per vertex: (parent vertex, tree edge id), None at the root
    depth: tuple[int, ...]

    @property
    def edges(self) -> frozenset[int]:
        return frozenset(p[1] for p in self.parent if p is not None)

    @property
    def height(self) -> int:
        return max(self.depth)

    def path_vertices(self, v: int) -> list[int]:
        """Vertices of the root path ``T_v``, from ``v`` up to the root."""
        out = [v]
        while self.parent[v] is not None:
            v = self.parent[v][0]
            out.append(v)
        return out

    def path_edges(self, v: int) -> list[int]:
        out = []
        while self.parent[v] is not None:
            v, e = self.parent[v]
            out.append(e)
        return out


def bfs_tree(E: EmbeddedMultigraph, root: int) -> BfsTree:
    parent: list = [None] * E.n
    depth = [-1] * E.n
    depth[root] = 0
    q = deque([root])
    while q:
        v = q.popleft()
        for d in E.rotation[v]:
            w = E.head(d)
            if depth[w] < 0:
                depth[w] = depth[v] + 1
                parent[w] = (v, d >> 1)
                q.append(w)
    if min(depth) < 0:
        raise PreconditionError("bfs_tree needs a connected graph")
    return BfsTree(root, tuple(parent), tuple(depth))


def _edge_faces(E: EmbeddedMultigraph, faces: list[FacialWalk]) -> list[list[int]]:
    """For each edge, the (two) faces on its sides, in order of appearance."""
    out = [[] for _ in range(E.m)]
    for i, f in enumerate(faces):
        for d, _ in f.steps:
            out[d >> 1].append(i)
    return out


def cotree_extra(E: EmbeddedMultigraph, T: BfsTree, faces=None) -> frozenset[int]:
    """Edges left over once a spanning tree of the dual is taken outside ``T``."""
    faces = faces if faces is not None else trace_faces(E)
    ef = _edge_faces(E, faces)
    tree = T.edges
    adj = [[] for _ in faces]
    for e in range(E.m):
        if e in tree:
            continue
        f1, f2 = ef[e]
        if f1 != f2:
            adj[f1].append((e, f2))
            adj[f2].append((e, f1))
    seen = [False] * len(faces)
    seen[0] = True
    cotree = set()
    q = deque([0])
    while q:
        f = q.popleft()
        for e, h in sorted(adj[f]):
            if not seen[h]:
                seen[h] = True
                cotree.add(e)
                q.append(h)
    if not all(seen):
        raise InternalError("dual graph outside the BFS tree is disconnected")
    return frozenset(e for e in range(E.m) if e not in tree and e not in cotree)


@dataclass(frozen=True)
class DualTree:
    faces: tuple[FacialWalk, ...]
    edge_of_pair: dict  # (f1, f2) with f1 < f2 -> graph edge id
    adj: tuple[tuple[int, ...], ...]

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self.edge_of_pair)

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)


def dual_tree(E: EmbeddedMultigraph, T: BfsTree, X, faces=None) -> DualTree:
    faces = faces if faces is not None else trace_faces(E)
    ef = _edge_faces(E, faces)
    skip = T.edges | frozenset(X)
    pair_edge = {}
    adj = [[] for _ in faces]
    for e in range(E.m):
        if e in skip:
            continue
        f1, f2 = ef[e]
        if f1 == f2:
            raise InternalError(f"dual edge of {e} is a loop; X is inconsistent")
        key = (min(f1, f2), max(f1, f2))
        if key in pair_edge:
            raise InternalError(f"faces {key} joined twice; X is inconsistent")
        pair_edge[key] = e
        adj[f1].append(f2)
        adj[f2].append(f1)
    if len(pair_edge) != len(faces) - 1:
        raise InternalError(f"T* has {len(pair_edge)} edges for {len(faces)} faces")
    seen = {0}
    stack = [0]
    while stack:
        f = stack.pop()
        for h in adj[f]:
            if h not in seen:
                seen.add(h)
                stack.append(h)
    if len(seen) != len(faces):
        raise InternalError("T* is disconnected")
    return DualTree(tuple(faces), pair_edge, tuple(tuple(sorted(a)) for a in adj))


@dataclass
class TreeDecomposition:
    nodes: list[int]
    tree_edges: list[tuple[int, int]]
    bags: dict[int, frozenset[int]]
    bag_bound: int
    adj: dict[int, list[int]] = field(default=None, repr=False)

    def __post_init__(self):
        if self.adj is None:
            adj = {x: [] for x in self.nodes}
            for x, y in self.tree_edges:
                adj[x].append(y)
                adj[y].append(x)
            self.adj = {x: sorted(a) for x, a in adj.items()}

    @property
    def max_bag(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0)


def bags(E: EmbeddedMultigraph, T: BfsTree, X, Tstar: DualTree) -> TreeDecomposition:
    """Bag of face xyz: the root paths of x, y, z and of both ends of every X edge."""
    common = set()
    for e in X:
        u, v, _ = E.edges[e]
        common.update(T.path_vertices(u))
        common.update(T.path_vertices(v))
    g = len(X)
    r = T.height
    out = {}
    for i, f in enumerate(Tstar.faces):
        bag = set(common)
        for v in f.vertices(E):
            bag.update(T.path_vertices(v))
        out[i] = frozenset(bag)
    return TreeDecomposition(
        nodes=list(range(len(Tstar.faces))),
        tree_edges=Tstar.pairs,
        bags=out,
        bag_bound=(3 + 2 * g) * r + 1,
    )


def validate_td(n: int, graph_edges, TD: TreeDecomposition, max_tree_degree: int = 3) -> Report:
    """Check the three tree-decomposition axioms plus degree and bag bounds.

    ``n`` is the vertex count (vertices are ``0..n-1``) and ``graph_edges`` an
    iterable of endpoint pairs; an :class:`EmbeddedMultigraph` may be passed
    as ``n`` on its own.
    """
    if isinstance(n, EmbeddedMultigraph):
        graph_edges = [(u, v) for u, v, _ in n.edges]
        n = n.n
    rep = Report("tree decomposition")
    nodes = set(TD.nodes)

    # T must be a tree
    ok_tree = len(TD.tree_edges) == len(nodes) - 1 and all(x in nodes and y in nodes for x, y in TD.tree_edges)
    if ok_tree and nodes:
        seen = {TD.nodes[0]}
        stack = [TD.nodes[0]]
        while stack:
            x = stack.pop()
            for y in TD.adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        ok_tree = len(seen) == len(nodes)
    rep.check("tree", ok_tree, f"{len(nodes)} nodes, {len(TD.tree_edges)} edges")

    covered = set().union(*TD.bags.values()) if TD.bags else set()
    missing = sorted(set(range(n)) - covered)
    rep.check("axiom 1 (vertex cover)", not missing, f"vertices in no bag: {missing[:10]}" if missing else "")

    home = {}
    for z, bag in TD.bags.items():
        for v in bag:
            home.setdefault(v, []).append(z)
    bad_edge = None
    for u, v in graph_edges:
        zs = home.get(u, ())
        if not any(v in TD.bags[z] for z in zs):
            bad_edge = (u, v)
            break
    rep.check("axiom 2 (edge cover)", bad_edge is None, f"edge {bad_edge} lies in no bag" if bad_edge else "")

    # occurrence subtree of v is connected iff it spans exactly |occ(v)| - 1 tree edges
    inner = {}
    for x, y in TD.tree_edges:
        for v in TD.bags[x] & TD.bags[y]:
            inner[v] = inner.get(v, 0) + 1
    bad_v = next((v for v in sorted(home) if inner.get(v, 0) != len(home[v]) - 1), None)
    rep.check(
        "axiom 3 (connected occurrence)",
        bad_v is None,
        f"bags holding vertex {bad_v} are not a connected subtree" if bad_v is not None else "",
    )
    deg = max((len(a) for a in TD.adj.values()), default=0)
    rep.check("tree degree", deg <= max_tree_degree, f"max degree {deg}")
    rep.check("bag bound", TD.max_bag <= TD.bag_bound, f"largest bag {TD.max_bag}, bound {TD.bag_bound}")
    return rep


@dataclass(frozen=True)
class Decomposition:
    """Everything the separator pipeline derives from a rooted triangulation."""

    faces: tuple[FacialWalk, ...]
    tree: BfsTree
    X: frozenset[int]
    dual: DualTree
    td: TreeDecomposition
    genus: int


def decompose(E: EmbeddedMultigraph, root: int) -> Decomposition:
    faces = trace_faces(E)
    g = 2 - (E.n - E.m + len(faces))
    T = bfs_tree(E, root)
    X = cotree_extra(E, T, faces)
    if len(X) != g:
        raise InternalError(f"|X| = {len(X)} but the Euler genus is {g}")
    Ts = dual_tree(E, T, X, faces)
    return Decomposition(tuple(faces), T, X, Ts, bags(E, T, X, Ts), g)


__all__ = [
    "BfsTree", "DualTree", "TreeDecomposition", "Decomposition",
    "bfs_tree", "cotree_extra", "dual_tree", "bags", "validate_td", "decompose",
]
