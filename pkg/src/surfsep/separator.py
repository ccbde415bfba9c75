"""ℓ-separators of surface triangulations.

:func:`td_separator` cuts a degree-3 tree decomposition at exactly ℓ tree
edges so that every remaining subtree keeps many private vertices;
:func:`surface_separator` runs it on the face tree decomposition of a
triangulation and turns the cut into a subgraph ``S`` whose induced
embedding has ℓ+1 faces.  Certificates carry everything
:func:`verify_certificate` needs to re-check the result from the graph alone.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .embedding import (
    EmbeddedMultigraph,
    SubEmbedding,
    bfs_distances,
    contract,
    eccentricities,
    euler_genus,
    face_of_side,
    induced_subembedding,
    side_key,
    trace_faces,
)
from .errors import InternalError, PreconditionError
from .report import Report
from .tree_cotree import Decomposition, TreeDecomposition, decompose

# ---------------------------------------------------------------------------
# cutting a tree decomposition


@dataclass(frozen=True)
class Component:
    nodes: frozenset[int]
    vertices: frozenset[int]  # G[Q]: vertices held only by bags of this subtree


@dataclass(frozen=True)
class CutResult:
    R: tuple[tuple[int, int], ...]
    components: tuple[Component, ...]
    n: int
    ell: int
    b: int

    @property
    def threshold_num(self) -> int:
        return self.n - self.ell * self.b

    @property
    def threshold_den(self) -> int:
        return 2 * self.ell + 1

    def meets_bound(self) -> bool:
        return len(self.R) == self.ell and len(self.components) == self.ell + 1 and all(
            self.threshold_den * len(c.vertices) >= self.threshold_num for c in self.components
        )


def _side_sizes(nodes, adj, bags, n):
    """|G(x, y)| for both orientations of every edge of the current tree."""
    root = min(nodes)
    order = [root]
    parent = {root: None}
    for x in order:
        for y in adj[x]:
            if y in nodes and y not in parent:
                parent[y] = x
                order.append(y)
    top_count = dict.fromkeys(nodes, 0)
    placed = set()
    for z in order:
        fresh = bags[z] - placed
        top_count[z] = len(fresh)
        placed |= fresh
    sub = dict(top_count)
    for z in reversed(order):
        p = parent[z]
        if p is not None:
            sub[p] += sub[z]
    sizes = {}
    for c in order[1:]:
        p = parent[c]
        sizes[(c, p)] = sub[c]
        sizes[(p, c)] = n - sub[c] - len(bags[p] & bags[c])
    return sizes


def _subtree(nodes, adj, start, banned):
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y in nodes and y not in seen and y != banned:
                seen.add(y)
                stack.append(y)
    return seen


def _vertex_count(G) -> int:
    if isinstance(G, EmbeddedMultigraph):
        return G.n
    if isinstance(G, int):
        return G
    return len(set(G))


def td_separator(G, TD: TreeDecomposition, ell: int) -> CutResult:
    """Remove exactly ``ell`` edges of the decomposition tree so that each of
    the ``ell + 1`` subtrees Q satisfies ``(2ell+1)|G[Q]| >= n - ell*b``.

    ``G`` is the graph, its vertex count, or its vertex set; only the count
    matters once the decomposition is known to cover it.
    """
    n = _vertex_count(G)
    b = TD.bag_bound
    if ell < 0:
        raise PreconditionError("ell must be non-negative")
    if b < 2:
        raise PreconditionError(f"bag bound b={b} must be at least 2")
    if TD.max_bag > b:
        raise PreconditionError(f"a bag has {TD.max_bag} vertices, above b={b}")
    if max((len(a) for a in TD.adj.values()), default=0) > 3:
        raise PreconditionError("decomposition tree has a node of degree above 3")
    if ell >= 1 and n < (3 * ell + 1) * b:
        raise PreconditionError(f"n={n} < (3*{ell}+1)*{b} = {(3 * ell + 1) * b}")

    nodes = set(TD.nodes)
    bags = dict(TD.bags)
    adj = TD.adj
    cur_n, cur_ell = n, ell
    R = []
    while cur_ell > 0:
        if cur_n < (3 * cur_ell + 1) * b:
            raise InternalError(f"recursion reached n'={cur_n} below (3*{cur_ell}+1)*{b}")
        sizes = _side_sizes(nodes, adj, bags, cur_n)
        num, den = cur_n - cur_ell * b, 2 * cur_ell + 1
        out_arc = {(x, y) for (x, y), s in sizes.items() if den * s < num}
        for x, y in out_arc:
            if (y, x) in out_arc:
                raise InternalError(f"tree edge {x}-{y} oriented both ways (case 1)")
        has_out = {x for x, _ in out_arc}
        sinks = nodes - has_out
        j_adj = {}
        for x, y in sizes:
            if x in sinks and (x, y) not in out_arc and (y, x) not in out_arc:
                j_adj.setdefault(x, set()).add(y)
                j_adj.setdefault(y, set()).add(x)
        if not j_adj:
            raise InternalError("sink forest has no edges (case 2)")
        leaves = sorted(x for x, nb in j_adj.items() if len(nb) == 1)
        x = leaves[0]
        if x not in sinks:
            raise InternalError(f"leaf {x} of the sink forest is not a sink")
        (y,) = j_adj[x]
        R.append((min(x, y), max(x, y)))
        keep = _subtree(nodes, adj, y, banned=x)
        shared = bags[x] & bags[y]
        new_n = sizes[(y, x)]
        nodes = keep
        bags = {z: bags[z] - shared for z in keep}
        if len(set().union(*bags.values())) != new_n:
            raise InternalError("shrunken decomposition does not cover G(y, x)")
        cur_n, cur_ell = new_n, cur_ell - 1

    return CutResult(tuple(R), _components(TD, R), n, ell, b)


def _components(TD: TreeDecomposition, R) -> tuple[Component, ...]:
    cut = {tuple(sorted(p)) for p in R}
    label = {}
    comps = []
    for s in sorted(TD.nodes):
        if s in label:
            continue
        idx = len(comps)
        label[s] = idx
        stack = [s]
        members = [s]
        while stack:
            x = stack.pop()
            for y in TD.adj[x]:
                if y not in label and (min(x, y), max(x, y)) not in cut:
                    label[y] = idx
                    stack.append(y)
                    members.append(y)
        comps.append(members)
    owner = {}
    for z, bag in TD.bags.items():
        for v in bag:
            owner.setdefault(v, set()).add(label[z])
    private = [set() for _ in comps]
    for v, labs in owner.items():
        if len(labs) == 1:
            private[next(iter(labs))].add(v)
    return tuple(Component(frozenset(c), frozenset(p)) for c, p in zip(comps, private))


# ---------------------------------------------------------------------------
# separators on surfaces


@dataclass
class CertFace:
    walk: list[int]  # darts of the input graph, in traversal order
    interior_count: int
    interior_count_original: int
    sides: list[int] = field(default_factory=list)  # local orientation at each step

    def side_set(self, E: EmbeddedMultigraph) -> frozenset:
        sides = self.sides or [1] * len(self.walk)
        return frozenset(side_key(E, st) for st in zip(self.walk, sides))


@dataclass
class SeparatorCertificate:
    n: int
    g: int
    r: int
    ell: int
    root: int
    separator_edges: list[int]
    X: list[int]
    L: list[int]
    faces: list[CertFace]
    threshold_num: int
    threshold_den: int
    # in-memory extras, not serialised
    interiors: list[frozenset[int]] = field(default_factory=list, repr=False)
    S: SubEmbedding | None = field(default=None, repr=False)
    cut: CutResult | None = field(default=None, repr=False)
    decomposition: Decomposition | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "g": self.g,
            "r": self.r,
            "ell": self.ell,
            "root": self.root,
            "separator_edges": list(self.separator_edges),
            "X": list(self.X),
            "L": list(self.L),
            "faces": [
                {
                    "walk": list(f.walk),
                    "sides": list(f.sides),
                    "interior_count": f.interior_count,
                    "interior_count_original": f.interior_count_original,
                }
                for f in self.faces
            ],
            "threshold_num": self.threshold_num,
            "threshold_den": self.threshold_den,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "SeparatorCertificate":
        return cls(
            n=d["n"], g=d["g"], r=d["r"], ell=d["ell"], root=d.get("root", -1),
            separator_edges=list(d["separator_edges"]), X=list(d["X"]), L=list(d["L"]),
            faces=[
                CertFace(
                    list(f["walk"]), f["interior_count"],
                    f.get("interior_count_original", f["interior_count"]), list(f.get("sides", [])),
                )
                for f in d["faces"]
            ],
            threshold_num=d["threshold_num"], threshold_den=d["threshold_den"],
        )

    @classmethod
    def from_json(cls, text: str) -> "SeparatorCertificate":
        return cls.from_dict(json.loads(text))

    def save(self, path) -> None:
        Path(path).write_text(self.to_json())

    @classmethod
    def load(cls, path) -> "SeparatorCertificate":
        return cls.from_json(Path(path).read_text())


def _prune_pendant(E: EmbeddedMultigraph, edges: set[int]) -> set[int]:
    """Repeatedly drop edges hanging off degree-1 vertices."""
    deg = {}
    inc = {}
    for e in edges:
        u, v, _ = E.edges[e]
        for x in (u, v):
            deg[x] = deg.get(x, 0) + 1
            inc.setdefault(x, set()).add(e)
    edges = set(edges)
    stack = [x for x, k in deg.items() if k == 1]
    while stack:
        x = stack.pop()
        if deg[x] != 1:
            continue
        (e,) = inc[x]
        u, v, _ = E.edges[e]
        y = v if u == x else u
        edges.discard(e)
        inc[x].discard(e)
        inc[y].discard(e)
        deg[x] -= 1
        deg[y] -= 1
        if deg[y] == 1:
            stack.append(y)
    return edges


def surface_separator(E: EmbeddedMultigraph, ell: int, root: int | None = None, auxiliary=frozenset()) -> SeparatorCertificate:
    """Small subgraph ``S`` whose induced embedding has ``ell + 1`` faces, each
    holding at least ``(n - ell(3+2g)r - ell) / (2ell + 1)`` vertices inside.

    ``E`` must be a loopless triangulation.  The tree is rooted at a centre
    unless ``root`` is given, in which case ``r`` is the root's eccentricity.
    ``auxiliary`` lists vertices added by triangulation; they count towards
    ``n`` but are excluded from ``interior_count_original``.
    """
    if ell < 1:
        raise PreconditionError("ell must be at least 1")
    if not E.is_connected():
        raise PreconditionError("input must be connected")
    if E.has_loops():
        raise PreconditionError("input has loops; triangulate it first")
    faces = trace_faces(E)
    if any(f.length != 3 for f in faces):
        raise PreconditionError("input is not a triangulation; run triangulate first")
    ecc = eccentricities(E)
    if root is None:
        root = ecc.index(min(ecc))
    r = ecc[root]
    g = 2 - (E.n - E.m + len(faces))
    b = (3 + 2 * g) * r + 1
    if E.n < (3 * ell + 1) * b:
        raise PreconditionError(f"n={E.n} < (3*{ell}+1)*((3+2*{g})*{r}+1) = {(3 * ell + 1) * b}")

    dec = decompose(E, root)
    cut = td_separator(E, dec.td, ell)
    L = [dec.dual.edge_of_pair[p] for p in cut.R]
    T = dec.tree
    S_edges = set()
    for e in sorted(dec.X) + L:
        u, v, _ = E.edges[e]
        S_edges.add(e)
        S_edges.update(T.path_edges(u))
        S_edges.update(T.path_edges(v))
    S_edges = _prune_pendant(E, S_edges)

    sub = induced_subembedding(E, S_edges)
    s_faces = trace_faces(sub.emb)
    if len(s_faces) != ell + 1:
        raise InternalError(f"S has {len(s_faces)} faces, expected {ell + 1}")
    if euler_genus(sub.emb) != g:
        raise InternalError("induced embedding of S is not 2-cell")

    comp_of = {}
    for i, c in enumerate(cut.components):
        for z in c.nodes:
            comp_of[z] = i
    g_face = face_of_side(E, dec.faces)
    aux = frozenset(auxiliary)
    cert_faces, interiors, used = [], [], set()
    for f in s_faces:
        d, s = f.steps[0]
        comp = comp_of[g_face[side_key(E, (sub.old_dart(d), s))]]
        if comp in used:
            raise InternalError("two faces of S map to the same component of T* - R")
        used.add(comp)
        inside = cut.components[comp].vertices
        interiors.append(inside)
        cert_faces.append(CertFace(
            [sub.old_dart(x) for x in f.darts], len(inside), len(inside - aux), [st[1] for st in f.steps],
        ))

    return SeparatorCertificate(
        n=E.n, g=g, r=r, ell=ell, root=root,
        separator_edges=sorted(S_edges), X=sorted(dec.X), L=L,
        faces=cert_faces,
        threshold_num=E.n - ell * (3 + 2 * g) * r - ell,
        threshold_den=2 * ell + 1,
        interiors=interiors, S=sub, cut=cut, decomposition=dec,
    )


@dataclass(frozen=True)
class Region:
    walk: tuple[int, ...]  # darts of the input graph
    sides: tuple[int, ...]
    boundary: frozenset[int]
    interior: frozenset[int]
    side_set: frozenset  # edge sides of the input graph along the walk


def face_regions(E: EmbeddedMultigraph, S_edges) -> tuple[SubEmbedding, list[Region]]:
    """Faces of the induced embedding of ``S_edges`` with the vertices of
    ``E`` strictly inside each of them.

    Faces of ``E`` are merged across edges outside ``S``; a vertex not on
    ``S`` lies inside the region its incident faces belong to.
    """
    S_edges = set(S_edges)
    g_faces = trace_faces(E)
    parent = list(range(len(g_faces)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    sides = [[] for _ in range(E.m)]
    for i, f in enumerate(g_faces):
        for d, _ in f.steps:
            sides[d >> 1].append(i)
    for e in range(E.m):
        if e not in S_edges:
            a, b = find(sides[e][0]), find(sides[e][1])
            if a != b:
                parent[a] = b

    sub = induced_subembedding(E, S_edges)
    s_faces = trace_faces(sub.emb)
    g_face = face_of_side(E, g_faces)
    region_of = {}
    for i, f in enumerate(s_faces):
        d, s = f.steps[0]
        region_of.setdefault(find(g_face[side_key(E, (sub.old_dart(d), s))]), []).append(i)

    on_s = set(sub.vertex_map)
    inside = [set() for _ in s_faces]
    for i, f in enumerate(g_faces):
        idx = region_of.get(find(i))
        if idx is None or len(idx) != 1:
            continue
        for d, _ in f.steps:
            v = E.origin(d)
            if v not in on_s:
                inside[idx[0]].add(v)
    regions = []
    for i, f in enumerate(s_faces):
        verts = frozenset(sub.vertex_map[sub.emb.origin(d)] for d in f.darts)
        walk = tuple(sub.old_dart(d) for d in f.darts)
        sides = tuple(s for _, s in f.steps)
        keys = frozenset(side_key(E, st) for st in zip(walk, sides))
        regions.append(Region(walk, sides, verts, frozenset(inside[i]), keys))
    return sub, regions


def verify_certificate(E: EmbeddedMultigraph, cert: SeparatorCertificate) -> Report:
    """Re-check every clause of a certificate against the graph ``E``."""
    rep = Report("separator certificate")
    try:
        g = euler_genus(E)
        ecc = eccentricities(E)
    except PreconditionError as exc:
        rep.check("graph", False, str(exc))
        return rep
    ell, r = cert.ell, cert.r
    rep.check("n", cert.n == E.n, f"certificate n={cert.n}, graph n={E.n}")
    rep.check("genus", cert.g == g, f"certificate g={cert.g}, graph g={g}")
    root_ok = 0 <= cert.root < E.n and ecc[cert.root] == r
    rep.check("radius", root_ok and r >= min(ecc), f"r={r}, radius={min(ecc)}")
    thr_num = E.n - ell * (3 + 2 * g) * r - ell
    thr_den = 2 * ell + 1
    rep.check(
        "threshold",
        (cert.threshold_num, cert.threshold_den) == (thr_num, thr_den),
        f"claimed {cert.threshold_num}/{cert.threshold_den}, recomputed {thr_num}/{thr_den}",
    )

    S = set(cert.separator_edges)
    ids_ok = len(S) == len(cert.separator_edges) and all(isinstance(e, int) and 0 <= e < E.m for e in S)
    rep.check("edge ids", ids_ok, "")
    if not ids_ok:
        return rep
    rep.check(
        "X and L",
        len(cert.X) == g and len(cert.L) == ell and set(cert.X) <= S and set(cert.L) <= S
        and not set(cert.X) & set(cert.L),
        f"|X|={len(cert.X)}, |L|={len(cert.L)}",
    )
    bound = (2 * r + 1) * (g + ell)
    rep.check("edge bound", len(S) <= bound, f"|E(S)|={len(S)}, bound {bound}")

    sub, regions = face_regions(E, S)
    S_emb = sub.emb
    connected = S_emb.is_connected()
    rep.check("S connected", connected, "")
    min_deg = min((S_emb.degree(v) for v in range(S_emb.n)), default=0)
    rep.check("S min degree", min_deg >= 2, f"min degree {min_deg}")
    rep.check("face count", len(regions) == ell + 1 == len(cert.faces),
              f"traced {len(regions)}, certificate {len(cert.faces)}, expected {ell + 1}")
    two_cell = connected and S_emb.n - S_emb.m + len(regions) == 2 - g
    rep.check("2-cell", two_cell, f"V-E+F={S_emb.n - S_emb.m + len(regions)}, 2-g={2 - g}")

    by_key = {reg.side_set: reg for reg in regions}
    matched = [by_key.get(f.side_set(E)) for f in cert.faces]
    rep.check("face walks", all(m is not None for m in matched) and len(by_key) == len(regions), "")

    counts_ok = True
    detail = []
    for i, (f, reg) in enumerate(zip(cert.faces, matched)):
        geo = len(reg.interior) if reg is not None else -1
        ok = (
            geo >= f.interior_count
            and f.interior_count_original <= f.interior_count
            and cert.threshold_den * f.interior_count >= cert.threshold_num
            and thr_den * f.interior_count >= thr_num
        )
        if not ok:
            counts_ok = False
            detail.append(f"face {i}: claimed {f.interior_count}, inside {geo}")
    rep.check("interior count", counts_ok, "; ".join(detail))
    return rep


# ---------------------------------------------------------------------------
# simplified configuration and deep vertices


@dataclass(frozen=True)
class SimplifiedConfiguration:
    H: EmbeddedMultigraph
    branch_map: tuple[int, ...]  # vertex of H -> vertex of S

    def invariants(self) -> tuple:
        faces = trace_faces(self.H)
        return (
            self.H.n,
            self.H.m,
            tuple(sorted(f.length for f in faces)),
            tuple(sorted(self.H.degree(v) for v in range(self.H.n))),
        )


def simplified_configuration(S_emb: EmbeddedMultigraph, order: str = "first") -> SimplifiedConfiguration:
    """Contract edges at degree-2 vertices until every vertex has degree >= 3.

    ``order`` picks the lowest (``"first"``) or highest (``"last"``) eligible
    edge id at each step; the result does not depend on it up to isomorphism.
    """
    if order not in ("first", "last"):
        raise ValueError(f"unknown order {order!r}")
    if not S_emb.is_connected():
        raise PreconditionError("S must be connected")
    degs = [S_emb.degree(v) for v in range(S_emb.n)]
    if min(degs) < 2 or max(degs) < 3:
        raise PreconditionError(f"S needs min degree >= 2 and max degree >= 3, got {min(degs)} and {max(degs)}")
    H = S_emb
    branch = list(range(S_emb.n))
    while True:
        cands = [
            e for e, (u, v, _) in enumerate(H.edges)
            if u != v and (H.degree(u) == 2 or H.degree(v) == 2)
        ]
        if not cands:
            break
        e = cands[0] if order == "first" else cands[-1]
        u, v, _ = H.edges[e]
        if H.degree(u) == 2 and H.degree(v) == 2:
            keep = min(u, v)
        else:
            keep = u if H.degree(u) != 2 else v
        res = contract(H, e, keep)
        nb = [0] * res.emb.n
        for old, new in enumerate(res.vertex_map):
            if old == keep or (old != u and old != v):
                nb[new] = branch[old]
        H, branch = res.emb, nb
    return SimplifiedConfiguration(H, tuple(branch))


def deep_vertices(E: EmbeddedMultigraph, cert: SeparatorCertificate, face_index: int, k: int) -> frozenset[int]:
    """Vertices inside face ``face_index`` at distance >= floor(k/2) from its boundary."""
    if not 0 <= face_index < len(cert.faces):
        raise IndexError(f"face index {face_index} out of range 0..{len(cert.faces) - 1}")
    _, regions = face_regions(E, cert.separator_edges)
    key = cert.faces[face_index].side_set(E)
    reg = next((rg for rg in regions if rg.side_set == key), None)
    if reg is None:
        raise PreconditionError(f"face {face_index} of the certificate is not a face of S")
    dist = bfs_distances(E, sorted(reg.boundary))
    return frozenset(v for v in reg.interior if dist[v] >= k // 2)


__all__ = [
    "Component", "CutResult", "CertFace", "SeparatorCertificate", "SimplifiedConfiguration", "Region",
    "td_separator", "surface_separator", "verify_certificate", "simplified_configuration",
    "deep_vertices", "face_regions",
]
