"""Dart-based multigraphs with signed rotation systems.

Edge ``e = (u, v, sign)`` owns two darts: ``2*e`` leaves ``u`` and ``2*e + 1``
leaves ``v``.  The rotation at a vertex is the cyclic order of the darts
leaving it; a sign of ``-1`` marks an edge whose traversal flips the local
orientation (a cross-cap crossing).  Every rotation is stored starting at its
smallest dart, so two equal embeddings compare equal.

A face-tracing state is a pair ``(dart, side)`` where ``side`` is the local
orientation (+1 or -1) in force at the origin of ``dart``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

from .errors import EmbeddingError, PreconditionError

State = tuple  # (dart, side)


def twin(d: int) -> int:
    return d ^ 1


def _canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    if not seq:
        return ()
    i = seq.index(min(seq))
    return tuple(seq[i:]) + tuple(seq[:i])


@dataclass(frozen=True)
class EmbeddedMultigraph:
    n: int
    edges: tuple[tuple[int, int, int], ...]
    rotation: tuple[tuple[int, ...], ...]

    def __init__(self, n, edges, rotation, check=True):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", tuple((int(u), int(v), int(s)) for u, v, s in edges))
        object.__setattr__(self, "rotation", tuple(_canonical_cycle(list(r)) for r in rotation))
        if check:
            self.validate()

    def validate(self) -> None:
        if len(self.rotation) != self.n:
            raise EmbeddingError(f"expected {self.n} rotations, got {len(self.rotation)}")
        seen = [False] * (2 * len(self.edges))
        for e, (u, v, s) in enumerate(self.edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise EmbeddingError(f"edge {e} has an endpoint out of range")
            if s not in (1, -1):
                raise EmbeddingError(f"edge {e} has sign {s}")
        for v, rot in enumerate(self.rotation):
            for d in rot:
                if not 0 <= d < len(seen):
                    raise EmbeddingError(f"vertex {v}: dart {d} does not exist")
                if seen[d]:
                    raise EmbeddingError(f"dart {d} appears twice in the rotation system")
                seen[d] = True
                if self.origin(d) != v:
                    raise EmbeddingError(f"dart {d} listed at vertex {v} but leaves {self.origin(d)}")
        missing = [d for d, ok in enumerate(seen) if not ok]
        if missing:
            raise EmbeddingError(f"dart {missing[0]} is missing from the rotation system")

    # basic accessors

    @property
    def m(self) -> int:
        return len(self.edges)

    def origin(self, d: int) -> int:
        return self.edges[d >> 1][d & 1]

    def head(self, d: int) -> int:
        return self.edges[d >> 1][(d & 1) ^ 1]

    def sign(self, d: int) -> int:
        return self.edges[d >> 1][2]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def is_loop(self, e: int) -> bool:
        u, v, _ = self.edges[e]
        return u == v

    def has_loops(self) -> bool:
        return any(u == v for u, v, _ in self.edges)

    @cached_property
    def _succ_pred(self):
        succ = [0] * (2 * self.m)
        pred = [0] * (2 * self.m)
        for rot in self.rotation:
            k = len(rot)
            for i, d in enumerate(rot):
                succ[d] = rot[(i + 1) % k]
                pred[d] = rot[i - 1]
        return succ, pred

    @cached_property
    def _faces(self):
        return _trace(self)

    def succ(self, d: int) -> int:
        return self._succ_pred[0][d]

    def pred(self, d: int) -> int:
        return self._succ_pred[1][d]

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        """Distinct neighbours of each vertex, in rotation order."""
        out = []
        for v, rot in enumerate(self.rotation):
            seen = []
            for d in rot:
                w = self.head(d)
                if w != v and w not in seen:
                    seen.append(w)
            out.append(tuple(seen))
        return tuple(out)

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        return len(bfs_distances(self, 0)) == self.n

    def step(self, state: State) -> State:
        """Advance face tracing by one edge."""
        d, s = state
        t = d ^ 1
        s2 = s * self.sign(d)
        succ, pred = self._succ_pred
        return (succ[t] if s2 == 1 else pred[t], s2)

    def reverse_state(self, state: State) -> State:
        d, s = state
        return (d ^ 1, -s * self.sign(d))


def side_key(E: EmbeddedMultigraph, state: State) -> State:
    """Canonical name of the edge side traversed by ``state``."""
    return min(state, E.reverse_state(state))


@dataclass(frozen=True)
class FacialWalk:
    steps: tuple[State, ...]

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def darts(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self.steps)

    def vertices(self, E: EmbeddedMultigraph) -> tuple[int, ...]:
        return tuple(E.origin(d) for d, _ in self.steps)

    def edge_ids(self) -> tuple[int, ...]:
        return tuple(d >> 1 for d, _ in self.steps)


def trace_faces(E: EmbeddedMultigraph) -> list[FacialWalk]:
    """Partition the 2m edge-sides of ``E`` into facial walks.

    Faces are numbered by the smallest dart that starts a ``side=+1`` state of
    theirs; each face is reported by one of its two traversal directions.
    A single vertex without edges has one empty face.
    """
    return list(E._faces)


def _trace(E: EmbeddedMultigraph) -> tuple[FacialWalk, ...]:
    if E.m == 0:
        return (FacialWalk(()),) if E.n == 1 else ()
    succ, pred = E._succ_pred
    sign = [s for _, _, s in E.edges]
    visited = set()
    faces = []
    for d0 in range(2 * E.m):
        if (d0, 1) in visited:
            continue
        steps = []
        d, s = d0, 1
        while True:
            st = (d, s)
            if st in visited:
                raise EmbeddingError("face tracing revisited a state; rotation system is inconsistent")
            visited.add(st)
            sg = sign[d >> 1]
            visited.add((d ^ 1, -s * sg))
            steps.append(st)
            s = s * sg
            d = succ[d ^ 1] if s == 1 else pred[d ^ 1]
            if d == d0 and s == 1:
                break
        faces.append(FacialWalk(tuple(steps)))
    return tuple(faces)


def face_of_side(E: EmbeddedMultigraph, faces: Sequence[FacialWalk]) -> dict:
    """Map each edge side (see :func:`side_key`) to the index of its face."""
    out = {}
    for i, f in enumerate(faces):
        for st in f.steps:
            out[side_key(E, st)] = i
    return out


def euler_genus(E: EmbeddedMultigraph) -> int:
    if not E.is_connected():
        raise PreconditionError("euler_genus needs a connected embedding")
    return 2 - (E.n - E.m + len(trace_faces(E)))


def is_two_cell(E: EmbeddedMultigraph, g_ambient: int) -> bool:
    return euler_genus(E) == g_ambient


def bfs_distances(E: EmbeddedMultigraph, sources) -> dict[int, int]:
    if isinstance(sources, int):
        sources = [sources]
    dist = {s: 0 for s in sources}
    q = deque(dist)
    nbrs = E.neighbors
    while q:
        v = q.popleft()
        dv = dist[v] + 1
        for w in nbrs[v]:
            if w not in dist:
                dist[w] = dv
                q.append(w)
    return dist


@dataclass(frozen=True)
class GraphMetrics:
    diameter: int
    radius: int
    center: int
    max_degree: int
    min_degree: int
    eccentricity: tuple[int, ...]


def eccentricities(E: EmbeddedMultigraph) -> list[int]:
    """All eccentricities at once, growing balls as integer bitsets."""
    n = E.n
    full = (1 << n) - 1
    nbrs = E.neighbors
    ball = [1 << v for v in range(n)]
    ecc = [-1] * n
    t = 0
    pending = [v for v in range(n)]
    for v in pending:
        if ball[v] == full:
            ecc[v] = 0
    pending = [v for v in pending if ecc[v] < 0]
    while pending:
        t += 1
        if t > n:
            raise PreconditionError("graph is disconnected")
        ball = [b | _or_all(ball, nbrs[v]) for v, b in enumerate(ball)]
        for v in pending:
            if ball[v] == full:
                ecc[v] = t
        pending = [v for v in pending if ecc[v] < 0]
    return ecc


def _or_all(ball, idx):
    acc = 0
    for w in idx:
        acc |= ball[w]
    return acc


def metrics(E: EmbeddedMultigraph) -> GraphMetrics:
    if not E.is_connected():
        raise PreconditionError("metrics needs a connected graph")
    ecc = eccentricities(E)
    r = min(ecc)
    degs = [E.degree(v) for v in range(E.n)]
    return GraphMetrics(
        diameter=max(ecc),
        radius=r,
        center=ecc.index(r),
        max_degree=max(degs),
        min_degree=min(degs),
        eccentricity=tuple(ecc),
    )


class SubEmbedding(NamedTuple):
    emb: EmbeddedMultigraph
    vertex_map: tuple[int, ...]  # new vertex id -> old
    edge_map: tuple[int, ...]  # new edge id -> old

    def old_dart(self, d: int) -> int:
        return 2 * self.edge_map[d >> 1] + (d & 1)


def induced_subembedding(E: EmbeddedMultigraph, keep_edges) -> SubEmbedding:
    """Restrict ``E`` to ``keep_edges``; vertices left without darts are dropped."""
    keep = sorted(set(keep_edges))
    for e in keep:
        if not 0 <= e < E.m:
            raise PreconditionError(f"edge {e} is not in the embedding")
    new_e = {e: i for i, e in enumerate(keep)}
    used = sorted({x for e in keep for x in E.edges[e][:2]})
    new_v = {v: i for i, v in enumerate(used)}
    edges = [(new_v[E.edges[e][0]], new_v[E.edges[e][1]], E.edges[e][2]) for e in keep]
    rotation = []
    for v in used:
        rotation.append([2 * new_e[d >> 1] + (d & 1) for d in E.rotation[v] if (d >> 1) in new_e])
    return SubEmbedding(EmbeddedMultigraph(len(used), edges, rotation), tuple(used), tuple(keep))


class Contraction(NamedTuple):
    emb: EmbeddedMultigraph
    vertex_map: tuple[int, ...]  # old vertex id -> new
    edge_map: tuple[int, ...]  # old edge id -> new, -1 for the contracted edge


def contract(E: EmbeddedMultigraph, e: int, keep: int | None = None) -> Contraction:
    """Contract non-loop edge ``e``, merging one endpoint into ``keep``.

    Parallel edges and loops that arise are retained, so no face vanishes.
    """
    u, v, sgn = E.edges[e]
    if u == v:
        raise PreconditionError(f"edge {e} is a loop and cannot be contracted")
    if keep is None:
        keep = u
    if keep not in (u, v):
        raise PreconditionError(f"vertex {keep} is not an endpoint of edge {e}")
    a, b = (u, v) if keep == u else (v, u)
    edges = [list(x) for x in E.edges]
    rot_b = list(E.rotation[b])
    if sgn == -1:
        # local switch at b so that e becomes orientation preserving
        rot_b.reverse()
        for f, (x, y, s) in enumerate(E.edges):
            if (x == b) != (y == b):
                edges[f][2] = -s
    da = 2 * e + (0 if a == u else 1)
    db = da ^ 1
    i = rot_b.index(db)
    tail = rot_b[i + 1:] + rot_b[:i]
    rot_a = list(E.rotation[a])
    j = rot_a.index(da)
    rot_a[j:j + 1] = tail
    for f in range(E.m):
        if edges[f][0] == b:
            edges[f][0] = a
        if edges[f][1] == b:
            edges[f][1] = a

    # vertices above b shift down; b itself lands on a
    vmap = tuple((a - (a > b)) if x == b else (x - (x > b)) for x in range(E.n))
    emap = tuple(-1 if f == e else f - (f > e) for f in range(E.m))

    def nd(d):
        return 2 * emap[d >> 1] + (d & 1)

    new_edges = [(vmap[x], vmap[y], s) for f, (x, y, s) in enumerate(edges) if f != e]
    new_rot = [None] * (E.n - 1)
    for x in range(E.n):
        if x == b:
            continue
        rot = rot_a if x == a else E.rotation[x]
        new_rot[vmap[x]] = [nd(d) for d in rot]
    return Contraction(EmbeddedMultigraph(E.n - 1, new_edges, new_rot), vmap, emap)


def contract_edge(E: EmbeddedMultigraph, e: int) -> EmbeddedMultigraph:
    return contract(E, e).emb


def from_rotation_lists(n: int, neighbor_rot: Sequence[Sequence[int]], signs=None) -> EmbeddedMultigraph:
    """Build a simple-graph embedding from per-vertex cyclic neighbour lists.

    Edges are numbered by sorted endpoint pair; ``signs`` maps ``(u, v)`` with
    ``u < v`` to -1 for twisted edges.
    """
    pairs = sorted({(min(u, w), max(u, w)) for u in range(n) for w in neighbor_rot[u]})
    eid = {p: i for i, p in enumerate(pairs)}
    signs = signs or {}
    edges = [(u, w, signs.get((u, w), 1)) for u, w in pairs]
    rotation = []
    for u in range(n):
        rot = []
        for w in neighbor_rot[u]:
            e = eid[(min(u, w), max(u, w))]
            rot.append(2 * e + (0 if u < w else 1))
        rotation.append(rot)
    return EmbeddedMultigraph(n, edges, rotation)


def from_triangles(n: int, triangles: Sequence[Sequence[int]]) -> EmbeddedMultigraph:
    """Signed rotation system of a simple triangulated surface given its faces.

    The link of every vertex must be a single cycle.  Each vertex gets an
    arbitrary local orientation and edge signs record where neighbouring
    orientations disagree.
    """
    link = [dict() for _ in range(n)]
    for tri in triangles:
        for i in range(3):
            v, a, b = tri[i], tri[(i + 1) % 3], tri[(i + 2) % 3]
            link[v].setdefault(a, []).append(b)
            link[v].setdefault(b, []).append(a)
    order = []
    for v in range(n):
        lk = link[v]
        if any(len(x) != 2 for x in lk.values()):
            raise EmbeddingError(f"link of vertex {v} is not a cycle")
        start = min(lk)
        cyc = [start]
        prev, cur = None, start
        while True:
            a, b = lk[cur]
            nxt = a if a != prev else b
            if nxt == start:
                break
            cyc.append(nxt)
            prev, cur = cur, nxt
            if len(cyc) > len(lk):
                raise EmbeddingError(f"link of vertex {v} is not a cycle")
        if len(cyc) != len(lk):
            raise EmbeddingError(f"link of vertex {v} is disconnected")
        order.append(cyc)

    def after(v, w):
        cyc = order[v]
        return cyc[(cyc.index(w) + 1) % len(cyc)]

    # propagate orientations outwards so orientable surfaces get no twisted edges
    done = [False] * n
    for s in range(n):
        if done[s]:
            continue
        done[s] = True
        queue = [s]
        for v in queue:
            for w in order[v]:
                if not done[w]:
                    done[w] = True
                    if after(v, w) == after(w, v):
                        order[w].reverse()
                    queue.append(w)

    signs = {}
    for v in range(n):
        for w in order[v]:
            if v < w and after(v, w) == after(w, v):
                signs[(v, w)] = -1
    return from_rotation_lists(n, order, signs)
