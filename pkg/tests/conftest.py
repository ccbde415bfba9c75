"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the package's own traversal code: faces
of orientable rotation systems are counted as orbits of the permutation
"rotate after twin", and distances come from a plain adjacency-list BFS.
"""
from __future__ import annotations

from collections import deque

import pytest

from surfsep.embedding import EmbeddedMultigraph, from_rotation_lists
from surfsep.generators import base_surface


def adjacency(n: int, edges) -> list[list[int]]:
    adj = [[] for _ in range(n)]
    for u, v, *_ in edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def bfs_oracle(n: int, edges, sources) -> list[int]:
    """Distances from a source set, -1 when unreachable."""
    adj = adjacency(n, edges)
    dist = [-1] * n
    q = deque()
    for s in sources:
        dist[s] = 0
        q.append(s)
    while q:
        v = q.popleft()
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                q.append(w)
    return dist


def all_pairs_oracle(n: int, edges) -> list[list[int]]:
    return [bfs_oracle(n, edges, [s]) for s in range(n)]


def orientable_face_orbits(E: EmbeddedMultigraph) -> list[list[int]]:
    """Orbits of dart -> next dart around a face, for all-positive signs."""
    assert all(s == 1 for _, _, s in E.edges)
    nxt = {}
    for rot in E.rotation:
        for i, d in enumerate(rot):
            nxt[d] = rot[(i + 1) % len(rot)]
    seen = set()
    orbits = []
    for d0 in range(2 * E.m):
        if d0 in seen:
            continue
        orb = []
        d = d0
        while d not in seen:
            seen.add(d)
            orb.append(d)
            d = nxt[d ^ 1]
        orbits.append(orb)
    return orbits


def private_counts(TD, R):
    """Sizes of G[Q] for each subtree Q of T - R, computed from scratch."""
    cut = {frozenset(p) for p in R}
    nbrs = {x: [] for x in TD.nodes}
    for a, b in TD.tree_edges:
        if frozenset((a, b)) not in cut:
            nbrs[a].append(b)
            nbrs[b].append(a)
    label = {}
    for s in TD.nodes:
        if s in label:
            continue
        label[s] = s
        stack = [s]
        while stack:
            x = stack.pop()
            for y in nbrs[x]:
                if y not in label:
                    label[y] = s
                    stack.append(y)
    where = {}
    for z, bag in TD.bags.items():
        for v in bag:
            where.setdefault(v, set()).add(label[z])
    counts = dict.fromkeys(set(label.values()), 0)
    for labs in where.values():
        if len(labs) == 1:
            counts[labs.pop()] += 1
    return sorted(counts.values())


@pytest.fixture
def tetra() -> EmbeddedMultigraph:
    return base_surface("sphere")


@pytest.fixture
def k6_projective() -> EmbeddedMultigraph:
    return base_surface("projective")


@pytest.fixture
def k7_torus() -> EmbeddedMultigraph:
    return base_surface("torus")


@pytest.fixture
def path3() -> EmbeddedMultigraph:
    return from_rotation_lists(3, [[1], [0, 2], [1]])


@pytest.fixture
def triangle() -> EmbeddedMultigraph:
    return from_rotation_lists(3, [[1, 2], [2, 0], [0, 1]])


@pytest.fixture
def square() -> EmbeddedMultigraph:
    return from_rotation_lists(4, [[1, 3], [2, 0], [3, 1], [0, 2]])


@pytest.fixture
def bigon() -> EmbeddedMultigraph:
    # two vertices joined by two parallel edges on the sphere
    return EmbeddedMultigraph(2, [(0, 1, 1), (0, 1, 1)], [[0, 2], [3, 1]])


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


def record_acceptance(number: int, ok: bool, what: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {what}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
