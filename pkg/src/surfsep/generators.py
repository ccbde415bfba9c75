"""Base triangulations, seeded random growth and triangulation of embeddings."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .embedding import (
    EmbeddedMultigraph,
    euler_genus,
    from_rotation_lists,
    from_triangles,
    trace_faces,
)
from .errors import PreconditionError

SURFACES = ("sphere", "projective", "torus")

_PROJECTIVE_K6 = [
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
    (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3),
]


def base_surface(name: str) -> EmbeddedMultigraph:
    """Tetrahedron (g=0), K6 on the projective plane (g=1) or K7 on the torus (g=2)."""
    if name == "sphere":
        return from_triangles(4, [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)])
    if name == "projective":
        # hemi-icosahedron: the icosahedron modulo its antipodal map
        return from_triangles(6, _PROJECTIVE_K6)
    if name == "torus":
        return from_rotation_lists(7, [[(i + a) % 7 for a in (1, 3, 2, 6, 4, 5)] for i in range(7)])
    raise ValueError(f"unknown surface {name!r}; expected one of {SURFACES}")


def is_triangulation(E: EmbeddedMultigraph) -> bool:
    return not E.has_loops() and all(f.length == 3 for f in trace_faces(E))


class _Builder:
    """Mutable rotation system used while adding vertices and chords."""

    def __init__(self, E: EmbeddedMultigraph):
        self.n = E.n
        self.edges = [list(x) for x in E.edges]
        self.rot = [list(r) for r in E.rotation]

    def sign(self, d):
        return self.edges[d >> 1][2]

    def origin(self, d):
        return self.edges[d >> 1][d & 1]

    def add_edge(self, u, v, s):
        e = len(self.edges)
        self.edges.append([u, v, s])
        return 2 * e, 2 * e + 1

    def insert_in_corner(self, incoming, outgoing, side, dart):
        """Place ``dart`` in the angle between ``incoming`` and ``outgoing``.

        ``incoming`` is the twin of the dart the walk arrived on and
        ``outgoing`` the dart it leaves on, with local orientation ``side``.
        """
        v = self.origin(outgoing)
        rot = self.rot[v]
        i = rot.index(incoming)
        if side == 1:
            rot.insert(i + 1, dart)
        else:
            rot.insert(i, dart)

    def star(self, walk):
        """Put a new vertex inside the face ``walk`` joined to every corner.

        Returns the new vertex and the new triangular faces as state lists.
        """
        z = self.n
        self.n += 1
        k = len(walk)
        at_corner, at_z = [], []
        for i, (d, s) in enumerate(walk):
            incoming = walk[i - 1][0] ^ 1
            a, b = self.add_edge(self.origin(d), z, s)
            self.insert_in_corner(incoming, d, s, a)
            at_corner.append(a)
            at_z.append(b)
        self.rot.append(list(reversed(at_z)))
        faces = []
        for i, (d, s) in enumerate(walk):
            j = (i + 1) % k
            faces.append([(d, s), (at_corner[j], walk[j][1]), (at_z[i], 1)])
        return z, faces

    def chord(self, walk, i, j):
        """Split face ``walk`` by an edge from corner ``i`` to corner ``j`` (i < j)."""
        di, si = walk[i]
        dj, sj = walk[j]
        a, b = self.add_edge(self.origin(di), self.origin(dj), si * sj)
        self.insert_in_corner(walk[i - 1][0] ^ 1, di, si, a)
        self.insert_in_corner(walk[j - 1][0] ^ 1, dj, sj, b)
        face_a = walk[j:] + walk[:i] + [(a, si)]
        face_b = walk[i:j] + [(b, sj)]
        return face_a, face_b

    def build(self) -> EmbeddedMultigraph:
        return EmbeddedMultigraph(self.n, [tuple(x) for x in self.edges], self.rot)


@dataclass(frozen=True)
class GrowthSpec:
    base: object  # surface name or an EmbeddedMultigraph
    target_n: int
    seed: int


def grow_random(spec: GrowthSpec) -> EmbeddedMultigraph:
    """Grow a triangulation by star insertions into uniformly chosen faces."""
    base = base_surface(spec.base) if isinstance(spec.base, str) else spec.base
    if base.has_loops():
        raise PreconditionError("base has loops")
    faces = [list(f.steps) for f in trace_faces(base)]
    if any(len(f) != 3 for f in faces):
        raise PreconditionError("base is not a triangulation")
    if spec.target_n < base.n:
        raise PreconditionError(f"target_n={spec.target_n} is below the base size {base.n}")
    rng = random.Random(spec.seed)
    b = _Builder(base)
    for _ in range(spec.target_n - base.n):
        i = rng.randrange(len(faces))
        _, new = b.star(faces[i])
        faces[i] = new[0]
        faces.extend(new[1:])
    return b.build()


def triangulate(E: EmbeddedMultigraph, strategy: str = "ear", g_ambient: int | None = None):
    """Return ``(triangulation, auxiliary_vertices)``.

    ``ear`` cuts loop-free ears off each face and only falls back to a star
    vertex when a face has no such ear or length below 3; ``star`` stars
    every non-triangular face.
    """
    if strategy not in ("ear", "star"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if E.has_loops():
        raise PreconditionError("triangulate needs a loopless embedding")
    if not E.is_connected():
        raise PreconditionError("triangulate needs a connected embedding")
    if g_ambient is not None and euler_genus(E) != g_ambient:
        raise PreconditionError(f"embedding is not 2-cell in Euler genus {g_ambient}")
    b = _Builder(E)
    aux = set()
    todo = [list(f.steps) for f in trace_faces(E) if f.length != 3]
    while todo:
        walk = todo.pop()
        if len(walk) == 3:
            continue
        if strategy == "ear" and len(walk) > 3:
            ear = _find_ear(b, walk)
            if ear is not None:
                k = len(walk)
                i, j = (ear - 1) % k, (ear + 1) % k
                if i > j:
                    i, j = j, i
                fa, fb = b.chord(walk, i, j)
                todo.extend(f for f in (fa, fb) if len(f) != 3)
                continue
        z, _ = b.star(walk)
        aux.add(z)
    return b.build(), frozenset(aux)


def _find_ear(b: _Builder, walk):
    k = len(walk)
    verts = [b.origin(d) for d, _ in walk]
    for i in range(k):
        if verts[i - 1] != verts[(i + 1) % k]:
            return i
    return None
