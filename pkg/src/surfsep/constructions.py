"""Large graphs of given genus, degree and odd diameter: K_p with a rooted tree
hung at every vertex."""
from __future__ import annotations

from dataclasses import dataclass

from .bounds import BUILTIN_P, eq2_lower, min_p
from .embedding import EmbeddedMultigraph, euler_genus, metrics
from .errors import InternalError, PreconditionError
from .generators import base_surface
from .report import Report

_BUILTIN_SURFACE = {0: "sphere", 1: "projective", 2: "torus"}


def construction_order(p: int, delta: int, k: int) -> int:
    """Vertex count of the construction, without building it."""
    depth = (k - 1) // 2
    per_tree = 1 + (delta - p + 1) * sum((delta - 1) ** i for i in range(depth))
    return p * per_tree


def _is_complete(E: EmbeddedMultigraph) -> bool:
    pairs = {(min(u, v), max(u, v)) for u, v, _ in E.edges}
    return not E.has_loops() and len(pairs) == E.m == E.n * (E.n - 1) // 2


def attach_trees(Kp: EmbeddedMultigraph, delta: int, k: int) -> EmbeddedMultigraph:
    """Hang a tree of depth (k-1)/2 at every vertex of the complete graph ``Kp``.

    Each tree is drawn inside the angle that follows the root's smallest dart,
    so the genus is unchanged.  Roots gain ``delta - p + 1`` children and
    every other inner vertex ``delta - 1``.
    """
    p = Kp.n
    if not _is_complete(Kp):
        raise PreconditionError("attach_trees needs an embedding of a complete graph")
    if k < 3 or k % 2 == 0:
        raise PreconditionError(f"k must be odd and >= 3, got {k}")
    if delta < p:
        raise PreconditionError(f"delta={delta} < p={p}")
    depth = (k - 1) // 2
    edges = list(Kp.edges)
    rot = [list(r) for r in Kp.rotation]
    n = p

    def new_child(parent):
        nonlocal n
        c = n
        n += 1
        e = len(edges)
        edges.append((parent, c, 1))
        rot.append([2 * e + 1])
        return c, 2 * e

    for v in range(p):
        level = []
        darts = []
        for _ in range(delta - p + 1):
            c, d = new_child(v)
            level.append(c)
            darts.append(d)
        i = rot[v].index(min(rot[v]))
        rot[v][i + 1:i + 1] = darts
        for _ in range(depth - 1):
            nxt = []
            for x in level:
                for _ in range(delta - 1):
                    c, d = new_child(x)
                    rot[x].append(d)
                    nxt.append(c)
            level = nxt
    return EmbeddedMultigraph(n, edges, rot)


@dataclass(frozen=True)
class ConstructionSpec:
    g: int
    delta: int
    k: int
    p: int | None = None
    kp: EmbeddedMultigraph | None = None  # user-supplied K_p embedding

    def resolved_p(self) -> int:
        if self.kp is not None:
            return self.kp.n
        return self.p if self.p is not None else BUILTIN_P[self.g]


def verify_construction(G: EmbeddedMultigraph, delta: int, k: int, g: int, p: int | None = None,
                        exact_genus: bool = True) -> Report:
    if p is None:
        p = BUILTIN_P.get(g, min_p(g))
    rep = Report("lower-bound construction")
    if not G.is_connected():
        rep.check("connected", False, "")
        return rep
    met = metrics(G)
    rep.check("max degree", met.max_degree == delta, f"max degree {met.max_degree}, claimed {delta}")
    rep.check("diameter", met.diameter == k, f"diameter {met.diameter}, claimed {k}")
    gen = euler_genus(G)
    ok = gen == g if exact_genus else gen <= g
    rep.check("genus", ok, f"Euler genus {gen}, claimed {g}")
    if 3 <= p <= delta and k % 2 == 1 and k >= 3:
        low = p * (delta - p + 1) * (delta - 1) ** ((k - 3) // 2)
        rep.check("order", G.n >= low, f"order {G.n}, lower bound {low}")
    else:
        rep.check("order", False, f"parameters p={p}, delta={delta}, k={k} outside the construction's range")
    return rep


def construct_lower_bound(spec: ConstructionSpec) -> tuple[EmbeddedMultigraph, Report]:
    if spec.k < 3 or spec.k % 2 == 0:
        raise PreconditionError(f"the construction needs odd k >= 3, got {spec.k}")
    if spec.kp is not None:
        Kp = spec.kp
        exact = False
    else:
        if spec.g not in _BUILTIN_SURFACE:
            raise PreconditionError(f"no built-in K_p embedding for Euler genus {spec.g}; supply one")
        Kp = base_surface(_BUILTIN_SURFACE[spec.g])
        exact = True
    p = Kp.n
    if not _is_complete(Kp):
        raise PreconditionError("K_p embedding is not a complete graph")
    if spec.p is not None and spec.p != p:
        raise PreconditionError(f"p={spec.p} does not match the K_{p} embedding")
    if euler_genus(Kp) > spec.g:
        raise PreconditionError(f"K_{p} embedding has Euler genus {euler_genus(Kp)} > {spec.g}")
    if spec.delta < p:
        raise PreconditionError(f"delta={spec.delta} < p={p}")
    # raises when p is too small for g
    eq2_lower(spec.g, spec.delta, spec.k, p)
    G = attach_trees(Kp, spec.delta, spec.k)
    rep = verify_construction(G, spec.delta, spec.k, spec.g, p, exact_genus=exact)
    if not rep.ok:
        raise InternalError(str(rep))
    return G, rep
