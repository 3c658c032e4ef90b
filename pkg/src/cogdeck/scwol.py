"""Small categories without loops (scwols) and their morphisms."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, NamedTuple

from .errors import (
    BadComposite,
    CompositeBroken,
    Disconnected,
    IncidenceBroken,
    LoopEdge,
    MissingComposite,
    NotAssociative,
    ScwolError,
    StarNotBijective,
    UnknownVertex,
)


def id_key(x):
    """Sort key that orders ints numerically, then strings."""
    if isinstance(x, int):
        return (0, x, "")
    return (1, 0, str(x))


def sorted_ids(xs: Iterable) -> list:
    return sorted(xs, key=id_key)


class OrientedEdge(NamedTuple):
    edge: Hashable
    forward: bool = True

    def reversed(self) -> "OrientedEdge":
        return OrientedEdge(self.edge, not self.forward)

    def __str__(self):
        return str(self.edge) if self.forward else f"~{self.edge}"


class Scwol:
    """Vertices, edges with initial/terminal vertex, and composition on E2X.

    Use `validate_scwol` to build one; the constructor trusts its input.
    """

    def __init__(self, vertices, edges: Mapping, compose: Mapping):
        self.vertices = tuple(sorted_ids(vertices))
        self.edges = {a: (edges[a][0], edges[a][1]) for a in sorted_ids(edges)}
        self.compose = dict(compose)
        self.out_edges = {v: [] for v in self.vertices}
        self.in_edges = {v: [] for v in self.vertices}
        for a, (i, t) in self.edges.items():
            self.out_edges[i].append(a)
            self.in_edges[t].append(a)
        # E2X as (a, b) with i(a) = t(b), in ascending order
        self.e2 = [(a, b) for a in self.edges for b in self.in_edges[self.i(a)]]
        self.e3 = [(a, b, c) for (a, b) in self.e2 for c in self.in_edges[self.i(b)]]

    def i(self, a):
        return self.edges[a][0]

    def t(self, a):
        return self.edges[a][1]

    def oi(self, e: OrientedEdge):
        return self.edges[e.edge][0] if e.forward else self.edges[e.edge][1]

    def ot(self, e: OrientedEdge):
        return self.edges[e.edge][1] if e.forward else self.edges[e.edge][0]

    def incident(self, v) -> list:
        """Oriented edges leaving v in the undirected incidence graph, by edge id."""
        out = [OrientedEdge(a, True) for a in self.out_edges[v]]
        out += [OrientedEdge(a, False) for a in self.in_edges[v]]
        return sorted(out, key=lambda e: (id_key(e.edge), not e.forward))

    def __eq__(self, other):
        return (
            isinstance(other, Scwol)
            and self.vertices == other.vertices
            and self.edges == other.edges
            and self.compose == other.compose
        )

    def __hash__(self):
        return hash((self.vertices, tuple(self.edges.items())))

    def __repr__(self):
        return f"<Scwol |V|={len(self.vertices)} |E|={len(self.edges)} |E2|={len(self.e2)}>"


def validate_scwol(vertices, edges: Mapping, compose: Mapping) -> Scwol:
    vset = set(vertices)
    if len(vset) != len(list(vertices)):
        raise ScwolError("duplicate vertex id")
    for a, (i, t) in edges.items():
        if i not in vset or t not in vset:
            raise ScwolError(f"edge {a!r} refers to an unknown vertex")
        if i == t:
            raise LoopEdge(a)
    X = Scwol(vertices, edges, {})
    required = set(X.e2)
    for pair, ab in compose.items():
        a, b = pair
        if pair not in required:
            raise BadComposite(a, b, "(pair is not composable)")
        if ab not in X.edges:
            raise BadComposite(a, b, f"(unknown composite {ab!r})")
        if X.i(ab) != X.i(b) or X.t(ab) != X.t(a):
            raise BadComposite(a, b, "(incidence)")
    for a, b in X.e2:
        if (a, b) not in compose:
            raise MissingComposite(a, b)
    X = Scwol(vertices, edges, compose)
    for a, b, c in X.e3:
        if X.compose[(X.compose[(a, b)], c)] != X.compose[(a, X.compose[(b, c)])]:
            raise NotAssociative(a, b, c)
    return X


@dataclass(frozen=True)
class ScwolMorphism:
    source: Scwol
    target: Scwol
    vmap: dict
    emap: dict

    def __call__(self, a):
        return self.emap[a]

    def v(self, x):
        return self.vmap[x]

    def then(self, other: "ScwolMorphism") -> "ScwolMorphism":
        """other o self."""
        return ScwolMorphism(
            self.source,
            other.target,
            {x: other.vmap[y] for x, y in self.vmap.items()},
            {a: other.emap[b] for a, b in self.emap.items()},
        )

    def is_bijective(self) -> bool:
        return (
            len(set(self.vmap.values())) == len(self.target.vertices) == len(self.source.vertices)
            and len(set(self.emap.values())) == len(self.target.edges) == len(self.source.edges)
        )

    def inverse(self) -> "ScwolMorphism":
        if not self.is_bijective():
            raise ScwolError("scwol morphism is not bijective")
        return ScwolMorphism(
            self.target,
            self.source,
            {y: x for x, y in self.vmap.items()},
            {b: a for a, b in self.emap.items()},
        )

    def __eq__(self, other):
        return (
            isinstance(other, ScwolMorphism)
            and self.vmap == other.vmap
            and self.emap == other.emap
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self):
        return hash(tuple(sorted(self.vmap.items(), key=lambda kv: id_key(kv[0]))))


def validate_morphism(source: Scwol, target: Scwol, vmap: Mapping, emap: Mapping) -> ScwolMorphism:
    vmap = {v: vmap[v] for v in source.vertices}
    emap = {a: emap[a] for a in source.edges}
    for v, w in vmap.items():
        if w not in target.out_edges:
            raise UnknownVertex(w)
    for a, b in emap.items():
        if b not in target.edges:
            raise ScwolError(f"edge {a!r} maps to unknown edge {b!r}")
        if target.i(b) != vmap[source.i(a)] or target.t(b) != vmap[source.t(a)]:
            raise IncidenceBroken(a)
    for a, b in source.e2:
        if emap[source.compose[(a, b)]] != target.compose[(emap[a], emap[b])]:
            raise CompositeBroken(a, b)
    for v in source.vertices:
        imgs = sorted_ids(emap[a] for a in source.out_edges[v])
        if imgs != target.out_edges[vmap[v]]:
            raise StarNotBijective(v)
    return ScwolMorphism(source, target, vmap, emap)


def identity_morphism(X: Scwol) -> ScwolMorphism:
    return ScwolMorphism(X, X, {v: v for v in X.vertices}, {a: a for a in X.edges})


def components(X: Scwol) -> list:
    seen = set()
    out = []
    for v in X.vertices:
        if v in seen:
            continue
        comp = [v]
        seen.add(v)
        k = 0
        while k < len(comp):
            for e in X.incident(comp[k]):
                w = X.ot(e)
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
            k += 1
        out.append(sorted_ids(comp))
    return out


@dataclass(frozen=True)
class SpanningTree:
    scwol: Scwol
    root: Hashable
    tree_edges: frozenset
    parent: dict  # vertex -> OrientedEdge traversed from the parent into the vertex
    depth: dict
    order: tuple  # vertices in BFS order


def spanning_tree(X: Scwol, root) -> SpanningTree:
    if root not in X.out_edges:
        raise UnknownVertex(root)
    parent = {}
    depth = {root: 0}
    order = [root]
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for e in X.incident(v):
            w = X.ot(e)
            if w not in depth:
                depth[w] = depth[v] + 1
                parent[w] = e
                order.append(w)
                queue.append(w)
    if len(depth) != len(X.vertices):
        raise Disconnected(components(X))
    return SpanningTree(X, root, frozenset(e.edge for e in parent.values()), parent, depth, tuple(order))


def tree_path(T: SpanningTree, v) -> list:
    """Oriented edges from the root to v along the tree."""
    if v not in T.depth:
        raise UnknownVertex(v)
    path = []
    while v != T.root:
        e = T.parent[v]
        path.append(e)
        v = T.scwol.oi(e)
    path.reverse()
    return path
