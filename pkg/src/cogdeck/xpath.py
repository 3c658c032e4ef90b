"""X-paths: alternating local-group elements and oriented edges.

A path (g0, e1, g1, ..., ek, gk) is stored as its start vertex, the k+1
elements and the k oriented edges.  Homotopy moves are explicit rewrites
addressed by position; deciding homotopy is left to `presentation`.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .cog import CogMorphism, ComplexOfGroups
from .errors import BadElement, EndpointMismatch, NotComposable, NotInImage, PatternMismatch, WrongCog
from .scwol import OrientedEdge

MOVES = ("Ia", "Ib", "IIa", "IIb", "IIIa", "IIIb")


class XPath:
    __slots__ = ("cog", "start", "elements", "edges")

    def __init__(self, cog: ComplexOfGroups, start, elements: Sequence[int], edges: Sequence[OrientedEdge]):
        self.cog = cog
        self.start = start
        self.elements = tuple(elements)
        self.edges = tuple(OrientedEdge(*e) for e in edges)

    @property
    def end(self):
        return self.cog.base.ot(self.edges[-1]) if self.edges else self.start

    def vertex_at(self, m: int):
        """Vertex carrying the m-th element."""
        return self.start if m == 0 else self.cog.base.ot(self.edges[m - 1])

    def __len__(self):
        return len(self.edges)

    def __eq__(self, other):
        return (
            isinstance(other, XPath)
            and self.start == other.start
            and self.elements == other.elements
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.start, self.elements, self.edges))

    def entries(self) -> list:
        out = [self.elements[0]]
        for e, g in zip(self.edges, self.elements[1:]):
            out += [e, g]
        return out

    def __repr__(self):
        parts = [str(x) for x in self.entries()]
        return f"XPath@{self.start}[{', '.join(parts)}]"


def make_path(cog: ComplexOfGroups, start, elements: Sequence[int], edges: Sequence) -> XPath:
    """Build and validate an X-path."""
    X = cog.base
    edges = [OrientedEdge(*e) if not isinstance(e, OrientedEdge) else e for e in edges]
    if len(elements) != len(edges) + 1:
        raise PatternMismatch("need exactly one more element than edges")
    v = start
    if v not in X.out_edges:
        raise PatternMismatch(f"unknown vertex {v!r}")
    for m, g in enumerate(elements):
        if m > 0:
            e = edges[m - 1]
            if e.edge not in X.edges:
                raise PatternMismatch(f"unknown edge {e.edge!r}")
            if X.oi(e) != v:
                raise EndpointMismatch(f"edge {e} does not start at {v!r}")
            v = X.ot(e)
        if not 0 <= g < cog.G(v).order:
            raise BadElement(f"element {g} not in G_{v}")
    return XPath(cog, start, elements, edges)


def trivial_path(cog: ComplexOfGroups, v, g: int = 0) -> XPath:
    return XPath(cog, v, (g,), ())


def edge_path(cog: ComplexOfGroups, e: OrientedEdge, g: int = 0, h: int = 0) -> XPath:
    e = OrientedEdge(*e)
    return XPath(cog, cog.base.oi(e), (g, h), (e,))


def concat(p: XPath, q: XPath) -> XPath:
    if p.end != q.start:
        raise EndpointMismatch(f"path ends at {p.end!r}, next starts at {q.start!r}")
    G = p.cog.G(p.end)
    mid = G.mul(p.elements[-1], q.elements[0])
    return XPath(p.cog, p.start, p.elements[:-1] + (mid,) + q.elements[1:], p.edges + q.edges)


def concat_all(paths: Iterable[XPath]) -> XPath:
    it = iter(paths)
    out = next(it)
    for q in it:
        out = concat(out, q)
    return out


def inverse(p: XPath) -> XPath:
    elts = []
    for m in range(len(p.elements) - 1, -1, -1):
        elts.append(p.cog.G(p.vertex_at(m)).inv(p.elements[m]))
    edges = tuple(e.reversed() for e in reversed(p.edges))
    return XPath(p.cog, p.end, elts, edges)


def path_from_edges(cog: ComplexOfGroups, start, edges: Sequence[OrientedEdge]) -> XPath:
    return XPath(cog, start, (0,) * (len(edges) + 1), edges)


def _preimage(hom, y):
    x = hom.preimage(y)
    if x is None:
        raise NotInImage(f"{y} is not in the image of psi")
    return x


def apply_move(p: XPath, index: int, move: str, inverse: bool = False, params: Mapping | None = None) -> XPath:
    """Rewrite the subpath at `index` by one elementary move.

    `index` is the position of the first edge of the pattern for Ia, Ib and
    all forward moves and for inverse III moves; for inverse IIa/IIb it is
    the position of the element that gets expanded.  Parameters:
      Ia: g  (in G_i(a));  Ib: h  (in G_i(a));
      inverse IIa/IIb: edge, g, h;  inverse IIIa/IIIb: a, b.
    """
    params = dict(params or {})
    X = p.cog.base
    cog = p.cog
    el = list(p.elements)
    ed = list(p.edges)

    def need_edge(j, forward):
        if not 0 <= j < len(ed) or ed[j].forward != forward:
            raise PatternMismatch(f"{move}: expected {'a' if forward else 'a^-1'} at edge position {j}")
        return ed[j].edge

    if move == "Ia":
        a = need_edge(index, True)
        Gi, Gt = cog.G(X.i(a)), cog.G(X.t(a))
        g = params.get("g", 0)
        if not 0 <= g < Gi.order:
            raise BadElement("g outside G_i(a)")
        pg = cog.psi[a](g)
        if inverse:
            # (k, a, psi(g) h) -> (k g, a, h)
            el[index] = Gi.mul(el[index], g)
            el[index + 1] = Gt.mul(Gt.inv(pg), el[index + 1])
        else:
            # (k g, a, h) -> (k, a, psi(g) h)
            el[index] = Gi.mul(el[index], Gi.inv(g))
            el[index + 1] = Gt.mul(pg, el[index + 1])
        return XPath(cog, p.start, el, ed)

    if move == "Ib":
        a = need_edge(index, False)
        Gi, Gt = cog.G(X.i(a)), cog.G(X.t(a))
        h = params.get("h", 0)
        if not 0 <= h < Gi.order:
            raise BadElement("h outside G_i(a)")
        ph = cog.psi[a](h)
        if inverse:
            # (g psi(h), a^-1, k) -> (g, a^-1, h k)
            el[index] = Gt.mul(el[index], Gt.inv(ph))
            el[index + 1] = Gi.mul(h, el[index + 1])
        else:
            # (g, a^-1, h k) -> (g psi(h), a^-1, k)
            el[index] = Gt.mul(el[index], ph)
            el[index + 1] = Gi.mul(Gi.inv(h), el[index + 1])
        return XPath(cog, p.start, el, ed)

    if move in ("IIa", "IIb") and not inverse:
        first = move == "IIa"
        a = need_edge(index, first)
        b = need_edge(index + 1, not first)
        if a != b:
            raise PatternMismatch(f"{move}: the two edges differ")
        mid = el[index + 1]
        if first:
            G = cog.G(X.i(a))
            h = _preimage(cog.psi[a], mid)
        else:
            G = cog.G(X.t(a))
            h = cog.psi[a](mid)
        merged = G.prod(el[index], h, el[index + 2])
        return XPath(cog, p.start, el[:index] + [merged] + el[index + 3:], ed[:index] + ed[index + 2:])

    if move in ("IIa", "IIb"):
        m = index
        if not 0 <= m < len(el):
            raise PatternMismatch(f"{move}: no element at position {m}")
        a = params["edge"]
        v = p.vertex_at(m)
        first = move == "IIa"
        if (X.i(a) if first else X.t(a)) != v:
            raise PatternMismatch(f"{move}: edge {a!r} does not fit at {v!r}")
        G = cog.G(v)
        g, h = params.get("g", 0), params.get("h", 0)
        if first:
            mid = cog.psi[a](h)
            k = G.prod(G.inv(h), G.inv(g), el[m])
            new_edges = [OrientedEdge(a, True), OrientedEdge(a, False)]
        else:
            mid = h
            k = G.prod(G.inv(cog.psi[a](h)), G.inv(g), el[m])
            new_edges = [OrientedEdge(a, False), OrientedEdge(a, True)]
        return XPath(cog, p.start, el[:m] + [g, mid, k] + el[m + 1:], ed[:m] + new_edges + ed[m:])

    if move in ("IIIa", "IIIb") and not inverse:
        fwd = move == "IIIa"
        first = need_edge(index, fwd)
        second = need_edge(index + 1, fwd)
        if el[index + 1] != 0:
            raise PatternMismatch(f"{move}: middle element must be the identity")
        # IIIa: (g, b, 1, a, k); IIIb: (g, a^-1, 1, b^-1, k)
        a, b = (second, first) if fwd else (first, second)
        if (a, b) not in X.compose:
            raise NotComposable(f"({a!r}, {b!r}) is not composable")
        ab = X.compose[(a, b)]
        Gt = cog.G(X.t(a))
        gab = cog.twist[(a, b)]
        if fwd:
            new = [el[index], Gt.mul(Gt.inv(gab), el[index + 2])]
        else:
            new = [Gt.mul(el[index], gab), el[index + 2]]
        return XPath(cog, p.start, el[:index] + new + el[index + 3:], ed[:index] + [OrientedEdge(ab, fwd)] + ed[index + 2:])

    if move in ("IIIa", "IIIb"):
        fwd = move == "IIIa"
        c = need_edge(index, fwd)
        a, b = params["a"], params["b"]
        if X.compose.get((a, b)) != c:
            raise NotComposable(f"({a!r}, {b!r}) does not compose to {c!r}")
        Gt = cog.G(X.t(a))
        gab = cog.twist[(a, b)]
        if fwd:
            new_el = [el[index], 0, Gt.mul(gab, el[index + 1])]
            new_ed = [OrientedEdge(b, True), OrientedEdge(a, True)]
        else:
            new_el = [Gt.mul(el[index], Gt.inv(gab)), 0, el[index + 1]]
            new_ed = [OrientedEdge(a, False), OrientedEdge(b, False)]
        return XPath(cog, p.start, el[:index] + new_el + el[index + 2:], ed[:index] + new_ed + ed[index + 1:])

    raise PatternMismatch(f"unknown move {move!r}")


def move_sites(p: XPath) -> list:
    """All (index, move, inverse) triples whose pattern matches p.

    Parameter choices are left to the caller; every listed site accepts at
    least the identity parameters (or some factorization for inverse III moves).
    """
    X = p.cog.base
    sites = []
    for j, e in enumerate(p.edges):
        sites.append((j, "Ia" if e.forward else "Ib", False))
        sites.append((j, "Ia" if e.forward else "Ib", True))
        if j + 1 < len(p.edges):
            f = p.edges[j + 1]
            if e.edge == f.edge and e.forward != f.forward:
                if e.forward:
                    if p.cog.psi[e.edge].preimage(p.elements[j + 1]) is not None:
                        sites.append((j, "IIa", False))
                else:
                    sites.append((j, "IIb", False))
            if e.forward == f.forward and p.elements[j + 1] == 0:
                sites.append((j, "IIIa" if e.forward else "IIIb", False))
        if any(ab == e.edge for ab in X.compose.values()):
            sites.append((j, "IIIa" if e.forward else "IIIb", True))
    for m in range(len(p.elements)):
        v = p.vertex_at(m)
        if X.out_edges[v]:
            sites.append((m, "IIa", True))
        if X.in_edges[v]:
            sites.append((m, "IIb", True))
    return sites


def map_path(phi: CogMorphism, p: XPath) -> XPath:
    """The path map: (1,a,1) -> (1,f(a),phi(a)^-1), (1,a^-1,1) -> (phi(a),f(a)^-1,1), (g) -> (phi_v(g))."""
    if p.cog is not phi.source and p.cog != phi.source:
        raise WrongCog("path does not live over the source of the morphism")
    Y = phi.target
    f = phi.f
    elts = [phi.locals[p.start](p.elements[0])]
    edges = []
    for m, e in enumerate(p.edges, start=1):
        a = e.edge
        u = phi.edge_elts[a]
        v = p.vertex_at(m)
        if e.forward:
            Gt = Y.G(f.vmap[v])
            edges.append(OrientedEdge(f.emap[a], True))
            elts.append(Gt.mul(Gt.inv(u), phi.locals[v](p.elements[m])))
        else:
            Gprev = Y.G(f.vmap[p.vertex_at(m - 1)])
            elts[-1] = Gprev.mul(elts[-1], u)
            edges.append(OrientedEdge(f.emap[a], False))
            elts.append(phi.locals[v](p.elements[m]))
    return XPath(Y, f.vmap[p.start], elts, edges)


def x_gen(v, g):
    return ("x", v, g)


def t_gen(a):
    return ("t", a)


def word_of_path(p: XPath) -> tuple:
    """Word x_(v0,g0) t_e1^(+-1) x_(v1,g1) ..., omitting identity letters."""
    word = []
    for m, g in enumerate(p.elements):
        if m > 0:
            e = p.edges[m - 1]
            word.append((t_gen(e.edge), 1 if e.forward else -1))
        if g != 0:
            word.append((x_gen(p.vertex_at(m), g), 1))
    return tuple(word)
