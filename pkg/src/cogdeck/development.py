"""The universal development in the coset model.

Vertices are pairs (v, gU_v) with U_v the image of G_v in pi1; the edge over a
starting at (i(a), gU_i(a)) ends at (t(a), g T_a U_t(a)), where T_a is the
class of the generator t_a.  pi1 acts by left multiplication.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cog import ComplexOfGroups, CogMorphism, check_morphism_axioms, is_covering, trivial_cog, validate_cog, validate_cog_morphism
from .errors import CogError, NotDevelopable
from .groups import GroupHom, Subgroup, coset_index, make_hom, subgroup_as_group
from .presentation import Pi1Group, fundamental_group, is_developable
from .scwol import OrientedEdge, ScwolMorphism, identity_morphism, validate_morphism, validate_scwol
from .xpath import XPath, concat, edge_path, map_path, trivial_path


class Development:
    def __init__(self, cog: ComplexOfGroups, base, pi1: Pi1Group):
        ok, bad = is_developable(pi1)
        if not ok:
            raise NotDevelopable(bad)
        self.cog = cog
        self.base_vertex = base
        self.pi1 = pi1
        G = self.G = pi1.group
        X = cog.base
        self.U = {v: pi1.local_subgroup(v) for v in X.vertices}
        self.crep = {v: coset_index(G, self.U[v]) for v in X.vertices}
        self.T = {a: pi1.t_element(a) for a in X.edges}
        self.vertices = []
        for v in X.vertices:
            for r in sorted(set(self.crep[v].values())):
                self.vertices.append((v, r))
        self.vindex = {key: n for n, key in enumerate(self.vertices)}
        self.edges = []
        for a in X.edges:
            for r in sorted(set(self.crep[X.i(a)].values())):
                self.edges.append((a, r))
        self.eindex = {key: n for n, key in enumerate(self.edges)}
        inc = {}
        for n, (a, r) in enumerate(self.edges):
            inc[n] = (self.vindex[(X.i(a), r)], self.vindex[(X.t(a), self.crep[X.t(a)][G.mul(r, self.T[a])])])
        compose = {}
        for nb, (b, r) in enumerate(self.edges):
            _, s = self.vertices[inc[nb][1]]
            for a in X.out_edges[X.t(b)]:
                compose[(self.eindex[(a, s)], nb)] = self.eindex[(X.compose[(a, b)], r)]
        self.scwol = validate_scwol(range(len(self.vertices)), inc, compose)
        self.base = self.vindex[(base, 0)]
        self.projection = validate_morphism(
            self.scwol,
            X,
            {n: v for n, (v, _) in enumerate(self.vertices)},
            {n: a for n, (a, _) in enumerate(self.edges)},
        )
        self._build_rep_paths()

    # -- cells and action
    def label(self, v):
        return self.vertices[v][0]

    def edge_from(self, v, a):
        """The development edge over a whose initial vertex is v."""
        sigma, r = self.vertices[v]
        return self.eindex[(a, r)]

    def vertex_of_element(self, sigma, g):
        return self.vindex[(sigma, self.crep[sigma][g])]

    def act_vertex(self, x: int, v: int) -> int:
        sigma, r = self.vertices[v]
        return self.vindex[(sigma, self.crep[sigma][self.G.mul(x, r)])]

    def act_edge(self, x: int, e: int) -> int:
        a, r = self.edges[e]
        i = self.cog.base.i(a)
        return self.eindex[(a, self.crep[i][self.G.mul(x, r)])]

    def act(self, x: int, cell):
        kind, n = cell
        return (kind, self.act_vertex(x, n) if kind == "vertex" else self.act_edge(x, n))

    def stabilizer(self, v: int) -> Subgroup:
        return Subgroup(self.G, tuple(x for x in self.G.elements() if self.act_vertex(x, v) == v))

    def action_kernel(self) -> Subgroup:
        return Subgroup(
            self.G,
            tuple(x for x in self.G.elements() if all(self.act_vertex(x, v) == v for v in range(len(self.vertices)))),
        )

    # -- representative paths
    def _build_rep_paths(self):
        X = self.cog.base
        G = self.G
        D = self.scwol
        paths = {self.base: trivial_path(self.cog, self.base_vertex)}
        elts = {self.base: 0}
        queue = [self.base]
        k = 0
        while k < len(queue):
            w = queue[k]
            k += 1
            for e in D.incident(w):
                nxt = D.ot(e)
                if nxt in paths:
                    continue
                a = self.edges[e.edge][0]
                if e.forward:
                    step = edge_path(self.cog, OrientedEdge(a, True))
                else:
                    iota = self.pi1.iota(X.t(a))
                    target = self.vertices[nxt]
                    Tinv = G.inv(self.T[a])
                    for kk in self.cog.G(X.t(a)).elements():
                        g = G.prod(elts[w], iota(kk), Tinv)
                        if self.crep[target[0]][g] == target[1]:
                            break
                    else:
                        raise CogError("internal: no coset representative for a backward step")
                    step = edge_path(self.cog, OrientedEdge(a, False), kk, 0)
                p = concat(paths[w], step)
                paths[nxt] = p
                elts[nxt] = self.pi1.element_of_path(p)
                queue.append(nxt)
        self.rep_paths = [paths[v] for v in range(len(self.vertices))]
        self.vertex_elements = [elts[v] for v in range(len(self.vertices))]

    def rep_path(self, v: int) -> XPath:
        return self.rep_paths[v]

    def vertex_of_path(self, p: XPath) -> int:
        """[p> for a path starting at the base vertex."""
        if p.start != self.base_vertex:
            raise CogError("path does not start at the base vertex")
        return self.vertex_of_element(p.end, self.pi1.element_of_path(p))

    def __repr__(self):
        return f"<Development |V|={len(self.vertices)} |E|={len(self.edges)} |E2|={len(self.scwol.e2)}>"


def build_development(cog: ComplexOfGroups, base, limit: int = 100000) -> Development:
    return Development(cog, base, fundamental_group(cog, base, limit))


def induced_cog(dev: Development):
    """Complex of groups induced by pi1 acting on the development, and the iso from the input.

    Fundamental domain: the vertices (v, U_v); h_a = T_a^-1 (trivial on tree edges).
    """
    G = dev.G
    X = dev.cog.base
    local, emb, back = {}, {}, {}
    for v in X.vertices:
        H, e = subgroup_as_group(G, dev.U[v], f"stab({v})")
        local[v] = H
        emb[v] = e
        back[v] = {y: x for x, y in enumerate(e.image)}
    h = {a: G.inv(dev.T[a]) for a in X.edges}
    psi = {}
    for a in X.edges:
        src, dst = X.i(a), X.t(a)
        psi[a] = GroupHom(local[src], local[dst], tuple(back[dst][G.conj(h[a], y)] for y in emb[src].image))
    twist = {}
    for (a, b), ab in X.compose.items():
        twist[(a, b)] = back[X.t(a)][G.prod(h[a], h[b], G.inv(h[ab]))]
    bar = validate_cog(X, local, psi, twist, "induced")
    iso_locals = {v: GroupHom(dev.cog.G(v), local[v], tuple(back[v][y] for y in dev.pi1.iota(v).image)) for v in X.vertices}
    iso = validate_cog_morphism(dev.cog, bar, identity_morphism(X), iso_locals, {})
    return bar, iso


def canonical_covering(dev: Development) -> CogMorphism:
    """Covering from the trivial complex over the development onto the input complex.

    Edge elements are iota^-1(g_t^-1 g_i T_a) where g_v is the class of the
    representative path of v; they vanish on the edges used by those paths
    in the forward direction.
    """
    G = dev.G
    X = dev.cog.base
    src = trivial_cog(dev.scwol, "dev")
    back = {v: {y: x for x, y in enumerate(dev.pi1.iota(v).image)} for v in X.vertices}
    elts = {}
    for n, (a, r) in enumerate(dev.edges):
        gi = dev.vertex_elements[dev.scwol.i(n)]
        gt = dev.vertex_elements[dev.scwol.t(n)]
        elts[n] = back[X.t(a)][G.prod(G.inv(gt), gi, dev.T[a])]
    locals_ = {v: GroupHom(src.G(v), dev.cog.G(dev.label(v)), (0,)) for v in dev.scwol.vertices}
    lam = CogMorphism(src, dev.cog, dev.projection, locals_, elts, "lambda")
    check_morphism_axioms(lam)
    is_covering(lam)
    return lam


def all_identity_projection(dev: Development) -> CogMorphism:
    """The projection with every edge element 1 (a morphism when twists vanish, rarely a covering)."""
    src = trivial_cog(dev.scwol, "dev")
    locals_ = {v: GroupHom(src.G(v), dev.cog.G(dev.label(v)), (0,)) for v in dev.scwol.vertices}
    return CogMorphism(src, dev.cog, dev.projection, locals_, {}, "projection")


@dataclass
class InducedMap:
    phi: CogMorphism
    devX: Development
    devY: Development
    vmap: list
    emap: list
    pi1_hom: GroupHom
    morphism: ScwolMorphism
    inverse_vmap: dict | None = None
    inverse_emap: dict | None = None

    def inverse_vertex(self, w):
        return self.inverse_vmap[w]

    def inverse_edge(self, e):
        return self.inverse_emap[e]


def pi1_hom(phi: CogMorphism, piX: Pi1Group, piY: Pi1Group) -> GroupHom:
    """phi_* from the images of the generator loops."""
    if phi.f.vmap[piX.base] != piY.base:
        raise CogError("morphism does not map base vertex to base vertex")
    gimg = {}
    for gen in piX.table.generators:
        gimg[gen] = piY.element_of_path(map_path(phi, piX.generator_loop(gen)))
    GY = piY.group
    image = []
    for w in piX.words:
        y = 0
        for gen, e in w:
            z = gimg[gen]
            y = GY.mul(y, z if e > 0 else GY.inv(z))
        image.append(y)
    return make_hom(piX.group, GY, image)


def induced_map(phi: CogMorphism, devX: Development, devY: Development, covering: bool | None = None) -> InducedMap:
    f = phi.f
    hom = pi1_hom(phi, devX.pi1, devY.pi1)
    vmap = []
    for v in range(len(devX.vertices)):
        q = map_path(phi, devX.rep_path(v))
        vmap.append(devY.vertex_of_path(q))
    emap = []
    for n, (a, r) in enumerate(devX.edges):
        emap.append(devY.edge_from(vmap[devX.scwol.i(n)], f.emap[a]))
    morph = validate_morphism(devX.scwol, devY.scwol, dict(enumerate(vmap)), dict(enumerate(emap)))
    for x in devX.G.elements():
        hx = hom(x)
        for v in range(len(devX.vertices)):
            if vmap[devX.act_vertex(x, v)] != devY.act_vertex(hx, vmap[v]):
                raise CogError(f"induced map is not equivariant at ({x}, {v})")
    out = InducedMap(phi, devX, devY, vmap, emap, hom, morph)
    if covering is None:
        try:
            is_covering(phi)
            covering = True
        except Exception:
            covering = False
    if covering:
        if not morph.is_bijective():
            raise CogError("induced map of a covering is not bijective")
        out.inverse_vmap = {w: v for v, w in enumerate(vmap)}
        out.inverse_emap = {w: v for v, w in enumerate(emap)}
    return out


def check_simply_connected(dev: Development, limit: int = 100000) -> dict:
    pi = fundamental_group(trivial_cog(dev.scwol), dev.base, limit)
    D = dev.scwol
    report = {"order": pi.order, "vertices": len(D.vertices), "edges": len(D.edges), "composable_pairs": len(D.e2)}
    if not D.e3:
        report["euler_characteristic"] = len(D.vertices) - len(D.edges) + len(D.e2)
    return report


@dataclass(frozen=True)
class StarReport:
    center: object
    groups: tuple  # ((base edge a, (coset representatives of psi_a(G_i(a)) in G_v)), ...)

    @property
    def size(self) -> int:
        return sum(len(reps) for _, reps in self.groups)


def star(cog: ComplexOfGroups, v) -> StarReport:
    """Incoming development edges at the vertex (v, U_v), grouped by base edge."""
    groups = []
    for a in cog.base.in_edges[v]:
        reps = sorted(set(coset_index(cog.G(v), cog.psi[a].image_subgroup()).values()))
        groups.append((a, tuple(reps)))
    return StarReport(v, tuple(groups))
