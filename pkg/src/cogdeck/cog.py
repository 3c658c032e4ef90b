"""Complexes of groups over scwols and the morphisms between them."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import (
    AxiomIFail,
    AxiomIIFail,
    BadElement,
    CocycleIFail,
    CocycleIIFail,
    CogError,
    CosetMapNotInjective,
    CosetMapNotSurjective,
    DifferentBaseMorphism,
    LocalNotInjective,
    NotSurjective,
    PsiNotInjective,
)
from .groups import FiniteGroup, GroupHom, coset_index, identity_hom, make_hom, trivial_group
from .scwol import Scwol, ScwolMorphism, identity_morphism, spanning_tree, validate_morphism


class ComplexOfGroups:
    """Local groups G_v, monomorphisms psi_a: G_i(a) -> G_t(a), twists g_(a,b) in G_t(a)."""

    def __init__(self, base: Scwol, local: Mapping, psi: Mapping, twist: Mapping, name: str = ""):
        self.base = base
        self.local = {v: local[v] for v in base.vertices}
        self.psi = {a: psi[a] for a in base.edges}
        self.twist = {pair: twist.get(pair, 0) for pair in base.e2}
        self.name = name

    def G(self, v) -> FiniteGroup:
        return self.local[v]

    def __eq__(self, other):
        return (
            isinstance(other, ComplexOfGroups)
            and self.base == other.base
            and self.local == other.local
            and all(self.psi[a].image == other.psi[a].image for a in self.base.edges)
            and self.twist == other.twist
        )

    def __hash__(self):
        return hash(self.base)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<ComplexOfGroups{label} over {self.base!r}>"


def validate_cog(base: Scwol, local: Mapping, psi: Mapping, twist: Mapping | None = None, name: str = "") -> ComplexOfGroups:
    twist = dict(twist or {})
    for pair in twist:
        if pair not in base.compose:
            raise CogError(f"twist given for non-composable pair {pair!r}")
    checked = {}
    for a in base.edges:
        src, dst = local[base.i(a)], local[base.t(a)]
        p = psi[a]
        image = p.image if isinstance(p, GroupHom) else p
        h = make_hom(src, dst, image)
        if not h.is_injective():
            raise PsiNotInjective(a)
        checked[a] = h
    X = ComplexOfGroups(base, local, checked, twist, name)
    for (a, b), g in X.twist.items():
        if not 0 <= g < X.G(base.t(a)).order:
            raise BadElement(f"twist ({a!r}, {b!r}) = {g} outside G_t(a)")
    for a, b in base.e2:
        Gt = X.G(base.t(a))
        ab = base.compose[(a, b)]
        gab = X.twist[(a, b)]
        pa, pb, pab = X.psi[a], X.psi[b], X.psi[ab]
        for x in X.G(base.i(b)).elements():
            if Gt.conj(gab, pab(x)) != pa(pb(x)):
                raise CocycleIFail(a, b, x)
    for a, b, c in base.e3:
        Gt = X.G(base.t(a))
        ab = base.compose[(a, b)]
        bc = base.compose[(b, c)]
        lhs = Gt.mul(X.psi[a](X.twist[(b, c)]), X.twist[(a, bc)])
        rhs = Gt.mul(X.twist[(a, b)], X.twist[(ab, c)])
        if lhs != rhs:
            raise CocycleIIFail(a, b, c)
    return X


def trivial_cog(base: Scwol, name: str = "") -> ComplexOfGroups:
    one = trivial_group()
    return ComplexOfGroups(base, {v: one for v in base.vertices}, {a: GroupHom(one, one, (0,)) for a in base.edges}, {}, name)


class CogMorphism:
    """Data (f, phi_v, phi(a)) with phi(a) in G_f(t(a))."""

    def __init__(self, source: ComplexOfGroups, target: ComplexOfGroups, f: ScwolMorphism, locals_: Mapping, edge_elts: Mapping, name: str = ""):
        self.source = source
        self.target = target
        self.f = f
        self.locals = {v: locals_[v] for v in source.base.vertices}
        self.edge_elts = {a: edge_elts.get(a, 0) for a in source.base.edges}
        self.name = name

    def __eq__(self, other):
        return (
            isinstance(other, CogMorphism)
            and self.f.vmap == other.f.vmap
            and self.f.emap == other.f.emap
            and all(self.locals[v].image == other.locals[v].image for v in self.locals)
            and self.edge_elts == other.edge_elts
        )

    def __hash__(self):
        return hash(tuple(sorted(self.edge_elts.values())))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<CogMorphism{label}>"


def check_morphism_axioms(phi: CogMorphism) -> None:
    X, Y, f = phi.source, phi.target, phi.f
    for a in X.base.edges:
        fa = f.emap[a]
        Gt = Y.G(f.vmap[X.base.t(a)])
        u = phi.edge_elts[a]
        pi, pt = phi.locals[X.base.i(a)], phi.locals[X.base.t(a)]
        py, px = Y.psi[fa], X.psi[a]
        for x in X.G(X.base.i(a)).elements():
            if Gt.conj(u, py(pi(x))) != pt(px(x)):
                raise AxiomIFail(a)
    for a, b in X.base.e2:
        ab = X.base.compose[(a, b)]
        Gt = Y.G(f.vmap[X.base.t(a)])
        lhs = Gt.mul(phi.locals[X.base.t(a)](X.twist[(a, b)]), phi.edge_elts[ab])
        rhs = Gt.prod(
            phi.edge_elts[a],
            Y.psi[f.emap[a]](phi.edge_elts[b]),
            Y.twist[(f.emap[a], f.emap[b])],
        )
        if lhs != rhs:
            raise AxiomIIFail(a, b)


def validate_cog_morphism(source, target, f: ScwolMorphism, locals_: Mapping, edge_elts: Mapping, name: str = "") -> CogMorphism:
    f = validate_morphism(source.base, target.base, f.vmap, f.emap)
    homs = {}
    for v in source.base.vertices:
        h = locals_[v]
        image = h.image if isinstance(h, GroupHom) else h
        homs[v] = make_hom(source.G(v), target.G(f.vmap[v]), image)
    elts = {}
    for a in source.base.edges:
        u = edge_elts.get(a, 0)
        if not 0 <= u < target.G(f.vmap[source.base.t(a)]).order:
            raise BadElement(f"edge element of {a!r} outside G_f(t(a))")
        elts[a] = u
    phi = CogMorphism(source, target, f, homs, elts, name)
    check_morphism_axioms(phi)
    return phi


def identity(X: ComplexOfGroups) -> CogMorphism:
    return CogMorphism(X, X, identity_morphism(X.base), {v: identity_hom(X.G(v)) for v in X.base.vertices}, {})


def compose(eta: CogMorphism, phi: CogMorphism, check: bool = True) -> CogMorphism:
    """eta o phi: apply phi first."""
    if phi.target is not eta.source and phi.target != eta.source:
        raise CogError("target of the inner morphism is not the source of the outer one")
    f = phi.f
    X = phi.source
    locals_ = {v: phi.locals[v].then(eta.locals[f.vmap[v]]) for v in X.base.vertices}
    elts = {}
    for a in X.base.edges:
        Gt = eta.target.G(eta.f.vmap[f.vmap[X.base.t(a)]])
        elts[a] = Gt.mul(eta.locals[f.vmap[X.base.t(a)]](phi.edge_elts[a]), eta.edge_elts[f.emap[a]])
    out = CogMorphism(X, eta.target, f.then(eta.f), locals_, elts)
    if check:
        check_morphism_axioms(out)
    return out


def is_isomorphism(phi: CogMorphism) -> bool:
    return phi.f.is_bijective() and all(h.is_bijective() for h in phi.locals.values())


def inverse(phi: CogMorphism) -> CogMorphism:
    """The unique inverse of an isomorphism of complexes of groups."""
    if not is_isomorphism(phi):
        raise CogError("morphism is not an isomorphism")
    finv = phi.f.inverse()
    Y = phi.target
    locals_ = {w: phi.locals[finv.vmap[w]].inverse() for w in Y.base.vertices}
    elts = {}
    for b in Y.base.edges:
        a = finv.emap[b]
        tinv = locals_[Y.base.t(b)]
        elts[b] = tinv(Y.G(Y.base.t(b)).inv(phi.edge_elts[a]))
    out = CogMorphism(Y, phi.source, finv, locals_, elts)
    check_morphism_axioms(out)
    return out


@dataclass(frozen=True)
class CoveringCertificate:
    morphism: CogMorphism
    # (vertex, target edge) -> list of ((source edge, coset rep), target coset rep)
    matchings: dict


def is_covering(phi: CogMorphism) -> CoveringCertificate:
    """Check the covering condition; raise a NotACovering subclass on failure."""
    X, Y, f = phi.source, phi.target, phi.f
    if set(f.vmap.values()) != set(Y.base.vertices) or set(f.emap.values()) != set(Y.base.edges):
        raise NotSurjective("underlying scwol map is not surjective")
    matchings = {}
    cos_cache = {}

    def cosets(cog, a):
        key = (id(cog), a)
        if key not in cos_cache:
            Gt = cog.G(cog.base.t(a))
            cos_cache[key] = coset_index(Gt, cog.psi[a].image_subgroup())
        return cos_cache[key]

    for v in X.base.vertices:
        if not phi.locals[v].is_injective():
            raise LocalNotInjective(v)
        fv = f.vmap[v]
        Gf = Y.G(fv)
        by_label = {}
        for a in X.base.in_edges[v]:
            by_label.setdefault(f.emap[a], []).append(a)
        for b in Y.base.in_edges[fv]:
            target_rep = cosets(Y, b)
            n_target = len(set(target_rep.values()))
            pairs = []
            hit = set()
            for a in by_label.get(b, []):
                src_rep = cosets(X, a)
                for r in sorted(set(src_rep.values())):
                    img = target_rep[Gf.mul(phi.locals[v](r), phi.edge_elts[a])]
                    if img in hit:
                        raise CosetMapNotInjective(v, b)
                    hit.add(img)
                    pairs.append(((a, r), img))
            if len(hit) != n_target:
                raise CosetMapNotSurjective(v, b)
            matchings[(v, b)] = pairs
    return CoveringCertificate(phi, matchings)


def covers(phi: CogMorphism) -> bool:
    try:
        is_covering(phi)
    except NotSurjective:
        return False
    except (LocalNotInjective, CosetMapNotInjective, CosetMapNotSurjective):
        return False
    return True


@dataclass(frozen=True)
class Homotopy:
    source: CogMorphism
    target: CogMorphism
    family: dict  # vertex -> k_v in G_f(v)


def apply_family(phi: CogMorphism, family: Mapping, check: bool = True) -> CogMorphism:
    """The morphism eta with eta_v = c_(k_v) phi_v and eta(a) = k_t(a) phi(a) psi_f(a)(k_i(a))^-1."""
    X, Y, f = phi.source, phi.target, phi.f
    locals_ = {}
    for v in X.base.vertices:
        Gf = Y.G(f.vmap[v])
        k = family.get(v, 0)
        if not 0 <= k < Gf.order:
            raise BadElement(f"k at {v!r} outside G_f(v)")
        locals_[v] = GroupHom(X.G(v), Gf, tuple(Gf.conj(k, y) for y in phi.locals[v].image))
    elts = {}
    for a in X.base.edges:
        ti, tt = X.base.i(a), X.base.t(a)
        Gt = Y.G(f.vmap[tt])
        ki = Y.G(f.vmap[ti]).inv(family.get(ti, 0))
        elts[a] = Gt.prod(family.get(tt, 0), phi.edge_elts[a], Y.psi[f.emap[a]](ki))
    out = CogMorphism(X, Y, f, locals_, elts)
    if check:
        check_morphism_axioms(out)
    return out


def twist_at_basepoint(phi: CogMorphism, v0, g: int) -> CogMorphism:
    """phi^(k_v0 = g): homotopic to phi via g at v0 and the identity elsewhere."""
    if not 0 <= g < phi.target.G(phi.f.vmap[v0]).order:
        raise BadElement(f"{g} is not an element of G_f(v0)")
    return apply_family(phi, {v0: g})


def validate_homotopy(h: Homotopy) -> bool:
    try:
        return apply_family(h.source, h.family, check=False) == h.target
    except BadElement:
        return False


def find_homotopy(phi: CogMorphism, eta: CogMorphism, rel=None):
    """Search for (k_v) carrying phi to eta; returns a Homotopy or None.

    The seed k at the tree root is either forced to 1 (rel given) or tried over
    all of G_f(root); tree edges then determine every other k uniquely, and the
    candidate family is verified on all vertices and edges.
    """
    if phi.f.vmap != eta.f.vmap or phi.f.emap != eta.f.emap:
        raise DifferentBaseMorphism("morphisms lie over different scwol maps")
    X, Y, f = phi.source, phi.target, phi.f
    root = rel if rel is not None else X.base.vertices[0]
    T = _tree_cache(X.base, root)
    Groot = Y.G(f.vmap[root])
    seeds = [0] if rel is not None else list(Groot.elements())
    inv_psi = {}
    for k0 in seeds:
        # condition at the root vertex
        if any(Groot.conj(k0, y) != z for y, z in zip(phi.locals[root].image, eta.locals[root].image)):
            continue
        k = {root: k0}
        ok = True
        for v in T.order[1:]:
            e = T.parent[v]
            a = e.edge
            Gt = Y.G(f.vmap[X.base.t(a)])
            py = Y.psi[f.emap[a]]
            if e.forward:
                # v = t(a): eta(a) = k_v phi(a) psi(k_i)^-1
                ki = k[X.base.i(a)]
                k[v] = Gt.prod(eta.edge_elts[a], py(ki), Gt.inv(phi.edge_elts[a]))
            else:
                # v = i(a): psi(k_v) = eta(a)^-1 k_t phi(a)
                want = Gt.prod(Gt.inv(eta.edge_elts[a]), k[X.base.t(a)], phi.edge_elts[a])
                pre = inv_psi.get(f.emap[a])
                if pre is None:
                    pre = {y: x for x, y in enumerate(py.image)}
                    inv_psi[f.emap[a]] = pre
                if want not in pre:
                    ok = False
                    break
                k[v] = pre[want]
        if not ok:
            continue
        if apply_family(phi, k, check=False) == eta:
            return Homotopy(phi, eta, k)
    return None


def homotopic(phi: CogMorphism, eta: CogMorphism, rel=None) -> bool:
    try:
        return find_homotopy(phi, eta, rel) is not None
    except DifferentBaseMorphism:
        return False


_trees = {}


def _tree_cache(X: Scwol, root):
    key = (id(X), root)
    T = _trees.get(key)
    if T is None or T.scwol is not X:
        T = spanning_tree(X, root)
        _trees[key] = T
    return T
