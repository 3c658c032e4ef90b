"""Deck transformations of coverings of complexes of groups.

For a covering phi: (X, s0) -> (Y, t0) with characteristic subgroup U of
G = pi1(Y, t0), the map epsilon sends h in N_G(U) to the automorphism of X
whose lift to the development is phi~^-1 o (left translation by h) o phi~.
`verify_main_theorem` checks that epsilon is a surjective homomorphism onto
the brute-force deck group with kernel C*U, C = C_G(U) & K.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .cog import (
    CogMorphism,
    ComplexOfGroups,
    Homotopy,
    check_morphism_axioms,
    compose,
    find_homotopy,
    homotopic,
    identity,
    is_covering,
    twist_at_basepoint,
    validate_cog,
    validate_cog_morphism,
)
from .development import Development, InducedMap, build_development, induced_map, pi1_hom
from .errors import CogError, NotInNormalizer, SearchSpaceTooLarge
from .groups import (
    GroupHom,
    Subgroup,
    centralizer,
    conjugate_subgroup,
    intersection,
    is_normal,
    isomorphisms,
    normalizer,
    subgroup_as_group,
    subgroup_generated,
    subgroup_product,
)
from .presentation import fundamental_group
from .scwol import ScwolMorphism, id_key, sorted_ids, spanning_tree, validate_morphism, validate_scwol
from .xpath import concat, map_path, trivial_path


@dataclass
class CoveringContext:
    phi: CogMorphism
    base: object  # s0 in X
    devX: Development
    devY: Development
    lift: InducedMap
    U: Subgroup
    N: Subgroup
    K: Subgroup
    C: Subgroup
    CU: Subgroup
    _eps: dict = field(default_factory=dict, repr=False)

    @property
    def G(self):
        return self.devY.G

    @property
    def X(self) -> ComplexOfGroups:
        return self.phi.source

    @property
    def Y(self) -> ComplexOfGroups:
        return self.phi.target


def build_context(phi: CogMorphism, base, limit: int = 100000) -> CoveringContext:
    is_covering(phi)
    devX = build_development(phi.source, base, limit)
    devY = build_development(phi.target, phi.f.vmap[base], limit)
    lift = induced_map(phi, devX, devY, covering=True)
    if not lift.pi1_hom.is_injective():
        raise CogError("phi_* is not injective")
    G = devY.G
    U = lift.pi1_hom.image_subgroup()
    N = normalizer(G, U)
    K = devY.action_kernel()
    C = intersection(G, centralizer(G, U), K)
    if not is_normal(G, C, within=N):
        raise CogError("C is not normal in N")
    CU = subgroup_product(G, C, U)
    return CoveringContext(phi, base, devX, devY, lift, U, N, K, C, CU)


def decompose_normalizer_element(ctx: CoveringContext, q: int):
    """(p, g) with [phi-image of p * (g)] = q; p is the representative path of the lift."""
    devX, devY = ctx.devX, ctx.devY
    w = ctx.lift.inverse_vertex(devY.act_vertex(q, devY.base))
    p = devX.rep_path(w)
    mp = map_path(ctx.phi, p)
    t0 = devY.base_vertex
    for g in ctx.Y.G(t0).elements():
        if devY.pi1.element_of_path(concat(mp, trivial_path(ctx.Y, t0, g))) == q:
            return p, g
    raise CogError("internal: no local element completes the decomposition")


@dataclass
class DeckElement:
    eta: CogMorphism
    witness: Homotopy | None
    h: int | None = None
    class_id: int | None = None


def _lifted_vertex(ctx, h, v):
    return ctx.lift.inverse_vertex(ctx.devY.act_vertex(h, ctx.lift.vmap[v]))


def _lifted_edge(ctx, h, e):
    return ctx.lift.inverse_edge(ctx.devY.act_edge(h, ctx.lift.emap[e]))


def epsilon(ctx: CoveringContext, h: int, decomposition=None) -> DeckElement:
    if h not in ctx.N:
        raise NotInNormalizer(f"{h} does not normalize U")
    key = (h, None if decomposition is None else (decomposition[0], decomposition[1]))
    if key in ctx._eps:
        return ctx._eps[key]
    p, g = decomposition if decomposition is not None else decompose_normalizer_element(ctx, h)
    devX = ctx.devX
    GX = devX.G
    G = ctx.G
    X = ctx.X
    s0 = ctx.base
    s1 = p.end
    P = devX.pi1.element_of_path(p)
    phs = ctx.lift.pi1_hom
    back = {y: x for x, y in enumerate(phs.image)}
    hinv = G.inv(h)

    def alpha(x):
        return back[G.prod(h, phs(x), hinv)]

    iota_back = {v: {y: x for x, y in enumerate(devX.pi1.iota(v).image)} for v in X.base.vertices}
    hat = {v: devX.vindex[(v, 0)] for v in X.base.vertices}
    lv, gsig = {}, {}
    for v in X.base.vertices:
        w = _lifted_vertex(ctx, h, hat[v])
        lv[v] = devX.label(w)
        if v == s0:
            if devX.vertex_of_element(s1, P) != w:
                raise CogError("internal: lift of the base vertex is not [p>")
            gsig[v] = GX.inv(P)
        else:
            gsig[v] = GX.inv(devX.vertices[w][1])
    le = {}
    for a in X.base.edges:
        e = devX.edge_from(hat[X.base.i(a)], a)
        le[a] = devX.edges[_lifted_edge(ctx, h, e)][0]
    lmap = validate_morphism(X.base, X.base, lv, le)
    locals_ = {}
    for v in X.base.vertices:
        io = devX.pi1.iota(v)
        gv = gsig[v]
        locals_[v] = GroupHom(
            X.G(v), X.G(lv[v]), tuple(iota_back[lv[v]][GX.conj(gv, alpha(io(x)))] for x in X.G(v).elements())
        )
    elts = {}
    for a in X.base.edges:
        ha = GX.inv(devX.T[a])
        hla_inv = devX.T[le[a]]
        val = GX.prod(gsig[X.base.t(a)], alpha(ha), GX.inv(gsig[X.base.i(a)]), hla_inv)
        elts[a] = iota_back[lv[X.base.t(a)]][val]
    eta = CogMorphism(X, X, lmap, locals_, elts, f"eps({h})")
    check_morphism_axioms(eta)
    target = twist_at_basepoint(ctx.phi, s0, g)
    wit = find_homotopy(compose(ctx.phi, eta), target, rel=s0)
    if wit is None:
        raise CogError(f"epsilon({h}): phi o eta is not homotopic rel base to the twisted phi")
    out = DeckElement(eta, wit, h)
    ctx._eps[key] = out
    return out


# ---------------------------------------------------------------- brute force


def fibre_automorphisms(phi: CogMorphism, counter: list, bound: int):
    """Scwol automorphisms h of the source with f o h = f."""
    X = phi.source.base
    f = phi.f
    T = spanning_tree(X, X.vertices[0])
    order = T.order
    pos = {v: n for n, v in enumerate(order)}
    out_lab = {v: {f.emap[a]: a for a in X.out_edges[v]} for v in X.vertices}
    in_lab = {v: {} for v in X.vertices}
    for v in X.vertices:
        for a in X.in_edges[v]:
            in_lab[v].setdefault(f.emap[a], []).append(a)
    closing = [[] for _ in order]
    for a in X.edges:
        closing[max(pos[X.i(a)], pos[X.t(a)])].append(a)
    fib = {}
    for v in X.vertices:
        fib.setdefault(f.vmap[v], []).append(v)

    def consistent(idx, vm):
        for a in closing[idx]:
            b = out_lab[vm[X.i(a)]].get(f.emap[a])
            if b is None or X.t(b) != vm[X.t(a)]:
                return False
        return True

    def rec(idx, vm, used):
        counter[0] += 1
        if counter[0] > bound:
            raise SearchSpaceTooLarge(counter[0])
        if idx == len(order):
            emap = {a: out_lab[vm[X.i(a)]][f.emap[a]] for a in X.edges}
            try:
                m = validate_morphism(X, X, dict(vm), emap)
            except CogError:
                return
            if m.is_bijective():
                yield m
            return
        v = order[idx]
        if idx == 0:
            cands = fib[f.vmap[v]]
        else:
            e = T.parent[v]
            hp = vm[X.oi(e)]
            lab = f.emap[e.edge]
            if e.forward:
                b = out_lab[hp].get(lab)
                cands = [X.t(b)] if b is not None else []
            else:
                cands = [X.i(b) for b in in_lab[hp].get(lab, [])]
        for w in cands:
            if w in used:
                continue
            vm[v] = w
            used.add(w)
            if consistent(idx, vm):
                yield from rec(idx + 1, vm, used)
            used.discard(w)
            del vm[v]

    yield from rec(0, {}, set())


def tree_normalized_automorphisms(phi: CogMorphism, h: ScwolMorphism, counter: list, bound: int, iso_cache: dict):
    """Automorphisms of the source over h, one or more per homotopy class.

    Every automorphism is homotopic to one whose tree-edge elements are
    normalized: 1 when the tree edge points away from the root, the least
    element of its coset eta(a) psi(G) otherwise.
    """
    Xc = phi.source
    X = Xc.base
    T = spanning_tree(X, X.vertices[0])
    order = T.order
    pos = {v: n for n, v in enumerate(order)}
    closing = [[] for _ in order]
    for a in X.edges:
        closing[max(pos[X.i(a)], pos[X.t(a)])].append(a)
    tree_dir = {}
    for v, e in T.parent.items():
        tree_dir[e.edge] = e.forward
    pairs_of = {a: [] for a in X.edges}
    for pr in X.e2:
        ab = X.compose[pr]
        for a in (pr[0], pr[1], ab):
            pairs_of[a].append(pr)

    def isos(v):
        key = (Xc.G(v), Xc.G(h.vmap[v]))
        if key not in iso_cache:
            iso_cache[key] = list(isomorphisms(*key))
        return iso_cache[key]

    def edge_candidates(a, loc):
        Gt = Xc.G(h.vmap[X.t(a)])
        ha = h.emap[a]
        py = Xc.psi[ha]
        if a in tree_dir:
            if tree_dir[a]:
                cands = [0]
            else:
                img = set(py.image)
                cands = [u for u in Gt.elements() if min(Gt.mul(u, y) for y in img) == u]
        else:
            cands = list(Gt.elements())
        li, lt = loc[X.i(a)], loc[X.t(a)]
        want = [lt(Xc.psi[a](x)) for x in Xc.G(X.i(a)).elements()]
        base = [py(li(x)) for x in Xc.G(X.i(a)).elements()]
        return [u for u in cands if all(Gt.conj(u, y) == z for y, z in zip(base, want))]

    def pair_ok(pr, elts, loc):
        a, b = pr
        ab = X.compose[pr]
        if a not in elts or b not in elts or ab not in elts:
            return True
        Gt = Xc.G(h.vmap[X.t(a)])
        lhs = Gt.mul(loc[X.t(a)](Xc.twist[pr]), elts[ab])
        rhs = Gt.prod(elts[a], Xc.psi[h.emap[a]](elts[b]), Xc.twist[(h.emap[a], h.emap[b])])
        return lhs == rhs

    steps = []
    for idx, v in enumerate(order):
        steps.append(("v", v))
        steps += [("e", a) for a in closing[idx]]

    def rec(k, loc, elts):
        counter[0] += 1
        if counter[0] > bound:
            raise SearchSpaceTooLarge(counter[0])
        if k == len(steps):
            yield CogMorphism(Xc, Xc, h, dict(loc), dict(elts))
            return
        kind, x = steps[k]
        if kind == "v":
            for iso in isos(x):
                loc[x] = iso
                yield from rec(k + 1, loc, elts)
            del loc[x]
        else:
            for u in edge_candidates(x, loc):
                elts[x] = u
                if all(pair_ok(pr, elts, loc) for pr in pairs_of[x]):
                    yield from rec(k + 1, loc, elts)
            elts.pop(x, None)

    yield from rec(0, {}, {})


def enumerate_deck_bruteforce(ctx_or_phi, bound: int = 10**6) -> list:
    """Deck classes found by exhaustive search, one representative DeckElement each."""
    phi = ctx_or_phi.phi if isinstance(ctx_or_phi, CoveringContext) else ctx_or_phi
    counter = [0]
    iso_cache = {}
    found = []
    for h in fibre_automorphisms(phi, counter, bound):
        for eta in tree_normalized_automorphisms(phi, h, counter, bound, iso_cache):
            wit = find_homotopy(compose(phi, eta, check=False), phi)
            if wit is not None:
                found.append(DeckElement(eta, wit))
    # one class per homotopy class, represented by its lexicographically least member
    found.sort(key=lambda d: candidate_key(d.eta))
    classes = []
    for d in found:
        if not any(homotopic(c.eta, d.eta) for c in classes):
            d.class_id = len(classes)
            classes.append(d)
    return classes


def candidate_key(eta: CogMorphism) -> tuple:
    """Total order on automorphisms: vertex map, local maps, then edge elements, in id order."""
    X = eta.source.base
    vs = sorted_ids(X.vertices)
    es = sorted_ids(X.edges)
    return (
        tuple(id_key(eta.f.vmap[v]) for v in vs),
        tuple(eta.locals[v].image for v in vs),
        tuple(eta.edge_elts.get(a, 0) for a in es),
    )


# ---------------------------------------------------------------- main theorem


@dataclass
class DeckReport:
    groups: dict
    deck: dict
    details: dict

    def as_dict(self) -> dict:
        return {"groups": self.groups, "deck": self.deck}


def verify_main_theorem(ctx: CoveringContext, bound: int = 10**6) -> DeckReport:
    N = ctx.N.elements
    G = ctx.G
    X = ctx.X
    eps = {h: epsilon(ctx, h) for h in N}
    hom_ok = True
    bad_pairs = []
    for h1 in N:
        for h2 in N:
            lhs = eps[G.mul(h1, h2)].eta
            rhs = compose(eps[h1].eta, eps[h2].eta)
            if not homotopic(lhs, rhs):
                hom_ok = False
                bad_pairs.append((h1, h2))
    idX = identity(X)
    kernel = tuple(h for h in N if homotopic(eps[h].eta, idX))
    kernel_ok = kernel == ctx.CU.elements
    quotient_order = len(N) // ctx.CU.order
    # classes hit by epsilon
    image_reps = []
    for h in N:
        if not any(homotopic(r.eta, eps[h].eta) for r in image_reps):
            image_reps.append(eps[h])
    try:
        classes = enumerate_deck_bruteforce(ctx, bound)
        n_classes = len(classes)
        surjective = all(any(homotopic(c.eta, r.eta) for r in image_reps) for c in classes)
        surj_mode = "bruteforce"
    except SearchSpaceTooLarge:
        classes = None
        n_classes = None
        surjective = len(image_reps) == quotient_order
        surj_mode = "by cardinality"
    verdict = (
        hom_ok
        and kernel_ok
        and surjective
        and len(image_reps) == quotient_order
        and (n_classes is None or n_classes == quotient_order)
    )
    groups = {
        "G": G.order,
        "U": ctx.U.order,
        "N": len(N),
        "K": ctx.K.order,
        "C": ctx.C.order,
        "CU": ctx.CU.order,
    }
    deck = {
        "bruteforce_classes": n_classes,
        "quotient_order": quotient_order,
        "epsilon_kernel_matches": kernel_ok,
        "verdict": verdict,
    }
    details = {
        "homomorphism": hom_ok,
        "bad_pairs": bad_pairs,
        "kernel": kernel,
        "image_classes": len(image_reps),
        "surjective": surjective,
        "surjectivity_mode": surj_mode,
        "classes": classes,
        "epsilon": eps,
    }
    return DeckReport(groups, deck, details)


# ---------------------------------------------------------------- coverings from subgroups


@dataclass
class SubgroupCovering:
    cog: ComplexOfGroups
    phi: CogMorphism
    base: object
    devY: Development
    conjugator: int  # g with g U' g^-1 = U for the characteristic subgroup U'


def covering_from_subgroup(cogY: ComplexOfGroups, t0, U: Subgroup | None = None, limit: int = 100000, devY: Development | None = None, gens=None) -> SubgroupCovering:
    """Complex of groups induced by U acting on the development of cogY, with its covering map."""
    if devY is None:
        devY = build_development(cogY, t0, limit)
    G = devY.G
    if U is None:
        U = subgroup_generated(G, gens or [])
    Y = cogY.base
    D = devY.scwol
    nV = len(devY.vertices)
    # vertex orbits; the base orbit is represented by the base vertex itself
    orbit_of = {}
    reps = []
    for v in [devY.base] + [w for w in range(nV) if w != devY.base]:
        if v in orbit_of:
            continue
        n = len(reps)
        reps.append(v)
        for u in U.elements:
            orbit_of[devY.act_vertex(u, v)] = n
    order = sorted(range(len(reps)), key=lambda n: (n != 0, reps[n]))
    rename = {n: k for k, n in enumerate(order)}
    reps = [reps[n] for n in order]
    orbit_of = {v: rename[n] for v, n in orbit_of.items()}

    def to_rep(w):
        """Least u in U with u*w the orbit representative."""
        r = reps[orbit_of[w]]
        for u in U.elements:
            if devY.act_vertex(u, w) == r:
                return u
        raise CogError("internal: orbit representative not reached")

    stab, emb, back = {}, {}, {}
    for n, r in enumerate(reps):
        S = Subgroup(G, tuple(u for u in U.elements if devY.act_vertex(u, r) == r))
        H, e = subgroup_as_group(G, S, f"stab{n}")
        stab[n], emb[n], back[n] = H, e, {y: x for x, y in enumerate(e.image)}
    edges, lift, hel = {}, {}, {}
    ekey = {}
    for n, r in enumerate(reps):
        for a in Y.out_edges[devY.label(r)]:
            de = devY.edge_from(r, a)
            k = len(edges)
            tw = D.t(de)
            edges[k] = (n, orbit_of[tw])
            lift[k] = de
            hel[k] = to_rep(tw)
            ekey[(n, a)] = k
    label = {k: devY.edges[lift[k]][0] for k in edges}
    compose_ = {}
    for k1, (i1, t1) in edges.items():
        for k2, (i2, t2) in edges.items():
            if t2 == i1:
                compose_[(k1, k2)] = ekey[(i2, Y.compose[(label[k1], label[k2])])]
    Xs = validate_scwol(range(len(reps)), edges, compose_)
    psi = {}
    for k, (i, t) in edges.items():
        hk = hel[k]
        psi[k] = GroupHom(stab[i], stab[t], tuple(back[t][G.conj(hk, y)] for y in emb[i].image))
    twist = {}
    for (k1, k2), k12 in compose_.items():
        t = edges[k1][1]
        twist[(k1, k2)] = back[t][G.prod(hel[k1], hel[k2], G.inv(hel[k12]))]
    cogX = validate_cog(Xs, stab, psi, twist, "cover")
    f = validate_morphism(Xs, Y, {n: devY.label(r) for n, r in enumerate(reps)}, label)
    iota_back = {v: {y: x for x, y in enumerate(devY.pi1.iota(v).image)} for v in Y.vertices}
    kv = {n: devY.vertices[r][1] for n, r in enumerate(reps)}
    locals_ = {}
    for n in range(len(reps)):
        s = f.vmap[n]
        kinv = G.inv(kv[n])
        locals_[n] = GroupHom(
            stab[n], cogY.G(s), tuple(iota_back[s][G.prod(kinv, y, kv[n])] for y in emb[n].image)
        )
    elts = {}
    for k, (i, t) in edges.items():
        a = label[k]
        val = G.prod(G.inv(kv[t]), hel[k], kv[i], devY.T[a])
        elts[k] = iota_back[Y.t(a)][val]
    phi = validate_cog_morphism(cogX, cogY, f, locals_, elts, "covering")
    is_covering(phi)
    piX = fundamental_group(cogX, 0, limit)
    Uc = pi1_hom(phi, piX, devY.pi1).image_subgroup()
    for g in G.elements():
        if conjugate_subgroup(G, g, Uc) == U:
            return SubgroupCovering(cogX, phi, 0, devY, g)
    raise CogError("characteristic subgroup is not conjugate to U")
