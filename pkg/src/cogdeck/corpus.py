"""Builders for the small instances shipped in corpus/."""
from __future__ import annotations

from itertools import combinations
from pathlib import Path

from .cog import ComplexOfGroups, trivial_cog, validate_cog, validate_cog_morphism
from .development import build_development, canonical_covering
from .fileformat import Workspace, serialize
from .groups import GroupHom, cyclic_group, direct_product, group_from_permutations, trivial_group
from .scwol import Scwol, id_key, sorted_ids, validate_morphism, validate_scwol


def triangle_scwol() -> Scwol:
    """Barycentric scwol of one 2-simplex.

    Vertices: F (face), E1..E3 (edge cells), V12, V13, V23 (vertex cells).
    Edge cell Ek lies on the vertex cells whose label contains k.
    """
    verts = ["F", "E1", "E2", "E3", "V12", "V13", "V23"]
    vcells = {"V12": (1, 2), "V13": (1, 3), "V23": (2, 3)}
    edges = {}
    for k in (1, 2, 3):
        edges[f"f{k}"] = ("F", f"E{k}")
    for name, pair in vcells.items():
        for k in pair:
            edges[f"e{k}{name[1:]}"] = (f"E{k}", name)
        edges[f"f{name[1:]}"] = ("F", name)
    compose = {}
    for name, pair in vcells.items():
        for k in pair:
            compose[(f"e{k}{name[1:]}", f"f{k}")] = f"f{name[1:]}"
    return validate_scwol(verts, edges, compose)


def dihedral(m: int, name: str = ""):
    """Dihedral group of order 2m generated by two reflections (ids 1 and 2)."""
    if m == 2:
        gens = [(1, 0, 2, 3), (0, 1, 3, 2)]
        deg = 4
    else:
        deg = m
        gens = [tuple((-i) % m for i in range(m)), tuple((1 - i) % m for i in range(m))]
    G, _ = group_from_permutations(deg, gens, name or f"D{m}")
    return G, gens, deg


def triangle_of_groups(p: int, q: int, r: int, name: str = "") -> ComplexOfGroups:
    """Coxeter triangle with m12 = p, m13 = q, m23 = r and trivial twists."""
    X = triangle_scwol()
    m = {"V12": p, "V13": q, "V23": r}
    one = trivial_group("T")
    z2 = cyclic_group(2, "Z2")
    local = {"F": one, "E1": z2, "E2": z2, "E3": z2}
    for v, mv in m.items():
        local[v] = dihedral(mv)[0]
    psi = {}
    for a, (i, t) in X.edges.items():
        if i == "F":
            psi[a] = GroupHom(one, local[t], (0,))
        else:
            k = int(i[1])
            pos = t[1:].index(str(k))  # which of the two reflections
            psi[a] = GroupHom(z2, local[t], (0, 1 + pos))
    return validate_cog(X, local, psi, {}, name or f"tri{p}{q}{r}")


def octahedron_scwol() -> tuple:
    """Barycentric scwol of the octahedron and the antipodal map on it.

    Returns (scwol, vertex involution, edge involution).
    """
    pts = [(ax, s) for ax in range(3) for s in (1, -1)]
    cells = [frozenset([p]) for p in pts]
    cells += [frozenset(e) for e in combinations(pts, 2) if e[0][0] != e[1][0]]
    cells += [frozenset(f) for f in combinations(pts, 3) if len({p[0] for p in f}) == 3]
    names = {}
    for c in cells:
        prefix = "vef"[len(c) - 1]
        names[c] = f"{prefix}{sum(1 for d in names if len(d) == len(c))}"
    anti = {c: frozenset((ax, -s) for ax, s in c) for c in cells}
    pairs = [(c, d) for c in cells for d in cells if d < c]
    edge_names = {pr: f"a{n}" for n, pr in enumerate(pairs)}
    edges = {edge_names[(c, d)]: (names[c], names[d]) for c, d in pairs}
    compose = {}
    for (c, d) in pairs:
        for (b, c2) in pairs:
            if c2 == c:
                compose[(edge_names[(c, d)], edge_names[(b, c)])] = edge_names[(b, d)]
    X = validate_scwol(list(names.values()), edges, compose)
    vinv = {names[c]: names[anti[c]] for c in cells}
    einv = {edge_names[(c, d)]: edge_names[(anti[c], anti[d])] for c, d in pairs}
    return X, vinv, einv


def free_quotient_scwol(X: Scwol, vinv: dict, einv: dict):
    """Quotient of X by a free involution; orbits are named by their least member.

    Returns (quotient scwol, vertex projection, edge projection).
    """

    vq = {v: min((v, vinv[v]), key=id_key) for v in X.vertices}
    eq = {a: min((a, einv[a]), key=id_key) for a in X.edges}
    qedges = {}
    for a in X.edges:
        qa = eq[a]
        qedges[qa] = (vq[X.i(a)], vq[X.t(a)])
    qcompose = {}
    for (a, b), ab in X.compose.items():
        qcompose[(eq[a], eq[b])] = eq[ab]
    Q = validate_scwol(sorted_ids(set(vq.values())), qedges, qcompose)
    return Q, vq, eq


def projective_plane():
    """Trivial complex over the hemi-octahedron and its sphere double cover data."""
    S, vinv, einv = octahedron_scwol()
    P, vq, eq = free_quotient_scwol(S, vinv, einv)
    return S, P, vq, eq


def folded_edge_pair() -> ComplexOfGroups:
    """x -> v, x -> w with G_v = Z2 and the other groups trivial; pi1 = Z2."""
    X = validate_scwol(["v", "w", "x"], {"a": ("x", "v"), "b": ("x", "w")}, {})
    one = trivial_group("T")
    z2 = cyclic_group(2, "Z2")
    local = {"x": one, "v": z2, "w": one}
    psi = {"a": GroupHom(one, z2, (0,)), "b": GroupHom(one, one, (0,))}
    return validate_cog(X, local, psi, {}, "fold")


def edge_with_kernel() -> ComplexOfGroups:
    """x -> v with G_x = Z2 inside G_v = Z2 x Z2; the action on the development has kernel Z2."""
    X = validate_scwol(["v", "x"], {"a": ("x", "v")}, {})
    z2 = cyclic_group(2, "Z2")
    v4 = direct_product(z2, z2, "V4")
    return validate_cog(X, {"x": z2, "v": v4}, {"a": GroupHom(z2, v4, (0, 1))}, {}, "kernel")


def single_edge_trivial() -> ComplexOfGroups:
    X = validate_scwol(["s", "t"], {"a": ("s", "t")}, {})
    return trivial_cog(X, "edge")


def cycle_trivial() -> ComplexOfGroups:
    """Two parallel edges x -> y: one independent cycle, pi1 infinite cyclic."""
    X = validate_scwol(["x", "y"], {"a": ("x", "y"), "b": ("x", "y")}, {})
    return trivial_cog(X, "cycle")


def double_cover():
    """Trivial complexes over the octahedral sphere and the projective plane, with the 2-fold covering."""
    S, P, vq, eq = projective_plane()
    cS, cP = trivial_cog(S, "sphere"), trivial_cog(P, "rp2")
    f = validate_morphism(S, P, vq, eq)
    one = cS.G(S.vertices[0])
    locals_ = {v: GroupHom(one, cP.G(vq[v]), (0,)) for v in S.vertices}
    return validate_cog_morphism(cS, cP, f, locals_, {}, "antipodal")


def corpus_workspaces() -> dict:
    """File name -> Workspace for every file shipped in corpus/."""
    out = {}
    for pqr in [(2, 3, 3), (2, 3, 4), (2, 3, 5), (2, 3, 7)]:
        ws = Workspace()
        C = triangle_of_groups(*pqr)
        ws.include_scwol(C.base, "triangle")
        ws.include_cog(C)
        out["triangle_%d%d%d.cogfile" % pqr] = ws
    ws = Workspace()
    ws.include_cog_morphism(double_cover())
    out["double_cover.cogfile"] = ws
    for fname, C, base in [
        ("fold.cogfile", folded_edge_pair(), "x"),
        ("kernel.cogfile", edge_with_kernel(), "x"),
        ("edge.cogfile", single_edge_trivial(), None),
        ("cycle.cogfile", cycle_trivial(), None),
    ]:
        ws = Workspace()
        ws.include_cog(C)
        if fname == "kernel.cogfile":
            lam = canonical_covering(build_development(C, base))
            lam.source.name = "kernel_dev"
            ws.include_cog_morphism(lam, "lambda")
        out[fname] = ws
    return out


def write_corpus(directory) -> list:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    names = []
    for fname, ws in corpus_workspaces().items():
        (d / fname).write_text(serialize(ws), encoding="utf-8")
        names.append(fname)
    return names
