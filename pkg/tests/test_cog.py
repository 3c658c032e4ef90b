import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cogdeck.cog import (
    CogMorphism,
    Homotopy,
    apply_family,
    check_morphism_axioms,
    compose,
    covers,
    find_homotopy,
    homotopic,
    identity,
    inverse,
    is_covering,
    is_isomorphism,
    trivial_cog,
    twist_at_basepoint,
    validate_cog,
    validate_cog_morphism,
    validate_homotopy,
)
from cogdeck.corpus import dihedral
from cogdeck.development import all_identity_projection, canonical_covering
from cogdeck.errors import (
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
from cogdeck.groups import GroupHom, cyclic_group, trivial_group
from cogdeck.scwol import ScwolMorphism, identity_morphism, validate_scwol

from cached import cover2, dev, small, tri


def two_chain():
    return validate_scwol([0, 1, 2], {"b": (0, 1), "a": (1, 2), "ab": (0, 2)}, {("a", "b"): "ab"})


def twisted_chain():
    """Z2 -> Z2 -> S3 where psi_ab differs from psi_a psi_b by conjugation."""
    X = two_chain()
    z2 = cyclic_group(2)
    S3 = dihedral(3)[0]
    # the reflections of S3 are 1, 2 and 1*2*1
    r3 = S3.prod(1, 2, 1)
    psi = {"b": (0, 1), "a": (0, 1), "ab": (0, r3)}
    return X, {0: z2, 1: z2, 2: S3}, psi, S3


def test_triangle_cogs_validate():
    for pqr in [(2, 3, 3), (2, 3, 4), (2, 3, 5), (2, 3, 7)]:
        C = tri(*pqr)
        assert C.G("F").order == 1
        assert C.G("V12").order == 2 * pqr[0]


def test_psi_not_injective():
    X = validate_scwol(["x", "v"], {"a": ("x", "v")}, {})
    with pytest.raises(PsiNotInjective):
        validate_cog(X, {"x": cyclic_group(2), "v": trivial_group()}, {"a": (0, 0)})


def test_cocycle_one_needs_twist():
    X, local, psi, S3 = twisted_chain()
    with pytest.raises(CocycleIFail):
        validate_cog(X, local, psi)
    # some twist g with c_g psi_ab = psi_a psi_b repairs it
    good = [g for g in S3.elements() if S3.conj(g, S3.prod(1, 2, 1)) == 1]
    assert good
    C = validate_cog(X, local, psi, {("a", "b"): good[0]})
    assert C.twist[("a", "b")] == good[0]


def test_twist_outside_group_rejected():
    X, local, psi, S3 = twisted_chain()
    with pytest.raises(BadElement):
        validate_cog(X, local, psi, {("a", "b"): 17})
    with pytest.raises(CogError):
        validate_cog(X, local, psi, {("b", "a"): 0})


def test_cocycle_two():
    verts = [0, 1, 2, 3]
    edges = {f"a{i}{j}": (i, j) for i in verts for j in verts if i < j}
    comp = {(f"a{j}{k}", f"a{i}{j}"): f"a{i}{k}" for i in verts for j in verts for k in verts if i < j < k}
    X = validate_scwol(verts, edges, comp)
    one, z2 = trivial_group(), cyclic_group(2)
    local = {0: one, 1: one, 2: one, 3: z2}
    psi = {a: (0,) for a in X.edges}
    with pytest.raises(CocycleIIFail):
        validate_cog(X, local, psi, {("a23", "a12"): 1})
    # a coboundary-like choice satisfying the identity
    C = validate_cog(X, local, psi, {("a23", "a12"): 1, ("a13", "a01"): 1})
    assert C.twist[("a23", "a12")] == 1


def test_identity_and_composition():
    C = tri(2, 3, 3)
    I = identity(C)
    check_morphism_axioms(I)
    assert compose(I, I) == I
    assert is_isomorphism(I)
    assert inverse(I) == I


def test_axiom_one_failure():
    C = tri(2, 3, 3)
    I = identity(C)
    # edge element at e113 that does not centralize the image of G_E1
    G = C.G("V13")
    r = C.psi["e113"](1)
    u = next(x for x in G.elements() if G.conj(x, r) != r)
    bad = CogMorphism(C, C, I.f, I.locals, {**I.edge_elts, "e113": u})
    with pytest.raises(AxiomIFail):
        check_morphism_axioms(bad)


def test_axiom_two_failure():
    C = tri(2, 3, 3)
    I = identity(C)
    # changing phi(f12) alone breaks phi(e112) psi(phi(f1)) = phi(f12)
    bad = CogMorphism(C, C, I.f, I.locals, {**I.edge_elts, "f12": 1})
    with pytest.raises(AxiomIIFail):
        check_morphism_axioms(bad)
    with pytest.raises(AxiomIIFail):
        validate_cog_morphism(C, C, I.f, I.locals, {"f12": 1})


def test_bad_edge_element_rejected():
    C = tri(2, 3, 3)
    I = identity(C)
    with pytest.raises(BadElement):
        validate_cog_morphism(C, C, I.f, I.locals, {"f12": 99})


def test_inverse_of_nontrivial_isomorphism():
    C = tri(2, 3, 3)
    I = identity(C)
    eta = apply_family(I, {"V12": 1, "E1": 1, "F": 0})
    assert is_isomorphism(eta)
    back = inverse(eta)
    assert compose(back, eta) == I
    assert compose(eta, back) == I


def test_is_covering_identity_and_double_cover():
    C = tri(2, 3, 3)
    cert = is_covering(identity(C))
    assert cert.morphism.source is C
    assert covers(cover2())


def test_canonical_covering_and_the_all_identity_variant():
    D = dev("tri233")
    assert covers(canonical_covering(D))
    with pytest.raises(CosetMapNotInjective):
        is_covering(all_identity_projection(D))


def test_local_not_injective():
    X = validate_scwol(["x", "v"], {"a": ("x", "v")}, {})
    z2 = cyclic_group(2)
    A = validate_cog(X, {"x": z2, "v": z2}, {"a": (0, 1)})
    B = trivial_cog(X)
    phi = validate_cog_morphism(A, B, identity_morphism(X), {"x": (0, 0), "v": (0, 0)}, {})
    with pytest.raises(LocalNotInjective):
        is_covering(phi)


def test_coset_map_not_surjective():
    X = validate_scwol(["x", "v"], {"a": ("x", "v")}, {})
    z2 = cyclic_group(2)
    B = validate_cog(X, {"x": trivial_group(), "v": z2}, {"a": (0,)})
    A = trivial_cog(X)
    phi = validate_cog_morphism(A, B, identity_morphism(X), {"x": (0,), "v": (0,)}, {})
    with pytest.raises(CosetMapNotSurjective):
        is_covering(phi)


def test_not_surjective():
    X = validate_scwol(["x", "v"], {"a": ("x", "v")}, {})
    Y = validate_scwol(["x", "v", "w"], {"a": ("x", "v"), "b": ("x", "w")}, {})
    f = ScwolMorphism(X, Y, {"x": "x", "v": "v"}, {"a": "a"})
    A, B = trivial_cog(X), trivial_cog(Y)
    one = A.G("x")
    phi = CogMorphism(A, B, f, {v: GroupHom(one, one, (0,)) for v in X.vertices}, {})
    with pytest.raises(NotSurjective):
        is_covering(phi)


def random_family(phi, rng):
    return {v: rng.randrange(phi.target.G(phi.f.vmap[v]).order) for v in phi.source.base.vertices}


CORPUS_MORPHISMS = {
    "id233": lambda: identity(tri(2, 3, 3)),
    "id234": lambda: identity(tri(2, 3, 4)),
    "lambda233": lambda: canonical_covering(dev("tri233")),
    "double_cover": cover2,
    "lambda_kernel": lambda: canonical_covering(dev("kernel")),
    "id_fold": lambda: identity(small("fold")),
}


@pytest.mark.parametrize("name", sorted(CORPUS_MORPHISMS))
def test_random_families_give_homotopic_morphisms(name):
    phi = CORPUS_MORPHISMS[name]()
    rng = random.Random(name)
    for _ in range(10):
        k = random_family(phi, rng)
        eta = apply_family(phi, k)
        h = find_homotopy(phi, eta)
        assert h is not None
        assert validate_homotopy(h)
        assert homotopic(eta, phi)


@settings(max_examples=50, deadline=None)
@given(st.dictionaries(st.sampled_from(["F", "E1", "E2", "E3", "V12", "V13", "V23"]), st.integers(0, 5)))
def test_homotopy_rel_root_is_unique(k):
    C = tri(2, 3, 3)
    phi = identity(C)
    k = {v: g % C.G(v).order for v, g in k.items()}
    k["V12"] = 0
    eta = apply_family(phi, k)
    h = find_homotopy(phi, eta, rel="V12")
    assert h is not None
    assert all(h.family[v] == k.get(v, 0) for v in C.base.vertices)


def test_basepoint_twist_is_homotopic_but_not_rel_base():
    C = tri(2, 3, 3)
    phi = identity(C)
    eta = twist_at_basepoint(phi, "V12", 1)
    assert homotopic(phi, eta)
    assert not homotopic(phi, eta, rel="V12")
    with pytest.raises(BadElement):
        twist_at_basepoint(phi, "V12", 50)


def test_inverse_family_reverses_homotopy():
    C = tri(2, 3, 3)
    phi = identity(C)
    k = {"V12": 3, "E1": 1, "V23": 4}
    eta = apply_family(phi, k)
    kinv = {v: C.G(v).inv(k.get(v, 0)) for v in C.base.vertices}
    assert apply_family(eta, kinv) == phi
    assert validate_homotopy(Homotopy(eta, phi, kinv))
    # V23 carries an element of order 3, so k itself does not undo eta
    assert not validate_homotopy(Homotopy(eta, phi, k))


def test_different_base_morphism():
    C = tri(2, 3, 3)
    D = dev("tri233")
    with pytest.raises(DifferentBaseMorphism):
        find_homotopy(identity(C), canonical_covering(D))
    assert homotopic(identity(C), canonical_covering(D)) is False


def test_homotopy_respects_composition():
    """A homotopy of the inner factor gives one of the composite with family eta_f(k)."""
    lam = canonical_covering(dev("tri233"))
    C = tri(2, 3, 3)
    rng = random.Random(5)
    outer = apply_family(identity(C), random_family(identity(C), rng))
    k = random_family(lam, rng)
    inner = apply_family(lam, k)
    both = compose(outer, inner)
    ref = compose(outer, lam)
    m = {v: outer.locals[lam.f.vmap[v]](k[v]) for v in lam.source.base.vertices}
    assert validate_homotopy(Homotopy(ref, both, m))
