import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group

from cogdeck.errors import CogError, Undecided
from cogdeck.presentation import build_presentation, enumerate_cosets, fundamental_group, is_developable
from cogdeck.xpath import concat, inverse, word_of_path

import oracles
import suites
from cached import DEVELOPABLE, pi1, small, tri


@pytest.mark.parametrize("pqr,order", [((2, 3, 3), 24), ((2, 3, 4), 48), ((2, 3, 5), 120)])
def test_triangle_orders_match_coxeter_closure(pqr, order):
    name = "tri%d%d%d" % pqr
    # the triangle with vertex groups D_p, D_q, D_r gives the Coxeter group with m = (p, q, r)
    assert pi1(name).order == order == oracles.coxeter_order_by_permutation_closure(*pqr)


def test_presentation_counts_for_233():
    P = build_presentation(tri(2, 3, 3), "V12")
    # local generators: (4-1) + (6-1) + (6-1) + 3*(2-1) = 16; 12 edges; 6 tree edges
    assert P.counts() == {"local_generators": 16, "edge_generators": 12, "tree_killed": 6, "relators": 80}


def test_presentation_words_are_well_formed():
    P = build_presentation(tri(2, 3, 4), "V12")
    for r in P.relators:
        assert r and all(g in P.index and e in (1, -1) for g, e in r)


def test_infinite_triangle_is_undecided():
    with pytest.raises(Undecided) as info:
        fundamental_group(tri(2, 3, 7), "V12", limit=2000)
    assert info.value.limit == 2000


def test_cycle_is_undecided():
    C = small("cycle")
    with pytest.raises(Undecided):
        fundamental_group(C, C.base.vertices[0], limit=500)


def test_nonpositive_limit_rejected():
    with pytest.raises(CogError):
        enumerate_cosets(build_presentation(tri(2, 3, 3), "V12"), (), 0)


@pytest.mark.parametrize("name,order", [("sphere", 1), ("rp2", 2), ("fold", 2), ("kernel", 4), ("edge", 1)])
def test_small_fundamental_groups(name, order):
    assert pi1(name).order == order


def _sympy_order(C, base):
    P = build_presentation(C, base)
    F, *gs = free_group(",".join(f"g{i}" for i in range(len(P.generators))))
    rels = []
    for w in P.relators:
        x = F.identity
        for g, e in w:
            x = x * gs[P.index[g]] ** e
        rels.append(x)
    return FpGroup(F, rels).order()


@pytest.mark.parametrize("name", ["rp2", "fold", "kernel"])
def test_orders_agree_with_sympy_enumeration(name):
    C, base = DEVELOPABLE[name]
    assert pi1(name).order == _sympy_order(C(), base)


@pytest.mark.parametrize("name", sorted(DEVELOPABLE))
def test_corpus_complexes_are_developable(name):
    ok, bad = is_developable(pi1(name))
    assert ok and bad == {}


def test_local_subgroup_index_by_enumeration():
    """Enumerating over the words of G_v gives index |pi1| / |G_v| when iota_v is injective."""
    pi = pi1("tri234")
    P = pi.presentation
    for v in tri(2, 3, 4).base.vertices:
        G = pi.cog.G(v)
        words = [word_of_path(concat(concat(pi.tree_loop_path(v), suites._length0(pi.cog, v, g)), inverse(pi.tree_loop_path(v)))) for g in G.elements()]
        T = enumerate_cosets(P, words)
        assert T.complete and T.index == pi.order // G.order


def test_coset_table_is_a_permutation_table():
    pi = pi1("tri233")
    rows = pi.table.rows
    n = pi.table.index
    for j in range(len(pi.table.generators)):
        fwd = [rows[c][2 * j] for c in range(n)]
        assert sorted(fwd) == list(range(n))
        assert all(rows[rows[c][2 * j]][2 * j + 1] == c for c in range(n))


def test_tree_loops_are_trivial():
    pi = pi1("tri235")
    for v in pi.cog.base.vertices:
        p = pi.tree_loop_path(v)
        assert p.start == "V12" and p.end == v
        assert pi.element_of_path(p) == 0


def test_class_of_loop_requires_a_loop():
    pi = pi1("tri233")
    with pytest.raises(CogError):
        pi.class_of_loop(pi.tree_loop_path("F"))
    with pytest.raises(CogError):
        pi.are_homotopic(pi.tree_loop_path("F"), pi.tree_loop_path("E1"))


def test_kappa_inverse_reps_realize_every_element():
    pi = pi1("tri233")
    for x in pi.group.elements():
        p = pi.kappa_inverse_rep(x)
        assert pi.class_of_loop(p).id == x


def test_generators_of_pi1_are_t_and_local_images():
    pi = pi1("tri233")
    X = pi.cog.base
    gens = {pi.t_element(a) for a in X.edges}
    for v in X.vertices:
        gens |= set(pi.iota(v).image)
    gens.discard(0)
    assert pi.group.order == len(oracles.generated([list(r) for r in pi.group.table], sorted(gens)))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["tri233", "tri234", "rp2", "kernel"]), st.integers(0, 10**6), st.integers(0, 6), st.integers(0, 6))
def test_element_of_concatenation_is_product(name, seed, n, m):
    pi = pi1(name)
    rng = random.Random(seed)
    p = suites.random_loop(pi, rng, n)
    q = suites.random_loop(pi, rng, m)
    assert pi.class_of_loop(concat(p, q)).id == pi.group.mul(pi.class_of_loop(p).id, pi.class_of_loop(q).id)
    assert pi.class_of_loop(inverse(p)).id == pi.group.inv(pi.class_of_loop(p).id)


def test_presentation_is_independent_of_basepoint_order():
    for v in ("V12", "F", "E2"):
        assert fundamental_group(tri(2, 3, 3), v).order == 24
