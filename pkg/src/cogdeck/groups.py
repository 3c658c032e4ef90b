"""Finite groups stored as multiplication tables over ids 0..n-1 (0 is the identity)."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    NoIdentity,
    NoInverse,
    NotAHomomorphism,
    NotASubgroup,
    NotAssociative,
    NotNormal,
    GroupError,
)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: tuple
    inverse: tuple
    name: str = field(default="", compare=False)

    @property
    def order(self) -> int:
        return len(self.table)

    def elements(self) -> range:
        return range(len(self.table))

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def inv(self, x: int) -> int:
        return self.inverse[x]

    def prod(self, *xs: int) -> int:
        r = 0
        for x in xs:
            r = self.table[r][x]
        return r

    def conj(self, h: int, x: int) -> int:
        """h x h^-1."""
        return self.table[self.table[h][x]][self.inverse[h]]

    def element_order(self, x: int) -> int:
        n, y = 1, x
        while y != 0:
            y = self.table[y][x]
            n += 1
        return n

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FiniteGroup{label} order {self.order}>"


def group_from_table(rows: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    """Validate a multiplication table and return the group it defines."""
    n = len(rows)
    if n == 0:
        raise GroupError("empty table")
    if any(len(r) != n for r in rows):
        raise GroupError("table is not square")
    t = np.asarray(rows, dtype=np.int64)
    if t.min() < 0 or t.max() >= n:
        raise GroupError("table entry out of range")
    ids = np.arange(n)
    if not (np.array_equal(t[0], ids) and np.array_equal(t[:, 0], ids)):
        raise NoIdentity("element 0 is not a two-sided identity")
    # (xy)z and x(yz) as n*n*n arrays
    lhs = t[t]
    rhs = t[:, t]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        raise NotAssociative(*map(int, bad[0]))
    inverse = []
    for x in range(n):
        left = np.flatnonzero(t[x] == 0)
        if len(left) != 1 or t[left[0], x] != 0:
            raise NoInverse(x)
        inverse.append(int(left[0]))
    table = tuple(tuple(int(v) for v in row) for row in t)
    return FiniteGroup(table, tuple(inverse), name)


def trivial_group(name: str = "1") -> FiniteGroup:
    return FiniteGroup(((0,),), (0,), name)


def cyclic_group(n: int, name: str = "") -> FiniteGroup:
    return group_from_table([[(i + j) % n for j in range(n)] for i in range(n)], name or f"Z{n}")


def direct_product(a: FiniteGroup, b: FiniteGroup, name: str = "") -> FiniteGroup:
    """Element (x, y) gets id x * |b| + y."""
    m = b.order
    rows = []
    for x1 in a.elements():
        for y1 in b.elements():
            rows.append([a.mul(x1, x2) * m + b.mul(y1, y2) for x2 in a.elements() for y2 in b.elements()])
    return group_from_table(rows, name)


def compose_perm(p: Sequence[int], q: Sequence[int]) -> tuple:
    """Apply q first, then p."""
    return tuple(p[i] for i in q)


def group_from_permutations(degree: int, gens: Sequence[Sequence[int]], name: str = ""):
    """Close the generators under composition.

    Ids are assigned in breadth-first order: identity first, then products
    element*generator as they are discovered.  Returns the group and the list
    of permutations indexed by id.
    """
    ident = tuple(range(degree))
    gens = [tuple(g) for g in gens]
    for g in gens:
        if sorted(g) != list(ident):
            raise GroupError(f"not a permutation of {degree} points: {g}")
    perms = [ident]
    index = {ident: 0}
    k = 0
    while k < len(perms):
        for g in gens:
            p = compose_perm(perms[k], g)
            if p not in index:
                index[p] = len(perms)
                perms.append(p)
        k += 1
    rows = [[index[compose_perm(p, q)] for q in perms] for p in perms]
    return group_from_table(rows, name), perms


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    elements: tuple

    @property
    def order(self) -> int:
        return len(self.elements)

    def __post_init__(self):
        object.__setattr__(self, "_set", frozenset(self.elements))

    def __contains__(self, x) -> bool:
        return x in self._set

    def __iter__(self):
        return iter(self.elements)


def make_subgroup(G: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    """Check closure and wrap."""
    s = sorted(set(elements))
    ss = set(s)
    if 0 not in ss:
        raise NotASubgroup("missing identity")
    for x in s:
        if G.inv(x) not in ss:
            raise NotASubgroup(f"not closed under inverse at {x}")
        for y in s:
            if G.mul(x, y) not in ss:
                raise NotASubgroup(f"not closed under product at ({x}, {y})")
    return Subgroup(G, tuple(s))


def subgroup_generated(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    gens = sorted(set(gens))
    found = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mul(x, g)
                if y not in found:
                    found.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, tuple(sorted(found)))


def whole(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(G.elements()))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (0,))


def conjugate_subgroup(G: FiniteGroup, g: int, U: Subgroup) -> Subgroup:
    """g U g^-1."""
    return Subgroup(G, tuple(sorted({G.conj(g, u) for u in U.elements})))


def normalizer(G: FiniteGroup, U: Subgroup) -> Subgroup:
    us = U._set
    return Subgroup(G, tuple(g for g in G.elements() if all(G.conj(g, u) in us for u in U.elements)))


def centralizer(G: FiniteGroup, U: Subgroup) -> Subgroup:
    return Subgroup(
        G, tuple(g for g in G.elements() if all(G.mul(g, u) == G.mul(u, g) for u in U.elements))
    )


def center(G: FiniteGroup) -> Subgroup:
    return centralizer(G, whole(G))


def intersection(G: FiniteGroup, *subs: Subgroup) -> Subgroup:
    common = set(G.elements())
    for s in subs:
        common &= s._set
    return Subgroup(G, tuple(sorted(common)))


def is_normal(G: FiniteGroup, N: Subgroup, within: Subgroup | None = None) -> bool:
    ambient = within.elements if within is not None else G.elements()
    ns = N._set
    return all(G.conj(g, x) in ns for g in ambient for x in N.elements)


def subgroup_product(G: FiniteGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    """A*B, which must be closed (guaranteed when one factor normalizes the other)."""
    prods = {G.mul(a, b) for a in A.elements for b in B.elements}
    try:
        return make_subgroup(G, prods)
    except NotASubgroup as exc:
        raise NotASubgroup(f"product set is not a subgroup: {exc}") from None


def left_cosets(G: FiniteGroup, U: Subgroup) -> list:
    """Cosets gU as sorted tuples, ordered by their minimal element."""
    seen = set()
    out = []
    for g in G.elements():
        if g in seen:
            continue
        c = tuple(sorted(G.mul(g, u) for u in U.elements))
        seen.update(c)
        out.append(c)
    return out


def coset_index(G: FiniteGroup, U: Subgroup) -> dict:
    """Map each element to the minimal element of its left coset gU."""
    rep = {}
    for c in left_cosets(G, U):
        for x in c:
            rep[x] = c[0]
    return rep


def quotient(G: FiniteGroup, N: Subgroup):
    """G/N with cosets numbered by ascending minimal representative.

    Returns the quotient group and the projection homomorphism.
    """
    if not is_normal(G, N):
        raise NotNormal("subgroup is not normal")
    cosets = left_cosets(G, N)
    which = {}
    for i, c in enumerate(cosets):
        for x in c:
            which[x] = i
    rows = [[which[G.mul(c[0], d[0])] for d in cosets] for c in cosets]
    Q = group_from_table(rows)
    proj = GroupHom(G, Q, tuple(which[x] for x in G.elements()))
    return Q, proj


def subgroup_as_group(G: FiniteGroup, S: Subgroup, name: str = ""):
    """Relabel S as a standalone group: identity 0, the rest by ascending parent id.

    Returns (H, embedding H -> G).
    """
    elts = list(S.elements)
    local = {x: i for i, x in enumerate(elts)}
    rows = [[local[G.mul(x, y)] for y in elts] for x in elts]
    H = FiniteGroup(tuple(tuple(r) for r in rows), tuple(local[G.inv(x)] for x in elts), name)
    return H, GroupHom(H, G, tuple(elts))


@dataclass(frozen=True)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    image: tuple

    def __call__(self, x: int) -> int:
        return self.image[x]

    def is_injective(self) -> bool:
        return len(set(self.image)) == len(self.image)

    def is_bijective(self) -> bool:
        return self.is_injective() and self.source.order == self.target.order

    def image_subgroup(self) -> Subgroup:
        return Subgroup(self.target, tuple(sorted(set(self.image))))

    def kernel(self) -> Subgroup:
        return Subgroup(self.source, tuple(x for x in self.source.elements() if self.image[x] == 0))

    def then(self, other: "GroupHom") -> "GroupHom":
        """other o self."""
        return GroupHom(self.source, other.target, tuple(other.image[y] for y in self.image))

    def inverse(self) -> "GroupHom":
        if not self.is_bijective():
            raise GroupError("homomorphism is not bijective")
        inv = [0] * len(self.image)
        for x, y in enumerate(self.image):
            inv[y] = x
        return GroupHom(self.target, self.source, tuple(inv))

    def preimage(self, y: int):
        for x, z in enumerate(self.image):
            if z == y:
                return x
        return None


def make_hom(source: FiniteGroup, target: FiniteGroup, image: Sequence[int]) -> GroupHom:
    """Validate the homomorphism property exhaustively."""
    if len(image) != source.order:
        raise GroupError(f"map has {len(image)} entries, source has order {source.order}")
    img = np.asarray(image, dtype=np.int64)
    if len(img) and (img.min() < 0 or img.max() >= target.order):
        raise GroupError("image id out of range")
    s = np.asarray(source.table)
    t = np.asarray(target.table)
    bad = np.argwhere(img[s] != t[img[:, None], img[None, :]])
    if len(bad):
        raise NotAHomomorphism(*map(int, bad[0]))
    return GroupHom(source, target, tuple(int(v) for v in image))


def identity_hom(G: FiniteGroup) -> GroupHom:
    return GroupHom(G, G, tuple(G.elements()))


def trivial_hom(source: FiniteGroup, target: FiniteGroup) -> GroupHom:
    return GroupHom(source, target, (0,) * source.order)


def conjugation_hom(G: FiniteGroup, h: int) -> GroupHom:
    return GroupHom(G, G, tuple(G.conj(h, x) for x in G.elements()))


def small_generating_set(G: FiniteGroup) -> list:
    """Greedy: repeatedly add the least element outside the current span."""
    gens = []
    span = {0}
    for x in G.elements():
        if x not in span:
            gens.append(x)
            span = set(subgroup_generated(G, gens).elements)
    return gens


def isomorphisms(G: FiniteGroup, H: FiniteGroup):
    """Yield every isomorphism G -> H, in lexicographic order of generator images."""
    if G.order != H.order:
        return
    gens = small_generating_set(G)
    # words for every element of G over gens, by breadth-first closure
    word = {0: ()}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for i, g in enumerate(gens):
                y = G.mul(x, g)
                if y not in word:
                    word[y] = word[x] + (i,)
                    nxt.append(y)
        frontier = nxt
    h_orders = [H.element_order(y) for y in H.elements()]
    cands = [[y for y in H.elements() if h_orders[y] == G.element_order(g)] for g in gens]

    def extend(imgs):
        image = [0] * G.order
        for x, w in word.items():
            v = 0
            for i in w:
                v = H.mul(v, imgs[i])
            image[x] = v
        if len(set(image)) != G.order:
            return None
        for x in G.elements():
            for y in G.elements():
                if image[G.mul(x, y)] != H.mul(image[x], image[y]):
                    return None
        return GroupHom(G, H, tuple(image))

    def rec(i, imgs):
        if i == len(gens):
            hom = extend(imgs)
            if hom is not None:
                yield hom
            return
        for y in cands[i]:
            yield from rec(i + 1, imgs + [y])

    yield from rec(0, [])
