"""Presentation of the fundamental group and Todd-Coxeter coset enumeration.

Generators are x_(v,g) for non-identity local elements and t_a for edges;
t_a stands for traversing a forwards, so the X-path (g, a, h) has word
x_(i(a),g) t_a x_(t(a),h).  Relators:
  x_g x_h x_(gh)^-1                      local multiplication
  t_a^-1 x_(i(a),g) t_a x_(t(a),psi_a(g))^-1   edge slide (move Ia)
  t_b t_a x_(t(a),g_ab) t_ab^-1          shortcut (move IIIa)
  t_a                                    a in the spanning tree
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .cog import ComplexOfGroups
from .errors import CogError, Undecided
from .groups import FiniteGroup, GroupHom, Subgroup
from .scwol import OrientedEdge, SpanningTree, spanning_tree, tree_path
from .xpath import XPath, concat, concat_all, edge_path, inverse, path_from_edges, t_gen, trivial_path, word_of_path, x_gen


@dataclass
class Pi1Presentation:
    cog: ComplexOfGroups
    base: object
    tree: SpanningTree
    generators: list
    relators: list  # words: tuples of (generator, +-1)
    tree_killed: frozenset
    index: dict = field(default_factory=dict)  # generator -> position

    def counts(self) -> dict:
        n_local = sum(1 for g in self.generators if g[0] == "x")
        n_edge = sum(1 for g in self.generators if g[0] == "t")
        return {
            "local_generators": n_local,
            "edge_generators": n_edge,
            "tree_killed": len(self.tree_killed),
            "relators": len(self.relators),
        }


def build_presentation(cog: ComplexOfGroups, base) -> Pi1Presentation:
    X = cog.base
    T = spanning_tree(X, base)
    gens = []
    for v in X.vertices:
        gens += [x_gen(v, g) for g in range(1, cog.G(v).order)]
    gens += [t_gen(a) for a in X.edges]
    rels = []

    def x(v, g, e=1):
        return [(x_gen(v, g), e)] if g != 0 else []

    for v in X.vertices:
        G = cog.G(v)
        for g in range(1, G.order):
            for h in range(1, G.order):
                rels.append(tuple(x(v, g) + x(v, h) + x(v, G.mul(g, h), -1)))
    for a in X.edges:
        i, t = X.i(a), X.t(a)
        for g in range(1, cog.G(i).order):
            rels.append(tuple([(t_gen(a), -1)] + x(i, g) + [(t_gen(a), 1)] + x(t, cog.psi[a](g), -1)))
    for (a, b), ab in X.compose.items():
        rels.append(tuple([(t_gen(b), 1), (t_gen(a), 1)] + x(X.t(a), cog.twist[(a, b)]) + [(t_gen(ab), -1)]))
    killed = frozenset(t_gen(a) for a in T.tree_edges)
    for a in X.edges:
        if t_gen(a) in killed:
            rels.append(((t_gen(a), 1),))
    return Pi1Presentation(cog, base, T, gens, rels, killed, {g: n for n, g in enumerate(gens)})


# ---------------------------------------------------------------- enumeration


class _Full(Exception):
    pass


@dataclass
class CosetTable:
    presentation: object
    subgroup_words: list
    generators: list  # generators that carry table columns
    rows: list  # rows[c][col]; col 2j is generator j, 2j+1 its inverse
    complete: bool
    limit: int

    @property
    def index(self) -> int:
        return len(self.rows)

    def column(self, gen, exp: int) -> int:
        return 2 * self._pos[gen] + (0 if exp > 0 else 1)

    def __post_init__(self):
        self._pos = {g: j for j, g in enumerate(self.generators)}

    def trace(self, c: int, word) -> int:
        for gen, e in word:
            j = self._pos.get(gen)
            if j is None:  # generator eliminated as the identity
                continue
            c = self.rows[c][2 * j + (0 if e > 0 else 1)]
        return c


class _Enumerator:
    """HLT coset enumeration with lookahead and coincidence processing."""

    def __init__(self, ncols: int, relators: list, limit: int):
        self.ncols = ncols
        self.rels = relators
        self.limit = limit
        self.table = [[-1] * ncols]
        self.fwd = [0]
        self.live = 1

    def rep(self, c):
        r = c
        while self.fwd[r] != r:
            r = self.fwd[r]
        while self.fwd[c] != r:
            self.fwd[c], c = r, self.fwd[c]
        return r

    def define(self, c, x):
        if self.live >= self.limit:
            raise _Full
        n = len(self.table)
        self.table.append([-1] * self.ncols)
        self.fwd.append(n)
        self.live += 1
        self.table[c][x] = n
        self.table[n][x ^ 1] = c

    def merge(self, a, b, queue):
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        lo, hi = min(a, b), max(a, b)
        self.fwd[hi] = lo
        self.live -= 1
        queue.append(hi)

    def coincidence(self, a, b):
        queue = []
        self.merge(a, b, queue)
        k = 0
        T = self.table
        while k < len(queue):
            e = queue[k]
            k += 1
            row = T[e]
            for x in range(self.ncols):
                f = row[x]
                if f < 0:
                    continue
                T[f][x ^ 1] = -1
                e1, f1 = self.rep(e), self.rep(f)
                if T[e1][x] >= 0:
                    self.merge(f1, T[e1][x], queue)
                elif T[f1][x ^ 1] >= 0:
                    self.merge(e1, T[f1][x ^ 1], queue)
                else:
                    T[e1][x] = f1
                    T[f1][x ^ 1] = e1

    def scan(self, c, word, fill):
        T = self.table
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and T[f][word[i]] >= 0:
                f = T[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and T[b][word[j] ^ 1] >= 0:
                b = T[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                T[f][word[i]] = b
                T[b][word[i] ^ 1] = f
                return
            if not fill:
                return
            self.define(f, word[i])

    def alive(self, c):
        return self.fwd[c] == c

    def lookahead(self):
        for c in range(len(self.table)):
            for w in self.rels:
                if not self.alive(c):
                    break
                self.scan(c, w, fill=False)

    def compact(self, pos):
        keep = [c for c in range(len(self.table)) if self.alive(c)]
        new = {c: n for n, c in enumerate(keep)}
        self.table = [[new[y] if y >= 0 else -1 for y in self.table[c]] for c in keep]
        self.fwd = list(range(len(keep)))
        return sum(1 for c in keep if c < pos)

    def run(self, subgroup_words):
        for w in subgroup_words:
            self.scan(0, w, fill=True)
        c = 0
        while c < len(self.table):
            try:
                if self.alive(c):
                    for w in self.rels:
                        self.scan(c, w, fill=True)
                        if not self.alive(c):
                            break
                    if self.alive(c):
                        for x in range(self.ncols):
                            if self.table[c][x] < 0:
                                self.define(c, x)
                c += 1
            except _Full:
                before = self.live
                self.lookahead()
                c = self.compact(c)
                if self.live >= before or self.live > 0.9 * self.limit:
                    return False
        return True

    def standardized(self):
        """Renumber live cosets in order of first appearance scanning rows by column."""
        live = [c for c in range(len(self.table)) if self.alive(c)]
        order = {live[0]: 0}
        seq = [live[0]]
        k = 0
        while k < len(seq):
            for y in self.table[seq[k]]:
                y = self.rep(y)
                if y not in order:
                    order[y] = len(seq)
                    seq.append(y)
            k += 1
        return [[order[self.rep(y)] for y in self.table[c]] for c in seq]


def enumerate_cosets(pres: Pi1Presentation, subgroup_words: Sequence = (), limit: int = 100000) -> CosetTable:
    """Todd-Coxeter on the presentation; tree-killed generators are substituted by 1."""
    if limit < 1:
        raise CogError("limit must be positive")
    gens = [g for g in pres.generators if g not in pres.tree_killed]
    pos = {g: j for j, g in enumerate(gens)}

    def cols(word):
        return [2 * pos[g] + (0 if e > 0 else 1) for g, e in word if g in pos]

    rels = []
    seen = set()
    for r in pres.relators:
        w = tuple(cols(r))
        w = _cyclic_reduce(w)
        if w and w not in seen:
            seen.add(w)
            rels.append(list(w))
    rels.sort(key=len)
    sub = [cols(w) for w in subgroup_words]
    en = _Enumerator(2 * len(gens), rels, limit)
    ok = en.run(sub)
    rows = en.standardized() if ok else []
    table = CosetTable(pres, list(subgroup_words), gens, rows, ok, limit)
    if ok:
        for c in range(table.index):
            for r in rels:
                d = c
                for x in r:
                    d = rows[d][x]
                if d != c:
                    raise CogError("internal: completed table violates a relator")
    return table


def _cyclic_reduce(w):
    w = list(w)
    changed = True
    while changed:
        changed = False
        out = []
        for x in w:
            if out and out[-1] == x ^ 1:
                out.pop()
                changed = True
            else:
                out.append(x)
        w = out
        while len(w) >= 2 and w[0] == w[-1] ^ 1:
            w = w[1:-1]
            changed = True
    return tuple(w)


# ---------------------------------------------------------------- pi_1


class Pi1Group:
    """The enumerated fundamental group pi_1(X, T) with path dictionaries."""

    def __init__(self, pres: Pi1Presentation, table: CosetTable):
        if not table.complete:
            raise Undecided(table.limit)
        self.presentation = pres
        self.table = table
        self.cog = pres.cog
        self.base = pres.base
        rows = table.rows
        n = table.index
        ngen = len(table.generators)
        # shortest words for each element, by BFS over the table
        word = [None] * n
        word[0] = ()
        frontier = [0]
        while frontier:
            nxt = []
            for c in frontier:
                for col in range(2 * ngen):
                    d = rows[c][col]
                    if word[d] is None:
                        word[d] = word[c] + ((table.generators[col // 2], 1 if col % 2 == 0 else -1),)
                        nxt.append(d)
            frontier = nxt
        self.words = word
        mul = [[table.trace(x, word[y]) for y in range(n)] for x in range(n)]
        inv = [0] * n
        for x in range(n):
            inv[x] = mul[x].index(0)
        self.group = FiniteGroup(tuple(map(tuple, mul)), tuple(inv), "pi1")
        self._iota = {}
        self._tree_paths = {}

    @property
    def order(self) -> int:
        return self.group.order

    def element_of_word(self, word) -> int:
        return self.table.trace(0, word)

    def tree_loop_path(self, v) -> XPath:
        """p_v: the tree path from the base to v."""
        p = self._tree_paths.get(v)
        if p is None:
            p = path_from_edges(self.cog, self.base, tree_path(self.presentation.tree, v))
            self._tree_paths[v] = p
        return p

    def element_of_path(self, p: XPath) -> int:
        """Class of p_(i(p)) * p * p_(t(p))^-1; tree letters are trivial, so this is just the word."""
        if p.cog is not self.cog and p.cog != self.cog:
            raise CogError("path lives over a different complex of groups")
        return self.element_of_word(word_of_path(p))

    def class_of_loop(self, p: XPath) -> "Pi1Element":
        if p.start != self.base or p.end != self.base:
            raise CogError("not a loop at the base vertex")
        return Pi1Element(self, self.element_of_path(p), p)

    def are_homotopic(self, p: XPath, q: XPath) -> bool:
        if p.start != q.start or p.end != q.end:
            raise CogError("paths have different endpoints")
        return self.element_of_path(p) == self.element_of_path(q)

    def iota(self, v) -> GroupHom:
        h = self._iota.get(v)
        if h is None:
            G = self.cog.G(v)
            h = GroupHom(G, self.group, tuple(self.element_of_word(((x_gen(v, g), 1),)) if g else 0 for g in G.elements()))
            self._iota[v] = h
        return h

    def local_subgroup(self, v) -> Subgroup:
        return Subgroup(self.group, tuple(sorted(set(self.iota(v).image))))

    def t_element(self, a) -> int:
        """Class of p_i(a) * (1,a,1) * p_t(a)^-1."""
        return self.element_of_word(((t_gen(a), 1),))

    def generator_loop(self, gen) -> XPath:
        if gen[0] == "x":
            _, v, g = gen
            p = self.tree_loop_path(v)
            return concat_all([p, trivial_path(self.cog, v, g), inverse(p)])
        a = gen[1]
        X = self.cog.base
        return concat_all([self.tree_loop_path(X.i(a)), edge_path(self.cog, OrientedEdge(a, True)), inverse(self.tree_loop_path(X.t(a)))])

    def loop_of_word(self, word) -> XPath:
        out = trivial_path(self.cog, self.base)
        for gen, e in word:
            q = self.generator_loop(gen)
            out = concat(out, q if e > 0 else inverse(q))
        return out

    def kappa_inverse_rep(self, x: int) -> XPath:
        return self.loop_of_word(self.words[x])


@dataclass(frozen=True)
class Pi1Element:
    group: Pi1Group
    id: int
    loop: XPath


def fundamental_group(cog: ComplexOfGroups, base, limit: int = 100000) -> Pi1Group:
    pres = build_presentation(cog, base)
    table = enumerate_cosets(pres, (), limit)
    if not table.complete:
        raise Undecided(limit)
    return Pi1Group(pres, table)


def is_developable(pi1: Pi1Group):
    """(flag, witnesses) with witnesses = {v: non-trivial kernel elements of iota_v}."""
    bad = {}
    for v in pi1.cog.base.vertices:
        ker = [g for g, y in enumerate(pi1.iota(v).image) if y == 0 and g != 0]
        if ker:
            bad[v] = ker
    return (not bad), bad
