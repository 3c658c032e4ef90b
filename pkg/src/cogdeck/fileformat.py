"""Line-oriented text format for groups, scwols, complexes of groups and morphisms.

One object per block; blocks are separated by blank lines and `#` starts a
comment.  Tokens that look like integers are read as ints.  See README.md for
the grammar.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .cog import CogMorphism, ComplexOfGroups, validate_cog, validate_cog_morphism
from .errors import CogError, DanglingReference, FileSyntaxError, ValidationError
from .groups import FiniteGroup, GroupHom, group_from_permutations, group_from_table
from .scwol import OrientedEdge, Scwol, ScwolMorphism, validate_morphism, validate_scwol
from .xpath import XPath, make_path

KINDS = ("group", "scwol", "cog", "scwolmorphism", "cogmorphism")


def token(s: str):
    return int(s) if re.fullmatch(r"-?\d+", s) else s


@dataclass
class Workspace:
    groups: dict = field(default_factory=dict)
    scwols: dict = field(default_factory=dict)
    cogs: dict = field(default_factory=dict)
    scwol_morphisms: dict = field(default_factory=dict)
    cog_morphisms: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)  # name -> (kind, source, line)

    def registry(self, kind: str) -> dict:
        return {
            "group": self.groups,
            "scwol": self.scwols,
            "cog": self.cogs,
            "scwolmorphism": self.scwol_morphisms,
            "cogmorphism": self.cog_morphisms,
        }[kind]

    def add(self, kind: str, name, obj, source: str = "", line: int | None = None):
        if name in self.provenance:
            raise FileSyntaxError(line, f"name {name!r} already declared")
        self.registry(kind)[name] = obj
        self.provenance[name] = (kind, source, line)
        return obj

    def get(self, kind: str, name, line: int | None = None):
        reg = self.registry(kind)
        if name not in reg:
            raise DanglingReference(name, line)
        return reg[name]

    def name_of(self, kind: str, obj):
        for n, o in self.registry(kind).items():
            if o is obj:
                return n
        for n, o in self.registry(kind).items():
            if o == obj and (kind != "group" or o.name == obj.name):
                return n
        return None

    def _fresh(self, base: str):
        base = str(base) if base not in ("", None) else "obj"
        name, k = base, 1
        while name in self.provenance:
            k += 1
            name = f"{base}_{k}"
        return name

    def include_group(self, G: FiniteGroup):
        for m, H in self.groups.items():
            if H is G or H == G:
                return m
        name = G.name if re.fullmatch(r"[A-Za-z_][\w.]*", G.name or "") else "G"
        n = self._fresh(name)
        self.add("group", n, G)
        return n

    def include_scwol(self, X: Scwol, name: str):
        n = self.name_of("scwol", X)
        if n is None:
            n = self._fresh(name)
            self.add("scwol", n, X)
        return n

    def include_cog(self, C: ComplexOfGroups, name: str | None = None):
        n = self.name_of("cog", C)
        if n is not None:
            return n
        n = self._fresh(name or C.name or "cog")
        for v in C.base.vertices:
            self.include_group(C.G(v))
        self.include_scwol(C.base, f"{n}_scwol")
        self.add("cog", n, C)
        return n

    def include_cog_morphism(self, phi: CogMorphism, name: str | None = None):
        n = self.name_of("cogmorphism", phi)
        if n is not None:
            return n
        self.include_cog(phi.source)
        self.include_cog(phi.target)
        n = self._fresh(name or phi.name or "phi")
        fn = self.name_of("scwolmorphism", phi.f)
        if fn is None:
            fn = self._fresh(f"{n}_f")
            self.add("scwolmorphism", fn, phi.f)
        self.add("cogmorphism", n, phi)
        return n

    def only(self, kind: str, name=None):
        """The named object, or the unique one of this kind."""
        reg = self.registry(kind)
        if name is not None:
            return self.get(kind, token(name) if isinstance(name, str) else name)
        if len(reg) != 1:
            raise CogError(f"expected exactly one {kind} in the workspace, found {len(reg)}; name one explicitly")
        return next(iter(reg.values()))


# ---------------------------------------------------------------- parsing


def _blocks(text: str):
    block = []
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            if block:
                yield block
                block = []
            continue
        block.append((n, line.split()))
    if block:
        yield block


def _expect(cond, line, msg):
    if not cond:
        raise FileSyntaxError(line, msg)


def _ints(toks, line):
    try:
        return [int(t) for t in toks]
    except ValueError:
        raise FileSyntaxError(line, f"expected integers, got {' '.join(toks)!r}") from None


def _validated(name, fn, *args):
    try:
        return fn(*args)
    except CogError as exc:
        if isinstance(exc, (FileSyntaxError, DanglingReference)):
            raise
        raise ValidationError(name, exc) from exc


def _parse_group(block, ws, source):
    n0, head = block[0]
    _expect(len(head) == 4 and head[2] in ("order", "perm"), n0, "expected 'group <name> order <n>' or 'group <name> perm <degree>'")
    name = token(head[1])
    size = _ints([head[3]], n0)[0]
    body = block[1:]
    if head[2] == "order":
        _expect(len(body) == size, n0, f"group {name}: expected {size} rows, got {len(body)}")
        rows = []
        for n, toks in body:
            row = _ints(toks, n)
            _expect(len(row) == size, n, f"row has {len(row)} entries, expected {size}")
            rows.append(row)
        G = _validated(name, group_from_table, rows, str(name))
    else:
        gens = []
        for n, toks in body:
            p = _ints(toks, n)
            _expect(sorted(p) == list(range(size)), n, f"not a permutation of 0..{size - 1}")
            gens.append(tuple(p))
        G = _validated(name, lambda: group_from_permutations(size, gens, str(name))[0])
    ws.add("group", name, G, source, n0)


def _parse_scwol(block, ws, source):
    n0, head = block[0]
    _expect(len(head) == 2, n0, "expected 'scwol <name>'")
    name = token(head[1])
    vertices, edges, comp = [], {}, {}
    for n, toks in block[1:]:
        kw = toks[0]
        if kw == "vertex" and len(toks) == 2:
            vertices.append(token(toks[1]))
        elif kw == "edge" and len(toks) == 4:
            a = token(toks[1])
            _expect(a not in edges, n, f"edge {a!r} declared twice")
            edges[a] = (token(toks[2]), token(toks[3]))
        elif kw == "compose" and len(toks) == 5 and toks[3] == "=":
            comp[(token(toks[1]), token(toks[2]))] = token(toks[4])
        else:
            raise FileSyntaxError(n, f"unexpected line in scwol {name}: {' '.join(toks)!r}")
    vs = set(vertices)
    for a, (i, t) in edges.items():
        for v in (i, t):
            if v not in vs:
                raise DanglingReference(v, n0)
    ws.add("scwol", name, _validated(name, validate_scwol, vertices, edges, comp), source, n0)


def _map_line(toks, n):
    _expect(len(toks) >= 3 and toks[2] == ":", n, "expected '<keyword> <id> : <ids>'")
    return token(toks[1]), _ints(toks[3:], n)


def _parse_cog(block, ws, source):
    n0, head = block[0]
    _expect(len(head) == 4 and head[2] == "over", n0, "expected 'cog <name> over <scwol>'")
    name = token(head[1])
    X = ws.get("scwol", token(head[3]), n0)
    local, psi_raw, twist = {}, {}, {}
    for n, toks in block[1:]:
        kw = toks[0]
        if kw == "localgroup" and len(toks) == 3:
            local[token(toks[1])] = ws.get("group", token(toks[2]), n)
        elif kw == "psi":
            a, ids = _map_line(toks, n)
            psi_raw[a] = (ids, n)
        elif kw == "twist" and len(toks) == 5 and toks[3] == "=":
            twist[(token(toks[1]), token(toks[2]))] = _ints([toks[4]], n)[0]
        else:
            raise FileSyntaxError(n, f"unexpected line in cog {name}: {' '.join(toks)!r}")
    for v in X.vertices:
        _expect(v in local, n0, f"cog {name}: no local group for vertex {v!r}")
    psi = {}
    for a in X.edges:
        _expect(a in psi_raw, n0, f"cog {name}: no psi for edge {a!r}")
        ids, n = psi_raw[a]
        src, dst = local[X.i(a)], local[X.t(a)]
        _expect(len(ids) == src.order, n, f"psi {a}: expected {src.order} ids")
        _expect(all(0 <= y < dst.order for y in ids), n, f"psi {a}: id out of range")
        psi[a] = _validated(name, GroupHom, src, dst, tuple(ids))
    ws.add("cog", name, _validated(name, validate_cog, X, local, psi, twist, str(name)), source, n0)


def _arrow_head(head, n0, kind):
    _expect(len(head) >= 6 and head[2] == ":" and head[4] == "->", n0, f"expected '{kind} <name> : <A> -> <B>'")
    return token(head[1]), token(head[3]), token(head[5])


def _parse_scwolmorphism(block, ws, source):
    n0, head = block[0]
    _expect(len(head) == 6, n0, "expected 'scwolmorphism <name> : <A> -> <B>'")
    name, A, B = _arrow_head(head, n0, "scwolmorphism")
    XA, XB = ws.get("scwol", A, n0), ws.get("scwol", B, n0)
    vmap, emap = {}, {}
    for n, toks in block[1:]:
        _expect(len(toks) == 4 and toks[0] in ("vmap", "emap") and toks[2] == "->", n, "expected 'vmap <v> -> <w>' or 'emap <a> -> <b>'")
        (vmap if toks[0] == "vmap" else emap)[token(toks[1])] = token(toks[3])
    ws.add("scwolmorphism", name, _validated(name, validate_morphism, XA, XB, vmap, emap), source, n0)


def _parse_cogmorphism(block, ws, source):
    n0, head = block[0]
    _expect(len(head) == 8 and head[6] == "over", n0, "expected 'cogmorphism <name> : <A> -> <B> over <scwolmorphism>'")
    name, A, B = _arrow_head(head, n0, "cogmorphism")
    CA, CB = ws.get("cog", A, n0), ws.get("cog", B, n0)
    f = ws.get("scwolmorphism", token(head[7]), n0)
    raw, elts = {}, {}
    for n, toks in block[1:]:
        if toks[0] == "local":
            v, ids = _map_line(toks, n)
            raw[v] = (ids, n)
        elif toks[0] == "edgeelt" and len(toks) == 4 and toks[2] == "=":
            elts[token(toks[1])] = _ints([toks[3]], n)[0]
        else:
            raise FileSyntaxError(n, f"unexpected line in cogmorphism {name}: {' '.join(toks)!r}")
    locals_ = {}
    for v in CA.base.vertices:
        _expect(v in raw, n0, f"cogmorphism {name}: no local map at {v!r}")
        ids, n = raw[v]
        src, dst = CA.G(v), CB.G(f.vmap[v])
        _expect(len(ids) == src.order and all(0 <= y < dst.order for y in ids), n, f"local {v}: bad id list")
        locals_[v] = _validated(name, GroupHom, src, dst, tuple(ids))
    phi = _validated(name, validate_cog_morphism, CA, CB, f, locals_, elts, str(name))
    ws.add("cogmorphism", name, phi, source, n0)


_PARSERS = {
    "group": _parse_group,
    "scwol": _parse_scwol,
    "cog": _parse_cog,
    "scwolmorphism": _parse_scwolmorphism,
    "cogmorphism": _parse_cogmorphism,
}


def parse(text: str, source: str = "<string>", ws: Workspace | None = None) -> Workspace:
    ws = ws if ws is not None else Workspace()
    for block in _blocks(text):
        n0, head = block[0]
        if head[0] not in _PARSERS:
            raise FileSyntaxError(n0, f"unknown declaration {head[0]!r}")
        _PARSERS[head[0]](block, ws, source)
    return ws


def parse_file(path) -> Workspace:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), str(path))


# ---------------------------------------------------------------- serialization


def _ref(ws, kind, obj):
    n = ws.name_of(kind, obj)
    if n is None:
        raise DanglingReference(repr(obj))
    return n


def serialize_group(name, G: FiniteGroup) -> str:
    lines = [f"group {name} order {G.order}"]
    lines += [" ".join(map(str, row)) for row in G.table]
    return "\n".join(lines)


def serialize_scwol(name, X: Scwol) -> str:
    lines = [f"scwol {name}"]
    lines += [f"vertex {v}" for v in X.vertices]
    lines += [f"edge {a} {i} {t}" for a, (i, t) in X.edges.items()]
    lines += [f"compose {a} {b} = {X.compose[(a, b)]}" for a, b in X.e2]
    return "\n".join(lines)


def serialize_cog(ws, name, C: ComplexOfGroups) -> str:
    lines = [f"cog {name} over {_ref(ws, 'scwol', C.base)}"]
    lines += [f"localgroup {v} {ws.include_group(C.G(v))}" for v in C.base.vertices]
    lines += [f"psi {a} : " + " ".join(map(str, C.psi[a].image)) for a in C.base.edges]
    lines += [f"twist {a} {b} = {g}" for (a, b), g in C.twist.items() if g != 0]
    return "\n".join(lines)


def serialize_scwol_morphism(ws, name, f: ScwolMorphism) -> str:
    lines = [f"scwolmorphism {name} : {_ref(ws, 'scwol', f.source)} -> {_ref(ws, 'scwol', f.target)}"]
    lines += [f"vmap {v} -> {f.vmap[v]}" for v in f.source.vertices]
    lines += [f"emap {a} -> {f.emap[a]}" for a in f.source.edges]
    return "\n".join(lines)


def serialize_cog_morphism(ws, name, phi: CogMorphism) -> str:
    head = f"cogmorphism {name} : {_ref(ws, 'cog', phi.source)} -> {_ref(ws, 'cog', phi.target)} over {_ref(ws, 'scwolmorphism', phi.f)}"
    lines = [head]
    lines += [f"local {v} : " + " ".join(map(str, phi.locals[v].image)) for v in phi.source.base.vertices]
    lines += [f"edgeelt {a} = {g}" for a, g in phi.edge_elts.items() if g != 0]
    return "\n".join(lines)


def serialize(ws: Workspace) -> str:
    for C in list(ws.cogs.values()):
        for v in C.base.vertices:
            ws.include_group(C.G(v))
    blocks = [serialize_group(n, G) for n, G in ws.groups.items()]
    blocks += [serialize_scwol(n, X) for n, X in ws.scwols.items()]
    blocks += [serialize_cog(ws, n, C) for n, C in ws.cogs.items()]
    blocks += [serialize_scwol_morphism(ws, n, f) for n, f in ws.scwol_morphisms.items()]
    blocks += [serialize_cog_morphism(ws, n, p) for n, p in ws.cog_morphisms.items()]
    return "\n\n".join(blocks) + "\n"


# ---------------------------------------------------------------- path literals


def parse_path(cog: ComplexOfGroups, text: str) -> XPath:
    """`[g0, e1, g1, ...]` with `~e` for a reversed edge, or `@v [g]` for a length-0 path."""
    text = text.strip()
    start = None
    m = re.fullmatch(r"@(\S+)\s*(\[.*\])", text)
    if m:
        start = token(m.group(1))
        text = m.group(2)
    if not (text.startswith("[") and text.endswith("]")):
        raise FileSyntaxError(None, f"path literal must be bracketed: {text!r}")
    items = [s.strip() for s in text[1:-1].split(",")]
    if len(items) % 2 != 1 or any(not s for s in items):
        raise FileSyntaxError(None, "path literal needs an odd number of entries g0, e1, g1, ...")
    elements = _ints(items[0::2], None)
    edges = []
    for s in items[1::2]:
        fwd = not s.startswith("~")
        edges.append(OrientedEdge(token(s.lstrip("~")), fwd))
    if edges:
        e = edges[0]
        if e.edge not in cog.base.edges:
            raise DanglingReference(e.edge)
        first = cog.base.oi(e)
        if start is not None and start != first:
            raise FileSyntaxError(None, f"path starts at {first!r}, not {start!r}")
        start = first
    elif start is None:
        raise FileSyntaxError(None, "a length-0 path needs '@<vertex>'")
    return make_path(cog, start, elements, edges)


def format_path(p: XPath) -> str:
    items = [str(p.elements[0])]
    for e, g in zip(p.edges, p.elements[1:]):
        items += [str(e), str(g)]
    body = "[" + ", ".join(items) + "]"
    return body if p.edges else f"@{p.start} {body}"
