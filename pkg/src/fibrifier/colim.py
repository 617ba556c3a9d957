"""Identees, invertees, coidentifiers, coinverters and the groupoid reflection.

Two enumeration engines live here:

* a typed monoid Todd-Coxeter enumeration for category presentations, used by
  :func:`coidentifier` and :func:`coinverter`;
* group coset enumeration of the trivial subgroup, used by
  :func:`groupoid_reflection` after collapsing a spanning tree of each component.

Every quotient comes with a word (a zig-zag of source arrows) for each of its
morphisms so that functors out of it can be induced by the universal property.
"""
from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass

from .adjoint import connected_components
from .core import FinCat, Functor, NatTrans, build_category, compose_functors, whisker_right
from .errors import CapExceeded

DEFAULT_CAP = 10_000


def default_cap() -> int:
    return int(os.environ.get("FIBRIFIER_CAP", DEFAULT_CAP))


@dataclass(frozen=True, eq=False)
class TwoCellDiagram:
    apex: FinCat
    d0: Functor
    d1: Functor
    cell: NatTrans


@dataclass(frozen=True, eq=False)
class QuotientResult:
    """``q: A → Q`` with, for every morphism of ``Q``, a zig-zag ``((arrow, ±1), ...)`` in ``A``."""

    cat: FinCat
    q: Functor
    words: tuple

    def induced(self, H: Functor) -> Functor:
        return induced_functor(self, H)


@dataclass
class PresentedCategory:
    objects: int
    generators: list  # (dom, cod)
    relations: list  # (word, word), words are generator-index lists read left to right
    realized: FinCat | None = None
    marker: str | None = None

    def to_json(self) -> dict:
        return {"objects": self.objects, "generators": [list(g) for g in self.generators],
                "relations": [[list(u), list(v)] for u, v in self.relations],
                "marker": self.marker}


# ------------------------------------------------------------ identee/invertee

def _arrow_subdiagram(A: FinCat, keep) -> TwoCellDiagram:
    """Full subcategory of ``A/A`` on the arrows satisfying ``keep``, built directly."""
    objs = [k for k in range(A.morphism_count) if keep(k)]
    arrows = []
    for k in objs:
        for k2 in objs:
            for alpha in A.hom(A.dom(k), A.dom(k2)):
                top = A.table[k2, alpha]
                for gamma in A.hom(A.cod(k), A.cod(k2)):
                    if A.table[gamma, k] == top:
                        arrows.append((k, k2, alpha, gamma))
    K, _, _ = build_category(
        objs, arrows, lambda m: m[0], lambda m: m[1],
        lambda n, m: (m[0], n[1], A.table[n[2], m[2]], A.table[n[3], m[3]]),
        lambda k: (k, k, A.identities[A.dom(k)], A.identities[A.cod(k)]))
    d0 = Functor(K, A, [A.dom(k) for k in objs], [m[2] for m in arrows])
    d1 = Functor(K, A, [A.cod(k) for k in objs], [m[3] for m in arrows])
    return TwoCellDiagram(K, d0, d1, NatTrans(d0, d1, objs))


def identee(f: Functor) -> TwoCellDiagram:
    """The category of ``f``-vertical arrows with its tautological 2-cell."""
    B = f.target
    return _arrow_subdiagram(f.source, lambda m: B.is_identity(f.mor[m]))


def invertee(f: Functor) -> TwoCellDiagram:
    """The category of arrows with invertible ``f``-image with its tautological 2-cell."""
    B = f.target
    return _arrow_subdiagram(f.source, lambda m: B.is_iso(f.mor[m]))


# ----------------------------------------------------- typed Todd-Coxeter

class _CategoryEnumerator:
    """Enumerate a category presented by typed generators and relations.

    Nodes stand for morphisms out of a start object; ``table[n][g]`` is ``g∘n``.
    Relations ``(obj, u, v)`` are imposed at every node whose codomain is ``obj``.
    """

    def __init__(self, n_objects, generators, relations, cap):
        self.n = n_objects
        self.gens = generators
        self.cap = cap
        self.out = [[] for _ in range(n_objects)]
        for i, (d, _) in enumerate(generators):
            self.out[d].append(i)
        self.rels = [[] for _ in range(n_objects)]
        for obj, u, v in relations:
            self.rels[obj].append((tuple(u), tuple(v)))
        self.parent, self.cod, self.src, self.table = [], [], [], []
        self.live = 0
        self.starts = [self._new(o, o) for o in range(n_objects)]

    def _new(self, src, cod):
        i = len(self.parent)
        self.parent.append(i)
        self.src.append(src)
        self.cod.append(cod)
        self.table.append({})
        self.live += 1
        if self.live > self.cap or i > 20 * self.cap:
            raise CapExceeded(self.cap)
        return i

    def find(self, x):
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def trace(self, node, word, define=True):
        for g in word:
            node = self.find(node)
            nxt = self.table[node].get(g)
            if nxt is None:
                if not define:
                    return None
                nxt = self._new(self.src[node], self.gens[g][1])
                self.table[node][g] = nxt
            node = nxt
        return self.find(node)

    def coincide(self, a, b):
        queue = [(a, b)]
        while queue:
            x, y = queue.pop()
            x, y = self.find(x), self.find(y)
            if x == y:
                continue
            if x > y:
                x, y = y, x
            self.parent[y] = x
            self.live -= 1
            tx = self.table[x]
            for g, t in self.table[y].items():
                if g in tx:
                    queue.append((tx[g], t))
                else:
                    tx[g] = t
            self.table[y] = {}

    def run(self):
        while True:
            i = 0
            while i < len(self.parent):
                if self.find(i) == i:
                    for u, v in self.rels[self.cod[i]]:
                        e1 = self.trace(i, u)
                        e2 = self.trace(i, v)
                        if e1 != e2:
                            self.coincide(e1, e2)
                        if self.find(i) != i:
                            break
                    if self.find(i) == i:
                        for g in self.out[self.cod[i]]:
                            if g not in self.table[i]:
                                self.table[i][g] = self._new(self.src[i], self.gens[g][1])
                i += 1
            if self._complete():
                return self

    def _complete(self):
        for i in range(len(self.parent)):
            if self.find(i) != i:
                continue
            if any(g not in self.table[i] for g in self.out[self.cod[i]]):
                return False
            for u, v in self.rels[self.cod[i]]:
                if self.trace(i, u, False) != self.trace(i, v, False):
                    return False
        return True

    def normal_forms(self):
        """BFS from each start node; returns ``(order, words)`` with shortlex words."""
        order, words, seen = [], {}, set()
        for s in self.starts:
            s = self.find(s)
            queue = deque([(s, ())])
            seen.add(s)
            while queue:
                node, w = queue.popleft()
                order.append(node)
                words[node] = w
                for g in sorted(self.table[node]):
                    t = self.find(self.table[node][g])
                    if t not in seen:
                        seen.add(t)
                        queue.append((t, w + (g,)))
        return order, words


def _realize(enum: _CategoryEnumerator, labels):
    """Turn a completed enumeration into a FinCat; ``labels[g]`` is the zig-zag letter of ``g``."""
    order, words = enum.normal_forms()
    index = {node: i for i, node in enumerate(order)}
    morphisms = [(enum.src[n], enum.cod[n]) for n in order]
    identities = [index[enum.find(s)] for s in enum.starts]
    by_dom = [[] for _ in range(enum.n)]
    for i, (d, _) in enumerate(morphisms):
        by_dom[d].append(i)
    table = {}
    for fi, f in enumerate(order):
        for gi in by_dom[morphisms[fi][1]]:
            table[gi, fi] = index[enum.trace(f, words[order[gi]], define=False)]
    Q = FinCat(enum.n, morphisms, identities, table)
    zig = tuple(tuple(labels[g] for g in words[n]) for n in order)
    return Q, index, zig


def _present_quotient(A: FinCat, classes, extra_relations, inverses, cap) -> QuotientResult:
    """Quotient of ``A`` with objects merged per ``classes`` (object → class), formal
    inverses for the arrows in ``inverses`` and extra relations ``(class, word, word)``
    over arrow indices (inverse of ``s`` written ``("inv", s)``)."""
    gens, labels, gidx = [], [], {}
    for m in range(A.morphism_count):
        if not A.is_identity(m):
            gidx[m] = len(gens)
            gens.append((classes[A.dom(m)], classes[A.cod(m)]))
            labels.append((m, 1))
    for s in inverses:
        gidx["inv", s] = len(gens)
        gens.append((classes[A.cod(s)], classes[A.dom(s)]))
        labels.append((s, -1))

    def word(m):
        return () if A.is_identity(m) else (gidx[m],)

    rels = set()
    for (g, f), gf in A.table.items():
        if A.is_identity(g) or A.is_identity(f):
            continue
        rels.add((classes[A.dom(f)], (gidx[f], gidx[g]), word(gf)))
    for s in inverses:
        rels.add((classes[A.dom(s)], word(s) + (gidx["inv", s],), ()))
        rels.add((classes[A.cod(s)], (gidx["inv", s],) + word(s), ()))
    for obj, u, v in extra_relations:
        rels.add((obj, tuple(gidx[x] for x in u), tuple(gidx[x] for x in v)))
    n_classes = max(classes) + 1 if classes else 0
    enum = _CategoryEnumerator(n_classes, gens, sorted(rels), cap).run()
    Q, index, zig = _realize(enum, labels)
    obj = [classes[a] for a in A.objects]
    mor = []
    for m in range(A.morphism_count):
        start = enum.starts[classes[A.dom(m)]]
        mor.append(index[enum.trace(start, word(m), define=False)])
    return QuotientResult(Q, Functor(A, Q, obj, mor), zig)


def _merge_classes(n, pairs):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    roots = sorted({find(x) for x in range(n)})
    label = {r: i for i, r in enumerate(roots)}
    return [label[find(x)] for x in range(n)]


def coidentifier(diagram: TwoCellDiagram, cap: int | None = None) -> QuotientResult:
    """Universal functor making every component of the cell an identity."""
    cap = default_cap() if cap is None else cap
    A = diagram.d0.target
    comps = sorted(set(diagram.cell.components))
    classes = _merge_classes(A.object_count, [(A.dom(k), A.cod(k)) for k in comps])
    extra = [(classes[A.dom(k)], (k,), ()) for k in comps if not A.is_identity(k)]
    return _present_quotient(A, classes, extra, [], cap)


def localize(A: FinCat, arrows, cap: int | None = None) -> QuotientResult:
    """Universal functor inverting every arrow in ``arrows``."""
    cap = default_cap() if cap is None else cap
    S = sorted({s for s in arrows if not A.is_identity(s)})
    return _present_quotient(A, list(A.objects), [], S, cap)


def coinverter(diagram: TwoCellDiagram, cap: int | None = None) -> QuotientResult:
    """Universal functor making every component of the cell invertible."""
    return localize(diagram.d0.target, diagram.cell.components, cap)


def coidentifier_of_arrows(A: FinCat, arrows, cap: int | None = None) -> QuotientResult:
    """Coidentifier of an arbitrary family of arrows (each sent to an identity)."""
    cap = default_cap() if cap is None else cap
    comps = sorted(set(arrows))
    classes = _merge_classes(A.object_count, [(A.dom(k), A.cod(k)) for k in comps])
    extra = [(classes[A.dom(k)], (k,), ()) for k in comps if not A.is_identity(k)]
    return _present_quotient(A, classes, extra, [], cap)


def identify_objects(A: FinCat, pairs, cap: int | None = None) -> QuotientResult:
    """Coequalizer merging each pair of objects and nothing else.

    Merging the endpoints of **2** gives the free monoid on one generator, so this
    raises :class:`CapExceeded`.
    """
    cap = default_cap() if cap is None else cap
    classes = _merge_classes(A.object_count, list(pairs))
    return _present_quotient(A, classes, [], [], cap)


# ------------------------------------------------------ induced functors

def evaluate_word(T: FinCat, H: Functor, word, start: int) -> int:
    """Compose the images of a zig-zag under ``H`` (inverse letters need invertible images)."""
    acc = T.identities[start]
    for m, e in word:
        step = H.mor[m] if e == 1 else T.inverse(H.mor[m])
        acc = T.table[step, acc]
    return acc


def induced_functor(res: QuotientResult, H: Functor) -> Functor:
    """The unique ``t`` with ``t∘q = H``; raises ``ValueError`` if ``H`` does not factor."""
    Q, q, T = res.cat, res.q, H.target
    obj = [None] * Q.object_count
    for a, x in enumerate(q.obj):
        if obj[x] is None:
            obj[x] = H.obj[a]
        elif obj[x] != H.obj[a]:
            raise ValueError("functor does not respect the object identifications")
    mor = []
    for m, w in enumerate(res.words):
        try:
            mor.append(evaluate_word(T, H, w, obj[Q.dom(m)]))
        except ValueError as exc:
            raise ValueError("functor does not invert a formally inverted arrow") from exc
    t = Functor(Q, T, obj, mor)
    if compose_functors(t, q) != H:
        raise ValueError("functor does not factor through the quotient")
    return t


def check_coidentifies(q: Functor, cell: NatTrans) -> bool:
    return all(q.target.is_identity(q.mor[c]) for c in cell.components)


def check_coinverts(q: Functor, cell: NatTrans) -> bool:
    return all(q.target.is_iso(q.mor[c]) for c in cell.components)


# ------------------------------------------------------ group coset enumeration

class _CosetTable:
    """HLT coset enumeration of the trivial subgroup; letters ``2i`` / ``2i+1`` are ``x_i^{±1}``."""

    def __init__(self, ngens, relators, cap):
        self.ng = 2 * ngens
        self.rels = [list(r) for r in relators if r]
        self.cap = cap
        self.table = [[None] * self.ng]
        self.parent = [0]
        self.live = 1

    def rep(self, c):
        p = self.parent
        r = c
        while p[r] != r:
            r = p[r]
        while p[c] != r:
            p[c], c = r, p[c]
        return r

    def define(self, c, x):
        d = len(self.table)
        if self.live + 1 > self.cap or d > 20 * self.cap:
            raise CapExceeded(self.cap, "cosets")
        self.table.append([None] * self.ng)
        self.parent.append(d)
        self.live += 1
        self.table[c][x] = d
        self.table[d][x ^ 1] = c

    def _merge(self, k, l, queue):
        k, l = self.rep(k), self.rep(l)
        if k == l:
            return
        if k > l:
            k, l = l, k
        self.parent[l] = k
        self.live -= 1
        queue.append(l)

    def coincidence(self, a, b):
        queue = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(self.ng):
                f = self.table[e][x]
                if f is None:
                    continue
                if self.table[f][x ^ 1] == e:
                    self.table[f][x ^ 1] = None
                e1, f1 = self.rep(e), self.rep(f)
                if self.table[e1][x] is not None:
                    self._merge(f1, self.table[e1][x], queue)
                elif self.table[f1][x ^ 1] is not None:
                    self._merge(e1, self.table[f1][x ^ 1], queue)
                else:
                    self.table[e1][x] = f1
                    self.table[f1][x ^ 1] = e1

    def scan_and_fill(self, c, w):
        t = self.table
        f, b = c, c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and t[f][w[i]] is not None:
                f = t[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and t[b][w[j] ^ 1] is not None:
                b = t[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][w[i]] = b
                t[b][w[i] ^ 1] = f
                return
            self.define(f, w[i])

    def run(self):
        c = 0
        while c < len(self.table):
            if self.rep(c) == c:
                for r in self.rels:
                    if self.rep(c) != c:
                        break
                    self.scan_and_fill(c, r)
                if self.rep(c) == c:
                    for x in range(self.ng):
                        if self.rep(c) != c:
                            break
                        if self.table[c][x] is None:
                            self.define(c, x)
            c += 1
        return self

    def group(self):
        """Live cosets renumbered by BFS from 0, their words, and the action table."""
        order, words = [0], {0: ()}
        queue = deque([0])
        while queue:
            c = queue.popleft()
            for x in range(self.ng):
                d = self.rep(self.table[c][x])
                if d not in words:
                    words[d] = words[c] + (x,)
                    order.append(d)
                    queue.append(d)
        idx = {c: i for i, c in enumerate(order)}
        act = [[idx[self.rep(self.table[c][x])] for x in range(self.ng)] for c in order]
        return act, [words[c] for c in order]


@dataclass
class _Component:
    objects: list
    tree_path: dict  # object -> zig-zag from the root
    gens: list  # non-tree arrows
    act: list
    elem_words: list


def groupoid_reflection(C: FinCat, cap: int | None = None):
    """Free groupoid on ``C``: a :class:`QuotientResult`, or a :class:`PresentedCategory`
    marked ``FiniteRealizationUnknown`` when a vertex group does not close within ``cap``."""
    cap = default_cap() if cap is None else cap
    classes, _ = connected_components(C)
    comps = []
    try:
        for objs in classes:
            comps.append(_reflect_component(C, objs, cap))
    except CapExceeded:
        return _presentation(C, "FiniteRealizationUnknown")
    return _assemble_groupoid(C, comps)


def _reflect_component(C: FinCat, objs, cap) -> _Component:
    root = objs[0]
    members = set(objs)
    path = {root: ()}
    tree = set()
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for m in range(C.morphism_count):
            if C.is_identity(m):
                continue
            d, c = C.morphisms[m]
            if d == x and c not in path:
                path[c] = path[x] + ((m, 1),)
                tree.add(m)
                queue.append(c)
            elif c == x and d not in path:
                path[d] = path[x] + ((m, -1),)
                tree.add(m)
                queue.append(d)
    gens = [m for m in range(C.morphism_count)
            if C.dom(m) in members and not C.is_identity(m) and m not in tree]
    gidx = {m: i for i, m in enumerate(gens)}

    def w(m):
        return (2 * gidx[m],) if m in gidx else ()

    def inv(word):
        return tuple(x ^ 1 for x in reversed(word))

    relators = []
    for (g, f), gf in C.table.items():
        if C.dom(f) in members:
            r = w(f) + w(g) + inv(w(gf))
            if r:
                relators.append(r)
    relators = sorted(set(relators))
    act, ewords = _CosetTable(len(gens), relators, cap).run().group()
    return _Component(list(objs), path, gens, act, ewords)


def _mult(comp: _Component, c1: int, c2: int) -> int:
    for x in comp.elem_words[c2]:
        c1 = comp.act[c1][x]
    return c1


def _assemble_groupoid(C: FinCat, comps) -> QuotientResult:
    arrows, words, where = [], [], {}
    for ci, comp in enumerate(comps):
        n = len(comp.act)
        for x in comp.objects:
            for y in comp.objects:
                for c in range(n):
                    where[x, c, y] = len(arrows)
                    arrows.append((x, c, y, ci))
                    back = tuple((m, -e) for m, e in reversed(comp.tree_path[x]))
                    mid = tuple((comp.gens[l >> 1], -1 if l & 1 else 1)
                                for l in comp.elem_words[c])
                    words.append(back + mid + comp.tree_path[y])
    by_dom = {}
    for i, (x, _, _, _) in enumerate(arrows):
        by_dom.setdefault(x, []).append(i)
    table = {}
    for fi, (x, c1, y, ci) in enumerate(arrows):
        for gi in by_dom[y]:
            _, c2, z, _ = arrows[gi]
            table[gi, fi] = where[x, _mult(comps[ci], c1, c2), z]
    G = FinCat(C.object_count, [(a[0], a[2]) for a in arrows],
               [where[x, 0, x] for x in C.objects], table)
    comp_of = {x: ci for ci, comp in enumerate(comps) for x in comp.objects}
    mor = []
    for m in range(C.morphism_count):
        x, y = C.morphisms[m]
        comp = comps[comp_of[x]]
        if m in comp.gens:
            elem = comp.act[0][2 * comp.gens.index(m)]
        else:
            elem = 0
        mor.append(where[x, elem, y])
    unit = Functor(C, G, list(C.objects), mor)
    return QuotientResult(G, unit, tuple(words))


def _presentation(C: FinCat, marker) -> PresentedCategory:
    gens, rels, gidx = [], [], {}
    for m in range(C.morphism_count):
        if not C.is_identity(m):
            gidx[m] = len(gens)
            gens.append(C.morphisms[m])
    inv = {}
    for m in list(gidx):
        inv[m] = len(gens)
        gens.append((C.cod(m), C.dom(m)))

    def word(m):
        return [] if C.is_identity(m) else [gidx[m]]

    for (g, f), gf in sorted(C.table.items()):
        if not (C.is_identity(g) or C.is_identity(f)):
            rels.append(([gidx[f], gidx[g]], word(gf)))
    for m in gidx:
        rels.append(([gidx[m], inv[m]], []))
        rels.append(([inv[m], gidx[m]], []))
    return PresentedCategory(C.object_count, gens, rels, None, marker)


def realize_presentation(P: PresentedCategory, cap: int | None = None) -> PresentedCategory:
    """Try to tabulate a presentation with the category enumerator."""
    cap = default_cap() if cap is None else cap
    rels = []
    for u, v in P.relations:
        start = P.generators[u[0]][0] if u else P.generators[v[0]][0]
        rels.append((start, u, v))
    try:
        enum = _CategoryEnumerator(P.objects, P.generators, rels, cap).run()
    except CapExceeded:
        return PresentedCategory(P.objects, P.generators, P.relations, None,
                                 "FiniteRealizationUnknown")
    Q, _, _ = _realize(enum, [(g, 1) for g in range(len(P.generators))])
    return PresentedCategory(P.objects, P.generators, P.relations, Q, None)


def whiskered_cell(cell: NatTrans, K: Functor) -> NatTrans:
    return whisker_right(cell, K)
