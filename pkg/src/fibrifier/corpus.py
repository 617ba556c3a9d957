"""Seeded generators of categories, functors and fibrations, plus the suite runner."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .comma import comma
from .core import (FinCat, Functor, arrow_category, build_category, commutative_square,
                   compose_functors, const_functor, identity_functor, iso_groupoid, point,
                   poset, product_category, pullback_category, terminal_category)
from .factor import FibBMorphism
from .grothendieck import grothendieck_construction, strict_pseudofunctor


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_objects: int = 8
    max_morphisms: int = 48
    fibre_size_bound: int = 3
    base_size_bound: int = 4
    instance_count: int = 300

    def __post_init__(self):
        for name in ("max_objects", "max_morphisms", "fibre_size_bound", "base_size_bound"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.instance_count < 0:
            raise ValueError("instance_count must be non-negative")

    def rng(self, salt: int = 0) -> random.Random:
        return random.Random((self.seed * 1_000_003 + salt) & 0xFFFFFFFFFFFFFFFF)


# ------------------------------------------------------------------ curated

def curated_categories() -> dict:
    return {"1": terminal_category(), "2": arrow_category(), "I": iso_groupoid(),
            "square": commutative_square()}


def example_23() -> Functor:
    """The point ``1 → I`` at object 0."""
    return point(iso_groupoid(), 0)


def nonconstant_2_to_I() -> Functor:
    return Functor(arrow_category(), iso_groupoid(), [0, 1], [0, 1, 2])


def curated_functors() -> dict:
    two, one, I = arrow_category(), terminal_category(), iso_groupoid()
    sq = commutative_square()
    return {
        "id-1": identity_functor(one),
        "id-2": identity_functor(two),
        "id-I": identity_functor(I),
        "2->1": const_functor(two, one, 0),
        "I->1": const_functor(I, one, 0),
        "example-2.3": example_23(),
        "nonconstant-2->I": nonconstant_2_to_I(),
        "const-2->2": const_functor(two, two, 0),
        "square->2": Functor(sq, two, [0, 0, 1, 1], _square_to_two(sq, two)),
    }


def _square_to_two(sq: FinCat, two: FinCat) -> list:
    obj = [0, 0, 1, 1]
    out = []
    for d, c in sq.morphisms:
        out.append(two.identities[obj[d]] if obj[d] == obj[c] else 2)
    return out


# ---------------------------------------------------------------- categories

def random_poset(rng: random.Random, n: int, density: float = 0.4) -> FinCat:
    rels = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    return poset(n, rels)


def concrete_category(sizes, generators, max_morphisms: int) -> FinCat | None:
    """Subcategory of finite sets generated by ``generators`` = ``(dom, cod, mapping)``."""
    idents = [(o, o, tuple(range(s))) for o, s in enumerate(sizes)]
    seen = set(idents)
    arrows = list(idents)
    gens = list(dict.fromkeys(tuple(g) for g in generators))
    frontier = [g for g in gens if g not in seen]
    seen.update(frontier)
    arrows.extend(frontier)
    while frontier:
        nxt = []
        for f in frontier:
            for g in gens:
                if g[0] == f[1]:
                    h = (f[0], g[1], tuple(g[2][i] for i in f[2]))
                    if h not in seen:
                        seen.add(h)
                        arrows.append(h)
                        nxt.append(h)
                if len(arrows) > max_morphisms:
                    return None
        frontier = nxt
    C, _, _ = build_category(list(range(len(sizes))), arrows, lambda a: a[0], lambda a: a[1],
                             lambda g, f: (f[0], g[1], tuple(g[2][i] for i in f[2])),
                             lambda o: idents[o])
    return C


def random_concrete(rng: random.Random, n_objects: int, max_morphisms: int) -> FinCat:
    for _ in range(50):
        sizes = [rng.randint(1, 3) for _ in range(n_objects)]
        gens = []
        for _ in range(rng.randint(0, n_objects + 1)):
            d, c = rng.randrange(n_objects), rng.randrange(n_objects)
            gens.append((d, c, tuple(rng.randrange(sizes[c]) for _ in range(sizes[d]))))
        C = concrete_category(sizes, gens, max_morphisms)
        if C is not None:
            return C
    return random_poset(rng, n_objects)


SQUARE_BOUND = 3000


def square_bound(C: FinCat) -> int:
    """Upper bound on the number of commuting squares, i.e. the size of ``C/C``."""
    h = [[len(C.hom(a, b)) for b in C.objects] for a in C.objects]
    n = C.object_count
    total = 0
    for a in range(n):
        for b in range(n):
            if h[a][b]:
                for a2 in range(n):
                    if h[a][a2]:
                        for b2 in range(n):
                            total += h[a][b] * h[a2][b2] * h[a][a2] * h[b][b2]
    return total


def gen_category(cfg: GenConfig, rng: random.Random | None = None, max_objects=None,
                 max_morphisms=None) -> FinCat:
    rng = rng or cfg.rng()
    for _ in range(20):
        C = _gen_category(cfg, rng, max_objects, max_morphisms)
        if square_bound(C) <= SQUARE_BOUND:
            return C
    return terminal_category()


def _gen_category(cfg, rng, max_objects, max_morphisms) -> FinCat:
    n_max = max_objects or cfg.max_objects
    m_max = max_morphisms or cfg.max_morphisms
    n = rng.randint(1, n_max)
    kind = rng.choice(["poset", "concrete", "concrete", "curated"])
    if kind == "curated":
        C = rng.choice(list(curated_categories().values()))
        if C.object_count <= n_max and C.morphism_count <= m_max:
            return C
        kind = "poset"
    if kind == "poset":
        C = random_poset(rng, n)
        if C.morphism_count <= m_max:
            return C
        return poset(n, [(i, i + 1) for i in range(n - 1)]) if n * (n + 1) // 2 <= m_max \
            else poset(n, [])
    return random_concrete(rng, n, m_max)


def with_initial(C: FinCat) -> FinCat:
    """Adjoin a fresh initial object (index 0)."""
    objs = ["new"] + list(C.objects)
    arrows = [("id", "new")] + [("in", x) for x in C.objects] + [("m", m) for m in range(C.morphism_count)]

    def dom(a):
        return "new" if a[0] in ("id", "in") else C.dom(a[1])

    def cod(a):
        if a[0] == "id":
            return "new"
        return a[1] if a[0] == "in" else C.cod(a[1])

    def comp(g, f):
        if f[0] == "id":
            return g
        if g[0] == "id":
            return f
        if f[0] == "in":
            return ("in", C.cod(g[1]))
        return ("m", C.table[g[1], f[1]])

    def ident(o):
        return ("id", "new") if o == "new" else ("m", C.identities[o])

    D, _, _ = build_category(objs, arrows, dom, cod, comp, ident)
    return D


# ------------------------------------------------------------------ functors

def random_functor(rng: random.Random, A: FinCat, B: FinCat, attempts: int = 20,
                   budget: int = 4000) -> Functor:
    """A random functor found by backtracking; falls back to a constant functor."""
    triples = {m: [] for m in range(A.morphism_count)}
    for (g, f), gf in A.table.items():
        for m in {g, f, gf}:
            triples[m].append((g, f, gf))
    for _ in range(attempts):
        obj = [rng.randrange(B.object_count) for _ in A.objects]
        if any(not B.hom(obj[d], obj[c]) for d, c in A.morphisms):
            continue
        mor = [None] * A.morphism_count
        for a in A.objects:
            mor[A.identities[a]] = B.identities[obj[a]]
        order = [m for m in range(A.morphism_count) if mor[m] is None]
        steps = [0]

        def ok(m):
            for g, f, gf in triples[m]:
                if mor[g] is not None and mor[f] is not None and mor[gf] is not None:
                    if B.table[mor[g], mor[f]] != mor[gf]:
                        return False
            return True

        def search(i):
            if i == len(order):
                return True
            steps[0] += 1
            if steps[0] > budget:
                return False
            m = order[i]
            cands = list(B.hom(obj[A.dom(m)], obj[A.cod(m)]))
            rng.shuffle(cands)
            for t in cands:
                mor[m] = t
                if ok(m) and search(i + 1):
                    return True
            mor[m] = None
            return False

        if all(ok(A.identities[a]) for a in A.objects) and search(0):
            return Functor(A, B, obj, mor)
    return const_functor(A, B, rng.randrange(B.object_count))


def gen_functor(cfg: GenConfig, rng: random.Random | None = None) -> Functor:
    rng = rng or cfg.rng(1)
    A = gen_category(cfg, rng, max_objects=min(cfg.max_objects, 5),
                     max_morphisms=min(cfg.max_morphisms, 24))
    B = gen_category(cfg, rng, max_objects=cfg.base_size_bound,
                     max_morphisms=min(cfg.max_morphisms, 16))
    return random_functor(rng, A, B)


# ---------------------------------------------------------------- fibrations

def _pair_index(P: FinCat, p0: Functor, p1: Functor):
    oi = {(p0.obj[x], p1.obj[x]): x for x in P.objects}
    mi = {(p0.mor[m], p1.mor[m]): m for m in range(P.morphism_count)}
    return oi, mi


def slice_family(B: FinCat, j: Functor, X: FinCat | None = None):
    """Strict functor ``b ↦ (b/j) × X`` on ``B^op``, reindexing by precomposition."""
    X = X or terminal_category()
    cbs = [comma(point(B, b), j) for b in B.objects]
    prods = [product_category(cb.cat, X) for cb in cbs]
    fibres = [P for P, _, _ in prods]
    idx = [_pair_index(*p) for p in prods]
    reindex = []
    for beta in range(B.morphism_count):
        b1, b = B.morphisms[beta]
        cb, cb1 = cbs[b], cbs[b1]
        P, p0, p1 = prods[b]
        oi1, mi1 = idx[b1]
        smap_o = [cb1.index(0, c, B.table[g, beta]) for _, c, g in cb.decode]
        smap_m = [cb1.arrow(smap_o[cb.cat.dom(m)], smap_o[cb.cat.cod(m)], 0, u)
                  for m, (_, u) in enumerate(cb.mor_decode)]
        obj = [oi1[smap_o[p0.obj[x]], p1.obj[x]] for x in P.objects]
        mor = [mi1[smap_m[p0.mor[m]], p1.mor[m]] for m in range(P.morphism_count)]
        reindex.append(Functor(P, fibres[b1], obj, mor))
    return strict_pseudofunctor(B, fibres, reindex), prods, idx


def family_map(P_src, P_tgt, prods_src, prods_tgt, idx_tgt, pi: Functor):
    """The fibrewise functor ``id × pi`` between two slice families over the same ``j``."""
    maps = []
    for b in P_src.base.objects:
        P, p0, p1 = prods_src[b]
        oi, mi = idx_tgt[b]
        maps.append(Functor(P, P_tgt.fibres[b], [oi[p0.obj[x], pi.obj[p1.obj[x]]] for x in P.objects],
                            [mi[p0.mor[m], pi.mor[p1.mor[m]]] for m in range(P.morphism_count)]))
    return maps


def total_map(GA, GC, maps) -> Functor:
    """Functor between Grothendieck totals induced by a strictly natural family."""
    oc = GC._obj_index
    mc = GC._mor_index
    obj = [oc[b, maps[b].obj[x]] for b, x in GA.decode]
    mor = []
    for beta, x, xi in GA.mor_decode:
        b1, b = GA.proj.target.morphisms[beta]
        mor.append(mc[beta, maps[b].obj[x], maps[b1].mor[xi]])
    return Functor(GA.total, GC.total, obj, mor)


def duplicate_object(C: FinCat, a: int):
    """``C`` with an isomorphic copy of ``a`` appended as the last object.

    Returns ``(C', embedding C → C', retraction C' → C)``.
    """
    objs = [(x, 0) for x in C.objects] + [(a, 1)]
    arrows = [(m, s, t) for m in range(C.morphism_count) for s in (0, 1) for t in (0, 1)
              if (C.dom(m), s) in objs and (C.cod(m), t) in objs]
    D, oi, mi = build_category(objs, arrows, lambda x: (C.dom(x[0]), x[1]),
                               lambda x: (C.cod(x[0]), x[2]),
                               lambda g, f: (C.table[g[0], f[0]], f[1], g[2]),
                               lambda o: (C.identities[o[0]], o[1], o[1]))
    emb = Functor(C, D, [oi[x, 0] for x in C.objects],
                  [mi[m, 0, 0] for m in range(C.morphism_count)])
    retr = Functor(D, C, [o[0] for o in objs], [x[0] for x in arrows])
    return D, emb, retr


@dataclass
class Generated:
    functor: Functor
    kind: str
    tags: frozenset = field(default_factory=frozenset)


def _within(cfg: GenConfig, C: FinCat, slack: int = 1) -> bool:
    return (C.object_count <= cfg.max_objects * slack
            and C.morphism_count <= cfg.max_morphisms * slack
            and square_bound(C) <= SQUARE_BOUND * slack)


def _small_fibre(rng, cfg, initial: bool) -> FinCat:
    k = cfg.fibre_size_bound
    F = gen_category(cfg, rng, max_objects=max(1, k - (1 if initial else 0)),
                     max_morphisms=3 * k)
    if initial and F.object_count + 1 <= k + 1:
        F = with_initial(F)
    return F


def gen_fibration(cfg: GenConfig, rng: random.Random | None = None, loop_free: bool = False,
                  tries: int = 40) -> Generated:
    """A fibration built constructively; ``loop_free`` keeps every fibre's groupoid reflection finite."""
    rng = rng or cfg.rng(2)
    kinds = ["slice", "slice", "free-alg", "product", "pullback", "dup"]
    for _ in range(tries):
        kind = rng.choice(kinds)
        B = gen_category(cfg, rng, max_objects=cfg.base_size_bound, max_morphisms=12)
        try:
            g = _fibration_of_kind(kind, cfg, rng, B, loop_free)
        except _TooBig:
            continue
        if g is not None and _within(cfg, g.functor.source):
            return g
    B = arrow_category()
    return Generated(const_functor(B, terminal_category(), 0), "fallback",
                     frozenset({"loop-free"}))


class _TooBig(Exception):
    pass


def _fibration_of_kind(kind, cfg, rng, B, loop_free) -> Generated | None:
    tags = {"loop-free"} if loop_free else set()
    if kind == "slice":
        if loop_free:
            j = identity_functor(B)
        else:
            K = gen_category(cfg, rng, max_objects=3, max_morphisms=8)
            j = random_functor(rng, K, B)
        X = _small_fibre(rng, cfg, loop_free)
        if _est_slice_size(B, j, X) > 2 * cfg.max_morphisms:
            raise _TooBig
        P, _, _ = slice_family(B, j, X)
        G = grothendieck_construction(P, check=False)
        return Generated(G.proj, "slice", frozenset(tags | {"split"}))
    if kind == "free-alg":
        A = gen_category(cfg, rng, max_objects=3, max_morphisms=8)
        f = random_functor(rng, A, B)
        cc = comma(identity_functor(B), f)
        if loop_free and not _fibres_have_initial(cc.left_proj):
            return None
        return Generated(cc.left_proj, "free-alg", frozenset(tags | {"split"}))
    if kind == "product":
        X = _small_fibre(rng, cfg, loop_free)
        P, p0, p1 = product_category(X, B)
        return Generated(p1, "product", frozenset(tags | {"split"}))
    if kind == "pullback":
        inner = _fibration_of_kind("slice", cfg, rng, B, loop_free)
        D = gen_category(cfg, rng, max_objects=3, max_morphisms=8)
        h = random_functor(rng, D, B)
        P, p0, p1 = pullback_category(inner.functor, h)
        if P.object_count == 0:
            return None
        return Generated(p1, "pullback", frozenset(tags))
    if kind == "dup":
        inner = _fibration_of_kind(rng.choice(["slice", "product"]), cfg, rng, B, loop_free)
        A = inner.functor.source
        D, _, retr = duplicate_object(A, rng.randrange(A.object_count))
        return Generated(compose_functors(inner.functor, retr), "dup", frozenset(tags))
    raise ValueError(kind)


def _est_slice_size(B, j, X) -> int:
    total = 0
    for b in B.objects:
        n = sum(len(B.hom(b, j.obj[c])) for c in j.source.objects)
        total += n * n * X.morphism_count
    return total


def _fibres_have_initial(f: Functor) -> bool:
    from .adjoint import initial_object
    from .core import fibre
    return all(initial_object(fibre(f, b)[0]) is not None for b in f.target.objects)


def gen_opfibration(cfg: GenConfig, rng: random.Random | None = None, loop_free: bool = False):
    g = gen_fibration(cfg, rng, loop_free)
    return Generated(g.functor.op(), g.kind + "-op", g.tags)


def gen_street_fibration(cfg: GenConfig, rng: random.Random | None = None) -> Generated:
    """A fibration followed by an equivalence that duplicates a base object."""
    rng = rng or cfg.rng(3)
    g = gen_fibration(cfg, rng)
    B = g.functor.target
    B2, emb, _ = duplicate_object(B, rng.randrange(B.object_count))
    return Generated(compose_functors(emb, g.functor), "street", frozenset({"street"}))


def gen_isofibration(cfg: GenConfig, rng: random.Random | None = None) -> Generated:
    """The free isofibration ``f/≅B → B`` on a random functor, or a (op)fibration."""
    from .comma import iso_comma
    rng = rng or cfg.rng(4)
    choice = rng.random()
    if choice < 0.4:
        return gen_fibration(cfg, rng, loop_free=True)
    if choice < 0.6:
        return gen_opfibration(cfg, rng, loop_free=True)
    for _ in range(20):
        A = gen_category(cfg, rng, max_objects=4, max_morphisms=12)
        B = gen_category(cfg, rng, max_objects=cfg.base_size_bound, max_morphisms=12)
        carrier = iso_comma(random_functor(rng, A, B)).carrier
        # fibres with initial objects keep the coinverters finite
        if _fibres_have_initial(carrier):
            return Generated(carrier, "free-iso", frozenset({"isofibration", "loop-free"}))
    return gen_fibration(cfg, rng, loop_free=True)


def gen_fibB_morphism(cfg: GenConfig, rng: random.Random | None = None) -> FibBMorphism:
    """A morphism of split fibrations ``(b/j) × (k/E) → (b/j) × E`` or a product projection."""
    rng = rng or cfg.rng(5)
    for _ in range(40):
        B = gen_category(cfg, rng, max_objects=min(3, cfg.base_size_bound), max_morphisms=6)
        j = identity_functor(B) if rng.random() < 0.5 else random_functor(
            rng, gen_category(cfg, rng, max_objects=2, max_morphisms=4), B)
        if rng.random() < 0.6:
            E = gen_category(cfg, rng, max_objects=2, max_morphisms=4)
            K = gen_category(cfg, rng, max_objects=2, max_morphisms=4)
            k = random_functor(rng, K, E)
            X, pi = comma(k, identity_functor(E)).cat, comma(k, identity_functor(E)).right_proj
            Y = E
        else:
            Y = gen_category(cfg, rng, max_objects=2, max_morphisms=4)
            Z = with_initial(gen_category(cfg, rng, max_objects=1, max_morphisms=3))
            X, _, _ = product_category(Y, Z)
            _, pi, _ = product_category(Y, Z)
        if _est_slice_size(B, j, X) > 6 * cfg.max_morphisms:
            continue
        m = fibB_from_family(B, j, X, Y, pi)
        if m.f.source.morphism_count <= 4 * cfg.max_morphisms:
            return m
    return fibB_from_family(arrow_category(), identity_functor(arrow_category()),
                            arrow_category(), terminal_category(),
                            const_functor(arrow_category(), terminal_category(), 0))


def fibB_from_family(B, j, X, Y, pi) -> FibBMorphism:
    PA, prA, _ = slice_family(B, j, X)
    PC, prC, idxC = slice_family(B, j, Y)
    GA = grothendieck_construction(PA, check=False)
    GC = grothendieck_construction(PC, check=False)
    maps = family_map(PA, PC, prA, prC, idxC, pi)
    p = total_map(GA, GC, maps)
    return FibBMorphism(GA.proj, GC.proj, p, GA.cleavage, GC.cleavage)


def fibB_nonexample() -> FibBMorphism:
    """Over **1**, the fibre restriction is ``1 → I`` (not an opfibration)."""
    one = terminal_category()
    return fibB_from_family(one, identity_functor(one), one, iso_groupoid(), example_23())


# ---------------------------------------------------------------- suite runner

SUITES = ("chevalley-agreement", "example-2.3", "comprehensive", "groupoid-factorization",
          "isofib-cons-gpd", "structural", "fibB")


@dataclass
class InstanceResult:
    index: int
    kind: str
    verdicts: dict
    witness: dict | None = None
    shrunk: dict | None = None

    @property
    def passed(self) -> bool:
        return all(v is True for k, v in self.verdicts.items() if k != "detail")

    def to_json(self) -> dict:
        doc = {"index": self.index, "kind": self.kind, "passed": self.passed,
               "verdicts": self.verdicts}
        if self.witness is not None:
            doc["witness"] = self.witness
        if self.shrunk is not None:
            doc["shrunk"] = self.shrunk
        return doc


@dataclass
class SuiteReport:
    suite: str
    seed: int
    instances: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.instances)

    @property
    def failures(self) -> list:
        return [r for r in self.instances if not r.passed]

    def to_json(self) -> dict:
        return {"suite": self.suite, "seed": self.seed, "count": len(self.instances),
                "passed": self.passed, "failures": len(self.failures),
                "instances": [r.to_json() for r in self.instances]}


def _structural_config(cfg: GenConfig) -> GenConfig:
    return GenConfig(cfg.seed, min(cfg.max_objects, 5), min(cfg.max_morphisms, 16),
                     min(cfg.fibre_size_bound, 2), min(cfg.base_size_bound, 3), cfg.instance_count)


STRUCTURAL_SLICE_BOUND = 60


def gen_structural_instance(cfg: GenConfig, rng: random.Random):
    """``(f, h, g, street)``: a small fibration, two functors into its base and a Street fibration.

    The slices ``B/f`` and ``f/B`` are kept small because the monad laws build ``T²``.
    """
    small = _structural_config(cfg)
    for _ in range(40):
        g = gen_fibration(small, rng, loop_free=True)
        f = g.functor
        iB = identity_functor(f.target)
        if max(comma(iB, f).cat.morphism_count, comma(f, iB).cat.morphism_count) \
                > STRUCTURAL_SLICE_BOUND:
            continue
        break
    B = f.target
    h = random_functor(rng, gen_category(small, rng, max_objects=3, max_morphisms=6), B)
    k = random_functor(rng, gen_category(small, rng, max_objects=3, max_morphisms=6), B)
    st = gen_street_fibration(small, rng).functor
    return g.kind, (f, h, k, st)


def _instance(suite: str, cfg: GenConfig, i: int):
    """``(kind, args, single_functor)`` for instance ``i`` of ``suite``."""
    rng = cfg.rng(SUITES.index(suite) * 1_000_003 + i)
    if suite == "chevalley-agreement":
        cur = list(curated_functors().items())
        if i < len(cur):
            return "curated:" + cur[i][0], (cur[i][1],), True
        pick = i % 5
        if pick == 0:
            return "fibration", (gen_fibration(cfg, rng).functor, True), True
        if pick == 1:
            return "opfibration", (gen_opfibration(cfg, rng).functor, None, True), True
        if pick == 2:
            return "street", (gen_street_fibration(cfg, rng).functor,), True
        return "random", (gen_functor(cfg, rng),), True
    if suite == "example-2.3":
        return "curated:example-2.3", (example_23(),), False
    if suite == "comprehensive":
        if i % 2 == 0:
            return "fibration", (gen_fibration(cfg, rng).functor, True), True
        return "random", (gen_functor(cfg, rng),), True
    if suite == "groupoid-factorization":
        return "loop-free-fibration", (gen_fibration(cfg, rng, loop_free=True).functor,), True
    if suite == "isofib-cons-gpd":
        g = gen_isofibration(cfg, rng)
        return g.kind, (g.functor,), True
    if suite == "structural":
        kind, args = gen_structural_instance(cfg, rng)
        return kind, args, False
    if suite == "fibB":
        return "fibB", (gen_fibB_morphism(cfg, rng),), False
    raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")


def _check_for(suite: str):
    from . import props
    return {"chevalley-agreement": props.chevalley_agreement,
            "example-2.3": props.example_23,
            "comprehensive": props.comprehensive,
            "groupoid-factorization": props.groupoid_factorization,
            "isofib-cons-gpd": props.isofib_cons_gpd,
            "structural": props.structural,
            "fibB": props.fibB}[suite]


def _run(check, args) -> dict:
    from .errors import FibrifierError
    try:
        return check(*args)
    except FibrifierError as exc:
        return {type(exc).__name__: False, "detail": str(exc)}


def _failing(verdicts: dict) -> set:
    return {k for k, v in verdicts.items() if k != "detail" and v is not True}


def _witness(args) -> dict:
    from . import io
    out = {}
    for n, a in enumerate(args):
        if isinstance(a, Functor):
            out[f"arg{n}"] = io.functor_to_json(a)
        elif isinstance(a, FibBMorphism):
            out[f"arg{n}"] = {"f": io.functor_to_json(a.f), "g": io.functor_to_json(a.g),
                              "p": {"obj": list(a.p.obj), "mor": list(a.p.mor)}}
        else:
            out[f"arg{n}"] = a
    return out


def _deletions(f: Functor):
    """Variants of ``f`` with one source object removed, or one unused target object removed."""
    from .core import full_subcategory
    A, B = f.source, f.target
    if A.object_count > 1:
        for a in A.objects:
            D, incl = full_subcategory(A, [x for x in A.objects if x != a])
            yield compose_functors(f, incl)
    used = set(f.obj)
    if B.object_count > 1:
        for b in B.objects:
            if b in used:
                continue
            D, incl = full_subcategory(B, [x for x in B.objects if x != b])
            back = {m: i for i, m in enumerate(incl.mor)}
            ob = {o: i for i, o in enumerate(incl.obj)}
            yield Functor(A, D, [ob[x] for x in f.obj], [back[m] for m in f.mor])


def shrink(check, args: tuple, failing: set, budget: int = 200) -> tuple:
    """Greedy object deletion on the functor argument while the same verdicts keep failing."""
    f, rest = args[0], args[1:]
    steps = 0
    improved = True
    while improved and steps < budget:
        improved = False
        for g in _deletions(f):
            steps += 1
            if failing <= _failing(_run(check, (g,) + rest)):
                f, improved = g, True
                break
            if steps >= budget:
                break
    return (f,) + rest


def run_suite(cfg: GenConfig, suite: str, count: int | None = None) -> SuiteReport:
    """Run the named proposition suite on ``count`` seeded instances (default ``cfg.instance_count``)."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    n = cfg.instance_count if count is None else count
    if suite == "example-2.3":
        n = min(n, 1)
    check = _check_for(suite)
    report = SuiteReport(suite, cfg.seed)
    for i in range(n):
        kind, args, single = _instance(suite, cfg, i)
        verdicts = _run(check, args)
        res = InstanceResult(i, kind, verdicts)
        if not res.passed:
            res.witness = _witness(args)
            if single:
                res.shrunk = _witness(shrink(check, args, _failing(verdicts)))
        report.instances.append(res)
    return report
