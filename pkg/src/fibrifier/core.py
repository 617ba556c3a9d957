"""Finite categories, functors and natural transformations as explicit tables.

Objects are ``0..n-1``; morphisms are indices into ``FinCat.morphisms``.
``compose[(g, f)]`` is ``g∘f`` and is defined exactly when ``cod(f) == dom(g)``.
Nothing is validated on construction; call :func:`validate` first.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .errors import IndexOutOfRange, TargetMismatch


@dataclass(frozen=True, eq=False)
class FinCat:
    object_count: int
    morphisms: tuple  # (dom, cod) per morphism
    identities: tuple  # object -> identity morphism
    table: Mapping  # (g, f) -> g∘f

    def __post_init__(self):
        object.__setattr__(self, "morphisms", tuple(tuple(m) for m in self.morphisms))
        object.__setattr__(self, "identities", tuple(self.identities))

    @property
    def objects(self) -> range:
        return range(self.object_count)

    @property
    def morphism_count(self) -> int:
        return len(self.morphisms)

    def dom(self, m: int) -> int:
        return self.morphisms[m][0]

    def cod(self, m: int) -> int:
        return self.morphisms[m][1]

    def identity(self, a: int) -> int:
        return self.identities[a]

    def compose(self, g: int, f: int) -> int:
        return self.table[g, f]

    def compose_path(self, path: Sequence[int], start: int | None = None) -> int:
        """Compose ``path`` read left to right (first arrow first)."""
        if not path:
            return self.identities[start]
        acc = path[0]
        for m in path[1:]:
            acc = self.table[m, acc]
        return acc

    @cached_property
    def _homs(self):
        homs = {}
        for m, (d, c) in enumerate(self.morphisms):
            homs.setdefault((d, c), []).append(m)
        return {k: tuple(v) for k, v in homs.items()}

    def hom(self, a: int, b: int) -> tuple:
        return self._homs.get((a, b), ())

    @cached_property
    def _out(self):
        out = [[] for _ in self.objects]
        for m, (d, _) in enumerate(self.morphisms):
            out[d].append(m)
        return tuple(tuple(x) for x in out)

    @cached_property
    def _in(self):
        inc = [[] for _ in self.objects]
        for m, (_, c) in enumerate(self.morphisms):
            inc[c].append(m)
        return tuple(tuple(x) for x in inc)

    def out_of(self, a: int) -> tuple:
        return self._out[a]

    def into(self, a: int) -> tuple:
        return self._in[a]

    @cached_property
    def _identity_set(self):
        return frozenset(self.identities)

    def is_identity(self, m: int) -> bool:
        return m in self._identity_set

    @cached_property
    def inverses(self) -> tuple:
        inv = []
        for m, (d, c) in enumerate(self.morphisms):
            found = None
            for n in self.hom(c, d):
                if self.table[n, m] == self.identities[d] and self.table[m, n] == self.identities[c]:
                    found = n
                    break
            inv.append(found)
        return tuple(inv)

    def is_iso(self, m: int) -> bool:
        return self.inverses[m] is not None

    def inverse(self, m: int) -> int:
        n = self.inverses[m]
        if n is None:
            raise ValueError(f"morphism {m} is not invertible")
        return n

    def is_groupoid(self) -> bool:
        return all(n is not None for n in self.inverses)

    def is_discrete(self) -> bool:
        return self.morphism_count == self.object_count

    def composable_pairs(self):
        for f in range(self.morphism_count):
            for g in self._out[self.morphisms[f][1]]:
                yield g, f

    def _key(self):
        return (self.object_count, self.morphisms, self.identities)

    @cached_property
    def _opposite(self) -> "FinCat":
        op = FinCat(self.object_count, [(c, d) for d, c in self.morphisms], self.identities,
                    {(f, g): gf for (g, f), gf in self.table.items()})
        op.__dict__["_opposite"] = self
        return op

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinCat):
            return NotImplemented
        return self._key() == other._key() and dict(self.table) == dict(other.table)

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"FinCat(objects={self.object_count}, morphisms={self.morphism_count})"


@dataclass(frozen=True, eq=False)
class Functor:
    source: FinCat
    target: FinCat
    obj: tuple
    mor: tuple

    def __post_init__(self):
        object.__setattr__(self, "obj", tuple(self.obj))
        object.__setattr__(self, "mor", tuple(self.mor))

    def __eq__(self, other):
        if not isinstance(other, Functor):
            return NotImplemented
        return (self.obj == other.obj and self.mor == other.mor
                and self.source == other.source and self.target == other.target)

    def __hash__(self):
        return hash((self.obj, self.mor))

    def __repr__(self):
        return f"Functor({self.source!r} -> {self.target!r})"

    def op(self) -> "Functor":
        return Functor(opposite(self.source), opposite(self.target), self.obj, self.mor)

    def is_identity(self) -> bool:
        return (self.source == self.target and self.obj == tuple(self.source.objects)
                and self.mor == tuple(range(self.source.morphism_count)))

    def is_iso(self) -> bool:
        return (sorted(self.obj) == list(self.target.objects)
                and sorted(self.mor) == list(range(self.target.morphism_count))
                and self.source.object_count == self.target.object_count
                and self.source.morphism_count == self.target.morphism_count)

    def inverse(self) -> "Functor":
        obj = [0] * self.target.object_count
        mor = [0] * self.target.morphism_count
        for a, b in enumerate(self.obj):
            obj[b] = a
        for m, n in enumerate(self.mor):
            mor[n] = m
        return Functor(self.target, self.source, obj, mor)


@dataclass(frozen=True, eq=False)
class NatTrans:
    """A natural transformation ``source ⇒ target`` between parallel functors."""

    source: Functor
    target: Functor
    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    def __eq__(self, other):
        if not isinstance(other, NatTrans):
            return NotImplemented
        return (self.components == other.components and self.source == other.source
                and self.target == other.target)

    def __hash__(self):
        return hash(self.components)

    @property
    def domain_cat(self) -> FinCat:
        return self.source.source

    @property
    def codomain_cat(self) -> FinCat:
        return self.source.target

    def is_identity(self) -> bool:
        C = self.codomain_cat
        return all(C.is_identity(c) for c in self.components)

    def is_iso(self) -> bool:
        C = self.codomain_cat
        return all(C.is_iso(c) for c in self.components)

    def inverse(self) -> "NatTrans":
        C = self.codomain_cat
        return NatTrans(self.target, self.source, [C.inverse(c) for c in self.components])


# ---------------------------------------------------------------- validation

@dataclass
class Violation:
    law: str
    witness: tuple

    def __str__(self):
        return f"{self.law} at {self.witness}"


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def add(self, law, *witness):
        self.violations.append(Violation(law, witness))

    def laws(self) -> set:
        return {v.law for v in self.violations}


def _check_index(i, n, what):
    if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < n:
        raise IndexOutOfRange(f"{what} index {i!r} outside 0..{n - 1}")


def _check_category_indices(C: FinCat):
    n, m = C.object_count, C.morphism_count
    if len(C.identities) != n:
        raise IndexOutOfRange(f"{len(C.identities)} identities for {n} objects")
    for d, c in C.morphisms:
        _check_index(d, n, "object")
        _check_index(c, n, "object")
    for i in C.identities:
        _check_index(i, m, "morphism")
    for (g, f), gf in C.table.items():
        _check_index(g, m, "morphism")
        _check_index(f, m, "morphism")
        _check_index(gf, m, "morphism")


def _validate_category(C: FinCat, report: ValidationReport):
    _check_category_indices(C)
    for a, i in enumerate(C.identities):
        if C.morphisms[i] != (a, a):
            report.add("identity-typing", a, i)
    for (g, f), gf in C.table.items():
        if C.cod(f) != C.dom(g):
            report.add("compose-not-composable", g, f)
        elif C.morphisms[gf] != (C.dom(f), C.cod(g)):
            report.add("compose-typing", g, f, gf)
    for g, f in C.composable_pairs():
        if (g, f) not in C.table:
            report.add("compose-missing", g, f)
    if report.violations:
        return
    for f in range(C.morphism_count):
        d, c = C.morphisms[f]
        if C.table[C.identities[c], f] != f:
            report.add("left-unit", f)
        if C.table[f, C.identities[d]] != f:
            report.add("right-unit", f)
    for f in range(C.morphism_count):
        for g in C.out_of(C.cod(f)):
            gf = C.table[g, f]
            for h in C.out_of(C.cod(g)):
                if C.table[h, gf] != C.table[C.table[h, g], f]:
                    report.add("associativity", h, g, f)


def _validate_functor(F: Functor, report: ValidationReport):
    A, B = F.source, F.target
    if len(F.obj) != A.object_count or len(F.mor) != A.morphism_count:
        raise IndexOutOfRange("functor table lengths do not match its source")
    for x in F.obj:
        _check_index(x, B.object_count, "object")
    for x in F.mor:
        _check_index(x, B.morphism_count, "morphism")
    for m, (d, c) in enumerate(A.morphisms):
        if B.morphisms[F.mor[m]] != (F.obj[d], F.obj[c]):
            report.add("functor-typing", m)
    for a in A.objects:
        if F.mor[A.identities[a]] != B.identities[F.obj[a]]:
            report.add("functor-identity", a)
    if report.violations:
        return
    for (g, f), gf in A.table.items():
        if F.mor[gf] != B.table[F.mor[g], F.mor[f]]:
            report.add("functor-composition", g, f)


def _validate_nattrans(alpha: NatTrans, report: ValidationReport):
    F, G = alpha.source, alpha.target
    if F.source != G.source or F.target != G.target:
        report.add("nattrans-not-parallel")
        return
    A, B = F.source, F.target
    if len(alpha.components) != A.object_count:
        raise IndexOutOfRange("one component per source object required")
    for c in alpha.components:
        _check_index(c, B.morphism_count, "morphism")
    for a, c in enumerate(alpha.components):
        if B.morphisms[c] != (F.obj[a], G.obj[a]):
            report.add("component-typing", a)
    if report.violations:
        return
    for m, (d, c) in enumerate(A.morphisms):
        if B.table[G.mor[m], alpha.components[d]] != B.table[alpha.components[c], F.mor[m]]:
            report.add("naturality", m)


def validate(kind: str, value, deep: bool = True) -> ValidationReport:
    """Exhaustively check the laws of a category, functor or natural transformation.

    With ``deep=False`` the categories involved are trusted and only the
    functor (or transformation) laws are checked.
    """
    report = ValidationReport()
    if kind == "category":
        _validate_category(value, report)
    elif kind == "functor":
        if deep:
            for C in (value.source, value.target):
                _validate_category(C, report)
        if report.ok:
            _validate_functor(value, report)
    elif kind == "nattrans":
        for F in (value.source, value.target):
            sub = validate("functor", F, deep)
            report.violations.extend(sub.violations)
        if report.ok:
            _validate_nattrans(value, report)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return report


# ------------------------------------------------------------- construction

def build_category(objects: Sequence[Hashable], arrows: Sequence[Hashable],
                   dom: Callable, cod: Callable, comp: Callable, ident: Callable):
    """Tabulate a category given by keyed objects/arrows and a composition rule.

    ``comp(g, f)`` receives arrow keys and returns the key of ``g∘f``.
    Returns ``(FinCat, object_index, arrow_index)``.
    """
    oi = {o: i for i, o in enumerate(objects)}
    mi = {a: i for i, a in enumerate(arrows)}
    morphisms = [(oi[dom(a)], oi[cod(a)]) for a in arrows]
    identities = [mi[ident(o)] for o in objects]
    out = [[] for _ in objects]
    for i, (d, _) in enumerate(morphisms):
        out[d].append(i)
    table = {}
    for fi, f in enumerate(arrows):
        for gi in out[morphisms[fi][1]]:
            table[gi, fi] = mi[comp(arrows[gi], f)]
    return FinCat(len(objects), morphisms, identities, table), oi, mi


def terminal_category() -> FinCat:
    return FinCat(1, [(0, 0)], [0], {(0, 0): 0})


def discrete(n: int) -> FinCat:
    return FinCat(n, [(i, i) for i in range(n)], list(range(n)), {(i, i): i for i in range(n)})


def arrow_category() -> FinCat:
    """**2**: objects 0, 1 and one arrow 0 → 1 (morphism 2)."""
    return FinCat(2, [(0, 0), (1, 1), (0, 1)], [0, 1],
                  {(0, 0): 0, (1, 1): 1, (2, 0): 2, (1, 2): 2})


def iso_groupoid() -> FinCat:
    """I: two objects and one isomorphism 0 ≅ 1 (morphisms 2: 0→1, 3: 1→0)."""
    t = {(0, 0): 0, (1, 1): 1, (2, 0): 2, (1, 2): 2, (3, 1): 3, (0, 3): 3,
         (3, 2): 0, (2, 3): 1}
    return FinCat(2, [(0, 0), (1, 1), (0, 1), (1, 0)], [0, 1], t)


def commutative_square() -> FinCat:
    """The poset {0 < 1, 0 < 2, 1 < 3, 2 < 3} as a thin category."""
    return poset(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


def poset(n: int, relations: Iterable[tuple]) -> FinCat:
    """Thin category on ``n`` objects generated by ``relations`` (must be acyclic)."""
    le = [[i == j for j in range(n)] for i in range(n)]
    for a, b in relations:
        le[a][b] = True
    for k in range(n):
        for i in range(n):
            if le[i][k]:
                for j in range(n):
                    if le[k][j]:
                        le[i][j] = True
    arrows = [(i, j) for i in range(n) for j in range(n) if le[i][j]]
    for i, j in arrows:
        if i != j and le[j][i]:
            raise ValueError("relations contain a cycle")
    C, _, _ = build_category(list(range(n)), arrows, lambda a: a[0], lambda a: a[1],
                             lambda g, f: (f[0], g[1]), lambda o: (o, o))
    return C


def identity_functor(C: FinCat) -> Functor:
    return Functor(C, C, tuple(C.objects), tuple(range(C.morphism_count)))


def const_functor(C: FinCat, D: FinCat, d: int) -> Functor:
    return Functor(C, D, [d] * C.object_count, [D.identities[d]] * C.morphism_count)


def point(D: FinCat, d: int) -> Functor:
    """The functor **1** → D picking out ``d``."""
    return const_functor(terminal_category(), D, d)


def compose_functors(G: Functor, F: Functor) -> Functor:
    """``G∘F``."""
    return Functor(F.source, G.target, [G.obj[x] for x in F.obj], [G.mor[m] for m in F.mor])


def identity_nat(F: Functor) -> NatTrans:
    B = F.target
    return NatTrans(F, F, [B.identities[x] for x in F.obj])


def vertical(beta: NatTrans, alpha: NatTrans) -> NatTrans:
    """``beta·alpha``."""
    B = alpha.codomain_cat
    return NatTrans(alpha.source, beta.target,
                    [B.table[b, a] for a, b in zip(alpha.components, beta.components)])


def whisker_left(H: Functor, alpha: NatTrans) -> NatTrans:
    """``H·alpha`` (post-whiskering)."""
    return NatTrans(compose_functors(H, alpha.source), compose_functors(H, alpha.target),
                    [H.mor[c] for c in alpha.components])


def whisker_right(alpha: NatTrans, K: Functor) -> NatTrans:
    """``alpha·K`` (pre-whiskering)."""
    return NatTrans(compose_functors(alpha.source, K), compose_functors(alpha.target, K),
                    [alpha.components[x] for x in K.obj])


def opposite(C: FinCat) -> FinCat:
    return C._opposite


def nat_op(alpha: NatTrans) -> NatTrans:
    """``alpha: F ⇒ G`` read as ``G^op ⇒ F^op``."""
    return NatTrans(alpha.target.op(), alpha.source.op(), alpha.components)


def full_subcategory(C: FinCat, objects: Iterable[int]):
    objs = sorted(set(objects))
    keep = set(objs)
    mors = [m for m in range(C.morphism_count) if C.dom(m) in keep and C.cod(m) in keep]
    return subcategory(C, objs, mors)


def subcategory(C: FinCat, objects: Sequence[int], morphisms: Sequence[int]):
    """Materialize a (composition-closed) subcategory; returns ``(D, inclusion)``."""
    oi = {o: i for i, o in enumerate(objects)}
    mi = {m: i for i, m in enumerate(morphisms)}
    table = {}
    for f in morphisms:
        for g in C.out_of(C.cod(f)):
            if g in mi:
                table[mi[g], mi[f]] = mi[C.table[g, f]]
    D = FinCat(len(objects), [(oi[C.dom(m)], oi[C.cod(m)]) for m in morphisms],
               [mi[C.identities[o]] for o in objects], table)
    return D, Functor(D, C, list(objects), list(morphisms))


def restrict(F: Functor, incl: Functor) -> Functor:
    return compose_functors(F, incl)


def fibre(f: Functor, b: int):
    """The fibre of ``f`` over ``b``: objects over ``b``, vertical arrows over ``id_b``."""
    A, B = f.source, f.target
    idb = B.identities[b]
    objs = [a for a in A.objects if f.obj[a] == b]
    mors = [m for m in range(A.morphism_count) if f.mor[m] == idb]
    return subcategory(A, objs, mors)


def pullback_category(f: Functor, g: Functor):
    """Strict pullback ``A ×_B C``; returns ``(P, proj_A, proj_C)``."""
    if f.target != g.target:
        raise TargetMismatch("pullback requires a common codomain")
    A, C = f.source, g.source
    objects = [(a, c) for a in A.objects for c in C.objects if f.obj[a] == g.obj[c]]
    arrows = [(m, n) for m in range(A.morphism_count) for n in range(C.morphism_count)
              if f.mor[m] == g.mor[n]]
    P, oi, mi = build_category(
        objects, arrows,
        lambda x: (A.dom(x[0]), C.dom(x[1])), lambda x: (A.cod(x[0]), C.cod(x[1])),
        lambda y, x: (A.table[y[0], x[0]], C.table[y[1], x[1]]),
        lambda o: (A.identities[o[0]], C.identities[o[1]]))
    p0 = Functor(P, A, [o[0] for o in objects], [x[0] for x in arrows])
    p1 = Functor(P, C, [o[1] for o in objects], [x[1] for x in arrows])
    return P, p0, p1


def product_category(A: FinCat, C: FinCat):
    """``A × C`` with its two projections (pullback over **1**)."""
    one = terminal_category()
    return pullback_category(const_functor(A, one, 0), const_functor(C, one, 0))
