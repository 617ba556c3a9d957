"""Comma and iso-comma categories, the slice monads R, L, I and Chevalley comparisons."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import (FinCat, Functor, NatTrans, build_category, compose_functors,
                   identity_functor)
from .errors import TargetMismatch


@dataclass(frozen=True, eq=False)
class CommaCat:
    """``f/g`` together with its projections and the canonical 2-cell ``f·d0 ⇒ g·d1``."""

    cat: FinCat
    left_proj: Functor
    right_proj: Functor
    canonical_cell: NatTrans
    decode: tuple  # object -> (a, c, beta)
    mor_decode: tuple  # morphism -> (alpha, gamma)
    f: Functor
    g: Functor

    def __post_init__(self):
        object.__setattr__(self, "_oi", {t: i for i, t in enumerate(self.decode)})
        object.__setattr__(self, "_mi", {})
        mi = self._mi
        for i, (al, ga) in enumerate(self.mor_decode):
            mi[self.cat.dom(i), self.cat.cod(i), al, ga] = i

    def index(self, a: int, c: int, beta: int) -> int:
        return self._oi[a, c, beta]

    def arrow(self, x: int, y: int, alpha: int, gamma: int) -> int:
        return self._mi[x, y, alpha, gamma]


@lru_cache(maxsize=64)
def comma(f: Functor, g: Functor, iso_only: bool = False) -> CommaCat:
    """Strict comma category ``f/g`` (objects ``(a, c, beta: f a → g c)``)."""
    if f.target != g.target:
        raise TargetMismatch("comma requires functors with a common codomain")
    A, B, C = f.source, f.target, g.source
    objects = []
    for a in A.objects:
        for c in C.objects:
            for beta in B.hom(f.obj[a], g.obj[c]):
                if not iso_only or B.is_iso(beta):
                    objects.append((a, c, beta))
    oi = {o: i for i, o in enumerate(objects)}
    by_ac = {}
    for a, c, beta in objects:
        by_ac.setdefault((a, c), []).append(beta)
    arrows = []
    for x, (a, c, beta) in enumerate(objects):
        for alpha in A.out_of(a):
            fa = f.mor[alpha]
            a2 = A.cod(alpha)
            for gamma in C.out_of(c):
                rhs = B.table[g.mor[gamma], beta]
                c2 = C.cod(gamma)
                for beta2 in by_ac.get((a2, c2), ()):
                    if B.table[beta2, fa] == rhs:
                        arrows.append((x, oi[a2, c2, beta2], alpha, gamma))
    arrows.sort()
    cat, _, mi = build_category(
        list(range(len(objects))), arrows,
        lambda m: m[0], lambda m: m[1],
        lambda n, m: (m[0], n[1], A.table[n[2], m[2]], C.table[n[3], m[3]]),
        lambda x: (x, x, A.identities[objects[x][0]], C.identities[objects[x][1]]))
    d0 = Functor(cat, A, [o[0] for o in objects], [m[2] for m in arrows])
    d1 = Functor(cat, C, [o[1] for o in objects], [m[3] for m in arrows])
    cell = NatTrans(compose_functors(f, d0), compose_functors(g, d1), [o[2] for o in objects])
    return CommaCat(cat, d0, d1, cell, tuple(objects), tuple((m[2], m[3]) for m in arrows), f, g)


def arrow_comma(A: FinCat) -> CommaCat:
    """``A/A``: arrows of ``A`` and commuting squares; the cell is ``μ_A``."""
    i = identity_functor(A)
    return comma(i, i)


@dataclass(frozen=True, eq=False)
class IsoComma:
    comma: CommaCat
    unit: Functor  # i_f : A → f/≅B
    w: Functor  # w_f : f/≅B → A
    carrier: Functor  # If : f/≅B → B


def iso_comma(f: Functor) -> IsoComma:
    B = f.target
    cc = comma(f, identity_functor(B), iso_only=True)
    unit = _unit_left(f, cc)
    return IsoComma(cc, unit, cc.left_proj, cc.right_proj)


# ------------------------------------------------------------------- monads

@dataclass(frozen=True, eq=False)
class MonadInstance:
    which: str
    f: Functor
    comma: CommaCat
    carrier: Functor
    unit: Functor
    mult: Functor | None = None
    mult_comma: CommaCat | None = None


def _unit_left(f: Functor, cc: CommaCat) -> Functor:
    """``a ↦ (a, f a, id)`` into a comma of the form ``f/B``."""
    A, B = f.source, f.target
    obj = [cc.index(a, f.obj[a], B.identities[f.obj[a]]) for a in A.objects]
    mor = [cc.arrow(obj[A.dom(m)], obj[A.cod(m)], m, f.mor[m]) for m in range(A.morphism_count)]
    return Functor(A, cc.cat, obj, mor)


def _unit_right(f: Functor, cc: CommaCat) -> Functor:
    """``a ↦ (f a, a, id)`` into ``B/f``."""
    A, B = f.source, f.target
    obj = [cc.index(f.obj[a], a, B.identities[f.obj[a]]) for a in A.objects]
    mor = [cc.arrow(obj[A.dom(m)], obj[A.cod(m)], f.mor[m], m) for m in range(A.morphism_count)]
    return Functor(A, cc.cat, obj, mor)


def _slice_comma(which: str, f: Functor) -> CommaCat:
    iB = identity_functor(f.target)
    if which == "R":
        return comma(iB, f)
    return comma(f, iB, iso_only=(which == "I"))


def _carrier(which: str, cc: CommaCat) -> Functor:
    return cc.left_proj if which == "R" else cc.right_proj


def monad_unit(which: str, f: Functor, cc: CommaCat | None = None) -> Functor:
    cc = cc or _slice_comma(which, f)
    return _unit_right(f, cc) if which == "R" else _unit_left(f, cc)


def _mult(which: str, f: Functor, cc: CommaCat, cc2: CommaCat) -> Functor:
    """Multiplication ``T(Tf) → Tf`` given ``cc`` for ``Tf`` and ``cc2`` for ``T(Tf)``."""
    B = f.target
    obj, mor = [], []
    if which == "R":
        # (b', (b, a, beta), beta') ↦ (b', a, beta∘beta')
        for b1, x, beta1 in cc2.decode:
            _, a, beta = cc.decode[x]
            obj.append(cc.index(b1, a, B.table[beta, beta1]))
        for m, (gamma1, xm) in enumerate(cc2.mor_decode):
            _, u = cc.mor_decode[xm]
            mor.append(cc.arrow(obj[cc2.cat.dom(m)], obj[cc2.cat.cod(m)], gamma1, u))
    else:
        # ((a, b, beta), b', beta') ↦ (a, b', beta'∘beta)
        for x, b1, beta1 in cc2.decode:
            a, _, beta = cc.decode[x]
            obj.append(cc.index(a, b1, B.table[beta1, beta]))
        for m, (xm, gamma1) in enumerate(cc2.mor_decode):
            u, _ = cc.mor_decode[xm]
            mor.append(cc.arrow(obj[cc2.cat.dom(m)], obj[cc2.cat.cod(m)], u, gamma1))
    return Functor(cc2.cat, cc.cat, obj, mor)


def monad_on_slice(which: str, f: Functor, with_mult: bool = True) -> MonadInstance:
    """The component at ``f`` of the monad ``R`` (``B/f``), ``L`` (``f/B``) or ``I`` (``f/≅B``)."""
    if which not in ("R", "L", "I"):
        raise ValueError(f"unknown monad {which!r}")
    cc = _slice_comma(which, f)
    carrier = _carrier(which, cc)
    unit = monad_unit(which, f, cc)
    if not with_mult:
        return MonadInstance(which, f, cc, carrier, unit)
    cc2 = _slice_comma(which, carrier)
    return MonadInstance(which, f, cc, carrier, unit, _mult(which, f, cc, cc2), cc2)


def slice_map(which: str, t: Functor, cc: CommaCat, cc2: CommaCat) -> Functor:
    """``T t`` for ``t: (A, f) → (A', f')`` over ``B``; ``cc``/``cc2`` are ``Tf``/``Tf'`` commas."""
    obj, mor = [], []
    if which == "R":
        for b, a, beta in cc.decode:
            obj.append(cc2.index(b, t.obj[a], beta))
        for m, (gamma, u) in enumerate(cc.mor_decode):
            mor.append(cc2.arrow(obj[cc.cat.dom(m)], obj[cc.cat.cod(m)], gamma, t.mor[u]))
    else:
        for a, b, beta in cc.decode:
            obj.append(cc2.index(t.obj[a], b, beta))
        for m, (u, gamma) in enumerate(cc.mor_decode):
            mor.append(cc2.arrow(obj[cc.cat.dom(m)], obj[cc.cat.cod(m)], t.mor[u], gamma))
    return Functor(cc.cat, cc2.cat, obj, mor)


def slice_cell(which: str, xi: NatTrans, cc: CommaCat, cc2: CommaCat) -> NatTrans:
    """``T xi`` for a vertical 2-cell ``xi: t1 ⇒ t2`` between maps over ``B``."""
    t1, t2 = xi.source, xi.target
    T1, T2 = slice_map(which, t1, cc, cc2), slice_map(which, t2, cc, cc2)
    B = cc.f.target if which == "R" else cc.g.target
    comps = []
    for x, dec in enumerate(cc.decode):
        if which == "R":
            b, a, _ = dec
            comps.append(cc2.arrow(T1.obj[x], T2.obj[x], B.identities[b], xi.components[a]))
        else:
            a, b, _ = dec
            comps.append(cc2.arrow(T1.obj[x], T2.obj[x], xi.components[a], B.identities[b]))
    return NatTrans(T1, T2, comps)


def monad_laws(which: str, f: Functor) -> dict:
    """Check M1 (both unit laws) and M2 (associativity) at the component ``f``."""
    M = monad_on_slice(which, f)
    Tf, cc, cc2 = M.carrier, M.comma, M.mult_comma
    unit_T = monad_unit(which, Tf, cc2)
    T_unit = slice_map(which, M.unit, cc, cc2)
    ident = identity_functor(cc.cat)
    M2 = monad_on_slice(which, Tf)
    cc3 = M2.mult_comma
    T_mult = slice_map(which, M.mult, cc3, cc2)
    return {
        "unit-left": compose_functors(M.mult, unit_T) == ident,
        "unit-right": compose_functors(M.mult, T_unit) == ident,
        "associativity": compose_functors(M.mult, M2.mult) == compose_functors(M.mult, T_mult),
        "unit-over-base": compose_functors(Tf, M.unit) == f,
        "mult-over-base": compose_functors(Tf, M.mult) == M2.carrier,
    }


# -------------------------------------------------------------- Chevalley

def chevalley_comparison(f: Functor, side: str = "fib", commas=None) -> Functor:
    """``f_1: A/A → B/f`` (side ``fib``) or its dual ``A/A → f/B`` (side ``opfib``)."""
    A = f.source
    AA, T = commas if commas else (arrow_comma(A), _slice_comma("R" if side == "fib" else "L", f))
    obj, mor = [], []
    if side == "fib":
        for a, a2, alpha in AA.decode:
            obj.append(T.index(f.obj[a], a2, f.mor[alpha]))
        for m, (u, u2) in enumerate(AA.mor_decode):
            mor.append(T.arrow(obj[AA.cat.dom(m)], obj[AA.cat.cod(m)], f.mor[u], u2))
    elif side == "opfib":
        for a, a2, alpha in AA.decode:
            obj.append(T.index(a, f.obj[a2], f.mor[alpha]))
        for m, (u, u2) in enumerate(AA.mor_decode):
            mor.append(T.arrow(obj[AA.cat.dom(m)], obj[AA.cat.cod(m)], u, f.mor[u2]))
    else:
        raise ValueError(f"unknown side {side!r}")
    return Functor(AA.cat, T.cat, obj, mor)


def chevalley_equations(f: Functor, side: str = "fib") -> dict:
    """Re-verify the defining equations of the comparison functor."""
    A = f.source
    AA = arrow_comma(A)
    T = _slice_comma("R" if side == "fib" else "L", f)
    c = chevalley_comparison(f, side, (AA, T))
    if side == "fib":
        return {
            "base": compose_functors(T.left_proj, c) == compose_functors(f, AA.left_proj),
            "total": compose_functors(T.right_proj, c) == AA.right_proj,
            "cell": [T.canonical_cell.components[c.obj[x]] for x in AA.cat.objects]
            == [f.mor[al] for al in AA.canonical_cell.components],
        }
    return {
        "base": compose_functors(T.right_proj, c) == compose_functors(f, AA.right_proj),
        "total": compose_functors(T.left_proj, c) == AA.left_proj,
        "cell": [T.canonical_cell.components[c.obj[x]] for x in AA.cat.objects]
        == [f.mor[al] for al in AA.canonical_cell.components],
    }
