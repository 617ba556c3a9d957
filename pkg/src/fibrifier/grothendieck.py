"""Pseudo-functors ``B^op → Cat``, the Grothendieck construction and fibrewise reflections."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .adjoint import connected_components
from .colim import PresentedCategory, QuotientResult, default_cap, groupoid_reflection, induced_functor
from .core import FinCat, Functor, NatTrans, compose_functors, fibre, identity_nat, validate
from .errors import CapExceeded, IncoherentPseudoFunctor, NotAFibration
from .fibcheck import Cleavage, cartesian_factor, extract_cleavage


@dataclass(frozen=True, eq=False)
class PseudoFunctor:
    """``reindex[β]`` for ``β: b' → b`` maps ``fibres[b]`` to ``fibres[b']``.

    ``unit_iso[b]: reindex[id_b] ⇒ 1`` and ``comp_iso[β, β']: reindex[β']∘reindex[β] ⇒ reindex[β∘β']``.
    ``inclusions`` optionally records where each fibre came from.
    """

    base: FinCat
    fibres: tuple
    reindex: tuple
    unit_iso: tuple
    comp_iso: dict
    inclusions: tuple | None = None

    def is_strict(self) -> bool:
        return (all(u.is_identity() for u in self.unit_iso)
                and all(c.is_identity() for c in self.comp_iso.values()))


def strict_pseudofunctor(base: FinCat, fibres, reindex) -> PseudoFunctor:
    """Wrap a strict functor ``B^op → Cat`` (identity coherence cells)."""
    fibres = tuple(fibres)
    reindex = tuple(reindex)
    units = tuple(identity_nat(reindex[base.identities[b]]) for b in base.objects)
    comp = {}
    for beta, beta1 in base.composable_pairs():
        src = compose_functors(reindex[beta1], reindex[beta])
        tgt = reindex[base.table[beta, beta1]]
        comp[beta, beta1] = NatTrans(src, tgt, [tgt.target.identities[o] for o in tgt.obj])
    return PseudoFunctor(base, fibres, reindex, units, comp)


def coherence_violations(P: PseudoFunctor) -> list:
    """Every failed pseudo-functor law, as ``(law, witness)`` pairs."""
    B = P.base
    bad = []
    for beta in range(B.morphism_count):
        F = P.reindex[beta]
        if F.source is not P.fibres[B.cod(beta)] and F.source != P.fibres[B.cod(beta)]:
            bad.append(("reindex-typing", beta))
            continue
        if not validate("functor", F).ok:
            bad.append(("reindex-functor", beta))
    if bad:
        return bad
    for b in B.objects:
        u = P.unit_iso[b]
        if not validate("nattrans", u).ok or not u.is_iso():
            bad.append(("unit-iso", b))
        elif u.source != P.reindex[B.identities[b]]:
            bad.append(("unit-typing", b))
    for (beta, beta1), phi in P.comp_iso.items():
        if not validate("nattrans", phi).ok or not phi.is_iso():
            bad.append(("comp-iso", (beta, beta1)))
    missing = [p for p in B.composable_pairs() if p not in P.comp_iso]
    if missing:
        bad.append(("comp-missing", missing[0]))
    if bad:
        return bad
    for beta, beta1 in B.composable_pairs():
        b1 = B.dom(beta1)
        phi = P.comp_iso[beta, beta1]
        for x in P.fibres[B.cod(beta)].objects:
            # unit laws
            if B.is_identity(beta1):
                if phi.components[x] != P.unit_iso[b1].components[P.reindex[beta].obj[x]]:
                    bad.append(("unit-right", (beta, beta1, x)))
            if B.is_identity(beta):
                if phi.components[x] != P.reindex[beta1].mor[P.unit_iso[B.cod(beta)].components[x]]:
                    bad.append(("unit-left", (beta, beta1, x)))
        for beta2 in B.into(b1):
            b2 = B.dom(beta2)
            Fc = P.fibres[b2]
            for x in P.fibres[B.cod(beta)].objects:
                px = P.reindex[beta].obj[x]
                lhs = Fc.table[P.comp_iso[beta, B.table[beta1, beta2]].components[x],
                               P.comp_iso[beta1, beta2].components[px]]
                rhs = Fc.table[P.comp_iso[B.table[beta, beta1], beta2].components[x],
                               P.reindex[beta2].mor[phi.components[x]]]
                if lhs != rhs:
                    bad.append(("associativity", (beta, beta1, beta2, x)))
    return bad


def is_coherent(P: PseudoFunctor) -> bool:
    return not coherence_violations(P)


# ------------------------------------------------------------ construction

@dataclass(frozen=True, eq=False)
class GrothendieckResult:
    total: FinCat
    proj: Functor
    cleavage: Cleavage
    decode: tuple  # object -> (b, x)
    mor_decode: tuple  # morphism -> (beta, x, xi) with x the codomain in fibres[cod beta]

    def object_index(self, b: int, x: int) -> int:
        return self._obj_index[b, x]

    def morphism_index(self, beta: int, x: int, xi: int) -> int:
        return self._mor_index[beta, x, xi]

    @cached_property
    def _obj_index(self):
        return {k: i for i, k in enumerate(self.decode)}

    @cached_property
    def _mor_index(self):
        return {k: i for i, k in enumerate(self.mor_decode)}


def grothendieck_construction(P: PseudoFunctor, check: bool = True) -> GrothendieckResult:
    """Total category of ``P`` with its projection and canonical cleavage.

    Morphisms ``(b', x') → (b, x)`` are pairs ``(β, ξ: x' → P(β)x)``. Within the
    arrows over a fixed ``β`` into a fixed object the canonical lift ``(β, id)``
    comes first, so the smallest-index cleavage recovers it.
    """
    if check:
        bad = coherence_violations(P)
        if bad:
            raise IncoherentPseudoFunctor(f"{bad[0][0]} at {bad[0][1]}")
    B = P.base
    decode = tuple((b, x) for b in B.objects for x in P.fibres[b].objects)
    oidx = {k: i for i, k in enumerate(decode)}
    keys = []
    for b, x in decode:
        for beta in B.into(b):
            b1 = B.dom(beta)
            F1 = P.fibres[b1]
            y = P.reindex[beta].obj[x]
            idy = F1.identities[y]
            keys.append((beta, x, idy))
            keys.extend((beta, x, xi) for xi in F1.into(y) if xi != idy)
    midx = {k: i for i, k in enumerate(keys)}
    morphisms = [(oidx[B.dom(beta), P.fibres[B.dom(beta)].dom(xi)], oidx[B.cod(beta), x])
                 for beta, x, xi in keys]
    identities = []
    for b, x in decode:
        u = P.unit_iso[b].components[x]
        identities.append(midx[B.identities[b], x, P.fibres[b].inverse(u)])
    by_cod = [[] for _ in decode]
    for i, (_, c) in enumerate(morphisms):
        by_cod[c].append(i)
    table = {}
    for gi, (beta, x, xi) in enumerate(keys):
        for fi in by_cod[morphisms[gi][0]]:
            gamma, _, zeta = keys[fi]
            b2 = B.dom(gamma)
            F2 = P.fibres[b2]
            G = P.reindex[gamma]
            phi = P.comp_iso[beta, gamma].components[x]
            comp = F2.table[phi, F2.table[G.mor[xi], zeta]]
            table[gi, fi] = midx[B.table[beta, gamma], x, comp]
    total = FinCat(len(decode), morphisms, identities, table)
    proj = Functor(total, B, [b for b, _ in decode], [beta for beta, _, _ in keys])
    lifts = {}
    for i, (b, x) in enumerate(decode):
        for beta in B.into(b):
            if B.is_identity(beta):
                lifts[i, beta] = identities[i]
            else:
                y = P.reindex[beta].obj[x]
                lifts[i, beta] = midx[beta, x, P.fibres[B.dom(beta)].identities[y]]
    return GrothendieckResult(total, proj, Cleavage(proj, lifts), decode, tuple(keys))


def to_pseudofunctor(f: Functor, cleavage: Cleavage | None = None) -> PseudoFunctor:
    """The pseudo-functor ``[f]`` of a fibration, reindexing along chosen lifts."""
    if cleavage is None:
        cleavage = extract_cleavage(f)
    if cleavage is None:
        raise NotAFibration("functor has no cleavage")
    A, B = f.source, f.target
    fibres, incls, oidx, midx = [], [], {}, {}
    for b in B.objects:
        Fb, inc = fibre(f, b)
        fibres.append(Fb)
        incls.append(inc)
        for i, a in enumerate(inc.obj):
            oidx[a] = i
        for i, m in enumerate(inc.mor):
            midx[m] = i
    lift = cleavage.lifts
    reindex = []
    for beta in range(B.morphism_count):
        b1, b = B.morphisms[beta]
        inc = incls[b]
        idb1 = B.identities[b1]
        obj = [oidx[A.dom(lift[a, beta])] for a in inc.obj]
        mor = []
        for m in inc.mor:
            x, y = A.morphisms[m]
            top = A.table[m, lift[x, beta]]
            mor.append(midx[cartesian_factor(f, lift[y, beta], top, idb1)])
        reindex.append(Functor(fibres[b], fibres[b1], obj, mor))
    units = []
    for b in B.objects:
        idb = B.identities[b]
        units.append(NatTrans(reindex[idb], _identity(fibres[b]),
                              [midx[lift[a, idb]] for a in incls[b].obj]))
    comp = {}
    for beta, beta1 in B.composable_pairs():
        b2 = B.dom(beta1)
        bb = B.table[beta, beta1]
        comps = []
        for a in incls[B.cod(beta)].obj:
            top = A.table[lift[a, beta], lift[A.dom(lift[a, beta]), beta1]]
            comps.append(midx[cartesian_factor(f, lift[a, bb], top, B.identities[b2])])
        comp[beta, beta1] = NatTrans(compose_functors(reindex[beta1], reindex[beta]),
                                     reindex[bb], comps)
    return PseudoFunctor(B, tuple(fibres), tuple(reindex), tuple(units), comp, tuple(incls))


def _identity(C: FinCat) -> Functor:
    return Functor(C, C, list(C.objects), list(range(C.morphism_count)))


# ------------------------------------------------------------ fibrewise

def pi0_reflection(C: FinCat) -> QuotientResult:
    _, q = connected_components(C)
    return QuotientResult(q.target, q, tuple(() for _ in range(q.target.morphism_count)))


def reflect(C: FinCat, mode: str, cap: int | None = None) -> QuotientResult:
    if mode == "pi0":
        return pi0_reflection(C)
    if mode == "groupoid":
        cap = default_cap() if cap is None else cap
        res = groupoid_reflection(C, cap)
        if isinstance(res, PresentedCategory):
            raise CapExceeded(cap, "cosets")
        return res
    raise ValueError(f"unknown reflection {mode!r}")


@dataclass(frozen=True, eq=False)
class FibrewiseResult:
    q: Functor
    s: Functor
    mid: GrothendieckResult
    source: PseudoFunctor
    reflected: PseudoFunctor
    reflections: tuple = field(default=())


def reflect_pseudofunctor(P: PseudoFunctor, reflections) -> PseudoFunctor:
    """Push ``P`` through per-fibre reflections, inducing reindexings and ψ by universality."""
    B = P.base
    reindex = []
    for beta in range(B.morphism_count):
        b1, b = B.morphisms[beta]
        H = compose_functors(reflections[b1].q, P.reindex[beta])
        reindex.append(induced_functor(reflections[b], H))

    def rep(res):
        first = {}
        for x, X in enumerate(res.q.obj):
            first.setdefault(X, x)
        return [first[X] for X in range(res.cat.object_count)]

    reps = [rep(r) for r in reflections]
    units = []
    for b in B.objects:
        q = reflections[b].q
        u = P.unit_iso[b]
        units.append(NatTrans(reindex[B.identities[b]], _identity(reflections[b].cat),
                              [q.mor[u.components[x]] for x in reps[b]]))
    comp = {}
    for (beta, beta1), phi in P.comp_iso.items():
        b2 = B.dom(beta1)
        q = reflections[b2].q
        comp[beta, beta1] = NatTrans(compose_functors(reindex[beta1], reindex[beta]),
                                     reindex[B.table[beta, beta1]],
                                     [q.mor[phi.components[x]] for x in reps[B.cod(beta)]])
    return PseudoFunctor(B, tuple(r.cat for r in reflections), tuple(reindex),
                         tuple(units), comp)


def fibrewise_apply(f: Functor, mode: str = "pi0", cap: int | None = None,
                    cleavage: Cleavage | None = None) -> FibrewiseResult:
    """Reflect every fibre of the fibration ``f`` (``pi0`` or ``groupoid``) and reassemble.

    Returns ``q: A → mid`` over ``B`` and the projection ``s: mid → B`` with ``s∘q = f``.
    """
    if cleavage is None:
        cleavage = extract_cleavage(f)
    if cleavage is None:
        raise NotAFibration("functor has no cleavage")
    P = to_pseudofunctor(f, cleavage)
    refl = tuple(reflect(P.fibres[b], mode, cap) for b in f.target.objects)
    q, mid, Q = assemble_fibrewise(f, cleavage, P, refl)
    return FibrewiseResult(q, mid.proj, mid, P, Q, refl)


def assemble_fibrewise(f: Functor, cleavage: Cleavage, P: PseudoFunctor, refl):
    """Given per-fibre quotients of ``[f]``, build the new total category and ``q: A → mid``."""
    A, B = f.source, f.target
    Q = reflect_pseudofunctor(P, refl)
    mid = grothendieck_construction(Q)
    oidx, midx = {}, {}
    for b in B.objects:
        for i, a in enumerate(P.inclusions[b].obj):
            oidx[a] = i
        for i, m in enumerate(P.inclusions[b].mor):
            midx[m] = i
    obj_at = mid._obj_index
    mor_at = mid._mor_index
    qobj = [obj_at[f.obj[a], refl[f.obj[a]].q.obj[oidx[a]]] for a in A.objects]
    qmor = []
    for m in range(A.morphism_count):
        a = A.cod(m)
        beta = f.mor[m]
        b1 = B.dom(beta)
        xi = cartesian_factor(f, cleavage.lifts[a, beta], m, B.identities[b1])
        X = refl[f.obj[a]].q.obj[oidx[a]]
        qmor.append(mor_at[beta, X, refl[b1].q.mor[midx[xi]]])
    return Functor(A, mid.total, qobj, qmor), mid, Q
