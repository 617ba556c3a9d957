"""Cartesian arrows, cleavages and fibration-class predicates.

Opfibration variants are computed on opposite functors: an arrow is
``f``-opcartesian exactly when it is ``f^op``-cartesian.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .adjoint import find_left_adjoint, find_right_adjoint
from .comma import chevalley_comparison, comma, monad_on_slice
from .core import Functor, NatTrans, compose_functors
from .errors import NotIsofibration

CRITERIA = ("direct", "chevalley", "algebra")


def is_cartesian_arrow(f: Functor, alpha: int) -> bool:
    """Strong cartesianness: every ``(delta, g)`` with ``f(alpha)∘g = f(delta)`` factors uniquely."""
    A, B = f.source, f.target
    a1, a = A.morphisms[alpha]
    fa = f.mor[alpha]
    for a2 in A.objects:
        homs = A.hom(a2, a1)
        images = {(A.table[alpha, phi], f.mor[phi]) for phi in homs}
        if len(images) != len(homs):
            return False
        for delta in A.hom(a2, a):
            fd = f.mor[delta]
            for g in B.hom(f.obj[a2], f.obj[a1]):
                if B.table[fa, g] == fd and (delta, g) not in images:
                    return False
    return True


def is_opcartesian_arrow(f: Functor, alpha: int) -> bool:
    return is_cartesian_arrow(f.op(), alpha)


def cartesian_factor(f: Functor, alpha: int, delta: int, g: int) -> int:
    """The unique ``phi`` with ``alpha∘phi = delta`` and ``f(phi) = g``."""
    A = f.source
    for phi in A.hom(A.dom(delta), A.dom(alpha)):
        if A.table[alpha, phi] == delta and f.mor[phi] == g:
            return phi
    raise ValueError("no factorization through the given arrow")


def cartesian_lift(f: Functor, a: int, beta: int):
    """Smallest-index cartesian ``alpha`` into ``a`` over ``beta`` (identities lift to identities)."""
    A, B = f.source, f.target
    if B.cod(beta) != f.obj[a]:
        raise ValueError("beta must end at f(a)")
    if B.is_identity(beta):
        return A.dom(A.identities[a]), A.identities[a]
    for alpha in A.into(a):
        if f.mor[alpha] == beta and is_cartesian_arrow(f, alpha):
            return A.dom(alpha), alpha
    return None


def opcartesian_lift(f: Functor, a: int, beta: int):
    return cartesian_lift(f.op(), a, beta)


@dataclass(frozen=True, eq=False)
class Cleavage:
    """Chosen cartesian lifts ``(a, beta) ↦ alpha`` with ``cod(alpha) = a``, ``f(alpha) = beta``."""

    functor: Functor
    lifts: dict

    def lift(self, a: int, beta: int) -> int:
        return self.lifts[a, beta]

    def is_normalized(self) -> bool:
        A, B = self.functor.source, self.functor.target
        return all(self.lifts[a, B.identities[self.functor.obj[a]]] == A.identities[a]
                   for a in A.objects)

    def is_split(self) -> bool:
        f = self.functor
        A, B = f.source, f.target
        for (a, beta), alpha in self.lifts.items():
            a1 = A.dom(alpha)
            for beta2 in B.into(B.dom(beta)):
                alpha2 = self.lifts[a1, beta2]
                if self.lifts[a, B.table[beta, beta2]] != A.table[alpha, alpha2]:
                    return False
        return True


def extract_cleavage(f: Functor) -> Cleavage | None:
    A, B = f.source, f.target
    lifts = {}
    for a in A.objects:
        for beta in B.into(f.obj[a]):
            hit = cartesian_lift(f, a, beta)
            if hit is None:
                return None
            lifts[a, beta] = hit[1]
    return Cleavage(f, lifts)


def extract_opcleavage(f: Functor) -> Cleavage | None:
    """Opcleavage of ``f``, stored as a cleavage of ``f^op``."""
    return extract_cleavage(f.op())


# ----------------------------------------------------------------- report

@dataclass
class FibReport:
    side: str
    verdicts: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    @property
    def agreement(self) -> bool:
        return len(set(self.verdicts.values())) <= 1

    @property
    def verdict(self) -> bool:
        if not self.agreement:
            raise AssertionError(f"criteria disagree: {self.verdicts}")
        return all(self.verdicts.values())

    def to_json(self) -> dict:
        return {"side": self.side, "verdicts": dict(self.verdicts),
                "agreement": self.agreement, "witnesses": dict(self.witnesses)}


def _direct(f: Functor):
    A, B = f.source, f.target
    for a in A.objects:
        for beta in B.into(f.obj[a]):
            if cartesian_lift(f, a, beta) is None:
                return False, {"object": a, "base_arrow": beta}
    return True, None


def _chevalley_fib(f: Functor):
    adj = find_right_adjoint(chevalley_comparison(f, "fib"), require_identity_counit=True)
    return adj is not None, _adj_witness(adj)


def _chevalley_opfib(f: Functor):
    adj = find_left_adjoint(chevalley_comparison(f, "opfib"), require_identity_unit=True)
    return adj is not None, _adj_witness(adj)


def _algebra_fib(f: Functor):
    M = monad_on_slice("R", f, with_mult=False)
    Rf = M.carrier
    B = f.target
    adj = find_right_adjoint(M.unit, counit_ok=lambda k: B.is_identity(Rf.mor[k]))
    if adj is None:
        return False, None
    ok = (all(B.is_identity(f.mor[c]) for c in adj.unit.components)
          and compose_functors(f, adj.right) == Rf)
    return ok, _adj_witness(adj)


def _algebra_opfib(f: Functor):
    M = monad_on_slice("L", f, with_mult=False)
    Lf = M.carrier
    B = f.target
    adj = find_left_adjoint(M.unit, unit_ok=lambda k: B.is_identity(Lf.mor[k]))
    if adj is None:
        return False, None
    ok = (all(B.is_identity(f.mor[c]) for c in adj.counit.components)
          and compose_functors(f, adj.left) == Lf)
    return ok, _adj_witness(adj)


def _adj_witness(adj):
    if adj is None:
        return None
    return {"right_obj": list(adj.right.obj), "left_obj": list(adj.left.obj),
            "unit": list(adj.unit.components), "counit": list(adj.counit.components)}


def _report(f, side, criteria, table, parallel):
    rep = FibReport(side)
    if parallel and len(criteria) > 1:
        with ThreadPoolExecutor(len(criteria)) as pool:
            results = dict(zip(criteria, pool.map(lambda c: table[c](f), criteria)))
    else:
        results = {c: table[c](f) for c in criteria}
    for c in criteria:
        rep.verdicts[c], rep.witnesses[c] = results[c]
    return rep


def is_fibration(f: Functor, criteria=CRITERIA, parallel: bool = False) -> FibReport:
    table = {"direct": _direct, "chevalley": _chevalley_fib, "algebra": _algebra_fib}
    return _report(f, "fib", tuple(criteria), table, parallel)


def is_opfibration(f: Functor, criteria=CRITERIA, parallel: bool = False) -> FibReport:
    table = {"direct": lambda g: _direct(g.op()), "chevalley": _chevalley_opfib,
             "algebra": _algebra_opfib}
    return _report(f, "opfib", tuple(criteria), table, parallel)


# ------------------------------------------------------------- predicates

def is_isofibration(f: Functor) -> bool:
    A, B = f.source, f.target
    for a in A.objects:
        for beta in B.into(f.obj[a]):
            if B.is_iso(beta) and not any(f.mor[al] == beta and A.is_iso(al) for al in A.into(a)):
                return False
    return True


def is_street_fibration(f: Functor) -> bool:
    """Cartesian lifts exist up to an isomorphism at the domain."""
    A, B = f.source, f.target
    for a in A.objects:
        for beta in B.into(f.obj[a]):
            b = B.dom(beta)
            if not any(is_cartesian_arrow(f, al) and
                       any(B.table[f.mor[al], iota] == beta for iota in B.hom(b, f.obj[A.dom(al)])
                           if B.is_iso(iota))
                       for al in A.into(a)):
                return False
    return True


def is_street_opfibration(f: Functor) -> bool:
    return is_street_fibration(f.op())


def is_discrete(f: Functor, side: str = "fib") -> bool:
    """Unique lifts of every base arrow at every object (codomain for ``fib``, domain for ``opfib``)."""
    g = f if side == "fib" else f.op()
    A, B = g.source, g.target
    for a in A.objects:
        counts = {}
        for al in A.into(a):
            counts[g.mor[al]] = counts.get(g.mor[al], 0) + 1
        if any(counts.get(beta, 0) != 1 for beta in B.into(g.obj[a])):
            return False
    return True


def is_conservative(f: Functor) -> bool:
    A, B = f.source, f.target
    return all(A.is_iso(m) for m in range(A.morphism_count) if B.is_iso(f.mor[m]))


def has_groupoidal_fibres(f: Functor) -> bool:
    A, B = f.source, f.target
    return all(A.is_iso(m) for m in range(A.morphism_count) if B.is_identity(f.mor[m]))


def has_discrete_fibres(f: Functor) -> bool:
    A, B = f.source, f.target
    return all(A.is_identity(m) for m in range(A.morphism_count) if B.is_identity(f.mor[m]))


def is_vertical(f: Functor, alpha: NatTrans) -> bool:
    return all(f.target.is_identity(f.mor[c]) for c in alpha.components)


def iso_lift(f: Functor, a: int, beta: int) -> int | None:
    """Smallest-index invertible lift of the iso ``beta`` at ``a`` (identities lift to identities)."""
    A, B = f.source, f.target
    if B.is_identity(beta):
        return A.identities[a]
    for al in A.into(a):
        if f.mor[al] == beta and A.is_iso(al):
            return al
    return None


def factor_vertical_iso(f: Functor, alpha: NatTrans):
    """Split ``alpha`` (with ``f·alpha`` invertible) as ``sigma·tau``: ``sigma`` iso, ``tau`` vertical."""
    A = f.source
    F, G = alpha.source, alpha.target
    X = F.source
    sig, tau, mid = [], [], []
    for x in X.objects:
        comp = alpha.components[x]
        s = iso_lift(f, G.obj[x], f.mor[comp])
        if s is None:
            raise NotIsofibration(f"no invertible lift of f(alpha_{x}) at {G.obj[x]}")
        sig.append(s)
        tau.append(A.table[A.inverse(s), comp])
        mid.append(A.dom(s))
    hmor = [A.table[A.inverse(sig[X.cod(m)]), A.table[G.mor[m], sig[X.dom(m)]]]
            for m in range(X.morphism_count)]
    H = Functor(X, A, mid, hmor)
    return NatTrans(H, G, sig), NatTrans(F, H, tau)


def comma_projection_classes(f: Functor, g: Functor) -> dict:
    """For ``f/g``: the left projection should be a fibration, the right an opfibration."""
    cc = comma(f, g)
    return {"left_is_fibration": is_fibration(cc.left_proj, ("direct",)).verdict,
            "right_is_opfibration": is_opfibration(cc.right_proj, ("direct",)).verdict}


def counit_is_iso_chevalley(f: Functor) -> bool:
    """Pseudo variant of the Chevalley criterion: some right adjoint with invertible counit."""
    adj = find_right_adjoint(chevalley_comparison(f, "fib"))
    return adj is not None and adj.counit.is_iso()
