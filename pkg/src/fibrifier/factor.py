"""The comprehensive and the (coinverter, conservative) factorizations, in Cat and over a base."""
from __future__ import annotations

from dataclasses import dataclass, field

from .adjoint import connected_components, find_isomorphism
from .colim import coidentifier, coinverter, default_cap, identee, induced_functor
from .comma import comma, monad_on_slice
from .core import FinCat, Functor, compose_functors, fibre, opposite, point, validate
from .errors import NotAFibration, NotFibrewiseOpfibration
from .fibcheck import (Cleavage, extract_cleavage, has_groupoidal_fibres, is_cartesian_arrow,
                       is_conservative, is_discrete, is_fibration, is_opfibration)
from .grothendieck import assemble_fibrewise, fibrewise_apply, to_pseudofunctor


def is_final(f: Functor) -> bool:
    """Every ``b/f`` is nonempty and connected."""
    for b in f.target.objects:
        cc = comma(point(f.target, b), f).cat
        if cc.object_count == 0 or len(connected_components(cc)[0]) != 1:
            return False
    return True


def is_initial(f: Functor) -> bool:
    """Every ``f/b`` is nonempty and connected."""
    for b in f.target.objects:
        cc = comma(f, point(f.target, b)).cat
        if cc.object_count == 0 or len(connected_components(cc)[0]) != 1:
            return False
    return True


@dataclass(frozen=True, eq=False)
class FactorizationResult:
    q: Functor
    mid: FinCat
    s: Functor
    kind: str  # comprehensive | groupoid
    side: str = "fib"
    evidence: dict = field(default_factory=dict)
    over_base: Functor | None = None

    def op(self) -> "FactorizationResult":
        return FactorizationResult(self.q.op(), opposite(self.mid), self.s.op(), self.kind,
                                   "opfib" if self.side == "fib" else "fib", dict(self.evidence),
                                   None if self.over_base is None else self.over_base.op())

    def composite_ok(self, f: Functor) -> bool:
        return compose_functors(self.s, self.q) == f


def _comprehensive_evidence(res: FactorizationResult, f: Functor) -> dict:
    if res.side == "fib":
        left = ("q_final", is_final(res.q))
    else:
        left = ("q_initial", is_initial(res.q))
    return {"composite": res.composite_ok(f), left[0]: left[1],
            "s_discrete": is_discrete(res.s, res.side)}


def comprehensive_factorization(f: Functor, side: str = "fib") -> FactorizationResult:
    """(final, discrete fibration) for ``side='fib'``; (initial, discrete opfibration) otherwise.

    Goes through the free fibration ``B/f → B`` and reflects its fibres onto their
    connected components.
    """
    if side == "opfib":
        res = comprehensive_factorization(f.op(), "fib").op()
    else:
        M = monad_on_slice("R", f, with_mult=False)
        fw = fibrewise_apply(M.carrier, "pi0")
        q = compose_functors(fw.q, M.unit)
        res = FactorizationResult(q, fw.mid.total, fw.s, "comprehensive", "fib")
    return FactorizationResult(res.q, res.mid, res.s, res.kind, side,
                               _comprehensive_evidence(res, f))


def groupoid_fibre_factorization(f: Functor, side: str = "fib",
                                 cap: int | None = None) -> FactorizationResult:
    """Coinverter of the identee followed by an (op)fibration in groupoids."""
    if side == "opfib":
        res = groupoid_fibre_factorization(f.op(), "fib", cap).op()
        check = is_opfibration
    else:
        cl = extract_cleavage(f)
        if cl is None:
            raise NotAFibration("groupoid factorization needs a fibration")
        fw = fibrewise_apply(f, "groupoid", cap, cl)
        res = FactorizationResult(fw.q, fw.mid.total, fw.s, "groupoid", "fib")
        check = is_fibration
    ident = identee(f).cell
    ev = {"composite": res.composite_ok(f),
          "q_coinverts_identee": all(res.mid.is_iso(res.q.mor[c]) for c in ident.components),
          "s_" + side: check(res.s, ("direct",)).verdict,
          "s_groupoidal_fibres": has_groupoidal_fibres(res.s),
          "s_conservative": is_conservative(res.s)}
    return FactorizationResult(res.q, res.mid, res.s, "groupoid", side, ev)


def coidentifier_factorization(f: Functor, cap: int | None = None) -> FactorizationResult:
    """Single-step generic closure: ``q`` the coidentifier of the identee, ``s`` induced."""
    res = coidentifier(identee(f), cap)
    s = induced_functor(res, f)
    return FactorizationResult(res.q, res.cat, s, "comprehensive", "fib",
                               {"composite": compose_functors(s, res.q) == f})


def coinverter_factorization(f: Functor, cap: int | None = None) -> FactorizationResult:
    res = coinverter(identee(f), cap)
    s = induced_functor(res, f)
    return FactorizationResult(res.q, res.cat, s, "groupoid", "fib",
                               {"composite": compose_functors(s, res.q) == f,
                                "s_conservative": is_conservative(s)})


def compare_factorizations(a: FactorizationResult, b: FactorizationResult) -> Functor | None:
    """An isomorphism ``mid_a ≅ mid_b`` commuting with both legs, or ``None``."""
    if a.q.source != b.q.source or a.s.target != b.s.target:
        return None
    return find_isomorphism(a.mid, b.mid, over=(a.s, b.s), under=(a.q, b.q))


# ------------------------------------------------------------- over a base

@dataclass(frozen=True, eq=False)
class FibBMorphism:
    """``p: A → C`` with ``g∘p = f`` for fibrations ``f``, ``g`` over a common base."""

    f: Functor
    g: Functor
    p: Functor
    cleavage_f: Cleavage | None = None
    cleavage_g: Cleavage | None = None

    def __post_init__(self):
        if self.cleavage_f is None:
            object.__setattr__(self, "cleavage_f", extract_cleavage(self.f))
        if self.cleavage_g is None:
            object.__setattr__(self, "cleavage_g", extract_cleavage(self.g))

    def triangle_commutes(self) -> bool:
        return compose_functors(self.g, self.p) == self.f

    def is_valid(self) -> bool:
        return (self.cleavage_f is not None and self.cleavage_g is not None
                and validate("functor", self.p, deep=False).ok and self.triangle_commutes()
                and is_cartesian_functor(self.f, self.g, self.p, self.cleavage_f))

    def fibre_restriction(self, b: int) -> Functor:
        """``p_b: A_b → C_b``."""
        Ab, ia = fibre(self.f, b)
        Cb, ic = fibre(self.g, b)
        oc = {c: i for i, c in enumerate(ic.obj)}
        mc = {m: i for i, m in enumerate(ic.mor)}
        return Functor(Ab, Cb, [oc[self.p.obj[a]] for a in ia.obj],
                       [mc[self.p.mor[m]] for m in ia.mor])


def is_cartesian_functor(f: Functor, g: Functor, p: Functor,
                         cleavage_f: Cleavage | None = None) -> bool:
    """Chosen ``f``-lifts go to ``g``-cartesian arrows (so every cartesian arrow does)."""
    cl = cleavage_f or extract_cleavage(f)
    if cl is None:
        return False
    return all(is_cartesian_arrow(g, p.mor[alpha]) for alpha in set(cl.lifts.values()))


def is_fibrewise_opfibration(m: FibBMorphism, discrete: bool = False) -> bool:
    for b in m.f.target.objects:
        pb = m.fibre_restriction(b)
        ok = is_discrete(pb, "opfib") if discrete else is_opfibration(pb, ("direct",)).verdict
        if not ok:
            return False
    return True


def factor_in_fibB(m: FibBMorphism, mode: str = "coidentifier",
                   cap: int | None = None) -> FactorizationResult:
    """Factor ``p`` over the base, fibre by fibre, and reassemble along ``[f]``.

    Each ``p_b`` is split by the coidentifier (or coinverter) of its identee; the
    reindexings of the middle are induced by universality and its coherence cells
    come from those of ``f``.
    """
    if mode not in ("coidentifier", "coinverter"):
        raise ValueError(f"unknown mode {mode!r}")
    if not is_fibrewise_opfibration(m):
        raise NotFibrewiseOpfibration("some fibre restriction is not an opfibration")
    cap = default_cap() if cap is None else cap
    f, g, p = m.f, m.g, m.p
    B, C = f.target, g.source
    P = to_pseudofunctor(f, m.cleavage_f)
    refl, s_fib = [], []
    for b in B.objects:
        pb = m.fibre_restriction(b)
        build = coidentifier if mode == "coidentifier" else coinverter
        res = build(identee(pb), cap)
        refl.append(res)
        s_fib.append(induced_functor(res, pb))
    q, mid, Q = assemble_fibrewise(f, m.cleavage_f, P, tuple(refl))
    cinc = [fibre(g, b)[1] for b in B.objects]
    reps = []
    for res in refl:
        first = {}
        for x, X in enumerate(res.q.obj):
            first.setdefault(X, x)
        reps.append(first)
    sobj = [cinc[b].obj[s_fib[b].obj[X]] for b, X in mid.decode]
    smor = []
    for beta, X, xi in mid.mor_decode:
        b1, b = B.morphisms[beta]
        a = P.inclusions[b].obj[reps[b][X]]
        top = p.mor[m.cleavage_f.lifts[a, beta]]
        smor.append(C.table[top, cinc[b1].mor[s_fib[b1].mor[xi]]])
    s = Functor(mid.total, C, sobj, smor)
    h = compose_functors(g, s)
    out = FibBMorphism(h, g, s, mid.cleavage, m.cleavage_g)
    kind = "comprehensive" if mode == "coidentifier" else "groupoid"
    ev = {"composite": compose_functors(s, q) == p,
          "s_functor": validate("functor", s, deep=False).ok,
          "over_base": h == mid.proj,
          "q_cartesian": is_cartesian_functor(f, h, q, m.cleavage_f),
          "gs_fibration": is_fibration(h, ("direct",)).verdict}
    if mode == "coidentifier":
        ev["s_fibrewise_discrete_opfibration"] = is_fibrewise_opfibration(out, discrete=True)
    else:
        ev["s_fibrewise_opfibration"] = is_fibrewise_opfibration(out)
        ev["s_fibrewise_groupoidal"] = all(
            has_groupoidal_fibres(out.fibre_restriction(b)) for b in B.objects)
    return FactorizationResult(q, mid.total, s, kind, "opfib", ev, h)
