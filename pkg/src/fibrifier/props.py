"""Executable forms of the fibrational propositions; each check returns a dict of named verdicts."""
from __future__ import annotations

from .adjoint import find_isomorphism, find_left_adjoint, find_right_adjoint
from .colim import TwoCellDiagram, coidentifier, coinverter, identee, induced_functor, invertee
from .comma import (chevalley_comparison, comma, iso_comma, monad_laws, monad_on_slice,
                    slice_cell, slice_map)
from .core import Functor, compose_functors, identity_functor, pullback_category, validate
from .errors import CapExceeded
from .factor import (FibBMorphism, coidentifier_factorization, coinverter_factorization,
                     compare_factorizations, comprehensive_factorization, factor_in_fibB,
                     groupoid_fibre_factorization)
from .fibcheck import (comma_projection_classes, has_groupoidal_fibres,
                       is_conservative, is_fibration, is_isofibration, is_opfibration,
                       is_street_fibration, is_street_opfibration)


def chevalley_agreement(f: Functor, expect_fib: bool | None = None,
                        expect_opfib: bool | None = None) -> dict:
    fib, opfib = is_fibration(f), is_opfibration(f)
    out = {"fib-agreement": fib.agreement, "opfib-agreement": opfib.agreement}
    if expect_fib is not None:
        out["fib-expected"] = fib.agreement and fib.verdict == expect_fib
    if expect_opfib is not None:
        out["opfib-expected"] = opfib.agreement and opfib.verdict == expect_opfib
    return out


def example_23(f: Functor) -> dict:
    """The point of the two-object chaotic groupoid: a pseudo-opfibration that is not an opfibration."""
    rep = is_opfibration(f)
    chev = chevalley_comparison(f, "opfib")
    loose = find_left_adjoint(chev)
    strict = find_left_adjoint(chev, require_identity_unit=True)
    right = find_right_adjoint(f)
    return {
        "chevalley-counit-identity": loose is not None and loose.counit.is_identity(),
        "chevalley-unit-iso-not-identity": (loose is not None and loose.unit.is_iso()
                                            and not loose.unit.is_identity()),
        "opfib-direct-false": rep.verdicts["direct"] is False,
        "opfib-chevalley-false": rep.verdicts["chevalley"] is False,
        "opfib-algebra-false": rep.verdicts["algebra"] is False,
        "street-opfibration": is_street_opfibration(f),
        "right-adjoint-unit-identity": right is not None and right.unit.is_identity(),
        "right-adjoint-counit-iso-not-identity": (right is not None and right.counit.is_iso()
                                                  and not right.counit.is_identity()),
        "chevalley-identity-unit-absent": strict is None,
        "iso-comma-size": iso_comma(f).comma.cat.object_count == 2,
        "lf-carrier-iso-to-base": monad_on_slice("L", f, False).carrier.is_iso(),
    }


def comprehensive(f: Functor, fibration: bool | None = None) -> dict:
    out = {}
    for side in ("fib", "opfib"):
        res = comprehensive_factorization(f, side)
        for k, v in res.evidence.items():
            out[f"{side}:{k}"] = v
        again = comprehensive_factorization(res.s, side)
        out[f"{side}:idempotent"] = again.q.is_iso()
    if fibration is None:
        fibration = is_fibration(f, ("direct",)).verdict
    if fibration:
        a = comprehensive_factorization(f, "fib")
        b = coidentifier_factorization(f)
        out["coidentifier-path-agrees"] = compare_factorizations(a, b) is not None
    return out


def groupoid_factorization(f: Functor, cap: int | None = None) -> dict:
    res = groupoid_fibre_factorization(f, "fib", cap)
    out = dict(res.evidence)
    out["idempotent"] = groupoid_fibre_factorization(res.s, "fib", cap).q.is_iso()
    single = coinverter_factorization(f, cap)
    out["single-coinverter-agrees"] = compare_factorizations(res, single) is not None
    return out


def isofib_cons_gpd(f: Functor, cap: int | None = None) -> dict:
    out = {"isofibration": is_isofibration(f),
           "conservative-iff-groupoidal": is_conservative(f) == has_groupoidal_fibres(f)}
    a = coinverter(identee(f), cap)
    b = coinverter(invertee(f), cap)
    out["coinverters-agree"] = find_isomorphism(a.cat, b.cat, under=(a.q, b.q)) is not None
    return out


def coinverters_agree(f: Functor, cap: int | None = None) -> bool:
    a = coinverter(identee(f), cap)
    b = coinverter(invertee(f), cap)
    return find_isomorphism(a.cat, b.cat, under=(a.q, b.q)) is not None


# ---------------------------------------------------------------- structural

def pullback_stable(f: Functor, h: Functor) -> bool:
    """Pulling the fibration ``f`` back along ``h`` gives a fibration."""
    P, _, p1 = pullback_category(f, h)
    return is_fibration(p1, ("direct",)).verdict


def pseudo_to_fib(f: Functor) -> dict:
    """For a Street fibration ``f`` the free isofibration ``If`` is a fibration."""
    street = is_street_fibration(f)
    carrier = iso_comma(f).carrier
    return {"street": street,
            "If-fibration": (not street) or is_fibration(carrier, ("direct",)).verdict}


def _slice_image(which: str, f: Functor):
    """Apply ``T ∈ {R, L}`` to the identee diagram of ``f``."""
    D = identee(f)
    h = compose_functors(f, D.d0)
    iB = identity_functor(f.target)
    if which == "R":
        cc_h, cc_f = comma(iB, h), comma(iB, f)
    else:
        cc_h, cc_f = comma(h, iB), comma(f, iB)
    Td0 = slice_map(which, D.d0, cc_h, cc_f)
    Td1 = slice_map(which, D.d1, cc_h, cc_f)
    Tk = slice_cell(which, D.cell, cc_h, cc_f)
    return D, cc_h, cc_f, TwoCellDiagram(cc_h.cat, Td0, Td1, Tk)


def preserves_identee(which: str, f: Functor) -> bool:
    """``T`` of the identee of ``f: (A, f) → (B, 1)`` over ``B`` is the identee of ``T f``.

    The canonical comparison into the identee of ``T f: T(A, f) → T(B, 1)`` must be
    an isomorphism of categories.
    """
    _, _, cc_f, TD = _slice_image(which, f)
    iB = identity_functor(f.target)
    E = identee(slice_map(which, f, cc_f, comma(iB, iB)))
    obj_at = {}
    for x, c in enumerate(E.cell.components):
        obj_at[c] = x
    mor_at = {}
    for k in range(E.apex.morphism_count):
        mor_at[E.apex.dom(k), E.apex.cod(k), E.d0.mor[k], E.d1.mor[k]] = k
    try:
        obj = [obj_at[c] for c in TD.cell.components]
        mor = [mor_at[obj[TD.apex.dom(m)], obj[TD.apex.cod(m)], TD.d0.mor[m], TD.d1.mor[m]]
               for m in range(TD.apex.morphism_count)]
    except KeyError:
        return False
    comp = Functor(TD.apex, E.apex, obj, mor)
    return validate("functor", comp, deep=False).ok and comp.is_iso()


def dagger(which: str, f: Functor, mode: str, cap: int | None = None) -> bool:
    """``T`` sends the coidentifier (coinverter) of the identee of ``f`` to that of ``T`` of it."""
    build = coidentifier if mode == "coidentifier" else coinverter
    _, _, cc_f, TD = _slice_image(which, f)
    res = build(identee(f), cap)
    s = induced_functor(res, f)
    iB = identity_functor(f.target)
    cc_s = comma(iB, s) if which == "R" else comma(s, iB)
    Tq = slice_map(which, res.q, cc_f, cc_s)
    res2 = build(TD, cap)
    return find_isomorphism(res2.cat, cc_s.cat, under=(res2.q, Tq)) is not None


def structural(f: Functor, h: Functor, g: Functor, street: Functor, cap: int | None = None) -> dict:
    """``f`` a fibration, ``h`` any functor into its base, ``g`` any functor into the same base."""
    classes = comma_projection_classes(f, g)
    out = {
        "pullback-stable": pullback_stable(f, h),
        "p0p1-left-fibration": classes["left_is_fibration"],
        "p0p1-right-opfibration": classes["right_is_opfibration"],
        "pseudo-to-fib": all(pseudo_to_fib(street).values()),
        "R-preserves-identee": preserves_identee("R", f),
        "L-preserves-identee": preserves_identee("L", f),
        "monad-laws": all(all(monad_laws(w, f).values()) for w in ("R", "L", "I")),
    }
    for which in ("R", "L"):
        for mode in ("coidentifier", "coinverter"):
            out[f"dagger-{which}-{mode}"] = dagger(which, f, mode, cap)
    return out


# ---------------------------------------------------------------- Fib(B)

def fibB(m: FibBMorphism, cap: int | None = None) -> dict:
    out = {"valid": m.is_valid()}
    a = factor_in_fibB(m, "coidentifier", cap)
    for k, v in a.evidence.items():
        out[f"coid:{k}"] = v
    out["coid:cat-agrees"] = compare_factorizations(a, coidentifier_factorization(m.p, cap)) is not None
    out["coid:comprehensive-agrees"] = compare_factorizations(
        a, comprehensive_factorization(m.p, "opfib")) is not None
    b = factor_in_fibB(m, "coinverter", cap)
    for k, v in b.evidence.items():
        out[f"coinv:{k}"] = v
    out["coinv:cat-agrees"] = compare_factorizations(b, coinverter_factorization(m.p, cap)) is not None
    return out


def safe(check, *args, **kwargs) -> dict:
    """Run ``check``; a cap overrun is reported as a failed verdict rather than an exception."""
    try:
        return check(*args, **kwargs)
    except CapExceeded as exc:
        return {"cap-exceeded": False, "detail": str(exc)}
