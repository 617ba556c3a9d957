"""JSON (de)serialization for every interchange value."""
from __future__ import annotations

import json

from .core import FinCat, Functor, NatTrans
from .errors import FibrifierError


class SchemaError(FibrifierError):
    """A document does not match the expected schema."""


def cat_to_json(C: FinCat) -> dict:
    return {"objects": C.object_count,
            "morphisms": [list(m) for m in C.morphisms],
            "identities": list(C.identities),
            "compose": sorted([g, f, gf] for (g, f), gf in C.table.items())}


def cat_from_json(doc) -> FinCat:
    try:
        n = doc["objects"]
        mors = [tuple(m) for m in doc["morphisms"]]
        ids = list(doc["identities"])
        table = {(g, f): gf for g, f, gf in doc["compose"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed category document: {exc}") from exc
    if not isinstance(n, int) or n < 0 or any(len(m) != 2 for m in mors):
        raise SchemaError("malformed category document")
    return FinCat(n, mors, ids, table)


def functor_to_json(F: Functor) -> dict:
    return {"source": cat_to_json(F.source), "target": cat_to_json(F.target),
            "obj": list(F.obj), "mor": list(F.mor)}


def functor_from_json(doc, source: FinCat | None = None, target: FinCat | None = None) -> Functor:
    try:
        A = source or cat_from_json(doc["source"])
        B = target or cat_from_json(doc["target"])
        return Functor(A, B, list(doc["obj"]), list(doc["mor"]))
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed functor document: {exc}") from exc


def nat_to_json(alpha: NatTrans) -> dict:
    return {"from": functor_to_json(alpha.source), "to": functor_to_json(alpha.target),
            "components": list(alpha.components)}


def nat_from_json(doc) -> NatTrans:
    try:
        F = functor_from_json(doc["from"])
        G = functor_from_json(doc["to"], F.source, F.target)
        return NatTrans(F, G, list(doc["components"]))
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed natural transformation document: {exc}") from exc


def comma_to_json(cc) -> dict:
    doc = cat_to_json(cc.cat)
    doc["decode"] = [list(t) for t in cc.decode]
    doc["left_proj"] = {"obj": list(cc.left_proj.obj), "mor": list(cc.left_proj.mor)}
    doc["right_proj"] = {"obj": list(cc.right_proj.obj), "mor": list(cc.right_proj.mor)}
    return doc


def diagram_to_json(d) -> dict:
    return {"apex": cat_to_json(d.apex), "target": cat_to_json(d.d0.target),
            "d0": {"obj": list(d.d0.obj), "mor": list(d.d0.mor)},
            "d1": {"obj": list(d.d1.obj), "mor": list(d.d1.mor)},
            "cell": list(d.cell.components)}


def diagram_from_json(doc):
    from .colim import TwoCellDiagram
    try:
        K = cat_from_json(doc["apex"])
        A = cat_from_json(doc["target"])
        d0 = Functor(K, A, list(doc["d0"]["obj"]), list(doc["d0"]["mor"]))
        d1 = Functor(K, A, list(doc["d1"]["obj"]), list(doc["d1"]["mor"]))
        return TwoCellDiagram(K, d0, d1, NatTrans(d0, d1, list(doc["cell"])))
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed diagram document: {exc}") from exc


def quotient_to_json(res) -> dict:
    return {"category": cat_to_json(res.cat), "q": {"obj": list(res.q.obj), "mor": list(res.q.mor)},
            "words": [[list(x) for x in w] for w in res.words]}


def presented_to_json(P) -> dict:
    doc = P.to_json()
    if P.realized is not None:
        doc["realized"] = cat_to_json(P.realized)
    return doc


def presented_from_json(doc):
    from .colim import PresentedCategory
    try:
        return PresentedCategory(doc["objects"], [tuple(g) for g in doc["generators"]],
                                 [(list(u), list(v)) for u, v in doc["relations"]],
                                 cat_from_json(doc["realized"]) if doc.get("realized") else None,
                                 doc.get("marker"))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed presentation document: {exc}") from exc


def pseudofunctor_to_json(P) -> dict:
    B = P.base
    return {"base": cat_to_json(B),
            "fibres": [cat_to_json(F) for F in P.fibres],
            "reindex": [{"obj": list(R.obj), "mor": list(R.mor)} for R in P.reindex],
            "unit_iso": [list(u.components) for u in P.unit_iso],
            "comp_iso": [[beta, beta1, list(phi.components)]
                         for (beta, beta1), phi in sorted(P.comp_iso.items())]}


def pseudofunctor_from_json(doc):
    from .core import compose_functors
    from .grothendieck import PseudoFunctor
    try:
        B = cat_from_json(doc["base"])
        fibres = [cat_from_json(F) for F in doc["fibres"]]
        reindex = []
        for beta, R in enumerate(doc["reindex"]):
            b1, b = B.morphisms[beta]
            reindex.append(Functor(fibres[b], fibres[b1], list(R["obj"]), list(R["mor"])))
        units = []
        for b, comps in enumerate(doc["unit_iso"]):
            F = fibres[b]
            ident = Functor(F, F, list(F.objects), list(range(F.morphism_count)))
            units.append(NatTrans(reindex[B.identities[b]], ident, list(comps)))
        comp = {}
        for beta, beta1, comps in doc["comp_iso"]:
            comp[beta, beta1] = NatTrans(compose_functors(reindex[beta1], reindex[beta]),
                                         reindex[B.table[beta, beta1]], list(comps))
        return PseudoFunctor(B, tuple(fibres), tuple(reindex), tuple(units), comp)
    except (KeyError, TypeError, IndexError) as exc:
        raise SchemaError(f"malformed pseudo-functor document: {exc}") from exc


def factorization_to_json(res) -> dict:
    doc = {"kind": res.kind, "side": res.side,
           "q": functor_to_json(res.q), "s": functor_to_json(res.s),
           "mid": cat_to_json(res.mid), "evidence": dict(res.evidence)}
    if res.over_base is not None:
        doc["over_base"] = {"obj": list(res.over_base.obj), "mor": list(res.over_base.mor)}
    return doc


def adjunction_to_json(adj) -> dict:
    return {"left": functor_to_json(adj.left),
            "right": {"obj": list(adj.right.obj), "mor": list(adj.right.mor)},
            "unit": list(adj.unit.components), "counit": list(adj.counit.components),
            "unit_is_identity": adj.unit.is_identity(),
            "counit_is_identity": adj.counit.is_identity(),
            "unit_is_iso": adj.unit.is_iso(), "counit_is_iso": adj.counit.is_iso()}


def dumps(doc) -> str:
    """Canonical text: sorted keys, compact separators."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def load_file(path: str):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
