import pytest
from hypothesis import given

from conftest import small_fibrations, tiny_categories, tiny_functors
from fibrifier import io
from fibrifier.colim import groupoid_reflection, identee
from fibrifier.core import NatTrans, arrow_category, build_category, const_functor, iso_groupoid
from fibrifier.grothendieck import to_pseudofunctor


@given(tiny_categories())
def test_category_round_trip(C):
    assert io.cat_from_json(io.loads(io.dumps(io.cat_to_json(C)))) == C


@given(tiny_functors())
def test_functor_round_trip(F):
    assert io.functor_from_json(io.loads(io.dumps(io.functor_to_json(F)))) == F


def test_nattrans_round_trip():
    two, I = arrow_category(), iso_groupoid()
    from fibrifier.core import Functor
    F = Functor(two, I, [0, 1], [0, 1, 2])
    alpha = NatTrans(F, const_functor(two, I, 0), [0, 3])
    assert io.nat_from_json(io.nat_to_json(alpha)) == alpha


@given(tiny_functors())
def test_diagram_round_trip(f):
    D = identee(f)
    E = io.diagram_from_json(io.loads(io.dumps(io.diagram_to_json(D))))
    assert E.apex == D.apex and E.cell == D.cell


@given(small_fibrations())
def test_pseudofunctor_round_trip(f):
    P = to_pseudofunctor(f)
    Q = io.pseudofunctor_from_json(io.loads(io.dumps(io.pseudofunctor_to_json(P))))
    assert Q.fibres == P.fibres and Q.reindex == P.reindex
    assert Q.unit_iso == P.unit_iso and Q.comp_iso == P.comp_iso


def test_presentation_round_trip():
    C, _, _ = build_category([0, 1], ["i0", "i1", "u", "v"],
                             lambda m: 1 if m == "i1" else 0, lambda m: 0 if m == "i0" else 1,
                             lambda g, f: g if f in ("i0", "i1") else f, lambda o: f"i{o}")
    P = groupoid_reflection(C, cap=100)
    Q = io.presented_from_json(io.presented_to_json(P))
    assert Q.to_json() == P.to_json()


def test_canonical_text_is_stable():
    doc = io.cat_to_json(iso_groupoid())
    assert io.dumps(doc) == io.dumps(io.loads(io.dumps(doc)))
    assert " " not in io.dumps(doc)


def test_malformed_json_reports_position():
    with pytest.raises(io.SchemaError, match="line 1 column"):
        io.loads('{"objects": ')


def test_schema_errors():
    with pytest.raises(io.SchemaError):
        io.cat_from_json({"objects": 1})
    with pytest.raises(io.SchemaError):
        io.functor_from_json({"source": io.cat_to_json(arrow_category())})
