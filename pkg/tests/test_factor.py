import pytest
from hypothesis import given

from conftest import small_fibrations, tiny_functors
from fibrifier.adjoint import find_isomorphism
from fibrifier.colim import coidentifier, identee
from fibrifier.core import (arrow_category, compose_functors, const_functor, discrete,
                            identity_functor, iso_groupoid, point, product_category,
                            terminal_category)
from fibrifier.corpus import (GenConfig, fibB_from_family, fibB_nonexample, gen_fibB_morphism,
                              slice_family)
from fibrifier.errors import NotFibrewiseOpfibration
from fibrifier.factor import (FibBMorphism, coidentifier_factorization,
                              coinverter_factorization, compare_factorizations,
                              comprehensive_factorization, factor_in_fibB,
                              groupoid_fibre_factorization, is_fibrewise_opfibration, is_final,
                              is_initial)
from fibrifier.fibcheck import has_groupoidal_fibres, is_conservative, is_discrete


def test_finality_basics():
    I = identity_functor(iso_groupoid())
    assert is_final(I) and is_initial(I)
    incl = point(discrete(2), 0)
    assert not is_final(incl) and not is_initial(incl)


@given(tiny_functors(max_objects=3, max_morphisms=6))
def test_comprehensive_legs(f):
    for side in ("fib", "opfib"):
        res = comprehensive_factorization(f, side)
        assert res.composite_ok(f)
        assert (is_final if side == "fib" else is_initial)(res.q)
        assert is_discrete(res.s, side)
        assert all(res.evidence.values())


def test_discrete_fibration_factors_trivially():
    d2 = discrete(2)
    f = const_functor(d2, terminal_category(), 0)
    res = comprehensive_factorization(f)
    assert res.q.is_iso()


def test_two_to_one():
    f = const_functor(arrow_category(), terminal_category(), 0)
    res = comprehensive_factorization(f)
    assert (res.mid.object_count, res.mid.morphism_count) == (1, 1)
    assert res.s.is_iso()
    g = groupoid_fibre_factorization(f)
    assert find_isomorphism(g.mid, iso_groupoid()) is not None


@given(small_fibrations())
def test_coidentifier_path_agrees_with_pi0(f):
    a = comprehensive_factorization(f, "fib")
    b = coidentifier_factorization(f)
    assert compare_factorizations(a, b) is not None
    res = coidentifier(identee(f))
    assert find_isomorphism(res.cat, a.mid, under=(res.q, a.q)) is not None


def test_groupoid_fibres_give_iso_q():
    _, _, p1 = product_category(iso_groupoid(), arrow_category())
    assert groupoid_fibre_factorization(p1).q.is_iso()


@given(small_fibrations(loop_free=True))
def test_groupoid_factorization(f):
    res = groupoid_fibre_factorization(f)
    assert all(res.evidence.values())
    assert is_conservative(res.s) and has_groupoidal_fibres(res.s)
    assert groupoid_fibre_factorization(res.s).q.is_iso()
    assert compare_factorizations(res, coinverter_factorization(f)) is not None


def test_kinds_differ_on_non_discrete_fibres():
    _, _, p1 = product_category(arrow_category(), arrow_category())
    a = comprehensive_factorization(p1)
    b = groupoid_fibre_factorization(p1)
    assert compare_factorizations(a, b) is None


def test_identity_morphism_is_cartesian_and_fibrewise():
    _, _, p1 = product_category(arrow_category(), arrow_category())
    m = FibBMorphism(p1, p1, identity_functor(p1.source))
    assert m.is_valid()
    assert is_fibrewise_opfibration(m)
    res = factor_in_fibB(m, "coidentifier")
    assert res.q.is_iso()


def test_nonexample_is_rejected():
    m = fibB_nonexample()
    assert not is_fibrewise_opfibration(m)
    with pytest.raises(NotFibrewiseOpfibration):
        factor_in_fibB(m)


def test_single_fibre_two_to_one_coinverter():
    one = terminal_category()
    two = arrow_category()
    m = fibB_from_family(one, identity_functor(one), two, one, const_functor(two, one, 0))
    res = factor_in_fibB(m, "coinverter")
    # per-fibre oracle: the coinverter of the identee of 2 → 1 is the groupoid reflection I
    assert find_isomorphism(res.mid, iso_groupoid()) is not None
    res2 = factor_in_fibB(m, "coidentifier")
    assert res2.mid.morphism_count == 1


@pytest.mark.parametrize("seed", range(6))
def test_fibB_both_modes(seed):
    m = gen_fibB_morphism(GenConfig(seed=seed))
    assert m.is_valid()
    a = factor_in_fibB(m, "coidentifier")
    b = factor_in_fibB(m, "coinverter")
    assert all(a.evidence.values()) and all(b.evidence.values())
    assert compare_factorizations(a, comprehensive_factorization(m.p, "opfib")) is not None
    assert compare_factorizations(b, coinverter_factorization(m.p)) is not None
    assert compose_functors(b.over_base, b.q) == m.f


def test_slice_family_shape():
    B = arrow_category()
    P, prods, idx = slice_family(B, identity_functor(B), terminal_category())
    assert len(P.fibres) == B.object_count
