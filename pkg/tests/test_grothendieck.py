import pytest
from hypothesis import given

from conftest import small_fibrations
from fibrifier.adjoint import find_isomorphism
from fibrifier.comma import monad_on_slice
from fibrifier.core import (NatTrans, arrow_category, commutative_square, compose_functors,
                            const_functor, discrete, identity_functor, iso_groupoid,
                            terminal_category)
from fibrifier.corpus import GenConfig, gen_functor
from fibrifier.errors import IncoherentPseudoFunctor, NotAFibration
from fibrifier.factor import is_final
from fibrifier.fibcheck import extract_cleavage, is_discrete, is_fibration
from fibrifier.grothendieck import (coherence_violations, fibrewise_apply,
                                    grothendieck_construction, is_coherent,
                                    strict_pseudofunctor, to_pseudofunctor)


def test_identity_gives_trivial_fibres():
    B = commutative_square()
    P = to_pseudofunctor(identity_functor(B))
    assert all((F.object_count, F.morphism_count) == (1, 1) for F in P.fibres)
    assert P.is_strict()


@pytest.mark.parametrize("seed", range(8))
def test_free_fibration_is_split(seed):
    f = gen_functor(GenConfig(seed=seed, max_objects=4, max_morphisms=10))
    carrier = monad_on_slice("R", f, with_mult=False).carrier
    cl = extract_cleavage(carrier)
    assert cl.is_split()
    assert to_pseudofunctor(carrier, cl).is_strict()


@given(small_fibrations())
def test_round_trip_is_isomorphic_over_base(f):
    P = to_pseudofunctor(f)
    assert is_coherent(P)
    G = grothendieck_construction(P)
    assert find_isomorphism(G.total, f.source, over=(G.proj, f)) is not None
    assert is_fibration(G.proj).agreement


def test_all_fibres_trivial_gives_base():
    B = iso_groupoid()
    one = terminal_category()
    idone = identity_functor(one)
    P = strict_pseudofunctor(B, [one, one], [idone] * B.morphism_count)
    G = grothendieck_construction(P)
    assert G.proj.is_iso()


def test_discrete_fibres_give_discrete_fibration():
    B = arrow_category()
    d2, d1 = discrete(2), discrete(1)
    # along 0 → 1 both points of the fibre over 1 go to the single point over 0
    P = strict_pseudofunctor(B, [d1, d2], [identity_functor(d1), identity_functor(d2),
                                          const_functor(d2, d1, 0)])
    G = grothendieck_construction(P)
    assert is_discrete(G.proj, "fib")


def test_incoherent_pseudofunctor_is_rejected():
    B = arrow_category()
    two = arrow_category()
    P = strict_pseudofunctor(B, [two, two], [identity_functor(two)] * 3)
    comp = dict(P.comp_iso)
    key = next(iter(comp))
    phi = comp[key]
    # replace one component by a non-identity, non-natural arrow
    comp[key] = NatTrans(phi.source, phi.target, [2] + list(phi.components[1:]))
    bad = type(P)(P.base, P.fibres, P.reindex, P.unit_iso, comp)
    assert coherence_violations(bad)
    with pytest.raises(IncoherentPseudoFunctor):
        grothendieck_construction(bad)


def test_non_fibration_has_no_pseudofunctor():
    from fibrifier.corpus import example_23
    with pytest.raises(NotAFibration):
        to_pseudofunctor(example_23())


def test_fibrewise_on_discrete_and_groupoidal():
    B = arrow_category()
    d2, d1 = discrete(2), discrete(1)
    P = strict_pseudofunctor(B, [d1, d2], [identity_functor(d1), identity_functor(d2),
                                          const_functor(d2, d1, 0)])
    f = grothendieck_construction(P).proj
    assert fibrewise_apply(f, "pi0").q.is_iso()
    I = iso_groupoid()
    from fibrifier.core import product_category
    _, _, p1 = product_category(I, B)
    assert fibrewise_apply(p1, "groupoid").q.is_iso()


@given(small_fibrations())
def test_pi0_mode_gives_final_then_discrete(f):
    res = fibrewise_apply(f, "pi0")
    assert compose_functors(res.s, res.q) == f
    assert is_discrete(res.s, "fib")
    assert is_final(res.q)
