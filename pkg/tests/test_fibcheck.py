from hypothesis import given

import oracles
from conftest import small_fibrations, tiny_functors
from fibrifier.core import (NatTrans, arrow_category, const_functor, identity_functor,
                            iso_groupoid, product_category, vertical)
from fibrifier.corpus import example_23, nonconstant_2_to_I
from fibrifier.fibcheck import (CRITERIA, cartesian_lift, comma_projection_classes,
                                extract_cleavage, factor_vertical_iso, has_discrete_fibres,
                                has_groupoidal_fibres, is_cartesian_arrow, is_conservative,
                                is_discrete, is_fibration, is_isofibration, is_opfibration,
                                is_street_fibration, is_street_opfibration, iso_lift)
from fibrifier.grothendieck import grothendieck_construction, strict_pseudofunctor


def test_identities_are_cartesian():
    for f in (example_23(), nonconstant_2_to_I(), identity_functor(arrow_category())):
        for a in f.source.objects:
            assert is_cartesian_arrow(f, f.source.identities[a])


def test_no_lift_over_the_iso_in_example():
    f = example_23()
    assert cartesian_lift(f, 0, 3) is None  # 3: 1 → 0 in I, nothing of 1 lies over 1
    assert cartesian_lift(f.op(), 0, 2) is None  # no opcartesian lift of 2: 0 → 1 at the point


def test_cleavage_is_normalized():
    f = identity_functor(iso_groupoid())
    cl = extract_cleavage(f)
    for a in f.source.objects:
        assert cl.lift(a, f.target.identities[a]) == f.source.identities[a]


@given(small_fibrations())
def test_canonical_lifts_are_cartesian_by_brute_force(f):
    cl = extract_cleavage(f)
    assert cl is not None
    for alpha in set(cl.lifts.values()):
        assert oracles.is_cartesian(f, alpha)


@given(tiny_functors(max_objects=3, max_morphisms=5))
def test_cartesian_predicate_matches_definition(f):
    for alpha in range(f.source.morphism_count):
        assert is_cartesian_arrow(f, alpha) == oracles.is_cartesian(f, alpha)


@given(tiny_functors(max_objects=3, max_morphisms=6))
def test_three_criteria_agree_with_brute_force(f):
    fib, opfib = is_fibration(f), is_opfibration(f)
    assert fib.agreement and opfib.agreement
    assert fib.verdict == oracles.is_fibration(f)
    assert opfib.verdict == oracles.is_opfibration(f)


@given(small_fibrations())
def test_generated_fibrations_pass_all_criteria(f):
    rep = is_fibration(f)
    assert rep.agreement and rep.verdict


def test_grothendieck_cleavage_matches_reindexing():
    two = arrow_category()
    B = arrow_category()
    # reindexing along 0 → 1 is the constant functor at 1 on the fibre **2**
    R = const_functor(two, two, 1)
    P = strict_pseudofunctor(B, (two, two), (identity_functor(two), identity_functor(two), R))
    G = grothendieck_construction(P)
    cl = extract_cleavage(G.proj)
    for (a, beta), alpha in G.cleavage.lifts.items():
        assert cl.lift(a, beta) == alpha
        b1, b = B.morphisms[beta]
        assert G.decode[G.total.dom(alpha)] == (b1, R.obj[G.decode[a][1]] if beta == 2 else G.decode[a][1])


def test_identity_passes_everything():
    f = identity_functor(arrow_category())
    for rep in (is_fibration(f), is_opfibration(f)):
        assert set(rep.verdicts) == set(CRITERIA)
        assert rep.verdict


def test_example_is_street_opfibration_only():
    f = example_23()
    rep = is_opfibration(f)
    assert rep.verdicts == {"direct": False, "chevalley": False, "algebra": False}
    assert is_street_opfibration(f) and is_street_fibration(f)


def test_groupoid_functors_are_conservative():
    I = iso_groupoid()
    assert is_conservative(example_23())
    assert is_conservative(identity_functor(I))


def test_nonconstant_two_to_I():
    g = nonconstant_2_to_I()
    assert not is_conservative(g)
    assert not is_isofibration(g)
    assert has_groupoidal_fibres(g)


def test_discreteness():
    two = arrow_category()
    P, p0, p1 = product_category(two, two)
    assert is_fibration(p1).verdict and not has_discrete_fibres(p1)
    assert not is_discrete(p1, "fib")
    assert is_discrete(identity_functor(two), "fib")


def test_iso_lift_and_vertical_iso_factorization():
    f = identity_functor(iso_groupoid())
    assert iso_lift(f, 0, 3) == 3
    F = identity_functor(iso_groupoid())
    alpha = NatTrans(F, F, [0, 1])
    sigma, tau = factor_vertical_iso(f, alpha)
    assert tau == alpha and sigma.is_identity()
    assert vertical(sigma, tau) == alpha


def test_vertical_iso_splits_cases():
    from fibrifier.core import point
    I, two = iso_groupoid(), arrow_category()
    # α over an iso of the base, f a discrete fibration: τ is forced to be an identity
    f = identity_functor(I)
    alpha = NatTrans(point(I, 0), point(I, 1), [2])
    sigma, tau = factor_vertical_iso(f, alpha)
    assert tau.is_identity() and vertical(sigma, tau) == alpha
    # α vertical: σ = id, τ = α
    P, p0, p1 = product_category(I, two)
    oi = {(p0.obj[x], p1.obj[x]): x for x in P.objects}
    mi = {(p0.mor[m], p1.mor[m]): m for m in range(P.morphism_count)}
    beta = NatTrans(point(P, oi[0, 0]), point(P, oi[1, 0]), [mi[2, 0]])
    sigma, tau = factor_vertical_iso(p1, beta)
    assert sigma.is_identity() and tau == beta


@given(tiny_functors(max_objects=3, max_morphisms=5))
def test_vertical_iso_recomposition(g):
    from fibrifier.comma import iso_comma
    from fibrifier.core import point
    f = iso_comma(g).carrier
    A, B = f.source, f.target
    for m in range(A.morphism_count):
        if B.is_iso(f.mor[m]):
            d, c = A.morphisms[m]
            alpha = NatTrans(point(A, d), point(A, c), [m])
            sigma, tau = factor_vertical_iso(f, alpha)
            assert sigma.is_iso() and vertical(sigma, tau) == alpha
            assert B.is_identity(f.mor[tau.components[0]])


def test_comma_projection_classes():
    f = identity_functor(arrow_category())
    classes = comma_projection_classes(f, f)
    assert classes["left_is_fibration"] and classes["right_is_opfibration"]


def test_isofibration_of_groupoid_identity():
    assert is_isofibration(identity_functor(iso_groupoid()))
    assert not is_isofibration(example_23())  # the iso 0 ≅ 1 has no lift out of the point
