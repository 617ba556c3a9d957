import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import tiny_categories, tiny_functors
from fibrifier.core import (FinCat, Functor, NatTrans, arrow_category, build_category,
                            commutative_square, compose_functors, const_functor, discrete,
                            fibre, full_subcategory, identity_functor, identity_nat,
                            iso_groupoid, opposite, point, poset, product_category,
                            pullback_category, terminal_category, validate, vertical,
                            whisker_left, whisker_right)
from fibrifier.errors import IndexOutOfRange


def test_terminal_category_is_valid():
    one = terminal_category()
    assert (one.object_count, one.morphism_count) == (1, 1)
    assert validate("category", one).ok


def test_broken_right_unit_is_reported():
    two = arrow_category()
    table = dict(two.table)
    table[2, 0] = 1  # pretend 2∘id_0 = id_1
    bad = FinCat(2, list(two.morphisms), list(two.identities), table)
    report = validate("category", bad)
    assert not report.ok
    assert "compose-typing" in report.laws() or "right-unit" in report.laws()


def test_missing_composite_is_reported():
    two = arrow_category()
    table = {k: v for k, v in two.table.items() if k != (1, 2)}
    assert "compose-missing" in validate("category", FinCat(2, two.morphisms, two.identities, table)).laws()


def test_index_out_of_range():
    with pytest.raises(IndexOutOfRange):
        validate("category", FinCat(1, [(0, 3)], [0], {(0, 0): 0}))


def test_completed_four_object_table_is_lawful():
    # a 4-object chain closed under composition by build_category: every triple checked
    C = poset(4, [(0, 1), (1, 2), (2, 3)])
    assert C.morphism_count == 10
    for f in range(C.morphism_count):
        for g in C.out_of(C.cod(f)):
            for h in C.out_of(C.cod(g)):
                assert C.table[h, C.table[g, f]] == C.table[C.table[h, g], f]
    assert validate("category", C).ok


def test_curated_shapes():
    assert iso_groupoid().is_groupoid()
    assert not arrow_category().is_groupoid()
    assert discrete(3).is_discrete()
    sq = commutative_square()
    assert (sq.object_count, sq.morphism_count) == (4, 9)
    assert len(sq.hom(0, 3)) == 1


def test_opposite_of_one_and_two():
    assert opposite(terminal_category()) == terminal_category()
    two = arrow_category()
    op = opposite(two)
    assert op.morphisms[2] == (1, 0)
    assert opposite(op) is two


@given(tiny_categories())
def test_opposite_is_valid_involution(C):
    assert validate("category", opposite(C)).ok
    assert opposite(opposite(C)) == C


@given(tiny_categories())
def test_generated_categories_are_valid(C):
    assert validate("category", C).ok


@given(tiny_functors())
def test_generated_functors_are_valid(F):
    assert validate("functor", F).ok


@given(tiny_functors())
def test_identity_functor_is_unit_for_composition(F):
    assert compose_functors(F, identity_functor(F.source)) == F
    assert compose_functors(identity_functor(F.target), F) == F


@given(tiny_functors(), st.data())
def test_composition_is_associative(F, data):
    from fibrifier.corpus import GenConfig, gen_category, random_functor
    seed = data.draw(st.integers(0, 10**6))
    rng = GenConfig(seed=seed).rng()
    C = gen_category(GenConfig(seed=seed), rng, 3, 6)
    G = random_functor(rng, F.target, C)
    H = random_functor(rng, C, C)
    assert compose_functors(H, compose_functors(G, F)) == compose_functors(compose_functors(H, G), F)


def test_functor_composition_violation_detected():
    two = arrow_category()
    bad = Functor(two, two, [0, 1], [0, 1, 0])
    assert "functor-typing" in validate("functor", bad).laws()


def test_nattrans_laws_and_whiskering():
    two, I = arrow_category(), iso_groupoid()
    F = Functor(two, I, [0, 1], [0, 1, 2])
    G = const_functor(two, I, 0)
    alpha = NatTrans(F, G, [0, 3])
    assert validate("nattrans", alpha).ok
    assert vertical(identity_nat(G), alpha) == alpha
    beta = NatTrans(G, F, [0, 2])
    assert vertical(alpha, beta).is_identity()
    assert whisker_left(identity_functor(I), alpha) == alpha
    assert whisker_right(alpha, identity_functor(two)) == alpha
    bad = NatTrans(F, G, [0, 2])
    assert not validate("nattrans", bad).ok


def test_build_category_keyed():
    C, oi, mi = build_category(["x"], ["e", "a"], lambda m: "x", lambda m: "x",
                               lambda g, f: "a" if "a" in (g, f) else "e", lambda o: "e")
    assert C.morphism_count == 2 and validate("category", C).ok
    assert C.table[mi["a"], mi["a"]] == mi["a"]


def test_pullback_of_identities_is_the_base():
    for B in (arrow_category(), iso_groupoid(), commutative_square()):
        iB = identity_functor(B)
        P, p0, p1 = pullback_category(iB, iB)
        assert p0 == p1 and p0.is_iso()


def test_pullback_of_discrete_fibration_with_point():
    f = const_functor(discrete(2), terminal_category(), 0)
    P, p0, p1 = pullback_category(f, point(terminal_category(), 0))
    Fb, _ = fibre(f, 0)
    assert (P.object_count, P.morphism_count) == (Fb.object_count, Fb.morphism_count) == (2, 2)


@given(tiny_functors(max_objects=3, max_morphisms=5), tiny_categories(2, 4))
def test_pullback_projections_commute(f, C):
    from fibrifier.corpus import random_functor
    import random
    g = random_functor(random.Random(0), C, f.target)
    P, p0, p1 = pullback_category(f, g)
    assert validate("category", P).ok
    assert compose_functors(f, p0) == compose_functors(g, p1)
    # brute-force count of pairs of objects and morphisms
    n_obj = sum(1 for a in f.source.objects for c in C.objects if f.obj[a] == g.obj[c])
    n_mor = sum(1 for u in range(f.source.morphism_count) for v in range(C.morphism_count)
                if f.mor[u] == g.mor[v])
    assert (P.object_count, P.morphism_count) == (n_obj, n_mor)


@given(tiny_categories(2, 4), tiny_categories(2, 4))
def test_product_sizes(A, C):
    P, p0, p1 = product_category(A, C)
    assert P.morphism_count == A.morphism_count * C.morphism_count
    assert validate("category", P).ok


def test_full_subcategory_and_fibre():
    sq = commutative_square()
    D, incl = full_subcategory(sq, [0, 3])
    assert (D.object_count, D.morphism_count) == (2, 3)
    obj = [0, 0, 1, 1]
    mor = []
    two = arrow_category()
    for d, c in sq.morphisms:
        mor.append(two.hom(obj[d], obj[c])[0])
    f = Functor(sq, two, obj, mor)
    assert validate("functor", f).ok
    F0, _ = fibre(f, 0)
    assert (F0.object_count, F0.morphism_count) == (2, 3)
