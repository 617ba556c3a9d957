"""Brute-force reference implementations, written from the definitions only.

Nothing here calls the search code under test; everything enumerates.
"""
from itertools import product

from fibrifier.core import FinCat, Functor


def all_functors(A: FinCat, B: FinCat):
    """Every functor ``A → B``, by exhaustive enumeration of object and arrow maps."""
    for obj in product(range(B.object_count), repeat=A.object_count):
        choices = []
        for m, (d, c) in enumerate(A.morphisms):
            if m in A.identities:
                choices.append([B.identities[obj[d]]])
            else:
                choices.append(list(B.hom(obj[d], obj[c])))
        for mor in product(*choices):
            if all(mor[gf] == B.table[mor[g], mor[f]] for (g, f), gf in A.table.items()):
                yield Functor(A, B, list(obj), list(mor))


def is_cartesian(f: Functor, alpha: int) -> bool:
    """``alpha: a' → a`` cartesian: unique factorization of every ``g: x → a`` over ``f``."""
    A, B = f.source, f.target
    a1, a = A.morphisms[alpha]
    for g in range(A.morphism_count):
        if A.cod(g) != a:
            continue
        x = A.dom(g)
        for gamma in range(B.morphism_count):
            if B.morphisms[gamma] != (f.obj[x], f.obj[a1]):
                continue
            if B.table[f.mor[alpha], gamma] != f.mor[g]:
                continue
            fillers = [h for h in range(A.morphism_count)
                       if A.morphisms[h] == (x, a1) and f.mor[h] == gamma
                       and A.table[alpha, h] == g]
            if len(fillers) != 1:
                return False
    return True


def is_fibration(f: Functor) -> bool:
    A, B = f.source, f.target
    for a in A.objects:
        for beta in range(B.morphism_count):
            if B.cod(beta) != f.obj[a]:
                continue
            if not any(A.cod(al) == a and f.mor[al] == beta and is_cartesian(f, al)
                       for al in range(A.morphism_count)):
                return False
    return True


def is_opfibration(f: Functor) -> bool:
    return is_fibration(f.op())


def comma_counts(f: Functor, g: Functor) -> tuple:
    """(objects, morphisms) of ``f/g`` counted from the definition."""
    A, C, B = f.source, g.source, f.target
    objs = [(a, c, beta) for a in A.objects for c in C.objects
            for beta in B.hom(f.obj[a], g.obj[c])]
    n = 0
    for (a, c, beta) in objs:
        for (a2, c2, beta2) in objs:
            for u in A.hom(a, a2):
                for v in C.hom(c, c2):
                    if B.table[beta2, f.mor[u]] == B.table[g.mor[v], beta]:
                        n += 1
    return len(objs), n


def is_natural(F: Functor, G: Functor, comps) -> bool:
    A, B = F.source, F.target
    for m, (d, c) in enumerate(A.morphisms):
        if B.table[G.mor[m], comps[d]] != B.table[comps[c], F.mor[m]]:
            return False
    return True


def transformations(F: Functor, G: Functor):
    A, B = F.source, F.target
    for comps in product(*[B.hom(F.obj[a], G.obj[a]) for a in A.objects]):
        if is_natural(F, G, comps):
            yield comps


def has_right_adjoint(F: Functor) -> bool:
    """Some ``G`` with unit and counit satisfying both triangle identities."""
    from fibrifier.core import compose_functors, identity_functor
    A, B = F.source, F.target
    for G in all_functors(B, A):
        GF, FG = compose_functors(G, F), compose_functors(F, G)
        units = list(transformations(identity_functor(A), GF))
        counits = list(transformations(FG, identity_functor(B)))
        for eta in units:
            for eps in counits:
                tri1 = all(B.table[eps[F.obj[a]], F.mor[eta[a]]] == B.identities[F.obj[a]]
                           for a in A.objects)
                tri2 = all(A.table[G.mor[eps[b]], eta[G.obj[b]]] == A.identities[G.obj[b]]
                           for b in B.objects)
                if tri1 and tri2:
                    return True
    return False


def is_isomorphic(C: FinCat, D: FinCat) -> bool:
    if (C.object_count, C.morphism_count) != (D.object_count, D.morphism_count):
        return False
    return any(F.is_iso() for F in all_functors(C, D))


def connected_classes(C: FinCat) -> int:
    seen, count = set(), 0
    for a in C.objects:
        if a in seen:
            continue
        count += 1
        stack = [a]
        seen.add(a)
        while stack:
            x = stack.pop()
            for m, (d, c) in enumerate(C.morphisms):
                for y in ((c,) if d == x else ()) + ((d,) if c == x else ()):
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
    return count
