"""Universal objects, adjoint search and isomorphism search."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .core import (FinCat, Functor, NatTrans, compose_functors, discrete, identity_functor,
                   identity_nat, nat_op, opposite, vertical, whisker_left, whisker_right)


@dataclass(frozen=True, eq=False)
class AdjunctionData:
    left: Functor
    right: Functor
    unit: NatTrans  # 1 ⇒ right∘left
    counit: NatTrans  # left∘right ⇒ 1

    def triangle_identities(self) -> tuple[bool, bool]:
        L, R = self.left, self.right
        first = vertical(whisker_right(self.counit, L), whisker_left(L, self.unit))
        second = vertical(whisker_left(R, self.counit), whisker_right(self.unit, R))
        return first == identity_nat(L), second == identity_nat(R)

    def is_valid(self) -> bool:
        return all(self.triangle_identities())

    def op(self) -> "AdjunctionData":
        """The opposite adjunction ``R^op ⊣ L^op``."""
        return AdjunctionData(self.right.op(), self.left.op(), nat_op(self.counit), nat_op(self.unit))


def terminal_object(C: FinCat) -> int | None:
    for t in C.objects:
        if all(len(C.hom(x, t)) == 1 for x in C.objects):
            return t
    return None


def initial_object(C: FinCat) -> int | None:
    return terminal_object(opposite(C))


def connected_components(C: FinCat):
    """Zig-zag components of ``C`` and the reflection onto the discrete category of them."""
    parent = list(C.objects)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for d, c in C.morphisms:
        rd, rc = find(d), find(c)
        if rd != rc:
            parent[max(rd, rc)] = min(rd, rc)
    roots = sorted({find(x) for x in C.objects})
    label = {r: i for i, r in enumerate(roots)}
    classes = [[] for _ in roots]
    for x in C.objects:
        classes[label[find(x)]].append(x)
    obj = [label[find(x)] for x in C.objects]
    D = discrete(len(roots))
    q = Functor(C, D, obj, [obj[C.dom(m)] for m in range(C.morphism_count)])
    return classes, q


def _terminal_in_comma(F: Functor, y: int, accept: Callable | None):
    """Smallest terminal ``(x, k: F x → y)`` in ``F/y`` among those ``accept`` allows.

    Candidates with ``k`` an identity are tried first, so identity counits are
    chosen whenever one exists.
    """
    C, D = F.source, F.target
    idy = D.identities[y]
    candidates = [(x0, idy) for x0 in C.objects if F.obj[x0] == y]
    candidates += [(x0, k0) for x0 in C.objects for k0 in D.hom(F.obj[x0], y) if k0 != idy]
    for x0, k0 in candidates:
        if accept is not None and not accept(y, k0):
            continue
        if _is_terminal_arrow(F, y, x0, k0):
            return x0, k0
    return None


def _is_terminal_arrow(F: Functor, y: int, x0: int, k0: int) -> bool:
    # u ↦ k0∘F(u) must be a bijection C(x, x0) → D(F x, y) for every x
    C, D = F.source, F.target
    for x in C.objects:
        homs = C.hom(x, x0)
        if len(homs) != len(D.hom(F.obj[x], y)):
            return False
        if len({D.table[k0, F.mor[u]] for u in homs}) != len(homs):
            return False
    return True


def _factor_through(F: Functor, k0: int, x: int, x0: int, k: int) -> int:
    C, D = F.source, F.target
    for u in C.hom(x, x0):
        if D.table[k0, F.mor[u]] == k:
            return u
    raise AssertionError("terminal arrow failed to factor")


def find_right_adjoint(F: Functor, require_identity_counit: bool = False,
                       counit_ok: Callable | None = None) -> AdjunctionData | None:
    """Right adjoint of ``F`` from terminal objects of the commas ``F/y``, or ``None``.

    ``counit_ok(k)`` optionally restricts which counit components may be chosen
    (used for adjunctions that must live over a base).
    """
    C, D = F.source, F.target

    def accept(y, k):
        if require_identity_counit and not D.is_identity(k):
            return False
        return counit_ok is None or counit_ok(k)

    use = accept if (require_identity_counit or counit_ok is not None) else None
    rob, eps = [], []
    for y in D.objects:
        hit = _terminal_in_comma(F, y, use)
        if hit is None:
            return None
        rob.append(hit[0])
        eps.append(hit[1])
    rmor = []
    for d in range(D.morphism_count):
        y, y2 = D.morphisms[d]
        rmor.append(_factor_through(F, eps[y2], rob[y], rob[y2], D.table[d, eps[y]]))
    R = Functor(D, C, rob, rmor)
    FR = compose_functors(F, R)
    counit = NatTrans(FR, identity_functor(D), eps)
    unit_c = [_factor_through(F, eps[F.obj[c]], c, rob[F.obj[c]], D.identities[F.obj[c]])
              for c in C.objects]
    unit = NatTrans(identity_functor(C), compose_functors(R, F), unit_c)
    adj = AdjunctionData(F, R, unit, counit)
    if not adj.is_valid():
        raise AssertionError("assembled adjunction violates a triangle identity")
    return adj


def find_left_adjoint(F: Functor, require_identity_unit: bool = False,
                      unit_ok: Callable | None = None) -> AdjunctionData | None:
    """Left adjoint of ``F`` (initial objects of ``y/F``), computed on opposites."""
    adj = find_right_adjoint(F.op(), require_identity_unit, unit_ok)
    return None if adj is None else adj.op()


# ------------------------------------------------------------ isomorphism

def _signature(C: FinCat, x: int):
    return (len(C.hom(x, x)), sorted(len(C.hom(x, y)) for y in C.objects),
            sorted(len(C.hom(y, x)) for y in C.objects),
            sum(1 for m in C.hom(x, x) if C.is_iso(m)))


def find_isomorphism(C: FinCat, D: FinCat, over: tuple | None = None,
                     under: tuple | None = None) -> Functor | None:
    """An invertible functor ``φ: C → D`` or ``None``.

    ``over=(pC, pD)`` demands ``pD∘φ = pC``; ``under=(qC, qD)`` demands ``φ∘qC = qD``.
    """
    if C.object_count != D.object_count or C.morphism_count != D.morphism_count:
        return None
    n = C.object_count
    obj = [None] * n
    mor = [None] * C.morphism_count
    if under is not None:
        qC, qD = under
        for x in qC.source.objects:
            a, b = qC.obj[x], qD.obj[x]
            if obj[a] not in (None, b):
                return None
            obj[a] = b
        for m in range(qC.source.morphism_count):
            a, b = qC.mor[m], qD.mor[m]
            if mor[a] not in (None, b):
                return None
            mor[a] = b
        if len({o for o in obj if o is not None}) != sum(o is not None for o in obj):
            return None
    sig_c = [_signature(C, x) for x in C.objects]
    sig_d = [_signature(D, y) for y in D.objects]
    if sorted(map(repr, sig_c)) != sorted(map(repr, sig_d)):
        return None

    def obj_ok(x, y):
        if sig_c[x] != sig_d[y]:
            return False
        if over is not None and over[1].obj[y] != over[0].obj[x]:
            return False
        return True

    for x in C.objects:
        if obj[x] is not None and not obj_ok(x, obj[x]):
            return None

    def assign_objects(i, used):
        if i == n:
            result = _assign_morphisms(C, D, obj, list(mor), over)
            return result
        if obj[i] is not None:
            return assign_objects(i + 1, used)
        for y in D.objects:
            if y in used or not obj_ok(i, y):
                continue
            ok = all(len(C.hom(i, j)) == len(D.hom(y, obj[j])) and
                     len(C.hom(j, i)) == len(D.hom(obj[j], y))
                     for j in range(n) if obj[j] is not None)
            if not ok:
                continue
            obj[i] = y
            res = assign_objects(i + 1, used | {y})
            if res is not None:
                return res
            obj[i] = None
        return None

    for i in range(n):
        if obj[i] is not None:
            for j in range(n):
                if obj[j] is not None and len(C.hom(i, j)) != len(D.hom(obj[i], obj[j])):
                    return None
    mors = assign_objects(0, frozenset(o for o in obj if o is not None))
    if mors is None:
        return None
    return Functor(C, D, list(obj), mors)


def _assign_morphisms(C, D, obj, mor, over):
    inv = {}
    for m, t in enumerate(mor):
        if t is not None:
            if t in inv or D.morphisms[t] != (obj[C.dom(m)], obj[C.cod(m)]):
                return None
            inv[t] = m
    for a in C.objects:
        i, j = C.identities[a], D.identities[obj[a]]
        if mor[i] is None:
            if j in inv:
                return None
            mor[i] = j
            inv[j] = i
        elif mor[i] != j:
            return None

    def propagate(stack):
        # close the partial assignment under composition
        while stack:
            m = stack.pop()
            for other in list(range(C.morphism_count)):
                if mor[other] is None:
                    continue
                for g, f in ((other, m), (m, other)):
                    if C.cod(f) != C.dom(g):
                        continue
                    gf = C.table[g, f]
                    img = D.table[mor[g], mor[f]]
                    if mor[gf] is None:
                        if img in inv:
                            return False
                        mor[gf] = img
                        inv[img] = gf
                        trail.append(gf)
                        stack.append(gf)
                    elif mor[gf] != img:
                        return False
        return True

    def mor_ok(m, t):
        return over is None or over[1].mor[t] == over[0].mor[m]

    trail = []
    if not propagate([m for m in range(C.morphism_count) if mor[m] is not None]):
        return None
    if any(mor[m] is not None and not mor_ok(m, mor[m]) for m in range(C.morphism_count)):
        return None

    def search():
        free = [m for m in range(C.morphism_count) if mor[m] is None]
        if not free:
            return True
        m = free[0]
        for t in D.hom(obj[C.dom(m)], obj[C.cod(m)]):
            if t in inv or not mor_ok(m, t):
                continue
            mark = len(trail)
            mor[m] = t
            inv[t] = m
            trail.append(m)
            if propagate([m]) and all(mor_ok(x, mor[x]) for x in trail[mark:]) and search():
                return True
            for x in trail[mark:]:
                del inv[mor[x]]
                mor[x] = None
            del trail[mark:]
        return False

    if not search():
        return None
    return list(mor)
