"""Deterministic Graphviz text for categories, functors and factorizations."""
from __future__ import annotations

from .core import FinCat, Functor


def _generators(C: FinCat) -> list:
    """A greedy generating set.

    Indecomposable arrows are tried first, so composites such as a commuting
    diagonal are never drawn when their factors already generate them.
    """
    ids = set(C.identities)
    decomposable = {C.table[g, f] for (g, f) in C.table if g not in ids and f not in ids}
    order = sorted(range(C.morphism_count), key=lambda m: (m in decomposable, m))
    reach = set(ids)
    gens = []
    for m in order:
        if m in reach:
            continue
        gens.append(m)
        frontier = [m]
        reach.add(m)
        while frontier:
            x = frontier.pop()
            for g in gens:
                for y in ((C.table[g, x],) if C.dom(g) == C.cod(x) else ()) + \
                         ((C.table[x, g],) if C.dom(x) == C.cod(g) else ()):
                    if y not in reach:
                        reach.add(y)
                        frontier.append(y)
    return sorted(gens)


def _body(C: FinCat, prefix: str, indent: str) -> list:
    lines = [f'{indent}"{prefix}{a}" [label="{a}"];' for a in C.objects]
    for m in _generators(C):
        d, c = C.morphisms[m]
        lines.append(f'{indent}"{prefix}{d}" -> "{prefix}{c}" [label="{m}"];')
    return lines


def _cluster(C: FinCat, name: str, prefix: str) -> list:
    return ([f"  subgraph cluster_{name} {{", f'    label="{name}";']
            + _body(C, prefix, "    ") + ["  }"])


def _object_edges(F: Functor, src: str, tgt: str, label: str) -> list:
    return [f'  "{src}{a}" -> "{tgt}{F.obj[a]}" [style=dashed, label="{label}"];'
            for a in F.source.objects]


def export_dot(value) -> str:
    """DOT text: objects as nodes, generating arrows as edges, functors as clusters."""
    from .factor import FactorizationResult
    if isinstance(value, FinCat):
        lines = ["digraph C {"] + _body(value, "", "  ")
    elif isinstance(value, Functor):
        lines = (["digraph F {"] + _cluster(value.source, "source", "s")
                 + _cluster(value.target, "target", "t")
                 + _object_edges(value, "s", "t", "F"))
    elif isinstance(value, FactorizationResult):
        lines = (["digraph factorization {"] + _cluster(value.q.source, "A", "a")
                 + _cluster(value.mid, "M", "m") + _cluster(value.s.target, "B", "b")
                 + _object_edges(value.q, "a", "m", "q") + _object_edges(value.s, "m", "b", "s"))
    else:
        raise TypeError(f"cannot export {type(value).__name__}")
    return "\n".join(lines + ["}"]) + "\n"
