"""Graphviz DOT text for the finite structures computed here.

Every emitter sorts its output so identical inputs give identical text.
"""
from __future__ import annotations

from .cat import FiniteCategory
from .core import Semigroup
from .greens import d_class_preorder, greens_data, hasse_edges
from .invariants import ActionPoset, LabeledPreorder, SAction


def _quote(s) -> str:
    s = str(s).replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    return '"' + s + '"'


def _digraph(name: str, nodes: list[tuple[str, str]], edges: list[tuple[str, str, str | None]],
             rankdir: str = "BT") -> str:
    lines = [f"digraph {_quote(name)} {{", f"  rankdir={rankdir};", "  node [shape=box];"]
    for key, label in nodes:
        lines.append(f"  {_quote(key)} [label={_quote(label)}];")
    for a, b, label in edges:
        attr = "" if label is None else f" [label={_quote(label)}]"
        lines.append(f"  {_quote(a)} -> {_quote(b)}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dclasses_dot(S: Semigroup, name: str = "S") -> str:
    """Hasse diagram of the D-class order; each box shows the class, its size and regularity."""
    g = greens_data(S)
    pre = d_class_preorder(S)
    nodes = []
    for i, cls in enumerate(pre.nodes):
        members = ",".join(S.name(s) for s in cls)
        tag = "regular" if g.regular[i] else "non-regular"
        nodes.append((f"D{i}", f"{{{members}}}\n|D|={len(cls)} {tag}"))
    edges = [(f"D{a}", f"D{b}", None) for a, b in pre.hasse_edges()]
    return _digraph(f"dclasses_{name}", nodes, edges)


def category_dot(C: FiniteCategory, name: str = "C") -> str:
    """Objects as nodes, one edge per nonempty hom-set labeled with its size."""
    S = C.semigroup

    def label(x):
        return S.name(x) if S is not None else str(x)

    nodes = [(f"o{i}", label(x)) for i, x in enumerate(C.objects)]
    edges = []
    for a in range(C.n_objects):
        for b in range(C.n_objects):
            k = len(C.hom(a, b))
            if k:
                edges.append((f"o{a}", f"o{b}", str(k)))
    return _digraph(f"{C.kind or 'category'}_{name}", nodes, edges, rankdir="LR")


def action_poset_dot(A: SAction, P: ActionPoset, name: str = "P") -> str:
    nodes = [(f"p{i}", "{" + ",".join(A.states[q] for q in orb) + "}") for i, orb in enumerate(P.orbits)]
    edges = [(f"p{a}", f"p{b}", None) for a, b in hasse_edges(P.leq)]
    return _digraph(f"poset_{name}", nodes, edges)


def labeled_dot(S: Semigroup, P: LabeledPreorder, name: str = "L") -> str:
    """Labels drawn as eps/|G|/r, with '-' when no rank is attached."""
    nodes = [(f"D{i}", "{" + ",".join(S.name(s) for s in cls) + "}\n" + lab.render())
             for i, (cls, lab) in enumerate(zip(P.nodes, P.labels))]
    edges = [(f"D{a}", f"D{b}", None) for a, b in hasse_edges(P.leq)]
    return _digraph(f"labeled_{name}", nodes, edges)
