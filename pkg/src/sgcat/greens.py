"""Green's relations, principal ideals and the preorder of D-classes."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import Semigroup, SemigroupOne, idempotents


def principal_right_ideal(S: Semigroup, s: int) -> frozenset[int]:
    return SemigroupOne(S).right_multiples(s)


def principal_left_ideal(S: Semigroup, s: int) -> frozenset[int]:
    return SemigroupOne(S).left_multiples(s)


def principal_ideal(S: Semigroup, s: int) -> frozenset[int]:
    S1 = SemigroupOne(S)
    right = S1.right_multiples(s)
    return frozenset(S1.mul(x, r) for x in S1.elements() for r in right)


def _classes(le: np.ndarray) -> tuple[int, ...]:
    # class id = least element of the equivalence class of the preorder
    eq = le & le.T
    return tuple(int(np.flatnonzero(eq[s])[0]) for s in range(len(le)))


@dataclass(frozen=True)
class GreensData:
    r: tuple[int, ...]
    l: tuple[int, ...]
    j: tuple[int, ...]
    h: tuple[int, ...]
    d: tuple[int, ...]
    le_r: np.ndarray
    le_l: np.ndarray
    le_j: np.ndarray
    d_classes: tuple[tuple[int, ...], ...]
    regular: tuple[bool, ...]
    d_pos: tuple[int, ...]  # element -> position of its D-class in d_classes

    def d_index(self, s: int) -> int:
        return self.d_pos[s]

    def h_class(self, s: int) -> tuple[int, ...]:
        return tuple(x for x in range(len(self.h)) if self.h[x] == self.h[s])

    def r_class(self, s: int) -> tuple[int, ...]:
        return tuple(x for x in range(len(self.r)) if self.r[x] == self.r[s])

    def l_class(self, s: int) -> tuple[int, ...]:
        return tuple(x for x in range(len(self.l)) if self.l[x] == self.l[s])

    def is_regular_element(self, s: int) -> bool:
        return self.regular[self.d_index(s)]


@lru_cache(maxsize=256)
def greens_data(S: Semigroup) -> GreensData:
    n = S.order
    le_r = np.zeros((n, n), dtype=bool)
    le_l = np.zeros((n, n), dtype=bool)
    le_j = np.zeros((n, n), dtype=bool)
    for t in S.elements():
        le_r[list(principal_right_ideal(S, t)), t] = True
        le_l[list(principal_left_ideal(S, t)), t] = True
        le_j[list(principal_ideal(S, t)), t] = True
    for m in (le_r, le_l, le_j):
        m.setflags(write=False)

    r, l, j = _classes(le_r), _classes(le_l), _classes(le_j)
    h_key = {}
    h = tuple(h_key.setdefault((r[s], l[s]), s) for s in range(n))

    # D = join of R and L
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in range(n):
        for cls in (r, l):
            a, b = find(s), find(cls[s])
            if a != b:
                parent[max(a, b)] = min(a, b)
    roots = [find(s) for s in range(n)]
    least = {}
    for s in range(n):
        least.setdefault(roots[s], s)
    d = tuple(least[roots[s]] for s in range(n))
    if d != j:
        raise RuntimeError(f"internal error: D != J on a finite semigroup ({d} vs {j})")

    ids = sorted(set(d))
    d_classes = tuple(tuple(s for s in range(n) if d[s] == c) for c in ids)
    E = set(idempotents(S))
    regular = tuple(any(x in E for x in cls) for cls in d_classes)
    d_pos = tuple(ids.index(d[s]) for s in range(n))
    return GreensData(r, l, j, h, d, le_r, le_l, le_j, d_classes, regular, d_pos)


@dataclass(frozen=True)
class DClassPreorder:
    nodes: tuple[tuple[int, ...], ...]
    leq: np.ndarray  # leq[a, b] iff node a is below node b

    def __len__(self):
        return len(self.nodes)

    def hasse_edges(self) -> list[tuple[int, int]]:
        return hasse_edges(self.leq)


def hasse_edges(leq: np.ndarray) -> list[tuple[int, int]]:
    """Covering pairs (a, b), a strictly below b, for a partial order matrix."""
    n = len(leq)
    strict = leq & ~leq.T
    edges = []
    for a in range(n):
        for b in range(n):
            if strict[a, b] and not any(strict[a, c] and strict[c, b] for c in range(n)):
                edges.append((a, b))
    return edges


def d_class_preorder(S: Semigroup) -> DClassPreorder:
    g = greens_data(S)
    k = len(g.d_classes)
    leq = np.zeros((k, k), dtype=bool)
    for a, da in enumerate(g.d_classes):
        for b, db in enumerate(g.d_classes):
            leq[a, b] = bool(g.le_j[np.ix_(da, db)].any())
    leq.setflags(write=False)
    return DClassPreorder(g.d_classes, leq)


def is_regular_semigroup(S: Semigroup) -> bool:
    return all(greens_data(S).regular)
