"""Schützenberger groups, local monoids, local divisors and small isomorphism tests."""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from ._search import Budget, iter_isomorphisms
from .core import Semigroup, SemigroupOne, subsemigroup
from .errors import NotIdempotent, SizeCapExceeded
from .greens import greens_data, principal_ideal

DEFAULT_CAP = 256

Perm = tuple[int, ...]


@dataclass(frozen=True)
class PermGroup:
    """A group of permutations of ``carrier``.

    A permutation ``p`` sends ``carrier[i]`` to ``carrier[p[i]]``; products
    are read left to right (``p * q`` applies p first).
    """

    carrier: tuple
    elements: frozenset

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return tuple(range(len(self.carrier)))

    @staticmethod
    def mul(p: Perm, q: Perm) -> Perm:
        return tuple(q[i] for i in p)

    @staticmethod
    def inverse(p: Perm) -> Perm:
        inv = [0] * len(p)
        for i, x in enumerate(p):
            inv[x] = i
        return tuple(inv)

    def element_order(self, p: Perm) -> int:
        k, q = 1, p
        while q != self.identity:
            q = self.mul(q, p)
            k += 1
        return k

    def sorted_elements(self) -> list[Perm]:
        return sorted(self.elements)

    def is_abelian(self) -> bool:
        els = self.sorted_elements()
        return all(self.mul(a, b) == self.mul(b, a) for a in els for b in els)

    def is_group(self) -> bool:
        m = len(self.carrier)
        if self.identity not in self.elements:
            return False
        for p in self.elements:
            if sorted(p) != list(range(m)) or self.inverse(p) not in self.elements:
                return False
        return all(self.mul(p, q) in self.elements for p in self.elements for q in self.elements)

    def generators(self) -> list[Perm]:
        """Greedy generating set, deterministic."""
        gens: list[Perm] = []
        span = {self.identity}
        for p in self.sorted_elements():
            if p not in span:
                gens.append(p)
                span = _closure(gens, self.identity)
        return gens

    def is_free_transitive(self) -> bool:
        m = len(self.carrier)
        return self.order == m and {p[0] for p in self.elements} == set(range(m))

    @classmethod
    def from_maps(cls, carrier: Sequence, maps: Iterable[Sequence]) -> PermGroup:
        """Build from maps given as image tuples aligned with ``carrier``."""
        pos = {x: i for i, x in enumerate(carrier)}
        return cls(tuple(carrier), frozenset(tuple(pos[y] for y in img) for img in maps))

    @classmethod
    def regular(cls, elements: Sequence, mul: Callable) -> PermGroup:
        """Right regular representation of an abstract finite group."""
        return cls.from_maps(elements, ([mul(x, g) for x in elements] for g in elements))


def _closure(gens: list[Perm], identity: Perm) -> set[Perm]:
    span = {identity}
    queue = deque([identity])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = PermGroup.mul(p, g)
            if q not in span:
                span.add(q)
                queue.append(q)
    return span


def schutzenberger_group(S: Semigroup, h: int, side: str = "left") -> PermGroup:
    """Translations of the H-class of ``h`` by elements of S^1.

    ``side="left"`` collects x -> u x, ``side="right"`` collects x -> x u,
    keeping those that map the H-class into itself.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    H = greens_data(S).h_class(h)
    Hset = set(H)
    S1 = SemigroupOne(S)
    maps = set()
    for u in S1.elements():
        if side == "left":
            img = tuple(S1.mul(u, x) for x in H)
        else:
            img = tuple(S1.mul(x, u) for x in H)
        if Hset.issuperset(img):
            maps.add(img)
    return PermGroup.from_maps(H, maps)


def local_monoid(S: Semigroup, e: int) -> Semigroup:
    """eSe with identity e."""
    if not S.is_idempotent(e):
        raise NotIdempotent(f"element {S.name(e)} is not idempotent")
    t = S.table
    M, _ = subsemigroup(S, {t[t[e][s]][e] for s in S.elements()})
    return M


@dataclass(frozen=True)
class LocalDivisor:
    element: int
    carrier: tuple[int, ...]  # sS^1 ∩ S^1 s, as elements of S
    table: tuple[tuple[int, ...], ...]  # positions in carrier

    @property
    def identity(self) -> int:
        return self.carrier.index(self.element)

    def mul(self, u: int, v: int) -> int:
        pos = self.carrier.index
        return self.carrier[self.table[pos(u)][pos(v)]]

    def to_semigroup(self, names: Sequence[str] | None = None) -> Semigroup:
        if names is None:
            names = [str(x) for x in self.carrier]
        else:
            names = [names[x] for x in self.carrier]
        return Semigroup(self.table, tuple(names), self.identity)

    def units(self) -> tuple[int, ...]:
        s = self.element
        return tuple(u for u in self.carrier
                     if any(self.mul(u, v) == s == self.mul(v, u) for v in self.carrier))

    def unit_group(self) -> PermGroup:
        return PermGroup.regular(self.units(), self.mul)


def divisor_witnesses(S: Semigroup, s: int, u: int) -> list[int]:
    """All x in S^1 with x s = u, base elements first, formal identity last."""
    S1 = SemigroupOne(S)
    return [x for x in S1.elements() if S1.mul(x, s) == u]


def local_divisor(S: Semigroup, s: int) -> LocalDivisor:
    S1 = SemigroupOne(S)
    carrier = tuple(sorted(S1.right_multiples(s) & S1.left_multiples(s)))
    pos = {x: i for i, x in enumerate(carrier)}
    rows = []
    for u in carrier:
        x = divisor_witnesses(S, s, u)[0]
        rows.append(tuple(pos[S1.mul(x, v)] for v in carrier))
    return LocalDivisor(s, carrier, tuple(rows))


def local_divisor_is_well_defined(S: Semigroup, s: int) -> bool:
    """Every choice of factor x (u = x s) gives the same product x v."""
    S1 = SemigroupOne(S)
    carrier = S1.right_multiples(s) & S1.left_multiples(s)
    for u in carrier:
        for v in carrier:
            if len({S1.mul(x, v) for x in divisor_witnesses(S, s, u)}) != 1:
                return False
    return True


def perm_groups_isomorphic(G: PermGroup, H: PermGroup, cap: int = DEFAULT_CAP) -> bool:
    if max(G.order, H.order) > cap:
        raise SizeCapExceeded(f"group order above cap {cap}")
    if G.order != H.order:
        return False
    g_orders = Counter(G.element_order(p) for p in G.elements)
    h_orders = Counter(H.element_order(p) for p in H.elements)
    if g_orders != h_orders or G.is_abelian() != H.is_abelian():
        return False

    gens = G.generators()
    by_order: dict[int, list[Perm]] = {}
    for p in H.sorted_elements():
        by_order.setdefault(H.element_order(p), []).append(p)
    choices = [by_order[G.element_order(g)] for g in gens]

    def extends(images) -> bool:
        phi = {G.identity: H.identity}
        queue = deque([G.identity])
        while queue:
            p = queue.popleft()
            for g, img in zip(gens, images):
                q = G.mul(p, g)
                v = H.mul(phi[p], img)
                if q in phi:
                    if phi[q] != v:
                        return False
                else:
                    phi[q] = v
                    queue.append(q)
        return len(set(phi.values())) == G.order

    def backtrack(i, images):
        if i == len(gens):
            return extends(images)
        return any(backtrack(i + 1, images + [c]) for c in choices[i])

    return backtrack(0, [])


def _element_signature(S: Semigroup, s: int):
    S1 = SemigroupOne(S)
    powers, p = [], s
    while p not in powers:
        powers.append(p)
        p = S.mul(p, s)
    return (S.is_idempotent(s), s == S.identity, len(S1.right_multiples(s)),
            len(S1.left_multiples(s)), len(principal_ideal(S, s)),
            len(powers), powers.index(p))


def find_semigroup_isomorphism(S: Semigroup, T: Semigroup, cap: int = DEFAULT_CAP,
                               budget: int | None = None) -> tuple[int, ...] | None:
    if max(S.order, T.order) > cap:
        raise SizeCapExceeded(f"semigroup order above cap {cap}")
    if S.order != T.order:
        return None
    sig_s = [_element_signature(S, x) for x in S.elements()]
    sig_t = [_element_signature(T, x) for x in T.elements()]
    if Counter(sig_s) != Counter(sig_t):
        return None
    candidates = [[y for y in T.elements() if sig_t[y] == sig_s[x]] for x in S.elements()]
    return next(iter_isomorphisms(S.order, S.mul, T.mul, candidates, Budget(budget)), None)


def semigroups_isomorphic(S: Semigroup, T: Semigroup, cap: int = DEFAULT_CAP) -> bool:
    return find_semigroup_isomorphism(S, T, cap) is not None


monoids_isomorphic = semigroups_isomorphic
