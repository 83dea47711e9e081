"""Finite semigroups given by Cayley tables.

Elements are the integers ``0..n-1``; names are for display only.
Transformations act on the right: ``s * t`` means "apply s, then t".
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    EmptyGeneratorSet,
    EmptyLocalUnits,
    NonAssociative,
    OutOfRange,
    SemigroupError,
    UnknownElement,
)


@dataclass(frozen=True)
class Semigroup:
    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...]
    identity: int | None = None

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self):
        return len(self.table)

    def elements(self) -> range:
        return range(len(self.table))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def product(self, *xs: int) -> int:
        p = xs[0]
        for x in xs[1:]:
            p = self.table[p][x]
        return p

    def is_idempotent(self, a: int) -> bool:
        return self.table[a][a] == a

    def name(self, a: int) -> str:
        return self.names[a]

    def resolve(self, key) -> int:
        """Element index from a name or an index; names win."""
        key = str(key)
        if key in self.names:
            return self.names.index(key)
        try:
            i = int(key)
        except ValueError:
            raise UnknownElement(key) from None
        if not 0 <= i < self.order:
            raise UnknownElement(key)
        return i

    def __repr__(self):
        return f"Semigroup(order={self.order}, identity={self.identity})"


class SemigroupOne:
    """View of S^1: the base elements plus a formal identity with index ``n``.

    Never materialized into a table.
    """

    def __init__(self, base: Semigroup):
        self.base = base
        self.one = base.order

    def elements(self) -> range:
        return range(self.base.order + 1)

    def mul(self, a: int, b: int) -> int:
        if a == self.one:
            return b
        if b == self.one:
            return a
        return self.base.table[a][b]

    def right_multiples(self, s: int) -> frozenset[int]:
        """s S^1 = {s} union sS."""
        return frozenset(self.base.table[s]) | {s}

    def left_multiples(self, s: int) -> frozenset[int]:
        return frozenset(row[s] for row in self.base.table) | {s}

    def name(self, a: int) -> str:
        return "1" if a == self.one else self.base.names[a]


def _find_identity(table) -> int | None:
    n = len(table)
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            return e
    return None


def check_associative(table) -> tuple[int, int, int] | None:
    """First triple (i, j, k) with (ij)k != i(jk), or None."""
    n = len(table)
    for i in range(n):
        row = table[i]
        for j in range(n):
            ij = row[j]
            for k in range(n):
                if table[ij][k] != row[table[j][k]]:
                    return (i, j, k)
    return None


def from_cayley_table(table: Sequence[Sequence[int]], names: Sequence[str] | None = None) -> Semigroup:
    n = len(table)
    if n == 0:
        raise SemigroupError("empty table")
    rows = []
    for i, row in enumerate(table):
        if len(row) != n:
            raise OutOfRange(f"row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
                raise OutOfRange(f"entry ({i}, {j}) = {v!r} not in [0, {n})")
        rows.append(tuple(row))
    if names is None:
        names = [str(i) for i in range(n)]
    if len(names) != n or len(set(names)) != n:
        raise SemigroupError("names must be n distinct strings")
    bad = check_associative(rows)
    if bad is not None:
        raise NonAssociative(*bad)
    return Semigroup(tuple(rows), tuple(str(x) for x in names), _find_identity(rows))


@dataclass(frozen=True, order=True)
class Transformation:
    images: tuple[int, ...]

    def __post_init__(self):
        k = len(self.images)
        if any(not 0 <= x < k for x in self.images):
            raise OutOfRange(f"images {self.images} not all in [0, {k})")

    @classmethod
    def of(cls, *images: int) -> Transformation:
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    @property
    def rank(self) -> int:
        return len(set(self.images))

    def then(self, other: Transformation) -> Transformation:
        return Transformation(tuple(other.images[x] for x in self.images))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __str__(self):
        return "[" + " ".join(map(str, self.images)) + "]"


def generate_from_transformations(gens: Iterable[Transformation | Sequence[int]],
                                  names: Sequence[str] | None = None):
    """Close ``gens`` under composition.

    Returns ``(S, reps)``; elements are numbered in breadth-first discovery
    order and ``reps[i]`` is the transformation realizing element ``i``.
    """
    gens = [g if isinstance(g, Transformation) else Transformation(tuple(g)) for g in gens]
    if not gens:
        raise EmptyGeneratorSet("at least one generator is required")
    if len({g.degree for g in gens}) != 1:
        raise SemigroupError("generators must share one degree")
    reps: list[Transformation] = []
    index: dict[Transformation, int] = {}
    queue = deque()
    for g in gens:
        if g not in index:
            index[g] = len(reps)
            reps.append(g)
            queue.append(g)
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x.then(g)
            if y not in index:
                index[y] = len(reps)
                reps.append(y)
                queue.append(y)
    table = [[index[a.then(b)] for b in reps] for a in reps]
    if names is None:
        names = [str(r) for r in reps]
    return from_cayley_table(table, names), reps


def idempotents(S: Semigroup) -> tuple[int, ...]:
    return tuple(i for i in S.elements() if S.table[i][i] == i)


def is_regular(S: Semigroup, s: int) -> bool:
    t = S.table
    return any(t[t[s][x]][s] == s for x in S.elements())


def opposite(S: Semigroup) -> Semigroup:
    n = S.order
    table = tuple(tuple(S.table[j][i] for j in range(n)) for i in range(n))
    return Semigroup(table, S.names, S.identity)


def subsemigroup(S: Semigroup, elements: Iterable[int]):
    """Induced semigroup on a closed subset; returns ``(T, embedding)``."""
    emb = tuple(sorted(set(elements)))
    if not emb:
        raise SemigroupError("empty subset")
    pos = {x: i for i, x in enumerate(emb)}
    try:
        table = tuple(tuple(pos[S.table[a][b]] for b in emb) for a in emb)
    except KeyError as exc:
        raise SemigroupError(f"subset not closed: product {exc.args[0]} escapes") from None
    return Semigroup(table, tuple(S.names[x] for x in emb), _find_identity(table)), emb


def local_units_set(S: Semigroup) -> frozenset[int]:
    E = idempotents(S)
    t = S.table
    return frozenset(t[t[e][s]][f] for e in E for s in S.elements() for f in E)


def local_units_subsemigroup(S: Semigroup):
    """LU(S) = E(S) S E(S) with its inclusion map."""
    if not idempotents(S):
        raise EmptyLocalUnits("S has no idempotents, so LU(S) is empty")
    return subsemigroup(S, local_units_set(S))


def has_local_units(S: Semigroup) -> bool:
    return len(local_units_set(S)) == S.order


def relabel(S: Semigroup, perm: Sequence[int]) -> Semigroup:
    """Isomorphic copy in which old element ``i`` becomes ``perm[i]``."""
    n = S.order
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    table = tuple(tuple(perm[S.table[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
    names = tuple(S.names[inv[a]] for a in range(n))
    return Semigroup(table, names, None if S.identity is None else perm[S.identity])
