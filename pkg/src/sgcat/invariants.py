"""Right actions of semigroups, the presheaves they induce on K(S) and D(S),
and the invariants those presheaves carry."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from ._search import Budget
from .cat import (
    DEFAULT_BUDGET,
    FiniteCategory,
    Functor,
    Retraction,
    build_karoubi,
    build_schutzcat,
    iter_equivalences_up_to_iso,
    skeleton,
)
from .core import Semigroup, idempotents, local_units_set, local_units_subsemigroup
from .errors import ActionAxiomViolation, OutOfRange, SizeCapExceeded, WitnessInvalid
from .greens import d_class_preorder, greens_data
from .localstruct import DEFAULT_CAP, PermGroup, perm_groups_isomorphic, schutzenberger_group


@dataclass(frozen=True)
class SAction:
    """A right action Q x S -> Q; ``table[q][s]`` is ``q.s``."""
    semigroup: Semigroup
    table: tuple[tuple[int, ...], ...]
    states: tuple[str, ...]

    @property
    def qsize(self) -> int:
        return len(self.table)

    def act(self, q: int, s: int) -> int:
        return self.table[q][s]

    def image(self, s: int) -> tuple[int, ...]:
        """Q.s, sorted."""
        return tuple(sorted({row[s] for row in self.table}))

    def rank(self, s: int) -> int:
        return len(self.image(s))

    def transformation(self, s: int) -> tuple[int, ...]:
        return tuple(row[s] for row in self.table)


def validate_action(S: Semigroup, qsize: int, table: Sequence[Sequence[int]],
                    states: Sequence[str] | None = None) -> SAction:
    if len(table) != qsize or any(len(row) != S.order for row in table):
        raise OutOfRange(f"action table must be {qsize} x {S.order}")
    for q, row in enumerate(table):
        for s, p in enumerate(row):
            if isinstance(p, bool) or not isinstance(p, int) or not 0 <= p < qsize:
                raise OutOfRange(f"q.s = {p!r} out of range at q={q}, s={s}")
    for q in range(qsize):
        for s in S.elements():
            qs = table[q][s]
            for t in S.elements():
                if table[qs][t] != table[q][S.mul(s, t)]:
                    raise ActionAxiomViolation(q, s, t)
    if states is None:
        states = [str(q) for q in range(qsize)]
    return SAction(S, tuple(tuple(r) for r in table), tuple(str(x) for x in states))


def is_faithful(A: SAction) -> bool:
    maps = {A.transformation(s) for s in A.semigroup.elements()}
    return len(maps) == A.semigroup.order


def right_regular_action(S: Semigroup) -> SAction:
    """S acting on itself by right multiplication."""
    return validate_action(S, S.order, S.table, S.names)


def relabel_states(A: SAction, perm: Sequence[int]) -> SAction:
    """Same action with state q renamed perm[q]."""
    inv = [0] * A.qsize
    for q, p in enumerate(perm):
        inv[p] = q
    table = [[perm[A.table[inv[p]][s]] for s in A.semigroup.elements()] for p in range(A.qsize)]
    states = [A.states[inv[p]] for p in range(A.qsize)]
    return validate_action(A.semigroup, A.qsize, table, states)


def twist_action(A: SAction, automorphism: Sequence[int]) -> SAction:
    """q .' x = q . automorphism(x)."""
    table = [[row[automorphism[x]] for x in A.semigroup.elements()] for row in A.table]
    return validate_action(A.semigroup, A.qsize, table, A.states)


def restrict_action(A: SAction, T: Semigroup, embedding: Sequence[int]) -> SAction:
    """Restriction to a subsemigroup T embedded by ``embedding``."""
    table = [[row[embedding[x]] for x in T.elements()] for row in A.table]
    return validate_action(T, A.qsize, table, A.states)


# presheaves ---------------------------------------------------------------

@dataclass(eq=False)
class Presheaf:
    """Contravariant functor from ``category`` into subsets of Q.

    ``maps[m]`` for m: a -> b is a dict from ``sets[b]`` to ``sets[a]``.
    """
    category: FiniteCategory
    sets: tuple[tuple[int, ...], ...]
    maps: tuple[dict, ...]
    action: SAction | None = None

    def check(self) -> str | None:
        C = self.category
        for m in range(C.n_morphisms):
            a, b = C.dom[m], C.cod[m]
            f = self.maps[m]
            if set(f) != set(self.sets[b]) or not set(f.values()) <= set(self.sets[a]):
                return f"morphism {m} does not map A(cod) into A(dom)"
        for a in range(C.n_objects):
            if any(x != y for x, y in self.maps[C.identity(a)].items()):
                return f"identity at object {a} does not act trivially"
        for (g, f), gf in C.composition.items():
            fg, ff, fgf = self.maps[g], self.maps[f], self.maps[gf]
            if any(fgf[x] != ff[fg[x]] for x in fg):
                return f"composition ({g}, {f}) not reversed"
        return None

    def is_faithful(self) -> bool:
        """Distinct parallel morphisms act differently on some point."""
        C = self.category
        for a in range(C.n_objects):
            for b in range(C.n_objects):
                actions = [tuple(sorted(self.maps[m].items())) for m in C.hom(a, b)]
                if len(set(actions)) != len(actions):
                    return False
        return True

    def pullback(self, F: Functor) -> Presheaf:
        """self∘F on F.source."""
        return Presheaf(F.source, tuple(self.sets[F.obj[a]] for a in range(F.source.n_objects)),
                        tuple(self.maps[F.mor[m]] for m in range(F.source.n_morphisms)), self.action)


def presheaf_A(A: SAction, K: FiniteCategory | None = None) -> Presheaf:
    """A_Q(e) = Qe on K(S), with q.(e, s, f) = q.s."""
    K = K if K is not None else build_karoubi(A.semigroup)
    sets = tuple(A.image(e) for e in K.objects)
    maps = []
    for (e, s, f) in K.payloads:
        maps.append({q: A.act(q, s) for q in A.image(e)})
    return Presheaf(K, sets, tuple(maps), A)


def presheaf_B(A: SAction, D: FiniteCategory | None = None) -> Presheaf:
    """B_Q(s) = Qs on D(S), with (q.s).(s, u, t) = q.u."""
    D = D if D is not None else build_schutzcat(A.semigroup)
    sets = tuple(A.image(s) for s in D.objects)
    maps = []
    for (s, u, t) in D.payloads:
        f: dict[int, int] = {}
        for q in range(A.qsize):
            if f.setdefault(A.act(q, s), A.act(q, u)) != A.act(q, u):
                raise RuntimeError(f"B_Q not well defined at {(s, u, t)}")
        maps.append(f)
    return Presheaf(D, sets, tuple(maps), A)


@dataclass(eq=False)
class PresheafMap:
    """Family of maps source(a) -> target(a) over a common base category."""
    source: Presheaf
    target: Presheaf
    components: tuple[dict, ...]

    def check(self) -> str | None:
        C = self.source.category
        for a in range(C.n_objects):
            comp = self.components[a]
            if set(comp) != set(self.source.sets[a]) or not set(comp.values()) <= set(self.target.sets[a]):
                return f"component at object {a} has wrong domain or codomain"
        for m in range(C.n_morphisms):
            a, b = C.dom[m], C.cod[m]
            src, tgt = self.source.maps[m], self.target.maps[m]
            for x in self.source.sets[b]:
                if self.components[a][src[x]] != tgt[self.components[b][x]]:
                    return f"naturality fails at morphism {m}, point {x}"
        return None

    def is_natural(self) -> bool:
        return self.check() is None

    def is_isomorphism(self) -> bool:
        return all(len(set(c.values())) == len(c) == len(self.target.sets[a])
                   for a, c in enumerate(self.components))


def _bijections(xs, ys, budget: Budget) -> Iterator[dict]:
    if len(xs) != len(ys):
        return
    for perm in itertools.permutations(ys):
        budget.tick()
        yield dict(zip(xs, perm))


def iter_presheaf_isomorphisms(P: Presheaf, Q: Presheaf, retraction: Retraction,
                               budget: Budget) -> Iterator[PresheafMap]:
    """Natural isomorphisms P => Q over the same category.

    Components are searched on skeleton representatives only; every other
    component is forced through the chosen isomorphism to its representative.
    """
    C = P.category
    reps = retraction.reps
    if any(len(P.sets[a]) != len(Q.sets[a]) for a in range(C.n_objects)):
        return

    def consistent(comp, a):
        for b in comp:
            for x, y in ((a, b), (b, a)) if a != b else ((a, a),):
                for m in C.hom(x, y):
                    src, tgt = P.maps[m], Q.maps[m]
                    if any(comp[x][src[p]] != tgt[comp[y][p]] for p in P.sets[y]):
                        return False
        return True

    def search(i, comp):
        if i == len(reps):
            yield dict(comp)
            return
        a = reps[i]
        for eta in _bijections(P.sets[a], Q.sets[a], budget):
            comp[a] = eta
            if consistent(comp, a):
                yield from search(i + 1, comp)
            del comp[a]

    for comp in search(0, {}):
        full = []
        for a in range(C.n_objects):
            r = retraction.rep_of[a]
            m = retraction.to_rep[a]  # a -> r, so P(m): P(r) -> P(a)
            full.append({P.maps[m][x]: Q.maps[m][comp[r][x]] for x in P.sets[r]})
        eta = PresheafMap(P, Q, tuple(full))
        if eta.check() is None:
            yield eta


def actions_equivalent(A: SAction, B: SAction, budget: int | None = DEFAULT_BUDGET):
    """Search for (F, eta) with F: K(S) -> K(T) an equivalence and eta: A_Q => A_R∘F an isomorphism.

    Returns None only when the search space is exhausted within budget;
    running out of budget raises SearchBudgetExceeded.
    """
    b = Budget(budget)
    K1, K2 = build_karoubi(A.semigroup), build_karoubi(B.semigroup)
    P1, P2 = presheaf_A(A, K1), presheaf_A(B, K2)
    _, r1 = skeleton(K1)
    for F in iter_equivalences_up_to_iso(K1, K2, b):
        eta = next(iter_presheaf_isomorphisms(P1, P2.pullback(F), r1, b), None)
        if eta is not None:
            return F, eta
    return None


# the poset of an action ---------------------------------------------------

@dataclass(frozen=True)
class ActionPoset:
    """Cyclic LU(S)-subsets q.LU(S), q in Q.E(S), ordered by reverse inclusion."""
    orbits: tuple[tuple[int, ...], ...]
    members: tuple[tuple[int, ...], ...]  # states of Q.E(S) generating each orbit
    leq: np.ndarray

    def __len__(self):
        return len(self.orbits)

    def node_of(self, q: int) -> int:
        for i, ms in enumerate(self.members):
            if q in ms:
                return i
        raise KeyError(q)


def action_poset(A: SAction) -> ActionPoset:
    S = A.semigroup
    E = idempotents(S)
    LU = sorted(local_units_set(S)) if E else []
    I = sorted({A.act(q, e) for q in range(A.qsize) for e in E})
    by_orbit: dict[tuple[int, ...], list[int]] = {}
    for q in I:
        by_orbit.setdefault(tuple(sorted({A.act(q, x) for x in LU})), []).append(q)
    nodes = sorted(by_orbit.items(), key=lambda kv: kv[1][0])
    orbits = tuple(o for o, _ in nodes)
    members = tuple(tuple(m) for _, m in nodes)
    k = len(orbits)
    leq = np.zeros((k, k), dtype=bool)
    for a in range(k):
        for b in range(k):
            leq[a, b] = set(orbits[b]) <= set(orbits[a])
    leq.setflags(write=False)
    return ActionPoset(orbits, members, leq)


def induced_poset_iso(F: Functor, eta: PresheafMap, A: SAction, B: SAction) -> tuple[int, ...]:
    """The map q.LU(S) -> eta_e(q).LU(T), checked to be a well-defined poset isomorphism."""
    P, P2 = action_poset(A), action_poset(B)
    K = eta.source.category
    f = []
    for i, ms in enumerate(P.members):
        images = set()
        for q in ms:
            for a, e in enumerate(K.objects):
                if A.act(q, e) == q:
                    images.add(P2.node_of(eta.components[a][q]))
        if len(images) != 1:
            raise WitnessInvalid(f"node {i} of P(Q) has images {sorted(images)}")
        f.append(images.pop())
    k = len(f)
    if any(bool(P.leq[a, b]) != bool(P2.leq[f[a], f[b]]) for a in range(k) for b in range(k)):
        raise WitnessInvalid("induced map is not an order embedding")
    if sorted(f) != list(range(len(P2))):
        raise WitnessInvalid("induced map is not surjective")
    return tuple(f)


# labeled preorders of D-classes -------------------------------------------

@dataclass(frozen=True)
class Label:
    regular: int
    group: PermGroup
    rank: int | None = None

    def render(self) -> str:
        r = "-" if self.rank is None else str(self.rank)
        return f"{self.regular}/{self.group.order}/{r}"


@dataclass(frozen=True)
class LabeledPreorder:
    nodes: tuple[tuple, ...]
    leq: np.ndarray
    labels: tuple[Label, ...]

    def __len__(self):
        return len(self.nodes)


def labeled_dl(S: Semigroup) -> LabeledPreorder:
    g = greens_data(S)
    pre = d_class_preorder(S)
    labels = tuple(Label(int(reg), schutzenberger_group(S, cls[0]))
                   for cls, reg in zip(g.d_classes, g.regular))
    return LabeledPreorder(pre.nodes, pre.leq, labels)


def labeled_dq(A: SAction) -> LabeledPreorder:
    base = labeled_dl(A.semigroup)
    labels = []
    for cls, lab in zip(base.nodes, base.labels):
        ranks = {A.rank(s) for s in cls}
        if len(ranks) != 1:
            raise RuntimeError(f"rank not constant on D-class {cls}: {sorted(ranks)}")
        labels.append(Label(lab.regular, lab.group, ranks.pop()))
    return LabeledPreorder(base.nodes, base.leq, tuple(labels))


def restrict_labeled(P: LabeledPreorder, keep: set) -> LabeledPreorder:
    """Drop the nodes not contained in ``keep``; node labels unchanged."""
    idx = [i for i, cls in enumerate(P.nodes) if set(cls) <= keep]
    leq = P.leq[np.ix_(idx, idx)].copy()
    leq.setflags(write=False)
    return LabeledPreorder(tuple(P.nodes[i] for i in idx), leq, tuple(P.labels[i] for i in idx))


def labeled_dl_lu(S: Semigroup) -> LabeledPreorder:
    """D_l(LU(S)) computed by deleting the D-classes of S outside LU(S)."""
    return restrict_labeled(labeled_dl(S), set(local_units_set(S)))


def labeled_dq_lu(A: SAction) -> LabeledPreorder:
    """D_Q(LU(S)) for the restriction of the action to LU(S)."""
    LU, emb = local_units_subsemigroup(A.semigroup)
    return labeled_dq(restrict_action(A, LU, emb))


def find_labeled_isomorphism(P: LabeledPreorder, Q: LabeledPreorder,
                             cap: int = DEFAULT_CAP) -> tuple[int, ...] | None:
    if max(len(P), len(Q)) > cap:
        raise SizeCapExceeded(f"labeled preorder above cap {cap}")
    if len(P) != len(Q):
        return None
    n = len(P)

    def compatible(a, b):
        la, lb = P.labels[a], Q.labels[b]
        return (la.regular == lb.regular and la.rank == lb.rank
                and bool(P.leq[a, a]) == bool(Q.leq[b, b])
                and perm_groups_isomorphic(la.group, lb.group, cap))

    cand = [[b for b in range(n) if compatible(a, b)] for a in range(n)]
    phi: list[int] = []

    def search():
        a = len(phi)
        if a == n:
            return True
        for b in cand[a]:
            if b in phi:
                continue
            if all(bool(P.leq[a, c]) == bool(Q.leq[b, phi[c]]) and
                   bool(P.leq[c, a]) == bool(Q.leq[phi[c], b]) for c in range(a)):
                phi.append(b)
                if search():
                    return True
                phi.pop()
        return False

    return tuple(phi) if search() else None


def labeled_preorders_isomorphic(P: LabeledPreorder, Q: LabeledPreorder, cap: int = DEFAULT_CAP) -> bool:
    return find_labeled_isomorphism(P, Q, cap) is not None
