"""Explicit finite categories, the Karoubi envelope K(S) and the Schützenberger category D(S).

Composition follows the categorical convention: ``compose(g, f)`` is
``g∘f`` and needs ``dom(g) == cod(f)``.  Triples keep their order from the
algebra: ``(e, s, f)`` in K(S) and ``(s, u, t)`` in D(S) are arrows from the
last component to the first, so ``compose((s,u,t), (t,v,r))`` is written
``(s,u,t)(t,v,r)`` and lands in ``hom(r, s)``.
"""
from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from typing import Callable, Hashable, Iterator, Sequence

from ._search import Budget, iter_isomorphisms
from .core import Semigroup, SemigroupOne, idempotents
from .localstruct import PermGroup

DEFAULT_BUDGET = 10**6


class FiniteCategory:
    """A finite category given by explicit tables.

    Objects and morphisms are addressed by index.  ``objects[i]`` is a
    display/lookup label and ``payloads[m]`` the data carried by morphism m.
    """

    def __init__(self, objects: Sequence[Hashable], dom: Sequence[int], cod: Sequence[int],
                 payloads: Sequence[Hashable], identities: Sequence[int],
                 composition: dict[tuple[int, int], int], *,
                 kind: str = "generic", semigroup: Semigroup | None = None):
        self.objects = tuple(objects)
        self.dom = tuple(dom)
        self.cod = tuple(cod)
        self.payloads = tuple(payloads)
        self.identities = tuple(identities)
        self.composition = dict(composition)
        self.kind = kind
        self.semigroup = semigroup
        self._object_index = {o: i for i, o in enumerate(self.objects)}
        self._payload_index = {p: i for i, p in enumerate(self.payloads)}
        hom: dict[tuple[int, int], list[int]] = {}
        for m, (a, b) in enumerate(zip(self.dom, self.cod)):
            hom.setdefault((a, b), []).append(m)
        self._hom = {k: tuple(v) for k, v in hom.items()}
        into: dict[int, list[int]] = {}
        for m, b in enumerate(self.cod):
            into.setdefault(b, []).append(m)
        self._into = {k: tuple(v) for k, v in into.items()}

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.payloads)

    def hom(self, a: int, b: int) -> tuple[int, ...]:
        """Morphisms a -> b."""
        return self._hom.get((a, b), ())

    def endomorphisms(self, a: int) -> tuple[int, ...]:
        return self.hom(a, a)

    def identity(self, a: int) -> int:
        return self.identities[a]

    def is_identity(self, m: int) -> bool:
        return self.identities[self.dom[m]] == m

    def compose(self, g: int, f: int) -> int:
        try:
            return self.composition[g, f]
        except KeyError:
            raise ValueError(f"morphisms {g} and {f} are not composable") from None

    def compose_or_none(self, g: int, f: int) -> int | None:
        return self.composition.get((g, f))

    def object_index(self, label) -> int:
        return self._object_index[label]

    def morphism_index(self, payload) -> int:
        return self._payload_index[payload]

    def has_payload(self, payload) -> bool:
        return payload in self._payload_index

    def check_axioms(self) -> str | None:
        """Describe the first violated category law, or None."""
        for m in range(self.n_morphisms):
            if self.compose_or_none(m, self.identities[self.dom[m]]) != m:
                return f"right identity fails at morphism {m}"
            if self.compose_or_none(self.identities[self.cod[m]], m) != m:
                return f"left identity fails at morphism {m}"
        for (g, f), gf in self.composition.items():
            if self.dom[g] != self.cod[f]:
                return f"composite defined on non-composable pair ({g}, {f})"
            if self.dom[gf] != self.dom[f] or self.cod[gf] != self.cod[g]:
                return f"composite of ({g}, {f}) has wrong endpoints"
        for g in range(self.n_morphisms):
            for f in self.hom_into(self.dom[g]):
                if (g, f) not in self.composition:
                    return f"composite of ({g}, {f}) missing"
                gf = self.composition[g, f]
                for h in self.hom_into(self.dom[f]):
                    if self.composition[gf, h] != self.composition[g, self.composition[f, h]]:
                        return f"associativity fails at ({g}, {f}, {h})"
        return None

    def hom_into(self, b: int) -> tuple[int, ...]:
        """All morphisms with codomain b."""
        return self._into.get(b, ())

    def __eq__(self, other):
        if not isinstance(other, FiniteCategory):
            return NotImplemented
        return (self.objects, self.dom, self.cod, self.payloads, self.identities, self.composition) == (
            other.objects, other.dom, other.cod, other.payloads, other.identities, other.composition)

    __hash__ = None

    def __repr__(self):
        return f"FiniteCategory(kind={self.kind!r}, objects={self.n_objects}, morphisms={self.n_morphisms})"


def _from_rule(objects, arrows, identity_payload: Callable, compose_payload: Callable, **kw) -> FiniteCategory:
    """Category from (dom label, cod label, payload) arrows and a payload-level composition."""
    obj_index = {o: i for i, o in enumerate(objects)}
    payloads = [p for _, _, p in arrows]
    index = {p: i for i, p in enumerate(payloads)}
    dom = [obj_index[a] for a, _, _ in arrows]
    cod = [obj_index[b] for _, b, _ in arrows]
    identities = [index[identity_payload(o)] for o in objects]
    into: dict[int, list[int]] = {}
    for m, b in enumerate(cod):
        into.setdefault(b, []).append(m)
    composition = {}
    for g in range(len(payloads)):
        for f in into.get(dom[g], ()):
            composition[g, f] = index[compose_payload(payloads[g], payloads[f])]
    return FiniteCategory(objects, dom, cod, payloads, identities, composition, **kw)


def build_karoubi(S: Semigroup) -> FiniteCategory:
    """K(S): objects E(S), arrows (e, s, f) from f to e with s in eSf."""
    E = idempotents(S)
    if not E:
        warnings.warn("semigroup has no idempotents; K(S) is empty", stacklevel=2)
        return FiniteCategory((), (), (), (), (), {}, kind="karoubi", semigroup=S)
    t = S.table
    arrows = []
    for e in E:
        for f in E:
            for s in sorted({t[t[e][x]][f] for x in S.elements()}):
                arrows.append((f, e, (e, s, f)))
    return _from_rule(E, arrows, lambda e: (e, e, e),
                      lambda g, f: (g[0], t[g[1]][f[1]], f[2]),
                      kind="karoubi", semigroup=S)


def d_hom_set(S: Semigroup, s: int, t: int) -> list[int]:
    """Middles u of arrows t -> s in D(S): sS^1 ∩ S^1 t."""
    S1 = SemigroupOne(S)
    return sorted(S1.right_multiples(s) & S1.left_multiples(t))


def build_schutzcat(S: Semigroup) -> FiniteCategory:
    """D(S): objects S, arrows (s, u, t) from t to s with u in sS^1 ∩ S^1 t."""
    S1 = SemigroupOne(S)
    arrows = []
    for s in S.elements():
        for t in S.elements():
            for u in d_hom_set(S, s, t):
                arrows.append((t, s, (s, u, t)))
    witness: dict[tuple[int, int], int] = {}
    for t in S.elements():
        for x in S1.elements():  # least witness first: base elements, then the formal identity
            witness.setdefault((t, S1.mul(x, t)), x)

    def compose(g, f):
        s, u, t = g
        _, v, r = f
        return (s, S1.mul(witness[t, u], v), r)

    return _from_rule(tuple(S.elements()), arrows, lambda s: (s, s, s), compose,
                      kind="schutzenberger", semigroup=S)


def _full_sub(C: FiniteCategory, objs: Sequence[int]):
    objs = sorted(set(objs))
    new_obj = {a: i for i, a in enumerate(objs)}
    keep = [m for m in range(C.n_morphisms) if C.dom[m] in new_obj and C.cod[m] in new_obj]
    new_mor = {m: i for i, m in enumerate(keep)}
    composition = {(new_mor[g], new_mor[f]): new_mor[gf]
                   for (g, f), gf in C.composition.items() if g in new_mor and f in new_mor}
    sub = FiniteCategory([C.objects[a] for a in objs], [new_obj[C.dom[m]] for m in keep],
                         [new_obj[C.cod[m]] for m in keep], [C.payloads[m] for m in keep],
                         [new_mor[C.identities[a]] for a in objs], composition,
                         kind="generic", semigroup=C.semigroup)
    return sub, tuple(keep)


def full_subcategory(C: FiniteCategory, objs: Sequence[int]) -> FiniteCategory:
    """Full subcategory on the given object indices."""
    return _full_sub(C, objs)[0]


def flip_triple(p):
    """Canonical relabeling of triples under duality: (s, u, t) -> (t, u, s)."""
    return (p[2], p[1], p[0])


def opposite_category(C: FiniteCategory, relabel: Callable | None = None) -> FiniteCategory:
    payloads = C.payloads if relabel is None else [relabel(p) for p in C.payloads]
    composition = {(f, g): gf for (g, f), gf in C.composition.items()}
    return FiniteCategory(C.objects, C.cod, C.dom, payloads, C.identities, composition,
                          kind="generic", semigroup=C.semigroup)


def payload_isomorphic(C: FiniteCategory, D: FiniteCategory) -> bool:
    """True iff matching equal payloads and object labels is an isomorphism C -> D."""
    if set(C.objects) != set(D.objects) or set(C.payloads) != set(D.payloads):
        return False
    if C.n_morphisms != D.n_morphisms or C.n_objects != D.n_objects:
        return False
    mor = [D.morphism_index(p) for p in C.payloads]
    obj = [D.object_index(o) for o in C.objects]
    F = Functor(C, D, tuple(obj), tuple(mor))
    return check_functor(F) is None


def inverse_of(C: FiniteCategory, m: int) -> int | None:
    a, b = C.dom[m], C.cod[m]
    for g in C.hom(b, a):
        if C.compose(g, m) == C.identity(a) and C.compose(m, g) == C.identity(b):
            return g
    return None


def is_isomorphism(C: FiniteCategory, m: int) -> bool:
    return inverse_of(C, m) is not None


def objects_isomorphic(C: FiniteCategory, a: int, b: int) -> bool:
    return any(is_isomorphism(C, m) for m in C.hom(a, b))


def automorphisms(C: FiniteCategory, a: int) -> tuple[int, ...]:
    return tuple(m for m in C.endomorphisms(a) if is_isomorphism(C, m))


def automorphism_group_at(C: FiniteCategory, a: int) -> PermGroup:
    return PermGroup.regular(automorphisms(C, a), lambda x, g: C.compose(g, x))


def endomorphism_monoid(C: FiniteCategory, a: int) -> Semigroup:
    """End(a) with product m * n = m∘n, elements ordered by morphism index."""
    ends = C.endomorphisms(a)
    pos = {m: i for i, m in enumerate(ends)}
    table = tuple(tuple(pos[C.compose(m, n)] for n in ends) for m in ends)
    return Semigroup(table, tuple(str(C.payloads[m]) for m in ends), pos[C.identity(a)])


@dataclass(frozen=True)
class Retraction:
    """How each object of C reaches its skeleton representative."""
    reps: tuple[int, ...]  # C-index of each skeleton object
    rep_of: tuple[int, ...]  # per C-object: C-index of its representative
    to_rep: tuple[int, ...]  # per C-object a: an iso a -> rep_of[a]
    from_rep: tuple[int, ...]  # its inverse
    inclusion: tuple[int, ...]  # skeleton morphism -> C morphism

    def sk_object(self, a: int) -> int:
        return self.reps.index(self.rep_of[a])


def isomorphism_classes(C: FiniteCategory) -> list[list[int]]:
    classes: list[list[int]] = []
    for a in range(C.n_objects):
        for cls in classes:
            if objects_isomorphic(C, a, cls[0]):
                cls.append(a)
                break
        else:
            classes.append([a])
    return classes


def skeleton(C: FiniteCategory) -> tuple[FiniteCategory, Retraction]:
    classes = isomorphism_classes(C)
    reps = tuple(cls[0] for cls in classes)
    rep_of = [0] * C.n_objects
    to_rep = [0] * C.n_objects
    from_rep = [0] * C.n_objects
    for cls in classes:
        r = cls[0]
        for a in cls:
            m = next(m for m in C.hom(a, r) if is_isomorphism(C, m))
            rep_of[a], to_rep[a], from_rep[a] = r, m, inverse_of(C, m)
    sk, inclusion = _full_sub(C, reps)
    return sk, Retraction(reps, tuple(rep_of), tuple(to_rep), tuple(from_rep), inclusion)


@dataclass(eq=False)
class Functor:
    source: FiniteCategory
    target: FiniteCategory
    obj: tuple[int, ...]
    mor: tuple[int, ...]

    def payload(self, m: int):
        """Payload of the image of source morphism ``m``."""
        return self.target.payloads[self.mor[m]]


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple

    def __str__(self):
        return f"{self.law}: {self.witness}"


def identity_functor(C: FiniteCategory) -> Functor:
    return Functor(C, C, tuple(range(C.n_objects)), tuple(range(C.n_morphisms)))


def compose_functors(G: Functor, F: Functor) -> Functor:
    """G∘F."""
    return Functor(F.source, G.target, tuple(G.obj[a] for a in F.obj), tuple(G.mor[m] for m in F.mor))


def check_functor(F: Functor, semi: bool = False) -> Violation | None:
    """First violated functor law, or None.  ``semi`` drops the identity law."""
    C, D = F.source, F.target
    if len(F.obj) != C.n_objects or len(F.mor) != C.n_morphisms:
        return Violation("incomplete", (len(F.obj), len(F.mor)))
    for m in range(C.n_morphisms):
        fm = F.mor[m]
        if D.dom[fm] != F.obj[C.dom[m]] or D.cod[fm] != F.obj[C.cod[m]]:
            return Violation("endpoints", (m,))
    if not semi:
        for a in range(C.n_objects):
            if F.mor[C.identity(a)] != D.identity(F.obj[a]):
                return Violation("identity", (a,))
    for (g, f), gf in C.composition.items():
        if F.mor[gf] != D.compose(F.mor[g], F.mor[f]):
            return Violation("composition", (g, f))
    return None


def is_faithful(F: Functor) -> bool:
    C = F.source
    for a in range(C.n_objects):
        for b in range(C.n_objects):
            ms = C.hom(a, b)
            if len({F.mor[m] for m in ms}) != len(ms):
                return False
    return True


def is_full(F: Functor) -> bool:
    C, D = F.source, F.target
    for a in range(C.n_objects):
        for b in range(C.n_objects):
            if {F.mor[m] for m in C.hom(a, b)} != set(D.hom(F.obj[a], F.obj[b])):
                return False
    return True


def is_essentially_surjective(F: Functor) -> bool:
    D = F.target
    image = set(F.obj)
    return all(any(objects_isomorphic(D, b, c) for c in image) for b in range(D.n_objects))


def is_equivalence(F: Functor) -> bool:
    return (check_functor(F) is None and is_faithful(F) and is_full(F)
            and is_essentially_surjective(F))


@dataclass(eq=False)
class NaturalTransformation:
    F: Functor
    G: Functor
    components: tuple[int, ...]  # per source object a: F(a) -> G(a)

    def check(self) -> Violation | None:
        C, D = self.F.source, self.F.target
        for a in range(C.n_objects):
            eta = self.components[a]
            if D.dom[eta] != self.F.obj[a] or D.cod[eta] != self.G.obj[a]:
                return Violation("component endpoints", (a,))
        for m in range(C.n_morphisms):
            a, b = C.dom[m], C.cod[m]
            if D.compose(self.G.mor[m], self.components[a]) != D.compose(self.components[b], self.F.mor[m]):
                return Violation("naturality", (m,))
        return None

    def is_isomorphism(self) -> bool:
        return all(is_isomorphism(self.F.target, c) for c in self.components)


def _hom_sizes(C: FiniteCategory):
    return [[len(C.hom(a, b)) for b in range(C.n_objects)] for a in range(C.n_objects)]


def iter_category_isomorphisms(A: FiniteCategory, B: FiniteCategory,
                               budget: Budget | int | None = DEFAULT_BUDGET) -> Iterator[Functor]:
    """All isomorphisms A -> B, objects first, then arrows hom-set by hom-set."""
    if not isinstance(budget, Budget):
        budget = Budget(budget)
    n = A.n_objects
    if n != B.n_objects or A.n_morphisms != B.n_morphisms:
        return
    ha, hb = _hom_sizes(A), _hom_sizes(B)

    def object_maps(phi, used):
        k = len(phi)
        if k == n:
            yield tuple(phi)
            return
        for y in range(n):
            if y in used:
                continue
            budget.tick()
            if ha[k][k] != hb[y][y]:
                continue
            if all(ha[k][j] == hb[y][phi[j]] and ha[j][k] == hb[phi[j]][y] for j in range(k)):
                phi.append(y)
                used.add(y)
                yield from object_maps(phi, used)
                used.discard(y)
                phi.pop()

    for obj in object_maps([], set()):
        candidates = []
        for m in range(A.n_morphisms):
            a, b = obj[A.dom[m]], obj[A.cod[m]]
            if A.is_identity(m):
                candidates.append([B.identity(a)])
            else:
                candidates.append([x for x in B.hom(a, b) if not B.is_identity(x)])
        for mor in iter_isomorphisms(A.n_morphisms, A.compose_or_none, B.compose_or_none,
                                     candidates, budget):
            yield Functor(A, B, obj, mor)


def equivalence_from_skeleton_iso(C: FiniteCategory, D: FiniteCategory, rc: Retraction,
                                  rd: Retraction, phi: Functor) -> Functor:
    """C -> skeleton(C) -phi-> skeleton(D) -> D."""
    sk_index = {m: i for i, m in enumerate(rc.inclusion)}
    obj = tuple(rd.reps[phi.obj[rc.sk_object(a)]] for a in range(C.n_objects))
    mor = []
    for m in range(C.n_morphisms):
        a, b = C.dom[m], C.cod[m]
        core = C.compose(rc.to_rep[b], C.compose(m, rc.from_rep[a]))
        mor.append(rd.inclusion[phi.mor[sk_index[core]]])
    return Functor(C, D, obj, tuple(mor))


def conjugate_functor(F: Functor, targets: Sequence[int], isos: Sequence[int]) -> Functor:
    """F' with F'(a) = targets[a] and F'(m) = j_b∘F(m)∘j_a^-1, where j_a = isos[a]: F(a) -> targets[a]."""
    D = F.target
    inv = [inverse_of(D, j) for j in isos]
    mor = []
    for m in range(F.source.n_morphisms):
        a, b = F.source.dom[m], F.source.cod[m]
        mor.append(D.compose(isos[b], D.compose(F.mor[m], inv[a])))
    return Functor(F.source, F.target, tuple(targets), tuple(mor))


def find_equivalence(C: FiniteCategory, D: FiniteCategory,
                     budget: int | None = DEFAULT_BUDGET) -> Functor | None:
    """An equivalence C -> D, or None if none exists."""
    skc, rc = skeleton(C)
    skd, rd = skeleton(D)
    phi = next(iter_category_isomorphisms(skc, skd, budget), None)
    if phi is None:
        return None
    return equivalence_from_skeleton_iso(C, D, rc, rd, phi)


def iter_equivalences_up_to_iso(C: FiniteCategory, D: FiniteCategory,
                                budget: int | None = DEFAULT_BUDGET) -> Iterator[Functor]:
    """One equivalence per isomorphism of skeletons.

    Every equivalence C -> D is naturally isomorphic to one of these.
    """
    skc, rc = skeleton(C)
    skd, rd = skeleton(D)
    for phi in iter_category_isomorphisms(skc, skd, budget):
        yield equivalence_from_skeleton_iso(C, D, rc, rd, phi)


def random_equivalence(C: FiniteCategory, D: FiniteCategory, rng: random.Random,
                       budget: int | None = DEFAULT_BUDGET) -> Functor | None:
    """A randomly chosen equivalence C -> D.

    Picks a skeleton isomorphism, then for each object of C an object of D in
    the right isomorphism class and an isomorphism onto it.
    """
    base = list(iter_equivalences_up_to_iso(C, D, budget))
    if not base:
        return None
    F = rng.choice(base)
    targets, isos = [], []
    for a in range(C.n_objects):
        fa = F.obj[a]
        options = [(b, m) for b in range(D.n_objects) for m in D.hom(fa, b) if is_isomorphism(D, m)]
        b, m = rng.choice(options)
        targets.append(b)
        isos.append(m)
    return conjugate_functor(F, targets, isos)


def j_order_arrows(C: FiniteCategory, f: int, g: int) -> bool:
    """f <=_J g: f = a∘g∘b for some arrows a, b."""
    for b in C.hom(C.dom[f], C.dom[g]):
        gb = C.compose(g, b)
        for a in C.hom(C.cod[g], C.cod[f]):
            if C.compose(a, gb) == f:
                return True
    return False


def enumerate_sset_morphisms(S: Semigroup, s: int, t: int) -> list[dict[int, int]]:
    """All right S-set maps sS^1 -> tS^1 (brute force oracle).

    A map is fixed by its value w at s; each candidate w is propagated along
    s -> s x and then checked for well-definedness and equivariance.
    """
    S1 = SemigroupOne(S)
    source = sorted(S1.right_multiples(s))
    target = S1.right_multiples(t)
    found = []
    for w in sorted(target):
        f: dict[int, int] = {}
        ok = True
        for x in S1.elements():
            y, z = S1.mul(s, x), S1.mul(w, x)
            if f.setdefault(y, z) != z:
                ok = False
                break
        if not ok:
            continue
        if all(f[S.mul(y, r)] == S.mul(f[y], r) for y in source for r in S.elements()):
            assert set(f.values()) <= target
            found.append(f)
    return found


def inner_multipliers(S: Semigroup, f: dict[int, int]) -> list[int]:
    """Elements u of S^1 (formal identity = n) with f(x) = u x on the domain of f."""
    S1 = SemigroupOne(S)
    return [u for u in S1.elements() if all(S1.mul(u, x) == y for x, y in f.items())]
