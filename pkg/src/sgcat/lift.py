"""Lifting functors K(S) -> K(T) to D(S) -> D(T), goodness, and lifting
natural transformations between the action presheaves."""
from __future__ import annotations

from dataclasses import dataclass, field

from .cat import (
    FiniteCategory,
    Functor,
    build_karoubi,
    build_schutzcat,
    check_functor,
    is_equivalence,
)
from .core import Semigroup, idempotents
from .errors import InvalidFunctor, InvalidNaturalTransformation, NoLocalUnits
from .greens import greens_data
from .invariants import PresheafMap, presheaf_B


@dataclass(frozen=True)
class LocalUnitFamily:
    e: tuple[int, ...]  # e[s] s = s
    f: tuple[int, ...]  # s f[s] = s

    def is_valid(self, S: Semigroup) -> bool:
        for s in S.elements():
            if S.product(self.e[s], s, self.f[s]) != s:
                return False
            if not (S.is_idempotent(self.e[s]) and S.is_idempotent(self.f[s])):
                return False
            if S.is_idempotent(s) and (self.e[s], self.f[s]) != (s, s):
                return False
        return True


def left_units(S: Semigroup, s: int) -> list[int]:
    return [e for e in idempotents(S) if S.mul(e, s) == s]


def right_units(S: Semigroup, s: int) -> list[int]:
    return [f for f in idempotents(S) if S.mul(s, f) == s]


def local_unit_families(S: Semigroup) -> LocalUnitFamily:
    """Least-index idempotent local units, with e_s = f_s = s on idempotents."""
    es, fs = [], []
    for s in S.elements():
        if S.is_idempotent(s):
            es.append(s)
            fs.append(s)
            continue
        left, right = left_units(S, s), right_units(S, s)
        if not left or not right:
            raise NoLocalUnits(S.name(s))
        es.append(left[0])
        fs.append(right[0])
    return LocalUnitFamily(tuple(es), tuple(fs))


def project_middle(payload):
    """(s, u, t) -> u; the maps gamma_K, gamma_D and F_m all use this."""
    return payload[1]


def semifunctor_violation(C: FiniteCategory, S: Semigroup) -> tuple[int, int] | None:
    """A composable pair (g, f) with middle(g∘f) != middle(g) middle(f), or None."""
    for (g, f), gf in C.composition.items():
        if project_middle(C.payloads[gf]) != S.mul(project_middle(C.payloads[g]),
                                                   project_middle(C.payloads[f])):
            return (g, f)
    return None


def is_faithful_projection(C: FiniteCategory) -> bool:
    """Middle projection injective on every hom-set."""
    for a in range(C.n_objects):
        for b in range(C.n_objects):
            mids = [project_middle(C.payloads[m]) for m in C.hom(a, b)]
            if len(set(mids)) != len(mids):
                return False
    return True


@dataclass(eq=False)
class Lift:
    functor: Functor  # D(S) -> D(T)
    family: LocalUnitFamily
    restricts_to_base: bool  # lift restricted to K(S) equals the input functor payload-wise


def lift_functor(F: Functor, family: LocalUnitFamily | None = None,
                 source_d: FiniteCategory | None = None,
                 target_d: FiniteCategory | None = None) -> Lift:
    """F^: D(S) -> D(T) from F: K(S) -> K(T).

    F^(s) = F_m(e_s, s, f_s) and F^(s, u, t) = (F^(s), F_m(e_s, u, f_t), F^(t)).
    """
    S, T = F.source.semigroup, F.target.semigroup
    if S is None or T is None:
        raise InvalidFunctor("source and target must be Karoubi envelopes of semigroups")
    bad = check_functor(F)
    if bad is not None:
        raise InvalidFunctor(f"input is not a functor ({bad})")
    fam = family if family is not None else local_unit_families(S)
    local_unit_families(T)  # raises NoLocalUnits unless T has local units
    DS = source_d if source_d is not None else build_schutzcat(S)
    DT = target_d if target_d is not None else build_schutzcat(T)
    K = F.source

    def f_mid(e, u, f):
        return project_middle(F.payload(K.morphism_index((e, u, f))))

    hat = [f_mid(fam.e[s], s, fam.f[s]) for s in S.elements()]
    obj = tuple(DT.object_index(x) for x in hat)
    mor = []
    for (s, u, t) in DS.payloads:
        image = (hat[s], f_mid(fam.e[s], u, fam.f[t]), hat[t])
        if not DT.has_payload(image):
            raise InvalidFunctor(f"image {image} of {(s, u, t)} is not an arrow of D(T)")
        mor.append(DT.morphism_index(image))
    G = Functor(DS, DT, obj, tuple(mor))
    bad = check_functor(G)
    if bad is not None:
        raise InvalidFunctor(f"lift is not a functor ({bad})")
    restricts = all(G.payload(DS.morphism_index(p)) == F.payload(m) for m, p in enumerate(K.payloads))
    return Lift(G, fam, restricts)


def restrict_to_karoubi(G: Functor) -> Functor | None:
    """G restricted to K(S) -> K(T), or None if G sends an idempotent to a non-idempotent."""
    DS, DT = G.source, G.target
    S, T = DS.semigroup, DT.semigroup
    KS, KT = build_karoubi(S), build_karoubi(T)
    obj = []
    for e in KS.objects:
        x = DT.objects[G.obj[DS.object_index(e)]]
        if not T.is_idempotent(x):
            return None
        obj.append(KT.object_index(x))
    mor = [KT.morphism_index(G.payload(DS.morphism_index(p))) for p in KS.payloads]
    return Functor(KS, KT, tuple(obj), tuple(mor))


@dataclass
class GoodnessReport:
    restricts_to_K_equivalence: bool
    witnesses: dict = field(default_factory=dict)  # s -> (e_s, f_s), or None when no pair works
    good: bool = False


def is_good_functor(G: Functor, family: LocalUnitFamily | None = None) -> GoodnessReport:
    """Check both conditions of goodness for G: D(S) -> D(T).

    Condition (2) is existential, so all idempotent local units are tried;
    ``family`` (if given) is tried first.
    """
    DS, DT = G.source, G.target
    S = DS.semigroup
    K = restrict_to_karoubi(G)
    restricts = K is not None and is_equivalence(K)

    def image(p):
        return G.payload(DS.morphism_index(p))

    def obj(x):
        return DT.objects[G.obj[DS.object_index(x)]]

    witnesses = {}
    for s in S.elements():
        lefts, rights = left_units(S, s), right_units(S, s)
        if family is not None:
            lefts = sorted(lefts, key=lambda e: e != family.e[s])
            rights = sorted(rights, key=lambda f: f != family.f[s])
        e_ok = next((e for e in lefts if image((e, s, s)) == (obj(e), obj(s), obj(s))), None)
        f_ok = next((f for f in rights if image((s, s, f)) == (obj(s), obj(s), obj(f))), None)
        witnesses[s] = None if e_ok is None or f_ok is None else (e_ok, f_ok)
    good = restricts and all(w is not None for w in witnesses.values())
    return GoodnessReport(restricts, witnesses, good)


def reflects_regularity(G: Functor) -> bool:
    S, T = G.source.semigroup, G.target.semigroup
    gs, gt = greens_data(S), greens_data(T)
    return all(gs.is_regular_element(s) == gt.is_regular_element(G.target.objects[G.obj[s]])
               for s in S.elements())


def reflects_j_order_on_objects(G: Functor) -> bool:
    S, T = G.source.semigroup, G.target.semigroup
    js, jt = greens_data(S).le_j, greens_data(T).le_j
    img = [G.target.objects[G.obj[s]] for s in S.elements()]
    return all(bool(js[s, r]) == bool(jt[img[s], img[r]]) for s in S.elements() for r in S.elements())


def lift_natural_transformation(lift: Lift, eta: PresheafMap) -> PresheafMap:
    """lambda: B_Q => B_R∘F^ with lambda_s the restriction of eta_{f_s} to Q.s.

    ``eta`` must be a natural transformation A_Q => A_R∘F.
    """
    bad = eta.check()
    if bad is not None:
        raise InvalidNaturalTransformation(bad)
    A, B = eta.source.action, eta.target.action
    if A is None or B is None:
        raise InvalidNaturalTransformation("presheaves must come from semigroup actions")
    G, fam = lift.functor, lift.family
    K = eta.source.category
    BQ = presheaf_B(A, G.source)
    BR = presheaf_B(B, G.target).pullback(G)
    comps = []
    for s in G.source.objects:
        eta_f = eta.components[K.object_index(fam.f[s])]
        comps.append({q: eta_f[q] for q in A.image(s)})
    lam = PresheafMap(BQ, BR, tuple(comps))
    bad = lam.check()
    if bad is not None:
        raise InvalidNaturalTransformation(f"lifted family is not natural: {bad}")
    return lam

