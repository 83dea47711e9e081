"""Exhaustive property checks over a corpus of semigroups.

Each check returns a Tally of how many instances were examined and which
failed.  ``run_corpus`` collects them into a plain dict with stable ordering
so that the JSON rendering is byte-for-byte reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .cat import (
    Functor,
    build_karoubi,
    build_schutzcat,
    automorphism_group_at,
    d_hom_set,
    endomorphism_monoid,
    enumerate_sset_morphisms,
    flip_triple,
    full_subcategory,
    inner_multipliers,
    is_equivalence,
    is_isomorphism,
    j_order_arrows,
    objects_isomorphic,
    opposite_category,
    payload_isomorphic,
)
from .core import SemigroupOne, Semigroup, has_local_units, idempotents, opposite
from .greens import greens_data, is_regular_semigroup
from .localstruct import (
    local_divisor,
    local_divisor_is_well_defined,
    perm_groups_isomorphic,
    schutzenberger_group,
    semigroups_isomorphic,
)

SCHEMA = 1


@dataclass
class Tally:
    checked: int = 0
    failures: list = field(default_factory=list)

    def record(self, ok: bool, witness=None):
        self.checked += 1
        if not ok:
            self.failures.append(witness)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self, keep: int = 5) -> dict:
        return {"checked": self.checked, "failed": len(self.failures),
                "witnesses": [list(w) if isinstance(w, tuple) else w for w in self.failures[:keep]]}


def _meet(S: Semigroup, s: int, t: int) -> frozenset[int]:
    """sS^1 ∩ S^1t."""
    S1 = SemigroupOne(S)
    return S1.right_multiples(s) & S1.left_multiples(t)


def check_hom_counts(S: Semigroup, D=None) -> Tally:
    """|hom(t -> s)| in D(S) equals |sS^1 ∩ S^1t|."""
    D = D or build_schutzcat(S)
    tally = Tally()
    for s in S.elements():
        for t in S.elements():
            tally.record(len(D.hom(t, s)) == len(_meet(S, s, t)), (s, t))
    return tally


def check_sset_bijection(S: Semigroup) -> Tally:
    """Inner maps sS^1 -> tS^1 correspond to tS^1 ∩ S^1s via f -> f(s).

    The oracle lists every S-set map; only the inner ones take part.
    """
    tally = Tally()
    for s in S.elements():
        for t in S.elements():
            maps = [f for f in enumerate_sset_morphisms(S, s, t) if inner_multipliers(S, f)]
            values = [f[s] for f in maps]
            tally.record(len(set(values)) == len(values) and set(values) == _meet(S, t, s), (s, t))
    return tally


def check_inner(S: Semigroup) -> Tally:
    """Between principal right ideals of regular elements every S-set map is inner."""
    g = greens_data(S)
    reg = [s for s in S.elements() if g.is_regular_element(s)]
    tally = Tally()
    for s in reg:
        for t in reg:
            for f in enumerate_sset_morphisms(S, s, t):
                tally.record(bool(inner_multipliers(S, f)), (s, t, f[s]))
    return tally


def check_iso_criterion(S: Semigroup, D=None) -> Tally:
    """(s, u, t) is invertible iff s R u L t; objects isomorphic iff D-related."""
    D = D or build_schutzcat(S)
    g = greens_data(S)
    tally = Tally()
    for m, (s, u, t) in enumerate(D.payloads):
        tally.record(is_isomorphism(D, m) == (g.r[s] == g.r[u] and g.l[u] == g.l[t]), (s, u, t))
    for s in S.elements():
        for t in S.elements():
            tally.record(objects_isomorphic(D, t, s) == (g.d[s] == g.d[t]), ("obj", s, t))
    return tally


def check_structure(S: Semigroup, D=None) -> dict[str, Tally]:
    D = D or build_schutzcat(S)
    out = {name: Tally() for name in ("aut_vs_schutz", "end_vs_divisor", "units_vs_schutz",
                                      "left_vs_right", "divisor_well_defined")}
    for s in S.elements():
        left = schutzenberger_group(S, s, "left")
        right = schutzenberger_group(S, s, "right")
        ld = local_divisor(S, s)
        out["aut_vs_schutz"].record(perm_groups_isomorphic(automorphism_group_at(D, s), left), s)
        out["end_vs_divisor"].record(semigroups_isomorphic(endomorphism_monoid(D, s), ld.to_semigroup()), s)
        out["units_vs_schutz"].record(perm_groups_isomorphic(ld.unit_group(), left), s)
        out["left_vs_right"].record(perm_groups_isomorphic(left, right), s)
        out["divisor_well_defined"].record(local_divisor_is_well_defined(S, s), s)
    return out


def check_duality(S: Semigroup) -> dict[str, Tally]:
    Sop = opposite(S)
    out = {"D": Tally(), "K": Tally()}
    out["D"].record(payload_isomorphic(opposite_category(build_schutzcat(S), flip_triple),
                                       build_schutzcat(Sop)))
    out["K"].record(payload_isomorphic(opposite_category(build_karoubi(S), flip_triple),
                                       build_karoubi(Sop)))
    return out


def check_d_composition(S: Semigroup) -> Tally:
    """(s,u,t)(t,v,r) = (s, x v, r) does not depend on the witness x."""
    S1 = SemigroupOne(S)
    tally = Tally()
    for s in S.elements():
        for t in S.elements():
            for u in d_hom_set(S, s, t):
                xs = [x for x in S1.elements() if S1.mul(x, t) == u]
                for r in S.elements():
                    for v in d_hom_set(S, t, r):
                        tally.record(len({S1.mul(x, v) for x in xs}) == 1, (s, u, t, v, r))
    return tally


def check_karoubi_in_d(S: Semigroup, D=None) -> Tally:
    """K(S) is the full subcategory of D(S) on E(S); the inclusion is an
    equivalence exactly when S is regular."""
    D = D or build_schutzcat(S)
    K = build_karoubi(S)
    tally = Tally()
    E = idempotents(S)
    if not E:
        return tally
    sub = full_subcategory(D, E)
    tally.record(payload_isomorphic(sub, K), "full")
    incl = Functor(K, D, tuple(D.object_index(e) for e in K.objects),
                   tuple(D.morphism_index(p) for p in K.payloads))
    tally.record(is_equivalence(incl) == is_regular_semigroup(S), "regular")
    return tally


def check_j_order(S: Semigroup, D=None) -> Tally:
    """J-order of S read off D(S), for S with local units.

    For framed arrows (a,s,b), (c,t,d), meaning as = s = sb and ct = t = td,
    (a,s,b) <=_J (c,t,d) iff s <=_J t.  Also s <=_J t iff some arrows with
    middles s and t are J-related.
    """
    D = D or build_schutzcat(S)
    le = greens_data(S).le_j
    tally = Tally()
    framed = [m for m, (a, s, b) in enumerate(D.payloads) if S.mul(a, s) == s == S.mul(s, b)]
    by_middle: dict[int, list[int]] = {}
    for m, p in enumerate(D.payloads):
        by_middle.setdefault(p[1], []).append(m)
    for f in framed:
        for g in framed:
            s, t = D.payloads[f][1], D.payloads[g][1]
            tally.record(j_order_arrows(D, f, g) == bool(le[s, t]), (f, g))
    for s in S.elements():
        for t in S.elements():
            some = any(j_order_arrows(D, f, g) for f in by_middle[s] for g in by_middle[t])
            tally.record(some == bool(le[s, t]), ("some", s, t))
    return tally


def check_j_order_all_pairs(S: Semigroup, D=None, limit: int | None = None) -> Tally:
    """The stronger statement over every pair of arrows, framed or not.

    Holds on some semigroups (T2, B2) but not on every monoid.
    """
    D = D or build_schutzcat(S)
    le = greens_data(S).le_j
    tally = Tally()
    for f in range(D.n_morphisms):
        for g in range(D.n_morphisms):
            if limit is not None and tally.checked >= limit:
                return tally
            s, t = D.payloads[f][1], D.payloads[g][1]
            tally.record(j_order_arrows(D, f, g) == bool(le[s, t]), (f, g))
    return tally


def semigroup_report(S: Semigroup) -> dict:
    D = build_schutzcat(S)
    K = build_karoubi(S)
    checks: dict[str, Tally] = {
        "category_axioms": Tally(),
        "hom_counts": check_hom_counts(S, D),
        "sset_bijection": check_sset_bijection(S),
        "inner_morphisms": check_inner(S),
        "iso_criterion": check_iso_criterion(S, D),
        "d_composition": check_d_composition(S),
        "karoubi_in_d": check_karoubi_in_d(S, D),
    }
    checks["category_axioms"].record(K.check_axioms() is None, "K")
    checks["category_axioms"].record(D.check_axioms() is None, "D")
    for k, v in check_structure(S, D).items():
        checks[k] = v
    for k, v in check_duality(S).items():
        checks[f"duality_{k}"] = v
    if has_local_units(S):
        checks["j_order_arrows"] = check_j_order(S, D)
    g = greens_data(S)
    return {
        "order": S.order,
        "idempotents": len(idempotents(S)),
        "d_classes": len(g.d_classes),
        "regular": is_regular_semigroup(S),
        "karoubi": [K.n_objects, K.n_morphisms],
        "schutzenberger": [D.n_objects, D.n_morphisms],
        "checks": {k: checks[k].to_dict() for k in sorted(checks)},
    }


def run_corpus(semigroups: dict[str, Semigroup]) -> dict:
    reports = {name: semigroup_report(S) for name, S in semigroups.items()}
    failed = sorted(f"{name}:{check}" for name, r in reports.items()
                    for check, t in r["checks"].items() if t["failed"])
    return {"schema": SCHEMA, "semigroups": reports,
            "summary": {"semigroups": len(reports),
                        "checks": sum(t["checked"] for r in reports.values() for t in r["checks"].values()),
                        "failed": failed}}


def default_corpus(max_order: int = 3) -> dict[str, Semigroup]:
    from .corpus import FIXTURE_NAMES, load_fixture, small_semigroups
    out = {name: load_fixture(name) for name in FIXTURE_NAMES}
    for i, S in enumerate(small_semigroups(max_order)):
        out[f"small{S.order}_{i:02d}"] = S
    return out
