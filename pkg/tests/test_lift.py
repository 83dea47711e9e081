import random

import pytest

from sgcat.cat import (
    Functor,
    build_karoubi,
    build_schutzcat,
    check_functor,
    find_equivalence,
    identity_functor,
    is_equivalence,
    random_equivalence,
)
from sgcat.core import has_local_units
from sgcat.corpus import FIXTURE_NAMES, load_action_fixture, small_semigroups
from sgcat.errors import InvalidFunctor, NoLocalUnits
from sgcat.invariants import PresheafMap, actions_equivalent, presheaf_A
from sgcat.lift import (
    LocalUnitFamily,
    is_faithful_projection,
    is_good_functor,
    lift_functor,
    lift_natural_transformation,
    local_unit_families,
    project_middle,
    reflects_j_order_on_objects,
    reflects_regularity,
    restrict_to_karoubi,
    semifunctor_violation,
)


def test_local_unit_family_examples(fx):
    U1 = fx["U1"]
    fam = local_unit_families(U1)
    for s in U1.elements():
        assert fam.e[s] == fam.f[s] == s
    T2 = fx["T2"]
    fam = local_unit_families(T2)
    s = T2.resolve("s")
    assert T2.name(fam.e[s]) == T2.name(fam.f[s]) == "id"
    assert fam.is_valid(T2)
    with pytest.raises(NoLocalUnits) as exc:
        local_unit_families(fx["N2"])
    assert exc.value.element == "a"


def test_families_valid_on_local_unit_corpus(fx):
    for S in list(fx.values()) + list(small_semigroups(3)):
        if has_local_units(S):
            assert local_unit_families(S).is_valid(S)
        else:
            with pytest.raises(NoLocalUnits):
                local_unit_families(S)


def test_invalid_family_detected(fx):
    T2 = fx["T2"]
    fam = local_unit_families(T2)
    c0 = T2.resolve("c0")
    e = list(fam.e)
    e[c0] = T2.resolve("id")  # idempotents must use themselves
    assert not LocalUnitFamily(tuple(e), fam.f).is_valid(T2)


def test_project_middle():
    assert project_middle((4, 7, 9)) == 7


def test_gamma_k_is_faithful_semifunctor(fx):
    for S in fx.values():
        K = build_karoubi(S)
        assert semifunctor_violation(K, S) is None
        assert is_faithful_projection(K)


def test_gamma_d_counterexample_search(fx):
    """The middle projection on D(S) is not a semi-functor in general; find a witness."""
    found = {}
    for name in FIXTURE_NAMES:
        S = fx[name]
        D = build_schutzcat(S)
        bad = semifunctor_violation(D, S)
        if bad is not None:
            found[name] = bad
            g, f = bad
            gf = D.compose(g, f)
            assert project_middle(D.payloads[gf]) != S.mul(project_middle(D.payloads[g]),
                                                          project_middle(D.payloads[f]))
    assert found
    # on C21 the identity (x,x,x) already fails: id∘id = id but x.x = x2
    C21 = fx["C21"]
    D = build_schutzcat(C21)
    x = C21.resolve("x")
    i = D.identity(x)
    assert D.compose(i, i) == i and C21.mul(x, x) != x


def test_lift_identity_u1(fx):
    U1 = fx["U1"]
    K = build_karoubi(U1)
    lift = lift_functor(identity_functor(K))
    D = lift.functor.source
    assert lift.functor.obj == tuple(range(D.n_objects))
    assert lift.functor.mor == tuple(range(D.n_morphisms))
    assert lift.restricts_to_base


def test_lift_identity_t2(fx):
    T2 = fx["T2"]
    lift = lift_functor(identity_functor(build_karoubi(T2)))
    D = lift.functor.source
    assert lift.functor.mor == tuple(range(D.n_morphisms))
    assert lift.restricts_to_base


def test_lift_rb22_to_triv(fx):
    F = find_equivalence(build_karoubi(fx["RB22"]), build_karoubi(fx["TRIV"]))
    lift = lift_functor(F)
    G = lift.functor
    assert G.obj == (0, 0, 0, 0)
    assert G.source.n_morphisms == 16
    assert all(G.target.is_identity(m) for m in G.mor)
    assert is_equivalence(G)
    assert lift.restricts_to_base


def test_lift_rejects_bad_input(fx):
    T2 = fx["T2"]
    K = build_karoubi(T2)
    F = identity_functor(K)
    broken = Functor(K, K, F.obj, tuple(K.identity(K.dom[m]) if K.dom[m] == K.cod[m] else m
                                        for m in range(K.n_morphisms)))
    assert check_functor(broken) is not None
    with pytest.raises(InvalidFunctor):
        lift_functor(broken)
    # target without local units
    KC = build_karoubi(fx["C21"])
    with pytest.raises(NoLocalUnits):
        lift_functor(identity_functor(KC))


def collapse(S):
    D = build_schutzcat(S)
    return Functor(D, D, (0,) * D.n_objects, (D.identity(0),) * D.n_morphisms)


def test_goodness_examples(fx):
    U1 = fx["U1"]
    lift = lift_functor(identity_functor(build_karoubi(U1)))
    assert is_good_functor(lift.functor).good
    F = find_equivalence(build_karoubi(fx["RB22"]), build_karoubi(fx["TRIV"]))
    lift = lift_functor(F)
    rep = is_good_functor(lift.functor, lift.family)
    assert rep.good and rep.restricts_to_K_equivalence
    C = collapse(U1)
    assert check_functor(C) is None
    rep = is_good_functor(C)
    assert not rep.restricts_to_K_equivalence and not rep.good


def test_reflection_examples(fx):
    U1 = fx["U1"]
    lift = lift_functor(identity_functor(build_karoubi(U1)))
    assert reflects_regularity(lift.functor) and reflects_j_order_on_objects(lift.functor)
    F = find_equivalence(build_karoubi(fx["RB22"]), build_karoubi(fx["TRIV"]))
    G = lift_functor(F).functor
    assert reflects_regularity(G) and reflects_j_order_on_objects(G)
    assert not reflects_j_order_on_objects(collapse(U1))


def test_restrict_to_karoubi(fx):
    T2 = fx["T2"]
    G = lift_functor(identity_functor(build_karoubi(T2))).functor
    R = restrict_to_karoubi(G)
    assert R.mor == tuple(range(R.source.n_morphisms))
    # a functor sending an idempotent object to a non-idempotent has no restriction
    D = build_schutzcat(fx["C21"])
    x = fx["C21"].resolve("x")
    bad = Functor(D, D, (x, x), (D.identity(x),) * D.n_morphisms)
    assert restrict_to_karoubi(bad) is None


@pytest.mark.parametrize("name", ["T2", "B2", "RB22", "U1"])
def test_lift_of_random_self_equivalences(fx, name):
    S = fx[name]
    K = build_karoubi(S)
    rng = random.Random(name)
    for _ in range(5):
        F = random_equivalence(K, K, rng)
        lift = lift_functor(F)
        G = lift.functor
        assert check_functor(G) is None
        assert lift.restricts_to_base
        assert is_good_functor(G, lift.family).good
        assert is_equivalence(G)
        assert reflects_regularity(G) and reflects_j_order_on_objects(G)


def greatest_family(S):
    from sgcat.lift import left_units, right_units
    e = [s if S.is_idempotent(s) else left_units(S, s)[-1] for s in S.elements()]
    f = [s if S.is_idempotent(s) else right_units(S, s)[-1] for s in S.elements()]
    return LocalUnitFamily(tuple(e), tuple(f))


def test_lift_with_other_family(fx):
    """Lifting works for any valid family, not only the least-index one."""
    pool = [S for S in list(fx.values()) + list(small_semigroups(3)) if has_local_units(S)]
    rng = random.Random(5)
    differs = 0
    for S in pool:
        fam = greatest_family(S)
        assert fam.is_valid(S)
        differs += fam != local_unit_families(S)
        K = build_karoubi(S)
        F = random_equivalence(K, K, rng)
        lift = lift_functor(F, fam)
        assert lift.family == fam and lift.restricts_to_base
        assert is_good_functor(lift.functor, fam).good
        assert is_equivalence(lift.functor)
    assert differs > 0


def test_corollary_on_corpus_pairs(fx):
    """Whenever K(S) and K(T) are equivalent (local units), so are D(S) and D(T)."""
    pool = [S for S in list(fx.values()) + list(small_semigroups(3)) if has_local_units(S)]
    Ks = [build_karoubi(S) for S in pool]
    hits = 0
    for i in range(len(pool)):
        for j in range(len(pool)):
            F = find_equivalence(Ks[i], Ks[j])
            if F is None:
                continue
            hits += 1
            G = lift_functor(F).functor
            assert is_equivalence(G)
    assert hits > len(pool)


def test_lift_nat_trans_identity(fx):
    A = load_action_fixture("t2_points")
    K = build_karoubi(A.semigroup)
    F = identity_functor(K)
    P = presheaf_A(A, K)
    eta = PresheafMap(P, P.pullback(F), tuple({q: q for q in P.sets[a]} for a in range(K.n_objects)))
    lift = lift_functor(F)
    lam = lift_natural_transformation(lift, eta)
    for s, comp in enumerate(lam.components):
        assert comp == {q: q for q in A.image(s)}
    assert lam.is_isomorphism()


def test_lift_nat_trans_rb22_triv():
    A, B = load_action_fixture("rb22_columns"), load_action_fixture("triv_point")
    F, eta = actions_equivalent(A, B)
    lam = lift_natural_transformation(lift_functor(F), eta)
    assert lam.check() is None
    for s, comp in enumerate(lam.components):
        assert set(comp.values()) == {0}
        assert len(comp) == 1  # Q.e_ij is one column point
    # eta is an isomorphism, hence so is lambda
    assert eta.is_isomorphism() and lam.is_isomorphism()
