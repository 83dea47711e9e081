"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line.

Where possible each criterion is checked twice: by the package's own
property suite and by the brute-force oracles in tests/oracles.py.
"""
import random
import subprocess
import sys
import time

import pytest

from sgcat.cat import build_karoubi, build_schutzcat, check_functor, find_equivalence, is_equivalence, random_equivalence
from sgcat.corpus import FIXTURE_NAMES, load_action_fixture, load_fixture, small_semigroups
from sgcat.invariants import (
    action_poset,
    actions_equivalent,
    induced_poset_iso,
    is_faithful,
    labeled_dl,
    labeled_dq_lu,
    labeled_preorders_isomorphic,
    presheaf_B,
    relabel_states,
    twist_action,
)
from sgcat.localstruct import local_divisor
from sgcat.lift import is_good_functor, lift_functor, reflects_j_order_on_objects, reflects_regularity
from sgcat.suite import (
    check_duality,
    check_hom_counts,
    check_inner,
    check_iso_criterion,
    check_j_order,
    check_j_order_all_pairs,
    check_sset_bijection,
    check_structure,
)

import oracles

BUDGET_SECONDS = 60.0
elapsed = {}


@pytest.fixture
def report(capsys, request):
    """Time the criterion and print its verdict line outside pytest's capture."""
    start = time.perf_counter()
    verdict = {}
    yield verdict
    elapsed[request.node.name] = time.perf_counter() - start
    with capsys.disabled():
        status = "PASS" if verdict.get("ok") else "FAIL"
        print(f"\n[acceptance] criterion {verdict.get('n', '?')}: {status} {verdict.get('what', '')}")


def suite_corpus():
    out = {f"small{S.order}_{i:02d}": S for i, S in enumerate(small_semigroups(3))}
    out.update({n: load_fixture(n) for n in ("T2", "RB22", "B2", "C21", "N2")})
    return out


def all_corpus():
    out = {f"small{S.order}_{i:02d}": S for i, S in enumerate(small_semigroups(3))}
    out.update({n: load_fixture(n) for n in FIXTURE_NAMES})
    return out


# oracle side of criterion 1 ---------------------------------------------------

def d_compose(table, g, f):
    """(s,u,t)∘(t,v,r) = (s, x v, r) for any x in S^1 with x t = u."""
    s, u, t = g
    t2, v, r = f
    assert t == t2
    x = next(x for x in oracles.s1(table) if oracles.mul1(table, x, t) == u)
    return (s, oracles.mul1(table, x, v), r)


def oracle_prop31_mismatches(table):
    n = len(table)
    g = oracles.green(table)
    bad = []
    for s in range(n):
        for t in range(n):
            # |hom(t -> s)| = |sS^1 ∩ S^1t|, checked against the built category elsewhere
            maps = oracles.sset_maps(table, s, t)
            inner = [f for f in maps if oracles.is_inner(table, f)]
            values = [f[s] for f in inner]
            if len(set(values)) != len(values) or set(values) != oracles.d_hom(table, t, s):
                bad.append(("sset", s, t))
            if oracles.is_regular(table, s) and oracles.is_regular(table, t) and len(inner) != len(maps):
                bad.append(("inner", s, t))
    arrows = [(s, u, t) for s in range(n) for t in range(n) for u in sorted(oracles.d_hom(table, s, t))]
    for (s, u, t) in arrows:
        has_inverse = any(d_compose(table, (s, u, t), (t, v, s)) == (s, s, s)
                          and d_compose(table, (t, v, s), (s, u, t)) == (t, t, t)
                          for v in oracles.d_hom(table, t, s))
        criterion = u in g["R"][s] and t in g["L"][u]
        if has_inverse != criterion:
            bad.append(("iso", s, u, t))
    return bad


def test_criterion_1_morphism_suite(report):
    report.update(n=1, what="hom counts, S-set bijection, inner morphisms, isomorphism criterion")
    failures = []
    for name, S in suite_corpus().items():
        D = build_schutzcat(S)
        for s in S.elements():
            for t in S.elements():
                if len(D.hom(t, s)) != len(oracles.d_hom(S.table, s, t)):
                    failures.append((name, "hom", s, t))
                if {D.payloads[m][1] for m in D.hom(t, s)} != oracles.d_hom(S.table, s, t):
                    failures.append((name, "hom-middles", s, t))
        failures += [(name,) + w for w in oracle_prop31_mismatches(S.table)]
        for label, tally in (("hom_counts", check_hom_counts(S, D)), ("sset", check_sset_bijection(S)),
                             ("inner", check_inner(S)), ("iso", check_iso_criterion(S, D))):
            if not tally.ok:
                failures.append((name, "suite", label, tally.failures[:3]))
    report["ok"] = not failures
    assert not failures, failures[:10]


def test_criterion_2_structure_suite(report):
    report.update(n=2, what="Aut ≅ Schützenberger group, End ≅ local divisor, units, left ≅ right")
    failures = []
    for name in FIXTURE_NAMES:
        S = load_fixture(name)
        for check, tally in check_structure(S).items():
            if not tally.ok:
                failures.append((name, check, tally.failures))
        # the local divisor table itself, rebuilt from the raw composition rule
        for s in S.elements():
            ld = local_divisor(S, s)
            carrier, prod = oracles.local_divisor_table(S.table, s)
            if list(ld.carrier) != carrier or any(ld.mul(u, v) != prod[u, v] for u in carrier for v in carrier):
                failures.append((name, "divisor-table", s))
    report["ok"] = not failures
    assert not failures, failures


def test_criterion_3_duality(report):
    report.update(n=3, what="D(S)^op ≅ D(S^op) and K(S)^op ≅ K(S^op)")
    failures = []
    for name, S in all_corpus().items():
        for kind, tally in check_duality(S).items():
            if not tally.ok:
                failures.append((name, kind))
    report["ok"] = not failures
    assert not failures, failures


def lift_checks(F):
    lift = lift_functor(F)
    G = lift.functor
    return {"functor": check_functor(G) is None,
            "restricts": lift.restricts_to_base,
            "good": is_good_functor(G, lift.family).good,
            "equivalence": is_equivalence(G),
            "reflects_regularity": reflects_regularity(G),
            "reflects_j_order": reflects_j_order_on_objects(G)}


def test_criterion_4_lifting(report):
    report.update(n=4, what="lifted functors: (TRIV, RB22) and 10 random self-equivalences of K(T2)")
    failures = []
    F = find_equivalence(build_karoubi(load_fixture("TRIV")), build_karoubi(load_fixture("RB22")))
    if F is None:
        failures.append(("TRIV-RB22", "no equivalence"))
    else:
        failures += [("TRIV-RB22", k) for k, v in lift_checks(F).items() if not v]
    K = build_karoubi(load_fixture("T2"))
    rng = random.Random(2024)
    for i in range(10):
        F = random_equivalence(K, K, rng)
        failures += [(f"T2#{i}", k) for k, v in lift_checks(F).items() if not v]
    report["ok"] = not failures
    assert not failures, failures


def test_criterion_5_j_order(report):
    report.update(n=5, what="J-order of arrows in D(S) matches J-order of middles on T2 and B2")
    failures = []
    for name in ("T2", "B2"):
        S = load_fixture(name)
        D = build_schutzcat(S)
        for label, tally in (("framed", check_j_order(S, D)), ("all_pairs", check_j_order_all_pairs(S, D))):
            if not tally.ok:
                failures.append((name, label, tally.failures[:3]))
            if tally.checked == 0:
                failures.append((name, label, "nothing checked"))
    report["ok"] = not failures
    assert not failures, failures


def raw_orbits(A):
    """q.LU(S) for q in Q.E(S), straight from the action table."""
    S = A.semigroup
    lu = [s for s in S.elements() if any(S.is_idempotent(e) and S.mul(e, s) == s for e in S.elements())
          and any(S.is_idempotent(f) and S.mul(s, f) == s for f in S.elements())]
    qe = {A.table[q][e] for q in range(A.qsize) for e in S.elements() if S.is_idempotent(e)}
    return {q: frozenset(A.table[q][s] for s in lu) for q in qe}


def oracle_b_faithful(A):
    S = A.semigroup
    for s in S.elements():
        for t in S.elements():
            middles = sorted(oracles.d_hom(S.table, s, t))
            for i, u in enumerate(middles):
                for v in middles[i + 1:]:
                    if all(A.table[q][u] == A.table[q][v] for q in range(A.qsize)):
                        return False
    return True


def test_criterion_6_action_invariants(report):
    report.update(n=6, what="faithful B_Q, induced P(Q) isomorphisms, labeled D_Q(LU), U1 vs RZ2")
    failures = []
    for name in ("t2_points", "u1_chain", "rb22_columns", "triv_point"):
        A = load_action_fixture(name)
        if is_faithful(A) and not (presheaf_B(A).is_faithful() and oracle_b_faithful(A)):
            failures.append((name, "B_Q not faithful"))
    t2, u1 = load_action_fixture("t2_points"), load_action_fixture("u1_chain")
    pairs = {"relabeling": (u1, relabel_states(u1, [1, 0])),
             "conjugation": (t2, twist_action(t2, (0, 1, 3, 2))),
             "columns-vs-point": (load_action_fixture("rb22_columns"), load_action_fixture("triv_point"))}
    for label, (A, B) in pairs.items():
        found = actions_equivalent(A, B)
        if found is None:
            failures.append((label, "not found equivalent"))
            continue
        F, eta = found
        f = induced_poset_iso(F, eta, A, B)
        # independent check of f: orbit of q goes to orbit of eta_e(q), and order is reverse inclusion
        P, P2 = action_poset(A), action_poset(B)
        oa, ob = raw_orbits(A), raw_orbits(B)
        K = eta.source.category
        for q in oa:
            for a, e in enumerate(K.objects):
                if A.table[q][e] == q:
                    target = ob[eta.components[a][q]]
                    if set(P2.orbits[f[P.node_of(q)]]) != target:
                        failures.append((label, "f disagrees with eta", q))
        nodes_a = [frozenset(o) for o in P.orbits]
        nodes_b = [frozenset(o) for o in P2.orbits]
        if sorted(f) != list(range(len(nodes_b))):
            failures.append((label, "f not bijective"))
        for i in range(len(nodes_a)):
            for j in range(len(nodes_a)):
                if (nodes_a[i] >= nodes_a[j]) != (nodes_b[f[i]] >= nodes_b[f[j]]):
                    failures.append((label, "f not an order isomorphism", i, j))
        if not labeled_preorders_isomorphic(labeled_dq_lu(A), labeled_dq_lu(B)):
            failures.append((label, "labeled D_Q(LU) differ"))
    if labeled_preorders_isomorphic(labeled_dl(load_fixture("U1")), labeled_dl(load_fixture("RZ2"))):
        failures.append(("U1-RZ2", "not distinguished"))
    report["ok"] = not failures
    assert not failures, failures


def test_criterion_7_determinism(report):
    report.update(n=7, what="two corpus-run invocations give byte-identical JSON")
    cmd = [sys.executable, "-m", "sgcat", "corpus-run", "--json"]
    runs = [subprocess.run(cmd, capture_output=True, check=False) for _ in range(2)]
    ok = runs[0].stdout == runs[1].stdout and runs[0].stdout.startswith(b"{") and \
        all(r.returncode == 0 for r in runs)
    report["ok"] = ok
    assert ok, [r.stderr.decode()[-500:] for r in runs]


def test_runtime_budget(capsys):
    total = sum(elapsed.values())
    with capsys.disabled():
        print(f"\n[acceptance] total runtime {total:.1f}s (budget {BUDGET_SECONDS:.0f}s)")
    assert len(elapsed) == 7
    assert total <= BUDGET_SECONDS
