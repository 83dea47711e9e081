"""Command line interface.

Each command builds a plain report dict from library calls, then prints it
as text or, with --json, as sorted JSON carrying "schema": 1.

Exit codes: 0 ok, 1 failed property checks (corpus-run), 2 parse error,
3 validation error, 4 search budget exceeded, 5 unknown element.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import dot
from .cat import (
    DEFAULT_BUDGET,
    automorphism_group_at,
    build_karoubi,
    build_schutzcat,
    find_equivalence,
    is_equivalence,
    skeleton,
)
from .core import Semigroup, has_local_units, idempotents, local_units_set
from .errors import SearchBudgetExceeded, SgcatError, UnknownElement
from .greens import d_class_preorder, greens_data
from .invariants import (
    action_poset,
    actions_equivalent,
    induced_poset_iso,
    is_faithful,
    labeled_dl,
    labeled_dl_lu,
    labeled_dq,
    labeled_dq_lu,
    labeled_preorders_isomorphic,
    presheaf_B,
)
from .io import (
    ParseError,
    category_to_dict,
    dumps,
    functor_from_dict,
    functor_to_dict,
    load_action,
    load_semigroup,
)
from .lift import (
    is_good_functor,
    lift_functor,
    reflects_j_order_on_objects,
    reflects_regularity,
    restrict_to_karoubi,
)
from .localstruct import local_divisor, perm_groups_isomorphic, schutzenberger_group

SCHEMA = 1


def _names(S: Semigroup, xs) -> list[str]:
    return [S.name(x) for x in xs]


def _write_dot(path, text: str):
    if path:
        Path(path).write_text(text)


def _d_class_rows(S: Semigroup) -> list[dict]:
    g = greens_data(S)
    rows = []
    for cls, reg in zip(g.d_classes, g.regular):
        rows.append({"elements": _names(S, cls), "regular": bool(reg),
                     "group_order": schutzenberger_group(S, cls[0]).order})
    return rows


def _label_rows(S: Semigroup, P) -> list[dict]:
    return [{"elements": _names(S, cls), "label": lab.render()} for cls, lab in zip(P.nodes, P.labels)]


def _hasse(P) -> list[list[int]]:
    from .greens import hasse_edges
    return [list(e) for e in hasse_edges(P.leq)]


# commands ------------------------------------------------------------------

def cmd_analyze(args) -> tuple[dict, list[str]]:
    S = load_semigroup(args.semigroup)
    K, D = build_karoubi(S), build_schutzcat(S)
    E = idempotents(S)
    LU = sorted(local_units_set(S))
    rows = _d_class_rows(S)
    _write_dot(args.dot, dot.dclasses_dot(S))
    report = {
        "order": S.order,
        "identity": None if S.identity is None else S.name(S.identity),
        "idempotents": _names(S, E),
        "local_units": _names(S, LU),
        "has_local_units": len(LU) == S.order,
        "d_classes": rows,
        "karoubi": {"objects": K.n_objects, "morphisms": K.n_morphisms},
        "schutzenberger": {"objects": D.n_objects, "morphisms": D.n_morphisms},
    }
    lines = [f"order: {S.order}",
             f"identity: {report['identity'] or '-'}",
             f"idempotents ({len(E)}): {' '.join(report['idempotents'])}",
             f"LU(S) ({len(LU)}): {' '.join(report['local_units'])}",
             f"D-classes ({len(rows)}):"]
    for r in rows:
        lines.append(f"  {{{','.join(r['elements'])}}}  eps={int(r['regular'])} |G|={r['group_order']}")
    lines.append(f"K(S): {K.n_objects} objects, {K.n_morphisms} morphisms")
    lines.append(f"D(S): {D.n_objects} objects, {D.n_morphisms} morphisms")
    return report, lines


def _category_cmd(args, build, title) -> tuple[dict, list[str]]:
    S = load_semigroup(args.semigroup)
    C = build(S)
    _write_dot(args.dot, dot.category_dot(C))
    sk, _ = skeleton(C)
    report = category_to_dict(C)
    report["skeleton"] = {"objects": sk.n_objects, "morphisms": sk.n_morphisms}
    lines = [f"{title}: {C.n_objects} objects, {C.n_morphisms} morphisms",
             f"skeleton: {sk.n_objects} objects, {sk.n_morphisms} morphisms"]
    for m, p in enumerate(C.payloads):
        a, b = C.dom[m], C.cod[m]
        lines.append(f"  ({','.join(_names(S, p))}): {S.name(C.objects[a])} -> {S.name(C.objects[b])}")
    return report, lines


def cmd_karoubi(args):
    return _category_cmd(args, build_karoubi, "K(S)")


def cmd_dcat(args):
    return _category_cmd(args, build_schutzcat, "D(S)")


def cmd_schutz(args) -> tuple[dict, list[str]]:
    S = load_semigroup(args.semigroup)
    h = S.resolve(args.element)
    g = greens_data(S)
    left = schutzenberger_group(S, h, "left")
    right = schutzenberger_group(S, h, "right")
    aut = automorphism_group_at(build_schutzcat(S), h)
    same = perm_groups_isomorphic(left, right)
    report = {"element": S.name(h), "h_class": _names(S, g.h_class(h)),
              "left_order": left.order, "right_order": right.order,
              "left_isomorphic_to_right": same,
              "automorphism_group_order": aut.order,
              "left_perms": [[S.name(left.carrier[i]) for i in p] for p in left.sorted_elements()]}
    lines = [f"H-class of {S.name(h)}: {{{','.join(report['h_class'])}}}",
             f"left Schutzenberger group: order {left.order}",
             f"right Schutzenberger group: order {right.order}",
             f"left ≅ right: {'yes' if same else 'no'}",
             f"Aut({S.name(h)}) in D(S): order {aut.order}"]
    return report, lines


def cmd_local_divisor(args) -> tuple[dict, list[str]]:
    S = load_semigroup(args.semigroup)
    s = S.resolve(args.element)
    ld = local_divisor(S, s)
    names = _names(S, ld.carrier)
    table = [[S.name(ld.carrier[j]) for j in row] for row in ld.table]
    units = _names(S, ld.units())
    report = {"element": S.name(s), "carrier": names, "identity": S.name(s),
              "table": table, "units": units}
    width = max(len(n) for n in names)
    lines = [f"local divisor at {S.name(s)}: {len(names)} elements, identity {S.name(s)}",
             " " * (width + 3) + " ".join(n.rjust(width) for n in names)]
    for n, row in zip(names, table):
        lines.append(f"{n.rjust(width)} | " + " ".join(x.rjust(width) for x in row))
    lines.append(f"units: {' '.join(units)}")
    return report, lines


def cmd_dclasses(args) -> tuple[dict, list[str]]:
    S = load_semigroup(args.semigroup)
    P = d_class_preorder(S)
    rows = _d_class_rows(S)
    _write_dot(args.dot, dot.dclasses_dot(S))
    edges = [list(e) for e in P.hasse_edges()]
    report = {"d_classes": rows, "hasse": edges}
    lines = [f"D{i}: {{{','.join(r['elements'])}}}  eps={int(r['regular'])} |G|={r['group_order']}"
             for i, r in enumerate(rows)]
    lines += [f"D{a} < D{b}" for a, b in edges]
    return report, lines


def _lift_report(S, T, F) -> dict:
    """Lift F: K(S) -> K(T) and collect the checks the pipeline promises."""
    lift = lift_functor(F)
    G = lift.functor
    good = is_good_functor(G, lift.family)
    return {"restricts_to_F": lift.restricts_to_base,
            "good": good.good,
            "equivalence": is_equivalence(G),
            "reflects_regularity": reflects_regularity(G),
            "reflects_j_order": reflects_j_order_on_objects(G),
            "object_map": [T.name(G.target.objects[o]) for o in G.obj]}


def _distinguishers(S: Semigroup, T: Semigroup) -> list[str]:
    out = []
    sks, _ = skeleton(build_karoubi(S))
    skt, _ = skeleton(build_karoubi(T))
    if sks.n_objects != skt.n_objects:
        out.append(f"skeleton of K object counts {sks.n_objects} vs {skt.n_objects}")
    elif sks.n_morphisms != skt.n_morphisms:
        out.append(f"skeleton of K morphism counts {sks.n_morphisms} vs {skt.n_morphisms}")
    ps, pt = labeled_dl_lu(S), labeled_dl_lu(T)
    if len(ps) != len(pt):
        out.append(f"D_l(LU) node counts {len(ps)} vs {len(pt)}")
    elif not labeled_preorders_isomorphic(ps, pt):
        out.append("D_l(LU) labeled preorders not isomorphic")
    return out


def cmd_compare(args) -> tuple[dict, list[str]]:
    S, T = load_semigroup(args.first), load_semigroup(args.second)
    F = find_equivalence(build_karoubi(S), build_karoubi(T), args.budget)
    report = {"karoubi_equivalent": F is not None}
    lines = []
    if F is None:
        report["distinguished_by"] = _distinguishers(S, T)
        lines.append("K(S), K(T): not equivalent")
        lines += [f"  witness: {w}" for w in report["distinguished_by"]]
    else:
        lines.append("K(S), K(T): equivalent")
        if has_local_units(S) and has_local_units(T):
            lr = _lift_report(S, T, F)
            report["lift"] = lr
            lines.append(f"lifted functor D(S) -> D(T): good={lr['good']} equivalence={lr['equivalence']}"
                         f" reflects regularity={lr['reflects_regularity']}"
                         f" reflects J-order={lr['reflects_j_order']}")
        else:
            report["lift"] = None
            lines.append("lift skipped: S or T lacks local units")
        iso = labeled_preorders_isomorphic(labeled_dl_lu(S), labeled_dl_lu(T))
        report["dl_lu_isomorphic"] = iso
        lines.append(f"D_l(LU(S)) ≅ D_l(LU(T)): {'yes' if iso else 'no'}")
    if args.d_level:
        # search hook for the converse question: D-equivalence without K-equivalence
        G = find_equivalence(build_schutzcat(S), build_schutzcat(T), args.budget)
        report["schutzenberger_equivalent"] = G is not None
        lines.append(f"D(S), D(T): {'equivalent' if G is not None else 'not equivalent'}")
        if G is not None and F is None:
            lines.append("  note: D-level equivalence without K-level equivalence")
    return report, lines


def cmd_lift(args) -> tuple[dict, list[str]]:
    S, T = load_semigroup(args.first), load_semigroup(args.second)
    KS, KT = build_karoubi(S), build_karoubi(T)
    if args.functor:
        import json
        try:
            data = json.loads(Path(args.functor).read_text())
        except (OSError, ValueError) as exc:
            raise ParseError(str(exc)) from None
        if isinstance(data, dict) and data.get("source_kind") == "schutzenberger":
            # a saved lift: restrict it back to the Karoubi envelopes
            F = restrict_to_karoubi(functor_from_dict(data, build_schutzcat(S), build_schutzcat(T)))
            if F is None:
                raise ParseError("functor does not send idempotents to idempotents")
        else:
            F = functor_from_dict(data, KS, KT)
    else:
        F = find_equivalence(KS, KT, args.budget)
        if F is None:
            return {"karoubi_equivalent": False}, ["K(S), K(T): not equivalent; nothing to lift"]
    lift = lift_functor(F)
    G = lift.functor
    good = is_good_functor(G, lift.family)
    if args.save:
        Path(args.save).write_text(dumps(functor_to_dict(G, args.first, args.second)))
    report = {"karoubi_equivalent": True,
              "input_is_equivalence": is_equivalence(F),
              "family": {"e": _names(S, lift.family.e), "f": _names(S, lift.family.f)},
              "restricts_to_F": lift.restricts_to_base,
              "good": good.good,
              "restricts_to_K_equivalence": good.restricts_to_K_equivalence,
              "equivalence": is_equivalence(G),
              "reflects_regularity": reflects_regularity(G),
              "reflects_j_order": reflects_j_order_on_objects(G),
              "object_map": {S.name(s): T.name(G.target.objects[G.obj[s]]) for s in S.elements()}}
    lines = [f"lift of {'given' if args.functor else 'found'} functor K(S) -> K(T)",
             "object map: " + " ".join(f"{k}->{v}" for k, v in report["object_map"].items())]
    for key in ("restricts_to_F", "good", "equivalence", "reflects_regularity", "reflects_j_order"):
        lines.append(f"{key}: {report[key]}")
    return report, lines


def cmd_invariants(args) -> tuple[dict, list[str]]:
    S = load_semigroup(args.semigroup)
    A = load_action(args.action, S)
    P = action_poset(A)
    dl, dq, dq_lu = labeled_dl(S), labeled_dq(A), labeled_dq_lu(A)
    if args.dot:
        _write_dot(args.dot, dot.action_poset_dot(A, P) + dot.labeled_dot(S, dq))
    B_faithful = presheaf_B(A).is_faithful()
    report = {"faithful": is_faithful(A), "presheaf_B_faithful": B_faithful,
              "poset": {"nodes": [[A.states[q] for q in o] for o in P.orbits], "hasse": _hasse(P)},
              "D_l": _label_rows(S, dl), "D_Q": _label_rows(S, dq),
              "D_Q_LU": [r["label"] for r in _label_rows(S, dq_lu)]}
    lines = [f"faithful: {report['faithful']} (B_Q faithful: {B_faithful})",
             f"P(Q): {len(P)} nodes"]
    lines += [f"  p{i}: {{{','.join(n)}}}" for i, n in enumerate(report["poset"]["nodes"])]
    lines += [f"  p{a} < p{b}" for a, b in report["poset"]["hasse"]]
    lines.append("D_Q (eps/|G|/rank):")
    lines += [f"  {{{','.join(r['elements'])}}}: {r['label']}" for r in report["D_Q"]]
    if args.against:
        B = load_action(args.against)
        found = actions_equivalent(A, B, args.budget)
        report["equivalent_to_other"] = found is not None
        lines.append(f"equivalent to {args.against}: {'yes' if found else 'no'}")
        if found is not None:
            F, eta = found
            f = induced_poset_iso(F, eta, A, B)
            report["poset_iso"] = list(f)
            lines.append("  induced P(Q) iso: " + " ".join(f"p{i}->p{j}" for i, j in enumerate(f)))
    return report, lines


def cmd_corpus_run(args) -> tuple[dict, list[str]]:
    from .suite import default_corpus, run_corpus
    report = run_corpus(default_corpus(args.max_order))
    s = report["summary"]
    lines = [f"{s['semigroups']} semigroups, {s['checks']} checks, {len(s['failed'])} failed"]
    lines += [f"  FAILED {f}" for f in s["failed"]]
    return report, lines


# argument parsing ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sgcat", description="Karoubi envelopes and Schützenberger "
                                "categories of finite semigroups.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_, files=("semigroup",), element=False, dotflag=True, budget=False):
        sp = sub.add_parser(name, help=help_)
        for f in files:
            sp.add_argument(f, help="JSON file or fixture name")
        sp.add_argument("--json", action="store_true", help="print a JSON report")
        if dotflag:
            sp.add_argument("--dot", metavar="PATH", help="write a DOT graph to PATH")
        if element:
            sp.add_argument("--element", required=True, help="element index or name")
        if budget:
            sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node cap")
        sp.set_defaults(func=func)
        return sp

    add("analyze", cmd_analyze, "summary of a semigroup")
    add("karoubi", cmd_karoubi, "the Karoubi envelope K(S)")
    add("dcat", cmd_dcat, "the Schützenberger category D(S)")
    add("schutz", cmd_schutz, "Schützenberger groups at an element", element=True, dotflag=False)
    add("local-divisor", cmd_local_divisor, "local divisor at an element", element=True, dotflag=False)
    add("dclasses", cmd_dclasses, "D-classes and their order")
    sp = add("compare", cmd_compare, "decide K(S) ≃ K(T) and report the lifted equivalence",
             files=("first", "second"), dotflag=False, budget=True)
    sp.add_argument("--d-level", action="store_true", help="also search for D(S) ≃ D(T)")
    sp = add("lift", cmd_lift, "lift a functor K(S) -> K(T) to D(S) -> D(T)",
             files=("first", "second"), dotflag=False, budget=True)
    sp.add_argument("--functor", metavar="PATH", help="functor JSON to lift (default: search)")
    sp.add_argument("--save", metavar="PATH", help="write the lifted functor as JSON")
    sp = add("invariants", cmd_invariants, "Karoubi invariants of an action",
             files=("semigroup", "action"), budget=True)
    sp.add_argument("--against", metavar="ACTION", help="test equivalence with another action")
    sp = add("corpus-run", cmd_corpus_run, "run the property suite over the corpus",
             files=(), dotflag=False)
    sp.add_argument("--max-order", type=int, default=3)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, lines = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except SearchBudgetExceeded as exc:
        print(f"search budget exceeded: {exc}", file=sys.stderr)
        return 4
    except UnknownElement as exc:
        print(f"unknown element: {exc}", file=sys.stderr)
        return 5
    except SgcatError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 3
    if args.json:
        sys.stdout.write(dumps({"schema": SCHEMA, "command": args.command, **report}))
    else:
        print("\n".join(lines))
    if args.command == "corpus-run" and report["summary"]["failed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
