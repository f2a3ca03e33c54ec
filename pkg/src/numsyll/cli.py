"""Command-line interface.

Exit codes: 0 sat / derivable / verified, 1 unsat / underivable / refuted,
2 usage or parse error, 3 resource limit, 4 undecided (refute engine only).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import nogo
from .errors import InputError, ParseError, ResourceLimitError, SyllogisticError, UnsoundRuleError
from .parser import (
    parse_formula,
    parse_graph,
    parse_rules,
    parse_theory,
    render_graph,
    render_structure,
    render_theory,
)
from .proof import (
    RuleSet,
    builtin_rulesets,
    check_rule_sound,
    derive_direct,
    derive_indirect,
    render_derivation,
    resolve_ruleset,
)
from .solver import ENGINES, countermodel, reduce_3col, reduce_T_to_S1, satisfiable
from .syntax import LanguageId

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_LIMIT, EXIT_UNKNOWN = 0, 1, 2, 3, 4
SCHEMA = 1


def _err(msg):
    print(msg, file=sys.stderr)


def _read(path) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write(path, text):
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _theory(path):
    return parse_theory(_read(path)).formula_set


def _rules(spec: str, z: int) -> RuleSet:
    """A rule file, or built-in names joined with '+'."""
    if Path(spec).is_file():
        return RuleSet(parse_rules(_read(spec)).rules)
    if all(part.strip() in builtin_rulesets(z) for part in spec.split("+")):
        return resolve_ruleset(spec, z)
    raise InputError(f"{spec!r} is neither a rule file nor a built-in rule set "
                     f"({', '.join(sorted(builtin_rulesets(z)))})")


def _emit_json(doc):
    print(json.dumps({"schema": SCHEMA, **doc}, indent=2, sort_keys=False))


# ------------------------------------------------------------------ commands

def cmd_sat(args):
    formulas = _theory(args.file)
    result = satisfiable(formulas, args.z, args.engine, max_nodes=args.max_nodes)
    print(result.verdict)
    if result.sat:
        text = render_structure(result.structure())
        if args.model_out:
            _write(args.model_out, text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    for line in result.trace:
        print(line)
    return EXIT_NO if result.unsat else EXIT_UNKNOWN


def cmd_entail(args):
    premises = _theory(args.file)
    goal = parse_formula(args.conclusion)
    model = countermodel(premises, goal, args.z, args.engine, max_nodes=args.max_nodes)
    if model is None:
        print(f"entailed: {goal}")
        return EXIT_OK
    print(f"not entailed: {goal}")
    print("countermodel:")
    sys.stdout.write(render_structure(model))
    return EXIT_NO


def cmd_derive(args):
    premises = _theory(args.file)
    goal = parse_formula(args.goal)
    z = args.z if args.z is not None else max([phi.bound for phi in premises | {goal}])
    rules = _rules(args.rules, z)
    if args.indirect:
        tree = derive_indirect(premises, rules, goal, max_nodes=args.max_nodes)
    else:
        tree = derive_direct(premises, rules, goal)
    if tree is None:
        print(f"not derivable: {goal}")
        return EXIT_NO
    sys.stdout.write(render_derivation(tree))
    return EXIT_OK


def cmd_rules_check(args):
    rules = _rules(args.file, args.z)
    entries, ok = [], True
    for rule in rules:
        verdict = check_rule_sound(rule, args.z)
        ok = ok and verdict.sound
        entry = {"rule": rule.name, "width": rule.width, "sound": verdict.sound}
        if not verdict.sound:
            entry["countermodel"] = render_structure(verdict.countermodel).splitlines()
        entries.append(entry)
        if not verdict.sound:
            _err(f"unsound: {rule}")
    _emit_json({"z": args.z, "rules": entries, "all_sound": ok})
    return EXIT_OK if ok else EXIT_NO


def cmd_nogo_generate(args):
    lang = LanguageId.parse(args.lang, args.z)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    atoms = nogo.gen_Pn(args.n)
    gamma = sorted(nogo.gen_Gamma(args.n, args.z, lang))
    path = out / f"gamma_n{args.n}_z{args.z}_{lang.family}.txt"
    path.write_text(render_theory(gamma, f"counterexample family, n={args.n}, {lang}, {len(gamma)} formulas"))
    written = [path]
    if args.t is not None:
        gt = sorted(nogo.gen_Gamma_t(args.n, args.t, args.z, lang))
        path = out / f"gamma_n{args.n}_t{args.t}_z{args.z}_{lang.family}.txt"
        path.write_text(render_theory(gt, f"satisfiable variant t={args.t}, n={args.n}, {lang}"))
        model = nogo.gen_B(args.n, args.t, args.z)
        mpath = out / f"model_n{args.n}_t{args.t}_z{args.z}.struct"
        mpath.write_text(render_structure(model, atoms))
        written += [path, mpath]
    if args.figures:
        from .plotting import plot_group_sizes, plot_incidence

        written.append(plot_group_sizes(nogo.gamma_groups(args.n, args.z), out / f"groups_n{args.n}_z{args.z}.png",
                                        f"formula groups, n={args.n}, z={args.z}"))
        if args.t is not None:
            written.append(plot_incidence(nogo.gen_B(args.n, args.t, args.z), atoms,
                                          out / f"model_n{args.n}_t{args.t}_z{args.z}.png",
                                          f"model elements vs atoms, n={args.n}, t={args.t}"))
    for p in written:
        print(p)
    return EXIT_OK


def _claim_list(text):
    try:
        claims = [int(c) for c in text.split(",") if c.strip()]
    except ValueError:
        raise InputError(f"bad claim list {text!r}; expected e.g. 1,2,3,4") from None
    if not claims or any(c not in (1, 2, 3, 4) for c in claims):
        raise InputError(f"claims must be drawn from 1,2,3,4, got {text!r}")
    return claims


def cmd_nogo_verify(args):
    lang = LanguageId.parse(args.lang, args.z)
    if args.experiment:
        if not args.rules:
            raise InputError("--experiment needs --rules")
        reports = [nogo.incompleteness_experiment(_rules(args.rules, args.z), args.z, lang,
                                                  max_nodes=args.max_nodes)]
    else:
        if args.n is None:
            raise InputError("--n is required unless --experiment is given")
        reports = [nogo.check_claim(args.n, args.z, lang, c, max_nodes=args.max_nodes)
                   for c in _claim_list(args.claims)]
    if args.json:
        _emit_json({"reports": [r.to_json() for r in reports], "verdict": all(r.verdict for r in reports)})
    else:
        for r in reports:
            print(r.line())
            for w in r.witnesses[-5:] if r.claim == "2" else r.witnesses[:5]:
                print(f"  {w}")
    if args.figures:
        from .plotting import plot_claim_timings

        out = Path(args.figures)
        out.mkdir(parents=True, exist_ok=True)
        _err(f"wrote {plot_claim_timings(reports, out / 'claims.png')}")
    return EXIT_OK if all(r.verdict for r in reports) else EXIT_NO


def cmd_reduce_3col(args):
    graph = parse_graph(_read(args.graph))
    formulas = reduce_3col(graph)
    _write(args.output, render_theory(
        formulas, f"3-colourability of a graph with {graph.number_of_nodes()} vertices, "
                  f"{graph.number_of_edges()} edges"))
    return EXIT_OK


def cmd_reduce_t_to_s1(args):
    formulas = sorted(_theory(args.file))
    _write(args.output, render_theory(reduce_T_to_S1(formulas)))
    return EXIT_OK


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="numsyll", description="Numerical syllogistic reasoning toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sat", help="decide satisfiability of a theory file")
    p.add_argument("file")
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--engine", choices=ENGINES, default="witness")
    p.add_argument("--model-out", metavar="FILE")
    p.add_argument("--max-nodes", type=int, default=10**7)
    p.set_defaults(func=cmd_sat)

    p = sub.add_parser("entail", help="decide whether a theory entails a formula")
    p.add_argument("file")
    p.add_argument("--conclusion", required=True)
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--engine", choices=("brute", "witness"), default="witness")
    p.add_argument("--max-nodes", type=int, default=10**7)
    p.set_defaults(func=cmd_entail)

    p = sub.add_parser("derive", help="search for a derivation of a goal")
    p.add_argument("file")
    p.add_argument("--goal", required=True)
    p.add_argument("--rules", required=True, help="rule file or built-in names joined with '+'")
    p.add_argument("--indirect", action="store_true", help="allow reductio ad absurdum")
    p.add_argument("--max-nodes", type=int, default=10**5)
    p.add_argument("--z", type=int, default=None, help="bound used to instantiate built-in rule sets")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("rules", help="rule file utilities")
    rsub = p.add_subparsers(dest="rules_command", required=True)
    q = rsub.add_parser("check", help="check every rule for soundness")
    q.add_argument("file")
    q.add_argument("--z", type=int, required=True)
    q.set_defaults(func=cmd_rules_check)

    p = sub.add_parser("nogo", help="the counterexample family")
    nsub = p.add_subparsers(dest="nogo_command", required=True)
    q = nsub.add_parser("generate", help="write the family, a variant and its model to files")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--z", type=int, default=1)
    q.add_argument("--lang", default="sd", choices=("s", "sd"))
    q.add_argument("--t", type=int)
    q.add_argument("-o", "--output", required=True, metavar="DIR")
    q.add_argument("--figures", action="store_true", help="also render PNG figures")
    q.set_defaults(func=cmd_nogo_generate)

    q = nsub.add_parser("verify", help="check the claims or run the incompleteness experiment")
    q.add_argument("--n", type=int)
    q.add_argument("--z", type=int, default=1)
    q.add_argument("--lang", default="sd", choices=("s", "sd"))
    q.add_argument("--claims", default="1,2,3,4")
    q.add_argument("--experiment", action="store_true")
    q.add_argument("--rules")
    q.add_argument("--json", action="store_true")
    q.add_argument("--figures", metavar="DIR")
    q.add_argument("--max-nodes", type=int, default=10**7)
    q.set_defaults(func=cmd_nogo_verify)

    p = sub.add_parser("reduce", help="hardness reductions")
    rsub = p.add_subparsers(dest="reduce_command", required=True)
    q = rsub.add_parser("3col", help="3-colourability of a DIMACS graph to S_3 formulas")
    q.add_argument("graph")
    q.add_argument("-o", "--output", required=True)
    q.set_defaults(func=cmd_reduce_3col)
    q = rsub.add_parser("t-to-s1", help="eliminate <=3(p,p) in favour of S_1 formulas")
    q.add_argument("file")
    q.add_argument("-o", "--output", required=True)
    q.set_defaults(func=cmd_reduce_t_to_s1)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        _err(f"parse error: {exc}")
        return EXIT_USAGE
    except ResourceLimitError as exc:
        _err(f"resource limit: {exc}")
        return EXIT_LIMIT
    except UnsoundRuleError as exc:
        _err(f"error: {exc}")
        if exc.countermodel is not None:
            _err(render_structure(exc.countermodel).rstrip())
        return EXIT_USAGE
    except (InputError, SyllogisticError, OSError) as exc:
        _err(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
