"""End-to-end acceptance checks, one test per criterion, each with a time budget.

Every test prints a single ``criterion k: PASS/FAIL (seconds)`` line.
"""

import itertools
import random
import time
from contextlib import contextmanager

import networkx as nx
import pytest

from oracles import naive_direct_closure, three_colourable
from numsyll.nogo import check_claim, gen_Gamma, gen_Pn, incompleteness_experiment
from numsyll.parser import parse_formula as F
from numsyll.proof import (
    Rule,
    RuleSet,
    builtin_rulesets,
    check_rule_sound,
    darii,
    derive_indirect,
    direct_closure,
    ferio,
    transfer_rules,
)
from numsyll.semantics import models_set
from numsyll.solver import entails, reduce_3col, reduce_T_to_S1, refute_witness_chain, satisfiable
from numsyll.syntax import (
    AT_MOST,
    MORE_THAN,
    Formula,
    Literal,
    S,
    Sdagger,
    formulas_over,
    is_absurdity,
)

pytestmark = pytest.mark.acceptance


@contextmanager
def criterion(k, limit):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        secs = time.perf_counter() - start
        ok = ok and secs < limit
        with _capsys[0].disabled():
            print(f"\ncriterion {k}: {'PASS' if ok else 'FAIL'} ({secs:.2f}s, limit {limit}s)")
    assert secs < limit, f"criterion {k} took {secs:.1f}s, limit {limit}s"


_capsys = [None]


@pytest.fixture(autouse=True)
def _hold_capsys(capsys):
    _capsys[0] = capsys
    yield
    _capsys[0] = None


def test_criterion_1_worked_entailment():
    premises = [F("<=1(o,p)"), F("<=1(o,~p)"), F("<=1(q,~o)"), F(">1(q,~r)")]
    with criterion(1, 5):
        assert satisfiable(premises, 1, "witness").sat
        assert entails(premises, F("<=1(q,r)"), 1, "witness")


def test_criterion_2_rule_soundness():
    with criterion(2, 5):
        for z in range(4):
            for rule in [darii(), ferio(), *transfer_rules(z)]:
                assert check_rule_sound(rule, z).sound, rule
        bad = Rule("bad_darii", (F("<=0(q,~o)"), F(">0(p,q)")), F(">0(p,~o)"))
        verdict = check_rule_sound(bad, 1)
        assert not verdict.sound
        cm = verdict.countermodel
        assert len(cm) <= 3
        assert models_set(cm, bad.antecedents) and not models_set(cm, [bad.consequent])


def test_criterion_3_claim_one():
    with criterion(3, 10):
        for n in (4, 5, 6):
            for lang in ("s", "sd"):
                rep = check_claim(n, 1, lang, 1)
                assert rep.verdict, rep.witnesses[:3]
                assert rep.details["complete"] and rep.details["exactly_one"] and rep.details["absurdities"] == 0


@pytest.mark.parametrize("n,z", [(4, 1), (4, 2), (5, 1), (5, 2)])
def test_criterion_4_claim_two(n, z):
    with criterion(f"4 [n={n}, z={z}]", 60):
        rep = check_claim(n, z, "sd", 2)
        assert rep.verdict
        assert rep.details["refute"] == "unsat" and rep.details["witness_engine"] == "unsat"
        assert rep.details["violated"] == f"<=0(p_0,p_{2 * n - 1})"
        assert rep.witnesses[-1].startswith("violation") and f"<=0(p_0,p_{2 * n - 1})" in rep.witnesses[-1]


def test_criterion_5_claim_three():
    with criterion(5, 10):
        for n in (4, 5, 6):
            assert check_claim(n, 1, "sd", 3).verdict


def test_criterion_6_claim_four():
    with criterion(6, 60):
        for n, z, lang in itertools.product((4, 5, 6), (1, 2), ("s", "sd")):
            rep = check_claim(n, z, lang, 4)
            assert rep.verdict, (n, z, lang, rep.witnesses[:3])


def test_criterion_7_incompleteness_experiment():
    rules = builtin_rulesets(1)["darii_ferio"] | builtin_rulesets(1)["transfer_z"]
    with criterion(7, 120):
        rep = incompleteness_experiment(rules, 1, "sd")
        assert rep.n == 6 and rep.details["max_width"] == 2
        assert direct_closure(gen_Gamma(6, 1, "sd"), rules, gen_Pn(6)) == gen_Gamma(6, 1, "sd")
        assert rep.details["stable"] and not rep.details["absurdity_derivable"]
        assert rep.details["gamma_unsatisfiable"]
        assert rep.verdict


def _random_formula(rng, atoms, z, allowed=None):
    while True:
        phi = Formula(rng.choice([AT_MOST, MORE_THAN]), rng.randint(0, z),
                      Literal(rng.choice(atoms), rng.random() < 0.6),
                      Literal(rng.choice(atoms), rng.random() < 0.6))
        if allowed is None or allowed(phi):
            return phi


def test_criterion_8_engine_agreement():
    rng = random.Random(20261019)
    stats = {"sat": 0, "unsat": 0, "refuted": 0}
    with criterion(8, 120):
        for _ in range(500):
            z = rng.randint(0, 2)
            atoms = ["p", "q", "r"][: rng.randint(1, 3)]
            phis = {_random_formula(rng, atoms, z) for _ in range(rng.randint(1, 4))}
            brute = satisfiable(phis, z, "brute", cell_cap=z + 1)
            witness = satisfiable(phis, z, "witness")
            assert brute.verdict == witness.verdict, sorted(map(str, phis))
            if brute.sat:
                assert models_set(brute.structure(), phis) and models_set(witness.structure(), phis)
                assert len(brute.structure()) <= max(1, (z + 1) * len(phis))
            ref = refute_witness_chain(phis)
            assert ref.verdict in ("unsat", "unknown")
            if ref.unsat:
                stats["refuted"] += 1
                assert brute.unsat
            stats[brute.verdict] += 1
        # both verdicts must actually occur for the comparison to mean anything
        assert stats["sat"] > 50 and stats["unsat"] > 50 and stats["refuted"] > 0


def _in_T(phi):
    a, b = phi.args
    if phi.quantifier is AT_MOST and phi.bound == 3:
        return a == b and a.positive
    return phi.bound <= 1 and (a.positive or b.positive)


def test_criterion_9_reductions():
    rng = random.Random(9)
    with criterion(9, 120):
        for _ in range(100):
            atoms = ["p", "q"][: rng.randint(1, 2)]
            phis = {_random_formula(rng, atoms, 1, _in_T) for _ in range(rng.randint(0, 3))}
            target = rng.choice(atoms)
            phis.add(Formula(AT_MOST, 3, Literal(target), Literal(target)))
            if rng.random() < 0.5:
                phis.add(Formula(MORE_THAN, rng.randint(0, 1), Literal(target), Literal(target)))
            out = reduce_T_to_S1(sorted(phis))
            before = satisfiable(phis, 3, "brute", cell_cap=4)
            after = satisfiable(out, 1, "brute", cell_cap=2)
            assert before.verdict == after.verdict, sorted(map(str, phis))
            # every model of the output keeps the reduced atom at size <= 3
            assert entails(out, F(f"<=3({target},{target})"), 3, "brute")
            assert entails(out, F(f"<=3({target},{target})"), 3, "witness")
            if after.sat:
                assert models_set(after.structure(), phis)

        graphs = [g for g in nx.graph_atlas_g() if 1 <= g.number_of_nodes() <= 6]
        assert len(graphs) == 208
        graphs += [nx.complete_graph(4), nx.cycle_graph(5)]
        for g in graphs:
            g = nx.convert_node_labels_to_integers(g, first_label=1)
            expected = three_colourable(g)
            assert satisfiable(reduce_3col(g), 3, "witness").sat == expected, sorted(g.edges)
        k4 = nx.convert_node_labels_to_integers(nx.complete_graph(4), first_label=1)
        c5 = nx.convert_node_labels_to_integers(nx.cycle_graph(5), first_label=1)
        assert satisfiable(reduce_T_to_S1(reduce_3col(k4)), 1).unsat
        assert satisfiable(reduce_T_to_S1(reduce_3col(c5)), 1).sat


def _complete_sets(atoms, lang, step=1):
    at_most = [phi for phi in formulas_over(atoms, lang) if phi.is_at_most]
    for bits in itertools.islice(itertools.product((0, 1), repeat=len(at_most)), 0, None, step):
        yield [phi if b else phi.negate() for phi, b in zip(at_most, bits)]


def test_criterion_10_indirect_refutation_needs_no_reductio_on_complete_sets():
    rules = builtin_rulesets(1)["darii_ferio"] | builtin_rulesets(1)["contradiction_z"]
    counts = {"sets": 0, "refuted": 0}
    with criterion(10, 60):
        # every complete exactly-one set of S_1 over two atoms
        for psi in _complete_sets(["p", "q"], S(1)):
            counts["sets"] += 1
            if derive_indirect(psi, rules, None, lang=S(1)) is not None:
                counts["refuted"] += 1
                assert any(is_absurdity(phi) for phi in direct_closure(psi, rules))
        assert counts["sets"] == 2 ** 14 and counts["refuted"] > 0
        # an evenly spread sample of the two-negative-argument language
        for psi in _complete_sets(["p", "q"], Sdagger(1), step=997):
            if derive_indirect(psi, rules, None, lang=Sdagger(1)) is not None:
                closure = naive_direct_closure(psi, rules, ["p", "q"])
                assert any(is_absurdity(phi) for phi in closure)


def test_criterion_11_excluded():
    with _capsys[0].disabled():
        print("\ncriterion 11: EXCLUDED (universal statements over all rule sets and asymptotic "
              "hardness are not executable; covered by criteria 7 and 9)")
    pytest.skip("not reproducible as stated; substituted by criteria 7 and 9")
