import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from numsyll.errors import InputError, UnsoundRuleError
from numsyll.nogo import (
    CHAIN_GROUPS,
    chain_subset,
    check_claim,
    gamma_groups,
    gen_B,
    gen_Gamma,
    gen_Gamma_t,
    gen_Pn,
    incompleteness_experiment,
    swapped,
)
from numsyll.parser import parse_formula as F
from numsyll.proof import Rule, RuleSet, builtin_rulesets
from numsyll.semantics import models_set, theory_of
from numsyll.syntax import S, Sdagger, in_language, is_absurdity, is_complete_set


def test_atoms():
    assert gen_Pn(4) == [f"p_{i}" for i in range(8)] + [f"q_{i}" for i in range(10)]
    assert len(gen_Pn(5)) == 22
    with pytest.raises(InputError):
        gen_Pn(3)


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_atom_count(n):
    assert len(gen_Pn(n)) == 4 * n + 2


def test_gamma_examples():
    g = gen_Gamma(4, 1, "sd")
    assert {F(">0(p_3,p_4)"), F("<=1(p_3,p_4)")} <= g
    assert {F("<=0(p_0,p_7)"), F("<=1(p_0,p_7)")} <= g
    assert {F(">0(p_0,p_0)"), F(">1(p_0,p_0)")} <= g
    assert not any(is_absurdity(phi) for phi in g)


def test_gamma_groups_are_named_and_disjoint_by_shape():
    groups = gamma_groups(4, 1)
    assert len(groups) == 21
    assert set(CHAIN_GROUPS) <= set(groups)
    assert all(groups[k] for k in groups)


def test_many_becomes_more_than_z():
    g = gen_Gamma(4, 3, "sd")
    assert {F(">2(p_0,p_0)"), F(">3(p_0,p_0)")} <= g
    assert F(">0(p_3,p_4)") in g and F("<=1(p_3,p_4)") in g and F("<=3(p_3,p_4)") in g


def test_s_restriction_drops_double_negatives():
    g = gen_Gamma(4, 1, "s")
    assert all(in_language(phi, S(1)) for phi in g)
    assert g == {phi for phi in gen_Gamma(4, 1, "sd") if in_language(phi, S(1))}


def test_variant_examples():
    gt = gen_Gamma_t(4, 1, 1, "sd")
    assert F("<=0(p_1,p_2)") in gt and F(">0(p_1,p_2)") not in gt
    assert F(">1(q_2,q_3)") in gt
    assert len(gt ^ gen_Gamma(4, 1, "sd")) == 6
    removed, added = swapped(4, 2)
    assert removed[0] == F(">0(p_3,p_4)") and added[0] == F("<=0(p_3,p_4)")
    with pytest.raises(InputError):
        gen_Gamma_t(4, 3)
    with pytest.raises(InputError):
        gen_Gamma_t(4, 0)


def test_variant_at_higher_z_includes_exactly_two():
    gt = gen_Gamma_t(4, 1, 2, "sd")
    assert {F(">1(q_2,q_3)"), F("<=2(q_2,q_3)")} <= gt


def test_model_examples():
    b = gen_B(4, 1, 1)
    assert b.atoms_of("a") == {"p_0", "p_1", "q_0", "q_1", "q_2", "q_3"}
    assert b.atoms_of("a'") == {f"p_{i}" for i in range(2, 8)} | {f"q_{i}" for i in range(2, 10)}
    assert b.atoms_of("e") == frozenset() and b.atoms_of("e'") == frozenset()
    assert not any(e.startswith("b_0_1_") or e.startswith("b_2_3_") for e in b.domain)
    assert {"b_0_0_0", "b_0_0_1"} <= set(b.domain)
    with pytest.raises(InputError):
        gen_B(4, 3)


@pytest.mark.parametrize("n,z,lang", [(4, 1, "sd"), (5, 1, "s"), (4, 2, "sd"), (5, 3, "s")])
def test_family_invariants(n, z, lang):
    lid = Sdagger(z) if lang == "sd" else S(z)
    atoms = gen_Pn(n)
    g = gen_Gamma(n, z, lang)
    assert is_complete_set(g, atoms, lid).exactly_one
    for t in range(1, n - 1):
        gt = gen_Gamma_t(n, t, z, lang)
        assert is_complete_set(gt, atoms, lid).exactly_one
        assert theory_of(gen_B(n, t, z), atoms, lid) == gt


def test_claims_on_smallest_instance():
    for claim in (1, 2, 3, 4):
        rep = check_claim(4, 1, "sd", claim)
        assert rep.verdict, rep.witnesses[:5]
        assert rep.seconds >= 0 and rep.line().startswith(f"claim {claim}: PASS")
    with pytest.raises(InputError):
        check_claim(4, 1, "sd", 5)


def test_claim_two_reports_chain():
    rep = check_claim(5, 1, "sd", 2)
    assert rep.details["violated"] == "<=0(p_0,p_9)"
    assert rep.details["witness_engine"] == "unsat"
    assert rep.witnesses[-1].startswith("violation")


def test_chain_subset_is_small():
    assert len(chain_subset(4, 1)) < len(gen_Gamma(4, 1)) // 10


def test_claim_failure_carries_witness(monkeypatch):
    import numsyll.nogo as nogo

    real = nogo.gen_Gamma_t

    def broken(n, t, z=1, lang="Sdagger"):
        return real(n, t, z, lang) | {F(">0(p_1,p_2)")}

    monkeypatch.setattr(nogo, "gen_Gamma_t", broken)
    rep = check_claim(4, 1, "sd", 4)
    assert not rep.verdict and rep.witnesses


def test_experiment_examples():
    rules = builtin_rulesets(1)["darii_ferio"] | builtin_rulesets(1)["transfer_z"]
    rep = incompleteness_experiment(rules, 1, "sd")
    assert rep.verdict and rep.n == 6
    assert rep.details["stable"] and not rep.details["absurdity_derivable"]
    empty = incompleteness_experiment(RuleSet(), 1, "sd")
    assert empty.verdict and empty.n == 4 and empty.details["closure_size"] == empty.details["gamma_size"]
    bad = Rule("bad", (F("<=0(q,~o)"), F(">0(p,q)")), F(">0(p,~o)"))
    with pytest.raises(UnsoundRuleError) as info:
        incompleteness_experiment(RuleSet([bad]), 1, "sd")
    assert info.value.countermodel is not None


def test_experiment_width_drives_n():
    wide = Rule("wide", (F("<=0(q,~o)"), F(">0(p,q)"), F(">0(p,p)")), F(">0(p,o)"))
    rep = incompleteness_experiment(RuleSet([wide]), 1, "s")
    assert rep.n == 7 and rep.verdict


@settings(max_examples=6, deadline=None)
@given(st.integers(4, 6), st.data())
def test_variants_pairwise_inside_gamma(n, data):
    t = data.draw(st.integers(1, n - 2))
    u = data.draw(st.integers(1, n - 2))
    if t != u:
        assert gen_Gamma_t(n, t) & gen_Gamma_t(n, u) <= gen_Gamma(n)


def test_model_is_not_a_model_of_gamma():
    assert not models_set(gen_B(5, 2, 1), gen_Gamma(5, 1))
