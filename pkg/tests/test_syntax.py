import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import formula_sets, formulas
from numsyll.errors import BoundError, InputError
from numsyll.syntax import (
    AT_MOST,
    MORE_THAN,
    Formula,
    LanguageId,
    Literal,
    S,
    Sdagger,
    absurdity,
    at_most,
    expand_star,
    formulas_over,
    in_language,
    is_absurdity,
    is_complete_set,
    more_than,
    negate,
)


def test_literal_complement_and_order():
    p = Literal("p")
    assert ~p == Literal("p", False)
    assert ~~p == p
    assert str(~p) == "~p"
    assert sorted([Literal("q"), ~p, p]) == [p, ~p, Literal("q")]


@pytest.mark.parametrize("bad", ["P", "1p", "", "p-q", "p q"])
def test_bad_atom_names(bad):
    with pytest.raises(InputError):
        Literal(bad)


def test_argument_order_is_irrelevant():
    assert at_most(1, "q", "~r") == at_most(1, "~r", "q")
    assert hash(more_than(0, "p", "q")) == hash(more_than(0, "q", "p"))
    assert str(at_most(1, "~r", "q")) == "<=1(q,~r)"


def test_same_literal_twice():
    phi = at_most(1, "p", "p")
    assert phi.args == (Literal("p"), Literal("p"))


def test_negative_bound_rejected():
    with pytest.raises(BoundError):
        at_most(-1, "p", "q")


def test_negate_examples():
    assert negate(at_most(1, "q", "r")) == more_than(1, "q", "r")
    assert negate(negate(more_than(0, "p", "~q"))) == more_than(0, "p", "~q")
    assert negate(more_than(0, "p", "~p")) == at_most(0, "p", "~p")


def test_absurdity_examples():
    assert is_absurdity(more_than(0, "p", "~p"))
    assert is_absurdity(more_than(1, "q", "~q"))
    assert not is_absurdity(more_than(0, "p", "~q"))
    assert not is_absurdity(at_most(0, "p", "~p"))
    assert is_absurdity(absurdity())


def test_expand_star_examples():
    assert expand_star("<=", 0, 1, "p", "q") == {at_most(0, "p", "q"), at_most(1, "p", "q")}
    assert expand_star("=", 1, 1, "p", "q") == {more_than(0, "p", "q"), at_most(1, "p", "q")}
    assert expand_star(">", 1, 3, "p", "q") == {more_than(0, "p", "q"), more_than(1, "p", "q")}


@pytest.mark.parametrize("kind,i,z", [("<=", 2, 1), (">", -1, 1), ("=", 0, 1), ("=", 3, 2)])
def test_expand_star_out_of_range(kind, i, z):
    with pytest.raises(BoundError):
        expand_star(kind, i, z, "p", "q")


@given(st.integers(1, 4), st.data())
def test_expand_star_equals_union(z, data):
    i = data.draw(st.integers(1, z))
    assert expand_star("=", i, z, "p", "~q") == expand_star(">", i - 1, z, "p", "~q") | expand_star("<=", i, z, "p", "~q")


def test_language_membership_examples():
    assert in_language(at_most(1, "p", "~q"), S(1))
    assert in_language(at_most(0, "~p", "~q"), Sdagger(0))
    assert not in_language(at_most(0, "~p", "~q"), S(0))
    assert not in_language(more_than(2, "p", "q"), S(1))
    assert in_language(more_than(7, "~p", "~q"), LanguageId("Ndagger"))
    assert not in_language(more_than(7, "~p", "~q"), LanguageId("N"))


def test_language_parse():
    assert LanguageId.parse("sd", 2) == Sdagger(2)
    assert LanguageId.parse("S", 1) == S(1)
    with pytest.raises(InputError):
        LanguageId.parse("x", 1)
    with pytest.raises(InputError):
        LanguageId("S", None)


@given(formulas(max_bound=3), st.integers(0, 3), st.booleans())
def test_languages_closed_under_negation(phi, z, dagger):
    lang = Sdagger(z) if dagger else S(z)
    assert in_language(phi, lang) == in_language(phi.negate(), lang)


@given(formulas())
def test_negate_is_involution_changing_only_quantifier(phi):
    psi = phi.negate()
    assert psi.negate() == phi
    assert psi.quantifier != phi.quantifier
    assert (psi.bound, psi.args) == (phi.bound, phi.args)


def test_formulas_over_counts():
    # S_0 over {p}: pairs (p,p), (p,~p); two quantifiers each
    assert len(formulas_over(["p"], S(0))) == 4
    # S†_1 over {p,q}: 10 pairs, 2 bounds, 2 quantifiers
    assert len(formulas_over(["p", "q"], Sdagger(1))) == 40
    with pytest.raises(InputError):
        formulas_over(["p"], LanguageId("N"))


def test_completeness_examples():
    rep = is_complete_set([], ["p"], S(0))
    assert not rep.complete and len(rep.missing) == 2
    rep = is_complete_set([at_most(0, "p", "p"), at_most(0, "p", "~p")], ["p"], S(0))
    assert rep.complete and rep.exactly_one
    both = [at_most(0, "p", "p"), more_than(0, "p", "p"), at_most(0, "p", "~p")]
    rep = is_complete_set(both, ["p"], S(0))
    assert rep.complete and not rep.exactly_one and rep.both == [at_most(0, "p", "p")]


def test_completeness_preconditions():
    with pytest.raises(InputError):
        is_complete_set([at_most(0, "p", "q")], ["p"], S(0))
    with pytest.raises(InputError):
        is_complete_set([at_most(0, "~p", "~p")], ["p"], S(0))
    with pytest.raises(InputError):
        is_complete_set([], [], S(0))


@given(st.lists(st.booleans(), min_size=20, max_size=20), formulas(("p", "q"), 1))
def test_completeness_survives_additions(picks, extra):
    base = [phi if keep else phi.negate()
            for phi, keep in zip([f for f in formulas_over(["p", "q"], Sdagger(1)) if f.is_at_most], picks)]
    assert is_complete_set(base, ["p", "q"], Sdagger(1)).exactly_one
    assert is_complete_set(base + [extra], ["p", "q"], Sdagger(1)).complete


def test_rename_recanonicalises():
    phi = at_most(0, "q", "~o")
    assert phi.rename({"q": "z", "o": "a"}) == at_most(0, "~a", "z")
    assert phi.rename({}) == phi
