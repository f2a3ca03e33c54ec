"""The counterexample family Γⁿ, its satisfiable variants Γⁿ_t and their
models 𝔅ⁿ_t, with machine checks of the claims that together show no finite
sound rule set is complete for S_z or S†_z (z >= 1).

Formula groups are named by the polarity shape of their arguments: ``pp+-2``
holds formulas over a positive p-literal and a negative p-literal, and so on.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .errors import InputError, UnsoundRuleError
from .semantics import Structure, models_set, theory_of
from .syntax import (
    Formula,
    LanguageId,
    Literal,
    at_most,
    expand_star,
    in_language,
    is_absurdity,
    is_complete_set,
    more_than,
)

# groups the unsatisfiability argument actually uses
CHAIN_GROUPS = ("pp++1", "pp++3", "qq++1", "pq+-1", "pq+-2")


def _lang(lang, z) -> LanguageId:
    if isinstance(lang, LanguageId):
        return lang
    return LanguageId.parse(lang, z)


def _check_n(n):
    if n < 4:
        raise InputError(f"n must be at least 4, got {n}")


def _check_t(n, t):
    if not 1 <= t <= n - 2:
        raise InputError(f"t must satisfy 1 <= t <= n-2 = {n - 2}, got {t}")


def p(i) -> Literal:
    return Literal(f"p_{i}")


def q(i) -> Literal:
    return Literal(f"q_{i}")


def gen_Pn(n: int) -> list[str]:
    """Atoms p_0..p_{2n-1}, q_0..q_{2n+1}."""
    _check_n(n)
    return [f"p_{i}" for i in range(2 * n)] + [f"q_{i}" for i in range(2 * n + 2)]


def gamma_groups(n: int, z: int = 1) -> dict[str, frozenset[Formula]]:
    """Γⁿ over S†_z, split into its named groups.

    Uniqueness claims expand to ∃*=1, emptiness claims to ∃*<=0 and the
    "many" claims to ∃*>z, so that every argument pair gets one full
    count class.
    """
    _check_n(n)
    if z < 1:
        raise InputError(f"z must be at least 1, got {z}")
    P, Q = 2 * n, 2 * n + 2

    def one(a, b):
        return expand_star("=", 1, z, a, b)

    def none(a, b):
        return expand_star("<=", 0, z, a, b)

    def many(a, b):
        return expand_star(">", z, z, a, b)

    def collect(pairs, star):
        out = set()
        for a, b in pairs:
            out |= star(a, b)
        return frozenset(out)

    odd = lambda i: i % 2 == 1  # noqa: E731
    even = lambda i: i % 2 == 0  # noqa: E731
    g = {}
    g["pp++1"] = collect([(p(i), p(i + 1)) for i in range(0, 2 * n - 1)], one)
    g["pp++2"] = collect([(p(i), p(i + 3)) for i in range(0, 2 * n - 3) if even(i)], one)
    g["pp++3"] = none(p(0), p(2 * n - 1))
    g["pp++4"] = collect([(p(i), p(j)) for i in range(P) for j in range(i, P)
                          if j != i + 1 and (odd(i) or j != i + 3) and (i != 0 or j != 2 * n - 1)], many)
    g["pp+-1"] = collect([(p(i), ~p(i)) for i in range(P)], none)
    g["pp+-2"] = collect([(p(i), ~p(j)) for i in range(P) for j in range(P) if i != j], many)
    g["pp--1"] = collect([(~p(i), ~p(j)) for i in range(P) for j in range(i, P)], many)

    g["qq++1"] = collect([(q(i), q(i + 1)) for i in range(0, 2 * n + 1) if even(i)], one)
    g["qq++2"] = collect([(q(i), q(j)) for i in range(Q) for j in range(i, Q)
                          if odd(i) or j != i + 1], many)
    g["qq+-1"] = collect([(q(i), ~q(i)) for i in range(Q)], none)
    g["qq+-2"] = collect([(q(i), ~q(j)) for i in range(Q) for j in range(Q) if i != j], many)
    g["qq--1"] = collect([(~q(i), ~q(j)) for i in range(Q) for j in range(i, Q)], many)

    g["pq++1"] = collect([(p(i + 1), q(i)) for i in range(0, 2 * n - 1) if even(i)], one)
    g["pq++2"] = collect([(p(i), q(i + 1)) for i in range(P)], one)
    g["pq++3"] = collect([(p(i), q(i + 3)) for i in range(0, 2 * n - 1) if even(i)], one)
    g["pq++4"] = collect([(p(i), q(j)) for i in range(P) for j in range(Q)
                          if j != i + 1 and (odd(i) or j != i + 3) and (odd(j) or i != j + 1)], many)
    g["pq+-1"] = collect([(p(i), ~q(i)) for i in range(P)], none)
    g["pq+-2"] = collect([(p(i), ~q(i + 2)) for i in range(P)], none)
    g["pq+-3"] = collect([(p(i), ~q(j)) for i in range(P) for j in range(Q) if j != i and j != i + 2], many)
    g["pq-+1"] = collect([(~p(i), q(j)) for i in range(P) for j in range(Q)], many)
    g["pq--1"] = collect([(~p(i), ~q(j)) for i in range(P) for j in range(Q)], many)
    return g


def _restrict(formulas, lang: LanguageId) -> frozenset[Formula]:
    return frozenset(phi for phi in formulas if in_language(phi, lang))


def gen_Gamma(n: int, z: int = 1, lang="Sdagger") -> frozenset[Formula]:
    lang = _lang(lang, z)
    out = frozenset().union(*gamma_groups(n, z).values())
    return _restrict(out, lang)


def chain_subset(n: int, z: int = 1) -> frozenset[Formula]:
    """The part of Γⁿ the unsatisfiability argument runs on."""
    g = gamma_groups(n, z)
    return frozenset().union(*(g[k] for k in CHAIN_GROUPS))


def swapped(n: int, t: int) -> tuple[list[Formula], list[Formula]]:
    """Formulas removed from Γⁿ, and their replacements, to form Γⁿ_t."""
    _check_n(n)
    _check_t(n, t)
    removed = [more_than(0, p(2 * t - 1), p(2 * t)), more_than(0, p(2 * t - 2), p(2 * t + 1)),
               at_most(1, q(2 * t), q(2 * t + 1))]
    return removed, [phi.negate() for phi in removed]


def gen_Gamma_t(n: int, t: int, z: int = 1, lang="Sdagger") -> frozenset[Formula]:
    removed, added = swapped(n, t)
    base = gen_Gamma(n, z, lang)
    return (base - set(removed)) | _restrict(added, _lang(lang, z))


def gen_B(n: int, t: int, z: int = 1) -> Structure:
    """The model 𝔅ⁿ_t of Γⁿ_t, with z+1 copies of each b, c and d element."""
    _check_n(n)
    _check_t(n, t)
    P, Q = 2 * n, 2 * n + 2
    odd = lambda i: i % 2 == 1  # noqa: E731
    elems: dict[str, set[str]] = {}
    elems["a"] = {f"p_{i}" for i in range(0, 2 * t)} | {f"q_{i}" for i in range(0, 2 * t + 2)}
    elems["a'"] = {f"p_{i}" for i in range(2 * t, P)} | {f"q_{i}" for i in range(2 * t, Q)}
    for i in range(P):
        for j in range(i, P):
            if j != i + 1 and (odd(i) or j != i + 3) and (i != 0 or j != 2 * n - 1):
                for k in range(z + 1):
                    elems[f"b_{i}_{j}_{k}"] = {f"p_{i}", f"q_{i}", f"q_{i + 2}", f"p_{j}", f"q_{j}", f"q_{j + 2}"}
    for i in range(P):
        for j in range(Q):
            if j != i + 1 and (odd(i) or j != i + 3) and (odd(j) or i != j + 1):
                for k in range(z + 1):
                    elems[f"c_{i}_{j}_{k}"] = {f"p_{i}", f"q_{i}", f"q_{i + 2}", f"q_{j}"}
    for i in range(Q):
        for j in range(i, Q):
            if odd(i) or j != i + 1:
                for k in range(z + 1):
                    elems[f"d_{i}_{j}_{k}"] = {f"q_{i}", f"q_{j}"}
    elems["e"] = set()
    elems["e'"] = set()
    interp: dict[str, set[str]] = {a: set() for a in gen_Pn(n)}
    for name, atoms in elems.items():
        for a in atoms:
            interp[a].add(name)
    return Structure(list(elems), interp)


# ------------------------------------------------------------------ claims

@dataclass
class ClaimReport:
    claim: str
    verdict: bool
    n: int | None = None
    z: int | None = None
    lang: str | None = None
    details: dict = field(default_factory=dict)
    witnesses: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.verdict else "FAIL"
        where = f"n={self.n} z={self.z} lang={self.lang}"
        extra = " ".join(f"{k}={v}" for k, v in self.details.items() if not isinstance(v, (list, dict)))
        return f"claim {self.claim}: {status} ({where}; {extra}; {self.seconds:.2f}s)"

    def to_json(self) -> dict:
        return {
            "claim": self.claim, "verdict": self.verdict, "n": self.n, "z": self.z,
            "lang": self.lang, "details": self.details, "witnesses": self.witnesses,
            "seconds": round(self.seconds, 4),
        }


def _claim1(n, z, lang):
    gamma = gen_Gamma(n, z, lang)
    rep = is_complete_set(gamma, gen_Pn(n), lang)
    absurd = sorted(str(phi) for phi in gamma if is_absurdity(phi))
    details = {"size": len(gamma), "complete": rep.complete, "exactly_one": rep.exactly_one,
               "absurdities": len(absurd)}
    witnesses = [f"missing {phi}" for phi in rep.missing[:10]] + [f"both {phi}" for phi in rep.both[:10]] + absurd[:10]
    return rep.complete and not absurd, details, witnesses


def _claim2(n, z, lang, max_nodes):
    from .solver import refute_witness_chain, satisfiable

    ref = refute_witness_chain(gen_Gamma(n, z, lang))
    subset = _restrict(chain_subset(n, z), lang)
    sat = satisfiable(subset, z, "witness", max_nodes=max_nodes)
    details = {"refute": ref.verdict, "violated": str(ref.violated), "trace_steps": len(ref.trace),
               "witness_engine": sat.verdict, "witness_nodes": sat.nodes, "subset_size": len(subset)}
    return ref.unsat and sat.unsat, details, ref.trace


def _claim3(n, z, lang):
    gamma = gen_Gamma(n, z, lang)
    variants = {t: gen_Gamma_t(n, t, z, lang) for t in range(1, n - 1)}
    bad, pairs = [], 0
    for t in variants:
        for u in variants:
            if t < u:
                pairs += 1
                extra = (variants[t] & variants[u]) - gamma
                bad.extend(f"t={t},t'={u}: {phi}" for phi in sorted(extra))
    return not bad, {"pairs": pairs}, bad


def _claim4(n, z, lang):
    atoms = gen_Pn(n)
    witnesses, per_t = [], {}
    ok = True
    for t in range(1, n - 1):
        model = gen_B(n, t, z)
        target = gen_Gamma_t(n, t, z, lang)
        check = models_set(model, target)
        theory = theory_of(model, atoms, lang)
        same = theory == target
        per_t[t] = {"models": bool(check), "theory_equal": same, "domain": len(model)}
        if not check:
            witnesses.append(f"t={t}: fails {check.failing}")
        if not same:
            witnesses.extend(f"t={t}: theory differs at {phi}" for phi in sorted(theory ^ target)[:10])
        ok = ok and bool(check) and same
    return ok, {"t_values": n - 2, "per_t": per_t}, witnesses


def check_claim(n: int, z: int, lang, claim: int, *, max_nodes: int = 10**7) -> ClaimReport:
    _check_n(n)
    lang = _lang(lang, z)
    start = time.perf_counter()
    if claim == 1:
        ok, details, wit = _claim1(n, z, lang)
    elif claim == 2:
        ok, details, wit = _claim2(n, z, lang, max_nodes)
    elif claim == 3:
        ok, details, wit = _claim3(n, z, lang)
    elif claim == 4:
        ok, details, wit = _claim4(n, z, lang)
    else:
        raise InputError(f"unknown claim {claim!r}; pick 1, 2, 3 or 4")
    return ClaimReport(str(claim), ok, n, z, lang.family, details, wit, time.perf_counter() - start)


def incompleteness_experiment(rules, z: int = 1, lang="Sdagger", *, max_nodes: int = 10**7) -> ClaimReport:
    """Show that a given finite set of sound rules is incomplete.

    With n = max(width + 4, 4) the direct closure of Γⁿ under the rules stays
    inside Γⁿ, which contains no absurdity; as Γⁿ is complete, reductio
    cannot help either.  Yet Γⁿ is unsatisfiable.
    """
    from .proof import RuleSet, check_rule_sound, direct_closure

    lang = _lang(lang, z)
    ruleset = rules if isinstance(rules, RuleSet) else RuleSet(list(rules))
    start = time.perf_counter()
    for rule in ruleset.rules:
        verdict = check_rule_sound(rule, z)
        if not verdict.sound:
            raise UnsoundRuleError(rule, verdict.countermodel)
    n = max(ruleset.max_width + 4, 4)
    gamma = gen_Gamma(n, z, lang)
    closure = direct_closure(gamma, ruleset, gen_Pn(n))
    new = sorted(closure - gamma)
    derived_absurd = sorted(str(phi) for phi in closure if is_absurdity(phi))
    unsat = check_claim(n, z, lang, 2, max_nodes=max_nodes)
    stable = not new
    verdict = stable and not derived_absurd and unsat.verdict
    details = {
        "rules": len(ruleset.rules), "max_width": ruleset.max_width, "n": n,
        "gamma_size": len(gamma), "closure_size": len(closure), "stable": stable,
        "absurdity_derivable": bool(derived_absurd), "gamma_unsatisfiable": unsat.verdict,
        "conclusion": "rule set incomplete" if verdict else "inconclusive",
    }
    witnesses = [f"new {phi}" for phi in new[:20]] + derived_absurd[:10]
    return ClaimReport("experiment", verdict, n, z, lang.family, details, witnesses,
                       time.perf_counter() - start)
