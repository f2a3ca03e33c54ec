"""Syllogistic rules, direct and indirect derivability, and derivation trees.

A rule is a finite set of antecedents over schematic atoms together with a
consequent.  Instances arise by substituting atoms for atoms; substitutions
need not be injective.  Direct derivability is a forward-chaining fixpoint.
Indirect derivability adds reductio ad absurdum and is decided by case
splitting on undecided formulas: a premise set is refutable iff both of its
extensions by θ and by θ̄ are, and a complete premise set is refutable only
if its direct closure already contains an absurdity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import InputError, ResourceLimitError
from .syntax import (
    AT_MOST,
    MORE_THAN,
    Formula,
    LanguageId,
    Literal,
    at_most,
    atoms_of,
    formulas_over,
    in_language,
    is_absurdity,
    more_than,
)


# ------------------------------------------------------------------ rules

@dataclass(frozen=True)
class Rule:
    name: str
    antecedents: tuple[Formula, ...]
    consequent: Formula

    def __post_init__(self):
        object.__setattr__(self, "antecedents", tuple(self.antecedents))

    @property
    def width(self) -> int:
        return len(set(self.antecedents))

    def atoms(self) -> frozenset[str]:
        return atoms_of(self.antecedents + (self.consequent,))

    def formulas(self) -> tuple[Formula, ...]:
        return self.antecedents + (self.consequent,)

    def __str__(self):
        ants = ", ".join(str(a) for a in self.antecedents)
        return f"{self.name}: {{{ants}}} / {self.consequent}"


@dataclass(frozen=True)
class Substitution:
    """An atom-to-atom map; need not be injective."""

    pairs: tuple[tuple[str, str], ...]

    @classmethod
    def of(cls, mapping: Mapping[str, str] | "Substitution") -> "Substitution":
        if isinstance(mapping, Substitution):
            return mapping
        return cls(tuple(sorted(mapping.items())))

    def as_dict(self) -> dict[str, str]:
        return dict(self.pairs)

    def __str__(self):
        return "{" + ", ".join(f"{a}→{b}" for a, b in self.pairs) + "}"


def instantiate(rule: Rule, g) -> Rule:
    g = Substitution.of(g).as_dict()
    missing = sorted(rule.atoms() - g.keys())
    if missing:
        raise InputError(f"substitution is not total on the atoms of {rule.name}: missing {', '.join(missing)}")
    return Rule(rule.name, tuple(a.rename(g) for a in rule.antecedents), rule.consequent.rename(g))


@dataclass
class RuleSet:
    rules: list[Rule] = field(default_factory=list)

    def __post_init__(self):
        self.rules = list(self.rules)
        names = [r.name for r in self.rules]
        dupes = sorted({n for n in names if names.count(n) > 1})
        if dupes:
            raise InputError(f"duplicate rule names: {', '.join(dupes)}")

    @property
    def max_width(self) -> int:
        return max((r.width for r in self.rules), default=0)

    def __len__(self):
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)

    def __or__(self, other: "RuleSet") -> "RuleSet":
        seen = {r.name for r in self.rules}
        return RuleSet(self.rules + [r for r in other.rules if r.name not in seen])

    def get(self, name: str) -> Rule | None:
        for r in self.rules:
            if r.name == name:
                return r
        return None


def _as_ruleset(rules) -> RuleSet:
    if isinstance(rules, RuleSet):
        return rules
    return RuleSet(list(rules or ()))


# ------------------------------------------------------------------ built-ins

def darii(name="darii") -> Rule:
    return Rule(name, (at_most(0, "q", "~o"), more_than(0, "p", "q")), more_than(0, "p", "o"))


def ferio(name="ferio") -> Rule:
    return Rule(name, (at_most(0, "q", "o"), more_than(0, "p", "q")), more_than(0, "p", "~o"))


def rule_k(name="k") -> Rule:
    return Rule(name, (at_most(0, "p", "o"), more_than(0, "p", "o")), more_than(0, "p", "~p"))


def transfer_rules(z: int) -> list[Rule]:
    """Both transfer schemata for every 0 <= i <= j <= z.

    If at most i q's are outside o and more than j p's are q's, then more
    than j-i p's are o's; likewise with o complemented.
    """
    out = []
    for i in range(z + 1):
        for j in range(i, z + 1):
            out.append(Rule(f"transfer_{i}_{j}", (at_most(i, "q", "~o"), more_than(j, "p", "q")),
                            more_than(j - i, "p", "o")))
            out.append(Rule(f"transfer_neg_{i}_{j}", (at_most(i, "q", "o"), more_than(j, "p", "q")),
                            more_than(j - i, "p", "~o")))
    return out


def contradiction_rules(z: int) -> list[Rule]:
    """{<=i(l,m), >i(l,m)} / >0(p,~p) for each argument shape and i <= z.

    Non-injective instances cover the same-atom shapes.
    """
    shapes = [("pos", "p", "o"), ("mixed", "p", "~o"), ("neg", "~p", "~o")]
    out = []
    for tag, a, b in shapes:
        for i in range(z + 1):
            out.append(Rule(f"contra_{tag}_{i}", (at_most(i, a, b), more_than(i, a, b)), more_than(0, "p", "~p")))
    return out


def builtin_rulesets(z: int) -> dict[str, RuleSet]:
    if z < 0:
        raise InputError(f"z must be nonnegative, got {z}")
    return {
        "darii_ferio": RuleSet([darii(), ferio()]),
        "transfer_z": RuleSet(transfer_rules(z)),
        "contradiction_z": RuleSet(contradiction_rules(z)),
        "darii_k": RuleSet([darii(), rule_k()]),
    }


def resolve_ruleset(spec: str, z: int) -> RuleSet:
    """Combine built-in rule sets named like ``darii_ferio+transfer_z``."""
    table = builtin_rulesets(z)
    out = RuleSet()
    for part in spec.split("+"):
        part = part.strip()
        if part not in table:
            raise InputError(f"unknown built-in rule set {part!r}; known: {', '.join(sorted(table))}")
        out = out | table[part]
    return out


# ------------------------------------------------------------------ derivations

@dataclass(frozen=True)
class Premise:
    formula: Formula
    tag: int | None = None

    @property
    def conclusion(self) -> Formula:
        return self.formula


@dataclass(frozen=True)
class RuleApp:
    rule: Rule
    substitution: Substitution
    children: tuple
    conclusion: Formula


@dataclass(frozen=True)
class RaaApp:
    """Concludes ``conclusion`` from a refutation of its negation.

    Premise leaves of ``child`` tagged ``tag`` are the discharged
    occurrences of the negation of ``conclusion``.
    """

    conclusion: Formula
    tag: int
    child: object


Derivation = Premise | RuleApp | RaaApp


def open_premises(d) -> frozenset[Formula]:
    out = set()
    for node in iter_nodes(d):
        if isinstance(node, Premise) and node.tag is None:
            out.add(node.formula)
    return frozenset(out)


def iter_nodes(d):
    stack = [d]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, RuleApp):
            stack.extend(reversed(node.children))
        elif isinstance(node, RaaApp):
            stack.append(node.child)


def size(d) -> int:
    return sum(1 for _ in iter_nodes(d))


def _map_leaves(d, fn):
    """Rebuild ``d`` replacing each untagged premise leaf by ``fn(leaf)``."""
    memo = {}

    def go(node):
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, Premise):
            out = fn(node) if node.tag is None else node
        elif isinstance(node, RuleApp):
            kids = tuple(go(c) for c in node.children)
            out = node if all(a is b for a, b in zip(kids, node.children)) else \
                RuleApp(node.rule, node.substitution, kids, node.conclusion)
        else:
            kid = go(node.child)
            out = node if kid is node.child else RaaApp(node.conclusion, node.tag, kid)
        memo[key] = out
        return out

    return go(d)


def renumber(d):
    """Give every reductio step its own tag, numbered in pre-order from 1."""
    counter = itertools.count(1)

    def go(node, env):
        if isinstance(node, Premise):
            if node.tag is None:
                return node
            return Premise(node.formula, env[node.tag])
        if isinstance(node, RuleApp):
            return RuleApp(node.rule, node.substitution, tuple(go(c, env) for c in node.children), node.conclusion)
        new = next(counter)
        return RaaApp(node.conclusion, new, go(node.child, {**env, node.tag: new}))

    return go(d, {})


def rename_derivation(d, mapping: Mapping[str, str]):
    """Apply an atom map to every formula and substitution in ``d``."""

    def go(node):
        if isinstance(node, Premise):
            return Premise(node.formula.rename(mapping), node.tag)
        if isinstance(node, RuleApp):
            sub = Substitution.of({a: mapping.get(b, b) for a, b in node.substitution.pairs})
            return RuleApp(node.rule, sub, tuple(go(c) for c in node.children), node.conclusion.rename(mapping))
        return RaaApp(node.conclusion.rename(mapping), node.tag, go(node.child))

    return go(d)


def render_derivation(d, indent: str = "  ") -> str:
    lines = []

    def go(node, depth):
        pad = indent * depth
        if isinstance(node, Premise):
            lines.append(pad + (f"[{node.formula}]^{node.tag}" if node.tag is not None else str(node.formula)))
        elif isinstance(node, RuleApp):
            lines.append(f"{pad}{node.conclusion}  [{node.rule.name}]")
            for c in node.children:
                go(c, depth + 1)
        else:
            lines.append(f"{pad}{node.conclusion}  [RAA]^{node.tag}")
            go(node.child, depth + 1)

    go(d, 0)
    return "\n".join(lines) + "\n"


@dataclass
class Verification:
    ok: bool
    message: str = ""

    def __bool__(self):
        return self.ok


def verify_derivation(d, premises: Iterable[Formula], rules) -> Verification:
    premises = frozenset(premises)
    ruleset = _as_ruleset(rules)

    def go(node, scope):
        if isinstance(node, Premise):
            if node.tag is None:
                if node.formula not in premises:
                    return f"undischarged premise {node.formula} is not among the premises"
                return None
            if node.tag not in scope:
                return f"premise [{node.formula}]^{node.tag} has no enclosing reductio with that tag"
            if scope[node.tag] != node.formula:
                return f"tag {node.tag} discharges {scope[node.tag]}, not {node.formula}"
            return None
        if isinstance(node, RuleApp):
            rule = ruleset.get(node.rule.name)
            if rule is None or rule != node.rule:
                return f"rule {node.rule.name} is not in the rule set"
            try:
                inst = instantiate(rule, node.substitution)
            except InputError as exc:
                return str(exc)
            if inst.consequent != node.conclusion:
                return f"{rule.name} under {node.substitution} yields {inst.consequent}, not {node.conclusion}"
            got = [c.conclusion for c in node.children]
            if sorted(got) != sorted(inst.antecedents):
                return (f"{rule.name} at {node.conclusion} needs antecedents "
                        f"{', '.join(map(str, inst.antecedents))} but has {', '.join(map(str, got))}")
            for c in node.children:
                err = go(c, scope)
                if err:
                    return err
            return None
        if isinstance(node, RaaApp):
            if not is_absurdity(node.child.conclusion):
                return f"reductio at {node.conclusion} refutes {node.child.conclusion}, which is no absurdity"
            if node.tag in scope:
                return f"tag {node.tag} reused inside its own scope"
            return go(node.child, {**scope, node.tag: node.conclusion.negate()})
        return f"unknown node {node!r}"

    err = go(d, {})
    return Verification(err is None, err or "ok")


# ------------------------------------------------------------------ closure

def _match_lit(pattern: Literal, fact: Literal, binding: dict) -> dict | None:
    if pattern.positive != fact.positive:
        return None
    bound = binding.get(pattern.atom)
    if bound is None:
        out = dict(binding)
        out[pattern.atom] = fact.atom
        return out
    return binding if bound == fact.atom else None


def _match(pattern: Formula, fact: Formula, binding: dict):
    """All extensions of ``binding`` mapping ``pattern`` onto ``fact``."""
    if pattern.quantifier is not fact.quantifier or pattern.bound != fact.bound:
        return
    l, m = pattern.args
    a, b = fact.args
    seen = []
    for x, y in ((a, b), (b, a)):
        b1 = _match_lit(l, x, binding)
        if b1 is None:
            continue
        b2 = _match_lit(m, y, b1)
        if b2 is not None and b2 not in seen:
            seen.append(b2)
            yield b2


class _Index:
    def __init__(self):
        self.by_qb: dict[tuple, list[Formula]] = {}
        self.by_qbl: dict[tuple, list[Formula]] = {}

    def add(self, phi: Formula):
        key = (phi.quantifier, phi.bound)
        self.by_qb.setdefault(key, []).append(phi)
        a, b = phi.args
        self.by_qbl.setdefault(key + (a,), []).append(phi)
        if b != a:
            self.by_qbl.setdefault(key + (b,), []).append(phi)


class Closure:
    """A saturated fact set with provenance for tree reconstruction."""

    def __init__(self, rules: RuleSet, atoms: Iterable[str], lang: LanguageId | None = None):
        self.rules = rules
        self.atoms = tuple(sorted(set(atoms)))
        self.lang = lang
        self.known: set[Formula] = set()
        self.seeds: set[Formula] = set()
        self.provenance: dict[Formula, tuple] = {}
        self.index = _Index()
        self._trees: dict[Formula, object] = {}
        self._axioms_fired = False

    def copy(self) -> "Closure":
        other = Closure(self.rules, self.atoms, self.lang)
        other.known = set(self.known)
        other._axioms_fired = self._axioms_fired
        other.provenance = dict(self.provenance)
        other.index.by_qb = {k: list(v) for k, v in self.index.by_qb.items()}
        other.index.by_qbl = {k: list(v) for k, v in self.index.by_qbl.items()}
        return other

    def _admissible(self, phi: Formula) -> bool:
        if not phi.atoms() <= set(self.atoms):
            return False
        return self.lang is None or in_language(phi, self.lang)

    def _extend(self, ants, binding, chosen):
        """Match the remaining antecedents against all known facts."""
        if not ants:
            yield binding, chosen
            return
        # most constrained antecedent first
        best, best_k = None, None
        for k, ant in enumerate(ants):
            nb = sum(1 for l in ant.args if l.atom in binding)
            if best is None or nb > best:
                best, best_k = nb, k
        ant = ants[best_k]
        rest = ants[:best_k] + ants[best_k + 1:]
        l, m = ant.args
        if l.atom in binding and m.atom in binding:
            phi = ant.rename(binding)
            if phi in self.known:
                yield from self._extend(rest, binding, chosen + ((ant, phi),))
            return
        if l.atom in binding or m.atom in binding:
            fixed = l if l.atom in binding else m
            key = (ant.quantifier, ant.bound, Literal(binding[fixed.atom], fixed.positive))
            cands = self.index.by_qbl.get(key, ())
        else:
            cands = self.index.by_qb.get((ant.quantifier, ant.bound), ())
        for fact in list(cands):
            for b in _match(ant, fact, binding):
                yield from self._extend(rest, b, chosen + ((ant, fact),))

    def _fire(self, rule, binding, chosen, out):
        free = sorted(rule.consequent.atoms() - binding.keys())
        for values in itertools.product(self.atoms, repeat=len(free)):
            full = {**binding, **dict(zip(free, values))}
            phi = rule.consequent.rename(full)
            if phi in self.known or not self._admissible(phi):
                continue
            ordered = tuple(ant.rename(full) for ant in rule.antecedents)
            self.known.add(phi)
            self.provenance[phi] = (rule, Substitution.of({a: full[a] for a in rule.atoms()}), ordered)
            out.append(phi)

    def saturate(self, new: Iterable[Formula], *, stop_on_absurdity: bool = False):
        """Add ``new`` as seeds and close under the rules (semi-naive)."""
        delta = []
        for phi in new:
            if phi not in self.known:
                self.known.add(phi)
                delta.append(phi)
            self.seeds.add(phi)
            self.provenance.pop(phi, None)
        if not self._axioms_fired:
            # rules without antecedents fire once
            self._axioms_fired = True
            for rule in self.rules:
                if not rule.antecedents:
                    self._fire(rule, {}, (), delta)
        for phi in delta:
            self.index.add(phi)
        while delta:
            if stop_on_absurdity and any(is_absurdity(phi) for phi in delta):
                return self
            delta_index = _Index()
            for phi in delta:
                delta_index.add(phi)
            out: list[Formula] = []
            for rule in self.rules:
                ants = rule.antecedents
                for k, ant in enumerate(ants):
                    for fact in delta_index.by_qb.get((ant.quantifier, ant.bound), ()):
                        for b in _match(ant, fact, {}):
                            rest = ants[:k] + ants[k + 1:]
                            for binding, chosen in self._extend(rest, b, ((ant, fact),)):
                                self._fire(rule, binding, chosen, out)
            for phi in out:
                self.index.add(phi)
            delta = out
        return self

    def absurdity(self) -> Formula | None:
        found = sorted(phi for phi in self.known if is_absurdity(phi))
        return found[0] if found else None

    def tree(self, phi: Formula):
        """A direct derivation of ``phi`` from the seeds."""
        if phi in self._trees:
            return self._trees[phi]
        if phi not in self.known:
            raise KeyError(phi)
        stack = [phi]
        while stack:
            top = stack[-1]
            if top in self._trees:
                stack.pop()
                continue
            if top in self.seeds or top not in self.provenance:
                self._trees[top] = Premise(top)
                stack.pop()
                continue
            rule, sub, prems = self.provenance[top]
            pending = [p for p in prems if p not in self._trees]
            if pending:
                stack.extend(pending)
                continue
            self._trees[top] = RuleApp(rule, sub, tuple(self._trees[p] for p in prems), top)
            stack.pop()
        return self._trees[phi]


def _closure(formulas, rules, atoms, lang=None, **kw) -> Closure:
    return Closure(_as_ruleset(rules), atoms, lang).saturate(formulas, **kw)


def direct_closure(formulas: Iterable[Formula], rules, atoms: Iterable[str] | None = None,
                   lang: LanguageId | None = None) -> frozenset[Formula]:
    formulas = frozenset(formulas)
    atoms = atoms_of(formulas) if atoms is None else frozenset(atoms)
    if not atoms:
        raise InputError("atom set must be nonempty")
    return frozenset(_closure(formulas, rules, atoms, lang).known)


def derive_direct(formulas: Iterable[Formula], rules, goal: Formula, lang: LanguageId | None = None):
    formulas = frozenset(formulas)
    cl = _closure(formulas, rules, atoms_of(formulas | {goal}), lang)
    if goal not in cl.known:
        return None
    return cl.tree(goal)


# ------------------------------------------------------------------ reductio

class _Refuter:
    def __init__(self, rules: RuleSet, atoms, lang: LanguageId, max_nodes: int):
        self.rules = rules
        self.atoms = tuple(sorted(atoms))
        self.lang = lang
        self.max_nodes = max_nodes
        self.nodes = 0
        self.memo: dict[frozenset, object] = {}
        self.tags = itertools.count(1)
        self.universe = [phi for phi in formulas_over(self.atoms, lang) if phi.is_at_most]

    def tick(self):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise ResourceLimitError(f"indirect derivation search exceeded {self.max_nodes} nodes", self.nodes)

    def closure(self, base: Closure | None, extra) -> Closure:
        self.tick()
        if base is None:
            return Closure(self.rules, self.atoms, self.lang).saturate(extra)
        cl = base.copy()
        cl.seeds = set(base.known)
        return cl.saturate(extra)

    def refute(self, cl: Closure):
        """A derivation of an absurdity whose open leaves lie in ``cl.known``."""
        bad = cl.absurdity()
        if bad is not None:
            return cl.tree(bad)
        key = frozenset(cl.known)
        if key in self.memo:
            return self.memo[key]
        self.memo[key] = None  # cycle guard; sets only grow, so not hit in practice
        theta = next((phi for phi in self.universe
                      if phi not in cl.known and phi.negate() not in cl.known), None)
        result = None
        if theta is not None:
            result = self.split(cl, theta)
        self.memo[key] = result
        return result

    def assume(self, cl: Closure, theta: Formula):
        """Refute ``cl.known ∪ {theta}`` with open leaves in ``cl.known ∪ {theta}``."""
        sub = self.closure(cl, [theta])
        d = self.refute(sub)
        if d is None:
            return None
        return _map_leaves(d, lambda leaf: leaf if leaf.formula in sub.seeds else sub.tree(leaf.formula))

    def split(self, cl: Closure, theta: Formula):
        left = self.assume(cl, theta)
        if left is None:
            return None
        right = self.assume(cl, theta.negate())
        if right is None:
            return None
        tag = next(self.tags)
        discharged = _map_leaves(left, lambda leaf: Premise(leaf.formula, tag) if leaf.formula == theta else leaf)
        raa = RaaApp(theta.negate(), tag, discharged)
        return _map_leaves(right, lambda leaf: raa if leaf.formula == theta.negate() else leaf)

    def discharge(self, d, hypothesis: Formula, conclusion: Formula):
        tag = next(self.tags)
        inner = _map_leaves(d, lambda leaf: Premise(leaf.formula, tag) if leaf.formula == hypothesis else leaf)
        return RaaApp(conclusion, tag, inner)


def default_language(formulas: Iterable[Formula]) -> LanguageId:
    return LanguageId("Sdagger", max((phi.bound for phi in formulas), default=0))


def derive_indirect(formulas: Iterable[Formula], rules, goal: Formula | None = None, *,
                    lang: LanguageId | None = None, max_nodes: int = 10**5):
    """Decide derivability with reductio; ``goal=None`` asks for any absurdity.

    Returns a derivation tree or None.  Hypotheses range over the formulas
    of ``lang`` (default S†_z, z the largest bound present) on the atoms of
    the premises and goal.
    """
    formulas = frozenset(formulas)
    rules = _as_ruleset(rules)
    every = formulas | ({goal} if goal is not None else set())
    atoms = atoms_of(every)
    if not atoms:
        raise InputError("nothing to derive from: no atoms")
    lang = lang or default_language(every)
    ref = _Refuter(rules, atoms, lang, max_nodes)
    base = ref.closure(None, formulas)

    def ground(d, cl):
        return _map_leaves(d, lambda leaf: leaf if leaf.formula in cl.seeds else cl.tree(leaf.formula))

    if goal is None:
        d = ref.refute(base)
        return None if d is None else renumber(ground(d, base))
    if goal in base.known:
        return base.tree(goal)
    # reductio on the goal itself
    d = ref.assume(base, goal.negate())
    if d is not None:
        return renumber(ground(ref.discharge(d, goal.negate(), goal), base))
    # otherwise close under every conclusion reductio can supply
    extra = {}
    for theta in formulas_over(atoms, lang):
        if theta in base.known or theta.negate() in base.known:
            continue
        d = ref.assume(base, theta)
        if d is not None:
            extra[theta.negate()] = ref.discharge(d, theta, theta.negate())
    if not extra:
        return None
    top = ref.closure(base, list(extra))
    if goal not in top.known:
        return None
    tree = _map_leaves(top.tree(goal), lambda leaf: extra.get(leaf.formula, leaf))
    return renumber(ground(tree, base))


def indirectly_refutable(formulas, rules, *, lang=None, max_nodes: int = 10**5) -> bool:
    return derive_indirect(formulas, rules, None, lang=lang, max_nodes=max_nodes) is not None


# ------------------------------------------------------------------ soundness

@dataclass
class RuleSoundness:
    rule: Rule
    sound: bool
    countermodel: object = None

    def __bool__(self):
        return self.sound


def check_rule_sound(rule: Rule, z: int | None = None, engine: str = "witness") -> RuleSoundness:
    from .solver import countermodel

    if z is None:
        z = max(phi.bound for phi in rule.formulas())
    model = countermodel(rule.antecedents, rule.consequent, z, engine)
    return RuleSoundness(rule, model is None, model)


__all__ = [
    "AT_MOST", "MORE_THAN", "Closure", "Premise", "RaaApp", "Rule", "RuleApp", "RuleSet",
    "RuleSoundness", "Substitution", "Verification", "builtin_rulesets", "check_rule_sound",
    "contradiction_rules", "darii", "derive_direct", "derive_indirect", "direct_closure",
    "ferio", "indirectly_refutable", "instantiate", "open_premises", "render_derivation",
    "rename_derivation", "renumber", "resolve_ruleset", "rule_k", "transfer_rules", "verify_derivation",
]
