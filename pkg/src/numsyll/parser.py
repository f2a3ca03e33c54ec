"""Text formats: formula DSL, quasi-English sentences, theory, rule,
structure and graph files.

DSL formulas look like ``<=1(q,~r)`` or ``>0(p,q)``.  The English front end
accepts the fixed sentence templates::

    At most 1 q is not an r
    More than 0 non-ps are not qs
    No p is a q / Every p is a q / Some p is (not) a q
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import networkx as nx

from .errors import DocumentParseError, ParseError
from .semantics import Structure
from .syntax import ATOM_RE, AT_MOST, MORE_THAN, Formula, Literal

__all__ = [
    "TheoryDocument", "RuleDocument",
    "parse_formula", "parse_theory", "parse_rules", "parse_structure", "parse_graph",
    "render", "render_theory", "render_rules", "render_structure", "render_graph",
]


# --------------------------------------------------------------------- DSL

class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def error(self, msg):
        return ParseError(msg, column=self.pos + 1)

    def eat(self, token):
        self.skip_ws()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def expect(self, token):
        if not self.eat(token):
            raise self.error(f"expected {token!r}")

    def integer(self):
        self.skip_ws()
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            raise self.error("expected a nonnegative integer bound")
        self.pos = m.end()
        return int(m.group())

    def literal(self):
        negative = self.eat("~")
        self.skip_ws()
        m = re.compile(r"[a-z][a-z0-9_]*").match(self.text, self.pos)
        if not m:
            raise self.error("expected an atom")
        self.pos = m.end()
        return Literal(m.group(), not negative)

    def end(self):
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error("unexpected trailing input")


def _parse_dsl(text: str) -> Formula:
    sc = _Scanner(text)
    if sc.eat("<=") or sc.eat("≤"):
        q = AT_MOST
    elif sc.eat(">"):
        q = MORE_THAN
    else:
        raise sc.error("expected '<=' or '>'")
    bound = sc.integer()
    sc.expect("(")
    a = sc.literal()
    sc.expect(",")
    b = sc.literal()
    sc.expect(")")
    sc.end()
    return Formula(q, bound, a, b)


# ----------------------------------------------------------------- English

_NUMERIC = re.compile(r"(at most|more than)\s+(\d+)\s+(.+?)\s+(is|are)\s+(not\s+)?(?:(?:a|an)\s+)?(.+)")
_CLASSICAL = re.compile(r"(no|every|all|some)\s+(.+?)\s+(is|are)\s+(not\s+)?(?:(?:a|an)\s+)?(.+)")


def _noun(phrase: str, plural: bool, text: str) -> Literal:
    words = phrase.split()
    if len(words) > 1 and words[-1] == "s":
        words, plural = words[:-1], False
    if words and words[0] == "non" and len(words) > 1:
        words = ["non-" + words[1]] + words[2:]
    if len(words) != 1:
        raise ParseError(f"cannot read noun phrase {phrase!r} in {text!r}")
    word = words[0]
    positive = True
    if word.startswith("non-"):
        positive, word = False, word[4:]
    if plural and len(word) > 1 and word.endswith("s"):
        word = word[:-1]
    if not ATOM_RE.match(word):
        raise ParseError(f"{word!r} is not a valid atom in {text!r}")
    return Literal(word, positive)


def _parse_english(text: str) -> Formula:
    norm = " ".join(text.strip().rstrip(".").lower().split())
    m = _NUMERIC.fullmatch(norm)
    if m:
        qword, num, subj, verb, neg, obj = m.groups()
        plural = verb == "are"
        a = _noun(subj, plural, text)
        b = _noun(obj, plural, text)
        if neg:
            b = ~b
        q = AT_MOST if qword == "at most" else MORE_THAN
        return Formula(q, int(num), a, b)
    m = _CLASSICAL.fullmatch(norm)
    if m:
        det, subj, verb, neg, obj = m.groups()
        plural = verb == "are"
        a = _noun(subj, plural, text)
        b = _noun(obj, plural, text)
        if det in ("every", "all"):
            # Every a is a b: nothing is an a and a non-b
            return Formula(AT_MOST, 0, a, b if neg else ~b)
        if det == "no":
            return Formula(AT_MOST, 0, a, ~b if neg else b)
        return Formula(MORE_THAN, 0, a, ~b if neg else b)
    raise ParseError(f"unknown sentence template: {text.strip()!r}")


def parse_formula(text: str) -> Formula:
    """Parse a DSL formula or a quasi-English sentence."""
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty formula")
    if stripped[0] in "<>≤":
        return _parse_dsl(text)
    return _parse_english(text)


def _article(word: str) -> str:
    # single letters are read by name: "an r", "a q"
    if len(word) == 1 or not word[1].isalpha():
        return "an" if word[0] in "aefhilmnorsx" else "a"
    return "an" if word[0] in "aeiou" else "a"


def render(phi: Formula, style: str = "dsl") -> str:
    """Render a formula; ``dsl`` output is canonical and parses back exactly."""
    if style == "dsl":
        return str(phi)
    if style != "english":
        raise ValueError(f"unknown style {style!r}")
    a, b = phi.args
    if not a.positive and b.positive:
        a, b = b, a
    plural = phi.bound != 1
    head = "At most" if phi.is_at_most else "More than"
    subj = (a.atom if a.positive else "non-" + a.atom) + ("s" if plural else "")
    not_ = "" if b.positive else "not "
    if plural:
        return f"{head} {phi.bound} {subj} are {not_}{b.atom}s"
    return f"{head} {phi.bound} {subj} is {not_}{_article(b.atom)} {b.atom}"


# ------------------------------------------------------------------ theory

def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


@dataclass
class TheoryDocument:
    formulas: list[Formula] = field(default_factory=list)
    lines: list[int] = field(default_factory=list)

    @property
    def formula_set(self) -> frozenset[Formula]:
        return frozenset(self.formulas)

    def __len__(self):
        return len(self.formulas)


def parse_theory(text: str) -> TheoryDocument:
    """One formula per line; ``#`` comments; blank lines ignored."""
    doc = TheoryDocument()
    errors = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line:
            continue
        try:
            doc.formulas.append(parse_formula(line))
            doc.lines.append(lineno)
        except ParseError as exc:
            errors.append(ParseError(exc.message, lineno, exc.column))
    if errors:
        raise DocumentParseError(errors)
    return doc


def render_theory(formulas, header: str | None = None) -> str:
    out = []
    if header:
        out.extend("# " + h for h in header.splitlines())
    out.extend(str(phi) for phi in formulas)
    return "\n".join(out) + "\n"


# ------------------------------------------------------------------- rules

@dataclass
class RuleDocument:
    rules: list = field(default_factory=list)

    def __len__(self):
        return len(self.rules)


_RULE_HEADER = re.compile(r"rule\s+([A-Za-z_][\w\-]*)\s*:\s*")


def parse_rules(text: str) -> RuleDocument:
    """Parse ``rule NAME:`` blocks: antecedents, a ``---`` line, one consequent."""
    from .proof import Rule

    doc = RuleDocument()
    seen: dict[str, int] = {}
    errors: list[ParseError] = []
    current = None  # [name, header line, antecedents, separator seen, consequents]

    def close(block, lineno):
        name, start, ants, sep, cons = block
        if not sep:
            errors.append(ParseError(f"rule {name!r} has no '---' separator", start))
        elif not cons:
            errors.append(ParseError(f"rule {name!r} has no consequent", lineno))
        else:
            doc.rules.append(Rule(name, tuple(ants), cons[0]))

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line:
            continue
        header = _RULE_HEADER.fullmatch(line)
        if header:
            if current is not None:
                close(current, lineno)
            name = header.group(1)
            if name in seen:
                errors.append(ParseError(f"duplicate rule name {name!r} (first at line {seen[name]})", lineno))
            seen.setdefault(name, lineno)
            current = [name, lineno, [], False, []]
            continue
        if current is None:
            errors.append(ParseError("formula outside of a 'rule NAME:' block", lineno))
            continue
        if line == "---":
            if current[3]:
                errors.append(ParseError(f"rule {current[0]!r} has a second '---' separator", lineno))
            current[3] = True
            continue
        try:
            phi = parse_formula(line)
        except ParseError as exc:
            errors.append(ParseError(exc.message, lineno, exc.column))
            continue
        if not current[3]:
            current[2].append(phi)
        elif current[4]:
            errors.append(ParseError(f"rule {current[0]!r} has more than one consequent", lineno))
        else:
            current[4].append(phi)
    if current is not None:
        close(current, len(text.splitlines()))
    if errors:
        raise DocumentParseError(errors)
    return doc


def render_rules(rules) -> str:
    out = []
    for rule in rules:
        out.append(f"rule {rule.name}:")
        out.extend(str(phi) for phi in rule.antecedents)
        out.append("---")
        out.append(str(rule.consequent))
        out.append("")
    return "\n".join(out)


# --------------------------------------------------------------- structure

_ELEM = re.compile(r"elem\s+([^\s:]+)\s*:(.*)")


def parse_structure(text: str) -> Structure:
    """Lines ``elem NAME: atom atom ...`` (the atom list may be empty)."""
    domain, interp, errors = [], {}, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line:
            continue
        m = _ELEM.fullmatch(line)
        if not m:
            errors.append(ParseError("expected 'elem NAME: atoms...'", lineno))
            continue
        name, atoms = m.group(1), m.group(2).split()
        if name in domain:
            errors.append(ParseError(f"duplicate element {name!r}", lineno))
            continue
        bad = [a for a in atoms if not ATOM_RE.match(a)]
        if bad:
            errors.append(ParseError(f"invalid atom name(s) {bad}", lineno))
            continue
        domain.append(name)
        for a in atoms:
            interp.setdefault(a, set()).add(name)
    if errors:
        raise DocumentParseError(errors)
    if not domain:
        raise ParseError("structure file declares no elements")
    return Structure(domain, interp)


def render_structure(structure: Structure, atom_order=None) -> str:
    rank = {a: k for k, a in enumerate(atom_order or [])}
    lines = []
    for e in structure.domain:
        atoms = sorted(structure.atoms_of(e), key=lambda a: (rank.get(a, len(rank)), a))
        lines.append(f"elem {e}: {' '.join(atoms)}".rstrip())
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------- graph

def parse_graph(text: str) -> nx.Graph:
    """DIMACS-style ``p edge V E`` header then ``e u v`` lines; ``c`` comments."""
    g = None
    declared = 0
    edges = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if g is not None:
                raise ParseError("second 'p' line", lineno)
            if len(parts) != 4 or parts[1] != "edge" or not parts[2].isdigit() or not parts[3].isdigit():
                raise ParseError("expected 'p edge V E'", lineno)
            g = nx.Graph()
            g.add_nodes_from(range(1, int(parts[2]) + 1))
            declared = int(parts[3])
        elif parts[0] == "e":
            if g is None:
                raise ParseError("edge before 'p edge' line", lineno)
            if len(parts) != 3 or not parts[1].isdigit() or not parts[2].isdigit():
                raise ParseError("expected 'e u v'", lineno)
            u, v = int(parts[1]), int(parts[2])
            for x in (u, v):
                if x not in g:
                    raise ParseError(f"vertex {x} out of range 1..{g.number_of_nodes()}", lineno)
            g.add_edge(u, v)
            edges += 1
        else:
            raise ParseError(f"unknown line type {parts[0]!r}", lineno)
    if g is None:
        raise ParseError("missing 'p edge V E' line")
    if edges != declared:
        raise ParseError(f"header declares {declared} edges but {edges} were given")
    return g


def render_graph(g: nx.Graph) -> str:
    nodes = sorted(g.nodes)
    index = {v: k for k, v in enumerate(nodes, 1)}
    edges = sorted(tuple(sorted((index[u], index[v]))) for u, v in g.edges)
    lines = [f"p edge {len(nodes)} {len(edges)}"]
    lines.extend(f"e {u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"
