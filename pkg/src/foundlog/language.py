"""AST and declaration machinery for the rule language.

A program is a finite set of clauses.  Rule hypotheses may use unrestricted
negation, conjunction, disjunction, and existential/universal quantification;
as an extension, facts and rule conclusions may be negative.

Every predicate carries a three-part declaration:

* certainty:    certain (each atom is 2-valued) or uncertain (3-valued);
* completeness: whether all rules concluding the predicate are given
                (meaningful only for uncertain conclusion predicates);
* closedness:   whether undefined atoms that could only be derived by
                assuming themselves are forced to false.

``resolve_declarations`` fills in the defaults (certain whenever legal,
complete for uncertain conclusion predicates, open) and rejects declarations
that violate the certainty/completeness/closedness restrictions.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Iterator


class Certainty(Enum):
    CERTAIN = "certain"
    UNCERTAIN = "uncertain"


class Completeness(Enum):
    COMPLETE = "complete"
    INCOMPLETE = "incomplete"
    NOT_APPLICABLE = "not-applicable"


class Closedness(Enum):
    CLOSED = "closed"
    OPEN = "open"


class DeclarationError(Exception):
    """A declaration violates the certainty/completeness/closedness rules."""

    def __init__(self, message: str, predicate: str | None = None):
        super().__init__(message)
        self.message = message
        self.predicate = predicate


# ---------------------------------------------------------------------------
# Terms, atoms, literals
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Term:
    """A constant or a variable.

    Constants keep their source spelling: decimal numerals ("42") or
    single-quoted strings ("'barber'").  Variables are letter sequences.
    """

    name: str
    is_constant: bool

    @staticmethod
    def constant(name: str) -> "Term":
        return Term(name, True)

    @staticmethod
    def variable(name: str) -> "Term":
        return Term(name, False)


@dataclass(frozen=True, slots=True)
class Atom:
    predicate: str
    args: tuple[Term, ...] = ()

    def is_ground(self) -> bool:
        return all(t.is_constant for t in self.args)


@dataclass(frozen=True, slots=True)
class Literal:
    atom: Atom
    positive: bool = True


# ---------------------------------------------------------------------------
# Hypothesis expressions
# ---------------------------------------------------------------------------

class HypExpr:
    """Base class for hypothesis expressions (rule bodies)."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Lit(HypExpr):
    literal: Literal


@dataclass(frozen=True, slots=True)
class Not(HypExpr):
    item: HypExpr


@dataclass(frozen=True, slots=True)
class And(HypExpr):
    items: tuple[HypExpr, ...]


@dataclass(frozen=True, slots=True)
class Or(HypExpr):
    items: tuple[HypExpr, ...]


@dataclass(frozen=True, slots=True)
class Exists(HypExpr):
    variables: tuple[str, ...]
    body: HypExpr


@dataclass(frozen=True, slots=True)
class Forall(HypExpr):
    variables: tuple[str, ...]
    body: HypExpr


@dataclass(frozen=True, slots=True)
class Const(HypExpr):
    """The body constants ``true`` and ``false``."""

    value: bool


@dataclass(frozen=True, slots=True)
class Rule:
    conclusion: Literal
    body: HypExpr


@dataclass(frozen=True, slots=True)
class Fact:
    literal: Literal  # all argument terms are constants; may be negative


@dataclass(frozen=True, slots=True)
class PredicateDecl:
    """Declaration of one predicate; ``None`` fields are still unresolved."""

    predicate: str
    certainty: Certainty | None = None
    completeness: Completeness | None = None
    closedness: Closedness | None = None

    def is_resolved(self) -> bool:
        return (self.certainty is not None and self.completeness is not None
                and self.closedness is not None)


@dataclass
class Program:
    """Declarations plus rules plus facts; the parsed input unit."""

    decls: dict[str, PredicateDecl] = field(default_factory=dict)
    rules: tuple[Rule, ...] = ()
    facts: tuple[Fact, ...] = ()
    arities: dict[str, int] = field(default_factory=dict)
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def predicates(self) -> set[str]:
        preds = set(self.arities)
        preds.update(self.decls)
        return preds

    def conclusion_predicates(self) -> set[str]:
        return {r.conclusion.atom.predicate for r in self.rules}

    def is_resolved(self) -> bool:
        preds = self.predicates()
        return preds == set(self.decls) and all(
            d.is_resolved() for d in self.decls.values())

    def decl(self, predicate: str) -> PredicateDecl:
        return self.decls[predicate]

    def structurally_equal(self, other: "Program") -> bool:
        """Equality up to clause order (render/parse round trips reorder)."""
        return (self.decls == other.decls
                and sorted(self.rules, key=repr) == sorted(other.rules, key=repr)
                and sorted(self.facts, key=repr) == sorted(other.facts, key=repr)
                and self.arities == other.arities)


# ---------------------------------------------------------------------------
# Expression walks
# ---------------------------------------------------------------------------

def literal_occurrences(expr: HypExpr, negated: bool = False) -> Iterator[tuple[Atom, bool]]:
    """Yield (atom, under-negation) for every literal occurrence in ``expr``.

    The flag is the parity of enclosing negations, combined with the sign of
    the literal itself.
    """
    if isinstance(expr, Lit):
        yield expr.literal.atom, negated != (not expr.literal.positive)
    elif isinstance(expr, Not):
        yield from literal_occurrences(expr.item, not negated)
    elif isinstance(expr, (And, Or)):
        for item in expr.items:
            yield from literal_occurrences(item, negated)
    elif isinstance(expr, (Exists, Forall)):
        yield from literal_occurrences(expr.body, negated)
    elif isinstance(expr, Const):
        return
    else:  # pragma: no cover - defensive
        raise TypeError(f"unknown hypothesis node {expr!r}")


def free_variables(expr: HypExpr) -> frozenset[str]:
    if isinstance(expr, Lit):
        return frozenset(t.name for t in expr.literal.atom.args if not t.is_constant)
    if isinstance(expr, Not):
        return free_variables(expr.item)
    if isinstance(expr, (And, Or)):
        out: frozenset[str] = frozenset()
        for item in expr.items:
            out |= free_variables(item)
        return out
    if isinstance(expr, (Exists, Forall)):
        return free_variables(expr.body) - frozenset(expr.variables)
    if isinstance(expr, Const):
        return frozenset()
    raise TypeError(f"unknown hypothesis node {expr!r}")  # pragma: no cover


def rule_constants(program: Program) -> set[Term]:
    out: set[Term] = set()

    def walk(expr: HypExpr) -> None:
        for atom, _ in literal_occurrences(expr):
            out.update(t for t in atom.args if t.is_constant)

    for fact in program.facts:
        out.update(t for t in fact.literal.atom.args if t.is_constant)
    for rule in program.rules:
        out.update(t for t in rule.conclusion.atom.args if t.is_constant)
        walk(rule.body)
    return out


# ---------------------------------------------------------------------------
# Dependency graph and defined-using relation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DependencyGraph:
    """Edges run from each hypothesis predicate to the conclusion predicate."""

    nodes: frozenset[str]
    edges: frozenset[tuple[str, str, bool]]  # (source, target, negative)


def dependency_graph(program: Program) -> DependencyGraph:
    edges: set[tuple[str, str, bool]] = set()
    for rule in program.rules:
        head = rule.conclusion
        target = head.atom.predicate
        for atom, under_neg in literal_occurrences(rule.body):
            # A negative conclusion makes the whole dependency negative:
            # keeping such predicates uncertain is the conservative choice.
            negative = True if not head.positive else under_neg
            edges.add((atom.predicate, target, negative))
    return DependencyGraph(frozenset(program.predicates()), frozenset(edges))


def defined_using(program: Program) -> frozenset[tuple[str, str, bool]]:
    """Transitive defined-using relation.

    Returns triples ``(defined, used, through_negation)``: there is a
    dependency path from ``used`` to ``defined``, and ``through_negation``
    records whether some path crosses at least one negative edge.  Both a
    negation-free and a negation-crossing entry may exist for one pair.
    """
    graph = dependency_graph(program)
    adjacency: dict[str, list[tuple[str, bool]]] = {n: [] for n in graph.nodes}
    for src, dst, neg in graph.edges:
        adjacency[src].append((dst, neg))
    result: set[tuple[str, str, bool]] = set()
    for used in graph.nodes:
        seen: set[tuple[str, bool]] = set()
        stack: list[tuple[str, bool]] = [(dst, neg) for dst, neg in adjacency[used]]
        while stack:
            node, neg = stack.pop()
            if (node, neg) in seen:
                continue
            seen.add((node, neg))
            result.add((node, used, neg))
            for nxt, edge_neg in adjacency[node]:
                stack.append((nxt, neg or edge_neg))
    return frozenset(result)


# ---------------------------------------------------------------------------
# Declaration resolution
# ---------------------------------------------------------------------------

def resolve_declarations(program: Program) -> Program:
    """Fill in default declarations and validate explicit ones.

    Defaults: certain when allowed, otherwise uncertain; complete for
    uncertain predicates appearing in some conclusion; open.
    """
    preds = set(program.arities)
    for name in program.decls:
        if name not in preds:
            raise DeclarationError(
                f"declaration for predicate '{name}' that never occurs", name)

    relation = defined_using(program)
    conclusions = program.conclusion_predicates()

    explicit_uncertain = {
        p for p, d in program.decls.items() if d.certainty is Certainty.UNCERTAIN
    }
    self_negative = {p for p, q, neg in relation if p == q and neg}
    seeds = explicit_uncertain | self_negative
    forced = set(self_negative)
    forced.update(p for p, used, _ in relation if used in seeds)

    resolved: dict[str, PredicateDecl] = {}
    for name in sorted(preds):
        decl = program.decls.get(name, PredicateDecl(name))

        if decl.certainty is Certainty.CERTAIN and name in forced:
            raise DeclarationError(
                f"predicate '{name}' cannot be certain: it is defined "
                f"transitively using its own negation or using an uncertain "
                f"predicate", name)
        certainty = decl.certainty
        if certainty is None:
            certainty = Certainty.UNCERTAIN if name in forced else Certainty.CERTAIN

        eligible = certainty is Certainty.UNCERTAIN and name in conclusions
        completeness = decl.completeness
        if completeness in (Completeness.COMPLETE, Completeness.INCOMPLETE):
            if not eligible:
                raise DeclarationError(
                    f"predicate '{name}' may be declared complete or "
                    f"incomplete only if it is uncertain and concludes some "
                    f"rule", name)
        elif completeness is None or completeness is Completeness.NOT_APPLICABLE:
            completeness = (Completeness.COMPLETE if eligible
                            else Completeness.NOT_APPLICABLE)

        closedness = decl.closedness
        if closedness is Closedness.CLOSED:
            if completeness is not Completeness.COMPLETE:
                raise DeclarationError(
                    f"predicate '{name}' may be declared closed only if it "
                    f"is uncertain and complete", name)
        elif closedness is None:
            closedness = Closedness.OPEN

        resolved[name] = PredicateDecl(name, certainty, completeness, closedness)

    return Program(decls=resolved, rules=program.rules, facts=program.facts,
                   arities=dict(program.arities), warnings=program.warnings)


# ---------------------------------------------------------------------------
# Strongly connected components
# ---------------------------------------------------------------------------

def scc_condensation(nodes: Iterable[str],
                     edges: Iterable[tuple[str, str]]) -> tuple[frozenset[str], ...]:
    """SCCs of a directed graph, topologically sorted (dependencies first).

    Deterministic: ties among ready components are broken by the
    lexicographically least member name.
    """
    node_list = sorted(set(nodes))
    adjacency: dict[str, list[str]] = {n: [] for n in node_list}
    reverse: dict[str, list[str]] = {n: [] for n in node_list}
    edge_list = sorted(set(edges))
    for u, v in edge_list:
        adjacency[u].append(v)
        reverse[v].append(u)

    # Kosaraju pass 1: record DFS finish order (iteratively).
    finished: list[str] = []
    visited: set[str] = set()
    for start in node_list:
        if start in visited:
            continue
        visited.add(start)
        stack: list[tuple[str, Iterator[str]]] = [(start, iter(adjacency[start]))]
        while stack:
            node, it = stack[-1]
            for nxt in it:
                if nxt not in visited:
                    visited.add(nxt)
                    stack.append((nxt, iter(adjacency[nxt])))
                    break
            else:
                finished.append(node)
                stack.pop()

    # Pass 2: collect components on the transposed graph.
    component: dict[str, int] = {}
    members: list[list[str]] = []
    for start in reversed(finished):
        if start in component:
            continue
        index = len(members)
        component[start] = index
        group = [start]
        work = [start]
        while work:
            node = work.pop()
            for nxt in reverse[node]:
                if nxt not in component:
                    component[nxt] = index
                    group.append(nxt)
                    work.append(nxt)
        members.append(group)

    count = len(members)
    out_edges: list[set[int]] = [set() for _ in range(count)]
    indegree = [0] * count
    for u, v in edge_list:
        cu, cv = component[u], component[v]
        if cu != cv and cv not in out_edges[cu]:
            out_edges[cu].add(cv)
            indegree[cv] += 1

    keys = [min(group) for group in members]
    ready = [(keys[i], i) for i in range(count) if indegree[i] == 0]
    heapq.heapify(ready)
    order: list[frozenset[str]] = []
    while ready:
        _, i = heapq.heappop(ready)
        order.append(frozenset(members[i]))
        for j in sorted(out_edges[i]):
            indegree[j] -= 1
            if indegree[j] == 0:
                heapq.heappush(ready, (keys[j], j))
    return tuple(order)


def scc_order(program: Program) -> tuple[frozenset[str], ...]:
    """Predicate SCCs in evaluation order (dependencies precede dependents)."""
    graph = dependency_graph(program)
    return scc_condensation(graph.nodes, ((u, v) for u, v, _ in graph.edges))
