"""Text syntax for programs, with precise errors and round-trip printing.

Grammar::

    program   := (decl | clause)* ;
    decl      := ("certain" | "uncertain" | "complete" | "incomplete"
                  | "closed") predname ("," predname)* "." ;
    clause    := literal ("<-" hyp)? "." ;
    hyp       := quant | disj ;
    quant     := ("some" | "each") var ("," var)* "|" hyp ;
    disj      := conj ("or" conj)* ;
    conj      := unit ("and" unit)* ;
    unit      := "not" unit | "(" hyp ")" | "true" | "false" | literal ;
    literal   := "not"? predname "(" term ("," term)* ")" | "not"? predname ;
    term      := var | number | "'" chars "'" ;
    var       := letter+ ;  predname := letter (letter|digit|"_")* ;
    comment   := "%" to end of line ;

Zero-arity predicates are written without parentheses.  Precedence binds
``not`` over ``and`` over ``or`` over quantifiers; a quantifier body extends
right as far as possible.
"""
from __future__ import annotations

from dataclasses import dataclass

from .language import (And, Atom, Certainty, Closedness, Completeness, Const,
                       Exists, Fact, Forall, HypExpr, Lit, Literal, Not, Or,
                       PredicateDecl, Program, Rule, Term, free_variables)

KEYWORDS = frozenset({
    "certain", "uncertain", "complete", "incomplete", "closed",
    "not", "and", "or", "some", "each", "true", "false",
})
DECL_KEYWORDS = frozenset({
    "certain", "uncertain", "complete", "incomplete", "closed",
})


@dataclass(frozen=True, slots=True)
class SourceSpan:
    line: int    # 1-based
    column: int  # 1-based
    length: int = 1


class ParseError(Exception):
    def __init__(self, span: SourceSpan, message: str,
                 expected: tuple[str, ...] = ()):
        location = f"{span.line}:{span.column}"
        suffix = f" (expected {', '.join(expected)})" if expected else ""
        super().__init__(f"{location}: {message}{suffix}")
        self.span = span
        self.message = message
        self.expected = expected


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class _Token:
    kind: str  # name, number, string, punct, eof
    text: str
    line: int
    column: int

    def span(self) -> SourceSpan:
        return SourceSpan(self.line, self.column, max(len(self.text), 1))


_PUNCT = ("<-", ".", ",", "(", ")", "|")


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch in " \t\r":
            i, col = i + 1, col + 1
            continue
        if ch == "%":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isalpha():
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            word = text[start:i]
            tokens.append(_Token("name", word, line, col))
            col += i - start
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            tokens.append(_Token("number", text[start:i], line, col))
            col += i - start
            continue
        if ch == "'":
            start = i
            i += 1
            while i < n and text[i] != "'":
                if text[i] == "\n":
                    raise ParseError(SourceSpan(line, col),
                                     "unterminated string constant")
                i += 1
            if i >= n:
                raise ParseError(SourceSpan(line, col),
                                 "unterminated string constant")
            i += 1
            tokens.append(_Token("string", text[start:i], line, col))
            col += i - start
            continue
        matched = False
        for punct in _PUNCT:
            if text.startswith(punct, i):
                tokens.append(_Token("punct", punct, line, col))
                i += len(punct)
                col += len(punct)
                matched = True
                break
        if not matched:
            raise ParseError(SourceSpan(line, col), f"unexpected character {ch!r}")
    tokens.append(_Token("eof", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.decls: dict[str, PredicateDecl] = {}
        self.rules: list[Rule] = []
        self.facts: list[Fact] = []
        self.arities: dict[str, int] = {}
        self.warnings: list[str] = []
        self.bound: list[str] = []  # quantifier variables currently in scope

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, text: str | None = None,
               expected: tuple[str, ...] = ()) -> _Token:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            what = expected or ((repr(text),) if text else (kind,))
            raise ParseError(tok.span(), f"unexpected {self._describe(tok)}", what)
        return self.next()

    @staticmethod
    def _describe(tok: _Token) -> str:
        return "end of input" if tok.kind == "eof" else repr(tok.text)

    # -- program ------------------------------------------------------------

    def parse(self) -> Program:
        while self.peek().kind != "eof":
            tok = self.peek()
            if tok.kind == "name" and tok.text in DECL_KEYWORDS:
                self.parse_decl()
            else:
                self.parse_clause()
        return Program(decls=self.decls, rules=tuple(self.rules),
                       facts=tuple(self.facts), arities=self.arities,
                       warnings=tuple(self.warnings))

    def parse_decl(self) -> None:
        keyword = self.next()
        names = [self.predname()]
        while self.peek().kind == "punct" and self.peek().text == ",":
            self.next()
            names.append(self.predname())
        self.expect("punct", ".")
        for name_tok in names:
            self._apply_decl(keyword.text, name_tok)

    def predname(self) -> _Token:
        tok = self.peek()
        if tok.kind != "name":
            raise ParseError(tok.span(), f"unexpected {self._describe(tok)}",
                             ("predicate name",))
        if tok.text in KEYWORDS:
            raise ParseError(tok.span(),
                             f"keyword {tok.text!r} cannot be a predicate name")
        return self.next()

    def _apply_decl(self, keyword: str, tok: _Token) -> None:
        name = tok.text
        decl = self.decls.get(name, PredicateDecl(name))
        if keyword in ("certain", "uncertain"):
            value = Certainty(keyword)
            if decl.certainty is not None and decl.certainty is not value:
                raise ParseError(tok.span(),
                                 f"predicate '{name}' declared both certain "
                                 f"and uncertain")
            decl = PredicateDecl(name, value, decl.completeness, decl.closedness)
        elif keyword in ("complete", "incomplete"):
            value = Completeness(keyword)
            if decl.completeness is not None and decl.completeness is not value:
                raise ParseError(tok.span(),
                                 f"predicate '{name}' declared both complete "
                                 f"and incomplete")
            decl = PredicateDecl(name, decl.certainty, value, decl.closedness)
        else:  # closed
            decl = PredicateDecl(name, decl.certainty, decl.completeness,
                                 Closedness.CLOSED)
        self.decls[name] = decl

    # -- clauses ------------------------------------------------------------

    def parse_clause(self) -> None:
        head_tok = self.peek()
        head = self.literal()
        tok = self.peek()
        if tok.kind == "punct" and tok.text == "<-":
            self.next()
            body = self.hyp()
            self.expect("punct", ".")
            head_vars = {t.name for t in head.atom.args if not t.is_constant}
            missing = head_vars - free_variables(body)
            if missing:
                raise ParseError(
                    head_tok.span(),
                    f"conclusion variable(s) {', '.join(sorted(missing))} do "
                    f"not occur free in the hypotheses")
            self.rules.append(Rule(head, body))
        else:
            self.expect("punct", ".", expected=("'<-'", "'.'"))
            if not head.atom.is_ground():
                raise ParseError(head_tok.span(),
                                 "fact arguments must be constants")
            self.facts.append(Fact(head))

    def literal(self) -> Literal:
        positive = True
        tok = self.peek()
        if tok.kind == "name" and tok.text == "not":
            self.next()
            positive = False
        name_tok = self.predname()
        args: list[Term] = []
        tok = self.peek()
        if tok.kind == "punct" and tok.text == "(":
            self.next()
            args.append(self.term())
            while self.peek().kind == "punct" and self.peek().text == ",":
                self.next()
                args.append(self.term())
            self.expect("punct", ")")
        self._check_arity(name_tok, len(args))
        return Literal(Atom(name_tok.text, tuple(args)), positive)

    def _check_arity(self, tok: _Token, arity: int) -> None:
        name = tok.text
        known = self.arities.get(name)
        if known is None:
            self.arities[name] = arity
        elif known != arity:
            raise ParseError(tok.span(),
                             f"predicate '{name}' used with arity {arity} "
                             f"but earlier with arity {known}")

    def term(self) -> Term:
        tok = self.peek()
        if tok.kind == "number":
            self.next()
            return Term.constant(tok.text)
        if tok.kind == "string":
            self.next()
            return Term.constant(tok.text)
        if tok.kind == "name":
            if tok.text in KEYWORDS:
                raise ParseError(tok.span(),
                                 f"keyword {tok.text!r} cannot be a term")
            if not tok.text.isalpha():
                raise ParseError(tok.span(),
                                 f"variable names are letter sequences, got "
                                 f"{tok.text!r}")
            self.next()
            return Term.variable(tok.text)
        raise ParseError(tok.span(), f"unexpected {self._describe(tok)}",
                         ("variable", "number", "quoted string"))

    # -- hypotheses ---------------------------------------------------------

    def hyp(self) -> HypExpr:
        tok = self.peek()
        if tok.kind == "name" and tok.text in ("some", "each"):
            return self.quant()
        return self.disj()

    def quant(self) -> HypExpr:
        keyword = self.next()
        variables: list[str] = []
        while True:
            tok = self.peek()
            if tok.kind != "name" or tok.text in KEYWORDS or not tok.text.isalpha():
                raise ParseError(tok.span(),
                                 f"unexpected {self._describe(tok)}",
                                 ("variable",))
            if tok.text in variables:
                raise ParseError(tok.span(),
                                 f"variable '{tok.text}' bound twice by one "
                                 f"quantifier")
            if tok.text in self.bound:
                self.warnings.append(
                    f"{tok.line}:{tok.column}: quantified variable "
                    f"'{tok.text}' shadows an enclosing binding")
            variables.append(tok.text)
            self.next()
            if self.peek().kind == "punct" and self.peek().text == ",":
                self.next()
                continue
            break
        self.expect("punct", "|")
        self.bound.extend(variables)
        body = self.hyp()
        del self.bound[len(self.bound) - len(variables):]
        node = Exists if keyword.text == "some" else Forall
        return node(tuple(variables), body)

    def disj(self) -> HypExpr:
        items = [self.conj()]
        while self.peek().kind == "name" and self.peek().text == "or":
            self.next()
            items.append(self.conj())
        return items[0] if len(items) == 1 else Or(tuple(items))

    def conj(self) -> HypExpr:
        items = [self.unit()]
        while self.peek().kind == "name" and self.peek().text == "and":
            self.next()
            items.append(self.unit())
        return items[0] if len(items) == 1 else And(tuple(items))

    def unit(self) -> HypExpr:
        tok = self.peek()
        if tok.kind == "name" and tok.text == "not":
            self.next()
            return Not(self.unit())
        if tok.kind == "punct" and tok.text == "(":
            self.next()
            inner = self.hyp()
            self.expect("punct", ")")
            return inner
        if tok.kind == "name" and tok.text == "true":
            self.next()
            return Const(True)
        if tok.kind == "name" and tok.text == "false":
            self.next()
            return Const(False)
        lit = self.literal()
        return Lit(lit)


def parse_program(text: str) -> Program:
    """Parse ``text``; raises :class:`ParseError` on the first failure."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

# Precedence levels for parenthesization: quantifier < or < and < not < atom.
_LEVEL_QUANT, _LEVEL_OR, _LEVEL_AND, _LEVEL_NOT, _LEVEL_ATOM = range(5)


def _level(expr: HypExpr) -> int:
    if isinstance(expr, (Exists, Forall)):
        return _LEVEL_QUANT
    if isinstance(expr, Or):
        return _LEVEL_OR
    if isinstance(expr, And):
        return _LEVEL_AND
    if isinstance(expr, Not):
        return _LEVEL_NOT
    return _LEVEL_ATOM


def render_atom(atom: Atom) -> str:
    if not atom.args:
        return atom.predicate
    return f"{atom.predicate}({','.join(t.name for t in atom.args)})"


def render_literal(literal: Literal) -> str:
    text = render_atom(literal.atom)
    return text if literal.positive else f"not {text}"


def render_hyp(expr: HypExpr, min_level: int = _LEVEL_QUANT) -> str:
    def wrap(text: str, level: int) -> str:
        return f"({text})" if level < min_level else text

    if isinstance(expr, Lit):
        return render_literal(expr.literal)
    if isinstance(expr, Const):
        return "true" if expr.value else "false"
    if isinstance(expr, Not):
        return wrap(f"not {render_hyp(expr.item, _LEVEL_NOT)}", _LEVEL_NOT)
    if isinstance(expr, And):
        body = " and ".join(render_hyp(i, _LEVEL_NOT) for i in expr.items)
        return wrap(body, _LEVEL_AND)
    if isinstance(expr, Or):
        body = " or ".join(render_hyp(i, _LEVEL_AND) for i in expr.items)
        return wrap(body, _LEVEL_OR)
    if isinstance(expr, (Exists, Forall)):
        keyword = "some" if isinstance(expr, Exists) else "each"
        body = f"{keyword} {', '.join(expr.variables)} | " \
               f"{render_hyp(expr.body, _LEVEL_QUANT)}"
        return wrap(body, _LEVEL_QUANT)
    raise TypeError(f"unknown hypothesis node {expr!r}")  # pragma: no cover


def render_program(program: Program) -> str:
    """Deterministic textual form: declarations, then facts, then rules,
    each group sorted; one clause per line.

    Reparsing the result yields a structurally identical program (round
    trip); resolved programs additionally need one ``resolve_declarations``
    pass because the default values ``open`` and ``not-applicable`` have no
    surface syntax.
    """
    lines: list[str] = []
    for name in sorted(program.decls):
        decl = program.decls[name]
        if decl.certainty is not None:
            lines.append(f"{decl.certainty.value} {name}.")
        if decl.completeness in (Completeness.COMPLETE, Completeness.INCOMPLETE):
            lines.append(f"{decl.completeness.value} {name}.")
        if decl.closedness is Closedness.CLOSED:
            lines.append(f"closed {name}.")
    lines.extend(sorted(f"{render_literal(f.literal)}." for f in program.facts))
    lines.extend(sorted(f"{render_literal(r.conclusion)} <- "
                        f"{render_hyp(r.body)}." for r in program.rules))
    return "".join(line + "\n" for line in lines)
