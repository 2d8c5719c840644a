"""Abstract syntax, parser and printer for propositional epistemic logic programs.

Surface syntax (one rule per ``.``)::

    p | q.                 % disjunctive fact
    a :- b, not c.         % default negation
    -a.                    % strong negation
    q :- K p.              % modal literals K / M, optionally under ``not``
    :- not K p.            % constraint (empty head)

``true`` may stand for a whole body and ``false`` for a whole head.  ``false``
is also accepted as a whole body; such a rule never fires (useful as a vacuous
query).
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Union

__all__ = [
    "Atom",
    "ObjectLiteral",
    "DefaultNeg",
    "ModalLiteral",
    "Falsum",
    "FALSUM",
    "BodyLiteral",
    "Rule",
    "Program",
    "Classification",
    "EpNegLiteral",
    "ParseError",
    "parse_program",
    "parse_rule",
    "render",
    "render_rule",
    "classify",
    "epistemic_negations",
]

IDENT_RE = re.compile(r"[a-z][A-Za-z0-9_]*")
RESERVED = frozenset({"not", "true", "false"})


class ParseError(ValueError):
    """Syntax error with a 1-based source position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True, order=True)
class Atom:
    id: int
    name: str

    def __post_init__(self):
        if not IDENT_RE.fullmatch(self.name) or self.name in RESERVED:
            raise ValueError(f"invalid atom name {self.name!r}")
        if self.id < 0:
            raise ValueError("atom id must be non-negative")

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class ObjectLiteral:
    atom: Atom
    strong_neg: bool = False

    @property
    def index(self) -> int:
        """Slot of this literal in an interpretation bitset."""
        return 2 * self.atom.id + int(self.strong_neg)

    def complement(self) -> ObjectLiteral:
        return ObjectLiteral(self.atom, not self.strong_neg)

    def __str__(self):
        return ("-" if self.strong_neg else "") + self.atom.name


@dataclass(frozen=True)
class DefaultNeg:
    """``not l``; ``double`` gives ``not not l``, which only reducts produce."""

    lit: ObjectLiteral
    double: bool = False

    def __str__(self):
        return ("not not " if self.double else "not ") + str(self.lit)


@dataclass(frozen=True)
class ModalLiteral:
    op: str
    lit: ObjectLiteral
    default_neg: bool = False

    def __post_init__(self):
        if self.op not in ("K", "M"):
            raise ValueError(f"unknown modal operator {self.op!r}")

    def __str__(self):
        return ("not " if self.default_neg else "") + f"{self.op} {self.lit}"


@dataclass(frozen=True)
class Falsum:
    """Body constant that is never true."""

    def __str__(self):
        return "false"


FALSUM = Falsum()

BodyLiteral = Union[ObjectLiteral, DefaultNeg, ModalLiteral, Falsum]


def _lit_key(lit) -> tuple:
    if isinstance(lit, ObjectLiteral):
        return (0, lit.index)
    if isinstance(lit, DefaultNeg):
        return (1 + lit.double, lit.lit.index)
    if isinstance(lit, ModalLiteral):
        return (3 + (lit.op == "M") * 2 + lit.default_neg, lit.lit.index)
    return (9, 0)


@dataclass(frozen=True)
class Rule:
    head: tuple[ObjectLiteral, ...] = ()
    body: tuple[BodyLiteral, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "head", tuple(self.head))
        object.__setattr__(self, "body", tuple(self.body))
        if len(set(self.head)) != len(self.head):
            raise ValueError(f"duplicate literal in head of {self}")
        if len(set(self.body)) != len(self.body):
            raise ValueError(f"duplicate literal in body of {self}")
        if FALSUM in self.body and len(self.body) > 1:
            raise ValueError("'false' may only appear as a whole body")

    @property
    def is_constraint(self) -> bool:
        return not self.head

    @property
    def is_subjective_constraint(self) -> bool:
        return (
            not self.head
            and bool(self.body)
            and all(isinstance(b, ModalLiteral) for b in self.body)
        )

    @property
    def is_epistemic(self) -> bool:
        return any(isinstance(b, ModalLiteral) for b in self.body)

    def modal_literals(self) -> list[ModalLiteral]:
        return [b for b in self.body if isinstance(b, ModalLiteral)]

    def objective_body(self) -> list[BodyLiteral]:
        return [b for b in self.body if not isinstance(b, ModalLiteral)]

    def positive_body(self) -> list[ObjectLiteral]:
        return [b for b in self.body if isinstance(b, ObjectLiteral)]

    def atoms(self) -> Iterator[Atom]:
        for lit in self.head:
            yield lit.atom
        for b in self.body:
            if not isinstance(b, Falsum):
                yield (b if isinstance(b, ObjectLiteral) else b.lit).atom

    def __str__(self):
        return render_rule(self)


@dataclass(frozen=True)
class Program:
    rules: tuple[Rule, ...] = ()
    symbols: tuple[Atom, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "symbols", tuple(self.symbols))
        for i, a in enumerate(self.symbols):
            if a.id != i:
                raise ValueError("symbol ids must be dense and ordered")
        known = set(self.symbols)
        if len({a.name for a in known}) != len(known):
            raise ValueError("duplicate atom name in symbol table")
        for r in self.rules:
            for a in r.atoms():
                if a not in known:
                    raise ValueError(f"atom {a.name!r} missing from symbol table")

    @classmethod
    def from_rules(cls, rules: Iterable[Rule], symbols: Sequence[Atom] = ()) -> Program:
        """Build a program, re-interning every atom by name.

        Atoms of ``symbols`` keep their ids; new names are appended in order
        of first occurrence.
        """
        table: dict[str, Atom] = {a.name: Atom(i, a.name) for i, a in enumerate(symbols)}

        def intern(atom: Atom) -> Atom:
            if atom.name not in table:
                table[atom.name] = Atom(len(table), atom.name)
            return table[atom.name]

        def relit(lit: ObjectLiteral) -> ObjectLiteral:
            return ObjectLiteral(intern(lit.atom), lit.strong_neg)

        out = []
        for r in rules:
            head = tuple(relit(h) for h in r.head)
            body = []
            for b in r.body:
                if isinstance(b, ObjectLiteral):
                    body.append(relit(b))
                elif isinstance(b, DefaultNeg):
                    body.append(DefaultNeg(relit(b.lit), b.double))
                elif isinstance(b, ModalLiteral):
                    body.append(ModalLiteral(b.op, relit(b.lit), b.default_neg))
                else:
                    body.append(b)
            out.append(Rule(head, tuple(body)))
        return cls(tuple(out), tuple(sorted(table.values())))

    def with_rules(self, rules: Iterable[Rule]) -> Program:
        return Program.from_rules(list(self.rules) + list(rules), self.symbols)

    def without_rule(self, index: int) -> Program:
        rules = list(self.rules)
        del rules[index]
        return Program(tuple(rules), self.symbols)

    def replace_rules(self, rules: Iterable[Rule]) -> Program:
        """Same symbol table, different rules (used by reducts)."""
        return Program(tuple(rules), self.symbols)

    def atom(self, name: str) -> Atom:
        for a in self.symbols:
            if a.name == name:
                return a
        raise KeyError(name)

    def lit(self, text: str) -> ObjectLiteral:
        """Object literal by surface name, e.g. ``"p"`` or ``"-p"``."""
        neg = text.startswith("-")
        return ObjectLiteral(self.atom(text[1:] if neg else text), neg)

    @property
    def is_non_epistemic(self) -> bool:
        return not any(r.is_epistemic for r in self.rules)

    def head_literals(self) -> list[ObjectLiteral]:
        seen = {}
        for r in self.rules:
            for h in r.head:
                seen.setdefault(h.index, h)
        return [seen[k] for k in sorted(seen)]

    def __len__(self):
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)

    def __str__(self):
        return render(self)


# --- parsing ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<neck>:-)
  | (?P<punct>[|,.\-])
  | (?P<modal>[KM])(?![A-Za-z0-9_])
  | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


@dataclass
class _Token:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tok_text = m.group()
            if kind == "word":
                if tok_text in RESERVED:
                    kind = tok_text
                elif not IDENT_RE.fullmatch(tok_text):
                    raise ParseError(f"invalid identifier {tok_text!r}", line, pos - line_start + 1)
                else:
                    kind = "ident"
            elif kind in ("punct", "neck"):
                kind = tok_text
            tokens.append(_Token(kind, tok_text, line, pos - line_start + 1))
        for i, ch in enumerate(m.group()):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos = m.end()
    tokens.append(_Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, strict: bool):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.strict = strict
        self.table: dict[str, Atom] = {}

    @property
    def tok(self) -> _Token:
        return self.tokens[self.pos]

    def error(self, message: str, tok: _Token | None = None):
        tok = tok or self.tok
        found = tok.text or "end of input"
        raise ParseError(f"{message}, found {found!r}", tok.line, tok.col)

    def accept(self, kind: str) -> _Token | None:
        if self.tok.kind == kind:
            tok = self.tok
            self.pos += 1
            return tok
        return None

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.accept(kind)
        if tok is None:
            self.error(f"expected {what}")
        return tok

    def intern(self, name: str) -> Atom:
        if name not in self.table:
            self.table[name] = Atom(len(self.table), name)
        return self.table[name]

    def program(self) -> Program:
        rules = []
        while self.tok.kind != "eof":
            rules.append(self.rule())
        return Program(tuple(rules), tuple(self.table.values()))

    def rule(self) -> Rule:
        start = self.tok
        head: list[ObjectLiteral] = []
        if self.accept("false"):
            pass
        elif self.tok.kind != ":-":
            head.append(self.lit())
            while self.accept("|"):
                head.append(self.lit())
            self.accept(",")
        body: list[BodyLiteral] = []
        if self.accept(":-"):
            body = self.body()
        elif not head and start.kind != "false":
            self.error("expected rule head or ':-'")
        self.expect(".", "'.' at end of rule")
        return Rule(self.dedup(head, "head", start), self.dedup(body, "body", start))

    def dedup(self, items: list, where: str, start: _Token) -> tuple:
        out = tuple(dict.fromkeys(items))
        if len(out) != len(items):
            msg = f"duplicate literal in rule {where}"
            if self.strict:
                raise ParseError(msg, start.line, start.col)
            warnings.warn(f"line {start.line}, column {start.col}: {msg}", stacklevel=4)
        return out

    def body(self) -> list[BodyLiteral]:
        if self.accept("true"):
            return []
        if self.accept("false"):
            return [FALSUM]
        items = [self.ext()]
        while self.accept(","):
            items.append(self.ext())
        return items

    def ext(self) -> BodyLiteral:
        negated = self.accept("not") is not None
        if negated and self.tok.kind == "not":
            self.error("double default negation is not allowed")
        modal = self.accept("modal")
        if modal is not None:
            if self.tok.kind in ("modal", "not"):
                self.error("nested modal operators are not allowed")
            return ModalLiteral(modal.text, self.lit(), negated)
        lit = self.lit()
        return DefaultNeg(lit) if negated else lit

    def lit(self) -> ObjectLiteral:
        neg = self.accept("-") is not None
        tok = self.tok
        if tok.kind != "ident":
            self.error("expected atom")
        self.pos += 1
        return ObjectLiteral(self.intern(tok.text), neg)


def parse_program(text: str, strict: bool = False) -> Program:
    """Parse ``text`` into a :class:`Program`.

    Duplicate literals within a rule are merged with a warning, or rejected
    when ``strict`` is set.
    """
    return _Parser(text, strict).program()


def parse_rule(text: str, program: Program | None = None) -> Rule:
    """Parse a single rule, interning atoms against ``program`` if given."""
    parsed = parse_program(text)
    if len(parsed.rules) != 1:
        raise ValueError(f"expected exactly one rule, got {len(parsed.rules)}")
    if program is None:
        return parsed.rules[0]
    return Program.from_rules(parsed.rules, program.symbols).rules[0]


# --- printing --------------------------------------------------------------

def render_rule(r: Rule) -> str:
    head = " | ".join(map(str, r.head))
    if not r.body:
        return f"{head}." if head else "false."
    body = ", ".join(map(str, r.body))
    return f"{head} :- {body}." if head else f":- {body}."


def render(p: Program) -> str:
    return "".join(render_rule(r) + "\n" for r in p.rules)


# --- classification --------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    non_epistemic: bool
    subjective_constraints: list[int] = field(default_factory=list)
    atoms: int = 0


def classify(p: Program) -> Classification:
    return Classification(
        non_epistemic=p.is_non_epistemic,
        subjective_constraints=[i for i, r in enumerate(p.rules) if r.is_subjective_constraint],
        atoms=len(p.symbols),
    )


@dataclass(frozen=True)
class EpNegLiteral:
    """Epistemic negation ``NOT l`` or ``NOT not l``.

    ``K l`` abbreviates ``not NOT l`` and ``M l`` abbreviates ``NOT not l``.
    """

    inner: ObjectLiteral
    inner_default_neg: bool = False

    @property
    def sort_key(self) -> tuple[int, bool]:
        return (self.inner.index, self.inner_default_neg)

    def __lt__(self, other: EpNegLiteral) -> bool:
        return self.sort_key < other.sort_key

    def __str__(self):
        return "NOT " + ("not " if self.inner_default_neg else "") + str(self.inner)


def ep_negation_of(m: ModalLiteral) -> EpNegLiteral:
    return EpNegLiteral(m.lit, m.op == "M")


def epistemic_negations(p: Program) -> frozenset[EpNegLiteral]:
    return frozenset(ep_negation_of(m) for r in p.rules for m in r.modal_literals())
