"""Interpretations, world views, satisfaction and the three reducts.

An interpretation is a bitset over literal slots: atom ``a`` with id ``k``
occupies slot ``2k`` and its strong negation ``-a`` slot ``2k+1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Iterator, Sequence

from .syntax import (
    Atom,
    DefaultNeg,
    EpNegLiteral,
    Falsum,
    ModalLiteral,
    ObjectLiteral,
    Program,
    Rule,
    ep_negation_of,
)

__all__ = [
    "Interpretation",
    "WorldView",
    "PhiGuess",
    "sat_objective",
    "sat_modal",
    "sat_body",
    "sat_rule",
    "is_model",
    "gl_reduct",
    "modal_reduct",
    "epistemic_substitute",
    "epistemic_reduct",
    "minimal_models",
    "is_minimal_model",
    "interpretations_over",
    "is_positive",
    "consistent_bits",
    "proper_submasks",
]


@total_ordering
@dataclass(frozen=True)
class Interpretation:
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("negative bitset")
        # slot 2k is a, slot 2k+1 is -a
        if self.bits & (self.bits >> 1) & _even_mask(self.bits):
            raise ValueError("inconsistent interpretation: contains a literal and its strong negation")

    @classmethod
    def _unchecked(cls, bits: int) -> Interpretation:
        # closure steps may pass through inconsistent states
        obj = object.__new__(cls)
        object.__setattr__(obj, "bits", bits)
        return obj

    @classmethod
    def of(cls, lits: Iterable[ObjectLiteral]) -> Interpretation:
        bits = 0
        for lit in lits:
            bits |= 1 << lit.index
        return cls(bits)

    @classmethod
    def from_names(cls, program: Program, names: Iterable[str]) -> Interpretation:
        return cls.of(program.lit(n) for n in names)

    def __contains__(self, lit: ObjectLiteral) -> bool:
        return bool(self.bits >> lit.index & 1)

    def __len__(self):
        return bin(self.bits).count("1")

    def __lt__(self, other: Interpretation) -> bool:
        return self.bits < other.bits

    def issubset(self, other: Interpretation) -> bool:
        return self.bits & ~other.bits == 0

    def slots(self) -> Iterator[int]:
        b, k = self.bits, 0
        while b:
            if b & 1:
                yield k
            b >>= 1
            k += 1

    def literals(self, symbols: Sequence[Atom]) -> list[ObjectLiteral]:
        return [ObjectLiteral(symbols[k >> 1], bool(k & 1)) for k in self.slots()]

    def names(self, symbols: Sequence[Atom]) -> list[str]:
        return sorted(str(lit) for lit in self.literals(symbols))

    def render(self, symbols: Sequence[Atom]) -> str:
        return "{" + ",".join(self.names(symbols)) + "}"

    def __repr__(self):
        return f"Interpretation({self.bits:#b})"


def _even_mask(bits: int) -> int:
    n = max(bits.bit_length(), 2)
    return int("01" * ((n + 1) // 2), 2)


def consistent_bits(bits: int) -> bool:
    return not bits & (bits >> 1) & _even_mask(bits)


@total_ordering
@dataclass(frozen=True)
class WorldView:
    members: tuple[Interpretation, ...]

    def __post_init__(self):
        members = tuple(sorted(set(self.members)))
        if not members:
            raise ValueError("a world view must be non-empty")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, *members: Interpretation) -> WorldView:
        return cls(tuple(members))

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, i: Interpretation) -> bool:
        return i in self.members

    def key(self) -> tuple[int, ...]:
        return tuple(i.bits for i in self.members)

    def __lt__(self, other: WorldView) -> bool:
        return self.key() < other.key()

    def render(self, symbols: Sequence[Atom]) -> str:
        return "{ " + ", ".join(i.render(symbols) for i in self.members) + " }"


@dataclass(frozen=True)
class PhiGuess:
    chosen: frozenset[EpNegLiteral] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "chosen", frozenset(self.chosen))

    def __contains__(self, e: EpNegLiteral) -> bool:
        return e in self.chosen

    def __len__(self):
        return len(self.chosen)

    def sorted(self) -> list[EpNegLiteral]:
        return sorted(self.chosen)

    def key(self) -> tuple:
        return (len(self.chosen), [e.sort_key for e in self.sorted()])

    def __str__(self):
        return "{" + ", ".join(map(str, self.sorted())) + "}"


# --- satisfaction ----------------------------------------------------------

def sat_objective(i: Interpretation, lit) -> bool:
    if isinstance(lit, ObjectLiteral):
        return lit in i
    if isinstance(lit, DefaultNeg):
        return (lit.lit in i) if lit.double else (lit.lit not in i)
    if isinstance(lit, Falsum):
        return False
    raise TypeError(f"not an objective literal: {lit!r}")


def sat_modal(a: WorldView | Iterable[Interpretation], m: ModalLiteral) -> bool:
    members = list(a)
    if not members:
        raise ValueError("modal satisfaction needs a non-empty collection")
    holds = [m.lit in i for i in members]
    value = all(holds) if m.op == "K" else any(holds)
    return value != m.default_neg


def sat_body(a, i: Interpretation, body) -> bool:
    for b in body:
        if isinstance(b, ModalLiteral):
            if not sat_modal(a, b):
                return False
        elif not sat_objective(i, b):
            return False
    return True


def sat_rule(a, i: Interpretation, r: Rule) -> bool:
    """``a`` may be ``None`` for rules without modal literals."""
    if not sat_body(a, i, r.body):
        return True
    return any(h in i for h in r.head)


def is_model(p: Program, i: Interpretation, a=None) -> bool:
    return all(sat_rule(a, i, r) for r in p.rules)


def is_positive(p: Program) -> bool:
    return all(isinstance(b, (ObjectLiteral, Falsum)) for r in p.rules for b in r.body)


# --- reducts ---------------------------------------------------------------

def gl_reduct(p: Program, i: Interpretation) -> Program:
    """Delete rules blocked by default negation w.r.t. ``i``, then drop the rest of it.

    ``not not l`` (produced by the epistemic substitution) blocks a rule when
    ``l`` is false in ``i``.
    """
    out = []
    for r in p.rules:
        body = []
        for b in r.body:
            if isinstance(b, ModalLiteral):
                raise ValueError(f"GL reduct of an epistemic rule: {r}")
            if isinstance(b, DefaultNeg):
                if not sat_objective(i, b):
                    break
            else:
                body.append(b)
        else:
            out.append(Rule(r.head, tuple(body)))
    return p.replace_rules(out)


def modal_reduct(p: Program, a: WorldView) -> Program:
    out = []
    for r in p.rules:
        mods = r.modal_literals()
        if all(sat_modal(a, m) for m in mods):
            out.append(Rule(r.head, tuple(r.objective_body())) if mods else r)
    return p.replace_rules(out)


def epistemic_substitute(p: Program, phi: PhiGuess) -> Program:
    """Replace every modal literal according to the guess ``phi``.

    With ``K l = not NOT l`` and ``M l = NOT not l``: a guessed ``NOT F``
    becomes true, an unguessed one becomes ``not F``; nested default negation
    collapses to a single or double ``not`` on ``l``.  The result is
    non-epistemic and may contain ``not not l``.
    """
    out = []
    for r in p.rules:
        body = []
        dropped = False
        for b in r.body:
            if not isinstance(b, ModalLiteral):
                body.append(b)
                continue
            guessed = ep_negation_of(b) in phi
            if b.op == "K" and not b.default_neg:
                if guessed:
                    dropped = True
                    break
                body.append(DefaultNeg(b.lit, double=True))
            elif b.op == "K":
                if not guessed:
                    body.append(DefaultNeg(b.lit))
            elif not b.default_neg:
                if not guessed:
                    body.append(DefaultNeg(b.lit, double=True))
            else:
                if guessed:
                    dropped = True
                    break
                body.append(DefaultNeg(b.lit))
        if not dropped:
            out.append(Rule(r.head, tuple(dict.fromkeys(body))))
    return p.replace_rules(out)


def epistemic_reduct(p: Program, phi: PhiGuess, i: Interpretation) -> Program:
    return gl_reduct(epistemic_substitute(p, phi), i)


# --- minimal models --------------------------------------------------------

def _literal_slots(p: Program) -> list[int]:
    return [lit.index for lit in p.head_literals()]


def interpretations_over(slots: Sequence[int]) -> Iterator[Interpretation]:
    """All consistent interpretations over ``slots``, ascending by bitset value."""
    slots = sorted(slots)
    found = []
    for mask in range(1 << len(slots)):
        bits = 0
        for k, s in enumerate(slots):
            if mask >> k & 1:
                bits |= 1 << s
        if consistent_bits(bits):
            found.append(bits)
    for bits in sorted(found):
        yield Interpretation(bits)


def proper_submasks(bits: int) -> Iterator[int]:
    """Proper submasks of ``bits``, largest first (excluding ``bits``)."""
    sub = (bits - 1) & bits
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & bits


def is_minimal_model(p: Program, i: Interpretation) -> bool:
    if not is_model(p, i):
        return False
    return not any(is_model(p, Interpretation(s)) for s in proper_submasks(i.bits)) if i.bits else True


def minimal_models(p: Program) -> list[Interpretation]:
    """Minimal models of a positive program, in canonical order."""
    if not is_positive(p):
        raise ValueError("minimal_models expects a positive program")
    minimal: list[Interpretation] = []
    # ascending bit order visits every subset of i before i
    for i in interpretations_over(_literal_slots(p)):
        if any(m.issubset(i) for m in minimal):
            continue
        if is_model(p, i):
            minimal.append(i)
    return minimal
