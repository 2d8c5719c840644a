"""Exhaustive enumeration engines: GL answer sets and G91 / SE16 / narrative world views."""

from __future__ import annotations

import enum
import itertools
import os
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .semantics import (
    Interpretation,
    PhiGuess,
    WorldView,
    consistent_bits,
    epistemic_substitute,
    gl_reduct,
    interpretations_over,
    is_model,
    proper_submasks,
    sat_body,
    sat_modal,
    sat_rule,
)
from .syntax import DefaultNeg, EpNegLiteral, ModalLiteral, Program, Rule, epistemic_negations

__all__ = [
    "SemanticsId",
    "SolveResult",
    "Stats",
    "CapExceeded",
    "FragmentError",
    "NotApplicable",
    "DEFAULT_CAPS",
    "gl_answer_sets",
    "g91_world_views",
    "se16_world_views",
    "narrative_world_views",
    "solve",
]


class SemanticsId(str, enum.Enum):
    GL = "gl"
    G91 = "g91"
    SE16 = "se16"
    NARRATIVE = "narrative"

    def __str__(self):
        return self.value


DEFAULT_CAPS = {
    SemanticsId.GL: 12,
    SemanticsId.G91: 4,
    SemanticsId.SE16: 4,
    SemanticsId.NARRATIVE: 4,
}


class CapExceeded(RuntimeError):
    def __init__(self, atoms: int, cap: int, semantics: SemanticsId):
        super().__init__(
            f"program has {atoms} atoms, above the {semantics} cap of {cap} (raise it with --max-atoms)"
        )
        self.atoms = atoms
        self.cap = cap
        self.semantics = semantics


class FragmentError(ValueError):
    """Program lies outside the fragment the narrative procedure covers."""

    def __init__(self, message: str, rule: Rule):
        super().__init__(f"{message}: {rule}")
        self.rule = rule


class NotApplicable(ValueError):
    pass


@dataclass
class Stats:
    interpretations_checked: int = 0
    collections_checked: int = 0
    elapsed: float = 0.0


@dataclass
class SolveResult:
    semantics: SemanticsId
    answer_sets: list[Interpretation] = field(default_factory=list)
    world_views: list[WorldView] = field(default_factory=list)
    phi_per_world_view: dict[WorldView, PhiGuess] = field(default_factory=dict)
    stats: Stats = field(default_factory=Stats)

    @property
    def results(self) -> list:
        return self.answer_sets if self.semantics is SemanticsId.GL else self.world_views


def _cap(semantics: SemanticsId, max_atoms: int | None) -> int:
    if max_atoms is not None:
        return max_atoms
    env = os.environ.get("ELP_MAX_ATOMS")
    if env:
        return int(env)
    return DEFAULT_CAPS[semantics]


def _check_cap(p: Program, semantics: SemanticsId, max_atoms: int | None):
    cap = _cap(semantics, max_atoms)
    if len(p.symbols) > cap:
        raise CapExceeded(len(p.symbols), cap, semantics)


# --- GL --------------------------------------------------------------------

def _answer_sets(p: Program, stats: Stats) -> list[Interpretation]:
    found = []
    for i in interpretations_over([lit.index for lit in p.head_literals()]):
        stats.interpretations_checked += 1
        reduct = gl_reduct(p, i)
        if not is_model(reduct, i):
            continue
        if i.bits and any(is_model(reduct, Interpretation(s)) for s in proper_submasks(i.bits)):
            continue
        # constraints filter after minimality; already implied by the reduct
        if all(sat_rule(None, i, r) for r in p.rules if r.is_constraint):
            found.append(i)
    return found


def gl_answer_sets(p: Program, max_atoms: int | None = None, stats: Stats | None = None) -> list[Interpretation]:
    """Answer sets of a non-epistemic program (``not not l`` allowed)."""
    if not p.is_non_epistemic:
        raise NotApplicable("GL semantics needs a program without modal literals")
    _check_cap(p, SemanticsId.GL, max_atoms)
    return _answer_sets(p, stats if stats is not None else Stats())


# --- G91 -------------------------------------------------------------------

def _modal_atoms(p: Program) -> list[ModalLiteral]:
    seen = {}
    for r in p.rules:
        for m in r.modal_literals():
            core = ModalLiteral(m.op, m.lit)
            seen.setdefault((m.op, m.lit.index), core)
    return [seen[k] for k in sorted(seen)]


def g91_world_views(p: Program, max_atoms: int | None = None, stats: Stats | None = None) -> list[WorldView]:
    """World views A with A = answer sets of the modal reduct of ``p`` w.r.t. A.

    The modal reduct only depends on the truth values of the (unnegated) modal
    atoms, so each valuation of them is guessed once and checked for
    self-consistency; this finds exactly the fixpoints among all collections.
    """
    _check_cap(p, SemanticsId.G91, max_atoms)
    stats = stats if stats is not None else Stats()
    atoms = _modal_atoms(p)
    found = []
    for values in itertools.product((False, True), repeat=len(atoms)):
        stats.collections_checked += 1
        val = dict(zip(atoms, values))

        def holds(m: ModalLiteral) -> bool:
            return val[ModalLiteral(m.op, m.lit)] != m.default_neg

        reduct = p.replace_rules(
            Rule(r.head, tuple(r.objective_body()))
            for r in p.rules
            if all(holds(m) for m in r.modal_literals())
        )
        members = _answer_sets(reduct, stats)
        if not members:
            continue
        if all(sat_modal(members, m) == v for m, v in val.items()):
            found.append(WorldView(tuple(members)))
    return sorted(set(found))


# --- SE16 ------------------------------------------------------------------

BaseSemantics = Callable[[Program], Iterable[Interpretation]]


def _phi_satisfied(phi: PhiGuess, members: list[Interpretation]) -> bool:
    for e in phi.chosen:
        if e.inner_default_neg:
            if not any(e.inner in i for i in members):
                return False
        elif all(e.inner in i for i in members):
            return False
    return True


def _ep_true(e: EpNegLiteral, members: list[Interpretation]) -> bool:
    return _phi_satisfied(PhiGuess(frozenset([e])), members)


def se16_world_views(
    p: Program,
    max_atoms: int | None = None,
    stats: Stats | None = None,
    base: BaseSemantics | None = None,
    require_unguessed_false: bool = False,
) -> list[tuple[PhiGuess, WorldView]]:
    """World views under knowledge minimization with epistemic negation.

    For every guess ``phi`` of epistemic negations, the program is rewritten
    with each guessed ``NOT F`` true and each unguessed one read as ``not F``;
    its base answer sets form the candidate collection, which must be
    non-empty and make every guessed ``NOT F`` true.  Candidates whose guess
    is subset-maximal are the world views.

    ``base`` maps the rewritten (non-epistemic) program to its answer sets and
    defaults to GL.  With ``require_unguessed_false`` a candidate must also
    make every unguessed epistemic negation false.
    """
    _check_cap(p, SemanticsId.SE16, max_atoms)
    stats = stats if stats is not None else Stats()
    if base is None:
        def base(q: Program) -> list[Interpretation]:
            return _answer_sets(q, stats)

    ep = sorted(epistemic_negations(p))
    candidates: list[tuple[PhiGuess, WorldView]] = []
    for r in range(len(ep) + 1):
        for chosen in itertools.combinations(ep, r):
            stats.collections_checked += 1
            phi = PhiGuess(frozenset(chosen))
            members = sorted(set(base(epistemic_substitute(p, phi))))
            if not members or not _phi_satisfied(phi, members):
                continue
            if require_unguessed_false and any(
                _ep_true(e, members) for e in ep if e not in phi
            ):
                continue
            candidates.append((phi, WorldView(tuple(members))))
    maximal = [
        (phi, a)
        for phi, a in candidates
        if not any(phi.chosen < other.chosen for other, _ in candidates)
    ]
    return sorted(maximal, key=lambda pa: (pa[1].key(), pa[0].key()))


# --- narrative construction -----------------------------------------------

def check_narrative_fragment(p: Program):
    for r in p.rules:
        if len(r.head) > 1 and r.body:
            raise FragmentError("disjunctive head on a rule with a body", r)
        if r.head and any(isinstance(b, DefaultNeg) for b in r.body):
            raise FragmentError("default-negated object literal in a rule body", r)


def _closure(p: Program, start: int, collection: list[int] | None, own: int) -> int:
    """Fixpoint of single-head rules over member ``own`` of ``collection``.

    With ``collection=None`` rules carrying modal literals are ignored.
    """
    bits = start
    changed = True
    while changed:
        changed = False
        for r in p.rules:
            if len(r.head) != 1:
                continue
            if collection is None and r.is_epistemic:
                continue
            i = Interpretation._unchecked(bits)
            mods = r.modal_literals()
            if not sat_body(None, i, r.objective_body()):
                continue
            if mods:
                current = [Interpretation._unchecked(b) for b in collection]
                current[own] = i
                if not all(sat_modal(current, m) for m in mods):
                    continue
            h = r.head[0]
            if not bits >> h.index & 1:
                bits |= 1 << h.index
                changed = True
                if collection is not None:
                    collection[own] = bits
    return bits


def _modal_closure(p: Program, members: list[int]) -> list[int]:
    members = list(members)
    changed = True
    while changed:
        changed = False
        for k in range(len(members)):
            before = members[k]
            members[k] = _closure(p, members[k], members, k)
            changed |= members[k] != before
    return members


def _antichain(members: list[Interpretation]) -> bool:
    return not any(x != y and x.issubset(y) for x in members for y in members)


def narrative_world_views(p: Program, max_atoms: int | None = None, stats: Stats | None = None) -> list[WorldView]:
    """Constructive world-view procedure for programs of the narrative fragment.

    Choose one disjunct from every disjunctive fact and close under the
    objective rules to get the possible answer sets.  Every non-empty set of
    them (single sets only for non-epistemic programs) is closed under the
    rules whose modal body holds in the current collection, and kept when all
    rules, constraints included, are satisfied and the members stay pairwise
    incomparable.
    """
    _check_cap(p, SemanticsId.NARRATIVE, max_atoms)
    check_narrative_fragment(p)
    stats = stats if stats is not None else Stats()
    choices = [r.head for r in p.rules if len(r.head) > 1 and not r.body]
    possible = []
    for pick in itertools.product(*choices):
        stats.interpretations_checked += 1
        start = 0
        for lit in pick:
            start |= 1 << lit.index
        bits = _closure(p, start, None, 0)
        if consistent_bits(bits) and bits not in possible:
            possible.append(bits)
    possible.sort()

    sizes = [1] if p.is_non_epistemic else range(1, len(possible) + 1)
    found = set()
    for size in sizes:
        for combo in itertools.combinations(possible, size):
            stats.collections_checked += 1
            closed = _modal_closure(p, list(combo))
            if not all(consistent_bits(b) for b in closed):
                continue
            members = sorted({Interpretation(b) for b in closed})
            if not _antichain(members):
                continue
            if all(sat_rule(members, i, r) for i in members for r in p.rules):
                found.add(WorldView(tuple(members)))
    return sorted(found)


# --- dispatch --------------------------------------------------------------

def solve(p: Program, semantics: SemanticsId | str, max_atoms: int | None = None) -> SolveResult:
    semantics = SemanticsId(semantics)
    stats = Stats()
    start = time.perf_counter()
    result = SolveResult(semantics, stats=stats)
    if semantics is SemanticsId.GL:
        result.answer_sets = gl_answer_sets(p, max_atoms, stats)
    elif semantics is SemanticsId.G91:
        result.world_views = g91_world_views(p, max_atoms, stats)
    elif semantics is SemanticsId.SE16:
        pairs = se16_world_views(p, max_atoms, stats)
        for phi, a in pairs:
            result.phi_per_world_view.setdefault(a, phi)
        result.world_views = sorted(result.phi_per_world_view)
    else:
        result.world_views = narrative_world_views(p, max_atoms, stats)
    stats.elapsed = time.perf_counter() - start
    return result
