"""Checkers for constraint monotonicity, constraints read as queries, and unfounded sets.

The epistemic unfounded-set check is a witness-compatible reconstruction:
beside the usual three escape conditions for a rule (body false, positive
body meets the set, head satisfied outside the set) it accepts a rule whose
body holds a positive ``K l`` with ``l`` in some set of the collection.
Sets are taken as subsets of their interpretation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .semantics import Interpretation, WorldView, is_model, sat_body, sat_rule
from .solvers import SemanticsId, solve
from .syntax import ModalLiteral, Program, Rule

__all__ = [
    "CmReport",
    "UnfoundedWitness",
    "check_constraint_monotonicity",
    "query_filter",
    "find_unfounded_set",
    "find_epistemic_unfounded",
    "verify_witness",
    "MAX_WITNESS_PAIRS",
]

MAX_WITNESS_PAIRS = 16


@dataclass(frozen=True)
class CmReport:
    """Results with and without the constraint.

    Entries are world views, or interpretations when ``semantics`` is GL.
    """

    semantics: SemanticsId
    wv_with_c: tuple
    wv_without_c: tuple
    violations: tuple

    @property
    def holds(self) -> bool:
        return not self.violations

    @property
    def level(self) -> str:
        return "answer_set" if self.semantics is SemanticsId.GL else "world_view"


@dataclass(frozen=True)
class UnfoundedWitness:
    pairs: tuple[tuple[Interpretation, Interpretation], ...]

    def __post_init__(self):
        pairs = tuple(self.pairs)
        if not pairs:
            raise ValueError("an unfounded witness needs at least one pair")
        for x, i in pairs:
            if not x.bits or not x.issubset(i):
                raise ValueError("each unfounded set must be a non-empty subset of its interpretation")
        object.__setattr__(self, "pairs", pairs)

    def render(self, symbols) -> str:
        parts = [f"<{x.render(symbols)}, {i.render(symbols)}>" for x, i in self.pairs]
        return parts[0] if len(parts) == 1 else "[" + ", ".join(parts) + "]"


def _require_constraint(c: Rule):
    if not c.is_constraint:
        raise ValueError(f"not a constraint: {c}")


def check_constraint_monotonicity(
    p: Program, c: Rule, semantics: SemanticsId | str, max_atoms: int | None = None
) -> CmReport:
    semantics = SemanticsId(semantics)
    _require_constraint(c)
    with_c = tuple(solve(p.with_rules([c]), semantics, max_atoms).results)
    without_c = tuple(solve(p, semantics, max_atoms).results)
    violations = tuple(x for x in with_c if x not in without_c)
    return CmReport(semantics, with_c, without_c, violations)


def query_filter(p: Program, c: Rule, semantics: SemanticsId | str, max_atoms: int | None = None) -> list:
    """Results of ``p`` that satisfy ``c`` in every member; ``c`` plays no part in solving."""
    semantics = SemanticsId(semantics)
    _require_constraint(c)
    c = Program.from_rules([c], p.symbols).rules[0]
    out = []
    for x in solve(p, semantics, max_atoms).results:
        members = [x] if isinstance(x, Interpretation) else list(x)
        if all(sat_rule(members, i, c) for i in members):
            out.append(x)
    return out


# --- unfounded sets --------------------------------------------------------

def _escapes(r: Rule, a: Sequence[Interpretation], x: Interpretation, i: Interpretation, union: int) -> bool:
    """True if rule ``r`` gives no support to set ``x`` in ``i``."""
    if not any(h in x for h in r.head):
        return True
    if not sat_body(a, i, r.body):
        return True
    if any(b in x for b in r.positive_body()):
        return True
    if any(h in i and h not in x for h in r.head):
        return True
    return any(
        isinstance(b, ModalLiteral) and b.op == "K" and not b.default_neg and (union >> b.lit.index) & 1
        for b in r.body
    )


def _is_unfounded(p: Program, a: Sequence[Interpretation], pairs) -> bool:
    union = 0
    for x, _ in pairs:
        union |= x.bits
    return all(_escapes(r, a, x, i, union) for x, i in pairs for r in p.rules)


def _subsets(i: Interpretation) -> list[Interpretation]:
    slots = list(i.slots())
    out = []
    for mask in range(1, 1 << len(slots)):
        bits = 0
        for k, s in enumerate(slots):
            if mask >> k & 1:
                bits |= 1 << s
        out.append(Interpretation(bits))
    return sorted(out, key=lambda x: (len(x), x.bits))


def find_unfounded_set(p: Program, i: Interpretation) -> UnfoundedWitness | None:
    """Smallest non-empty unfounded X within ``i``, or None if ``i`` is unfounded-free."""
    if not p.is_non_epistemic:
        raise ValueError("find_unfounded_set expects a non-epistemic program")
    if not is_model(p, i):
        raise ValueError("interpretation is not a model of the program")
    for x in _subsets(i):
        if _is_unfounded(p, [i], [(x, i)]):
            return UnfoundedWitness(((x, i),))
    return None


def _check_world_view(p: Program, a: WorldView):
    members = list(a)
    for i in members:
        for r in p.rules:
            if not sat_rule(members, i, r):
                raise ValueError(f"world view member {i!r} violates rule {r}")


def _greatest_unfounded(p: Program, members, candidates):
    # escape condition (d) only grows with the union, so unfounded
    # collections are closed under union and a largest one exists
    viable = list(candidates)
    while True:
        union = 0
        for x, _ in viable:
            union |= x.bits
        keep = [(x, i) for x, i in viable if all(_escapes(r, members, x, i, union) for r in p.rules)]
        if len(keep) == len(viable):
            return keep
        viable = keep


def find_epistemic_unfounded(p: Program, a: WorldView) -> UnfoundedWitness | None:
    """Minimal collection of (set, member) pairs that is unfounded for ``a``.

    Collections are tried by total set size, then by number of pairs, then in
    canonical order.  Above ``MAX_WITNESS_PAIRS`` viable pairs the largest
    unfounded collection is returned instead of a minimal one.
    """
    _check_world_view(p, a)
    members = list(a)
    candidates = [(x, i) for i in members for x in _subsets(i)]
    viable = _greatest_unfounded(p, members, candidates)
    if not viable:
        return None
    if len(viable) > MAX_WITNESS_PAIRS:
        return UnfoundedWitness(tuple(viable))
    sizes = [len(x) for x, _ in viable]
    for total in range(1, sum(sizes) + 1):
        for count in range(1, total + 1):
            for combo in itertools.combinations(range(len(viable)), count):
                if sum(sizes[k] for k in combo) != total:
                    continue
                pairs = [viable[k] for k in combo]
                if _is_unfounded(p, members, pairs):
                    return UnfoundedWitness(tuple(pairs))
    return UnfoundedWitness(tuple(viable))


def verify_witness(p: Program, a: WorldView, w: UnfoundedWitness) -> bool:
    members = list(a)
    for _, i in w.pairs:
        if i not in a:
            raise ValueError("witness interpretation is not a member of the world view")
    return _is_unfounded(p, members, w.pairs)
