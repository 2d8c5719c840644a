"""Report construction and rendering (human text and sorted-key JSON)."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

from . import __version__
from .properties import (
    check_constraint_monotonicity,
    find_epistemic_unfounded,
    find_unfounded_set,
)
from .semantics import Interpretation, WorldView
from .solvers import CapExceeded, SemanticsId, SolveResult, solve
from .syntax import Program, render_rule

SPLITTING_NOTE = (
    "every semantics with epistemic splitting also has subjective constraint monotonicity, "
    "so a violation here rules out epistemic splitting"
)


@dataclass
class Report:
    command: str
    file: str
    source: str
    program: Program
    semantics: str | None = None
    results: dict[str, Any] = field(default_factory=dict)
    stats: dict[str, int] = field(default_factory=dict)
    elapsed: float = 0.0
    text_lines: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "program": {
                "atoms": len(self.program.symbols),
                "file": self.file,
                "rules": len(self.program.rules),
                "sha256": hashlib.sha256(self.source.encode("utf-8")).hexdigest(),
                "source": self.source,
            },
            "results": self.results,
            "semantics": self.semantics,
            "stats": self.stats,
            "tool": "elpkit",
            "version": __version__,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        return "\n".join(self.text_lines) + "\n"


# --- encoders --------------------------------------------------------------

def enc_interpretation(i: Interpretation, p: Program) -> list[str]:
    return i.names(p.symbols)


def enc_world_view(a: WorldView, p: Program) -> list[list[str]]:
    return [enc_interpretation(i, p) for i in a]


def enc_result(x, p: Program):
    if isinstance(x, Interpretation):
        return enc_interpretation(x, p)
    return enc_world_view(x, p)


def show(x, p: Program) -> str:
    return x.render(p.symbols)


def result_lines(result: SolveResult, p: Program, indent: str = "") -> list[str]:
    if result.semantics is SemanticsId.GL:
        if not result.answer_sets:
            return [indent + "no answer sets"]
        return [indent + f"answer set: {show(i, p)}" for i in result.answer_sets]
    if not result.world_views:
        return [indent + "no world views"]
    lines = []
    for a in result.world_views:
        lines.append(indent + f"world view: {show(a, p)}")
        if a in result.phi_per_world_view:
            lines.append(indent + f"  guess: {result.phi_per_world_view[a]}")
    return lines


def solve_payload(result: SolveResult, p: Program) -> dict[str, Any]:
    if result.semantics is SemanticsId.GL:
        return {"answer_sets": [enc_interpretation(i, p) for i in result.answer_sets]}
    payload: dict[str, Any] = {"world_views": [enc_world_view(a, p) for a in result.world_views]}
    if result.semantics is SemanticsId.SE16:
        payload["guesses"] = [
            [str(e) for e in result.phi_per_world_view[a].sorted()] for a in result.world_views
        ]
    return payload


def stats_payload(result: SolveResult) -> dict[str, int]:
    # elapsed time stays out of machine output so reports are byte-stable
    return {
        "collections_checked": result.stats.collections_checked,
        "interpretations_checked": result.stats.interpretations_checked,
    }


# --- property helpers ------------------------------------------------------

def default_constraint(p: Program) -> int:
    indices = [k for k, r in enumerate(p.rules) if r.is_constraint]
    if not indices:
        raise ValueError("program has no constraint to test")
    return indices[-1]


def cm_payload(p: Program, semantics: SemanticsId, index: int | None, max_atoms: int | None):
    if index is None:
        index = default_constraint(p)
    if not 0 <= index < len(p.rules) or not p.rules[index].is_constraint:
        raise ValueError(f"rule {index} is not a constraint")
    c = p.rules[index]
    base = p.without_rule(index)
    rep = check_constraint_monotonicity(base, c, semantics, max_atoms)
    payload = {
        "constraint": {"index": index, "rule": render_rule(c)},
        "holds": rep.holds,
        "level": rep.level,
        "violations": [enc_result(x, p) for x in rep.violations],
        "with_constraint": [enc_result(x, p) for x in rep.wv_with_c],
        "without_constraint": [enc_result(x, p) for x in rep.wv_without_c],
    }
    if semantics is not SemanticsId.GL:
        payload["note"] = SPLITTING_NOTE
    lines = [
        f"constraint: {render_rule(c)} (rule {index})",
        f"{rep.level}s with constraint: " + _join(rep.wv_with_c, p),
        f"{rep.level}s without constraint: " + _join(rep.wv_without_c, p),
        "constraint monotonicity: " + ("holds" if rep.holds else "violated"),
    ]
    lines += [f"  violation: {show(x, p)}" for x in rep.violations]
    if semantics is not SemanticsId.GL and not rep.holds:
        lines.append(f"note: {SPLITTING_NOTE}")
    return payload, lines


def _join(items, p: Program) -> str:
    return "; ".join(show(x, p) for x in items) if items else "none"


def foundedness_payload(p: Program, result: SolveResult):
    entries = []
    lines = []
    founded = True
    for x in result.results:
        entry: dict[str, Any] = {"model": enc_result(x, p)}
        try:
            if isinstance(x, Interpretation):
                w = find_unfounded_set(p, x)
            else:
                w = find_epistemic_unfounded(p, x)
        except ValueError as err:
            entry["error"] = str(err)
            entry["witness"] = None
            lines.append(f"{show(x, p)}: not checked ({err})")
            founded = False
        else:
            entry["witness"] = None if w is None else [
                [enc_interpretation(xs, p), enc_interpretation(i, p)] for xs, i in w.pairs
            ]
            if w is None:
                lines.append(f"{show(x, p)}: founded")
            else:
                founded = False
                lines.append(f"{show(x, p)}: unfounded, witness {w.render(p.symbols)}")
        entries.append(entry)
    if not entries:
        lines.append("nothing to check")
    return {"founded": founded, "models": entries}, lines


# --- commands --------------------------------------------------------------

def solve_report(p: Program, file: str, source: str, semantics, max_atoms=None) -> Report:
    semantics = SemanticsId(semantics)
    result = solve(p, semantics, max_atoms)
    rep = Report("solve", file, source, p, semantics.value)
    rep.results = solve_payload(result, p)
    rep.stats = stats_payload(result)
    rep.elapsed = result.stats.elapsed
    rep.text_lines = [f"semantics: {semantics.value}"] + result_lines(result, p)
    rep.text_lines.append(
        f"checked {result.stats.interpretations_checked} interpretations, "
        f"{result.stats.collections_checked} collections in {result.stats.elapsed:.3f}s"
    )
    return rep


def check_report(p: Program, file: str, source: str, prop: str, semantics, constraint=None, max_atoms=None) -> Report:
    semantics = SemanticsId(semantics)
    rep = Report("check", file, source, p, semantics.value)
    if prop == "cm":
        payload, lines = cm_payload(p, semantics, constraint, max_atoms)
    elif prop == "foundedness":
        result = solve(p, semantics, max_atoms)
        payload, lines = foundedness_payload(p, result)
        rep.stats = stats_payload(result)
    else:
        raise ValueError(f"unknown property {prop!r}")
    payload["property"] = prop
    rep.results = payload
    rep.text_lines = [f"semantics: {semantics.value}", f"property: {prop}"] + lines
    return rep


def compare_report(p: Program, file: str, source: str, max_atoms=None) -> Report:
    rep = Report("compare", file, source, p)
    rows = []
    lines = [f"{'semantics':<10} | results | cm | foundedness"]
    for s in SemanticsId:
        row: dict[str, Any] = {"semantics": s.value}
        try:
            result = solve(p, s, max_atoms)
        except (CapExceeded, ValueError) as err:
            row.update(status="error", error=str(err))
            rows.append(row)
            lines.append(f"{s.value:<10} | error: {err}")
            continue
        row["status"] = "ok"
        row.update(solve_payload(result, p))
        shown = _join(result.results, p)
        try:
            cm, _ = cm_payload(p, s, None, max_atoms)
            row["cm"] = {"holds": cm["holds"], "violations": cm["violations"]}
            cm_text = "holds" if cm["holds"] else "violated"
        except ValueError as err:
            row["cm"] = None
            cm_text = "n/a" if "no constraint" in str(err) else f"error: {err}"
        fd, _ = foundedness_payload(p, result)
        row["foundedness"] = fd
        fd_text = "n/a" if not fd["models"] else ("founded" if fd["founded"] else "unfounded")
        rows.append(row)
        lines.append(f"{s.value:<10} | {shown} | {cm_text} | {fd_text}")
    rep.results = {"rows": rows}
    rep.text_lines = lines
    return rep
