"""Desk-scale workbench for epistemic logic programs."""

__version__ = "0.1.0"

from .syntax import Program, Rule, parse_program, parse_rule, render, classify, epistemic_negations  # noqa: E402
from .semantics import Interpretation, WorldView, PhiGuess  # noqa: E402
from .solvers import (  # noqa: E402
    SemanticsId,
    SolveResult,
    gl_answer_sets,
    g91_world_views,
    se16_world_views,
    narrative_world_views,
    solve,
)
from .properties import (  # noqa: E402
    check_constraint_monotonicity,
    query_filter,
    find_unfounded_set,
    find_epistemic_unfounded,
    verify_witness,
)
