import sys
from pathlib import Path

import pytest

from elpkit.syntax import parse_program

sys.path.insert(0, str(Path(__file__).parent))

CORPUS = Path(__file__).resolve().parents[1] / "corpus"

EXAMPLES = {
    "pq": "p | q.",
    "k_recursion": "p :- K p.",
    "m_recursion": "p :- M p.",
    "pi1": "p | q.\n:- not K p.",
    "pi2": "a | b.\na :- b.\n:- not b.",
    "pi2_minus_c": "a | b.\na :- b.",
    "pi3": "p | q.\np :- K q.\nq :- K p.\n:- not K p.",
}


@pytest.fixture
def examples():
    return {k: parse_program(v) for k, v in EXAMPLES.items()}


def names(x, p):
    """Interpretation -> frozenset of names; world view -> frozenset of those."""
    if hasattr(x, "bits"):
        return frozenset(x.names(p.symbols))
    return frozenset(frozenset(i.names(p.symbols)) for i in x)


def wv(*members):
    return frozenset(frozenset(m) for m in members)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
