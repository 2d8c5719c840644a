import random

import pytest

import oracles
from conftest import names
from elpkit.semantics import (
    Interpretation,
    PhiGuess,
    WorldView,
    epistemic_reduct,
    epistemic_substitute,
    gl_reduct,
    interpretations_over,
    is_positive,
    minimal_models,
    modal_reduct,
    sat_modal,
    sat_objective,
    sat_rule,
)
from elpkit.syntax import (
    DefaultNeg,
    EpNegLiteral,
    ModalLiteral,
    ObjectLiteral,
    parse_program,
    render,
)
from progen import random_program


def I(p, *atoms):
    return Interpretation.from_names(p, atoms)


def test_interpretation_rejects_inconsistency():
    p = parse_program("a. -a :- b.")
    with pytest.raises(ValueError, match="inconsistent"):
        I(p, "a", "-a")
    assert list(I(p, "-a", "b").literals(p.symbols)) == [p.lit("-a"), p.lit("b")]


def test_world_view_canonical_and_non_empty():
    p = parse_program("p | q.")
    a = WorldView.of(I(p, "q"), I(p, "p"), I(p, "q"))
    assert a.members == (I(p, "p"), I(p, "q"))
    assert a.render(p.symbols) == "{ {p}, {q} }"
    with pytest.raises(ValueError):
        WorldView(())
    assert WorldView.of(I(p)) < WorldView.of(I(p, "p"))


def test_interpretations_over_is_ascending_and_consistent():
    got = [i.bits for i in interpretations_over([0, 1, 2])]
    assert got == [0, 1, 2, 4, 5, 6]  # 3 = {a,-a} and 7 excluded


def test_sat_objective():
    p = parse_program("p | q.")
    assert sat_objective(I(p, "p"), p.lit("p"))
    assert not sat_objective(I(p, "p"), DefaultNeg(p.lit("p")))
    assert sat_objective(I(p), DefaultNeg(p.lit("q")))
    assert sat_objective(I(p, "p"), DefaultNeg(p.lit("p"), double=True))


def test_sat_modal(examples):
    p = examples["pi1"]
    both = WorldView.of(I(p, "p"), I(p, "q"))
    K = ModalLiteral("K", p.lit("p"))
    assert not sat_modal(both, K)
    assert sat_modal(both, ModalLiteral("K", p.lit("p"), default_neg=True))
    assert sat_modal(WorldView.of(I(p, "p")), K)
    assert sat_modal(both, ModalLiteral("M", p.lit("p")))


def test_sat_rule(examples):
    p3 = examples["pi3"]
    pq = I(p3, "p", "q")
    assert sat_rule(WorldView.of(pq), pq, p3.rules[2])  # q :- K p.
    bottom = parse_program(":- true.")
    assert not sat_rule(None, Interpretation(), bottom.rules[0])
    p1 = examples["pi1"]
    assert sat_rule(WorldView.of(I(p1, "p")), I(p1, "p"), p1.rules[1])
    assert not sat_rule(WorldView.of(I(p1, "p"), I(p1, "q")), I(p1, "p"), p1.rules[1])


def test_gl_reduct_examples(examples):
    p2 = examples["pi2"]
    assert render(gl_reduct(p2, I(p2, "a", "b"))) == "a | b.\na :- b.\n"
    assert render(gl_reduct(p2, I(p2, "a"))) == "a | b.\na :- b.\nfalse.\n"
    pos = examples["pi2_minus_c"]
    for i in interpretations_over([0, 2]):
        assert gl_reduct(pos, i) == pos


def test_gl_reduct_rejects_modal(examples):
    with pytest.raises(ValueError):
        gl_reduct(examples["pi1"], Interpretation())


def test_modal_reduct_examples(examples):
    k = examples["k_recursion"]
    assert render(modal_reduct(k, WorldView.of(I(k, "p")))) == "p.\n"
    assert render(modal_reduct(k, WorldView.of(I(k)))) == ""
    p1 = examples["pi1"]
    assert render(modal_reduct(p1, WorldView.of(I(p1, "p")))) == "p | q.\n"


def test_epistemic_reduct_examples(examples):
    k = examples["k_recursion"]
    not_p = EpNegLiteral(k.lit("p"))
    assert render(epistemic_reduct(k, PhiGuess({not_p}), I(k))) == ""
    assert render(epistemic_reduct(k, PhiGuess({not_p}), I(k, "p"))) == ""
    assert render(epistemic_reduct(k, PhiGuess(), I(k, "p"))) == "p.\n"
    p1 = examples["pi1"]
    assert render(epistemic_reduct(p1, PhiGuess(), I(p1, "p"))) == "p | q.\n"


def test_epistemic_substitution_table():
    p = parse_program("a :- K x.\nb :- not K x.\nc :- M x.\nd :- not M x.")
    x = p.lit("x")
    guess_k = PhiGuess({EpNegLiteral(x, False)})
    guess_m = PhiGuess({EpNegLiteral(x, True)})
    assert render(epistemic_substitute(p, guess_k)) == "b.\nc :- not not x.\nd :- not x.\n"
    assert render(epistemic_substitute(p, guess_m)) == "a :- not not x.\nb :- not x.\nc.\n"
    assert render(epistemic_substitute(p, PhiGuess())) == (
        "a :- not not x.\nb :- not x.\nc :- not not x.\nd :- not x.\n"
    )


def test_minimal_models_examples(examples):
    pq = examples["pq"]
    assert [names(i, pq) for i in minimal_models(pq)] == [{"p"}, {"q"}]
    p = examples["pi2_minus_c"]
    assert [names(i, p) for i in minimal_models(p)] == [{"a"}]
    assert minimal_models(parse_program("")) == [Interpretation()]
    with pytest.raises(ValueError):
        minimal_models(examples["pi2"])


def test_minimal_models_oracle_frozen():
    # oracle: 2^n enumeration over {a,b,c} for a | b. c :- a. b :- c.
    p = parse_program("a | b.\nc :- a.\nb :- c.")
    assert oracles.minimal_models(p) == {frozenset({"b"})}
    assert [names(i, p) for i in minimal_models(p)] == [{"b"}]


# --- properties ------------------------------------------------------------

def _positive(rng, **kw):
    while True:
        p = random_program(rng, **kw)
        p = p.replace_rules(r.__class__(r.head, tuple(r.positive_body())) for r in p.rules)
        if is_positive(p):
            return p


def test_minimal_models_match_enumeration():
    rng = random.Random(7)
    for _ in range(300):
        p = _positive(rng, strong=rng.random() < 0.3)
        got = minimal_models(p)
        assert {names(i, p) for i in got} == oracles.minimal_models(p)
        assert all(not x.issubset(y) for x in got for y in got if x != y)


def test_minimal_models_invariant_under_gl_reduct_of_positive():
    rng = random.Random(11)
    for _ in range(100):
        p = _positive(rng)
        mm = minimal_models(p)
        for i in interpretations_over(range(2 * len(p.symbols))):
            assert minimal_models(gl_reduct(p, i)) == mm


def _random_world_view(rng, p):
    pool = list(interpretations_over(range(2 * len(p.symbols))))
    return WorldView(tuple(rng.sample(pool, rng.randint(1, min(4, len(pool))))))


def test_modal_shorthands_match_epistemic_negation():
    rng = random.Random(3)
    p = parse_program("a | b | -a | c.")
    for _ in range(200):
        a = _random_world_view(rng, p)
        for lit in [p.lit(n) for n in ("a", "-a", "b", "c")]:
            some_false = any(lit not in i for i in a)
            some_true = any(lit in i for i in a)
            assert sat_modal(a, ModalLiteral("K", lit)) == (not some_false)
            assert sat_modal(a, ModalLiteral("M", lit)) == some_true


def test_reducts_produce_expected_fragments():
    rng = random.Random(5)
    for _ in range(200):
        p = random_program(rng, epistemic=True, strong=True)
        i = rng.choice(list(interpretations_over(range(2 * len(p.symbols)))))
        a = _random_world_view(rng, p)
        mr = modal_reduct(p, a)
        assert mr.is_non_epistemic
        assert len(mr.rules) <= len(p.rules)
        assert is_positive(gl_reduct(mr, i))
        ep = sorted({EpNegLiteral(m.lit, m.op == "M") for r in p.rules for m in r.modal_literals()})
        phi = PhiGuess(frozenset(e for e in ep if rng.random() < 0.5))
        assert is_positive(epistemic_reduct(p, phi, i))
        assert all(isinstance(h, ObjectLiteral) for r in mr.rules for h in r.head)
