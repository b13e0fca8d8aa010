import random

import pytest

from stablelab import (
    gl_operator,
    gl_reduct,
    is_stable_model,
    least_model,
    parse_program,
    pretty_program,
    stable_models_bruteforce,
    tp_step,
    tpm_step,
)
from stablelab.errors import NotHorn, TooManyAtoms
from stablelab.syntax import Program

from conftest import names
from genprog import random_program


def test_tp_step():
    prog = parse_program("p. q :- p.")
    assert tp_step(prog, frozenset()) == {0}
    assert tp_step(prog, frozenset({0})) == {0, 1}
    cyc = parse_program("p :- p.")
    assert tp_step(cyc, frozenset()) == frozenset()


def test_tp_step_rejects_negation(ex1):
    with pytest.raises(NotHorn):
        tp_step(ex1, frozenset())
    with pytest.raises(NotHorn):
        least_model(ex1)


def test_least_model():
    assert least_model(parse_program("p. q :- p. s.")) == {0, 1, 2}
    assert least_model(parse_program("")) == frozenset()
    assert least_model(parse_program("p :- q. q :- p.")) == frozenset()


def test_tp_step_monotone():
    for seed in range(30):
        rng = random.Random(seed)
        prog = random_program(seed, max_atoms=6, max_clauses=10)
        horn = Program(prog.names, tuple(c for c in prog.clauses if not c.neg))
        n = prog.n_atoms
        small = frozenset(a for a in range(n) if rng.random() < 0.4)
        big = small | frozenset(a for a in range(n) if rng.random() < 0.4)
        assert tp_step(horn, small) <= tp_step(horn, big)


def test_tpm_step(ex1):
    assert tpm_step(ex1, frozenset({0, 1, 3}), frozenset()) == {0, 3}
    # with the candidate model at the whole universe, only negation-free
    # clauses with empty positive body fire
    full = frozenset(range(5))
    assert tpm_step(ex1, full, frozenset()) == {0}


def test_tpm_step_monotone_in_interp(ex1):
    for seed in range(30):
        rng = random.Random(seed)
        prog = random_program(seed, max_atoms=6, max_clauses=10)
        n = prog.n_atoms
        model = frozenset(a for a in range(n) if rng.random() < 0.5)
        i1 = frozenset(a for a in range(n) if rng.random() < 0.4)
        i2 = i1 | frozenset(a for a in range(n) if rng.random() < 0.4)
        assert tpm_step(prog, model, i1) <= tpm_step(prog, model, i2)


def test_gl_reduct(ex1):
    r1 = gl_reduct(ex1, ex1.interpretation(["p", "q", "s"]))
    assert pretty_program(r1).splitlines()[1:] == ["p.", "q :- p.", "s."]
    r2 = gl_reduct(ex1, ex1.interpretation(["p", "r", "s"]))
    assert pretty_program(r2).splitlines()[1:] == ["p.", "r.", "s."]
    horn = parse_program("p. q :- p.")
    assert gl_reduct(horn, frozenset({0})).clauses == horn.clauses


def test_gl_operator(ex1):
    assert gl_operator(ex1, ex1.interpretation(["p", "q", "s"])) == {0, 1, 3}
    assert gl_operator(ex1, frozenset()) == {0, 1, 2, 3}
    assert gl_operator(ex1, frozenset(range(5))) == {0}


def test_is_stable_model(ex1):
    assert is_stable_model(ex1, ex1.interpretation(["p", "q", "s"]))
    assert is_stable_model(ex1, ex1.interpretation(["p", "r", "s"]))
    assert not is_stable_model(ex1, ex1.interpretation(["p", "q", "r", "s"]))
    horn = parse_program("p. q :- p.")
    assert is_stable_model(horn, least_model(horn))


def test_bruteforce(ex1):
    assert names(ex1, stable_models_bruteforce(ex1)) == [
        ["p", "q", "s"],
        ["p", "r", "s"],
    ]
    assert stable_models_bruteforce(parse_program("p :- not p.")) == []
    horn = parse_program("p. q :- p. r :- s.")
    assert stable_models_bruteforce(horn) == [least_model(horn)]


def test_bruteforce_limit():
    prog = Program(tuple(f"x{i}" for i in range(21)), ())
    with pytest.raises(TooManyAtoms):
        stable_models_bruteforce(prog)


def test_stratified_programs_have_one_stable_model():
    from stablelab import is_stratified

    found = 0
    for seed in range(300):
        prog = random_program(seed, max_atoms=6, max_clauses=8)
        if not is_stratified(prog):
            continue
        found += 1
        assert len(stable_models_bruteforce(prog)) == 1
    assert found > 20


def test_duplicate_clauses_harmless(ex1):
    doubled = Program(ex1.names, ex1.clauses + ex1.clauses)
    assert stable_models_bruteforce(doubled) == stable_models_bruteforce(ex1)
