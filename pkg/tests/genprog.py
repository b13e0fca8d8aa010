"""Seeded random program generators shared by the oracle-vs-pipeline suites."""

import random

from stablelab.cc import CardConstraint, CCProgram, CCRawClause
from stablelab.syntax import Clause, Program


def random_program(seed, max_atoms=8, max_clauses=16):
    rng = random.Random(seed)
    n = rng.randint(1, max_atoms)
    names = [f"x{i}" for i in range(n)]
    clauses = []
    for _ in range(rng.randint(0, max_clauses)):
        head = rng.randrange(n)
        pos = frozenset(a for a in range(n) if rng.random() < 0.2)
        # negative bodies may overlap the positive body or the head
        neg = frozenset(a for a in range(n) if rng.random() < 0.25)
        clauses.append(Clause(head, pos, neg))
    return Program(names, clauses)


def random_purely_negative_program(seed, max_atoms=8, max_clauses=12):
    rng = random.Random(seed)
    n = rng.randint(1, max_atoms)
    names = [f"x{i}" for i in range(n)]
    clauses = []
    for _ in range(rng.randint(0, max_clauses)):
        head = rng.randrange(n)
        neg = frozenset(a for a in range(n) if rng.random() < 0.3)
        clauses.append(Clause(head, frozenset(), neg))
    return Program(names, clauses)


def random_cc_program(seed, max_atoms=6, max_clauses=8, max_set=4):
    rng = random.Random(seed)
    n = rng.randint(1, max_atoms)
    names = [f"x{i}" for i in range(n)]
    clauses = []
    for _ in range(rng.randint(0, max_clauses)):
        head = rng.randrange(n)
        constraints = []
        for _ in range(rng.randint(0, 3)):
            size = rng.randint(1, min(max_set, n))
            atoms = frozenset(rng.sample(range(n), size))
            lower = rng.choice([None, 0, rng.randint(0, size)])
            hi = lower if lower is not None else 0
            upper = rng.choice([None, rng.randint(hi, size)])
            constraints.append(CardConstraint(lower, atoms, upper))
        clauses.append(CCRawClause(head, tuple(constraints)))
    return CCProgram(names, clauses)
