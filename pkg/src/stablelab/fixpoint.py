"""Operator semantics: one-step provability, least models, the reduct and the
Gelfond-Lifschitz operator, stable-model checking, and the brute-force oracle."""

from __future__ import annotations

from .errors import NotHorn, TooManyAtoms
from .syntax import Clause, Program

BRUTEFORCE_ATOM_LIMIT = 20


def tp_step(prog: Program, interp: frozenset[int]) -> frozenset[int]:
    """One step of Horn deduction: heads of clauses whose positive body holds."""
    out = set()
    for c in prog.clauses:
        if c.neg:
            raise NotHorn(f"clause with negative body: head {prog.names[c.head]}")
        if c.pos <= interp:
            out.add(c.head)
    return frozenset(out)


def least_model(prog: Program) -> frozenset[int]:
    """Least fixpoint of `tp_step` from the empty set; converges within |universe| steps."""
    for c in prog.clauses:
        if c.neg:
            raise NotHorn(f"clause with negative body: head {prog.names[c.head]}")
    current = frozenset()
    for _ in range(prog.n_atoms + 1):
        nxt = _horn_step(prog, current)
        if nxt == current:
            return current
        current = nxt
    raise AssertionError("Horn iteration failed to converge on a finite lattice")


def _horn_step(prog, interp):
    return frozenset(c.head for c in prog.clauses if c.pos <= interp)


def tpm_step(prog: Program, model: frozenset[int], interp: frozenset[int]) -> frozenset[int]:
    """Heads derivable in one step when negative bodies are checked against `model`."""
    return frozenset(
        c.head for c in prog.clauses if c.pos <= interp and not (c.neg & model)
    )


def gl_reduct(prog: Program, model: frozenset[int]) -> Program:
    """Drop clauses blocked by `model`, then erase negative literals; clause order kept."""
    kept = [
        Clause(c.head, c.pos, frozenset())
        for c in prog.clauses
        if not (c.neg & model)
    ]
    return Program(prog.names, kept)


def gl_operator(prog: Program, model: frozenset[int]) -> frozenset[int]:
    """Least model of the reduct; cross-checked against the lfp of `tpm_step`."""
    via_reduct = least_model(gl_reduct(prog, model))
    current = frozenset()
    for _ in range(prog.n_atoms + 1):
        nxt = tpm_step(prog, model, current)
        if nxt == current:
            break
        current = nxt
    assert current == via_reduct, "the two GL definitions disagree"
    return via_reduct


def is_stable_model(prog: Program, model: frozenset[int]) -> bool:
    return gl_operator(prog, model) == model


def stable_models_bruteforce(
    prog: Program, limit: int = BRUTEFORCE_ATOM_LIMIT
) -> list[frozenset[int]]:
    """All stable models by sweeping every subset of the universe."""
    n = prog.n_atoms
    if n > limit:
        raise TooManyAtoms(f"universe of {n} atoms exceeds brute-force limit {limit}")
    out = []
    for mask in range(1 << n):
        m = frozenset(i for i in range(n) if mask >> i & 1)
        if is_stable_model(prog, m):
            out.append(m)
    return sorted(out, key=lambda m: tuple(sorted(m)))
