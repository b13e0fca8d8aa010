"""Operator experiments on small universes: explicit tables, antimonotonicity,
the operator-to-program realization, duality, finite-chain continuity sanity
checks, and support-count growth probes over two parametric program families.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .errors import NotAntimonotone, NotDecreasing
from .fixpoint import gl_operator
from .schemes import minimal_support_family
from .syntax import Clause, Program

TABLE_ATOM_MAX = 5


def _subsets(n):
    """Subsets of range(n) in binary counting order (atom 0 is the low bit)."""
    return [frozenset(i for i in range(n) if mask >> i & 1) for mask in range(1 << n)]


@dataclass(frozen=True)
class OperatorTable:
    """A total operator on the powerset of a tiny universe, tabulated."""

    names: tuple[str, ...]
    entries: tuple[frozenset[int], ...]  # indexed by subset mask

    def __post_init__(self):
        n = len(self.names)
        if n > TABLE_ATOM_MAX:
            raise ValueError(f"operator tables are capped at {TABLE_ATOM_MAX} atoms")
        if len(self.entries) != 1 << n:
            raise ValueError("operator table must be total")
        full = frozenset(range(n))
        for e in self.entries:
            if not e <= full:
                raise ValueError("table value outside universe")

    @property
    def n_atoms(self):
        return len(self.names)

    def apply(self, x: frozenset[int]) -> frozenset[int]:
        return self.entries[sum(1 << i for i in x)]

    @classmethod
    def from_function(cls, names, fn):
        n = len(names)
        return cls(tuple(names), tuple(fn(s) for s in _subsets(n)))


def gl_table(prog: Program) -> OperatorTable:
    """Tabulate the GL operator of a program over its (small) universe."""
    return OperatorTable.from_function(prog.names, lambda x: gl_operator(prog, x))


def check_antimonotone(table: OperatorTable):
    """None if antimonotone; otherwise a witness pair (X, Y) with X <= Y."""
    subs = _subsets(table.n_atoms)
    for x in subs:
        fx = table.apply(x)
        for y in subs:
            if x <= y and not table.apply(y) <= fx:
                return (x, y)
    return None


def dual_operator(table: OperatorTable) -> OperatorTable:
    full = frozenset(range(table.n_atoms))
    return OperatorTable.from_function(
        table.names, lambda x: full - table.apply(full - x)
    )


def program_from_operator(table: OperatorTable) -> Program:
    """Realize an antimonotone table as a program: for every subset Q and every
    p in f(At \\ Q), emit the clause p <- not Q.  Clause order follows the
    subset counting order."""
    witness = check_antimonotone(table)
    if witness is not None:
        raise NotAntimonotone(witness)
    full = frozenset(range(table.n_atoms))
    clauses = []
    for q in _subsets(table.n_atoms):
        for p in sorted(table.apply(full - q)):
            clauses.append(Clause(p, frozenset(), q))
    return Program(table.names, clauses)


def verify_operator_realization(table: OperatorTable):
    """(True, None) when GL of the realized program matches the table pointwise,
    else (False, witness subset)."""
    prog = program_from_operator(table)
    for x in _subsets(table.n_atoms):
        if gl_operator(prog, x) != table.apply(x):
            return False, x
    return True, None


def check_lower_half_continuity(prog: Program, chain) -> bool:
    """GL of the chain intersection equals the union of GL along the chain.

    The chain must be monotonically decreasing; on finite universes it is
    eventually constant, so this is a regression sentinel, not evidence about
    infinite chains.
    """
    chain = [frozenset(x) for x in chain]
    if not chain:
        raise NotDecreasing("empty chain")
    for a, b in zip(chain, chain[1:]):
        if not b <= a:
            raise NotDecreasing("chain is not monotonically decreasing")
    meet = frozenset.intersection(*chain)
    union = frozenset()
    for x in chain:
        union |= gl_operator(prog, x)
    return gl_operator(prog, meet) == union


# ---------------------------------------------------------------------------
# program families

def family_program(family: str, n: int) -> Program:
    """Truncations of the two infinite one-atom-head families.

    `e2`:  p <- not p_i            for i = 1..n
    `ex3`: p <- not p_1 .. not p_i for i = 1..n
    Universe is {p, p1..pn} in that order.
    """
    if n < 1:
        raise ValueError("family truncation requires n >= 1")
    names = ["p"] + [f"p{i}" for i in range(1, n + 1)]
    if family == "e2":
        clauses = [Clause(0, frozenset(), frozenset((i,))) for i in range(1, n + 1)]
    elif family == "ex3":
        clauses = [
            Clause(0, frozenset(), frozenset(range(1, i + 1))) for i in range(1, n + 1)
        ]
    else:
        raise ValueError(f"unknown family {family!r} (expected 'e2' or 'ex3')")
    return Program(names, clauses)


FAMILIES = ("e2", "ex3")


def fsp_growth_probe(family: str, n_max: int):
    """Minimal-support counts for the limit atom p at each truncation size.

    Returns (counts, trend) where counts is a list of (n, count) and trend is
    "growing" or "bounded" by comparing the first and last counts.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    counts = []
    for n in range(1, n_max + 1):
        prog = family_program(family, n)
        fam = minimal_support_family(prog)
        counts.append((n, len(fam[0])))
    trend = "growing" if counts[-1][1] > counts[0][1] else "bounded"
    return counts, trend


# ---------------------------------------------------------------------------
# table generation

def _antitone_indicators(n):
    """All antitone 0/1 functions on the subsets of range(n); exhaustive, so n <= 3."""
    subs = _subsets(n)
    out = []
    for bits in range(1 << len(subs)):
        g = {s: bits >> i & 1 for i, s in enumerate(subs)}
        if all(g[y] <= g[x] for x in subs for y in subs if x <= y):
            out.append(g)
    return out


def enumerate_antimonotone_tables(n_atoms: int):
    """Every antimonotone table on n_atoms <= 3 atoms (per-atom membership is
    an independent antitone indicator)."""
    if n_atoms > 3:
        raise ValueError("exhaustive table generation is limited to 3 atoms")
    names = tuple(chr(ord("a") + i) for i in range(n_atoms))
    subs = _subsets(n_atoms)
    indicators = _antitone_indicators(n_atoms)
    for combo in product(indicators, repeat=n_atoms):
        entries = tuple(
            frozenset(p for p in range(n_atoms) if combo[p][s]) for s in subs
        )
        yield OperatorTable(names, entries)


def random_antimonotone_table(n_atoms: int, rng: random.Random, closures: int | None = None) -> OperatorTable:
    """Start from the constant-everything table and push random atoms out of
    random up-sets; the result stays antimonotone by construction (and is
    rejection-checked)."""
    names = tuple(chr(ord("a") + i) for i in range(n_atoms))
    subs = _subsets(n_atoms)
    full = frozenset(range(n_atoms))
    entries = {s: set(full) for s in subs}
    if closures is None:
        closures = rng.randrange(0, 3 * n_atoms + 1)
    for _ in range(closures):
        x = rng.choice(subs)
        p = rng.randrange(n_atoms)
        for s in subs:
            if x <= s:
                entries[s].discard(p)
    table = OperatorTable(names, tuple(frozenset(entries[s]) for s in subs))
    assert check_antimonotone(table) is None
    return table
