"""Propositional formulas, entailment, and an all-models enumerator.

The formula AST covers exactly what the defining-equation machinery needs:
literals, n-ary conjunction/disjunction, biconditional, and the constants.
`all_models` runs a small DPLL-style backtracking enumerator over a clausal
translation of the theory; an exhaustive valuation sweep is kept alongside as
the independent oracle.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import product
from typing import Iterable

from .errors import EnumerationTimeout, TooManyAtoms

ENTAILMENT_ATOM_LIMIT = 20
EXHAUSTIVE_ATOM_LIMIT = 24
DIRECT_DISJUNCT_WIDTH = 4
DIRECT_PRODUCT_LIMIT = 512


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


TOP = Top()
BOT = Bot()


@dataclass(frozen=True)
class Lit(Formula):
    atom: int
    positive: bool = True


@dataclass(frozen=True)
class And(Formula):
    args: tuple[Formula, ...]


@dataclass(frozen=True)
class Or(Formula):
    args: tuple[Formula, ...]


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


def conj(args: Iterable[Formula]) -> Formula:
    args = tuple(args)
    if not args:
        return TOP
    if len(args) == 1:
        return args[0]
    return And(args)


def disj(args: Iterable[Formula]) -> Formula:
    args = tuple(args)
    if not args:
        return BOT
    if len(args) == 1:
        return args[0]
    return Or(args)


def neg_set(atoms: Iterable[int]) -> Formula:
    """Conjunction of negated atoms: the formula saying every atom of the set is false."""
    return conj(Lit(a, False) for a in sorted(atoms))


def atoms_of(f: Formula) -> frozenset[int]:
    if isinstance(f, Lit):
        return frozenset((f.atom,))
    if isinstance(f, (And, Or)):
        out = frozenset()
        for g in f.args:
            out |= atoms_of(g)
        return out
    if isinstance(f, Iff):
        return atoms_of(f.left) | atoms_of(f.right)
    return frozenset()


def evaluate(f: Formula, v: frozenset[int]) -> bool:
    """Classical truth value; `v` lists the true atoms."""
    if isinstance(f, Lit):
        return (f.atom in v) == f.positive
    if isinstance(f, And):
        return all(evaluate(g, v) for g in f.args)
    if isinstance(f, Or):
        return any(evaluate(g, v) for g in f.args)
    if isinstance(f, Iff):
        return evaluate(f.left, v) == evaluate(f.right, v)
    return isinstance(f, Top)


def entails(f: Formula, g: Formula, limit: int = ENTAILMENT_ATOM_LIMIT) -> bool:
    """Exhaustive propositional consequence check over the mentioned atoms."""
    atoms = sorted(atoms_of(f) | atoms_of(g))
    if len(atoms) > limit:
        raise TooManyAtoms(f"{len(atoms)} atoms exceed entailment limit {limit}")
    for bits in product((False, True), repeat=len(atoms)):
        v = frozenset(a for a, b in zip(atoms, bits) if b)
        if evaluate(f, v) and not evaluate(g, v):
            return False
    return True


def equivalent(f: Formula, g: Formula, limit: int = ENTAILMENT_ATOM_LIMIT) -> bool:
    return entails(f, g, limit) and entails(g, f, limit)


@dataclass(frozen=True)
class Theory:
    """Ordered formulas over an ordered universe of named atoms (ids 0..n-1)."""

    formulas: tuple[Formula, ...]
    universe: tuple[str, ...]

    def __post_init__(self):
        n = len(self.universe)
        for f in self.formulas:
            if any(a >= n or a < 0 for a in atoms_of(f)):
                raise ValueError("formula mentions atom outside universe")


def _simplify(f: Formula) -> Formula:
    """Fold constants; keeps literal structure untouched."""
    if isinstance(f, And):
        args = []
        for g in map(_simplify, f.args):
            if isinstance(g, Bot):
                return BOT
            if not isinstance(g, Top):
                args.append(g)
        return conj(args)
    if isinstance(f, Or):
        args = []
        for g in map(_simplify, f.args):
            if isinstance(g, Top):
                return TOP
            if not isinstance(g, Bot):
                args.append(g)
        return disj(args)
    if isinstance(f, Iff):
        l, r = _simplify(f.left), _simplify(f.right)
        if isinstance(l, Top):
            return r
        if isinstance(r, Top):
            return l
        if isinstance(l, Bot):
            return _negate_simple(r)
        if isinstance(r, Bot):
            return _negate_simple(l)
        return Iff(l, r)
    return f


def _negate_simple(f: Formula) -> Formula:
    if isinstance(f, Lit):
        return Lit(f.atom, not f.positive)
    if isinstance(f, Top):
        return BOT
    if isinstance(f, Bot):
        return TOP
    if isinstance(f, And):
        return disj(_negate_simple(g) for g in f.args)
    if isinstance(f, Or):
        return conj(_negate_simple(g) for g in f.args)
    raise ValueError("cannot negate nested biconditional")


@dataclass
class CNF:
    """DIMACS-style clause set: positive var ids are 1-based, negation is sign."""

    num_vars: int
    n_universe: int
    clauses: list[tuple[int, ...]]
    aux_names: dict[int, str]

    def to_dimacs(self, names: tuple[str, ...]) -> str:
        lines = []
        for i, n in enumerate(names, start=1):
            lines.append(f"c var {i} = atom {n}")
        for v in sorted(self.aux_names):
            lines.append(f"c var {v} = aux {self.aux_names[v]}")
        lines.append(f"p cnf {self.num_vars} {len(self.clauses)}")
        for cl in self.clauses:
            lines.append(" ".join(map(str, cl)) + " 0")
        return "\n".join(lines) + "\n"


def _describe(f: Formula) -> str:
    if isinstance(f, Lit):
        return ("" if f.positive else "~") + f"x{f.atom}"
    if isinstance(f, And):
        return "(" + " & ".join(_describe(g) for g in f.args) + ")"
    if isinstance(f, Or):
        return "(" + " | ".join(_describe(g) for g in f.args) + ")"
    if isinstance(f, Iff):
        return "(" + _describe(f.left) + " <-> " + _describe(f.right) + ")"
    return "true" if isinstance(f, Top) else "false"


def _neg_conj_width(f: Formula):
    """If f is a conjunction of negative literals, return its atom set, else None."""
    if isinstance(f, Lit) and not f.positive:
        return frozenset((f.atom,))
    if isinstance(f, And) and all(isinstance(g, Lit) and not g.positive for g in f.args):
        return frozenset(g.atom for g in f.args)
    return None


def translate(theory: Theory) -> CNF:
    """Clausal translation of a theory.

    Defining-equation shapes (atom <-> disjunction of negated-set conjunctions)
    get a direct two-sided encoding without auxiliary atoms when the disjuncts
    are narrow; everything else goes through Tseitin-style auxiliaries, which
    are kept out of reported models.
    """
    n = len(theory.universe)
    cnf = CNF(num_vars=n, n_universe=n, clauses=[], aux_names={})

    def new_aux(desc):
        cnf.num_vars += 1
        cnf.aux_names[cnf.num_vars] = desc
        return cnf.num_vars

    def enc(f: Formula) -> int:
        """Tseitin encoding: returns a literal equivalent to f."""
        if isinstance(f, Lit):
            v = f.atom + 1
            return v if f.positive else -v
        if isinstance(f, (And, Or)):
            lits = [enc(g) for g in f.args]
            a = new_aux(_describe(f))
            if isinstance(f, And):
                for l in lits:
                    cnf.clauses.append((-a, l))
                cnf.clauses.append(tuple([a] + [-l for l in lits]))
            else:
                for l in lits:
                    cnf.clauses.append((-l, a))
                cnf.clauses.append(tuple([-a] + lits))
            return a
        if isinstance(f, Iff):
            x, y = enc(f.left), enc(f.right)
            a = new_aux(_describe(f))
            cnf.clauses.append((-a, -x, y))
            cnf.clauses.append((-a, x, -y))
            cnf.clauses.append((a, x, y))
            cnf.clauses.append((a, -x, -y))
            return a
        raise ValueError("constants must be folded before encoding")

    def assert_true(f: Formula):
        if isinstance(f, Top):
            return
        if isinstance(f, Bot):
            cnf.clauses.append(())
            return
        if isinstance(f, Iff):
            x, y = enc(f.left), enc(f.right)
            cnf.clauses.append((-x, y))
            cnf.clauses.append((x, -y))
            return
        cnf.clauses.append((enc(f),))

    def direct_equation(head: int, rhs: Formula) -> bool:
        """Try the auxiliary-free encoding of head <-> rhs; False if shape/width unsuitable."""
        p = head + 1
        if isinstance(rhs, Top):
            cnf.clauses.append((p,))
            return True
        if isinstance(rhs, Bot):
            cnf.clauses.append((-p,))
            return True
        disjuncts = rhs.args if isinstance(rhs, Or) else (rhs,)
        sets = []
        for d in disjuncts:
            u = _neg_conj_width(d)
            if u is None or len(u) > DIRECT_DISJUNCT_WIDTH:
                return False
            sets.append(sorted(u))
        prod = 1
        for u in sets:
            prod *= len(u)
            if prod > DIRECT_PRODUCT_LIMIT:
                return False
        # rhs -> p: one positive clause per disjunct
        for u in sets:
            cnf.clauses.append(tuple([p] + [a + 1 for a in u]))
        # p -> rhs: distribute the DNF into clauses over transversals
        for pick in product(*sets):
            cnf.clauses.append(tuple([-p] + [-(a + 1) for a in pick]))
        return True

    for f in theory.formulas:
        f = _simplify(f)
        if (
            isinstance(f, Iff)
            and isinstance(f.left, Lit)
            and f.left.positive
            and direct_equation(f.left.atom, f.right)
        ):
            continue
        assert_true(f)
    return cnf


def _enumerate_cnf(cnf: CNF, deadline) -> list[frozenset[int]]:
    """Chronological-backtracking DPLL enumerating every total model.

    Branches on the lowest-id unassigned variable, false first, so the result
    order is deterministic.  Models are projected onto the universe variables.
    """
    n = cnf.num_vars
    clauses = cnf.clauses
    assign = [0] * (n + 1)  # 0 unknown, 1 true, -1 false
    models: list[frozenset[int]] = []

    def propagate(trail):
        while True:
            changed = False
            for cl in clauses:
                unassigned = 0
                lit_u = 0
                sat = False
                for lit in cl:
                    v = assign[abs(lit)]
                    if v == 0:
                        unassigned += 1
                        lit_u = lit
                    elif (v > 0) == (lit > 0):
                        sat = True
                        break
                if sat:
                    continue
                if unassigned == 0:
                    return False
                if unassigned == 1:
                    assign[abs(lit_u)] = 1 if lit_u > 0 else -1
                    trail.append(abs(lit_u))
                    changed = True
            if not changed:
                return True

    def search():
        if deadline is not None and time.monotonic() > deadline:
            raise EnumerationTimeout(models)
        trail = []
        try:
            if not propagate(trail):
                return
            var = next((v for v in range(1, n + 1) if assign[v] == 0), None)
            if var is None:
                models.append(
                    frozenset(v - 1 for v in range(1, cnf.n_universe + 1) if assign[v] == 1)
                )
                return
            for val in (-1, 1):
                assign[var] = val
                search()
                assign[var] = 0
        finally:
            for v in trail:
                assign[v] = 0

    search()
    return models


def all_models(
    theory: Theory,
    method: str = "dpll",
    timeout_ms: int | None = None,
    limit: int = EXHAUSTIVE_ATOM_LIMIT,
) -> list[frozenset[int]]:
    """Complete, duplicate-free model list over the theory's universe.

    Sorted lexicographically by the atom order.  `method="exhaustive"` is the
    brute-force fallback/oracle and enforces the universe-size limit.
    """
    if method == "exhaustive":
        return all_models_exhaustive(theory, limit=limit)
    deadline = None if timeout_ms is None else time.monotonic() + timeout_ms / 1000.0
    cnf = translate(theory)
    models = _enumerate_cnf(cnf, deadline)
    return sorted(set(models), key=lambda m: tuple(sorted(m)))


def all_models_exhaustive(theory: Theory, limit: int = EXHAUSTIVE_ATOM_LIMIT) -> list[frozenset[int]]:
    n = len(theory.universe)
    if n > limit:
        raise TooManyAtoms(f"universe of {n} atoms exceeds exhaustive limit {limit}")
    out = []
    for mask in range(1 << n):
        v = frozenset(i for i in range(n) if mask >> i & 1)
        if all(evaluate(f, v) for f in theory.formulas):
            out.append(v)
    return sorted(out, key=lambda m: tuple(sorted(m)))


def export_dimacs(theory: Theory) -> str:
    return translate(theory).to_dimacs(theory.universe)


def format_formula(f: Formula, names: tuple[str, ...]) -> str:
    """Concrete syntax extended with `<->`, `|`, `&`, `~`, `true`, `false`."""
    def fmt(g, parent):
        if isinstance(g, Lit):
            return ("" if g.positive else "~") + names[g.atom]
        if isinstance(g, Top):
            return "true"
        if isinstance(g, Bot):
            return "false"
        if isinstance(g, And):
            s = " & ".join(fmt(h, "and") for h in g.args)
            return f"({s})" if parent in ("or", "iff") else s
        if isinstance(g, Or):
            s = " | ".join(fmt(h, "or") for h in g.args)
            return f"({s})" if parent == "and" else s
        return fmt(g.left, "iff") + " <-> " + fmt(g.right, "iff")
    return fmt(f, None)
