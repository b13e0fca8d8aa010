"""Cardinality-constraint programs: syntax, the NSS-reduct and its antimonotone
fixpoint operator, constraint-support proof schemes, support formulas, the
entailment preorder on supports, and CC defining equations.

A constraint `l {a; b; c} u` is satisfied by M when l <= |M ∩ {a,b,c}| <= u;
omitted bounds are vacuous.  A bare atom `p` in a body abbreviates `1 {p}` and
`not p` abbreviates `{p} 0`, so normal programs embed directly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable

from .errors import (
    CompoundHead,
    NotCCHorn,
    ParseError,
    SupportExplosion,
    TooManyAtoms,
)
from .formulas import (
    BOT,
    TOP,
    Formula,
    Iff,
    Lit,
    Theory,
    all_models,
    conj,
    disj,
    entails,
    evaluate,
)
from .syntax import Program

SUPPORT_CAP = 100_000
BRUTEFORCE_ATOM_LIMIT = 20

# A support is a set of upper constraints, each a (atom-set, bound) pair.
CCSupport = frozenset


@dataclass(frozen=True)
class CardConstraint:
    """`lower X upper` with either bound optional; vacuous bounds are dropped
    when the clause is transformed."""

    lower: int | None
    atoms: frozenset[int]
    upper: int | None

    def __post_init__(self):
        if not self.atoms:
            raise ValueError("cardinality constraint over an empty atom set")
        if self.lower is not None and self.upper is not None and self.lower > self.upper:
            raise ValueError("lower bound exceeds upper bound")


@dataclass(frozen=True)
class CCRawClause:
    head: int
    constraints: tuple[CardConstraint, ...]


@dataclass(frozen=True)
class CCClause:
    """Transformed shape: lower parts (l, X) and upper parts (X, u), split."""

    head: int
    lowers: tuple[tuple[int, frozenset[int]], ...]
    uppers: tuple[tuple[frozenset[int], int], ...]

    @property
    def is_horn(self):
        return not self.uppers


class CCProgram:
    __slots__ = ("names", "index", "clauses", "_transformed")

    def __init__(self, names: Iterable[str], clauses: Iterable[CCRawClause]):
        self.names = tuple(names)
        self.index = {n: i for i, n in enumerate(self.names)}
        if len(self.index) != len(self.names):
            raise ValueError("duplicate atom names in universe")
        self.clauses = tuple(clauses)
        self._transformed = None

    @property
    def n_atoms(self):
        return len(self.names)

    @property
    def transformed(self) -> tuple[CCClause, ...]:
        if self._transformed is None:
            self._transformed = tuple(cc_transform(c) for c in self.clauses)
        return self._transformed

    def atom(self, name: str) -> int:
        return self.index[name]

    def atom_names(self, atoms) -> list[str]:
        return [self.names[a] for a in sorted(atoms)]

    def interpretation(self, names) -> frozenset[int]:
        return frozenset(self.index[n] for n in names)

    def __repr__(self):
        return f"CCProgram({len(self.names)} atoms, {len(self.clauses)} clauses)"


def cc_satisfies(model: frozenset[int], c: CardConstraint) -> bool:
    k = len(model & c.atoms)
    if c.lower is not None and k < c.lower:
        return False
    if c.upper is not None and k > c.upper:
        return False
    return True


def cc_transform(c: CCRawClause) -> CCClause:
    """Split each constraint into its lower and upper part; vacuous parts vanish."""
    lowers = []
    uppers = []
    for cc in c.constraints:
        if cc.lower is not None and cc.lower > 0:
            lowers.append((cc.lower, cc.atoms))
        if cc.upper is not None and cc.upper < len(cc.atoms):
            uppers.append((cc.atoms, cc.upper))
    return CCClause(c.head, tuple(lowers), tuple(uppers))


# ---------------------------------------------------------------------------
# parsing

_CC_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+) | (?P<comment>%[^\n]*) | (?P<atoms_decl>\#atoms\b)
      | (?P<arrow>:-) | (?P<dot>\.) | (?P<comma>,) | (?P<semi>;)
      | (?P<lbrace>\{) | (?P<rbrace>\})
      | (?P<name>[A-Za-z_][A-Za-z0-9_]*|\d+)
    """,
    re.VERBOSE,
)


def _cc_tokenize(text):
    line, col = 1, 1
    pos = 0
    out = []
    while pos < len(text):
        m = _CC_TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind not in ("ws", "comment"):
            if kind == "name" and value == "not":
                kind = "not"
            out.append((kind, value, line, col))
        nl = value.count("\n")
        if nl:
            line += nl
            col = len(value) - value.rfind("\n")
        else:
            col += len(value)
        pos = m.end()
    out.append(("eof", "", line, col))
    return out


def cc_parse(text: str) -> CCProgram:
    """Parse CC program text; `p :- 1 {a; b} 2, {c} 0.` style bodies."""
    toks = _cc_tokenize(text)
    i = 0
    names: list[str] = []
    index: dict[str, int] = {}

    def intern(name):
        if name not in index:
            index[name] = len(names)
            names.append(name)
        return index[name]

    def peek():
        return toks[i]

    def take(kind):
        nonlocal i
        k, v, line, col = toks[i]
        if k != kind:
            raise ParseError(f"expected {kind}, found {v or 'end of input'!r}", line, col)
        i += 1
        return v

    def parse_constraint():
        nonlocal i
        k, v, line, col = peek()
        if k == "not":
            take("not")
            a = intern(take("name"))
            return CardConstraint(None, frozenset((a,)), 0)
        lower = None
        if k == "name" and v.isdigit() and toks[i + 1][0] == "lbrace":
            lower = int(take("name"))
            k, v, line, col = peek()
        if k == "lbrace" or peek()[0] == "lbrace":
            take("lbrace")
            atoms = {intern(take("name"))}
            while peek()[0] == "semi":
                take("semi")
                atoms.add(intern(take("name")))
            take("rbrace")
            upper = None
            k2, v2, _, _ = peek()
            if k2 == "name" and v2.isdigit():
                upper = int(take("name"))
            try:
                return CardConstraint(lower, frozenset(atoms), upper)
            except ValueError as e:
                raise ParseError(str(e), line, col) from None
        # bare atom literal: sugar for 1 {a}
        a = intern(take("name"))
        return CardConstraint(1, frozenset((a,)), None)

    clauses = []
    while peek()[0] != "eof":
        if peek()[0] == "atoms_decl":
            take("atoms_decl")
            intern(take("name"))
            while peek()[0] == "comma":
                take("comma")
                intern(take("name"))
            take("dot")
            continue
        k, v, line, col = peek()
        if k == "lbrace" or (k == "name" and v.isdigit() and toks[i + 1][0] == "lbrace"):
            raise CompoundHead(f"clause head must be a single atom (line {line}, column {col})")
        head = intern(take("name"))
        constraints = []
        if peek()[0] == "arrow":
            take("arrow")
            constraints.append(parse_constraint())
            while peek()[0] == "comma":
                take("comma")
                constraints.append(parse_constraint())
        take("dot")
        try:
            clauses.append(CCRawClause(head, tuple(constraints)))
        except ValueError as e:
            raise ParseError(str(e), line, col) from None
    return CCProgram(names, clauses)


def pretty_cc_clause(prog: CCProgram, c: CCRawClause) -> str:
    parts = []
    for cc in c.constraints:
        atoms = "; ".join(prog.names[a] for a in sorted(cc.atoms))
        lo = f"{cc.lower} " if cc.lower is not None else ""
        up = f" {cc.upper}" if cc.upper is not None else ""
        parts.append(f"{lo}{{{atoms}}}{up}")
    if parts:
        return f"{prog.names[c.head]} :- {', '.join(parts)}."
    return f"{prog.names[c.head]}."


def pretty_cc_program(prog: CCProgram) -> str:
    lines = []
    if prog.names:
        lines.append(f"#atoms {', '.join(prog.names)}.")
    lines.extend(pretty_cc_clause(prog, c) for c in prog.clauses)
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# fixpoint semantics

def cc_tp_step(prog: CCProgram, model: frozenset[int]) -> frozenset[int]:
    """One-step provability for CC-Horn programs: heads whose lower bounds hold."""
    out = set()
    for c in prog.transformed:
        if c.uppers:
            raise NotCCHorn(f"clause with upper constraints: head {prog.names[c.head]}")
        if all(len(x & model) >= l for l, x in c.lowers):
            out.add(c.head)
    return frozenset(out)


def cc_least_model(prog: CCProgram) -> frozenset[int]:
    current = frozenset()
    for _ in range(prog.n_atoms + 1):
        nxt = cc_tp_step(prog, current)
        if nxt == current:
            return current
        current = nxt
    raise AssertionError("CC-Horn iteration failed to converge on a finite lattice")


def nss_reduct(prog: CCProgram, model: frozenset[int]) -> CCProgram:
    """Drop clauses with a violated upper part, erase upper parts from the rest."""
    kept = []
    for c in prog.transformed:
        if any(len(x & model) > u for x, u in c.uppers):
            continue
        kept.append(
            CCRawClause(c.head, tuple(CardConstraint(l, x, None) for l, x in c.lowers))
        )
    return CCProgram(prog.names, kept)


def ccgl(prog: CCProgram, model: frozenset[int]) -> frozenset[int]:
    return cc_least_model(nss_reduct(prog, model))


def is_cc_stable_model(prog: CCProgram, model: frozenset[int]) -> bool:
    return ccgl(prog, model) == model


def cc_stable_models_bruteforce(
    prog: CCProgram, limit: int = BRUTEFORCE_ATOM_LIMIT
) -> list[frozenset[int]]:
    n = prog.n_atoms
    if n > limit:
        raise TooManyAtoms(f"universe of {n} atoms exceeds brute-force limit {limit}")
    out = []
    for mask in range(1 << n):
        m = frozenset(i for i in range(n) if mask >> i & 1)
        if is_cc_stable_model(prog, m):
            out.append(m)
    return sorted(out, key=lambda m: tuple(sorted(m)))


# ---------------------------------------------------------------------------
# supports

def _constraint_sort_key(c):
    x, u = c
    return (tuple(sorted(x)), u)


def cc_support_formula(support: CCSupport) -> Formula:
    """The formula a model must satisfy to admit a scheme with this support:
    per upper constraint (X, u), some |X| - u atoms of X are all false."""
    conjuncts = []
    for x, u in sorted(support, key=_constraint_sort_key):
        k = len(x) - u
        if k <= 0:
            continue  # vacuous constraint
        conjuncts.append(
            disj(conj(Lit(a, False) for a in w) for w in combinations(sorted(x), k))
        )
    return conj(conjuncts)


@lru_cache(maxsize=65536)
def _preceq_cached(u1: CCSupport, u2: CCSupport, limit: int) -> bool:
    return entails(cc_support_formula(u2), cc_support_formula(u1), limit)


def cc_support_preceq(u1: CCSupport, u2: CCSupport, limit: int = 20) -> bool:
    """u1 precedes u2 when admitting u2 entails admitting u1."""
    return _preceq_cached(frozenset(u1), frozenset(u2), limit)


def _support_canon_key(u: CCSupport):
    return (len(u), tuple(sorted(((tuple(sorted(x)), b) for x, b in u))))


def _insert_minimal(chain: list[CCSupport], cand: CCSupport, limit: int) -> bool:
    """Keep one canonical representative per mutual-entailment class, dropping
    anything a kept support precedes."""
    for s in chain:
        if cc_support_preceq(s, cand, limit):
            if cc_support_preceq(cand, s, limit) and _support_canon_key(cand) < _support_canon_key(s):
                chain[chain.index(s)] = cand
                return True
            return False
    chain[:] = [s for s in chain if not cc_support_preceq(cand, s, limit)]
    chain.append(cand)
    return True


def cc_support_family(
    prog: CCProgram,
    minimal: bool = True,
    cap: int = SUPPORT_CAP,
    entail_limit: int = 20,
) -> dict[int, list[CCSupport]]:
    """Supports of CC proof schemes per atom, by saturation.

    Clauses whose lower parts are all vacuous are base cases; an inductive step
    needs, for each lower part (l, X), a choice of l already-derivable atoms of
    X, and unions their supports with the clause's upper parts.  In minimal
    mode the per-atom lists are pruned to one representative per
    entailment-equivalence class.
    """
    fam: dict[int, list[CCSupport]] = {a: [] for a in range(prog.n_atoms)}

    def insert(atom, cand):
        if minimal:
            return _insert_minimal(fam[atom], cand, entail_limit)
        if cand in fam[atom]:
            return False
        fam[atom].append(cand)
        return True

    changed = True
    while changed:
        changed = False
        for c in prog.transformed:
            base = frozenset(c.uppers)
            option_sets = []
            feasible = True
            for l, x in c.lowers:
                derivable = [a for a in sorted(x) if fam[a]]
                if len(derivable) < l:
                    feasible = False
                    break
                options = set()
                for chosen in combinations(derivable, l):
                    for pick in product(*[list(fam[a]) for a in chosen]):
                        options.add(frozenset().union(*pick) if pick else frozenset())
                option_sets.append(sorted(options, key=_support_canon_key))
            if not feasible:
                continue
            for assignment in product(*option_sets):
                cand = base.union(*assignment) if assignment else base
                if insert(c.head, cand):
                    changed = True
                    if len(fam[c.head]) > cap:
                        raise SupportExplosion(
                            f"atom {prog.names[c.head]} exceeded {cap} supports"
                        )
    return fam


def cc_minimal_supports(prog: CCProgram, target: int, cap: int = SUPPORT_CAP) -> list[CCSupport]:
    return sorted(cc_support_family(prog, minimal=True, cap=cap)[target], key=_support_canon_key)


def cc_gl_via_schemes(
    prog: CCProgram,
    model: frozenset[int],
    family: dict[int, list[CCSupport]] | None = None,
) -> frozenset[int]:
    """Atoms with an admitted CC scheme, read off the minimal support formulas."""
    if family is None:
        family = cc_support_family(prog, minimal=True)
    return frozenset(
        a
        for a, sups in family.items()
        if any(evaluate(cc_support_formula(u), model) for u in sups)
    )


def cc_theory(prog: CCProgram, reduced: bool = True) -> Theory:
    """One equation per atom: the atom holds iff some support formula does."""
    fam = cc_support_family(prog, minimal=reduced)
    formulas = []
    for a in range(prog.n_atoms):
        sups = sorted(fam[a], key=_support_canon_key)
        if not sups:
            rhs: Formula = BOT
        else:
            parts = [cc_support_formula(u) for u in sups]
            if any(isinstance(p, type(TOP)) for p in parts):
                rhs = TOP
            else:
                rhs = disj(parts)
        formulas.append(Iff(Lit(a), rhs))
    return Theory(tuple(formulas), prog.names)


def cc_stable_models_via_equations(
    prog: CCProgram, reduced: bool = True, method: str = "dpll"
) -> list[frozenset[int]]:
    return all_models(cc_theory(prog, reduced), method=method)


def cc_from_normal(prog: Program) -> CCProgram:
    """Embed a normal program: p becomes 1{p}, not r becomes {r}0."""
    clauses = []
    for c in prog.clauses:
        constraints = [CardConstraint(1, frozenset((q,)), None) for q in sorted(c.pos)]
        constraints += [CardConstraint(None, frozenset((r,)), 0) for r in sorted(c.neg)]
        clauses.append(CCRawClause(c.head, tuple(constraints)))
    return CCProgram(prog.names, clauses)
