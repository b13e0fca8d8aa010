"""Normal propositional programs: interned atoms, clauses, parser, dependency analysis.

Concrete syntax:

    clause := atom [ ":-" lit { "," lit } ] "."
    lit    := atom | "not" atom

`#atoms a, b.` declares extra universe atoms, `%` starts a comment.  Atom
names match ``[a-zA-Z_][a-zA-Z0-9_]*`` or are positive integers.  Atoms are
interned in first-occurrence order; that order is the total atom order used
by everything downstream.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .errors import ParseError


@dataclass(frozen=True)
class Atom:
    id: int
    name: str


@dataclass(frozen=True)
class Clause:
    head: int
    pos: frozenset[int]
    neg: frozenset[int]

    @property
    def is_horn(self):
        return not self.neg


class Program:
    """Immutable normal program over a dense, ordered atom universe.

    Clause order is preserved from the input; duplicate clauses are kept.
    Interpretations are plain ``frozenset[int]`` of atom ids.
    """

    __slots__ = ("names", "index", "clauses")

    def __init__(self, names: Iterable[str], clauses: Iterable[Clause]):
        self.names = tuple(names)
        self.index = {n: i for i, n in enumerate(self.names)}
        if len(self.index) != len(self.names):
            raise ValueError("duplicate atom names in universe")
        self.clauses = tuple(clauses)
        n = len(self.names)
        for c in self.clauses:
            for a in {c.head} | c.pos | c.neg:
                if not 0 <= a < n:
                    raise ValueError(f"clause atom id {a} outside universe")

    @property
    def universe(self) -> tuple[Atom, ...]:
        return tuple(Atom(i, n) for i, n in enumerate(self.names))

    @property
    def n_atoms(self):
        return len(self.names)

    def atom(self, name: str) -> int:
        return self.index[name]

    def atom_names(self, atoms: Iterable[int]) -> list[str]:
        return [self.names[a] for a in sorted(atoms)]

    def interpretation(self, names: Iterable[str]) -> frozenset[int]:
        return frozenset(self.index[n] for n in names)

    def __repr__(self):
        return f"Program({len(self.names)} atoms, {len(self.clauses)} clauses)"


_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<comment>%[^\n]*)
      | (?P<atoms_decl>\#atoms\b)
      | (?P<arrow>:-)
      | (?P<dot>\.)
      | (?P<comma>,)
      | (?P<name>[A-Za-z_][A-Za-z0-9_]*|\d+)
    """,
    re.VERBOSE,
)


def _tokenize(text):
    """Yield (kind, value, line, col) tuples; raises on any unknown character."""
    line, col = 1, 1
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
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


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind):
        k, v, line, col = self.toks[self.i]
        if k != kind:
            raise ParseError(f"expected {kind}, found {v or 'end of input'!r}", line, col)
        self.i += 1
        return v


def parse_program(text: str) -> Program:
    """Parse program text; atoms interned in first-occurrence order."""
    p = _Parser(text)
    names: list[str] = []
    index: dict[str, int] = {}

    def intern(name):
        if name not in index:
            index[name] = len(names)
            names.append(name)
        return index[name]

    clauses = []
    while p.peek()[0] != "eof":
        kind = p.peek()[0]
        if kind == "atoms_decl":
            p.take("atoms_decl")
            intern(p.take("name"))
            while p.peek()[0] == "comma":
                p.take("comma")
                intern(p.take("name"))
            p.take("dot")
            continue
        head = intern(p.take("name"))
        pos, neg = set(), set()
        if p.peek()[0] == "arrow":
            p.take("arrow")
            while True:
                if p.peek()[0] == "not":
                    p.take("not")
                    neg.add(intern(p.take("name")))
                else:
                    pos.add(intern(p.take("name")))
                if p.peek()[0] != "comma":
                    break
                p.take("comma")
        p.take("dot")
        clauses.append(Clause(head, frozenset(pos), frozenset(neg)))
    return Program(names, clauses)


def pretty_clause(prog: Program, c: Clause) -> str:
    body = [prog.names[a] for a in sorted(c.pos)]
    body += [f"not {prog.names[a]}" for a in sorted(c.neg)]
    if body:
        return f"{prog.names[c.head]} :- {', '.join(body)}."
    return f"{prog.names[c.head]}."


def pretty_program(prog: Program) -> str:
    """Emit text that reparses to an identical program.

    The full universe is redeclared up front so atom order survives even for
    atoms that occur in no clause.
    """
    lines = []
    if prog.names:
        lines.append(f"#atoms {', '.join(prog.names)}.")
    lines.extend(pretty_clause(prog, c) for c in prog.clauses)
    return "\n".join(lines) + ("\n" if lines else "")


def horn_part(prog: Program) -> Program:
    """Subprogram of clauses with empty negative body, same universe."""
    return Program(prog.names, (c for c in prog.clauses if not c.neg))


def is_purely_negative(prog: Program) -> bool:
    return all(not c.pos for c in prog.clauses)


def _sccs(n, edges):
    """Iterative Tarjan over nodes 0..n-1; returns node -> component id."""
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
    idx = [-1] * n
    low = [0] * n
    comp = [-1] * n
    on_stack = [False] * n
    stack = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if idx[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                idx[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            for j in range(pi, len(adj[v])):
                w = adj[v][j]
                if idx[w] == -1:
                    work[-1] = (v, j + 1)
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], idx[w])
            if recurse:
                continue
            work.pop()
            if low[v] == idx[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
    return comp


def is_stratified(prog: Program) -> bool:
    """True iff no strongly connected dependency component contains a negative edge.

    Edges run body atom -> head; an edge is negative when the body atom is
    negated in the clause.
    """
    edges = []
    neg_edges = []
    for c in prog.clauses:
        for q in c.pos:
            edges.append((q, c.head))
        for r in c.neg:
            edges.append((r, c.head))
            neg_edges.append((r, c.head))
    comp = _sccs(prog.n_atoms, edges)
    return all(comp[u] != comp[v] for u, v in neg_edges)
