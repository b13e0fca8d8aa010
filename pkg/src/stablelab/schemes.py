"""Proof schemes: conditional derivations, their supports, and the
proof-theoretic presentation of the Gelfond-Lifschitz operator.

A scheme is a sequence of (clause, derived atom) steps whose positive bodies
are covered by earlier steps; its support is the union of the negative bodies
used.  Enumeration and saturation are restricted to irredundant schemes (no
atom derived twice), which still realize every padded support reachable
without repetition.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import SupportExplosion
from .ordering import support_key
from .syntax import Program

SUPPORT_CAP = 100_000
STATE_CAP = 1_000_000
COMBO_CAP = 200_000


@dataclass(frozen=True)
class ProofScheme:
    """Steps are (clause index, derived atom) pairs against a fixed program."""

    steps: tuple[tuple[int, int], ...]
    support: frozenset[int]

    @property
    def conclusion(self) -> int:
        return self.steps[-1][1]

    @property
    def length(self) -> int:
        return len(self.steps)


def validate_scheme(prog: Program, scheme: ProofScheme) -> bool:
    """Check the inductive scheme conditions and the support bookkeeping."""
    if not scheme.steps:
        return False
    derived: set[int] = set()
    support: set[int] = set()
    for ci, atom in scheme.steps:
        if not 0 <= ci < len(prog.clauses):
            return False
        c = prog.clauses[ci]
        if c.head != atom:
            return False
        if not c.pos <= derived:
            return False
        derived.add(atom)
        support |= c.neg
    return frozenset(support) == scheme.support


def admits(model: frozenset[int], scheme: ProofScheme) -> bool:
    """A model admits a scheme when it misses the support entirely."""
    return model.isdisjoint(scheme.support)


def enumerate_schemes(prog: Program, target: int, max_steps: int) -> list[ProofScheme]:
    """All irredundant schemes concluding `target` with at most `max_steps` steps.

    Ordered by length, then by the clause-index sequence.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    out = []
    steps: list[tuple[int, int]] = []
    derived: set[int] = set()

    def walk(support: frozenset[int]):
        for ci, c in enumerate(prog.clauses):
            if c.head in derived or not c.pos <= derived:
                continue
            steps.append((ci, c.head))
            derived.add(c.head)
            sup = support | c.neg
            if c.head == target:
                out.append(ProofScheme(tuple(steps), sup))
            if len(steps) < max_steps:
                walk(sup)
            derived.discard(c.head)
            steps.pop()

    walk(frozenset())
    out.sort(key=lambda s: (s.length, tuple(ci for ci, _ in s.steps)))
    return out


def _reachable_supports(prog: Program, cap: int) -> dict[int, set[frozenset[int]]]:
    """Supports of every irredundant scheme, per conclusion atom.

    Explores (derived-atom-set, support) states; the support of a scheme
    concluding p is recorded at the step that derives p.
    """
    out: dict[int, set[frozenset[int]]] = {a: set() for a in range(prog.n_atoms)}
    start = (frozenset(), frozenset())
    seen = {start}
    frontier = [start]
    while frontier:
        derived, support = frontier.pop()
        for c in prog.clauses:
            if c.head in derived or not c.pos <= derived:
                continue
            sup = support | c.neg
            bucket = out[c.head]
            bucket.add(sup)
            if len(bucket) > cap:
                raise SupportExplosion(
                    f"atom {prog.names[c.head]} exceeded {cap} supports"
                )
            state = (derived | {c.head}, sup)
            if state not in seen:
                seen.add(state)
                if len(seen) > STATE_CAP:
                    raise SupportExplosion("scheme state space exceeded the cap")
                frontier.append(state)
    return out


def all_supports(prog: Program, target: int, cap: int = SUPPORT_CAP) -> list[frozenset[int]]:
    """Every support of a scheme concluding `target`, sorted by the support order."""
    return sorted(_reachable_supports(prog, cap)[target], key=support_key)


def _insert_antichain(chain: list[frozenset[int]], cand: frozenset[int]) -> bool:
    """Keep `chain` an inclusion antichain of minimal sets; True if it changed."""
    for s in chain:
        if s <= cand:
            return False
    chain[:] = [s for s in chain if not cand < s]
    chain.append(cand)
    return True


def minimal_support_family(
    prog: Program, cap: int = SUPPORT_CAP
) -> dict[int, list[frozenset[int]]]:
    """Inclusion-minimal supports for every atom, via saturation with
    subsumption pruning.  Padding-free derivations suffice: padding only ever
    enlarges a support."""
    fam: dict[int, list[frozenset[int]]] = {a: [] for a in range(prog.n_atoms)}
    changed = True
    while changed:
        changed = False
        for c in prog.clauses:
            pos = sorted(c.pos)
            if any(not fam[q] for q in pos):
                continue
            combos = 1
            for q in pos:
                combos *= len(fam[q])
            if combos > COMBO_CAP:
                raise SupportExplosion(
                    f"clause for {prog.names[c.head]} yields {combos} support combinations"
                )
            for pick in product(*[list(fam[q]) for q in pos]):
                cand = c.neg.union(*pick) if pick else c.neg
                if _insert_antichain(fam[c.head], cand):
                    changed = True
                    if len(fam[c.head]) > cap:
                        raise SupportExplosion(
                            f"atom {prog.names[c.head]} exceeded {cap} supports"
                        )
    return fam


def minimal_supports(prog: Program, target: int, cap: int = SUPPORT_CAP) -> list[frozenset[int]]:
    """Inclusion-minimal supports of schemes concluding `target`, as a sorted antichain."""
    return sorted(minimal_support_family(prog, cap)[target], key=support_key)


def gl_via_schemes(
    prog: Program,
    model: frozenset[int],
    family: dict[int, list[frozenset[int]]] | None = None,
) -> frozenset[int]:
    """Atoms with an admitted scheme; minimal supports suffice since any
    admitted support contains an admitted minimal one."""
    if family is None:
        family = minimal_support_family(prog)
    return frozenset(
        a for a, sups in family.items() if any(model.isdisjoint(u) for u in sups)
    )
