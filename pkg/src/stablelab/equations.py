"""Defining equations and the stable-models-as-propositional-models pipeline.

Each atom gets a biconditional whose right-hand side disjoins the negated
supports of its proof schemes; the reduced variant keeps only the
inclusion-minimal supports.  Models of the resulting theory are exactly the
stable models, which the brute-force oracle cross-checks in the tests.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from . import schemes
from .errors import NotPurelyNegative, TooManyAtoms
from .formulas import BOT, TOP, Formula, Iff, Lit, Theory, all_models, disj, neg_set
from .ordering import support_key, support_precedes  # noqa: F401  (re-export)
from .syntax import Program, is_purely_negative

NONREDUCED_WARN_THRESHOLD = 1000


@dataclass(frozen=True)
class DefiningEquation:
    atom: int
    rhs: Formula
    reduced: bool

    @property
    def formula(self) -> Formula:
        return Iff(Lit(self.atom), self.rhs)


def _rhs_from_supports(supports) -> Formula:
    supports = list(supports)
    if not supports:
        return BOT
    if any(not u for u in supports):
        # an empty support is the minimal one and its negation is vacuous
        return TOP
    return disj(neg_set(u) for u in sorted(supports, key=support_key))


def defining_equation(prog: Program, atom: int, reduced: bool = True) -> DefiningEquation:
    if reduced:
        supports = schemes.minimal_supports(prog, atom)
    else:
        supports = schemes.all_supports(prog, atom)
    return DefiningEquation(atom, _rhs_from_supports(supports), reduced)


def theory(prog: Program, reduced: bool = True) -> Theory:
    """One equation per universe atom, in atom order."""
    if reduced:
        fam = schemes.minimal_support_family(prog)
    else:
        fam = {a: schemes.all_supports(prog, a) for a in range(prog.n_atoms)}
        for a, sups in fam.items():
            if len(sups) > NONREDUCED_WARN_THRESHOLD:
                warnings.warn(
                    f"atom {prog.names[a]} has {len(sups)} supports; "
                    "consider the reduced theory",
                    stacklevel=2,
                )
    formulas = tuple(
        Iff(Lit(a), _rhs_from_supports(fam[a])) for a in range(prog.n_atoms)
    )
    return Theory(formulas, prog.names)


def stable_models_via_equations(
    prog: Program, reduced: bool = True, method: str = "dpll"
) -> list[frozenset[int]]:
    return all_models(theory(prog, reduced), method=method)


def stable_models_via_schemes(prog: Program, limit: int = 20) -> list[frozenset[int]]:
    """Fixpoints of the scheme-based GL over every subset of the universe."""
    n = prog.n_atoms
    if n > limit:
        raise TooManyAtoms(f"universe of {n} atoms exceeds sweep limit {limit}")
    fam = schemes.minimal_support_family(prog)
    out = []
    for mask in range(1 << n):
        m = frozenset(i for i in range(n) if mask >> i & 1)
        if schemes.gl_via_schemes(prog, m, fam) == m:
            out.append(m)
    return sorted(out, key=lambda m: tuple(sorted(m)))


def clark_completion_purely_negative(prog: Program) -> Theory:
    """Completion p <-> disjunction of negated bodies; only for purely negative programs."""
    if not is_purely_negative(prog):
        raise NotPurelyNegative("Clark completion is only taken for purely negative programs")
    bodies: dict[int, set[frozenset[int]]] = {a: set() for a in range(prog.n_atoms)}
    for c in prog.clauses:
        bodies[c.head].add(c.neg)
    formulas = tuple(
        Iff(Lit(a), _rhs_from_supports(bodies[a])) for a in range(prog.n_atoms)
    )
    return Theory(formulas, prog.names)


def fsp_report(prog: Program) -> dict[str, int]:
    """Count of inclusion-minimal supports per atom; always finite on finite programs."""
    fam = schemes.minimal_support_family(prog)
    return {prog.names[a]: len(fam[a]) for a in range(prog.n_atoms)}
