"""The total order on finite atom sets used to arrange supports deterministically.

For distinct sets U, V over the universe atom order: U comes first if its
maximum atom is smaller; ties go to the smaller set, then to the
lexicographically smaller sorted tuple.
"""

from __future__ import annotations

from .errors import EqualSets


def support_key(u: frozenset[int]):
    if not u:
        return (-1, 0, ())
    return (max(u), len(u), tuple(sorted(u)))


def support_precedes(u: frozenset[int], v: frozenset[int]) -> bool:
    if u == v:
        raise EqualSets("support order is only defined on distinct sets")
    return support_key(u) < support_key(v)
