"""Exact word lengths and widths over finite groups, plus the quotient-lift
inequality that pushes finite width down to quotients."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .groups import FiniteGroup, GroupError, GroupHomomorphism, Subgroup, quotient


class NotGenerating(GroupError):
    def __init__(self, group: FiniteGroup, witness: int):
        self.witness = witness
        super().__init__(
            f"generating set does not generate {group.name!r}: "
            f"element {group.name_of(witness)!r} is unreachable"
        )


@dataclass(frozen=True)
class LengthTable:
    """Breadth-first word lengths over S union S^-1; None marks unreachable."""

    group: FiniteGroup
    gens: frozenset[int]
    lengths: tuple[int | None, ...]

    def reachable(self) -> bool:
        return all(x is not None for x in self.lengths)

    def max_length(self) -> int:
        return max(x for x in self.lengths if x is not None)


def bfs_lengths(G: FiniteGroup, S: Iterable[int]) -> LengthTable:
    """Geodesic lengths in the Cayley graph of G over S union S^-1."""
    gens = frozenset(S)
    steps = sorted(gens | {G.inverse[s] for s in gens})
    lengths: list[int | None] = [None] * G.order
    lengths[G.identity] = 0
    queue = deque([G.identity])
    while queue:
        g = queue.popleft()
        d = lengths[g]
        for s in steps:
            h = G.mul(g, s)
            if lengths[h] is None:
                lengths[h] = d + 1
                queue.append(h)
    return LengthTable(G, gens, tuple(lengths))


def width(G: FiniteGroup, S: Iterable[int]) -> int:
    """Supremum of word lengths over G; raises NotGenerating with a witness."""
    table = bfs_lengths(G, S)
    for g, d in enumerate(table.lengths):
        if d is None:
            raise NotGenerating(G, g)
    return table.max_length()


def lift_generating_set(proj: GroupHomomorphism, S: Iterable[int]) -> frozenset[int]:
    """Union of the full preimages of the members of S under a surjection.

    Lifting preserves conjugation invariance, and the lifted set generates
    the source whenever S generates the quotient.
    """
    if not proj.is_surjective():
        raise ValueError("projection must be surjective to lift a generating set")
    wanted = set(S)
    return frozenset(g for g in proj.source.elements() if proj.mapping[g] in wanted)


def quotient_inequality_witness(
    G: FiniteGroup, N: Subgroup, S: Iterable[int]
) -> int | None:
    """First element whose image under the projection is longer than itself,
    or None when the lift inequality holds everywhere.

    With S a generating set of G/N and S' its lift, any length-r spelling of
    g over S' projects to a length-r spelling of gN over S, so
    l_S(gN) <= l_S'(g) for all g. Verified exhaustively.
    """
    S = frozenset(S)
    Q, proj = quotient(G, N)
    quotient_table = bfs_lengths(Q, S)
    for q, d in enumerate(quotient_table.lengths):
        if d is None:
            raise NotGenerating(Q, q)
    lifted = lift_generating_set(proj, S)
    source_table = bfs_lengths(G, lifted)
    for g in G.elements():
        up = source_table.lengths[g]
        down = quotient_table.lengths[proj.mapping[g]]
        if up is not None and down > up:
            return g
    return None


def check_quotient_inequality(G: FiniteGroup, N: Subgroup, S: Iterable[int]) -> bool:
    return quotient_inequality_witness(G, N, S) is None
