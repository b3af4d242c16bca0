"""Words and normal forms in a free product of two finite groups with an
amalgamated subgroup.

A word is a sequence of syllables (factor, element-index) with factor 1 or 2.
Reduced words alternate factors and, when longer than one syllable, avoid the
amalgamated subgroup H entirely; the empty word is the identity. Elements of
H are stored canonically as members of the first factor's copy and carried
across factors through the identifying isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from random import Random
from typing import Iterable, Sequence

from .groups import FiniteGroup, GroupError, Subgroup, SubgroupIsomorphism


@dataclass(frozen=True)
class Syllable:
    factor: int
    element: int

    def __post_init__(self):
        if self.factor not in (1, 2):
            raise ValueError(f"syllable factor must be 1 or 2, got {self.factor}")


@dataclass(frozen=True)
class ReducedWord:
    """An alternating syllable sequence; emptiness denotes the identity."""

    syllables: tuple[Syllable, ...] = ()

    def __post_init__(self):
        for a, b in zip(self.syllables, self.syllables[1:]):
            if a.factor == b.factor:
                raise ValueError("successive syllables of a reduced word must alternate factors")

    def __len__(self) -> int:
        return len(self.syllables)


@dataclass(frozen=True)
class NormalForm:
    """Canonical form h * t1 * ... * tn with coset-representative tail.

    `head` is an element of H stored in the first factor's copy; each tail
    entry is the designated representative of its right coset, never the
    identity, with factors alternating.
    """

    head: int
    tail: tuple[Syllable, ...]


@dataclass(eq=False)
class AmalgamSpec:
    """Two finite factors with identified subgroups and fixed transversals.

    Right-coset representatives are the least element index in each coset,
    except the subgroup's own coset, which the identity represents. Instances
    are immutable after construction.
    """

    g1: FiniteGroup
    g2: FiniteGroup
    h1: Subgroup
    h2: Subgroup
    iso: SubgroupIsomorphism
    _h1_to_h2: dict[int, int] = field(repr=False, default_factory=dict)
    _h2_to_h1: dict[int, int] = field(repr=False, default_factory=dict)
    _reps: dict[int, tuple[int, ...]] = field(repr=False, default_factory=dict)
    _non_h: dict[int, tuple[int, ...]] = field(repr=False, default_factory=dict)
    _caches: dict = field(repr=False, default_factory=dict)

    def __post_init__(self):
        if self.h1.parent is not self.g1:
            raise ValueError("h1 must be a subgroup of the first factor")
        if self.h2.parent is not self.g2:
            raise ValueError("h2 must be a subgroup of the second factor")
        if self.iso.source != self.h1 or self.iso.target != self.h2:
            raise ValueError("iso must map the first factor's subgroup onto the second's")
        self._h1_to_h2 = dict(self.iso.mapping)
        self._h2_to_h1 = {v: k for k, v in self.iso.mapping.items()}
        for f, g, h in ((1, self.g1, self.h1), (2, self.g2, self.h2)):
            self._reps[f] = self._right_coset_reps(g, h)
            self._non_h[f] = tuple(x for x in g.elements() if x not in h.members)

    @staticmethod
    def _right_coset_reps(g: FiniteGroup, h: Subgroup) -> tuple[int, ...]:
        rep_of = [-1] * g.order
        for x in g.elements():
            if rep_of[x] >= 0:
                continue
            coset = sorted(g.mul(m, x) for m in h.members)
            rep = g.identity if g.identity in coset else coset[0]
            for y in coset:
                rep_of[y] = rep
        return tuple(rep_of)

    def factor_group(self, f: int) -> FiniteGroup:
        return self.g1 if f == 1 else self.g2

    def h_members(self, f: int) -> frozenset[int]:
        return self.h1.members if f == 1 else self.h2.members

    def in_h(self, f: int, x: int) -> bool:
        return x in self.h_members(f)

    def to_h1(self, f: int, x: int) -> int:
        """Canonical H-copy of an H-element of either factor."""
        return x if f == 1 else self._h2_to_h1[x]

    def from_h1(self, f: int, h: int) -> int:
        """Express a canonical H-element inside factor f."""
        return h if f == 1 else self._h1_to_h2[h]

    def mul(self, f: int, a: int, b: int) -> int:
        return self.factor_group(f).mul(a, b)

    def inv(self, f: int, a: int) -> int:
        return self.factor_group(f).inverse[a]

    def identity_of(self, f: int) -> int:
        return self.factor_group(f).identity

    def coset_rep(self, f: int, x: int) -> int:
        return self._reps[f][x]

    def non_h_elements(self, f: int) -> tuple[int, ...]:
        return self._non_h[f]

    @property
    def transversal1(self) -> tuple[int, ...]:
        return tuple(sorted(set(self._reps[1])))

    @property
    def transversal2(self) -> tuple[int, ...]:
        return tuple(sorted(set(self._reps[2])))

    def syllable(self, f: int, name: str, inverse: bool = False) -> Syllable:
        """Convenience lookup of a named factor element as a syllable."""
        g = self.factor_group(f)
        x = g.element(name)
        return Syllable(f, g.inverse[x] if inverse else x)


def reduce(spec: AmalgamSpec, raw: Iterable[Syllable]) -> ReducedWord:
    """Rewrite an arbitrary syllable sequence to reduced form.

    Single left-to-right pass with one pending H-accumulator: same-factor
    neighbors are multiplied out, H-elements transported across factor
    boundaries through the identification, and a trailing H-part absorbed
    into the final syllable. The empty input yields the identity word.
    """
    stack: list[Syllable] = []
    pending: int | None = None  # canonical H-element sitting right of the stack
    for syl in raw:
        f, x = syl.factor, syl.element
        group = spec.factor_group(f)
        if not 0 <= x < group.order:
            raise ValueError(f"element index {x} is out of range for factor {f}")
        if pending is not None:
            x = spec.mul(f, spec.from_h1(f, pending), x)
            pending = None
        if spec.in_h(f, x):
            pending = spec.to_h1(f, x)
            continue
        if stack and stack[-1].factor == f:
            z = spec.mul(f, stack[-1].element, x)
            stack.pop()
            if spec.in_h(f, z):
                pending = spec.to_h1(f, z)
            else:
                stack.append(Syllable(f, z))
        else:
            stack.append(Syllable(f, x))
    if pending is not None:
        if stack:
            f = stack[-1].factor
            stack[-1] = Syllable(f, spec.mul(f, stack[-1].element, spec.from_h1(f, pending)))
        elif pending != spec.g1.identity:
            stack.append(Syllable(1, pending))
    return ReducedWord(tuple(stack))


def multiply(spec: AmalgamSpec, w1: ReducedWord, w2: ReducedWord) -> ReducedWord:
    return reduce(spec, w1.syllables + w2.syllables)


def invert(spec: AmalgamSpec, w: ReducedWord) -> ReducedWord:
    syls = tuple(
        Syllable(s.factor, spec.inv(s.factor, s.element)) for s in reversed(w.syllables)
    )
    return ReducedWord(syls)


def syllable_length(w: ReducedWord) -> int:
    return len(w.syllables)


def normal_form(spec: AmalgamSpec, w: ReducedWord) -> NormalForm:
    """Unique canonical form of the element represented by a reduced word.

    Scans right to left, rewriting each syllable as (H-part) * (designated
    coset representative) and pushing the H-part across the next factor
    boundary, so equal elements always land on an identical value.
    """
    pending = spec.g1.identity
    tail: list[Syllable] = []
    for syl in reversed(w.syllables):
        f, x = syl.factor, syl.element
        y = spec.mul(f, x, spec.from_h1(f, pending))
        rep = spec.coset_rep(f, y)
        h_part = spec.mul(f, y, spec.inv(f, rep))
        pending = spec.to_h1(f, h_part)
        if rep != spec.identity_of(f):
            tail.append(Syllable(f, rep))
    tail.reverse()
    return NormalForm(head=pending, tail=tuple(tail))


def equal(spec: AmalgamSpec, w1: ReducedWord, w2: ReducedWord) -> bool:
    return normal_form(spec, w1) == normal_form(spec, w2)


def is_reduced(spec: AmalgamSpec, w: ReducedWord) -> bool:
    """Full reducedness check against a spec (alternation is structural)."""
    syls = w.syllables
    if len(syls) == 1:
        return syls[0].element != spec.identity_of(syls[0].factor)
    return all(not spec.in_h(s.factor, s.element) for s in syls)


def cyclically_reduce(spec: AmalgamSpec, w: ReducedWord) -> tuple[ReducedWord, ReducedWord]:
    """Split w as c * w' * c^-1 with w' cyclically reduced.

    The result has first and last syllables in different factors or length at
    most one; w lies in the union of factor-conjugate classes exactly when
    the cyclically reduced core has at most one syllable.
    """
    current = w
    conj: list[Syllable] = []
    while len(current) >= 2 and current.syllables[0].factor == current.syllables[-1].factor:
        first = current.syllables[0]
        conj.append(first)
        inv_first = Syllable(first.factor, spec.inv(first.factor, first.element))
        current = reduce(spec, (inv_first, *current.syllables, first))
    return current, reduce(spec, conj)


def random_reduced_word(spec: AmalgamSpec, rng: Random, n_syllables: int) -> ReducedWord:
    """Uniform alternating word with all syllables outside H."""
    if n_syllables <= 0:
        return ReducedWord()
    f = rng.choice((1, 2))
    syls = []
    for _ in range(n_syllables):
        syls.append(Syllable(f, rng.choice(spec.non_h_elements(f))))
        f = 3 - f
    return ReducedWord(tuple(syls))


def h_shuffle(spec: AmalgamSpec, w: ReducedWord, rng: Random, moves: int = 1) -> ReducedWord:
    """Respell w across factor boundaries without changing the element.

    Each move multiplies a random H-element into one side of a random
    syllable boundary and its identified inverse into the other, which
    preserves both the element of the amalgam and the syllable count.
    """
    syls = list(w.syllables)
    h_all = sorted(spec.h1.members)
    for _ in range(moves):
        if len(syls) < 2:
            break
        i = rng.randrange(1, len(syls))
        u = rng.choice(h_all)
        left, right = syls[i - 1], syls[i]
        syls[i - 1] = Syllable(
            left.factor, spec.mul(left.factor, left.element, spec.from_h1(left.factor, u))
        )
        u_inv = spec.g1.inverse[u]
        syls[i] = Syllable(
            right.factor, spec.mul(right.factor, spec.from_h1(right.factor, u_inv), right.element)
        )
    return ReducedWord(tuple(syls))
