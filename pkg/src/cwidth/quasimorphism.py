"""Segment-counting quasimorphism on an amalgam.

Fix an element a of one factor whose double coset H*a*H is disjoint from
H*a^-1*H. Every reduced word then admits a special form in which syllables
from H*a*H or H*a^-1*H are rewritten to expose a literal a or a^-1, with the
flanking H-units absorbed into the neighboring syllables. Counting gaps
between consecutive exposed letters yields statistics whose per-gap-length
parities sum to a conjugation-friendly quasimorphism f, and f in turn gives
certified lower bounds on word length over the conjugation-invariant
generating set built from the two factors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from random import Random

from .amalgam import AmalgamSpec, ReducedWord, Syllable, invert, multiply, reduce
from .groups import GroupError, Subgroup, inverse_coset_distinct

PRODUCT_DEFECT = 9
SINGLE_CONJUGATE_BOUND = 3


class InvalidA(GroupError):
    def __init__(self, detail: str):
        super().__init__(
            f"segment counting is undefined for this choice of a: {detail}"
        )


@dataclass(frozen=True)
class MarkToken:
    """An exposed literal a (sign +1) or a^-1 (sign -1)."""

    sign: int


@dataclass(frozen=True)
class OrdinaryToken:
    syllable: Syllable


@dataclass(frozen=True)
class BoundaryToken:
    """An H-unit left over at the first or last position, stored canonically."""

    h_element: int


Token = MarkToken | OrdinaryToken | BoundaryToken


@dataclass(frozen=True)
class SpecialForm:
    tokens: tuple[Token, ...]


@dataclass(frozen=True)
class SegmentStats:
    """Counts of exposed-letter gaps by half-length.

    p[k] counts consecutive a...a pairs enclosing exactly 2k-1 tokens, m[k]
    the a^-1...a^-1 pairs; only positive counts are stored.
    """

    p: dict[int, int] = field(default_factory=dict)
    m: dict[int, int] = field(default_factory=dict)

    def d(self, k: int) -> int:
        return self.p.get(k, 0) - self.m.get(k, 0)

    def gap_lengths(self) -> list[int]:
        return sorted(set(self.p) | set(self.m))

    def parity_sum(self) -> int:
        return sum(abs(self.d(k)) % 2 for k in self.gap_lengths())


def choose_a(spec: AmalgamSpec) -> tuple[int, int] | None:
    """First factor element whose double coset avoids its inverse's.

    Scans factor 1 then factor 2 in element order; returns None when every
    double coset meets its inverse, which is the regime this construction
    cannot handle.
    """
    for f in (1, 2):
        group = spec.factor_group(f)
        sub = spec.h1 if f == 1 else spec.h2
        for x in group.elements():
            if inverse_coset_distinct(group, sub, x):
                return (f, x)
    return None


def decompositions(H: Subgroup, a: int, x: int) -> list[tuple[int, int, int]]:
    """All ways to write x = u * a^theta * u' with u, u' in H."""
    g = H.parent
    out = []
    for theta, core in ((1, a), (-1, g.inverse[a])):
        for u in sorted(H.members):
            u_prime = g.mul(g.inverse[g.mul(u, core)], x)
            if u_prime in H.members:
                out.append((u, theta, u_prime))
    return out


def decompose(H: Subgroup, a: int, x: int) -> tuple[int, int, int] | None:
    """Least-u decomposition x = u * a^theta * u', or None outside the cosets.

    The sign theta is unique whenever H*a*H and H*a^-1*H are disjoint.
    """
    found = decompositions(H, a, x)
    return min(found) if found else None


def _require_valid_a(spec: AmalgamSpec, a: tuple[int, int]) -> None:
    f, x = a
    key = ("valid_a", f, x)
    ok = spec._caches.get(key)
    if ok is None:
        group = spec.factor_group(f)
        sub = spec.h1 if f == 1 else spec.h2
        ok = inverse_coset_distinct(group, sub, x)
        spec._caches[key] = ok
    if not ok:
        group = spec.factor_group(f)
        name = group.name_of(x)
        raise InvalidA(
            f"double cosets of {name!r} and its inverse in {group.name!r} coincide"
        )


def _decomposition_table(
    spec: AmalgamSpec, a: tuple[int, int]
) -> dict[int, tuple[int, int, int] | None]:
    f, x = a
    key = ("decomp", f, x)
    table = spec._caches.get(key)
    if table is None:
        sub = spec.h1 if f == 1 else spec.h2
        group = spec.factor_group(f)
        table = {y: decompose(sub, x, y) for y in group.elements()}
        spec._caches[key] = table
    return table


def special_form(
    spec: AmalgamSpec,
    a: tuple[int, int],
    w: ReducedWord,
    rng: Random | None = None,
) -> SpecialForm:
    """Expose literal a-letters in a reduced word.

    Single left-to-right pass: every syllable of a's factor that falls in
    H*a*H or H*a^-1*H becomes a mark, its left H-unit moving into the
    preceding syllable (or a leading boundary token) and its right H-unit
    into the following one (or a trailing boundary token). Neighbors always
    sit in the other factor, so absorption cannot create new candidates and
    the token count is the syllable count plus at most two boundary units.

    Passing an rng picks uniformly among the valid (u, theta, u') choices
    instead of the deterministic least one; f does not depend on the choice.
    """
    _require_valid_a(spec, a)
    af, ae = a
    table = _decomposition_table(spec, a)
    sub = spec.h1 if af == 1 else spec.h2

    marks: list[tuple[int, int, int] | None] = []
    for syl in w.syllables:
        if syl.factor != af:
            marks.append(None)
            continue
        if rng is None:
            marks.append(table[syl.element])
        else:
            found = decompositions(sub, ae, syl.element)
            marks.append(rng.choice(found) if found else None)

    adjusted = list(w.syllables)
    lead_h: int | None = None
    trail_h: int | None = None
    last = len(adjusted) - 1
    for i, mk in enumerate(marks):
        if mk is None:
            continue
        u, _theta, u_prime = mk
        u_c = spec.to_h1(af, u)
        up_c = spec.to_h1(af, u_prime)
        if i == 0:
            lead_h = u_c
        else:
            nb = adjusted[i - 1]
            adjusted[i - 1] = Syllable(
                nb.factor, spec.mul(nb.factor, nb.element, spec.from_h1(nb.factor, u_c))
            )
        if i == last:
            trail_h = up_c
        else:
            nb = adjusted[i + 1]
            adjusted[i + 1] = Syllable(
                nb.factor, spec.mul(nb.factor, spec.from_h1(nb.factor, up_c), nb.element)
            )

    tokens: list[Token] = []
    e1 = spec.g1.identity
    if lead_h is not None and lead_h != e1:
        tokens.append(BoundaryToken(lead_h))
    for mk, syl in zip(marks, adjusted):
        if mk is None:
            tokens.append(OrdinaryToken(syl))
        else:
            tokens.append(MarkToken(mk[1]))
    if trail_h is not None and trail_h != e1:
        tokens.append(BoundaryToken(trail_h))
    return SpecialForm(tuple(tokens))


def segment_stats(form: SpecialForm) -> SegmentStats:
    """Gap statistics between consecutive equal-sign marks.

    A pair of neighboring marks of the same sign enclosing 2k-1 tokens
    contributes one count at half-length k; alternation of the underlying
    factors forces every enclosed count to be odd.
    """
    p: dict[int, int] = {}
    m: dict[int, int] = {}
    for sign, store in ((1, p), (-1, m)):
        positions = [
            i for i, t in enumerate(form.tokens) if isinstance(t, MarkToken) and t.sign == sign
        ]
        for i, j in zip(positions, positions[1:]):
            gap = j - i - 1
            assert gap % 2 == 1, "mark gap must be odd by factor alternation"
            k = (gap + 1) // 2
            store[k] = store.get(k, 0) + 1
    return SegmentStats(p, m)


def f_value(spec: AmalgamSpec, a: tuple[int, int], w: ReducedWord) -> int:
    """Sum over gap lengths of the parity of (a-count minus inverse-count)."""
    stats = segment_stats(special_form(spec, a, w))
    return stats.parity_sum()


def defect(
    spec: AmalgamSpec, a: tuple[int, int], g: ReducedWord, h: ReducedWord
) -> int:
    """f(g*h) - f(g) - f(h); bounded above by 9 on this construction."""
    return f_value(spec, a, multiply(spec, g, h)) - f_value(spec, a, g) - f_value(spec, a, h)


def conjugate_f(
    spec: AmalgamSpec, a: tuple[int, int], k: Syllable, g: ReducedWord
) -> int:
    """f of the reduced conjugate g^-1 * k * g of a single factor element."""
    word = multiply(spec, multiply(spec, invert(spec, g), reduce(spec, (k,))), g)
    return f_value(spec, a, word)


def length_lower_bound(spec: AmalgamSpec, a: tuple[int, int], w: ReducedWord) -> int:
    """Certified lower bound on word length over factor-conjugate generators.

    A product of k generators has f at most 12k - 9, so the least k with
    12k - 9 >= f(w) bounds the length of w from below; the identity needs no
    generators at all.
    """
    if len(w) == 0:
        return 0
    # k generators reach f at most SINGLE_CONJUGATE_BOUND*k + PRODUCT_DEFECT*(k-1)
    per_generator = SINGLE_CONJUGATE_BOUND + PRODUCT_DEFECT
    fw = f_value(spec, a, w)
    return (fw + PRODUCT_DEFECT + per_generator - 1) // per_generator
