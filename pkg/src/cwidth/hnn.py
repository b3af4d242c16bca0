"""Britton reduction and stable-letter exponent bounds in an HNN extension
of a finite base group.

Words are alternating sequences g0 t^(e1) g1 ... t^(en) gn with base
elements between stable-letter powers. The stable-letter exponent sum is a
homomorphism onto the integers (base elements map to zero), which already
certifies unbounded word lengths for any conjugation-invariant generating
set with bounded exponents.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import FiniteGroup, GroupError, Subgroup, SubgroupIsomorphism


class ZeroDivisor(GroupError):
    def __init__(self):
        super().__init__(
            "generating set has stable-letter exponent 0: unreachable element"
        )


@dataclass(eq=False)
class HnnSpec:
    """Base group with two identified proper subgroups A and B.

    The defining relation conjugates A onto B by the stable letter:
    t^-1 * a * t equals phi(a) for every a in A.
    """

    base: FiniteGroup
    a_sub: Subgroup
    b_sub: Subgroup
    phi: SubgroupIsomorphism

    def __post_init__(self):
        if self.a_sub.parent is not self.base or self.b_sub.parent is not self.base:
            raise ValueError("both associated subgroups must live in the base group")
        if self.phi.source != self.a_sub or self.phi.target != self.b_sub:
            raise ValueError("phi must map the first associated subgroup onto the second")
        for sub, label in ((self.a_sub, "A"), (self.b_sub, "B")):
            if sub.order == self.base.order:
                raise ValueError(f"associated subgroup {label} must be proper")
        self._phi_inv = {v: k for k, v in self.phi.mapping.items()}


@dataclass(frozen=True)
class HnnWord:
    """g0 t^(e1) g1 ... t^(en) gn as parallel element and exponent tuples."""

    heads: tuple[int, ...]
    exps: tuple[int, ...]

    def __post_init__(self):
        if len(self.heads) != len(self.exps) + 1:
            raise ValueError("an HNN word needs exactly one more base element than exponents")
        for e in self.exps:
            if e not in (1, -1):
                raise ValueError(f"stable-letter exponents must be +1 or -1, got {e}")

    def __len__(self) -> int:
        return len(self.exps)


def identity_word(spec: HnnSpec) -> HnnWord:
    return HnnWord((spec.base.identity,), ())


def from_base(spec: HnnSpec, g: int) -> HnnWord:
    return HnnWord((g,), ())


def concatenate(spec: HnnSpec, u: HnnWord, v: HnnWord) -> HnnWord:
    """Unreduced product of two words; merges only the touching base parts."""
    joined = spec.base.mul(u.heads[-1], v.heads[0])
    return HnnWord(u.heads[:-1] + (joined,) + v.heads[1:], u.exps + v.exps)


def hnn_invert(spec: HnnSpec, w: HnnWord) -> HnnWord:
    heads = tuple(spec.base.inverse[g] for g in reversed(w.heads))
    exps = tuple(-e for e in reversed(w.exps))
    return HnnWord(heads, exps)


def britton_reduce(spec: HnnSpec, w: HnnWord) -> HnnWord:
    """Eliminate pinches until none remain, leftmost first.

    A pinch t^-1 * a * t with a in A collapses to phi(a); t * b * t^-1 with
    b in B collapses to phi^-1(b). The result represents the same element
    and is independent of the elimination order.
    """
    heads = list(w.heads)
    exps = list(w.exps)
    while True:
        for i in range(len(exps) - 1):
            mid = heads[i + 1]
            if exps[i] == -1 and exps[i + 1] == 1 and mid in spec.a_sub.members:
                image = spec.phi.mapping[mid]
            elif exps[i] == 1 and exps[i + 1] == -1 and mid in spec.b_sub.members:
                image = spec._phi_inv[mid]
            else:
                continue
            merged = spec.base.mul(spec.base.mul(heads[i], image), heads[i + 2])
            heads[i : i + 3] = [merged]
            exps[i : i + 2] = []
            break
        else:
            return HnnWord(tuple(heads), tuple(exps))


def is_britton_reduced(spec: HnnSpec, w: HnnWord) -> bool:
    for i in range(len(w.exps) - 1):
        mid = w.heads[i + 1]
        if w.exps[i] == -1 and w.exps[i + 1] == 1 and mid in spec.a_sub.members:
            return False
        if w.exps[i] == 1 and w.exps[i + 1] == -1 and mid in spec.b_sub.members:
            return False
    return True


def t_exponent(w: HnnWord) -> int:
    """Stable-letter exponent sum; a homomorphism onto the integers."""
    return sum(w.exps)


def t_length_lower_bound(w: HnnWord, max_gen_texp: int) -> int:
    """Words of length L over generators of exponent at most max_gen_texp
    have exponent at most L * max_gen_texp, so the ceiling quotient is a
    valid length lower bound."""
    if max_gen_texp < 0:
        raise ValueError(f"max_gen_texp must be nonnegative, got {max_gen_texp}")
    total = abs(t_exponent(w))
    if total == 0:
        return 0
    if max_gen_texp == 0:
        raise ZeroDivisor()
    return -(-total // max_gen_texp)
