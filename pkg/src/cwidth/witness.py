"""The unbounded witness sequence and the growth experiment.

With a as in the quasimorphism construction and b a non-H element of the
other factor, the words

    g_n = b a (b a^-1) b a (b a^-1)^2 ... b a (b a^-1)^n b a

are reduced as written and satisfy f(g_n) >= n - 1, so their certified
length lower bounds grow without bound over the factor-conjugate generating
set. That growth is the whole content of the infinite-width certificate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .amalgam import AmalgamSpec, ReducedWord, Syllable, reduce, syllable_length
from .quasimorphism import _require_valid_a, f_value, length_lower_bound


@dataclass(frozen=True)
class WitnessConfig:
    spec: AmalgamSpec
    a: tuple[int, int]
    b: tuple[int, int]
    max_n: int

    def __post_init__(self):
        if self.max_n < 1:
            raise ValueError(f"max_n must be positive, got {self.max_n}")
        af, _ = self.a
        bf, be = self.b
        if af == bf:
            raise ValueError("a and b must come from different factors")
        if self.spec.in_h(bf, be):
            name = self.spec.factor_group(bf).name_of(be)
            raise ValueError(f"b must lie outside the amalgamated subgroup, got {name!r}")
        _require_valid_a(self.spec, self.a)


@dataclass(frozen=True)
class ExperimentRow:
    n: int
    syllable_length: int
    f: int
    lower_bound: int


def witness_word(cfg: WitnessConfig, n: int) -> ReducedWord:
    """The n-th witness word; n^2 + 3n + 2 alternating syllables."""
    if not 1 <= n <= cfg.max_n:
        raise ValueError(f"n must be in 1..{cfg.max_n}, got {n}")
    af, ae = cfg.a
    bf, be = cfg.b
    a_pos = Syllable(af, ae)
    a_neg = Syllable(af, cfg.spec.inv(af, ae))
    b_syl = Syllable(bf, be)
    raw: list[Syllable] = []
    for j in range(1, n + 1):
        raw += [b_syl, a_pos]
        raw += [b_syl, a_neg] * j
    raw += [b_syl, a_pos]
    return reduce(cfg.spec, raw)


def run_experiment(cfg: WitnessConfig) -> list[ExperimentRow]:
    """One row per n up to max_n: length, f, and the certified lower bound."""
    rows = []
    for n in range(1, cfg.max_n + 1):
        w = witness_word(cfg, n)
        rows.append(
            ExperimentRow(
                n=n,
                syllable_length=syllable_length(w),
                f=f_value(cfg.spec, cfg.a, w),
                lower_bound=length_lower_bound(cfg.spec, cfg.a, w),
            )
        )
    return rows
