"""Programmatic builders for the standard fixture groups and specs.

The default amalgam takes the order-21 Frobenius group (translations and
doubling maps on the integers mod 7) against the cyclic group of order 6,
glued along their order-3 subgroups. It is the smallest natural instance
where one factor has an element whose double coset misses its inverse's
while the index conditions for unbounded width hold.
"""

from __future__ import annotations

from .amalgam import AmalgamSpec
from .groups import (
    FiniteGroup,
    SubgroupIsomorphism,
    from_mult_table,
    from_permutations,
    subgroup_closure,
)
from .hnn import HnnSpec


def cyclic(n: int, names: list[str] | None = None, name: str | None = None) -> FiniteGroup:
    """Cyclic group of order n written additively; default names 0..n-1."""
    if names is None:
        names = [str(i) for i in range(n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return from_mult_table(names, table, name=name or f"Z{n}")


def z3() -> FiniteGroup:
    return cyclic(3)


def z4() -> FiniteGroup:
    return cyclic(4)


def z6() -> FiniteGroup:
    """Z6 written multiplicatively with generator c, so c3 is the involution."""
    return cyclic(6, names=["e", "c", "c2", "c3", "c4", "c5"], name="Z6")


_S3_PERMS = {
    "e": (0, 1, 2),
    "(12)": (1, 0, 2),
    "(13)": (2, 1, 0),
    "(23)": (0, 2, 1),
    "(123)": (1, 2, 0),
    "(132)": (2, 0, 1),
}


def s3() -> FiniteGroup:
    names = list(_S3_PERMS)
    perms = list(_S3_PERMS.values())
    idx = {p: i for i, p in enumerate(perms)}
    table = [
        [idx[tuple(p[q[i]] for i in range(3))] for q in perms]
        for p in perms
    ]
    return from_mult_table(names, table, name="S3")


def f21() -> FiniteGroup:
    """Frobenius group of order 21 on the integers mod 7: x shifts, y doubles."""
    shift = [(i + 1) % 7 for i in range(7)]
    double = [(2 * i) % 7 for i in range(7)]
    return from_permutations(7, [shift, double], gen_names=["x", "y"], name="F21")


def f21_z6_amalgam() -> AmalgamSpec:
    """F21 and Z6 glued along their order-3 subgroups, y identified with c2."""
    g1 = f21()
    g2 = z6()
    y = g1.element("y")
    c2 = g2.element("c2")
    h1 = subgroup_closure(g1, [y])
    h2 = subgroup_closure(g2, [c2])
    mapping = {g1.power(y, k): g2.power(c2, k) for k in range(3)}
    iso = SubgroupIsomorphism(h1, h2, mapping)
    return AmalgamSpec(g1, g2, h1, h2, iso)


def default_witness_elements(spec: AmalgamSpec) -> tuple[tuple[int, int], tuple[int, int]]:
    """(a, b) = (x in the Frobenius factor, the involution c3 in Z6)."""
    return (1, spec.g1.element("x")), (2, spec.g2.element("c3"))


def z6_hnn() -> HnnSpec:
    """Z6 with both associated subgroups the order-3 one, phi inverting it."""
    g = z6()
    c2 = g.element("c2")
    sub_a = subgroup_closure(g, [c2])
    sub_b = subgroup_closure(g, [c2])
    mapping = {g.power(c2, k): g.power(c2, 2 * k) for k in range(3)}
    phi = SubgroupIsomorphism(sub_a, sub_b, mapping)
    return HnnSpec(g, sub_a, sub_b, phi)


def s3_s3_amalgam() -> AmalgamSpec:
    """Two copies of S3 glued along the order-2 subgroups generated by (12);
    every double coset here meets its inverse's, so segment counting has no
    valid marker element."""
    g1 = s3()
    g2 = s3()
    t1 = g1.element("(12)")
    t2 = g2.element("(12)")
    h1 = subgroup_closure(g1, [t1])
    h2 = subgroup_closure(g2, [t2])
    iso = SubgroupIsomorphism(h1, h2, {g1.identity: g2.identity, t1: t2})
    return AmalgamSpec(g1, g2, h1, h2, iso)


def fixture_groups() -> dict[str, FiniteGroup]:
    """All standard groups, keyed by their fixture names."""
    return {"S3": s3(), "Z3": z3(), "Z4": z4(), "Z6": z6(), "F21": f21()}


__all__ = [
    "cyclic",
    "z3",
    "z4",
    "z6",
    "s3",
    "f21",
    "f21_z6_amalgam",
    "default_witness_elements",
    "z6_hnn",
    "s3_s3_amalgam",
    "fixture_groups",
]
