"""Concrete finite-group arithmetic over multiplication tables.

Elements are canonical indices into an element-name list; every higher layer
refers to an element as (group, index). All objects are immutable after
construction and safe for concurrent reads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

ASSOCIATIVITY_CAP = 256
CLOSURE_CAP = 10_000


class GroupError(Exception):
    """Base class for structural errors raised by this package."""


class NonAssociative(GroupError):
    def __init__(self, triple: tuple[int, int, int]):
        self.triple = triple
        super().__init__(f"multiplication table is not associative at triple {triple}")


class NoIdentity(GroupError):
    def __init__(self):
        super().__init__("multiplication table has no two-sided identity")


class NoInverse(GroupError):
    def __init__(self, element: int):
        self.element = element
        super().__init__(f"element {element} has no two-sided inverse")


class NotBijection(GroupError):
    def __init__(self, perm: Sequence[int]):
        super().__init__(f"{list(perm)} is not a bijection on its domain")


class ClosureExceedsCap(GroupError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"generated group exceeds the closure cap of {cap} elements")


class NotNormal(GroupError):
    def __init__(self, conjugator: int, member: int, image: int):
        self.witness = (conjugator, member, image)
        super().__init__(
            f"subgroup is not normal: conjugating member {member} by {conjugator} "
            f"gives {image}, which is outside the subgroup"
        )


@dataclass(eq=False)
class FiniteGroup:
    """A finite group given by its full multiplication structure.

    `table[a][b]` is the index of the product a*b; `inverse[a]` the index of
    the inverse. Use :func:`from_mult_table` or :func:`from_permutations`
    to build validated instances.
    """

    name: str
    element_names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    _name_to_index: dict[str, int] = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        if not self._name_to_index:
            self._name_to_index = {n: i for i, n in enumerate(self.element_names)}
        if len(self._name_to_index) != len(self.element_names):
            raise ValueError(f"element names of group {self.name!r} are not distinct")

    @property
    def order(self) -> int:
        return len(self.element_names)

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conjugate(self, g: int, by: int) -> int:
        """by * g * by^-1."""
        return self.mul(self.mul(by, g), self.inverse[by])

    def element(self, name: str) -> int:
        try:
            return self._name_to_index[name]
        except KeyError:
            raise KeyError(f"group {self.name!r} has no element named {name!r}") from None

    def name_of(self, index: int) -> str:
        return self.element_names[index]

    def power(self, a: int, n: int) -> int:
        if n < 0:
            return self.power(self.inverse[a], -n)
        acc = self.identity
        for _ in range(n):
            acc = self.mul(acc, a)
        return acc

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    """A validated subgroup, stored as a member-index set of its parent."""

    parent: FiniteGroup
    members: frozenset[int]

    def __post_init__(self):
        g = self.parent
        if g.identity not in self.members:
            raise ValueError(f"subgroup of {g.name!r} does not contain the identity")
        for a in self.members:
            if g.inverse[a] not in self.members:
                raise ValueError(f"subgroup of {g.name!r} is not closed under inversion at {a}")
            for b in self.members:
                if g.mul(a, b) not in self.members:
                    raise ValueError(
                        f"subgroup of {g.name!r} is not closed under products at ({a}, {b})"
                    )

    @property
    def order(self) -> int:
        return len(self.members)

    def sorted_members(self) -> list[int]:
        return sorted(self.members)

    def __repr__(self) -> str:
        return f"Subgroup(of={self.parent.name!r}, order={self.order})"


@dataclass(frozen=True)
class SubgroupIsomorphism:
    """A product-preserving bijection between two subgroups."""

    source: Subgroup
    target: Subgroup
    mapping: dict[int, int]

    def __post_init__(self):
        src, tgt = self.source, self.target
        if set(self.mapping) != set(src.members):
            raise ValueError("isomorphism domain does not match the source subgroup")
        if set(self.mapping.values()) != set(tgt.members):
            raise ValueError("isomorphism image does not match the target subgroup")
        if len(set(self.mapping.values())) != len(self.mapping):
            raise ValueError("isomorphism mapping is not injective")
        if self.mapping[src.parent.identity] != tgt.parent.identity:
            raise ValueError("isomorphism does not send identity to identity")
        for a in src.members:
            for b in src.members:
                lhs = self.mapping[src.parent.mul(a, b)]
                rhs = tgt.parent.mul(self.mapping[a], self.mapping[b])
                if lhs != rhs:
                    raise ValueError(f"mapping does not preserve the product at ({a}, {b})")

    def apply(self, a: int) -> int:
        return self.mapping[a]

    def inverted(self) -> SubgroupIsomorphism:
        return SubgroupIsomorphism(self.target, self.source, {v: k for k, v in self.mapping.items()})


@dataclass(frozen=True)
class GroupHomomorphism:
    """A total map between groups, verified to preserve products."""

    source: FiniteGroup
    target: FiniteGroup
    mapping: tuple[int, ...]

    def __post_init__(self):
        if len(self.mapping) != self.source.order:
            raise ValueError("homomorphism mapping must be total on the source group")
        for a in self.source.elements():
            for b in self.source.elements():
                lhs = self.mapping[self.source.mul(a, b)]
                rhs = self.target.mul(self.mapping[a], self.mapping[b])
                if lhs != rhs:
                    raise ValueError(f"mapping does not preserve the product at ({a}, {b})")

    def apply(self, a: int) -> int:
        return self.mapping[a]

    def kernel(self) -> frozenset[int]:
        e = self.target.identity
        return frozenset(a for a in self.source.elements() if self.mapping[a] == e)

    def is_surjective(self) -> bool:
        return len(set(self.mapping)) == self.target.order


def from_mult_table(
    names: Sequence[str],
    table: Sequence[Sequence[int]],
    name: str = "G",
    assoc_cap: int = ASSOCIATIVITY_CAP,
) -> FiniteGroup:
    """Build a validated group from a row-major multiplication table.

    Associativity is checked exhaustively while the order stays within
    `assoc_cap`; identity and inverses are always verified.
    """
    n = len(names)
    if len(table) != n:
        raise ValueError(f"table has {len(table)} rows for {n} elements")
    rows = []
    for i, row in enumerate(table):
        if len(row) != n:
            raise ValueError(f"table row {i} has length {len(row)}, expected {n}")
        entries = tuple(int(x) for x in row)
        for x in entries:
            if not 0 <= x < n:
                raise ValueError(f"table entry {x} in row {i} is out of range")
        rows.append(entries)
    tbl = tuple(rows)

    identity = None
    for e in range(n):
        if all(tbl[e][g] == g and tbl[g][e] == g for g in range(n)):
            identity = e
            break
    if identity is None:
        raise NoIdentity()

    inverse = []
    for g in range(n):
        for h in range(n):
            if tbl[g][h] == identity and tbl[h][g] == identity:
                inverse.append(h)
                break
        else:
            raise NoInverse(g)

    if n <= assoc_cap:
        for a in range(n):
            for b in range(n):
                ab = tbl[a][b]
                row_a = tbl[a]
                row_ab = tbl[ab]
                for c in range(n):
                    if row_ab[c] != row_a[tbl[b][c]]:
                        raise NonAssociative((a, b, c))

    return FiniteGroup(name, tuple(str(s) for s in names), tbl, identity, tuple(inverse))


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # (p*q)(i) = p(q(i)): the right factor acts first.
    return tuple(p[q[i]] for i in range(len(q)))


def from_permutations(
    degree: int,
    generators: Sequence[Sequence[int]],
    gen_names: Sequence[str] | None = None,
    name: str = "G",
    cap: int = CLOSURE_CAP,
) -> FiniteGroup:
    """Close a set of permutations of {0..degree-1} under composition.

    Element names are assigned along a breadth-first closure: the identity is
    "e", and a new element first reached as (known * generator) is named
    "<known>*<generator>" (or just the generator's name from the identity).
    Associativity is inherited from composition, so no cubic check runs.
    """
    if degree < 1:
        raise ValueError(f"degree must be positive, got {degree}")
    gens = []
    for p in generators:
        t = tuple(int(x) for x in p)
        if len(t) != degree or sorted(t) != list(range(degree)):
            raise NotBijection(p)
        gens.append(t)
    if gen_names is None:
        gen_names = [f"g{i}" for i in range(len(gens))]
    if len(gen_names) != len(gens):
        raise ValueError("one name is required per generator")

    ident = tuple(range(degree))
    perms = [ident]
    names = ["e"]
    index_of = {ident: 0}
    queue = [0]
    while queue:
        i = queue.pop(0)
        for gname, gperm in zip(gen_names, gens):
            w = _compose(perms[i], gperm)
            if w not in index_of:
                if len(perms) >= cap:
                    raise ClosureExceedsCap(cap)
                index_of[w] = len(perms)
                perms.append(w)
                names.append(gname if i == 0 else f"{names[i]}*{gname}")
                queue.append(len(perms) - 1)

    n = len(perms)
    table = tuple(tuple(index_of[_compose(perms[a], perms[b])] for b in range(n)) for a in range(n))
    inverse = []
    for a in range(n):
        q = [0] * degree
        for i, v in enumerate(perms[a]):
            q[v] = i
        inverse.append(index_of[tuple(q)])
    return FiniteGroup(name, tuple(names), table, 0, tuple(inverse))


def subgroup_closure(G: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    """Smallest subgroup of G containing the seed elements.

    Finite order makes the sub-semigroup generated by the seeds a subgroup,
    so breadth-first products with the seeds close the set.
    """
    seeds = sorted(set(seed))
    for s in seeds:
        if not 0 <= s < G.order:
            raise ValueError(f"seed element {s} is out of range for group {G.name!r}")
    members = {G.identity}
    frontier = [G.identity]
    while frontier:
        a = frontier.pop()
        for s in seeds:
            b = G.mul(a, s)
            if b not in members:
                members.add(b)
                frontier.append(b)
    return Subgroup(G, frozenset(members))


def index(G: FiniteGroup, H: Subgroup) -> int:
    """|G : H|; exact by Lagrange for validated subgroups."""
    if H.parent is not G:
        raise ValueError("subgroup does not belong to the given group")
    return G.order // H.order


def double_coset(G: FiniteGroup, H: Subgroup, a: int) -> frozenset[int]:
    """The set H*a*H = {h1*a*h2 : h1, h2 in H}."""
    if H.parent is not G:
        raise ValueError("subgroup does not belong to the given group")
    out = set()
    for h1 in H.members:
        left = G.mul(h1, a)
        for h2 in H.members:
            out.add(G.mul(left, h2))
    return frozenset(out)


def inverse_coset_distinct(G: FiniteGroup, H: Subgroup, a: int) -> bool:
    """True iff H*a*H and H*a^-1*H are disjoint (equivalently, distinct)."""
    return not (double_coset(G, H, a) & double_coset(G, H, G.inverse[a]))


def quotient(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, GroupHomomorphism]:
    """Quotient of G by a normal subgroup, with the canonical projection.

    Cosets are named "[r]" after their least-index representative r; the
    identity coset is "[e-name]". Raises NotNormal with a conjugation witness
    when N is not normal.
    """
    if N.parent is not G:
        raise ValueError("subgroup does not belong to the given group")
    for g in G.elements():
        for n in N.members:
            c = G.conjugate(n, g)
            if c not in N.members:
                raise NotNormal(g, n, c)

    coset_of = [-1] * G.order
    reps: list[int] = []
    for g in G.elements():
        if coset_of[g] >= 0:
            continue
        k = len(reps)
        reps.append(g)
        for n in N.members:
            coset_of[G.mul(n, g)] = k
    m = len(reps)
    names = tuple(f"[{G.name_of(r)}]" for r in reps)
    table = tuple(tuple(coset_of[G.mul(reps[i], reps[j])] for j in range(m)) for i in range(m))
    inv = tuple(coset_of[G.inverse[r]] for r in reps)
    Q = FiniteGroup(f"{G.name}/N", names, table, coset_of[G.identity], inv)
    proj = GroupHomomorphism(G, Q, tuple(coset_of))
    return Q, proj


def conjugacy_closure(G: FiniteGroup, S: Iterable[int]) -> frozenset[int]:
    """Smallest conjugation-invariant superset of S."""
    out = set()
    for s in S:
        if s in out:
            continue
        orbit = [s]
        out.add(s)
        while orbit:
            g = orbit.pop()
            for x in G.elements():
                c = G.conjugate(g, x)
                if c not in out:
                    out.add(c)
                    orbit.append(c)
    return frozenset(out)
