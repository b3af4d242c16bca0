"""Width classification for fundamental groups of small graphs of groups.

The decision rules only ever use facts witnessed at the vertex level: a
vertex group embeds into the fundamental group, so a subgroup proper in its
vertex group stays proper upstairs and a vertex-level coset index bounds the
fundamental-group index from below. Anything those conservative bounds
cannot settle is reported as unknown rather than guessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groups import FiniteGroup, GroupError, Subgroup

INFINITE = "infinite"
FINITE = "finite"
UNKNOWN = "unknown"


class Disconnected(GroupError):
    def __init__(self, vertex: str):
        super().__init__(f"graph is not connected: vertex {vertex!r} is unreachable")


class NonInjectiveEmbedding(GroupError):
    def __init__(self, edge: str, detail: str):
        super().__init__(f"edge {edge!r} embedding is not an injective homomorphism: {detail}")


@dataclass(frozen=True)
class GogEdge:
    """An edge with its group (a subgroup of the source vertex group) and
    the two embeddings into the endpoint groups."""

    name: str
    source: str
    target: str
    group: Subgroup
    embed_source: dict[int, int]
    embed_target: dict[int, int]
    in_tree: bool


@dataclass(frozen=True)
class Verdict:
    kind: str
    detail: str = ""


@dataclass(eq=False)
class GraphOfGroups:
    vertices: dict[str, FiniteGroup]
    edges: tuple[GogEdge, ...]
    _images: dict[str, tuple[frozenset[int], frozenset[int]]] = field(
        repr=False, default_factory=dict
    )

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("a graph of groups needs at least one vertex")
        for e in self.edges:
            for endpoint in (e.source, e.target):
                if endpoint not in self.vertices:
                    raise ValueError(f"edge {e.name!r} endpoint {endpoint!r} is not a vertex")
            if e.in_tree and e.source == e.target:
                raise ValueError(f"loop edge {e.name!r} cannot belong to a spanning tree")
            self._images[e.name] = (
                self._check_embedding(e, e.embed_source, self.vertices[e.source], "source"),
                self._check_embedding(e, e.embed_target, self.vertices[e.target], "target"),
            )
        self._check_connected()
        self._check_spanning_tree()

    def _check_embedding(
        self, e: GogEdge, mapping: dict[int, int], target: FiniteGroup, side: str
    ) -> frozenset[int]:
        sub = e.group
        if set(mapping) != set(sub.members):
            raise NonInjectiveEmbedding(e.name, f"{side} map is not total on the edge group")
        image = set(mapping.values())
        if len(image) != len(mapping):
            raise NonInjectiveEmbedding(e.name, f"{side} map identifies distinct elements")
        for a in sub.members:
            for b in sub.members:
                lhs = mapping[sub.parent.mul(a, b)]
                rhs = target.mul(mapping[a], mapping[b])
                if lhs != rhs:
                    raise NonInjectiveEmbedding(
                        e.name, f"{side} map breaks the product at ({a}, {b})"
                    )
        return frozenset(image)

    def _component(self, skip_edge: str | None = None) -> set[str]:
        start = next(iter(self.vertices))
        seen = {start}
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for e in self.edges:
                if e.name == skip_edge:
                    continue
                for u, w in ((e.source, e.target), (e.target, e.source)):
                    if u == v and w not in seen:
                        seen.add(w)
                        frontier.append(w)
        return seen

    def _check_connected(self) -> None:
        seen = self._component()
        for v in self.vertices:
            if v not in seen:
                raise Disconnected(v)

    def _check_spanning_tree(self) -> None:
        tree = [e for e in self.edges if e.in_tree]
        if len(tree) != len(self.vertices) - 1:
            raise ValueError(
                f"spanning tree needs {len(self.vertices) - 1} edges, got {len(tree)}"
            )
        seen = {next(iter(self.vertices))}
        grew = True
        while grew:
            grew = False
            for e in tree:
                if (e.source in seen) != (e.target in seen):
                    seen.update((e.source, e.target))
                    grew = True
        if len(seen) != len(self.vertices):
            raise ValueError("tree edges do not span the graph")

    def still_connected_without(self, edge: GogEdge) -> bool:
        if edge.source == edge.target:
            return True
        return len(self._component(skip_edge=edge.name)) == len(self.vertices)


def classify(g: GraphOfGroups) -> Verdict:
    """Decide infinite, finite, or unknown width for the fundamental group.

    An edge whose removal keeps the graph connected splits the fundamental
    group as an HNN extension; both embedding images proper in their vertex
    groups then certify unbounded width through the stable-letter exponent
    quotient. An edge whose removal disconnects splits it as an amalgam;
    vertex-level coset indices of 3-or-more against 2-or-more certify
    unbounded width through segment counting. A lone edge with both indices
    at most 2 gives finite width: the finite edge group is normal on both
    sides and the quotient is the dihedral-type product of two order-2
    groups. Everything else stays unknown.
    """
    if not g.edges:
        name = next(iter(g.vertices))
        return Verdict(FINITE, f"no edges: fundamental group is the finite vertex group {name!r}")

    for e in g.edges:
        img_src, img_tgt = g._images[e.name]
        src_group = g.vertices[e.source]
        tgt_group = g.vertices[e.target]
        if g.still_connected_without(e):
            if len(img_src) < src_group.order and len(img_tgt) < tgt_group.order:
                shape = "loop" if e.source == e.target else "non-separating edge"
                return Verdict(
                    INFINITE,
                    f"edge {e.name!r} ({shape}): hnn extension over proper associated "
                    f"subgroups; stable-letter exponent is an unbounded quotient",
                )
        else:
            i_src = src_group.order // len(img_src)
            i_tgt = tgt_group.order // len(img_tgt)
            if (i_src >= 3 and i_tgt >= 2) or (i_tgt >= 3 and i_src >= 2):
                return Verdict(
                    INFINITE,
                    f"edge {e.name!r}: amalgam split with vertex-level indices "
                    f"({i_src}, {i_tgt}); segment counting certifies unbounded width",
                )

    if len(g.edges) == 1 and len(g.vertices) == 2:
        e = g.edges[0]
        img_src, img_tgt = g._images[e.name]
        i_src = g.vertices[e.source].order // len(img_src)
        i_tgt = g.vertices[e.target].order // len(img_tgt)
        if i_src <= 2 and i_tgt <= 2:
            return Verdict(
                FINITE,
                f"single edge {e.name!r} with indices ({i_src}, {i_tgt}): finite edge "
                f"group of index at most 2 on both sides",
            )

    return Verdict(UNKNOWN, "conservative vertex-level bounds cannot settle this graph")
