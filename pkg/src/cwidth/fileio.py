"""Declared on-disk formats and the word grammars used by the CLI.

Group files are UTF-8 JSON, either a full multiplication table
{"name", "elements": [...], "table": [[...]]} or a permutation presentation
{"name", "degree": n, "permutations": {"x": [images], ...}}. Amalgam, HNN,
and graph files reference group files by path, resolved relative to the
referring file and then against the GT_FIXTURES directory.

Amalgam words are whitespace-separated tokens `1:name` or `2:name` with an
optional `^-1` suffix; HNN words use `g:name`, `t`, and `t^-1`.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Sequence

from .amalgam import AmalgamSpec, ReducedWord, Syllable
from .gog import GogEdge, GraphOfGroups
from .groups import (
    FiniteGroup,
    GroupError,
    Subgroup,
    SubgroupIsomorphism,
    from_mult_table,
    from_permutations,
)
from .hnn import HnnSpec, HnnWord

FIXTURES_ENV = "GT_FIXTURES"


class FormatError(GroupError):
    """Malformed input file or word; message carries the offending position."""

    def __init__(self, where: str, detail: str):
        self.where = where
        super().__init__(f"{where}: {detail}")


def resolve_path(path: str | Path, relative_to: Path | None = None) -> Path:
    """Resolve an input path, falling back to the GT_FIXTURES directory."""
    p = Path(path)
    candidates = [p]
    if relative_to is not None and not p.is_absolute():
        candidates.append(relative_to / p)
    env = os.environ.get(FIXTURES_ENV)
    if env and not p.is_absolute():
        candidates.append(Path(env) / p)
    for c in candidates:
        if c.exists():
            return c
    raise FormatError(str(path), "file not found")


def _load_json(path: Path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from exc
    if not isinstance(data, dict):
        raise FormatError(str(path), "top-level JSON value must be an object")
    return data


def _require(data: dict, key: str, path: Path):
    if key not in data:
        raise FormatError(str(path), f"missing required key {key!r}")
    return data[key]


def load_group(path: str | Path, relative_to: Path | None = None) -> FiniteGroup:
    p = resolve_path(path, relative_to)
    data = _load_json(p)
    name = data.get("name", p.stem)
    try:
        if "table" in data:
            return from_mult_table(_require(data, "elements", p), data["table"], name=name)
        if "permutations" in data:
            perms = _require(data, "permutations", p)
            degree = _require(data, "degree", p)
            return from_permutations(
                degree, list(perms.values()), gen_names=list(perms), name=name
            )
    except (GroupError, ValueError, TypeError) as exc:
        raise FormatError(str(p), str(exc)) from exc
    raise FormatError(str(p), "group file needs either a 'table' or a 'permutations' key")


def _named_elements(group: FiniteGroup, names: Sequence[str], path: Path) -> list[int]:
    out = []
    for n in names:
        try:
            out.append(group.element(n))
        except KeyError:
            raise FormatError(
                str(path), f"group {group.name!r} has no element named {n!r}"
            ) from None
    return out


def _named_mapping(
    src: FiniteGroup, dst: FiniteGroup, pairs: Sequence[Sequence[str]], path: Path
) -> dict[int, int]:
    mapping = {}
    for pair in pairs:
        if len(pair) != 2:
            raise FormatError(str(path), f"mapping entry {pair!r} must be a [from, to] pair")
        a = _named_elements(src, [pair[0]], path)[0]
        b = _named_elements(dst, [pair[1]], path)[0]
        mapping[a] = b
    return mapping


def load_amalgam(path: str | Path) -> AmalgamSpec:
    p = resolve_path(path)
    data = _load_json(p)
    g1 = load_group(_require(data, "g1", p), relative_to=p.parent)
    g2 = load_group(_require(data, "g2", p), relative_to=p.parent)
    try:
        h1 = Subgroup(g1, frozenset(_named_elements(g1, _require(data, "h1", p), p)))
        h2 = Subgroup(g2, frozenset(_named_elements(g2, _require(data, "h2", p), p)))
        iso = SubgroupIsomorphism(h1, h2, _named_mapping(g1, g2, _require(data, "iso", p), p))
        return AmalgamSpec(g1, g2, h1, h2, iso)
    except (ValueError, GroupError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(str(p), str(exc)) from exc


def load_hnn(path: str | Path) -> HnnSpec:
    p = resolve_path(path)
    data = _load_json(p)
    g = load_group(_require(data, "g", p), relative_to=p.parent)
    try:
        a_sub = Subgroup(g, frozenset(_named_elements(g, _require(data, "a", p), p)))
        b_sub = Subgroup(g, frozenset(_named_elements(g, _require(data, "b", p), p)))
        phi = SubgroupIsomorphism(a_sub, b_sub, _named_mapping(g, g, _require(data, "phi", p), p))
        return HnnSpec(g, a_sub, b_sub, phi)
    except (ValueError, GroupError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(str(p), str(exc)) from exc


def load_graph(path: str | Path) -> GraphOfGroups:
    p = resolve_path(path)
    data = _load_json(p)
    vertices: dict[str, FiniteGroup] = {}
    for entry in _require(data, "vertices", p):
        vname = _require(entry, "name", p)
        if vname in vertices:
            raise FormatError(str(p), f"duplicate vertex name {vname!r}")
        vertices[vname] = load_group(_require(entry, "group", p), relative_to=p.parent)
    edges = []
    try:
        for entry in _require(data, "edges", p):
            ename = _require(entry, "name", p)
            src = _require(entry, "from", p)
            dst = _require(entry, "to", p)
            if src not in vertices or dst not in vertices:
                raise FormatError(str(p), f"edge {ename!r} references an unknown vertex")
            src_group, dst_group = vertices[src], vertices[dst]
            members = frozenset(
                _named_elements(src_group, _require(entry, "edge_group", p), p)
            )
            edge_sub = Subgroup(src_group, members)
            embed_src = _named_mapping(src_group, src_group, _require(entry, "embed_from", p), p)
            embed_dst = _named_mapping(src_group, dst_group, _require(entry, "embed_to", p), p)
            edges.append(
                GogEdge(
                    name=ename,
                    source=src,
                    target=dst,
                    group=edge_sub,
                    embed_source=embed_src,
                    embed_target=embed_dst,
                    in_tree=bool(entry.get("in_tree", False)),
                )
            )
        return GraphOfGroups(vertices, tuple(edges))
    except (ValueError, GroupError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(str(p), str(exc)) from exc


def parse_element_token(spec: AmalgamSpec, token: str, where: str = "element") -> tuple[int, int]:
    """`1:name` or `2:name` with optional `^-1`, as a (factor, element) pair."""
    syl = _parse_amalgam_token(spec, token, where)
    return syl.factor, syl.element


def _parse_amalgam_token(spec: AmalgamSpec, token: str, where: str) -> Syllable:
    factor_part, sep, rest = token.partition(":")
    if not sep or factor_part not in ("1", "2"):
        raise FormatError(where, f"token {token!r} must look like 1:name or 2:name")
    inverse = rest.endswith("^-1")
    if inverse:
        rest = rest[: -len("^-1")]
    factor = int(factor_part)
    group = spec.factor_group(factor)
    try:
        elem = group.element(rest)
    except KeyError:
        raise FormatError(
            where, f"factor {factor} group {group.name!r} has no element named {rest!r}"
        ) from None
    return Syllable(factor, group.inverse[elem] if inverse else elem)


def parse_amalgam_word(spec: AmalgamSpec, text: str) -> list[Syllable]:
    """Raw syllables from the word grammar; reduce to get a ReducedWord."""
    syls = []
    for i, token in enumerate(text.split(), start=1):
        syls.append(_parse_amalgam_token(spec, token, where=f"token {i}"))
    return syls


def format_amalgam_word(spec: AmalgamSpec, w: ReducedWord) -> str:
    return " ".join(
        f"{s.factor}:{spec.factor_group(s.factor).name_of(s.element)}" for s in w.syllables
    )


def parse_hnn_word(spec: HnnSpec, text: str) -> HnnWord:
    heads = [spec.base.identity]
    exps: list[int] = []
    for i, token in enumerate(text.split(), start=1):
        where = f"token {i}"
        if token == "t":
            exps.append(1)
            heads.append(spec.base.identity)
        elif token == "t^-1":
            exps.append(-1)
            heads.append(spec.base.identity)
        elif token.startswith("g:"):
            name = token[2:]
            inverse = name.endswith("^-1")
            if inverse:
                name = name[: -len("^-1")]
            try:
                elem = spec.base.element(name)
            except KeyError:
                raise FormatError(
                    where, f"base group {spec.base.name!r} has no element named {name!r}"
                ) from None
            if inverse:
                elem = spec.base.inverse[elem]
            heads[-1] = spec.base.mul(heads[-1], elem)
        else:
            raise FormatError(where, f"token {token!r} must be 't', 't^-1', or 'g:name'")
    return HnnWord(tuple(heads), tuple(exps))


def format_hnn_word(spec: HnnSpec, w: HnnWord) -> str:
    e = spec.base.identity
    parts = []
    if w.heads[0] != e:
        parts.append(f"g:{spec.base.name_of(w.heads[0])}")
    for exp, head in zip(w.exps, w.heads[1:]):
        parts.append("t" if exp == 1 else "t^-1")
        if head != e:
            parts.append(f"g:{spec.base.name_of(head)}")
    return " ".join(parts)
