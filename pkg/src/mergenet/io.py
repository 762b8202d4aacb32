"""Stable JSON, sequence-text, and Graphviz DOT serialization."""

from __future__ import annotations

import json

from .core import vertex_sort_key
from .network import DISTINCT, IDENTICAL, MergeNetwork, build_network


def to_json_dict(net: MergeNetwork) -> dict:
    doc = {
        "vertices": sorted(net.dag.vertices, key=vertex_sort_key),
        "edges": [[e.eid, e.tail, e.head] for e in sorted(net.dag.edges, key=lambda e: e.eid)],
        "groups": [
            {"source": g.source, "sink": g.sink, "paths": [list(p) for p in g.paths]}
            for g in net.groups
        ],
        "mode": net.mode,
    }
    if net.starting_subpaths is not None:
        doc["starting_subpaths"] = [list(w) for w in net.starting_subpaths]
    return doc


def from_json_dict(doc: dict, check: bool = True) -> MergeNetwork:
    mode = doc.get("mode", DISTINCT)
    if mode not in (DISTINCT, IDENTICAL):
        raise ValueError(f"unknown mode {mode!r}")
    return build_network(
        doc["vertices"],
        [tuple(e) for e in doc["edges"]],
        [(g["source"], g["sink"], g["paths"]) for g in doc["groups"]],
        mode,
        doc.get("starting_subpaths"),
        check=check,
    )


def to_json(net: MergeNetwork) -> str:
    return json.dumps(to_json_dict(net), sort_keys=True, indent=2, default=str)


def from_json(text: str, check: bool = True) -> MergeNetwork:
    return from_json_dict(json.loads(text), check=check)


def to_dot(net: MergeNetwork) -> str:
    """Graphviz digraph; merging start vertices are drawn as filled dots."""
    from .analysis import find_mergings

    heads = {m.head for m in find_mergings(net)}
    labels: dict[int, list[str]] = {}
    for gi, g in enumerate(net.groups):
        for pi, path in enumerate(g.paths):
            for eid in path:
                labels.setdefault(eid, []).append(f"g{gi + 1}p{pi + 1}")
    lines = ["digraph mergenet {"]
    specials = {g.source for g in net.groups} | {g.sink for g in net.groups}
    for v in sorted(net.dag.vertices, key=vertex_sort_key):
        attrs = []
        if v in heads:
            attrs.append('style=filled fillcolor=black shape=point width=0.18')
        elif v in specials:
            attrs.append("shape=box")
        else:
            attrs.append("shape=circle width=0.12 label=\"\"")
        lines.append(f'  "{v}" [{" ".join(attrs)}];')
    for e in sorted(net.dag.edges, key=lambda e: e.eid):
        label = ",".join(labels.get(e.eid, []))
        lines.append(f'  "{e.tail}" -> "{e.head}" [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
