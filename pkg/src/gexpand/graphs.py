"""Node- and edge-labelled directed graphs with an ordered port sequence.

Graphs are immutable after construction.  Edges are triples
(source, edge label, target) kept in a set, so parallel edges with the
same label coalesce.  The port sequence is the graph's external
interface; its length is the graph's type.

Node labels are strings.  A label of ``None`` marks a wildcard node and
is only legal inside operation templates (dock nodes); ordinary graphs
produced by evaluation are always fully labelled.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Optional, Sequence, Tuple


Edge = Tuple[str, str, str]


class GraphError(ValueError):
    """A graph violates a structural invariant."""


class Graph:
    """An immutable directed labelled graph with ports."""

    __slots__ = ("nodes", "edges", "labels", "ports", "_key")

    def __init__(
        self,
        nodes: Iterable[str],
        edges: Iterable[Edge],
        labels: Mapping[str, Optional[str]],
        ports: Sequence[str] = (),
    ) -> None:
        node_set = frozenset(nodes)
        edge_set = frozenset(tuple(e) for e in edges)
        port_seq = tuple(ports)
        label_map = dict(labels)

        for src, _lab, tgt in edge_set:
            if src not in node_set or tgt not in node_set:
                raise GraphError(f"edge endpoint not a node: {src!r} -> {tgt!r}")
        missing = node_set - label_map.keys()
        if missing:
            raise GraphError(f"unlabelled nodes: {sorted(missing)}")
        extra = label_map.keys() - node_set
        if extra:
            raise GraphError(f"labels for unknown nodes: {sorted(extra)}")
        if len(set(port_seq)) != len(port_seq):
            raise GraphError(f"repeated node in port sequence: {port_seq}")
        unknown_ports = [p for p in port_seq if p not in node_set]
        if unknown_ports:
            raise GraphError(f"port is not a node: {unknown_ports}")

        object.__setattr__(self, "nodes", node_set)
        object.__setattr__(self, "edges", edge_set)
        object.__setattr__(self, "labels", label_map)
        object.__setattr__(self, "ports", port_seq)
        object.__setattr__(self, "_key", None)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("Graph is immutable")

    @property
    def type(self) -> int:
        return len(self.ports)

    def label(self, node: str) -> Optional[str]:
        return self.labels[node]

    def __repr__(self) -> str:
        return (
            f"Graph(nodes={len(self.nodes)}, edges={len(self.edges)}, "
            f"type={self.type})"
        )


def empty_graph() -> Graph:
    """The graph with no nodes, no edges, and an empty port sequence."""
    return Graph((), (), {}, ())


def type_of(g: Graph) -> int:
    """The type of a graph: the length of its port sequence."""
    return g.type


def _fresh(name: str, used: set) -> str:
    while name in used:
        name = name + "'"
    return name


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """Place two graphs side by side and concatenate their port sequences.

    Colliding node names on the right operand are renamed to fresh
    names, deterministically.
    """
    used = set(g.nodes)
    rename = {}
    for v in sorted(h.nodes):
        fresh = _fresh(v, used)
        rename[v] = fresh
        used.add(fresh)
    nodes = set(g.nodes) | {rename[v] for v in h.nodes}
    edges = set(g.edges) | {(rename[s], l, rename[t]) for s, l, t in h.edges}
    labels = dict(g.labels)
    labels.update({rename[v]: lab for v, lab in h.labels.items()})
    ports = g.ports + tuple(rename[p] for p in h.ports)
    return Graph(nodes, edges, labels, ports)


def _wl_colors(g: Graph) -> dict:
    """Stable 1-WL colouring; port positions and labels seed the colours."""
    port_index = {p: i for i, p in enumerate(g.ports)}
    out_deg = {v: 0 for v in g.nodes}
    in_deg = {v: 0 for v in g.nodes}
    for s, _l, t in g.edges:
        out_deg[s] += 1
        in_deg[t] += 1
    init = {
        v: (g.labels[v] or "", port_index.get(v, -1), out_deg[v], in_deg[v])
        for v in g.nodes
    }
    rank = {s: i for i, s in enumerate(sorted(set(init.values())))}
    color = {v: rank[init[v]] for v in g.nodes}
    for _round in range(len(g.nodes)):
        sig = {}
        for v in g.nodes:
            outs = sorted((l, color[t]) for s, l, t in g.edges if s == v)
            ins = sorted((l, color[s]) for s, l, t in g.edges if t == v)
            sig[v] = (color[v], tuple(outs), tuple(ins))
        rank = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: rank[sig[v]] for v in g.nodes}
        if len(set(new.values())) == len(set(color.values())):
            color = new
            break
        color = new
    return color


def canonical_order(g: Graph) -> Tuple[str, ...]:
    """A node ordering equal, up to renaming, for isomorphic graphs.

    Ports come first in port order (isomorphisms must preserve port
    positions); the remaining nodes are ordered by backtracking search
    over the minimal certificate, guided by WL colours.
    """
    fixed = list(g.ports)
    rest = sorted(g.nodes - set(fixed))
    if not rest:
        return tuple(fixed)

    color = _wl_colors(g)
    out_adj = {v: [] for v in g.nodes}
    in_adj = {v: [] for v in g.nodes}
    for s, l, t in g.edges:
        out_adj[s].append((l, t))
        in_adj[t].append((l, s))

    best_cert = [None]
    best_order = [None]

    def node_sig(v, placed_pos):
        outs = sorted(
            (placed_pos[t], l) for l, t in out_adj[v] if t in placed_pos
        )
        ins = sorted(
            (placed_pos[s], l) for l, s in in_adj[v] if s in placed_pos
        )
        return (color[v], g.labels[v] or "", tuple(outs), tuple(ins))

    def search(order, placed_pos, remaining):
        if not remaining:
            cert = _certificate(g, order)
            if best_cert[0] is None or cert < best_cert[0]:
                best_cert[0] = cert
                best_order[0] = tuple(order)
            return
        sigs = {v: node_sig(v, placed_pos) for v in remaining}
        min_sig = min(sigs.values())
        for v in sorted(u for u in remaining if sigs[u] == min_sig):
            placed_pos[v] = len(order)
            order.append(v)
            remaining.remove(v)
            search(order, placed_pos, remaining)
            remaining.add(v)
            order.pop()
            del placed_pos[v]

    placed = {v: i for i, v in enumerate(fixed)}
    search(list(fixed), placed, set(rest))
    return best_order[0]


def _certificate(g: Graph, order: Sequence[str]) -> tuple:
    pos = {v: i for i, v in enumerate(order)}
    labels = tuple(g.labels[v] or "" for v in order)
    edges = tuple(sorted((pos[s], l, pos[t]) for s, l, t in g.edges))
    return (len(order), g.type, labels, edges)


def canonical_key(g: Graph) -> str:
    """A string equal for two graphs iff they are isomorphic."""
    if g._key is None:
        cert = _certificate(g, canonical_order(g))
        object.__setattr__(g, "_key", repr(cert))
    return g._key


def is_isomorphic(g: Graph, h: Graph) -> bool:
    """Label-, edge- and port-position-preserving isomorphism check."""
    if (
        len(g.nodes) != len(h.nodes)
        or len(g.edges) != len(h.edges)
        or g.type != h.type
    ):
        return False
    return canonical_key(g) == canonical_key(h)


def rename_nodes(g: Graph, mapping: Mapping[str, str]) -> Graph:
    """A copy of ``g`` with nodes renamed through a bijection."""
    if len(set(mapping.values())) != len(g.nodes):
        raise GraphError("renaming is not a bijection")
    return Graph(
        (mapping[v] for v in g.nodes),
        ((mapping[s], l, mapping[t]) for s, l, t in g.edges),
        {mapping[v]: lab for v, lab in g.labels.items()},
        tuple(mapping[p] for p in g.ports),
    )
