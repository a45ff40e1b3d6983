"""The graph expansion algebra: expansion operations, union operations,
and the empty-graph constant.

An expansion operation stacks a template graph on top of an argument
graph: the template's dock sequence is fused positionally with the
argument's port sequence (repeated docks merge argument ports), every
context node (a template node that is neither port nor dock) is fused
with some equally labelled non-port node of the argument, and the
template's ports become the ports of the result.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .graphs import Graph, canonical_key, empty_graph
from .gvio import GvSyntaxError, parse_statements


class OperationFileError(ValueError):
    pass


class ExpansionTypeError(TypeError):
    """Argument type (port count) does not match the dock count."""


class LabelConflictError(ValueError):
    """A wildcard dock fused argument ports carrying different labels."""


@dataclass(frozen=True)
class ExpansionOperation:
    name: str
    template: Graph
    ports: Tuple[str, ...]
    docks: Tuple[str, ...]
    node_order: Tuple[str, ...]

    def __post_init__(self) -> None:
        for v in self.ports + self.docks:
            if v not in self.template.nodes:
                raise OperationFileError(
                    f"operation {self.name!r}: {v!r} is not a template node"
                )
        if len(set(self.ports)) != len(self.ports):
            raise OperationFileError(
                f"operation {self.name!r}: repeated node in port sequence"
            )
        if self.template.ports != self.ports:
            raise OperationFileError(
                f"operation {self.name!r}: template ports disagree with "
                f"port sequence"
            )

    @property
    def context(self) -> Tuple[str, ...]:
        """Context nodes, in template declaration order."""
        outside = set(self.ports) | set(self.docks)
        return tuple(v for v in self.node_order if v not in outside)

    @property
    def new_nodes(self) -> frozenset:
        return frozenset(self.ports) - frozenset(self.docks)


@dataclass(frozen=True)
class UnionOperation:
    name: str
    left_arity: int
    right_arity: int

    def __post_init__(self) -> None:
        if self.left_arity < 0 or self.right_arity < 0:
            raise OperationFileError(
                f"operation {self.name!r}: negative arity"
            )


@dataclass(frozen=True)
class EmptyConstant:
    name: str


Operation = Union[ExpansionOperation, UnionOperation, EmptyConstant]


@dataclass(frozen=True)
class Algebra:
    operations: Dict[str, Operation]

    def __getitem__(self, name: str) -> Operation:
        return self.operations[name]

    def __contains__(self, name: str) -> bool:
        return name in self.operations

    def term_ranks(self, name: str) -> Tuple[int, ...]:
        """Ranks at which the symbol may appear in a derivation tree."""
        op = self.operations[name]
        if isinstance(op, UnionOperation):
            return (2,)
        if isinstance(op, EmptyConstant):
            return (0,)
        if not op.docks:
            # A zero-dock expansion used at rank 0 is applied to the
            # empty graph.
            return (0, 1)
        return (1,)


def context_nodes(op: ExpansionOperation) -> frozenset:
    """Template nodes that are neither ports nor docks."""
    return frozenset(op.context)


def enumerate_context_assignments(
    op: ExpansionOperation, arg: Graph, injective: bool = False
) -> List[Dict[str, str]]:
    """All total maps from context nodes to equally labelled non-port
    nodes of the argument, in deterministic order.

    Two context nodes may map to the same argument node unless
    ``injective`` is set.
    """
    ctx = op.context
    non_ports = arg.nodes - set(arg.ports)
    candidate_lists = []
    for u in ctx:
        lab = op.template.labels[u]
        candidates = sorted(v for v in non_ports if arg.labels[v] == lab)
        if not candidates:
            return []
        candidate_lists.append(candidates)
    assignments = []
    for combo in itertools.product(*candidate_lists):
        if injective and len(set(combo)) != len(combo):
            continue
        assignments.append(dict(zip(ctx, combo)))
    return assignments


class _UnionFind:
    def __init__(self, items: Iterable[str]) -> None:
        self.parent = {x: x for x in items}

    def find(self, x: str) -> str:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: str, b: str) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # Deterministic representative: smaller name wins.
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def apply_expansion(
    op: ExpansionOperation,
    arg: Graph,
    assignment: Mapping[str, str],
    on_label_conflict: str = "first",
) -> Graph:
    """Apply an expansion operation to an argument graph under a fixed
    context assignment.

    A labelled dock keeps its template label after fusion; an
    unlabelled (wildcard) dock inherits the argument port's label.  When
    a repeated wildcard dock merges argument ports whose labels differ,
    the earliest merged port's label wins under ``"first"``; under
    ``"error"`` a LabelConflictError is raised instead.
    """
    if arg.type != len(op.docks):
        raise ExpansionTypeError(
            f"operation {op.name!r} needs an argument with {len(op.docks)} "
            f"ports, got {arg.type}"
        )
    if on_label_conflict not in ("first", "error"):
        raise ValueError(f"bad on_label_conflict: {on_label_conflict!r}")

    used = set(arg.nodes)
    rename: Dict[str, str] = {}
    for i, v in enumerate(op.node_order):
        fresh = f"+{i}"
        while fresh in used:
            fresh = fresh + "'"
        rename[v] = fresh
        used.add(fresh)

    uf = _UnionFind(list(arg.nodes) + list(rename.values()))
    for i, dock in enumerate(op.docks):
        uf.union(rename[dock], arg.ports[i])
    for u, v in assignment.items():
        if v in set(arg.ports):
            raise ValueError(
                f"context node {u!r} mapped to argument port {v!r}"
            )
        if arg.labels[v] != op.template.labels[u]:
            raise ValueError(
                f"context node {u!r} mapped to node {v!r} with a "
                f"different label"
            )
        uf.union(rename[u], v)

    classes: Dict[str, List[str]] = {}
    for x in list(arg.nodes) + list(rename.values()):
        classes.setdefault(uf.find(x), []).append(x)

    template_labels = {rename[v]: op.template.labels[v] for v in op.template.nodes}
    arg_port_pos = {p: i for i, p in enumerate(arg.ports)}
    labels: Dict[str, Optional[str]] = {}
    for rep, members in classes.items():
        tmpl = sorted(
            {template_labels[m] for m in members if m in template_labels}
            - {None}
        )
        if tmpl:
            labels[rep] = tmpl[0]
            continue
        arg_members = [m for m in members if m in arg.nodes]
        port_members = sorted(
            (m for m in arg_members if m in arg_port_pos),
            key=lambda m: arg_port_pos[m],
        )
        ordered = port_members + sorted(set(arg_members) - set(port_members))
        found = [arg.labels[m] for m in ordered]
        if len(set(found)) > 1 and on_label_conflict == "error":
            names = ", ".join(repr(m) for m in ordered)
            raise LabelConflictError(
                f"operation {op.name!r}: wildcard dock merges argument "
                f"ports with different labels ({names})"
            )
        labels[rep] = found[0]

    nodes = set(classes)
    edges = set()
    for s, l, t in arg.edges:
        edges.add((uf.find(s), l, uf.find(t)))
    for s, l, t in op.template.edges:
        edges.add((uf.find(rename[s]), l, uf.find(rename[t])))
    ports = tuple(uf.find(rename[p]) for p in op.ports)
    return Graph(nodes, edges, labels, ports)


def apply_expansion_all(
    op: ExpansionOperation,
    arg: Graph,
    injective: bool = False,
    on_label_conflict: str = "first",
) -> List[Graph]:
    """All results of applying ``op`` to ``arg`` over every admissible
    context assignment, deduplicated up to isomorphism.

    Returns the empty list when the argument type mismatches or no
    assignment exists.
    """
    if arg.type != len(op.docks):
        return []
    results: Dict[str, Graph] = {}
    for assignment in enumerate_context_assignments(op, arg, injective):
        g = apply_expansion(op, arg, assignment, on_label_conflict)
        results.setdefault(canonical_key(g), g)
    return list(results.values())


@dataclass(frozen=True)
class ExtensionReport:
    r1: bool
    r2: bool
    r1_violations: Tuple[Tuple[str, str, str], ...] = ()
    r2_violations: Tuple[str, ...] = ()

    @property
    def is_extension(self) -> bool:
        return self.r1 and self.r2


def check_extension(op: ExpansionOperation) -> ExtensionReport:
    """Report whether an expansion operation is an extension operation.

    r1: every template edge runs from a new node (port that is not a
    dock) to a non-new node.  r2: every forgotten dock (dock that is
    not a port) has an incoming template edge.
    """
    new = op.new_nodes
    bad_edges = tuple(
        sorted(
            (s, l, t)
            for s, l, t in op.template.edges
            if s not in new or t in new
        )
    )
    has_incoming = {t for _s, _l, t in op.template.edges}
    bad_docks = tuple(
        sorted(set(op.docks) - set(op.ports) - has_incoming)
    )
    return ExtensionReport(
        r1=not bad_edges,
        r2=not bad_docks,
        r1_violations=bad_edges,
        r2_violations=bad_docks,
    )


_OP_HEADER_RE = re.compile(r"^\s*operation\s+(?P<name>[^\s{]+)\s*\{\s*$")
_UNION_BODY_RE = re.compile(r"^\s*(\d+)\s+(\d+)\s*;?\s*$")


def _split_operations(text: str) -> List[Tuple[str, int, List[Tuple[int, str]]]]:
    blocks = []
    name = None
    start_line = 0
    body: List[Tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if name is None:
            if not line or line.startswith("//"):
                continue
            m = _OP_HEADER_RE.match(line)
            if m is None:
                # Allow "operation name {" split less strictly.
                m2 = re.match(r"^operation\s+(?P<name>[^\s{]+)\s*\{(?P<rest>.*)$", line)
                if m2 is None:
                    raise OperationFileError(
                        f"line {lineno}: expected 'operation <name> {{'"
                    )
                name = m2.group("name")
                start_line = lineno
                rest = m2.group("rest").strip()
                if rest.endswith("}"):
                    inner = rest[:-1].strip()
                    blocks.append(
                        (name, lineno, [(lineno, inner)] if inner else [])
                    )
                    name = None
                elif rest:
                    body = [(lineno, rest)]
                else:
                    body = []
                continue
            name = m.group("name")
            start_line = lineno
            body = []
            continue
        if line == "}":
            blocks.append((name, start_line, body))
            name = None
            body = []
        else:
            body.append((lineno, raw))
    if name is not None:
        raise OperationFileError(
            f"line {start_line}: operation {name!r} is missing its closing brace"
        )
    return blocks


def _parse_expansion_body(
    name: str, body: List[Tuple[int, str]]
) -> ExpansionOperation:
    gv_lines = []
    port_args: Optional[List[str]] = None
    dock_args: List[str] = []
    dock_seen = False
    for lineno, raw in body:
        line = raw.strip()
        first = line.split(None, 1)[0] if line else ""
        if first == "port":
            if port_args is not None:
                raise OperationFileError(
                    f"line {lineno}: duplicate port line in operation {name!r}"
                )
            port_args = line.rstrip(";").split()[1:]
            port_line = lineno
        elif first == "dock":
            if dock_seen:
                raise OperationFileError(
                    f"line {lineno}: duplicate dock line in operation {name!r}"
                )
            dock_args = line.rstrip(";").split()[1:]
            dock_seen = True
        else:
            gv_lines.append((lineno, raw))
    try:
        parsed = parse_statements(gv_lines)
    except GvSyntaxError as exc:
        raise OperationFileError(f"operation {name!r}: {exc}") from exc
    node_order = tuple(parsed.declared)
    ports = tuple(port_args or ())
    docks = tuple(dock_args)
    declared = set(parsed.declared)
    for v in ports:
        if v not in declared:
            raise OperationFileError(
                f"line {port_line}: port references unknown node {v!r} "
                f"in operation {name!r}"
            )
    if len(set(ports)) != len(ports):
        raise OperationFileError(
            f"operation {name!r}: repeated node in port line"
        )
    for v in docks:
        if v not in declared:
            raise OperationFileError(
                f"operation {name!r}: dock references unknown node {v!r}"
            )
    # Unlabelled nodes are wildcards, legal only as docks: a label-free
    # context node would match every node, and a label-free new port
    # would yield an unlabelled output node.
    labels: Dict[str, Optional[str]] = {}
    for v, lab in parsed.declared.items():
        if lab is None and v not in docks:
            raise OperationFileError(
                f"operation {name!r}: node {v!r} has no label and is not "
                f"a dock"
            )
        labels[v] = lab
    template = Graph(declared, parsed.edges, labels, ports)
    return ExpansionOperation(name, template, ports, docks, node_order)


def parse_operation_file(text: str) -> Algebra:
    """Parse an operation file into an algebra.

    A body of two integers on one line is a union operation; the
    literal body ``empty`` is the empty-graph constant; anything else
    is an expansion body of gv statements plus port/dock lines.
    """
    operations: Dict[str, Operation] = {}
    for name, start_line, body in _split_operations(text):
        if name in operations:
            raise OperationFileError(
                f"line {start_line}: duplicate operation name {name!r}"
            )
        content = [
            (ln, l.strip()) for ln, l in body
            if l.strip() and not l.strip().startswith("//")
        ]
        if len(content) == 1 and _UNION_BODY_RE.match(content[0][1]):
            m = _UNION_BODY_RE.match(content[0][1])
            operations[name] = UnionOperation(name, int(m.group(1)), int(m.group(2)))
        elif len(content) == 1 and content[0][1].rstrip(";") == "empty":
            operations[name] = EmptyConstant(name)
        else:
            operations[name] = _parse_expansion_body(name, body)
    return Algebra(operations)
