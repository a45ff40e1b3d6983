"""Abstract-label instantiation.

A definition table maps an abstract node label to a non-empty list of
concrete replacements; every generated graph is expanded into all
combinations of the replacements.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Tuple

from .graphs import Graph, canonical_order


class DefinitionError(ValueError):
    pass


class InstantiationCapError(RuntimeError):
    """The combination count exceeds the configured cap."""

    def __init__(self, count: int, cap: int) -> None:
        super().__init__(
            f"instantiation would produce {count} graphs, exceeding the "
            f"cap of {cap}"
        )
        self.count = count
        self.cap = cap


@dataclass(frozen=True)
class DefinitionTable:
    entries: Dict[str, Tuple[str, ...]]

    def __post_init__(self) -> None:
        for key, values in self.entries.items():
            if not values:
                raise DefinitionError(f"empty replacement list for {key!r}")
        # Single-pass semantics: a key appearing inside another key's
        # replacement list would suggest chained rewriting, which is
        # not supported.
        for key, values in self.entries.items():
            for other, other_values in self.entries.items():
                if other != key and key in other_values:
                    raise DefinitionError(
                        f"definition for {key!r} also appears in the "
                        f"replacements of {other!r}; chained definitions "
                        f"are not supported"
                    )

    def __contains__(self, label: str) -> bool:
        return label in self.entries

    def __len__(self) -> int:
        return len(self.entries)


def parse_definitions(text: str) -> DefinitionTable:
    """Parse ``key: v1, v2`` lines into a definition table."""
    entries: Dict[str, Tuple[str, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("//", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise DefinitionError(f"line {lineno}: expected 'key: v1, v2, ...'")
        key, _, rest = line.partition(":")
        key = key.strip()
        if not key:
            raise DefinitionError(f"line {lineno}: empty key")
        if key in entries:
            raise DefinitionError(f"line {lineno}: duplicate key {key!r}")
        values = tuple(v.strip() for v in rest.split(",") if v.strip())
        if not values:
            raise DefinitionError(
                f"line {lineno}: empty replacement list for {key!r}"
            )
        entries[key] = values
    return DefinitionTable(entries)


def instantiation_count(g: Graph, d: DefinitionTable, per_label: bool = False) -> int:
    """How many graphs instantiate_all would produce."""
    count = 1
    if per_label:
        present = {g.labels[v] for v in g.nodes}
        for label in present:
            if label in d:
                count *= len(d.entries[label])
    else:
        for v in g.nodes:
            if g.labels[v] in d:
                count *= len(d.entries[g.labels[v]])
    return count


def instantiate_all(
    g: Graph,
    d: DefinitionTable,
    per_label: bool = False,
    cap: int = 10_000,
) -> List[Graph]:
    """All instantiations of a graph's abstract labels.

    By default every node occurrence is substituted independently; with
    ``per_label`` all occurrences of one abstract label receive the
    same replacement.  Labels absent from the table pass through
    unchanged.  Output order is deterministic: the Cartesian product in
    canonical node order (respectively sorted label order) with each
    replacement list in file order.
    """
    count = instantiation_count(g, d, per_label)
    if count > cap:
        raise InstantiationCapError(count, cap)

    if per_label:
        abstract = sorted(
            {g.labels[v] for v in g.nodes if g.labels[v] in d}
        )
        choice_lists = [d.entries[lab] for lab in abstract]
        out = []
        for combo in product(*choice_lists):
            chosen = dict(zip(abstract, combo))
            labels = {
                v: chosen.get(g.labels[v], g.labels[v]) for v in g.nodes
            }
            out.append(Graph(g.nodes, g.edges, labels, g.ports))
        return out

    occurrences = [v for v in canonical_order(g) if g.labels[v] in d]
    choice_lists = [d.entries[g.labels[v]] for v in occurrences]
    out = []
    for combo in product(*choice_lists):
        labels = dict(g.labels)
        labels.update(dict(zip(occurrences, combo)))
        out.append(Graph(g.nodes, g.edges, labels, g.ports))
    return out
