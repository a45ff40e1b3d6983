"""Weighted regular tree grammars over ranked alphabets.

Weights live in the tropical semiring: a derivation costs the sum of
the weights of its rules, and a tree costs the minimum over all of its
derivations.  Rules without an explicit weight cost 0.  Weights are
kept as exact fractions so that tie handling is reproducible.
"""

from __future__ import annotations

import heapq
import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple


class RtgSyntaxError(ValueError):
    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


class RankConflictError(ValueError):
    pass


class EmptyLanguageWarning(UserWarning):
    """The grammar generates no trees at all."""


class BudgetExceededError(RuntimeError):
    """N-best search popped more candidates than the expansion budget."""


@dataclass(frozen=True)
class RankedSymbol:
    name: str
    rank: int


@dataclass(frozen=True)
class Production:
    lhs: str
    symbol: RankedSymbol
    rhs: Tuple[str, ...]
    weight: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if len(self.rhs) != self.symbol.rank:
            raise RankConflictError(
                f"production {self.lhs} -> {self.symbol.name}: "
                f"{len(self.rhs)} arguments for rank {self.symbol.rank}"
            )
        if self.weight < 0:
            raise ValueError("weights must be non-negative")


@dataclass(frozen=True)
class WeightedRtg:
    nonterminals: frozenset
    terminals: Dict[str, int]
    productions: Tuple[Production, ...]
    start: str

    def __post_init__(self) -> None:
        if self.start not in self.nonterminals:
            raise ValueError(f"start symbol {self.start!r} is not a nonterminal")
        overlap = self.nonterminals & self.terminals.keys()
        if overlap:
            raise RankConflictError(
                f"symbols used as both nonterminal and terminal: {sorted(overlap)}"
            )


@dataclass(frozen=True)
class DerivationTree:
    label: str
    children: Tuple["DerivationTree", ...] = ()

    @property
    def rank(self) -> int:
        return len(self.children)

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def symbols(self) -> Iterator[str]:
        yield self.label
        for c in self.children:
            yield from c.symbols()

    def serialize(self) -> str:
        if not self.children:
            return self.label
        return f"{self.label}({' '.join(c.serialize() for c in self.children)})"

    def __str__(self) -> str:
        return self.serialize()


def tree(label: str, *children: DerivationTree) -> DerivationTree:
    return DerivationTree(label, tuple(children))


_COMMENT_RE = re.compile(r"//.*$")
_RULE_RE = re.compile(
    r"^(?P<lhs>[^\s()#,]+)\s*->\s*(?P<sym>[^\s()#,]+)"
    r"(?:\s*\(\s*(?P<args>[^()#]*)\))?\s*(?:#\s*(?P<weight>\S+))?\s*$"
)


def parse_rtg(text: str) -> WeightedRtg:
    """Parse the rtg format: first line the start nonterminal, then one
    ``A -> f(B C) # w`` rule per line."""
    start: Optional[str] = None
    nonterminals = set()
    terminal_ranks: Dict[str, int] = {}
    productions: List[Production] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _COMMENT_RE.sub("", raw).strip()
        if not line:
            continue
        if start is None:
            if "->" in line or any(c in line for c in "()#"):
                raise RtgSyntaxError("start line missing before first rule", lineno)
            if len(line.split()) != 1:
                raise RtgSyntaxError("start line must be a single nonterminal", lineno)
            start = line
            nonterminals.add(start)
            continue
        m = _RULE_RE.match(line)
        if m is None:
            raise RtgSyntaxError(f"cannot parse rule: {line!r}", lineno)
        lhs = m.group("lhs")
        sym = m.group("sym")
        args = tuple((m.group("args") or "").replace(",", " ").split())
        if m.group("weight") is not None:
            try:
                weight = Fraction(m.group("weight"))
            except ValueError:
                raise RtgSyntaxError(f"bad weight {m.group('weight')!r}", lineno)
            if weight < 0:
                raise RtgSyntaxError("weights must be non-negative", lineno)
        else:
            weight = Fraction(0)
        if sym in terminal_ranks and terminal_ranks[sym] != len(args):
            raise RankConflictError(
                f"line {lineno}: terminal {sym!r} used with ranks "
                f"{terminal_ranks[sym]} and {len(args)}"
            )
        terminal_ranks[sym] = len(args)
        nonterminals.add(lhs)
        nonterminals.update(args)
        productions.append(
            Production(lhs, RankedSymbol(sym, len(args)), args, weight)
        )
    if start is None:
        raise RtgSyntaxError("start line missing", max(1, text.count("\n") + 1))
    overlap = nonterminals & terminal_ranks.keys()
    if overlap:
        raise RankConflictError(
            f"symbols used as both nonterminal and terminal: {sorted(overlap)}"
        )
    return WeightedRtg(
        frozenset(nonterminals), terminal_ranks, tuple(productions), start
    )


def _productions_by_lhs(g: WeightedRtg) -> Dict[str, List[Production]]:
    by_lhs: Dict[str, List[Production]] = {}
    for p in g.productions:
        by_lhs.setdefault(p.lhs, []).append(p)
    return by_lhs


def _derives_from(g: WeightedRtg, t: DerivationTree, nt: str, memo: dict):
    """Minimum derivation weight of ``t`` from ``nt``, or None."""
    key = (t, nt)
    if key in memo:
        return memo[key]
    best = None
    for p in g.productions:
        if p.lhs != nt or p.symbol.name != t.label or p.symbol.rank != t.rank:
            continue
        total = p.weight
        ok = True
        for child, child_nt in zip(t.children, p.rhs):
            w = _derives_from(g, child, child_nt, memo)
            if w is None:
                ok = False
                break
            total += w
        if ok and (best is None or total < best):
            best = total
    memo[key] = best
    return best


def language_contains(g: WeightedRtg, t: DerivationTree) -> bool:
    """Membership in the tree language generated from the start symbol."""
    return _derives_from(g, t, g.start, {}) is not None


def min_tree_weight(g: WeightedRtg, t: DerivationTree) -> Optional[Fraction]:
    """Minimum over all derivations of the sum of rule weights; None if
    the tree is not in the language."""
    return _derives_from(g, t, g.start, {})


def best_completion_weights(g: WeightedRtg) -> Dict[str, Optional[Fraction]]:
    """Least derivation weight reachable from each nonterminal (Knuth
    fixpoint); None marks unproductive nonterminals."""
    best: Dict[str, Optional[Fraction]] = {a: None for a in g.nonterminals}
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            parts = [best[b] for b in p.rhs]
            if any(w is None for w in parts):
                continue
            cand = p.weight + sum(parts, Fraction(0))
            if best[p.lhs] is None or cand < best[p.lhs]:
                best[p.lhs] = cand
                changed = True
    return best


def _min_completion_sizes(g: WeightedRtg) -> Dict[str, Optional[int]]:
    """Smallest tree node count derivable from each nonterminal."""
    best: Dict[str, Optional[int]] = {a: None for a in g.nonterminals}
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            parts = [best[b] for b in p.rhs]
            if any(s is None for s in parts):
                continue
            cand = 1 + sum(parts)
            if best[p.lhs] is None or cand < best[p.lhs]:
                best[p.lhs] = cand
                changed = True
    return best


# A partial derivation is a nested structure where unexpanded
# nonterminals appear as ("?", name) and applied productions as
# ("!", symbol_name, children...).


def _partial_bound(node, best_w, best_s):
    """(weight, size) lower bound of all completions of a partial
    derivation; exact on complete derivations."""
    if node[0] == "?":
        return (best_w[node[1]], best_s[node[1]])
    w = node[1]
    s = 1
    for child in node[3]:
        cw, cs = _partial_bound(child, best_w, best_s)
        w += cw
        s += cs
    return (w, s)


def _expand_leftmost(node, by_lhs, best):
    """Yield successors of a partial derivation, expanding the leftmost
    open nonterminal."""
    if node[0] == "?":
        for p in by_lhs.get(node[1], ()):
            if any(best[b] is None for b in p.rhs):
                continue
            children = tuple(("?", b) for b in p.rhs)
            yield ("!", p.weight, p.symbol.name, children)
        return
    for i, child in enumerate(node[3]):
        if _has_open(child):
            for new_child in _expand_leftmost(child, by_lhs, best):
                yield (
                    "!",
                    node[1],
                    node[2],
                    node[3][:i] + (new_child,) + node[3][i + 1:],
                )
            return


def _has_open(node) -> bool:
    if node[0] == "?":
        return True
    return any(_has_open(c) for c in node[3])


def _to_tree(node) -> DerivationTree:
    return DerivationTree(node[2], tuple(_to_tree(c) for c in node[3]))


def n_best_trees(
    g: WeightedRtg, n: int, budget: int = 10**6
) -> List[Tuple[DerivationTree, Fraction]]:
    """The ``n`` pairwise distinct least-weight trees of the grammar.

    Trees come in non-decreasing weight order; ties go to smaller trees
    (fewer nodes), remaining ties to the lexicographically least
    preorder serialization.  Equal trees reachable by several
    derivations are reported once, at their minimum weight.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    best_w = best_completion_weights(g)
    if best_w.get(g.start) is None:
        warnings.warn(
            "grammar generates the empty language", EmptyLanguageWarning
        )
        return []
    best_s = _min_completion_sizes(g)
    by_lhs = _productions_by_lhs(g)

    root = ("?", g.start)
    counter = 0
    heap = [((best_w[g.start], best_s[g.start]), counter, root)]
    results: List[Tuple[DerivationTree, Fraction]] = []
    seen = set()
    # Complete derivations pop in non-decreasing (weight, size) order;
    # ties at one (weight, size) level are buffered and ordered by
    # serialization before emission.
    pending_level = None
    pending: List[Tuple[str, DerivationTree]] = []
    pops = 0

    def flush():
        nonlocal pending, pending_level
        for ser, t in sorted(pending):
            if ser in seen:
                continue
            seen.add(ser)
            results.append((t, pending_level[0]))
            if len(results) >= n:
                break
        pending = []
        pending_level = None

    while heap and len(results) < n:
        bound, _c, node = heapq.heappop(heap)
        pops += 1
        if pops > budget:
            raise BudgetExceededError(
                f"n-best search exceeded its budget of {budget} candidate "
                f"pops"
            )
        if pending_level is not None and bound > pending_level:
            flush()
            if len(results) >= n:
                break
        if not _has_open(node):
            t = _to_tree(node)
            if pending_level is None:
                pending_level = bound
            pending.append((t.serialize(), t))
            continue
        for succ in _expand_leftmost(node, by_lhs, best_w):
            counter += 1
            heapq.heappush(
                heap, (_partial_bound(succ, best_w, best_s), counter, succ)
            )
    if pending and len(results) < n:
        flush()
    return results[:n]


_TREE_TOKEN = re.compile(r"[()\[\],]|[^\s()\[\],]+")


def parse_tree(text: str, lineno: int = 1) -> DerivationTree:
    """Parse one tree in functional ``f(a b)`` or bracket ``f[a, b]``
    notation."""
    tokens = _TREE_TOKEN.findall(text)
    pos = 0

    def parse_node() -> DerivationTree:
        nonlocal pos
        if pos >= len(tokens):
            raise RtgSyntaxError("unexpected end of tree", lineno)
        label = tokens[pos]
        if label in "()[],":
            raise RtgSyntaxError(f"unexpected token {label!r}", lineno)
        pos += 1
        children: List[DerivationTree] = []
        if pos < len(tokens) and tokens[pos] in "([":
            closing = ")" if tokens[pos] == "(" else "]"
            pos += 1
            while pos < len(tokens) and tokens[pos] != closing:
                if tokens[pos] == ",":
                    pos += 1
                    continue
                children.append(parse_node())
            if pos >= len(tokens):
                raise RtgSyntaxError(f"missing {closing!r}", lineno)
            pos += 1
        return DerivationTree(label, tuple(children))

    result = parse_node()
    if pos != len(tokens):
        raise RtgSyntaxError(f"trailing tokens after tree: {tokens[pos:]}", lineno)
    return result


def parse_tree_file(text: str) -> List[DerivationTree]:
    """One tree per non-empty line; symbol ranks must be consistent
    across the whole file."""
    trees: List[DerivationTree] = []
    ranks: Dict[str, Tuple[int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _COMMENT_RE.sub("", raw).strip()
        if not line:
            continue
        t = parse_tree(line, lineno)
        trees.append(t)
        stack = [t]
        while stack:
            node = stack.pop()
            if node.label in ranks and ranks[node.label][0] != node.rank:
                prev_rank, prev_line = ranks[node.label]
                raise RankConflictError(
                    f"line {lineno}: symbol {node.label!r} has rank "
                    f"{node.rank} here but rank {prev_rank} at line {prev_line}"
                )
            ranks.setdefault(node.label, (node.rank, lineno))
            stack.extend(node.children)
    return trees
