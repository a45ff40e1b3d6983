"""Bottom-up evaluation of derivation trees over a graph expansion
algebra.

Enumerate mode materializes the full set-valued semantics (deduplicated
up to isomorphism at every level); sample mode draws one admissible
context choice per context node from a seeded, replayable stream.
"""

from __future__ import annotations

import hashlib
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (
    Algebra,
    EmptyConstant,
    ExpansionOperation,
    UnionOperation,
)
from .algebra import apply_expansion, apply_expansion_all, enumerate_context_assignments
from .grammar import DerivationTree
from .graphs import Graph, canonical_key, disjoint_union, empty_graph


class EvaluationError(ValueError):
    pass


class ResultCapExceededError(RuntimeError):
    """An intermediate result set outgrew the configured cap."""


@dataclass(frozen=True)
class EvalConfig:
    mode: str = "sample"
    seed: int = 0
    result_cap: int = 10_000
    min_nodes: Optional[int] = None
    max_nodes: Optional[int] = None
    required_op: Optional[str] = None
    size_on_trees: bool = False
    injective_contexts: bool = False

    def __post_init__(self) -> None:
        if self.mode not in ("enumerate", "sample"):
            raise ValueError(f"bad mode: {self.mode!r}")
        if self.result_cap < 1:
            raise ValueError("result_cap must be at least 1")
        if (
            self.min_nodes is not None
            and self.max_nodes is not None
            and self.min_nodes > self.max_nodes
        ):
            raise ValueError("min_nodes exceeds max_nodes")


@dataclass(frozen=True)
class EvalOutcome:
    source_tree: DerivationTree
    graphs: Tuple[Graph, ...]
    diagnostics: Tuple[str, ...] = ()


def _check_tree(t: DerivationTree, a: Algebra) -> None:
    for node in _walk(t):
        if node.label not in a:
            raise EvaluationError(f"unknown symbol {node.label!r} in tree")
        ranks = a.term_ranks(node.label)
        if node.rank not in ranks:
            raise EvaluationError(
                f"symbol {node.label!r} used with {node.rank} children, "
                f"algebra allows {ranks}"
            )


def _walk(t: DerivationTree):
    yield t
    for c in t.children:
        yield from _walk(c)


def _node_bounds(t: DerivationTree, a: Algebra) -> Tuple[int, int]:
    """(lower, upper) bound on output node count, from template sizes."""
    lower = upper = 0
    for node in _walk(t):
        op = a[node.label]
        if isinstance(op, ExpansionOperation):
            upper += len(op.template.nodes)
            dups = len(op.docks) - len(set(op.docks))
            lower += max(0, len(op.new_nodes) - dups)
    return lower, upper


def _draw(seed: int, tree_index: int, path: str, ctx_index: int, n: int) -> int:
    """Counter-based uniform draw in range(n), keyed so that unrelated
    trees do not perturb each other's streams."""
    key = f"{seed}|{tree_index}|{path}|{ctx_index}".encode()
    digest = hashlib.sha256(key).digest()
    return int.from_bytes(digest[:8], "big") % n


def _dedup(graphs: Sequence[Graph]) -> List[Graph]:
    out: Dict[str, Graph] = {}
    for g in graphs:
        out.setdefault(canonical_key(g), g)
    return list(out.values())


def _eval_enumerate(
    t: DerivationTree, a: Algebra, cfg: EvalConfig, diags: List[str]
) -> List[Graph]:
    op = a[t.label]
    if isinstance(op, EmptyConstant):
        return [empty_graph()]
    if isinstance(op, UnionOperation):
        left = _eval_enumerate(t.children[0], a, cfg, diags)
        right = _eval_enumerate(t.children[1], a, cfg, diags)
        combined = [
            disjoint_union(g, h)
            for g in left
            if g.type == op.left_arity
            for h in right
            if h.type == op.right_arity
        ]
        return _capped(_dedup(combined), cfg, t.label)
    arg_sets: List[Graph]
    if t.children:
        arg_sets = _eval_enumerate(t.children[0], a, cfg, diags)
    else:
        arg_sets = [empty_graph()]
    results: List[Graph] = []
    any_type_ok = False
    for g in arg_sets:
        if g.type != len(op.docks):
            continue
        any_type_ok = True
        results.extend(
            apply_expansion_all(op, g, injective=cfg.injective_contexts)
        )
    results = _capped(_dedup(results), cfg, t.label)
    if not results:
        if any_type_ok and op.context:
            missing = ", ".join(
                sorted({op.template.labels[u] or "?" for u in op.context})
            )
            diags.append(
                f"zero-result: operation {op.name!r} found no context "
                f"candidate (labels needed: {missing})"
            )
        elif not any_type_ok and arg_sets:
            diags.append(
                f"zero-result: operation {op.name!r} received no argument "
                f"of type {len(op.docks)}"
            )
    return results


def _capped(graphs: List[Graph], cfg: EvalConfig, symbol: str) -> List[Graph]:
    if cfg.mode == "enumerate" and len(graphs) > cfg.result_cap:
        raise ResultCapExceededError(
            f"intermediate set at symbol {symbol!r} has {len(graphs)} "
            f"graphs, exceeding the cap of {cfg.result_cap}"
        )
    return graphs


def _eval_sample(
    t: DerivationTree,
    a: Algebra,
    cfg: EvalConfig,
    tree_index: int,
    path: str,
    diags: List[str],
) -> Optional[Graph]:
    op = a[t.label]
    if isinstance(op, EmptyConstant):
        return empty_graph()
    if isinstance(op, UnionOperation):
        left = _eval_sample(t.children[0], a, cfg, tree_index, path + ".0", diags)
        right = _eval_sample(t.children[1], a, cfg, tree_index, path + ".1", diags)
        if left is None or right is None:
            return None
        if left.type != op.left_arity or right.type != op.right_arity:
            diags.append(
                f"zero-result: union {op.name!r} got argument types "
                f"({left.type}, {right.type}), expected "
                f"({op.left_arity}, {op.right_arity})"
            )
            return None
        return disjoint_union(left, right)
    if t.children:
        arg = _eval_sample(t.children[0], a, cfg, tree_index, path + ".0", diags)
        if arg is None:
            return None
    else:
        arg = empty_graph()
    if arg.type != len(op.docks):
        diags.append(
            f"zero-result: operation {op.name!r} needs an argument of "
            f"type {len(op.docks)}, got {arg.type}"
        )
        return None
    non_ports = arg.nodes - set(arg.ports)
    assignment: Dict[str, str] = {}
    for i, u in enumerate(op.context):
        lab = op.template.labels[u]
        candidates = sorted(v for v in non_ports if arg.labels[v] == lab)
        if cfg.injective_contexts:
            candidates = [v for v in candidates if v not in assignment.values()]
        if not candidates:
            diags.append(
                f"zero-result: operation {op.name!r} found no context "
                f"candidate with label {lab!r}"
            )
            return None
        pick = _draw(cfg.seed, tree_index, path, i, len(candidates))
        assignment[u] = candidates[pick]
    return apply_expansion(op, arg, assignment)


def evaluate(
    t: DerivationTree, a: Algebra, cfg: EvalConfig, tree_index: int = 0
) -> EvalOutcome:
    """Evaluate one derivation tree into graphs.

    Zero graphs is a valid outcome (reported through diagnostics, never
    a hard error); unknown symbols, arity mismatches, and a blown
    result cap do raise.
    """
    _check_tree(t, a)
    diags: List[str] = []

    if cfg.required_op is not None and cfg.required_op not in set(t.symbols()):
        diags.append(
            f"required-op: tree does not use operation {cfg.required_op!r}"
        )
        return EvalOutcome(t, (), tuple(diags))

    if cfg.size_on_trees:
        size = t.size()
        if cfg.min_nodes is not None and size < cfg.min_nodes:
            diags.append(f"size-filtered: tree has {size} nodes, minimum is {cfg.min_nodes}")
            return EvalOutcome(t, (), tuple(diags))
        if cfg.max_nodes is not None and size > cfg.max_nodes:
            diags.append(f"size-filtered: tree has {size} nodes, maximum is {cfg.max_nodes}")
            return EvalOutcome(t, (), tuple(diags))
    else:
        lower, upper = _node_bounds(t, a)
        if cfg.max_nodes is not None and lower > cfg.max_nodes:
            diags.append(
                f"size-filtered: every result has at least {lower} nodes, "
                f"maximum is {cfg.max_nodes}"
            )
            return EvalOutcome(t, (), tuple(diags))
        if cfg.min_nodes is not None and upper < cfg.min_nodes:
            diags.append(
                f"size-filtered: every result has at most {upper} nodes, "
                f"minimum is {cfg.min_nodes}"
            )
            return EvalOutcome(t, (), tuple(diags))

    if cfg.mode == "enumerate":
        graphs = _eval_enumerate(t, a, cfg, diags)
    else:
        g = _eval_sample(t, a, cfg, tree_index, "r", diags)
        graphs = [] if g is None else [g]

    if not cfg.size_on_trees:
        kept = []
        for g in graphs:
            n = len(g.nodes)
            if cfg.min_nodes is not None and n < cfg.min_nodes:
                continue
            if cfg.max_nodes is not None and n > cfg.max_nodes:
                continue
            kept.append(g)
        if graphs and not kept:
            diags.append(
                "size-filtered: all evaluated graphs fall outside "
                f"[{cfg.min_nodes}, {cfg.max_nodes}]"
            )
        graphs = kept
    return EvalOutcome(t, tuple(graphs), tuple(diags))


def evaluate_corpus(
    trees: Sequence[DerivationTree],
    a: Algebra,
    cfg: EvalConfig,
    parallel: bool = False,
    dedup_across_trees: bool = False,
) -> List[EvalOutcome]:
    """Evaluate trees independently, preserving input order.

    Per-tree evaluation errors become diagnostics instead of aborting
    the corpus.  The seeded stream is keyed per tree, so parallel and
    serial runs produce identical outcomes.
    """

    def one(args) -> EvalOutcome:
        index, t = args
        try:
            return evaluate(t, a, cfg, tree_index=index)
        except (EvaluationError, ResultCapExceededError) as exc:
            return EvalOutcome(t, (), (f"error: {exc}",))

    if parallel:
        with ThreadPoolExecutor() as pool:
            outcomes = list(pool.map(one, enumerate(trees)))
    else:
        outcomes = [one(item) for item in enumerate(trees)]

    if dedup_across_trees:
        seen = set()
        deduped = []
        for outcome in outcomes:
            kept = []
            for g in outcome.graphs:
                key = canonical_key(g)
                if key in seen:
                    continue
                seen.add(key)
                kept.append(g)
            deduped.append(replace(outcome, graphs=tuple(kept)))
        outcomes = deduped
    return outcomes
