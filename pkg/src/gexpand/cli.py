"""Command-line pipeline: grammar -> N-best trees -> evaluation ->
label instantiation -> gv corpus on disk.

Either a tree file (-t) or a weighted grammar (--rtg, with -N) feeds
the evaluator; the operation file (-g) is always required.  Each final
graph lands in one gv file named g<tree-index>_<variant-index>.gv next
to a deterministic manifest.json.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from . import __version__
from .algebra import (
    Algebra,
    EmptyConstant,
    ExpansionOperation,
    OperationFileError,
    UnionOperation,
    check_extension,
    parse_operation_file,
)
from .evaluator import (
    EvalConfig,
    EvaluationError,
    ResultCapExceededError,
    evaluate_corpus,
)
from .grammar import (
    DerivationTree,
    RankConflictError,
    RtgSyntaxError,
    WeightedRtg,
    best_completion_weights,
    min_tree_weight,
    n_best_trees,
    parse_rtg,
    parse_tree_file,
)
from .gvio import GvSyntaxError, emit_gv
from .substitution import (
    DefinitionError,
    DefinitionTable,
    InstantiationCapError,
    instantiate_all,
    parse_definitions,
)


@dataclass(frozen=True)
class RunConfig:
    operations_path: str
    trees_path: Optional[str] = None
    grammar_path: Optional[str] = None
    best_count: int = 1
    definitions_path: Optional[str] = None
    min_nodes: Optional[int] = None
    max_nodes: Optional[int] = None
    required_op: Optional[str] = None
    mode: str = "sample"
    seed: int = 0
    output_dir: str = "./corpus"
    result_cap: int = 10_000
    instantiation_cap: int = 10_000
    size_on_trees: bool = False
    per_label: bool = False
    injective_contexts: bool = False
    dedup_across_trees: bool = False
    parallel: bool = False

    def __post_init__(self) -> None:
        if (self.trees_path is None) == (self.grammar_path is None):
            raise ValueError("exactly one of -t and --rtg must be given")
        if self.grammar_path is not None and self.best_count < 1:
            raise ValueError("-N must be at least 1")


class ConfigError(ValueError):
    pass


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gexpand",
        description=(
            "Generate a corpus of semantic graphs from a graph expansion "
            "grammar: a weighted regular tree grammar plus a file of "
            "graph operations."
        ),
    )
    p.add_argument("-g", "--operations", required=True, metavar="FILE",
                   help="operation file defining the graph algebra (mandatory)")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("-t", "--trees", metavar="FILE",
                     help="file of derivation trees, one per line")
    src.add_argument("--rtg", metavar="FILE",
                     help="weighted regular tree grammar in rtg format")
    p.add_argument("-N", "--best", type=int, default=1, metavar="N",
                   help="number of best trees to extract from the grammar "
                        "(with --rtg; default 1)")
    p.add_argument("-d", "--definitions", metavar="FILE",
                   help="definition file of one-to-many label replacements")
    p.add_argument("-L", "--min-nodes", type=int, metavar="N",
                   help="minimum number of nodes in a generated graph")
    p.add_argument("-H", "--max-nodes", type=int, metavar="N",
                   help="maximum number of nodes in a generated graph")
    p.add_argument("-k", "--required-op", metavar="NAME",
                   help="only keep graphs whose derivation uses this "
                        "operation at least once")
    p.add_argument("--mode", choices=("enumerate", "sample"), default="sample",
                   help="emit all context choices per tree, or one seeded "
                        "sample (default: sample)")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for sample mode (default 0)")
    p.add_argument("--out", default="./corpus", metavar="DIR",
                   help="output directory (default ./corpus)")
    p.add_argument("--result-cap", type=int, default=10_000,
                   help="abort enumerate mode when an intermediate set "
                        "exceeds this many graphs (default 10000)")
    p.add_argument("--instantiation-cap", type=int, default=10_000,
                   help="per-graph cap on definition-file combinations "
                        "(default 10000)")
    p.add_argument("--tree-size-bounds", action="store_true",
                   help="apply -L/-H to derivation tree node counts "
                        "instead of graph node counts")
    p.add_argument("--per-label", action="store_true",
                   help="couple all occurrences of one abstract label to "
                        "the same replacement")
    p.add_argument("--injective-contexts", action="store_true",
                   help="forbid two context nodes from mapping to the same "
                        "argument node")
    p.add_argument("--dedup-across-trees", action="store_true",
                   help="drop graphs isomorphic to one emitted for an "
                        "earlier tree")
    p.add_argument("--parallel", action="store_true",
                   help="evaluate trees in parallel (output is identical "
                        "to a serial run)")
    p.add_argument("--validate", action="store_true",
                   help="check the inputs and report findings without "
                        "generating anything")
    p.add_argument("--version", action="version",
                   version=f"%(prog)s {__version__}")
    return p


def config_from_args(argv: Sequence[str]) -> Tuple[RunConfig, bool]:
    args = _build_parser().parse_args(argv)
    cfg = RunConfig(
        operations_path=args.operations,
        trees_path=args.trees,
        grammar_path=args.rtg,
        best_count=args.best,
        definitions_path=args.definitions,
        min_nodes=args.min_nodes,
        max_nodes=args.max_nodes,
        required_op=args.required_op,
        mode=args.mode,
        seed=args.seed,
        output_dir=args.out,
        result_cap=args.result_cap,
        instantiation_cap=args.instantiation_cap,
        size_on_trees=args.tree_size_bounds,
        per_label=args.per_label,
        injective_contexts=args.injective_contexts,
        dedup_across_trees=args.dedup_across_trees,
        parallel=args.parallel,
    )
    return cfg, args.validate


def _read(path: str, what: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"{what} file not found: {path}")
    return p.read_text()


def _load_inputs(cfg: RunConfig):
    algebra = parse_operation_file(_read(cfg.operations_path, "operation"))
    grammar: Optional[WeightedRtg] = None
    trees: Optional[List[DerivationTree]] = None
    if cfg.grammar_path is not None:
        grammar = parse_rtg(_read(cfg.grammar_path, "grammar"))
    else:
        trees = parse_tree_file(_read(cfg.trees_path, "tree"))
    definitions: Optional[DefinitionTable] = None
    if cfg.definitions_path is not None:
        definitions = parse_definitions(_read(cfg.definitions_path, "definition"))
    return algebra, grammar, trees, definitions


def _symbol_rank_findings(
    algebra: Algebra, grammar: Optional[WeightedRtg], trees
) -> List[str]:
    findings = []
    if grammar is not None:
        symbol_ranks = grammar.terminals
    else:
        symbol_ranks = {}
        for t in trees or []:
            stack = [t]
            while stack:
                node = stack.pop()
                symbol_ranks[node.label] = node.rank
                stack.extend(node.children)
    for name, rank in sorted(symbol_ranks.items()):
        if name not in algebra:
            findings.append(f"fatal: no operation defined for symbol {name!r}")
        elif rank not in algebra.term_ranks(name):
            findings.append(
                f"fatal: symbol {name!r} has rank {rank} but the operation "
                f"allows ranks {algebra.term_ranks(name)}"
            )
    return findings


def validate(cfg: RunConfig) -> Tuple[List[str], bool]:
    """Check the inputs without generating; returns (report lines,
    fatal)."""
    algebra, grammar, trees, _definitions = _load_inputs(cfg)
    report = _symbol_rank_findings(algebra, grammar, trees)
    fatal = any(line.startswith("fatal:") for line in report)

    producible = template_labels_producible(algebra)
    for name in sorted(algebra.operations):
        op = algebra.operations[name]
        if not isinstance(op, ExpansionOperation):
            continue
        ext = check_extension(op)
        if not ext.r1:
            report.append(
                f"info: operation {name!r} violates (R1): edges "
                f"{list(ext.r1_violations)} do not run from new nodes to "
                f"old ones"
            )
        if not ext.r2:
            report.append(
                f"info: operation {name!r} violates (R2): forgotten docks "
                f"{list(ext.r2_violations)} have no incoming edge"
            )
        missing = sorted(
            {op.template.labels[u] for u in op.context} - producible
        )
        if missing:
            report.append(
                f"warning: operation {name!r} has unsatisfiable context "
                f"labels {missing}; every tree using it will contribute "
                f"zero graphs"
            )

    if grammar is not None:
        best = best_completion_weights(grammar)
        dead = sorted(a for a, w in best.items() if w is None)
        if dead:
            report.append(f"info: unproductive nonterminals: {dead}")
        reachable = {grammar.start}
        changed = True
        while changed:
            changed = False
            for p in grammar.productions:
                if p.lhs in reachable:
                    for b in p.rhs:
                        if b not in reachable:
                            reachable.add(b)
                            changed = True
        unreachable = sorted(grammar.nonterminals - reachable)
        if unreachable:
            report.append(f"info: unreachable nonterminals: {unreachable}")
    return report, fatal


def template_labels_producible(algebra: Algebra) -> set:
    """Node labels that some operation can materialize.

    Context nodes are excluded: they only fuse with nodes the argument
    graph already contains, so they never introduce their label.
    """
    labels = set()
    for op in algebra.operations.values():
        if isinstance(op, ExpansionOperation):
            context = set(op.context)
            labels.update(
                lab
                for v, lab in op.template.labels.items()
                if lab is not None and v not in context
            )
    return labels


def run(cfg: RunConfig) -> int:
    """Execute the pipeline; returns the process exit status."""
    try:
        algebra, grammar, trees, definitions = _load_inputs(cfg)
    except (ConfigError, OperationFileError, RtgSyntaxError,
            RankConflictError, GvSyntaxError, DefinitionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    rank_findings = _symbol_rank_findings(algebra, grammar, trees)
    if rank_findings:
        for line in rank_findings:
            print(f"error: {line}", file=sys.stderr)
        return 1

    all_warnings: List[str] = []
    weights: Dict[str, str] = {}
    if grammar is not None:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            best = n_best_trees(grammar, cfg.best_count)
        for w in caught:
            all_warnings.append(str(w.message))
        trees = [t for t, _w in best]
        weights = {t.serialize(): str(w) for t, w in best}

    eval_cfg = EvalConfig(
        mode=cfg.mode,
        seed=cfg.seed,
        result_cap=cfg.result_cap,
        min_nodes=cfg.min_nodes,
        max_nodes=cfg.max_nodes,
        required_op=cfg.required_op,
        size_on_trees=cfg.size_on_trees,
        injective_contexts=cfg.injective_contexts,
    )
    try:
        outcomes = evaluate_corpus(
            trees,
            algebra,
            eval_cfg,
            parallel=cfg.parallel,
            dedup_across_trees=cfg.dedup_across_trees,
        )
    except (EvaluationError, ResultCapExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    out_dir = Path(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    records = []
    for tree_index, outcome in enumerate(outcomes):
        for diag in outcome.diagnostics:
            all_warnings.append(f"tree {tree_index}: {diag}")
        variant = 0
        for g in outcome.graphs:
            if definitions is not None:
                try:
                    instances = instantiate_all(
                        g,
                        definitions,
                        per_label=cfg.per_label,
                        cap=cfg.instantiation_cap,
                    )
                except InstantiationCapError as exc:
                    print(f"error: {exc}", file=sys.stderr)
                    return 1
            else:
                instances = [g]
            for inst in instances:
                filename = f"g{tree_index}_{variant}.gv"
                (out_dir / filename).write_text(emit_gv(inst))
                records.append(
                    {
                        "file": filename,
                        "tree_index": tree_index,
                        "variant": variant,
                        "tree": outcome.source_tree.serialize(),
                        "tree_weight": weights.get(
                            outcome.source_tree.serialize(), "0"
                        ),
                        "nodes": len(inst.nodes),
                        "edges": len(inst.edges),
                    }
                )
                variant += 1

    manifest = {
        "tool": "gexpand",
        "version": __version__,
        "config": {
            "operations": cfg.operations_path,
            "trees": cfg.trees_path,
            "rtg": cfg.grammar_path,
            "best_count": cfg.best_count if cfg.grammar_path else None,
            "definitions": cfg.definitions_path,
            "min_nodes": cfg.min_nodes,
            "max_nodes": cfg.max_nodes,
            "required_op": cfg.required_op,
            "mode": cfg.mode,
            "seed": cfg.seed,
            "result_cap": cfg.result_cap,
            "instantiation_cap": cfg.instantiation_cap,
            "tree_size_bounds": cfg.size_on_trees,
            "per_label": cfg.per_label,
            "injective_contexts": cfg.injective_contexts,
            "dedup_across_trees": cfg.dedup_across_trees,
        },
        "warnings": all_warnings,
        "graphs": records,
    }
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n"
    )
    for line in all_warnings:
        print(f"warning: {line}", file=sys.stderr)
    print(f"wrote {len(records)} graph(s) to {out_dir}")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg, validate_only = config_from_args(
            sys.argv[1:] if argv is None else argv
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if validate_only:
        try:
            report, fatal = validate(cfg)
        except (ConfigError, OperationFileError, RtgSyntaxError,
                RankConflictError, GvSyntaxError, DefinitionError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        for line in report:
            print(line)
        if not report:
            print("ok: no findings")
        return 1 if fatal else 0
    return run(cfg)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
