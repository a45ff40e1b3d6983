"""End-to-end pipeline: weighted tree grammar -> best tree -> graph.

A tiny grammar generates exactly one derivation tree; interpreting its
symbols as graph operations (two single-node constants, a disjoint
union, and two expansion operations) builds a four-node semantic graph
for "she persuaded them to believe her".
"""

from gexpand import (
    EvalConfig,
    emit_gv,
    evaluate,
    n_best_trees,
    parse_operation_file,
    parse_rtg,
)

GRAMMAR = """\
S
S -> op1(C)
C -> op2(U)
U -> op3(S' S2)
S' -> op4
S2 -> op5
"""

OPERATIONS = """\
// op4 and op5 are constants: single-node graphs with one port.
operation op4 {
  0 [label="she"];
  port 0;
}
operation op5 {
  0 [label="they"];
  port 0;
}
// op3 is a disjoint union of two one-port graphs.
operation op3 {
  1 1
}
// op2 stacks a believe-node on top: its two unlabelled dock nodes fuse
// with the argument's two ports.  The she-node is left out of the
// result ports on purpose so op1's context node can still match it.
operation op2 {
  0 [label="believe"];
  1;
  2;
  0 -> 1 [label="arg0"];
  0 -> 2 [label="arg1"];
  port 2 0;
  dock 1 2;
}
// op1 adds the persuade-node.  Its she-labelled node is a context
// node: it fuses with an existing she-node of the argument.
operation op1 {
  0 [label="persuade"];
  1 [label="she"];
  2;
  3;
  0 -> 1 [label="arg0"];
  0 -> 2 [label="arg1"];
  0 -> 3 [label="arg2"];
  port 0;
  dock 2 3;
}
"""


def main() -> None:
    grammar = parse_rtg(GRAMMAR)
    algebra = parse_operation_file(OPERATIONS)

    print("== best trees of the grammar ==")
    best = n_best_trees(grammar, 5)
    for t, w in best:
        print(f"  weight {w}: {t}")

    tree = best[0][0]
    print("\n== evaluating the tree bottom-up ==")
    outcome = evaluate(tree, algebra, EvalConfig(mode="enumerate"))
    print(f"  {len(outcome.graphs)} graph(s)")

    print("\n== resulting graph in gv format ==")
    print(emit_gv(outcome.graphs[0]))


if __name__ == "__main__":
    main()
