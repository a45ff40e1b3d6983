"""Why applying one expansion operation can yield several graphs.

Two sources of nondeterminism are shown on a single operation:

* a context node fuses with *some* equally-labelled non-port node of
  the argument — each choice of target gives a (possibly) different
  result;
* a repeated node in the dock sequence merges the corresponding
  argument ports, changing the result's shape.
"""

from gexpand import (
    apply_expansion_all,
    check_extension,
    emit_gv,
    parse_gv,
    parse_operation_file,
)

OPERATIONS = """\
// One new node x0, a dock node d0 that appears twice in the dock
// sequence (so the argument's two ports get merged), and a context
// node labelled "a" that must fuse with an existing a-node.
operation merge_and_attach {
  x0 [label="b"];
  d0;
  c0 [label="a"];
  x0 -> d0 [label="e"];
  x0 -> c0 [label="e"];
  port x0;
  dock d0 d0;
}
"""

ARGUMENT = """\
digraph {
  p0 [label="a"];
  p1 [label="a"];
  q0 [label="a"];
  q1 [label="a"];
  r0 [label="a"];
  p0 -> q0 [label="e"];
  p1 -> q1 [label="e"];
  q1 -> r0 [label="f"];
  // ports: p0 p1
}
"""


def main() -> None:
    algebra = parse_operation_file(OPERATIONS)
    op = algebra["merge_and_attach"]
    arg = parse_gv(ARGUMENT)

    print(f"context nodes of the operation: {sorted(op.context)}")
    report = check_extension(op)
    print(f"extension check: r1={report.r1} r2={report.r2}")
    print("  (passing the check does not rule out nondeterminism: the")
    print("   context node alone makes the result depend on a choice)\n")

    results = apply_expansion_all(op, arg)
    print(f"{len(results)} pairwise non-isomorphic results:\n")
    for i, g in enumerate(results):
        print(f"-- result {i} --")
        print(emit_gv(g))
        print()


if __name__ == "__main__":
    main()
