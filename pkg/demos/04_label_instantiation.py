"""Turning abstract node labels into concrete ones via a definition
table.

A graph over placeholder labels like "person" expands into every
combination of concrete labels.  Two modes: each occurrence chooses
independently (default), or all occurrences of a label must agree
(per_label=True).
"""

from gexpand import (
    emit_gv,
    instantiate_all,
    instantiation_count,
    parse_definitions,
    parse_gv,
)

GRAPH = """\
digraph {
  n0 [label="meet"];
  n1 [label="person"];
  n2 [label="person"];
  n0 -> n1 [label="arg0"];
  n0 -> n2 [label="arg1"];
  // ports: n0
}
"""

DEFINITIONS = """\
person: alice, bob, carol
"""


def main() -> None:
    g = parse_gv(GRAPH)
    d = parse_definitions(DEFINITIONS)

    n_free = instantiation_count(g, d)
    n_tied = instantiation_count(g, d, per_label=True)
    print(f"independent occurrences: {n_free} graphs (3 x 3)")
    print(f"tied per label:          {n_tied} graphs\n")

    print("== the per-label instantiations ==")
    for h in instantiate_all(g, d, per_label=True, cap=100):
        print(emit_gv(h))
        print()

    print("== two of the nine independent ones ==")
    for h in instantiate_all(g, d, cap=100)[:2]:
        print(emit_gv(h))
        print()


if __name__ == "__main__":
    main()
