"""Shared fixture data for the test suite: the persuade/believe running
example and the repeated-dock expansion example."""

from gexpand import ExpansionOperation, Graph

RUNNING_GRAMMAR = """\
S
S -> op1(C)
C -> op2(U)
U -> op3(S' S2)
S' -> op4
S2 -> op5
"""

RUNNING_TREE_TEXT = "op1(op2(op3(op4 op5)))\n"

RUNNING_OPS = """\
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
operation op2 {
  0 [label="believe"];
  1;
  2;
  0 -> 1 [label="arg0"];
  0 -> 2 [label="arg1"];
  port 2 0;
  dock 1 2;
}
operation op3 {
  1 1
}
operation op4 {
  0 [label="she"];
  port 0;
}
operation op5 {
  0 [label="they"];
  port 0;
}
"""


def running_result_graph() -> Graph:
    """The evaluated persuade/believe graph: 4 nodes, 5 edges, one port."""
    return Graph(
        ["p", "b", "s", "t"],
        [
            ("p", "arg0", "s"),
            ("p", "arg1", "t"),
            ("p", "arg2", "b"),
            ("b", "arg0", "s"),
            ("b", "arg1", "t"),
        ],
        {"p": "persuade", "b": "believe", "s": "she", "t": "they"},
        ("p",),
    )


RUNNING_RESULT_GV = """\
digraph {
  "n0" [label="persuade"];
  "n1" [label="believe"];
  "n2" [label="she"];
  "n3" [label="they"];
  "n0" -> "n2" [label="arg0"];
  "n0" -> "n3" [label="arg1"];
  "n0" -> "n1" [label="arg2"];
  "n1" -> "n2" [label="arg0"];
  "n1" -> "n3" [label="arg1"];
  // ports: n0
}
"""


def repeated_dock_operation() -> ExpansionOperation:
    """Expansion operation with 4 ports, docks (y1, y4, y4), and two
    context nodes labelled c and b."""
    return ExpansionOperation(
        name="phi",
        template=Graph(
            "x1 x2 x3 y1 y2 y3 y4".split(),
            [
                ("x1", "e", "x2"),
                ("x1", "e", "y1"),
                ("x1", "e", "y2"),
                ("x2", "e", "y2"),
                ("x2", "e", "y3"),
                ("x2", "e", "y4"),
            ],
            {
                "x1": "b",
                "x2": "a",
                "x3": "b",
                "y1": None,
                "y2": "c",
                "y3": "b",
                "y4": None,
            },
            ("x1", "x2", "y4", "x3"),
        ),
        ports=("x1", "x2", "y4", "x3"),
        docks=("y1", "y4", "y4"),
        node_order=("x1", "x2", "x3", "y1", "y2", "y3", "y4"),
    )


def repeated_dock_argument() -> Graph:
    """Ten-node argument graph with three ports for the repeated-dock
    operation: non-port c-nodes u1/v2/v3, non-port b-nodes w1/w2."""
    return Graph(
        "z1 z2 u1 u2 v1 v2 v3 w1 w2 w3".split(),
        [
            ("z1", "e", "u1"),
            ("z2", "e", "v3"),
            ("u1", "e", "v1"),
            ("u1", "e", "v2"),
            ("u2", "e", "w1"),
            ("v2", "e", "w1"),
            ("v2", "e", "w2"),
            ("v3", "e", "w2"),
            ("v3", "e", "w3"),
        ],
        {
            "z1": "c",
            "z2": "a",
            "u1": "c",
            "u2": "b",
            "v1": "a",
            "v2": "c",
            "v3": "c",
            "w1": "b",
            "w2": "b",
            "w3": "a",
        },
        ("z1", "u2", "z2"),
    )


def repeated_dock_expected(y2_target: str, y3_target: str) -> Graph:
    """Hand-built expected result of applying the repeated-dock
    operation under a given context choice.  Ports 2 and 3 of the
    argument merge into one node (the merged node keeps the label b of
    the earliest merged port)."""
    arg = repeated_dock_argument()
    merged = "m"
    sub = {"z2": merged, "u2": merged}
    nodes = ["x1", "x2", "x3", merged] + sorted(
        arg.nodes - {"z2", "u2"}
    )
    labels = {
        "x1": "b",
        "x2": "a",
        "x3": "b",
        merged: "b",
    }
    labels.update({v: arg.labels[v] for v in arg.nodes - {"z2", "u2"}})
    edges = {(sub.get(s, s), l, sub.get(t, t)) for s, l, t in arg.edges}
    edges |= {
        ("x1", "e", "x2"),
        ("x1", "e", "z1"),
        ("x1", "e", y2_target),
        ("x2", "e", y2_target),
        ("x2", "e", y3_target),
        ("x2", "e", merged),
    }
    return Graph(nodes, edges, labels, ("x1", "x2", merged, "x3"))
