"""N-best derivation trees of a weighted tree grammar.

Weights are costs added along a derivation (tropical semiring: the
weight of a tree is the minimum total cost over its derivations).
Ties are broken by tree size, then by serialized form, so the output
order is fully deterministic.
"""

from gexpand import min_tree_weight, n_best_trees, parse_rtg, parse_tree

GRAMMAR = """\
S
S -> f(S S) # 2
S -> g(S)   # 1
S -> a      # 0
S -> b      # 3
"""


def main() -> None:
    grammar = parse_rtg(GRAMMAR)

    print("== ten cheapest trees ==")
    for t, w in n_best_trees(grammar, 10):
        print(f"  {w}  {t}")

    print("\n== weight of a specific tree ==")
    t = parse_tree("f(g(a) b)")
    print(f"  {t}: {min_tree_weight(grammar, t)}")


if __name__ == "__main__":
    main()
