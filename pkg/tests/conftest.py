"""Shared test helpers: random trees and the independent counting oracle."""
from __future__ import annotations

import random

from opennodes.trees import SyntaxTree


def leaf_paths(tree: SyntaxTree) -> list[list[int]]:
    """Every root-to-leaf path as a list of 0-based child indices."""
    paths: list[list[int]] = []

    def visit(node, prefix):
        if isinstance(node, str):
            paths.append(prefix)
            return
        for j, child in enumerate(node):
            visit(child, prefix + [j])

    visit(tree.root, [])
    return paths


def brute_force_counts(tree: SyntaxTree) -> list[int]:
    """Oracle: walk each path separately, accumulating 1 + child index."""
    return [len(path) + sum(path) for path in leaf_paths(tree)]


def random_tree(rng: random.Random, n_leaves: int, max_arity: int = 4) -> SyntaxTree:
    """Random tree over n_leaves ordered tokens with arities <= max_arity."""
    nodes: list = [f"w{i}" for i in range(n_leaves)]
    while len(nodes) > 1:
        take = rng.randint(2, min(max_arity, len(nodes)))
        at = rng.randrange(0, len(nodes) - take + 1)
        nodes[at:at + take] = [tuple(nodes[at:at + take])]
    root = nodes[0]
    if isinstance(root, str):
        root = (root,)
    return SyntaxTree(root)
